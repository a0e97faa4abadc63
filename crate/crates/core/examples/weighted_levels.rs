//! Pages for a non-uniform level function a·l.
//!
//!     cargo run --example weighted_levels -- 1 2

use curvelat::cli::default_n_max;
use curvelat::curve::Curve;
use curvelat::lattice_homology::{working_rectangle, CubeLattice};
use curvelat::semigroup::CurveSpec;
use curvelat::spectral::{all_pages, check_weights, k_invariants, pe_series};

fn main() -> curvelat::Result<()> {
    let mut a: Vec<i64> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if a.is_empty() {
        a = vec![1, 2];
    }
    let smooth = CurveSpec::Numerical { generators: vec![1], plane: true };
    let curve = Curve::from_spec(&CurveSpec::Wedge { parts: vec![smooth.clone(), smooth] })?;
    check_weights(&a, curve.arity())?;
    let w = &curve.weights;
    let n_max = default_n_max(w);
    let lat = CubeLattice::new(w, working_rectangle(w, n_max), n_max);
    for weights in [vec![1; curve.arity()], a] {
        let levels = all_pages(&lat, w.min_weight(), &weights);
        let (_, k_max) = k_invariants(&levels);
        println!("a = {weights:?}: k_max = {k_max}");
        println!("  E^1   = {}", pe_series(&levels, Some(1)));
        println!("  E^inf = {}", pe_series(&levels, None));
    }
    Ok(())
}
