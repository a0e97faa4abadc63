//! Truncated page series PE_k(T, Q, h) and their rational forms.
//!
//!     cargo run --example pe_series

use curvelat::cli::default_n_max;
use curvelat::curve::Curve;
use curvelat::lattice_homology::{working_rectangle, CubeLattice};
use curvelat::semigroup::CurveSpec;
use curvelat::spectral::{all_pages, k_invariants, pe_series, rational_pe};

fn main() -> curvelat::Result<()> {
    let smooth = CurveSpec::Numerical { generators: vec![1], plane: true };
    let curve = Curve::from_spec(&CurveSpec::Wedge { parts: vec![smooth.clone(), smooth] })?;
    let w = &curve.weights;
    let n_max = default_n_max(w);
    let lat = CubeLattice::new(w, working_rectangle(w, n_max), n_max);
    let levels = all_pages(&lat, w.min_weight(), &vec![1; curve.arity()]);
    let (per_level, k_max) = k_invariants(&levels);
    println!("k(n) = {per_level:?}");
    for k in (1..k_max.max(2)).map(Some).chain([None]) {
        let trunc = pe_series(&levels, k);
        let rs = rational_pe(&trunc, curve.arity(), n_max);
        let label = k.map_or("inf".to_string(), |k| k.to_string());
        println!("PE_{label} (Q <= {n_max}) = {trunc}");
        println!("PE_{label} = {}   tail detected: {}", rs.series, rs.tail_detected);
    }
    Ok(())
}
