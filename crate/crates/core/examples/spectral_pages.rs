//! Pages of the level spectral sequence, level by level.
//!
//!     cargo run --example spectral_pages

use curvelat::cli::default_n_max;
use curvelat::curve::Curve;
use curvelat::lattice_homology::{working_rectangle, CubeLattice};
use curvelat::semigroup::CurveSpec;
use curvelat::spectral::all_pages;

fn main() -> curvelat::Result<()> {
    // Three smooth transversal branches.
    let smooth = CurveSpec::Numerical { generators: vec![1], plane: true };
    let curve = Curve::from_spec(&CurveSpec::Wedge { parts: vec![smooth.clone(), smooth.clone(), smooth] })?;
    let w = &curve.weights;
    let n_max = default_n_max(w).min(4);
    let lat = CubeLattice::new(w, working_rectangle(w, n_max), n_max);
    let ones = vec![1; curve.arity()];
    for lp in all_pages(&lat, w.min_weight(), &ones) {
        println!("n = {}  k(n) = {}", lp.n, lp.k);
        for (i, page) in lp.pages.iter().enumerate() {
            let cells: Vec<String> = page.iter().map(|((d, b), r)| format!("(d={d},b={b}):{r}")).collect();
            println!("  E^{} {}", i + 1, cells.join(" "));
        }
        for d in &lp.differentials {
            println!("  d^{} {:?} -> {:?} rank {}", d.k, d.from, d.to, d.rank);
        }
    }
    Ok(())
}
