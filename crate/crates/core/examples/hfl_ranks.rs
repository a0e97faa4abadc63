//! Ranks of link Floer homology read from the local lattice complexes.
//!
//!     cargo run --example hfl_ranks

use curvelat::curve::Curve;
use curvelat::lattice::{LatticePoint, Rectangle};
use curvelat::semigroup::CurveSpec;
use curvelat::spectral::{hfl_ranks, LocalLattice};

fn main() -> curvelat::Result<()> {
    // x^3 + y^3: three smooth branches meeting pairwise once.
    let smooth = CurveSpec::Numerical { generators: vec![1], plane: true };
    let curve = Curve::from_spec(&CurveSpec::Wedge { parts: vec![smooth.clone(), smooth.clone(), smooth] })?;
    let loc = LocalLattice::new(&curve.weights);
    let hi = curve.conductor().plus(&LatticePoint::splat(curve.arity(), 1));
    for l in Rectangle::from_origin(hi).points() {
        let rows = hfl_ranks(&loc, &l)?;
        if rows.is_empty() {
            continue;
        }
        let cells: Vec<String> = rows.iter().map(|e| format!("{}@{}", e.rank, e.maslov)).collect();
        println!("l = {l}: {}", cells.join(" "));
    }
    Ok(())
}
