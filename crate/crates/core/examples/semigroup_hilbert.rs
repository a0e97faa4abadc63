//! Value semigroup, Hilbert function and weights of a numerical semigroup.
//!
//!     cargo run --example semigroup_hilbert -- 3 4

use curvelat::curve::Curve;
use curvelat::lattice::{LatticePoint, Rectangle};
use curvelat::semigroup::{is_gorenstein, CurveSpec};

fn main() -> curvelat::Result<()> {
    let mut generators: Vec<i64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if generators.is_empty() {
        generators = vec![3, 4];
    }
    let curve = Curve::from_spec(&CurveSpec::Numerical { generators: generators.clone(), plane: false })?;
    let c = curve.conductor();
    println!("S = <{generators:?}>, c = {c}, delta = {}", curve.delta());
    println!("gaps: {:?}", curve.semigroup.gaps().unwrap_or_default());
    println!("gorenstein: {}", is_gorenstein(&curve.semigroup, curve.hilbert())?);
    println!("{:>4} {:>3} {:>3} {:>3}", "l", "in", "h", "w");
    for l in Rectangle::from_origin(c.plus(&LatticePoint::splat(1, 2))).points() {
        let member = if curve.semigroup.contains(&l) { "*" } else { "" };
        println!("{:>4} {:>3} {:>3} {:>3}", l.coords()[0], member, curve.hilbert().h(&l), curve.weights.w(&l));
    }
    Ok(())
}
