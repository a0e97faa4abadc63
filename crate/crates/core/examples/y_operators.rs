//! The Y_i and U actions on E^1, and the Y-chains of a numerical semigroup.
//!
//!     cargo run --example y_operators

use curvelat::cli::default_n_max;
use curvelat::curve::Curve;
use curvelat::lattice::{LatticePoint, Rectangle};
use curvelat::lattice_homology::working_rectangle;
use curvelat::semigroup::CurveSpec;
use curvelat::spectral::yops::{y_chains, y_generators, E1Grid};
use curvelat::spectral::{local_entries, LocalLattice};

fn main() -> curvelat::Result<()> {
    let curve = Curve::from_spec(&CurveSpec::Numerical { generators: vec![3, 5], plane: true })?;
    let w = &curve.weights;
    let n_max = default_n_max(w);
    let loc = LocalLattice::new(w);
    let entries = local_entries(&loc, working_rectangle(w, n_max).points())?;
    let grid = E1Grid::new(&loc, &entries, n_max);
    println!("Y commutes with d1: {}", grid.check_commutation(1).is_ok());
    println!("U vanishes on E1:   {}", grid.check_u_vanishes().is_ok());
    let c = curve.conductor();
    let chains: Vec<String> = y_chains(&loc, c.coords()[0])?.iter().map(|ch| ch.to_string()).collect();
    println!("Y-chains: {}", chains.join(" "));
    let hi = c.plus(&LatticePoint::splat(1, 1));
    for g in y_generators(&loc, &Rectangle::from_origin(hi))?.iter().filter(|g| g.generators > 0) {
        println!("l = {:?} n = {} b = {}: {} generator(s)", g.l, g.n, g.b, g.generators);
    }
    Ok(())
}
