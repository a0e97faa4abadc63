//! Lattice homology of a plane curve with two branches, with its Euler checks.
//!
//!     cargo run --example lattice_homology

use curvelat::cli::default_n_max;
use curvelat::curve::Curve;
use curvelat::lattice_homology::{euler_cube_sum, hat_euler, hat_homology, working_rectangle, CubeLattice, LatticeHomology};
use curvelat::semigroup::CurveSpec;

fn main() -> curvelat::Result<()> {
    // x^2 + y^3 wedged with a smooth branch.
    let spec = CurveSpec::Wedge {
        parts: vec![
            CurveSpec::Numerical { generators: vec![2, 3], plane: true },
            CurveSpec::Numerical { generators: vec![1], plane: true },
        ],
    };
    let curve = Curve::from_spec(&spec)?;
    let w = &curve.weights;
    let n_max = default_n_max(w);
    let lat = CubeLattice::new(w, working_rectangle(w, n_max), n_max);
    let lh = LatticeHomology::from_lattice(&lat, w.min_weight());
    println!("c = {}, delta = {}, n_max = {n_max}, cubes = {}", curve.conductor(), curve.delta(), lat.cubes().len());
    for (b, m) in lh.modules.iter().enumerate() {
        println!("H_{b} = {m}");
    }
    println!("stabilized: {}", lh.stabilized);
    println!("eu(H) = {}, cube sum = {}", lh.euler_characteristic(), euler_cube_sum(w));
    let hat = hat_homology(&lat, w.min_weight())?;
    println!("eu(hat H) = {}", hat_euler(&hat));
    Ok(())
}
