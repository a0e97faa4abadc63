//! The graded root of a numerical semigroup in Graphviz format.
//!
//!     cargo run --example graded_root | dot -Tsvg > root.svg

use curvelat::cli::default_n_max;
use curvelat::curve::Curve;
use curvelat::lattice_homology::{graded_root, working_rectangle, CubeLattice};
use curvelat::semigroup::CurveSpec;

fn main() -> curvelat::Result<()> {
    let curve = Curve::from_spec(&CurveSpec::Numerical { generators: vec![4, 5, 7], plane: false })?;
    let w = &curve.weights;
    let n_max = default_n_max(w);
    let lat = CubeLattice::new(w, working_rectangle(w, n_max), n_max);
    let root = graded_root(&lat, w.min_weight(), n_max);
    eprintln!("components per level: {:?}", root.component_counts());
    eprintln!("H_0 = {}", root.h0());
    print!("{}", root.to_dot(|v| Some(format!("{} pts", v.points.len()))));
    Ok(())
}
