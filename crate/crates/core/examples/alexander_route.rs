//! The Hilbert function of a plane curve from its multivariable Alexander
//! polynomial, compared with the explicit semigroup.
//!
//!     cargo run --example alexander_route

use curvelat::curve::Curve;
use curvelat::lattice::Rectangle;
use curvelat::semigroup::CurveSpec;

fn main() -> curvelat::Result<()> {
    // D4: three lines through the origin.
    let alexander = CurveSpec::PlaneAlexander {
        p: "1 - t1*t2*t3".into(),
        intersections: vec![vec![None, Some(1), Some(1)], vec![Some(1), None, Some(1)], vec![Some(1), Some(1), None]],
    };
    let mut elements = vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]];
    elements.extend([vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
    let explicit = CurveSpec::Explicit { conductor: vec![2, 2, 2], elements, plane: true };
    let a = Curve::from_spec(&alexander)?;
    let b = Curve::from_spec(&explicit)?;
    println!("conductor {} vs {}, delta {} vs {}", a.conductor(), b.conductor(), a.delta(), b.delta());
    let mut differ = 0;
    for l in Rectangle::from_origin(a.conductor().clone()).points() {
        if a.hilbert().h(&l) != b.hilbert().h(&l) {
            differ += 1;
            println!("h{l}: {} vs {}", a.hilbert().h(&l), b.hilbert().h(&l));
        }
    }
    println!("points where h differs: {differ}");
    Ok(())
}
