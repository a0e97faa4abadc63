//! Multivariable PE_1 by local homology and by the motivic formula, and the
//! motivic Poincaré series obtained from it.
//!
//!     cargo run --example bold_pe_motivic

use curvelat::curve::Curve;
use curvelat::hilbert::motivic_pm;
use curvelat::semigroup::CurveSpec;
use curvelat::series::sqrt_q_map;
use curvelat::spectral::{bold_pe1_local, bold_pe1_motivic, bold_rational, local_entries, BoldBox, LocalLattice};

fn main() -> curvelat::Result<()> {
    let curve = Curve::from_spec(&CurveSpec::Wedge {
        parts: vec![
            CurveSpec::Numerical { generators: vec![2, 3], plane: true },
            CurveSpec::Numerical { generators: vec![1], plane: true },
        ],
    })?;
    let w = &curve.weights;
    let bx = BoldBox::new(w, None);
    let loc = LocalLattice::new(w);
    let entries = local_entries(&loc, bx.points())?;
    let local = bold_pe1_local(&entries, curve.arity());
    let motivic = bold_pe1_motivic(w, bx.points());
    println!("box R(0, {})", bx.rect.hi);
    println!("PE_1 (local)   = {local}");
    println!("routes agree: {}", local == motivic);
    let (rs, bounded) = bold_rational(&local, &bx, curve.conductor());
    println!("PE_1 = {rs}   numerator in R(0, c): {bounded}");
    let pm = motivic_pm(curve.hilbert(), &bx.rect.hi)?;
    println!("P^m = {}", pm.rational);
    let image = sqrt_q_map(&local)?;
    println!("P^m from PE_1 matches: {}", image == pm.truncated.filter(|e| bx.contains(&e[..curve.arity()])));
    Ok(())
}
