//! Reduced homology of a wedge against the Künneth product of its parts.
//!
//!     cargo run --example wedge_kunneth

use curvelat::curve::Curve;
use curvelat::lattice_homology::{kunneth, shifted_lattice, working_rectangle, CubeLattice, LatticeHomology, ZUModule};
use curvelat::semigroup::CurveSpec;

fn homology(curve: &Curve, n_max: i64) -> LatticeHomology {
    let w = &curve.weights;
    LatticeHomology::from_lattice(&CubeLattice::new(w, working_rectangle(w, n_max), n_max), w.min_weight())
}

fn show(ms: &[ZUModule]) -> String {
    ms.iter().enumerate().map(|(b, m)| format!("H_{b} = {m}")).collect::<Vec<_>>().join(", ")
}

fn main() -> curvelat::Result<()> {
    let spec = CurveSpec::Wedge {
        parts: vec![
            CurveSpec::Numerical { generators: vec![2, 3], plane: false },
            CurveSpec::Numerical { generators: vec![3, 4, 5], plane: false },
        ],
    };
    let curve = Curve::from_spec(&spec)?;
    let n_max = 8;
    let whole = homology(&curve, n_max);
    let reduced = whole.reduced_at_origin()?;
    let w = &curve.weights;
    let restricted = LatticeHomology::from_lattice(&shifted_lattice(w, n_max), w.min_weight());
    // Each factor is the homology of its part restricted to l >= 1, taken deep enough
    // that the product is exact down to level n_max.
    let parts: Vec<LatticeHomology> = curve
        .parts
        .iter()
        .map(|p| LatticeHomology::from_lattice(&shifted_lattice(&p.weights, n_max + 4), p.weights.min_weight()))
        .collect();
    let product: Vec<ZUModule> = kunneth(&parts[0].modules, &parts[1].modules)
        .iter()
        .map(|m| {
            let mut cut = ZUModule::new();
            for (s, k) in m.parts().filter(|(s, _)| s.top() >= -2 * n_max) {
                cut.add(s, k);
            }
            cut
        })
        .collect();
    println!("reduced at the origin: {}", show(&reduced));
    println!("restriction to l >= 1: {}", show(&restricted.modules));
    println!("Kunneth of the parts:  {}", show(&product));
    Ok(())
}
