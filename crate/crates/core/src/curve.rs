//! A curve resolved from its input description.

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_from_alexander, HilbertTable, WeightTable};
use crate::lattice::LatticePoint;
use crate::semigroup::{CurveSpec, ValueSemigroup};

/// How the Hilbert function was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Semigroup,
    Alexander,
}

#[derive(Clone, Debug)]
pub struct Curve {
    pub spec: CurveSpec,
    pub semigroup: ValueSemigroup,
    pub weights: WeightTable,
    pub plane: bool,
    pub route: Route,
    /// Resolved parts of a wedge, in order.
    pub parts: Vec<Curve>,
}

/// Extra lattice layers stored beyond the conductor.
const MARGIN: i64 = 3;

impl Curve {
    pub fn from_spec(spec: &CurveSpec) -> Result<Self> {
        let (semigroup, plane, route, parts, h) = match spec {
            CurveSpec::Numerical { generators, plane } => {
                let s = ValueSemigroup::from_numerical_generators(generators)?;
                (s, *plane, Route::Semigroup, Vec::new(), None)
            }
            CurveSpec::Explicit { conductor, elements, plane } => {
                let c = LatticePoint::new(conductor.clone())?;
                let elems = elements.iter().map(|e| LatticePoint::new(e.clone())).collect::<Result<Vec<_>>>()?;
                if let Some(e) = elems.iter().find(|e| e.arity() != c.arity()) {
                    return Err(Error::ArityMismatch { expected: c.arity(), found: e.arity() });
                }
                (ValueSemigroup::explicit(c, elems)?, *plane, Route::Semigroup, Vec::new(), None)
            }
            CurveSpec::Wedge { parts } => {
                let parts = parts.iter().map(Curve::from_spec).collect::<Result<Vec<_>>>()?;
                let sg: Vec<ValueSemigroup> = parts.iter().map(|p| p.semigroup.clone()).collect();
                (ValueSemigroup::wedge(&sg)?, false, Route::Semigroup, parts, None)
            }
            CurveSpec::PlaneAlexander { p, intersections } => {
                let h = hilbert_from_alexander(p, intersections, MARGIN)?;
                let s = h.recover_semigroup()?;
                (s, true, Route::Alexander, Vec::new(), Some(h))
            }
        };
        let hi = LatticePoint::new(semigroup.conductor().coords().iter().map(|x| x + MARGIN).collect())?;
        let from_s = HilbertTable::from_semigroup(&semigroup, &hi)?;
        if let Some(h) = &h {
            if let Some(l) = from_s.rect().points().find(|l| from_s.h(l) != h.h(l)) {
                return Err(Error::invariant(format!(
                    "Hilbert function from the Alexander data disagrees with its recovered semigroup at {l}"
                )));
            }
        }
        let weights = WeightTable::new(h.unwrap_or(from_s));
        Ok(Curve { spec: spec.clone(), semigroup, weights, plane, route, parts })
    }

    pub fn arity(&self) -> usize {
        self.semigroup.arity()
    }

    pub fn conductor(&self) -> &LatticePoint {
        self.semigroup.conductor()
    }

    pub fn delta(&self) -> i64 {
        self.weights.delta()
    }

    pub fn hilbert(&self) -> &HilbertTable {
        self.weights.hilbert()
    }

    pub fn is_wedge(&self) -> bool {
        !self.parts.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn numerical(g: &[i64]) -> CurveSpec {
        CurveSpec::Numerical { generators: g.to_vec(), plane: true }
    }

    #[test]
    fn routes_agree_for_three_lines() {
        let ones = vec![vec![None, Some(1), Some(1)], vec![Some(1), None, Some(1)], vec![Some(1), Some(1), None]];
        let a = Curve::from_spec(&CurveSpec::PlaneAlexander { p: "1 - t1*t2*t3".into(), intersections: ones }).unwrap();
        assert_eq!(a.route, Route::Alexander);
        assert_eq!(a.delta(), 3);
        assert!(a.semigroup.contains(&LatticePoint::new(vec![5, 1, 1]).unwrap()));
    }

    #[test]
    fn wedge_delta() {
        let w = Curve::from_spec(&CurveSpec::Wedge { parts: vec![numerical(&[3, 4]), numerical(&[3, 4])] }).unwrap();
        assert_eq!(w.delta(), 7);
        assert_eq!(w.parts.len(), 2);
        assert!(!w.plane);
    }
}
