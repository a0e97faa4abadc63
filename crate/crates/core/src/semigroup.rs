//! Value semigroups `S ⊂ Z^r_{>=0}` given by their contents in `R(0, c)`.
//!
//! Membership beyond the box uses saturation: `l ∈ S` iff `min(l, c) ∈ S`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::HilbertTable;
use crate::lattice::{LatticePoint, Rectangle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueSemigroup {
    conductor: LatticePoint,
    box_elements: BTreeSet<LatticePoint>,
}

/// Input description of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveSpec {
    Numerical {
        generators: Vec<i64>,
        #[serde(default)]
        plane: bool,
    },
    Explicit {
        conductor: Vec<i64>,
        elements: Vec<Vec<i64>>,
        #[serde(default)]
        plane: bool,
    },
    Wedge {
        parts: Vec<CurveSpec>,
    },
    PlaneAlexander {
        #[serde(rename = "P")]
        p: String,
        /// Symmetric matrix; diagonal entries are ignored and may be null.
        intersections: Vec<Vec<Option<i64>>>,
    },
}

impl ValueSemigroup {
    /// Numerical semigroup generated by `gens`.
    pub fn from_numerical_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() || gens.iter().any(|&g| g <= 0) {
            return Err(Error::Invalid("generators must be positive".into()));
        }
        let g = gens.iter().fold(0, |a, &b| num_integer::gcd(a, b));
        if g != 1 {
            return Err(Error::Invalid(format!("generators have gcd {g}, the semigroup has infinitely many gaps")));
        }
        let m = *gens.iter().min().unwrap();
        let big = *gens.iter().max().unwrap();
        let mut limit = (2 * m * big).max(4) as usize;
        loop {
            let reach = sums_up_to(gens, limit);
            let c = reach.iter().rposition(|&x| !x).map_or(0, |k| k + 1);
            if c + m as usize <= limit {
                let box_elements = (0..=c)
                    .filter(|&k| reach[k])
                    .map(|k| LatticePoint::new(vec![k as i64]).unwrap())
                    .collect();
                return Ok(ValueSemigroup { conductor: LatticePoint::new(vec![c as i64])?, box_elements });
            }
            limit *= 2;
        }
    }

    /// `S ∩ R(0, c)` listed in full.
    pub fn explicit(conductor: LatticePoint, elements: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let box_elements: BTreeSet<LatticePoint> = elements.into_iter().collect();
        let s = ValueSemigroup { conductor, box_elements };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        let r = self.arity();
        let c = &self.conductor;
        for l in &self.box_elements {
            if l.arity() != r {
                return Err(Error::ArityMismatch { expected: r, found: l.arity() });
            }
            if !l.le(c) {
                return Err(Error::Invalid(format!("element {l} lies outside R(0, {c})")));
            }
        }
        if !self.box_elements.contains(&LatticePoint::zero(r)) {
            return Err(Error::Invalid("0 is not listed in the semigroup".into()));
        }
        if !self.box_elements.contains(c) {
            return Err(Error::Invalid(format!("conductor {c} is not listed in the semigroup")));
        }
        for a in &self.box_elements {
            for b in &self.box_elements {
                if !self.contains(&a.plus(b)) {
                    return Err(Error::Invalid(format!("not closed under addition: {a} + {b}")));
                }
                if !self.contains(&a.min(b)) {
                    return Err(Error::Invalid(format!("not closed under minimum: min({a}, {b})")));
                }
            }
        }
        for i in 0..r {
            if c.coords()[i] > 0 {
                let mut d = c.coords().to_vec();
                d[i] -= 1;
                if self.contains(&LatticePoint::new(d)?) {
                    return Err(Error::Invalid(format!("conductor {c} is not minimal in direction {}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// `{0} ∪ ∏ (S_j \ {0})`.
    pub fn wedge(parts: &[ValueSemigroup]) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Invalid("a wedge needs at least two parts".into()));
        }
        let pc: Vec<LatticePoint> = parts
            .iter()
            .map(|p| LatticePoint::new(p.conductor.coords().iter().map(|&x| x.max(1)).collect()).unwrap())
            .collect();
        let conductor = LatticePoint::concat(&pc);
        let rect = Rectangle::from_origin(conductor.clone());
        let box_elements = rect.points().filter(|l| wedge_member(parts, l)).collect();
        Ok(ValueSemigroup { conductor, box_elements })
    }

    pub fn arity(&self) -> usize {
        self.conductor.arity()
    }

    pub fn conductor(&self) -> &LatticePoint {
        &self.conductor
    }

    pub fn box_elements(&self) -> &BTreeSet<LatticePoint> {
        &self.box_elements
    }

    pub fn contains(&self, l: &LatticePoint) -> bool {
        l.arity() == self.arity() && self.box_elements.contains(&l.min(&self.conductor))
    }

    pub fn try_contains(&self, l: &LatticePoint) -> Result<bool> {
        if l.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: l.arity() });
        }
        Ok(self.contains(l))
    }

    /// Is there `s ∈ S` with `s_i = value` and `s_j >= lower_j` for `j != i`?
    /// Negative `value` gives false; entries of `lower` may be negative.
    pub fn exists_on_slice(&self, i: usize, value: i64, lower: &[i64]) -> bool {
        if value < 0 {
            return false;
        }
        let c = self.conductor.coords();
        let target = value.min(c[i]);
        self.box_elements.iter().any(|b| {
            let b = b.coords();
            b[i] == target && (0..b.len()).all(|j| j == i || b[j] >= lower[j].max(0).min(c[j]))
        })
    }

    /// Gaps of a one-branch semigroup.
    pub fn gaps(&self) -> Option<Vec<i64>> {
        (self.arity() == 1).then(|| {
            (0..self.conductor.coords()[0])
                .filter(|&k| !self.contains(&LatticePoint::new(vec![k]).unwrap()))
                .collect()
        })
    }
}

fn sums_up_to(gens: &[i64], limit: usize) -> Vec<bool> {
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for k in 1..=limit {
        reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
    }
    reach
}

fn wedge_member(parts: &[ValueSemigroup], l: &LatticePoint) -> bool {
    if l.coords().iter().all(|&x| x == 0) {
        return true;
    }
    let mut off = 0;
    parts.iter().all(|p| {
        let r = p.arity();
        let block = LatticePoint::new(l.coords()[off..off + r].to_vec()).unwrap();
        off += r;
        block.total() > 0 && p.contains(&block)
    })
}

/// `δ = |c| - h(c)`; for one branch also checked against the gap count.
pub fn delta(s: &ValueSemigroup, h: &HilbertTable) -> Result<i64> {
    let c = s.conductor();
    let d = c.total() - h.h(c);
    if let Some(g) = s.gaps() {
        if g.len() as i64 != d {
            return Err(Error::invariant(format!("delta {d} differs from the gap count {}", g.len())));
        }
    }
    Ok(d)
}

/// Symmetry test: `l ∈ S` iff `Δ(c - 1 - l)` is empty, for `l ∈ R(-1, c)`.
/// When symmetric, `h(l) - h(c - l) = |l| - δ` is also verified on `R(0, c)`.
pub fn is_gorenstein(s: &ValueSemigroup, h: &HilbertTable) -> Result<bool> {
    let r = s.arity();
    let c = s.conductor().coords().to_vec();
    let shifted = Rectangle::from_origin(LatticePoint::new(c.iter().map(|x| x + 1).collect())?);
    let mut symmetric = true;
    for p in shifted.points() {
        let l: Vec<i64> = p.coords().iter().map(|x| x - 1).collect();
        let member = l.iter().all(|&x| x >= 0) && s.contains(&LatticePoint::new(l.clone())?);
        let m: Vec<i64> = (0..r).map(|i| c[i] - 1 - l[i]).collect();
        let empty = (0..r).all(|i| {
            let lower: Vec<i64> = m.iter().map(|x| x + 1).collect();
            !s.exists_on_slice(i, m[i], &lower)
        });
        if member != empty {
            symmetric = false;
            break;
        }
    }
    if symmetric {
        let d = delta(s, h)?;
        for l in Rectangle::from_origin(s.conductor().clone()).points() {
            let cl = s.conductor().checked_sub(&l).unwrap();
            if h.h(&l) - h.h(&cl) != l.total() - d {
                return Err(Error::invariant(format!("symmetric semigroup but h(l) - h(c-l) != |l| - delta at l = {l}")));
            }
        }
    }
    Ok(symmetric)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec()).unwrap()
    }

    fn elems(s: &ValueSemigroup) -> Vec<i64> {
        s.box_elements().iter().map(|l| l.coords()[0]).collect()
    }

    #[test]
    fn numerical() {
        let s = ValueSemigroup::from_numerical_generators(&[3, 4]).unwrap();
        assert_eq!(s.conductor(), &p(&[6]));
        assert_eq!(elems(&s), vec![0, 3, 4, 6]);
        assert!(!s.contains(&p(&[5])));
        assert!(s.contains(&p(&[100])));
        let s = ValueSemigroup::from_numerical_generators(&[2, 3]).unwrap();
        assert_eq!(elems(&s), vec![0, 2]);
        let s = ValueSemigroup::from_numerical_generators(&[1]).unwrap();
        assert_eq!(s.conductor(), &p(&[0]));
        assert_eq!(elems(&s), vec![0]);
        assert!(ValueSemigroup::from_numerical_generators(&[4, 6]).is_err());
    }

    #[test]
    fn wedges() {
        let smooth = ValueSemigroup::from_numerical_generators(&[1]).unwrap();
        let w = ValueSemigroup::wedge(&[smooth.clone(), smooth]).unwrap();
        assert_eq!(w.conductor(), &p(&[1, 1]));
        assert!(w.contains(&p(&[1, 1])));
        assert!(!w.contains(&p(&[1, 0])));
        let s34 = ValueSemigroup::from_numerical_generators(&[3, 4]).unwrap();
        let w = ValueSemigroup::wedge(&[s34.clone(), s34]).unwrap();
        assert_eq!(w.conductor(), &p(&[6, 6]));
        assert!(w.contains(&p(&[3, 3])));
        assert!(!w.contains(&p(&[3, 0])));
    }

    #[test]
    fn explicit_validation() {
        let ok = ValueSemigroup::explicit(p(&[1, 1]), [p(&[0, 0]), p(&[1, 1])]).unwrap();
        assert!(ok.contains(&p(&[7, 1])));
        assert!(ValueSemigroup::explicit(p(&[1, 1]), [p(&[0, 0])]).is_err());
        // with (1,0) listed the conductor would be (1,0)
        assert!(ValueSemigroup::explicit(p(&[1, 1]), [p(&[0, 0]), p(&[1, 0]), p(&[1, 1])]).is_err());
    }

    #[test]
    fn arity_checked() {
        let s = ValueSemigroup::from_numerical_generators(&[3, 4]).unwrap();
        assert!(s.try_contains(&p(&[1, 1])).is_err());
    }
}
