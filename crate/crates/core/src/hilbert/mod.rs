//! Hilbert and weight functions, the Poincaré series `P(t)` and the motivic
//! series `P^m(t; q)`.

pub mod alexander;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Cube, DirSet, LatticePoint, Rectangle};
use crate::semigroup::ValueSemigroup;
use crate::series::{MultiLaurent, RationalSeries};

pub use alexander::hilbert_from_alexander;

/// `h` on a rectangle `R(0, hi)` with `hi >= c`, extended beyond it by
/// `h(l) = h(min(l, c)) + Σ max(l_i - c_i, 0)`.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertTable {
    rect: Rectangle,
    #[serde(skip)]
    values: Vec<i64>,
    conductor: LatticePoint,
    delta: i64,
}

impl HilbertTable {
    /// Fill `R(0, max(hi, c))` by walking lattice edges.
    pub fn from_semigroup(s: &ValueSemigroup, hi: &LatticePoint) -> Result<Self> {
        if hi.arity() != s.arity() {
            return Err(Error::ArityMismatch { expected: s.arity(), found: hi.arity() });
        }
        let c = s.conductor().clone();
        let rect = Rectangle::from_origin(hi.max(&c));
        let mut values = vec![0i64; rect.num_points()];
        for (k, l) in rect.points().enumerate().skip(1) {
            let mut found: Option<(usize, i64)> = None;
            for i in 0..l.arity() {
                if l.coords()[i] == 0 {
                    continue;
                }
                let mut prev = l.coords().to_vec();
                prev[i] -= 1;
                let step = s.exists_on_slice(i, prev[i], &prev) as i64;
                let v = values[rect.index_of(&LatticePoint::new(prev)?).unwrap()] + step;
                match found {
                    None => found = Some((i, v)),
                    Some((j, w)) if w != v => {
                        return Err(Error::invariant(format!(
                            "h is path dependent at {l}: {w} via direction {} but {v} via direction {}",
                            j + 1,
                            i + 1
                        )))
                    }
                    _ => {}
                }
            }
            values[k] = found.unwrap().1;
        }
        Self::from_values(rect, values, c)
    }

    /// Wrap precomputed values; checks the increment rule and the tail.
    pub fn from_values(rect: Rectangle, values: Vec<i64>, conductor: LatticePoint) -> Result<Self> {
        let r = rect.arity();
        if rect.lo != LatticePoint::zero(r) || !conductor.le(&rect.hi) {
            return Err(Error::invariant("Hilbert table must cover R(0, c)"));
        }
        if values.len() != rect.num_points() {
            return Err(Error::invariant("Hilbert table size mismatch"));
        }
        if values[0] != 0 {
            return Err(Error::invariant("h(0) != 0"));
        }
        let delta = conductor.total() - values[rect.index_of(&conductor).unwrap()];
        let table = HilbertTable { rect, values, conductor, delta };
        for (k, l) in table.rect.points().enumerate() {
            for i in 0..r {
                let up = l.plus_unit(i);
                if let Some(j) = table.rect.index_of(&up) {
                    let d = table.values[j] - table.values[k];
                    if !(0..=1).contains(&d) {
                        return Err(Error::invariant(format!(
                            "h({up}) - h({l}) = {d} is not in {{0, 1}}"
                        )));
                    }
                }
            }
            if table.values[k] != table.tail(&l) {
                return Err(Error::invariant(format!("closed-form tail disagrees with h at {l}")));
            }
        }
        Ok(table)
    }

    fn tail(&self, l: &LatticePoint) -> i64 {
        let m = l.min(&self.conductor);
        let extra: i64 = l.coords().iter().zip(self.conductor.coords()).map(|(a, c)| (a - c).max(0)).sum();
        self.values[self.rect.index_of(&m).unwrap()] + extra
    }

    pub fn arity(&self) -> usize {
        self.rect.arity()
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    pub fn conductor(&self) -> &LatticePoint {
        &self.conductor
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn h(&self, l: &LatticePoint) -> i64 {
        match self.rect.index_of(l) {
            Some(k) => self.values[k],
            None => self.tail(l),
        }
    }

    pub fn hbar(&self, l: &LatticePoint) -> i64 {
        l.total() - self.h(l)
    }

    pub fn hcirc(&self, l: &LatticePoint) -> i64 {
        self.delta - self.hbar(l)
    }

    /// `{l ∈ R(0, c) : h(l + E_i) > h(l) for all i}`.
    pub fn recover_semigroup(&self) -> Result<ValueSemigroup> {
        let r = self.arity();
        let elems = Rectangle::from_origin(self.conductor.clone())
            .points()
            .filter(|l| (0..r).all(|i| self.h(&l.plus_unit(i)) > self.h(l)))
            .collect::<Vec<_>>();
        ValueSemigroup::explicit(self.conductor.clone(), elems)
    }
}

/// `w(l) = 2h(l) - |l|`.
#[derive(Clone, Debug, Serialize)]
pub struct WeightTable {
    hilbert: HilbertTable,
    min_weight: i64,
}

impl WeightTable {
    pub fn new(h: HilbertTable) -> Self {
        let min_weight = Rectangle::from_origin(h.conductor().clone())
            .points()
            .map(|l| 2 * h.h(&l) - l.total())
            .min()
            .unwrap();
        WeightTable { hilbert: h, min_weight }
    }

    pub fn hilbert(&self) -> &HilbertTable {
        &self.hilbert
    }

    pub fn arity(&self) -> usize {
        self.hilbert.arity()
    }

    pub fn conductor(&self) -> &LatticePoint {
        self.hilbert.conductor()
    }

    pub fn delta(&self) -> i64 {
        self.hilbert.delta()
    }

    pub fn w(&self, l: &LatticePoint) -> i64 {
        2 * self.hilbert.h(l) - l.total()
    }

    pub fn cube(&self, c: &Cube) -> i64 {
        c.vertices().map(|v| self.w(&v)).max().unwrap()
    }

    /// `m_w`, the minimum of `w`.
    pub fn min_weight(&self) -> i64 {
        self.min_weight
    }
}

pub fn weight_table(h: HilbertTable) -> WeightTable {
    WeightTable::new(h)
}

fn t_vars(r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("t{i}")).collect()
}

/// Coefficients `p_l = Σ_J (-1)^{|J|-1} h(l + E_J)` on `R(0, hi)`.
pub fn poincare_p(h: &HilbertTable, hi: &LatticePoint) -> MultiLaurent {
    let r = h.arity();
    let mut out = MultiLaurent::with_vars(t_vars(r), r);
    for l in Rectangle::from_origin(hi.clone()).points() {
        let mut p = 0;
        for j in DirSet::full(r).subsets() {
            let sign = if j.len() % 2 == 1 { 1 } else { -1 };
            p += sign * h.h(&l.plus_dirs(j));
        }
        out.add_term(l.coords().to_vec(), p);
    }
    out
}

/// `p^m_l(q)` as a map from powers of `q` to coefficients.
pub fn motivic_coefficient(h: &HilbertTable, l: &LatticePoint) -> BTreeMap<i64, i64> {
    let r = h.arity();
    let base = h.h(l);
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for j in DirSet::full(r).subsets() {
        let a = h.h(&l.plus_dirs(j));
        // (-1)^|J| (q^a - q^b)/(1 - q) = (-1)^{|J|+1} (q^b + .. + q^{a-1})
        let sign = if j.len() % 2 == 0 { -1 } else { 1 };
        for e in base..a {
            *out.entry(e).or_default() += sign;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Motivic series truncated to `R(0, hi)` and its rational form over
/// `∏(1 - t_i q)`. Needs `hi >= c + 1` for the support check.
#[derive(Clone, Debug)]
pub struct Motivic {
    pub truncated: MultiLaurent,
    pub rational: RationalSeries,
}

pub fn motivic_pm(h: &HilbertTable, hi: &LatticePoint) -> Result<Motivic> {
    let r = h.arity();
    let mut vars = t_vars(r);
    vars.push("q".into());
    let mut trunc = MultiLaurent::with_vars(vars, r);
    let rect = Rectangle::from_origin(hi.clone());
    for l in rect.points() {
        for (e, k) in motivic_coefficient(h, &l) {
            let mut ex = l.coords().to_vec();
            ex.push(e);
            trunc.add_term(ex, k);
        }
    }
    let den: Vec<(Vec<i64>, u32)> = (0..r)
        .map(|i| {
            let mut e = vec![0; r + 1];
            e[i] = 1;
            e[r] = 1;
            (e, 1)
        })
        .collect();
    let probe = RationalSeries::new(trunc.clone(), den.clone());
    let num = trunc
        .mul(&probe.denominator_poly())
        .filter(|e| e[..r].iter().zip(hi.coords()).all(|(a, b)| a <= b));
    let c = h.conductor();
    if let Some((e, _)) = num.terms().find(|(e, _)| !e[..r].iter().zip(c.coords()).all(|(a, b)| a <= b)) {
        return Err(Error::invariant(format!("motivic numerator has a term outside R(0, c): {e:?}")));
    }
    Ok(Motivic { truncated: trunc, rational: RationalSeries::new(num, den) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec()).unwrap()
    }

    fn table(gens: &[i64], hi: i64) -> HilbertTable {
        let s = ValueSemigroup::from_numerical_generators(gens).unwrap();
        HilbertTable::from_semigroup(&s, &p(&[hi])).unwrap()
    }

    fn pair() -> ValueSemigroup {
        ValueSemigroup::explicit(p(&[1, 1]), [p(&[0, 0]), p(&[1, 1])]).unwrap()
    }

    #[test]
    fn h_and_w_for_3_4() {
        let h = table(&[3, 4], 8);
        let hv: Vec<i64> = (0..=8).map(|k| h.h(&p(&[k]))).collect();
        assert_eq!(hv, vec![0, 1, 1, 1, 2, 3, 3, 4, 5]);
        let w = WeightTable::new(h);
        let wv: Vec<i64> = (0..=8).map(|k| w.w(&p(&[k]))).collect();
        assert_eq!(wv, vec![0, 1, 0, -1, 0, 1, 0, 1, 2]);
        assert_eq!(w.min_weight(), -1);
        assert_eq!(w.delta(), 3);
    }

    #[test]
    fn smooth() {
        let h = table(&[1], 5);
        for k in 0..9 {
            assert_eq!(h.h(&p(&[k])), k);
        }
        assert_eq!(WeightTable::new(h).min_weight(), 0);
    }

    #[test]
    fn ordinary_pair_table() {
        let h = HilbertTable::from_semigroup(&pair(), &p(&[2, 2])).unwrap();
        assert_eq!(h.h(&p(&[1, 1])), 1);
        assert_eq!(h.h(&p(&[2, 1])), 2);
        assert_eq!(h.h(&p(&[2, 2])), 3);
        assert_eq!(h.delta(), 1);
        assert_eq!(h.recover_semigroup().unwrap(), pair());
    }

    #[test]
    fn poincare_of_pair_is_one() {
        let h = HilbertTable::from_semigroup(&pair(), &p(&[3, 3])).unwrap();
        let pp = poincare_p(&h, &p(&[3, 3]));
        assert_eq!(pp.to_string(), "1");
    }

    #[test]
    fn motivic_3_4() {
        let h = table(&[3, 4], 10);
        let m = motivic_pm(&h, &p(&[8])).unwrap();
        for k in 0..=8 {
            let coeff = motivic_coefficient(&h, &p(&[k]));
            let s = ValueSemigroup::from_numerical_generators(&[3, 4]).unwrap();
            if s.contains(&p(&[k])) {
                assert_eq!(coeff, BTreeMap::from([(h.h(&p(&[k])), 1)]));
            } else {
                assert!(coeff.is_empty());
            }
        }
        assert_eq!(m.rational.numerator.to_string(), "1 - t1*q + t1^3*q - t1^5*q^3 + t1^6*q^3");
    }

    #[test]
    fn motivic_pair() {
        let h = HilbertTable::from_semigroup(&pair(), &p(&[3, 3])).unwrap();
        let m = motivic_pm(&h, &p(&[3, 3])).unwrap();
        assert_eq!(m.rational.numerator.to_string(), "1 - t1*q - t2*q + t1*t2*q");
        assert_eq!(motivic_coefficient(&h, &p(&[1, 1])), BTreeMap::from([(1, 1), (2, -1)]));
    }

    #[test]
    fn bad_increment_rejected() {
        let rect = Rectangle::from_origin(p(&[2]));
        assert!(HilbertTable::from_values(rect, vec![0, 2, 3], p(&[0])).is_err());
    }
}
