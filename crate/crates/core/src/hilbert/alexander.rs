//! Hilbert function of a plane curve from its multivariable Alexander data.
//!
//! Every sublink series `P_J` is obtained by Torres reductions, and then
//! `H = (1/∏(1 - t_i)) Σ_{J≠∅} (-1)^{|J|-1} t^J P_J` on a box.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Rectangle};
use crate::series::MultiLaurent;

use super::HilbertTable;

fn grade(e: &[i64]) -> i64 {
    e.iter().sum()
}

/// Exact quotient `p / (1 - x^m)`, or an error if it is not a polynomial.
fn divide_exact(p: &MultiLaurent, m: &[i64]) -> Result<MultiLaurent> {
    let max = p.max_grade(&vec![1; m.len()]).unwrap_or(0);
    let mut rem = p.clone();
    let mut q = p.empty_like();
    while let Some((e, c)) = rem.sorted_terms().into_iter().min_by_key(|(e, _)| (grade(e), e.clone())) {
        if grade(&e) > max {
            break;
        }
        q.add_term(e.clone(), c);
        rem.add_term(e.clone(), -c);
        rem.add_term(e.iter().zip(m).map(|(a, b)| a + b).collect(), c);
    }
    if !rem.is_zero() {
        return Err(Error::Invalid(format!("Torres reduction is not a polynomial: {p} / (1 - x^{m:?})")));
    }
    Ok(q)
}

/// `p` at `t_i = 1`.
fn evaluate_at_one(p: &MultiLaurent, i: usize) -> MultiLaurent {
    let mut out = p.empty_like();
    for (e, c) in p.terms() {
        let mut f = e.clone();
        f[i] = 0;
        out.add_term(f, c);
    }
    out
}

/// `p * (1 + x^m + x^{2m} + ..)` truncated to the box.
fn geometric(p: &MultiLaurent, m: &[i64], hi: &[i64]) -> MultiLaurent {
    let inside = |e: &[i64]| e.iter().zip(hi).all(|(a, b)| a <= b);
    let mut out = p.empty_like();
    for (e, c) in p.terms() {
        let mut cur = e.clone();
        while inside(&cur) {
            out.add_term(cur.clone(), c);
            cur = cur.iter().zip(m).map(|(a, b)| a + b).collect();
        }
    }
    out
}

fn validate_intersections(r: usize, m: &[Vec<Option<i64>>]) -> Result<Vec<Vec<i64>>> {
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(Error::Invalid(format!("intersection matrix must be {r}x{r}")));
    }
    let mut out = vec![vec![0; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let v = m[i][j].ok_or_else(|| Error::Invalid(format!("missing intersection number ({}, {})", i + 1, j + 1)))?;
            if v <= 0 {
                return Err(Error::Invalid("intersection numbers must be positive".into()));
            }
            if m[j][i] != Some(v) {
                return Err(Error::Invalid("intersection matrix is not symmetric".into()));
            }
            out[i][j] = v;
        }
    }
    Ok(out)
}

/// Branch data from a one-variable reduction `num / (1 - t^k)`.
struct Branch {
    numerator: MultiLaurent,
    k: i64,
    twice_delta: i64,
}

/// Reconstructs `h` on `R(0, c + margin·1)`. For `r = 1` the polynomial is
/// the Alexander polynomial `Δ(t) = P(t)(1 - t)`; for `r > 1` it is `P = Δ`.
pub fn hilbert_from_alexander(
    poly: &str,
    intersections: &[Vec<Option<i64>>],
    margin: i64,
) -> Result<HilbertTable> {
    let r = intersections.len().max(1);
    let names: Vec<String> = (1..=r).map(|i| format!("t{i}")).collect();
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let full = MultiLaurent::parse(poly, &vars, r)?;
    if full.terms().any(|(e, _)| e.iter().any(|&x| x < 0)) {
        return Err(Error::Invalid("Alexander data must have non-negative exponents".into()));
    }
    let inter = if r == 1 { vec![vec![0]] } else { validate_intersections(r, intersections)? };

    // exact polynomials P_J for |J| >= 2, keyed by bitmask
    let mut polys: BTreeMap<u32, MultiLaurent> = BTreeMap::new();
    let full_mask = (1u32 << r) - 1;
    let mut branches: Vec<Option<Branch>> = (0..r).map(|_| None).collect();
    if r == 1 {
        let deg = full.max_grade(&[1]).unwrap_or(0);
        branches[0] = Some(Branch { numerator: full.clone(), k: 1, twice_delta: deg })
    } else {
        polys.insert(full_mask, full.clone());
        let mut masks: Vec<u32> = (1..full_mask).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
        for mask in masks {
            let drop = (0..r).find(|&i| mask >> i & 1 == 0).unwrap();
            let parent = &polys[&(mask | 1 << drop)];
            let at_one = evaluate_at_one(parent, drop);
            let mut m = vec![0; r];
            for j in 0..r {
                if mask >> j & 1 == 1 {
                    m[j] = inter[drop][j];
                }
            }
            if mask.count_ones() >= 2 {
                polys.insert(mask, divide_exact(&at_one, &m)?);
            } else {
                let i = mask.trailing_zeros() as usize;
                let k = m[i];
                let deg = at_one.max_grade(&vec![1; r]).unwrap_or(0);
                let twice_delta = deg - k + 1;
                if twice_delta < 0 || twice_delta % 2 != 0 {
                    return Err(Error::Invalid(format!("branch {} has inconsistent Alexander data", i + 1)));
                }
                branches[i] = Some(Branch { numerator: at_one, k, twice_delta })
            }
        }
    }
    let branches: Vec<Branch> = branches.into_iter().map(|b| b.unwrap()).collect();

    // conductor: c_i = 2 δ_i + Σ_{j≠i} (C_i, C_j); for r = 1 the degree of Δ is 2δ
    let c: Vec<i64> = (0..r)
        .map(|i| branches[i].twice_delta + (0..r).filter(|&j| j != i).map(|j| inter[i][j]).sum::<i64>())
        .collect();
    if r == 1 && branches[0].twice_delta % 2 != 0 {
        return Err(Error::Invalid("Alexander polynomial of a branch has odd degree".into()));
    }
    let conductor = LatticePoint::new(c)?;
    let hi: Vec<i64> = conductor.coords().iter().map(|x| x + margin.max(1)).collect();

    let mut acc = full.empty_like();
    for mask in 1..=full_mask {
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        let pj = if mask.count_ones() >= 2 {
            polys[&mask].clone()
        } else {
            let i = mask.trailing_zeros() as usize;
            let b = &branches[i];
            let mut step = vec![0; r];
            step[i] = b.k;
            geometric(&b.numerator, &step, &hi)
        };
        let shift: Vec<i64> = (0..r).map(|i| (mask >> i & 1) as i64).collect();
        acc = acc.add(&pj.shift(&shift).scale(sign));
    }
    for i in 0..r {
        let mut step = vec![0; r];
        step[i] = 1;
        acc = geometric(&acc, &step, &hi);
    }
    let rect = Rectangle::from_origin(LatticePoint::new(hi)?);
    let values: Vec<i64> = rect.points().map(|l| acc.coeff(l.coords())).collect();
    HilbertTable::from_values(rect, values, conductor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec()).unwrap()
    }

    fn ones(r: usize) -> Vec<Vec<Option<i64>>> {
        (0..r).map(|i| (0..r).map(|j| (i != j).then_some(1)).collect()).collect()
    }

    #[test]
    fn triple_point() {
        let h = hilbert_from_alexander("1 - t1*t2*t3", &ones(3), 2).unwrap();
        assert_eq!(h.conductor(), &p(&[2, 2, 2]));
        assert_eq!(h.h(&p(&[1, 1, 1])), 1);
        assert_eq!(h.delta(), 3);
    }

    #[test]
    fn node() {
        let h = hilbert_from_alexander("1", &ones(2), 2).unwrap();
        assert_eq!(h.conductor(), &p(&[1, 1]));
        assert_eq!(h.h(&p(&[1, 1])), 1);
    }

    #[test]
    fn cusp_3_4() {
        // Δ of the (3,4) torus knot
        let h = hilbert_from_alexander("1 - t1 + t1^3 - t1^5 + t1^6", &[vec![None]], 2).unwrap();
        let hv: Vec<i64> = (0..=8).map(|k| h.h(&p(&[k]))).collect();
        assert_eq!(hv, vec![0, 1, 1, 1, 2, 3, 3, 4, 5]);
    }

    #[test]
    fn non_polynomial_reduction_rejected() {
        assert!(hilbert_from_alexander("1 + t1*t2", &ones(2), 1).is_err());
    }
}
