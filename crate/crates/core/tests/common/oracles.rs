//! Independent reference computations used by the oracle tests.

use std::collections::BTreeSet;

use curvelat::curve::Curve;
use curvelat::hilbert::HilbertTable;
use curvelat::homology::{smith_normal_form, IntMatrix};
use curvelat::lattice::{LatticePoint, Rectangle};
use curvelat::semigroup::CurveSpec;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

/// Fraction-free (Bareiss) determinant.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors as quotients of consecutive determinantal divisors.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = g.gcd(&det(minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

fn identity(n: usize) -> IntMatrix {
    IntMatrix::identity(n)
}

/// Compare the Smith form against the minors oracle and verify its transforms.
pub fn check_snf(m: &[Vec<i64>]) -> Result<(), String> {
    let a = IntMatrix::from_rows(m);
    let snf = smith_normal_form(&a);
    let want: Vec<BigInt> = invariant_factors_by_minors(m).into_iter().map(BigInt::from).collect();
    if snf.invariant_factors() != want {
        return Err(format!("{m:?}: factors {:?}, oracle {want:?}", snf.invariant_factors()));
    }
    if snf.u.mul(&a).mul(&snf.v) != snf.d {
        return Err(format!("{m:?}: u m v is not the diagonal form"));
    }
    if snf.u.mul(&snf.u_inv) != identity(a.rows()) || snf.v.mul(&snf.v_inv) != identity(a.cols()) {
        return Err(format!("{m:?}: transforms are not unimodular"));
    }
    if a.rank() != want.len() {
        return Err(format!("{m:?}: rank {} vs {}", a.rank(), want.len()));
    }
    Ok(())
}

pub fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=5usize, 1..=5usize, 0..3u32).prop_flat_map(|(r, c, low)| {
        // Products of thin factors give rank-deficient matrices with nontrivial factors.
        let inner = if low == 0 { 1 } else { r.max(c) };
        (
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, inner), r),
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), inner),
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r),
            Just(low),
        )
            .prop_map(|(x, y, z, low)| {
                if low == 2 {
                    return z;
                }
                (0..x.len())
                    .map(|i| (0..y[0].len()).map(|j| (0..y.len()).map(|k| x[i][k] * y[k][j]).sum()).collect())
                    .collect()
            })
    })
}

/// `count` matrices from a fixed seed.
pub fn sample_matrices(count: usize) -> Vec<Vec<Vec<i64>>> {
    let mut runner = TestRunner::deterministic();
    let s = matrix_strategy();
    (0..count).map(|_| s.new_tree(&mut runner).unwrap().current()).collect()
}

/// Elements `<= bound` of the numerical semigroup generated by `gens`.
pub fn numerical_elements(gens: &[i64], bound: i64) -> BTreeSet<i64> {
    let mut reach = vec![false; bound as usize + 1];
    reach[0] = true;
    for v in 1..=bound as usize {
        reach[v] = gens.iter().any(|&g| g as usize <= v && reach[v - g as usize]);
    }
    (0..=bound).filter(|&v| reach[v as usize]).collect()
}

/// Elements of the semigroup in `R(0, hi)` built from the description alone.
pub fn brute_semigroup(spec: &CurveSpec, hi: &[i64]) -> Option<BTreeSet<Vec<i64>>> {
    match spec {
        CurveSpec::Numerical { generators, .. } => {
            Some(numerical_elements(generators, hi[0]).into_iter().map(|v| vec![v]).collect())
        }
        CurveSpec::Wedge { parts } => {
            let mut acc: BTreeSet<Vec<i64>> = [vec![]].into_iter().collect();
            let mut offset = 0;
            for p in parts {
                let r = Curve::from_spec(p).ok()?.arity();
                let elems: Vec<Vec<i64>> = brute_semigroup(p, &hi[offset..offset + r])?
                    .into_iter()
                    .filter(|e| e.iter().any(|&x| x != 0))
                    .collect();
                acc = acc.iter().flat_map(|a| elems.iter().map(move |e| [a.clone(), e.clone()].concat())).collect();
                offset += r;
            }
            acc.insert(vec![0; hi.len()]);
            Some(acc)
        }
        CurveSpec::Explicit { conductor, elements, .. } => {
            let base: BTreeSet<Vec<i64>> = elements.iter().cloned().collect();
            let rect = Rectangle::from_origin(LatticePoint::new(hi.to_vec()).unwrap());
            Some(
                rect.points()
                    .map(|l| l.coords().to_vec())
                    .filter(|l| base.contains(&l.iter().zip(conductor).map(|(a, b)| *a.min(b)).collect::<Vec<_>>()))
                    .collect(),
            )
        }
        CurveSpec::PlaneAlexander { .. } => None,
    }
}

/// `h` on `R(0, hi)` by stepping along coordinate paths:
/// `h(l + E_i) - h(l) = 1` iff some `s` in S has `s_i = l_i` and `s >= l`.
pub fn hilbert_dp(elements: &BTreeSet<Vec<i64>>, hi: &[i64]) -> Vec<(Vec<i64>, i64)> {
    let rect = Rectangle::from_origin(LatticePoint::new(hi.to_vec()).unwrap());
    let mut out: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut known = std::collections::HashMap::new();
    for l in rect.points() {
        let l = l.coords().to_vec();
        let h = match l.iter().position(|&x| x > 0) {
            None => 0,
            Some(i) => {
                let mut prev = l.clone();
                prev[i] -= 1;
                let step = elements
                    .iter()
                    .any(|s| s[i] == prev[i] && (0..s.len()).all(|j| j == i || s[j] >= prev[j]));
                known[&prev] + step as i64
            }
        };
        known.insert(l.clone(), h);
        out.push((l, h));
    }
    out
}

/// Compare the closed-form tail of a table built on `R(0, c)` with the DP on `R(0, c + 3)`.
pub fn check_hilbert_tail(spec: &CurveSpec) -> Result<usize, String> {
    let curve = Curve::from_spec(spec).map_err(|e| e.to_string())?;
    let c = curve.conductor().clone();
    // Generators beyond the box cannot matter: the DP only asks for s >= l with s_i = l_i.
    let big: Vec<i64> = c.coords().iter().map(|x| x + 3).collect();
    let elements = brute_semigroup(spec, &big).ok_or("no brute-force description")?;
    let small = HilbertTable::from_semigroup(&curve.semigroup, &c).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (l, h) in hilbert_dp(&elements, &big) {
        let p = LatticePoint::new(l.clone()).unwrap();
        let closed = small.h(&LatticePoint::min(&p, &c)) + l.iter().zip(c.coords()).map(|(a, b)| (a - b).max(0)).sum::<i64>();
        if small.h(&p) != h || closed != h || curve.hilbert().h(&p) != h {
            return Err(format!("h{l:?}: dp {h}, table {}, closed form {closed}", small.h(&p)));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Saturated membership against explicit generation on `0..=3c` for one branch.
pub fn check_membership(spec: &CurveSpec) -> Result<usize, String> {
    let curve = Curve::from_spec(spec).map_err(|e| e.to_string())?;
    let CurveSpec::Numerical { generators, .. } = spec else { return Err("not numerical".into()) };
    let c = curve.conductor().coords()[0];
    let bound = 3 * c.max(1);
    let elems = numerical_elements(generators, bound);
    for v in 0..=bound {
        if curve.semigroup.contains(&LatticePoint::new(vec![v]).unwrap()) != elems.contains(&v) {
            return Err(format!("membership of {v} in <{generators:?}>"));
        }
    }
    let gaps = (0..=bound).filter(|v| !elems.contains(v)).count() as i64;
    if gaps != curve.delta() {
        return Err(format!("delta {} vs {gaps} gaps", curve.delta()));
    }
    Ok(bound as usize + 1)
}
