//! `E¹` as a module over `Z[Y_1, .., Y_r]`: matrices of `d¹`, `Y_i` and `U`
//! between the level-graded pieces, and the checks built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::local::{is_zero_vec, LocalEntry, LocalLattice};
use crate::error::{Error, Result};
use crate::homology::IntMatrix;
use crate::lattice::{LatticePoint, Rectangle};

/// `E¹(n, d, b)` for the default level `d = |l|`, as a list of points with
/// their local ranks.
pub struct E1Grid<'a, 'w> {
    loc: &'a LocalLattice<'w>,
    cells: BTreeMap<(i64, i64, usize), Vec<(LatticePoint, usize)>>,
    n_max: i64,
}

impl<'a, 'w> E1Grid<'a, 'w> {
    pub fn new(loc: &'a LocalLattice<'w>, entries: &[LocalEntry], n_max: i64) -> Self {
        let mut cells: BTreeMap<(i64, i64, usize), Vec<(LatticePoint, usize)>> = BTreeMap::new();
        for e in entries.iter().filter(|e| e.n <= n_max) {
            cells.entry((e.n, e.l.total(), e.b)).or_default().push((e.l.clone(), e.rank));
        }
        for v in cells.values_mut() {
            v.sort();
        }
        E1Grid { loc, cells, n_max }
    }

    pub fn positions(&self) -> impl Iterator<Item = (i64, i64, usize)> + '_ {
        self.cells.keys().copied()
    }

    fn basis(&self, n: i64, d: i64, b: usize) -> &[(LatticePoint, usize)] {
        self.cells.get(&(n, d, b)).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, n: i64, d: i64, b: usize) -> usize {
        self.basis(n, d, b).iter().map(|x| x.1).sum()
    }

    fn offset(&self, n: i64, d: i64, b: usize, l: &LatticePoint) -> Option<usize> {
        let mut o = 0;
        for (p, k) in self.basis(n, d, b) {
            if p == l {
                return Some(o);
            }
            o += k;
        }
        None
    }

    fn place(&self, m: &mut IntMatrix, col: usize, pos: (i64, i64, usize), l: &LatticePoint, v: &[BigInt]) -> Result<()> {
        if is_zero_vec(v) {
            return Ok(());
        }
        let o = self
            .offset(pos.0, pos.1, pos.2, l)
            .ok_or_else(|| Error::invariant(format!("image at {l} outside the tabulated E¹ at {pos:?}")))?;
        for (k, x) in v.iter().enumerate() {
            m.set(o + k, col, x.clone());
        }
        Ok(())
    }

    /// Apply `f` to every generator of `E¹(n, d, b)`, collecting images in `E¹(tgt)`.
    fn matrix(
        &self,
        (n, d, b): (i64, i64, usize),
        tgt: (i64, i64, usize),
        f: impl Fn(&LatticePoint, &super::LocalChain) -> Result<Vec<(LatticePoint, Vec<BigInt>)>>,
    ) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(self.dim(tgt.0, tgt.1, tgt.2), self.dim(n, d, b));
        let mut col = 0;
        for (l, _) in self.basis(n, d, b) {
            for g in self.loc.generators(l, n, b)? {
                for (p, v) in f(l, &g)? {
                    self.place(&mut m, col, tgt, &p, &v)?;
                }
                col += 1;
            }
        }
        Ok(m)
    }

    /// `d¹ : E¹(n, d, b) -> E¹(n, d + 1, b - 1)`.
    pub fn d1(&self, n: i64, d: i64, b: usize) -> Result<IntMatrix> {
        if b == 0 {
            return Ok(IntMatrix::zeros(0, self.dim(n, d, b)));
        }
        self.matrix((n, d, b), (n, d + 1, b - 1), |l, g| {
            Ok(self.loc.d1(l, n, b, g)?.into_iter().map(|(i, v)| (l.plus_unit(i), v)).collect())
        })
    }

    /// `Y_i : E¹(n, d, b) -> E¹(n + 1, d + 1, b)`.
    pub fn y(&self, i: usize, n: i64, d: i64, b: usize) -> Result<IntMatrix> {
        self.matrix((n, d, b), (n + 1, d + 1, b), |l, g| Ok(vec![(l.plus_unit(i), self.loc.y(i, l, n, b, g)?)]))
    }

    /// `U : E¹(n, d, b) -> E¹(n + 1, d, b)`.
    pub fn u(&self, n: i64, d: i64, b: usize) -> Result<IntMatrix> {
        self.matrix((n, d, b), (n + 1, d, b), |l, g| Ok(vec![(l.clone(), self.loc.u(l, n, b, g)?)]))
    }

    /// Positions whose `Y`/`U` targets are still inside the tabulated range.
    fn interior(&self) -> Vec<(i64, i64, usize)> {
        self.positions().filter(|p| p.0 < self.n_max).collect()
    }

    /// `Y_i d¹ = d¹ Y_i` on every generator.
    pub fn check_commutation(&self, r: usize) -> Result<()> {
        for (n, d, b) in self.interior().into_iter().filter(|p| p.2 >= 1) {
            let d_src = self.d1(n, d, b)?;
            for i in 0..r {
                let lhs = self.y(i, n, d + 1, b - 1)?.mul(&d_src);
                let rhs = self.d1(n + 1, d + 1, b)?.mul(&self.y(i, n, d, b)?);
                if lhs != rhs {
                    return Err(Error::invariant(format!(
                        "Y_{} does not commute with d¹ at n = {n}, d = {d}, b = {b}",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `U = 0` on `E¹`.
    pub fn check_u_vanishes(&self) -> Result<()> {
        for (n, d, b) in self.interior() {
            if !self.u(n, d, b)?.is_zero() {
                return Err(Error::invariant(format!("U is nonzero on E¹ at n = {n}, d = {d}, b = {b}")));
            }
        }
        Ok(())
    }

    /// On `E²` all `Y_i` agree: `(Y_i - Y_j)` of a `d¹`-cycle is a `d¹`-boundary.
    pub fn check_y_collapse(&self, r: usize) -> Result<()> {
        for (n, d, b) in self.interior() {
            let cycles = self.d1(n, d, b)?.kernel();
            if cycles.is_empty() {
                continue;
            }
            let boundaries = self.d1(n + 1, d, b + 1)?;
            let base = boundaries.rank();
            let ys: Vec<IntMatrix> = (0..r).map(|i| self.y(i, n, d, b)).collect::<Result<_>>()?;
            for i in 0..r {
                for j in i + 1..r {
                    let mut cols: Vec<Vec<BigInt>> = (0..boundaries.cols()).map(|c| boundaries.column(c)).collect();
                    for z in &cycles {
                        let a = ys[i].mul_vec(z);
                        let bj = ys[j].mul_vec(z);
                        cols.push(a.into_iter().zip(bj).map(|(x, y)| x - y).collect());
                    }
                    if IntMatrix::from_columns(self.dim(n + 1, d + 1, b), &cols).rank() != base {
                        return Err(Error::invariant(format!(
                            "Y_{} - Y_{} is nonzero on E² at n = {n}, d = {d}, b = {b}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Number of `Y`-module generators of `E¹` at `(l, b)`: the local rank
/// minus the rank of the images of the `Y_i` from `l - E_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YGenerators {
    pub l: Vec<i64>,
    pub b: usize,
    pub n: i64,
    pub rank: usize,
    pub generators: usize,
}

pub fn y_generators(loc: &LocalLattice, rect: &Rectangle) -> Result<Vec<YGenerators>> {
    let r = rect.arity();
    let mut out = Vec::new();
    for l in rect.points() {
        for e in loc.entries_at(&l)? {
            let mut cols = Vec::new();
            for i in (0..r).filter(|&i| l.coords()[i] >= 1) {
                let mut src = l.coords().to_vec();
                src[i] -= 1;
                let src = LatticePoint::new(src)?;
                for g in loc.generators(&src, e.n - 1, e.b)? {
                    cols.push(loc.y(i, &src, e.n - 1, e.b, &g)?);
                }
            }
            let image = if cols.is_empty() { 0 } else { IntMatrix::from_columns(e.rank, &cols).rank() };
            out.push(YGenerators { l: l.coords().to_vec(), b: e.b, n: e.n, rank: e.rank, generators: e.rank - image });
        }
    }
    Ok(out)
}

/// A maximal run `{start, .., end}` on which `Y` acts injectively on a
/// one-branch `E¹`; `end = None` when it reaches the conductor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YChain {
    pub start: i64,
    pub end: Option<i64>,
}

impl std::fmt::Display for YChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.end {
            Some(e) => {
                let v: Vec<String> = (self.start..=e).map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", v.join(","))
            }
            None => write!(f, "{{{},...}}", self.start),
        }
    }
}

pub fn y_chains(loc: &LocalLattice, conductor: i64) -> Result<Vec<YChain>> {
    let at = |s: i64| LatticePoint::new(vec![s]).unwrap();
    let mut out = Vec::new();
    let mut s = 0;
    while s <= conductor {
        let p = at(s);
        let n = loc.weights().w(&p);
        if loc.rank(&p, n, 0)? == 0 {
            s += 1;
            continue;
        }
        let start = s;
        loop {
            if s >= conductor {
                out.push(YChain { start, end: None });
                return Ok(out);
            }
            let n = loc.weights().w(&at(s));
            let g = &loc.generators(&at(s), n, 0)?[0];
            if is_zero_vec(&loc.y(0, &at(s), n, 0, g)?) {
                out.push(YChain { start, end: Some(s) });
                break;
            }
            s += 1;
        }
        s += 1;
    }
    Ok(out)
}
