//! Level filtrations of `S_n`, their spectral-sequence pages, the series
//! `PE_k` and `PE₁(T, Q, h)`, HFL rank tables and `Y`-operators.

pub mod local;
pub mod pages;
pub mod yops;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{motivic_coefficient, WeightTable};
use crate::lattice::{Cube, LatticePoint, Rectangle};
use crate::lattice_homology::{CubeLattice, GradedRoot, RootVertex};
use crate::series::{rationalize, MultiLaurent, RationalSeries, Rationalized};

pub use local::{LocalChain, LocalEntry, LocalLattice};
pub use pages::{level_pages, Differential, LevelPages, Pos};

pub const PE_VARS: [&str; 3] = ["T", "Q", "h"];

/// `T_1..T_r, Q, h`.
pub fn bold_vars(r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("T{i}")).chain(["Q".to_string(), "h".to_string()]).collect()
}

/// Pages of every `S_n` for `lo <= n <= n_max`, one task per `n`.
pub fn all_pages(lat: &CubeLattice, lo: i64, a: &[i64]) -> Vec<LevelPages> {
    (lo..=lat.n_max()).into_par_iter().map(|n| level_pages(n, lat.sublevel(n), a)).collect()
}

/// `PE_k(T, Q, h)` through `Q^{n_max}`; `None` gives `PE_∞`.
pub fn pe_series(levels: &[LevelPages], k: Option<usize>) -> MultiLaurent {
    let mut s = MultiLaurent::zero(&PE_VARS, 1);
    for lp in levels {
        let page = match k {
            Some(k) => lp.page(k),
            None => lp.infinity(),
        };
        for (&(d, b), &rank) in page {
            s.add_term(vec![d, lp.n, b as i64], rank as i64);
        }
    }
    s
}

/// `k(n)` for every `n` and their maximum.
pub fn k_invariants(levels: &[LevelPages]) -> (BTreeMap<i64, usize>, usize) {
    let per: BTreeMap<i64, usize> = levels.iter().map(|lp| (lp.n, lp.k)).collect();
    let max = per.values().copied().max().unwrap_or(1);
    (per, max)
}

/// Rational form over the smallest power of `(1 - TQ)`, at most `r`, whose
/// numerator vanishes on the last `r + 1` weights below `n_max`.
pub fn rational_pe(trunc: &MultiLaurent, r: usize, n_max: i64) -> Rationalized {
    let g = [0, 1, 0];
    let mut last = None;
    for m in 1..=r as u32 {
        let out = rationalize(trunc, vec![(vec![1, 1, 0], m)], &g, n_max, r as i64 + 1, None);
        if out.tail_detected {
            return out;
        }
        last = Some(out);
    }
    last.unwrap()
}

/// The lattice points on which `PE₁(T, Q, h)` is tabulated: `R(0, c + 2)`,
/// cut to `|l| <= t_max` when given.
#[derive(Clone, Debug)]
pub struct BoldBox {
    pub rect: Rectangle,
    pub t_max: Option<i64>,
}

impl BoldBox {
    pub fn new(w: &WeightTable, t_max: Option<i64>) -> Self {
        let hi = LatticePoint::new(w.conductor().coords().iter().map(|x| x + 2).collect()).unwrap();
        BoldBox { rect: Rectangle::from_origin(hi), t_max }
    }

    pub fn contains(&self, l: &[i64]) -> bool {
        let p = LatticePoint::new(l.to_vec()).unwrap();
        self.rect.contains(&p) && self.t_max.is_none_or(|t| p.total() <= t)
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.rect.points().filter(move |l| self.t_max.is_none_or(|t| l.total() <= t))
    }
}

/// Nonzero local groups at the given points.
pub fn local_entries(loc: &LocalLattice, points: impl Iterator<Item = LatticePoint>) -> Result<Vec<LocalEntry>> {
    let pts: Vec<LatticePoint> = points.collect();
    let per: Vec<Vec<LocalEntry>> = pts.par_iter().map(|l| loc.entries_at(l)).collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// `PE₁` from local relative homology: `Σ rank · T^l Q^n h^b`.
pub fn bold_pe1_local(entries: &[LocalEntry], r: usize) -> MultiLaurent {
    let mut s = MultiLaurent::with_vars(bold_vars(r), r);
    for e in entries {
        let mut ex = e.l.coords().to_vec();
        ex.extend([e.n, e.b as i64]);
        s.add_term(ex, e.rank as i64);
    }
    s
}

/// `PE₁` from the motivic coefficients: `p^m_{l,k} T^l Q^{w(l)} (-Qh)^k`,
/// where `p^m_l(q) = Σ_k p^m_{l,k} q^{k + h(l)}`.
pub fn bold_pe1_motivic(w: &WeightTable, points: impl Iterator<Item = LatticePoint>) -> MultiLaurent {
    let h = w.hilbert();
    let r = h.arity();
    let mut s = MultiLaurent::with_vars(bold_vars(r), r);
    for l in points {
        let hl = h.h(&l);
        for (e, c) in motivic_coefficient(h, &l) {
            let k = e - hl;
            let mut ex = l.coords().to_vec();
            ex.extend([w.w(&l) + k, k]);
            s.add_term(ex, if k % 2 == 0 { c } else { -c });
        }
    }
    s
}

/// `∏ (1 - T_i Q)` as denominator data over the bold variables.
pub fn bold_denominator(r: usize) -> Vec<(Vec<i64>, u32)> {
    (0..r)
        .map(|i| {
            let mut e = vec![0; r + 2];
            e[i] = 1;
            e[r] = 1;
            (e, 1)
        })
        .collect()
}

/// Rational form of a tabulated `PE₁`; the flag reports whether the
/// numerator is supported in `R(0, c)`.
pub fn bold_rational(trunc: &MultiLaurent, bx: &BoldBox, c: &LatticePoint) -> (RationalSeries, bool) {
    let r = c.arity();
    let den = bold_denominator(r);
    let probe = RationalSeries::new(trunc.unit_like(), den.clone());
    let num = trunc.mul(&probe.denominator_poly()).filter(|e| bx.contains(&e[..r]));
    let bounded = num.terms().all(|(e, _)| e[..r].iter().zip(c.coords()).all(|(x, y)| x <= y));
    (RationalSeries::new(num, den), bounded)
}

/// `Σ_□ (-1)^q Q^{w(□)} T^{l(□)}` over the cubes with base in the box.
pub fn bold_cube_sum(w: &WeightTable, bx: &BoldBox) -> MultiLaurent {
    let r = w.arity();
    let mut s = MultiLaurent::with_vars(bold_vars(r), r);
    for l in bx.points() {
        for dirs in crate::lattice::DirSet::full(r).subsets() {
            let c = Cube::new(l.clone(), dirs);
            let mut ex = l.coords().to_vec();
            ex.extend([w.cube(&c), 0]);
            s.add_term(ex, if c.dim().is_multiple_of(2) { 1 } else { -1 });
        }
    }
    s
}

/// One entry of the HFL rank table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HflEntry {
    pub l: Vec<i64>,
    pub maslov: i64,
    pub rank: usize,
}

/// `rank HFL⁻_{-2h(l)-b}(L, l) = rank H_b` of the local complex at `(l, w(l) + b)`.
pub fn hfl_ranks(loc: &LocalLattice, l: &LatticePoint) -> Result<Vec<HflEntry>> {
    let h = loc.weights().hilbert().h(l);
    Ok(loc
        .entries_at(l)?
        .into_iter()
        .map(|e| HflEntry { l: l.coords().to_vec(), maslov: -2 * h - e.b as i64, rank: e.rank })
        .collect())
}

/// Ranks of the multigraded `E¹` summed over `a·l = d`: `(n, d, b) -> rank`.
pub fn e1_by_level(entries: &[LocalEntry], a: &[i64], n_max: i64) -> BTreeMap<(i64, i64, usize), usize> {
    let mut out = BTreeMap::new();
    for e in entries.iter().filter(|e| e.n <= n_max) {
        *out.entry((e.n, e.l.dot(a), e.b)).or_default() += e.rank;
    }
    out
}

/// Series attached to one vertex of the graded root.
#[derive(Clone, Debug, Serialize)]
pub struct Decoration {
    pub n: i64,
    pub index: usize,
    /// `PE₁(T, h)^v`.
    pub bold_pe1: MultiLaurent,
    /// `PE_1(T, h)^v`.
    pub pe1: MultiLaurent,
    /// `PE_∞(T, h)^v`.
    pub pe_inf: MultiLaurent,
    pub k: usize,
    #[serde(skip)]
    pub pages: LevelPages,
}

/// Pages and series of every component of every `S_n` in the root.
pub fn decorations(lat: &CubeLattice, root: &GradedRoot, entries: &[LocalEntry]) -> Vec<Decoration> {
    let rect = lat.rect();
    let r = rect.arity();
    let ones = vec![1; r];
    let verts: Vec<&RootVertex> = root.levels.iter().flatten().collect();
    verts
        .par_iter()
        .map(|v| {
            let members: std::collections::HashSet<usize> = v.points.iter().copied().collect();
            let cubes: Vec<Cube> = lat
                .sublevel(v.n)
                .iter()
                .filter(|c| members.contains(&rect.index_of(&c.base).unwrap()))
                .cloned()
                .collect();
            let pages = level_pages(v.n, &cubes, &ones);
            let th = |page: &BTreeMap<Pos, usize>| {
                let mut s = MultiLaurent::zero(&["T", "h"], 1);
                for (&(d, b), &k) in page {
                    s.add_term(vec![d, b as i64], k as i64);
                }
                s
            };
            let mut bold = MultiLaurent::with_vars(
                (1..=r).map(|i| format!("T{i}")).chain(["h".to_string()]).collect(),
                r,
            );
            for e in entries.iter().filter(|e| e.n == v.n) {
                if rect.index_of(&e.l).is_some_and(|i| members.contains(&i)) {
                    let mut ex = e.l.coords().to_vec();
                    ex.push(e.b as i64);
                    bold.add_term(ex, e.rank as i64);
                }
            }
            Decoration {
                n: v.n,
                index: v.index,
                bold_pe1: bold,
                pe1: th(pages.page(1)),
                pe_inf: th(pages.infinity()),
                k: pages.k,
                pages,
            }
        })
        .collect()
}

/// `Σ_{□ ∈ S_{n_max}} (-1)^q Q^{w(□)} T^{a·l(□)}`, with `h` absent.
pub fn cube_euler_series(lat: &CubeLattice, a: &[i64]) -> MultiLaurent {
    let mut s = MultiLaurent::zero(&["T", "Q"], 1);
    for (i, c) in lat.cubes().iter().enumerate() {
        s.add_term(vec![c.base.dot(a), lat.weight(i)], if c.dim() % 2 == 0 { 1 } else { -1 });
    }
    s
}

/// Check that a `(T, Q, h)` series specialised at `h = -1` times `(1 - Q)`
/// agrees with a `(T, Q)` series through `Q^{n_max}`.
pub fn euler_identity(pe: &MultiLaurent, cubes: &MultiLaurent, n_max: i64) -> Result<bool> {
    let at = crate::series::set_var(pe, "h", -1)?;
    let one_minus_q = MultiLaurent::parse("1 - Q", &["T", "Q"], 1)?;
    let lhs = at.mul(&one_minus_q).filter(|e| e[1] <= n_max);
    Ok(lhs == cubes.filter(|e| e[1] <= n_max))
}

/// Validate a weight vector for the level filtration.
pub fn check_weights(a: &[i64], r: usize) -> Result<()> {
    if a.len() != r {
        return Err(Error::ArityMismatch { expected: r, found: a.len() });
    }
    if a.iter().any(|&x| x <= 0) {
        return Err(Error::Invalid("level weights must be positive".into()));
    }
    Ok(())
}
