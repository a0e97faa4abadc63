//! Pages of the level filtration of one `S_n` (or one of its components),
//! read off from a persistence pairing in level order.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::homology::persistence::{self, Cell};
use crate::lattice::Cube;

/// Position `(d, b)`: level `d` and homological degree `b = -d + q`.
pub type Pos = (i64, usize);

/// A nonzero differential `d^k : E^k(d, b) -> E^k(d + k, b - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Differential {
    pub k: usize,
    pub from: Pos,
    pub to: Pos,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelPages {
    pub n: i64,
    /// `pages[k - 1]` holds the ranks of `E^k` for `k = 1..=k(n)`; the last one is `E^∞`.
    pub pages: Vec<BTreeMap<Pos, usize>>,
    pub differentials: Vec<Differential>,
    /// `k(n)`: the first page equal to `E^∞`.
    pub k: usize,
}

impl LevelPages {
    /// Ranks of `E^k`; pages past `k(n)` equal `E^∞`.
    pub fn page(&self, k: usize) -> &BTreeMap<Pos, usize> {
        &self.pages[k.clamp(1, self.k) - 1]
    }

    pub fn infinity(&self) -> &BTreeMap<Pos, usize> {
        self.pages.last().unwrap()
    }

    pub fn rank(&self, k: usize, d: i64, b: usize) -> usize {
        self.page(k).get(&(d, b)).copied().unwrap_or(0)
    }

    /// Total rank of `E^∞` in each degree `b`.
    pub fn betti(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (&(_, b), &r) in self.infinity() {
            if v.len() <= b {
                v.resize(b + 1, 0);
            }
            v[b] += r;
        }
        v
    }
}

/// Level of a cube: `a · base`.
pub fn level(c: &Cube, a: &[i64]) -> i64 {
    c.base.dot(a)
}

/// Pages of the filtration `X_{-d} = {□ : a·base(□) >= d}` of a face-closed set of cubes.
pub fn level_pages(n: i64, cubes: &[Cube], a: &[i64]) -> LevelPages {
    let mut order: Vec<(i64, usize, usize)> =
        cubes.iter().enumerate().map(|(k, c)| (-level(c, a), c.dim(), k)).collect();
    order.sort();
    let pos: HashMap<&Cube, usize> = order.iter().enumerate().map(|(p, &(_, _, k))| (&cubes[k], p)).collect();
    let cells: Vec<Cell> = order
        .iter()
        .map(|&(_, dim, k)| Cell {
            dim,
            boundary: cubes[k]
                .faces()
                .into_iter()
                .map(|(s, f)| (*pos.get(&f).expect("cube set is not face-closed"), s))
                .collect(),
        })
        .collect();
    let lv = |p: usize| -order[p].0;
    let dim = |p: usize| order[p].1;
    let pairing = persistence::reduce(&cells);

    let pairs: Vec<(Pos, Pos, usize)> = pairing
        .pairs
        .iter()
        .map(|&(s, t)| ((lv(s), dim(s)), (lv(t), dim(t)), (lv(s) - lv(t)) as usize))
        .filter(|p| p.2 > 0)
        .collect();
    let gap = pairs.iter().map(|p| p.2).max().unwrap_or(0);
    let k = gap + 1;
    let mut essential: BTreeMap<Pos, usize> = BTreeMap::new();
    for &e in &pairing.essential {
        *essential.entry((lv(e), dim(e))).or_default() += 1;
    }
    let pages = (1..=k)
        .map(|page| {
            let mut m = essential.clone();
            for (s, t, g) in &pairs {
                if *g >= page {
                    *m.entry(*s).or_default() += 1;
                    *m.entry(*t).or_default() += 1;
                }
            }
            m
        })
        .collect();
    let mut diffs: BTreeMap<(usize, Pos, Pos), usize> = BTreeMap::new();
    for (s, t, g) in &pairs {
        *diffs.entry((*g, *t, *s)).or_default() += 1;
    }
    let differentials =
        diffs.into_iter().map(|((k, from, to), rank)| Differential { k, from, to, rank }).collect();
    LevelPages { n, pages, differentials, k }
}
