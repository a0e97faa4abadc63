//! Sublevel sets `S_n`, lattice homology as a graded `Z[U]`-module, the
//! graded root, the hat version and Euler characteristics.

pub mod module;
pub mod root;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::WeightTable;
use crate::homology::persistence::{self, Cell};
use crate::homology::{relative_homology, HomologyGroup};
use crate::lattice::{enumerate_cubes, Cube, LatticePoint, Rectangle};

pub use module::{kunneth, Summand, ZUModule};
pub use root::{graded_root, GradedRoot, RootVertex};

/// The smallest `R(0, c')` with `c' >= c + 1` containing every `S_n`, `n <= n_max`.
pub fn working_rectangle(w: &WeightTable, n_max: i64) -> Rectangle {
    let r = w.arity();
    let reach = (n_max + 2 * w.delta()).max(0);
    let mut hi: Vec<i64> = w.conductor().coords().iter().map(|x| x + 1).collect();
    for l in Rectangle::from_origin(LatticePoint::splat(r, reach)).points() {
        if w.w(&l) <= n_max {
            for (h, x) in hi.iter_mut().zip(l.coords()) {
                *h = (*h).max(*x);
            }
        }
    }
    Rectangle::from_origin(LatticePoint::new(hi).unwrap())
}

/// All cubes of a rectangle with weight at most `n_max`, ordered by weight,
/// then dimension, then enumeration order. Every `S_n` is a prefix.
#[derive(Clone, Debug)]
pub struct CubeLattice {
    rect: Rectangle,
    cubes: Vec<Cube>,
    weights: Vec<i64>,
    index: HashMap<Cube, usize>,
    n_max: i64,
}

impl CubeLattice {
    pub fn new(w: &WeightTable, rect: Rectangle, n_max: i64) -> Self {
        let mut keyed: Vec<(i64, usize, usize, Cube)> = enumerate_cubes(&rect)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (w.cube(&c), c.dim(), k, c))
            .filter(|(wt, ..)| *wt <= n_max)
            .collect();
        keyed.sort_by_key(|(wt, d, k, _)| (*wt, *d, *k));
        let weights = keyed.iter().map(|t| t.0).collect();
        let cubes: Vec<Cube> = keyed.into_iter().map(|t| t.3).collect();
        let index = cubes.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        CubeLattice { rect, cubes, weights, index, n_max }
    }

    pub fn rect(&self) -> &Rectangle {
        &self.rect
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn index_of(&self, c: &Cube) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Number of cubes of `S_n`.
    pub fn count_upto(&self, n: i64) -> usize {
        self.weights.partition_point(|&x| x <= n)
    }

    /// The cubes of `S_n`.
    pub fn sublevel(&self, n: i64) -> &[Cube] {
        &self.cubes[..self.count_upto(n)]
    }

    /// Persistence pairs of the weight filtration, as bars.
    pub fn barcode(&self) -> Vec<Bar> {
        let cells: Vec<Cell> = self
            .cubes
            .iter()
            .map(|c| Cell {
                dim: c.dim(),
                boundary: c.faces().into_iter().map(|(s, f)| (self.index[&f], s)).collect(),
            })
            .collect();
        let p = persistence::reduce(&cells);
        let mut bars: Vec<Bar> = p
            .pairs
            .iter()
            .filter(|(b, d)| self.weights[*b] < self.weights[*d])
            .map(|&(b, d)| Bar { dim: self.cubes[b].dim(), birth: self.weights[b], death: Some(self.weights[d]) })
            .chain(p.essential.iter().map(|&b| Bar { dim: self.cubes[b].dim(), birth: self.weights[b], death: None }))
            .collect();
        bars.sort();
        bars
    }
}

/// A persistence interval `[birth, death)` of the weight filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Bar {
    pub dim: usize,
    pub birth: i64,
    /// `None` when the class survives to `n_max`.
    pub death: Option<i64>,
}

/// Betti numbers of every `S_n`, `lo <= n <= hi`, from a barcode.
pub fn betti_table(bars: &[Bar], lo: i64, hi: i64) -> BTreeMap<i64, Vec<usize>> {
    let top = bars.iter().map(|b| b.dim + 1).max().unwrap_or(1);
    (lo..=hi)
        .map(|n| {
            let mut v = vec![0; top];
            for b in bars {
                if b.birth <= n && b.death.is_none_or(|d| n < d) {
                    v[b.dim] += 1;
                }
            }
            (n, v)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeHomology {
    pub min_weight: i64,
    pub n_max: i64,
    /// `H_b` for `b = 0..`.
    pub modules: Vec<ZUModule>,
    /// Exactly one class survives to `n_max`, in degree 0.
    pub stabilized: bool,
    #[serde(skip)]
    pub bars: Vec<Bar>,
}

impl LatticeHomology {
    pub fn from_lattice(lat: &CubeLattice, min_weight: i64) -> Self {
        let bars = lat.barcode();
        let top = bars.iter().map(|b| b.dim + 1).max().unwrap_or(1);
        let mut modules = vec![ZUModule::new(); top];
        for b in &bars {
            let s = match b.death {
                Some(d) => Summand::Finite { top: -2 * b.birth, len: d - b.birth },
                None => Summand::Tower { top: -2 * b.birth },
            };
            modules[b.dim].add(s, 1);
        }
        let essential: Vec<&Bar> = bars.iter().filter(|b| b.death.is_none()).collect();
        let stabilized = essential.len() == 1 && essential[0].dim == 0;
        LatticeHomology { min_weight, n_max: lat.n_max(), modules, stabilized, bars }
    }

    pub fn module(&self, b: usize) -> ZUModule {
        self.modules.get(b).cloned().unwrap_or_default()
    }

    /// `-m_w + Σ (-1)^q rank H_{q,red}`.
    pub fn euler_characteristic(&self) -> i64 {
        let alt: i64 = self
            .modules
            .iter()
            .enumerate()
            .map(|(q, m)| if q % 2 == 0 { 1 } else { -1 } * m.reduced_rank())
            .sum();
        -self.min_weight + alt
    }

    /// `H̄`: the module without one copy of `T_0(1)`, the class of the origin.
    pub fn reduced_at_origin(&self) -> Result<Vec<ZUModule>> {
        let mut out = self.modules.clone();
        if !out[0].remove(Summand::Finite { top: 0, len: 1 }) {
            return Err(Error::invariant("H_0 has no summand T_0(1) for the isolated origin"));
        }
        Ok(out)
    }
}

/// `Σ (-1)^{q+1} w(□)` over the cubes of `R(0, c)`.
pub fn euler_cube_sum(w: &WeightTable) -> i64 {
    enumerate_cubes(&Rectangle::from_origin(w.conductor().clone()))
        .iter()
        .map(|c| if c.dim() % 2 == 1 { 1 } else { -1 } * w.cube(c))
        .sum()
}

/// Nonzero `H_b(S_n, S_{n-1})` over `Z`.
#[derive(Clone, Debug, Serialize)]
pub struct HatEntry {
    pub n: i64,
    pub b: usize,
    pub group: HomologyGroup,
}

pub fn hat_homology(lat: &CubeLattice, min_weight: i64) -> Result<Vec<HatEntry>> {
    let mut out = Vec::new();
    for n in min_weight..=lat.n_max() {
        let groups = relative_homology(lat.sublevel(n).iter().cloned(), lat.sublevel(n - 1).iter().cloned())?;
        for (b, g) in groups.into_iter().enumerate() {
            if !g.is_zero() {
                out.push(HatEntry { n, b, group: g });
            }
        }
    }
    Ok(out)
}

pub fn hat_euler(entries: &[HatEntry]) -> i64 {
    entries.iter().map(|e| if e.b % 2 == 0 { 1 } else { -1 } * e.group.rank as i64).sum()
}

/// Weighted lattice restricted to `l >= 1`, as needed for `H̄` of a wedge part.
pub fn shifted_lattice(w: &WeightTable, n_max: i64) -> CubeLattice {
    let full = working_rectangle(w, n_max);
    let r = w.arity();
    let lo = LatticePoint::splat(r, 1);
    let hi = LatticePoint::max(&full.hi, &LatticePoint::splat(r, 1));
    CubeLattice::new(w, Rectangle::new(lo, hi).unwrap(), n_max)
}

/// Betti tables of `S_n ∩ R(0, c')` for each given `c'`.
pub fn rectangle_betti(w: &WeightTable, corners: &[LatticePoint], n_max: i64) -> Vec<BTreeMap<i64, Vec<usize>>> {
    corners
        .iter()
        .map(|c| {
            let lat = CubeLattice::new(w, Rectangle::from_origin(c.clone()), n_max);
            let mut t = betti_table(&lat.barcode(), w.min_weight(), n_max);
            for v in t.values_mut() {
                while v.len() > 1 && v.last() == Some(&0) {
                    v.pop();
                }
            }
            t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertTable;
    use crate::semigroup::ValueSemigroup;

    fn weights(s: &ValueSemigroup) -> WeightTable {
        let hi = LatticePoint::new(s.conductor().coords().iter().map(|x| x + 2).collect()).unwrap();
        WeightTable::new(HilbertTable::from_semigroup(s, &hi).unwrap())
    }

    fn cusp() -> WeightTable {
        weights(&ValueSemigroup::from_numerical_generators(&[3, 4]).unwrap())
    }

    #[test]
    fn cusp_homology_and_root() {
        let w = cusp();
        let rect = working_rectangle(&w, 2);
        assert!(rect.contains(&LatticePoint::new(vec![8]).unwrap()));
        let lat = CubeLattice::new(&w, rect, 2);
        let lh = LatticeHomology::from_lattice(&lat, w.min_weight());
        assert!(lh.stabilized);
        assert_eq!(lh.module(0).to_string(), "T^-_2 + T_0(1)^2");
        assert_eq!(lh.euler_characteristic(), 3);
        assert_eq!(euler_cube_sum(&w), 3);
        let root = graded_root(&lat, -1, 2);
        let counts: Vec<usize> = root.component_counts().into_values().collect();
        assert_eq!(counts, vec![1, 3, 1, 1]);
        assert_eq!(root.h0(), lh.module(0));
        assert_eq!(lat.sublevel(-1), &[Cube::vertex(LatticePoint::new(vec![3]).unwrap())]);
    }

    #[test]
    fn cusp_hat() {
        let w = cusp();
        let lat = CubeLattice::new(&w, working_rectangle(&w, 3), 3);
        let hat = hat_homology(&lat, -1).unwrap();
        let ranks: Vec<(i64, usize, usize)> = hat.iter().map(|e| (e.n, e.b, e.group.rank)).collect();
        assert_eq!(ranks, vec![(-1, 0, 1), (0, 0, 2), (1, 1, 2)]);
        assert_eq!(hat_euler(&hat), 1);
    }

    #[test]
    fn smooth_is_a_tower() {
        let w = weights(&ValueSemigroup::from_numerical_generators(&[1]).unwrap());
        let lat = CubeLattice::new(&w, working_rectangle(&w, 5), 5);
        let lh = LatticeHomology::from_lattice(&lat, 0);
        assert_eq!(lh.module(0).to_string(), "T^-_0");
        assert_eq!(lh.euler_characteristic(), 0);
    }
}
