//! Lattice points, cubes and rectangles in `Z^r`.
//!
//! A cube is a pair `(l, I)` of a base point and a set of directions. Its
//! vertices are `l + E_J` for `J ⊆ I`, and it is oriented by the increasing
//! order of `I`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^r_{>=0}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Invalid("lattice point of arity 0".into()));
        }
        if let Some(x) = coords.iter().find(|&&x| x < 0) {
            return Err(Error::Invalid(format!("negative coordinate {x} in lattice point")));
        }
        Ok(LatticePoint(coords))
    }

    pub fn zero(r: usize) -> Self {
        LatticePoint(vec![0; r])
    }

    pub fn splat(r: usize, v: i64) -> Self {
        assert!(v >= 0);
        LatticePoint(vec![v; r])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|l|`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dot(&self, a: &[i64]) -> i64 {
        self.0.iter().zip(a).map(|(x, y)| x * y).sum()
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut c = self.0.clone();
        c[i] += 1;
        LatticePoint(c)
    }

    /// `l + E_J` for the direction set `J`.
    pub fn plus_dirs(&self, dirs: DirSet) -> Self {
        let mut c = self.0.clone();
        for i in dirs.iter() {
            c[i] += 1;
        }
        LatticePoint(c)
    }

    pub fn plus(&self, other: &LatticePoint) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn min(&self, other: &LatticePoint) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn max(&self, other: &LatticePoint) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &LatticePoint) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference, `None` if some coordinate would be negative.
    pub fn checked_sub(&self, other: &LatticePoint) -> Option<Self> {
        let v: Vec<i64> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        v.iter().all(|&x| x >= 0).then_some(LatticePoint(v))
    }

    pub fn concat(parts: &[LatticePoint]) -> Self {
        LatticePoint(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A subset of `{0, .., r-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DirSet(pub u32);

impl DirSet {
    pub const EMPTY: DirSet = DirSet(0);

    pub fn full(r: usize) -> Self {
        assert!(r < 32);
        DirSet((1u32 << r) - 1)
    }

    pub fn single(i: usize) -> Self {
        DirSet(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        DirSet(idx.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        DirSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        DirSet(self.0 & !(1 << i))
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = DirSet> {
        let m = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == m { None } else { Some(((s | !m).wrapping_add(1)) & m) };
            Some(DirSet(s))
        })
    }
}

impl fmt::Debug for DirSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<usize> = self.iter().map(|i| i + 1).collect();
        write!(f, "{v:?}")
    }
}

/// The cube `(l, I)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Cube {
    pub base: LatticePoint,
    pub dirs: DirSet,
}

impl Cube {
    pub fn new(base: LatticePoint, dirs: DirSet) -> Self {
        debug_assert!(dirs.iter().all(|i| i < base.arity()));
        Cube { base, dirs }
    }

    pub fn vertex(l: LatticePoint) -> Self {
        Cube { base: l, dirs: DirSet::EMPTY }
    }

    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.dirs.subsets().map(|j| self.base.plus_dirs(j))
    }

    /// Codimension-one faces with their boundary signs.
    ///
    /// For `I = {i_1 < .. < i_q}` the `k`-th direction contributes
    /// `(-1)^(k-1) [(l + E_{i_k}, I - i_k) - (l, I - i_k)]`.
    pub fn faces(&self) -> Vec<(i64, Cube)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for (k, i) in self.dirs.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let rest = self.dirs.without(i);
            out.push((sign, Cube::new(self.base.plus_unit(i), rest)));
            out.push((-sign, Cube::new(self.base.clone(), rest)));
        }
        out
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {:?}]", self.base, self.dirs)
    }
}

/// The box `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Rectangle {
    pub lo: LatticePoint,
    pub hi: LatticePoint,
}

impl Rectangle {
    pub fn new(lo: LatticePoint, hi: LatticePoint) -> Result<Self> {
        if lo.arity() != hi.arity() {
            return Err(Error::ArityMismatch { expected: lo.arity(), found: hi.arity() });
        }
        if !lo.le(&hi) {
            return Err(Error::Invalid(format!("rectangle corners {lo} and {hi} are not ordered")));
        }
        Ok(Rectangle { lo, hi })
    }

    /// `R(0, hi)`.
    pub fn from_origin(hi: LatticePoint) -> Self {
        Rectangle { lo: LatticePoint::zero(hi.arity()), hi }
    }

    pub fn arity(&self) -> usize {
        self.lo.arity()
    }

    pub fn contains(&self, l: &LatticePoint) -> bool {
        self.lo.le(l) && l.le(&self.hi)
    }

    pub fn contains_cube(&self, c: &Cube) -> bool {
        self.contains(&c.base) && self.contains(&c.base.plus_dirs(c.dirs))
    }

    fn side(&self, i: usize) -> usize {
        (self.hi.0[i] - self.lo.0[i] + 1) as usize
    }

    pub fn num_points(&self) -> usize {
        (0..self.arity()).map(|i| self.side(i)).product()
    }

    /// Row-major index of a point, last coordinate fastest.
    pub fn index_of(&self, l: &LatticePoint) -> Option<usize> {
        if !self.contains(l) {
            return None;
        }
        let mut idx = 0;
        for i in 0..self.arity() {
            idx = idx * self.side(i) + (l.0[i] - self.lo.0[i]) as usize;
        }
        Some(idx)
    }

    pub fn point_at(&self, mut idx: usize) -> LatticePoint {
        let r = self.arity();
        let mut c = vec![0; r];
        for i in (0..r).rev() {
            let s = self.side(i);
            c[i] = self.lo.0[i] + (idx % s) as i64;
            idx /= s;
        }
        LatticePoint(c)
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        (0..self.num_points()).map(|k| self.point_at(k))
    }
}

/// Every cube of the rectangle, ordered by base and then by direction bitmask.
pub fn enumerate_cubes(rect: &Rectangle) -> Vec<Cube> {
    let r = rect.arity();
    let mut out = Vec::new();
    for l in rect.points() {
        let free = DirSet::from_indices(&(0..r).filter(|&i| l.0[i] < rect.hi.0[i]).collect::<Vec<_>>());
        for d in free.subsets() {
            out.push(Cube::new(l.clone(), d));
        }
    }
    out
}
