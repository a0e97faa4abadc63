//! Local lattice homology at a single lattice point, the multigraded `E¹`
//! term built from it, and the maps `d¹`, `Y_i` and `U` on generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::WeightTable;
use crate::homology::{homology_basis, ChainComplex, DegreeBasis};
use crate::lattice::{Cube, DirSet, LatticePoint};

/// A chain supported on the cubes `(l, I)` at a fixed base `l`.
pub type LocalChain = BTreeMap<DirSet, BigInt>;

/// Relative homology of `{(0, I) : w-pattern(I) <= rel}` modulo cubes off the origin.
struct Template {
    complex: ChainComplex,
    bases: Vec<DegreeBasis>,
}

impl Template {
    fn build(pattern: &[i64], rel: i64, r: usize) -> Result<Self> {
        let origin = LatticePoint::zero(r);
        let mut cubes = Vec::new();
        let mut sub = Vec::new();
        for top in DirSet::full(r).subsets().filter(|i| pattern[i.0 as usize] <= rel) {
            for j in top.subsets() {
                let corner = origin.plus_dirs(j);
                for k in DirSet(top.0 & !j.0).subsets() {
                    let c = Cube::new(corner.clone(), k);
                    if j.is_empty() {
                        cubes.push(c);
                    } else {
                        cubes.push(c.clone());
                        sub.push(c);
                    }
                }
            }
        }
        let complex = ChainComplex::relative(cubes, sub)?;
        let bases = homology_basis(&complex);
        Ok(Template { complex, bases })
    }

    fn basis(&self, b: usize) -> Option<&DegreeBasis> {
        self.bases.get(b)
    }

    fn rank(&self, b: usize) -> usize {
        self.basis(b).map_or(0, |d| d.group.rank)
    }
}

/// Local groups `H_b(S_n ∩ X_{-l}, S_n ∩ X_{-l} ∩ X_{-|l|-1})`, cached by the
/// weight pattern of the cubes at `l`.
pub struct LocalLattice<'a> {
    w: &'a WeightTable,
    cache: Mutex<HashMap<(Vec<i64>, i64), Arc<Template>>>,
}

/// One nonzero local group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEntry {
    pub l: LatticePoint,
    pub n: i64,
    pub b: usize,
    pub rank: usize,
}

impl<'a> LocalLattice<'a> {
    pub fn new(w: &'a WeightTable) -> Self {
        LocalLattice { w, cache: Mutex::new(HashMap::new()) }
    }

    pub fn weights(&self) -> &WeightTable {
        self.w
    }

    /// `w((l, I)) - w(l)` for every `I`, indexed by bitmask.
    fn pattern(&self, l: &LatticePoint) -> Vec<i64> {
        let r = self.w.arity();
        let wl = self.w.w(l);
        DirSet::full(r).subsets().map(|i| self.w.cube(&Cube::new(l.clone(), i)) - wl).collect()
    }

    fn template(&self, l: &LatticePoint, n: i64) -> Result<Option<Arc<Template>>> {
        let rel = n - self.w.w(l);
        if rel < 0 {
            return Ok(None);
        }
        let pattern = self.pattern(l);
        let rel = rel.min(*pattern.iter().max().unwrap());
        let key = (pattern, rel);
        if let Some(t) = self.cache.lock().unwrap().get(&key) {
            return Ok(Some(t.clone()));
        }
        let t = Arc::new(Template::build(&key.0, rel, self.w.arity())?);
        self.cache.lock().unwrap().insert(key, t.clone());
        Ok(Some(t))
    }

    pub fn rank(&self, l: &LatticePoint, n: i64, b: usize) -> Result<usize> {
        Ok(self.template(l, n)?.map_or(0, |t| t.rank(b)))
    }

    /// Every nonzero group at `l`, checking torsion-freeness and `n = w(l) + b`.
    pub fn entries_at(&self, l: &LatticePoint) -> Result<Vec<LocalEntry>> {
        let wl = self.w.w(l);
        let top = *self.pattern(l).iter().max().unwrap();
        let mut out = Vec::new();
        for rel in 0..=top {
            let t = self.template(l, wl + rel)?.unwrap();
            for (b, basis) in t.bases.iter().enumerate() {
                if !basis.group.is_torsion_free() {
                    return Err(Error::invariant(format!("local group at {l}, n = {}, b = {b} has torsion", wl + rel)));
                }
                if basis.group.rank == 0 {
                    continue;
                }
                if rel != b as i64 {
                    return Err(Error::invariant(format!(
                        "local group at {l} is nonzero at n = {}, b = {b}, off n = w(l) + b",
                        wl + rel
                    )));
                }
                out.push(LocalEntry { l: l.clone(), n: wl + rel, b, rank: basis.group.rank });
            }
        }
        Ok(out)
    }

    /// Generators of `H_b` at `(l, n)` as chains at `l`.
    pub fn generators(&self, l: &LatticePoint, n: i64, b: usize) -> Result<Vec<LocalChain>> {
        let Some(t) = self.template(l, n)? else { return Ok(Vec::new()) };
        let Some(basis) = t.basis(b) else { return Ok(Vec::new()) };
        let cells = t.complex.basis(b);
        Ok(basis
            .generators
            .iter()
            .map(|g| cells.iter().zip(g).filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c.dirs, v.clone())).collect())
            .collect())
    }

    /// Coordinates of a relative cycle at `(l, n)` in the generator basis.
    pub fn coordinates(&self, l: &LatticePoint, n: i64, b: usize, z: &LocalChain) -> Result<Vec<BigInt>> {
        let origin = LatticePoint::zero(l.arity());
        let Some(t) = self.template(l, n)? else {
            return match z.is_empty() {
                true => Ok(Vec::new()),
                false => Err(Error::invariant(format!("chain at {l} lies outside S_{n}"))),
            };
        };
        let Some(basis) = t.basis(b) else {
            return match z.values().all(|v| v.is_zero()) {
                true => Ok(Vec::new()),
                false => Err(Error::invariant(format!("chain at {l} in degree {b} lies outside S_{n}"))),
            };
        };
        let mut v = vec![BigInt::zero(); t.complex.dim(b)];
        for (dirs, c) in z {
            let idx = t
                .complex
                .index_of(&Cube::new(origin.clone(), *dirs))
                .ok_or_else(|| Error::invariant(format!("cube ({l}, {dirs:?}) is not in S_{n}")))?;
            v[idx] += c;
        }
        Ok(basis.coordinates(&v))
    }

    /// `d¹` of a chain at `(l, n)` in degree `b`: its outer faces, grouped by
    /// their base `l + E_i`, in coordinates of the groups there.
    pub fn d1(&self, l: &LatticePoint, n: i64, b: usize, z: &LocalChain) -> Result<Vec<(usize, Vec<BigInt>)>> {
        if b == 0 {
            return Ok(Vec::new());
        }
        let mut parts: BTreeMap<usize, LocalChain> = BTreeMap::new();
        for (dirs, c) in z {
            for (k, i) in dirs.iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                *parts.entry(i).or_default().entry(dirs.without(i)).or_default() += c * sign;
            }
        }
        parts
            .into_iter()
            .map(|(i, chain)| Ok((i, self.coordinates(&l.plus_unit(i), n, b - 1, &chain)?)))
            .collect()
    }

    /// `Y_i` of a chain at `(l, n)`: the translate at `(l + E_i, n + 1)`.
    pub fn y(&self, i: usize, l: &LatticePoint, n: i64, b: usize, z: &LocalChain) -> Result<Vec<BigInt>> {
        let target = l.plus_unit(i);
        for dirs in z.keys() {
            let before = self.w.cube(&Cube::new(l.clone(), *dirs));
            let after = self.w.cube(&Cube::new(target.clone(), *dirs));
            if after > before + 1 {
                return Err(Error::invariant(format!("w(y_{}(□)) > w(□) + 1 at ({l}, {dirs:?})", i + 1)));
            }
        }
        self.coordinates(&target, n + 1, b, z)
    }

    /// `U` of a chain at `(l, n)`: the same chain at `(l, n + 1)`.
    pub fn u(&self, l: &LatticePoint, n: i64, b: usize, z: &LocalChain) -> Result<Vec<BigInt>> {
        self.coordinates(l, n + 1, b, z)
    }
}

pub(crate) fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertTable;
    use crate::semigroup::ValueSemigroup;
    use num_traits::Signed;

    fn node() -> WeightTable {
        let c = LatticePoint::new(vec![1, 1]).unwrap();
        let s = ValueSemigroup::explicit(c.clone(), [LatticePoint::zero(2), c.clone()]).unwrap();
        WeightTable::new(HilbertTable::from_semigroup(&s, &LatticePoint::splat(2, 3)).unwrap())
    }

    fn p(v: &[i64]) -> LatticePoint {
        LatticePoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn node_local_groups() {
        let w = node();
        let loc = LocalLattice::new(&w);
        let e = loc.entries_at(&p(&[1, 1])).unwrap();
        let got: Vec<(i64, usize, usize)> = e.iter().map(|x| (x.n, x.b, x.rank)).collect();
        assert_eq!(got, vec![(0, 0, 1), (1, 1, 1)]);
        assert!(loc.entries_at(&p(&[1, 0])).unwrap().is_empty());
        assert_eq!(loc.entries_at(&p(&[0, 0])).unwrap().len(), 1);
    }

    #[test]
    fn node_d1_is_y1_minus_y2() {
        let w = node();
        let loc = LocalLattice::new(&w);
        let g0 = &loc.generators(&p(&[1, 1]), 0, 0).unwrap()[0];
        let g1 = &loc.generators(&p(&[1, 1]), 1, 1).unwrap()[0];
        let d = loc.d1(&p(&[1, 1]), 1, 1, g1).unwrap();
        let y1 = loc.y(0, &p(&[1, 1]), 0, 0, g0).unwrap();
        let y2 = loc.y(1, &p(&[1, 1]), 0, 0, g0).unwrap();
        assert_eq!(d.len(), 2);
        let (a, b) = (&d[0].1[0], &d[1].1[0]);
        assert_eq!(a, &(-b));
        assert_eq!((a * &y1[0]).abs(), BigInt::from(1));
        assert_eq!(y1, y2);
        assert!(is_zero_vec(&loc.u(&p(&[1, 1]), 0, 0, g0).unwrap()));
    }
}
