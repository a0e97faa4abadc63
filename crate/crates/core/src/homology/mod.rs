//! Integer homology of cubical complexes and pairs.

pub mod matrix;
pub mod persistence;
pub mod snf;
pub mod sparse;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::Cube;

pub use matrix::{IntMatrix, SparseMatrix};
pub use snf::{smith_normal_form, Snf};

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let as_str: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    as_str.serialize(s)
}

/// `Z^rank ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "ser_bigints", skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// Cubes graded by dimension with their boundary matrices.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    cells: Vec<Vec<Cube>>,
    /// `boundaries[q] : C_q -> C_{q-1}`; `boundaries[0]` has zero rows.
    boundaries: Vec<SparseMatrix>,
    index: Vec<HashMap<Cube, usize>>,
}

impl ChainComplex {
    /// The complex spanned by a face-closed set of cubes.
    pub fn from_cubes(cubes: impl IntoIterator<Item = Cube>) -> Result<Self> {
        Self::relative(cubes, std::iter::empty())
    }

    /// The quotient complex `C/A`; `sub` must be face-closed and contained in `cubes`.
    pub fn relative(
        cubes: impl IntoIterator<Item = Cube>,
        sub: impl IntoIterator<Item = Cube>,
    ) -> Result<Self> {
        let all: BTreeSet<Cube> = cubes.into_iter().collect();
        let sub: BTreeSet<Cube> = sub.into_iter().collect();
        for c in &all {
            for (_, f) in c.faces() {
                if !all.contains(&f) {
                    return Err(Error::invariant(format!("complex not face-closed: {f} missing (face of {c})")));
                }
            }
        }
        for c in &sub {
            if !all.contains(c) {
                return Err(Error::invariant(format!("subcomplex cube {c} is not in the complex")));
            }
            for (_, f) in c.faces() {
                if !sub.contains(&f) {
                    return Err(Error::invariant(format!("subcomplex not face-closed: {f} missing (face of {c})")));
                }
            }
        }
        let top = all.iter().map(|c| c.dim()).max().map_or(0, |d| d + 1);
        let mut cells: Vec<Vec<Cube>> = vec![Vec::new(); top];
        for c in all.iter().filter(|c| !sub.contains(c)) {
            cells[c.dim()].push(c.clone());
        }
        let index: Vec<HashMap<Cube, usize>> =
            cells.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect()).collect();
        let mut boundaries = Vec::with_capacity(top);
        for q in 0..top {
            let rows = if q == 0 { 0 } else { cells[q - 1].len() };
            let mut m = SparseMatrix::zeros(rows, cells[q].len());
            if q > 0 {
                for (j, c) in cells[q].iter().enumerate() {
                    let mut col: Vec<(usize, i64)> = c
                        .faces()
                        .into_iter()
                        .filter_map(|(s, f)| index[q - 1].get(&f).map(|&i| (i, s)))
                        .collect();
                    col.sort();
                    m.columns[j] = col;
                }
            }
            boundaries.push(m);
        }
        let cx = ChainComplex { cells, boundaries, index };
        cx.check_d_squared()?;
        Ok(cx)
    }

    fn check_d_squared(&self) -> Result<()> {
        for q in 2..self.boundaries.len() {
            if !self.boundaries[q - 1].mul(&self.boundaries[q]).is_zero() {
                return Err(Error::invariant(format!("boundary squared is nonzero in degree {q}")));
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> usize {
        self.cells.len()
    }

    pub fn basis(&self, q: usize) -> &[Cube] {
        self.cells.get(q).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, q: usize) -> usize {
        self.basis(q).len()
    }

    pub fn boundary(&self, q: usize) -> SparseMatrix {
        match self.boundaries.get(q) {
            Some(m) => m.clone(),
            None => SparseMatrix::zeros(if q == 0 { 0 } else { self.dim(q - 1) }, self.dim(q)),
        }
    }

    pub fn index_of(&self, c: &Cube) -> Option<usize> {
        self.index.get(c.dim()).and_then(|m| m.get(c).copied())
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.top_degree()).map(|q| if q % 2 == 0 { 1 } else { -1 } * self.dim(q) as i64).sum()
    }
}

/// Homology groups in degrees `0..top`.
pub fn homology(c: &ChainComplex) -> Vec<HomologyGroup> {
    let top = c.top_degree();
    let factors: Vec<sparse::Factors> = (0..=top).map(|q| sparse::invariant_factors(&c.boundary(q))).collect();
    (0..top)
        .map(|q| HomologyGroup {
            rank: c.dim(q) - factors[q].rank - factors[q + 1].rank,
            torsion: factors[q + 1].torsion.clone(),
        })
        .collect()
}

/// Homology of the pair `(cubes, sub)`.
pub fn relative_homology(
    cubes: impl IntoIterator<Item = Cube>,
    sub: impl IntoIterator<Item = Cube>,
) -> Result<Vec<HomologyGroup>> {
    Ok(homology(&ChainComplex::relative(cubes, sub)?))
}

/// Homology in one degree with explicit generators and a coordinate map.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub group: HomologyGroup,
    /// Cycle representatives as coefficient vectors on the degree-`q` basis.
    pub generators: Vec<Vec<BigInt>>,
    /// `None` for free generators, `Some(d)` for a generator of order `d`.
    pub orders: Vec<Option<BigInt>>,
    coords: IntMatrix,
}

impl DegreeBasis {
    /// Coordinates of a cycle in the generator basis; torsion parts reduced.
    pub fn coordinates(&self, z: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.coords.mul_vec(z);
        for (v, ord) in y.iter_mut().zip(&self.orders) {
            if let Some(d) = ord {
                *v = num_integer::Integer::mod_floor(v, d);
            }
        }
        y
    }
}

/// Generators and coordinates of `H_q` for every degree; meant for small complexes.
pub fn homology_basis(c: &ChainComplex) -> Vec<DegreeBasis> {
    let top = c.top_degree();
    let dense: Vec<IntMatrix> = (0..=top).map(|q| c.boundary(q).to_dense()).collect();
    (0..top)
        .map(|q| {
            let s = smith_normal_form(&dense[q]);
            let k = s.rank;
            let kernel = s.v.cols_from(k);
            let to_kernel = s.v_inv.rows_from(k);
            let m = to_kernel.mul(&dense[q + 1]);
            let t = smith_normal_form(&m);
            let gens_all = kernel.mul(&t.u_inv);
            let coords_all = t.u.mul(&to_kernel);
            let mut keep = Vec::new();
            let mut orders = Vec::new();
            for i in 0..kernel.cols() {
                if i < t.rank {
                    let d = t.d.get(i, i);
                    if !d.is_one() {
                        keep.push(i);
                        orders.push(Some(d.clone()));
                    }
                } else {
                    keep.push(i);
                    orders.push(None);
                }
            }
            let group = HomologyGroup {
                rank: orders.iter().filter(|o| o.is_none()).count(),
                torsion: orders.iter().flatten().cloned().collect(),
            };
            DegreeBasis {
                group,
                generators: keep.iter().map(|&i| gens_all.column(i)).collect(),
                orders,
                coords: coords_all.select_rows(&keep),
            }
        })
        .collect()
}

/// Degree-wise matrices between the bases of two complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub matrices: Vec<IntMatrix>,
}

impl ChainMap {
    /// The map sending each basis cube through `f` (`None` means zero).
    pub fn from_cube_map(
        src: &ChainComplex,
        tgt: &ChainComplex,
        f: impl Fn(&Cube) -> Option<(i64, Cube)>,
    ) -> Result<Self> {
        let top = src.top_degree().max(tgt.top_degree());
        let mut matrices = Vec::with_capacity(top);
        for q in 0..top {
            let mut m = IntMatrix::zeros(tgt.dim(q), src.dim(q));
            for (j, c) in src.basis(q).iter().enumerate() {
                if let Some((s, img)) = f(c) {
                    if img.dim() != q {
                        return Err(Error::invariant(format!("cube map changes dimension at {c}")));
                    }
                    if let Some(i) = tgt.index_of(&img) {
                        m.set(i, j, BigInt::from(s));
                    }
                }
            }
            matrices.push(m);
        }
        Ok(ChainMap { matrices })
    }

    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        ChainMap {
            matrices: self.matrices.iter().zip(&first.matrices).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    fn check_commutes(&self, src: &ChainComplex, tgt: &ChainComplex) -> Result<()> {
        for q in 1..self.matrices.len() {
            let lhs = tgt.boundary(q).to_dense().mul(&self.matrices[q]);
            let rhs = self.matrices[q - 1].mul(&src.boundary(q).to_dense());
            if lhs != rhs {
                return Err(Error::invariant(format!("chain map does not commute with boundary in degree {q}")));
            }
        }
        Ok(())
    }
}

/// Matrices of `f_*` in the bases from [`homology_basis`].
pub fn induced_map(
    f: &ChainMap,
    src: &ChainComplex,
    tgt: &ChainComplex,
) -> Result<Vec<IntMatrix>> {
    f.check_commutes(src, tgt)?;
    let sb = homology_basis(src);
    let tb = homology_basis(tgt);
    Ok(induced_with_bases(f, &sb, &tb))
}

pub fn induced_with_bases(f: &ChainMap, sb: &[DegreeBasis], tb: &[DegreeBasis]) -> Vec<IntMatrix> {
    let top = sb.len().max(tb.len());
    (0..top)
        .map(|q| {
            let (Some(s), Some(t), Some(m)) = (sb.get(q), tb.get(q), f.matrices.get(q)) else {
                let rows = tb.get(q).map_or(0, |t| t.generators.len());
                let cols = sb.get(q).map_or(0, |s| s.generators.len());
                return IntMatrix::zeros(rows, cols);
            };
            let cols: Vec<Vec<BigInt>> =
                s.generators.iter().map(|g| t.coordinates(&m.mul_vec(g))).collect();
            let mut out = IntMatrix::zeros(t.generators.len(), cols.len());
            for (j, c) in cols.iter().enumerate() {
                for (i, v) in c.iter().enumerate() {
                    if !v.is_zero() {
                        out.set(i, j, v.clone());
                    }
                }
            }
            out
        })
        .collect()
}
