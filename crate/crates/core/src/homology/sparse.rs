//! Invariant factors of large sparse integer matrices.
//!
//! Unit pivots are eliminated in sparse form; whatever is left (usually
//! nothing for cubical boundaries) goes through the dense Smith form.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, SparseMatrix};
use super::snf::smith_normal_form;

/// Rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factors {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn invariant_factors(m: &SparseMatrix) -> Factors {
    let mut cols: Vec<BTreeMap<usize, BigInt>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|&(i, v)| (i, BigInt::from(v))).collect())
        .collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_cols[i].insert(j);
        }
    }
    let mut alive = vec![true; m.cols];
    let mut units = 0usize;

    loop {
        let mut progress = false;
        for j in 0..m.cols {
            if !alive[j] || cols[j].is_empty() {
                continue;
            }
            let pivot_row = cols[j]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .map(|(&i, _)| i)
                .min_by_key(|&i| row_cols[i].len());
            let Some(i) = pivot_row else { continue };
            let p = cols[j][&i].clone();
            let pivot_col = std::mem::take(&mut cols[j]);
            for &k in pivot_col.keys() {
                row_cols[k].remove(&j);
            }
            let others: Vec<usize> = row_cols[i].iter().copied().collect();
            for k in others {
                let f = -(&cols[k][&i] * &p);
                for (&r, v) in &pivot_col {
                    let e = cols[k].entry(r).or_insert_with(BigInt::zero);
                    *e += v * &f;
                    if e.is_zero() {
                        cols[k].remove(&r);
                        row_cols[r].remove(&k);
                    } else {
                        row_cols[r].insert(k);
                    }
                }
            }
            debug_assert!(row_cols[i].is_empty());
            alive[j] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let rest_cols: Vec<usize> = (0..m.cols).filter(|&j| alive[j] && !cols[j].is_empty()).collect();
    if rest_cols.is_empty() {
        return Factors { rank: units, torsion: Vec::new() };
    }
    let rest_rows: Vec<usize> = {
        let s: BTreeSet<usize> = rest_cols.iter().flat_map(|&j| cols[j].keys().copied()).collect();
        s.into_iter().collect()
    };
    let pos: BTreeMap<usize, usize> = rest_rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut dense = IntMatrix::zeros(rest_rows.len(), rest_cols.len());
    for (jj, &j) in rest_cols.iter().enumerate() {
        for (i, v) in &cols[j] {
            dense.set(pos[i], jj, v.clone());
        }
    }
    let s = smith_normal_form(&dense);
    let f = s.invariant_factors();
    Factors {
        rank: units + f.len(),
        torsion: f.into_iter().filter(|x| !x.is_one()).collect(),
    }
}
