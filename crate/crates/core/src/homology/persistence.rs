//! Boundary-matrix reduction over `Q` for a totally ordered filtration.
//!
//! Columns are combined fraction-free (`a*x - b*y`, then divided by the
//! content), so all arithmetic stays in `Z`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A cell in filtration order: its dimension and its boundary, given as
/// signed indices of earlier cells.
#[derive(Clone, Debug)]
pub struct Cell {
    pub dim: usize,
    pub boundary: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pairing {
    /// `(birth, death)`: the class created by `birth` is killed by `death`.
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

type Column = Vec<(usize, BigInt)>;

fn normalize(col: &mut Column) {
    let mut g = BigInt::zero();
    for (_, v) in col.iter() {
        g = g.gcd(v);
    }
    if g > BigInt::from(1) {
        for (_, v) in col.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a*x - b*y` for the leading coefficients `a` of `y`, `b` of `x`.
fn eliminate(x: &Column, y: &Column) -> Column {
    let a = &y.last().unwrap().1;
    let b = &x.last().unwrap().1;
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, &x[i].1 * a));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(&y[j].1 * b)));
            j += 1;
        } else {
            let v = &x[i].1 * a - &y[j].1 * b;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    normalize(&mut out);
    out
}

pub fn reduce(cells: &[Cell]) -> Pairing {
    let n = cells.len();
    let max_dim = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut reduced: Vec<Option<Column>> = vec![None; n];
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut cleared = vec![false; n];

    for q in (1..=max_dim).rev() {
        for j in 0..n {
            if cells[j].dim != q || cleared[j] {
                continue;
            }
            let mut col: Column = cells[j].boundary.iter().map(|&(i, v)| (i, BigInt::from(v))).collect();
            col.sort_by_key(|e| e.0);
            debug_assert!(col.iter().all(|e| e.0 < j), "boundary refers to a later cell");
            while let Some(&(low, _)) = col.last() {
                match pivot_of.get(&low) {
                    Some(&k) => col = eliminate(&col, reduced[k].as_ref().unwrap()),
                    None => break,
                }
            }
            if let Some(&(low, _)) = col.last() {
                pivot_of.insert(low, j);
                cleared[low] = true;
                reduced[j] = Some(col);
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = pivot_of.into_iter().collect();
    pairs.sort();
    let mut paired = vec![false; n];
    for &(b, d) in &pairs {
        paired[b] = true;
        paired[d] = true;
    }
    let essential = (0..n).filter(|&i| !paired[i]).collect();
    Pairing { pairs, essential }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_then_disk() {
        // four vertices, four edges forming a square loop, then the 2-cell
        let cells = vec![
            Cell { dim: 0, boundary: vec![] },
            Cell { dim: 0, boundary: vec![] },
            Cell { dim: 0, boundary: vec![] },
            Cell { dim: 0, boundary: vec![] },
            Cell { dim: 1, boundary: vec![(1, 1), (0, -1)] },
            Cell { dim: 1, boundary: vec![(3, 1), (1, -1)] },
            Cell { dim: 1, boundary: vec![(2, 1), (0, -1)] },
            Cell { dim: 1, boundary: vec![(3, 1), (2, -1)] },
            Cell { dim: 2, boundary: vec![(4, 1), (5, 1), (6, -1), (7, -1)] },
        ];
        let p = reduce(&cells);
        assert_eq!(p.essential, vec![0]);
        assert_eq!(p.pairs.len(), 4);
        assert!(p.pairs.contains(&(7, 8)));
    }

    #[test]
    fn two_to_one_coefficients_over_q() {
        // a 1-cell whose boundary is twice a vertex loop is still a rational boundary
        let cells = vec![
            Cell { dim: 0, boundary: vec![] },
            Cell { dim: 1, boundary: vec![] },
            Cell { dim: 2, boundary: vec![(1, 2)] },
        ];
        let p = reduce(&cells);
        assert_eq!(p.pairs, vec![(1, 2)]);
        assert_eq!(p.essential, vec![0]);
    }
}
