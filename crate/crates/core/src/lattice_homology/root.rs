//! The graded root: connected components of the tower `S_n`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::module::{Summand, ZUModule};
use super::CubeLattice;

/// A component of `S_n`, identified by its level and index among the
/// components of that level (ordered by first lattice point).
#[derive(Clone, Debug, Serialize)]
pub struct RootVertex {
    pub n: i64,
    pub index: usize,
    /// Lattice points of the component, as indices into the lattice rectangle.
    #[serde(skip)]
    pub points: Vec<usize>,
    /// Index of the component at level `n + 1` containing this one.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedRoot {
    pub min_level: i64,
    pub max_level: i64,
    /// `levels[k]` holds the components of `S_{min_level + k}`.
    pub levels: Vec<Vec<RootVertex>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Components of every `S_n` for `min_level <= n <= max_level`.
pub fn graded_root(lat: &CubeLattice, min_level: i64, max_level: i64) -> GradedRoot {
    let rect = lat.rect();
    let npts = rect.num_points();
    let mut uf = UnionFind((0..npts).collect());
    let mut present = vec![false; npts];
    let mut levels: Vec<Vec<RootVertex>> = Vec::new();
    let mut cursor = 0;
    let cubes = lat.cubes();
    for n in min_level..=max_level {
        while cursor < cubes.len() && lat.weight(cursor) <= n {
            let c = &cubes[cursor];
            match c.dim() {
                0 => present[rect.index_of(&c.base).unwrap()] = true,
                1 => {
                    let mut vs = c.vertices();
                    let a = rect.index_of(&vs.next().unwrap()).unwrap();
                    let b = rect.index_of(&vs.next().unwrap()).unwrap();
                    uf.union(a, b);
                }
                _ => {}
            }
            cursor += 1;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for p in (0..npts).filter(|&p| present[p]) {
            groups.entry(uf.find(p)).or_default().push(p);
        }
        // roots are minimal indices, so BTreeMap order is first-point order
        let comp_of: BTreeMap<usize, usize> = groups.keys().enumerate().map(|(i, &root)| (root, i)).collect();
        let vertices: Vec<RootVertex> = groups
            .into_values()
            .enumerate()
            .map(|(index, points)| RootVertex { n, index, points, parent: None })
            .collect();
        if let Some(last) = levels.last_mut() {
            for v in last.iter_mut() {
                v.parent = Some(comp_of[&uf.find(v.points[0])]);
            }
        }
        levels.push(vertices);
    }
    GradedRoot { min_level, max_level, levels }
}

impl GradedRoot {
    pub fn component_counts(&self) -> BTreeMap<i64, usize> {
        self.levels.iter().enumerate().map(|(k, v)| (self.min_level + k as i64, v.len())).collect()
    }

    /// `H_0` by the elder rule; components alive at the top level count as
    /// towers.
    pub fn h0(&self) -> ZUModule {
        let mut out = ZUModule::new();
        // birth level of the class carried by each vertex of the previous level
        let mut births: Vec<i64> = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            let n = self.min_level + k as i64;
            let mut incoming: Vec<Vec<i64>> = vec![Vec::new(); level.len()];
            if k > 0 {
                for (v, b) in self.levels[k - 1].iter().zip(&births) {
                    incoming[v.parent.unwrap()].push(*b);
                }
            }
            let mut next = Vec::with_capacity(level.len());
            for inc in incoming.iter_mut() {
                if inc.is_empty() {
                    next.push(n);
                    continue;
                }
                // oldest survives; the order of equal births does not matter
                inc.sort();
                next.push(inc[0]);
                for &b in &inc[1..] {
                    out.add(Summand::Finite { top: -2 * b, len: n - b }, 1);
                }
            }
            births = next;
        }
        for b in births {
            out.add(Summand::Tower { top: -2 * b }, 1);
        }
        out
    }

    /// DOT rendering; vertices are labelled by `-w` and component index, with
    /// an optional extra line per vertex.
    pub fn to_dot(&self, label: impl Fn(&RootVertex) -> Option<String>) -> String {
        let mut s = String::from("digraph graded_root {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
        for level in &self.levels {
            for v in level {
                let mut text = format!("{}\\n#{}", -v.n, v.index);
                if let Some(extra) = label(v) {
                    text.push_str("\\n");
                    text.push_str(&extra);
                }
                let _ = writeln!(s, "  v{}_{} [label=\"{}\"];", node_id(v.n), v.index, text);
            }
        }
        for level in &self.levels {
            for v in level {
                if let Some(p) = v.parent {
                    let _ = writeln!(s, "  v{}_{} -> v{}_{};", node_id(v.n), v.index, node_id(v.n + 1), p);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn node_id(n: i64) -> String {
    if n < 0 {
        format!("m{}", -n)
    } else {
        n.to_string()
    }
}
