//! Graded `Z[U]`-modules built from towers `T^-_a = Z[U]` and finite pieces
//! `T_a(k) = Z[U]/(U^k)`, with the top degree `a` as subscript.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    Tower { top: i64 },
    Finite { top: i64, len: i64 },
}

impl Summand {
    pub fn top(&self) -> i64 {
        match *self {
            Summand::Tower { top } | Summand::Finite { top, .. } => top,
        }
    }

    fn shifted(self, s: i64) -> Self {
        match self {
            Summand::Tower { top } => Summand::Tower { top: top + s },
            Summand::Finite { top, len } => Summand::Finite { top: top + s, len },
        }
    }

    fn sort_key(&self) -> (u8, i64, i64) {
        match *self {
            Summand::Tower { top } => (0, -top, 0),
            Summand::Finite { top, len } => (1, -top, -len),
        }
    }
}

impl Ord for Summand {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Summand {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Tower { top } => write!(f, "T^-_{top}"),
            Summand::Finite { top, len } => write!(f, "T_{top}({len})"),
        }
    }
}

/// A direct sum of summands with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZUModule {
    parts: BTreeMap<Summand, usize>,
}

impl ZUModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, s: Summand, mult: usize) {
        if mult > 0 {
            *self.parts.entry(s).or_default() += mult;
        }
    }

    /// Remove one copy of `s`; false if absent.
    pub fn remove(&mut self, s: Summand) -> bool {
        match self.parts.get_mut(&s) {
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    self.parts.remove(&s);
                }
                true
            }
            None => false,
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (Summand, usize)> + '_ {
        self.parts.iter().map(|(s, m)| (*s, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn towers(&self) -> usize {
        self.parts().filter(|(s, _)| matches!(s, Summand::Tower { .. })).map(|(_, m)| m).sum()
    }

    /// `Z`-rank of the finite part.
    pub fn reduced_rank(&self) -> i64 {
        self.parts()
            .map(|(s, m)| match s {
                Summand::Finite { len, .. } => len * m as i64,
                Summand::Tower { .. } => 0,
            })
            .sum()
    }

    pub fn shift(&self, s: i64) -> Self {
        let mut out = ZUModule::new();
        for (p, m) in self.parts() {
            out.add(p.shifted(s), m);
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, m) in other.parts() {
            out.add(p, m);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = ZUModule::new();
        for (a, ma) in self.parts() {
            for (b, mb) in other.parts() {
                let top = a.top() + b.top();
                let s = match (a, b) {
                    (Summand::Tower { .. }, Summand::Tower { .. }) => Summand::Tower { top },
                    (Summand::Tower { .. }, Summand::Finite { len, .. })
                    | (Summand::Finite { len, .. }, Summand::Tower { .. }) => Summand::Finite { top, len },
                    (Summand::Finite { len: x, .. }, Summand::Finite { len: y, .. }) => {
                        Summand::Finite { top, len: x.min(y) }
                    }
                };
                out.add(s, ma * mb);
            }
        }
        out
    }

    pub fn tor(&self, other: &Self) -> Self {
        let mut out = ZUModule::new();
        for (a, ma) in self.parts() {
            for (b, mb) in other.parts() {
                if let (Summand::Finite { top: s, len: x }, Summand::Finite { top: t, len: y }) = (a, b) {
                    out.add(Summand::Finite { top: s + t, len: x.min(y) }, ma * mb);
                }
            }
        }
        out
    }
}

impl fmt::Display for ZUModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let items: Vec<String> = self
            .parts()
            .map(|(s, m)| if m == 1 { s.to_string() } else { format!("{s}^{m}") })
            .collect();
        write!(f, "{}", items.join(" + "))
    }
}

impl Serialize for ZUModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `H̄(C_1 ∨ C_2)` in each degree from the parts' `H̄`.
pub fn kunneth(a: &[ZUModule], b: &[ZUModule]) -> Vec<ZUModule> {
    let top = a.len() + b.len();
    (0..top)
        .map(|deg| {
            let mut out = ZUModule::new();
            for i in 0..a.len() {
                for j in 0..b.len() {
                    if i + j == deg {
                        out = out.direct_sum(&a[i].tensor(&b[j]).shift(4));
                    }
                    if i + j + 1 == deg {
                        out = out.direct_sum(&a[i].tor(&b[j]).shift(2));
                    }
                }
            }
            out
        })
        .collect()
}
