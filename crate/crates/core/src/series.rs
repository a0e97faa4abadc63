//! Multivariate Laurent polynomials with integer coefficients, rational
//! series with denominators `∏(1 - x^e)^m`, substitutions and symmetry tests.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial. The first `lead` variables form the display
/// grading: terms print by their total degree in those, then by the
/// leading exponents (larger first), then by the remaining exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiLaurent {
    vars: Vec<String>,
    lead: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

fn checked(a: i64, b: i64, op: fn(i64, i64) -> Option<i64>) -> i64 {
    op(a, b).expect("series coefficient overflow")
}

impl MultiLaurent {
    pub fn zero(vars: &[&str], lead: usize) -> Self {
        assert!(lead <= vars.len());
        MultiLaurent { vars: vars.iter().map(|s| s.to_string()).collect(), lead, terms: BTreeMap::new() }
    }

    pub fn with_vars(vars: Vec<String>, lead: usize) -> Self {
        assert!(lead <= vars.len());
        MultiLaurent { vars, lead, terms: BTreeMap::new() }
    }

    pub fn one(vars: &[&str], lead: usize) -> Self {
        let mut s = Self::zero(vars, lead);
        s.add_term(vec![0; vars.len()], 1);
        s
    }

    pub fn monomial(vars: &[&str], lead: usize, exps: Vec<i64>, coeff: i64) -> Self {
        let mut s = Self::zero(vars, lead);
        s.add_term(exps, coeff);
        s
    }

    /// An empty series over the same variables.
    pub fn empty_like(&self) -> Self {
        MultiLaurent { vars: self.vars.clone(), lead: self.lead, terms: BTreeMap::new() }
    }

    pub fn unit_like(&self) -> Self {
        let mut s = self.empty_like();
        s.add_term(vec![0; self.vars.len()], 1);
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn lead(&self) -> usize {
        self.lead
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, coeff: i64) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector has wrong length");
        if coeff == 0 {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v = checked(*v, coeff, i64::checked_add);
                if *v == 0 {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "series over different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = self.empty_like();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), checked(*v, k, i64::checked_mul));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let slot = acc.entry(e).or_insert(0);
                *slot = checked(*slot, checked(*x, *y, i64::checked_mul), i64::checked_add);
            }
        }
        acc.retain(|_, v| *v != 0);
        MultiLaurent { vars: self.vars.clone(), lead: self.lead, terms: acc }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = self.unit_like();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn shift(&self, exps: &[i64]) -> Self {
        let mut out = self.empty_like();
        for (e, v) in &self.terms {
            out.add_term(e.iter().zip(exps).map(|(a, b)| a + b).collect(), *v);
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&[i64]) -> bool) -> Self {
        MultiLaurent {
            vars: self.vars.clone(),
            lead: self.lead,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, v)| (e.clone(), *v)).collect(),
        }
    }

    pub fn max_grade(&self, g: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| dot(e, g)).max()
    }

    pub fn min_grade(&self, g: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| dot(e, g)).min()
    }

    /// Same coefficients over renamed variables.
    pub fn rename(&self, vars: Vec<String>, lead: usize) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MultiLaurent { vars, lead, terms: self.terms.clone() }
    }

    fn display_key(&self, e: &[i64]) -> (i64, Vec<i64>, Vec<i64>) {
        let lead = &e[..self.lead];
        (lead.iter().sum(), lead.iter().map(|x| -x).collect(), e[self.lead..].to_vec())
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(Vec<i64>, i64)> {
        let mut v: Vec<(Vec<i64>, i64)> = self.terms.iter().map(|(e, c)| (e.clone(), *c)).collect();
        v.sort_by_key(|(e, _)| self.display_key(e));
        v
    }

    fn render_monomial(&self, e: &[i64]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.vars)
            .filter(|(x, _)| **x != 0)
            .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
            .collect();
        parts.join("*")
    }

    pub fn parse(text: &str, vars: &[&str], lead: usize) -> Result<Self> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, vars, lead };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("unexpected character at offset {} in {text:?}", p.pos)));
        }
        Ok(out)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.iter().enumerate() {
            let mono = self.render_monomial(e);
            let mag = c.unsigned_abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            match (k, *c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for MultiLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            m: Vec<i64>,
            c: i64,
        }
        let terms: Vec<Term> = self.sorted_terms().into_iter().map(|(m, c)| Term { m, c }).collect();
        let mut st = s.serialize_struct("MultiLaurent", 3)?;
        st.serialize_field("vars", &self.vars)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    lead: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn expr(&mut self) -> Result<MultiLaurent> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiLaurent> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiLaurent> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.scale(-1));
        }
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let k = self.int()?;
        if !neg {
            return Ok(base.pow(k as u32));
        }
        if base.len() != 1 || base.terms.values().next() != Some(&1) {
            return Err(self.err("negative power of a non-monomial"));
        }
        let e: Vec<i64> = base.terms.keys().next().unwrap().iter().map(|x| -x * k).collect();
        Ok(MultiLaurent::monomial(self.vars, self.lead, e, 1))
    }

    fn atom(&mut self) -> Result<MultiLaurent> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.int()?;
                Ok(MultiLaurent::monomial(self.vars, self.lead, vec![0; n], k))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                let mut e = vec![0; n];
                e[i] = 1;
                Ok(MultiLaurent::monomial(self.vars, self.lead, e, 1))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// `numerator / ∏ (1 - x^e)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub numerator: MultiLaurent,
    pub denominator: Vec<(Vec<i64>, u32)>,
}

impl RationalSeries {
    pub fn new(numerator: MultiLaurent, denominator: Vec<(Vec<i64>, u32)>) -> Self {
        let denominator = denominator.into_iter().filter(|(_, m)| *m > 0).collect();
        RationalSeries { numerator, denominator }
    }

    pub fn denominator_poly(&self) -> MultiLaurent {
        let mut d = self.numerator.unit_like();
        for (e, m) in &self.denominator {
            let f = self.numerator.unit_like().sub(&{
                let mut x = self.numerator.empty_like();
                x.add_term(e.clone(), 1);
                x
            });
            d = d.mul(&f.pow(*m));
        }
        d
    }

    /// Expansion keeping the terms with `g·e <= max`; every denominator
    /// monomial must have positive `g`-grade.
    pub fn expand(&self, g: &[i64], max: i64) -> MultiLaurent {
        let mut acc = self.numerator.filter(|e| dot(e, g) <= max);
        for (e, m) in &self.denominator {
            let step = dot(e, g);
            assert!(step > 0, "denominator factor with non-positive grade");
            for _ in 0..*m {
                // multiply by 1/(1 - x^e) = sum_k x^{k e}
                let mut out = acc.empty_like();
                for (t, c) in acc.terms() {
                    let mut cur = t.clone();
                    while dot(&cur, g) <= max {
                        out.add_term(cur.clone(), c);
                        cur = cur.iter().zip(e).map(|(a, b)| a + b).collect();
                    }
                }
                acc = out;
            }
        }
        acc
    }

    /// Equality of rational functions by cross-multiplication.
    pub fn same_as(&self, other: &RationalSeries) -> bool {
        self.numerator.mul(&other.denominator_poly()) == other.numerator.mul(&self.denominator_poly())
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let v = &self.numerator;
        let dens: Vec<String> = self
            .denominator
            .iter()
            .map(|(e, m)| {
                let mono = v.render_monomial(e);
                if *m == 1 {
                    format!("(1 - {mono})")
                } else {
                    format!("(1 - {mono})^{m}")
                }
            })
            .collect();
        write!(f, "({}) / ({})", v, dens.join("*"))
    }
}

impl Serialize for RationalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalSeries", 3)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("numerator", &self.numerator)?;
        st.serialize_field("denominator", &self.denominator)?;
        st.end()
    }
}

/// Outcome of [`rationalize`].
#[derive(Clone, Debug)]
pub struct Rationalized {
    pub series: RationalSeries,
    /// The numerator vanished on the whole detection window.
    pub tail_detected: bool,
}

/// Multiply a series known exactly for `g·e <= max` by the denominator and
/// read off the numerator. The tail counts as detected when the numerator has
/// no terms with grade in `(max - window, max]`, and (when given) the
/// numerator's leading exponents respect `lead_bound` componentwise.
pub fn rationalize(
    truncated: &MultiLaurent,
    denominator: Vec<(Vec<i64>, u32)>,
    g: &[i64],
    max: i64,
    window: i64,
    lead_bound: Option<&[i64]>,
) -> Rationalized {
    let probe = RationalSeries::new(truncated.clone(), denominator.clone());
    let num = truncated.mul(&probe.denominator_poly()).filter(|e| dot(e, g) <= max);
    let window_clean = num.terms().all(|(e, _)| dot(e, g) <= max - window);
    let bound_ok = lead_bound.is_none_or(|b| {
        num.terms().all(|(e, _)| e[..b.len()].iter().zip(b).all(|(x, y)| *x <= *y))
    });
    Rationalized { series: RationalSeries::new(num, denominator), tail_detected: window_clean && bound_ok }
}

/// Image of one source variable under a substitution.
#[derive(Clone, Debug)]
pub enum VarImage {
    /// `sign * y^(doubled/2)` in the target variables.
    Monomial { sign: i64, doubled: Vec<i64> },
    Zero,
}

/// A monomial substitution between variable sets, on a doubled exponent
/// lattice so that square roots of target variables are allowed.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: Vec<String>,
    target_lead: usize,
    images: Vec<Option<VarImage>>,
}

impl Substitution {
    /// Identity-by-name from `source` into `target`; variables absent from
    /// `target` must be given an image before use.
    pub fn new(source: &[String], target: &[&str], target_lead: usize) -> Self {
        let target: Vec<String> = target.iter().map(|s| s.to_string()).collect();
        let images = source
            .iter()
            .map(|v| {
                target.iter().position(|t| t == v).map(|i| {
                    let mut d = vec![0; target.len()];
                    d[i] = 2;
                    VarImage::Monomial { sign: 1, doubled: d }
                })
            })
            .collect();
        Substitution { target, target_lead, images }
    }

    fn tidx(&self, name: &str) -> usize {
        self.target.iter().position(|t| t == name).unwrap_or_else(|| panic!("unknown target variable {name}"))
    }

    /// `var -> sign * ∏ y_j^(d_j / 2)` for the given doubled exponents `d`.
    pub fn map(mut self, src_index: usize, sign: i64, doubled: &[(&str, i64)]) -> Self {
        let mut d = vec![0; self.target.len()];
        for (name, k) in doubled {
            d[self.tidx(name)] += k;
        }
        self.images[src_index] = Some(VarImage::Monomial { sign, doubled: d });
        self
    }

    pub fn map_zero(mut self, src_index: usize) -> Self {
        self.images[src_index] = Some(VarImage::Zero);
        self
    }

    pub fn apply(&self, s: &MultiLaurent) -> Result<MultiLaurent> {
        assert_eq!(s.vars().len(), self.images.len());
        let mut out = MultiLaurent::with_vars(self.target.clone(), self.target_lead);
        'terms: for (e, c) in s.terms() {
            let mut acc = vec![0i64; self.target.len()];
            let mut coef = c;
            for (k, img) in self.images.iter().enumerate() {
                let a = e[k];
                if a == 0 {
                    continue;
                }
                match img {
                    None => return Err(Error::invariant(format!("no image given for {}", s.vars()[k]))),
                    Some(VarImage::Zero) if a > 0 => continue 'terms,
                    Some(VarImage::Zero) => {
                        return Err(Error::invariant(format!("negative power of {} set to zero", s.vars()[k])))
                    }
                    Some(VarImage::Monomial { sign, doubled }) => {
                        if *sign < 0 && a.rem_euclid(2) == 1 {
                            coef = -coef;
                        }
                        for (x, d) in acc.iter_mut().zip(doubled) {
                            *x += a * d;
                        }
                    }
                }
            }
            if acc.iter().any(|x| x.rem_euclid(2) != 0) {
                return Err(Error::invariant(format!("non-integral exponent after substitution at {e:?}")));
            }
            out.add_term(acc.into_iter().map(|x| x / 2).collect(), coef);
        }
        Ok(out)
    }
}

/// Set one variable to `-1`, `0` or `1`, dropping it from the variable list.
pub fn set_var(s: &MultiLaurent, name: &str, value: i64) -> Result<MultiLaurent> {
    let k = s.var_index(name).ok_or_else(|| Error::invariant(format!("no variable {name}")))?;
    let target: Vec<&str> = s.vars().iter().filter(|v| *v != name).map(|v| v.as_str()).collect();
    let lead = if k < s.lead() { s.lead() - 1 } else { s.lead() };
    let sub = Substitution::new(s.vars(), &target, lead);
    let sub = match value {
        0 => sub.map_zero(k),
        1 | -1 => sub.map(k, value, &[]),
        _ => return Err(Error::invariant("only -1, 0, 1 may be substituted for a variable")),
    };
    sub.apply(s)
}

/// `var -> sign * other`, dropping `var`.
pub fn replace_var(s: &MultiLaurent, var: &str, sign: i64, other: &str) -> Result<MultiLaurent> {
    let k = s.var_index(var).ok_or_else(|| Error::invariant(format!("no variable {var}")))?;
    let target: Vec<&str> = s.vars().iter().filter(|v| *v != var).map(|v| v.as_str()).collect();
    let lead = if k < s.lead() { s.lead() - 1 } else { s.lead() };
    Substitution::new(s.vars(), &target, lead).map(k, sign, &[(other, 2)]).apply(s)
}

/// Identify the first `r` variables into one variable `name`.
pub fn collapse_lead(s: &MultiLaurent, r: usize, name: &str) -> Result<MultiLaurent> {
    let mut target: Vec<&str> = vec![name];
    target.extend(s.vars()[r..].iter().map(|v| v.as_str()));
    let mut sub = Substitution::new(s.vars(), &target, 1);
    for k in 0..r {
        sub = sub.map(k, 1, &[(name, 2)]);
    }
    sub.apply(s)
}

/// `T_i -> t_i sqrt(q)`, `Q -> sqrt(q)`, `h -> -sqrt(q)` from `(T_1..T_r, Q, h)` to `(t_1..t_r, q)`.
pub fn sqrt_q_map(s: &MultiLaurent) -> Result<MultiLaurent> {
    let r = s.lead();
    let names: Vec<String> = (1..=r).map(|i| format!("t{i}")).chain(["q".to_string()]).collect();
    let target: Vec<&str> = names.iter().map(|x| x.as_str()).collect();
    let mut sub = Substitution::new(s.vars(), &target, r);
    for k in 0..r {
        sub = sub.map(k, 1, &[(target[k], 2), ("q", 1)]);
    }
    sub = sub.map(r, 1, &[("q", 1)]).map(r + 1, -1, &[("q", 1)]);
    sub.apply(s)
}

/// Which numerator identity [`symmetry_check`] tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    /// `N((q t)^-1; q) = q^-δ t^-c N(t; q)` over `(t_1..t_r, q)`.
    Motivic,
    /// `N(T^-1, Q, -Q) = T^-c N(T, Q, -Q)` over `(T_1..T_r, Q, h)`.
    Pe1AtHMinusQ,
    /// `N(T^-1, Q) = T^-c N(T, Q)` for a one-branch `PE_k` numerator.
    R1Pe,
}

pub fn symmetry_check(rs: &RationalSeries, c: &[i64], delta: i64, mode: SymmetryMode) -> Result<bool> {
    let r = c.len();
    let n = match mode {
        SymmetryMode::Pe1AtHMinusQ => replace_var(&rs.numerator, "h", -1, "Q")?,
        _ => rs.numerator.clone(),
    };
    let mut lhs = n.empty_like();
    for (e, k) in n.terms() {
        let mut f = e.clone();
        let total: i64 = e[..r].iter().sum();
        for x in f[..r].iter_mut() {
            *x = -*x;
        }
        if mode == SymmetryMode::Motivic {
            f[r] -= total;
        }
        lhs.add_term(f, k);
    }
    let mut shift = vec![0; n.vars().len()];
    for i in 0..r {
        shift[i] = -c[i];
    }
    if mode == SymmetryMode::Motivic {
        shift[r] = -delta;
    }
    Ok(lhs == n.shift(&shift))
}
