#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeMap;
use std::path::PathBuf;

use curvelat::cli::{run, Report, RunConfig, Status};
use curvelat::series::{MultiLaurent, RationalSeries};
use curvelat::spectral::LevelPages;

/// Every input file under `data/`, by stem.
pub const CORPUS: [&str; 13] = [
    "cusp34",
    "cusp34_wedge",
    "d4",
    "d4_semigroup",
    "gen23",
    "node",
    "node_semigroup",
    "ordinary2",
    "ordinary3",
    "semigroup378",
    "semigroup457",
    "smooth",
    "smooth_wedge",
];

pub fn data_path(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    for ext in ["toml", "json"] {
        let p = dir.join(format!("{name}.{ext}"));
        if p.exists() {
            return p;
        }
    }
    panic!("no corpus file {name}");
}

pub fn config(name: &str) -> RunConfig {
    RunConfig::load(&data_path(name)).unwrap()
}

pub fn report(name: &str, n_max: Option<i64>) -> Report {
    let mut cfg = config(name);
    if n_max.is_some() {
        cfg.n_max = n_max;
    }
    run(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn poly(text: &str, vars: &[&str], lead: usize) -> MultiLaurent {
    MultiLaurent::parse(text, vars, lead).unwrap()
}

pub fn pe_vars() -> [&'static str; 3] {
    ["T", "Q", "h"]
}

pub fn bold_vars(r: usize) -> Vec<String> {
    curvelat::spectral::bold_vars(r)
}

pub fn bold_poly(text: &str, r: usize) -> MultiLaurent {
    let vars = bold_vars(r);
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    poly(text, &names, r)
}

/// `1 / (1 - TQ)^m` in the `(T, Q, h)` variables.
pub fn over_one_minus_tq(num: MultiLaurent, m: u32) -> RationalSeries {
    RationalSeries::new(num, vec![(vec![1, 1, 0], m)])
}

pub fn pe_rational<'a>(r: &'a Report, k: &str) -> &'a RationalSeries {
    &r.pe.as_ref().unwrap().series.iter().find(|s| s.k == k).unwrap_or_else(|| panic!("no PE_{k}")).rational
}

pub fn pe_truncated<'a>(r: &'a Report, k: &str) -> &'a MultiLaurent {
    &r.pe.as_ref().unwrap().series.iter().find(|s| s.k == k).unwrap().truncated
}

pub fn levels(r: &Report) -> &[LevelPages] {
    &r.pages.as_ref().unwrap().default.levels
}

pub fn level(r: &Report, n: i64) -> &LevelPages {
    levels(r).iter().find(|lp| lp.n == n).unwrap()
}

/// A page as `(d, b) -> rank`.
pub fn table(entries: &[((i64, usize), usize)]) -> BTreeMap<(i64, usize), usize> {
    entries.iter().copied().collect()
}

pub fn failed_checks(r: &Report) -> Vec<String> {
    r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| format!("{} {}", c.name, c.detail)).collect()
}

pub fn passes(r: &Report, name: &str) -> bool {
    r.check(name).is_some_and(|c| c.status == Status::Pass)
}

/// Collects failed expectations of one criterion.
#[derive(Default)]
pub struct Tally(pub Vec<String>);

impl Tally {
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    pub fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        if got != want {
            self.0.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    pub fn ok(&self) -> bool {
        self.0.is_empty()
    }
}
