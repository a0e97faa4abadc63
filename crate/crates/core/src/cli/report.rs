//! The analysis pipeline and its structured report.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::config::{Output, RunConfig};
use crate::curve::{Curve, Route};
use crate::error::{Error, Result};
use crate::hilbert::{motivic_pm, poincare_p, WeightTable};
use crate::lattice::{LatticePoint, Rectangle};
use crate::lattice_homology::{
    betti_table, euler_cube_sum, graded_root, hat_euler, hat_homology, kunneth, rectangle_betti, shifted_lattice,
    working_rectangle, CubeLattice, GradedRoot, HatEntry, LatticeHomology, ZUModule,
};
use crate::semigroup::{is_gorenstein, CurveSpec};
use crate::series::{set_var, sqrt_q_map, symmetry_check, MultiLaurent, RationalSeries, SymmetryMode};
use crate::spectral::yops::{y_chains, y_generators, E1Grid, YGenerators};
use crate::spectral::{
    all_pages, bold_cube_sum, bold_pe1_local, bold_pe1_motivic, bold_rational, bold_vars, check_weights,
    cube_euler_series, decorations, e1_by_level, euler_identity, k_invariants, local_entries, pe_series, rational_pe, BoldBox,
    Decoration, HflEntry, LevelPages, LocalEntry, LocalLattice,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Warn,
}

/// One verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.0.push(Check { name: name.to_string(), status, detail: detail.into() });
    }

    fn expect(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    /// Pass when `ok`; otherwise a warning if the data are known to be truncated.
    fn expect_or_warn(&mut self, name: &str, ok: bool, truncated: bool, detail: impl Into<String>) {
        let status = match (ok, truncated) {
            (true, _) => Status::Pass,
            (false, true) => Status::Warn,
            (false, false) => Status::Fail,
        };
        self.push(name, status, detail);
    }

    /// Invariant violations become failures; other errors propagate.
    fn result(&mut self, name: &str, r: Result<()>) -> Result<()> {
        match r {
            Ok(()) => self.push(name, Status::Pass, ""),
            Err(Error::Invariant(msg)) => self.push(name, Status::Fail, msg),
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub kind: String,
    pub arity: usize,
    pub conductor: Vec<i64>,
    pub delta: i64,
    pub gorenstein: bool,
    pub plane: bool,
    pub route: Route,
    /// Elements of the semigroup in `R(0, c)`.
    pub semigroup: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub n_max: i64,
    pub t_max: Option<i64>,
    pub weights: Option<Vec<i64>>,
    pub min_weight: i64,
    pub working_rectangle: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertRow {
    pub l: Vec<i64>,
    pub h: i64,
    pub w: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertSection {
    pub rows: Vec<HilbertRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerSection {
    pub cube_sum: i64,
    pub from_homology: i64,
    pub delta: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologySection {
    pub stabilized: bool,
    /// `H_b` for `b = 0..`.
    pub modules: Vec<ZUModule>,
    pub euler: EulerSection,
    pub hat: Vec<HatEntry>,
    pub hat_euler: i64,
    pub betti: BTreeMap<i64, Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<ZUModule>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kunneth: Option<Vec<ZUModule>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexOut {
    pub n: i64,
    pub index: usize,
    pub size: usize,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSection {
    pub min_level: i64,
    pub max_level: i64,
    pub components: BTreeMap<i64, usize>,
    pub vertices: Vec<VertexOut>,
    pub decorations: Vec<Decoration>,
    #[serde(skip)]
    pub graph: GradedRoot,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageEntry {
    pub n: i64,
    /// Page index, or `inf`.
    pub k: String,
    pub d: i64,
    pub b: usize,
    pub p: i64,
    pub q: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentialOut {
    pub n: i64,
    pub k: usize,
    pub from: (i64, usize),
    pub to: (i64, usize),
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageSet {
    pub weights: Vec<i64>,
    pub k: BTreeMap<i64, usize>,
    pub k_max: usize,
    pub entries: Vec<PageEntry>,
    pub differentials: Vec<DifferentialOut>,
    #[serde(skip)]
    pub levels: Vec<LevelPages>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PagesSection {
    #[serde(flatten)]
    pub default: PageSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weighted: Option<PageSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeOut {
    pub k: String,
    pub truncated: MultiLaurent,
    pub rational: RationalSeries,
    pub tail_detected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeSection {
    pub series: Vec<PeOut>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoldSection {
    pub box_hi: Vec<i64>,
    pub t_max: Option<i64>,
    pub truncated: MultiLaurent,
    pub rational: RationalSeries,
    /// The numerator lies in `R(0, c)`.
    pub numerator_bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MotivicSection {
    pub rational: RationalSeries,
}

#[derive(Clone, Debug, Serialize)]
pub struct HflSection {
    /// `HFL-` for plane curves, the analytic analogue otherwise.
    pub meaning: String,
    pub entries: Vec<HflEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct YSection {
    pub generators: Vec<YGenerators>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub curve: CurveSummary,
    pub run: RunSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<RootSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pages: Option<PagesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pe: Option<PeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bold_pe: Option<BoldSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub motivic: Option<MotivicSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hfl: Option<HflSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_ops: Option<YSection>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn kind(spec: &CurveSpec) -> &'static str {
    match spec {
        CurveSpec::Numerical { .. } => "numerical",
        CurveSpec::Explicit { .. } => "explicit",
        CurveSpec::Wedge { .. } => "wedge",
        CurveSpec::PlaneAlexander { .. } => "plane_alexander",
    }
}

fn plus(l: &LatticePoint, k: i64) -> LatticePoint {
    LatticePoint::new(l.coords().iter().map(|x| x + k).collect()).unwrap()
}

/// Largest weight on `R(0, c + 1)`; beyond it every `S_n` is contractible.
fn max_weight_near_conductor(w: &WeightTable) -> i64 {
    Rectangle::from_origin(plus(w.conductor(), 1)).points().map(|l| w.w(&l)).max().unwrap()
}

pub fn default_n_max(w: &WeightTable) -> i64 {
    max_weight_near_conductor(w) + 2 * w.arity() as i64 + 2
}

fn trim(mut t: BTreeMap<i64, Vec<usize>>) -> BTreeMap<i64, Vec<usize>> {
    for v in t.values_mut() {
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
    }
    t
}

fn trim_vec(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn pad(mut m: Vec<ZUModule>, len: usize) -> Vec<ZUModule> {
    m.resize(len, ZUModule::new());
    m
}

fn same_modules(a: &[ZUModule], b: &[ZUModule]) -> bool {
    let n = a.len().max(b.len());
    pad(a.to_vec(), n) == pad(b.to_vec(), n)
}

fn show_modules(m: &[ZUModule]) -> String {
    m.iter().enumerate().map(|(b, x)| format!("H_{b} = {x}")).collect::<Vec<_>>().join("; ")
}

/// `s · (1 - var)`.
fn times_one_minus(s: &MultiLaurent, var: &str) -> MultiLaurent {
    let k = s.var_index(var).unwrap();
    let mut e = vec![0; s.vars().len()];
    e[k] = 1;
    s.sub(&s.shift(&e))
}

/// First term where two series differ.
fn first_difference(a: &MultiLaurent, b: &MultiLaurent) -> String {
    let d = a.sub(b);
    match d.sorted_terms().first() {
        Some((e, c)) => format!("differ at exponent {e:?} by {c}"),
        None => String::new(),
    }
}

/// Re-index a part's `(T.., Q, h)` series into the wedge variables.
fn embed(s: &MultiLaurent, offset: usize, r: usize) -> MultiLaurent {
    let rj = s.lead();
    let mut out = MultiLaurent::with_vars(bold_vars(r), r);
    for (e, c) in s.terms() {
        let mut x = vec![0; r + 2];
        x[offset..offset + rj].copy_from_slice(&e[..rj]);
        x[r] = e[rj];
        x[r + 1] = e[rj + 1];
        out.add_term(x, c);
    }
    out
}

fn page_set(levels: Vec<LevelPages>, a: &[i64]) -> PageSet {
    let (k, k_max) = k_invariants(&levels);
    let mut entries = Vec::new();
    let mut differentials = Vec::new();
    for lp in &levels {
        for page in 1..=lp.k {
            for (&(d, b), &rank) in lp.page(page) {
                let label = if page == lp.k { "inf".to_string() } else { page.to_string() };
                entries.push(PageEntry { n: lp.n, k: label, d, b, p: -d, q: d + b as i64, rank });
            }
        }
        for df in &lp.differentials {
            differentials.push(DifferentialOut { n: lp.n, k: df.k, from: df.from, to: df.to, rank: df.rank });
        }
    }
    PageSet { weights: a.to_vec(), k, k_max, entries, differentials, levels }
}

/// Ranks of `E¹` read from the pages, keyed like [`e1_by_level`].
fn e1_from_pages(levels: &[LevelPages]) -> BTreeMap<(i64, i64, usize), usize> {
    let mut out = BTreeMap::new();
    for lp in levels {
        for (&(d, b), &r) in lp.page(1) {
            out.insert((lp.n, d, b), r);
        }
    }
    out
}

/// Checks on one set of pages that hold for any level weights.
fn check_pages(
    checks: &mut Checks,
    tag: &str,
    levels: &[LevelPages],
    entries: &[LocalEntry],
    lat: &CubeLattice,
    lh: &LatticeHomology,
    a: &[i64],
    min_weight: i64,
) -> Result<()> {
    let n_max = lat.n_max();
    let local = e1_by_level(entries, a, n_max);
    let pers = e1_from_pages(levels);
    checks.expect(&format!("{tag}.e1_equals_local_sum"), local == pers, "");
    let betti = trim(betti_table(&lh.bars, min_weight, n_max));
    let ok = levels.iter().all(|lp| betti.get(&lp.n).cloned() == Some(trim_vec(lp.betti())));
    checks.expect(&format!("{tag}.e_inf_matches_betti"), ok, "");
    let cubes = cube_euler_series(lat, a);
    let pe1 = pe_series(levels, Some(1));
    checks.expect(&format!("{tag}.pe1_euler_refined"), euler_identity(&pe1, &cubes, n_max)?, "");
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let curve = Curve::from_spec(&cfg.curve)?;
    let w = &curve.weights;
    let r = curve.arity();
    let c = curve.conductor().clone();
    let delta = curve.delta();
    let m_w = w.min_weight();
    let n_max = cfg.n_max.unwrap_or_else(|| default_n_max(w));
    if n_max < m_w {
        return Err(Error::Invalid(format!("n_max = {n_max} is below the minimal weight {m_w}")));
    }
    if let Some(a) = &cfg.weights {
        check_weights(a, r)?;
    }
    if let Some(t) = cfg.t_max {
        if t < 0 {
            return Err(Error::Invalid("t_max must be non-negative".into()));
        }
    }
    let outputs: BTreeSet<Output> = cfg.outputs();
    let everything = outputs.contains(&Output::Checks);
    let compute = |o: Output| everything || outputs.contains(&o);
    let include = |o: Output| outputs.contains(&o);

    let gorenstein = is_gorenstein(&curve.semigroup, curve.hilbert())?;
    let complete = n_max >= max_weight_near_conductor(w);
    let mut checks = Checks::default();
    let mut warnings = Vec::new();
    if !complete {
        warnings.push(format!(
            "n_max = {n_max} is below the largest weight {} on R(0, c + 1); towers may be truncated bars",
            max_weight_near_conductor(w)
        ));
    }

    let curve_summary = CurveSummary {
        kind: kind(&curve.spec).to_string(),
        arity: r,
        conductor: c.coords().to_vec(),
        delta,
        gorenstein,
        plane: curve.plane,
        route: curve.route,
        semigroup: Rectangle::from_origin(c.clone())
            .points()
            .filter(|l| curve.semigroup.contains(l))
            .map(|l| l.coords().to_vec())
            .collect(),
    };

    let rect = working_rectangle(w, n_max);
    let run_summary = RunSummary {
        n_max,
        t_max: cfg.t_max,
        weights: cfg.weights.clone(),
        min_weight: m_w,
        working_rectangle: rect.hi.coords().to_vec(),
    };

    let hilbert = compute(Output::Hilbert).then(|| HilbertSection {
        rows: Rectangle::from_origin(plus(&c, 1))
            .points()
            .map(|l| HilbertRow { h: curve.hilbert().h(&l), w: w.w(&l), l: l.coords().to_vec() })
            .collect(),
    });
    {
        let box_c = Rectangle::from_origin(c.clone());
        let recovered = curve.hilbert().recover_semigroup()?;
        let same = box_c.points().all(|l| recovered.contains(&l) == curve.semigroup.contains(&l));
        checks.expect("hilbert.recovers_semigroup", same, "");
        let unit_steps = box_c.points().all(|l| {
            (0..r).all(|i| matches!(curve.hilbert().h(&l.plus_unit(i)) - curve.hilbert().h(&l), 0 | 1))
        });
        checks.expect("hilbert.unit_steps", unit_steps, "");
        let hc = curve.hilbert().hcirc(&c);
        checks.expect("hilbert.hcirc_vanishes_at_conductor", hc == 0, format!("{hc}"));
    }

    let needs_lattice = [Output::Homology, Output::Root, Output::Pages, Output::Pe, Output::YOps]
        .into_iter()
        .any(&compute);
    let lat = needs_lattice.then(|| CubeLattice::new(w, rect.clone(), n_max));
    let loc = LocalLattice::new(w);
    let needs_entries = [Output::Root, Output::Pages, Output::Pe, Output::YOps].into_iter().any(&compute);
    let entries = if needs_entries { local_entries(&loc, rect.points())? } else { Vec::new() };
    let lh = lat.as_ref().map(|lat| LatticeHomology::from_lattice(lat, m_w));

    let homology = if compute(Output::Homology) {
        let lat = lat.as_ref().unwrap();
        let lh = lh.as_ref().unwrap();
        let truncated = !(lh.stabilized && complete);
        checks.expect_or_warn("homology.stabilized", lh.stabilized, true, "");
        let cube_sum = euler_cube_sum(w);
        checks.expect("euler.cube_sum_is_delta", cube_sum == delta, format!("{cube_sum} vs {delta}"));
        let eu = lh.euler_characteristic();
        checks.expect_or_warn("euler.homology_is_delta", eu == delta, truncated, format!("{eu} vs {delta}"));
        let high = lh.modules.iter().skip(r).all(|m| m.is_zero());
        checks.expect("homology.vanishes_from_arity", high, show_modules(&lh.modules));
        let hat = hat_homology(lat, m_w)?;
        let he = hat_euler(&hat);
        checks.expect_or_warn("hat.euler_is_one", he == 1, truncated, format!("{he}"));
        let betti = trim(betti_table(&lh.bars, m_w, n_max));
        let corners: Vec<LatticePoint> = (0..3).map(|k| plus(&c, k)).collect();
        let tables = rectangle_betti(w, &corners, n_max);
        let stable = tables.iter().all(|t| *t == betti);
        checks.expect("rectangle.ranks_stable", stable, "");

        let (reduced, kun) = if curve.is_wedge() {
            let reduced = lh.reduced_at_origin();
            let restricted = LatticeHomology::from_lattice(&shifted_lattice(w, n_max), m_w);
            let (reduced, kun) = match reduced {
                Ok(red) => {
                    checks.expect_or_warn(
                        "wedge.reduced_is_restriction",
                        same_modules(&red, &restricted.modules),
                        truncated,
                        show_modules(&restricted.modules),
                    );
                    let kun = kunneth_of_parts(&curve, n_max)?;
                    let kun_cut: Vec<ZUModule> = kun
                        .iter()
                        .map(|m| {
                            let mut out = ZUModule::new();
                            for (s, k) in m.parts().filter(|(s, _)| s.top() >= -2 * n_max) {
                                out.add(s, k);
                            }
                            out
                        })
                        .collect();
                    checks.expect_or_warn(
                        "wedge.kunneth",
                        same_modules(&red, &kun_cut),
                        truncated,
                        show_modules(&kun_cut),
                    );
                    (Some(red), Some(kun_cut))
                }
                Err(Error::Invariant(msg)) => {
                    checks.push("wedge.reduced_is_restriction", Status::Fail, msg);
                    (None, None)
                }
                Err(e) => return Err(e),
            };
            (reduced, kun)
        } else {
            (None, None)
        };
        Some(HomologySection {
            stabilized: lh.stabilized,
            modules: lh.modules.clone(),
            euler: EulerSection { cube_sum, from_homology: eu, delta },
            hat,
            hat_euler: he,
            betti,
            reduced,
            kunneth: kun,
        })
    } else {
        None
    };

    let root = if compute(Output::Root) {
        let lat = lat.as_ref().unwrap();
        let lh = lh.as_ref().unwrap();
        let g = graded_root(lat, m_w, n_max);
        let h0 = g.h0();
        checks.expect("root.h0_matches_persistence", h0 == lh.module(0), format!("{h0}"));
        let decs = decorations(lat, &g, &entries);
        let ok = decoration_sums(lat, &decs, &entries)?;
        checks.result("root.decorations_sum_to_level", ok)?;
        let vertices = g
            .levels
            .iter()
            .flatten()
            .map(|v| VertexOut { n: v.n, index: v.index, size: v.points.len(), parent: v.parent })
            .collect();
        Some(RootSection {
            min_level: g.min_level,
            max_level: g.max_level,
            components: g.component_counts(),
            vertices,
            decorations: decs,
            graph: g,
        })
    } else {
        None
    };

    let ones = vec![1; r];
    let pages = if compute(Output::Pages) || compute(Output::Pe) {
        let lat = lat.as_ref().unwrap();
        let lh = lh.as_ref().unwrap();
        let levels = all_pages(lat, m_w, &ones);
        check_pages(&mut checks, "pages", &levels, &entries, lat, lh, &ones, m_w)?;
        let k_max = levels.iter().map(|lp| lp.k).max().unwrap_or(1);
        let at = |k: Option<usize>| -> Result<MultiLaurent> {
            set_var(&set_var(&pe_series(&levels, k), "h", -1)?, "T", 1)
        };
        let inf = at(None)?;
        let mut same = true;
        for k in 1..=k_max {
            same &= at(Some(k))? == inf;
        }
        checks.expect("pages.euler_degeneration", same, "");
        let mut monotone = true;
        for k in 1..k_max {
            let diff = pe_series(&levels, Some(k)).sub(&pe_series(&levels, Some(k + 1)));
            monotone &= diff.terms().all(|(_, c)| c >= 0);
        }
        checks.expect("pages.ranks_decrease", monotone, "");
        let cubes = set_var(&cube_euler_series(lat, &ones), "T", 1)?.filter(|e| e[0] <= n_max);
        let lhs = times_one_minus(&inf, "Q").filter(|e| e[0] <= n_max);
        checks.expect("pages.pe_inf_euler", lhs == cubes, first_difference(&lhs, &cubes));

        let weighted = match &cfg.weights {
            Some(a) => {
                let wl = all_pages(lat, m_w, a);
                check_pages(&mut checks, "weighted_pages", &wl, &entries, lat, lh, a, m_w)?;
                if a.iter().all(|&x| x == 1) {
                    let same = wl.iter().zip(&levels).all(|(x, y)| x.pages == y.pages);
                    checks.expect("weighted_pages.ones_reproduce_default", same, "");
                }
                if r == 1 {
                    let s = a[0];
                    let same = wl.iter().zip(&levels).all(|(x, y)| {
                        x.k == y.k
                            && x.pages.iter().zip(&y.pages).all(|(p, q)| {
                                *p == q.iter().map(|(&(d, b), &v)| ((d * s, b), v)).collect::<BTreeMap<_, _>>()
                            })
                    });
                    checks.expect("weighted_pages.one_branch_rescaling", same, "");
                }
                Some(page_set(wl, a))
            }
            None => None,
        };
        Some(PagesSection { default: page_set(levels, &ones), weighted })
    } else {
        None
    };

    let pe = if compute(Output::Pe) {
        let ps = pages.as_ref().unwrap();
        let levels = &ps.default.levels;
        let mut series = Vec::new();
        let ks: Vec<Option<usize>> = (1..ps.default.k_max.max(2)).map(Some).chain([None]).collect();
        for k in ks {
            let trunc = pe_series(levels, k);
            let rs = rational_pe(&trunc, r, n_max);
            let label = k.map_or("inf".to_string(), |k| k.to_string());
            if !rs.tail_detected {
                warnings.push(format!("PE_{label}: no geometric tail within n_max = {n_max}"));
            }
            checks.expect_or_warn(&format!("pe.{label}.rational_tail"), rs.tail_detected, true, "");
            if r == 1 && gorenstein && rs.tail_detected {
                let sym = symmetry_check(&rs.series, c.coords(), delta, SymmetryMode::R1Pe)?;
                checks.expect(&format!("pe.{label}.gorenstein_symmetry"), sym, "");
            }
            series.push(PeOut { k: label, truncated: trunc, rational: rs.series, tail_detected: rs.tail_detected });
        }
        Some(PeSection { series })
    } else {
        None
    };

    let bx = BoldBox::new(w, cfg.t_max);
    let needs_bold = [Output::BoldPe, Output::Motivic, Output::Hfl].into_iter().any(&compute);
    let box_entries = if needs_bold { local_entries(&loc, bx.points())? } else { Vec::new() };
    let bold_trunc = bold_pe1_local(&box_entries, r);
    let box_complete = cfg.t_max.is_none_or(|t| t >= bx.rect.hi.total());

    let bold_pe = if compute(Output::BoldPe) {
        let motivic_route = bold_pe1_motivic(w, bx.points());
        checks.expect(
            "bold_pe1.routes_agree",
            bold_trunc == motivic_route,
            first_difference(&bold_trunc, &motivic_route),
        );
        let support: BTreeSet<Vec<i64>> = bold_trunc.terms().map(|(e, _)| e[..r].to_vec()).collect();
        let semigroup: BTreeSet<Vec<i64>> =
            bx.points().filter(|l| curve.semigroup.contains(l)).map(|l| l.coords().to_vec()).collect();
        checks.expect("bold_pe1.support_is_semigroup", support == semigroup, "");
        let (rs, bounded) = bold_rational(&bold_trunc, &bx, &c);
        checks.expect("bold_pe1.numerator_in_conductor_box", bounded, "");
        let lhs = times_one_minus(&set_var(&bold_trunc, "h", -1)?, "Q");
        let rhs = set_var(&bold_cube_sum(w, &bx), "h", -1)?;
        checks.expect("bold_pe1.euler_refined", lhs == rhs, first_difference(&lhs, &rhs));
        if box_complete {
            let sym = symmetry_check(&rs, c.coords(), delta, SymmetryMode::Pe1AtHMinusQ)?;
            if gorenstein {
                checks.expect("bold_pe1.gorenstein_symmetry", sym, "");
            } else {
                checks.push("bold_pe1.gorenstein_symmetry", Status::Pass, format!("not Gorenstein; symmetric = {sym}"));
            }
        }
        if curve.is_wedge() {
            let ok = wedge_product(&curve, &bx, &bold_trunc)?;
            checks.expect("bold_pe1.wedge_product", ok.is_empty(), ok);
        }
        Some(BoldSection {
            box_hi: bx.rect.hi.coords().to_vec(),
            t_max: cfg.t_max,
            truncated: bold_trunc.clone(),
            rational: rs,
            numerator_bounded: bounded,
        })
    } else {
        None
    };

    let motivic = if compute(Output::Motivic) {
        let m = motivic_pm(curve.hilbert(), &bx.rect.hi)?;
        let trunc = m.truncated.filter(|e| bx.contains(&e[..r]));
        let image = sqrt_q_map(&bold_trunc)?;
        checks.expect("motivic.sqrt_q_image_of_bold_pe1", image == trunc, first_difference(&image, &trunc));
        let at_one = set_var(&trunc, "q", 1)?;
        let p = poincare_p(curve.hilbert(), &bx.rect.hi).filter(|e| bx.contains(e));
        checks.expect("motivic.q_to_one_is_poincare", at_one == p, first_difference(&at_one, &p));
        let support: BTreeSet<Vec<i64>> = trunc.terms().map(|(e, _)| e[..r].to_vec()).collect();
        let semigroup: BTreeSet<Vec<i64>> =
            bx.points().filter(|l| curve.semigroup.contains(l)).map(|l| l.coords().to_vec()).collect();
        checks.expect("motivic.support_is_semigroup", support == semigroup, "");
        let sym = symmetry_check(&m.rational, c.coords(), delta, SymmetryMode::Motivic)?;
        if gorenstein {
            checks.expect("motivic.gorenstein_symmetry", sym, "");
        }
        Some(MotivicSection { rational: m.rational })
    } else {
        None
    };

    let hfl = if compute(Output::Hfl) {
        let near = Rectangle::from_origin(plus(&c, 1));
        let mut rows: Vec<HflEntry> = box_entries
            .iter()
            .filter(|e| near.contains(&e.l))
            .map(|e| HflEntry {
                l: e.l.coords().to_vec(),
                maslov: -2 * curve.hilbert().h(&e.l) - e.b as i64,
                rank: e.rank,
            })
            .collect();
        rows.sort_by(|a, b| (&a.l, -a.maslov).cmp(&(&b.l, -b.maslov)));
        let off = rows.iter().filter(|e| !curve.semigroup.contains(&LatticePoint::new(e.l.clone()).unwrap())).count();
        checks.expect("hfl.zero_off_semigroup", off == 0, "");
        let meaning = if curve.plane { "HFL-(L, l)" } else { "formal analogue of HFL-(L, l)" };
        Some(HflSection { meaning: meaning.to_string(), entries: rows })
    } else {
        None
    };

    let y_ops = if compute(Output::YOps) {
        let grid = E1Grid::new(&loc, &entries, n_max);
        checks.result("y.commutes_with_d1", grid.check_commutation(r))?;
        checks.result("u.vanishes_on_e1", grid.check_u_vanishes())?;
        checks.result("y.independent_on_e2", grid.check_y_collapse(r))?;
        let generators = y_generators(&loc, &Rectangle::from_origin(plus(&c, 1)))?;
        let chains = if r == 1 {
            Some(y_chains(&loc, c.coords()[0])?.iter().map(|ch| ch.to_string()).collect())
        } else {
            None
        };
        Some(YSection { generators, chains })
    } else {
        None
    };

    Ok(Report {
        schema: SCHEMA_VERSION,
        curve: curve_summary,
        run: run_summary,
        hilbert: hilbert.filter(|_| include(Output::Hilbert)),
        homology: homology.filter(|_| include(Output::Homology)),
        root: root.filter(|_| include(Output::Root)),
        pages: pages.filter(|_| include(Output::Pages)),
        pe: pe.filter(|_| include(Output::Pe)),
        bold_pe: bold_pe.filter(|_| include(Output::BoldPe)),
        motivic: motivic.filter(|_| include(Output::Motivic)),
        hfl: hfl.filter(|_| include(Output::Hfl)),
        y_ops: y_ops.filter(|_| include(Output::YOps)),
        checks: checks.0,
        warnings,
    })
}

/// Smallest weight on `l >= 1`, attained in `R(1, c + 1)`.
fn min_weight_off_axes(w: &WeightTable) -> i64 {
    let r = w.arity();
    let rect = Rectangle::new(LatticePoint::splat(r, 1), plus(w.conductor(), 1)).unwrap();
    rect.points().map(|l| w.w(&l)).min().unwrap()
}

/// `H̄` of a wedge from the parts by the Künneth formula.
fn kunneth_of_parts(curve: &Curve, n_max: i64) -> Result<Vec<ZUModule>> {
    let k = curve.parts.len() as i64;
    let mins: Vec<i64> = curve.parts.iter().map(|p| min_weight_off_axes(&p.weights)).collect();
    let total: i64 = mins.iter().sum();
    let mut acc: Option<Vec<ZUModule>> = None;
    for (j, p) in curve.parts.iter().enumerate() {
        let need = n_max + 2 * (k - 1) - (total - mins[j]);
        let n_p = need.max(default_n_max(&p.weights));
        let lh = LatticeHomology::from_lattice(&shifted_lattice(&p.weights, n_p), p.weights.min_weight());
        if !lh.stabilized {
            return Err(Error::invariant(format!("restricted homology of part {} did not stabilize", j + 1)));
        }
        acc = Some(match acc {
            None => lh.modules,
            Some(a) => kunneth(&a, &lh.modules),
        });
    }
    Ok(acc.unwrap_or_default())
}

/// Empty when `PE₁ - 1 = Q^{-2(k-1)} (1 + Qh)^{k-1} ∏ (PE₁(part) - 1)` on the box.
fn wedge_product(curve: &Curve, bx: &BoldBox, bold: &MultiLaurent) -> Result<String> {
    let r = curve.arity();
    let k = curve.parts.len();
    let mut prod: Option<MultiLaurent> = None;
    let mut offset = 0;
    for p in &curve.parts {
        let rj = p.arity();
        let hi = LatticePoint::new(bx.rect.hi.coords()[offset..offset + rj].to_vec())?;
        let loc = LocalLattice::new(&p.weights);
        let part = bold_pe1_local(&local_entries(&loc, Rectangle::from_origin(hi).points())?, rj);
        let part = embed(&part.sub(&part.unit_like()), offset, r);
        prod = Some(match prod {
            None => part,
            Some(acc) => acc.mul(&part).filter(|e| bx.contains(&e[..r])),
        });
        offset += rj;
    }
    let vars = bold_vars(r);
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let factor = MultiLaurent::parse("1 + Q*h", &names, r)?.pow(k as u32 - 1);
    let mut shift = vec![0; r + 2];
    shift[r] = -2 * (k as i64 - 1);
    let rhs = prod.unwrap().mul(&factor).shift(&shift).filter(|e| bx.contains(&e[..r]));
    let lhs = bold.sub(&bold.unit_like());
    Ok(first_difference(&lhs, &rhs))
}

/// Per-vertex series add up to the per-level coefficients.
fn decoration_sums(lat: &CubeLattice, decs: &[Decoration], entries: &[LocalEntry]) -> Result<Result<()>> {
    let r = lat.rect().arity();
    let mut by_level: BTreeMap<i64, (MultiLaurent, MultiLaurent, MultiLaurent)> = BTreeMap::new();
    for d in decs {
        let e = by_level.entry(d.n).or_insert_with(|| {
            (d.bold_pe1.empty_like(), d.pe1.empty_like(), d.pe_inf.empty_like())
        });
        e.0 = e.0.add(&d.bold_pe1);
        e.1 = e.1.add(&d.pe1);
        e.2 = e.2.add(&d.pe_inf);
    }
    let ones = vec![1; r];
    for (&n, (bold, pe1, inf)) in &by_level {
        let mut want = bold.empty_like();
        for e in entries.iter().filter(|e| e.n == n) {
            let mut x = e.l.coords().to_vec();
            x.push(e.b as i64);
            want.add_term(x, e.rank as i64);
        }
        if *bold != want {
            return Ok(Err(Error::invariant(format!("vertex PE₁ at n = {n} do not add up"))));
        }
        let full = crate::spectral::level_pages(n, lat.sublevel(n), &ones);
        let th = |page: &BTreeMap<(i64, usize), usize>| {
            let mut s = pe1.empty_like();
            for (&(d, b), &k) in page {
                s.add_term(vec![d, b as i64], k as i64);
            }
            s
        };
        if *pe1 != th(full.page(1)) || *inf != th(full.infinity()) {
            return Ok(Err(Error::invariant(format!("vertex page series at n = {n} do not add up"))));
        }
    }
    Ok(Ok(()))
}
