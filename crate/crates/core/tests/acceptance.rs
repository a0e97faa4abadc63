//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::oracles::{check_hilbert_tail, check_membership, sample_matrices, check_snf};
use common::*;
use curvelat::cli::Report;
use curvelat::curve::Curve;
use curvelat::lattice::LatticePoint;
use curvelat::series::{set_var, sqrt_q_map, symmetry_check, MultiLaurent, RationalSeries, SymmetryMode};
use curvelat::spectral::{bold_denominator, pe_series};

/// Polynomial identities are checked exactly: zero tolerance on every coefficient.
const COEFFICIENT_TOLERANCE: i64 = 0;
/// Wall-clock budget for a full report on one corpus curve.
const RUNTIME_BUDGET: Duration = Duration::from_secs(10);
/// Random matrices compared against the minors oracle.
const SNF_SAMPLES: usize = 200;
/// Larger `n_max` where the corpus file pins a small one for speed.
const D4_N_MAX: i64 = 6;
const IRREDUCIBLE_N_MAX: i64 = 10;

fn same_series(a: &MultiLaurent, b: &MultiLaurent) -> bool {
    a.sub(b).terms().all(|(_, c)| c.abs() <= COEFFICIENT_TOLERANCE)
}

fn same_rational(a: &RationalSeries, b: &RationalSeries) -> bool {
    let lhs = a.numerator.mul(&b.denominator_poly());
    let rhs = b.numerator.mul(&a.denominator_poly());
    same_series(&lhs, &rhs)
}

/// Expansion of a bold rational function on the tabulated box of a report.
fn bold_expansion(report: &Report, rs: &RationalSeries) -> MultiLaurent {
    let b = report.bold_pe.as_ref().unwrap();
    let r = b.box_hi.len();
    let mut g = vec![1; r];
    g.extend([0, 0]);
    let max: i64 = b.box_hi.iter().sum();
    rs.expand(&g, max).filter(|e| e[..r].iter().zip(&b.box_hi).all(|(x, y)| *x <= *y))
}

fn page(lp: &curvelat::spectral::LevelPages, k: usize) -> BTreeMap<(i64, usize), usize> {
    lp.page(k).clone()
}

fn inf(lp: &curvelat::spectral::LevelPages) -> BTreeMap<(i64, usize), usize> {
    lp.infinity().clone()
}

/// The JSON report with the input description blanked, for comparing routes.
fn route_free_json(r: &Report) -> serde_json::Value {
    let mut v = serde_json::to_value(r).unwrap();
    v["curve"]["kind"] = serde_json::Value::Null;
    v["curve"]["route"] = serde_json::Value::Null;
    v
}

fn criterion_1() -> Tally {
    let mut t = Tally::default();
    let curve = Curve::from_spec(&config("cusp34").curve).unwrap();
    let at = |l: i64| LatticePoint::new(vec![l]).unwrap();
    let h: Vec<i64> = (0..=8).map(|l| curve.hilbert().h(&at(l))).collect();
    let w: Vec<i64> = (0..=8).map(|l| curve.weights.w(&at(l))).collect();
    t.eq(h, vec![0, 1, 1, 1, 2, 3, 3, 4, 5], "h(0..8)");
    t.eq(w, vec![0, 1, 0, -1, 0, 1, 0, 1, 2], "w(0..8)");
    let r = report("cusp34", None);
    let hom = r.homology.as_ref().unwrap();
    t.eq(hom.modules[0].to_string(), "T^-_2 + T_0(1)^2".to_string(), "H_0");
    t.expect(hom.modules.iter().skip(1).all(|m| m.is_zero()), "H_>0 = 0");
    t.eq((hom.euler.cube_sum, hom.euler.from_homology, hom.euler.delta), (3, 3, 3), "eu via cubes, Betti ranks, delta");
    let want = over_one_minus_tq(poly("1 - T*Q + T^3*Q^-1 - T^5*Q + T^6", &pe_vars(), 1), 1);
    t.expect(same_rational(pe_rational(&r, "inf"), &want), "PE_inf numerator");
    t.expect(same_rational(pe_rational(&r, "1"), &want), "PE_1 numerator");
    let ks = &r.pages.as_ref().unwrap().default.k;
    t.expect(ks.values().all(|&k| k == 1), format!("k(n) = 1 for all n: {ks:?}"));
    t
}

fn criterion_2() -> Tally {
    let mut t = Tally::default();
    let r = report("node", None);
    let twin = report("node_semigroup", None);
    t.expect(route_free_json(&r) == route_free_json(&twin), "Alexander and semigroup routes give the same report");
    let bold = r.bold_pe.as_ref().unwrap();
    let closed = RationalSeries::new(
        bold_poly("(1 - T1*Q)*(1 - T2*Q) + T1*T2*(1 + Q*h)", 2),
        bold_denominator(2),
    );
    t.expect(same_series(&bold.truncated, &bold_expansion(&r, &closed)), "bold PE_1 (relative homology) closed form");
    t.expect(passes(&r, "bold_pe1.routes_agree"), "bold PE_1 motivic route agrees");
    t.expect(same_rational(&bold.rational, &closed), "bold PE_1 rational form");
    let pm = poly("1 - q*t1 - q*t2 + q*t1*t2", &["t1", "t2", "q"], 2);
    t.expect(same_series(&sqrt_q_map(&bold.rational.numerator).unwrap(), &pm), "motivic numerator from bold PE_1");
    t.expect(same_series(&r.motivic.as_ref().unwrap().rational.numerator, &pm), "motivic numerator");
    let want = over_one_minus_tq(poly("1 - T*Q + T^2", &pe_vars(), 1), 1);
    t.expect(same_rational(pe_rational(&r, "inf"), &want), "PE_inf = 1 + T^2/(1 - TQ)");
    let e1 = [
        table(&[((0, 0), 1), ((2, 0), 1)]),
        table(&[((2, 1), 1), ((3, 0), 2)]),
        table(&[((3, 1), 2), ((4, 0), 3)]),
    ];
    let einf = [table(&[((0, 0), 1), ((2, 0), 1)]), table(&[((3, 0), 1)]), table(&[((4, 0), 1)])];
    for n in 0..3 {
        t.eq(page(level(&r, n), 1), e1[n as usize].clone(), &format!("E^1 at n = {n}"));
        t.eq(inf(level(&r, n)), einf[n as usize].clone(), &format!("E^inf at n = {n}"));
    }
    t.eq((level(&r, 1).k, level(&r, 2).k), (2, 2), "k(1), k(2)");
    t
}

fn criterion_3() -> Tally {
    let mut t = Tally::default();
    let r = report("d4", Some(D4_N_MAX));
    let twin = report("d4_semigroup", Some(D4_N_MAX));
    t.expect(route_free_json(&r) == route_free_json(&twin), "Alexander and semigroup routes give the same report");
    let num = bold_poly(
        "(1 - T1*Q)*(1 - T2*Q)*(1 - T3*Q)*(1 + T1*T2*T3*Q^-1*(1 + 2*Q*h)) \
         + T1*T2*T3*(1 + Q*h)*(T1*(1 - T2*Q)*(1 - T3*Q) + T2*(1 - T1*Q)*(1 - T3*Q) + T3*(1 - T1*Q)*(1 - T2*Q)) \
         + T1^2*T2^2*T3^2*(1 + Q*h)^2",
        3,
    );
    let closed = RationalSeries::new(num, bold_denominator(3));
    let bold = r.bold_pe.as_ref().unwrap();
    t.expect(same_series(&bold.truncated, &bold_expansion(&r, &closed)), "bold PE_1 equals the three-line formula");
    t.expect(passes(&r, "bold_pe1.routes_agree"), "bold PE_1 routes agree");
    let want = over_one_minus_tq(poly("(1 + T^3*Q^-1 + T^4)*(1 - T*Q) + T^6", &pe_vars(), 1), 1);
    t.expect(same_rational(pe_rational(&r, "inf"), &want), "PE_inf");
    t.eq(page(level(&r, 0), 1), table(&[((0, 0), 1), ((3, 1), 2), ((4, 0), 3), ((6, 0), 1)]), "E^1 at n = 0");
    t.eq(inf(level(&r, 0)), table(&[((0, 0), 1), ((4, 0), 1), ((6, 0), 1)]), "E^inf at n = 0");
    t.eq(page(level(&r, 1), 1), table(&[((4, 1), 3), ((5, 0), 3), ((6, 1), 2), ((7, 0), 3)]), "E^1 at n = 1");
    t.eq(inf(level(&r, 1)), table(&[((7, 0), 1)]), "E^inf at n = 1");
    let hfl: BTreeMap<i64, usize> = r
        .hfl
        .as_ref()
        .unwrap()
        .entries
        .iter()
        .filter(|e| e.l == vec![2, 2, 2])
        .map(|e| (e.maslov, e.rank))
        .collect();
    t.eq(hfl, [(-8, 1), (-7, 2), (-6, 1)].into_iter().collect(), "HFL ranks at (2,2,2)");
    t.expect(r.curve.gorenstein, "Gorenstein");
    t.expect(passes(&r, "bold_pe1.gorenstein_symmetry"), "bold PE_1 symmetry at h = -Q");
    t.expect(passes(&r, "motivic.gorenstein_symmetry"), "motivic symmetry");
    t
}

fn criterion_4() -> Tally {
    let mut t = Tally::default();
    let r = report("cusp34_wedge", None);
    let hom = r.homology.as_ref().unwrap();
    t.eq(r.curve.delta, 7, "delta");
    t.eq(hom.modules.get(1).map(|m| m.to_string()), Some("T_2(1)".to_string()), "H_1");
    t.eq(hom.modules[0].to_string(), "T^-_8 + T_6(1)^2 + T_4(1) + T_0(1)".to_string(), "H_0");
    let want_e1 = table(&[((10, 0), 4), ((9, 1), 2), ((8, 0), 1), ((7, 1), 2)]);
    let decs = &r.root.as_ref().unwrap().decorations;
    let comp = decs.iter().find(|d| d.n == -2 && d.pages.page(1) == &want_e1);
    match comp {
        Some(d) => {
            t.eq(d.pages.infinity().clone(), table(&[((10, 0), 1)]), "E^inf of S'_{-2}");
            t.eq(d.k, 4, "k on S'_{-2}");
            t.expect(d.pages.differentials.iter().any(|x| x.k == 3 && x.rank > 0), "d^3 nonzero on S'_{-2}");
        }
        None => t.expect(false, "no component of S_{-2} with the expected E^1"),
    }
    t.eq(level(&r, -2).k, 4, "k(-2)");
    let lp = level(&r, -1);
    let e5 = lp.page(5);
    t.eq((e5.get(&(13, 0)).copied(), e5.get(&(8, 1)).copied()), (Some(1), Some(1)), "E^5 at n = -1");
    t.expect(lp.differentials.iter().all(|d| d.k != 5), "d^5 = 0 at n = -1");
    t.expect(passes(&r, "wedge.kunneth"), "Kunneth cross-check");
    t.expect(!r.curve.gorenstein, "not Gorenstein");
    let m = &r.motivic.as_ref().unwrap().rational;
    let sym = symmetry_check(m, &r.curve.conductor, r.curve.delta, SymmetryMode::Motivic).unwrap();
    t.expect(!sym, "motivic symmetry fails");
    t
}

fn criterion_5() -> Tally {
    let mut t = Tally::default();
    for name in ["ordinary2", "ordinary3", "gen23"] {
        let r = report(name, None);
        let ar = r.curve.arity;
        let c: i64 = r.curve.conductor.iter().sum();
        let tail = format!("T^{c}*Q^{}*(1 + Q*h)^{}", 2 - c, ar - 1);
        let want = over_one_minus_tq(poly(&format!("(1 - T*Q)^{ar} + {tail}"), &pe_vars(), 1), ar as u32);
        t.expect(same_rational(pe_rational(&r, "1"), &want), format!("{name}: PE_1"));
        let want_inf = over_one_minus_tq(poly(&format!("1 - T*Q + T^{c}*Q^{}", 2 - c), &pe_vars(), 1), 1);
        t.expect(same_rational(pe_rational(&r, "inf"), &want_inf), format!("{name}: PE_inf"));
        let tc: Vec<String> = r.curve.conductor.iter().enumerate().map(|(i, x)| format!("T{}^{x}", i + 1)).collect();
        let prod: Vec<String> = (1..=ar).map(|i| format!("(1 - T{i}*Q)")).collect();
        let bold = RationalSeries::new(
            bold_poly(&format!("{} + {}*Q^{}*(1 + Q*h)^{}", prod.join("*"), tc.join("*"), 2 - c, ar - 1), ar),
            bold_denominator(ar),
        );
        t.expect(same_series(&r.bold_pe.as_ref().unwrap().truncated, &bold_expansion(&r, &bold)), format!("{name}: bold PE_1"));
        let h0 = r.homology.as_ref().unwrap().modules[0].to_string();
        t.eq(h0, format!("T^-_{} + T_0(1)", -2 * (2 - c)), &format!("{name}: H_0"));
        if name.starts_with("ordinary") {
            let gens: BTreeMap<(Vec<i64>, usize), usize> = r
                .y_ops
                .as_ref()
                .unwrap()
                .generators
                .iter()
                .filter(|g| g.generators > 0)
                .map(|g| ((g.l.clone(), g.b), g.generators))
                .collect();
            let mut want: BTreeMap<(Vec<i64>, usize), usize> = BTreeMap::new();
            want.insert((vec![0; ar], 0), 1);
            for b in 0..ar {
                let binom = (0..b).fold(1, |acc, i| acc * (ar - 1 - i) / (i + 1));
                want.insert((vec![1; ar], b), binom);
            }
            t.eq(gens, want, &format!("{name}: Y-module generators"));
        }
    }
    t
}

fn criterion_6() -> Tally {
    let mut t = Tally::default();
    let a = report("semigroup457", Some(IRREDUCIBLE_N_MAX));
    let b = report("semigroup378", Some(IRREDUCIBLE_N_MAX));
    for r in [&a, &b] {
        t.eq(r.homology.as_ref().unwrap().modules[0].to_string(), "T^-_4 + T_2(1) + T_0(1)".to_string(), "H_0");
    }
    let kmax = a.pages.as_ref().unwrap().default.k_max.max(b.pages.as_ref().unwrap().default.k_max);
    let at_one = |r: &Report, k: Option<usize>| set_var(&pe_series(levels(r), k), "T", 1).unwrap();
    for k in (1..=kmax).map(Some).chain([None]) {
        t.expect(same_series(&at_one(&a, k), &at_one(&b, k)), format!("PE_{k:?}(T=1, Q) agree"));
    }
    let low = at_one(&a, Some(1)).filter(|e| e[0] <= 1);
    t.expect(same_series(&low, &poly("Q^-2 + 2*Q^-1 + 2 + Q", &["Q", "h"], 0)), "PE_1(T=1, Q) leading terms");
    t.expect(!pe_rational(&a, "inf").same_as(pe_rational(&b, "inf")), "PE_inf(T, Q) differ");
    let chains = |r: &Report| r.y_ops.as_ref().unwrap().chains.clone().unwrap();
    t.eq(chains(&a), vec!["{0}".to_string(), "{4,5}".into(), "{7,...}".into()], "<4,5,7> Y-chains");
    t.eq(chains(&b), vec!["{0}".to_string(), "{3}".into(), "{6,...}".into()], "<3,7,8> Y-chains");
    t
}

const PROPERTY_CHECKS: [&str; 10] = [
    "hat.euler_is_one",
    "pages.euler_degeneration",
    "pages.e1_equals_local_sum",
    "u.vanishes_on_e1",
    "y.commutes_with_d1",
    "y.independent_on_e2",
    "bold_pe1.support_is_semigroup",
    "motivic.sqrt_q_image_of_bold_pe1",
    "homology.vanishes_from_arity",
    "rectangle.ranks_stable",
];

fn criterion_7() -> Tally {
    let mut t = Tally::default();
    for name in CORPUS {
        let mut cfg = config(name);
        cfg.n_max = None;
        let start = Instant::now();
        // Local groups with torsion or off n = w(l) + b abort the run with an invariant error.
        let r = match curvelat::cli::run(&cfg) {
            Ok(r) => r,
            Err(e) => {
                t.expect(false, format!("{name}: {e}"));
                continue;
            }
        };
        let took = start.elapsed();
        t.expect(took <= RUNTIME_BUDGET, format!("{name}: {took:?} over budget"));
        t.eq(failed_checks(&r), Vec::<String>::new(), &format!("{name}: failed checks"));
        for check in PROPERTY_CHECKS {
            t.expect(passes(&r, check), format!("{name}: {check}"));
        }
    }
    t
}

fn criterion_8() -> Tally {
    let mut t = Tally::default();
    for m in sample_matrices(SNF_SAMPLES) {
        if let Err(e) = check_snf(&m) {
            t.expect(false, e);
        }
    }
    for name in CORPUS {
        let spec = config(name).curve;
        if Curve::from_spec(&spec).unwrap().arity() == 1 {
            if let Err(e) = check_membership(&spec) {
                t.expect(false, format!("{name}: {e}"));
            }
        }
        if matches!(spec, curvelat::semigroup::CurveSpec::PlaneAlexander { .. }) {
            continue;
        }
        if let Err(e) = check_hilbert_tail(&spec) {
            t.expect(false, format!("{name}: {e}"));
        }
    }
    t
}

fn main() {
    let criteria: [(&str, fn() -> Tally); 8] = [
        ("<3,4>: h, w, H, eu, PE numerator, k = 1", criterion_1),
        ("x^2+y^2: bold PE_1 by both routes, PE_inf, motivic numerator, pages n = 0,1,2, k", criterion_2),
        ("x^3+y^3: bold PE_1, PE_inf, pages n = 0,1, HFL at (2,2,2), Gorenstein", criterion_3),
        ("<3,4> wedge <3,4>: delta, H_0, H_1, S'_-2 pages, E^5 at n = -1, Kunneth, not Gorenstein", criterion_4),
        ("ordinary pairs/triples and c = (2,3): PE_1, H_0, Y-module generators", criterion_5),
        ("<4,5,7> vs <3,7,8>: H_0, PE_k(1, Q), PE_inf, Y-chains", criterion_6),
        ("property suites on the whole corpus", criterion_7),
        ("oracles: Smith form, semigroup membership, Hilbert tail", criterion_8),
    ];
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let t = f();
        let status = if t.ok() { "PASS" } else { "FAIL" };
        println!("criterion {} [{status}] {label} ({:.2?})", i + 1, start.elapsed());
        for msg in &t.0 {
            println!("    {msg}");
        }
        failed += !t.ok() as usize;
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
