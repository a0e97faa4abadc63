//! Invariants on randomly generated curves and series.

mod common;

use std::collections::BTreeSet;

use common::oracles::{check_hilbert_tail, check_membership, check_snf, matrix_strategy, numerical_elements};
use common::{failed_checks, passes};
use curvelat::cli::{run, Output, RunConfig};
use curvelat::curve::Curve;
use curvelat::lattice::LatticePoint;
use curvelat::semigroup::CurveSpec;
use curvelat::series::{MultiLaurent, RationalSeries};
use num_integer::Integer;
use proptest::prelude::*;

fn numerical_gens() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(2i64..=9, 1..=3)
        .prop_map(|mut g| {
            g.sort();
            g.dedup();
            g
        })
        .prop_filter("gcd 1", |g| g.iter().fold(0, |a, &b| a.gcd(&b)) == 1)
}

fn small_gens() -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![Just(vec![1]), Just(vec![2, 3]), Just(vec![2, 5]), Just(vec![3, 4]), Just(vec![3, 4, 5])]
}

fn numerical(g: Vec<i64>) -> CurveSpec {
    CurveSpec::Numerical { generators: g, plane: false }
}

fn at(v: i64) -> LatticePoint {
    LatticePoint::new(vec![v]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn one_branch_reports_pass_every_check(g in numerical_gens()) {
        let r = run(&RunConfig::new(numerical(g.clone()))).unwrap();
        prop_assert_eq!(failed_checks(&r), Vec::<String>::new());
        for name in ["hat.euler_is_one", "euler.homology_is_delta", "bold_pe1.routes_agree", "y.independent_on_e2"] {
            prop_assert!(passes(&r, name), "{} on {:?}", name, g);
        }
    }

    #[test]
    fn one_branch_pe_inf_lists_the_semigroup(g in numerical_gens()) {
        // For one branch every class survives: PE_inf = sum over s in S of T^s Q^w(s).
        let curve = Curve::from_spec(&numerical(g.clone())).unwrap();
        let r = run(&RunConfig::new(numerical(g))).unwrap();
        let inf = &r.pe.as_ref().unwrap().series.iter().find(|s| s.k == "inf").unwrap().truncated;
        let n_max = r.run.n_max;
        let mut want = MultiLaurent::zero(&["T", "Q", "h"], 1);
        for s in 0..=2 * curve.delta() + n_max + 2 {
            let w = curve.weights.w(&at(s));
            if curve.semigroup.contains(&at(s)) && w <= n_max {
                want.add_term(vec![s, w, 0], 1);
            }
        }
        prop_assert_eq!(inf, &want);
    }

    #[test]
    fn y_chains_are_runs_of_the_semigroup(g in numerical_gens()) {
        let r = run(&RunConfig::new(numerical(g.clone()))).unwrap();
        let chains = r.y_ops.unwrap().chains.unwrap();
        let c = Curve::from_spec(&numerical(g.clone())).unwrap().conductor().coords()[0];
        let elems = numerical_elements(&g, c);
        let show = |a: i64, b: i64| format!("{{{}}}", (a..=b).map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        let mut runs = Vec::new();
        let mut cur: Option<(i64, i64)> = None;
        for s in 0..c {
            if elems.contains(&s) {
                cur = Some(cur.map_or((s, s), |(a, _)| (a, s)));
            } else if let Some((a, b)) = cur.take() {
                runs.push(show(a, b));
            }
        }
        runs.push(format!("{{{c},...}}"));
        prop_assert_eq!(chains, runs);
    }

    #[test]
    fn weight_symmetry_for_two_generators(a in 2i64..=9, b in 2i64..=9) {
        prop_assume!(a.gcd(&b) == 1);
        let curve = Curve::from_spec(&numerical(vec![a, b])).unwrap();
        let c = curve.conductor().coords()[0];
        for l in 0..=c {
            prop_assert_eq!(curve.weights.w(&at(l)), curve.weights.w(&at(c - l)));
        }
        prop_assert_eq!(2 * curve.delta(), c);
    }

    #[test]
    fn membership_and_hilbert_oracles(g in numerical_gens()) {
        let spec = numerical(g);
        prop_assert!(check_membership(&spec).is_ok());
        prop_assert!(check_hilbert_tail(&spec).is_ok());
    }

    #[test]
    fn snf_matches_minors(m in matrix_strategy()) {
        prop_assert_eq!(check_snf(&m), Ok(()));
    }

    #[test]
    fn series_display_round_trips(terms in proptest::collection::vec((-3i64..=6, -3i64..=6, 0i64..=2, -4i64..=4), 0..8)) {
        let mut s = MultiLaurent::zero(&["T", "Q", "h"], 1);
        for (t, q, h, c) in terms {
            s.add_term(vec![t, q, h], c);
        }
        let back = MultiLaurent::parse(&s.to_string(), &["T", "Q", "h"], 1).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn rational_expansion_inverts_the_denominator(terms in proptest::collection::vec((0i64..=4, -2i64..=3, -3i64..=3), 1..6), m in 1u32..=3) {
        let mut num = MultiLaurent::zero(&["T", "Q"], 1);
        for (t, q, c) in terms {
            num.add_term(vec![t, q], c);
        }
        let rs = RationalSeries::new(num.clone(), vec![(vec![1, 1], m)]);
        let max = 8;
        let back = rs.expand(&[1, 0], max).mul(&rs.denominator_poly()).filter(|e| e[0] <= max);
        prop_assert_eq!(back, num.filter(|e| e[0] <= max));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wedges_pass_every_check(a in small_gens(), b in small_gens()) {
        let spec = CurveSpec::Wedge { parts: vec![numerical(a.clone()), numerical(b.clone())] };
        let r = run(&RunConfig::new(spec.clone())).unwrap();
        prop_assert_eq!(failed_checks(&r), Vec::<String>::new());
        for name in ["wedge.kunneth", "wedge.reduced_is_restriction", "bold_pe1.wedge_product", "u.vanishes_on_e1"] {
            prop_assert!(passes(&r, name), "{} on {:?} v {:?}", name, a, b);
        }
        prop_assert!(check_hilbert_tail(&spec).is_ok());
        let support: BTreeSet<Vec<i64>> = r.bold_pe.unwrap().truncated.terms().map(|(e, _)| e[..2].to_vec()).collect();
        prop_assert!(support.contains(&vec![0, 0]));
    }
}

#[test]
fn every_single_output_runs_clean() {
    for name in ["cusp34_wedge", "node", "d4"] {
        for o in Output::ALL {
            let mut cfg = common::config(name);
            cfg.outputs = Some([o].into_iter().collect());
            let r = run(&cfg).unwrap();
            assert_eq!(failed_checks(&r), Vec::<String>::new(), "{name} with {o:?}");
            assert!(!r.checks.is_empty(), "{name} with {o:?} ran no checks");
        }
    }
}
