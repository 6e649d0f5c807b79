//! Invariants of multiplicities checked over a seeded random corpus and a
//! few maps of the projective plane.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use dynatomic::algebra::{FieldDescriptor, MultiPoly, PolyMap};
use dynatomic::degrees::deg_phi;
use dynatomic::dynatomic::{
    cycle_report, order_lcms, periodic_points, point_report, Corpus, CorpusConfig, PointReport,
};
use dynatomic::localmult::{fixed_point_staircase, MultConfig};
use dynatomic::Error;

const N_MAX: u64 = 6;

fn reports() -> Vec<(PolyMap, PointReport)> {
    let corpus = Corpus::generate(&CorpusConfig {
        seed: 7,
        count: 150,
        ..CorpusConfig::default()
    })
    .unwrap();
    let cfg = MultConfig::default();
    let mut out = Vec::new();
    for map in corpus.maps {
        for (point, _) in periodic_points(&map, N_MAX).unwrap() {
            let rep = point_report(&map, &point, N_MAX, &cfg).unwrap();
            out.push((map.clone(), rep));
        }
    }
    out
}

#[test]
fn corpus_invariants() {
    let cfg = MultConfig::default();
    let mut fixed = 0;
    for (map, rep) in reports() {
        let p = rep.characteristic;
        let m = rep.primitive_period.unwrap();

        // points of primitive period m have formal period m
        if let Some(&v) = rep.a_star.get(&m) {
            assert!(v >= 1, "{}: a*({m}) = {v}", rep.point);
        }

        // a_P(d) in {0, 1} for all d | n forces a*_P(n) in {0, 1}, equal to 1
        // exactly when n is the primitive period
        for (&n, &v) in &rep.a_star {
            let transversal = (1..=n)
                .filter(|d| n % d == 0)
                .all(|d| rep.a_value(d).is_some_and(|a| a <= 1));
            if transversal {
                assert_eq!(v == 1, n == m, "{} n={n}: a*={v}, m={m}", rep.point);
                assert!(v == 0 || v == 1);
            }
        }

        if m != 1 {
            continue;
        }
        fixed += 1;
        let Some(a1) = rep.a_value(1) else { continue };
        let s1 = fixed_point_staircase(&map, &rep.point, 1, &cfg).unwrap().unwrap();
        let mut seen = BTreeSet::new();
        for n in 1..=N_MAX {
            let Some(an) = rep.a_value(n) else { continue };
            assert!(an >= a1, "{}: a({n}) = {an} < a(1) = {a1}", rep.point);
            let sn = fixed_point_staircase(&map, &rep.point, n, &cfg).unwrap().unwrap();
            assert!(sn.is_contained_in(&s1), "{}: LT(I_{n}) not in LT(I_1)", rep.point);
            if n % p != 0 {
                seen.insert(an);
            }
        }
        let bound = order_lcms(&rep.finite_orders()).len() + 1;
        assert!(seen.len() <= bound, "{}: values {seen:?} exceed {bound}", rep.point);
    }
    assert!(fixed > 50, "only {fixed} fixed points in the corpus");
}

fn plane_map(p: u64, comps: &[&[(&[u32], i64)]]) -> PolyMap {
    let f = FieldDescriptor::prime(p).unwrap();
    PolyMap::projective(comps.iter().map(|t| MultiPoly::from_int_terms(&f, 3, t)).collect()).unwrap()
}

#[test]
fn plane_cycles_have_the_expected_degree() {
    let maps = [
        plane_map(2, &[&[(&[2, 0, 0], 1)], &[(&[0, 2, 0], 1)], &[(&[0, 0, 2], 1)]]),
        plane_map(3, &[&[(&[2, 0, 0], 1)], &[(&[0, 2, 0], 1)], &[(&[0, 0, 2], 1)]]),
        plane_map(
            3,
            &[
                &[(&[2, 0, 0], 1), (&[0, 1, 1], 1)],
                &[(&[0, 2, 0], 1)],
                &[(&[0, 0, 2], 1)],
            ],
        ),
    ];
    let cfg = MultConfig::default();
    for map in &maps {
        for n in 1..=2 {
            let expected = deg_phi(2, 2, n);
            let p = map.field().characteristic();
            let mut found = BigInt::from(0);
            let mut s = 1;
            while p.pow(2 * s) <= 6561 {
                match cycle_report(map, n, s, &cfg) {
                    Ok(rep) => found = BigInt::from(rep.phi().degree()),
                    Err(Error::DegenerateIterate { .. }) => panic!("degenerate plane map"),
                    Err(e) => panic!("{e}"),
                }
                if found >= expected {
                    break;
                }
                s += 1;
            }
            assert_eq!(found, expected, "n={n}");
        }
    }
}
