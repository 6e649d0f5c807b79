//! Acceptance criteria 1 to 9. Each test prints one `criterion N: PASS|FAIL`
//! line and then asserts it. Criteria 3, 4, 7 and 9 share one corpus run.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynatomic::algebra::{series_iterate, Elem, FieldDescriptor, MapForm, Monomial, MultiPoly, Point, PolyMap};
use dynatomic::degrees::{deg_phi, lefschetz};
use dynatomic::dynatomic::{
    a_star, cycle_report, periodic_points, point_report, verify_identities, verify_thm17, Corpus, CorpusConfig, Mult,
    PeriodForm, Status,
};
use dynatomic::localmult::{a_p, univariate_valuation, Method, MultConfig};
use dynatomic::spectral::{lemma19_coefficient, LeastMonomialQuery};
use dynatomic::Error;

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_SIZE: usize = 500;
const N_MAX: u64 = 6;

fn report(id: u32, pass: bool, elapsed: Duration, limit: Option<Duration>, detail: String) {
    let timed = limit.is_none_or(|l| elapsed < l);
    let verdict = if pass && timed { "PASS" } else { "FAIL" };
    let bound = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!("criterion {id}: {verdict} [{elapsed:.2?}{bound}] {detail}");
    assert!(pass, "criterion {id} failed: {detail}");
    assert!(timed, "criterion {id} exceeded its runtime limit");
}

fn char3_map() -> PolyMap {
    let f = FieldDescriptor::prime(3).unwrap();
    PolyMap::affine(vec![
        MultiPoly::from_int_terms(&f, 2, &[(&[1, 0], 1), (&[2, 0], 1), (&[1, 1], 1)]),
        MultiPoly::from_int_terms(&f, 2, &[(&[0, 1], 2), (&[2, 0], 1)]),
    ])
    .unwrap()
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let map = char3_map();
    let origin = Point::origin(map.field(), 2);
    let cfg = MultConfig::default();
    let a1 = a_p(&map, &origin, 1, &cfg).unwrap();
    let a3 = a_p(&map, &origin, 3, &cfg).unwrap();
    let s3 = a_star(&map, &origin, 3, &cfg).unwrap();
    let rep = point_report(&map, &origin, 3, &cfg).unwrap();
    let thm17 = verify_thm17(&rep, 3, 3);
    let exempt =
        thm17.status == Status::Vacuous && thm17.witness.as_ref().and_then(|w| w["reason"].as_str()) == Some("p | n");
    let pass = a1 == 2 && a3 == 3 && s3 == 1 && exempt;
    report(
        1,
        pass,
        start.elapsed(),
        Some(Duration::from_secs(1)),
        format!("a(1)={a1} a(3)={a3} a*(3)={s3} (expected 2, 3, 1); p | n exemption: {exempt}"),
    );
}

fn p1_map(p: u64, x: &[(&[u32], i64)], y: &[(&[u32], i64)]) -> PolyMap {
    let f = FieldDescriptor::prime(p).unwrap();
    PolyMap::projective(vec![
        MultiPoly::from_int_terms(&f, 2, x),
        MultiPoly::from_int_terms(&f, 2, y),
    ])
    .unwrap()
}

#[test]
fn criterion_2_degree_cross_check() {
    let start = Instant::now();
    let maps = vec![
        ("z^2 / F3", p1_map(3, &[(&[2, 0], 1)], &[(&[0, 2], 1)])),
        ("z^2 / F5", p1_map(5, &[(&[2, 0], 1)], &[(&[0, 2], 1)])),
        ("z^3 / F2", p1_map(2, &[(&[3, 0], 1)], &[(&[0, 3], 1)])),
        ("z^3 / F5", p1_map(5, &[(&[3, 0], 1)], &[(&[0, 3], 1)])),
        ("z+z^2 / F3", p1_map(3, &[(&[2, 0], 1), (&[1, 1], 1)], &[(&[0, 2], 1)])),
        ("z+z^3 / F3", p1_map(3, &[(&[3, 0], 1), (&[1, 2], 1)], &[(&[0, 3], 1)])),
        ("z^2+2 / F5", p1_map(5, &[(&[2, 0], 1), (&[0, 2], 2)], &[(&[0, 2], 1)])),
        (
            "(z^2+1)/z / F2",
            p1_map(2, &[(&[2, 0], 1), (&[0, 2], 1)], &[(&[1, 1], 1)]),
        ),
        (
            "(z^3+2)/z / F3",
            p1_map(3, &[(&[3, 0], 1), (&[0, 3], 2)], &[(&[1, 2], 1)]),
        ),
    ];
    let cfg = MultConfig::default();
    let mut cases = 0;
    let mut failures = Vec::new();
    for (name, map) in &maps {
        assert!(map.is_morphism_up_to(2).unwrap(), "{name} is not a morphism");
        let p = map.field().characteristic() as f64;
        for n in 1..=3 {
            let expected = deg_phi(1, map.degree() as u64, n);
            // grow the extension bound until every point of Φ_n is found
            let mut found = BigInt::from(0);
            let mut s = 1;
            while p.powi(s as i32) <= (1u64 << 20) as f64 {
                let rep = cycle_report(map, n, s, &cfg).unwrap();
                assert!(rep.degenerate_points().is_empty());
                found = BigInt::from(rep.phi().degree());
                if found >= expected {
                    break;
                }
                s += 1;
            }
            cases += 1;
            if found != expected {
                failures.push(format!("{name} n={n}: {found} != {expected}"));
            }
        }
    }
    report(
        2,
        failures.is_empty() && maps.len() >= 6,
        start.elapsed(),
        Some(Duration::from_secs(300)),
        format!("{} maps, {cases} (map, n) cases; mismatches: {failures:?}", maps.len()),
    );
}

#[derive(Default, Debug)]
struct FuzzSummary {
    maps: usize,
    points: usize,
    values: usize,
    degenerate: usize,
    negative: Vec<String>,
    unmatched: Vec<String>,
    positive: usize,
    thm17_checked: usize,
    thm17_fail: Vec<String>,
    oracle_instances: usize,
    oracle_mismatch: Vec<String>,
    valuation_checked: usize,
    valuation_mismatch: Vec<String>,
    prop10_checked: usize,
    prop10_fail: Vec<String>,
    elapsed: Duration,
}

fn fuzz() -> &'static FuzzSummary {
    static RUN: OnceLock<FuzzSummary> = OnceLock::new();
    RUN.get_or_init(|| {
        let start = Instant::now();
        let corpus = Corpus::generate(&CorpusConfig {
            seed: CORPUS_SEED,
            count: CORPUS_SIZE,
            ..CorpusConfig::default()
        })
        .unwrap();
        let cfg = MultConfig::with_method(Method::CrossCheck);
        let mut s = FuzzSummary {
            maps: corpus.maps.len(),
            ..FuzzSummary::default()
        };
        for (idx, map) in corpus.maps.iter().enumerate() {
            let p = map.field().characteristic() as u64;
            for (point, _) in periodic_points(map, N_MAX).unwrap() {
                s.points += 1;
                let tag = |n: u64| format!("map {idx} at {point}, n={n}");
                let rep = match point_report(map, &point, N_MAX, &cfg) {
                    Ok(r) => r,
                    Err(Error::OracleMismatch { standard, truncated }) => {
                        s.oracle_mismatch.push(format!(
                            "map {idx} at {point}: standard {standard}, truncated {truncated}"
                        ));
                        continue;
                    }
                    Err(e) => panic!("map {idx} at {point}: {e}"),
                };
                for (&n, m) in &rep.a {
                    match m {
                        Mult::Degenerate => s.degenerate += 1,
                        Mult::Value(_) => s.values += 1,
                    }
                    if rep.primitive_period.is_some_and(|m| n % m == 0) && *m != Mult::Degenerate {
                        s.oracle_instances += 1;
                    }
                }
                for (&n, &v) in &rep.a_star {
                    if v < 0 {
                        s.negative.push(format!("{}: a*={v}", tag(n)));
                    }
                    if v >= 1 {
                        s.positive += 1;
                        if matches!(rep.classify(n), None | Some(PeriodForm::NoFormMatched)) {
                            s.unmatched
                                .push(format!("{}: a*={v}, orders {:?}", tag(n), rep.finite_orders()));
                        }
                    }
                    let verdict = verify_thm17(&rep, n, p);
                    if verdict.status != Status::Vacuous {
                        s.thm17_checked += 1;
                    }
                    if verdict.status == Status::Fail {
                        s.thm17_fail.push(tag(n));
                    }
                }
                if map.nvars() == 1 {
                    for n in 1..=N_MAX {
                        let val = univariate_valuation(map, &point, n).unwrap();
                        let ours = match rep.a[&n] {
                            Mult::Value(v) => Some(v),
                            Mult::Degenerate => None,
                        };
                        s.valuation_checked += 1;
                        if val != ours {
                            s.valuation_mismatch.push(format!("{}: {val:?} vs {ours:?}", tag(n)));
                        }
                    }
                }
                if rep.primitive_period == Some(1) {
                    let sd = rep.spectral.as_ref().unwrap();
                    for n in 1..=N_MAX {
                        if let Some(v) = rep.a_value(n) {
                            s.prop10_checked += 1;
                            if (v == 1) == sd.has_eigenvalue_root_of_unity(n) {
                                s.prop10_fail.push(format!("{}: a={v}", tag(n)));
                            }
                        }
                    }
                }
            }
        }
        s.elapsed = start.elapsed();
        println!(
            "corpus seed {CORPUS_SEED}: {} maps, {} periodic points, {} values of a_P(n), {} degenerate, {:.2?}",
            s.maps, s.points, s.values, s.degenerate, s.elapsed
        );
        s
    })
}

#[test]
fn criterion_3_effectivity() {
    let s = fuzz();
    report(
        3,
        s.maps >= 500 && s.negative.is_empty() && s.unmatched.is_empty(),
        s.elapsed,
        Some(Duration::from_secs(15 * 60)),
        format!(
            "{} maps, {} positive a*; negative: {:?}; unmatched forms: {:?}",
            s.maps, s.positive, s.negative, s.unmatched
        ),
    );
}

#[test]
fn criterion_4_non_primitive_multiplicity() {
    let s = fuzz();
    report(
        4,
        s.thm17_fail.is_empty(),
        s.elapsed,
        None,
        format!(
            "{} non-vacuous instances; violations: {:?}",
            s.thm17_checked, s.thm17_fail
        ),
    );
}

#[test]
fn criterion_7_oracle_agreement() {
    let s = fuzz();
    report(
        7,
        s.oracle_mismatch.is_empty() && s.valuation_mismatch.is_empty() && s.oracle_instances > 0,
        s.elapsed,
        None,
        format!(
            "{} cross-checked colengths, {} valuation checks; mismatches: {:?} {:?}",
            s.oracle_instances, s.valuation_checked, s.oracle_mismatch, s.valuation_mismatch
        ),
    );
}

#[test]
fn criterion_9_transversality() {
    let s = fuzz();
    report(
        9,
        s.prop10_fail.is_empty() && s.prop10_checked > 0,
        s.elapsed,
        None,
        format!(
            "{} fixed-point instances; violations: {:?}",
            s.prop10_checked, s.prop10_fail
        ),
    );
}

fn random_nonzero(rng: &mut ChaCha8Rng, f: &FieldDescriptor) -> Elem {
    if f.is_finite() {
        let q = f.size().unwrap();
        Elem::Fin(rng.gen_range(1..q))
    } else {
        let choices = ["1", "-1", "2", "-2", "1/2", "3", "-1/3"];
        f.parse(choices[rng.gen_range(0..choices.len())]).unwrap()
    }
}

fn random_element(rng: &mut ChaCha8Rng, f: &FieldDescriptor) -> Elem {
    if rng.gen_bool(0.3) {
        f.zero()
    } else {
        random_nonzero(rng, f)
    }
}

fn random_query(rng: &mut ChaCha8Rng) -> LeastMonomialQuery {
    let fields = [
        FieldDescriptor::prime(2).unwrap(),
        FieldDescriptor::prime(3).unwrap(),
        FieldDescriptor::prime(5).unwrap(),
        FieldDescriptor::prime(7).unwrap(),
        FieldDescriptor::rationals(),
    ];
    let field = fields[rng.gen_range(0..fields.len())].clone();
    let v = rng.gen_range(1..=3usize);
    let s = rng.gen_range(1..=v);
    let t = rng.gen_range(1..=s);
    let (block_exponents, outside) = if rng.gen_bool(0.25) {
        let mut e = vec![0; v];
        e[s - 1] = 1;
        (e, Vec::new())
    } else {
        loop {
            let e: Vec<u32> = (0..v).map(|_| rng.gen_range(0..=2)).collect();
            let o: Vec<(Elem, u32)> = (0..rng.gen_range(0..=1))
                .map(|_| (random_nonzero(rng, &field), rng.gen_range(1..=2)))
                .collect();
            let deg: u32 = e.iter().sum::<u32>() + o.iter().map(|x| x.1).sum::<u32>();
            if (2..=4).contains(&deg) {
                break (e, o);
            }
        }
    };
    let mut coefficients: Vec<Elem> = (0..s).map(|_| random_element(rng, &field)).collect();
    coefficients[s - 1] = random_nonzero(rng, &field);
    LeastMonomialQuery {
        lambda: random_nonzero(rng, &field),
        field,
        block_exponents,
        outside,
        t,
        s,
        coefficients,
    }
}

#[test]
fn criterion_5_closed_form_coefficient() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut failures = Vec::new();
    let queries = 250;
    for i in 0..queries {
        let q = random_query(&mut rng);
        let n = rng.gen_range(1..=10u64);
        let b = q.block_size() + q.outside.len();
        let deg = q.degree();
        // noise strictly above deg F cannot reach the coefficient of F
        let noise: Vec<MultiPoly> = (0..b)
            .map(|_| {
                let mut c = MultiPoly::zero(&q.field, b);
                for m in Monomial::of_degree(b, deg + 1) {
                    if rng.gen_bool(0.4) {
                        c.add_term(m, random_element(&mut rng, &q.field));
                    }
                }
                c
            })
            .collect();
        let map = q.model_map(Some(&noise)).unwrap();
        let direct = series_iterate(&map, n, deg + 1).unwrap()[q.t - 1].coefficient(&q.monomial());
        let closed = lemma19_coefficient(&q, n).unwrap();
        if direct != closed {
            failures.push(format!("query {i} n={n}: {q:?}: direct {direct:?}, closed {closed:?}"));
        }
    }
    report(
        5,
        failures.is_empty(),
        start.elapsed(),
        None,
        format!("{queries} queries; mismatches: {failures:?}"),
    );
}

#[test]
fn criterion_6_identities() {
    let start = Instant::now();
    let corpus = Corpus::generate(&CorpusConfig {
        seed: CORPUS_SEED,
        count: 60,
        ..CorpusConfig::default()
    })
    .unwrap();
    let cfg = MultConfig::default();
    let mut checked = 0;
    let mut kinds = std::collections::BTreeSet::new();
    let mut failures = Vec::new();
    for (idx, map) in corpus.maps.iter().enumerate() {
        for (point, _) in periodic_points(map, N_MAX).unwrap().into_iter().take(3) {
            for c in verify_identities(map, &point, N_MAX, 81, &cfg).unwrap() {
                checked += 1;
                kinds.insert(format!("{:?}", c.kind));
                if !c.holds() {
                    failures.push(format!(
                        "map {idx} at {point}: {:?} {}: {} != {}",
                        c.kind, c.params, c.lhs, c.rhs
                    ));
                }
            }
        }
    }
    report(
        6,
        failures.is_empty() && checked >= 100,
        start.elapsed(),
        None,
        format!("{checked} instances over kinds {kinds:?}; failures: {failures:?}"),
    );
}

#[test]
fn criterion_8_lefschetz() {
    let start = Instant::now();
    let seq = lefschetz(10);
    // independent route: L_k = round((2+√3)^(2k)) + 22 via the pair (u, v)
    // with (2+√3)^j = u + v√3, exact in integers
    let (mut u, mut v) = (BigInt::from(1), BigInt::from(0));
    let mut direct = Vec::new();
    for _ in 1..=10 {
        for _ in 0..2 {
            let nu = &u * 2 + &v * 3;
            let nv = &u + &v * 2;
            u = nu;
            v = nv;
        }
        // (2+√3)^(2k) + (2-√3)^(2k) = 2u
        direct.push(&u * 2 + 22);
    }
    let recurrence_matches = (1..=10).all(|k| seq.l(k) == &direct[k as usize - 1]);
    let primes = [2u64, 3, 5, 7];
    let periodic_positive = primes.iter().all(|&q| seq.l(q) - seq.l(1) > BigInt::from(0));
    let anchors = seq.l(1) == &BigInt::from(36) && seq.l(2) == &BigInt::from(216);
    report(
        8,
        recurrence_matches && seq.growth_bound_holds() && periodic_positive && anchors,
        start.elapsed(),
        Some(Duration::from_secs(1)),
        format!(
            "L_1..L_10 = {:?}; growth {}; l_q > 0 for q in {primes:?}: {periodic_positive}",
            seq.numbers.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            seq.growth_bound_holds()
        ),
    );
}

#[test]
fn char3_example_multiplicities_by_independent_routes() {
    // the values this implementation certifies for the worked example, each
    // confirmed by both colength algorithms
    let map = char3_map();
    let origin = Point::origin(map.field(), 2);
    let cfg = MultConfig::with_method(Method::CrossCheck);
    assert_eq!(a_p(&map, &origin, 1, &cfg).unwrap(), 2);
    assert_eq!(a_p(&map, &origin, 3, &cfg).unwrap(), 5);
    assert_eq!(a_star(&map, &origin, 3, &cfg).unwrap(), 3);
    assert!(matches!(
        a_p(&map, &origin, 2, &cfg),
        Err(Error::DegenerateIterate { n: 2 })
    ));
    assert_eq!(map.form(), MapForm::Affine);
}
