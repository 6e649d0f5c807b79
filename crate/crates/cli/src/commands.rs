use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use dynatomic::algebra::{map_to_json, parse_map, parse_point, FieldDescriptor, MapForm, Order, Point, PolyMap};
use dynatomic::degrees::{deg_phi, deg_phi_star, lefschetz as lefschetz_seq, thm20_positivity};
use dynatomic::dynatomic::{
    a_star, cycle_report, periodic_points, point_report, verify_effectivity, verify_identities, verify_thm17, Corpus,
    CorpusConfig, Mult, Status, Verdict,
};
use dynatomic::localmult::{a_p, map_over, Method, MultConfig};
use dynatomic::spectral::jacobian_at;

use crate::output::{big, sha256_hex, Outcome};
use crate::{MethodArg, RunConfig};

type CmdResult = Result<(Outcome, String), String>;

/// Largest exact iterate degree used by the identity checks.
const MAX_ITERATE_DEGREE: u64 = 81;

fn mult_config(cfg: &RunConfig) -> Result<MultConfig, String> {
    if cfg.trunc == 0 || cfg.max_trunc < cfg.trunc {
        return Err("need 1 <= --trunc <= --max-trunc".into());
    }
    let method = match cfg.method {
        MethodArg::Standard => Method::StandardBasis,
        MethodArg::Truncation => Method::Truncation,
        MethodArg::CrossCheck => Method::CrossCheck,
    };
    Ok(MultConfig {
        initial_truncation: cfg.trunc,
        max_truncation: cfg.max_trunc,
        ..MultConfig::with_method(method)
    })
}

fn load_map(cfg: &RunConfig) -> Result<(PolyMap, String), String> {
    let path = cfg.map.as_ref().ok_or("--map is required")?;
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| e.to_string())?;
    let map = parse_map(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((map, sha256_hex(&bytes)))
}

fn load_point(cfg: &RunConfig, map: &PolyMap) -> Result<Point, String> {
    let s = cfg.point.as_ref().ok_or("--point is required")?;
    let base = map.field();
    let field = if cfg.point_ext == 1 {
        base.clone()
    } else {
        if !base.is_finite() {
            return Err("--point-ext needs a finite base field".into());
        }
        FieldDescriptor::extension(base.characteristic() as u64, base.degree() * cfg.point_ext)
            .map_err(|e| e.to_string())?
    };
    parse_point(map, &field, s).map_err(|e| e.to_string())
}

fn positive(v: Option<u64>, flag: &str) -> Result<u64, String> {
    match v {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(format!("{flag} must be >= 1")),
        None => Err(format!("{flag} is required")),
    }
}

fn coords(point: &Point) -> Vec<String> {
    point.coords.iter().map(|c| point.field.format(c)).collect()
}

fn mult_json(m: &Mult) -> Value {
    match m {
        Mult::Value(v) => json!(v),
        Mult::Degenerate => json!("degenerate"),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn mult(cfg: &RunConfig) -> CmdResult {
    let (map, hash) = load_map(cfg)?;
    let point = load_point(cfg, &map)?;
    let n = positive(cfg.n, "--n")?;
    let mc = mult_config(cfg)?;
    let a = a_p(&map, &point, n, &mc).map_err(|e| e.to_string())?;
    let s = a_star(&map, &point, n, &mc).map_err(|e| e.to_string())?;
    let period = map_over(&map, &point.field)
        .and_then(|m| m.period(&point, n))
        .map_err(|e| e.to_string())?;
    let result = json!({
        "point": coords(&point),
        "n": n,
        "a": a,
        "a_star": s,
        "primitive_period": period,
    });
    let row = vec![point.to_string(), n.to_string(), a.to_string(), s.to_string()];
    Ok((Outcome::new(result, vec!["point", "n", "a", "a_star"], vec![row]), hash))
}

pub fn astar(cfg: &RunConfig) -> CmdResult {
    let (map, hash) = load_map(cfg)?;
    let point = load_point(cfg, &map)?;
    let n_max = positive(cfg.n_max.or(cfg.n), "--n-max")?;
    let rep = point_report(&map, &point, n_max, &mult_config(cfg)?).map_err(|e| e.to_string())?;
    let mut table = Vec::new();
    let mut rows = Vec::new();
    for (&n, m) in &rep.a {
        let s = rep.a_star.get(&n).copied();
        table.push(json!({"n": n, "a": mult_json(m), "a_star": s}));
        rows.push(vec![
            n.to_string(),
            cell(&mult_json(m)),
            s.map_or(String::new(), |v| v.to_string()),
        ]);
    }
    let result = json!({
        "point": coords(&point),
        "primitive_period": rep.primitive_period,
        "values": table,
    });
    Ok((Outcome::new(result, vec!["n", "a", "a_star"], rows), hash))
}

pub fn cycle(cfg: &RunConfig) -> CmdResult {
    let (map, hash) = load_map(cfg)?;
    let n = positive(cfg.n, "--n")?;
    if cfg.ext_bound == 0 {
        return Err("--ext-bound must be >= 1".into());
    }
    let rep = cycle_report(&map, n, cfg.ext_bound, &mult_config(cfg)?).map_err(|e| e.to_string())?;
    let mut warnings = rep.warnings.clone();
    for p in rep.degenerate_points() {
        warnings.push(format!("degenerate iterate at {p}; point omitted from the cycles"));
    }
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for e in &rep.entries {
        let form = e.form.as_ref().map(|f| f.to_string());
        entries.push(json!({
            "point": coords(&e.point),
            "ext_degree": e.ext_degree,
            "mult_n": mult_json(&e.mult_n),
            "mult_star_n": e.mult_star_n,
            "primitive_period": e.primitive_period,
            "form": form,
        }));
        rows.push(vec![
            e.point.to_string(),
            e.ext_degree.to_string(),
            cell(&mult_json(&e.mult_n)),
            e.mult_star_n.map_or(String::new(), |v| v.to_string()),
            e.primitive_period.to_string(),
            form.unwrap_or_default(),
        ]);
    }
    let expected = match map.form() {
        MapForm::Projective => Some(big(&deg_phi(map.dimension() as u32, map.degree() as u64, n))),
        MapForm::Affine => None,
    };
    let result = json!({
        "n": n,
        "ext_bound": cfg.ext_bound,
        "entries": entries,
        "degree_phi": rep.phi().degree(),
        "degree_phi_star": rep.phi_star().degree(),
        "expected_degree_phi": expected,
        "warnings": warnings,
    });
    let headers = vec![
        "point",
        "ext_degree",
        "mult_n",
        "mult_star_n",
        "primitive_period",
        "form",
    ];
    Ok((Outcome::new(result, headers, rows), hash))
}

struct Case {
    map_index: usize,
    point: Point,
}

struct CaseResult {
    verdicts: Vec<(String, Verdict)>,
    degenerate: Vec<u64>,
}

fn verdict_row(case: usize, map_index: usize, point: &Point, label: &str, v: &Verdict) -> Vec<String> {
    vec![
        case.to_string(),
        map_index.to_string(),
        point.to_string(),
        v.theorem.clone(),
        label.to_string(),
        serde_json::to_value(v.status).map(|s| cell(&s)).unwrap_or_default(),
        v.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
    ]
}

fn check_case(map: &PolyMap, point: &Point, n_max: u64, mc: &MultConfig) -> Result<CaseResult, String> {
    let p = map.field().characteristic() as u64;
    let rep = point_report(map, point, n_max, mc).map_err(|e| e.to_string())?;
    let mut verdicts = Vec::new();
    let degenerate = rep
        .a
        .iter()
        .filter(|(_, m)| **m == Mult::Degenerate)
        .map(|(&n, _)| n)
        .collect();
    let stars: Vec<u64> = rep.a_star.keys().copied().collect();
    let effect = verify_effectivity(&rep);
    // verify_effectivity emits effectivity then (when a* >= 1) period-form per n
    let mut it = effect.into_iter().peekable();
    for &n in &stars {
        if let Some(v) = it.next() {
            verdicts.push((format!("n={n}"), v));
        }
        if it.peek().is_some_and(|v| v.theorem == "period-form") {
            verdicts.push((format!("n={n}"), it.next().unwrap()));
        }
    }
    for &n in &stars {
        verdicts.push((format!("n={n}"), verify_thm17(&rep, n, p)));
    }
    if rep.primitive_period == Some(1) {
        let sd = rep.spectral.as_ref().expect("fixed point has spectral data");
        for n in 1..=n_max {
            let Some(a) = rep.a_value(n) else { continue };
            let ok = (a == 1) != sd.has_eigenvalue_root_of_unity(n);
            let status = if ok { Status::Pass } else { Status::Fail };
            let witness = (!ok).then(|| json!({"point": point.to_string(), "n": n, "a": a}));
            verdicts.push((format!("n={n}"), Verdict::new("transversality", status, witness)));
        }
    }
    for c in verify_identities(map, point, n_max, MAX_ITERATE_DEGREE, mc).map_err(|e| e.to_string())? {
        let status = if c.holds() { Status::Pass } else { Status::Fail };
        let kind = serde_json::to_value(c.kind).map(|k| cell(&k)).unwrap_or_default();
        let witness = (!c.holds()).then(|| json!({"point": point.to_string(), "lhs": c.lhs, "rhs": c.rhs}));
        verdicts.push((
            c.params.clone(),
            Verdict::new(&format!("identity:{kind}"), status, witness),
        ));
    }
    Ok(CaseResult { verdicts, degenerate })
}

pub fn verify(cfg: &RunConfig) -> CmdResult {
    let n_max = positive(cfg.n_max.or(cfg.n), "--n-max")?;
    let mc = mult_config(cfg)?;
    let (maps, hash, source) = match &cfg.map {
        Some(_) => {
            let (map, hash) = load_map(cfg)?;
            (vec![map], hash, json!("map"))
        }
        None => {
            let mut cc = CorpusConfig {
                seed: cfg.seed,
                count: cfg.count,
                ..CorpusConfig::default()
            };
            if !cfg.primes.is_empty() {
                cc.primes = cfg.primes.clone();
            }
            if cc.count == 0 {
                return Err("--count must be >= 1".into());
            }
            let corpus = Corpus::generate(&cc).map_err(|e| e.to_string())?;
            let text: Vec<String> = corpus.maps.iter().map(map_to_json).collect();
            let hash = sha256_hex(text.join("\n").as_bytes());
            (
                corpus.maps,
                hash,
                json!({"fuzz": {"seed": cc.seed, "count": cc.count, "primes": cc.primes}}),
            )
        }
    };
    let mut cases = Vec::new();
    for (i, map) in maps.iter().enumerate() {
        if map.form() == MapForm::Projective && !map.field().is_finite() {
            return Err("verify enumerates points and needs a finite field".into());
        }
        for (point, _) in periodic_points(map, n_max).map_err(|e| e.to_string())? {
            cases.push(Case { map_index: i, point });
        }
    }
    // results come back in case order, so the report does not depend on scheduling
    let results: Vec<Result<CaseResult, String>> = cases
        .par_iter()
        .map(|c| check_case(&maps[c.map_index], &c.point, n_max, &mc))
        .collect();

    let mut rows = Vec::new();
    let mut case_json = Vec::new();
    let mut summary: BTreeMap<String, [u64; 3]> = BTreeMap::new();
    let mut violations = Vec::new();
    for (idx, (case, res)) in cases.iter().zip(results).enumerate() {
        let res = res?;
        let mut verdicts = Vec::new();
        for (label, v) in &res.verdicts {
            let slot = summary.entry(v.theorem.clone()).or_default();
            slot[v.status as usize] += 1;
            if v.status == Status::Fail {
                violations.push(json!({
                    "case": idx,
                    "map": serde_json::from_str::<Value>(&map_to_json(&maps[case.map_index])).expect("map json"),
                    "theorem": v.theorem,
                    "at": label,
                    "witness": v.witness,
                }));
            }
            rows.push(verdict_row(idx, case.map_index, &case.point, label, v));
            verdicts.push(json!({"theorem": v.theorem, "at": label, "status": v.status, "witness": v.witness}));
        }
        for n in &res.degenerate {
            rows.push(vec![
                idx.to_string(),
                case.map_index.to_string(),
                case.point.to_string(),
                "non-degenerate".into(),
                format!("n={n}"),
                "degenerate".into(),
                String::new(),
            ]);
        }
        case_json.push(json!({
            "case": idx,
            "map_index": case.map_index,
            "point": coords(&case.point),
            "degenerate_n": res.degenerate,
            "verdicts": verdicts,
        }));
    }
    let summary_json: BTreeMap<String, Value> = summary
        .into_iter()
        .map(|(k, [pass, fail, vacuous])| (k, json!({"pass": pass, "fail": fail, "vacuous": vacuous})))
        .collect();
    let result = json!({
        "source": source,
        "maps": maps.len(),
        "cases": case_json,
        "summary": summary_json,
    });
    let headers = vec!["case", "map", "point", "theorem", "at", "status", "witness"];
    let mut out = Outcome::new(result, headers, rows);
    out.violations = violations;
    Ok((out, hash))
}

fn config_hash(cfg: &RunConfig) -> String {
    sha256_hex(serde_json::to_string(cfg).expect("config serializes").as_bytes())
}

pub fn degrees(cfg: &RunConfig) -> CmdResult {
    let n_max = positive(cfg.n_max.or(cfg.n), "--n-max")?;
    if cfg.dim == 0 || cfg.degree == 0 {
        return Err("--dim and --degree must be >= 1".into());
    }
    let mut table = Vec::new();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let dp = deg_phi(cfg.dim, cfg.degree, n);
        let ds = deg_phi_star(cfg.dim, cfg.degree, n);
        let pos = thm20_positivity(cfg.dim, cfg.degree, n);
        if pos.status == Status::Fail {
            violations.push(json!({"theorem": "prime-period-positivity", "n": n, "value": big(&pos.value), "closed_form": big(&pos.closed_form)}));
        }
        table.push(json!({"n": n, "deg_phi": big(&dp), "deg_phi_star": big(&ds), "prime_positivity": pos.status}));
        rows.push(vec![
            n.to_string(),
            dp.to_string(),
            ds.to_string(),
            cell(&serde_json::to_value(pos.status).expect("status")),
        ]);
    }
    let result = json!({"dim": cfg.dim, "degree": cfg.degree, "rows": table});
    let mut out = Outcome::new(result, vec!["n", "deg_phi", "deg_phi_star", "prime_positivity"], rows);
    out.violations = violations;
    Ok((out, config_hash(cfg)))
}

pub fn lefschetz(cfg: &RunConfig) -> CmdResult {
    let k_max = positive(cfg.n_max.or(cfg.n), "--n-max")?;
    let seq = lefschetz_seq(k_max);
    let mut table = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let (a, l, per) = (&seq.traces[k as usize], seq.l(k), seq.periodic_number(k));
        table.push(json!({"k": k, "trace": big(a), "L": big(l), "l": big(per)}));
        rows.push(vec![k.to_string(), a.to_string(), l.to_string(), per.to_string()]);
    }
    let mut violations = Vec::new();
    if !seq.growth_bound_holds() {
        violations.push(json!({"theorem": "lefschetz-growth", "witness": "L_k < 4^k for some k"}));
    }
    let result = json!({"k_max": k_max, "growth_bound_holds": seq.growth_bound_holds(), "rows": table});
    let mut out = Outcome::new(result, vec!["k", "trace", "L", "l"], rows);
    out.violations = violations;
    Ok((out, config_hash(cfg)))
}

pub fn spectral(cfg: &RunConfig) -> CmdResult {
    let (map, hash) = load_map(cfg)?;
    let point = load_point(cfg, &map)?;
    let local = map_over(&map, &point.field).map_err(|e| e.to_string())?;
    let bound = cfg.n.or(cfg.n_max).unwrap_or(64);
    let m = local
        .period(&point, bound)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("{point} is not periodic with period <= {bound}"))?;
    let sd = jacobian_at(&local, &point, m).map_err(|e| e.to_string())?;
    let f = &sd.base;
    let matrix: Vec<Vec<String>> = sd
        .matrix
        .iter()
        .map(|r| r.iter().map(|c| f.format(c)).collect())
        .collect();
    let charpoly: Vec<String> = sd.charpoly.iter().map(|c| f.format(c)).collect();
    let mut eig = Vec::new();
    let mut rows = Vec::new();
    for e in &sd.eigenvalues {
        let order = match e.order {
            Some(Order::Finite(r)) => json!(r),
            Some(Order::Infinite) => json!("infinite"),
            None => Value::Null,
        };
        let value = sd.format_eigenvalue(e);
        rows.push(vec![
            value.clone(),
            e.multiplicity.to_string(),
            format!("{:?}", e.blocks),
            cell(&order),
        ]);
        eig.push(json!({"value": value, "multiplicity": e.multiplicity, "blocks": e.blocks, "order": order}));
    }
    let result = json!({
        "point": coords(&point),
        "period": m,
        "matrix": matrix,
        "charpoly": charpoly,
        "splitting_field_degree": sd.splitting.degree(),
        "eigenvalues": eig,
    });
    Ok((
        Outcome::new(result, vec!["eigenvalue", "multiplicity", "blocks", "order"], rows),
        hash,
    ))
}
