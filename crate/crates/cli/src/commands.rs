use std::path::Path;

use serde_json::Value;

use kq_core::fodc::{
    admits_star_structure, enumerate_fodc_indices, fodc_dimension, validate_functional, FodcIndex,
    IndexPair, RawPair,
};
use kq_core::heat::{apply_heat, heat_trace, markov_verdict, BlockCoefficients, BlockRecord};
use kq_core::scalar::{format_rational, parse_rational, rational_to_f64};
use kq_core::spectra::{
    classical_laplacian_eigenvalue, lower_bound, q_laplacian_eigenvalue, qms_witness,
    spectrum_scan, summarize_minimum, DEFAULT_ROW_CAP,
};
use kq_core::weights::{dim_irrep, weight_system};
use kq_core::{
    ExactLaplacianSpec, FloatLaplacianSpec, FunctionalSpec64, Rational, RootSystem, Weight, Q64,
};

use crate::report::{Cell, Report};
use crate::terms::{parse_ints, parse_pair, parse_term, Term};
use crate::CliError;

const ROW_CAP_VAR: &str = "KQ_ROW_CAP";
const LIMIT_LADDER: [f64; 3] = [0.9, 0.99, 0.999];
const DEFAULT_TIMES: [f64; 6] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn system(label: &str) -> Result<RootSystem, CliError> {
    Ok(RootSystem::from_label(label)?)
}

fn row_cap() -> Result<usize, CliError> {
    match std::env::var(ROW_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{ROW_CAP_VAR}=`{v}` is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_ROW_CAP),
    }
}

fn parse_radius(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| usage(format!("--radius `{s}` is not a rational number")))
}

fn parse_weight(rs: &RootSystem, flag: &str, s: &str) -> Result<Weight, CliError> {
    let w = Weight::new(parse_ints(s).map_err(|e| usage(format!("{flag} `{s}`: {e}")))?);
    rs.check_dominant(&w)?;
    Ok(w)
}

fn parse_terms(raw: &[String]) -> Result<Vec<Term>, CliError> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| parse_term(s).map_err(|e| usage(format!("--term {} `{s}`: {e}", i + 1))))
        .collect()
}

fn functional(rs: &RootSystem, terms: &[Term]) -> Result<FunctionalSpec64, CliError> {
    let converted = terms
        .iter()
        .map(|t| {
            let zeta = match &t.zeta {
                Some(z) => rs.center_element(z)?,
                None => rs.center_zero(),
            };
            Ok((zeta, t.mu.clone(), t.a.to_complex()))
        })
        .collect::<Result<Vec<_>, kq_core::Error>>()?;
    Ok(FunctionalSpec64::new(rs, converted)?)
}

fn center_rep_value(z: &kq_core::CenterElement) -> Value {
    Value::from(z.rep().to_vec())
}

/// A validated q-deformed Laplacian; `exact` is present when every
/// coefficient is rational.
struct Laplacian {
    float: FloatLaplacianSpec,
    exact: Option<ExactLaplacianSpec>,
}

fn laplacian(rs: &RootSystem, terms: &[Term]) -> Result<Laplacian, CliError> {
    let check = validate_functional(rs, &functional(rs, terms)?)?;
    if !check.q_laplacian {
        return Err(CliError::Rejected(check.reasons));
    }
    let reals = terms
        .iter()
        .map(|t| {
            Ok((
                t.mu.clone(),
                t.a.as_real()
                    .ok_or_else(|| usage("coefficient must be real"))?,
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let float = FloatLaplacianSpec::new(rs, reals)?;
    let exact = terms
        .iter()
        .map(|t| t.a.as_rational().map(|a| (t.mu.clone(), a)))
        .collect::<Option<Vec<_>>>()
        .map(|ts| ExactLaplacianSpec::new(rs, ts))
        .transpose()?;
    Ok(Laplacian { float, exact })
}

fn echo_terms(report: &mut Report, terms: &[Term]) {
    report.input(
        "terms",
        terms.iter().map(Term::to_string).collect::<Vec<_>>(),
    );
}

fn echo_common(report: &mut Report, rs: &RootSystem) {
    report.input("type", rs.label());
}

pub fn spectrum(
    label: &str,
    raw_terms: &[String],
    q: f64,
    radius: &str,
) -> Result<Report, CliError> {
    let rs = system(label)?;
    let terms = parse_terms(raw_terms)?;
    let radius = parse_radius(radius)?;
    let qp = Q64::new(q)?;
    let lap = laplacian(&rs, &terms)?;
    let rows = spectrum_scan(&rs, &lap.float, qp, radius, row_cap()?)?;
    let bound = lower_bound(&rs, &lap.float, qp)?;
    let min = summarize_minimum(&rows)?;

    let mut report = Report::new("spectrum", &["lambda", "dim", "eigenvalue"]);
    echo_common(&mut report, &rs);
    echo_terms(&mut report, &terms);
    report.input("q", q);
    report.input("radius", format_rational(&radius));
    report.summary("rows", Cell::int(rows.len() as u64));
    report.summary("lower_bound", Cell::float(bound));
    report.summary("min", Cell::float(min.min));
    report.summary("argmin", Cell::weight(&min.argmin));
    report.summary(
        "minimizers",
        Cell::json(Value::from(
            min.minimizers
                .iter()
                .map(|w| Value::from(w.coords().to_vec()))
                .collect::<Vec<_>>(),
        )),
    );
    match &min.min_nonzero {
        Some((v, w)) => {
            report.summary("min_nonzero", Cell::float(*v));
            report.summary("min_nonzero_at", Cell::weight(w));
        }
        None => {
            report.summary("min_nonzero", Cell::null());
            report.summary("min_nonzero_at", Cell::null());
        }
    }
    for row in rows {
        report.row(vec![
            Cell::weight(&row.lambda),
            Cell::int(row.dim),
            Cell::float(row.eigenvalue),
        ]);
    }
    Ok(report)
}

fn weights_up_to(rank: usize, h: u32) -> Vec<Weight> {
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight::new(cur.clone()));
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, h as i64, &mut vec![0; rank], &mut out);
    out.sort();
    out
}

fn ratio(a: f64, b: f64) -> Cell {
    if b == 0.0 {
        Cell::null()
    } else {
        Cell::float(a / b)
    }
}

pub fn limit(
    label: &str,
    raw_terms: &[String],
    lambdas: &[String],
    max_height: u32,
) -> Result<Report, CliError> {
    let rs = system(label)?;
    let terms = parse_terms(raw_terms)?;
    let lap = laplacian(&rs, &terms)?;
    let lambdas: Vec<Weight> = if lambdas.is_empty() {
        weights_up_to(rs.rank(), max_height)
    } else {
        lambdas
            .iter()
            .map(|s| parse_weight(&rs, "--lambda", s))
            .collect::<Result<_, _>>()?
    };
    let ladder: Vec<Q64> = LIMIT_LADDER
        .iter()
        .map(|&q| Q64::new(q))
        .collect::<Result<_, _>>()?;

    let mut report = Report::new(
        "limit",
        &[
            "lambda",
            "classical",
            "error_q0.9",
            "error_q0.99",
            "error_q0.999",
            "ratio_0.9_0.99",
            "ratio_0.99_0.999",
        ],
    );
    echo_common(&mut report, &rs);
    echo_terms(&mut report, &terms);
    report.input(
        "lambdas",
        lambdas
            .iter()
            .map(|w| Value::from(w.coords().to_vec()))
            .collect::<Vec<_>>(),
    );
    report.summary("classical_exact", Cell::bool(lap.exact.is_some()));
    for lambda in &lambdas {
        let (classical_cell, classical) = match &lap.exact {
            Some(spec) => {
                let c = classical_laplacian_eigenvalue(&rs, spec, lambda)?;
                (Cell::rational(&c), rational_to_f64(&c))
            }
            None => {
                let c = classical_laplacian_eigenvalue(&rs, &lap.float, lambda)?;
                (Cell::float(c), c)
            }
        };
        let errors = ladder
            .iter()
            .map(|&q| Ok((q_laplacian_eigenvalue(&rs, &lap.float, lambda, q)? - classical).abs()))
            .collect::<Result<Vec<f64>, kq_core::Error>>()?;
        report.row(vec![
            Cell::weight(lambda),
            classical_cell,
            Cell::float(errors[0]),
            Cell::float(errors[1]),
            Cell::float(errors[2]),
            ratio(errors[0], errors[1]),
            ratio(errors[1], errors[2]),
        ]);
    }
    Ok(report)
}

pub fn witness(label: &str, mus: &[String], max_height: u32, q: f64) -> Result<Report, CliError> {
    let rs = system(label)?;
    let qp = Q64::new(q)?;
    let mus: Vec<Weight> = if mus.is_empty() {
        weights_up_to(rs.rank(), max_height)
            .into_iter()
            .filter(|w| !w.is_zero())
            .collect()
    } else {
        mus.iter()
            .map(|s| parse_weight(&rs, "--mu", s))
            .collect::<Result<_, _>>()?
    };
    let mut report = Report::new("witness", &["mu", "witness", "positive"]);
    echo_common(&mut report, &rs);
    report.input(
        "mus",
        mus.iter()
            .map(|w| Value::from(w.coords().to_vec()))
            .collect::<Vec<_>>(),
    );
    report.input("q", q);
    let mut all_positive = !mus.is_empty();
    for mu in &mus {
        let w = qms_witness(&rs, mu, qp)?;
        all_positive &= w > 0.0;
        report.row(vec![Cell::weight(mu), Cell::float(w), Cell::bool(w > 0.0)]);
    }
    report.summary(
        "verdict",
        Cell::text(if all_positive {
            "not quantum Markov"
        } else {
            "inconclusive"
        }),
    );
    report.summary("per_factor_highest_root", Cell::bool(!rs.is_simple()));
    Ok(report)
}

pub fn fodc_enumerate(
    label: &str,
    max_height: u32,
    include_center: bool,
    cap: usize,
) -> Result<Report, CliError> {
    let rs = system(label)?;
    let indices = enumerate_fodc_indices(&rs, max_height, include_center, cap)?;
    let mut report = Report::new(
        "fodc-enumerate",
        &["pairs", "size", "dimension", "star_admissible"],
    );
    echo_common(&mut report, &rs);
    report.input("max_height", max_height);
    report.input("include_center", include_center);
    report.summary("indices", Cell::int(indices.len() as u64));
    for s in &indices {
        report.row(vec![
            Cell::json(serde_json::to_value(s.index.to_raw()).expect("serializable")),
            Cell::int(s.index.pairs().len() as u64),
            Cell::int(s.dimension),
            Cell::bool(s.star_admissible),
        ]);
    }
    Ok(report)
}

pub fn fodc_validate(label: &str, raw_terms: &[String]) -> Result<Report, CliError> {
    let rs = system(label)?;
    let terms = parse_terms(raw_terms)?;
    let spec = functional(&rs, &terms)?;
    let check = validate_functional(&rs, &spec)?;
    let index = FodcIndex::new(
        &rs,
        spec.terms()
            .iter()
            .map(|(zeta, mu, _)| IndexPair {
                zeta: zeta.clone(),
                mu: mu.clone(),
            })
            .collect(),
    )?;
    let star = admits_star_structure(&rs, &index);

    let mut report = Report::new("fodc-validate", &["zeta", "mu", "a", "half_coroot"]);
    echo_common(&mut report, &rs);
    echo_terms(&mut report, &terms);
    report.summary("self_adjoint", Cell::bool(check.self_adjoint));
    report.summary("hermitian", Cell::bool(check.hermitian));
    report.summary("q_laplacian", Cell::bool(check.q_laplacian));
    report.summary("reasons", Cell::json(Value::from(check.reasons.clone())));
    report.summary("induced_dimension", Cell::int(fodc_dimension(&rs, &index)?));
    report.summary("induced_star_admissible", Cell::bool(star.admissible));
    for ((zeta, mu, _), term) in spec.terms().iter().zip(&terms) {
        report.row(vec![
            Cell::json(center_rep_value(zeta)),
            Cell::weight(mu),
            Cell::text(term.a.to_string()),
            Cell::bool(rs.is_half_coroot(zeta)),
        ]);
    }
    Ok(report)
}

pub fn fodc_index(
    label: &str,
    pairs: &[String],
    index_file: Option<&Path>,
) -> Result<Report, CliError> {
    let rs = system(label)?;
    let mut raw: Vec<RawPair> = Vec::new();
    if let Some(path) = index_file {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let parsed: Vec<RawPair> = serde_json::from_str(&text).map_err(|e| {
            usage(format!(
                "{}: line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })?;
        raw.extend(parsed);
    }
    for (i, s) in pairs.iter().enumerate() {
        let (zeta, mu) =
            parse_pair(s).map_err(|e| usage(format!("--pair {} `{s}`: {e}", i + 1)))?;
        raw.push(RawPair { zeta, mu });
    }
    let index = FodcIndex::from_raw(&rs, &raw)?;
    let star = admits_star_structure(&rs, &index);

    let mut report = Report::new("fodc-index", &["zeta", "mu", "dim_squared", "partner"]);
    echo_common(&mut report, &rs);
    report.input("pairs", serde_json::to_value(&raw).expect("serializable"));
    report.summary("dimension", Cell::int(fodc_dimension(&rs, &index)?));
    report.summary("star_admissible", Cell::bool(star.admissible));
    report.summary("unmatched", Cell::json(Value::from(star.unmatched.clone())));
    for (i, p) in index.pairs().iter().enumerate() {
        let n = dim_irrep(&rs, &p.mu)?;
        let trivial = p.zeta.is_zero() && p.mu.is_zero();
        let partner = star.matching.iter().find(|(a, _)| *a == i).map(|(_, b)| *b);
        report.row(vec![
            Cell::json(center_rep_value(&p.zeta)),
            Cell::weight(&p.mu),
            Cell::int(if trivial { 0 } else { n * n }),
            partner.map_or_else(Cell::null, |b| Cell::int(b as u64)),
        ]);
    }
    Ok(report)
}

pub fn heat(
    label: &str,
    raw_terms: &[String],
    q: f64,
    times: &[f64],
    radius: Option<&str>,
    coeffs: Option<&Path>,
) -> Result<Report, CliError> {
    let rs = system(label)?;
    let terms = parse_terms(raw_terms)?;
    let qp = Q64::new(q)?;
    let lap = laplacian(&rs, &terms)?;
    let verdict = markov_verdict(&rs, &lap.float, qp)?;

    if let Some(path) = coeffs {
        let [t] = times else {
            return Err(usage("--coeffs needs exactly one --t"));
        };
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let records: Vec<BlockRecord<f64>> = serde_json::from_str(&text).map_err(|e| {
            usage(format!(
                "{}: line {} column {}: {e}",
                path.display(),
                e.line(),
                e.column()
            ))
        })?;
        let blocks = BlockCoefficients::from_records(&rs, records)?;
        let evolved = apply_heat(&rs, &lap.float, &blocks, qp, *t)?;

        let mut report = Report::new("heat-apply", &["lambda", "row", "col", "re", "im"]);
        echo_common(&mut report, &rs);
        echo_terms(&mut report, &terms);
        report.input("q", q);
        report.input("t", *t);
        report.input("coeffs", path.display().to_string());
        report.summary("blocks", Cell::int(evolved.blocks().len() as u64));
        report.summary("quantum_markov", Cell::bool(verdict.quantum_markov));
        for (lambda, m) in evolved.blocks() {
            for (i, row) in m.iter().enumerate() {
                for (j, z) in row.iter().enumerate() {
                    report.row(vec![
                        Cell::weight(lambda),
                        Cell::int(i as u64),
                        Cell::int(j as u64),
                        Cell::float(z.re),
                        Cell::float(z.im),
                    ]);
                }
            }
        }
        return Ok(report);
    }

    let radius =
        parse_radius(radius.ok_or_else(|| usage("--radius is required for a heat trace"))?)?;
    let times: Vec<f64> = if times.is_empty() {
        DEFAULT_TIMES.to_vec()
    } else {
        times.to_vec()
    };
    let cap = row_cap()?;
    let mut report = Report::new("heat", &["t", "trace", "tail_estimate", "rows"]);
    echo_common(&mut report, &rs);
    echo_terms(&mut report, &terms);
    report.input("q", q);
    report.input("radius", format_rational(&radius));
    report.input("times", times.clone());
    report.summary("quantum_markov", Cell::bool(verdict.quantum_markov));
    report.summary(
        "witnesses",
        Cell::json(Value::from(
            verdict
                .witnesses
                .iter()
                .map(|(mu, w)| {
                    serde_json::json!({ "mu": mu.coords(), "witness": crate::report::float_value(*w) })
                })
                .collect::<Vec<_>>(),
        )),
    );
    for &t in &times {
        let tr = heat_trace(&rs, &lap.float, qp, t, radius, cap)?;
        report.row(vec![
            Cell::float(t),
            Cell::float(tr.trace),
            Cell::float(tr.tail_estimate),
            Cell::int(tr.rows as u64),
        ]);
    }
    Ok(report)
}

pub fn center(label: &str) -> Result<Report, CliError> {
    let rs = system(label)?;
    let group = rs.center_group();
    let mut report = Report::new("center", &["element", "order", "half_coroot"]);
    echo_common(&mut report, &rs);
    report.summary("order", Cell::int(group.order));
    report.summary(
        "invariant_factors",
        Cell::json(Value::from(group.invariant_factors.clone())),
    );
    let half: Vec<Value> = group
        .elements
        .iter()
        .filter(|z| rs.is_half_coroot(z))
        .map(center_rep_value)
        .collect();
    report.summary("half_coroot_classes", Cell::json(Value::from(half)));
    for z in &group.elements {
        let mut k = 1u64;
        let mut acc = z.clone();
        while !acc.is_zero() {
            acc = rs.center_add(&acc, z);
            k += 1;
        }
        report.row(vec![
            Cell::json(center_rep_value(z)),
            Cell::int(k),
            Cell::bool(rs.is_half_coroot(z)),
        ]);
    }
    Ok(report)
}

pub fn weights(label: &str, mu: &str) -> Result<Report, CliError> {
    let rs = system(label)?;
    let mu = parse_weight(&rs, "--mu", mu)?;
    let ws = weight_system(&rs, &mu)?;
    let mut report = Report::new("weights", &["weight", "multiplicity", "dominant", "depth"]);
    echo_common(&mut report, &rs);
    report.input("mu", mu.coords().to_vec());
    report.summary("dim", Cell::int(ws.dim()));
    report.summary("distinct", Cell::int(ws.entries().len() as u64));
    // highest weight first, then by depth below it
    let mut rows: Vec<(Rational, &Weight, u64)> = ws
        .iter()
        .map(|(w, m)| (rs.simple_root_coords(&(&mu - w)).iter().sum(), w, m))
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)));
    for (depth, w, m) in rows {
        report.row(vec![
            Cell::weight(w),
            Cell::int(m),
            Cell::bool(w.is_dominant()),
            Cell::rational(&depth),
        ]);
    }
    Ok(report)
}
