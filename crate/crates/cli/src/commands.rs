use std::time::Instant;

use serde_json::{json, Value};
use unireg::combinatorics::{gamma_coefficient, ExponentVector, IndexTuple, Partition};
use unireg::exact::{binomial, Scalar};
use unireg::linalg::det_oracle;
use unireg::random::{seeded_rng, SampleKind, SpecSampler};
use unireg::schur::{
    generalized_vandermonde, schur_eval, schur_expand, vandermonde, SparsePolynomial,
};
use unireg::uniform::{
    classify_regularity, column_reduce, derivative_at_zero, det_expansion_with_jobs,
    finite_diff_sum, RegularityStatus,
};
use unireg::{build_matrix, Matrix, UniformMatrixSpec};

use crate::input::{load, parse_scalars, parse_usizes, Loaded};
use crate::{Cli, CliError, Command, Format, Method, Outcome, Suite};

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let format = cli.format;
    let input = cli.input.as_deref();
    let jobs = cli.jobs as usize;
    if input.is_some()
        && !matches!(
            cli.command,
            Command::Build { .. } | Command::Det { .. } | Command::Check { .. }
        )
    {
        return Err(invalid("--input is only accepted by build, det and check"));
    }
    match &cli.command {
        Command::Build { spec } => {
            let matrix = match load(spec, input)? {
                Loaded::Spec(s) => build_matrix(&s),
                Loaded::Matrix(m) => m,
            };
            Ok(Outcome::ok(render_matrix(
                &matrix,
                format.unwrap_or(Format::Json),
            )))
        }
        Command::Det { spec, method } => det(
            load(spec, input)?,
            *method,
            jobs,
            format.unwrap_or(Format::Json),
        ),
        Command::Check { spec, strict } => {
            let spec = match load(spec, input)? {
                Loaded::Spec(s) => s,
                Loaded::Matrix(_) => return Err(invalid("check needs a spec, not a matrix")),
            };
            check(&spec, *strict, format.unwrap_or(Format::Json))
        }
        Command::Schur {
            lambda,
            points,
            expand,
            k,
        } => schur(
            lambda,
            points.as_deref(),
            *expand,
            *k,
            format.unwrap_or(Format::Json),
        ),
        Command::Vandermonde { points, alpha } => {
            let pts = parse_scalars("points", points)?;
            let value = match alpha {
                None => vandermonde(&pts),
                Some(text) => {
                    let a = parse_usizes("alpha", text)?;
                    let ceiling = a.iter().copied().max().unwrap_or(0);
                    let tuple = IndexTuple::new(a, ceiling).map_err(invalid)?;
                    generalized_vandermonde(&pts, &tuple).map_err(invalid)?
                }
            };
            Ok(Outcome::ok(render_scalar(
                "value",
                &value,
                format.unwrap_or(Format::Json),
            )))
        }
        Command::Gamma { lambda, mu, k } => {
            let lambda = Partition::new(parse_usizes("lambda", lambda)?).map_err(invalid)?;
            let mu = parse_usizes("mu", mu)?;
            let k = k.unwrap_or(mu.len());
            if mu.len() != k {
                return Err(invalid(format!(
                    "--mu has {} entries but k = {k}",
                    mu.len()
                )));
            }
            let count = gamma_coefficient(&lambda, &ExponentVector(mu), k);
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => format!("{}\n", json!({ "gamma": count })),
                Format::Csv | Format::Table => format!("{count}\n"),
            };
            Ok(Outcome::ok(text))
        }
        Command::FiniteDiff { ell, coeffs } => {
            finite_diff(*ell, coeffs, format.unwrap_or(Format::Json))
        }
        Command::Bench {
            suite,
            max_k,
            max_ell,
            seed,
        } => Ok(Outcome::ok(bench(
            *suite,
            *max_k as usize,
            *max_ell as usize,
            *seed,
            jobs,
            format.unwrap_or(Format::Csv),
        ))),
    }
}

fn render_matrix(m: &Matrix, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(m).expect("matrix serializes")),
        Format::Csv => m.to_csv(),
        Format::Table => m.to_table(),
    }
}

fn render_scalar(key: &str, value: &Scalar, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", json!({ key: value })),
        Format::Csv | Format::Table => format!("{value}\n"),
    }
}

/// CSV with a header line, or right-aligned columns separated by two spaces.
fn render_rows(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    match format {
        Format::Table => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            out.push_str(&line(header.to_vec()));
            out.push('\n');
            for row in rows {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
                out.push('\n');
            }
        }
        _ => {
            out.push_str(&header.join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
    }
    out
}

fn det(loaded: Loaded, method: Method, jobs: usize, format: Format) -> Result<Outcome, CliError> {
    let spec = match loaded {
        Loaded::Spec(s) => s,
        Loaded::Matrix(m) => {
            if !matches!(method, Method::Oracle | Method::All) {
                return Err(invalid("a raw matrix only supports --method oracle"));
            }
            let d = det_oracle(&m).map_err(invalid)?;
            return Ok(det_report(vec![("oracle", d)], method, format));
        }
    };
    let reduction_applies = spec.has_consecutive_r() && spec.k() > spec.ell();
    let mut results = Vec::new();
    if matches!(method, Method::Oracle | Method::All) {
        results.push(("oracle", det_oracle(&build_matrix(&spec)).map_err(invalid)?));
    }
    if matches!(method, Method::Expansion | Method::All) {
        results.push(("expansion", det_expansion_with_jobs(&spec, jobs)));
    }
    if method == Method::Reduction && !reduction_applies {
        return Err(invalid(
            "--method reduction needs r = 1,...,k and k >= ell + 1",
        ));
    }
    if matches!(method, Method::Reduction | Method::All) && reduction_applies {
        results.push(("reduction", reduced_det(&spec)?));
    }
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    let mut outcome = det_report(results, method, format);
    if !agree {
        outcome.code = 3;
        outcome.stderr = Some("determinant routes disagree".into());
    }
    Ok(outcome)
}

fn reduced_det(spec: &UniformMatrixSpec) -> Result<Scalar, CliError> {
    let reduced = column_reduce(spec).map_err(invalid)?;
    det_oracle(&reduced).map_err(invalid)
}

fn det_report(results: Vec<(&str, Scalar)>, method: Method, format: Format) -> Outcome {
    let text = match format {
        Format::Json => {
            let items: Vec<Value> = results
                .iter()
                .map(|(m, d)| json!({ "det": d, "method": m }))
                .collect();
            let value = if method == Method::All {
                Value::Array(items)
            } else {
                items.into_iter().next().expect("one result")
            };
            format!("{value}\n")
        }
        _ => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|(m, d)| vec![m.to_string(), d.to_string()])
                .collect();
            render_rows(format, &["method", "det"], &rows)
        }
    };
    Outcome::ok(text)
}

fn check(spec: &UniformMatrixSpec, strict: bool, format: Format) -> Result<Outcome, CliError> {
    let verdict = classify_regularity(spec);
    let text = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&verdict).expect("verdict serializes")
        ),
        _ => {
            let status = serde_json::to_value(verdict.status).expect("status serializes");
            let witness = verdict
                .witness
                .as_ref()
                .map(Scalar::to_string)
                .unwrap_or_default();
            let row = vec![
                status.as_str().unwrap_or_default().to_string(),
                witness,
                verdict.method.clone(),
            ];
            render_rows(format, &["status", "witness", "method"], &[row])
        }
    };
    let code = match (strict, verdict.status) {
        (true, s) if !s.is_regular() => 1,
        _ => 0,
    };
    debug_assert!(verdict.status != RegularityStatus::SingularBySize || !verdict.is_regular());
    Ok(Outcome {
        stdout: text,
        stderr: None,
        code,
    })
}

/// Pads or truncates `λ` to `k` parts; `None` if it has more than `k` nonzero parts.
fn fit_partition(lambda: &Partition, k: usize) -> Option<Partition> {
    if lambda.nonzero_parts() > k {
        return None;
    }
    let mut parts = lambda.parts().to_vec();
    parts.resize(k, 0);
    Some(Partition::new(parts).expect("still non-increasing"))
}

fn schur(
    lambda: &str,
    points: Option<&str>,
    expand: bool,
    k: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let lambda = Partition::new(parse_usizes("lambda", lambda)?).map_err(invalid)?;
    if expand {
        let k = k.expect("clap enforces --k with --expand");
        if k == 0 {
            return Err(invalid("--k must be at least 1"));
        }
        let poly = match fit_partition(&lambda, k) {
            Some(l) => schur_expand(&l, k).map_err(invalid)?,
            None => SparsePolynomial::zero(k),
        };
        return Ok(Outcome::ok(render_polynomial(&poly, format)));
    }
    let points = points.ok_or_else(|| invalid("schur needs --points or --expand"))?;
    let pts = parse_scalars("points", points)?;
    if let Some(k) = k {
        if k != pts.len() {
            return Err(invalid(format!(
                "--points has {} entries but k = {k}",
                pts.len()
            )));
        }
    }
    let value = match fit_partition(&lambda, pts.len()) {
        Some(l) => schur_eval(&l, &pts).map_err(invalid)?,
        None => Scalar::zero(),
    };
    Ok(Outcome::ok(render_scalar("value", &value, format)))
}

fn render_polynomial(p: &SparsePolynomial, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(p).expect("polynomial serializes")
        ),
        Format::Table => format!("{p}\n"),
        Format::Csv => {
            let header: Vec<String> = (1..=p.arity())
                .map(|i| format!("u{i}"))
                .chain(["coeff".into()])
                .collect();
            let rows: Vec<Vec<String>> = p
                .terms()
                .map(|(e, c)| {
                    e.as_slice()
                        .iter()
                        .map(usize::to_string)
                        .chain([c.to_string()])
                        .collect()
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            render_rows(Format::Csv, &header, &rows)
        }
    }
}

fn finite_diff(ell: usize, coeffs: &str, format: Format) -> Result<Outcome, CliError> {
    let q = parse_scalars("coeffs", coeffs)?;
    let sum = finite_diff_sum(ell, &q).map_err(invalid)?;
    let expected = derivative_at_zero(&q, ell).with_sign_of_power(ell);
    let text = match format {
        Format::Json => format!(
            "{}\n",
            json!({ "ell": ell, "sum": sum, "expected": expected })
        ),
        _ => render_rows(
            format,
            &["ell", "sum", "expected"],
            &[vec![ell.to_string(), sum.to_string(), expected.to_string()]],
        ),
    };
    let mut outcome = Outcome::ok(text);
    if sum != expected {
        outcome.code = 3;
        outcome.stderr = Some("finite-difference identity failed".into());
    }
    Ok(outcome)
}

/// Seed for one grid cell, independent of the grid bounds.
fn cell_seed(seed: u64, k: usize, ell: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((k as u64) << 32 | ell as u64)
}

pub fn bench_spec(seed: u64, k: usize, ell: usize) -> UniformMatrixSpec {
    SpecSampler::new(SampleKind::Positive).sample(&mut seeded_rng(cell_seed(seed, k, ell)), k, ell)
}

fn bench(
    suite: Suite,
    max_k: usize,
    max_ell: usize,
    seed: u64,
    jobs: usize,
    format: Format,
) -> String {
    let mut rows = Vec::new();
    for k in 1..=max_k {
        for ell in 0..=max_ell {
            let spec = bench_spec(seed, k, ell);
            let start = Instant::now();
            let det = match suite {
                Suite::Expansion => det_expansion_with_jobs(&spec, jobs),
                Suite::Oracle => det_oracle(&build_matrix(&spec)).expect("square"),
            };
            let micros = start.elapsed().as_micros();
            let terms = binomial(ell as i64 + 1, k as i64).expect("non-negative");
            rows.push((k, ell, terms, det, micros));
        }
    }
    let suite = match suite {
        Suite::Expansion => "expansion",
        Suite::Oracle => "oracle",
    };
    if format == Format::Json {
        let items: Vec<Value> = rows
            .iter()
            .map(|(k, ell, terms, det, micros)| {
                json!({ "suite": suite, "k": k, "ell": ell, "terms": terms.to_string(), "det": det, "micros": *micros as u64 })
            })
            .collect();
        return format!("{}\n", Value::Array(items));
    }
    let rows: Vec<Vec<String>> = rows
        .into_iter()
        .map(|(k, ell, terms, det, micros)| {
            vec![
                suite.to_string(),
                k.to_string(),
                ell.to_string(),
                terms.to_string(),
                det.to_string(),
                micros.to_string(),
            ]
        })
        .collect();
    render_rows(
        format,
        &["suite", "k", "ell", "terms", "det", "micros"],
        &rows,
    )
}
