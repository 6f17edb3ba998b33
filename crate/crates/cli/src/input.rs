use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::Value;
use unireg::exact::Scalar;
use unireg::uniform::{constant_gap_spec, UniformMatrixSpec};
use unireg::Matrix;

use crate::{CliError, SpecArgs};

/// What a spec-consuming command was handed.
pub enum Loaded {
    Spec(UniformMatrixSpec),
    Matrix(Matrix),
}

pub fn parse_scalars(flag: &str, text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',')
        .map(|s| s.parse::<Scalar>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Invalid(format!("--{flag}: {e}")))
}

pub fn parse_usizes(flag: &str, text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Invalid(format!(
                "--{flag}: expected comma-separated non-negative integers, got `{text}`"
            ))
        })
}

fn read_source(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Invalid(format!("reading stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("reading {}: {e}", path.display())))
}

/// Parses a spec JSON, a matrix JSON, or a CSV matrix.
pub fn parse_document(text: &str) -> Result<Loaded, CliError> {
    let trimmed = text.trim_start();
    if !trimmed.starts_with('{') {
        return Matrix::from_csv(text)
            .map(Loaded::Matrix)
            .map_err(|e| CliError::Invalid(format!("CSV matrix: {e}")));
    }
    let value: Value =
        serde_json::from_str(trimmed).map_err(|e| CliError::Invalid(format!("JSON input: {e}")))?;
    if value.get("entries").is_some() {
        serde_json::from_value(value)
            .map(Loaded::Matrix)
            .map_err(|e| CliError::Invalid(format!("matrix JSON: {e}")))
    } else {
        serde_json::from_value(value)
            .map(Loaded::Spec)
            .map_err(|e| CliError::Invalid(format!("spec JSON: {e}")))
    }
}

fn has_inline_flags(args: &SpecArgs) -> bool {
    args.k.is_some()
        || args.ell.is_some()
        || args.x.is_some()
        || args.y.is_some()
        || args.r.is_some()
        || args.constant_gap
        || args.start.is_some()
}

/// Resolves the spec from exactly one source: `--input FILE` (or `-` for
/// stdin) or the inline flags.
pub fn load(args: &SpecArgs, input: Option<&Path>) -> Result<Loaded, CliError> {
    if let Some(path) = input {
        if has_inline_flags(args) {
            return Err(CliError::Invalid(
                "--input cannot be combined with inline spec flags".into(),
            ));
        }
        return parse_document(&read_source(path)?);
    }
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| CliError::Invalid(format!("missing --{name}")))
    };
    let k = need(args.k, "k")?;
    let ell = need(args.ell, "ell")?;
    if args.constant_gap {
        if args.x.is_some() || args.y.is_some() || args.r.is_some() {
            return Err(CliError::Invalid(
                "--constant-gap cannot be combined with --x/--y/--r".into(),
            ));
        }
        let n = args
            .start
            .ok_or_else(|| CliError::Invalid("missing --N".into()))?;
        return constant_gap_spec(n, k, ell)
            .map(Loaded::Spec)
            .map_err(|e| CliError::Invalid(e.to_string()));
    }
    if args.start.is_some() {
        return Err(CliError::Invalid(
            "--N is only meaningful with --constant-gap".into(),
        ));
    }
    let seq = |v: &Option<String>, name: &str| -> Result<Vec<Scalar>, CliError> {
        let text = v
            .as_deref()
            .ok_or_else(|| CliError::Invalid(format!("missing --{name}")))?;
        parse_scalars(name, text)
    };
    let spec = UniformMatrixSpec::new(
        k,
        ell,
        seq(&args.x, "x")?,
        seq(&args.y, "y")?,
        seq(&args.r, "r")?,
    )
    .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Loaded::Spec(spec))
}
