//! Report generation for each subcommand.

use std::fmt::Write as _;

use krv_core::derivation::Derivation;
use krv_core::krv::{delta, divergence, krv_component, write_dimension_csv, DivMode, KrvComponent, JSON_SCHEMA};
use krv_core::lie::MAX_TOTAL_DEGREE;
use krv_core::poly_model::{poly_model_table, weight3_floor_formula};
use krv_core::verify::{run_suite, Suite, SuiteReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::CliError;
use crate::eval::eval_str;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Rendered output plus whether every check in it succeeded.
#[derive(Debug)]
pub struct Report {
    pub body: String,
    pub success: bool,
}

impl Report {
    fn ok(body: String) -> Report {
        Report { body, success: true }
    }
}

fn json_body(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn mode_name(mode: DivMode) -> &'static str {
    match mode {
        DivMode::Strict => "strict",
        DivMode::Relaxed => "relaxed",
    }
}

/// The closed-form dimension of `krv^{(weight, j)}`.
pub fn expected_dimension(weight: usize, j: usize) -> usize {
    match weight {
        2 => usize::from(j.is_multiple_of(2)),
        3 if j.is_multiple_of(2) => 0,
        3 => weight3_floor_formula(j as u64) as usize,
        _ => unreachable!("weight checked by caller"),
    }
}

#[derive(Debug, Serialize)]
pub struct DimRow {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub formula: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn dims(weight: usize, j_max: usize, format: Format, mode: DivMode) -> Result<Report, CliError> {
    if weight != 2 && weight != 3 {
        return Err(CliError::Usage(format!("weight must be 2 or 3, got {weight}")));
    }
    if weight + j_max > MAX_TOTAL_DEGREE {
        return Err(krv_core::Error::DegreeCap { requested: weight + j_max, cap: MAX_TOTAL_DEGREE }.into());
    }
    let rows = (1..=j_max)
        .into_par_iter()
        .map(|j| {
            let dim = krv_component(weight, j, mode)?.dimension;
            let formula = expected_dimension(weight, j);
            Ok(DimRow { i: weight, j, dim, formula, matches: dim == formula })
        })
        .collect::<Result<Vec<DimRow>, krv_core::Error>>()?;
    let success = rows.iter().all(|r| r.matches);
    let body = match format {
        Format::Text => {
            let mut s = format!("dim krv^({weight},j), {} divergence\n", mode_name(mode));
            writeln!(s, "{:>3} {:>3} {:>4} {:>8} {:>6}", "i", "j", "dim", "formula", "match").unwrap();
            for r in &rows {
                let flag = if r.matches { "yes" } else { "NO" };
                writeln!(s, "{:>3} {:>3} {:>4} {:>8} {:>6}", r.i, r.j, r.dim, r.formula, flag).unwrap();
            }
            s
        }
        Format::Json => json_body(&json!({
            "schema": JSON_SCHEMA,
            "weight": weight,
            "mode": mode_name(mode),
            "rows": rows,
            "all_match": success,
        })),
        Format::Csv => {
            let mut buf = Vec::new();
            let table: Vec<(usize, usize, usize)> = rows.iter().map(|r| (r.i, r.j, r.dim)).collect();
            write_dimension_csv(&mut buf, &table).map_err(|e| CliError::Usage(e.to_string()))?;
            String::from_utf8(buf).expect("utf-8 csv")
        }
    };
    Ok(Report { body, success })
}

fn component_text(c: &KrvComponent) -> String {
    let mut s = format!("krv^({},{}): dim {}\n", c.i, c.j, c.dimension);
    for (k, gamma) in c.basis.iter().enumerate() {
        writeln!(s, "  [{k}] {gamma}").unwrap();
        writeln!(s, "      = {}", gamma.render_theta()).unwrap();
    }
    s
}

pub fn basis(i: usize, j: usize, format: Format, mode: DivMode) -> Result<Report, CliError> {
    let c = krv_component(i, j, mode)?;
    let body = match format {
        Format::Text => component_text(&c),
        Format::Json => json_body(&c.to_json()),
        Format::Csv => return Err(CliError::Usage("basis supports text and json output".into())),
    };
    Ok(Report::ok(body))
}

pub fn delta_report(n2: u32, format: Format) -> Result<Report, CliError> {
    let d = delta(n2)?;
    let u = Derivation::from_trace(d.value());
    let symplectic = u.is_symplectic();
    let div = divergence(&u)?;
    let success = symplectic && div.is_zero();
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "delta_{n2} = {}", d.render_theta()).unwrap();
            writeln!(s, "         = {d}").unwrap();
            writeln!(s, "u(x) = {}", u.u_x()).unwrap();
            writeln!(s, "u(y) = {}", u.u_y()).unwrap();
            writeln!(s, "symplectic: {}", if symplectic { "yes" } else { "no" }).unwrap();
            writeln!(s, "divergence: {div}").unwrap();
            s
        }
        Format::Json => json_body(&json!({
            "schema": JSON_SCHEMA,
            "n": n2,
            "theta": d.render_theta(),
            "trace": d.to_string(),
            "u_x": u.u_x().to_string(),
            "u_y": u.u_y().to_string(),
            "symplectic": symplectic,
            "divergence": div.to_string(),
        })),
        Format::Csv => return Err(CliError::Usage("delta supports text and json output".into())),
    };
    Ok(Report { body, success })
}

/// `suite` is a suite name or `all`.
pub fn verify(suite: &str, seed: u64, cases: usize, format: Format) -> Result<Report, CliError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|e: krv_core::Error| CliError::Usage(e.to_string()))?]
    };
    let reports: Vec<SuiteReport> = suites.par_iter().map(|&s| run_suite(s, seed, cases)).collect();
    let success = reports.iter().all(SuiteReport::passed);
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                for c in &r.cases {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(s, "[{tag}] {} {}: {}", r.suite, c.label, c.detail).unwrap();
                }
                let n = r.cases.len();
                writeln!(s, "{}: {}/{} passed (seed {})", r.suite, n - r.failures(), n, r.seed).unwrap();
            }
            s
        }
        Format::Json => json_body(&json!({ "schema": JSON_SCHEMA, "passed": success, "suites": reports })),
        Format::Csv => {
            let mut s = String::from("suite,label,passed\n");
            for r in &reports {
                for c in &r.cases {
                    writeln!(s, "{},{},{}", r.suite, c.label, c.passed).unwrap();
                }
            }
            s
        }
    };
    Ok(Report { body, success })
}

pub fn eval(src: &str, format: Format) -> Result<Report, CliError> {
    let v = eval_str(src)?;
    let body = match format {
        Format::Text => format!("{v}\n"),
        Format::Json => json_body(&json!({ "schema": JSON_SCHEMA, "sort": v.sort(), "value": v.to_string() })),
        Format::Csv => return Err(CliError::Usage("eval supports text and json output".into())),
    };
    Ok(Report::ok(body))
}

/// Condition-(i) and joint dimensions of the polynomial model per degree.
pub fn poly(d_max: u32, format: Format) -> Result<Report, CliError> {
    let rows = poly_model_table(d_max)?;
    let body = match format {
        Format::Text => {
            let mut s = format!("{:>6} {:>10} {:>9}\n", "degree", "dim_cond_i", "dim_joint");
            for r in &rows {
                let joint = r.dim_joint.map_or("-".to_string(), |d| d.to_string());
                writeln!(s, "{:>6} {:>10} {:>9}", r.degree, r.dim_cond_i, joint).unwrap();
            }
            s
        }
        Format::Json => json_body(&json!({ "schema": JSON_SCHEMA, "rows": rows })),
        Format::Csv => {
            let mut s = String::from("degree,dim_cond_i,dim_joint\n");
            for r in &rows {
                let joint = r.dim_joint.map_or(String::new(), |d| d.to_string());
                writeln!(s, "{},{},{}", r.degree, r.dim_cond_i, joint).unwrap();
            }
            s
        }
    };
    Ok(Report::ok(body))
}
