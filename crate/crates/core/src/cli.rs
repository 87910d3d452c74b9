//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on parse or
//! usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::Error;
use crate::freealg::{pi_map, NcPoly};
use crate::magnus::{duality_check, magnus_basis_report, magnus_poly};
use crate::polylog::{
    expand_to_products, kernel_element, magnus_product_identity, nfold_product, polylog_map,
    polylog_rational, product_value, verify_relation, LinComb, Permutation,
};
use crate::rational::{format_terms, to_fraction_string};
use crate::relation::{bundled_relations, parse_jsonl, RelationRecord};
use crate::words::{Index, MagnusIndex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "magnus-polylog",
    version,
    about = "Exact non-positive multiple polylogarithms and Magnus polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Li⁻ at an index such as "(1,1)" as a rational function.
    Eval {
        index: String,
        /// Also print the Taylor coefficients of z^0 … z^N.
        #[arg(long, value_name = "N")]
        series: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Expand the Magnus polynomial M^(k) for an index such as "(1;2)".
    Magnus {
        index: String,
        #[arg(long)]
        json: bool,
    },
    /// Expand Li⁻_s into products of mono-index values.
    Expand {
        index: String,
        #[arg(long)]
        json: bool,
    },
    /// Expand a product Li⁻_{s1}⋯Li⁻_{sn} into a combination of indices.
    Product {
        /// Factor indices, e.g. `5 4` or "5,4".
        #[arg(required = true, num_args = 1..)]
        factors: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Emit kernel relations π((M^(k) − M^(σk))x1) as JSON lines.
    Kernel {
        index: String,
        /// One-based images σ(1) … σ(n), e.g. "2 1".
        #[arg(
            long,
            conflicts_with = "all_sigma",
            required_unless_present = "all_sigma"
        )]
        sigma: Option<String>,
        /// Use every non-identity permutation of the slots.
        #[arg(long)]
        all_sigma: bool,
    },
    /// Re-check every relation in a JSON-lines file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check array-binomial duality and the Magnus basis on small graded pieces.
    DualityCheck {
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print the bundled golden relations as JSON lines.
    Examples,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

fn execute(cmd: &Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Eval {
            index,
            series,
            json,
        } => cmd_eval(index, *series, *json, out),
        Command::Magnus { index, json } => cmd_magnus(index, *json, out),
        Command::Expand { index, json } => cmd_expand(index, *json, out),
        Command::Product { factors, json } => cmd_product(factors, *json, out),
        Command::Kernel {
            index,
            sigma,
            all_sigma,
        } => cmd_kernel(index, sigma.as_deref(), *all_sigma, out),
        Command::Verify { file, json } => cmd_verify(file, *json, out),
        Command::DualityCheck {
            max_depth,
            max_weight,
            json,
        } => cmd_duality(*max_depth, *max_weight, *json, out),
        Command::Examples => {
            for rec in bundled_relations() {
                writeln!(out, "{}", rec.to_json_line())?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(v).expect("values serialize")
    )
}

fn lincomb_json(c: &LinComb) -> Value {
    Value::Array(
        c.terms()
            .map(|(s, a)| json!({"coef": to_fraction_string(a), "index": s.parts()}))
            .collect(),
    )
}

fn family_json(f: &BTreeMap<MagnusIndex, BigInt>) -> Value {
    Value::Object(
        f.iter()
            .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
            .collect(),
    )
}

fn product_label(slots: &[u32]) -> String {
    slots
        .iter()
        .map(|x| format!("Li-({x})"))
        .collect::<Vec<_>>()
        .join(" * ")
}

fn cmd_eval(index: &str, series: Option<usize>, json: bool, out: &mut dyn Write) -> CliResult {
    let s: Index = index.parse()?;
    let f = polylog_rational(&s);
    let coeffs: Option<Vec<String>> =
        series.map(|n| f.taylor_coeffs(n).iter().map(ToString::to_string).collect());
    if json {
        let mut v = json!({
            "index": s.to_string(),
            "value": f.to_string(),
            "rational": f.to_record(),
        });
        if let Some(cs) = &coeffs {
            v["series"] = json!(cs);
        }
        print_json(out, &v)?;
    } else {
        writeln!(out, "{f}")?;
        if let Some(cs) = coeffs {
            writeln!(out, "series: {}", cs.join(","))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_magnus(index: &str, json: bool, out: &mut dyn Write) -> CliResult {
    let k: MagnusIndex = index.parse()?;
    let m = magnus_poly(&k);
    let image = pi_map(&m.mul(&NcPoly::x1())?)?;
    let (expansion, via_magnus) = magnus_product_identity(&k);
    let holds = expansion == via_magnus && polylog_map(&via_magnus) == product_value(&k);
    if json {
        print_json(
            out,
            &json!({
                "index": k.to_string(),
                "magnus": m.to_records(),
                "image": image.to_records(),
                "product": k.slots(),
                "expansion": lincomb_json(&expansion),
                "identity_holds": holds,
            }),
        )?;
    } else {
        writeln!(out, "M{k} = {m}")?;
        writeln!(out, "pi(M{k} x1) = {image}")?;
        writeln!(out, "{} = {via_magnus}", product_label(&k.slots()))?;
        writeln!(out, "identity: {}", if holds { "holds" } else { "FAILS" })?;
    }
    Ok(if holds { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_expand(index: &str, json: bool, out: &mut dyn Write) -> CliResult {
    let s: Index = index.parse()?;
    let family = expand_to_products(&s)?;
    if json {
        print_json(
            out,
            &json!({"index": s.to_string(), "coefficients": family_json(&family)}),
        )?;
    } else {
        let coefs: Vec<(BigRational, String)> = family
            .iter()
            .map(|(k, c)| {
                (
                    BigRational::from_integer(c.clone()),
                    product_label(&k.slots()),
                )
            })
            .collect();
        let rhs = format_terms(coefs.iter().map(|(c, m)| (c, m.clone())), true, " ");
        writeln!(out, "Li-{s} = {rhs}")?;
    }
    Ok(EXIT_OK)
}

fn parse_factors(factors: &[String]) -> Result<Vec<u32>, Error> {
    let mut v = Vec::new();
    for f in factors {
        for tok in f.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            v.push(tok.parse::<u32>().map_err(|_| {
                crate::error::parse_err("factor", tok, "expected a non-negative integer")
            })?);
        }
    }
    if v.is_empty() {
        return Err(Error::EmptyIndex);
    }
    Ok(v)
}

fn cmd_product(factors: &[String], json: bool, out: &mut dyn Write) -> CliResult {
    let s = parse_factors(factors)?;
    let expansion = nfold_product(&s)?;
    let value = polylog_map(&expansion);
    if json {
        print_json(
            out,
            &json!({
                "factors": s,
                "expansion": lincomb_json(&expansion),
                "value": value.to_string(),
                "rational": value.to_record(),
            }),
        )?;
    } else {
        writeln!(out, "{} = {expansion}", product_label(&s))?;
        writeln!(out, "value: {value}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_kernel(index: &str, sigma: Option<&str>, all: bool, out: &mut dyn Write) -> CliResult {
    let k: MagnusIndex = index.parse()?;
    let sigmas: Vec<Permutation> = match sigma {
        Some(text) => {
            let p: Permutation = text.parse()?;
            if p.size() != k.depth() + 1 {
                return Err(Error::InvalidPermutation {
                    perm: p.images().to_vec(),
                    size: k.depth() + 1,
                }
                .into());
            }
            vec![p]
        }
        None if all => Permutation::all(k.depth() + 1)
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect(),
        None => unreachable!("clap requires --sigma or --all-sigma"),
    };
    let mut code = EXIT_OK;
    for p in sigmas {
        let rel = kernel_element(&k, &p)?;
        let rec = RelationRecord::checked(&rel).with_label(format!("kernel {k} sigma {p}"));
        if !rec.verified {
            code = EXIT_FAILED;
        }
        writeln!(out, "{}", rec.to_json_line())?;
    }
    Ok(code)
}

fn cmd_verify(file: &std::path::Path, json: bool, out: &mut dyn Write) -> CliResult {
    let text = std::fs::read_to_string(file)?;
    let records = parse_jsonl(&text)?;
    let checks: Vec<(usize, bool, String)> = std::thread::scope(|scope| {
        let handles: Vec<_> = records
            .iter()
            .map(|(line, rec)| {
                scope.spawn(move || {
                    let c = rec.to_lincomb().expect("validated by parse_jsonl");
                    let v = verify_relation(&c);
                    let witness = v.witness().map(ToString::to_string).unwrap_or_default();
                    (*line, v.holds(), witness)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification does not panic"))
            .collect()
    });
    let passed = checks.iter().filter(|(_, ok, _)| *ok).count();
    for ((line, ok, witness), (_, rec)) in checks.iter().zip(&records) {
        let label = rec.label.as_deref().unwrap_or("");
        if json {
            print_json(
                out,
                &json!({"line": line, "label": rec.label, "verified": ok, "witness": if *ok { Value::Null } else { json!(witness) }}),
            )?;
        } else if *ok {
            writeln!(out, "line {line}: verified {label}")?;
        } else {
            writeln!(out, "line {line}: FAILED {label} value {witness}")?;
        }
    }
    if !json {
        writeln!(out, "{passed} of {} relations verified", checks.len())?;
    }
    Ok(if passed == checks.len() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn cmd_duality(max_depth: usize, max_weight: u32, json: bool, out: &mut dyn Write) -> CliResult {
    let duality = duality_check(max_depth, max_weight);
    let basis = magnus_basis_report(max_depth, max_weight);
    if json {
        print_json(
            out,
            &json!({
                "max_depth": max_depth,
                "max_weight": max_weight,
                "duality": {"checked": duality.checked, "failures": duality.failures},
                "basis": {"checked": basis.checked, "failures": basis.failures},
            }),
        )?;
    } else {
        for (name, r) in [("duality", &duality), ("basis", &basis)] {
            let status = if r.passed() { "ok" } else { "FAILED" };
            writeln!(out, "{name}: {} checks, {status}", r.checked)?;
            for f in &r.failures {
                writeln!(out, "  {f}")?;
            }
        }
    }
    Ok(if duality.passed() && basis.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
