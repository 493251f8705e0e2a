//! Command-line front end.
//!
//! Exit codes: 0 on success or a valid tuple, 1 when an input tuple is
//! rejected, 2 for usage errors and malformed input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::affine_weyl::{format_word, parse_word, AffineWeylGroup, ShiVector};
use crate::error::{Error, Result};
use crate::plot::render_svg;
use crate::root_system::{CartanType, RootSystem};
use crate::shi_characterization::Violation;
use crate::shi_variety::{display_word, ComponentTable, EnumerationOptions, ShiVariety};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "alcove", version, about = "Shi coefficients, alcoves and Shi variety components of affine Weyl groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Coroot,
    Norm,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shi vector, length, sign vector and component of a word.
    Element {
        #[arg(long = "type", short = 't')]
        cartan_type: CartanType,
        /// Generator digits (e.g. 0121), or space separated integers above rank 9.
        #[arg(long, short = 'w', allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether tuples are Shi vectors of alcoves.
    Validate {
        #[arg(long = "type", short = 't')]
        cartan_type: CartanType,
        /// A JSON array or comma separated list, e.g. [0,0,2,1] or 0,0,2,1.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "batch")]
        tuple: Option<String>,
        /// File with one tuple per line.
        #[arg(long, conflicts_with = "tuple")]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        criterion: CriterionArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Table of admitted vectors, one per irreducible component.
    Components {
        #[arg(long = "type", short = 't')]
        cartan_type: CartanType,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Only report the closed-form count.
        #[arg(long)]
        formula_only: bool,
        /// Also list the finite Weyl group elements of each component.
        #[arg(long)]
        representatives: bool,
        /// Permit enumerations beyond the default resource guards.
        #[arg(long)]
        allow_huge: bool,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// SVG picture of a rank 2 type, alcoves colored by component.
    Plot {
        #[arg(long = "type", short = 't')]
        cartan_type: CartanType,
        /// Draw every alcove of length at most this.
        #[arg(long, default_value_t = 10)]
        radius: usize,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Apply a word to a component.
    Act {
        #[arg(long = "type", short = 't')]
        cartan_type: CartanType,
        #[arg(long, short = 'w', allow_hyphen_values = true)]
        word: String,
        /// Admitted vector naming the component.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Root system data.
    Info {
        #[arg(long = "type", short = 't')]
        cartan_type: CartanType,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementReport {
    pub cartan_type: CartanType,
    pub word: String,
    pub shi_vector: ShiVector,
    pub length: u64,
    pub sign_vector: String,
    pub lambda: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tuple: Vec<i64>,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coroot: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub cartan_type: CartanType,
    pub word: String,
    pub lambda: Vec<i64>,
    pub image: Vec<i64>,
}

/// Parse `[0,0,2,1]`, `(0,0,2,1)`, `0,0,2,1` or `0 0 2 1`.
pub fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let t = s.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|_| Error::MalformedTuple(s.to_string()));
    }
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t);
    inner
        .split([',', ' '])
        .filter(|p| !p.is_empty())
        .map(|p| p.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::MalformedTuple(s.to_string()))
        .and_then(|v| {
            if v.is_empty() {
                Err(Error::MalformedTuple(s.to_string()))
            } else {
                Ok(v)
            }
        })
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: io::Error,
    },
    #[error("output: {0}")]
    Output(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

type CliResult = std::result::Result<i32, CliError>;

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Element {
            cartan_type,
            word,
            format,
        } => cmd_element(cartan_type, &word, format, out),
        Command::Validate {
            cartan_type,
            tuple,
            batch,
            criterion,
            format,
        } => cmd_validate(cartan_type, tuple, batch, criterion, format, out),
        Command::Components {
            cartan_type,
            format,
            formula_only,
            representatives,
            allow_huge,
            output,
        } => {
            let opts = EnumerationOptions {
                allow_huge,
                representatives,
                ..Default::default()
            };
            cmd_components(cartan_type, format, formula_only, opts, output, out)
        }
        Command::Plot {
            cartan_type,
            radius,
            output,
        } => {
            let svg = render_svg(&ShiVariety::from_type(cartan_type), radius)?;
            emit(output, svg.as_bytes(), out)?;
            Ok(EXIT_OK)
        }
        Command::Act {
            cartan_type,
            word,
            lambda,
            format,
        } => cmd_act(cartan_type, &word, &lambda, format, out),
        Command::Info {
            cartan_type,
            format,
        } => cmd_info(cartan_type, format, out),
    }
}

fn emit(path: Option<PathBuf>, bytes: &[u8], out: &mut dyn Write) -> std::result::Result<(), CliError> {
    match path {
        Some(p) => fs::write(&p, bytes).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => Ok(out.write_all(bytes)?),
    }
}

fn cmd_element(ct: CartanType, word: &str, format: Format, out: &mut dyn Write) -> CliResult {
    let variety = ShiVariety::from_type(ct);
    let group = variety.group();
    let word = parse_word(word, ct.rank)?;
    let w = group.from_word(&word)?;
    let v = group.shi_vector(&w);
    let report = ElementReport {
        cartan_type: ct,
        word: format_word(&word, ct.rank),
        length: v.abs_sum(),
        sign_vector: group.sign_vector(&w).to_string(),
        lambda: variety.lambda_vector(&w).entries().to_vec(),
        shi_vector: v,
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?,
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(&mut *out);
            wtr.write_record(["type", "word", "shi_vector", "length", "sign_vector", "lambda"])?;
            wtr.write_record([
                ct.to_string(),
                report.word.clone(),
                report.shi_vector.to_string(),
                report.length.to_string(),
                report.sign_vector.clone(),
                ShiVector(report.lambda.clone()).to_string(),
            ])?;
            wtr.flush()?;
        }
        Format::Text => {
            writeln!(out, "type         {ct}")?;
            writeln!(out, "word         {}", display_word(&word, ct.rank))?;
            writeln!(out, "shi vector   {}", report.shi_vector)?;
            writeln!(out, "length       {}", report.length)?;
            writeln!(out, "sign vector  {}", report.sign_vector)?;
            writeln!(out, "component    {}", ShiVector(report.lambda))?;
        }
    }
    Ok(EXIT_OK)
}

fn validate_one(group: &AffineWeylGroup, tuple: Vec<i64>, criterion: CriterionArg) -> Result<ValidationReport> {
    let validator = group.validator();
    let verdict = |c| -> Result<Verdict> {
        let violation = validator.check(&tuple, c)?;
        Ok(Verdict {
            valid: violation.is_none(),
            violation,
        })
    };
    use crate::shi_characterization::Criterion;
    let coroot = matches!(criterion, CriterionArg::Coroot | CriterionArg::Both)
        .then(|| verdict(Criterion::Coroot))
        .transpose()?;
    let norm = matches!(criterion, CriterionArg::Norm | CriterionArg::Both)
        .then(|| verdict(Criterion::Norm))
        .transpose()?;
    if let (Some(a), Some(b)) = (&coroot, &norm) {
        if a.valid != b.valid {
            return Err(Error::Invariant(format!("alcove criteria disagree on {tuple:?}")));
        }
    }
    let valid = coroot.iter().chain(&norm).all(|v| v.valid);
    Ok(ValidationReport {
        tuple,
        valid,
        coroot,
        norm,
    })
}

fn cmd_validate(
    ct: CartanType,
    tuple: Option<String>,
    batch: Option<PathBuf>,
    criterion: CriterionArg,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let group = AffineWeylGroup::from_type(ct);
    let inputs: Vec<String> = match (tuple, batch) {
        (Some(t), _) => vec![t],
        (None, Some(path)) => fs::read_to_string(&path)
            .map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect(),
        (None, None) => return Err(Error::MalformedTuple(String::new()).into()),
    };
    let reports = inputs
        .iter()
        .map(|s| validate_one(&group, parse_tuple(s)?, criterion))
        .collect::<Result<Vec<_>>>()?;
    let rs = group.root_system();
    match format {
        Format::Json => {
            let text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            };
            writeln!(out, "{}", text.expect("serializable"))?;
        }
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(&mut *out);
            wtr.write_record(["tuple", "valid", "violated_triple", "side"])?;
            for r in &reports {
                let v = r.coroot.iter().chain(&r.norm).find_map(|v| v.violation.clone());
                wtr.write_record([
                    ShiVector(r.tuple.clone()).to_string(),
                    r.valid.to_string(),
                    v.as_ref().map(|v| triple_text(rs, v)).unwrap_or_default(),
                    v.map(|v| format!("{:?}", v.side).to_lowercase()).unwrap_or_default(),
                ])?;
            }
            wtr.flush()?;
        }
        Format::Text => {
            for r in &reports {
                let t = ShiVector(r.tuple.clone());
                if r.valid {
                    writeln!(out, "{t} valid")?;
                } else {
                    let v = r
                        .coroot
                        .iter()
                        .chain(&r.norm)
                        .find_map(|v| v.violation.clone())
                        .expect("an invalid verdict names a violation");
                    writeln!(
                        out,
                        "{t} invalid: {} inequality fails for {} ({})",
                        format!("{:?}", v.side).to_lowercase(),
                        triple_text(rs, &v),
                        format!("{:?}", v.criterion).to_lowercase(),
                    )?;
                }
            }
        }
    }
    Ok(if reports.iter().all(|r| r.valid) {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn triple_text(rs: &RootSystem, v: &Violation) -> String {
    format!(
        "{}, {} -> {}",
        rs.root(v.triple.a),
        rs.root(v.triple.b),
        rs.root(v.triple.c)
    )
}

fn cmd_components(
    ct: CartanType,
    format: Format,
    formula_only: bool,
    opts: EnumerationOptions,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> CliResult {
    let variety = ShiVariety::from_type(ct);
    let table = if formula_only {
        ComponentTable::formula_only(variety.root_system())
    } else {
        variety.enumerate_admitted(opts)?
    };
    let bytes = match format {
        Format::Json => table.to_json() + "\n",
        Format::Csv => table.to_csv(),
        Format::Text => {
            let mut s = format!(
                "type {ct}: {} components (n! prod c_i = {}), index of connection {}\n",
                table
                    .count
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "unenumerated".into()),
                table.formula_count,
                table.index_of_connection
            );
            for row in &table.components {
                s.push_str(&ShiVector(row.lambda.clone()).to_string());
                if let Some(ws) = &row.finite_elements {
                    s.push_str("  ");
                    s.push_str(&ws.join(" "));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(output, bytes.as_bytes(), out)?;
    Ok(EXIT_OK)
}

fn cmd_act(ct: CartanType, word: &str, lambda: &str, format: Format, out: &mut dyn Write) -> CliResult {
    let variety = ShiVariety::from_type(ct);
    let parsed = parse_word(word, ct.rank)?;
    let w = variety.group().from_word(&parsed)?;
    let entries = parse_tuple(lambda)?;
    let lambda = match variety.admitted(entries) {
        Ok(l) => l,
        Err(e @ (Error::NotAdmissible { .. } | Error::NotAdmitted(_))) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(e.into()),
    };
    let image = variety.act_on_component(&w, &lambda)?;
    let report = ActionReport {
        cartan_type: ct,
        word: format_word(&parsed, ct.rank),
        lambda: lambda.entries().to_vec(),
        image: image.entries().to_vec(),
    };
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?,
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(&mut *out);
            wtr.write_record(["type", "word", "lambda", "image"])?;
            wtr.write_record([
                ct.to_string(),
                report.word,
                lambda.to_string(),
                image.to_string(),
            ])?;
            wtr.flush()?;
        }
        Format::Text => writeln!(out, "{} . {} = {}", display_word(&parsed, ct.rank), lambda, image)?,
    }
    Ok(EXIT_OK)
}

fn cmd_info(ct: CartanType, format: Format, out: &mut dyn Write) -> CliResult {
    let rs = RootSystem::build(ct);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rs.to_document()).expect("serializable"))?,
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(&mut *out);
            wtr.write_record(["index", "root", "coroot", "norm_sq", "height", "coheight"])?;
            for t in 0..rs.num_positive() {
                let (h, hv) = rs.heights(t);
                wtr.write_record([
                    t.to_string(),
                    rs.root(t).to_string(),
                    ShiVector(rs.coroot_coordinates(t).to_vec()).to_string(),
                    rs.norm_sq(t).to_string(),
                    h.to_string(),
                    hv.to_string(),
                ])?;
            }
            wtr.flush()?;
        }
        Format::Text => {
            writeln!(out, "type {ct}, rank {}, {} positive roots", rs.rank(), rs.num_positive())?;
            writeln!(out, "cartan matrix")?;
            for row in rs.cartan() {
                writeln!(out, "  {row:?}")?;
            }
            writeln!(out, "highest root        {}", rs.highest_root())?;
            writeln!(out, "highest short root  {}", rs.highest_short_root())?;
            writeln!(out, "index of connection {}", rs.index_of_connection())?;
            writeln!(out, "|W|                 {}", rs.weyl_group_order())?;
            writeln!(out, "components          {}", rs.component_count())?;
            writeln!(out, "positive roots (root, coroot, |root|^2)")?;
            for t in 0..rs.num_positive() {
                writeln!(
                    out,
                    "  {:>3}  {:<20} {:<16} {}",
                    t,
                    rs.root(t).to_string(),
                    ShiVector(rs.coroot_coordinates(t).to_vec()).to_string(),
                    rs.norm_sq(t)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}
