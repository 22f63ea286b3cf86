//! Command-line front end. [`run`] is the whole program minus process setup,
//! so it can be driven from tests.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::array::ArrayPQ;
use crate::cells::enumerate_cells;
use crate::completion::{complete, parse_word, ClassId, TruncatedCompletion};
use crate::config::{
    self, parse_rat, CellLocation, ConfigJson, Configuration, CoveringJson, LocationJson,
};
use crate::error::{Error, Result};
use crate::group::{validate_group, validate_pair, PairSpec};
use crate::homology::{build_total_complex, diagonal_oracle, HomologyResult, Ring};
use crate::io::{read_json, GroupJson, PairJson, PmqJson};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::pmq::{classify, norms, sub_pmq_norm_le, validate_pmq, PmqSpec, ValidationReport};
use crate::poincare::{coconnectivity_probe, intrinsic_norm_check, poincare_report};

#[derive(Parser, Debug)]
#[command(
    name = "pmqhur",
    version,
    about = "Hurwitz spaces over partially multiplicative quandles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// PMQ fixture
    #[arg(long)]
    pmq: Option<PathBuf>,
    /// PMQ-group pair fixture; its PMQ is used where only a PMQ is needed
    #[arg(long)]
    pair: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Element {
    #[command(flatten)]
    source: Source,
    /// Canonical word, letters joined by "."
    #[arg(long)]
    element: String,
    #[arg(long, default_value = "Z", value_parser = parse_ring)]
    ring: Ring,
    #[arg(long)]
    relative: bool,
    #[arg(long)]
    json: bool,
}

fn parse_ring(s: &str) -> std::result::Result<Ring, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check PMQ, group or pair axioms
    Validate {
        #[arg(long)]
        pmq: Option<PathBuf>,
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Augmented / complete / locally finite, with norms
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Partial product in Q
    Product {
        #[command(flatten)]
        source: Source,
        a: String,
        b: String,
    },
    /// Conjugation a^b in Q
    Conj {
        #[command(flatten)]
        source: Source,
        a: String,
        b: String,
    },
    /// Sub-PMQ of elements of norm at most k, as fixture JSON
    SubPmq {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_norm: usize,
    },
    /// Check h(ab) = h(a) + h(b)
    NormCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Class table of the truncated completion
    Complete {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        max_norm: usize,
        /// Omit member lists
        #[arg(long)]
        elide: bool,
        #[arg(long)]
        json: bool,
    },
    /// Product in the completion
    HqProduct {
        #[command(flatten)]
        source: Source,
        u: String,
        v: String,
        #[arg(long)]
        max_norm: Option<usize>,
    },
    /// Conjugation u^w in the completion
    HqConj {
        #[command(flatten)]
        source: Source,
        u: String,
        w: String,
    },
    /// Member words of a class
    Decompositions {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Operations on a single array, written "[c0 | c1 | ...]" with columns
    /// listed bottom to top
    Array {
        op: ArrayOp,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        array: String,
        /// Face or degeneracy index
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        max_norm: Option<usize>,
    },
    /// Non-degenerate arrays with total product the given element
    Cells {
        #[command(flatten)]
        element: Element,
        /// List every cell
        #[arg(long)]
        list: bool,
    },
    /// Homology of the normalized total complex
    Homology {
        #[command(flatten)]
        element: Element,
    },
    /// Homology of the diagonal simplicial set
    Diagonal {
        #[command(flatten)]
        element: Element,
    },
    /// Smith normal form of an integer matrix "a b; c d"
    Snf {
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Poincaré verdict for every element of Q₊
    Poincare {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
        #[arg(long)]
        json: bool,
    },
    /// Top relative rank over Q_{≤1} against Q
    Coconnect {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "Z", value_parser = parse_ring)]
        ring: Ring,
        #[arg(long)]
        json: bool,
    },
    /// Configuration operations
    Config {
        op: ConfigOp,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cell location for upsilon
        #[arg(long)]
        location: Option<PathBuf>,
        /// Base configuration for in-neighborhood
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        covering: Option<PathBuf>,
        /// Group element for conj and the actions
        #[arg(long)]
        g: Option<String>,
        /// Target x coordinates for collide, comma separated
        #[arg(long)]
        xs: Option<String>,
        /// Target y coordinates for collide, comma separated
        #[arg(long)]
        ys: Option<String>,
        #[arg(long)]
        max_norm: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ArrayOp {
    Nondegenerate,
    Admissible,
    FaceH,
    FaceV,
    DegeneracyH,
    DegeneracyV,
    TotalProduct,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ConfigOp {
    Omega,
    OmegaHat,
    CellOf,
    Upsilon,
    Collide,
    Conj,
    ActLeft,
    ActRight,
    Reduce,
    IsReduced,
    InNeighborhood,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 success, 1 negative verdict or failed precondition,
/// 2 usage or input error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Structural(_)
        | Error::UnknownElement(_)
        | Error::InvalidArgument(_)
        | Error::InvalidConfiguration(_) => 2,
        _ => 1,
    }
}

fn load_pair_or_pmq(source: &Source) -> Result<(PmqSpec, Option<PairSpec>)> {
    match (&source.pmq, &source.pair) {
        (Some(p), None) => Ok((read_json::<PmqJson>(p)?.to_spec()?, None)),
        (None, Some(p)) => {
            let pair = read_json::<PairJson>(p)?.to_spec()?;
            Ok((pair.pmq.clone(), Some(pair)))
        }
        _ => Err(Error::InvalidArgument(
            "give exactly one of --pmq and --pair".into(),
        )),
    }
}

fn load_pmq(source: &Source) -> Result<PmqSpec> {
    Ok(load_pair_or_pmq(source)?.0)
}

/// Norm of a word over Q.
fn word_norm(spec: &PmqSpec, h: &[usize], text: &str) -> Result<usize> {
    Ok(parse_word(spec, text)?.iter().map(|&a| h[a]).sum())
}

/// Total norm of a list of words.
fn needed_norm(spec: &PmqSpec, words: &[&str]) -> Result<usize> {
    let h = norms(spec)?;
    words.iter().map(|w| word_norm(spec, &h, w)).sum()
}

fn completion_for(
    spec: &PmqSpec,
    words: &[&str],
    bound: Option<usize>,
) -> Result<TruncatedCompletion> {
    let needed = needed_norm(spec, words)?;
    complete(spec, bound.unwrap_or(needed).max(needed))
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", text.as_ref())
        .map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<()> {
    emit(
        out,
        serde_json::to_string_pretty(value).expect("values serialize"),
    )
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_json(report: &ValidationReport) -> Value {
    json!({
        "valid": report.is_valid(),
        "violations": report.violations.iter()
            .map(|v| json!({"axiom": v.axiom, "witness": v.witness}))
            .collect::<Vec<_>>(),
    })
}

fn emit_report(out: &mut dyn Write, report: &ValidationReport, as_json: bool) -> Result<i32> {
    if as_json {
        emit_json(out, &report_json(report))?;
    } else if report.is_valid() {
        emit(out, "valid")?;
    } else {
        for v in &report.violations {
            emit(out, format!("violation: {v}"))?;
        }
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn homology_json(h: &HomologyResult) -> Value {
    json!({
        "ring": h.ring.to_string(),
        "degrees": h.groups.iter().enumerate().map(|(n, g)| json!({
            "degree": n,
            "rank": g.rank,
            "torsion": g.torsion.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "concentrated": h.concentrated_degree(),
        "euler": h.euler_characteristic(),
    })
}

fn homology_table(h: &HomologyResult) -> String {
    let mut lines = vec![
        format!("ring {}", h.ring),
        "degree\trank\ttorsion".to_string(),
    ];
    for (n, g) in h.groups.iter().enumerate() {
        let torsion = if g.torsion.is_empty() {
            "-".to_string()
        } else {
            g.torsion
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        lines.push(format!("{n}\t{}\t{torsion}", g.rank));
    }
    lines.push(match h.concentrated_degree() {
        Some(n) => format!("concentrated in degree {n}"),
        None => "not concentrated".to_string(),
    });
    lines.join("\n")
}

fn parse_array(tc: &TruncatedCompletion, text: &str) -> Result<ArrayPQ> {
    let bad = || Error::InvalidArgument(format!("array `{text}` (expected \"[c0 | c1 | ...]\")"));
    let body = text.trim();
    let body = match body.find('[') {
        Some(k) => body[k..]
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?,
        None => body,
    };
    let columns: Vec<Vec<ClassId>> = body
        .split('|')
        .map(|col| {
            col.split_whitespace()
                .map(|w| tc.parse_class(w))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rows = columns.first().map_or(0, Vec::len);
    if columns.len() < 2 || rows < 2 || columns.iter().any(|c| c.len() != rows) {
        return Err(bad());
    }
    Ok(ArrayPQ::from_columns(columns))
}

fn array_words(text: &str) -> Vec<&str> {
    let body = text.find('[').map_or(text, |k| &text[k..]);
    body.split(|c: char| c.is_whitespace() || "[]|".contains(c))
        .filter(|w| !w.is_empty())
        .collect()
}

fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|row| {
            row.split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| Error::InvalidArgument(format!("matrix entry `{s}`")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::InvalidArgument("ragged matrix".into()));
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate {
            pmq,
            group,
            pair,
            json,
        } => {
            let report = match (pmq, group, pair) {
                (Some(p), None, None) => validate_pmq(&read_json::<PmqJson>(&p)?.to_spec()?),
                (None, Some(g), None) => validate_group(&read_json::<GroupJson>(&g)?.to_spec()?),
                (None, None, Some(p)) => {
                    let pair = read_json::<PairJson>(&p)?.to_spec()?;
                    let mut report = validate_pmq(&pair.pmq);
                    report
                        .violations
                        .extend(validate_group(&pair.group).violations);
                    report.violations.extend(validate_pair(&pair).violations);
                    report
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "give exactly one of --pmq, --group, --pair".into(),
                    ))
                }
            };
            emit_report(out, &report, json)
        }
        Command::Classify { source, json } => {
            let spec = load_pmq(&source)?;
            let c = classify(&spec);
            let norms: Option<Vec<(String, usize)>> = c.norms.as_ref().map(|h| {
                (0..spec.len())
                    .map(|a| (spec.symbol(a).to_string(), h[a]))
                    .collect()
            });
            if json {
                emit_json(
                    out,
                    &json!({
                        "augmented": c.augmented,
                        "complete": c.complete,
                        "locally_finite": c.locally_finite,
                        "norms": norms.as_ref().map(|n| n.iter().map(|(s, h)| json!({"element": s, "norm": h})).collect::<Vec<_>>()),
                        "cycle": c.cycle,
                    }),
                )?;
            } else {
                emit(out, format!("augmented: {}", yes(c.augmented)))?;
                emit(out, format!("complete: {}", yes(c.complete)))?;
                emit(out, format!("locally finite: {}", yes(c.locally_finite)))?;
                if let Some(cycle) = &c.cycle {
                    emit(out, format!("cycle: {}", cycle.join(" -> ")))?;
                }
                for (s, h) in norms.iter().flatten() {
                    emit(out, format!("h({s}) = {h}"))?;
                }
            }
            Ok(0)
        }
        Command::Product { source, a, b } => {
            let spec = load_pmq(&source)?;
            emit(out, spec.product_sym(&a, &b)?.unwrap_or("undefined"))?;
            Ok(0)
        }
        Command::Conj { source, a, b } => {
            let spec = load_pmq(&source)?;
            emit(out, spec.conj_sym(&a, &b)?)?;
            Ok(0)
        }
        Command::SubPmq { source, max_norm } => {
            let sub = sub_pmq_norm_le(&load_pmq(&source)?, max_norm)?;
            emit(
                out,
                serde_json::to_string_pretty(&PmqJson::from_spec(&sub)).expect("serializes"),
            )?;
            Ok(0)
        }
        Command::NormCheck { source, json } => {
            let check = intrinsic_norm_check(&load_pmq(&source)?)?;
            let witness = check.err();
            if json {
                emit_json(
                    out,
                    &json!({"intrinsic": witness.is_none(), "witness": witness}),
                )?;
            } else {
                match &witness {
                    None => emit(out, "intrinsic: yes")?,
                    Some([a, b, c]) => {
                        emit(out, format!("intrinsic: no (h({c}) != h({a}) + h({b}))"))?
                    }
                }
            }
            Ok(if witness.is_none() { 0 } else { 1 })
        }
        Command::Complete {
            source,
            max_norm,
            elide,
            json,
        } => {
            let tc = complete(&load_pmq(&source)?, max_norm)?;
            let rows: Vec<Value> = tc
                .classes()
                .iter()
                .map(|c| {
                    let mut row = json!({
                        "id": tc.name(c.id),
                        "norm": c.norm,
                        "size": c.members.len(),
                        "in_q": c.in_q.map(|a| tc.base().symbol(a).to_string()),
                    });
                    if !elide {
                        row["members"] = json!(c
                            .members
                            .iter()
                            .map(|w| tc.format_word(w))
                            .collect::<Vec<_>>());
                    }
                    row
                })
                .collect();
            if json {
                emit_json(out, &json!({"bound": max_norm, "classes": rows}))?;
            } else {
                emit(out, "id\tnorm\tsize\tin_Q\tmembers")?;
                for c in tc.classes() {
                    let members = if elide {
                        "…".to_string()
                    } else {
                        c.members
                            .iter()
                            .map(|w| tc.format_word(w))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    let in_q = c.in_q.map_or("-", |a| tc.base().symbol(a));
                    emit(
                        out,
                        format!(
                            "{}\t{}\t{}\t{in_q}\t{members}",
                            tc.name(c.id),
                            c.norm,
                            c.members.len()
                        ),
                    )?;
                }
                emit(
                    out,
                    format!("{} classes up to norm {max_norm}", tc.classes().len()),
                )?;
            }
            Ok(0)
        }
        Command::HqProduct {
            source,
            u,
            v,
            max_norm,
        } => {
            let tc = completion_for(&load_pmq(&source)?, &[&u, &v], None)?;
            let bound = max_norm.unwrap_or(tc.bound());
            let (cu, cv) = (tc.parse_class(&u)?, tc.parse_class(&v)?);
            let needed = tc.norm(cu) + tc.norm(cv);
            if needed > bound {
                return Err(Error::TruncationOverflow { needed, bound });
            }
            emit(out, tc.name(tc.product(cu, cv)?))?;
            Ok(0)
        }
        Command::HqConj { source, u, w } => {
            let tc = completion_for(&load_pmq(&source)?, &[&u, &w], None)?;
            emit(
                out,
                tc.name(tc.conj(tc.parse_class(&u)?, tc.parse_class(&w)?)),
            )?;
            Ok(0)
        }
        Command::Decompositions {
            source,
            element,
            json,
        } => {
            let tc = completion_for(&load_pmq(&source)?, &[&element], None)?;
            let words: Vec<String> = tc
                .decompositions(tc.parse_class(&element)?)
                .iter()
                .map(|w| tc.format_word(w))
                .collect();
            if json {
                emit_json(out, &json!(words))?;
            } else {
                for w in words {
                    emit(out, w)?;
                }
            }
            Ok(0)
        }
        Command::Array {
            op,
            source,
            array,
            index,
            max_norm,
        } => {
            let spec = load_pmq(&source)?;
            let tc = completion_for(&spec, &array_words(&array), max_norm)?;
            let ua = parse_array(&tc, &array)?;
            let (p, q) = ua.bidegree();
            let check = |ok: bool, what: &str| {
                if ok {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "{what} index {index} out of range for bidegree ({p},{q})"
                    )))
                }
            };
            let text = match op {
                ArrayOp::Nondegenerate => ua.is_nondegenerate().to_string(),
                ArrayOp::Admissible => ua.is_admissible(&tc).to_string(),
                ArrayOp::FaceH => {
                    check(p >= 1 && index <= p, "face_h")?;
                    ua.face_h(&tc, index)?.display(&tc).to_string()
                }
                ArrayOp::FaceV => {
                    check(q >= 1 && index <= q, "face_v")?;
                    ua.face_v(&tc, index)?.display(&tc).to_string()
                }
                ArrayOp::DegeneracyH => {
                    check(index <= p, "degeneracy_h")?;
                    ua.degeneracy_h(index).display(&tc).to_string()
                }
                ArrayOp::DegeneracyV => {
                    check(index <= q, "degeneracy_v")?;
                    ua.degeneracy_v(index).display(&tc).to_string()
                }
                ArrayOp::TotalProduct => tc.name(ua.total_product(&tc)?),
            };
            emit(out, text)?;
            Ok(0)
        }
        Command::Cells { element, list } => {
            let (tc, a) = element_completion(&element)?;
            let cells = enumerate_cells(&tc, a)?;
            if element.json {
                let counts: Vec<Value> = cells
                    .counts()
                    .iter()
                    .map(|(&(p, q), &n)| json!({"p": p, "q": q, "count": n}))
                    .collect();
                let mut value =
                    json!({"element": tc.name(a), "total": cells.len(), "counts": counts});
                if list {
                    value["cells"] = json!(cells
                        .iter()
                        .map(|c| json!({"array": c.array.display(&tc).to_string(), "admissible": c.admissible}))
                        .collect::<Vec<_>>());
                }
                emit_json(out, &value)?;
            } else {
                emit(out, "p\tq\tcells\tadmissible")?;
                for (&(p, q), v) in &cells.cells {
                    let adm = v.iter().filter(|c| c.admissible).count();
                    emit(out, format!("{p}\t{q}\t{}\t{adm}", v.len()))?;
                }
                emit(out, format!("total {}", cells.len()))?;
                if list {
                    for c in cells.iter() {
                        let flag = if c.admissible { "" } else { "  NAdm" };
                        emit(out, format!("{}{flag}", c.array.display(&tc)))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Homology { element } => {
            let (tc, a) = element_completion(&element)?;
            let cells = enumerate_cells(&tc, a)?;
            let cx = build_total_complex(&tc, &cells, element.relative, element.ring)?;
            debug_assert!(cx.is_chain_complex());
            emit_homology(out, &cx.homology(), element.json)
        }
        Command::Diagonal { element } => {
            let (tc, a) = element_completion(&element)?;
            let cells = enumerate_cells(&tc, a)?;
            let h = diagonal_oracle(&tc, &cells, element.relative, element.ring)?;
            emit_homology(out, &h, element.json)
        }
        Command::Snf { matrix, json } => {
            let snf = smith_normal_form(&parse_matrix(&matrix)?);
            let factors: Vec<String> = snf.factors.iter().map(BigInt::to_string).collect();
            if json {
                emit_json(out, &json!({"factors": factors, "rank": snf.rank()}))?;
            } else {
                emit(out, format!("factors: [{}]", factors.join(", ")))?;
                emit(out, format!("rank: {}", snf.rank()))?;
            }
            Ok(0)
        }
        Command::Poincare { source, ring, json } => {
            let report = poincare_report(&load_pmq(&source)?, ring)?;
            if json {
                let elements: Vec<Value> = report
                    .elements
                    .iter()
                    .map(|v| {
                        json!({
                            "element": v.element,
                            "norm": v.norm,
                            "concentrated": v.concentrated,
                            "passes": v.passes,
                            "connected": v.connected,
                            "relative": homology_json(&v.relative),
                        })
                    })
                    .collect();
                emit_json(
                    out,
                    &json!({
                        "ring": ring.to_string(),
                        "elements": elements,
                        "norm_is_intrinsic": report.norm_is_intrinsic,
                        "intrinsic_witness": report.intrinsic_witness,
                        "poincare": report.overall,
                    }),
                )?;
            } else {
                emit(out, format!("ring {ring}"))?;
                emit(out, "element\th\tdegree\tpasses\tconnected")?;
                for v in &report.elements {
                    let degree = v.concentrated.map_or("-".to_string(), |n| n.to_string());
                    emit(
                        out,
                        format!(
                            "{}\t{}\t{degree}\t{}\t{}",
                            v.element,
                            v.norm,
                            yes(v.passes),
                            yes(v.connected)
                        ),
                    )?;
                }
                emit(
                    out,
                    format!("norm intrinsic: {}", yes(report.norm_is_intrinsic)),
                )?;
                emit(out, format!("POINCARE: {}", yes(report.overall)))?;
            }
            Ok(if report.overall { 0 } else { 1 })
        }
        Command::Coconnect { source, ring, json } => {
            let rows = coconnectivity_probe(&load_pmq(&source)?, ring)?;
            let all = rows.iter().all(|r| r.equal);
            if json {
                emit_json(
                    out,
                    &json!(rows
                        .iter()
                        .map(|r| json!({"element": r.element, "norm": r.norm, "sub_rank": r.sub_rank, "rank": r.rank, "equal": r.equal}))
                        .collect::<Vec<_>>()),
                )?;
            } else {
                emit(out, "element\th\tsub_rank\trank\tequal")?;
                for r in &rows {
                    emit(
                        out,
                        format!(
                            "{}\t{}\t{}\t{}\t{}",
                            r.element,
                            r.norm,
                            r.sub_rank,
                            r.rank,
                            yes(r.equal)
                        ),
                    )?;
                }
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Config {
            op,
            source,
            config,
            location,
            base,
            covering,
            g,
            xs,
            ys,
            max_norm,
        } => run_config(
            out,
            ConfigArgs {
                op,
                source,
                config,
                location,
                base,
                covering,
                g,
                xs,
                ys,
                max_norm,
            },
        ),
    }
}

fn element_completion(element: &Element) -> Result<(TruncatedCompletion, ClassId)> {
    let tc = completion_for(&load_pmq(&element.source)?, &[&element.element], None)?;
    let a = tc.parse_class(&element.element)?;
    Ok((tc, a))
}

fn emit_homology(out: &mut dyn Write, h: &HomologyResult, as_json: bool) -> Result<i32> {
    if as_json {
        emit_json(out, &homology_json(h))?;
    } else {
        emit(out, homology_table(h))?;
    }
    Ok(0)
}

struct ConfigArgs {
    op: ConfigOp,
    source: Source,
    config: Option<PathBuf>,
    location: Option<PathBuf>,
    base: Option<PathBuf>,
    covering: Option<PathBuf>,
    g: Option<String>,
    xs: Option<String>,
    ys: Option<String>,
    max_norm: Option<usize>,
}

fn required<'a>(value: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    value
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("this operation needs --{flag}")))
}

fn parse_rats(text: &Option<String>, flag: &str) -> Result<Vec<config::Rat>> {
    let text = text
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("collide needs --{flag}")))?;
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rat)
        .collect()
}

fn run_config(out: &mut dyn Write, args: ConfigArgs) -> Result<i32> {
    let (spec, pair) = load_pair_or_pmq(&args.source)?;
    let pair = pair.unwrap_or_else(|| PairSpec::with_trivial_group(spec.clone()));

    // size the completion by every fine label that will be read
    let mut jsons: Vec<ConfigJson> = Vec::new();
    let mut location: Option<LocationJson> = None;
    if args.op == ConfigOp::Upsilon {
        location = Some(read_json(required(&args.location, "location")?)?);
    } else {
        jsons.push(read_json(required(&args.config, "config")?)?);
    }
    if args.op == ConfigOp::InNeighborhood {
        jsons.push(read_json(required(&args.base, "base")?)?);
    }
    let mut bound = 0;
    for j in &jsons {
        bound = bound.max(needed_norm(&spec, &j.fine_words().collect::<Vec<_>>())?);
    }
    if let Some(loc) = &location {
        let ws: Vec<&str> = loc.columns.iter().flatten().map(String::as_str).collect();
        bound = bound.max(needed_norm(&spec, &ws)?);
    }
    let tc = complete(&spec, args.max_norm.unwrap_or(bound).max(bound))?;
    let group = Some(&pair.group);
    let config_at = |k: usize| jsons[k].to_config(&tc, group);
    let g = || -> Result<usize> {
        let g = args
            .g
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("this operation needs --g".into()))?;
        pair.group.elem(g)
    };
    let show = |out: &mut dyn Write, c: &Configuration| {
        emit(
            out,
            serde_json::to_string_pretty(&ConfigJson::from_config(c, &tc, group))
                .expect("serializes"),
        )
    };

    match args.op {
        ConfigOp::Omega => emit(
            out,
            pair.group.symbol(config::omega(&config_at(0)?, &pair, &tc)),
        )?,
        ConfigOp::OmegaHat => emit(out, tc.name(config::omega_hat(&config_at(0)?, &tc)?))?,
        ConfigOp::CellOf => {
            let loc: CellLocation = config::cell_of(&config_at(0)?, &tc)?;
            emit(
                out,
                serde_json::to_string_pretty(&LocationJson::from_location(&loc, &tc))
                    .expect("serializes"),
            )?;
        }
        ConfigOp::Upsilon => {
            let loc = location.expect("read above").to_location(&tc)?;
            show(out, &config::upsilon(&loc, &tc)?)?;
        }
        ConfigOp::Collide => {
            let (xs, ys) = (parse_rats(&args.xs, "xs")?, parse_rats(&args.ys, "ys")?);
            show(out, &config::collide(&config_at(0)?, &xs, &ys, &tc)?)?;
        }
        ConfigOp::Conj => show(out, &config::conj_global(&config_at(0)?, g()?, &pair, &tc)?)?,
        ConfigOp::ActLeft => show(out, &config::act_left(&config_at(0)?, g()?, &pair)?)?,
        ConfigOp::ActRight => show(out, &config::act_right(&config_at(0)?, g()?, &pair)?)?,
        ConfigOp::Reduce => show(out, &config::reduce(&config_at(0)?, &tc))?,
        ConfigOp::IsReduced => emit(out, yes(config::is_reduced(&config_at(0)?, &tc)))?,
        ConfigOp::InNeighborhood => {
            let cov =
                read_json::<CoveringJson>(required(&args.covering, "covering")?)?.to_covering()?;
            let inside =
                config::neighborhood_contains(&config_at(1)?, &cov, &config_at(0)?, &pair, &tc)?;
            emit(out, yes(inside))?;
            return Ok(if inside { 0 } else { 1 });
        }
    }
    Ok(0)
}
