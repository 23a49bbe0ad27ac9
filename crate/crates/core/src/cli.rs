//! Command-line front end. The `shelflab` binary calls [`run`].
//!
//! Exit codes: 0 success, 1 a computation or verification failed, 2 bad usage or
//! unreadable input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::blockspindle::{make_block_spindle, BlockSpec};
use crate::enumerate::{enumerate, parse_axiom_list, CountMode, CountReport, EnumerationQuery};
use crate::error::Error;
use crate::free::{fas_build, fptus_build, fpus_build, fus_build, FreeStructureTable};
use crate::homology::{homology, ChainComplex, Theory};
use crate::laver::{cay_one_indexed, laver_build, laver_right_structure};
use crate::magma::{check_axioms, AxiomReport, FiniteMagma};
use crate::verify::{run_all, Depth};

pub const CACHE_ENV: &str = "SHELFLAB_CACHE";

#[derive(Debug, Parser)]
#[command(
    name = "shelflab",
    version,
    about = "Finite shelves, free shelves, Laver tables and their homology"
)]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Suppress the version banner on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Labeled,
    Iso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Fas,
    Fpus,
    Fptus,
    Fus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoryArg {
    OneTerm,
    TwoTerm,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report which axioms a table satisfies.
    Axioms { file: PathBuf },
    /// Count tables of a given order satisfying a list of axioms.
    Enumerate {
        /// Table order.
        #[arg(long)]
        n: usize,
        /// Comma-separated, e.g. `shelf,associative`.
        #[arg(long)]
        axioms: String,
        #[arg(long, value_enum, default_value = "iso")]
        mode: Mode,
        /// Allow order 5 (slow).
        #[arg(long)]
        allow_order5: bool,
        /// Print the tables found.
        #[arg(long)]
        witnesses: bool,
    },
    /// Multiplication table of a free structure, with its element legend.
    Free {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Number of generators.
        #[arg(long)]
        n: usize,
        /// Word-length bound for the FAS closure.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Also write the legend to this file.
        #[arg(long)]
        legend: Option<PathBuf>,
    },
    /// Laver table A_k, 1-indexed.
    Laver {
        /// The table has 2^k elements.
        #[arg(long)]
        k: usize,
        /// Emit the right self-distributive transpose.
        #[arg(long)]
        transpose: bool,
        /// Add the right-fixed and identity-column report as comments.
        #[arg(long)]
        annotate: bool,
        /// Emit 0-indexed entries, loadable by the other subcommands.
        #[arg(long)]
        zero_indexed: bool,
    },
    /// Build an f-block spindle from a block spec file.
    Spindle {
        /// One `size: f(0) ... f(size-1)` line per block.
        #[arg(long)]
        spec: PathBuf,
    },
    /// One homology group of a shelf.
    Homology {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        /// Degree; chains in degree q are (q+1)-tuples.
        #[arg(long)]
        q: usize,
        /// Reduced one-term homology.
        #[arg(long)]
        reduced: bool,
        /// Write the boundary matrix of degree q as triplets to this file.
        #[arg(long)]
        matrix_out: Option<PathBuf>,
        file: PathBuf,
    },
    /// Run the reproduction suite.
    VerifyPaper {
        /// FAS on three letters and chain checks through degree 3.
        #[arg(long)]
        deep: bool,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::TableShape { .. }
            | Error::EntryOutOfRange { .. }
            | Error::EmptyMagma
            | Error::UnknownAxiom(_)
            | Error::EmptyAxiomSet
            | Error::MaxLenTooSmall { .. }
            | Error::ReducedTwoTerm
            | Error::BlockFunction { .. }
            | Error::EmptyBlockSpec => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// What a subcommand produced: stdout bytes and whether it counts as success.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn read_magma(path: &Path) -> Result<FiniteMagma, Failure> {
    FiniteMagma::from_cay(&read(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn render_axioms(r: &AxiomReport) -> String {
    let flags = [
        ("shelf", r.shelf),
        ("idempotent", r.idempotent),
        ("spindle", r.spindle),
        ("rack", r.rack),
        ("quandle", r.quandle),
        ("associative", r.associative),
        ("quasigroup", r.quasigroup),
        ("unital", r.unital),
        ("proto_unital", r.proto_unital),
        ("pre_unital", r.pre_unital),
    ];
    let mut out = format!("order: {}\n", r.order);
    for (name, v) in flags {
        out.push_str(&format!("{name}: {v}\n"));
    }
    if let Some(u) = r.unit {
        out.push_str(&format!("unit: {u}\n"));
    }
    let pairs: Vec<String> = r
        .right_fixed
        .iter()
        .map(|(a, c)| format!("({a},{c})"))
        .collect();
    out.push_str(format!("right_fixed: {}", pairs.join(" ")).trim_end());
    out.push('\n');
    let zeros: Vec<String> = r.right_zeros.iter().map(usize::to_string).collect();
    out.push_str(format!("right_zeros: {}", zeros.join(" ")).trim_end());
    out.push('\n');
    out
}

fn render_count(r: &CountReport) -> String {
    let axioms: Vec<&str> = r.query.axioms.iter().map(|a| a.name()).collect();
    let mode = match r.query.mode {
        CountMode::Labeled => "labeled",
        CountMode::IsoClasses => "iso",
    };
    let mut out = format!(
        "order {} [{}] {mode}: {}\n",
        r.query.order,
        axioms.join(","),
        r.count
    );
    if let Some(ws) = &r.witnesses {
        for w in ws {
            out.push('\n');
            out.push_str(&w.to_cay());
        }
    }
    out
}

fn free_table(kind: Kind, n: usize, max_len: usize) -> Result<FreeStructureTable, Failure> {
    Ok(match kind {
        Kind::Fas => fas_build(n, max_len)?,
        Kind::Fpus => fpus_build(n)?,
        Kind::Fptus => fptus_build(n)?,
        Kind::Fus => fus_build(n)?,
    })
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn execute(command: &Command, format: Option<Format>) -> Result<Output, Failure> {
    let json_out = format == Some(Format::Json);
    match command {
        Command::Axioms { file } => {
            let report = check_axioms(&read_magma(file)?);
            Ok(Output::ok(if json_out {
                json_text(&json!({"schema": 1, "axioms": report}))
            } else {
                render_axioms(&report)
            }))
        }
        Command::Enumerate {
            n,
            axioms,
            mode,
            allow_order5,
            witnesses,
        } => {
            let mode = match mode {
                Mode::Labeled => CountMode::Labeled,
                Mode::Iso => CountMode::IsoClasses,
            };
            let mut q = EnumerationQuery::new(*n, parse_axiom_list(axioms)?, mode)
                .with_witnesses(*witnesses);
            if *allow_order5 {
                q = q.with_order5_override();
            }
            let report = enumerate(&q)?;
            Ok(Output::ok(if json_out {
                json_text(&json!({"schema": 1, "count": report}))
            } else {
                render_count(&report)
            }))
        }
        Command::Free {
            kind,
            n,
            max_len,
            legend,
        } => {
            let t = free_table(*kind, *n, *max_len)?;
            if let Some(path) = legend {
                fs::write(path, t.legend()).map_err(|e| {
                    Failure::Compute(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            if json_out {
                let elements: Vec<String> = t.elements.iter().map(|w| w.to_dotted()).collect();
                return Ok(Output::ok(json_text(&json!({
                    "schema": 1,
                    "kind": t.kind.name(),
                    "n": t.alphabet_size,
                    "elements": elements,
                    "table": t.magma.rows(),
                }))));
            }
            let mut out = format!("# {}({}), {} elements\n", t.kind, t.alphabet_size, t.len());
            for line in t.legend().lines() {
                out.push_str(&format!("# {line}\n"));
            }
            out.push_str(&t.magma.to_cay());
            Ok(Output::ok(out))
        }
        Command::Laver {
            k,
            transpose,
            annotate,
            zero_indexed,
        } => {
            let t = laver_build(*k)?;
            let m = if *transpose {
                t.transpose()
            } else {
                t.magma.clone()
            };
            let mut out = String::new();
            if *annotate {
                let s = laver_right_structure(*k)?;
                for line in s.render().lines() {
                    out.push_str(&format!("# {line}\n"));
                }
            }
            if json_out {
                let shift = usize::from(!*zero_indexed);
                let rows: Vec<Vec<usize>> = m
                    .rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| v + shift).collect())
                    .collect();
                return Ok(Output::ok(json_text(&json!({
                    "schema": 1,
                    "k": k,
                    "transpose": transpose,
                    "one_indexed": !zero_indexed,
                    "table": rows,
                }))));
            }
            out.push_str(&if *zero_indexed {
                m.to_cay()
            } else {
                cay_one_indexed(&m)
            });
            Ok(Output::ok(out))
        }
        Command::Spindle { spec } => {
            let spec: BlockSpec = read(spec)?.parse()?;
            let m = make_block_spindle(&spec)?;
            if json_out {
                return Ok(Output::ok(json_text(&json!({
                    "schema": 1,
                    "blocks": spec.sizes(),
                    "table": m.rows(),
                }))));
            }
            let mut out = String::new();
            for line in spec.to_string().lines() {
                out.push_str(&format!("# {line}\n"));
            }
            out.push_str(&m.to_cay());
            Ok(Output::ok(out))
        }
        Command::Homology {
            theory,
            q,
            reduced,
            matrix_out,
            file,
        } => {
            let m = read_magma(file)?;
            let theory = match theory {
                TheoryArg::OneTerm => Theory::OneTerm,
                TheoryArg::TwoTerm => Theory::TwoTerm,
            };
            if let Some(path) = matrix_out {
                let d = ChainComplex::new(&m, theory)?.boundary_matrix(*q)?;
                fs::write(path, d.to_triplets()).map_err(|e| {
                    Failure::Compute(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let g = homology(&m, theory, *q, *reduced)?;
            Ok(Output::ok(if format == Some(Format::Text) {
                let prefix = if *reduced { "reduced " } else { "" };
                format!("{prefix}{theory} H_{q} = {g}\n")
            } else {
                json_text(&g.to_json(theory, *q, *reduced))
            }))
        }
        Command::VerifyPaper { deep } => {
            let results = run_all(if *deep { Depth::Deep } else { Depth::Default });
            let ok = results.iter().all(|r| r.passed);
            let text = if json_out {
                let checks: Vec<Value> = results
                    .iter()
                    .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "details": r.details}))
                    .collect();
                json_text(&json!({"schema": 1, "deep": deep, "passed": ok, "checks": checks}))
            } else {
                let mut out = String::new();
                for r in &results {
                    out.push_str(&format!(
                        "[{}] {} {}\n",
                        if r.passed { "PASS" } else { "FAIL" },
                        r.id,
                        r.name
                    ));
                    for d in &r.details {
                        out.push_str(&format!("    {d}\n"));
                    }
                }
                let passed = results.iter().filter(|r| r.passed).count();
                out.push_str(&format!("{passed}/{} checks passed\n", results.len()));
                out
            };
            Ok(Output { text, ok })
        }
    }
}

/// Cache key over the subcommand, its parameters, the output format and the contents of
/// every input file. `None` for subcommands that are not cached.
fn cache_key(command: &Command, format: Option<Format>) -> Result<Option<String>, Failure> {
    let mut h = Sha256::new();
    h.update(b"shelflab-cache-v1\0");
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(format!("\0{format:?}\0").as_bytes());
    match command {
        Command::Axioms { file } => {
            h.update(b"axioms\0");
            h.update(read_magma(file)?.to_cay().as_bytes());
        }
        Command::Enumerate {
            n,
            axioms,
            mode,
            allow_order5,
            witnesses,
        } => {
            let set: Vec<&str> = parse_axiom_list(axioms)?.iter().map(|a| a.name()).collect();
            h.update(
                format!(
                    "enumerate\0{n}\0{}\0{mode:?}\0{allow_order5}\0{witnesses}",
                    set.join(",")
                )
                .as_bytes(),
            );
        }
        Command::Free {
            legend: Some(_), ..
        } => return Ok(None),
        Command::Free {
            kind,
            n,
            max_len,
            legend: None,
        } => {
            h.update(format!("free\0{kind:?}\0{n}\0{max_len}").as_bytes());
        }
        Command::Laver {
            k,
            transpose,
            annotate,
            zero_indexed,
        } => {
            h.update(format!("laver\0{k}\0{transpose}\0{annotate}\0{zero_indexed}").as_bytes());
        }
        Command::Spindle { spec } => {
            let spec: BlockSpec = read(spec)?.parse()?;
            h.update(b"spindle\0");
            h.update(spec.to_string().as_bytes());
        }
        Command::Homology {
            matrix_out: Some(_),
            ..
        } => return Ok(None),
        Command::Homology {
            theory,
            q,
            reduced,
            file,
            matrix_out: None,
        } => {
            h.update(format!("homology\0{theory:?}\0{q}\0{reduced}\0").as_bytes());
            h.update(read_magma(file)?.to_cay().as_bytes());
        }
        Command::VerifyPaper { .. } => return Ok(None),
    }
    Ok(Some(hex::encode(h.finalize())))
}

fn cached_execute(
    command: &Command,
    format: Option<Format>,
    err: &mut dyn Write,
) -> Result<Output, Failure> {
    let dir = std::env::var_os(CACHE_ENV)
        .filter(|d| !d.is_empty())
        .map(PathBuf::from);
    let key = match &dir {
        Some(_) => cache_key(command, format)?,
        None => None,
    };
    let (Some(dir), Some(key)) = (dir, key) else {
        return execute(command, format);
    };
    let path = dir.join(format!("{key}.out"));
    if let Ok(text) = fs::read_to_string(&path) {
        return Ok(Output::ok(text));
    }
    let output = execute(command, format)?;
    if output.ok {
        let written = fs::create_dir_all(&dir).and_then(|_| {
            let tmp = dir.join(format!("{key}.tmp{}", std::process::id()));
            fs::write(&tmp, &output.text)?;
            fs::rename(&tmp, &path)
        });
        if let Err(e) = written {
            let _ = writeln!(err, "warning: cache write to {} failed: {e}", dir.display());
        }
    }
    Ok(output)
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    if !cli.quiet {
        let _ = writeln!(err, "shelflab {}", env!("CARGO_PKG_VERSION"));
    }
    match cached_execute(&cli.command, cli.format, err) {
        Ok(output) => {
            if out
                .write_all(output.text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return 1;
            }
            if output.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("shelflab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["laver"]).0, 2);
        assert_eq!(
            run_capture(&["enumerate", "--n", "2", "--axioms", "nope"]).0,
            2
        );
        assert_eq!(run_capture(&["axioms", "/nonexistent/file.cay"]).0, 2);
    }

    #[test]
    fn bound_errors_exit_1() {
        let (code, _, err) = run_capture(&["-q", "laver", "--k", "11"]);
        assert_eq!(code, 1);
        assert!(err.contains("exceeds the bound"));
    }

    #[test]
    fn enumerate_trivial() {
        let (code, out, _) = run_capture(&[
            "-q",
            "enumerate",
            "--n",
            "1",
            "--axioms",
            "shelf,associative",
            "--mode",
            "iso",
        ]);
        assert_eq!(code, 0);
        assert!(
            out.starts_with("order 1 [shelf,associative] iso: 1\n"),
            "{out}"
        );
    }
}
