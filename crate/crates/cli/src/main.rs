use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dendcat::anticyclic::diese;
use dendcat::export;
use dendcat::projective::projective_table;
use dendcat::verify::{self, Report, Suite};
use dendcat::{compose, enumerate_trees, over_elem, star, under_elem, DendElem, Tree};

const DEFAULT_MAX_DEGREE: usize = 6;
const MAX_DEGREE_CAP: usize = 9;

#[derive(Parser)]
#[command(
    name = "dendcat",
    version,
    about = "Trees, Tamari lattices and the dendriform operad"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List a family of objects of degree n with its count.
    Enumerate {
        kind: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply an operation to two elements and print the result as JSON.
    ///
    /// Arguments are tree literals such as "((o o) o)", the names unit,
    /// gauche and droite, element JSON, `sum:N` for the sum of all trees of
    /// degree N, or `@path` to read element JSON from a file.
    Compose {
        op: Op,
        left: String,
        right: String,
        /// Position for `circ`.
        #[arg(long, short, default_value_t = 1)]
        i: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run verification suites; exits with 1 if any check fails.
    Verify {
        /// Suite id or `all`.
        #[arg(value_name = "SUITE")]
        suite_arg: Option<String>,
        #[arg(value_name = "MAX_DEGREE")]
        max_degree_arg: Option<usize>,
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
        /// List the suites instead of running them.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write a structure as DOT, JSON or SVG.
    Export {
        object: Object,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Trees,
    Nct,
    Ncp,
    Projectives,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Circ,
    Star,
    Diese,
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Object {
    Hasse,
    Nct,
    Ncp,
    Theta,
    Tau,
    Projectives,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<dendcat::Error> for Failure {
    fn from(e: dendcat::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn lower(v: impl std::fmt::Debug) -> String {
    format!("{v:?}").to_lowercase()
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn emit(text: &str, output: Option<&PathBuf>) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
            Ok(())
        }
    }
}

fn enumerate(kind: Family, n: usize, format: Format) -> Outcome {
    let (items, lines): (Vec<Value>, Vec<String>) = match kind {
        Family::Trees => enumerate_trees(n)?.iter().map(|t| (json!(t), t.to_string())).unzip(),
        Family::Nct | Family::Ncp => export::plants(n, matches!(kind, Family::Ncp))?
            .iter()
            .map(|p| (json!(p), p.to_string()))
            .unzip(),
        Family::Projectives => projective_table(n)?
            .iter()
            .map(|p| (json!(p), format!("{}\t{}\t{}", p.x, p.nct, p.elem)))
            .unzip(),
    };
    let text = match format {
        Format::Json => pretty(&json!({ "n": n, "count": items.len(), "items": items })),
        Format::Text => {
            let mut s: String = lines.iter().map(|l| format!("{l}\n")).collect();
            s.push_str(&format!("count {}\n", lines.len()));
            s
        }
        f => return Err(usage(format!("enumerate supports json and text, not {}", lower(f)))),
    };
    emit(&text, None)
}

fn named_tree(s: &str) -> Option<&'static str> {
    match s {
        "unit" => Some("(o o)"),
        "gauche" => Some("((o o) o)"),
        "droite" => Some("(o (o o))"),
        _ => None,
    }
}

fn parse_element(arg: &str) -> Result<DendElem, Failure> {
    let s = arg.trim();
    if let Some(path) = s.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
        return parse_element(&text);
    }
    if let Some(n) = s.strip_prefix("sum:") {
        let n: usize = n.parse().map_err(|_| usage(format!("bad degree in `{s}`")))?;
        return Ok(DendElem::sum_all(n)?);
    }
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| usage(format!("bad element JSON: {e}")));
    }
    let tree: Tree = named_tree(s).unwrap_or(s).parse()?;
    if tree.is_leaf() {
        return Err(usage("the leaf is not an element of Dend"));
    }
    Ok(DendElem::basis(tree))
}

fn compose_cmd(op: Op, left: &str, right: &str, i: usize, format: Format) -> Outcome {
    let (a, b) = (parse_element(left)?, parse_element(right)?);
    let r = match op {
        Op::Circ => compose(&a, i, &b)?,
        Op::Star => star(&a, &b)?,
        Op::Diese => diese(&a, &b)?,
        Op::Over => over_elem(&a, &b)?,
        Op::Under => under_elem(&a, &b)?,
    };
    let text = match format {
        Format::Json => pretty(&json!(r)),
        Format::Text => format!("{r}\n"),
        f => return Err(usage(format!("compose supports json and text, not {}", lower(f)))),
    };
    emit(&text, None)
}

fn pick<T: PartialEq + std::fmt::Display>(name: &str, pos: Option<T>, flag: Option<T>) -> Result<Option<T>, Failure> {
    match (pos, flag) {
        (Some(a), Some(b)) if a != b => Err(usage(format!("{name} given twice: {a} and {b}"))),
        (a, b) => Ok(a.or(b)),
    }
}

fn verify_cmd(suite: Option<String>, max_degree: Option<usize>, list: bool, format: Format) -> Outcome {
    if list {
        let text: String = verify::SUITES
            .iter()
            .map(|s| format!("{:<24} cap {}  {}\n", s.id, s.cap, s.statement))
            .collect();
        return emit(&text, None);
    }
    let d = max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    if !(1..=MAX_DEGREE_CAP).contains(&d) {
        return Err(usage(format!("max degree must lie in 1..={MAX_DEGREE_CAP}")));
    }
    let suites: Vec<&'static Suite> = match suite.as_deref() {
        None | Some("all") => verify::SUITES.iter().collect(),
        Some(id) => {
            let chosen: Vec<&'static Suite> = if id.ends_with('.') || !id.contains('.') {
                let prefix = id.trim_end_matches('.');
                verify::SUITES
                    .iter()
                    .filter(|s| s.id.split('.').next() == Some(prefix))
                    .collect()
            } else {
                vec![verify::find_suite(id)?]
            };
            if chosen.is_empty() {
                return Err(dendcat::Error::UnknownSuite(id.to_string()).into());
            }
            chosen
        }
    };
    let report = verify::run_suites(&suites, d);
    let text = match format {
        Format::Json => pretty(&json!(report)),
        Format::Text => report_text(&report),
        f => return Err(usage(format!("verify supports json and text, not {}", lower(f)))),
    };
    emit(&text, None)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn report_text(report: &Report) -> String {
    let mut s = String::new();
    for r in &report.suites {
        let status = if r.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!(
            "{status} {:<24} d={} cases={} failed={}\n",
            r.id, r.d, r.cases, r.failed
        ));
        for f in &r.failures {
            s.push_str(&format!("    {f}\n"));
        }
        if let Some(e) = &r.error {
            s.push_str(&format!("    error: {e}\n"));
        }
    }
    let passed = report.suites.iter().filter(|r| r.passed).count();
    s.push_str(&format!("{passed}/{} suites passed\n", report.suites.len()));
    s
}

fn export_cmd(object: Object, n: usize, format: Format, output: Option<&PathBuf>) -> Outcome {
    let text = match (object, format) {
        (Object::Hasse, Format::Dot) => export::hasse_dot(n)?,
        (Object::Hasse, Format::Json) => pretty(&export::order_json(n)?),
        (Object::Nct | Object::Ncp, f) => {
            let list = export::plants(n, matches!(object, Object::Ncp))?;
            match f {
                Format::Json => pretty(&export::plants_json(n, &list)),
                Format::Dot => export::plants_dot(&list),
                Format::Svg => export::plants_svg(&list),
                Format::Text => return Err(usage("noncrossing plants export as json, dot or svg")),
            }
        }
        (Object::Theta, Format::Json) => pretty(&export::transform_json(n, false)?),
        (Object::Tau, Format::Json) => pretty(&export::transform_json(n, true)?),
        (Object::Projectives, Format::Json) => pretty(&export::projectives_json(n)?),
        (o, f) => return Err(usage(format!("cannot export {} as {}", lower(o), lower(f)))),
    };
    emit(&text, output)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Enumerate { kind, n, format } => enumerate(kind, n, format),
        Command::Compose {
            op,
            left,
            right,
            i,
            format,
        } => compose_cmd(op, &left, &right, i, format),
        Command::Verify {
            suite_arg,
            max_degree_arg,
            suite,
            max_degree,
            list,
            format,
        } => {
            let suite = pick("suite", suite_arg, suite)?;
            let max_degree = pick("max degree", max_degree_arg, max_degree)?;
            verify_cmd(suite, max_degree, list, format)
        }
        Command::Export {
            object,
            n,
            format,
            output,
        } => export_cmd(object, n, format, output.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("dendcat: {msg}");
            ExitCode::from(2)
        }
    }
}
