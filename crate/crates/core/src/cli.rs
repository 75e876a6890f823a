//! Command-line surface. One subcommand per engine capability, scriptable
//! output, stable ordering everywhere.
//!
//! Exit codes: 0 success/pass, 1 mathematical failure (inversion mismatch,
//! cancellation witness, condition-L violation), 2 usage or validation
//! error, 3 budget or overflow error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cancellativity::{self, Side};
use crate::divisibility::{self, ConditionLVerdict};
use crate::enumerate;
use crate::error::EngineError;
use crate::presentation::Presentation;
use crate::rewrite::{self, ClassTables, Element, Limits};
use crate::series;
use crate::towers;

#[derive(Parser)]
#[command(
    name = "monoid-growth",
    about = "Exact growth and skew-growth series for positive homogeneous monoid presentations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Growth series: counts elements of each degree.
    Growth(CommonArgs),
    /// Skew growth series via tower enumeration.
    Skew(CommonArgs),
    /// Check the inversion identity P(t) * N(t) = 1.
    Verify(CommonArgs),
    /// Minimal common multiples of a set of elements.
    Mcm {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated words, e.g. `b,c`.
        #[arg(long)]
        set: String,
    },
    /// List all towers realized within the degree bound.
    Towers(CommonArgs),
    /// Left-divisibility test between two elements.
    Divides {
        #[command(flatten)]
        common: CommonArgs,
        /// The candidate divisor word.
        #[arg(long)]
        left: String,
        /// The candidate multiple word.
        #[arg(long)]
        right: String,
    },
    /// Equivalence class of a word, or the full graded element table.
    Classes {
        #[command(flatten)]
        common: CommonArgs,
        /// Word whose class to list; omit for the whole graded table.
        #[arg(long)]
        word: Option<String>,
    },
    /// Bounded cancellativity check (left, right or both sides).
    Cancel {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Classify generator subsets by their minimal common multiples.
    #[command(name = "condition-l")]
    ConditionL(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Built-in presentation, `name` or `name:param` (e.g. `bii`, `gn:3`).
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Presentation file in the documented text format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Truncation bound for all degree-indexed output.
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Tower enumeration budget (stage subsets expanded).
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Hard cap on any word length the engine will touch.
    #[arg(long, default_value_t = 16)]
    degree_cap: usize,
    /// Most words allowed in a single degree (rank^degree).
    #[arg(long, default_value_t = 1 << 24)]
    word_budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

impl CommonArgs {
    fn limits(&self) -> Limits {
        Limits {
            degree_cap: self.degree_cap,
            word_budget: self.word_budget,
            tower_budget: self.budget,
        }
    }

    fn load(&self) -> Result<Presentation, String> {
        match (&self.preset, &self.file) {
            (Some(spec), None) => Presentation::preset_spec(spec).map_err(|e| e.to_string()),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "file".into());
                Presentation::parse(&text)
                    .map(|p| p.with_name(&name))
                    .map_err(|e| e.to_string())
            }
            _ => Err("exactly one of --preset or --file is required".into()),
        }
    }
}

fn error_code(e: &EngineError) -> i32 {
    match e {
        EngineError::WordBudgetExceeded { .. }
        | EngineError::TowerBudgetExceeded { .. }
        | EngineError::Overflow => 3,
        _ => 2,
    }
}

/// Runs one command. Regular output goes to `out`, diagnostics to `err`;
/// returns the process exit code.
pub fn run<W: Write, E: Write>(argv: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match &cli.command {
        Command::Growth(common) => cmd_growth(common, out),
        Command::Skew(common) => cmd_skew(common, out),
        Command::Verify(common) => cmd_verify(common, out),
        Command::Mcm { common, set } => cmd_mcm(common, set, out),
        Command::Towers(common) => cmd_towers(common, out),
        Command::Divides {
            common,
            left,
            right,
        } => cmd_divides(common, left, right, out),
        Command::Classes { common, word } => cmd_classes(common, word.as_deref(), out),
        Command::Cancel { common, side } => cmd_cancel(common, *side, out),
        Command::ConditionL(common) => cmd_condition_l(common, out),
    };
    match result {
        Ok(code) => code,
        Err(CmdError::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
        Err(CmdError::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
        // A closed pipe (e.g. piping into `head`) is not a failure.
        Err(CmdError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(CmdError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum CmdError {
    Usage(String),
    Engine(EngineError),
    Io(std::io::Error),
}

impl From<EngineError> for CmdError {
    fn from(e: EngineError) -> Self {
        CmdError::Engine(e)
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e)
    }
}

type CmdResult = Result<i32, CmdError>;

fn load(common: &CommonArgs) -> Result<Presentation, CmdError> {
    common.load().map_err(CmdError::Usage)
}

fn parse_word_arg(p: &Presentation, text: &str) -> Result<crate::presentation::Word, CmdError> {
    p.parse_word(text)
        .map_err(|e| CmdError::Usage(e.to_string()))
}

fn canonical_elem(tables: &ClassTables, p: &Presentation, text: &str) -> Result<Element, CmdError> {
    let word = parse_word_arg(p, text)?;
    Ok(tables.canonical_of_word(&word)?)
}

fn print_series<W: Write>(
    label: &str,
    p: &Presentation,
    s: &crate::series::TruncatedSeries,
    common: &CommonArgs,
    out: &mut W,
) -> Result<(), CmdError> {
    match common.format {
        Format::Json => {
            // Field order (truncation, coefficients) is part of the schema.
            writeln!(out, "{}", serde_json::to_string(s).expect("series to json"))?;
        }
        Format::Text => {
            writeln!(
                out,
                "{label} series for {}, exact through t^{}",
                p.name().unwrap_or("(unnamed)"),
                s.truncation
            )?;
            writeln!(out, "  {:?}", s.coefficients)?;
        }
    }
    Ok(())
}

fn cmd_growth<W: Write>(common: &CommonArgs, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let s = enumerate::growth_series(&p, common.max_degree, &common.limits())?;
    print_series("growth", &p, &s, common, out)?;
    Ok(0)
}

fn cmd_skew<W: Write>(common: &CommonArgs, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let s = towers::skew_growth(&p, common.max_degree, &common.limits())?;
    print_series("skew growth", &p, &s, common, out)?;
    Ok(0)
}

fn cmd_verify<W: Write>(common: &CommonArgs, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let report = series::verify_inversion(&p, common.max_degree, &common.limits())?;
    match common.format {
        Format::Json => {
            let doc = json!({
                "presentation": report.presentation,
                "max_degree": report.d_max,
                "growth": report.growth,
                "skew": report.skew,
                "product": report.product,
                "verdict": if report.pass { "pass" } else { "fail" },
                "first_failing_degree": report.first_failing_degree,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            if report.pass {
                writeln!(
                    out,
                    "inversion holds to t^{} for {}: P*N = 1",
                    report.d_max, report.presentation
                )?;
            } else {
                writeln!(
                    out,
                    "inversion FAILS for {} at degree {}",
                    report.presentation,
                    report.first_failing_degree.unwrap()
                )?;
            }
            writeln!(out, "  P: {:?}", report.growth.coefficients)?;
            writeln!(out, "  N: {:?}", report.skew.coefficients)?;
            writeln!(out, "  P*N: {:?}", report.product.coefficients)?;
        }
    }
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_mcm<W: Write>(common: &CommonArgs, set: &str, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let tables = ClassTables::build(&p, common.max_degree, &common.limits())?;
    let mut elements = Vec::new();
    for part in set.split(',') {
        elements.push(canonical_elem(&tables, &p, part)?);
    }
    if elements.is_empty() {
        return Err(CmdError::Usage("--set needs at least one word".into()));
    }
    let minimals = divisibility::mcm(&tables, &elements, common.max_degree)?;
    match common.format {
        Format::Json => {
            let doc = json!({
                "set": elements.iter().map(|e| p.format_word(e.canonical())).collect::<Vec<_>>(),
                "max_degree": common.max_degree,
                "mcm": minimals.iter().map(|e| json!({
                    "word": p.format_word(e.canonical()),
                    "degree": e.degree(),
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            writeln!(
                out,
                "minimal common multiples of {{{}}} within degree {}: {}",
                elements
                    .iter()
                    .map(|e| p.format_word(e.canonical()))
                    .collect::<Vec<_>>()
                    .join(", "),
                common.max_degree,
                minimals.len()
            )?;
            for m in &minimals {
                writeln!(
                    out,
                    "  {} (degree {})",
                    p.format_word(m.canonical()),
                    m.degree()
                )?;
            }
        }
    }
    Ok(0)
}

fn cmd_towers<W: Write>(common: &CommonArgs, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let tables = ClassTables::build(&p, common.max_degree, &common.limits())?;
    let towers = towers::enumerate_towers(&tables, common.max_degree)?;
    let words = |set: &[Element]| -> Vec<String> {
        set.iter().map(|e| p.format_word(e.canonical())).collect()
    };
    match common.format {
        Format::Json => {
            let docs: Vec<_> = towers
                .iter()
                .map(|t| {
                    json!({
                        "height": t.height(),
                        "stages": t.stages.iter().map(|s| words(s)).collect::<Vec<_>>(),
                        "top_mcm": words(t.top()),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(docs))?;
        }
        Format::Text => {
            writeln!(
                out,
                "{} towers within degree {} for {}",
                towers.len(),
                common.max_degree,
                p.name().unwrap_or("(unnamed)")
            )?;
            for t in &towers {
                let stages = t
                    .stages
                    .iter()
                    .map(|s| format!("{{{}}}", words(s).join(", ")))
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(
                    out,
                    "  height {}: stages [{}] top mcm {{{}}}",
                    t.height(),
                    stages,
                    words(t.top()).join(", ")
                )?;
            }
        }
    }
    Ok(0)
}

fn cmd_divides<W: Write>(common: &CommonArgs, left: &str, right: &str, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let left_word = parse_word_arg(&p, left)?;
    let right_word = parse_word_arg(&p, right)?;
    let d_needed = left_word.degree().max(right_word.degree());
    let tables = ClassTables::build(&p, d_needed, &common.limits())?;
    let u = tables.canonical_of_word(&left_word)?;
    let v = tables.canonical_of_word(&right_word)?;
    let verdict = divisibility::left_divides_in(&tables, &u, &v)?;
    match common.format {
        Format::Json => {
            let doc = json!({
                "left": p.format_word(u.canonical()),
                "right": p.format_word(v.canonical()),
                "verdict": verdict,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            writeln!(
                out,
                "{} left-divides {}: {}",
                p.format_word(u.canonical()),
                p.format_word(v.canonical()),
                verdict
            )?;
        }
    }
    Ok(0)
}

fn cmd_classes<W: Write>(common: &CommonArgs, word: Option<&str>, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let limits = common.limits();
    match word {
        Some(text) => {
            let w = parse_word_arg(&p, text)?;
            let members = rewrite::equivalence_class(&p, &w, &limits)?;
            let canonical = p.format_word(&members[0]);
            match common.format {
                Format::Json => {
                    let doc = json!({
                        "word": p.format_word(&w),
                        "degree": w.degree(),
                        "canonical": canonical,
                        "class": members.iter().map(|m| p.format_word(m)).collect::<Vec<_>>(),
                    });
                    writeln!(out, "{doc}")?;
                }
                Format::Text => {
                    writeln!(
                        out,
                        "class of {} (degree {}, canonical {}): {} words",
                        p.format_word(&w),
                        w.degree(),
                        canonical,
                        members.len()
                    )?;
                    for m in &members {
                        writeln!(out, "  {}", p.format_word(m))?;
                    }
                }
            }
        }
        None => {
            let table = enumerate::graded_elements(&p, common.max_degree, &limits)?;
            match common.format {
                Format::Json => {
                    let strata: Vec<_> = table
                        .strata
                        .iter()
                        .enumerate()
                        .map(|(d, stratum)| {
                            json!({
                                "degree": d,
                                "count": stratum.len(),
                                "elements": stratum
                                    .iter()
                                    .map(|e| p.format_word(e.canonical()))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let doc = json!({
                        "max_degree": table.d_max,
                        "strata": strata,
                    });
                    writeln!(out, "{doc}")?;
                }
                Format::Text => {
                    for (d, stratum) in table.strata.iter().enumerate() {
                        writeln!(out, "degree {d}: {} elements", stratum.len())?;
                        for e in stratum {
                            writeln!(out, "  {}", p.format_word(e.canonical()))?;
                        }
                    }
                }
            }
        }
    }
    Ok(0)
}

fn cmd_cancel<W: Write>(common: &CommonArgs, side: SideArg, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let limits = common.limits();
    let report = match side {
        SideArg::Left => cancellativity::left_cancellative_up_to(&p, common.max_degree, &limits)?,
        SideArg::Right => cancellativity::right_cancellative_up_to(&p, common.max_degree, &limits)?,
        SideArg::Both => cancellativity::cancellative_up_to(&p, common.max_degree, &limits)?,
    };
    let code = if report.no_counterexample() { 0 } else { 1 };
    match common.format {
        Format::Json => {
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "side": w.side.as_str(),
                    "generator": p.format_word(&w.generator),
                    "x": p.format_word(w.x.canonical()),
                    "y": p.format_word(w.y.canonical()),
                    "product": p.format_word(w.product.canonical()),
                    "degree": w.product.degree(),
                })
            });
            let doc = json!({
                "side": report.side.as_str(),
                "max_degree": report.d_max,
                "verdict": if code == 0 { "no-counterexample" } else { "counterexample" },
                "witness": witness,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            if let Some(w) = &report.witness {
                let (lhs_x, lhs_y) = match w.side {
                    Side::Right => (
                        format!(
                            "{} * {}",
                            p.format_word(w.x.canonical()),
                            p.format_word(&w.generator)
                        ),
                        format!(
                            "{} * {}",
                            p.format_word(w.y.canonical()),
                            p.format_word(&w.generator)
                        ),
                    ),
                    _ => (
                        format!(
                            "{} * {}",
                            p.format_word(&w.generator),
                            p.format_word(w.x.canonical())
                        ),
                        format!(
                            "{} * {}",
                            p.format_word(&w.generator),
                            p.format_word(w.y.canonical())
                        ),
                    ),
                };
                writeln!(
                    out,
                    "counterexample ({} side) at degree {}: {} = {} with {} != {}",
                    w.side.as_str(),
                    w.product.degree(),
                    lhs_x,
                    lhs_y,
                    p.format_word(w.x.canonical()),
                    p.format_word(w.y.canonical()),
                )?;
            } else {
                writeln!(
                    out,
                    "no counterexample up to degree {} ({} side{})",
                    report.d_max,
                    report.side.as_str(),
                    if report.side == Side::Both { "s" } else { "" }
                )?;
            }
        }
    }
    Ok(code)
}

fn cmd_condition_l<W: Write>(common: &CommonArgs, out: &mut W) -> CmdResult {
    let p = load(common)?;
    let tables = ClassTables::build(&p, common.max_degree, &common.limits())?;
    let report = divisibility::condition_l_report(&tables, common.max_degree)?;
    let violated = report.verdict == ConditionLVerdict::Violated;
    let words = |set: &[Element]| -> Vec<String> {
        set.iter().map(|e| p.format_word(e.canonical())).collect()
    };
    match common.format {
        Format::Json => {
            let doc = json!({
                "max_degree": report.d_max,
                "verdict": if violated { "violated" } else { "no-violation-found" },
                "witnesses": report.witnesses.iter().map(|w| json!({
                    "subset": words(&w.subset),
                    "minimals": w.minimals.iter().map(|m| json!({
                        "word": p.format_word(m.canonical()),
                        "degree": m.degree(),
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "undetermined": report.undetermined.iter().map(|s| words(s)).collect::<Vec<_>>(),
            });
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            writeln!(
                out,
                "condition L for {} up to degree {}: {}",
                p.name().unwrap_or("(unnamed)"),
                report.d_max,
                if violated {
                    "VIOLATED"
                } else {
                    "no violation found"
                }
            )?;
            for w in &report.witnesses {
                writeln!(
                    out,
                    "  subset {{{}}} has {} minimal common multiples: {}",
                    words(&w.subset).join(", "),
                    w.minimals.len(),
                    w.minimals
                        .iter()
                        .map(|m| format!("{} ({})", p.format_word(m.canonical()), m.degree()))
                        .collect::<Vec<_>>()
                        .join(", ")
                )?;
            }
            for s in &report.undetermined {
                writeln!(
                    out,
                    "  subset {{{}}}: no common multiple within the bound",
                    words(s).join(", ")
                )?;
            }
        }
    }
    Ok(if violated { 1 } else { 0 })
}
