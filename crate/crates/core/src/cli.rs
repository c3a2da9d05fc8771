//! The `wedgework` command line.
//!
//! Exit status: 0 on success with every requested check holding, 1 when a
//! check fails or a structure is invalid, 2 on usage or input errors.
//! `IN` arguments name a file, or `-` for standard input.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use crate::acc::{parse_structure, serialize_structure};
use crate::bounds::{
    audit_dirac, audit_pair_identity, audit_theorem3, dichotomy_report, dyadic_profile, Branch,
    Check, DyadicProfileParams, Margin, DEFAULT_SUBSET_BUDGET,
};
use crate::finite_plane::pg2;
use crate::incidence::{choose2, IncidenceStructure, Stats, StatsError};
use crate::kaleidoscope::{
    expand, family_wedge, gen_near_pencil, gen_pencil, gen_simple_cyclic, parse_wedge,
    serialize_wedge, WedgeSpec,
};
use crate::render::{render_arrangement, render_wedge, RenderOptions};

/// Environment variable overriding the coverage-search subset budget.
pub const BUDGET_ENV: &str = "WEDGEWORK_SUBSET_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "wedgework",
    version,
    about = "Dihedral pseudoline arrangements and incidence audits"
)]
pub struct Cli {
    /// Write the primary output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Suppress standard output; exit status still reports the outcome.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a structure (.acc) or a family wedge (.wedge).
    #[command(subcommand)]
    Gen(GenCommand),
    /// Unfold a .wedge into the .acc of its arrangement.
    Expand { input: String },
    /// Check the α-pair property, connectivity and vertex sizes.
    Validate { input: String },
    /// Print t_k, r and l_d.
    Stats {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run an exact inequality audit.
    Audit(AuditArgs),
    /// Draw a .wedge as SVG.
    #[command(subcommand)]
    Render(RenderCommand),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Member j of the kaleidoscope family (18j + 7 curves).
    Family {
        #[arg(long)]
        j: u32,
        /// Emit the folded wedge instead of the expanded structure.
        #[arg(long)]
        wedge: bool,
    },
    Pencil {
        #[arg(long)]
        n: usize,
    },
    NearPencil {
        #[arg(long)]
        n: usize,
    },
    Simple {
        #[arg(long)]
        n: usize,
    },
    /// Lines of PG(2, p): a seeded sample of n lines, or all of them.
    Pg2 {
        #[arg(long)]
        p: u32,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        n: Option<usize>,
        #[arg(long, default_value_t = 0, conflicts_with = "all")]
        seed: u64,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(subcommand)]
    pub kind: AuditKind,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum AuditKind {
    /// t_k against α·C(n,2)/C(k,2) and 2αn/k.
    Thm3 { input: String },
    /// g >= h and C(g,α)·h >= n - 1 when no α vertices cover every curve.
    Dirac { input: String },
    /// Σ_d l_d = C(n,2).
    Pairs { input: String },
    /// Split curve pairs by l_d against the window [2^v·n^γ, n/2^v].
    Dyadic {
        #[arg(long, value_parser = parse_ratio)]
        gamma: Ratio<u64>,
        #[arg(long)]
        v: u32,
        input: String,
    },
    /// Which of the complete-pencil, large-coverage, many-vertices cases hold.
    Dichotomy {
        #[arg(long, value_parser = parse_ratio)]
        fraction: Ratio<u64>,
        input: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum RenderCommand {
    /// The folded wedge.
    Wedge {
        input: String,
        #[command(flatten)]
        style: StyleArgs,
    },
    /// The unfolded arrangement, one polyline per curve.
    Arrangement {
        input: String,
        #[command(flatten)]
        style: StyleArgs,
    },
}

#[derive(Debug, Args)]
pub struct StyleArgs {
    /// Radius ratio between consecutive ranks.
    #[arg(long, value_parser = parse_ratio, default_value = "4/5")]
    pub ratio: Ratio<u64>,
    #[arg(long, default_value_t = 600)]
    pub canvas: u32,
    #[arg(long)]
    pub labels: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: u64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in `{s}`"))?;
    let b: u64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in `{s}`"))?;
    if b == 0 {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Ratio::new(a, b))
}

/// Outcome of a command: text for the primary output and an exit status.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

/// A failure reported on the error stream.
struct Failure {
    message: String,
    code: i32,
}

fn usage_error(message: impl ToString) -> Failure {
    Failure {
        message: message.to_string(),
        code: 2,
    }
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        message: message.to_string(),
        code: 1,
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
}

impl Io<'_> {
    fn read(&mut self, input: &str) -> Result<String, Failure> {
        let mut text = String::new();
        if input == "-" {
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| usage_error(format!("reading standard input: {e}")))?;
        } else {
            text = std::fs::read_to_string(Path::new(input))
                .map_err(|e| usage_error(format!("reading {input}: {e}")))?;
        }
        Ok(text)
    }

    fn structure(&mut self, input: &str) -> Result<IncidenceStructure, Failure> {
        let text = self.read(input)?;
        parse_structure(&text).map_err(|e| usage_error(format!("{input}: {e}")))
    }

    fn wedge(&mut self, input: &str) -> Result<WedgeSpec, Failure> {
        let text = self.read(input)?;
        parse_wedge(&text).map_err(|e| usage_error(format!("{input}: {e}")))
    }
}

fn stats_of(s: &IncidenceStructure) -> Result<Stats, Failure> {
    s.stats()
        .map_err(|StatsError::Invalid(report)| invalid(format!("invalid structure: {report}")))
}

fn budget() -> Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage_error(format!(
                "{BUDGET_ENV} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_SUBSET_BUDGET),
    }
}

fn push_checks(text: &mut String, checks: &[Check]) -> i32 {
    for c in checks {
        let _ = writeln!(text, "{c}");
    }
    if checks.iter().all(|c| c.holds) {
        0
    } else {
        1
    }
}

fn gen(cmd: GenCommand) -> Result<Outcome, Failure> {
    let structure = match cmd {
        GenCommand::Family { j, wedge } => {
            let w = family_wedge(j).map_err(usage_error)?;
            if wedge {
                return Ok(Outcome::ok(serialize_wedge(&w)));
            }
            expand(&w).map_err(invalid)?.structure
        }
        GenCommand::Pencil { n } => gen_pencil(n).map_err(usage_error)?,
        GenCommand::NearPencil { n } => gen_near_pencil(n).map_err(usage_error)?,
        GenCommand::Simple { n } => gen_simple_cyclic(n).map_err(usage_error)?,
        GenCommand::Pg2 { p, n, seed, all } => {
            let plane = pg2(p).map_err(usage_error)?;
            let ids = if all {
                (0..plane.line_count()).collect()
            } else {
                let n = n.expect("clap requires --n without --all");
                plane.sample_lines(n, seed).map_err(usage_error)?
            };
            plane
                .structure_from_lines(&ids, false)
                .map_err(usage_error)?
        }
    };
    Ok(Outcome::ok(serialize_structure(&structure)))
}

fn stats_text(st: &Stats, vertices: usize, format: Format) -> String {
    let mut t = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(
                t,
                "alpha={} n={} vertices={} r={}",
                st.alpha,
                st.n(),
                vertices,
                st.r
            );
            for (k, c) in &st.tk {
                let _ = writeln!(t, "t_{k}={c}");
            }
            for (d, c) in &st.ld {
                let _ = writeln!(t, "l_{d}={c}");
            }
        }
        Format::Machine => {
            let _ = writeln!(t, "STAT alpha {}", st.alpha);
            let _ = writeln!(t, "STAT n {}", st.n());
            let _ = writeln!(t, "STAT vertices {vertices}");
            let _ = writeln!(t, "STAT r {}", st.r);
            for (k, c) in &st.tk {
                let _ = writeln!(t, "STAT t {k} {c}");
            }
            for (d, c) in &st.ld {
                let _ = writeln!(t, "STAT l {d} {c}");
            }
        }
    }
    t
}

fn audit(args: AuditArgs, io: &mut Io) -> Result<Outcome, Failure> {
    let text_mode = args.format == Format::Text;
    let mut t = String::new();
    let code = match args.kind {
        AuditKind::Thm3 { input } => {
            let st = stats_of(&io.structure(&input)?)?;
            let report = audit_theorem3(&st);
            if text_mode {
                let _ = writeln!(
                    t,
                    "thm3 alpha={} n={} second bound from k={}",
                    report.alpha, report.n, report.threshold
                );
                for row in report.rows.iter().filter(|r| r.tk > 0) {
                    let _ = writeln!(
                        t,
                        "k={} t_k={} bound1={} {} bound2={} {}",
                        row.k,
                        row.tk,
                        row.bound1,
                        if row.holds1 { "ok" } else { "VIOLATED" },
                        row.bound2,
                        match (row.bound2_applicable, row.holds2) {
                            (false, _) => "n/a",
                            (true, true) => "ok",
                            (true, false) => "VIOLATED",
                        }
                    );
                }
            }
            push_checks(&mut t, &report.checks())
        }
        AuditKind::Dirac { input } => {
            let s = io.structure(&input)?;
            stats_of(&s)?;
            let report = audit_dirac(&s, budget()?).map_err(invalid)?;
            if text_mode {
                let _ = writeln!(
                    t,
                    "dirac alpha={} n={} g={} h={} witness={:?}",
                    report.alpha, report.n, report.g, report.h, report.witness_subset
                );
            }
            if report.hypothesis_holds {
                push_checks(&mut t, &report.checks())
            } else {
                let _ = writeln!(
                    t,
                    "NOTICE dirac hypothesis_violated {}/{}",
                    report.h, report.n
                );
                0
            }
        }
        AuditKind::Pairs { input } => {
            let st = stats_of(&io.structure(&input)?)?;
            push_checks(&mut t, &[audit_pair_identity(&st)])
        }
        AuditKind::Dyadic { gamma, v, input } => {
            let st = stats_of(&io.structure(&input)?)?;
            let w = dyadic_profile(&st, DyadicProfileParams { gamma, v }).map_err(usage_error)?;
            if text_mode {
                let _ = writeln!(
                    t,
                    "dyadic gamma={gamma} v={v} window=[{}, {}]{}",
                    w.lower,
                    w.upper,
                    if w.empty { " (empty)" } else { "" }
                );
                let _ = writeln!(t, "below={} inside={} above={}", w.below, w.inside, w.above);
            }
            let expected = choose2(st.n());
            let total = Check {
                name: "dyadic.total",
                holds: w.total() == expected,
                margin: Margin {
                    lhs: w.total() as u128,
                    rhs: expected as u128,
                },
            };
            push_checks(&mut t, &[total])
        }
        AuditKind::Dichotomy { fraction, input } => {
            let s = io.structure(&input)?;
            stats_of(&s)?;
            let report = dichotomy_report(&s, fraction, budget()?).map_err(|e| match e {
                crate::bounds::AuditError::FractionOutOfRange(_) => usage_error(e),
                _ => invalid(e),
            })?;
            for b in &report.branches {
                let _ = match b {
                    Branch::IsCompletePencil => writeln!(t, "BRANCH complete_pencil"),
                    Branch::LargeCoverage { witness, covered } => {
                        writeln!(t, "BRANCH large_coverage {covered} {witness:?}")
                    }
                    Branch::ManyVertices {
                        vertex_count,
                        ratio,
                    } => writeln!(t, "BRANCH many_vertices {vertex_count} {ratio}"),
                };
            }
            0
        }
    };
    Ok(Outcome { text: t, code })
}

fn dispatch(cli: Cli, io: &mut Io) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Gen(cmd) => gen(cmd),
        Command::Expand { input } => {
            let w = io.wedge(&input)?;
            let arr = expand(&w).map_err(invalid)?;
            Ok(Outcome::ok(serialize_structure(&arr.structure)))
        }
        Command::Validate { input } => {
            let report = io.structure(&input)?.validate();
            if report.valid() {
                Ok(Outcome::ok("valid\n".into()))
            } else {
                let mut t = String::new();
                for v in report.violations() {
                    let _ = writeln!(t, "violation: {v}");
                }
                Ok(Outcome { text: t, code: 1 })
            }
        }
        Command::Stats { input, format } => {
            let s = io.structure(&input)?;
            let st = stats_of(&s)?;
            Ok(Outcome::ok(stats_text(&st, s.vertex_count(), format)))
        }
        Command::Audit(args) => audit(args, io),
        Command::Render(cmd) => {
            let (input, style, whole) = match cmd {
                RenderCommand::Wedge { input, style } => (input, style, false),
                RenderCommand::Arrangement { input, style } => (input, style, true),
            };
            let w = io.wedge(&input)?;
            let opts = RenderOptions {
                canvas: style.canvas,
                ratio: style.ratio,
                show_labels: style.labels,
                ..RenderOptions::default()
            };
            let doc = if whole {
                render_arrangement(&w, &opts)
            } else {
                render_wedge(&w, &opts)
            };
            doc.map(Outcome::ok).map_err(|e| match e {
                crate::render::RenderError::Expand(_) => invalid(e),
                _ => usage_error(e),
            })
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit status.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    let out = cli.out.clone();
    let quiet = cli.quiet;
    let mut io = Io { stdin };
    match dispatch(cli, &mut io) {
        Ok(outcome) => {
            let written = match &out {
                Some(path) => std::fs::write(path, &outcome.text),
                None if quiet => Ok(()),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return 2;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
