//! `apxconv`: command-line front end for finite convergence approach spaces.
//!
//! Exit codes: 0 when every check passes, 1 on any violation, 2 on usage,
//! input or parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apxconv::checks::{self, Group};
use apxconv::format::{parse_space_file, render_space};
use apxconv::gen::{space_from_seed, SpaceKind};
use apxconv::ptfree::{lim_from_cap_bounded, FrameViolation, DEFAULT_MAX_LATTICE};
use apxconv::{CapSpace, Error, PointMap, QuantaleMode, VFunction};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

const MAX_POINTS: usize = 6;
const MAX_CHAIN: u32 = 8;
const LATTICE_ENV: &str = "APXCONV_MAX_LATTICE";

#[derive(Parser, Debug)]
#[command(name = "apxconv", version, about = "Finite convergence approach spaces")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    /// One check per line: name, PASS or FAIL, witness as JSON, tab separated.
    Lines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Reflector {
    Psap,
    Prap,
    Ap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FrameCheck {
    Vcap,
    Vprap,
    Vap,
    Closed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a space file and check the space axioms.
    Validate { space: PathBuf },
    /// Print structural properties, adherence and closure functions.
    Info { space: PathBuf },
    /// Print a reflection of the space as a space file.
    Reflect {
        space: PathBuf,
        #[arg(long, value_enum)]
        to: Reflector,
    },
    /// Adherence and closure function of a subset such as `{p,q}`.
    Closure {
        space: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Least contraction into V above the function in a file of `point=value` tokens.
    Hull {
        space: PathBuf,
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Run named law and theorem checks.
    #[command(group(ArgGroup::new("which").required(true).args(["laws", "theorems", "all"])))]
    Check {
        space: PathBuf,
        #[arg(long)]
        laws: bool,
        #[arg(long)]
        theorems: bool,
        #[arg(long)]
        all: bool,
    },
    /// Check that a map, one `x -> y` per line, is a contraction.
    Contraction {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Checks on the convergence frame V^X of a space.
    Frame {
        space: PathBuf,
        #[arg(long, value_enum)]
        check: FrameCheck,
    },
    /// Print a seeded random space file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        chain: u32,
        /// Pre-approach output.
        #[arg(long, conflicts_with = "ap")]
        prap: bool,
        /// Approach output, via the approach reflection.
        #[arg(long)]
        ap: bool,
    },
}

/// Failure of a command before a verdict could be reached.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

/// One line of a report.
struct Row {
    name: String,
    pass: bool,
    witness: Vec<(String, String)>,
    note: Option<String>,
}

#[derive(Default)]
struct Report {
    rows: Vec<Row>,
}

impl Report {
    fn push(&mut self, name: impl Into<String>, pass: bool, witness: Vec<(String, String)>, note: Option<String>) {
        self.rows.push(Row { name: name.into(), pass, witness, note });
    }

    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    fn render(&mut self, format: OutputFormat) -> String {
        self.rows.sort_by(|a, b| a.name.cmp(&b.name));
        let mut out = String::new();
        for r in &self.rows {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            match format {
                OutputFormat::Lines => {
                    let _ = writeln!(out, "{}\t{verdict}\t{}", r.name, witness_json(&r.witness));
                }
                OutputFormat::Text => {
                    let _ = write!(out, "{verdict}  {}", r.name);
                    if !r.witness.is_empty() {
                        let w: Vec<String> = r.witness.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                        let _ = write!(out, "  [{}]", w.join("; "));
                    }
                    if let Some(note) = &r.note {
                        let _ = write!(out, "  ({note})");
                    }
                    out.push('\n');
                }
            }
        }
        if format == OutputFormat::Text {
            let failed = self.rows.iter().filter(|r| !r.pass).count();
            let _ = writeln!(out, "{} checks, {} passed, {failed} failed", self.rows.len(), self.rows.len() - failed);
        }
        out
    }
}

fn witness_json(witness: &[(String, String)]) -> String {
    let map: serde_json::Map<String, serde_json::Value> =
        witness.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
    serde_json::Value::Object(map).to_string()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn check_bounds(points: usize, mode: QuantaleMode) -> Result<(), CliError> {
    if points > MAX_POINTS {
        return Err(CliError::Usage(format!("{points} points exceeds the bound of {MAX_POINTS}")));
    }
    if let QuantaleMode::Lukasiewicz(n) = mode {
        if n > MAX_CHAIN {
            return Err(CliError::Usage(format!("chain lukasiewicz {n} exceeds the bound of {MAX_CHAIN}")));
        }
    }
    Ok(())
}

/// Parses a space file; axiom violations stay as core errors so that they
/// count as violations rather than input errors.
fn load(path: &Path) -> Result<(Option<String>, CapSpace), CliError> {
    let text = read(path)?;
    match parse_space_file(&text) {
        Ok(file) => {
            check_bounds(file.space.len(), file.space.mode())?;
            Ok((file.name, file.space))
        }
        Err(e @ Error::Axiom(_)) => Err(CliError::Core(e)),
        Err(source) => Err(CliError::Input { path: path.display().to_string(), source }),
    }
}

fn max_lattice() -> Result<usize, CliError> {
    match std::env::var(LATTICE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{LATTICE_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_LATTICE),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(name: Option<String>, s: &CapSpace) -> String {
    let c = s.carrier();
    let mut out = String::new();
    if let Some(name) = name {
        let _ = writeln!(out, "space {name}");
    }
    let _ = writeln!(out, "mode {}\npoints {c}", s.mode());
    let _ = writeln!(out, "pseudo-approach {}", yes_no(s.is_psap()));
    let _ = writeln!(out, "pre-approach {}", yes_no(s.is_prap()));
    let _ = writeln!(out, "approach {}", yes_no(s.is_approach()));
    let _ = writeln!(out, "table");
    for line in s.render_table().lines() {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "adherence");
    let r = s.r_reflect();
    for a in c.nonempty_subsets() {
        let _ = writeln!(out, "  adh {} : {}", c.render(a), s.adh_set(a));
    }
    let _ = writeln!(out, "closure");
    for a in c.nonempty_subsets() {
        let closed = if r.is_closed(a) { "  r-closed" } else { "" };
        let _ = writeln!(out, "  cl {} : {}{closed}", c.render(a), s.closure_fn(a));
    }
    out
}

/// Output text and whether every verdict passed.
fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let format = cli.format;
    match cli.command {
        Command::Validate { space } => {
            let mut report = Report::default();
            match load(&space) {
                Ok(_) => report.push("axioms", true, Vec::new(), None),
                Err(CliError::Core(Error::Axiom(msg))) => {
                    report.push("axioms", false, vec![("violation".into(), msg)], None)
                }
                Err(e) => return Err(e),
            }
            let pass = report.passed();
            Ok((report.render(format), pass))
        }
        Command::Info { space } => {
            let (name, s) = load(&space)?;
            Ok((info(name, &s), true))
        }
        Command::Reflect { space, to } => {
            let (name, s) = load(&space)?;
            let (t, suffix) = match to {
                Reflector::Psap => (s.psap_reflection(), "psap"),
                Reflector::Prap => (s.prap_reflection(), "prap"),
                Reflector::Ap => (s.ap_reflection(), "ap"),
            };
            let name = name.map(|n| format!("{n}-{suffix}"));
            Ok((render_space(&t, name.as_deref()), true))
        }
        Command::Closure { space, set } => {
            let (_, s) = load(&space)?;
            let a = s.carrier().parse_subset(&set).map_err(|e| CliError::Usage(e.to_string()))?;
            let c = s.carrier();
            let cl = s.closure_fn(a);
            let mut out = String::new();
            let _ = writeln!(out, "adh {} : {}", c.render(a), s.adh_set(a));
            let _ = writeln!(out, "cl {} : {cl}", c.render(a));
            let _ = writeln!(out, "r-closed {}", yes_no(s.r_reflect().is_closed(a)));
            let _ = writeln!(out, "cl is an indicator {}", yes_no(cl == s.theta(cl.top_set())));
            Ok((out, true))
        }
        Command::Hull { space, function } => {
            let (_, s) = load(&space)?;
            let text = read(&function)?;
            let f = VFunction::parse(s.carrier(), s.mode(), &text)
                .map_err(|source| CliError::Input { path: function.display().to_string(), source })?;
            let h = s.hull(&f)?;
            let mut out = String::new();
            let _ = writeln!(out, "f : {f}");
            let _ = writeln!(out, "hull : {h}");
            let _ = writeln!(out, "f continuous {}", yes_no(s.is_continuous_to_v(&f)?));
            Ok((out, true))
        }
        Command::Check { space, laws, theorems, all } => {
            let (_, s) = load(&space)?;
            let group = match (laws, theorems, all) {
                (_, _, true) | (true, true, _) => None,
                (true, false, false) => Some(Group::Law),
                _ => Some(Group::Theorem),
            };
            let mut report = Report::default();
            for o in checks::run_bounded(&s, group, max_lattice()?) {
                report.push(o.name, o.pass, o.witness, o.note);
            }
            let pass = report.passed();
            Ok((report.render(format), pass))
        }
        Command::Contraction { map, from, to } => {
            let (_, x) = load(&from)?;
            let (_, y) = load(&to)?;
            let text = read(&map)?;
            let f = PointMap::parse(x.carrier(), y.carrier(), &text)
                .map_err(|source| CliError::Input { path: map.display().to_string(), source })?;
            let r = CapSpace::contraction_report(&f, &x, &y)?;
            let mut report = Report::default();
            let w = |v: Option<(apxconv::Subset, usize)>, set_carrier: &apxconv::Carrier| match v {
                None => Vec::new(),
                Some((b, p)) => vec![("set".to_string(), set_carrier.render(b)), ("x".to_string(), x.carrier().name(p).to_string())],
            };
            report.push("contraction", r.is_contraction(), w(r.violation, x.carrier()), None);
            // The preimage inequalities are consequences of being a contraction.
            let implied = |v: Option<(apxconv::Subset, usize)>| {
                let note = (v.is_some() && !r.is_contraction()).then(|| "not implied: map is not a contraction".to_string());
                (v.is_none() || !r.is_contraction(), w(v, y.carrier()), note)
            };
            let (pass, witness, note) = implied(r.adh_preimage_violation);
            report.push("preimage.adherence", pass, witness, note);
            let (pass, witness, note) = implied(r.closure_preimage_violation);
            report.push("preimage.closure", pass, witness, note);
            report.push(
                "verdicts.consistent",
                r.consistent(),
                Vec::new(),
                Some(format!(
                    "codomain pre-approach {}, approach {}",
                    yes_no(r.codomain_prap),
                    yes_no(r.codomain_approach)
                )),
            );
            let pass = report.passed();
            Ok((report.render(format), pass))
        }
        Command::Frame { space, check } => {
            let (_, s) = load(&space)?;
            let frame = lim_from_cap_bounded(&s, max_lattice()?).map_err(|e| CliError::Usage(e.to_string()))?;
            let c = s.carrier();
            let convention = Some("Lim(⊥) is taken to be top".to_string());
            let mut report = Report::default();
            match check {
                FrameCheck::Closed => {
                    let r = s.r_reflect();
                    let closed = frame.closed_elements();
                    for a in c.subsets() {
                        let theta = s.theta(a);
                        let in_frame = closed.contains(&theta);
                        report.push(
                            format!("closed {}", c.render(a)),
                            in_frame == r.is_closed(a),
                            vec![("frame".into(), yes_no(in_frame).into()), ("r-closed".into(), yes_no(r.is_closed(a)).into())],
                            None,
                        );
                    }
                    report.push(
                        "closed.indicators_only",
                        closed.iter().all(|l| *l == s.theta(l.top_set())),
                        Vec::new(),
                        convention,
                    );
                }
                _ => {
                    let (name, violation) = match check {
                        FrameCheck::Vcap => ("frame.vcap", frame.vcap_violation()),
                        FrameCheck::Vprap => ("frame.vprap", frame.vprap_violation()),
                        _ => ("frame.vap", frame.vap_violation()),
                    };
                    let witness = match &violation {
                        None => Vec::new(),
                        Some(FrameViolation::NotStarStarRegular { m }) => vec![("m".into(), m.render())],
                        Some(FrameViolation::NotCentered { l, x }) => {
                            vec![("l".into(), l.render()), ("x".into(), c.name(*x).into())]
                        }
                        Some(FrameViolation::NotPrap { m1, m2, x }) => vec![
                            ("m1".into(), m1.render()),
                            ("m2".into(), m2.render()),
                            ("x".into(), c.name(*x).into()),
                        ],
                        Some(FrameViolation::NotAp { f, g, x }) => vec![
                            ("f".into(), f.render()),
                            ("g".into(), g.render()),
                            ("x".into(), c.name(*x).into()),
                        ],
                    };
                    report.push(name, violation.is_none(), witness, convention);
                }
            }
            let pass = report.passed();
            Ok((report.render(format), pass))
        }
        Command::Gen { seed, points, chain, prap, ap } => {
            if points == 0 {
                return Err(CliError::Usage("--points must be at least 1".into()));
            }
            if chain == 0 {
                return Err(CliError::Usage("--chain must be at least 1".into()));
            }
            check_bounds(points, QuantaleMode::Lukasiewicz(chain))?;
            let kind = if ap {
                SpaceKind::Ap
            } else if prap {
                SpaceKind::Prap
            } else {
                SpaceKind::Plain
            };
            let s = space_from_seed(seed, points, chain, kind)?;
            Ok((render_space(&s, Some(&format!("gen-{seed}"))), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Core(Error::Axiom(msg))) => {
            eprintln!("axiom violation: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
