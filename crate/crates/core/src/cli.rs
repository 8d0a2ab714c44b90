//! Command-line front end. [`run`] does all the work and returns the text to
//! print, so the binary is a thin wrapper and tests can drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::dfao::{Dfao, OutputKind};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numeration::greedy_urep_u64;
use crate::oracle::{estimate_c, Oracle, DEFAULT_ESTIMATE_CAP};
use crate::pipeline::{build, BuildOptions};
use crate::substitution::{
    parse_shorthand, parse_spec, ParrySubstitution, USequence, DEFAULT_SPECTRAL_TOL,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CONSTRAINT: u8 = 2;
pub const EXIT_BUILD: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

/// Exit status plus the text destined for stdout (`report`) and stderr (`diagnostics`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: u8,
    pub report: String,
    pub diagnostics: String,
}

impl CommandOutcome {
    fn ok(report: String) -> Self {
        CommandOutcome {
            exit_code: EXIT_OK,
            report,
            diagnostics: String::new(),
        }
    }

    fn failure(exit_code: u8, diagnostics: String) -> Self {
        CommandOutcome {
            exit_code,
            report: String::new(),
            diagnostics,
        }
    }
}

/// Exit code for a library error.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Syntax(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::ShapeMismatch(_)
        | Error::OutputUnavailable(_) => EXIT_USAGE,
        Error::Range(_)
        | Error::ConstraintViolation { .. }
        | Error::DigitRange { .. }
        | Error::EmptyInput
        | Error::UndefinedOutput { .. } => EXIT_CONSTRAINT,
        Error::ResourceLimit { .. }
        | Error::IndexOverflow { .. }
        | Error::ConstantsTooSmall(_)
        | Error::NumericalFailure { .. } => EXIT_BUILD,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "parry-ac",
    version,
    about = "Abelian complexity and balance automata for balanced Parry substitutions",
    after_help = "A <SPEC> is a shorthand (`simple:1,1`, `nonsimple:m=1,p=1:2,1`, `fibonacci`, \
                  `tribonacci`), an inline JSON document, or a path to one.\n\
                  Resource caps: PARRY_AC_MAX_PREFIX, PARRY_AC_MAX_STATES, PARRY_AC_MAX_TRIPLES."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Parry constraints and print the substitution.
    Validate { spec: String },
    /// Print the first N letters of the fixed point.
    Prefix {
        spec: String,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Print the greedy normal U-representation of N.
    Urep { spec: String, n: BigUint },
    /// Spectral balance check and empirical estimate of c.
    Balance {
        spec: String,
        /// Longest prefix scanned by the estimate.
        #[arg(long, default_value_t = DEFAULT_ESTIMATE_CAP)]
        cap: usize,
    },
    /// Construct the automaton and write it as JSON.
    Build(BuildArgs),
    /// Evaluate an automaton at N.
    Eval {
        automaton: PathBuf,
        n: BigUint,
        #[arg(long = "fn", default_value = "ac")]
        which: OutputKind,
    },
    /// Tab-separated table of AC(n) and B(n), optionally checked against brute force.
    Table {
        /// Automaton JSON, or a substitution to build with default options.
        source: String,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// Write the transition diagram in Graphviz format.
    Export {
        automaton: PathBuf,
        #[arg(long)]
        dot: PathBuf,
    },
}

#[derive(Debug, Args)]
struct BuildArgs {
    spec: String,
    /// Balance bound; estimated when omitted.
    #[arg(long)]
    c: Option<u32>,
    /// Added to c.
    #[arg(long, default_value_t = 0)]
    c_margin: u32,
    #[arg(long)]
    minimize: bool,
    /// Zero the timestamp for byte-identical output.
    #[arg(long)]
    reproducible: bool,
    /// Output path; stdout when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::failure(EXIT_USAGE, text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    let limits = Limits::from_env();
    match execute(cli.command, &limits) {
        Ok(outcome) => outcome,
        Err(e) => CommandOutcome::failure(exit_code_for(&e), format!("error: {e}\n")),
    }
}

fn execute(command: Command, limits: &Limits) -> Result<CommandOutcome> {
    match command {
        Command::Validate { spec } => {
            let sub = load_spec(&spec)?;
            sub.validate()?;
            let mut out = format!("ok: {}\n", sub.shorthand());
            for l in 0..sub.alphabet_size() {
                let _ = writeln!(out, "{l} -> {}", sub.image(l as u8));
            }
            Ok(CommandOutcome::ok(out))
        }
        Command::Prefix { spec, n } => {
            let sub = load_valid_spec(&spec)?;
            Ok(CommandOutcome::ok(format!(
                "{}\n",
                sub.fixed_point_prefix(n, limits)?
            )))
        }
        Command::Urep { spec, n } => {
            let sub = load_valid_spec(&spec)?;
            let useq = USequence::new(&sub);
            let rep = crate::numeration::greedy_urep(&useq, &n);
            Ok(CommandOutcome::ok(format!(
                "{}\n",
                rep.render(sub.alpha0())
            )))
        }
        Command::Balance { spec, cap } => {
            let sub = load_valid_spec(&spec)?;
            let report = sub.spectral_balance_check(DEFAULT_SPECTRAL_TOL)?;
            let est = estimate_c(&sub, cap, limits)?;
            let out = format!(
                "spectral: {:?} (dominant {:.9}, subdominant {:.9})\nc: {} ({:?}, scanned {} letters)\n",
                report.verdict,
                report.dominant_modulus,
                report.subdominant_modulus,
                est.c,
                est.status,
                est.scanned_len
            );
            Ok(CommandOutcome::ok(out))
        }
        Command::Build(args) => {
            let sub = load_valid_spec(&args.spec)?;
            let opts = BuildOptions {
                c: args.c,
                c_margin: args.c_margin,
                minimize: args.minimize,
                reproducible: args.reproducible,
                limits: *limits,
                ..BuildOptions::default()
            };
            let (dfao, report) = build(&sub, &opts)?;
            let json = dfao.to_json()?;
            let summary = format!(
                "c={} H={} L={} M={} iterations={} mem2={:?} triples={} final_states={} elapsed={:.3}s\n",
                report.consts.c,
                report.consts.h,
                report.consts.l,
                report.states,
                report.iterations,
                report.mem2_history,
                report.stored_triples,
                report.final_states,
                report.elapsed.as_secs_f64()
            );
            match args.output {
                Some(path) => {
                    fs::write(&path, json)?;
                    Ok(CommandOutcome::ok(summary))
                }
                None => Ok(CommandOutcome {
                    exit_code: EXIT_OK,
                    report: json,
                    diagnostics: summary,
                }),
            }
        }
        Command::Eval {
            automaton,
            n,
            which,
        } => {
            let dfao = load_automaton(&automaton)?;
            let useq = USequence::new(dfao.substitution());
            let v = dfao.eval_n(&useq, &n, which)?;
            Ok(CommandOutcome::ok(format!("{v}\n")))
        }
        Command::Table {
            source,
            from,
            to,
            oracle,
        } => table(&source, from, to, oracle, limits),
        Command::Export { automaton, dot } => {
            let dfao = load_automaton(&automaton)?;
            fs::write(&dot, dfao.to_dot())?;
            Ok(CommandOutcome::ok(format!(
                "wrote {} states to {}\n",
                dfao.num_states(),
                dot.display()
            )))
        }
    }
}

fn table(
    source: &str,
    from: u64,
    to: u64,
    with_oracle: bool,
    limits: &Limits,
) -> Result<CommandOutcome> {
    if from == 0 || from > to {
        return Err(Error::Range(format!(
            "need 1 ≤ from ≤ to, got {from}..{to}"
        )));
    }
    let dfao = match load_automaton_text(source)? {
        Some(dfao) => dfao,
        None => {
            let sub = load_valid_spec(source)?;
            let opts = BuildOptions {
                limits: *limits,
                ..BuildOptions::default()
            };
            build(&sub, &opts)?.0
        }
    };
    let sub = dfao.substitution().clone();
    let mut useq = USequence::new(&sub);
    useq.cover(&BigUint::from(to));
    let has_b = dfao.meta().outputs.contains(&OutputKind::Balance);
    let has_ac = dfao.meta().outputs.contains(&OutputKind::Ac);
    let rows: Vec<(String, Option<u32>, Option<u32>)> = (from..=to)
        .into_par_iter()
        .map(|n| {
            let rep = greedy_urep_u64(&useq, n);
            let ac = if has_ac {
                Some(dfao.eval_digits(&rep, OutputKind::Ac)?)
            } else {
                None
            };
            let b = if has_b {
                Some(dfao.eval_digits(&rep, OutputKind::Balance)?)
            } else {
                None
            };
            Ok((rep.render(sub.alpha0()), ac, b))
        })
        .collect::<Result<_>>()?;
    let truth = if with_oracle {
        let (from, to) = (usize_from(from)?, usize_from(to)?);
        Some(Oracle::new(&sub, *limits).prel_sets(from, to)?)
    } else {
        None
    };

    let cell = |v: Option<u32>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut out = String::from("n\turep\tac\tb");
    if with_oracle {
        out.push_str("\tac_oracle\tb_oracle\tmatch");
    }
    out.push('\n');
    let mut diagnostics = String::new();
    let mut mismatches = 0usize;
    for (i, (rep, ac, b)) in rows.iter().enumerate() {
        let n = from + i as u64;
        let mut line = format!("{n}\t{rep}\t{}\t{}", cell(*ac), cell(*b));
        if let Some(truth) = &truth {
            let (ac_o, b_o) = (truth[i].len() as u32, truth[i].balance());
            let ok = ac.is_none_or(|v| v == ac_o) && b.is_none_or(|v| v == b_o);
            let _ = write!(line, "\t{ac_o}\t{b_o}\t{}", if ok { "yes" } else { "no" });
            if !ok {
                mismatches += 1;
                let _ = writeln!(diagnostics, "mismatch: {line}");
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    if mismatches > 0 {
        let _ = writeln!(
            diagnostics,
            "{mismatches} of {} rows disagree with the oracle",
            rows.len()
        );
        return Ok(CommandOutcome {
            exit_code: EXIT_MISMATCH,
            report: out,
            diagnostics,
        });
    }
    Ok(CommandOutcome::ok(out))
}

fn usize_from(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::Range(format!("{n} does not fit in usize")))
}

/// Shorthand, preset name, inline JSON, or a path to a JSON document.
pub fn load_spec(arg: &str) -> Result<ParrySubstitution> {
    let arg = arg.trim();
    match arg {
        "fibonacci" => return Ok(ParrySubstitution::fibonacci()),
        "tribonacci" => return Ok(ParrySubstitution::tribonacci()),
        _ => {}
    }
    if arg.starts_with("simple:") || arg.starts_with("nonsimple:") {
        return parse_shorthand(arg);
    }
    if arg.starts_with('{') {
        return parse_spec(arg);
    }
    parse_spec(&read_file(Path::new(arg))?)
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_valid_spec(arg: &str) -> Result<ParrySubstitution> {
    let sub = load_spec(arg)?;
    sub.validate()?;
    Ok(sub)
}

fn load_automaton(path: &Path) -> Result<Dfao> {
    Dfao::from_json(&read_file(path)?)
}

/// An automaton when `source` is a path to (or the text of) an automaton document.
fn load_automaton_text(source: &str) -> Result<Option<Dfao>> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if Path::new(source).is_file() {
        read_file(Path::new(source))?
    } else {
        return Ok(None);
    };
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("format_version").is_some() {
        Ok(Some(Dfao::from_json(&text)?))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandOutcome {
        run(std::iter::once("parry-ac").chain(args.iter().copied()))
    }

    #[test]
    fn validate_reports_the_violated_constraint() {
        let out = run_args(&["validate", "simple:1,0"]);
        assert_eq!(out.exit_code, EXIT_CONSTRAINT);
        assert!(out.diagnostics.contains("α_{m−1}≥1"), "{}", out.diagnostics);
        let ok = run_args(&["validate", "fibonacci"]);
        assert_eq!(ok.exit_code, EXIT_OK);
        assert!(ok.report.contains("1 -> 0"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["frobnicate"]).exit_code, EXIT_USAGE);
        assert_eq!(run_args(&["validate", "simple:1,x"]).exit_code, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).exit_code, EXIT_OK);
    }

    #[test]
    fn urep_and_prefix() {
        assert_eq!(run_args(&["urep", "fibonacci", "12"]).report, "10101\n");
        assert_eq!(
            run_args(&["prefix", "fibonacci", "-n", "8"]).report,
            "01001010\n"
        );
    }
}
