//! Command-line front end. [`run`] does all the work so the binary stays a
//! one-liner and tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::Rational;
use crate::boxsolver::{solve_with_mode, BoxSet, FloorSystem, OrderingMode};
use crate::error::Error;
use crate::singularity::{enumerate, mld, CyclicQuotient, EnumerateOptions, Level};
use crate::theorems::{self, TheoremReport, GAP3D_DEFAULT_R_MAX, GAP5D_DEFAULT_R_MAX};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BREACH: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ordering {
    PerStep,
    AtEnd,
}

#[derive(Debug, Parser)]
#[command(
    name = "mldlab",
    version,
    about = "Minimal log discrepancies of cyclic quotient singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "MLDLAB_JOBS")]
    jobs: Option<usize>,
    /// Output format; `mld` defaults to text, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal log discrepancy of 1/r(a_1, ..., a_d).
    Mld {
        #[arg(long)]
        r: u64,
        /// Comma-separated positive integers.
        #[arg(long)]
        weights: String,
    },
    /// List the members of a special set of 5-dimensional singularities.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        level: u8,
        /// Keep only mld > 2 - eps, given as "p/q".
        #[arg(long)]
        eps: Option<Rational>,
        #[arg(long, default_value_t = 1)]
        r_min: u64,
        #[arg(long)]
        r_max: u64,
        /// Keep only singularities whose mld is sum(a_i)/r.
        #[arg(long)]
        bar: bool,
    },
    /// Solve a floor-sum system given as JSON.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "per-step")]
        ordering: Ordering,
    },
    /// Run verification checks by id, or `all`.
    Verify {
        #[arg(required = true)]
        ids: Vec<String>,
        #[arg(long, default_value_t = GAP3D_DEFAULT_R_MAX)]
        gap3d_r_max: u64,
        #[arg(long, default_value_t = GAP5D_DEFAULT_R_MAX)]
        gap5d_r_max: u64,
        /// Report runtime_ms as 0 so output is byte-for-byte reproducible.
        #[arg(long)]
        no_timings: bool,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantBreach(_) => EXIT_BREACH,
        _ => EXIT_USAGE,
    }
}

fn parse_weights(s: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<u64>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Parse(format!(
                    "weight `{t}` is not a positive integer"
                ))),
            }
        })
        .collect()
}

/// Result of a command: the artifact to print and the exit code.
struct Outcome {
    body: String,
    code: i32,
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("artifacts serialise");
    s.push('\n');
    s
}

fn boxes_text(bs: &BoxSet) -> String {
    let mut s = String::new();
    for b in bs.boxes() {
        s.push_str(&format!("{b}\n"));
    }
    if bs.is_empty() {
        s.push_str("no solutions\n");
    }
    s
}

fn reports_text(reports: &[TheoremReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let status = serde_json::to_value(r.status).expect("status serialises");
        s.push_str(&format!(
            "{} {} {} ms\n",
            r.id,
            status.as_str().unwrap_or("?"),
            r.runtime_ms
        ));
        for d in &r.discrepancies {
            s.push_str(&format!("  {d}\n"));
        }
    }
    s
}

fn execute(cli: &Cli, err: &mut (dyn Write + Send)) -> Result<Outcome, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Mld { r, weights } => {
            let cq = CyclicQuotient::new(*r, parse_weights(weights)?)?;
            let m = mld(&cq);
            let body = match format.unwrap_or(Format::Text) {
                Format::Text => {
                    let w: Vec<String> = m.witnesses.iter().map(u64::to_string).collect();
                    format!("{}, j={}\n", m.value, w.join(","))
                }
                Format::Json => json(&serde_json::json!({"singularity": cq, "mld": m})),
            };
            Ok(Outcome {
                body,
                code: EXIT_OK,
            })
        }
        Command::Enumerate {
            level,
            eps,
            r_min,
            r_max,
            bar,
        } => {
            let opts = EnumerateOptions {
                level: Level::try_from(*level)?,
                eps: eps.clone(),
                r_min: *r_min,
                r_max: *r_max,
                bar: *bar,
            };
            let found = enumerate(&opts)?;
            let _ = writeln!(err, "enumerate: {} members", found.len());
            let body = match format.unwrap_or(Format::Json) {
                Format::Json => json(&found),
                Format::Text => found
                    .iter()
                    .map(|f| {
                        let bar = if f.membership.bar { " bar" } else { "" };
                        format!("{} mld={}{bar}\n", f.singularity, f.membership.mld)
                    })
                    .collect(),
            };
            Ok(Outcome {
                body,
                code: EXIT_OK,
            })
        }
        Command::Solve { path, ordering } => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let sys: FloorSystem = serde_json::from_str(&src)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let mode = match ordering {
                Ordering::PerStep => OrderingMode::PerStep,
                Ordering::AtEnd => OrderingMode::AtEnd,
            };
            let out = solve_with_mode(&sys, mode).normalize()?;
            let _ = writeln!(err, "solve: {} boxes", out.len());
            let body = match format.unwrap_or(Format::Json) {
                Format::Json => json(&out),
                Format::Text => boxes_text(&out),
            };
            Ok(Outcome {
                body,
                code: EXIT_OK,
            })
        }
        Command::Verify {
            ids,
            gap3d_r_max,
            gap5d_r_max,
            no_timings,
        } => {
            let ids = theorems::resolve_ids(ids)?;
            let mut reports = Vec::new();
            for id in ids {
                let mut rep = match id {
                    "gap3d" => theorems::gap_threefold(*gap3d_r_max)?,
                    "gap5d" => theorems::gap_isolated_5d(*gap5d_r_max)?,
                    _ => theorems::run(id)?,
                };
                let status = serde_json::to_value(rep.status).expect("status serialises");
                let _ = writeln!(
                    err,
                    "verify {id}: {} ({} ms)",
                    status.as_str().unwrap_or("?"),
                    rep.runtime_ms
                );
                if *no_timings {
                    rep.runtime_ms = 0;
                }
                reports.push(rep);
            }
            let code = if reports.iter().all(TheoremReport::verified) {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let body = match format.unwrap_or(Format::Json) {
                Format::Json => json(&reports),
                Format::Text => reports_text(&reports),
            };
            Ok(Outcome { body, code })
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the artifact to `out` or the `--output` file. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        let _ = writeln!(err, "error: --jobs must be at least 1");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {jobs} workers: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match pool.install(|| execute(&cli, err)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.body),
        None => out.write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["mldlab"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn mld_text_output() {
        assert_eq!(
            call(&["mld", "--r", "13", "--weights", "3,4,5"]).1,
            "12/13, j=1\n"
        );
        assert!(call(&["mld", "--r", "19", "--weights", "3,4,5,7,18"])
            .1
            .starts_with("37/19"));
        assert!(call(&["mld", "--r", "1", "--weights", "1,1,1"])
            .1
            .starts_with("3,"));
    }

    #[test]
    fn mld_rejects_malformed_weights() {
        for w in ["3,x,5", "3,0,5", "3,-4,5", "", "3.5"] {
            assert_eq!(
                call(&["mld", "--r", "13", "--weights", w]).0,
                EXIT_USAGE,
                "{w}"
            );
        }
        assert_eq!(
            call(&["mld", "--r", "13", "--weights", "3,14"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "bogus"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["enumerate", "--level", "6", "--r-max", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["enumerate", "--level", "1", "--r-min", "5", "--r-max", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["enumerate", "--level", "1", "--eps", "0.5", "--r-max", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            call(&["--jobs", "0", "mld", "--r", "2", "--weights", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn enumerate_trivial_range() {
        let (code, out, _) = call(&[
            "enumerate",
            "--level",
            "1",
            "--eps",
            "1",
            "--r-min",
            "1",
            "--r-max",
            "1",
        ]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(
            serde_json::from_str::<serde_json::Value>(&out).unwrap(),
            serde_json::json!([])
        );
    }

    #[test]
    fn verify_quick_ids() {
        let (code, out, err) = call(&["verify", "a6", "lemma62", "--format", "text"]);
        assert_eq!(code, EXIT_OK, "{err}");
        assert!(out.starts_with("a6 verified"));
        assert!(err.contains("verify lemma62"));
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(
            exit_code(&Error::InvariantBreach("overlap".into())),
            EXIT_BREACH
        );
        assert_eq!(exit_code(&Error::Parse("x".into())), EXIT_USAGE);
        assert_eq!(exit_code(&Error::InvalidSystem("x".into())), EXIT_USAGE);
    }
}
