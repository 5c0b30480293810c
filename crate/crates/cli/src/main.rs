use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fingerhut_core::descent::descend;
use fingerhut_core::io::{
    self, eps_thm_from_env, generate, load_matching, load_points, points_to_csv, points_to_json,
    run_suite, Checks, Generator, InstanceMeta, InstanceSpec, IoError, PointFormat, Report,
    SuiteConfig, EXIT_INPUT, EXIT_OK, EXIT_SOLVER, EXIT_VERDICT,
};
use fingerhut_core::matching::{exact_max_sum, local_search};
use fingerhut_core::verify::{self, Verdict};
use fingerhut_core::{minimize_h, Matching, PointSet};

#[derive(Parser)]
#[command(
    name = "fingerhut",
    version,
    about = "Max-sum matchings and their common-ellipse witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Slack for the 2/sqrt(3) bound (defaults to TVERBERG_TOL or 1e-6).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Points format for reading and writing (inferred from the extension,
    /// otherwise CSV).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for PointFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => PointFormat::Csv,
            Format::Json => PointFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set.
    Gen {
        #[arg(long, default_value = "uniform-square")]
        generator: String,
        /// Total number of points (2n).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute a max-sum matching.
    Solve {
        points: PathBuf,
        /// Exact subset dynamic program (default).
        #[arg(long, conflicts_with = "local_search")]
        exact: bool,
        /// 2-opt local search from a random matching.
        #[arg(long)]
        local_search: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimize the ellipse ratio of a matching.
    Witness(MatchingArgs),
    /// Evaluate verdicts (all of them when no check is selected).
    Verify {
        #[command(flatten)]
        input: MatchingArgs,
        #[arg(long)]
        fingerhut: bool,
        #[arg(long)]
        theorem: bool,
        #[arg(long)]
        helly: bool,
        #[arg(long)]
        suri: bool,
        #[arg(long)]
        disks: bool,
    },
    /// Alternating-cycle descent from a given or random matching.
    Descend {
        points: PathBuf,
        /// Initial matching; a random one from --seed when omitted.
        #[arg(long)]
        matching: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw points, matching, ellipses and witness as SVG.
    Render(MatchingArgs),
    /// Batch run over generated instances.
    Suite {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        /// Largest total point count.
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "uniform-square")]
        generator: String,
        #[arg(long)]
        fingerhut: bool,
        #[arg(long)]
        helly: bool,
        #[arg(long)]
        suri: bool,
        #[arg(long)]
        disks: bool,
    },
}

#[derive(Args)]
struct MatchingArgs {
    points: PathBuf,
    /// Matching JSON; the exact max-sum matching when omitted.
    #[arg(long)]
    matching: Option<PathBuf>,
}

/// Anything wrong with the command line or its input files (exit code 2).
#[derive(Debug)]
struct Failure(String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure(e.to_string())
    }
}

fn input_err(e: impl ToString) -> Failure {
    Failure(e.to_string())
}

struct Ctx {
    eps: f64,
    out: Option<PathBuf>,
    format: Option<Format>,
}

impl Ctx {
    fn format_for(&self, path: Option<&Path>) -> PointFormat {
        self.format
            .map(PointFormat::from)
            .or_else(|| path.and_then(PointFormat::from_path))
            .unwrap_or(PointFormat::Csv)
    }

    fn load(&self, path: &Path) -> Result<PointSet, Failure> {
        Ok(load_points(path, self.format_for(Some(path)))?)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => fs::write(p, text).map_err(input_err),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_report(&self, r: &Report) -> Result<(), Failure> {
        self.emit(&(r.to_json() + "\n"))
    }

    fn matching(&self, s: &PointSet, path: Option<&Path>) -> Result<Matching, Failure> {
        match path {
            Some(p) => Ok(load_matching(p, s)?),
            None => exact_max_sum(s).map_err(input_err),
        }
    }
}

fn meta(s: &PointSet) -> InstanceMeta {
    InstanceMeta {
        generator: None,
        seed: None,
        count: s.len(),
    }
}

fn verdict_code(verdicts: &[Verdict], converged: bool) -> i32 {
    if !converged {
        EXIT_SOLVER
    } else if verdicts.iter().all(|v| v.passed) {
        EXIT_OK
    } else {
        EXIT_VERDICT
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let ctx = Ctx {
        eps: cli.tol.unwrap_or_else(eps_thm_from_env),
        out: cli.out,
        format: cli.format,
    };
    if !(ctx.eps.is_finite() && ctx.eps >= 0.0) {
        return Err(Failure(format!("invalid tolerance {}", ctx.eps)));
    }
    match cli.command {
        Command::Gen { generator, n, seed } => {
            let generator: Generator = generator.parse()?;
            let s = generate(&InstanceSpec {
                generator,
                count: n,
                seed,
            })?;
            let text = match ctx.format_for(ctx.out.as_deref()) {
                PointFormat::Csv => points_to_csv(&s),
                PointFormat::Json => points_to_json(&s) + "\n",
            };
            ctx.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            points,
            exact: _,
            local_search: local,
            seed,
        } => {
            let s = ctx.load(&points)?;
            let m = if local {
                local_search(&s, &Matching::random(&s, seed))
            } else {
                exact_max_sum(&s).map_err(input_err)?
            };
            ctx.emit(&(serde_json::to_string(&m).map_err(input_err)? + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Witness(args) => {
            let s = ctx.load(&args.points)?;
            let m = ctx.matching(&s, args.matching.as_deref())?;
            let w = minimize_h(&s, &m).map_err(input_err)?;
            let code = if w.converged { EXIT_OK } else { EXIT_SOLVER };
            ctx.emit_report(&Report {
                instance: meta(&s),
                matching: Some(m),
                witness: Some(w),
                verdicts: Vec::new(),
                trace: None,
            })?;
            Ok(code)
        }
        Command::Verify {
            input,
            fingerhut,
            theorem,
            helly,
            suri,
            disks,
        } => {
            let s = ctx.load(&input.points)?;
            let m = ctx.matching(&s, input.matching.as_deref())?;
            let w = minimize_h(&s, &m).map_err(input_err)?;
            let all = !(fingerhut || theorem || helly || suri || disks);
            let mut verdicts = Vec::new();
            let mut converged = w.converged;
            if all || fingerhut {
                verdicts
                    .push(verify::check_fingerhut(&s, &m, w.o_star, ctx.eps).map_err(input_err)?);
            }
            if all || theorem {
                let exact = exact_max_sum(&s).map_err(input_err)?;
                let we = minimize_h(&s, &exact).map_err(input_err)?;
                converged &= we.converged;
                verdicts.push(verify::theorem_verdict(&we, ctx.eps));
            }
            if all || helly {
                verdicts.push(verify::check_helly_triples(&s, &m, ctx.eps).map_err(input_err)?);
            }
            if all || suri {
                verdicts.push(verify::check_suri(&s, ctx.eps).map_err(input_err)?);
            }
            if all || disks {
                verdicts.push(verify::check_tverberg_disks(&s, &m).map_err(input_err)?);
            }
            let code = verdict_code(&verdicts, converged);
            ctx.emit_report(&Report {
                instance: meta(&s),
                matching: Some(m),
                witness: Some(w),
                verdicts,
                trace: None,
            })?;
            Ok(code)
        }
        Command::Descend {
            points,
            matching,
            seed,
        } => {
            let s = ctx.load(&points)?;
            let init = match matching {
                Some(p) => load_matching(&p, &s)?,
                None => Matching::random(&s, seed),
            };
            let out = descend(&s, &init, ctx.eps);
            let code = if out.is_flagged() {
                EXIT_SOLVER
            } else {
                EXIT_OK
            };
            if out.is_flagged() {
                eprintln!("descent flagged: {:?}", out.status);
            }
            ctx.emit_report(&Report {
                instance: meta(&s),
                matching: Some(out.matching),
                witness: out.witness,
                verdicts: Vec::new(),
                trace: Some(out.trace),
            })?;
            Ok(code)
        }
        Command::Render(args) => {
            let s = ctx.load(&args.points)?;
            let m = ctx.matching(&s, args.matching.as_deref())?;
            let w = minimize_h(&s, &m).ok();
            ctx.emit(&io::render_svg(&s, Some(&m), w.as_ref()))?;
            Ok(EXIT_OK)
        }
        Command::Suite {
            count,
            min_n,
            n,
            seed,
            generator,
            fingerhut,
            helly,
            suri,
            disks,
        } => {
            let config = SuiteConfig {
                count,
                min_size: min_n,
                max_size: n,
                seed,
                generator: generator.parse()?,
                checks: Checks {
                    theorem: true,
                    fingerhut,
                    helly,
                    suri,
                    disks,
                },
                eps_thm: ctx.eps,
            };
            let report = run_suite(&config);
            eprintln!(
                "{} passed, {} failed, {} skipped, {} non-converged",
                report.passed, report.failed, report.skipped, report.non_converged
            );
            ctx.emit(&(serde_json::to_string_pretty(&report).map_err(input_err)? + "\n"))?;
            Ok(report.exit_code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    };
    ExitCode::from(code as u8)
}
