//! `jetmetric`: jets, isomorphism verdicts, deformation distances and
//! Hilbert-Samuel invariants of presented algebras, reported as JSON.
//!
//! Exit status is 0 on success, 1 when the computation fails (the report
//! then carries a typed `error`), 2 on usage errors.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jetmetric::artin::{defpair_jet, jet, ArtinAlgebra};
use jetmetric::hilbert::{default_prefix_len, euler_characteristic, hilbert_data_local, hilbert_series};
use jetmetric::iso::Budget;
use jetmetric::metric::{defpair_distance, jet_distance, limit_jets};
use jetmetric::presentation::{FamilyTemplate, Presentation};
use jetmetric::resolution::{betti_residue_field, betti_residue_field_graded, depth_and_classify, resolve_quotient};
use jetmetric::slopes::{
    delta0_from_lengths, eps0_from_lengths, quasi_dimension, rho, slope_trace, SlopeKind,
};
use jetmetric::{hilbert, Error};

use report::{Input, Report};

#[derive(Parser)]
#[command(name = "jetmetric", version, about = "Jets and deformation distances of local and graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct SearchArgs {
    /// Largest coefficient-field extension factor for isomorphism search.
    #[arg(long, default_value_t = 1)]
    ext: u32,
    /// Search nodes per direction and field.
    #[arg(long, default_value_t = 1_000_000)]
    effort: u64,
    /// Only degree-preserving maps (for graded inputs).
    #[arg(long)]
    graded: bool,
}

impl SearchArgs {
    fn budget(&self) -> Budget {
        Budget {
            ext_degree_max: self.ext,
            effort: self.effort,
            graded: self.graded,
        }
    }

    fn record(&self, r: &mut Report) {
        r.param("ext", self.ext);
        r.param("effort", self.effort);
        r.param("graded", self.graded);
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Delta0,
    Eps0,
    Rho,
    Quasidim,
    Trace,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceKind {
    Delta0,
    Eps0,
    Hilbert,
}

#[derive(Subcommand)]
enum Command {
    /// The jet R/m^n (or R/x^[n] with --defpair).
    Jets {
        file: PathBuf,
        #[arg(short = 'n', long)]
        order: u32,
        #[arg(long)]
        defpair: bool,
    },
    /// Hilbert series and Hilbert-Samuel polynomial.
    Hilbert {
        file: PathBuf,
        /// Series prefix length for graded inputs.
        #[arg(short = 'n', long)]
        order: Option<usize>,
        /// Fitting window a..b for local inputs.
        #[arg(long, value_parser = parse_range_u32, default_value = "1..12")]
        window: (u32, u32),
    },
    /// Certified distance interval between two presentations.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_order: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Distance between deformation pairs (presentations with tuples).
    DefpairDistance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_order: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Quasi-slopes: delta0, eps0, rho, the rounding certificate or a trace.
    Slopes {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
        /// Jet order for delta0 and eps0.
        #[arg(short = 'n', long)]
        order: Option<u32>,
        /// Comma-separated orders for --which trace.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u32>,
        #[arg(long, value_enum, default_value = "delta0")]
        slope: TraceKind,
    },
    /// Minimal free resolution of S/I, or Betti numbers of the residue field.
    Resolve {
        file: PathBuf,
        /// Resolve the residue field instead of S/I.
        #[arg(long)]
        residue: bool,
        /// Homological cap for residue-field resolutions.
        #[arg(long, default_value_t = 6)]
        hcap: usize,
        /// Internal degree cap for graded residue-field resolutions.
        #[arg(long)]
        cap: Option<u32>,
        /// Jet order, for residue fields of local presentations.
        #[arg(short = 'n', long)]
        order: Option<u32>,
    },
    /// Depth, dimension and the regular / CM / Gorenstein flags.
    Classify { file: PathBuf },
    /// Euler characteristic and, for curves, the genus.
    Euler { file: PathBuf },
    /// Eventually constant n-th jet along a parameterized family.
    Limit {
        #[arg(long)]
        template: PathBuf,
        #[arg(long, value_parser = parse_range_i64)]
        range: (i64, i64),
        #[arg(short = 'n', long)]
        order: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn split_range(s: &str) -> Result<(&str, &str), String> {
    s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))
}

fn parse_range_u32(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = split_range(s)?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

fn parse_range_i64(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = split_range(s)?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

/// Failures before a report exists: unreadable files.
struct Usage(String);

fn read(path: &Path) -> Result<Input, Usage> {
    Input::read(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn parse(input: &Input) -> jetmetric::Result<Presentation> {
    Presentation::parse(&input.text)
}

fn finish(report: Report, result: jetmetric::Result<Value>) -> (Value, bool) {
    match result {
        Ok(v) => (report.success(v), true),
        Err(e) => (report.failure(&e), false),
    }
}

fn jet_lengths_for(p: &Presentation, n: u32) -> jetmetric::Result<Vec<u64>> {
    hilbert::jet_lengths(p, n)
}

fn run(cmd: Command) -> Result<(Value, bool), Usage> {
    Ok(match cmd {
        Command::Jets { file, order, defpair } => {
            let input = read(&file)?;
            let mut r = Report::new("jets", &[&input]);
            r.param("order", order);
            r.param("defpair", defpair);
            let result = parse(&input).and_then(|p| {
                let a: ArtinAlgebra = if defpair { defpair_jet(&p, order)? } else { jet(&p, order)? };
                Ok(report::algebra(&a))
            });
            finish(r, result)
        }
        Command::Hilbert { file, order, window } => {
            let input = read(&file)?;
            let mut r = Report::new("hilbert", &[&input]);
            let p = parse(&input);
            let result = p.and_then(|p| {
                let hd = if p.is_graded() {
                    let n = order.unwrap_or_else(|| default_prefix_len(&p).max(12));
                    r.param("order", n);
                    hilbert_series(&p, n)?
                } else {
                    r.param("window", format!("{}..{}", window.0, window.1));
                    hilbert_data_local(&p, window.0, window.1)?
                };
                Ok(serde_json::to_value(&hd).expect("serializable"))
            });
            finish(r, result)
        }
        Command::Distance { a, b, max_order, search } => {
            let (ia, ib) = (read(&a)?, read(&b)?);
            let mut r = Report::new("distance", &[&ia, &ib]);
            r.param("max_order", max_order);
            search.record(&mut r);
            let result = parse(&ia).and_then(|p| {
                let q = parse(&ib)?;
                Ok(report::distance(&jet_distance(&p, &q, max_order, &search.budget())?))
            });
            finish(r, result)
        }
        Command::DefpairDistance { a, b, max_order, search } => {
            let (ia, ib) = (read(&a)?, read(&b)?);
            let mut r = Report::new("defpair-distance", &[&ia, &ib]);
            r.param("max_order", max_order);
            search.record(&mut r);
            let result = parse(&ia).and_then(|p| {
                let q = parse(&ib)?;
                Ok(report::distance(&defpair_distance(&p, &q, max_order, &search.budget())?))
            });
            finish(r, result)
        }
        Command::Slopes { file, which, order, orders, slope } => {
            let input = read(&file)?;
            let mut r = Report::new("slopes", &[&input]);
            let need_order = |order: Option<u32>| order.ok_or_else(|| Error::InvalidArgument("--order is required".into()));
            let result = parse(&input).and_then(|p| match which {
                Which::Delta0 => {
                    let n = need_order(order)?;
                    r.param("which", "delta0");
                    r.param("order", n);
                    Ok(json!(delta0_from_lengths(&jet_lengths_for(&p, n)?)?))
                }
                Which::Eps0 => {
                    let n = need_order(order)?;
                    r.param("which", "eps0");
                    r.param("order", n);
                    Ok(json!(eps0_from_lengths(&jet_lengths_for(&p, n)?)?))
                }
                Which::Rho => {
                    r.param("which", "rho");
                    Ok(json!(rho(&p)?))
                }
                Which::Quasidim => {
                    r.param("which", "quasidim");
                    Ok(json!(quasi_dimension(&p)?))
                }
                Which::Trace => {
                    let kind = match slope {
                        TraceKind::Delta0 => SlopeKind::Delta0,
                        TraceKind::Eps0 => SlopeKind::Eps0,
                        TraceKind::Hilbert => SlopeKind::Hilbert,
                    };
                    r.param("which", "trace");
                    r.param("orders", json!(orders));
                    r.param("slope", json!(kind));
                    Ok(json!(slope_trace(&p, kind, &orders)?))
                }
            });
            finish(r, result)
        }
        Command::Resolve { file, residue, hcap, cap, order } => {
            let input = read(&file)?;
            let mut r = Report::new("resolve", &[&input]);
            r.param("residue", residue);
            let result = parse(&input).and_then(|p| {
                let res = if !residue {
                    resolve_quotient(&p)?
                } else if p.is_graded() {
                    let dcap = cap.unwrap_or(2 * hcap as u32 + 2);
                    r.param("hcap", hcap);
                    r.param("cap", dcap);
                    betti_residue_field_graded(&p, hcap, dcap)?
                } else {
                    let n = order.ok_or_else(|| Error::InvalidArgument("--order is required for local presentations".into()))?;
                    r.param("hcap", hcap);
                    r.param("order", n);
                    betti_residue_field(&jet(&p, n)?, hcap)?
                };
                Ok(json!(res))
            });
            finish(r, result)
        }
        Command::Classify { file } => {
            let input = read(&file)?;
            let r = Report::new("classify", &[&input]);
            let result = parse(&input).and_then(|p| Ok(json!(depth_and_classify(&p)?)));
            finish(r, result)
        }
        Command::Euler { file } => {
            let input = read(&file)?;
            let r = Report::new("euler", &[&input]);
            let result = parse(&input).and_then(|p| {
                let e = euler_characteristic(&p)?;
                Ok(json!({
                    "chi": report::rational(&e.chi),
                    "genus": e.genus.as_ref().map_or(Value::Null, report::rational),
                    "hilbert_polynomial": e.hilbert_polynomial,
                }))
            });
            finish(r, result)
        }
        Command::Limit { template, range, order, search } => {
            let input = read(&template)?;
            let mut r = Report::new("limit", &[&input]);
            r.param("range", format!("{}..{}", range.0, range.1));
            r.param("order", order);
            search.record(&mut r);
            let result = FamilyTemplate::new(input.text.clone(), range.0, range.1).and_then(|tpl| {
                let l = limit_jets(&tpl, order, &search.budget())?;
                Ok(json!({
                    "stabilized_at": l.stabilized_at,
                    "boundary": l.boundary,
                    "jet": report::algebra(&l.jet),
                    "verdicts": l.verdicts.iter().map(|(w, v)| json!({ "w": w, "verdict": v })).collect::<Vec<_>>(),
                }))
            });
            finish(r, result)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, ok)) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable");
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Usage(msg)) => {
            eprintln!("jetmetric: {msg}");
            ExitCode::from(2)
        }
    }
}
