//! Command-line front end: metric computations, simulations, bound-report
//! sweeps and the self-check suite.
//!
//! Relative output paths resolve against `DCLT_OUT_DIR` when that variable
//! is set. Errors print a machine-readable JSON record to stderr and exit
//! nonzero.

use clap::{Args, Parser, Subcommand};
use discounted_clt::charfn::CharFn;
use discounted_clt::discounted::{simulate, Method, SimConfig};
use discounted_clt::distributions::Distribution;
use discounted_clt::metrics::{fourier_distance, kolmogorov_distance, GridSpec};
use discounted_clt::special::normal_cdf;
use discounted_clt::sweep::{emit_report, resolve_path, run_sweep, SweepConfig};
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "dclt", version, about = "Fourier metrics for discounted sums")]
struct Cli {
    /// Worker thread limit (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-3)]
    xi_min: f64,
    #[arg(long, default_value_t = 1e2)]
    xi_max: f64,
    #[arg(long, default_value_t = 400)]
    grid_points: usize,
    #[arg(long, default_value_t = 1e-6)]
    refine_tol: f64,
}

impl From<GridArgs> for GridSpec {
    fn from(g: GridArgs) -> Self {
        GridSpec {
            xi_min: g.xi_min,
            xi_max: g.xi_max,
            points: g.grid_points,
            refine_tol: g.refine_tol,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One Fourier-distance computation d_s(G, H).
    ///
    /// G and H are catalog names ("rademacher", "student_t:2.5", ...) or
    /// "fa:<name>:<a>[:<tol>]" for the discounted-sum law of a base.
    Metric {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "normal")]
        h: String,
        #[arg(long)]
        s: f64,
        #[command(flatten)]
        grid: GridArgs,
    },

    /// Sample the normalized discounted sum.
    Simulate {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 10_000)]
        n_samples: usize,
        #[arg(long, default_value_t = 1e-10)]
        trunc_tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "direct" or "ar1".
        #[arg(long, default_value = "direct")]
        method: String,
        /// AR(1) steps (ar1 method only).
        #[arg(long, default_value_t = 32)]
        steps: usize,
        /// Initial law for the AR(1) recursion.
        #[arg(long, default_value = "normal")]
        initial: String,
        /// Write samples here, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Full bound report across discount factors.
    Sweep {
        /// JSON config file; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        dist: Option<String>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        a_values: Option<Vec<f64>>,
        #[arg(long)]
        n_samples: Option<usize>,
        #[arg(long)]
        trunc_tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },

    /// Run the invariant self-checks.
    Verify,
}

/// Parses "name" or "fa:name[:param]:a[:tol]" into a characteristic
/// function; the base name may itself carry a parameter, so the longest
/// valid name prefix wins.
fn parse_charfn(spec: &str, default_tol: f64) -> discounted_clt::Result<CharFn> {
    let Some(rest) = spec.strip_prefix("fa:") else {
        return Ok(CharFn::analytic(&Distribution::from_name(spec)?));
    };
    let fields: Vec<&str> = rest.split(':').collect();
    let bad = |what: &str| {
        discounted_clt::Error::InvalidParameter(format!("{spec:?}: cannot parse {what}"))
    };
    let (dist_name, a_str, tol_str): (String, &str, Option<&str>) = match fields.len() {
        2 => (fields[0].to_string(), fields[1], None),
        3 => {
            if Distribution::from_name(&format!("{}:{}", fields[0], fields[1])).is_ok() {
                (format!("{}:{}", fields[0], fields[1]), fields[2], None)
            } else {
                (fields[0].to_string(), fields[1], Some(fields[2]))
            }
        }
        4 => (format!("{}:{}", fields[0], fields[1]), fields[2], Some(fields[3])),
        _ => return Err(bad("spec")),
    };
    let a: f64 = a_str.parse().map_err(|_| bad("discount factor"))?;
    let tol: f64 = match tol_str {
        Some(t) => t.parse().map_err(|_| bad("tolerance"))?,
        None => default_tol,
    };
    let base = Distribution::from_name(&dist_name)?;
    CharFn::discounted_product(&CharFn::analytic(&base), a, tol)
}

fn run(cli: Cli) -> discounted_clt::Result<i32> {
    let out_dir = std::env::var_os("DCLT_OUT_DIR").map(PathBuf::from);

    match cli.command {
        Command::Metric { g, h, s, grid } => {
            let spec: GridSpec = grid.into();
            let gf = parse_charfn(&g, 1e-12)?;
            let hf = parse_charfn(&h, 1e-12)?;
            let r = fourier_distance(&gf, &hf, s, &spec)?;
            let doc = json!({
                "g": gf.describe(),
                "h": hf.describe(),
                "result": r,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }

        Command::Simulate {
            dist,
            a,
            n_samples,
            trunc_tol,
            seed,
            method,
            steps,
            initial,
            out,
        } => {
            let d = Distribution::from_name(&dist)?;
            let method = match method.as_str() {
                "direct" => Method::DirectTruncation,
                "ar1" => Method::Ar1Iteration { steps, initial_law: initial },
                other => {
                    return Err(discounted_clt::Error::InvalidParameter(format!(
                        "method {other:?} is not one of direct, ar1"
                    )))
                }
            };
            let cfg = SimConfig { a, n_samples, trunc_tol, seed, method };
            let samples = simulate(&d, &cfg)?;
            if let Some(path) = out {
                let path = resolve_path(&path, out_dir.as_deref());
                let mut body = String::with_capacity(samples.len() * 20);
                for x in &samples {
                    body.push_str(&format!("{x}\n"));
                }
                std::fs::write(&path, body)?;
            }
            let n = samples.len() as f64;
            let mean = samples.iter().sum::<f64>() / n;
            let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            let ks = kolmogorov_distance(&samples, normal_cdf)?;
            let doc = json!({
                "config": cfg,
                "distribution": d.name(),
                "n": samples.len(),
                "mean": mean,
                "variance": var,
                "kolmogorov_vs_normal": ks,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }

        Command::Sweep {
            config,
            dist,
            s,
            a_values,
            n_samples,
            trunc_tol,
            seed,
            csv,
            json: json_path,
            grid,
        } => {
            let mut cfg: SweepConfig = match config {
                Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
                None => SweepConfig {
                    distribution: "rademacher".into(),
                    s: 3.0,
                    a_values: vec![0.9, 0.99, 0.999],
                    n_samples: 100_000,
                    trunc_tol: 1e-10,
                    seed: 0,
                    grid: grid.into(),
                    csv_path: None,
                    json_path: None,
                },
            };
            if let Some(v) = dist {
                cfg.distribution = v;
            }
            if let Some(v) = s {
                cfg.s = v;
            }
            if let Some(v) = a_values {
                cfg.a_values = v;
            }
            if let Some(v) = n_samples {
                cfg.n_samples = v;
            }
            if let Some(v) = trunc_tol {
                cfg.trunc_tol = v;
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = csv {
                cfg.csv_path = Some(v);
            }
            if let Some(v) = json_path {
                cfg.json_path = Some(v);
            }
            let rows = run_sweep(&cfg)?;
            let written = emit_report(&cfg, &rows, out_dir.as_deref())?;
            let doc = json!({
                "rows": rows.len(),
                "written": written,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(0)
        }

        Command::Verify => {
            let mut failed = 0;
            for c in discounted_clt::verify::run_all() {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                println!("{tag}  {} — {}", c.name, c.detail);
                if !c.pass {
                    failed += 1;
                }
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // results are worker-count invariant; this only caps parallelism
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string() }));
            std::process::exit(1);
        }
    }
}
