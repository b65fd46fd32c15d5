use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use plg_core::beta1::{
    embed_beta1_with, ramanujan_bound, random_regular_expander, walk_product, Beta1Options,
    DEFAULT_WALK_CAP,
};
use plg_core::io::{read_graph, write_graph};
use plg_core::json::{value_to_string, with_schema};
use plg_core::mis::{exact_mis_with, DEFAULT_BUDGET};
use plg_core::model::{plg_degree_counts, plg_totals};
use plg_core::realize::{degree_sequence_of_interval, realize};
use plg_core::sublinear::embed_sub1;
use plg_core::verify::verify_embedding;
use plg_core::{EmbeddingReport, Exec, MultiGraph, PlgError, PowerLawParams};

#[derive(Parser)]
#[command(name = "plg", version, about = "Power-law graph constructions and independent-set tools")]
struct Cli {
    /// Run every data-parallel kernel on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree counts and totals of an (α,β) power-law graph.
    Dist {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Include the per-degree counts y_1..y_Δ.
        #[arg(long)]
        counts: bool,
    },
    /// Realize the degree interval [low, high] (default [1, Δ]).
    Realize {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        low: Option<u64>,
        #[arg(long)]
        high: Option<u64>,
        #[arg(long)]
        out: PathBuf,
        /// Write the clique-cover certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Embed a simple graph into an (α,β) power-law graph with β<1.
    EmbedSub1 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Embed the walk product of a simple graph into an (α,1) power-law graph.
    EmbedBeta1 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Random d-regular graph with its spectral certificate.
    Expander {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Walk product of a graph over a seeded expander.
    Walkprod {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WALK_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact maximum independent set.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Include the witness set.
        #[arg(long)]
        witness: bool,
    },
    /// Re-check an embedding against its report and the original graph.
    Verify {
        #[arg(long)]
        plg: PathBuf,
        #[arg(long)]
        report: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

enum Failure {
    /// Bad arguments or unreadable input.
    Input(String),
    /// A check ran and failed, or a computation hit a limit.
    Failed(String),
}

impl From<PlgError> for Failure {
    fn from(e: PlgError) -> Self {
        match e {
            PlgError::Input(_) | PlgError::Parse { .. } | PlgError::Unsupported(_) => {
                Failure::Input(e.to_string())
            }
            PlgError::Resource(_) | PlgError::Internal(_) => Failure::Failed(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<MultiGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    read_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn save(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn print(v: Value) {
    print!("{}", value_to_string(&with_schema(v)));
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match cli.cmd {
        Cmd::Dist {
            alpha,
            beta,
            counts,
        } => {
            let p = PowerLawParams::new(alpha, beta)?;
            let t = plg_totals(&p)?;
            let mut v = json!({
                "alpha": alpha,
                "beta": beta,
                "delta": p.delta(),
                "n_exact": t.n_exact,
                "n_estimate": t.n_estimate,
                "m_estimate": t.m_estimate,
                "edge_half_sum_exact": t.edge_half_sum_exact,
            });
            if counts {
                v["counts"] = json!(plg_degree_counts(&p));
            }
            print(v);
        }
        Cmd::Realize {
            alpha,
            beta,
            low,
            high,
            out,
            cert,
        } => {
            let p = PowerLawParams::new(alpha, beta)?;
            let (a, b) = (low.unwrap_or(1), high.unwrap_or(p.delta()));
            let d = degree_sequence_of_interval(&p, a, b)?;
            let (g, c) = realize(&d)?;
            save(&out, &write_graph(&g))?;
            if let Some(path) = cert {
                save(&path, &plg_core::json::to_string(&c)?)?;
            }
            print(json!({
                "low": a,
                "high": b,
                "vertices": g.vertex_count(),
                "cliques": c.len(),
                "parity_deficit": c.parity_deficit,
            }));
        }
        Cmd::EmbedSub1 {
            input,
            beta,
            out,
            report,
        } => {
            let g = load(&input)?;
            let (plg, r) = embed_sub1(&g, beta)?;
            finish_embedding(&plg, &r, &out, &report)?;
        }
        Cmd::EmbedBeta1 {
            input,
            d,
            k,
            seed,
            out,
            report,
        } => {
            let g = load(&input)?;
            let mut o = Beta1Options::new(d, seed);
            o.k = Some(k);
            o.exec = exec;
            let (plg, r) = embed_beta1_with(&g, &o)?;
            finish_embedding(&plg, &r, &out, &report)?;
        }
        Cmd::Expander { n, d, seed, out } => {
            let c = random_regular_expander(n, d, seed)?;
            if let Some(path) = out {
                save(&path, &write_graph(&c.graph))?;
            }
            print(json!({
                "n": n,
                "d": d,
                "seed": seed,
                "lambda": c.lambda,
                "lambda_1": c.lambda_1,
                "lambda_min": c.lambda_min,
                "passes": c.passes,
                "attempts": c.attempts,
                "ramanujan_bound": ramanujan_bound(d),
            }));
        }
        Cmd::Walkprod {
            input,
            d,
            k,
            seed,
            cap,
            out,
        } => {
            let g = load(&input)?;
            let h = random_regular_expander(g.vertex_count(), d, seed)?;
            let wp = walk_product(&g, &h, k, cap, exec)?;
            if let Some(path) = out {
                save(&path, &write_graph(&wp.product))?;
            }
            print(json!({
                "k": k,
                "d": d,
                "seed": seed,
                "lambda": h.lambda,
                "vertices": wp.product.vertex_count(),
                "distinct_edges": wp.product.distinct_edge_count(),
                "bad_walks": wp.bad_walks,
                "max_degree": wp.product.max_degree(),
            }));
        }
        Cmd::Solve {
            input,
            budget,
            witness,
        } => {
            let g = load(&input)?;
            let s = exact_mis_with(&g, budget, exec)?;
            let mut v = json!({ "size": s.size, "optimal": s.optimal });
            if witness {
                v["witness"] = json!(s.witness);
                v["nodes_explored"] = json!(s.nodes_explored);
            }
            print(v);
        }
        Cmd::Verify {
            plg,
            report,
            input,
        } => {
            let out = load(&plg)?;
            let original = load(&input)?;
            let text = fs::read_to_string(&report)
                .map_err(|e| Failure::Input(format!("{}: {e}", report.display())))?;
            let r = EmbeddingReport::from_json(&text)?;
            let verdict = verify_embedding(&out, &r, &original);
            print(serde_json::to_value(&verdict).map_err(|e| Failure::Failed(e.to_string()))?);
            if let Some(f) = verdict.first_failure() {
                return Err(Failure::Failed(format!("check {} failed: {}", f.name, f.detail)));
            }
        }
    }
    Ok(())
}

fn finish_embedding(plg: &MultiGraph, r: &EmbeddingReport, out: &Path, report: &Path) -> Outcome {
    save(out, &write_graph(plg))?;
    save(report, &r.to_json()?)?;
    print(json!({
        "kind": r.kind,
        "alpha": r.alpha,
        "beta": r.beta,
        "delta": r.delta,
        "vertices": plg.vertex_count(),
        "witness": r.witness.len(),
        "conformance": r.conformance.pass,
    }));
    if r.conformance.pass {
        Ok(())
    } else {
        Err(Failure::Failed(r.conformance.describe()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed(msg)) => {
            eprintln!("plg: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("plg: {msg}");
            ExitCode::from(2)
        }
    }
}
