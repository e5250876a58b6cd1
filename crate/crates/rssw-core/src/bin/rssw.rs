use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rssw_core::error::Error;
use rssw_core::index::{index_dirac, index_rs, ManifoldInvariants};
use rssw_core::kuranishi::run_demo;
use rssw_core::pin2::equivariance_suite;
use rssw_core::report::{analyze, parse_manifold, Rat};
use rssw_core::repring::{
    char_at_i, char_at_j, char_on_circle, circle_poly_to_string, parse_expr,
};
use rssw_core::topology::{kdegree_feasibility, RepCounts};

#[derive(Parser)]
#[command(name = "rssw", version, about = "Exact feasibility analysis for the Rarita-Schwinger variant of the Seiberg-Witten equations")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Random seed (falls back to RSSW_SEED, then 0)
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a connected-sum expression such as "2E8 # 3H"
    Analyze { expr: String },

    /// Index of the twisted operator from numeric invariants
    #[command(allow_negative_numbers = true)]
    Index {
        #[arg(long)]
        sigma: i64,
        #[arg(long)]
        chi: i64,
        #[arg(long)]
        c1sq: i64,
    },

    /// Equivariant-degree feasibility verdict for given counts
    #[command(allow_negative_numbers = true)]
    Feasibility {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        r: u64,
        #[arg(long, default_value_t = 0)]
        s: u64,
    },

    /// Representation ring computations
    Repring {
        #[command(subcommand)]
        command: RepringCommand,
    },

    /// Run all fiberwise equivariance identities over random exact inputs
    VerifyEquivariance {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Kuranishi finite-dimensional sandbox
    Kuranishi {
        #[command(subcommand)]
        command: KuranishiCommand,
    },
}

#[derive(Subcommand)]
enum RepringCommand {
    /// Evaluate an expression in Z[d,h]/(d^2-1, dh-h)
    Eval { expr: String },
}

#[derive(Subcommand)]
enum KuranishiCommand {
    /// Run the verification battery on one seeded instance
    Demo {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 40)]
        dim_c: usize,
        #[arg(long, default_value_t = 38)]
        dim_r: usize,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = 1.4)]
        cutoff: f64,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::DefiniteForm | Error::NotSpinSignature(_) => 3,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    let env_seed = std::env::var("RSSW_SEED")
        .ok()
        .and_then(|s| s.parse().ok());
    let global_seed = cli.seed.or(env_seed).unwrap_or(0);

    let result = run(&cli, global_seed);
    match result {
        Ok(output) => println!("{output}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn run(cli: &Cli, global_seed: u64) -> Result<String, Error> {
    match &cli.command {
        Command::Analyze { expr } => {
            let parsed = parse_manifold(expr)?;
            let report = analyze(&parsed, expr)?;
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
                Format::Text => report.to_text(),
            })
        }
        Command::Index { sigma, chi, c1sq } => {
            let inv = ManifoldInvariants {
                sigma: *sigma,
                chi: *chi,
                c1sq: *c1sq,
            };
            let rs = Rat(index_rs(&inv));
            let dirac = Rat(index_dirac(&inv));
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "sigma": sigma,
                    "chi": chi,
                    "c1sq": c1sq,
                    "index_rs": rs,
                    "index_dirac": dirac,
                }))
                .expect("serializable"),
                Format::Text => format!(
                    "index (RS)    {rs}\nindex (Dirac) {dirac}\n"
                ),
            })
        }
        Command::Feasibility { k, m, r, s } => {
            if *k > 4096 || *m > 4096 || *r > 4096 || *s > 4096 {
                return Err(Error::InvalidArgument(
                    "counts larger than 4096 are not supported".into(),
                ));
            }
            let counts = RepCounts {
                r: *r,
                s: *s,
                k: *k,
                m: *m,
            };
            let verdict = kdegree_feasibility(&counts);
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "k": k, "m": m, "r": r, "s": s,
                    "feasibility": verdict,
                }))
                .expect("serializable"),
                Format::Text => format!("feasibility {verdict:?}\n"),
            })
        }
        Command::Repring { command } => {
            let RepringCommand::Eval { expr } = command;
            let value = parse_expr(expr)?;
            let poly = circle_poly_to_string(&char_on_circle(&value));
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "input": expr,
                    "normal_form": value.to_string(),
                    "char_at_j": char_at_j(&value).to_string(),
                    "char_at_i": char_at_i(&value).to_string(),
                    "char_on_circle": poly,
                }))
                .expect("serializable"),
                Format::Text => format!(
                    "normal form     {value}\nchar at j       {}\nchar at i       {}\nchar on circle  {poly}\n",
                    char_at_j(&value),
                    char_at_i(&value)
                ),
            })
        }
        Command::VerifyEquivariance { samples, seed } => {
            let seed = seed.unwrap_or(global_seed);
            let rows = equivariance_suite(*samples, seed);
            Ok(match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "seed": seed,
                    "samples": samples,
                    "identities": rows,
                }))
                .expect("serializable"),
                Format::Text => {
                    let mut out = format!("{:<12} {:>8} {:>8}  verdict\n", "identity", "checks", "passes");
                    for row in &rows {
                        out.push_str(&format!(
                            "{:<12} {:>8} {:>8}  {}\n",
                            row.kind,
                            row.checks,
                            row.passes,
                            if row.all_pass { "PASS" } else { "FAIL" }
                        ));
                    }
                    out
                }
            })
        }
        Command::Kuranishi { command } => {
            let KuranishiCommand::Demo {
                seed,
                dim_c,
                dim_r,
                gamma,
                cutoff,
            } = command;
            let seed = seed.unwrap_or(global_seed);
            let report = run_demo(seed, *dim_c, *dim_r, *gamma, *cutoff, None)?;
            Ok(serde_json::to_string_pretty(&report).expect("serializable"))
        }
    }
}
