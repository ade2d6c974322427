use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use palab::chains::{
    default_cutoff, oscillator, simulate_martingale, simulate_slow_chain, stationary_birth_death, MartingaleConfig,
    Rate, SlowChainConfig,
};
use palab::efgame::{equivalent_k, spoiler_witness};
use palab::experiments::{
    cycle_profile_census, degree_profile, estimate_cycle_rate, estimate_sentence_probability, local_limit_check,
    EstimateTable, ExperimentConfig,
};
use palab::generators::{generate, AttachmentRule, ModelConfig};
use palab::logic::{evaluate, parse, parse_formula, quantifier_rank};
use palab::neighborhoods::{cycle_components, profile_of};
use palab::{Multigraph, Rational};

#[derive(Parser)]
#[command(name = "palab", version, about = "Preferential attachment laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a graph and write it in the text format.
    Generate {
        #[arg(long, default_value = "sequential")]
        model: AttachmentRule,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit DOT instead of the text format.
        #[arg(long)]
        dot: bool,
    },
    /// Model-check a sentence on a graph file.
    Eval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Quantifier rank of a formula.
    Qr {
        #[arg(long)]
        formula: String,
    },
    /// Decide k-round Ehrenfeucht-Fraïssé equivalence of two graph files.
    Efgame {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        k: usize,
        /// Print the Spoiler strategy as JSON when the graphs are distinguishable.
        #[arg(long)]
        witness: bool,
    },
    /// Cycle components of a graph file.
    Cycles {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        /// Write the profile JSON here.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Counting processes and birth-death chains.
    Chain {
        #[command(subcommand)]
        cmd: ChainCmd,
    },
    /// Monte Carlo experiments producing CSV tables.
    Xp {
        #[command(subcommand)]
        cmd: XpCmd,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Simulate the slow chain and compare with its stationary law.
    Slow {
        #[arg(long)]
        rho: Rate,
        #[arg(long)]
        tau: Rate,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Simulate the counting martingale.
    Martingale {
        #[arg(long)]
        p: Rate,
        #[arg(long = "K")]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        start: i64,
        /// Index of the first state.
        #[arg(long, default_value_t = 1)]
        n0: u64,
    },
    /// Exact two-state oscillator block ends.
    Oscillator {
        #[arg(long, default_value_t = 64)]
        steps: u64,
    },
}

#[derive(Args, Clone, Default)]
struct XpCommon {
    /// Flat key=value file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// Comma separated sizes, e.g. 1e3,1e4,1e5.
    #[arg(long)]
    ngrid: Option<String>,
    #[arg(long)]
    replicas: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    /// CSV destination; the JSON mirror goes next to it. Stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum XpCmd {
    /// Probability that a sentence holds, per graph size
    Sentence {
        #[command(flatten)]
        common: XpCommon,
        #[arg(long)]
        sentence: Option<String>,
        #[arg(long)]
        locality: bool,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        samples: Option<String>,
    },
    /// Rate at which new l-cycles are closed by late vertices
    Cyclerate {
        #[command(flatten)]
        common: XpCommon,
        #[arg(long)]
        l: Option<String>,
    },
    /// Mean and variance of the degree of fixed vertices
    Degrees {
        #[command(flatten)]
        common: XpCommon,
        #[arg(long)]
        ks: Option<String>,
    },
    /// Distance between sampled r-balls and the limit tree
    Locallimit {
        #[command(flatten)]
        common: XpCommon,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        samples: Option<String>,
    },
    /// Census of cycle components of radius r
    Profile {
        #[command(flatten)]
        common: XpCommon,
        #[arg(long)]
        r: Option<String>,
    },
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Multigraph::from_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build_config(common: &XpCommon, extra: &[(&str, Option<&String>)]) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        cfg.apply_kv(&text)?;
    }
    let flags = [
        ("model", common.model.as_ref()),
        ("alpha", common.alpha.as_ref()),
        ("m", common.m.as_ref()),
        ("ngrid", common.ngrid.as_ref()),
        ("replicas", common.replicas.as_ref()),
        ("seed", common.seed.as_ref()),
        ("workers", common.workers.as_ref()),
    ];
    for (key, value) in flags.iter().chain(extra) {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit_table(table: &EstimateTable, out: Option<&Path>) -> Result<()> {
    let csv = table.to_csv()?;
    write_or_print(out, &csv)?;
    if let Some(p) = out {
        let json = p.with_extension("json");
        fs::write(&json, table.to_json()?).with_context(|| format!("writing {}", json.display()))?;
    }
    Ok(())
}

fn run_xp(cmd: XpCmd) -> Result<()> {
    let (table, out) = match cmd {
        XpCmd::Sentence { common, sentence, locality, r, samples } => {
            let mut cfg = build_config(&common, &[("sentence", sentence.as_ref()), ("r", r.as_ref()), ("samples", samples.as_ref())])?;
            cfg.locality |= locality;
            let Some(text) = cfg.sentence.clone() else { bail!("--sentence is required") };
            (estimate_sentence_probability(&cfg, &parse(&text)?)?, common.out)
        }
        XpCmd::Cyclerate { common, l } => {
            let cfg = build_config(&common, &[("l", l.as_ref())])?;
            (estimate_cycle_rate(&cfg, cfg.cycle_len)?, common.out)
        }
        XpCmd::Degrees { common, ks } => {
            let cfg = build_config(&common, &[("ks", ks.as_ref())])?;
            (degree_profile(&cfg, &cfg.ks)?, common.out)
        }
        XpCmd::Locallimit { common, r, samples } => {
            let cfg = build_config(&common, &[("r", r.as_ref()), ("samples", samples.as_ref())])?;
            (local_limit_check(&cfg, cfg.radius, cfg.samples)?, common.out)
        }
        XpCmd::Profile { common, r } => {
            let cfg = build_config(&common, &[("r", r.as_ref())])?;
            (cycle_profile_census(&cfg, cfg.radius)?, common.out)
        }
    };
    emit_table(&table, out.as_deref())
}

fn run_chain(cmd: ChainCmd) -> Result<()> {
    match cmd {
        ChainCmd::Slow { rho, tau, steps, seed, json } => {
            let occ = simulate_slow_chain(&SlowChainConfig::new(rho, tau, steps, seed))?;
            if rho.limit() <= 0.0 || tau.limit() <= 0.0 {
                // No stationary law to compare with.
                if json {
                    println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "occupancy": occ }))?);
                } else {
                    for (state, freq) in occ.frequencies.iter().take(10) {
                        println!("{state} {freq}");
                    }
                }
                return Ok(());
            }
            let lambda = rho.limit() / tau.limit();
            let law = stationary_birth_death(rho.limit(), tau.limit(), default_cutoff(lambda))?;
            let tv = occ.tv_to(&law.numeric_f64);
            if json {
                let doc = serde_json::json!({ "occupancy": occ, "stationary": law, "tv": tv });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!("lambda {lambda}");
                println!("tv_to_stationary {tv}");
                println!("pi0 numeric {} closed_form {} recurrence {}", law.numeric_f64[0], law.pi0_closed_form, law.pi0_recurrence);
                for (state, freq) in occ.frequencies.iter().take(10) {
                    println!("{state} {freq} {}", law.numeric_f64.get(*state).copied().unwrap_or(0.0));
                }
            }
        }
        ChainCmd::Martingale { p, k, m, steps, seed, start, n0 } => {
            let run = simulate_martingale(&MartingaleConfig { p, k, m, steps, start, n0, seed })?;
            println!("n,M_n,mu_n,Z_n");
            let mut n = n0;
            while n < n0 + run.values.len() as u64 {
                let i = (n - n0) as usize;
                println!("{n},{},{},{}", run.values[i], run.mu[i], run.z(n));
                n *= 2;
            }
        }
        ChainCmd::Oscillator { steps } => {
            let run = oscillator::<Rational>(steps);
            println!("n,kind,state1");
            for b in &run.blocks {
                println!("{},{:?},{}", b.n, b.kind, b.state1);
            }
            println!("stochastic {}", run.stochastic);
            println!("signed_norm_within_1/n {}", run.norm_bound_signed);
            println!("abs_norm_within_1/n {}", run.norm_bound_abs);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().cmd {
        Cmd::Generate { model, n, m, alpha, seed, out, dot } => {
            let g = generate(&ModelConfig::new(model, n, m, alpha, seed))?;
            let text = if dot { g.to_dot()? } else { g.to_text() };
            write_or_print(out.as_deref(), &text)?;
        }
        Cmd::Eval { graph, formula } => {
            let g = read_graph(&graph)?;
            println!("{}", evaluate(&g, &parse(&formula)?));
        }
        Cmd::Qr { formula } => println!("{}", quantifier_rank(&parse_formula(&formula)?)),
        Cmd::Efgame { a, b, k, witness } => {
            let (ga, gb) = (read_graph(&a)?, read_graph(&b)?);
            if equivalent_k(&ga, &gb, k) {
                println!("equivalent");
            } else {
                println!("distinguishable");
                if witness {
                    let w = spoiler_witness(&ga, &gb, k).context("no witness for a distinguishable pair")?;
                    println!("{}", serde_json::to_string_pretty(&w)?);
                }
            }
        }
        Cmd::Cycles { graph, r, profile } => {
            let g = read_graph(&graph)?;
            let comps = cycle_components(&g, r)?;
            for c in &comps {
                println!("{:?} cycles={} vertices={:?} code={}", c.kind, c.cycles.len(), c.vertices, c.code());
            }
            let p = profile_of(&comps);
            println!("components {} classes {}", p.total(), p.entries.len());
            if let Some(path) = profile {
                fs::write(&path, p.to_json()?).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Cmd::Chain { cmd } => run_chain(cmd)?,
        Cmd::Xp { cmd } => run_xp(cmd)?,
    }
    Ok(())
}
