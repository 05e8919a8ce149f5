//! Command-line driver.

pub mod config;

pub use config::{parse_config, Format, LatticeSpec, OrderChoice, RunConfig};

use std::ffi::OsString;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Ideal, MonomialOrder};
use crate::building::{tropical_hull, HullVariant};
use crate::components::{
    classify_decomposed, count_bounds, decompose, flag_project_component,
    general_position_experiment, structural_checks, Classification, Label, Options,
};
use crate::degeneration::{build_degeneration_with, generic_fiber_check, Convention};
use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mustafin", version, about = "Mustafin degenerations of flag varieties")]
pub struct Cli {
    /// Configuration file.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Neighborhood radius for secondary candidates.
    #[arg(long, global = true)]
    pub radius: Option<i64>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_enum)]
    pub order: Option<OrderArg>,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_candidates: usize,
    #[arg(long, global = true)]
    pub timeout_secs: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Flat model over Q[t].
    Ideal,
    /// Special fiber.
    Fiber,
    /// Minimal primes of the special fiber.
    Components,
    /// Components with labels.
    Classify,
    /// Both tropical hulls of an apartment configuration.
    Hull,
    /// Bounds on the number of components.
    Bounds,
    /// Structural invariants.
    Check,
    /// Built-in reference cases.
    Verify {
        #[arg(value_enum)]
        case: VerifyCase,
    },
    /// Two random vertices against the Schubert-cell bound.
    Experiment {
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyCase {
    PaperExample,
    #[value(name = "paper-example-2")]
    PaperExample2,
    D2Line,
}

/// Result of one command: rendered output and exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Outcome {
    fn new(text: String, json: Value, ok: bool) -> Self {
        Outcome { text, json, ok }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
        }
    }
}

fn options(cfg: &RunConfig, max_candidates: usize) -> Options {
    Options {
        seed: cfg.seed,
        radius: cfg.radius,
        max_candidates,
        convention: cfg.convention,
    }
}

fn ordered(ideal: &Ideal, order: OrderChoice) -> Vec<String> {
    let o = match order {
        OrderChoice::Degrevlex => MonomialOrder::degrevlex(),
        OrderChoice::Lex => MonomialOrder::lex(),
    };
    ideal.groebner(&o).iter().map(|g| g.to_string()).collect()
}

fn lines(title: &str, items: &[String]) -> String {
    let mut s = format!("{title}\n");
    for i in items {
        s.push_str("  ");
        s.push_str(i);
        s.push('\n');
    }
    s
}

/// Text and JSON report of a classification.
pub fn classification_outcome(cls: &Classification) -> Outcome {
    let mut text = format!("{}\n", cls.summary());
    for (i, c) in cls.components.iter().enumerate() {
        text.push_str(&format!(
            "[{i}] {} dim {} ({})\n",
            c.label,
            c.dimension,
            match c.confidence {
                crate::components::Confidence::Certified => "certified prime",
                crate::components::Confidence::Heuristic => "heuristic prime",
            }
        ));
        text.push_str(&format!("    {}\n", c.generators.join(", ")));
        for e in &c.evidence {
            text.push_str(&format!("    - {e}\n"));
        }
    }
    let json = json!({
        "configuration": cls.decomposed.deg.config().to_string(),
        "flag": cls.decomposed.deg.flag().to_string(),
        "fiber": cls.decomposed.deg.fiber_ideal().to_strings(),
        "validated": true,
        "summary": cls.summary(),
        "components": cls.components,
        "dual_graph": crate::components::dual_graph(&cls.decomposed),
    });
    Outcome::new(text, json, true)
}

/// Runs one command on a parsed configuration.
pub fn run(cmd: &Command, cfg: &RunConfig, max_candidates: usize) -> Result<Outcome> {
    if let Command::Verify { case } = cmd {
        return verify(*case, cfg.seed, max_candidates);
    }
    let config = cfg.configuration()?;
    let flag = cfg.flag()?;
    let opts = options(cfg, max_candidates);
    match cmd {
        Command::Bounds => {
            let (lo, hi) = count_bounds(&flag, config.len());
            let hi_text = hi.map_or("none".to_string(), |h| h.to_string());
            Ok(Outcome::new(
                format!("lower {lo}, upper {hi_text}\n"),
                json!({"lower": lo, "upper": hi}),
                true,
            ))
        }
        Command::Hull => {
            let aps = config
                .apartment_vertices()
                .ok_or_else(|| Error::NotApartment("hulls need diagonal lattices".into()))?;
            let min: Vec<String> = tropical_hull(&aps, HullVariant::Min)?.iter().map(|a| a.to_string()).collect();
            let max: Vec<String> = tropical_hull(&aps, HullVariant::Max)?.iter().map(|a| a.to_string()).collect();
            let text = format!("min: {}\nmax: {}\n", min.join(" "), max.join(" "));
            Ok(Outcome::new(text, json!({"min": min, "max": max}), true))
        }
        Command::Experiment { trials } => {
            let rows = general_position_experiment(&flag, *trials, &opts)?;
            let mut text = String::from("components bound attained lattice\n");
            for r in &rows {
                text.push_str(&format!("{:>10} {:>5} {:>8} {}\n", r.components, r.bound, r.attained, r.lattice));
            }
            let ok = rows.iter().all(|r| r.components as u64 <= r.bound && r.structural_failures.is_empty());
            Ok(Outcome::new(text, json!({"rows": rows}), ok))
        }
        _ => {
            let deg = build_degeneration_with(&config, &flag, cfg.convention)?;
            match cmd {
                Command::Ideal => {
                    let g = ordered(deg.flat_ideal(), cfg.order);
                    Ok(Outcome::new(lines("flat ideal", &g), json!({"flat_ideal": g}), true))
                }
                Command::Fiber => {
                    let g = ordered(deg.fiber_ideal(), cfg.order);
                    let check = generic_fiber_check(&deg, cfg.seed)?;
                    let mut text = lines("special fiber", &g);
                    text.push_str(&format!("generic fiber check: {}\n", if check.passed { "passed" } else { "FAILED" }));
                    if let Some(w) = &check.witness {
                        text.push_str(&format!("  {w}\n"));
                    }
                    let json = json!({"fiber": g, "generic_fiber_check": check.passed, "witness": check.witness});
                    Ok(Outcome::new(text, json, check.passed))
                }
                Command::Components => {
                    let dec = decompose(&deg)?;
                    let comps: Vec<Vec<String>> = dec.primes.iter().map(|p| p.ideal.to_strings()).collect();
                    let mut text = format!("{} components\n", dec.len());
                    for (i, c) in comps.iter().enumerate() {
                        text.push_str(&format!("[{i}] dim {}: {}\n", dec.dimension(i), c.join(", ")));
                    }
                    Ok(Outcome::new(text, json!({"components": comps, "validated": true}), true))
                }
                Command::Classify => {
                    let cls = classify_decomposed(decompose(&deg)?, &opts)?;
                    Ok(classification_outcome(&cls))
                }
                Command::Check => {
                    let dec = decompose(&deg)?;
                    let r = structural_checks(&dec);
                    let mut text = format!(
                        "{} components, dimensions {:?} (expected {}), connected {}, bounds {}..{}, reduced {}\n",
                        r.components,
                        r.dimensions,
                        r.expected_dimension,
                        r.connected,
                        r.lower_bound,
                        r.upper_bound.map_or("-".into(), |u| u.to_string()),
                        r.reduced.map_or("not checked".into(), |b| b.to_string()),
                    );
                    for f in &r.failures {
                        text.push_str(&format!("FAIL: {f}\n"));
                    }
                    let ok = r.passed();
                    Ok(Outcome::new(text, serde_json::to_value(&r).expect("serializable"), ok))
                }
                _ => unreachable!("handled above"),
            }
        }
    }
}

/// Configuration of a built-in verification case.
pub fn case_config(case: VerifyCase) -> RunConfig {
    let (d, ranks, exps): (usize, Vec<usize>, Vec<Vec<i64>>) = match case {
        VerifyCase::PaperExample => (3, vec![1, 2], vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 1]]),
        VerifyCase::PaperExample2 => (3, vec![1, 2], vec![vec![1, 0, 0], vec![0, 0, 1]]),
        VerifyCase::D2Line => (2, vec![1], vec![vec![0, 0], vec![1, 0]]),
    };
    RunConfig::new(d, ranks, exps.into_iter().map(LatticeSpec::Diag).collect())
}

fn verdict(ok: bool, summary: &str, detail: Value) -> Outcome {
    let text = format!("{}: {summary}\n", if ok { "PASS" } else { "FAIL" });
    Outcome::new(text, json!({"pass": ok, "summary": summary, "detail": detail}), ok)
}

/// Runs a built-in case and compares with its expected outcome.
pub fn verify(case: VerifyCase, seed: u64, max_candidates: usize) -> Result<Outcome> {
    let mut cfg = case_config(case);
    cfg.seed = seed;
    let opts = options(&cfg, max_candidates);
    let config = cfg.configuration()?;
    let flag = cfg.flag()?;
    let deg = build_degeneration_with(&config, &flag, Convention::default())?;
    let dec = decompose(&deg)?;
    match case {
        VerifyCase::D2Line => {
            let (_, bound) = count_bounds(&flag, 2);
            let bound = bound.expect("two vertices");
            let check = generic_fiber_check(&deg, seed)?;
            let ok = dec.len() as u64 == bound && check.passed;
            let summary = format!(
                "{} components, bound {bound} {}",
                dec.len(),
                if dec.len() as u64 == bound { "attained" } else { "not attained" }
            );
            Ok(verdict(ok, &summary, json!({"fiber": deg.fiber_ideal().to_strings()})))
        }
        VerifyCase::PaperExample | VerifyCase::PaperExample2 => {
            let cls = classify_decomposed(dec, &opts)?;
            let want = if case == VerifyCase::PaperExample { (3, 1, 4) } else { (2, 0, 4) };
            let got = (cls.primaries(), cls.secondary_count(), cls.mixed());
            let mut ok = got == want && cls.unresolved() == 0;
            if case == VerifyCase::PaperExample {
                ok &= cls.secondaries.len() == 1
                    && cls.secondaries[0].apartment().map(|a| a.exponents().to_vec()) == Some(vec![1, 0, 1]);
                ok &= secondary_projects_as_expected(&cls, &opts)?;
            } else {
                ok &= count_bounds(&flag, 2).1 == Some(cls.components.len() as u64);
            }
            let detail = classification_outcome(&cls).json;
            Ok(verdict(ok, &cls.summary(), detail))
        }
    }
}

/// The secondary component maps onto the secondary component of the rank-1
/// projection and onto no component of the corank-1 projection.
pub fn secondary_projects_as_expected(cls: &Classification, opts: &Options) -> Result<bool> {
    let Some(c) = cls.components.iter().position(|c| matches!(c.label, Label::Secondary { .. })) else {
        return Ok(false);
    };
    let levels = cls.decomposed.deg.flag().levels();
    let first = flag_project_component(cls, c, &[0], opts)?;
    let last = flag_project_component(cls, c, &[levels - 1], opts)?;
    Ok(first.is_some_and(|p| p.label.starts_with("secondary")) && last.is_none())
}

fn load(cli: &Cli) -> std::result::Result<RunConfig, (i32, String)> {
    let mut cfg = match (&cli.config, &cli.command) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| (EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text).map_err(|e| (EXIT_USAGE, format!("{}: {e}", path.display())))?
        }
        (None, Command::Verify { case }) => case_config(*case),
        (None, _) => return Err((EXIT_USAGE, "--config is required for this command".into())),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(r) = cli.radius {
        cfg.radius = r;
    }
    if let Some(o) = cli.order {
        cfg.order = match o {
            OrderArg::Degrevlex => OrderChoice::Degrevlex,
            OrderArg::Lex => OrderChoice::Lex,
        };
    }
    if cli.json {
        cfg.format = Format::Json;
    }
    Ok(cfg)
}

/// Parses arguments, runs, prints, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let cmd = cli.command.clone();
    let max = cli.max_candidates;
    let format = cfg.format;
    let job = move || run(&cmd, &cfg, max).map(|o| (o.render(format), o.ok)).map_err(|e| e.to_string());
    let result = match cli.timeout_secs {
        None => job(),
        Some(secs) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(job());
            });
            match rx.recv_timeout(Duration::from_secs(secs)) {
                Ok(r) => r,
                Err(_) => Err(format!("timed out after {secs} s")),
            }
        }
    };
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_FAIL
        }
    }
}
