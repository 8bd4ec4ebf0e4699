mod render;

use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use torsionlab::checks::{self, CheckConfig};
use torsionlab::models::{self, IndexSeq};
use torsionlab::perm::{self, Composition};
use torsionlab::sl2::{self, CheckMode, Mat2};
use torsionlab::spectral;
use torsionlab::{adem_normalize, apply, Element, OpWord, Prime};

/// Exact mod-p Steenrod operations, SL2 invariants and double cosets
/// around the torsion classes y_{p,I} of BPGL_n.
#[derive(Parser)]
#[command(name = "torsionlab", version)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize)]
struct RunConfig {
    /// The prime p.
    #[arg(
        short = 'p',
        long = "prime",
        visible_alias = "p",
        global = true,
        default_value_t = 3
    )]
    prime: u32,
    /// Degree cap (K(Z,3) basis degree, or Chow degree for invariants).
    #[arg(long, global = true)]
    maxdeg: Option<u32>,
    /// Largest n for sweeps over all of S_n.
    #[arg(long = "n-max", global = true, default_value_t = perm::DEFAULT_N_MAX,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..=10))]
    n_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = CheckConfig::default().seed)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModelKind {
    /// Λ(a,b) ⊗ F_p[xi,eta]
    Cpmup,
    /// F_p[xi,eta] with xi, eta in degree 2
    Sl2,
    /// Λ(u) ⊗ F_p[v]
    Lens,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Generators,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operation word such as "B P3 P1" to an element.
    Apply {
        #[arg(long)]
        word: String,
        #[arg(long)]
        expr: String,
        #[arg(long, value_enum, default_value_t = ModelKind::Cpmup)]
        model: ModelKind,
    },
    /// Rewrite an operation word in the admissible basis.
    Normalize {
        #[arg(long)]
        word: String,
    },
    /// Compute r_k by formula and by Steenrod operations on zeta.
    Rk {
        #[arg(long)]
        k: u32,
    },
    /// Check that B P^{p^k} ... P^1 sends zeta to r_k.
    VerifyY {
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// List the K(Z,3) basis up to --maxdeg.
    Kz3,
    /// SL2(F_p)-invariants: q, r and invariant dimensions, or a given form.
    Invariants {
        #[arg(long)]
        expr: Option<String>,
        /// Act by one matrix "a,b,c,d" instead of checking invariance.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Double cosets S_W \ S_n / S_{p,n-p}.
    Cosets {
        #[arg(long = "W")]
        w: String,
        /// A set of columns (1-based) for which to report W/F.
        #[arg(long = "F")]
        f: Option<String>,
        /// Confirm against a sweep over all of S_n.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Double-coset decomposition for W = (p, ..., p).
    Mackey {
        #[arg(long)]
        n: usize,
    },
    /// Decide whether y_{p,I} vanishes in the cohomology of BPGL_n.
    Verdict {
        #[arg(long)]
        n: u64,
        #[arg(long = "I")]
        index: String,
        /// Also report the differential hitting y_{p,(k,I)}.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run the whole verification suite.
    VerifyAll {
        /// Run only these check ids.
        #[arg(long)]
        only: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Apply { .. } => "apply",
            Command::Normalize { .. } => "normalize",
            Command::Rk { .. } => "rk",
            Command::VerifyY { .. } => "verify-y",
            Command::Kz3 => "kz3",
            Command::Invariants { .. } => "invariants",
            Command::Cosets { .. } => "cosets",
            Command::Mackey { .. } => "mackey",
            Command::Verdict { .. } => "verdict",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}

/// A command's result and whether everything it verified held.
struct Report {
    ok: bool,
    result: Value,
}

impl Report {
    fn ok(result: Value) -> Self {
        Report { ok: true, result }
    }
}

fn prime(cfg: &RunConfig) -> anyhow::Result<Prime> {
    Ok(Prime::new(cfg.prime)?)
}

fn run(cfg: &RunConfig, cmd: &Command) -> anyhow::Result<Report> {
    let p = prime(cfg)?;
    match cmd {
        Command::Apply { word, expr, model } => {
            let m = match model {
                ModelKind::Cpmup => models::cpmup_model(p)?,
                ModelKind::Sl2 => sl2::sl2_model(p)?,
                ModelKind::Lens => models::lens_factor_model(p)?,
            };
            let w = OpWord::parse(p, word)?;
            let x = Element::parse(&m, expr)?;
            let y = apply(&w, &x)?;
            let expansion = adem_normalize(&w);
            let via = expansion.apply(&x)?;
            Ok(Report {
                ok: via == y,
                result: json!({
                    "model": model,
                    "word": w.to_string(),
                    "input": x.to_string(),
                    "output": y.to_string(),
                    "degree": y.degree()?,
                    "admissible_form": expansion.to_string(),
                    "admissible_form_agrees": via == y,
                }),
            })
        }
        Command::Normalize { word } => {
            let w = OpWord::parse(p, word)?;
            let sum = adem_normalize(&w);
            let terms: Vec<Value> = sum
                .terms()
                .map(|(t, c)| json!({"word": t.to_string(), "coefficient": c.value()}))
                .collect();
            Ok(Report::ok(json!({
                "word": w.to_string(),
                "degree": w.degree(),
                "admissible": w.is_admissible(),
                "normal_form": sum.to_string(),
                "terms": terms,
            })))
        }
        Command::Rk { k } => {
            let direct = models::r_k_direct(p, *k)?;
            let via = models::r_k_via_steenrod(p, *k)?;
            let agree = direct == via;
            let top = p.as_u64().checked_pow(k + 1).context("p^(k+1) overflows")? - 1;
            Ok(Report {
                ok: agree,
                result: json!({
                    "k": k,
                    "r_k": format!("xi*eta*(xi^{top} - eta^{top})"),
                    "direct": direct.to_string(),
                    "via_steenrod": via.to_string(),
                    "degree": direct.degree()?,
                    "agree": agree,
                    "status": if agree { "pipelines agree" } else { "pipelines disagree" },
                }),
            })
        }
        Command::VerifyY { k } => {
            let r = models::verify_y_word(p, *k)?;
            Ok(Report {
                ok: r.holds,
                result: serde_json::to_value(&r)?,
            })
        }
        Command::Kz3 => {
            let cap = cfg
                .maxdeg
                .map_or_else(|| models::kz3_default_cap(p), u64::from);
            let basis = models::kz3_enumerate(p, cap)?;
            let mut coherent = true;
            let entries: Vec<Value> = basis
                .entries
                .iter()
                .map(|e| {
                    let mut v = json!({"label": e.label, "degree": e.degree});
                    if let Some(i) = e.as_y_generator() {
                        let d = models::ypi_degree(p, i)?;
                        coherent &= d == e.degree;
                        v["ypi_degree"] = json!(d);
                    }
                    Ok(v)
                })
                .collect::<anyhow::Result<_>>()?;
            Ok(Report {
                ok: coherent,
                result: json!({
                    "cap": cap,
                    "count": entries.len(),
                    "degrees_coherent": coherent,
                    "entries": entries,
                }),
            })
        }
        Command::Invariants { expr, matrix, mode } => {
            invariants(cfg, p, expr.as_deref(), matrix.as_deref(), *mode)
        }
        Command::Cosets { w, f, exhaustive } => cosets(cfg, p, w, f.as_deref(), *exhaustive),
        Command::Mackey { n } => {
            let r = perm::mackey_decompose(*n, p.get())?;
            Ok(Report::ok(serde_json::to_value(&r)?))
        }
        Command::Verdict { n, index, k } => {
            let i: IndexSeq = index.parse()?;
            let v = spectral::ypi_verdict(*n, p, &i)?;
            let mut result = serde_json::to_value(&v)?;
            if let Some(k) = k {
                result["differential"] =
                    serde_json::to_value(spectral::differential_target(p, &i, *k)?)?;
            }
            Ok(Report::ok(result))
        }
        Command::VerifyAll { only } => verify_all(cfg, only),
    }
}

fn invariants(
    cfg: &RunConfig,
    p: Prime,
    expr: Option<&str>,
    matrix: Option<&str>,
    mode: Mode,
) -> anyhow::Result<Report> {
    let mode = match mode {
        Mode::Generators => CheckMode::Generators,
        Mode::Full => CheckMode::FullGroup,
    };
    let model = sl2::sl2_model(p)?;
    if let Some(m) = matrix {
        let g = Mat2::parse(p, m)?;
        let Some(expr) = expr else {
            bail!("--matrix needs --expr")
        };
        let x = Element::parse(&model, expr)?;
        return Ok(Report::ok(json!({
            "matrix": g.to_string(),
            "input": x.to_string(),
            "output": sl2::act(&g, &x)?.to_string(),
        })));
    }
    if let Some(expr) = expr {
        let x = Element::parse(&model, expr)?;
        let v = sl2::check_invariant(&x, mode)?;
        return Ok(Report {
            ok: v.invariant,
            result: json!({"input": x.to_string(), "verdict": v}),
        });
    }
    let cap = cfg.maxdeg.unwrap_or_else(|| sl2::default_invariant_cap(p));
    let mut classes = Vec::new();
    let mut ok = true;
    for (name, x) in [("q", sl2::q_class(p)?), ("r", sl2::r_class(p)?)] {
        let v = sl2::check_invariant(&x, mode)?;
        ok &= v.invariant;
        classes.push(json!({"name": name, "class": x.to_string(), "verdict": v}));
    }
    let mut dims = Vec::new();
    for d in 1..=cap {
        let dim = sl2::invariant_dim(p, d, cap)?;
        let count = sl2::qr_monomial_count(p, d);
        ok &= dim == count;
        dims.push(json!({"degree": d, "dimension": dim, "qr_monomials": count}));
    }
    Ok(Report {
        ok,
        result: json!({"classes": classes, "maxdeg": cap, "dimensions": dims}),
    })
}

fn parse_columns(s: &str) -> anyhow::Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .with_context(|| format!("bad column `{t}`"))
        })
        .collect()
}

fn cosets(
    cfg: &RunConfig,
    p: Prime,
    w: &str,
    f: Option<&str>,
    exhaustive: bool,
) -> anyhow::Result<Report> {
    let w: Composition = w.parse()?;
    let pu = p.get() as usize;
    let labels = perm::double_cosets(&w, pu)?;
    let mut orbits = Vec::new();
    for k in &labels {
        let rep = perm::normalized_rep(k, &w, pu)?;
        let inter = perm::stabilizer_intersection(&rep, &w, pu, None)?;
        orbits.push(json!({
            "K": k,
            "representative": rep,
            "orbit_size": perm::orbit_size(&w, k) as u64,
            "intersection_shape": inter.shape,
            "intersection_order": inter.formula_order as u64,
        }));
    }
    let mut ok = true;
    let mut result = json!({"W": w, "n": w.total(), "orbits": orbits});
    if exhaustive {
        let classes = perm::exhaustive_double_cosets(&w, pu, cfg.n_max)?;
        let swept: Vec<&Composition> = classes.iter().map(|c| &c.label).collect();
        let agree = swept == labels.iter().collect::<Vec<_>>();
        ok &= agree;
        result["exhaustive"] = json!({
            "classes": classes.iter().map(|c| json!({"K": c.label, "size": c.size as u64})).collect::<Vec<_>>(),
            "agrees": agree,
        });
    }
    if let Some(f) = f {
        let cols = parse_columns(f)?;
        result["W_slash_F"] = json!({"F": cols, "shape": perm::w_slash_f(&w, &cols)?});
    }
    Ok(Report { ok, result })
}

fn budget() -> anyhow::Result<Option<Duration>> {
    match std::env::var("TORSIONLAB_BUDGET") {
        Err(_) => Ok(None),
        Ok(s) => {
            let secs: f64 = s
                .trim()
                .parse()
                .with_context(|| format!("TORSIONLAB_BUDGET=`{s}` is not a number of seconds"))?;
            if !(secs > 0.0 && secs.is_finite()) {
                bail!("TORSIONLAB_BUDGET must be positive");
            }
            Ok(Some(Duration::from_secs_f64(secs)))
        }
    }
}

fn verify_all(cfg: &RunConfig, only: &[String]) -> anyhow::Result<Report> {
    let check_cfg = CheckConfig {
        seed: cfg.seed,
        n_max: cfg.n_max,
        budget: budget()?,
        ..CheckConfig::default()
    };
    let results = if only.is_empty() {
        checks::run_all(&check_cfg)
    } else {
        let mut picked = Vec::new();
        for id in only {
            picked.push(checks::find(id).with_context(|| format!("no check with id `{id}`"))?);
        }
        picked.sort_by_key(|c| c.id);
        picked.dedup_by_key(|c| c.id);
        picked.iter().map(|c| c.run(&check_cfg)).collect()
    };
    let passed = results.iter().filter(|r| r.passed).count();
    Ok(Report {
        ok: passed == results.len(),
        result: json!({
            "passed": passed,
            "failed": results.len() - passed,
            "checks": results,
        }),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let report = match run(&cli.config, &cli.command) {
        Ok(r) => r,
        Err(e) => {
            match cli.config.format {
                Format::Json => {
                    let v = json!({"command": cli.command.name(), "config": &cli.config, "error": format!("{e:#}")});
                    let _ = writeln!(std::io::stdout().lock(), "{v}");
                }
                Format::Text => eprintln!("error: {e:#}"),
            }
            return ExitCode::from(2);
        }
    };
    let envelope = json!({
        "command": cli.command.name(),
        "ok": report.ok,
        "config": &cli.config,
        "result": report.result,
    });
    let out = match cli.config.format {
        Format::Json => serde_json::to_string_pretty(&envelope).expect("serializable") + "\n",
        Format::Text => render::text(&envelope),
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
