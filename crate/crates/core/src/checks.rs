//! The verification suite behind `verify-all` and the acceptance target.
//!
//! Checks `C01`–`C10` are the acceptance criteria; `X..` checks are extra
//! cross-validations. Each check is deterministic given the config, and
//! [`run_all`] reports in id order whatever order the checks finish in.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::Result;
use crate::models::{self, cpmup_model, ypi_degree, IndexSeq};
use crate::modp::{binom_mod_p, Prime};
use crate::perm::{self, Composition};
use crate::sl2::{self, CheckMode};
use crate::spectral::{self, VerdictStatus};
use crate::steenrod::{self, adem_normalize, OpWord, SteenrodOp};
use crate::{par, random, Element};

#[derive(Clone, Debug, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    /// Largest `n` for sweeps over all of `S_n`.
    pub n_max: usize,
    /// Random (word, element) pairs for the engine self-consistency check.
    pub word_samples: usize,
    /// Random elements per axiom.
    pub axiom_samples: usize,
    /// Random verdict queries.
    pub verdict_samples: usize,
    /// Wall-clock allowance per check; exceeding it fails the check.
    pub budget: Option<Duration>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0x5eed,
            n_max: perm::DEFAULT_N_MAX,
            word_samples: 500,
            axiom_samples: 200,
            verdict_samples: 500,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub over_budget: bool,
}

type Outcome = std::result::Result<String, String>;
type CheckFn = fn(&CheckConfig) -> Outcome;

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    run: CheckFn,
}

impl Check {
    pub fn run(&self, cfg: &CheckConfig) -> CheckResult {
        let start = Instant::now();
        let outcome = (self.run)(cfg);
        let elapsed = start.elapsed();
        let over_budget = cfg.budget.is_some_and(|b| elapsed > b);
        let (mut passed, mut detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if over_budget {
            passed = false;
            detail = format!(
                "{detail}; exceeded budget of {:?}",
                cfg.budget.unwrap_or_default()
            );
        }
        CheckResult {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
            over_budget,
        }
    }
}

pub const CHECKS: &[Check] = &[
    Check {
        id: "C01",
        name: "Adem identity P^{p^k} B P^{p^(k-1)}",
        run: adem_identity,
    },
    Check {
        id: "C02",
        name: "r_k by formula and by Steenrod operations",
        run: dual_pipeline,
    },
    Check {
        id: "C03",
        name: "Steenrod action agrees with admissible expansion",
        run: engine_consistency,
    },
    Check {
        id: "C04",
        name: "Bockstein, Cartan, derivation and instability axioms",
        run: axioms,
    },
    Check {
        id: "C05",
        name: "SL2 invariants q, r and invariant dimensions",
        run: invariants,
    },
    Check {
        id: "C06",
        name: "Double cosets against exhaustive S_n sweep",
        run: double_cosets,
    },
    Check {
        id: "C07",
        name: "Stabilizer intersections for W = (3,3)",
        run: stabilizers,
    },
    Check {
        id: "C08",
        name: "Mackey decomposition summaries",
        run: mackey,
    },
    Check {
        id: "C09",
        name: "Verdict table and totality sweep",
        run: verdicts,
    },
    Check {
        id: "C10",
        name: "K(Z,3) basis degree coherence",
        run: degree_coherence,
    },
    Check {
        id: "X01",
        name: "Lucas binomials against big integers",
        run: lucas,
    },
    Check {
        id: "X02",
        name: "Differential bidegree arithmetic",
        run: differentials,
    },
    Check {
        id: "X03",
        name: "Killing coefficient and Chern restriction",
        run: killing,
    },
    Check {
        id: "X04",
        name: "y-word evaluates to r_k",
        run: y_words,
    },
    Check {
        id: "X05",
        name: "Adem normal forms are admissible and stable",
        run: normal_forms,
    },
];

pub fn find(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

/// Runs every check, in parallel when available, sorted by id.
pub fn run_all(cfg: &CheckConfig) -> Vec<CheckResult> {
    let mut out = par::map_slice(CHECKS, |c| c.run(cfg));
    out.sort_by_key(|r| r.id);
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn prime(p: u32) -> Prime {
    Prime::new(p).expect("fixed prime")
}

fn adem_identity(_: &CheckConfig) -> Outcome {
    let mut n = 0;
    for p in [3, 5, 7] {
        let pr = prime(p);
        for k in 1..=3u32 {
            let hi = (p as u64).pow(k);
            let lo = (p as u64).pow(k - 1);
            let word = OpWord::new(
                pr,
                [
                    SteenrodOp::Power(hi),
                    SteenrodOp::Beta,
                    SteenrodOp::Power(lo),
                ],
            )
            .map_err(err)?;
            let expected = OpWord::new(
                pr,
                [
                    SteenrodOp::Beta,
                    SteenrodOp::Power(hi),
                    SteenrodOp::Power(lo),
                ],
            )
            .map_err(err)?;
            let sum = adem_normalize(&word);
            ensure(
                sum.len() == 1 && sum.coefficient(&expected).value() == 1,
                || format!("p={p}, k={k}: {word} normalizes to {sum}"),
            )?;
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn dual_pipeline(_: &CheckConfig) -> Outcome {
    let cases = [
        (3, 0),
        (3, 1),
        (3, 2),
        (5, 0),
        (5, 1),
        (5, 2),
        (7, 0),
        (7, 1),
    ];
    let results = par::map_slice(&cases, |&(p, k)| -> Outcome {
        let direct = models::r_k_direct(prime(p), k).map_err(err)?;
        let via = models::r_k_via_steenrod(prime(p), k).map_err(err)?;
        ensure(direct == via, || format!("p={p}, k={k}: {via} != {direct}"))?;
        Ok(String::new())
    });
    for r in results {
        r?;
    }
    Ok(format!("{} (p,k) pairs", cases.len()))
}

fn engine_consistency(cfg: &CheckConfig) -> Outcome {
    let models = [
        cpmup_model(prime(3)).map_err(err)?,
        cpmup_model(prime(5)).map_err(err)?,
    ];
    let results = par::map_range(cfg.word_samples as u64, |i| -> Outcome {
        let model = &models[(i % 2) as usize];
        let p = model.prime();
        let mut rng = random::stream(cfg.seed, i);
        let x = random::homogeneous(&mut rng, model, 6);
        let w = random::word(&mut rng, p, 4, p.as_u64() * p.as_u64()).map_err(err)?;
        let direct = steenrod::apply(&w, &x).map_err(err)?;
        let expanded = adem_normalize(&w).apply(&x).map_err(err)?;
        ensure(direct == expanded, || {
            format!("sample {i}: {w} on {x}: direct {direct}, expanded {expanded}")
        })?;
        Ok(String::new())
    });
    for r in results {
        r?;
    }
    Ok(format!("{} pairs, seed {}", cfg.word_samples, cfg.seed))
}

fn axiom_sample(
    cfg: &CheckConfig,
    i: u64,
    models: &[std::sync::Arc<crate::AlgebraModel>],
) -> Result<std::result::Result<(), String>> {
    let model = &models[(i % 2) as usize];
    let p = model.prime();
    let mut rng = random::stream(cfg.seed ^ 0xa710, i);
    let x = random::homogeneous(&mut rng, model, 7);
    let y = random::homogeneous(&mut rng, model, 7);
    let dx = x.degree()?.unwrap_or(0);

    let bb = steenrod::bockstein(&steenrod::bockstein(&x)?)?;
    if !bb.is_zero() {
        return Ok(Err(format!("sample {i}: BB({x}) = {bb}")));
    }

    let k = rand::Rng::gen_range(&mut rng, 0..=4u64);
    let lhs = steenrod::reduced_power(k, &x.multiply(&y)?)?;
    let mut rhs = Element::zero(model);
    for j in 0..=k {
        let t = steenrod::reduced_power(j, &x)?.multiply(&steenrod::reduced_power(k - j, &y)?)?;
        rhs = rhs.try_add(&t)?;
    }
    if lhs != rhs {
        return Ok(Err(format!(
            "sample {i}: Cartan fails for P{k} on ({x})*({y})"
        )));
    }

    let lhs = steenrod::bockstein(&x.multiply(&y)?)?;
    let first = steenrod::bockstein(&x)?.multiply(&y)?;
    let second = x.multiply(&steenrod::bockstein(&y)?)?;
    let rhs = if dx % 2 == 0 {
        first.try_add(&second)?
    } else {
        first.try_sub(&second)?
    };
    if lhs != rhs {
        return Ok(Err(format!("sample {i}: derivation fails on ({x})*({y})")));
    }

    if dx % 2 == 0 {
        let top = steenrod::reduced_power(u64::from(dx / 2), &x)?;
        let frob = x.pow(p.get());
        if top != frob {
            return Ok(Err(format!(
                "sample {i}: P{}({x}) = {top}, expected {frob}",
                dx / 2
            )));
        }
    }
    for above in 1..=3u64 {
        let k = u64::from(dx / 2) + above;
        let v = steenrod::reduced_power(k, &x)?;
        if !v.is_zero() {
            return Ok(Err(format!("sample {i}: P{k}({x}) = {v}, expected 0")));
        }
    }
    Ok(Ok(()))
}

fn axioms(cfg: &CheckConfig) -> Outcome {
    let models = [
        cpmup_model(prime(3)).map_err(err)?,
        cpmup_model(prime(5)).map_err(err)?,
    ];
    let results = par::map_range(cfg.axiom_samples as u64, |i| axiom_sample(cfg, i, &models));
    for r in results {
        r.map_err(err)??;
    }
    Ok(format!(
        "{} elements per axiom, seed {}",
        cfg.axiom_samples, cfg.seed
    ))
}

/// Dimensions of SL₂(𝔽₃)-invariant forms in Chow degrees 1 through 12.
pub const INVARIANT_DIMS_P3: [usize; 12] = [0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2];

fn invariants(_: &CheckConfig) -> Outcome {
    let p3 = prime(3);
    for x in [
        sl2::q_class(p3).map_err(err)?,
        sl2::r_class(p3).map_err(err)?,
    ] {
        let v = sl2::check_invariant(&x, CheckMode::FullGroup).map_err(err)?;
        ensure(v.invariant && v.checked == 24, || {
            format!("{x} moved by {:?}", v.witness)
        })?;
    }
    for p in [5, 7] {
        for x in [
            sl2::q_class(prime(p)).map_err(err)?,
            sl2::r_class(prime(p)).map_err(err)?,
        ] {
            let v = sl2::check_invariant(&x, CheckMode::Generators).map_err(err)?;
            ensure(v.invariant, || {
                format!("p={p}: {x} moved by {:?}", v.witness)
            })?;
        }
    }
    let dims: Vec<usize> = (1..=12)
        .map(|d| sl2::invariant_dim(p3, d, 12))
        .collect::<Result<_>>()
        .map_err(err)?;
    let counts: Vec<usize> = (1..=12).map(|d| sl2::qr_monomial_count(p3, d)).collect();
    ensure(dims == counts && dims == INVARIANT_DIMS_P3, || {
        format!("dims {dims:?}, q^a r^b counts {counts:?}")
    })?;
    Ok(format!("dims {dims:?}"))
}

/// Compositions of `n` into 1 to 3 positive parts.
pub fn small_compositions(n: usize) -> Vec<Composition> {
    let mut out = vec![Composition::new(vec![n])];
    for a in 1..n {
        out.push(Composition::new(vec![a, n - a]));
        for b in 1..n - a {
            out.push(Composition::new(vec![a, b, n - a - b]));
        }
    }
    out
}

fn exact_binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn double_cosets(cfg: &CheckConfig) -> Outcome {
    let mut cases = Vec::new();
    for p in [3usize, 5] {
        for n in p..=7.min(cfg.n_max) {
            for w in small_compositions(n) {
                cases.push((p, w));
            }
        }
    }
    for (p, w) in &cases {
        let (p, n) = (*p, w.total());
        let formula = perm::double_cosets(w, p).map_err(err)?;
        let exhaustive = perm::exhaustive_double_cosets(w, p, cfg.n_max).map_err(err)?;
        let labels: Vec<_> = exhaustive.iter().map(|c| c.label.clone()).collect();
        ensure(labels == formula, || {
            format!("W={w}, p={p}: formula {formula:?}, sweep {labels:?}")
        })?;
        let vandermonde: u128 = formula.iter().map(|k| perm::orbit_size(w, k)).sum();
        ensure(vandermonde == exact_binom(n, p), || {
            format!("W={w}, p={p}: orbit sizes sum to {vandermonde}")
        })?;
        let two_block = perm::factorial(p) * perm::factorial(n - p);
        for class in &exhaustive {
            let rep = perm::normalized_rep(&class.label, w, p).map_err(err)?;
            let inter = perm::stabilizer_intersection(&rep, w, p, None).map_err(err)?;
            let expected = w.factorial_product() * two_block / inter.formula_order;
            ensure(class.size == expected, || {
                format!(
                    "W={w}, p={p}, K={}: coset size {} vs {expected}",
                    class.label, class.size
                )
            })?;
        }
    }
    Ok(format!("{} (W, p) cases", cases.len()))
}

fn stabilizers(cfg: &CheckConfig) -> Outcome {
    let w = Composition::new(vec![3, 3]);
    let mut orders = Vec::new();
    for k in perm::double_cosets(&w, 3).map_err(err)? {
        let rep = perm::normalized_rep(&k, &w, 3).map_err(err)?;
        let r = perm::stabilizer_intersection(&rep, &w, 3, Some(cfg.n_max)).map_err(err)?;
        ensure(r.certified(), || {
            format!(
                "K={k}: formula {} vs sweep {:?}",
                r.formula_order, r.certified_order
            )
        })?;
        orders.push(format!("{k}:{}", r.formula_order));
    }
    Ok(orders.join(" "))
}

fn mackey(_: &CheckConfig) -> Outcome {
    let cases = [(3, 3), (6, 3), (9, 3), (15, 3), (10, 5), (15, 5)];
    for (n, p) in cases {
        let r = perm::mackey_decompose(n, p).map_err(err)?;
        let s = &r.summary;
        let p_sq_divides = n % (p as usize * p as usize) == 0;
        ensure(
            s.surviving == n / p as usize && s.invertible == !p_sq_divides,
            || format!("n={n}, p={p}: {s:?}"),
        )?;
    }
    Ok(format!("{} (n,p) pairs", cases.len()))
}

fn verdicts(cfg: &CheckConfig) -> Outcome {
    let v = |n, p, s: &str| {
        spectral::ypi_verdict(n, prime(p), &s.parse::<IndexSeq>().expect("literal"))
    };
    let fixed = [
        (6, 3, "0", VerdictStatus::Nonzero),
        (15, 5, "1", VerdictStatus::Nonzero),
        (6, 3, "0,1", VerdictStatus::Zero),
        (9, 3, "0,1", VerdictStatus::Unknown),
        (5, 3, "0", VerdictStatus::Zero),
    ];
    for (n, p, s, status) in fixed {
        let r = v(n, p, s).map_err(err)?;
        ensure(r.status == status, || {
            format!("({n},{p},({s})): got {:?}", r.status)
        })?;
    }
    let z = v(6, 3, "0,1").map_err(err)?;
    ensure(z.scalar.is_some_and(|c| c != 0), || {
        format!("(6,3,(0,1)) scalar {:?}", z.scalar)
    })?;

    let primes = [2, 3, 5, 7];
    for i in 0..cfg.verdict_samples as u64 {
        let mut rng = random::stream(cfg.seed ^ 0x7e4d, i);
        let n = rand::Rng::gen_range(&mut rng, 2..=200u64);
        let p = primes[rand::Rng::gen_range(&mut rng, 0..primes.len())];
        let idx = random::index_seq(&mut rng, 5);
        let a = spectral::ypi_verdict(n, prime(p), &idx)
            .map_err(|e| format!("({n},{p},{idx}): {e}"))?;
        let b = spectral::ypi_verdict(n, prime(p), &idx).map_err(err)?;
        ensure(a == b, || format!("({n},{p},{idx}) not deterministic"))?;
        ensure(
            a.citation.is_some() == (a.status != VerdictStatus::Unknown),
            || {
                format!(
                    "({n},{p},{idx}): status {:?} with citation {:?}",
                    a.status, a.citation
                )
            },
        )?;
    }
    Ok(format!(
        "5 fixed cases, {} random queries",
        cfg.verdict_samples
    ))
}

fn degree_coherence(_: &CheckConfig) -> Outcome {
    let p3 = prime(3);
    let spot: Vec<u64> = ["0", "1", "0,1"]
        .iter()
        .map(|s| ypi_degree(p3, &s.parse().expect("literal")))
        .collect::<Result<_>>()
        .map_err(err)?;
    ensure(spot == [8, 20, 27], || format!("spot degrees {spot:?}"))?;
    let mut checked = 0;
    for (p, wide_cap) in [(3, 64), (5, 130)] {
        let pr = prime(p);
        for cap in [models::kz3_default_cap(pr), wide_cap] {
            let basis = models::kz3_enumerate(pr, cap).map_err(err)?;
            for e in &basis.entries {
                if let Some(i) = e.as_y_generator() {
                    let d = ypi_degree(pr, i).map_err(err)?;
                    ensure(d == e.degree, || {
                        format!("p={p}: {} has degree {} vs {d}", e.label, e.degree)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked > 0, || "no y generators below the caps".into())?;
    Ok(format!("{checked} y generators"))
}

fn lucas(_: &CheckConfig) -> Outcome {
    for p in [3u32, 5, 7] {
        let pr = prime(p);
        let mut row = vec![BigUint::from(1u32)];
        for n in 0..=300u64 {
            for (k, c) in row.iter().enumerate() {
                let exact = (c % p).to_u32_digits().first().copied().unwrap_or(0);
                let lucas = binom_mod_p(n, k as u64, pr).value();
                ensure(exact == lucas, || {
                    format!("C({n},{k}) mod {p}: {lucas} vs {exact}")
                })?;
            }
            let mut next = vec![BigUint::from(1u32); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
    }
    Ok("n <= 300, p in {3,5,7}".into())
}

fn differentials(_: &CheckConfig) -> Outcome {
    let mut n = 0;
    for p in [2, 3, 5, 7] {
        for bits in 0u32..16 {
            let entries = (0..4).filter(|b| bits & (1 << b) != 0).collect();
            let i = IndexSeq::new(entries).map_err(err)?;
            for k in 0..i.least().unwrap_or(4) {
                let d = spectral::differential_target(prime(p), &i, k).map_err(err)?;
                ensure(d.is_consistent(), || format!("p={p}, I={i}, k={k}: {d:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} differentials"))
}

fn killing(_: &CheckConfig) -> Outcome {
    let tail = IndexSeq::new(vec![1, 2]).map_err(err)?;
    for p in [3u32, 5, 7] {
        let pr = prime(p);
        let pu = p as u64;
        for n in (pu..=200).step_by(p as usize) {
            let c = spectral::killing_coefficient(n, pr, &tail).map_err(err)?;
            ensure(c.is_zero() == (n % (pu * pu) == 0), || {
                format!("n={n}, p={p}: {c}")
            })?;
            let chern = spectral::chern_diag_restriction(pu, n, pr).map_err(err)?;
            let lucas = binom_mod_p(n, pu, pr).value();
            ensure(chern.residue == lucas, || {
                format!("n={n}, p={p}: {} vs {lucas}", chern.residue)
            })?;
        }
    }
    Ok("p | n <= 200, p in {3,5,7}".into())
}

fn y_words(_: &CheckConfig) -> Outcome {
    for (p, k) in [(3, 0), (3, 1), (5, 0), (5, 1)] {
        let r = models::verify_y_word(prime(p), k).map_err(err)?;
        ensure(r.holds, || {
            format!(
                "p={p}, k={k}: {} gives {}, expected {}",
                r.word, r.computed, r.expected
            )
        })?;
    }
    Ok("p in {3,5}, k in {0,1}".into())
}

fn normal_forms(cfg: &CheckConfig) -> Outcome {
    let samples = cfg.word_samples as u64;
    for i in 0..samples {
        let p = prime([3, 5, 7][(i % 3) as usize]);
        let mut rng = random::stream(cfg.seed ^ 0xad3, i);
        let w = random::word(&mut rng, p, 5, p.as_u64() * p.as_u64()).map_err(err)?;
        let sum = adem_normalize(&w);
        for (term, _) in sum.terms() {
            ensure(term.is_admissible(), || {
                format!("{w} produced inadmissible {term}")
            })?;
            ensure(term.degree() == w.degree(), || {
                format!("{w} produced {term} of another degree")
            })?;
            let again = adem_normalize(&term);
            ensure(
                again.len() == 1 && again.coefficient(&term).value() == 1,
                || format!("{term} is not fixed by normalization"),
            )?;
        }
    }
    Ok(format!("{samples} random words"))
}
