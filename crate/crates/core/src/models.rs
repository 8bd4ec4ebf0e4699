//! Concrete models: mod-p cohomology of `B(C_p × μ_p)`, the classes `r_k`,
//! and a degree-truncated additive basis for mod-p cohomology of `K(ℤ,3)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraModel, Element, ModelBuilder};
use crate::error::{Error, Result};
use crate::modp::Prime;
use crate::steenrod::{self, OpWord, SteenrodOp};

/// `Λ(a, b) ⊗ 𝔽_p[ξ, η]` with `|a| = |b| = 1`, `|ξ| = |η| = 2`, `β a = ξ`,
/// `β b = η`. Reduced powers on the generators follow from instability.
///
/// Generator names are `a`, `b`, `xi`, `eta`.
pub fn cpmup_model(p: Prime) -> Result<Arc<AlgebraModel>> {
    if !p.is_odd() {
        return Err(Error::EvenPrime);
    }
    ModelBuilder::new("cpmup", p)
        .exterior("a", 1)
        .exterior("b", 1)
        .polynomial("xi", 2)
        .polynomial("eta", 2)
        .beta("a", "xi")
        .beta("b", "eta")
        .build()
}

/// The one-variable factor `Λ(u) ⊗ 𝔽_p[v]` used for Künneth counts.
pub fn lens_factor_model(p: Prime) -> Result<Arc<AlgebraModel>> {
    ModelBuilder::new("lens", p)
        .exterior("u", 1)
        .polynomial("v", 2)
        .beta("u", "v")
        .build()
}

/// `ζ̄ = ξ b − a η`, the reduction of the integral degree-3 generator.
pub fn zeta(model: &Arc<AlgebraModel>) -> Result<Element> {
    Element::parse(model, "xi*b - a*eta")
}

fn checked_pow(p: Prime, e: u32) -> Result<u64> {
    p.as_u64().checked_pow(e).ok_or(Error::Overflow("p^k"))
}

/// `r_k = ξη(ξ^{p^{k+1}-1} − η^{p^{k+1}-1})`.
pub fn r_k_direct(p: Prime, k: u32) -> Result<Element> {
    let model = cpmup_model(p)?;
    let top = checked_pow(p, k + 1)?;
    let top = u32::try_from(top).map_err(|_| Error::Overflow("r_k exponent"))?;
    let xi_part = Element::monomial(&model, &[0, 0, top, 1], 1)?;
    let eta_part = Element::monomial(&model, &[0, 0, 1, top], 1)?;
    xi_part.try_sub(&eta_part)
}

/// `r_0 = β P^1 (ζ̄)` and `r_k = P^{p^k}(r_{k-1})`.
pub fn r_k_via_steenrod(p: Prime, k: u32) -> Result<Element> {
    let model = cpmup_model(p)?;
    let z = zeta(&model)?;
    let mut r = steenrod::apply(
        &OpWord::new(p, [SteenrodOp::Beta, SteenrodOp::Power(1)])?,
        &z,
    )?;
    for j in 1..=k {
        r = steenrod::reduced_power(checked_pow(p, j)?, &r)?;
    }
    Ok(r)
}

/// `β P^{p^k} ⋯ P^p P^1`.
pub fn y_word(p: Prime, k: u32) -> Result<OpWord> {
    let mut tokens = vec![SteenrodOp::Beta];
    for j in (0..=k).rev() {
        tokens.push(SteenrodOp::Power(checked_pow(p, j)?));
    }
    OpWord::new(p, tokens)
}

/// `P^{p^k} ⋯ P^p P^1`, the word defining `x̄_{p,k}` from `x̄_1`.
pub fn x_word(p: Prime, k: u32) -> Result<OpWord> {
    let tokens = (0..=k)
        .rev()
        .map(|j| checked_pow(p, j).map(SteenrodOp::Power))
        .collect::<Result<Vec<_>>>()?;
    OpWord::new(p, tokens)
}

#[derive(Clone, Debug, Serialize)]
pub struct YWordReport {
    pub prime: u32,
    pub k: u32,
    pub word: String,
    pub holds: bool,
    pub computed: String,
    pub expected: String,
    /// Whether the word `β P^k P^{k-1} ⋯ P^1` (indices not raised to powers
    /// of p) gives the same class. It coincides with `word` only for k = 0.
    pub literal_index_word_matches: bool,
}

/// Evaluates `β P^{p^k} ⋯ P^1` on `ζ̄` and compares with `r_k`.
pub fn verify_y_word(p: Prime, k: u32) -> Result<YWordReport> {
    let model = cpmup_model(p)?;
    let z = zeta(&model)?;
    let word = y_word(p, k)?;
    let computed = steenrod::apply(&word, &z)?;
    let expected = r_k_direct(p, k)?;

    let mut literal = vec![SteenrodOp::Beta];
    literal.extend((1..=k.max(1) as u64).rev().map(SteenrodOp::Power));
    let literal = steenrod::apply(&OpWord::new(p, literal)?, &z)?;

    Ok(YWordReport {
        prime: p.get(),
        k,
        word: word.to_string(),
        holds: computed == expected,
        computed: computed.to_string(),
        expected: expected.to_string(),
        literal_index_word_matches: literal == expected,
    })
}

/// A strictly increasing sequence `I = (i_m < ⋯ < i_1)` of non-negative
/// integers, written smallest first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "Vec<u32>")]
pub struct IndexSeq(Vec<u32>);

impl From<IndexSeq> for Vec<u32> {
    fn from(i: IndexSeq) -> Self {
        i.0
    }
}

impl IndexSeq {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndexSeq(format!(
                "{entries:?} is not strictly increasing"
            )));
        }
        Ok(IndexSeq(entries))
    }

    pub fn empty() -> Self {
        IndexSeq(Vec::new())
    }

    pub fn single(k: u32) -> Self {
        IndexSeq(vec![k])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i_m`, the smallest entry.
    pub fn least(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// `(k, i_m, …, i_1)`; requires `k < i_m`.
    pub fn prepend(&self, k: u32) -> Result<Self> {
        if let Some(least) = self.least() {
            if k >= least {
                return Err(Error::InvalidIndexSeq(format!(
                    "{k} is not below the least entry {least} of {self}"
                )));
            }
        }
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(k);
        v.extend_from_slice(&self.0);
        Ok(IndexSeq(v))
    }
}

impl fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for IndexSeq {
    type Err = Error;
    /// Accepts `0,1`, `(0,1)` or an empty string.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(IndexSeq::empty());
        }
        let entries = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidIndexSeq(format!("bad entry `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexSeq::new(entries)
    }
}

/// `deg y_{p,I} = 1 + Σ_j (2 p^{i_j+1} + 1)`.
pub fn ypi_degree(p: Prime, index: &IndexSeq) -> Result<u64> {
    index.entries().iter().try_fold(1u64, |acc, &i| {
        checked_pow(p, i + 1)?
            .checked_mul(2)
            .and_then(|t| t.checked_add(1))
            .and_then(|t| t.checked_add(acc))
            .ok_or(Error::Overflow("deg y_{p,I}"))
    })
}

/// A generator of the truncated `K(ℤ,3)` model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kz3Generator {
    /// `x̄_1`, degree 3.
    X1,
    /// `x̄_{p,k} = P^{p^k}⋯P^1 x̄_1`, exterior.
    X(u32),
    /// `y_{p,I} = β(x̄_{p,i_m} ⋯ x̄_{p,i_1})`, polynomial.
    Y(IndexSeq),
}

impl Kz3Generator {
    pub fn label(&self, p: Prime) -> String {
        match self {
            Kz3Generator::X1 => "x1".into(),
            Kz3Generator::X(k) => format!("x{p},{k}"),
            Kz3Generator::Y(i) if i.len() == 1 => format!("y{p},{}", i.entries()[0]),
            Kz3Generator::Y(i) => format!("y{p},{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kz3Entry {
    pub label: String,
    pub degree: u64,
    #[serde(skip)]
    pub factors: Vec<(Kz3Generator, u32)>,
}

impl Kz3Entry {
    /// The index sequence when this entry is a single `y` generator.
    pub fn as_y_generator(&self) -> Option<&IndexSeq> {
        match self.factors.as_slice() {
            [(Kz3Generator::Y(i), 1)] => Some(i),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Kz3Basis {
    pub prime: u32,
    pub cap: u64,
    pub entries: Vec<Kz3Entry>,
}

pub const KZ3_ENTRY_BUDGET: usize = 200_000;

pub fn kz3_default_cap(p: Prime) -> u64 {
    2 * p.as_u64() * p.as_u64() + 4
}

/// Exhaustive additive basis of `Λ(x̄_1, x̄_{p,0}, x̄_{p,1}, …) ⊗ 𝔽_p[y_{p,I}]`
/// in degrees `≤ cap`, sorted by degree and then label.
///
/// Generator degrees are read off the operation words that define them.
pub fn kz3_enumerate(p: Prime, cap: u64) -> Result<Kz3Basis> {
    if !p.is_odd() {
        return Err(Error::EvenPrime);
    }
    let mut exterior: Vec<(Kz3Generator, u64)> = Vec::new();
    if 3 <= cap {
        exterior.push((Kz3Generator::X1, 3));
    }
    let mut x_degrees = Vec::new();
    for k in 0u32.. {
        let Ok(w) = x_word(p, k) else { break };
        let d = 3 + w.degree();
        if d > cap {
            break;
        }
        x_degrees.push(d);
        exterior.push((Kz3Generator::X(k), d));
    }
    // y_I = β(product of x̄_{p,i}), one degree above the product
    let mut polynomial: Vec<(Kz3Generator, u64)> = Vec::new();
    let kmax = x_degrees.len();
    for mask in 1u64..(1u64 << kmax) {
        let idx: Vec<u32> = (0..kmax as u32).filter(|i| mask >> i & 1 == 1).collect();
        let d: u64 = idx.iter().map(|&i| x_degrees[i as usize]).sum::<u64>() + 1;
        if d <= cap {
            polynomial.push((Kz3Generator::Y(IndexSeq::new(idx)?), d));
        }
    }

    let mut entries = Vec::new();
    let mut factors = Vec::new();
    enumerate_ext(
        p,
        cap,
        &exterior,
        0,
        0,
        &polynomial,
        &mut factors,
        &mut entries,
    )?;
    entries.sort_by(|a: &Kz3Entry, b| a.degree.cmp(&b.degree).then_with(|| a.label.cmp(&b.label)));
    Ok(Kz3Basis {
        prime: p.get(),
        cap,
        entries,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_ext(
    p: Prime,
    cap: u64,
    exterior: &[(Kz3Generator, u64)],
    start: usize,
    degree: u64,
    polynomial: &[(Kz3Generator, u64)],
    factors: &mut Vec<(Kz3Generator, u32)>,
    out: &mut Vec<Kz3Entry>,
) -> Result<()> {
    enumerate_poly(p, cap, polynomial, 0, degree, factors, out)?;
    for i in start..exterior.len() {
        let (g, d) = &exterior[i];
        if degree + d > cap {
            continue;
        }
        factors.push((g.clone(), 1));
        enumerate_ext(
            p,
            cap,
            exterior,
            i + 1,
            degree + d,
            polynomial,
            factors,
            out,
        )?;
        factors.pop();
    }
    Ok(())
}

fn enumerate_poly(
    p: Prime,
    cap: u64,
    polynomial: &[(Kz3Generator, u64)],
    start: usize,
    degree: u64,
    factors: &mut Vec<(Kz3Generator, u32)>,
    out: &mut Vec<Kz3Entry>,
) -> Result<()> {
    if start == polynomial.len() {
        if out.len() >= KZ3_ENTRY_BUDGET {
            return Err(Error::CapExceeded {
                what: "K(Z,3) basis size",
                value: out.len() as u64 + 1,
                cap: KZ3_ENTRY_BUDGET as u64,
            });
        }
        out.push(make_entry(p, degree, factors));
        return Ok(());
    }
    let (g, d) = &polynomial[start];
    let mut e = 0u32;
    loop {
        let deg = degree + e as u64 * d;
        if deg > cap {
            break;
        }
        if e > 0 {
            factors.push((g.clone(), e));
        }
        enumerate_poly(p, cap, polynomial, start + 1, deg, factors, out)?;
        if e > 0 {
            factors.pop();
        }
        e += 1;
    }
    Ok(())
}

fn make_entry(p: Prime, degree: u64, factors: &[(Kz3Generator, u32)]) -> Kz3Entry {
    let label = if factors.is_empty() {
        "1".to_string()
    } else {
        factors
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    g.label(p)
                } else {
                    format!("{}^{e}", g.label(p))
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    };
    Kz3Entry {
        label,
        degree,
        factors: factors.to_vec(),
    }
}

/// Dimension of each degree `0..=max` of a model.
pub fn poincare_dims(model: &AlgebraModel, max: u32) -> Vec<usize> {
    (0..=max).map(|d| model.monomial_basis(d).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn r_k_direct_examples() {
        let m = cpmup_model(p(3)).unwrap();
        assert_eq!(
            r_k_direct(p(3), 0).unwrap(),
            Element::parse(&m, "xi^3*eta - xi*eta^3").unwrap()
        );
        assert_eq!(
            r_k_direct(p(3), 1).unwrap(),
            Element::parse(&m, "xi*eta*(xi^8 - eta^8)").unwrap()
        );
        let m5 = cpmup_model(p(5)).unwrap();
        assert_eq!(
            r_k_direct(p(5), 0).unwrap(),
            Element::parse(&m5, "xi*eta*(xi^4 - eta^4)").unwrap()
        );
        assert_eq!(r_k_direct(p(5), 0).unwrap().chow_degree(), Ok(Some(6)));
    }

    #[test]
    fn r_k_pipelines_agree_small() {
        for (q, k) in [(3, 0), (3, 1), (5, 0), (5, 1), (7, 0)] {
            assert_eq!(
                r_k_via_steenrod(p(q), k).unwrap(),
                r_k_direct(p(q), k).unwrap(),
                "p={q} k={k}"
            );
        }
        let m5 = cpmup_model(p(5)).unwrap();
        assert_eq!(
            r_k_via_steenrod(p(5), 1).unwrap(),
            Element::parse(&m5, "xi*eta*(xi^24 - eta^24)").unwrap()
        );
    }

    #[test]
    fn zeta_is_beta_closed() {
        for q in [3, 5, 7] {
            let m = cpmup_model(p(q)).unwrap();
            assert!(steenrod::bockstein(&zeta(&m).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn y_word_examples() {
        assert_eq!(y_word(p(3), 2).unwrap().to_string(), "B P9 P3 P1");
        for (q, k) in [(3, 0), (3, 2), (5, 1)] {
            let rep = verify_y_word(p(q), k).unwrap();
            assert!(rep.holds, "{rep:?}");
        }
        let rep = verify_y_word(p(3), 1).unwrap();
        assert!(!rep.literal_index_word_matches);
        assert!(verify_y_word(p(3), 0).unwrap().literal_index_word_matches);
    }

    #[test]
    fn degree_formula() {
        let d = |q, s: &str| ypi_degree(p(q), &s.parse().unwrap()).unwrap();
        assert_eq!(d(3, "0"), 8);
        assert_eq!(d(3, "1"), 20);
        assert_eq!(d(3, "0,1"), 27);
        assert_eq!(d(3, "(0,1)"), 27);
        assert_eq!(d(5, "0"), 12);
        assert!(ypi_degree(p(3), &IndexSeq::single(60)).is_err());
    }

    #[test]
    fn index_seq_validation() {
        assert!("1,0".parse::<IndexSeq>().is_err());
        assert!("0,0".parse::<IndexSeq>().is_err());
        assert!("a".parse::<IndexSeq>().is_err());
        assert_eq!("".parse::<IndexSeq>().unwrap(), IndexSeq::empty());
        assert_eq!("(0, 2)".parse::<IndexSeq>().unwrap().to_string(), "(0,2)");
        let i: IndexSeq = "1,2".parse().unwrap();
        assert_eq!(i.prepend(0).unwrap().entries(), &[0, 1, 2]);
        assert!(i.prepend(1).is_err());
    }

    #[test]
    fn kz3_small_caps() {
        let labels = |q, d| -> Vec<(String, u64)> {
            kz3_enumerate(p(q), d)
                .unwrap()
                .entries
                .into_iter()
                .map(|e| (e.label, e.degree))
                .collect()
        };
        assert_eq!(
            labels(3, 8),
            vec![
                ("1".into(), 0),
                ("x1".into(), 3),
                ("x3,0".into(), 7),
                ("y3,0".into(), 8)
            ]
        );
        assert_eq!(labels(5, 2), vec![("1".into(), 0)]);
        let l11 = labels(3, 11);
        assert!(l11.contains(&("x1*x3,0".into(), 10)));
        assert!(l11.contains(&("x1*y3,0".into(), 11)));
        assert_eq!(l11.len(), 6);
    }

    #[test]
    fn kz3_default_cap_reaches_y1() {
        let b = kz3_enumerate(p(3), kz3_default_cap(p(3))).unwrap();
        assert_eq!(b.cap, 22);
        assert!(b
            .entries
            .iter()
            .any(|e| e.label == "y3,1" && e.degree == 20));
        assert!(b
            .entries
            .iter()
            .any(|e| e.label == "y3,0^2" && e.degree == 16));
    }

    #[test]
    fn kunneth_dimensions() {
        let f = poincare_dims(&lens_factor_model(p(3)).unwrap(), 20);
        let total = poincare_dims(&cpmup_model(p(3)).unwrap(), 20);
        for d in 0..=20 {
            let conv: usize = (0..=d).map(|i| f[i] * f[d - i]).sum();
            assert_eq!(conv, total[d]);
        }
    }
}
