//! Odd-primary Steenrod operations.
//!
//! Words in the Bockstein `β` and reduced powers `P^i` are rewritten into the
//! admissible basis with the Adem relations, and act on elements of an
//! [`AlgebraModel`] through the Cartan formula, the derivation rule for `β`,
//! and the instability axiom on generators.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::model::{add_scaled, Terms};
use crate::algebra::{AlgebraModel, Element, Monomial};
use crate::error::{Error, Result};
use crate::modp::{binom_signed, mul_mod, neg_mod, Fp, Prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SteenrodOp {
    Beta,
    Power(u64),
}

impl fmt::Display for SteenrodOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SteenrodOp::Beta => f.write_str("B"),
            SteenrodOp::Power(i) => write!(f, "P{i}"),
        }
    }
}

impl FromStr for SteenrodOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "B" {
            return Ok(SteenrodOp::Beta);
        }
        match s.strip_prefix('P') {
            Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                digits
                    .parse()
                    .map(SteenrodOp::Power)
                    .map_err(|_| Error::InvalidWord(format!("index in `{s}` is too large")))
            }
            _ => Err(Error::InvalidWord(format!("unknown token `{s}`"))),
        }
    }
}

/// A composite of Steenrod operations, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpWord {
    prime: Prime,
    tokens: Vec<SteenrodOp>,
}

impl OpWord {
    /// Builds a word, dropping every `P^0`.
    pub fn new(prime: Prime, tokens: impl IntoIterator<Item = SteenrodOp>) -> Result<Self> {
        if !prime.is_odd() {
            return Err(Error::EvenPrime);
        }
        Ok(OpWord {
            prime,
            tokens: strip_identity(tokens),
        })
    }

    /// Parses whitespace-separated `B` / `P<digits>` tokens, e.g. `B P9 P3 P1`.
    pub fn parse(prime: Prime, text: &str) -> Result<Self> {
        let tokens = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<SteenrodOp>>>()?;
        Self::new(prime, tokens)
    }

    pub fn empty(prime: Prime) -> Result<Self> {
        Self::new(prime, [])
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn tokens(&self) -> &[SteenrodOp] {
        &self.tokens
    }

    /// `Σ 2 s_i (p - 1) + #β`.
    pub fn degree(&self) -> u64 {
        word_degree(&self.tokens, self.prime)
    }

    pub fn is_admissible(&self) -> bool {
        first_inadmissible(&self.tokens, self.prime.as_u64()).is_none()
    }

    /// The composite `self ∘ other`.
    pub fn then_after(&self, other: &OpWord) -> Result<OpWord> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch {
                expected: self.prime.get(),
                found: other.prime.get(),
            });
        }
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Ok(OpWord {
            prime: self.prime,
            tokens,
        })
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tokens(f, &self.tokens)
    }
}

fn write_tokens(f: &mut fmt::Formatter<'_>, tokens: &[SteenrodOp]) -> fmt::Result {
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

fn strip_identity(tokens: impl IntoIterator<Item = SteenrodOp>) -> Vec<SteenrodOp> {
    tokens
        .into_iter()
        .filter(|t| *t != SteenrodOp::Power(0))
        .collect()
}

pub fn word_degree(tokens: &[SteenrodOp], prime: Prime) -> u64 {
    let pm1 = prime.as_u64() - 1;
    tokens
        .iter()
        .map(|t| match t {
            SteenrodOp::Beta => 1,
            SteenrodOp::Power(i) => 2 * i * pm1,
        })
        .sum()
}

/// An 𝔽_p-combination of admissible words of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSum {
    prime: Prime,
    terms: BTreeMap<Vec<SteenrodOp>, u32>,
}

impl AdmissibleSum {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (OpWord, Fp)> + '_ {
        self.terms.iter().map(|(w, &c)| {
            (
                OpWord {
                    prime: self.prime,
                    tokens: w.clone(),
                },
                Fp::new(c as i64, self.prime),
            )
        })
    }

    /// Coefficient of a given word (zero when absent).
    pub fn coefficient(&self, word: &OpWord) -> Fp {
        Fp::new(
            self.terms.get(&word.tokens).copied().unwrap_or(0) as i64,
            self.prime,
        )
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next().map(|w| word_degree(w, self.prime))
    }

    /// Evaluates the sum on an element.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        let mut acc = Element::zero(x.model());
        for (w, c) in self.terms() {
            let y = apply(&w, x)?;
            acc = acc.try_add(&y.scale(Fp::new(c.value() as i64, x.model().prime())))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for AdmissibleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write_tokens(f, w)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Inadmissible {
    /// `β β` at the given position.
    DoubleBeta(usize),
    /// `P^a P^b` with `a < p b`.
    Powers(usize, u64, u64),
    /// `P^a β P^b` with `a ≤ p b`.
    PowerBetaPower(usize, u64, u64),
}

fn first_inadmissible(tokens: &[SteenrodOp], p: u64) -> Option<Inadmissible> {
    use SteenrodOp::*;
    for i in 0..tokens.len() {
        match (tokens[i], tokens.get(i + 1), tokens.get(i + 2)) {
            (Beta, Some(Beta), _) => return Some(Inadmissible::DoubleBeta(i)),
            (Power(a), Some(Power(b)), _) if a < p * b => {
                return Some(Inadmissible::Powers(i, a, *b))
            }
            (Power(a), Some(Beta), Some(Power(b))) if a <= p * b => {
                return Some(Inadmissible::PowerBetaPower(i, a, *b))
            }
            _ => {}
        }
    }
    None
}

fn sign(exp: u64, c: u32, p: u32) -> u32 {
    if exp % 2 == 1 {
        neg_mod(c, p)
    } else {
        c
    }
}

/// Right-hand side of `P^a P^b` for `a < p b`:
/// `Σ_i (-1)^{a+i} C((p-1)(b-i)-1, a-pi) P^{a+b-i} P^i`.
fn adem_powers(a: u64, b: u64, prime: Prime) -> Vec<(u32, Vec<SteenrodOp>)> {
    let p = prime.as_u64();
    let pu = prime.get();
    let mut out = Vec::new();
    for i in 0..=a / p {
        let c = binom_signed(
            (p as i64 - 1) * (b as i64 - i as i64) - 1,
            a as i64 - (p * i) as i64,
            prime,
        );
        let c = sign(a + i, c, pu);
        if c != 0 {
            out.push((
                c,
                strip_identity([SteenrodOp::Power(a + b - i), SteenrodOp::Power(i)]),
            ));
        }
    }
    out
}

/// Right-hand side of `P^a β P^b` for `a ≤ p b`:
/// `Σ_i (-1)^{a+i} C((p-1)(b-i), a-pi) β P^{a+b-i} P^i
///  + Σ_i (-1)^{a+i+1} C((p-1)(b-i)-1, a-pi-1) P^{a+b-i} β P^i`.
fn adem_power_beta_power(a: u64, b: u64, prime: Prime) -> Vec<(u32, Vec<SteenrodOp>)> {
    use SteenrodOp::*;
    let p = prime.as_u64();
    let pu = prime.get();
    let mut out = Vec::new();
    for i in 0..=a / p {
        let c = binom_signed(
            (p as i64 - 1) * (b as i64 - i as i64),
            a as i64 - (p * i) as i64,
            prime,
        );
        let c = sign(a + i, c, pu);
        if c != 0 {
            out.push((c, strip_identity([Beta, Power(a + b - i), Power(i)])));
        }
    }
    if a >= 1 {
        for i in 0..=(a - 1) / p {
            let c = binom_signed(
                (p as i64 - 1) * (b as i64 - i as i64) - 1,
                a as i64 - (p * i) as i64 - 1,
                prime,
            );
            let c = sign(a + i + 1, c, pu);
            if c != 0 {
                out.push((c, strip_identity([Power(a + b - i), Beta, Power(i)])));
            }
        }
    }
    out
}

/// Rewrites a word into the admissible basis by repeatedly replacing the
/// leftmost inadmissible pair.
pub fn adem_normalize(word: &OpWord) -> AdmissibleSum {
    let mut terms = BTreeMap::new();
    normalize_into(word.tokens.clone(), 1, word.prime, &mut terms);
    AdmissibleSum {
        prime: word.prime,
        terms,
    }
}

fn normalize_into(
    tokens: Vec<SteenrodOp>,
    coeff: u32,
    prime: Prime,
    acc: &mut BTreeMap<Vec<SteenrodOp>, u32>,
) {
    let p = prime.get();
    let (start, len, replacement) = match first_inadmissible(&tokens, prime.as_u64()) {
        None => {
            match acc.entry(tokens) {
                Entry::Vacant(v) => {
                    v.insert(coeff);
                }
                Entry::Occupied(mut o) => {
                    let c = (*o.get() + coeff) % p;
                    if c == 0 {
                        o.remove();
                    } else {
                        *o.get_mut() = c;
                    }
                }
            }
            return;
        }
        Some(Inadmissible::DoubleBeta(_)) => return,
        Some(Inadmissible::Powers(i, a, b)) => (i, 2, adem_powers(a, b, prime)),
        Some(Inadmissible::PowerBetaPower(i, a, b)) => (i, 3, adem_power_beta_power(a, b, prime)),
    };
    for (c, middle) in replacement {
        let mut next = Vec::with_capacity(tokens.len() + 1);
        next.extend_from_slice(&tokens[..start]);
        next.extend(middle);
        next.extend_from_slice(&tokens[start + len..]);
        normalize_into(next, mul_mod(coeff, c, p), prime, acc);
    }
}

/// Applies `word` to `x`, rightmost token first.
pub fn apply(word: &OpWord, x: &Element) -> Result<Element> {
    let model = x.model();
    if model.prime() != word.prime {
        return Err(Error::PrimeMismatch {
            expected: model.prime().get(),
            found: word.prime.get(),
        });
    }
    let mut ctx = ActionContext::new(Arc::clone(model));
    let mut cur = x.raw_terms().clone();
    for op in word.tokens.iter().rev() {
        cur = match *op {
            SteenrodOp::Beta => ctx.beta_terms(&cur),
            SteenrodOp::Power(k) => ctx.power_terms(&cur, k),
        };
        if cur.is_empty() {
            break;
        }
    }
    Ok(Element::from_terms(Arc::clone(model), cur))
}

/// `β(x)`.
pub fn bockstein(x: &Element) -> Result<Element> {
    apply(&OpWord::new(x.model().prime(), [SteenrodOp::Beta])?, x)
}

/// `P^k(x)`.
pub fn reduced_power(k: u64, x: &Element) -> Result<Element> {
    apply(&OpWord::new(x.model().prime(), [SteenrodOp::Power(k)])?, x)
}

/// Per-application memo of `P^i(g^e)` on generator powers.
struct ActionContext {
    model: Arc<AlgebraModel>,
    gen_powers: HashMap<(usize, u32, u64), Terms>,
}

impl ActionContext {
    fn new(model: Arc<AlgebraModel>) -> Self {
        ActionContext {
            model,
            gen_powers: HashMap::new(),
        }
    }

    fn single(&self, m: Monomial) -> Terms {
        let mut t = Terms::new();
        t.insert(m, 1);
        t
    }

    /// `P^i(g)` from the table, closed by instability.
    fn power_on_generator(&self, idx: usize, i: u64) -> Terms {
        let g = self.model.generator(idx);
        let deg = g.degree as u64;
        if i == 0 {
            return self.single(self.model.generator_monomial(idx, 1));
        }
        if 2 * i > deg {
            return Terms::new();
        }
        if 2 * i == deg && !g.is_exterior() {
            return self.single(self.model.generator_monomial(idx, self.model.prime().get()));
        }
        self.model
            .table_power(idx, i as u32)
            .cloned()
            .unwrap_or_default()
    }

    /// `P^i(g^e)` via `P^i(g·g^{e-1}) = Σ_j P^j(g) P^{i-j}(g^{e-1})`.
    fn power_on_generator_power(&mut self, idx: usize, e: u32, i: u64) -> Terms {
        if i == 0 {
            return self.single(self.model.generator_monomial(idx, e));
        }
        let deg = self.model.generator(idx).degree as u64;
        if 2 * i > deg * e as u64 {
            return Terms::new();
        }
        if e == 1 {
            return self.power_on_generator(idx, i);
        }
        if let Some(t) = self.gen_powers.get(&(idx, e, i)) {
            return t.clone();
        }
        let p = self.model.prime().get();
        let mut out = Terms::new();
        for j in 0..=i.min(deg / 2) {
            let left = self.power_on_generator(idx, j);
            if left.is_empty() {
                continue;
            }
            let right = self.power_on_generator_power(idx, e - 1, i - j);
            if right.is_empty() {
                continue;
            }
            add_scaled(&mut out, &self.model.mul_terms(&left, &right), 1, p);
        }
        self.gen_powers.insert((idx, e, i), out.clone());
        out
    }

    fn power_terms(&mut self, x: &Terms, k: u64) -> Terms {
        let p = self.model.prime().get();
        let mut out = Terms::new();
        for (m, &c) in x {
            let y = self.power_on_monomial(m, k);
            add_scaled(&mut out, &y, c, p);
        }
        out
    }

    /// Cartan formula over the generator factors of `m`, tracking the
    /// partial total power up to index `k`.
    fn power_on_monomial(&mut self, m: &Monomial, k: u64) -> Terms {
        let p = self.model.prime().get();
        let mut partial: BTreeMap<u64, Terms> = BTreeMap::new();
        partial.insert(0, self.single(self.model.unit_monomial()));
        for (idx, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let deg = self.model.generator(idx).degree as u64;
            let top = (deg * e as u64 / 2).min(k);
            let factor: Vec<(u64, Terms)> = (0..=top)
                .map(|i| (i, self.power_on_generator_power(idx, e, i)))
                .filter(|(_, t)| !t.is_empty())
                .collect();
            let mut next: BTreeMap<u64, Terms> = BTreeMap::new();
            for (j, left) in &partial {
                for (i, right) in &factor {
                    if j + i > k {
                        break;
                    }
                    let prod = self.model.mul_terms(left, right);
                    if !prod.is_empty() {
                        add_scaled(next.entry(j + i).or_default(), &prod, 1, p);
                    }
                }
            }
            next.retain(|_, t| !t.is_empty());
            partial = next;
            if partial.is_empty() {
                return Terms::new();
            }
        }
        partial.remove(&k).unwrap_or_default()
    }

    fn beta_terms(&mut self, x: &Terms) -> Terms {
        let p = self.model.prime().get();
        let mut out = Terms::new();
        for (m, &c) in x {
            let y = self.beta_on_monomial(m);
            add_scaled(&mut out, &y, c, p);
        }
        out
    }

    /// `β(prefix · g^e · suffix) = (-1)^{|prefix|} prefix · β(g^e) · suffix`
    /// summed over the factors, with `β(g^e) = e g^{e-1} β(g)` for even `g`.
    fn beta_on_monomial(&mut self, m: &Monomial) -> Terms {
        let model = Arc::clone(&self.model);
        let p = model.prime().get();
        let exps = m.exponents();
        let mut out = Terms::new();
        for (idx, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let bg = model.beta_of(idx);
            if bg.is_empty() {
                continue;
            }
            let mult = e % p;
            if mult == 0 {
                continue;
            }
            let mut prefix_exps: Vec<u32> = exps.to_vec();
            let mut suffix_exps: Vec<u32> = exps.to_vec();
            for (j, (pe, se)) in prefix_exps
                .iter_mut()
                .zip(suffix_exps.iter_mut())
                .enumerate()
            {
                if j >= idx {
                    *pe = 0;
                }
                if j <= idx {
                    *se = 0;
                }
            }
            let prefix = model
                .monomial(&prefix_exps)
                .expect("sub-monomial of a valid monomial");
            let suffix = model
                .monomial(&suffix_exps)
                .expect("sub-monomial of a valid monomial");
            let negative = prefix.degree() % 2 == 1;
            let mut middle = self.single(model.generator_monomial(idx, e - 1));
            middle = model.mul_terms(&middle, bg);
            let mut t = model.mul_terms(&self.single(prefix), &middle);
            t = model.mul_terms(&t, &self.single(suffix));
            let scale = if negative { neg_mod(mult, p) } else { mult };
            add_scaled(&mut out, &t, scale, p);
        }
        out
    }
}
