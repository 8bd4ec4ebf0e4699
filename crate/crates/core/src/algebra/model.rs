use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use smallvec::SmallVec;

use super::{parse, Exponents, GeneratorKind, GeneratorSpec, Monomial};
use crate::error::{Error, Result};
use crate::modp::{add_mod, mul_mod, neg_mod, Prime};

pub(crate) type Terms = BTreeMap<Monomial, u32>;

/// A presented graded-commutative 𝔽_p-algebra with Steenrod data on its
/// generators.
#[derive(Debug, PartialEq, Eq)]
pub struct AlgebraModel {
    name: String,
    prime: Prime,
    generators: Vec<GeneratorSpec>,
    index: HashMap<String, usize>,
    beta: Vec<Terms>,
    // powers[g][i] = P^i(g) for 1 <= i with 2i < deg g; absent entries are zero
    powers: Vec<BTreeMap<u32, Terms>>,
}

impl AlgebraModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn generator(&self, idx: usize) -> &GeneratorSpec {
        &self.generators[idx]
    }

    pub(crate) fn beta_of(&self, idx: usize) -> &Terms {
        &self.beta[idx]
    }

    /// Table value of `P^i` on a generator, without the instability rule.
    pub(crate) fn table_power(&self, idx: usize, i: u32) -> Option<&Terms> {
        self.powers[idx].get(&i)
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    pub(crate) fn unit_monomial(&self) -> Monomial {
        Monomial::one(self.generators.len())
    }

    pub(crate) fn generator_monomial(&self, idx: usize, exp: u32) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, self.generators.len());
        exps[idx] = exp;
        Monomial::from_parts(self.generators[idx].degree * exp, exps)
    }

    /// Builds a monomial from raw exponents, rejecting exterior exponents
    /// above one.
    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        if exps.len() != self.generators.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents, got {}",
                self.generators.len(),
                exps.len()
            )));
        }
        let mut degree = 0u32;
        for (g, &e) in self.generators.iter().zip(exps) {
            if g.is_exterior() && e > 1 {
                return Err(Error::ExteriorExponent(g.name.clone()));
            }
            degree = e
                .checked_mul(g.degree)
                .and_then(|d| d.checked_add(degree))
                .ok_or(Error::Overflow("monomial degree"))?;
        }
        Ok(Monomial::from_parts(degree, exps.iter().copied().collect()))
    }

    /// All monomials of total degree `d`, in ascending monomial order.
    pub fn monomial_basis(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps: Exponents = SmallVec::from_elem(0, self.generators.len());
        self.basis_rec(0, d, &mut exps, &mut out);
        out.sort();
        out
    }

    fn basis_rec(&self, idx: usize, remaining: u32, exps: &mut Exponents, out: &mut Vec<Monomial>) {
        if idx == self.generators.len() {
            if remaining == 0 {
                let degree = self
                    .generators
                    .iter()
                    .zip(exps.iter())
                    .map(|(g, &e)| g.degree * e)
                    .sum();
                out.push(Monomial::from_parts(degree, exps.clone()));
            }
            return;
        }
        let g = &self.generators[idx];
        let max = if g.is_exterior() {
            1.min(remaining / g.degree)
        } else {
            remaining / g.degree
        };
        for e in 0..=max {
            exps[idx] = e;
            self.basis_rec(idx + 1, remaining - e * g.degree, exps, out);
        }
        exps[idx] = 0;
    }

    /// Product of two monomials with its Koszul sign, or `None` when an
    /// exterior generator would appear twice.
    pub(crate) fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut exps = a.exps.clone();
        let mut odd_in_a_after = 0u32;
        let mut negative = false;
        // walk generators from the last one down so that for each odd factor
        // of b we know how many odd factors of a sit to its right
        for idx in (0..self.generators.len()).rev() {
            let g = &self.generators[idx];
            let (ea, eb) = (a.exps[idx], b.exps[idx]);
            if g.is_exterior() {
                if ea + eb > 1 {
                    return None;
                }
                if eb == 1 && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
                odd_in_a_after += ea;
            }
            exps[idx] = ea + eb;
        }
        Some((Monomial::from_parts(a.degree + b.degree, exps), negative))
    }

    pub(crate) fn mul_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let p = self.prime.get();
        let mut out = Terms::new();
        for (ma, &ca) in a {
            for (mb, &cb) in b {
                if let Some((m, neg)) = self.mul_monomials(ma, mb) {
                    let mut c = mul_mod(ca, cb, p);
                    if neg {
                        c = neg_mod(c, p);
                    }
                    add_term(&mut out, m, c, p);
                }
            }
        }
        out
    }

    pub(crate) fn pow_terms(&self, base: &Terms, mut exp: u32) -> Terms {
        let mut acc = Terms::new();
        acc.insert(self.unit_monomial(), 1 % self.prime.get());
        let mut b = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_terms(&acc, &b);
            }
            exp >>= 1;
            if exp > 0 {
                b = self.mul_terms(&b, &b);
            }
        }
        acc
    }
}

/// Adds `c · m` into `acc`, dropping the entry if it cancels.
pub(crate) fn add_term(acc: &mut Terms, m: Monomial, c: u32, p: u32) {
    if c == 0 {
        return;
    }
    match acc.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = add_mod(*o.get(), c, p);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn add_scaled(acc: &mut Terms, other: &Terms, scale: u32, p: u32) {
    if scale == 0 {
        return;
    }
    for (m, &c) in other {
        add_term(acc, m.clone(), mul_mod(c, scale, p), p);
    }
}

/// Common degree of the terms; `Ok(None)` for zero.
pub(crate) fn terms_degree(t: &Terms) -> Result<Option<u32>> {
    let mut it = t.keys().map(Monomial::degree);
    let Some(first) = it.next() else {
        return Ok(None);
    };
    if it.all(|d| d == first) {
        Ok(Some(first))
    } else {
        Err(Error::NotHomogeneous)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Incremental construction of an [`AlgebraModel`].
///
/// Table entries are written as expressions in the declared generators and
/// are checked for degree and instability when the model is built.
#[derive(Clone, Debug)]
pub struct ModelBuilder {
    name: String,
    prime: Prime,
    generators: Vec<GeneratorSpec>,
    beta: Vec<(String, String)>,
    powers: Vec<(String, u32, String)>,
}

impl ModelBuilder {
    pub fn new(name: impl Into<String>, prime: Prime) -> Self {
        ModelBuilder {
            name: name.into(),
            prime,
            generators: Vec::new(),
            beta: Vec::new(),
            powers: Vec::new(),
        }
    }

    pub fn polynomial(mut self, name: impl Into<String>, degree: u32) -> Self {
        self.generators.push(GeneratorSpec {
            name: name.into(),
            degree,
            kind: GeneratorKind::Polynomial,
        });
        self
    }

    pub fn exterior(mut self, name: impl Into<String>, degree: u32) -> Self {
        self.generators.push(GeneratorSpec {
            name: name.into(),
            degree,
            kind: GeneratorKind::Exterior,
        });
        self
    }

    pub fn beta(mut self, generator: &str, value: &str) -> Self {
        self.beta.push((generator.to_owned(), value.to_owned()));
        self
    }

    pub fn power(mut self, generator: &str, i: u32, value: &str) -> Self {
        self.powers
            .push((generator.to_owned(), i, value.to_owned()));
        self
    }

    pub fn build(self) -> Result<Arc<AlgebraModel>> {
        let mut index = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidGenerator(format!(
                    "`{}` is not an identifier",
                    g.name
                )));
            }
            if g.degree == 0 {
                return Err(Error::InvalidGenerator(format!(
                    "`{}` has degree 0",
                    g.name
                )));
            }
            let parity_ok = match g.kind {
                GeneratorKind::Polynomial => g.degree % 2 == 0,
                GeneratorKind::Exterior => g.degree % 2 == 1,
            };
            if !parity_ok {
                return Err(Error::InvalidGenerator(format!(
                    "`{}` of degree {} has the wrong parity for a {:?} generator",
                    g.name, g.degree, g.kind
                )));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::InvalidGenerator(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        let n = self.generators.len();
        let mut model = AlgebraModel {
            name: self.name,
            prime: self.prime,
            generators: self.generators,
            index,
            beta: vec![Terms::new(); n],
            powers: vec![BTreeMap::new(); n],
        };
        let p = model.prime.get();

        for (g, text) in &self.beta {
            let idx = model
                .generator_index(g)
                .ok_or_else(|| Error::UnknownIdentifier(g.clone()))?;
            let value = parse::parse_terms(&model, text)?;
            let want = model.generators[idx].degree + 1;
            check_entry_degree(&value, want, &format!("beta({g})"))?;
            model.beta[idx] = value;
        }
        for (g, i, text) in &self.powers {
            let idx = model
                .generator_index(g)
                .ok_or_else(|| Error::UnknownIdentifier(g.clone()))?;
            if *i == 0 {
                return Err(Error::InvalidTable(format!(
                    "P^0({g}) is the identity, not a table entry"
                )));
            }
            let value = parse::parse_terms(&model, text)?;
            let gdeg = model.generators[idx].degree;
            let want = gdeg + 2 * i * (p - 1);
            check_entry_degree(&value, want, &format!("P^{i}({g})"))?;
            if 2 * i > gdeg && !value.is_empty() {
                return Err(Error::InvalidTable(format!(
                    "instability requires P^{i}({g}) = 0 since 2*{i} > {gdeg}"
                )));
            }
            if 2 * i == gdeg {
                let gp = model.pow_terms(&single(&model, idx), p);
                if value != gp {
                    return Err(Error::InvalidTable(format!(
                        "instability requires P^{i}({g}) = {g}^{p}"
                    )));
                }
                continue;
            }
            model.powers[idx].insert(*i, value);
        }
        Ok(Arc::new(model))
    }
}

fn single(model: &AlgebraModel, idx: usize) -> Terms {
    let mut t = Terms::new();
    t.insert(model.generator_monomial(idx, 1), 1);
    t
}

fn check_entry_degree(value: &Terms, want: u32, what: &str) -> Result<()> {
    match terms_degree(value) {
        Ok(None) => Ok(()),
        Ok(Some(d)) if d == want => Ok(()),
        Ok(Some(d)) => Err(Error::InvalidTable(format!(
            "{what} has degree {d}, expected {want}"
        ))),
        Err(_) => Err(Error::InvalidTable(format!("{what} is not homogeneous"))),
    }
}
