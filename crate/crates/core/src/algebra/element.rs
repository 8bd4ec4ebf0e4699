use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::model::{add_scaled, add_term, terms_degree, AlgebraModel, Terms};
use super::{parse, write_monomial, Monomial};
use crate::error::{Error, Result};
use crate::modp::{mul_mod, neg_mod, Fp};

/// An element of a presented graded-commutative algebra, in canonical form.
///
/// Two elements are equal exactly when they come from the same model and
/// have the same terms, so structural and semantic equality coincide.
#[derive(Clone, Debug)]
pub struct Element {
    model: Arc<AlgebraModel>,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.model.same_as(&other.model) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub(crate) fn from_terms(model: Arc<AlgebraModel>, terms: Terms) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0 && c < model.prime().get()));
        Element { model, terms }
    }

    pub fn zero(model: &Arc<AlgebraModel>) -> Self {
        Element {
            model: Arc::clone(model),
            terms: Terms::new(),
        }
    }

    pub fn one(model: &Arc<AlgebraModel>) -> Self {
        Self::constant(model, 1)
    }

    pub fn constant(model: &Arc<AlgebraModel>, c: i64) -> Self {
        let mut terms = Terms::new();
        let c = model.prime().reduce(c);
        if c != 0 {
            terms.insert(model.unit_monomial(), c);
        }
        Element {
            model: Arc::clone(model),
            terms,
        }
    }

    pub fn generator(model: &Arc<AlgebraModel>, name: &str) -> Result<Self> {
        let idx = model
            .generator_index(name)
            .ok_or_else(|| Error::UnknownIdentifier(name.to_owned()))?;
        let mut terms = Terms::new();
        terms.insert(model.generator_monomial(idx, 1), 1);
        Ok(Element {
            model: Arc::clone(model),
            terms,
        })
    }

    /// `coeff · m` where `m` is given by raw exponents.
    pub fn monomial(model: &Arc<AlgebraModel>, exps: &[u32], coeff: i64) -> Result<Self> {
        let m = model.monomial(exps)?;
        let mut terms = Terms::new();
        add_term(
            &mut terms,
            m,
            model.prime().reduce(coeff),
            model.prime().get(),
        );
        Ok(Element {
            model: Arc::clone(model),
            terms,
        })
    }

    pub fn parse(model: &Arc<AlgebraModel>, text: &str) -> Result<Self> {
        Ok(Element {
            model: Arc::clone(model),
            terms: parse::parse_terms(model, text)?,
        })
    }

    pub fn model(&self) -> &Arc<AlgebraModel> {
        &self.model
    }

    pub(crate) fn raw_terms(&self) -> &Terms {
        &self.terms
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

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Fp)> + '_ {
        let p = self.model.prime();
        self.terms
            .iter()
            .map(move |(m, &c)| (m, Fp::new(c as i64, p)))
    }

    pub fn coefficient(&self, m: &Monomial) -> Fp {
        Fp::new(
            self.terms.get(m).copied().unwrap_or(0) as i64,
            self.model.prime(),
        )
    }

    /// Degree of a nonzero homogeneous element; `Ok(None)` for zero.
    pub fn degree(&self) -> Result<Option<u32>> {
        terms_degree(&self.terms)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Half of the (even) cohomological degree.
    pub fn chow_degree(&self) -> Result<Option<u32>> {
        match self.degree()? {
            Some(d) if d % 2 == 0 => Ok(Some(d / 2)),
            Some(d) => Err(Error::InvalidArgument(format!(
                "odd degree {d} has no Chow counterpart"
            ))),
            None => Ok(None),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Element> {
        let mut out: BTreeMap<u32, Terms> = BTreeMap::new();
        for (m, &c) in &self.terms {
            out.entry(m.degree()).or_default().insert(m.clone(), c);
        }
        out.into_iter()
            .map(|(d, t)| (d, Element::from_terms(Arc::clone(&self.model), t)))
            .collect()
    }

    fn check_model(&self, other: &Element) -> Result<()> {
        if self.model.same_as(&other.model) {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_model(other)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, 1, self.model.prime().get());
        Ok(Element::from_terms(Arc::clone(&self.model), terms))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_model(other)?;
        let p = self.model.prime().get();
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, p - 1, p);
        Ok(Element::from_terms(Arc::clone(&self.model), terms))
    }

    /// Graded-commutative product.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check_model(other)?;
        Ok(Element::from_terms(
            Arc::clone(&self.model),
            self.model.mul_terms(&self.terms, &other.terms),
        ))
    }

    pub fn scale(&self, c: Fp) -> Element {
        assert_eq!(
            c.prime(),
            self.model.prime(),
            "scalar from a different prime field"
        );
        if c.is_zero() {
            return Element::zero(&self.model);
        }
        let p = self.model.prime().get();
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (m.clone(), mul_mod(x, c.value(), p)))
            .collect();
        Element::from_terms(Arc::clone(&self.model), terms)
    }

    pub fn pow(&self, exp: u32) -> Element {
        Element::from_terms(
            Arc::clone(&self.model),
            self.model.pow_terms(&self.terms, exp),
        )
    }

    /// Extends `generator ↦ image` to an algebra homomorphism.
    ///
    /// Generators without an image are fixed, which requires the images to
    /// live in this element's own model. Every image must be homogeneous of
    /// its generator's degree (zero is allowed).
    pub fn substitute(&self, images: &HashMap<String, Element>) -> Result<Element> {
        let gens = self.model.generators();
        let target = match images.values().next() {
            Some(e) => Arc::clone(&e.model),
            None => return Ok(self.clone()),
        };
        for (name, img) in images {
            let idx = self
                .model
                .generator_index(name)
                .ok_or_else(|| Error::UnknownIdentifier(name.clone()))?;
            if !img.model.same_as(&target) {
                return Err(Error::ModelMismatch);
            }
            let g = &gens[idx];
            match img.degree() {
                Ok(None) => {}
                Ok(Some(d)) if d == g.degree => {}
                Ok(Some(d)) => {
                    return Err(Error::DegreeMismatch {
                        generator: g.name.clone(),
                        expected: g.degree,
                        found: d.to_string(),
                    })
                }
                Err(_) => {
                    return Err(Error::DegreeMismatch {
                        generator: g.name.clone(),
                        expected: g.degree,
                        found: "inhomogeneous".into(),
                    })
                }
            }
        }
        let mut resolved: Vec<Terms> = Vec::with_capacity(gens.len());
        for (idx, g) in gens.iter().enumerate() {
            match images.get(&g.name) {
                Some(img) => resolved.push(img.terms.clone()),
                None => {
                    if !self.model.same_as(&target) {
                        return Err(Error::InvalidArgument(format!(
                            "generator `{}` has no image in the target model",
                            g.name
                        )));
                    }
                    let mut t = Terms::new();
                    t.insert(target.generator_monomial(idx, 1), 1);
                    resolved.push(t);
                }
            }
        }

        let p = target.prime().get();
        let mut power_cache: HashMap<(usize, u32), Terms> = HashMap::new();
        let mut out = Terms::new();
        for (m, &c) in &self.terms {
            let mut acc = Terms::new();
            acc.insert(target.unit_monomial(), c);
            for (idx, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cache
                    .entry((idx, e))
                    .or_insert_with(|| target.pow_terms(&resolved[idx], e));
                acc = target.mul_terms(&acc, pw);
                if acc.is_empty() {
                    break;
                }
            }
            add_scaled(&mut out, &acc, 1, p);
        }
        Ok(Element::from_terms(target, out))
    }
}

impl fmt::Display for Element {
    /// Highest monomial first; coefficients in `[1, p)`, with `1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let gens = self.model.generators();
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c}*")?;
            }
            write_monomial(f, gens, m)?;
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on mismatched models; see [`Element::try_add`].
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs)
            .expect("adding elements of different models")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs)
            .expect("subtracting elements of different models")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs)
            .expect("multiplying elements of different models")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let p = self.model.prime().get();
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.clone(), neg_mod(c, p)))
            .collect();
        Element::from_terms(Arc::clone(&self.model), terms)
    }
}
