//! Finitely presented graded-commutative algebras over 𝔽_p.
//!
//! A model is a list of generators, each either polynomial (even degree) or
//! exterior (odd degree), together with a table of Bocksteins and reduced
//! powers on the generators. Elements are kept in a canonical form: a sorted
//! map from monomials to nonzero residues, with every monomial written as the
//! product of its generators in declaration order.

mod element;
pub(crate) mod model;
mod parse;

pub use element::Element;
pub use model::{AlgebraModel, ModelBuilder};

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Polynomial,
    Exterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl GeneratorSpec {
    pub fn is_exterior(&self) -> bool {
        self.kind == GeneratorKind::Exterior
    }
}

pub(crate) type Exponents = SmallVec<[u32; 6]>;

/// A monomial in the generators of one model.
///
/// The derived order compares total degree first and then the exponent
/// vectors lexicographically in generator-declaration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Exponents,
}

impl Monomial {
    pub(crate) fn from_parts(degree: u32, exps: Exponents) -> Self {
        Monomial { degree, exps }
    }

    pub(crate) fn one(len: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, len),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Writes `m` as `name^e*name*...`, or `1` for the empty monomial.
pub(crate) fn write_monomial(
    f: &mut impl fmt::Write,
    gens: &[GeneratorSpec],
    m: &Monomial,
) -> fmt::Result {
    let mut first = true;
    for (g, &e) in gens.iter().zip(m.exps.iter()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&g.name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}
