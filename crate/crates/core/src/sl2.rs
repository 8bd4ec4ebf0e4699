//! The linear action of SL₂(𝔽_p) on `𝔽_p[ξ, η]` and its invariants.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraModel, Element, GeneratorKind, ModelBuilder};
use crate::error::{Error, Result};
use crate::modp::{mul_mod, Fp, Prime};
use crate::par;

/// `𝔽_p[ξ, η]` with `ξ`, `η` in cohomological degree 2 (Chow degree 1).
pub fn sl2_model(p: Prime) -> Result<Arc<AlgebraModel>> {
    ModelBuilder::new("xi_eta", p)
        .polynomial("xi", 2)
        .polynomial("eta", 2)
        .build()
}

/// A 2×2 matrix over 𝔽_p of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mat2 {
    #[serde(skip)]
    prime: Prime,
    entries: [u32; 4],
}

impl Mat2 {
    /// Entries `(m11, m12, m21, m22)`, reduced mod p.
    pub fn new(prime: Prime, entries: [i64; 4]) -> Result<Self> {
        let e = entries.map(|x| prime.reduce(x));
        let m = Mat2 { prime, entries: e };
        if m.det() != 1 % prime.get() {
            return Err(Error::InvalidMatrix(format!(
                "{m} has determinant {} mod {prime}",
                m.det()
            )));
        }
        Ok(m)
    }

    /// Parses four comma-separated residues `m11,m12,m21,m22`.
    pub fn parse(prime: Prime, text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|t| {
                i64::from_str(t.trim())
                    .map_err(|_| Error::InvalidMatrix(format!("bad entry `{t}` in `{text}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let entries: [i64; 4] = parts
            .try_into()
            .map_err(|_| Error::InvalidMatrix(format!("`{text}` does not have four entries")))?;
        Self::new(prime, entries)
    }

    pub fn identity(prime: Prime) -> Self {
        Mat2 {
            prime,
            entries: [1, 0, 0, 1],
        }
    }

    /// `(0, −1; 1, 0)`.
    pub fn rotation(prime: Prime) -> Self {
        Mat2 {
            prime,
            entries: [0, prime.get() - 1, 1, 0],
        }
    }

    /// `(1, 1; 0, 1)`.
    pub fn shear(prime: Prime) -> Self {
        Mat2 {
            prime,
            entries: [1, 1, 0, 1],
        }
    }

    /// The standard generating pair of SL₂(𝔽_p), shear first.
    pub fn generators(prime: Prime) -> [Mat2; 2] {
        [Self::shear(prime), Self::rotation(prime)]
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn entries(&self) -> [u32; 4] {
        self.entries
    }

    fn det(&self) -> u32 {
        let p = self.prime.get();
        let [a, b, c, d] = self.entries;
        (mul_mod(a, d, p) + p - mul_mod(b, c, p)) % p
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let p = self.prime.get();
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        let dot = |x, y, z, w| (mul_mod(x, y, p) + mul_mod(z, w, p)) % p;
        Mat2 {
            prime: self.prime,
            entries: [
                dot(a, e, b, g),
                dot(a, f, b, h),
                dot(c, e, d, g),
                dot(c, f, d, h),
            ],
        }
    }

    /// All `p(p² − 1)` elements of SL₂(𝔽_p), in lexicographic entry order.
    pub fn all(prime: Prime) -> Vec<Mat2> {
        let p = prime.get();
        let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let m = Mat2 {
                            prime,
                            entries: [a, b, c, d],
                        };
                        if m.det() == 1 {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "({a},{b};{c},{d})")
    }
}

fn xi_eta_indices(model: &AlgebraModel) -> Result<()> {
    let find = |name: &str| {
        model
            .generator_index(name)
            .map(|i| &model.generators()[i])
            .filter(|g| g.kind == GeneratorKind::Polynomial)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "model `{}` has no polynomial generator `{name}`",
                    model.name()
                ))
            })
    };
    let (xi, eta) = (find("xi")?, find("eta")?);
    if xi.degree != eta.degree {
        return Err(Error::InvalidArgument(
            "xi and eta must have equal degrees".into(),
        ));
    }
    Ok(())
}

/// Substitution `ξ ↦ m11 ξ + m21 η`, `η ↦ m12 ξ + m22 η`.
///
/// This is a left action: `act(gh, x) = act(g, act(h, x))`.
pub fn act(g: &Mat2, x: &Element) -> Result<Element> {
    let model = x.model();
    if model.prime() != g.prime {
        return Err(Error::PrimeMismatch {
            expected: model.prime().get(),
            found: g.prime.get(),
        });
    }
    xi_eta_indices(model)?;
    let xi = Element::generator(model, "xi")?;
    let eta = Element::generator(model, "eta")?;
    let p = model.prime();
    let c = |v: u32| Fp::new(v as i64, p);
    let [m11, m12, m21, m22] = g.entries;
    let images: HashMap<String, Element> = [
        ("xi".to_string(), &xi.scale(c(m11)) + &eta.scale(c(m21))),
        ("eta".to_string(), &xi.scale(c(m12)) + &eta.scale(c(m22))),
    ]
    .into();
    x.substitute(&images)
}

/// `q = ξ^{p²−p} + η^{p−1}(ξ^{p−1} − η^{p−1})^{p−1}`.
pub fn q_class(p: Prime) -> Result<Element> {
    let model = sl2_model(p)?;
    let q = p.get();
    Element::parse(
        &model,
        &format!(
            "xi^{} + eta^{}*(xi^{} - eta^{})^{}",
            q * q - q,
            q - 1,
            q - 1,
            q - 1,
            q - 1
        ),
    )
}

/// `r = ξη(ξ^{p−1} − η^{p−1})`.
pub fn r_class(p: Prime) -> Result<Element> {
    let model = sl2_model(p)?;
    let q = p.get();
    Element::parse(&model, &format!("xi*eta*(xi^{} - eta^{})", q - 1, q - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// The shear and rotation generators.
    Generators,
    /// Every element of SL₂(𝔽_p).
    FullGroup,
}

impl FromStr for CheckMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generators" => Ok(CheckMode::Generators),
            "full_group" | "full-group" | "full" => Ok(CheckMode::FullGroup),
            _ => Err(Error::InvalidArgument(format!("unknown check mode `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceVerdict {
    pub invariant: bool,
    pub mode: CheckMode,
    pub checked: usize,
    /// The first group element (in enumeration order) that moves `x`.
    pub witness: Option<String>,
}

pub fn check_invariant(x: &Element, mode: CheckMode) -> Result<InvarianceVerdict> {
    let p = x.model().prime();
    let group = match mode {
        CheckMode::Generators => Mat2::generators(p).to_vec(),
        CheckMode::FullGroup => Mat2::all(p),
    };
    let moved = par::map_slice(&group, |g| act(g, x).map(|y| y != *x));
    let mut witness = None;
    for (g, m) in group.iter().zip(moved) {
        if m? {
            witness = Some(g.to_string());
            break;
        }
    }
    Ok(InvarianceVerdict {
        invariant: witness.is_none(),
        mode,
        checked: group.len(),
        witness,
    })
}

pub fn default_invariant_cap(p: Prime) -> u32 {
    if p.get() == 3 {
        12
    } else {
        8
    }
}

/// Dimension of the subspace of Chow-degree-`d` forms fixed by every element
/// of SL₂(𝔽_p), by exact elimination over the whole group.
pub fn invariant_dim(p: Prime, d: u32, cap: u32) -> Result<usize> {
    if d > cap {
        return Err(Error::CapExceeded {
            what: "invariant degree",
            value: d as u64,
            cap: cap as u64,
        });
    }
    let model = sl2_model(p)?;
    let basis = model.monomial_basis(2 * d);
    let index: HashMap<_, _> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let n = basis.len();
    let pu = p.get();
    let group = Mat2::all(p);
    let blocks: Vec<Result<Vec<Vec<u32>>>> = par::map_slice(&group, |g| {
        // A_g - I with one row per output coordinate
        let mut rows = vec![vec![0u32; n]; n];
        for (j, m) in basis.iter().enumerate() {
            let x = Element::monomial(&model, m.exponents(), 1)?;
            let y = act(g, &x)?;
            for (mono, c) in y.terms() {
                rows[index[mono]][j] = c.value();
            }
            rows[j][j] = (rows[j][j] + pu - 1) % pu;
        }
        Ok(rows)
    });
    let mut stacked = Vec::new();
    for b in blocks {
        stacked.extend(b?);
    }
    Ok(n - rank_mod_p(stacked, pu))
}

/// Number of monomials `q^a r^b` of Chow degree `d`.
pub fn qr_monomial_count(p: Prime, d: u32) -> usize {
    let q = p.get();
    let (dq, dr) = (q * q - q, q + 1);
    (0..=d / dq).filter(|a| (d - a * dq).is_multiple_of(dr)).count()
}

pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let prime = Prime::new(p).expect("prime modulus");
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Fp::new(rows[rank][col] as i64, prime)
            .inverse()
            .expect("nonzero pivot")
            .value();
        for v in rows[rank].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p - mul_mod(f, pv, p)) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32) -> Prime {
        Prime::new(x).unwrap()
    }

    fn el(q: u32, s: &str) -> Element {
        Element::parse(&sl2_model(p(q)).unwrap(), s).unwrap()
    }

    #[test]
    fn matrix_validation() {
        assert!(Mat2::parse(p(3), "1,1,0,1").is_ok());
        assert!(Mat2::parse(p(3), "0,-1,1,0").is_ok());
        assert!(matches!(
            Mat2::parse(p(3), "1,1,1,1"),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(matches!(
            Mat2::parse(p(3), "1,1,1"),
            Err(Error::InvalidMatrix(_))
        ));
        assert!(matches!(
            Mat2::parse(p(3), "1,x,0,1"),
            Err(Error::InvalidMatrix(_))
        ));
        assert_eq!(Mat2::all(p(3)).len(), 24);
        assert_eq!(Mat2::all(p(5)).len(), 120);
        assert_eq!(Mat2::all(p(7)).len(), 336);
    }

    #[test]
    fn action_examples() {
        let r = r_class(p(3)).unwrap();
        assert_eq!(act(&Mat2::identity(p(3)), &r).unwrap(), r);
        assert_eq!(act(&Mat2::rotation(p(3)), &r).unwrap(), r);
        assert_eq!(act(&Mat2::shear(p(3)), &r).unwrap(), r);
        assert_eq!(
            act(&Mat2::rotation(p(3)), &el(3, "xi")).unwrap(),
            el(3, "eta")
        );
        assert_eq!(
            act(&Mat2::rotation(p(3)), &el(3, "eta")).unwrap(),
            el(3, "-xi")
        );
    }

    #[test]
    fn action_composes() {
        let x = el(5, "xi^3*eta + 2*xi*eta^2 + eta^4");
        let group = Mat2::all(p(5));
        for g in group.iter().step_by(7) {
            for h in group.iter().step_by(11) {
                let lhs = act(&g.mul(h), &x).unwrap();
                let rhs = act(g, &act(h, &x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn q_and_r_formulas() {
        assert_eq!(
            q_class(p(3)).unwrap(),
            el(3, "xi^6 + eta^2*(xi^2 - eta^2)^2")
        );
        assert_eq!(r_class(p(3)).unwrap(), el(3, "xi^3*eta - xi*eta^3"));
        assert_eq!(r_class(p(5)).unwrap().chow_degree(), Ok(Some(6)));
        assert_eq!(q_class(p(5)).unwrap().chow_degree(), Ok(Some(20)));
    }

    #[test]
    fn invariance_checks() {
        let v = check_invariant(&q_class(p(3)).unwrap(), CheckMode::FullGroup).unwrap();
        assert!(v.invariant);
        assert_eq!(v.checked, 24);
        assert!(
            check_invariant(&r_class(p(5)).unwrap(), CheckMode::Generators)
                .unwrap()
                .invariant
        );
        let v = check_invariant(&el(3, "xi*eta"), CheckMode::Generators).unwrap();
        assert!(!v.invariant);
        assert_eq!(v.witness.as_deref(), Some("(1,1;0,1)"));
    }

    #[test]
    fn small_invariant_dims() {
        assert_eq!(invariant_dim(p(3), 4, 12).unwrap(), 1);
        assert_eq!(invariant_dim(p(3), 6, 12).unwrap(), 1);
        assert_eq!(invariant_dim(p(3), 2, 12).unwrap(), 0);
        assert!(matches!(
            invariant_dim(p(3), 13, 12),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rank_helper() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 1]], 5), 2);
        assert_eq!(rank_mod_p(vec![vec![0, 0]], 5), 0);
    }
}
