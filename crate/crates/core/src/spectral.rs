//! Coefficient arithmetic for the Serre spectral sequence of
//! `K(ℤ,3) → 𝐁PGL_n → 𝐁GL_n`-type fibrations, and a fixed rule table
//! deciding whether `y_{p,I}` survives.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{ypi_degree, IndexSeq};
use crate::modp::{binom_mod_p, Fp, Prime};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectralClass {
    /// `y_{p,I}` on the base.
    Y { p: Prime, index: IndexSeq },
    /// `v^exponent` on the fibre.
    VPower { exponent: u64 },
}

impl SpectralClass {
    /// `(s, t)`: base degree and fibre degree.
    pub fn bidegree(&self) -> Result<(u64, u64)> {
        match self {
            SpectralClass::Y { p, index } => Ok((ypi_degree(*p, index)?, 0)),
            SpectralClass::VPower { exponent } => exponent
                .checked_mul(2)
                .map(|t| (0, t))
                .ok_or(Error::Overflow("v-power bidegree")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Differential {
    pub p: Prime,
    #[serde(rename = "I")]
    pub source_index: IndexSeq,
    pub k: u32,
    #[serde(rename = "I_prime")]
    pub target_index: IndexSeq,
    /// Subscript as conventionally written, `2(p^{k+1} + 1)`.
    pub index: u64,
    /// The page on which the bidegrees below line up, `2p^{k+1} + 1`.
    pub page: u64,
    pub source: (u64, u64),
    pub target: (u64, u64),
}

impl Differential {
    /// `target = source + (page, 1 − page)`, so total degree rises by one.
    pub fn is_consistent(&self) -> bool {
        let (s, t) = self.source;
        let (s2, t2) = self.target;
        s2 == s + self.page && t2 + self.page == t + 1 && s2 + t2 == s + t + 1
    }
}

/// `d(y_{p,I} · v^{p^{k+1}}) = y_{p,I′}` with `I′ = (k, i_m, …, i_1)`.
///
/// For empty `I` the source base degree is the formal value
/// `ypi_degree(p, ()) = 1`, which keeps the bidegree arithmetic uniform.
pub fn differential_target(p: Prime, index: &IndexSeq, k: u32) -> Result<Differential> {
    let target_index = index.prepend(k)?;
    let pk1 = p
        .as_u64()
        .checked_pow(k + 1)
        .ok_or(Error::Overflow("p^(k+1)"))?;
    let page = pk1
        .checked_mul(2)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("differential page"))?;
    let source = (
        SpectralClass::Y {
            p,
            index: index.clone(),
        }
        .bidegree()?
        .0,
        SpectralClass::VPower { exponent: pk1 }.bidegree()?.1,
    );
    let target = SpectralClass::Y {
        p,
        index: target_index.clone(),
    }
    .bidegree()?;
    Ok(Differential {
        p,
        source_index: index.clone(),
        k,
        target_index,
        index: page + 1,
        page,
        source,
        target,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernRestriction {
    pub i: u64,
    pub n: u64,
    /// Exact coefficient of `v^i`.
    #[serde(serialize_with = "as_decimal")]
    pub coefficient: BigUint,
    pub residue: u32,
}

fn as_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// Restriction of `c_i` along the diagonal `v ↦ (v, …, v)`: the `i`th
/// elementary symmetric polynomial in `n` copies of `v`, computed by the
/// usual `e_j ← e_j + e_{j−1}·v` recursion and reduced mod `p`.
pub fn chern_diag_restriction(i: u64, n: u64, p: Prime) -> Result<ChernRestriction> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "Chern class index {i} must lie in 1..={n}"
        )));
    }
    let i_us = usize::try_from(i).map_err(|_| Error::Overflow("Chern class index"))?;
    let mut e = vec![BigUint::zero(); i_us + 1];
    e[0] = BigUint::from(1u32);
    for _ in 0..n {
        for j in (1..=i_us).rev() {
            let prev = e[j - 1].clone();
            e[j] += prev;
        }
    }
    let coefficient = e.swap_remove(i_us);
    let residue = (&coefficient % BigUint::from(p.get()))
        .to_u32()
        .expect("residue below p");
    Ok(ChernRestriction {
        i,
        n,
        coefficient,
        residue,
    })
}

fn require_divides(n: u64, p: Prime) -> Result<()> {
    if n == 0 || !n.is_multiple_of(p.as_u64()) {
        return Err(Error::PrimeNotDividing { n, p: p.get() });
    }
    Ok(())
}

/// `C(n,p)^{i_m+1} mod p`, for `p | n` and `I` of length at least two.
pub fn killing_coefficient(n: u64, p: Prime, index: &IndexSeq) -> Result<Fp> {
    require_divides(n, p)?;
    if index.len() < 2 {
        return Err(Error::InvalidIndexSeq(format!(
            "{index} has length {}, at least 2 required",
            index.len()
        )));
    }
    let least = index.least().expect("nonempty") as u64;
    Ok(binom_mod_p(n, p.as_u64(), p).pow(least + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictStatus {
    Nonzero,
    Zero,
    Unknown,
}

/// `y_{p,k} ≠ 0` for odd `p` dividing `n`.
pub const CITE_NONZERO: &str = "Thm 1.1(1)";
/// `y_{p,I} = 0` for `|I| ≥ 2`, `p | n`, `p² ∤ n`.
pub const CITE_LONG_VANISH: &str = "Thm 1.2";
/// `y_{p,0} = 0` when `p ∤ n`.
pub const CITE_LOWEST: &str = "Prop p-torsion lowest";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: u64,
    pub p: Prime,
    #[serde(rename = "I")]
    pub index: IndexSeq,
    pub status: VerdictStatus,
    pub citation: Option<&'static str>,
    pub scalar: Option<u32>,
}

/// Decides `y_{p,I}` in the cohomology of `𝐁PGL_n` from a closed rule
/// table; anything the table does not cover is `Unknown`.
pub fn ypi_verdict(n: u64, p: Prime, index: &IndexSeq) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must be at least 2"
        )));
    }
    let pu = p.as_u64();
    let divides = n.is_multiple_of(pu);
    let p_squared_divides = pu.checked_mul(pu).is_some_and(|p2| n.is_multiple_of(p2));
    let mut scalar = None;
    let (status, citation) = if !divides {
        if index.entries() == [0] {
            (VerdictStatus::Zero, Some(CITE_LOWEST))
        } else {
            (VerdictStatus::Unknown, None)
        }
    } else if index.len() == 1 && p.is_odd() {
        (VerdictStatus::Nonzero, Some(CITE_NONZERO))
    } else if index.len() >= 2 && !p_squared_divides {
        scalar = Some(killing_coefficient(n, p, index)?.value());
        (VerdictStatus::Zero, Some(CITE_LONG_VANISH))
    } else {
        (VerdictStatus::Unknown, None)
    };
    Ok(Verdict {
        n,
        p,
        index: index.clone(),
        status,
        citation,
        scalar,
    })
}
