//! Seeded samplers for property sweeps. Every sample index gets its own
//! ChaCha stream, so sweeps give the same samples serially or in parallel.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraModel, Element};
use crate::error::Result;
use crate::models::IndexSeq;
use crate::modp::Fp;
use crate::steenrod::{OpWord, SteenrodOp};

/// Generator for sample `index` of a sweep seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random element of degree `d` with nonzero coefficients on a random
/// nonempty subset of the degree-`d` basis. Zero if that basis is empty.
pub fn homogeneous_of_degree<R: Rng>(rng: &mut R, model: &Arc<AlgebraModel>, d: u32) -> Element {
    let basis = model.monomial_basis(d);
    let p = model.prime();
    let mut x = Element::zero(model);
    if basis.is_empty() {
        return x;
    }
    let forced = rng.gen_range(0..basis.len());
    for (i, m) in basis.iter().enumerate() {
        if i != forced && rng.gen_bool(0.5) {
            continue;
        }
        let c = rng.gen_range(1..p.get()) as i64;
        let term = Element::monomial(model, m.exponents(), c).expect("basis monomial");
        x = &x + &term;
    }
    x
}

/// A nonzero random homogeneous element of degree in `1..=max_degree`.
pub fn homogeneous<R: Rng>(rng: &mut R, model: &Arc<AlgebraModel>, max_degree: u32) -> Element {
    loop {
        let d = rng.gen_range(1..=max_degree);
        let x = homogeneous_of_degree(rng, model, d);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random word of `1..=max_len` tokens, each `β` or `P^i` with
/// `1 ≤ i ≤ max_index`.
pub fn word<R: Rng>(
    rng: &mut R,
    p: crate::Prime,
    max_len: usize,
    max_index: u64,
) -> Result<OpWord> {
    let len = rng.gen_range(1..=max_len);
    let tokens: Vec<SteenrodOp> = (0..len)
        .map(|_| {
            if rng.gen_bool(0.3) {
                SteenrodOp::Beta
            } else {
                SteenrodOp::Power(rng.gen_range(1..=max_index))
            }
        })
        .collect();
    OpWord::new(p, tokens)
}

/// A random strictly increasing sequence drawn from `0..bound`.
pub fn index_seq<R: Rng>(rng: &mut R, bound: u32) -> IndexSeq {
    let entries = (0..bound).filter(|_| rng.gen_bool(0.4)).collect();
    IndexSeq::new(entries).expect("increasing by construction")
}

pub fn fp<R: Rng>(rng: &mut R, p: crate::Prime) -> Fp {
    Fp::from_u64(rng.gen_range(0..p.as_u64()), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::cpmup_model;
    use crate::Prime;

    #[test]
    fn streams_are_reproducible() {
        let p = Prime::new(3).unwrap();
        let m = cpmup_model(p).unwrap();
        let a = homogeneous(&mut stream(7, 3), &m, 6);
        let b = homogeneous(&mut stream(7, 3), &m, 6);
        assert_eq!(a, b);
        assert!(a.is_homogeneous() && !a.is_zero());
        let w1 = word(&mut stream(1, 0), p, 4, 9).unwrap();
        let w2 = word(&mut stream(1, 0), p, 4, 9).unwrap();
        assert_eq!(w1, w2);
    }
}
