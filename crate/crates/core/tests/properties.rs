use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use torsionlab::models::{cpmup_model, ypi_degree, IndexSeq};
use torsionlab::perm::{self, Composition, Perm};
use torsionlab::sl2::{act, q_class, r_class, Mat2};
use torsionlab::spectral::{differential_target, killing_coefficient, ypi_verdict, VerdictStatus};
use torsionlab::steenrod::{adem_normalize, apply, OpWord, SteenrodOp};
use torsionlab::{binom_mod_p, random, AlgebraModel, Element, Prime};

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![3u32, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

fn model(p: Prime) -> Arc<AlgebraModel> {
    cpmup_model(p).unwrap()
}

/// A CpMup element with up to six random terms of degree at most 6.
fn element(p: Prime) -> impl Strategy<Value = Element> {
    prop::collection::vec(((0u32..2, 0u32..2, 0u32..4, 0u32..4), 0i64..50), 0..6).prop_map(
        move |terms| {
            let m = model(p);
            terms
                .into_iter()
                .fold(Element::zero(&m), |acc, ((a, b, x, y), c)| {
                    let t = Element::monomial(&m, &[a, b, x, y], c).unwrap();
                    &acc + &t
                })
        },
    )
}

fn homogeneous(p: Prime) -> impl Strategy<Value = Element> {
    any::<u64>()
        .prop_map(move |seed| random::homogeneous(&mut random::stream(seed, 0), &model(p), 6))
}

fn op_word(p: Prime) -> impl Strategy<Value = OpWord> {
    let bound = p.as_u64() * p.as_u64();
    prop::collection::vec(prop_oneof![Just(None), (1..=bound).prop_map(Some)], 1..5).prop_map(
        move |toks| {
            OpWord::new(
                p,
                toks.into_iter()
                    .map(|t| t.map_or(SteenrodOp::Beta, SteenrodOp::Power)),
            )
            .unwrap()
        },
    )
}

fn sign(x: &Element, y: &Element) -> bool {
    let dx = x.degree().unwrap().unwrap_or(0);
    let dy = y.degree().unwrap().unwrap_or(0);
    dx % 2 == 1 && dy % 2 == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in prime().prop_flat_map(|p| (element(p), element(p), element(p)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn graded_commutativity((x, y) in prime().prop_flat_map(|p| (homogeneous(p), homogeneous(p)))) {
        let xy = &x * &y;
        let yx = &y * &x;
        if sign(&x, &y) {
            prop_assert_eq!(xy, -&yx);
        } else {
            prop_assert_eq!(xy, yx);
        }
    }

    #[test]
    fn display_parse_round_trip(x in prime().prop_flat_map(element)) {
        let back = Element::parse(x.model(), &x.to_string()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn substitution_is_multiplicative(
        (x, y, imgs) in prime().prop_flat_map(|p| {
            let m = model(p);
            let deg1 = (0i64..7, 0i64..7);
            let deg2 = (0i64..7, 0i64..7, 0i64..7);
            (element(p), element(p), deg1.clone(), deg1, deg2.clone(), deg2).prop_map(move |(x, y, a, b, xi, eta)| {
                let lin = |c: (i64, i64)| Element::parse(&m, &format!("{}*a + {}*b", c.0, c.1)).unwrap();
                let quad = |c: (i64, i64, i64)| {
                    Element::parse(&m, &format!("{}*xi + {}*eta + {}*a*b", c.0, c.1, c.2)).unwrap()
                };
                let imgs: HashMap<String, Element> = [
                    ("a".to_string(), lin(a)),
                    ("b".to_string(), lin(b)),
                    ("xi".to_string(), quad(xi)),
                    ("eta".to_string(), quad(eta)),
                ]
                .into_iter()
                .collect();
                (x, y, imgs)
            })
        })
    ) {
        let lhs = (&x * &y).substitute(&imgs).unwrap();
        let rhs = &x.substitute(&imgs).unwrap() * &y.substitute(&imgs).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operations_are_additive((w, x, y) in prime().prop_flat_map(|p| (op_word(p), element(p), element(p)))) {
        let lhs = apply(&w, &(&x + &y)).unwrap();
        let rhs = &apply(&w, &x).unwrap() + &apply(&w, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_admissible((w, x) in prime().prop_flat_map(|p| (op_word(p), homogeneous(p)))) {
        let sum = adem_normalize(&w);
        for (t, c) in sum.terms() {
            prop_assert!(t.is_admissible());
            prop_assert_eq!(t.degree(), w.degree());
            prop_assert!(!c.is_zero());
        }
        prop_assert_eq!(apply(&w, &x).unwrap(), sum.apply(&x).unwrap());
    }

    #[test]
    fn lucas_matches_big_integers(n in 0u64..400, k in 0u64..400, p in prime()) {
        let exact = if k > n {
            BigUint::from(0u32)
        } else {
            (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
        };
        let expected = (exact % p.get()).to_u32_digits().first().copied().unwrap_or(0);
        prop_assert_eq!(binom_mod_p(n, k, p).value(), expected);
    }

    #[test]
    fn sl2_invariants_fixed(p in prime(), e in prop::array::uniform4(0i64..7)) {
        let Ok(g) = Mat2::new(p, e) else { return Ok(()); };
        for x in [q_class(p).unwrap(), r_class(p).unwrap()] {
            prop_assert_eq!(act(&g, &x).unwrap(), x);
        }
    }

    #[test]
    fn vandermonde(parts in prop::collection::vec(0usize..6, 1..4), p in prop::sample::select(vec![2usize, 3, 5])) {
        let w = Composition::new(parts);
        prop_assume!(p <= w.total());
        let total: u128 = perm::double_cosets(&w, p).unwrap().iter().map(|k| perm::orbit_size(&w, k)).sum();
        let n = w.total();
        let expected = (0..p).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
        prop_assert_eq!(total, expected);
    }

    #[test]
    fn normalized_reps_have_their_label(parts in prop::collection::vec(0usize..5, 1..4), p in prop::sample::select(vec![2usize, 3, 5])) {
        let w = Composition::new(parts);
        prop_assume!(p <= w.total());
        for k in perm::double_cosets(&w, p).unwrap() {
            let s = perm::normalized_rep(&k, &w, p).unwrap();
            let f = s.first_columns(p);
            let slash = perm::w_slash_f(&w, &f).unwrap();
            let ms: Vec<usize> = slash.parts().iter().step_by(2).copied().collect();
            prop_assert_eq!(ms.as_slice(), k.parts());
        }
    }

    #[test]
    fn perm_rank_round_trip(n in 1usize..8, seed in any::<u64>()) {
        let total = perm::factorial(n) as u64;
        let idx = seed % total;
        let s = Perm::unrank(n, idx);
        prop_assert_eq!(s.rank(), idx);
        prop_assert_eq!(s.compose(&s.inverse()), Perm::identity(n));
        prop_assert_eq!(Perm::new(s.images()).unwrap(), s);
    }

    #[test]
    fn composition_round_trip(parts in prop::collection::vec(0usize..20, 0..6)) {
        let c = Composition::new(parts);
        prop_assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
    }

    #[test]
    fn index_seq_round_trip(bits in 0u32..256) {
        let i = IndexSeq::new((0..8).filter(|b| bits & (1 << b) != 0).collect()).unwrap();
        prop_assert_eq!(i.to_string().parse::<IndexSeq>().unwrap(), i);
    }

    #[test]
    fn differential_raises_total_degree(p in prime(), bits in 0u32..16, k in 0u32..4) {
        let i = IndexSeq::new((0..4).filter(|b| bits & (1 << b) != 0).collect()).unwrap();
        match differential_target(p, &i, k) {
            Ok(d) => {
                prop_assert!(d.is_consistent());
                prop_assert_eq!(d.index, 2 * (p.as_u64().pow(k + 1) + 1));
                prop_assert_eq!(d.target.0, ypi_degree(p, &d.target_index).unwrap());
            }
            Err(_) => prop_assert!(i.least().is_some_and(|m| k >= m)),
        }
    }

    #[test]
    fn killing_coefficient_detects_p_squared(p in prime(), m in 1u64..60) {
        let n = m * p.as_u64();
        prop_assume!(n <= 200);
        let c = killing_coefficient(n, p, &IndexSeq::new(vec![0, 2]).unwrap()).unwrap();
        prop_assert_eq!(c.is_zero(), n % (p.as_u64() * p.as_u64()) == 0);
    }

    #[test]
    fn verdict_citations(n in 2u64..300, p in prop::sample::select(vec![2u32, 3, 5, 7, 11]), bits in 0u32..32) {
        let i = IndexSeq::new((0..5).filter(|b| bits & (1 << b) != 0).collect()).unwrap();
        let v = ypi_verdict(n, Prime::new(p).unwrap(), &i).unwrap();
        prop_assert_eq!(v.citation.is_some(), v.status != VerdictStatus::Unknown);
        if v.status == VerdictStatus::Zero && i.len() >= 2 {
            prop_assert!(v.scalar.is_some_and(|s| s != 0));
        }
    }
}
