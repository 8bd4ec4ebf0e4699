//! Young subgroups `S_W ⊂ S_n` and the double quotients
//! `S_W \ S_n / S_{p,n−p}`, with exhaustive group sweeps as certificates.
//!
//! Permutations act on `{1, …, n}`; as permutation matrices the `j`th column
//! of `s` is `e_{s(j)}`, so the "first p columns" of `s` are `s({1, …, p})`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modp::{Fp, Prime};
use crate::par;

pub const DEFAULT_N_MAX: usize = 8;

/// A permutation of `{1, …, n}`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// From 1-based images `s(1), …, s(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::InvalidPerm(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[i - 1] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i - 1).collect()))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// `s(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1] + 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (j, &i) in self.0.iter().enumerate() {
            inv[i] = j;
        }
        Perm(inv)
    }

    /// Swaps `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, j - 1);
        Perm(v)
    }

    /// The `idx`th permutation of `n` letters in lexicographic order.
    pub fn unrank(n: usize, mut idx: u64) -> Perm {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(n);
        for k in (0..n).rev() {
            let f = factorial(k) as u64;
            let pos = (idx / f) as usize;
            idx %= f;
            out.push(pool.remove(pos));
        }
        Perm(out)
    }

    pub fn rank(&self) -> u64 {
        let n = self.0.len();
        let mut r = 0u64;
        for i in 0..n {
            let smaller_later = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count() as u64;
            r += smaller_later * factorial(n - 1 - i) as u64;
        }
        r
    }

    /// `s({1, …, p})`, sorted, 1-based.
    pub fn first_columns(&self, p: usize) -> Vec<usize> {
        let mut f: Vec<usize> = self.0[..p].iter().map(|i| i + 1).collect();
        f.sort_unstable();
        f
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn binom_exact(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A finite sequence of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based ranges `(n_{i-1}, n_i]` of the blocks.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 1;
        self.0
            .iter()
            .map(|&n| {
                let r = start..start + n;
                start += n;
                r
            })
            .collect()
    }

    /// Block containing 1-based `j`.
    pub fn block_of(&self, j: usize) -> Option<usize> {
        self.blocks().iter().position(|r| r.contains(&j))
    }

    /// `Π parts_i!`.
    pub fn factorial_product(&self) -> u128 {
        self.0.iter().map(|&n| factorial(n)).product()
    }
}

impl fmt::Display for Composition {
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

impl FromStr for Composition {
    type Err = Error;
    /// Comma-separated integers, optionally parenthesised.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Composition(Vec::new()));
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidComposition(format!("bad part `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }
}

/// `S_W = S_{n_1} × ⋯ × S_{n_r}` acting on consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungSubgroup {
    shape: Composition,
}

impl YoungSubgroup {
    pub fn new(shape: Composition) -> Self {
        YoungSubgroup { shape }
    }

    /// `S_{p, n−p}`.
    pub fn two_block(p: usize, n: usize) -> Result<Self> {
        if p > n {
            return Err(Error::InvalidComposition(format!("{p} exceeds {n}")));
        }
        Ok(Self::new(Composition(vec![p, n - p])))
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.total()
    }

    pub fn order(&self) -> u128 {
        self.shape.factorial_product()
    }

    /// Whether `s` maps every block to itself.
    pub fn contains(&self, s: &Perm) -> bool {
        s.degree() == self.degree()
            && self
                .shape
                .blocks()
                .iter()
                .all(|r| r.clone().all(|j| r.contains(&s.apply(j))))
    }

    /// Adjacent transpositions inside each block.
    pub fn generators(&self) -> Vec<Perm> {
        let n = self.degree();
        self.shape
            .blocks()
            .into_iter()
            .flat_map(|r| {
                let end = r.end;
                r.filter(move |&j| j + 1 < end)
                    .map(move |j| Perm::transposition(n, j, j + 1))
            })
            .collect()
    }
}

fn check_prime_le(w: &Composition, p: usize) -> Result<()> {
    if p > w.total() {
        return Err(Error::PrimeExceedsN {
            n: w.total(),
            p: p as u32,
        });
    }
    Ok(())
}

/// Orbit labels `K = (k_1, …, k_r)` with `0 ≤ k_i ≤ n_i` and `Σ k_i = p`,
/// lexicographically sorted.
pub fn double_cosets(w: &Composition, p: usize) -> Result<Vec<Composition>> {
    check_prime_le(w, p)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(w.len());
    fn rec(parts: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        let Some((&n, rest)) = parts.split_first() else {
            if left == 0 {
                out.push(Composition(cur.clone()));
            }
            return;
        };
        let room: usize = rest.iter().sum();
        for k in 0..=n.min(left) {
            if left - k > room {
                continue;
            }
            cur.push(k);
            rec(rest, left - k, cur, out);
            cur.pop();
        }
    }
    rec(w.parts(), p, &mut cur, &mut out);
    Ok(out)
}

/// Number of `p`-subsets in the orbit `K`: `Π C(n_i, k_i)`.
pub fn orbit_size(w: &Composition, k: &Composition) -> u128 {
    w.parts()
        .iter()
        .zip(k.parts())
        .map(|(&n, &m)| binom_exact(n, m))
        .product()
}

/// `W/F = (m_1, n_1 − m_1, …, m_r, n_r − m_r)` with `m_i = |F ∩ block_i|`.
pub fn w_slash_f(w: &Composition, f: &[usize]) -> Result<Composition> {
    let n = w.total();
    let mut seen = vec![false; n + 1];
    for &j in f {
        if j == 0 || j > n {
            return Err(Error::InvalidArgument(format!(
                "index {j} is outside 1..={n}"
            )));
        }
        if seen[j] {
            return Err(Error::InvalidArgument(format!("index {j} repeated")));
        }
        seen[j] = true;
    }
    let mut out = Vec::with_capacity(2 * w.len());
    for r in w.blocks() {
        let m = r.clone().filter(|&j| seen[j]).count();
        out.push(m);
        out.push(r.len() - m);
    }
    Ok(Composition(out))
}

/// The representative of orbit `K` whose first `p` columns are
/// `{e_j : n_{i−1} < j ≤ n_{i−1} + k_i}` in increasing order, followed by
/// the complement in increasing order.
pub fn normalized_rep(k: &Composition, w: &Composition, p: usize) -> Result<Perm> {
    if k.len() != w.len() || k.total() != p {
        return Err(Error::InvalidComposition(format!(
            "{k} is not an orbit label for W = {w} and p = {p}"
        )));
    }
    let mut first = Vec::with_capacity(p);
    let mut rest = Vec::with_capacity(w.total() - p);
    for (r, &ki) in w.blocks().into_iter().zip(k.parts()) {
        if ki > r.len() {
            return Err(Error::InvalidComposition(format!(
                "{k} exceeds {w} in some block"
            )));
        }
        for (t, j) in r.enumerate() {
            if t < ki {
                first.push(j);
            } else {
                rest.push(j);
            }
        }
    }
    first.extend(rest);
    Perm::new(first)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerIntersection {
    /// `W/F` for `F` the first `p` columns.
    pub shape: Composition,
    /// `Π m_i! (n_i − m_i)!`.
    pub formula_order: u128,
    /// `|s S_{p,n−p} s⁻¹ ∩ S_W|` by sweeping all of `S_n`.
    pub certified_order: Option<u128>,
}

impl StabilizerIntersection {
    pub fn certified(&self) -> bool {
        self.certified_order == Some(self.formula_order)
    }
}

fn check_n_max(n: usize, n_max: usize) -> Result<()> {
    if n > n_max {
        return Err(Error::CapExceeded {
            what: "n for exhaustive sweeps",
            value: n as u64,
            cap: n_max as u64,
        });
    }
    Ok(())
}

/// `s S_{p,n−p} s⁻¹ ∩ S_W ≅ S_{W/F}`; with `certify` the intersection is
/// also counted by a sweep over `S_n`.
pub fn stabilizer_intersection(
    s: &Perm,
    w: &Composition,
    p: usize,
    certify: Option<usize>,
) -> Result<StabilizerIntersection> {
    let n = w.total();
    if s.degree() != n {
        return Err(Error::InvalidPerm(format!(
            "{s} does not act on {n} letters"
        )));
    }
    check_prime_le(w, p)?;
    let shape = w_slash_f(w, &s.first_columns(p))?;
    let formula_order = shape.factorial_product();
    let certified_order = match certify {
        None => None,
        Some(n_max) => {
            check_n_max(n, n_max)?;
            let young = YoungSubgroup::new(w.clone());
            let two = YoungSubgroup::two_block(p, n)?;
            let s_inv = s.inverse();
            let count = par::count_range(factorial(n) as u64, |idx| {
                let t = Perm::unrank(n, idx);
                young.contains(&t) && two.contains(&s_inv.compose(&t).compose(s))
            });
            Some(count as u128)
        }
    };
    Ok(StabilizerIntersection {
        shape,
        formula_order,
        certified_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveClass {
    pub label: Composition,
    /// Number of permutations in the double coset.
    pub size: u128,
}

/// Double cosets `S_W g S_{p,n−p}` found by a union-find sweep over `S_n`
/// using generators of both subgroups, each labelled by the block counts of
/// its first `p` columns. Errors if a class carries two labels.
pub fn exhaustive_double_cosets(
    w: &Composition,
    p: usize,
    n_max: usize,
) -> Result<Vec<ExhaustiveClass>> {
    check_prime_le(w, p)?;
    let n = w.total();
    check_n_max(n, n_max)?;
    let total = factorial(n) as u64;
    let left = YoungSubgroup::new(w.clone()).generators();
    let right = YoungSubgroup::two_block(p, n)?.generators();
    let neighbours: Vec<Vec<u64>> = par::map_range(total, |idx| {
        let g = Perm::unrank(n, idx);
        left.iter()
            .map(|h| h.compose(&g).rank())
            .chain(right.iter().map(|k| g.compose(k).rank()))
            .collect()
    });
    let mut uf = UnionFind::new(total as usize);
    for (idx, ns) in neighbours.iter().enumerate() {
        for &j in ns {
            uf.union(idx, j as usize);
        }
    }
    let labels: Vec<Composition> = par::map_range(total, |idx| {
        let g = Perm::unrank(n, idx);
        let f = g.first_columns(p);
        Composition(
            w.blocks()
                .iter()
                .map(|r| f.iter().filter(|j| r.contains(j)).count())
                .collect(),
        )
    });
    let mut classes: std::collections::BTreeMap<usize, (Composition, u128)> = Default::default();
    for (idx, label) in labels.into_iter().enumerate() {
        let root = uf.find(idx);
        let entry = classes.entry(root).or_insert_with(|| (label.clone(), 0));
        if entry.0 != label {
            return Err(Error::InvalidArgument(format!(
                "double coset carries labels {} and {label}",
                entry.0
            )));
        }
        entry.1 += 1;
    }
    let mut out: Vec<ExhaustiveClass> = classes
        .into_values()
        .map(|(label, size)| ExhaustiveClass { label, size })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    #[serde(rename = "K")]
    pub k: Composition,
    pub representative: Perm,
    /// `(p)/K`.
    pub intersection_type: Composition,
    pub vanishes: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MackeySummary {
    pub orbits: usize,
    pub surviving: usize,
    /// `n/p mod p`.
    pub scalar: u32,
    pub invertible: bool,
    pub inverse: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MackeyReport {
    pub n: usize,
    pub p: u32,
    #[serde(rename = "W")]
    pub blocks: Composition,
    pub orbits: Vec<OrbitReport>,
    pub summary: MackeySummary,
}

pub const REASON_PRIME_TO_P: &str =
    "(p)/K has an entry strictly between 0 and p, so PGL_{(p)/K} carries no p-torsion";
pub const REASON_FULL_BLOCK: &str =
    "(p)/K is (p) padded with zeros, so the term restricts through Gamma_(p)";

/// Double-coset decomposition of `res^{Γ_n}_{Γ_(p)} ∘ tr^{Γ_{p,n−p}}_{Γ_n}`
/// with `W = (p, …, p)`.
pub fn mackey_decompose(n: usize, p: u32) -> Result<MackeyReport> {
    let prime = Prime::new_odd(p)?;
    let pu = p as usize;
    if n == 0 || !n.is_multiple_of(pu) {
        return Err(Error::PrimeNotDividing { n: n as u64, p });
    }
    let w = Composition(vec![pu; n / pu]);
    let mut orbits = Vec::new();
    for k in double_cosets(&w, pu)? {
        let representative = normalized_rep(&k, &w, pu)?;
        let intersection_type = w_slash_f(&w, &representative.first_columns(pu))?;
        let vanishes = intersection_type.parts().iter().any(|&e| 0 < e && e < pu);
        orbits.push(OrbitReport {
            k,
            representative,
            intersection_type,
            vanishes,
            reason: if vanishes {
                REASON_PRIME_TO_P
            } else {
                REASON_FULL_BLOCK
            }
            .to_string(),
        });
    }
    let scalar = Fp::from_u64((n / pu) as u64, prime);
    let inverse = scalar.inverse().ok().map(Fp::value);
    Ok(MackeyReport {
        n,
        p,
        summary: MackeySummary {
            orbits: orbits.len(),
            surviving: orbits.iter().filter(|o| !o.vanishes).count(),
            scalar: scalar.value(),
            invertible: inverse.is_some(),
            inverse,
        },
        blocks: w,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn perm_basics() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        let s = Perm::new(vec![2, 3, 1]).unwrap();
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
        for idx in 0..120 {
            assert_eq!(Perm::unrank(5, idx).rank(), idx);
        }
        assert_eq!(Perm::unrank(3, 0), Perm::identity(3));
        assert_eq!(s.to_string(), "[2,3,1]");
    }

    #[test]
    fn young_orders() {
        assert_eq!(YoungSubgroup::new(c("3,3")).order(), 36);
        assert_eq!(YoungSubgroup::new(c("5")).order(), 120);
        assert_eq!(YoungSubgroup::new(c("2,0,3")).order(), 12);
        let y = YoungSubgroup::new(c("2,0,3"));
        assert!(y.contains(&Perm::new(vec![2, 1, 3, 5, 4]).unwrap()));
        assert!(!y.contains(&Perm::new(vec![3, 2, 1, 4, 5]).unwrap()));
        assert_eq!(y.generators().len(), 3);
    }

    #[test]
    fn young_generators_generate() {
        // closure of the generators has the stated order
        let y = YoungSubgroup::new(c("2,0,3"));
        let n = 5;
        let mut seen = std::collections::HashSet::from([Perm::identity(n)]);
        let mut frontier = vec![Perm::identity(n)];
        while let Some(g) = frontier.pop() {
            for h in y.generators() {
                let x = h.compose(&g);
                if seen.insert(x.clone()) {
                    frontier.push(x);
                }
            }
        }
        assert_eq!(seen.len() as u128, y.order());
        assert!(seen.iter().all(|g| y.contains(g)));
    }

    #[test]
    fn double_coset_examples() {
        let show = |w: &str, p| -> Vec<String> {
            double_cosets(&c(w), p)
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect()
        };
        assert_eq!(show("3,3", 3), ["(0,3)", "(1,2)", "(2,1)", "(3,0)"]);
        assert_eq!(show("6", 3), ["(3)"]);
        assert_eq!(show("2,3", 3), ["(0,3)", "(1,2)", "(2,1)"]);
        assert!(matches!(
            double_cosets(&c("1,1"), 3),
            Err(Error::PrimeExceedsN { .. })
        ));
    }

    #[test]
    fn exhaustive_matches_formula_small() {
        let ex = exhaustive_double_cosets(&c("3,3"), 3, 8).unwrap();
        let labels: Vec<_> = ex.iter().map(|e| e.label.clone()).collect();
        assert_eq!(labels, double_cosets(&c("3,3"), 3).unwrap());
        assert_eq!(ex.iter().map(|e| e.size).sum::<u128>(), 720);
        assert!(matches!(
            exhaustive_double_cosets(&c("5,4"), 3, 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn w_slash_f_examples() {
        assert_eq!(w_slash_f(&c("3,3"), &[1, 2, 3]).unwrap(), c("3,0,0,3"));
        assert_eq!(w_slash_f(&c("3,3"), &[1, 2, 4]).unwrap(), c("2,1,1,2"));
        assert_eq!(w_slash_f(&c("3,3"), &[]).unwrap(), c("0,3,0,3"));
        assert!(w_slash_f(&c("3,3"), &[7]).is_err());
        assert!(w_slash_f(&c("3,3"), &[1, 1]).is_err());
    }

    #[test]
    fn normalized_rep_examples() {
        let w = c("3,3");
        assert_eq!(normalized_rep(&c("3,0"), &w, 3).unwrap(), Perm::identity(6));
        assert_eq!(
            normalized_rep(&c("1,2"), &w, 3).unwrap().images()[..3],
            [1, 4, 5]
        );
        assert_eq!(
            normalized_rep(&c("0,3"), &w, 3).unwrap().images()[..3],
            [4, 5, 6]
        );
        assert!(normalized_rep(&c("1,1"), &w, 3).is_err());
        assert!(normalized_rep(&c("1,1,1"), &w, 3).is_err());
        assert!(normalized_rep(&c("4,0"), &c("3,3"), 4).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let w = c("3,3");
        let id = stabilizer_intersection(&Perm::identity(6), &w, 3, Some(8)).unwrap();
        assert_eq!(id.shape, c("3,0,0,3"));
        assert_eq!(id.formula_order, 36);
        assert!(id.certified());
        let s = normalized_rep(&c("1,2"), &w, 3).unwrap();
        let r = stabilizer_intersection(&s, &w, 3, Some(8)).unwrap();
        assert_eq!(r.shape, c("1,2,2,1"));
        assert_eq!(r.certified_order, Some(4));
        let s = normalized_rep(&c("2,1"), &w, 3).unwrap();
        let r = stabilizer_intersection(&s, &w, 3, Some(8)).unwrap();
        assert_eq!(r.shape, c("2,1,1,2"));
        assert_eq!(r.certified_order, Some(4));
    }

    #[test]
    fn mackey_examples() {
        let r = mackey_decompose(6, 3).unwrap();
        assert_eq!(
            (r.summary.orbits, r.summary.surviving, r.summary.scalar),
            (4, 2, 2)
        );
        assert!(r.summary.invertible);
        assert_eq!(r.summary.inverse, Some(2));
        let r = mackey_decompose(3, 3).unwrap();
        assert_eq!(
            (r.summary.orbits, r.summary.surviving, r.summary.scalar),
            (1, 1, 1)
        );
        let r = mackey_decompose(9, 3).unwrap();
        assert_eq!(
            (r.summary.orbits, r.summary.surviving, r.summary.scalar),
            (10, 3, 0)
        );
        assert!(!r.summary.invertible);
        assert!(matches!(
            mackey_decompose(7, 3),
            Err(Error::PrimeNotDividing { .. })
        ));
        assert!(matches!(mackey_decompose(4, 2), Err(Error::EvenPrime)));
    }
}
