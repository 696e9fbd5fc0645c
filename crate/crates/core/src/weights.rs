//! Weight multisets in `Z^r` and their behaviour under tensor, symmetric,
//! exterior and adjoint powers, together with the inverse problems of
//! recovering a multiset from its symmetric or tensor power.
//!
//! Weights are compared lexicographically (coordinate by coordinate, left
//! to right), which is a translation-invariant total order; the recovery
//! routines depend on exactly that property.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Weight = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("weight of length {found} in rank {expected}")]
    BadLength { expected: usize, found: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("empty weight multiset")]
    Empty,
    #[error("exterior power {k} exceeds multiset size {size}")]
    KTooLarge { k: usize, size: u64 },
    #[error("power must be positive")]
    InvalidK,
    #[error("highest weight {top:?} is not divisible by {k}")]
    NotDivisible { top: Weight, k: usize },
    #[error("not a symmetric power: {0}")]
    NotASymPower(String),
    #[error("not a tensor power: {0}")]
    NotATensorPower(String),
    #[error("search space of {candidates} candidates exceeds cap {cap}")]
    SearchTooLarge { candidates: u128, cap: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl WeightError {
    pub fn name(&self) -> &'static str {
        match self {
            WeightError::RankMismatch { .. } => "RankMismatch",
            WeightError::BadLength { .. } => "BadLength",
            WeightError::ZeroRank => "ZeroRank",
            WeightError::ZeroMultiplicity => "ZeroMultiplicity",
            WeightError::Empty => "Empty",
            WeightError::KTooLarge { .. } => "KTooLarge",
            WeightError::InvalidK => "InvalidK",
            WeightError::NotDivisible { .. } => "NotDivisible",
            WeightError::NotASymPower(_) => "NotASymPower",
            WeightError::NotATensorPower(_) => "NotATensorPower",
            WeightError::SearchTooLarge { .. } => "SearchTooLarge",
            WeightError::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, WeightError>;

/// Lexicographic order on `Z^r`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LexOrder;

impl LexOrder {
    pub fn compare(a: &[i64], b: &[i64]) -> Ordering {
        a.cmp(b)
    }
}

/// A finite multiset of integer vectors of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMultiset {
    rank: usize,
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    /// The empty multiset. Only the constructors below reject emptiness.
    pub fn empty(rank: usize) -> Self {
        WeightMultiset { rank, entries: BTreeMap::new() }
    }

    pub fn from_weights<I>(rank: usize, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = Weight>,
    {
        Self::from_entries(rank, weights.into_iter().map(|w| (w, 1)))
    }

    pub fn from_entries<I>(rank: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, u64)>,
    {
        if rank == 0 {
            return Err(WeightError::ZeroRank);
        }
        let mut out = Self::empty(rank);
        for (w, m) in entries {
            if w.len() != rank {
                return Err(WeightError::BadLength { expected: rank, found: w.len() });
            }
            if m == 0 {
                return Err(WeightError::ZeroMultiplicity);
            }
            out.insert(w, m);
        }
        if out.is_empty() {
            return Err(WeightError::Empty);
        }
        Ok(out)
    }

    /// Rank-one convenience constructor.
    pub fn scalar(values: &[i64]) -> Self {
        Self::from_weights(1, values.iter().map(|&v| vec![v])).expect("nonempty scalar weights")
    }

    pub fn insert(&mut self, w: Weight, mult: u64) {
        debug_assert_eq!(w.len(), self.rank);
        if mult > 0 {
            *self.entries.entry(w).or_insert(0) += mult;
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Total size, counted with multiplicity.
    pub fn size(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, w: &[i64]) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Every weight repeated by its multiplicity, in increasing lex order.
    pub fn flatten(&self) -> Vec<Weight> {
        self.iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w.clone(), m as usize))
            .collect()
    }

    pub fn lex_max(&self) -> Option<&Weight> {
        self.entries.keys().next_back()
    }

    pub fn lex_min(&self) -> Option<&Weight> {
        self.entries.keys().next()
    }

    pub fn map_weights(&self, f: impl Fn(&[i64]) -> Weight) -> Self {
        let mut out = Self::empty(self.rank);
        for (w, m) in self.iter() {
            out.insert(f(w), m);
        }
        out
    }

    pub fn translate(&self, by: &[i64]) -> Self {
        self.map_weights(|w| add(w, by))
    }

    pub fn is_sub_multiset_of(&self, other: &Self) -> bool {
        self.rank == other.rank && self.iter().all(|(w, m)| other.multiplicity(w) >= m)
    }

    /// `self - other`, or `None` if `other` is not contained in `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.is_sub_multiset_of(self) {
            return None;
        }
        let mut out = self.clone();
        for (w, m) in other.iter() {
            let slot = out.entries.get_mut(w).expect("containment checked");
            *slot -= m;
            if *slot == 0 {
                out.entries.remove(w);
            }
        }
        Some(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.insert(w.clone(), m);
        }
        out
    }

    /// Sum of all weights, with multiplicity.
    pub fn total(&self) -> Vec<i128> {
        let mut t = vec![0i128; self.rank];
        for (w, m) in self.iter() {
            for (acc, &x) in t.iter_mut().zip(w) {
                *acc += x as i128 * m as i128;
            }
        }
        t
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let normalized = text.replace("\\n", "\n").replace(';', "\n");
        let mut rank = None;
        let mut entries = Vec::new();
        for (lineno, raw) in normalized.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| WeightError::Parse(format!("line {}: {e}", lineno + 1)))?;
            if nums.len() < 2 {
                return Err(WeightError::Parse(format!("line {}: expected `mult c1 .. cr`", lineno + 1)));
            }
            let mult = u64::try_from(nums[0])
                .map_err(|_| WeightError::Parse(format!("line {}: negative multiplicity", lineno + 1)))?;
            let w = nums[1..].to_vec();
            match rank {
                None => rank = Some(w.len()),
                Some(r) if r != w.len() => return Err(WeightError::BadLength { expected: r, found: w.len() }),
                _ => {}
            }
            entries.push((w, mult));
        }
        let rank = rank.ok_or(WeightError::Empty)?;
        Self::from_entries(rank, entries)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, m) in self.iter() {
            write!(s, "{m}").unwrap();
            for c in w {
                write!(s, " {c}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRepr {
    mult: u64,
    weight: Weight,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultisetRepr {
    rank: usize,
    weights: Vec<EntryRepr>,
}

impl Serialize for WeightMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultisetRepr {
            rank: self.rank,
            weights: self.iter().map(|(w, m)| EntryRepr { mult: m, weight: w.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MultisetRepr::deserialize(d)?;
        WeightMultiset::from_entries(r.rank, r.weights.into_iter().map(|e| (e.weight, e.mult)))
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn add(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scaled(a: &[i64], k: i64) -> Weight {
    a.iter().map(|x| x * k).collect()
}

fn zero_multiset(rank: usize) -> WeightMultiset {
    let mut z = WeightMultiset::empty(rank);
    z.insert(vec![0; rank], 1);
    z
}

/// All pairwise sums, multiplicities multiplied.
pub fn convolve(a: &WeightMultiset, b: &WeightMultiset) -> WeightMultiset {
    assert_eq!(a.rank, b.rank, "convolution of different ranks");
    let mut out = WeightMultiset::empty(a.rank);
    for (u, m) in a.iter() {
        for (v, n) in b.iter() {
            out.insert(add(u, v), m * n);
        }
    }
    out
}

/// Weights of the `k`-th tensor power: all ordered `k`-fold sums.
/// `k = 0` gives the trivial weight.
pub fn tensor_power(w: &WeightMultiset, k: usize) -> WeightMultiset {
    let mut acc = zero_multiset(w.rank);
    for _ in 0..k {
        acc = convolve(&acc, w);
    }
    acc
}

/// Shared knapsack for symmetric (`repeat = true`) and exterior powers over
/// the flattened list of weights.
fn power_by_items(w: &WeightMultiset, k: usize, repeat: bool) -> WeightMultiset {
    let mut levels: Vec<WeightMultiset> = (0..=k).map(|_| WeightMultiset::empty(w.rank)).collect();
    levels[0] = zero_multiset(w.rank);
    for (item, copies) in w.iter() {
        for _ in 0..copies {
            let order: Box<dyn Iterator<Item = usize>> =
                if repeat { Box::new(1..=k) } else { Box::new((1..=k).rev()) };
            for j in order {
                let shifted = levels[j - 1].translate(item);
                levels[j] = levels[j].union(&shifted);
            }
        }
    }
    levels.swap_remove(k)
}

/// Weights of the `k`-th symmetric power: sums over `k`-element
/// multisubsets of the (flattened) weight list.
pub fn sym_power(w: &WeightMultiset, k: usize) -> WeightMultiset {
    power_by_items(w, k, true)
}

/// Weights of the `k`-th exterior power: sums over `k`-element subsets,
/// each weight used at most its multiplicity.
pub fn ext_power(w: &WeightMultiset, k: usize) -> Result<WeightMultiset> {
    if w.is_empty() {
        return Err(WeightError::Empty);
    }
    if k as u64 > w.size() {
        return Err(WeightError::KTooLarge { k, size: w.size() });
    }
    Ok(power_by_items(w, k, false))
}

pub fn dual(w: &WeightMultiset) -> WeightMultiset {
    w.map_weights(|v| v.iter().map(|x| -x).collect())
}

/// Weights of `End(V) = V* ⊗ V`: all differences.
pub fn adjoint(w: &WeightMultiset) -> WeightMultiset {
    convolve(w, &dual(w))
}

pub fn multiset_equal(a: &WeightMultiset, b: &WeightMultiset) -> Result<bool> {
    if a.rank != b.rank {
        return Err(WeightError::RankMismatch { left: a.rank, right: b.rank });
    }
    Ok(a == b)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Size of the `k`-th symmetric power of an `n`-element multiset.
pub fn sym_count(n: u64, k: u64) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    binomial(n + k - 1, k)
}

/// Size of the `k`-th tensor power of an `n`-element multiset.
pub fn tensor_count(n: u64, k: u64) -> Option<u128> {
    (n as u128).checked_pow(k as u32)
}

/// The `n` with `sym_count(n, k) == size`, if any.
pub fn infer_sym_n(size: u64, k: usize) -> Option<usize> {
    (1..=size as usize).find(|&n| sym_count(n as u64, k as u64) == size as u128)
}

/// The `n` with `n^k == size`, if any.
pub fn infer_tensor_n(size: u64, k: usize) -> Option<usize> {
    (1..=size as usize)
        .take_while(|&n| tensor_count(n as u64, k as u64).is_some_and(|c| c <= size as u128))
        .find(|&n| tensor_count(n as u64, k as u64) == Some(size as u128))
}

#[derive(Clone, Copy)]
enum PowerKind {
    Sym,
    Tensor,
}

impl PowerKind {
    fn fail(self, why: impl Into<String>) -> WeightError {
        match self {
            PowerKind::Sym => WeightError::NotASymPower(why.into()),
            PowerKind::Tensor => WeightError::NotATensorPower(why.into()),
        }
    }

    fn forward(self, w: &WeightMultiset, k: usize) -> WeightMultiset {
        match self {
            PowerKind::Sym => sym_power(w, k),
            PowerKind::Tensor => tensor_power(w, k),
        }
    }

    fn count(self, n: usize, k: usize) -> Option<u128> {
        match self {
            PowerKind::Sym => Some(sym_count(n as u64, k as u64)),
            PowerKind::Tensor => tensor_count(n as u64, k as u64),
        }
    }
}

/// Peels off weights from the top: the lex-max of the power is `k` times the
/// top weight, and once the top `i` weights are known, the lex-max of what
/// is left after removing their power is `(k - 1) * top + next`.
fn recover(s: &WeightMultiset, k: usize, n: usize, kind: PowerKind) -> Result<WeightMultiset> {
    if k == 0 {
        return Err(WeightError::InvalidK);
    }
    if n == 0 || s.is_empty() {
        return Err(WeightError::Empty);
    }
    if kind.count(n, k) != Some(s.size() as u128) {
        return Err(kind.fail(format!("size {} does not match n = {n}, k = {k}", s.size())));
    }
    let top = s.lex_max().expect("nonempty");
    if top.iter().any(|c| c % k as i64 != 0) {
        return Err(WeightError::NotDivisible { top: top.clone(), k });
    }
    let first: Weight = top.iter().map(|c| c / k as i64).collect();
    let lift = scaled(&first, k as i64 - 1);
    let mut recovered = WeightMultiset::empty(s.rank);
    recovered.insert(first, 1);
    while (recovered.size() as usize) < n {
        // One copy per round; the subtracted image is recomputed from scratch.
        let image = kind.forward(&recovered, k);
        let rest = s
            .checked_sub(&image)
            .ok_or_else(|| kind.fail("power of the recovered weights is not contained in the input"))?;
        let next_top = rest
            .lex_max()
            .ok_or_else(|| kind.fail("input exhausted before all weights were recovered"))?;
        let next: Weight = next_top.iter().zip(&lift).map(|(a, b)| a - b).collect();
        recovered.insert(next, 1);
    }
    if kind.forward(&recovered, k) != *s {
        return Err(kind.fail("recomputed power differs from the input"));
    }
    Ok(recovered)
}

/// The unique `n`-element multiset whose `k`-th symmetric power is `s`.
pub fn recover_from_sym(s: &WeightMultiset, k: usize, n: usize) -> Result<WeightMultiset> {
    recover(s, k, n, PowerKind::Sym)
}

/// An `n`-element multiset whose `k`-th tensor power is `t`.
pub fn recover_from_tensor(t: &WeightMultiset, k: usize, n: usize) -> Result<WeightMultiset> {
    recover(t, k, n, PowerKind::Tensor)
}

/// Every `n`-element multiset with coordinates in `[-bound, bound]` whose
/// `k`-th exterior power equals that of `v`. Exhaustive; refuses search
/// spaces larger than `cap` candidates.
pub fn ext_power_fibre(v: &WeightMultiset, k: usize, bound: i64, cap: u128) -> Result<Vec<WeightMultiset>> {
    let target = ext_power(v, k)?;
    let n = v.size();
    let r = v.rank;
    let side = (2 * bound + 1) as u64;
    let points_count = side.checked_pow(r as u32).ok_or(WeightError::SearchTooLarge { candidates: u128::MAX, cap })?;
    let candidates = sym_count(points_count, n);
    if candidates > cap {
        return Err(WeightError::SearchTooLarge { candidates, cap });
    }
    let points: Vec<Weight> = (0..points_count)
        .map(|mut code| {
            (0..r)
                .map(|_| {
                    let c = (code % side) as i64 - bound;
                    code /= side;
                    c
                })
                .collect()
        })
        .collect();
    // The sum of the exterior power is C(n-1, k-1) times the sum of the weights.
    let want_total = v.total();
    let mut found = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n as usize);
    fn walk(
        start: usize,
        remaining: u64,
        points: &[Weight],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if remaining == 0 {
            visit(chosen);
            return;
        }
        for i in start..points.len() {
            chosen.push(i);
            walk(i, remaining - 1, points, chosen, visit);
            chosen.pop();
        }
    }
    let mut visit = |idx: &[usize]| {
        let cand = WeightMultiset::from_weights(r, idx.iter().map(|&i| points[i].clone())).expect("valid candidate");
        if cand.total() != want_total {
            return;
        }
        if ext_power(&cand, k).is_ok_and(|e| e == target) {
            found.push(cand);
        }
    };
    walk(0, n, &points, &mut chosen, &mut visit);
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sl3_standard() -> WeightMultiset {
        WeightMultiset::from_weights(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap()
    }

    /// Independent oracle: explicit enumeration of index tuples.
    fn enumerate_power(w: &WeightMultiset, k: usize, mode: &str) -> WeightMultiset {
        let items = w.flatten();
        let n = items.len();
        let mut out = WeightMultiset::empty(w.rank());
        let mut idx = vec![0usize; k];
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            for slot in idx.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let ok = match mode {
                "tensor" => true,
                "sym" => idx.windows(2).all(|p| p[0] <= p[1]),
                "ext" => idx.windows(2).all(|p| p[0] < p[1]),
                _ => unreachable!(),
            };
            if ok {
                let mut s = vec![0; w.rank()];
                for &i in &idx {
                    s = add(&s, &items[i]);
                }
                out.insert(s, 1);
            }
        }
        out
    }

    #[test]
    fn tensor_square_of_pm_one() {
        let w = WeightMultiset::scalar(&[1, -1]);
        assert_eq!(tensor_power(&w, 2), WeightMultiset::scalar(&[2, 0, 0, -2]));
        assert_eq!(tensor_power(&w, 1), w);
    }

    #[test]
    fn tensor_square_sl3_matches_enumeration() {
        let t = tensor_power(&sl3_standard(), 2);
        assert_eq!(t.size(), 9);
        assert_eq!(t.multiplicity(&[1, 1]), 2);
        assert_eq!(t.multiplicity(&[2, 0]), 1);
        assert_eq!(t.multiplicity(&[0, 2]), 1);
        assert_eq!(t, enumerate_power(&sl3_standard(), 2, "tensor"));
    }

    #[test]
    fn sym_examples() {
        assert_eq!(sym_power(&WeightMultiset::scalar(&[1, -1]), 2), WeightMultiset::scalar(&[2, 0, -2]));
        let s = sym_power(&sl3_standard(), 3);
        assert_eq!(s.size(), 10);
        assert_eq!(s.lex_max(), Some(&vec![3, 0]));
        assert_eq!(s, enumerate_power(&sl3_standard(), 3, "sym"));
        assert_eq!(sym_power(&sl3_standard(), 1), sl3_standard());
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_power(&WeightMultiset::scalar(&[1, -1]), 2).unwrap(), WeightMultiset::scalar(&[0]));
        assert_eq!(
            ext_power(&sl3_standard(), 3).unwrap(),
            WeightMultiset::from_weights(2, vec![vec![0, 0]]).unwrap()
        );
        let v = sym_power(&sl3_standard(), 2);
        let e = ext_power(&v, 3).unwrap();
        assert_eq!(e.size(), 20);
        assert_eq!(e, enumerate_power(&v, 3, "ext"));
        assert_eq!(ext_power(&sl3_standard(), 4), Err(WeightError::KTooLarge { k: 4, size: 3 }));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&WeightMultiset::scalar(&[1, -1])), WeightMultiset::scalar(&[2, 0, 0, -2]));
        let a = adjoint(&sl3_standard());
        assert_eq!(a.size(), 9);
        assert_eq!(a.multiplicity(&[0, 0]), 3);
        for root in [[1, -1], [2, 1], [1, 2]] {
            assert_eq!(a.multiplicity(&root), 1);
            assert_eq!(a.multiplicity(&[-root[0], -root[1]]), 1);
        }
        assert_eq!(adjoint(&WeightMultiset::scalar(&[7])), WeightMultiset::scalar(&[0]));
    }

    #[test]
    fn dual_examples() {
        let s = WeightMultiset::scalar(&[2, 0, -2]);
        assert_eq!(dual(&s), s);
        assert_eq!(
            dual(&sl3_standard()),
            WeightMultiset::from_weights(2, vec![vec![-1, 0], vec![0, -1], vec![1, 1]]).unwrap()
        );
    }

    #[test]
    fn recovery_examples() {
        assert_eq!(
            recover_from_sym(&WeightMultiset::scalar(&[2, 0, -2]), 2, 2).unwrap(),
            WeightMultiset::scalar(&[1, -1])
        );
        let s = sym_power(&sl3_standard(), 3);
        assert_eq!(recover_from_sym(&s, 3, 3).unwrap(), sl3_standard());
        let bad = WeightMultiset::scalar(&[3, 1]);
        for n in 1..4 {
            assert!(matches!(recover_from_sym(&bad, 2, n), Err(WeightError::NotASymPower(_))));
        }
        assert_eq!(
            recover_from_tensor(&WeightMultiset::scalar(&[2, 0, 0, -2]), 2, 2).unwrap(),
            WeightMultiset::scalar(&[1, -1])
        );
        let bad = WeightMultiset::scalar(&[1, 0]);
        for n in 1..4 {
            assert!(matches!(recover_from_tensor(&bad, 2, n), Err(WeightError::NotATensorPower(_))));
        }
        assert!(infer_tensor_n(2, 2).is_none());
    }

    #[test]
    fn recovery_rejects_odd_top() {
        let s = WeightMultiset::scalar(&[3, 1, -1]);
        assert!(matches!(recover_from_sym(&s, 2, 2), Err(WeightError::NotDivisible { .. })));
    }

    #[test]
    fn recovery_with_repeated_top_weight() {
        let w = WeightMultiset::from_entries(1, vec![(vec![2], 2), (vec![-1], 1)]).unwrap();
        for k in 1..=4 {
            assert_eq!(recover_from_sym(&sym_power(&w, k), k, 3).unwrap(), w);
            assert_eq!(recover_from_tensor(&tensor_power(&w, k), k, 3).unwrap(), w);
        }
    }

    #[test]
    fn exterior_counterexample() {
        let v = sym_power(&sl3_standard(), 2);
        assert!(!multiset_equal(&v, &dual(&v)).unwrap());
        assert!(multiset_equal(&ext_power(&v, 3).unwrap(), &ext_power(&dual(&v), 3).unwrap()).unwrap());
    }

    #[test]
    fn multiset_equal_rank_mismatch() {
        assert!(matches!(
            multiset_equal(&sl3_standard(), &WeightMultiset::scalar(&[1])),
            Err(WeightError::RankMismatch { .. })
        ));
        assert!(!multiset_equal(&sl3_standard(), &dual(&sl3_standard())).unwrap());
        assert!(multiset_equal(&sym_power(&WeightMultiset::scalar(&[1, -1]), 2), &WeightMultiset::scalar(&[2, 0, -2])).unwrap());
    }

    #[test]
    fn text_and_json_formats() {
        let w = WeightMultiset::parse_text("1 2\\n1 0\n# comment\n1 -2").unwrap();
        assert_eq!(w, WeightMultiset::scalar(&[2, 0, -2]));
        assert_eq!(WeightMultiset::parse_text(&w.to_text()).unwrap(), w);
        let js = serde_json::to_string(&w).unwrap();
        assert_eq!(js, r#"{"rank":1,"weights":[{"mult":1,"weight":[-2]},{"mult":1,"weight":[0]},{"mult":1,"weight":[2]}]}"#);
        assert!(WeightMultiset::parse_text("1 2\n1 0 0").is_err());
        assert!(WeightMultiset::parse_text("0 1").is_err());
        assert!(WeightMultiset::parse_text("").is_err());
    }

    #[test]
    fn ext_fibre_contains_dual() {
        let v = WeightMultiset::from_weights(1, vec![vec![2], vec![1], vec![-1], vec![-2]]).unwrap();
        let fibre = ext_power_fibre(&v, 2, 2, 1_000_000).unwrap();
        assert!(fibre.contains(&v));
        assert!(fibre.contains(&dual(&v)));
    }

    fn arb_multiset() -> impl Strategy<Value = WeightMultiset> {
        (1usize..=3).prop_flat_map(|r| {
            prop::collection::vec(prop::collection::vec(-4i64..=4, r), 1..=5)
                .prop_map(move |ws| WeightMultiset::from_weights(r, ws).unwrap())
        })
    }

    proptest! {
        #[test]
        fn sym_round_trip(w in arb_multiset(), k in 1usize..=3) {
            let s = sym_power(&w, k);
            prop_assert_eq!(s.size() as u128, sym_count(w.size(), k as u64));
            prop_assert_eq!(recover_from_sym(&s, k, w.size() as usize).unwrap(), w);
        }

        #[test]
        fn tensor_round_trip(w in arb_multiset(), k in 1usize..=3) {
            let t = tensor_power(&w, k);
            prop_assert_eq!(recover_from_tensor(&t, k, w.size() as usize).unwrap(), w);
        }

        #[test]
        fn lex_max_scales(w in arb_multiset(), k in 1usize..=3) {
            let top = scaled(w.lex_max().unwrap(), k as i64);
            prop_assert_eq!(sym_power(&w, k).lex_max().cloned(), Some(top.clone()));
            prop_assert_eq!(tensor_power(&w, k).lex_max().cloned(), Some(top));
        }

        #[test]
        fn adjoint_is_dual_invariant(w in arb_multiset()) {
            let a = adjoint(&w);
            prop_assert_eq!(&a, &adjoint(&dual(&w)));
            prop_assert_eq!(&a, &dual(&a));
            prop_assert!(a.multiplicity(&vec![0; w.rank()]) >= w.size());
        }

        #[test]
        fn dual_is_involution(w in arb_multiset()) {
            prop_assert_eq!(dual(&dual(&w)), w);
        }

        #[test]
        fn ext_sizes_are_binomial(w in arb_multiset(), k in 1usize..=5) {
            prop_assume!(k as u64 <= w.size());
            prop_assert_eq!(ext_power(&w, k).unwrap().size() as u128, binomial(w.size(), k as u64));
        }

        #[test]
        fn lex_order_translation_invariant(
            a in prop::collection::vec(-9i64..9, 3),
            b in prop::collection::vec(-9i64..9, 3),
            c in prop::collection::vec(-9i64..9, 3),
        ) {
            prop_assert_eq!(LexOrder::compare(&a, &b), LexOrder::compare(&add(&a, &c), &add(&b, &c)));
        }
    }
}
