//! Finite-dimensional irreducible modules of the simple Lie algebras of
//! types A1, A2 and C2, described through their weights.
//!
//! Weights are written in fundamental-weight coordinates (Dynkin labels).
//! The invariant form is stored scaled so that it is integer valued on the
//! weight lattice; every formula used here is homogeneous in the form, so the
//! scaling never matters.
//!
//! "Highest" is measured in simple-root coordinates: a weight `μ` is
//! compared through `det(C) · C^{-T} μ`, lexicographically. This order
//! refines the dominance order, so the maximum of any module is its highest
//! weight. (Plain lexicographic order on Dynkin labels does not have this
//! property: the top of `V(0,1)` for A2 would be `(1,-1)`.)

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weights::{add, adjoint, convolve, dual, Weight, WeightMultiset};

pub const DEFAULT_DIMENSION_CAP: u64 = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("module dimension {dim} exceeds cap {cap}")]
    DimensionOverflow { dim: u64, cap: u64 },
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("expected {expected} coordinates, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("unknown algebra `{0}` (expected A1, A2 or C2)")]
    UnknownAlgebra(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl LieError {
    pub fn name(&self) -> &'static str {
        match self {
            LieError::DimensionOverflow { .. } => "DimensionOverflow",
            LieError::NotDominant(_) => "NotDominant",
            LieError::LengthMismatch { .. } => "LengthMismatch",
            LieError::UnknownAlgebra(_) => "UnknownAlgebra",
            LieError::Inconsistent(_) => "Inconsistent",
        }
    }
}

pub type Result<T> = std::result::Result<T, LieError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraName {
    A1,
    A2,
    C2,
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlgebraName::A1 => "A1",
            AlgebraName::A2 => "A2",
            AlgebraName::C2 => "C2",
        };
        f.write_str(s)
    }
}

impl FromStr for AlgebraName {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(AlgebraName::A1),
            "A2" => Ok(AlgebraName::A2),
            "C2" | "B2" => Ok(AlgebraName::C2),
            _ => Err(LieError::UnknownAlgebra(s.to_string())),
        }
    }
}

/// Root data of a simple algebra, all in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraData {
    pub name: AlgebraName,
    pub rank: usize,
    /// Row `i` is the simple root `α_i`; equivalently the Cartan matrix.
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    /// Scaled Gram matrix `⟨ω_i, ω_j⟩`.
    pub form: Vec<Vec<i64>>,
    pub rho: Weight,
    pub dimension_cap: u64,
}

impl AlgebraData {
    pub fn new(name: AlgebraName) -> Self {
        let (simple_roots, positive_roots, form): (Vec<Weight>, Vec<Weight>, Vec<Vec<i64>>) = match name {
            AlgebraName::A1 => (vec![vec![2]], vec![vec![2]], vec![vec![1]]),
            AlgebraName::A2 => (
                vec![vec![2, -1], vec![-1, 2]],
                vec![vec![2, -1], vec![-1, 2], vec![1, 1]],
                vec![vec![2, 1], vec![1, 2]],
            ),
            // α1 short, α2 long.
            AlgebraName::C2 => (
                vec![vec![2, -1], vec![-2, 2]],
                vec![vec![2, -1], vec![-2, 2], vec![0, 1], vec![2, 0]],
                vec![vec![1, 1], vec![1, 2]],
            ),
        };
        let rank = simple_roots.len();
        AlgebraData {
            name,
            rank,
            simple_roots,
            positive_roots,
            form,
            rho: vec![1; rank],
            dimension_cap: DEFAULT_DIMENSION_CAP,
        }
    }

    pub fn a1() -> Self {
        Self::new(AlgebraName::A1)
    }

    pub fn a2() -> Self {
        Self::new(AlgebraName::A2)
    }

    pub fn c2() -> Self {
        Self::new(AlgebraName::C2)
    }

    pub fn with_dimension_cap(mut self, cap: u64) -> Self {
        self.dimension_cap = cap;
        self
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j)).collect())
            .collect()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut acc = 0i128;
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                acc += x as i128 * self.form[i][j] as i128 * y as i128;
            }
        }
        acc
    }

    /// `2⟨α_i, α_j⟩ / ⟨α_j, α_j⟩`, recomputed from the roots and the form.
    pub fn cartan_from_form(&self) -> Vec<Vec<i64>> {
        let a = &self.simple_roots;
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| (2 * self.inner(&a[i], &a[j]) / self.inner(&a[j], &a[j])) as i64)
                    .collect()
            })
            .collect()
    }

    /// `det(C) · C^{-T} μ`: simple-root coordinates, cleared of denominators.
    pub fn root_key(&self, mu: &[i64]) -> Vec<i64> {
        let c = &self.simple_roots;
        match self.rank {
            1 => vec![mu[0]],
            2 => {
                // μ = C^T x, so x = adj(C^T) μ / det.
                let (a, b, cc, d) = (c[0][0], c[1][0], c[0][1], c[1][1]);
                vec![d * mu[0] - b * mu[1], -cc * mu[0] + a * mu[1]]
            }
            _ => unreachable!("only ranks 1 and 2 are built in"),
        }
    }

    pub fn compare(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.root_key(a).cmp(&self.root_key(b)).then_with(|| a.cmp(b))
    }

    /// Height of a root lattice element above zero, times `det(C)`.
    fn scaled_height(&self, mu: &[i64]) -> i64 {
        self.root_key(mu).iter().sum()
    }

    pub fn reflect(&self, i: usize, mu: &[i64]) -> Weight {
        let c = mu[i];
        mu.iter().zip(&self.simple_roots[i]).map(|(m, a)| m - c * a).collect()
    }

    /// The dominant weight in the Weyl orbit of `mu`.
    pub fn dominant_conjugate(&self, mu: &[i64]) -> Weight {
        let mut w = mu.to_vec();
        while let Some(i) = w.iter().position(|&c| c < 0) {
            w = self.reflect(i, &w);
        }
        w
    }

    pub fn weyl_orbit(&self, mu: &[i64]) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![mu.to_vec()];
        while let Some(w) = stack.pop() {
            if seen.insert(w.clone()) {
                for i in 0..self.rank {
                    stack.push(self.reflect(i, &w));
                }
            }
        }
        seen
    }

    /// Top of a multiset in the root order.
    pub fn highest_of<'a>(&self, w: &'a WeightMultiset) -> Option<&'a Weight> {
        w.iter().map(|(v, _)| v).max_by(|a, b| self.compare(a, b))
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(LieError::LengthMismatch { expected: self.rank, found: v.len() });
        }
        Ok(())
    }
}

/// A dominant weight, naming an irreducible module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&c| c < 0) {
            return Err(LieError::NotDominant(coeffs));
        }
        Ok(HighestWeight(coeffs))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl TryFrom<Vec<i64>> for HighestWeight {
    type Error = LieError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        HighestWeight::new(v)
    }
}

impl From<HighestWeight> for Vec<i64> {
    fn from(h: HighestWeight) -> Self {
        h.0
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for HighestWeight {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coeffs = inner
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| LieError::Inconsistent(format!("bad weight `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        HighestWeight::new(coeffs)
    }
}

pub fn weyl_dim(alg: &AlgebraData, hw: &HighestWeight) -> u64 {
    let shifted = add(hw.coeffs(), &alg.rho);
    let (mut num, mut den) = (1i128, 1i128);
    for alpha in &alg.positive_roots {
        num *= alg.inner(&shifted, alpha);
        den *= alg.inner(&alg.rho, alpha);
    }
    debug_assert_eq!(num % den, 0);
    (num / den) as u64
}

/// Highest weight of the dual module, `-w0(λ)`.
pub fn dual_highest_weight(alg: &AlgebraData, hw: &HighestWeight) -> HighestWeight {
    let neg: Vec<i64> = hw.coeffs().iter().map(|c| -c).collect();
    HighestWeight(alg.dominant_conjugate(&neg))
}

/// Weight multiset of the irreducible module with highest weight `hw`,
/// computed level by level below `hw` with Freudenthal's recursion.
pub fn irr_weights(alg: &AlgebraData, hw: &HighestWeight) -> Result<WeightMultiset> {
    alg.check_len(hw.coeffs())?;
    let dim = weyl_dim(alg, hw);
    if dim > alg.dimension_cap {
        return Err(LieError::DimensionOverflow { dim, cap: alg.dimension_cap });
    }
    let lambda = hw.coeffs().to_vec();
    let top_norm = {
        let s = add(&lambda, &alg.rho);
        alg.inner(&s, &s)
    };
    let mut mult: HashMap<Weight, i128> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    let mut frontier = vec![lambda.clone()];
    while !frontier.is_empty() {
        let candidates: BTreeSet<Weight> = frontier
            .iter()
            .flat_map(|mu| alg.simple_roots.iter().map(move |a| mu.iter().zip(a).map(|(m, x)| m - x).collect()))
            .collect();
        let mut next = Vec::new();
        for nu in candidates {
            let depth = alg.scaled_height(&lambda) - alg.scaled_height(&nu);
            let mut num = 0i128;
            for alpha in &alg.positive_roots {
                let step = alg.scaled_height(alpha);
                let mut above = nu.clone();
                let mut climbed = 0;
                while climbed + step <= depth {
                    above = add(&above, alpha);
                    climbed += step;
                    if let Some(&m) = mult.get(&above) {
                        num += m * alg.inner(&above, alpha);
                    }
                }
            }
            num *= 2;
            let shifted = add(&nu, &alg.rho);
            let den = top_norm - alg.inner(&shifted, &shifted);
            if den == 0 {
                if num != 0 {
                    return Err(LieError::Inconsistent(format!("zero denominator at {nu:?}")));
                }
                continue;
            }
            if num % den != 0 {
                return Err(LieError::Inconsistent(format!("non-integral multiplicity at {nu:?}")));
            }
            let m = num / den;
            if m > 0 {
                mult.insert(nu.clone(), m);
                next.push(nu);
            }
        }
        frontier = next;
    }
    let out = WeightMultiset::from_entries(alg.rank, mult.into_iter().map(|(w, m)| (w, m as u64)))
        .map_err(|e| LieError::Inconsistent(e.to_string()))?;
    if out.size() != dim {
        return Err(LieError::Inconsistent(format!("weight count {} differs from dimension {dim}", out.size())));
    }
    Ok(out)
}

/// Irreducible constituents of `V(h1) ⊗ V(h2)`, highest first, with repetition.
pub fn tensor_decompose(alg: &AlgebraData, h1: &HighestWeight, h2: &HighestWeight) -> Result<Vec<HighestWeight>> {
    let dim = weyl_dim(alg, h1) * weyl_dim(alg, h2);
    if dim > alg.dimension_cap {
        return Err(LieError::DimensionOverflow { dim, cap: alg.dimension_cap });
    }
    let product = convolve(&irr_weights(alg, h1)?, &irr_weights(alg, h2)?);
    decompose(alg, product)
}

/// Splits a weight multiset of a finite-dimensional module into irreducibles.
pub fn decompose(alg: &AlgebraData, mut rest: WeightMultiset) -> Result<Vec<HighestWeight>> {
    let mut parts = Vec::new();
    while let Some(top) = alg.highest_of(&rest) {
        let hw = HighestWeight::new(top.clone())
            .map_err(|_| LieError::Inconsistent(format!("highest remaining weight {top:?} is not dominant")))?;
        let piece = irr_weights(alg, &hw)?;
        rest = rest
            .checked_sub(&piece)
            .ok_or_else(|| LieError::Inconsistent(format!("V{hw} does not fit in the remaining weights")))?;
        parts.push(hw);
    }
    Ok(parts)
}

/// Every dominant weight with all coordinates in `0..=bound`.
pub fn dominant_box(alg: &AlgebraData, bound: u32) -> Vec<HighestWeight> {
    let side = bound as i64 + 1;
    (0..side.pow(alg.rank as u32))
        .map(|mut code| {
            let mut v = vec![0; alg.rank];
            for slot in v.iter_mut().rev() {
                *slot = code % side;
                code /= side;
            }
            HighestWeight(v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub first: Vec<HighestWeight>,
    pub second: Vec<HighestWeight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub algebra: AlgebraName,
    pub bound: u32,
    pub max_factors: usize,
    pub tuples_checked: u64,
    pub pairs_checked: u64,
    pub counterexamples: Vec<Collision>,
}

fn nondecreasing_tuples(items: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(start: usize, items: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..items {
            cur.push(i);
            go(i, items, len, cur, out);
            cur.pop();
        }
    }
    go(0, items, len, &mut cur, &mut out);
    out
}

/// Exhaustively checks that tensor products of nontrivial irreducibles (each
/// highest-weight coordinate at most `bound`, between one and `max_factors`
/// factors) have pairwise distinct weight multisets unless the factor
/// multisets agree. Tuples are unordered, so any collision is a counterexample.
pub fn check_unique_factorization(alg: &AlgebraData, bound: u32, max_factors: usize) -> Result<FactorizationReport> {
    let factors: Vec<HighestWeight> = dominant_box(alg, bound).into_iter().filter(|h| !h.is_trivial()).collect();
    let modules: Vec<WeightMultiset> = factors.par_iter().map(|h| irr_weights(alg, h)).collect::<Result<_>>()?;
    let tuples: Vec<Vec<usize>> = (1..=max_factors)
        .flat_map(|len| nondecreasing_tuples(factors.len(), len))
        .collect();
    let products: Vec<WeightMultiset> = tuples
        .par_iter()
        .map(|t| {
            t.iter()
                .map(|&i| modules[i].clone())
                .reduce(|acc, m| convolve(&acc, &m))
                .expect("nonempty tuple")
        })
        .collect();
    let mut classes: BTreeMap<&WeightMultiset, Vec<usize>> = BTreeMap::new();
    for (i, p) in products.iter().enumerate() {
        classes.entry(p).or_default().push(i);
    }
    let name = |t: &Vec<usize>| t.iter().map(|&i| factors[i].clone()).collect::<Vec<_>>();
    let mut counterexamples = Vec::new();
    for members in classes.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                counterexamples.push(Collision { first: name(&tuples[i]), second: name(&tuples[j]) });
            }
        }
    }
    counterexamples.sort_by(|x, y| (&x.first, &x.second).cmp(&(&y.first, &y.second)));
    let n = tuples.len() as u64;
    Ok(FactorizationReport {
        algebra: alg.name,
        bound,
        max_factors,
        tuples_checked: n,
        pairs_checked: n * n.saturating_sub(1) / 2,
        counterexamples,
    })
}

/// All `W` with coordinates at most `bound` whose adjoint module has the
/// same weights as that of `V(hw)`, sorted.
pub fn adjoint_fibre(alg: &AlgebraData, hw: &HighestWeight, bound: u32) -> Result<Vec<HighestWeight>> {
    let dim = weyl_dim(alg, hw);
    let target = adjoint(&irr_weights(alg, hw)?);
    let candidates: Vec<HighestWeight> = dominant_box(alg, bound)
        .into_iter()
        .filter(|w| weyl_dim(alg, w) == dim)
        .collect();
    let hits: Vec<Option<HighestWeight>> = candidates
        .par_iter()
        .map(|w| Ok((adjoint(&irr_weights(alg, w)?) == target).then(|| w.clone())))
        .collect::<Result<_>>()?;
    let mut out: Vec<HighestWeight> = hits.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductGroupReport {
    pub adjoint_equal: bool,
    pub v_iso_w: bool,
    pub v_iso_w_dual: bool,
    pub v_iso_v: bool,
    pub double_dual_iso: bool,
    pub v_weights: WeightMultiset,
    pub w_weights: WeightMultiset,
}

/// For `A2 × A2` with `V = std ⊠ std` and `W = std ⊠ std*`, the adjoint
/// modules agree although `W` is neither `V` nor its dual.
pub fn product_group_adjoint_counterexample() -> ProductGroupReport {
    let alg = AlgebraData::a2();
    let std = irr_weights(&alg, &HighestWeight(vec![1, 0])).expect("standard module");
    let std_dual = dual(&std);
    let external = |a: &WeightMultiset, b: &WeightMultiset| {
        let mut out = WeightMultiset::empty(4);
        for (x, m) in a.iter() {
            for (y, n) in b.iter() {
                out.insert(x.iter().chain(y).copied().collect(), m * n);
            }
        }
        out
    };
    let v = external(&std, &std);
    let w = external(&std, &std_dual);
    ProductGroupReport {
        adjoint_equal: adjoint(&v) == adjoint(&w),
        v_iso_w: v == w,
        v_iso_w_dual: v == dual(&w),
        v_iso_v: v == v.clone(),
        double_dual_iso: dual(&dual(&v)) == v,
        v_weights: v,
        w_weights: w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    fn all_algebras() -> [AlgebraData; 3] {
        [AlgebraData::a1(), AlgebraData::a2(), AlgebraData::c2()]
    }

    /// Independent oracle for A1: the string a, a-2, ..., -a.
    fn sl2_string(a: i64) -> WeightMultiset {
        WeightMultiset::scalar(&(0..=a).map(|j| a - 2 * j).collect::<Vec<_>>())
    }

    #[test]
    fn cartan_matrices_round_trip() {
        for alg in all_algebras() {
            assert_eq!(alg.cartan_from_form(), alg.simple_roots);
        }
        assert_eq!(AlgebraData::a1().positive_roots.len(), 1);
        assert_eq!(AlgebraData::a2().positive_roots.len(), 3);
        assert_eq!(AlgebraData::c2().positive_roots.len(), 4);
    }

    #[test]
    fn a1_strings() {
        let alg = AlgebraData::a1();
        for a in 0..12 {
            assert_eq!(irr_weights(&alg, &hw(&[a])).unwrap(), sl2_string(a));
            assert_eq!(weyl_dim(&alg, &hw(&[a])), a as u64 + 1);
        }
    }

    #[test]
    fn a2_adjoint_module() {
        let alg = AlgebraData::a2();
        let w = irr_weights(&alg, &hw(&[1, 1])).unwrap();
        assert_eq!(w.size(), 8);
        assert_eq!(w.multiplicity(&[0, 0]), 2);
        let roots: WeightMultiset = {
            let mut r = WeightMultiset::empty(2);
            for a in &alg.positive_roots {
                r.insert(a.clone(), 1);
                r.insert(a.iter().map(|x| -x).collect(), 1);
            }
            r.insert(vec![0, 0], 2);
            r
        };
        assert_eq!(w, roots);
    }

    #[test]
    fn c2_standard_module() {
        let alg = AlgebraData::c2();
        let w = irr_weights(&alg, &hw(&[1, 0])).unwrap();
        let expected = WeightMultiset::from_weights(2, vec![vec![1, 0], vec![-1, 1], vec![1, -1], vec![-1, 0]]).unwrap();
        assert_eq!(w, expected);
        // The 5-dimensional module of so(5) has a zero weight.
        let five = irr_weights(&alg, &hw(&[0, 1])).unwrap();
        assert_eq!(five.size(), 5);
        assert_eq!(five.multiplicity(&[0, 0]), 1);
    }

    #[test]
    fn dimensions() {
        let a2 = AlgebraData::a2();
        assert_eq!(weyl_dim(&a2, &hw(&[1, 0])), 3);
        assert_eq!(weyl_dim(&a2, &hw(&[2, 1])), 15);
        assert_eq!(irr_weights(&a2, &hw(&[2, 1])).unwrap().size(), 15);
        let c2 = AlgebraData::c2();
        // (a+1)(b+1)(a+b+2)(a+2b+3)/6
        for a in 0..5i64 {
            for b in 0..5i64 {
                let d = (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) / 6;
                assert_eq!(weyl_dim(&c2, &hw(&[a, b])), d as u64);
            }
        }
    }

    #[test]
    fn dimension_cap() {
        let alg = AlgebraData::a2().with_dimension_cap(10);
        assert!(matches!(irr_weights(&alg, &hw(&[2, 1])), Err(LieError::DimensionOverflow { dim: 15, cap: 10 })));
    }

    #[test]
    fn highest_is_top_in_root_order() {
        let alg = AlgebraData::a2();
        let w = irr_weights(&alg, &hw(&[0, 1])).unwrap();
        assert_eq!(alg.highest_of(&w), Some(&vec![0, 1]));
        assert_eq!(w.lex_max(), Some(&vec![1, -1]));
    }

    #[test]
    fn clebsch_gordan() {
        let alg = AlgebraData::a1();
        assert_eq!(tensor_decompose(&alg, &hw(&[2]), &hw(&[3])).unwrap(), vec![hw(&[5]), hw(&[3]), hw(&[1])]);
        assert_eq!(tensor_decompose(&alg, &hw(&[4]), &hw(&[0])).unwrap(), vec![hw(&[4])]);
        let a2 = AlgebraData::a2();
        assert_eq!(tensor_decompose(&a2, &hw(&[1, 0]), &hw(&[0, 1])).unwrap(), vec![hw(&[1, 1]), hw(&[0, 0])]);
        assert_eq!(tensor_decompose(&a2, &hw(&[1, 0]), &hw(&[1, 0])).unwrap(), vec![hw(&[2, 0]), hw(&[0, 1])]);
    }

    #[test]
    fn duals() {
        let a2 = AlgebraData::a2();
        assert_eq!(dual_highest_weight(&a2, &hw(&[2, 1])), hw(&[1, 2]));
        let c2 = AlgebraData::c2();
        assert_eq!(dual_highest_weight(&c2, &hw(&[2, 1])), hw(&[2, 1]));
        assert_eq!(dual_highest_weight(&AlgebraData::a1(), &hw(&[3])), hw(&[3]));
    }

    #[test]
    fn factorization_sweeps() {
        for (alg, bound) in [(AlgebraData::a1(), 6), (AlgebraData::a2(), 2), (AlgebraData::c2(), 2)] {
            let r = check_unique_factorization(&alg, bound, 2).unwrap();
            assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
            assert!(r.tuples_checked > 0);
        }
        let empty = check_unique_factorization(&AlgebraData::a2(), 0, 2).unwrap();
        assert_eq!(empty.tuples_checked, 0);
        assert!(empty.counterexamples.is_empty());
    }

    #[test]
    fn factorization_detects_trivial_factor() {
        // Including the trivial module breaks uniqueness: V ⊗ 1 = V.
        let alg = AlgebraData::a1();
        let v = irr_weights(&alg, &hw(&[2])).unwrap();
        let one = irr_weights(&alg, &hw(&[0])).unwrap();
        assert_eq!(convolve(&v, &one), v);
    }

    #[test]
    fn adjoint_fibres() {
        assert_eq!(adjoint_fibre(&AlgebraData::a2(), &hw(&[1, 0]), 3).unwrap(), vec![hw(&[0, 1]), hw(&[1, 0])]);
        assert_eq!(adjoint_fibre(&AlgebraData::a1(), &hw(&[5]), 8).unwrap(), vec![hw(&[5])]);
        assert_eq!(adjoint_fibre(&AlgebraData::c2(), &hw(&[1, 0]), 2).unwrap(), vec![hw(&[1, 0])]);
    }

    #[test]
    fn product_group_counterexample() {
        let r = product_group_adjoint_counterexample();
        assert!(r.adjoint_equal);
        assert!(!r.v_iso_w);
        assert!(!r.v_iso_w_dual);
        assert!(r.v_iso_v && r.double_dual_iso);
    }

    #[test]
    fn highest_weight_parsing() {
        assert_eq!("(1,2)".parse::<HighestWeight>().unwrap(), hw(&[1, 2]));
        assert_eq!("3".parse::<HighestWeight>().unwrap(), hw(&[3]));
        assert!("(1,-1)".parse::<HighestWeight>().is_err());
        assert_eq!(serde_json::to_string(&hw(&[1, 0])).unwrap(), "[1,0]");
        assert!(serde_json::from_str::<HighestWeight>("[-1,0]").is_err());
    }

    fn arb_module() -> impl Strategy<Value = (AlgebraData, HighestWeight)> {
        (0usize..3, 0i64..=4, 0i64..=4).prop_map(|(i, a, b)| {
            let alg = all_algebras()[i].clone();
            let coeffs = if alg.rank == 1 { vec![a + b] } else { vec![a, b] };
            (alg, HighestWeight(coeffs))
        })
    }

    proptest! {
        #[test]
        fn weyl_invariance((alg, h) in arb_module()) {
            prop_assume!(weyl_dim(&alg, &h) <= 200);
            let w = irr_weights(&alg, &h).unwrap();
            for i in 0..alg.rank {
                prop_assert_eq!(w.map_weights(|v| alg.reflect(i, v)), w.clone());
            }
            prop_assert_eq!(w.size(), weyl_dim(&alg, &h));
            prop_assert_eq!(alg.highest_of(&w), Some(&h.coeffs().to_vec()));
        }

        #[test]
        fn decomposition_re_expands((alg, h1) in arb_module(), (_, h2) in arb_module()) {
            let h2 = HighestWeight(h2.0.into_iter().take(alg.rank).map(|c| c.min(2)).collect::<Vec<_>>());
            let h2 = if h2.0.len() < alg.rank { HighestWeight(vec![0; alg.rank]) } else { h2 };
            prop_assume!(weyl_dim(&alg, &h1) * weyl_dim(&alg, &h2) <= 400);
            let parts = tensor_decompose(&alg, &h1, &h2).unwrap();
            let dims: u64 = parts.iter().map(|p| weyl_dim(&alg, p)).sum();
            prop_assert_eq!(dims, weyl_dim(&alg, &h1) * weyl_dim(&alg, &h2));
            let mut again = WeightMultiset::empty(alg.rank);
            for p in &parts {
                again = again.union(&irr_weights(&alg, p).unwrap());
            }
            let product = convolve(&irr_weights(&alg, &h1).unwrap(), &irr_weights(&alg, &h2).unwrap());
            prop_assert_eq!(again, product);
        }

        #[test]
        fn dual_module_has_negated_weights((alg, h) in arb_module()) {
            prop_assume!(weyl_dim(&alg, &h) <= 200);
            let d = dual_highest_weight(&alg, &h);
            prop_assert_eq!(irr_weights(&alg, &d).unwrap(), dual(&irr_weights(&alg, &h).unwrap()));
        }
    }
}
