//! Finite models of the component structure of a pair of representations:
//! the component density `λ`, the agreement fraction, Monte Carlo estimates
//! of it, the density thresholds and the mean-square audit.
//!
//! A model is a finite group `G` standing in for the image, a normal subgroup
//! `G⁰` standing in for its identity component, and two characters of common
//! degree `m`. A coset `φG⁰` counts towards `λ` when the characters agree on
//! all of it; the agreement fraction counts single elements instead, so
//! `λ` never exceeds it.
//!
//! Sampling draws elements uniformly, which weights each conjugacy class by
//! its size. Draws are split into fixed batches; batch `i` uses a ChaCha8
//! generator seeded from the master seed with stream `i`, so the counts do
//! not depend on how batches are scheduled across threads.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::finchar::{inner_product, ClassFunction, Cyclotomic, FincharError, Group, Subgroup};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

const BATCH: u64 = 8192;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Finchar(#[from] FincharError),
}

impl DensityError {
    pub fn name(&self) -> &'static str {
        match self {
            DensityError::InvalidModel(_) => "InvalidModel",
            DensityError::BadParameters(_) => "BadParameters",
            DensityError::Finchar(e) => e.name(),
        }
    }
}

pub type Result<T> = std::result::Result<T, DensityError>;

#[derive(Clone, Debug)]
pub struct ComponentModel {
    group: Group,
    g0: Subgroup,
    chi1: ClassFunction,
    chi2: ClassFunction,
    m: u64,
    /// `agree[x]` is whether the characters agree at element `x`.
    agree: Vec<bool>,
}

impl ComponentModel {
    pub fn new(g0: Subgroup, chi1: ClassFunction, chi2: ClassFunction) -> Result<Self> {
        let group = g0.parent().clone();
        if !chi1.group().same_as(&group) || !chi2.group().same_as(&group) {
            return Err(DensityError::InvalidModel("characters live on another group".into()));
        }
        if !g0.is_normal() {
            return Err(DensityError::InvalidModel("identity-component subgroup is not normal".into()));
        }
        let degree = |c: &ClassFunction| -> Result<u64> {
            let d = c.degree().to_rational().filter(|q| q.is_integer() && *q > BigRational::zero());
            d.and_then(|q| u64::try_from(q.to_integer()).ok())
                .ok_or_else(|| DensityError::InvalidModel(format!("degree {} is not a positive integer", c.degree())))
        };
        let m = degree(&chi1)?;
        if degree(&chi2)? != m {
            return Err(DensityError::InvalidModel("characters have different degrees".into()));
        }
        let agree = (0..group.order()).map(|x| chi1.value(x) == chi2.value(x)).collect();
        Ok(ComponentModel { group, g0, chi1, chi2, m, agree })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn g0(&self) -> &Subgroup {
        &self.g0
    }

    pub fn chi1(&self) -> &ClassFunction {
        &self.chi1
    }

    pub fn chi2(&self) -> &ClassFunction {
        &self.chi2
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Number of components, `[G : G⁰]`.
    pub fn components(&self) -> usize {
        self.g0.index()
    }

    pub fn agrees_at(&self, x: usize) -> bool {
        self.agree[x]
    }
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Fraction of cosets of `G⁰` on which the characters agree identically.
pub fn component_lambda(model: &ComponentModel) -> BigRational {
    let cosets = model.g0.left_cosets();
    let inside = cosets.iter().filter(|c| c.iter().all(|&x| model.agree[x])).count();
    ratio(inside, cosets.len())
}

/// Fraction of elements at which the characters agree.
pub fn exact_agreement_density(model: &ComponentModel) -> BigRational {
    ratio(model.agree.iter().filter(|&&a| a).count(), model.agree.len())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleEstimate {
    pub samples: u64,
    pub hits: u64,
    #[serde(serialize_with = "ser_rational")]
    pub estimate: BigRational,
    /// Wilson score interval with continuity correction.
    pub interval: (f64, f64),
}

impl SampleEstimate {
    pub fn contains(&self, p: &BigRational) -> bool {
        let p = rational_to_f64(p);
        self.interval.0 <= p && p <= self.interval.1
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Wilson score interval with continuity correction for `hits` out of `n`.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> (f64, f64) {
    assert!(n > 0 && hits <= n);
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2 = z * z;
    let denom = 2.0 * (nf + z2);
    let lower = if hits == 0 {
        0.0
    } else {
        let r = (z2 - 2.0 - 1.0 / nf + 4.0 * p * (nf * (1.0 - p) + 1.0)).max(0.0);
        ((2.0 * nf * p + z2 - 1.0 - z * r.sqrt()) / denom).max(0.0)
    };
    let upper = if hits == n {
        1.0
    } else {
        let r = (z2 + 2.0 - 1.0 / nf + 4.0 * p * (nf * (1.0 - p) - 1.0)).max(0.0);
        ((2.0 * nf * p + z2 + 1.0 + z * r.sqrt()) / denom).min(1.0)
    };
    (lower, upper)
}

/// Uniform draws from `G`, counting those where the characters agree.
pub fn sample_density(model: &ComponentModel, samples: u64, seed: u64) -> Result<SampleEstimate> {
    if samples == 0 {
        return Err(DensityError::BadParameters("at least one sample is required".into()));
    }
    let order = model.group.order();
    let batches = samples.div_ceil(BATCH);
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let len = BATCH.min(samples - i * BATCH);
            (0..len).filter(|_| model.agree[rng.gen_range(0..order)]).count() as u64
        })
        .sum();
    Ok(SampleEstimate {
        samples,
        hits,
        estimate: BigRational::new(BigInt::from(hits), BigInt::from(samples)),
        interval: wilson_interval(hits, samples, Z_95),
    })
}

/// `(1 − 1/(2m²), min(1 − 1/c1, 1 − 1/c2))`.
pub fn dh_thresholds(m: u64, c1: u64, c2: u64) -> Result<(BigRational, BigRational)> {
    if m == 0 || c1 == 0 || c2 == 0 {
        return Err(DensityError::BadParameters("m, c1 and c2 must be positive".into()));
    }
    let one = BigRational::one();
    let dh1 = &one - BigRational::new(BigInt::one(), BigInt::from(2) * BigInt::from(m) * BigInt::from(m));
    let c = c1.min(c2);
    let dh2 = &one - BigRational::new(BigInt::one(), BigInt::from(c));
    Ok((dh1, dh2))
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    pub m: u64,
    pub components: usize,
    pub lambda: BigRational,
    pub agreement_density: BigRational,
    pub empirical: Option<SampleEstimate>,
    pub dh1: BigRational,
    pub dh2: BigRational,
    pub norm1: BigRational,
    pub norm2: BigRational,
    pub inner12: Cyclotomic,
    pub mean_sq_char_diff: BigRational,
    /// `(1 − λ)·4m²`.
    pub upper_bound: BigRational,
    pub upper_bound_holds: bool,
    /// Both characters irreducible and orthogonal.
    pub lower_bound_applies: bool,
    /// `mean ≥ 2`, or `None` when the hypothesis fails.
    pub lower_bound_holds: Option<bool>,
}

impl DensityReport {
    /// All asserted bounds hold, and `λ` does not exceed the agreement fraction.
    pub fn passes(&self) -> bool {
        self.upper_bound_holds && self.lower_bound_holds != Some(false) && self.lambda <= self.agreement_density
    }
}

impl Serialize for DensityReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let q = |x: &BigRational| x.to_string();
        let mut st = s.serialize_struct("DensityReport", 15)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("components", &self.components)?;
        st.serialize_field("lambda", &q(&self.lambda))?;
        st.serialize_field("agreement_density", &q(&self.agreement_density))?;
        st.serialize_field("empirical", &self.empirical)?;
        st.serialize_field("dh1", &q(&self.dh1))?;
        st.serialize_field("dh2", &q(&self.dh2))?;
        st.serialize_field("norm1", &q(&self.norm1))?;
        st.serialize_field("norm2", &q(&self.norm2))?;
        st.serialize_field("inner12", &self.inner12.to_string())?;
        st.serialize_field("mean_sq_char_diff", &q(&self.mean_sq_char_diff))?;
        st.serialize_field("upper_bound", &q(&self.upper_bound))?;
        st.serialize_field("upper_bound_holds", &self.upper_bound_holds)?;
        st.serialize_field("lower_bound_applies", &self.lower_bound_applies)?;
        st.serialize_field("lower_bound_holds", &self.lower_bound_holds)?;
        st.end()
    }
}

/// `mean_G |χ1 − χ2|²`, computed element by element and again from inner
/// products; the two must agree.
pub fn mean_sq_char_diff(model: &ComponentModel) -> Result<BigRational> {
    let diff = model.chi1.sub(&model.chi2)?;
    let g = &model.group;
    let mut acc = Cyclotomic::zero();
    for x in 0..g.order() {
        let d = diff.value(x);
        acc += &(d * &d.conj());
    }
    let direct = acc.expect_rational().map_err(DensityError::from)? / BigRational::from_integer(g.order().into());
    let n1 = inner_product(&model.chi1, &model.chi1)?;
    let n2 = inner_product(&model.chi2, &model.chi2)?;
    let c = model.chi1.inner(&model.chi2)?;
    let re2 = (&c + &c.conj()).expect_rational().map_err(DensityError::from)?;
    let via_inner = n1 + n2 - re2;
    if direct != via_inner {
        return Err(DensityError::Finchar(FincharError::Inconsistent(format!(
            "mean square difference {direct} disagrees with inner products {via_inner}"
        ))));
    }
    Ok(direct)
}

/// The full report without sampling; both characters are taken to have
/// `[G : G⁰]` components.
pub fn orthogonality_audit(model: &ComponentModel) -> Result<DensityReport> {
    let c = model.components() as u64;
    build_report(model, c, c, None)
}

/// The full report with explicit component counts and an optional sample.
pub fn density_report(model: &ComponentModel, c1: u64, c2: u64, sample: Option<(u64, u64)>) -> Result<DensityReport> {
    let empirical = sample.map(|(n, seed)| sample_density(model, n, seed)).transpose()?;
    build_report(model, c1, c2, empirical)
}

fn build_report(model: &ComponentModel, c1: u64, c2: u64, empirical: Option<SampleEstimate>) -> Result<DensityReport> {
    let lambda = component_lambda(model);
    let agreement_density = exact_agreement_density(model);
    let (dh1, dh2) = dh_thresholds(model.m, c1, c2)?;
    let mean = mean_sq_char_diff(model)?;
    let norm1 = inner_product(&model.chi1, &model.chi1)?;
    let norm2 = inner_product(&model.chi2, &model.chi2)?;
    let inner12 = model.chi1.inner(&model.chi2)?;
    let m2 = BigRational::from_integer(BigInt::from(4) * BigInt::from(model.m) * BigInt::from(model.m));
    let upper_bound = (BigRational::one() - &lambda) * m2;
    let lower_bound_applies = norm1.is_one() && norm2.is_one() && inner12.is_zero();
    let two = BigRational::from_integer(2.into());
    Ok(DensityReport {
        m: model.m,
        components: model.components(),
        upper_bound_holds: mean <= upper_bound,
        lower_bound_holds: lower_bound_applies.then(|| mean >= two),
        lambda,
        agreement_density,
        empirical,
        dh1,
        dh2,
        norm1,
        norm2,
        inner12,
        mean_sq_char_diff: mean,
        upper_bound,
        lower_bound_applies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finchar::{FiniteGroup, Heisenberg, MatrixRep};
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn s3_model() -> ComponentModel {
        let g = FiniteGroup::symmetric(3).unwrap();
        let std = MatrixRep::standard(&g).unwrap().character();
        let other = MatrixRep::trivial(&g).direct_sum(&MatrixRep::sign(&g).unwrap()).unwrap().character();
        ComponentModel::new(Subgroup::derived(&g), std, other).unwrap()
    }

    #[test]
    fn s3_model_values() {
        let m = s3_model();
        assert_eq!(component_lambda(&m), q(1, 2));
        assert_eq!(exact_agreement_density(&m), q(2, 3));
        let r = orthogonality_audit(&m).unwrap();
        assert_eq!(r.mean_sq_char_diff, q(3, 1));
        assert_eq!(r.upper_bound, q(8, 1));
        assert!(!r.lower_bound_applies);
        assert!(r.passes());
    }

    #[test]
    fn equal_characters() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let chi = MatrixRep::irreducible(&g, 4).unwrap().character();
        let m = ComponentModel::new(Subgroup::trivial(&g), chi.clone(), chi).unwrap();
        assert!(component_lambda(&m).is_one());
        assert!(exact_agreement_density(&m).is_one());
        let r = orthogonality_audit(&m).unwrap();
        assert!(r.mean_sq_char_diff.is_zero());
        assert_eq!(r.lower_bound_holds, None);
        let s = sample_density(&m, 1000, 3).unwrap();
        assert_eq!(s.hits, 1000);
        assert_eq!(s.interval.1, 1.0);
    }

    #[test]
    fn whole_group_as_identity_component() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let m = ComponentModel::new(
            Subgroup::whole(&g),
            MatrixRep::trivial(&g).character(),
            MatrixRep::sign(&g).unwrap().character(),
        )
        .unwrap();
        assert!(component_lambda(&m).is_zero());
        let r = orthogonality_audit(&m).unwrap();
        assert_eq!(r.lower_bound_holds, Some(true));
        assert_eq!(r.mean_sq_char_diff, q(2, 1));
    }

    #[test]
    fn invalid_models() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let swap = Subgroup::generated(&g, &[g.element_by_label("(1 2)").unwrap()]).unwrap();
        let t = MatrixRep::trivial(&g).character();
        assert!(matches!(ComponentModel::new(swap, t.clone(), t.clone()), Err(DensityError::InvalidModel(_))));
        let std = MatrixRep::standard(&g).unwrap().character();
        assert!(ComponentModel::new(Subgroup::trivial(&g), t, std).is_err());
    }

    #[test]
    fn heisenberg_center_model() {
        let h = Heisenberg::new(3).unwrap();
        let m = ComponentModel::new(
            h.center(),
            h.rep(1).unwrap().character(),
            h.rep(2).unwrap().character(),
        )
        .unwrap();
        // The characters vanish off the centre and agree only at the identity on it.
        assert_eq!(exact_agreement_density(&m), q(25, 27));
        assert!(component_lambda(&m) == q(8, 9));
        let r = orthogonality_audit(&m).unwrap();
        assert_eq!(r.mean_sq_char_diff, q(2, 1));
        assert_eq!(r.lower_bound_holds, Some(true));
        assert!(r.passes());
    }

    #[test]
    fn thresholds() {
        assert_eq!(dh_thresholds(2, 1, 1).unwrap().0, q(7, 8));
        assert_eq!(dh_thresholds(3, 2, 2).unwrap(), (q(17, 18), q(1, 2)));
        assert!(dh_thresholds(2, 1, 5).unwrap().1.is_zero());
        assert!(dh_thresholds(0, 1, 1).is_err());
    }

    #[test]
    fn sampling_is_reproducible_and_thread_independent() {
        let m = s3_model();
        let a = sample_density(&m, 100_000, 42).unwrap();
        let b = sample_density(&m, 100_000, 42).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| sample_density(&m, 100_000, 42).unwrap());
        assert_eq!(a, c);
        assert!(a.contains(&q(2, 3)));
        let one = sample_density(&m, 1, 7).unwrap();
        assert!(one.hits <= 1);
        assert!(sample_density(&m, 0, 7).is_err());
    }

    #[test]
    fn wilson_interval_edges() {
        let (lo, hi) = wilson_interval(0, 10, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 1.0);
        let (lo, hi) = wilson_interval(50, 100, Z_95);
        assert!(lo < 0.5 && hi > 0.5);
        assert!((lo + hi - 1.0).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn lambda_below_agreement_and_bounds_hold(
            preset in prop::sample::select(vec!["sym:3", "dihedral:4", "quaternion", "alt:4", "cyclic:6"]),
            a in 0usize..16, b in 0usize..16, derived in any::<bool>(),
        ) {
            let g = FiniteGroup::preset(preset).unwrap();
            let k = g.num_classes();
            let irr = g.irreducible_characters().unwrap();
            let (i, j) = (a % k, b % k);
            prop_assume!(irr[i].degree() == irr[j].degree());
            let g0 = if derived { Subgroup::derived(&g) } else { Subgroup::trivial(&g) };
            let m = ComponentModel::new(g0, irr[i].clone(), irr[j].clone()).unwrap();
            prop_assert!(component_lambda(&m) <= exact_agreement_density(&m));
            let r = orthogonality_audit(&m).unwrap();
            prop_assert!(r.passes());
            prop_assert_eq!(r.lower_bound_applies, i != j);
        }

        #[test]
        fn thresholds_are_monotone(m in 1u64..20, c1 in 1u64..20, c2 in 1u64..20) {
            let (a1, a2) = dh_thresholds(m, c1, c2).unwrap();
            let (b1, _) = dh_thresholds(m + 1, c1, c2).unwrap();
            let (_, b2) = dh_thresholds(m, c1 + 1, c2 + 1).unwrap();
            prop_assert!(b1 >= a1);
            prop_assert!(b2 >= a2);
            let (_, c2b) = dh_thresholds(m, c1 + 1, c2).unwrap();
            prop_assert!(c2b >= a2);
        }
    }
}
