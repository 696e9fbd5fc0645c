//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns a pass/fail flag with a one-line detail. With
//! `corrupt` set, every criterion runs against deliberately wrong input or a
//! wrong expected value; a sound criterion must then fail.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::density::{
    component_lambda, dh_thresholds, exact_agreement_density, orthogonality_audit, sample_density, ComponentModel,
};
use crate::finchar::{
    align_components, clifford_decompose, conjugation_automorphisms, fixed_sets_agree, kth_power_equal, pre_asai,
    random_lift_system, twist_search, ClassFunction, FiniteGroup, Group, Heisenberg, MatrixRep, Subgroup,
};
use crate::lattice::{
    is_direct_summand, pushout_torsion_free, relative_index, saturate, saturation_index, split_free_quotient,
    IntMatrix, Lattice, LatticeMap,
};
use crate::liealg::{adjoint_fibre, check_unique_factorization, irr_weights, AlgebraData, HighestWeight};
use crate::weights::{dual, ext_power, recover_from_sym, sym_power, WeightMultiset};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "symmetric-power recovery round trip"),
    (2, "unique tensor factorization sweeps"),
    (3, "adjoint fibre of the A2 standard module"),
    (4, "exterior-cube counterexample"),
    (5, "Heisenberg pair"),
    (6, "orthogonality audit"),
    (7, "density thresholds"),
    (8, "sampling soundness"),
    (9, "lattice suite"),
    (10, "twisted tensor lift independence"),
];

/// The module each criterion exercises.
pub fn criterion_module(id: u8) -> Option<&'static str> {
    Some(match id {
        1 | 4 => "weights",
        2 | 3 => "liealg",
        5 | 10 => "finchar",
        6..=8 => "density",
        9 => "lattice",
        _ => return None,
    })
}

/// Parses a comma-separated list of criterion numbers and module names.
pub fn parse_filter(text: &str) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let ids: Vec<u8> = match token.parse::<u8>() {
            Ok(id) if criterion_module(id).is_some() => vec![id],
            Ok(id) => return Err(format!("no criterion {id}")),
            Err(_) => CRITERIA.iter().map(|c| c.0).filter(|&id| criterion_module(id) == Some(token)).collect(),
        };
        if ids.is_empty() {
            return Err(format!("unknown criterion or module `{token}`"));
        }
        for id in ids {
            if !out.contains(&id) {
                out.push(id);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AcceptanceOptions {
    pub seed: u64,
    pub corrupt: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({}; {} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

type Outcome = Result<(bool, String), String>;

pub fn run_criterion(id: u8, opts: &AcceptanceOptions) -> Option<CriterionResult> {
    let &(_, name) = CRITERIA.iter().find(|(i, _)| *i == id)?;
    let start = Instant::now();
    let outcome = match id {
        1 => recovery_round_trip(opts),
        2 => unique_factorization(opts),
        3 => adjoint_fibre_a2(opts),
        4 => exterior_counterexample(opts),
        5 => heisenberg_pair(opts),
        6 => orthogonality(opts),
        7 => thresholds(opts),
        8 => sampling(opts),
        9 => lattice_suite(opts),
        10 => lift_independence(opts),
        _ => unreachable!(),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult { id, name, passed, detail, elapsed_ms: start.elapsed().as_millis() })
}

/// Runs the selected criteria (all when `filter` is `None`) in order.
pub fn run_all(filter: Option<&[u8]>, opts: &AcceptanceOptions) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter(|(id, _)| filter.is_none_or(|f| f.contains(id)))
        .filter_map(|&(id, _)| run_criterion(id, opts))
        .collect()
}

fn rng(opts: &AcceptanceOptions, salt: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(opts.seed);
    r.set_stream(salt);
    r
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn recovery_round_trip(opts: &AcceptanceOptions) -> Outcome {
    let mut r = rng(opts, 1);
    let mut failures = 0;
    for _ in 0..500 {
        let rank = r.gen_range(1..=3);
        let n = r.gen_range(1..=6);
        let k = r.gen_range(1..=4);
        let w = WeightMultiset::from_weights(rank, (0..n).map(|_| (0..rank).map(|_| r.gen_range(-4..=4)).collect()))
            .map_err(err)?;
        let back = recover_from_sym(&sym_power(&w, k), k, n).map_err(err)?;
        let expected = if opts.corrupt { w.translate(&vec![1; rank]) } else { w };
        if back != expected {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("{failures} of 500 round trips differ")))
}

fn unique_factorization(opts: &AcceptanceOptions) -> Outcome {
    if opts.corrupt {
        // The same collision detector applied to the adjoint map, which is not injective.
        let fibre = adjoint_fibre(&AlgebraData::a2(), &HighestWeight::new(vec![1, 0]).map_err(err)?, 1).map_err(err)?;
        let collisions = fibre.len() - 1;
        return Ok((collisions == 0, format!("{collisions} adjoint collisions")));
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for (alg, bound) in [(AlgebraData::a1(), 6), (AlgebraData::a2(), 2), (AlgebraData::c2(), 2)] {
        let rep = check_unique_factorization(&alg, bound, 2).map_err(err)?;
        total += rep.counterexamples.len();
        parts.push(format!("{} bound {}: {} tuples", alg.name, bound, rep.tuples_checked));
    }
    Ok((total == 0, format!("{}; {total} counterexamples", parts.join(", "))))
}

fn adjoint_fibre_a2(opts: &AcceptanceOptions) -> Outcome {
    let alg = AlgebraData::a2();
    let fibre = adjoint_fibre(&alg, &HighestWeight::new(vec![1, 0]).map_err(err)?, 3).map_err(err)?;
    let mut expected = vec![HighestWeight::new(vec![0, 1]).map_err(err)?];
    if !opts.corrupt {
        expected.push(HighestWeight::new(vec![1, 0]).map_err(err)?);
    }
    let shown: Vec<String> = fibre.iter().map(ToString::to_string).collect();
    Ok((fibre == expected, format!("fibre {{{}}}", shown.join(", "))))
}

fn exterior_counterexample(opts: &AcceptanceOptions) -> Outcome {
    let alg = AlgebraData::a2();
    let std = irr_weights(&alg, &HighestWeight::new(vec![1, 0]).map_err(err)?).map_err(err)?;
    let v = sym_power(&std, 2);
    let k = if opts.corrupt { 2 } else { 3 };
    let ext_equal = ext_power(&v, k).map_err(err)? == ext_power(&dual(&v), k).map_err(err)?;
    let self_dual = v == dual(&v);
    Ok((ext_equal && !self_dual, format!("ext^{k} equal: {ext_equal}, V self-dual: {self_dual}")))
}

fn heisenberg_pair(opts: &AcceptanceOptions) -> Outcome {
    let h = Heisenberg::new(3).map_err(err)?;
    let b = if opts.corrupt { 1 } else { 2 };
    let r1 = h.rep(1).map_err(err)?;
    let r2 = h.rep(b).map_err(err)?;
    let relations = h.relations_hold();
    let irreducible = r1.is_irreducible().map_err(err)? && r2.is_irreducible().map_err(err)?;
    let cubes = kth_power_equal(&r1.character(), &r2.character(), 3).map_err(err)?;
    let linear = h.group().linear_characters().len();
    let no_twist = twist_search(&r1, &r2).map_err(err)?.is_none();
    let t = h.t_subgroup();
    let d1 = clifford_decompose(&r1, &t).map_err(err)?;
    let d2 = clifford_decompose(&r2, &t).map_err(err)?;
    let mult_one = d1.multiplicity_free() && d2.multiplicity_free();
    let sets_agree = match align_components(&d1, &d2).map_err(err)? {
        Some(a) => fixed_sets_agree(&d1, &d2, &a).map_err(err)?.iter().all(|&x| x),
        None => false,
    };
    let passed = relations && irreducible && cubes && linear == 9 && no_twist && mult_one && sets_agree;
    Ok((
        passed,
        format!(
            "relations {relations}, irreducible {irreducible}, cubes equal {cubes}, \
             no twist among {linear} {no_twist}, multiplicity one {mult_one}, fixed sets agree {sets_agree}"
        ),
    ))
}

fn orthogonality(opts: &AcceptanceOptions) -> Outcome {
    let h = Heisenberg::new(3).map_err(err)?;
    let groups = vec![
        FiniteGroup::symmetric(3).map_err(err)?,
        FiniteGroup::dihedral(4).map_err(err)?,
        FiniteGroup::quaternion().map_err(err)?,
        h.group().clone(),
    ];
    let mut pairs = 0;
    let mut violations = 0;
    for g in &groups {
        let irr = g.irreducible_characters().map_err(err)?;
        let models = [Subgroup::trivial(g), Subgroup::derived(g)];
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                if (i == j && !opts.corrupt) || a.degree() != b.degree() {
                    continue;
                }
                for g0 in &models {
                    let model = ComponentModel::new(g0.clone(), a.clone(), b.clone()).map_err(err)?;
                    let r = orthogonality_audit(&model).map_err(err)?;
                    pairs += 1;
                    let lower = r.mean_sq_char_diff >= BigRational::from_integer(2.into());
                    let upper = r.upper_bound_holds;
                    if !(lower && upper && r.lambda <= r.agreement_density) {
                        violations += 1;
                    }
                }
            }
        }
    }
    Ok((violations == 0, format!("{pairs} model pairs, {violations} violations")))
}

fn thresholds(opts: &AcceptanceOptions) -> Outcome {
    let m = if opts.corrupt { 2 } else { 3 };
    let (dh1, dh2) = dh_thresholds(m, 2, 2).map_err(err)?;
    let target = BigRational::new(BigInt::from(17), BigInt::from(18));
    Ok((dh1 == target, format!("m = {m}: DH1 = {dh1}, DH2 = {dh2}")))
}

const MODEL_GROUPS: &[&str] = &[
    "cyclic:2", "cyclic:5", "cyclic:8", "cyclic:12", "dihedral:3", "dihedral:4", "dihedral:5", "dihedral:6",
    "sym:3", "sym:4", "alt:4", "quaternion", "heisenberg:3",
];

fn model_group(r: &mut ChaCha8Rng) -> Result<Group, String> {
    if r.gen_bool(0.25) {
        let pairs = [("cyclic:2", "sym:3"), ("cyclic:3", "sym:3"), ("cyclic:2", "quaternion"), ("cyclic:2", "dihedral:4"), ("cyclic:2", "sym:4"), ("cyclic:4", "cyclic:4")];
        let (a, b) = pairs[r.gen_range(0..pairs.len())];
        let a = FiniteGroup::preset(a).map_err(err)?;
        let b = FiniteGroup::preset(b).map_err(err)?;
        return FiniteGroup::direct_product(&a, &b).map_err(err);
    }
    FiniteGroup::preset(MODEL_GROUPS[r.gen_range(0..MODEL_GROUPS.len())]).map_err(err)
}

fn normal_closure(g: &Group, x: usize) -> Result<Subgroup, String> {
    let conjugates: Vec<usize> = (0..g.order()).map(|y| g.conj(y, x)).collect();
    Subgroup::generated(g, &conjugates).map_err(err)
}

fn random_normal(g: &Group, r: &mut ChaCha8Rng) -> Result<Subgroup, String> {
    Ok(match r.gen_range(0..5) {
        0 => Subgroup::trivial(g),
        1 => Subgroup::center(g),
        2 => Subgroup::derived(g),
        3 => Subgroup::whole(g),
        _ => normal_closure(g, r.gen_range(0..g.order()))?,
    })
}

/// A random character of degree `d`: a sum of `d` linear characters.
fn linear_sum(g: &Group, d: usize, r: &mut ChaCha8Rng) -> Result<ClassFunction, String> {
    let lin = g.linear_characters();
    let mut acc = lin.choose(r).expect("trivial character").to_class_function();
    for _ in 1..d {
        acc = acc.add(&lin.choose(r).expect("trivial character").to_class_function()).map_err(err)?;
    }
    Ok(acc)
}

pub fn random_component_model(r: &mut ChaCha8Rng) -> Result<ComponentModel, String> {
    let g = model_group(r)?;
    let g0 = random_normal(&g, r)?;
    let irr = g.irreducible_characters().map_err(err)?;
    let chi1 = irr.choose(r).expect("nonempty table").clone();
    let d: usize = chi1.degree().expect_rational().map_err(err)?.to_integer().try_into().map_err(err)?;
    let chi2 = match r.gen_range(0..3) {
        0 => {
            let same: Vec<&ClassFunction> = irr.iter().filter(|c| c.degree() == chi1.degree()).collect();
            (*same.choose(r).expect("chi1 itself")).clone()
        }
        1 => linear_sum(&g, d, r)?,
        _ => chi1.clone(),
    };
    ComponentModel::new(g0, chi1, chi2).map_err(err)
}

fn sampling(opts: &AcceptanceOptions) -> Outcome {
    let mut r = rng(opts, 8);
    let mut covered = 0;
    let mut ordered = 0;
    for i in 0..100u64 {
        let model = random_component_model(&mut r)?;
        let exact = exact_agreement_density(&model);
        let target = if opts.corrupt { exact.clone() + BigRational::new(1.into(), 20.into()) } else { exact.clone() };
        let est = sample_density(&model, 100_000, opts.seed.wrapping_mul(1000).wrapping_add(i)).map_err(err)?;
        if est.contains(&target) {
            covered += 1;
        }
        if component_lambda(&model) <= exact {
            ordered += 1;
        }
    }
    Ok((covered >= 93 && ordered == 100, format!("{covered}/100 intervals cover, lambda <= density in {ordered}/100")))
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data: Vec<Vec<BigInt>> = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(r.gen_range(-bound..=bound))).collect()).collect();
    IntMatrix::from_rows(cols, data).expect("rectangular")
}

fn random_unimodular(r: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut rows = IntMatrix::identity(n).to_rows();
    for _ in 0..3 * n {
        if n < 2 {
            break;
        }
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let c = BigInt::from(r.gen_range(-3..=3));
        let add: Vec<BigInt> = rows[j].iter().map(|x| x * &c).collect();
        for (a, b) in rows[i].iter_mut().zip(add) {
            *a += b;
        }
        if r.gen_bool(0.3) {
            rows.swap(i, j);
        }
    }
    IntMatrix::from_rows(n, rows).expect("square")
}

fn lattice_suite(opts: &AcceptanceOptions) -> Outcome {
    let mut r = rng(opts, 9);
    let mut bad_sat = 0;
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let k = r.gen_range(1..=n);
        let l = Lattice::span(n, random_matrix(&mut r, k, n, 50).to_rows()).map_err(err)?;
        let s = saturate(&l);
        let mut product = saturation_index(&l);
        if opts.corrupt {
            product += 1;
        }
        let ok = saturate(&s) == s
            && is_direct_summand(&s)
            && s.contains_lattice(&l)
            && s.rank() == l.rank()
            && relative_index(&s, &l) == Some(product);
        if !ok {
            bad_sat += 1;
        }
    }
    let mut bad_split = 0;
    for _ in 0..100 {
        let b = r.gen_range(1..=6);
        let a = r.gen_range(0..=b);
        let u = random_unimodular(&mut r, b);
        let incl = LatticeMap::from_matrix(if a == 0 { IntMatrix::zeros(b, 0) } else { u.select_cols(0..a) });
        let s = split_free_quotient(&incl).map_err(err)?;
        if !s.verify(&incl) {
            bad_split += 1;
        }
    }
    let mut bad_push = 0;
    for _ in 0..100 {
        let (x, m, c) = (r.gen_range(1..=3), r.gen_range(1..=4), r.gen_range(1..=4));
        let p = LatticeMap::from_matrix(random_matrix(&mut r, m, x, 5));
        let q = LatticeMap::from_matrix(random_matrix(&mut r, c, x, 5));
        let po = pushout_torsion_free(&p, &q).map_err(err)?;
        let commutes = po.from_first.compose(&p).map_err(err)? == po.from_second.compose(&q).map_err(err)?;
        let rank = m + c - p.matrix().vstack(&q.matrix().neg()).rank();
        if !(commutes && po.rank == rank) {
            bad_push += 1;
        }
    }
    Ok((
        bad_sat + bad_split + bad_push == 0,
        format!("failures: saturation {bad_sat}/200, splitting {bad_split}/100, pushout {bad_push}/100"),
    ))
}

const ASAI_GROUPS: &[&str] = &["sym:3", "sym:4", "alt:4", "dihedral:4", "dihedral:5", "dihedral:6", "quaternion", "heisenberg:3", "cyclic:6"];

fn lift_independence(opts: &AcceptanceOptions) -> Outcome {
    let mut r = rng(opts, 10);
    let mut configs = 0;
    let mut equal = 0;
    let mut attempts = 0;
    while configs < 20 {
        attempts += 1;
        if attempts > 2000 {
            return Err("could not build 20 configurations".into());
        }
        let g = FiniteGroup::preset(ASAI_GROUPS[r.gen_range(0..ASAI_GROUPS.len())]).map_err(err)?;
        let n = match r.gen_range(0..3) {
            0 => Subgroup::derived(&g),
            1 => Subgroup::center(&g),
            _ => normal_closure(&g, r.gen_range(0..g.order()))?,
        };
        if n.order() == 1 || n.index() == 1 {
            continue;
        }
        let irr = n.group().irreducible_characters().map_err(err)?;
        let i = r.gen_range(0..irr.len());
        let rho = MatrixRep::irreducible(n.group(), i).map_err(err)?;
        if rho.dim().pow(n.index() as u32) > 64 {
            continue;
        }
        let canonical = n.quotient().map_err(err)?.reps;
        let other = (0..50u64)
            .map(|s| random_lift_system(&n, r.gen::<u64>() ^ s))
            .find(|l| l.as_ref().map_or(true, |l| *l != canonical))
            .ok_or("no distinct lift system")?
            .map_err(err)?;
        let mut second = other.clone();
        if opts.corrupt {
            second[1] = second[0];
        }
        let a = pre_asai(&rho, &conjugation_automorphisms(&n, &canonical).map_err(err)?).map_err(err)?;
        let b = pre_asai(&rho, &conjugation_automorphisms(&n, &second).map_err(err)?).map_err(err)?;
        configs += 1;
        if a.character() == b.character() {
            equal += 1;
        }
    }
    Ok((equal == configs, format!("{equal}/{configs} configurations agree")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_selects() {
        let opts = AcceptanceOptions::default();
        let out = run_all(Some(&[3, 7]), &opts);
        assert_eq!(out.iter().map(|c| c.id).collect::<Vec<_>>(), vec![3, 7]);
        assert!(out.iter().all(|c| c.passed));
        assert!(run_criterion(11, &opts).is_none());
    }

    #[test]
    fn filters_by_module() {
        assert_eq!(parse_filter("weights").unwrap(), vec![1, 4]);
        assert_eq!(parse_filter("9, density").unwrap(), vec![6, 7, 8, 9]);
        assert!(parse_filter("nothing").is_err());
        assert!(parse_filter("12").is_err());
    }

    #[test]
    fn random_models_are_valid() {
        let mut r = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_component_model(&mut r).unwrap();
            assert!(m.group().order() <= 48);
        }
    }
}
