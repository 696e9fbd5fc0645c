//! Twisted tensor products `⊗_g ρ∘α_g` of a representation with its
//! conjugates under a family of automorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::character::ClassFunction;
use super::group::{Group, Subgroup};
use super::matrix::CycMatrix;
use super::rep::MatrixRep;
use super::{FincharError, Result};

/// A verified automorphism of a finite group, stored as an element map.
#[derive(Clone, Debug)]
pub struct Automorphism {
    group: Group,
    map: Vec<usize>,
}

impl Automorphism {
    /// Checks bijectivity and `α(xg) = α(x)α(g)` for every `x` and generator `g`.
    pub fn new(group: &Group, map: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if map.len() != n {
            return Err(FincharError::NotAutomorphism(format!("map has {} entries, group has {n}", map.len())));
        }
        let mut seen = vec![false; n];
        for &y in &map {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(FincharError::NotAutomorphism("map is not a bijection".into()));
            }
        }
        for x in 0..n {
            for &g in group.generators() {
                if map[group.mul(x, g)] != group.mul(map[x], map[g]) {
                    return Err(FincharError::NotAutomorphism(format!(
                        "fails at ({}, {})",
                        group.label(x),
                        group.label(g)
                    )));
                }
            }
        }
        Ok(Automorphism { group: group.clone(), map })
    }

    pub fn identity(group: &Group) -> Self {
        Automorphism { group: group.clone(), map: (0..group.order()).collect() }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

impl Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(&str, &str)> =
            (0..self.group.order()).map(|x| (self.group.label(x), self.group.label(self.map[x]))).collect();
        pairs.serialize(s)
    }
}

/// `σ ↦ g σ g⁻¹` on the normal subgroup, one automorphism per lift `g`.
pub fn conjugation_automorphisms(sub: &Subgroup, lifts: &[usize]) -> Result<Vec<Automorphism>> {
    if !sub.is_normal() {
        return Err(FincharError::NotNormal);
    }
    let p = sub.parent();
    lifts
        .iter()
        .map(|&g| {
            let map = (0..sub.order())
                .map(|i| sub.locate(p.conj(g, sub.embed(i))).expect("normal subgroup"))
                .collect();
            Automorphism::new(sub.group(), map)
        })
        .collect()
}

/// Coset representatives `t·n` with `n` drawn at random from the subgroup,
/// in the order of the quotient. Distinct from the canonical lifts whenever
/// the subgroup is nontrivial and a lift other than the identity is drawn.
pub fn random_lift_system(sub: &Subgroup, seed: u64) -> Result<Vec<usize>> {
    let quotient = sub.quotient()?;
    let p = sub.parent();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(quotient.reps.iter().map(|&t| p.mul(t, sub.embed(rng.gen_range(0..sub.order())))).collect())
}

/// `σ ↦ ⊗_g ρ(α_g(σ))`, with the tensor factors in the order given.
pub fn pre_asai(rho: &MatrixRep, autos: &[Automorphism]) -> Result<MatrixRep> {
    let n = rho.group();
    if autos.is_empty() {
        return Err(FincharError::BadParameters("at least one automorphism is required".into()));
    }
    if autos.iter().any(|a| !a.group().same_as(n)) {
        return Err(FincharError::GroupMismatch);
    }
    let images = (0..n.order())
        .map(|s| {
            autos[1..].iter().fold(rho.image(autos[0].apply(s)).clone(), |acc: CycMatrix, a| {
                acc.kron(rho.image(a.apply(s)))
            })
        })
        .collect();
    let rep = MatrixRep::from_all_images(n, images)?;
    if rep.character() != asai_character_formula(&rho.character(), autos)? {
        return Err(FincharError::Inconsistent("twisted tensor character disagrees with the product formula".into()));
    }
    Ok(rep)
}

/// `σ ↦ Π_g χ(α_g(σ))`.
pub fn asai_character_formula(chi: &ClassFunction, autos: &[Automorphism]) -> Result<ClassFunction> {
    let n = chi.group();
    if autos.iter().any(|a| !a.group().same_as(n)) {
        return Err(FincharError::GroupMismatch);
    }
    Ok(ClassFunction::from_element_fn(n, |s| {
        autos.iter().fold(super::cyclotomic::Cyclotomic::one(), |acc, a| &acc * chi.value(a.apply(s)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finchar::{FiniteGroup, Heisenberg};

    #[test]
    fn single_automorphism_is_the_rep() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let std = MatrixRep::standard(&g).unwrap();
        let out = pre_asai(&std, &[Automorphism::identity(&g)]).unwrap();
        assert_eq!(out.images(), std.images());
    }

    #[test]
    fn bad_maps_are_rejected() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert!(matches!(Automorphism::new(&g, vec![0, 0, 0, 0]), Err(FincharError::NotAutomorphism(_))));
        // x ↦ x + 1 is a bijection but not a homomorphism.
        let shift = (0..4).map(|x| g.mul(x, g.element_by_label("g").unwrap())).collect();
        assert!(matches!(Automorphism::new(&g, shift), Err(FincharError::NotAutomorphism(_))));
        let inv = (0..4).map(|x| g.inv(x)).collect();
        assert!(Automorphism::new(&g, inv).is_ok());
    }

    #[test]
    fn linear_character_gives_product_character() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a3 = Subgroup::derived(&s3);
        let reps = a3.coset_reps();
        let autos = conjugation_automorphisms(&a3, &reps).unwrap();
        for chi in a3.group().linear_characters() {
            let r = MatrixRep::linear(&chi);
            let out = pre_asai(&r, &autos).unwrap();
            assert_eq!(out.dim(), 1);
            // χ·χ^flip = χ·χ̄ = 1.
            assert!(out.images().iter().all(CycMatrix::is_identity));
        }
    }

    #[test]
    fn heisenberg_lift_independence() {
        let h = Heisenberg::new(3).unwrap();
        let t = h.t_subgroup();
        let psi = MatrixRep::linear(&h.psi(&t, 1).unwrap());
        let canonical = conjugation_automorphisms(&t, &t.coset_reps()).unwrap();
        let a = pre_asai(&psi, &canonical).unwrap();
        assert_eq!(a.dim(), 1);
        for seed in 0..5 {
            let lifts = random_lift_system(&t, seed).unwrap();
            let b = pre_asai(&psi, &conjugation_automorphisms(&t, &lifts).unwrap()).unwrap();
            assert_eq!(a.character(), b.character());
        }
        let std = MatrixRep::standard(&FiniteGroup::symmetric(4).unwrap()).unwrap();
        let a4 = Subgroup::derived(std.group());
        let r = std.restrict(&a4).unwrap();
        let one = pre_asai(&r, &conjugation_automorphisms(&a4, &a4.coset_reps()).unwrap()).unwrap();
        let two = pre_asai(&r, &conjugation_automorphisms(&a4, &random_lift_system(&a4, 9).unwrap()).unwrap()).unwrap();
        assert_eq!(one.dim(), 9);
        assert_eq!(one.character(), two.character());
    }
}
