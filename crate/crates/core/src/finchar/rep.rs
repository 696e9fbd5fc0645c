//! Matrix representations with every element image stored.

use std::sync::Arc;

use super::character::{ClassFunction, IrreducibleSource, LinearCharacter};
use super::cyclotomic::Cyclotomic;
use super::group::{permutation_sign, Group, Subgroup};
use super::matrix::CycMatrix;
use super::{FincharError, Result};

/// A homomorphism from a finite group to `GL_n` over a cyclotomic field.
///
/// The image of every element is computed once at construction and the
/// homomorphism law `ρ(xg) = ρ(x)ρ(g)` is checked for every element `x` and
/// every generator `g`; afterwards the value is immutable and cheap to clone.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    group: Group,
    dim: usize,
    images: Arc<Vec<CycMatrix>>,
}

impl MatrixRep {
    /// Extends generator images to the whole group.
    pub fn from_generator_images(group: &Group, gens: &[(usize, CycMatrix)]) -> Result<Self> {
        let dim = gens.first().map(|(_, m)| m.dim()).unwrap_or(1);
        if let Some((_, m)) = gens.iter().find(|(_, m)| m.dim() != dim) {
            return Err(FincharError::DimMismatch { left: dim, right: m.dim() });
        }
        let n = group.order();
        let mut images: Vec<Option<CycMatrix>> = vec![None; n];
        images[0] = Some(CycMatrix::identity(dim));
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for (g, mg) in gens {
                let y = group.mul(x, *g);
                if images[y].is_none() {
                    images[y] = Some(images[x].as_ref().expect("visited").mul(mg));
                    queue.push(y);
                }
            }
            k += 1;
        }
        if queue.len() != n {
            return Err(FincharError::NotAHomomorphism("generator images do not reach every element".into()));
        }
        let images: Vec<CycMatrix> = images.into_iter().map(|m| m.expect("all reached")).collect();
        Self::from_all_images(group, images)
    }

    /// Wraps a complete image table after checking the homomorphism law.
    pub fn from_all_images(group: &Group, images: Vec<CycMatrix>) -> Result<Self> {
        if images.len() != group.order() {
            return Err(FincharError::BadParameters(format!("{} images for {} elements", images.len(), group.order())));
        }
        let dim = images[0].dim();
        if let Some(m) = images.iter().find(|m| m.dim() != dim) {
            return Err(FincharError::DimMismatch { left: dim, right: m.dim() });
        }
        if !images[0].is_identity() {
            return Err(FincharError::NotAHomomorphism("identity is not sent to the identity matrix".into()));
        }
        for x in 0..group.order() {
            for &g in group.generators() {
                if images[group.mul(x, g)] != images[x].mul(&images[g]) {
                    return Err(FincharError::NotAHomomorphism(format!(
                        "rho({}·{}) differs from rho({})·rho({})",
                        group.label(x),
                        group.label(g),
                        group.label(x),
                        group.label(g)
                    )));
                }
            }
        }
        Ok(MatrixRep { group: group.clone(), dim, images: Arc::new(images) })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, x: usize) -> &CycMatrix {
        &self.images[x]
    }

    pub fn images(&self) -> &[CycMatrix] {
        &self.images
    }

    /// Checks `ρ(xy) = ρ(x)ρ(y)` for every pair of elements.
    pub fn verify_all_pairs(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|x| (0..g.order()).all(|y| self.images[g.mul(x, y)] == self.images[x].mul(&self.images[y])))
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_element_fn(&self.group, |x| self.images[x].trace())
    }

    pub fn trivial(group: &Group) -> Self {
        Self::from_all_images(group, vec![CycMatrix::identity(1); group.order()]).expect("trivial representation")
    }

    pub fn linear(chi: &LinearCharacter) -> Self {
        let g = chi.group();
        let images = (0..g.order()).map(|x| CycMatrix::diagonal(&[chi.value(x)])).collect();
        Self::from_all_images(g, images).expect("linear characters are homomorphisms")
    }

    /// Left regular representation.
    pub fn regular(group: &Group) -> Self {
        let images = (0..group.order())
            .map(|x| {
                let perm: Vec<usize> = (0..group.order()).map(|y| group.mul(x, y)).collect();
                CycMatrix::permutation(&perm)
            })
            .collect();
        Self::from_all_images(group, images).expect("regular representation")
    }

    /// The defining permutation representation of a permutation group.
    pub fn permutation(group: &Group) -> Result<Self> {
        if group.permutation_degree().is_none() {
            return Err(FincharError::BadParameters(format!("{} is not a permutation group", group.name())));
        }
        let images = (0..group.order()).map(|x| CycMatrix::permutation(group.permutation(x).expect("perm"))).collect();
        Self::from_all_images(group, images)
    }

    pub fn sign(group: &Group) -> Result<Self> {
        if group.permutation_degree().is_none() {
            return Err(FincharError::BadParameters(format!("{} is not a permutation group", group.name())));
        }
        let images = (0..group.order())
            .map(|x| CycMatrix::diagonal(&[Cyclotomic::from_i64(permutation_sign(group.permutation(x).expect("perm")))]))
            .collect();
        Self::from_all_images(group, images)
    }

    /// The permutation representation minus the trivial summand, in the
    /// basis `e_i - e_n`.
    pub fn standard(group: &Group) -> Result<Self> {
        let n = group
            .permutation_degree()
            .ok_or_else(|| FincharError::BadParameters(format!("{} is not a permutation group", group.name())))?;
        if n < 2 {
            return Err(FincharError::BadParameters("standard representation needs degree >= 2".into()));
        }
        let images = (0..group.order())
            .map(|x| standard_matrix(group.permutation(x).expect("perm")))
            .collect();
        Self::from_all_images(group, images)
    }

    /// Irreducible number `i` of the character table, realised by inducing
    /// a linear character.
    pub fn irreducible(group: &Group, i: usize) -> Result<Self> {
        let records = group.irreducible_records()?;
        let record = records
            .get(i)
            .ok_or_else(|| FincharError::BadParameters(format!("irreducible index {i} out of range ({})", records.len())))?;
        match &record.source {
            IrreducibleSource::Linear(l) => Ok(Self::linear(&group.linear_characters()[*l])),
            IrreducibleSource::Induced { generators, linear } => {
                let sub = Subgroup::generated(group, generators)?;
                let psi = &sub.group().linear_characters()[*linear];
                induce(&sub, &Self::linear(psi))
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(FincharError::GroupMismatch)
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let images = self.images.iter().zip(other.images.iter()).map(|(a, b)| a.direct_sum(b)).collect();
        Self::from_all_images(&self.group, images)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let images = self.images.iter().zip(other.images.iter()).map(|(a, b)| a.kron(b)).collect();
        Self::from_all_images(&self.group, images)
    }

    pub fn twist(&self, eta: &LinearCharacter) -> Result<Self> {
        if !self.group.same_as(eta.group()) {
            return Err(FincharError::GroupMismatch);
        }
        let images = self.images.iter().enumerate().map(|(x, m)| m.scale(&eta.value(x))).collect();
        Self::from_all_images(&self.group, images)
    }

    /// `P ρ P⁻¹` for a diagonal `P` whose entries are roots of unity.
    pub fn conjugate_by_diagonal(&self, diag: &[Cyclotomic]) -> Result<Self> {
        if diag.len() != self.dim {
            return Err(FincharError::DimMismatch { left: self.dim, right: diag.len() });
        }
        if diag.iter().any(|d| !d.norm_sq().is_one() || d.root_of_unity_exponent().is_none()) {
            return Err(FincharError::BadParameters("diagonal entries must be roots of unity".into()));
        }
        let p = CycMatrix::diagonal(diag);
        let p_inv = CycMatrix::diagonal(&diag.iter().map(Cyclotomic::conj).collect::<Vec<_>>());
        let images = self.images.iter().map(|m| p.mul(m).mul(&p_inv)).collect();
        Self::from_all_images(&self.group, images)
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        if !self.group.same_as(sub.parent()) {
            return Err(FincharError::GroupMismatch);
        }
        let images = (0..sub.order()).map(|i| self.images[sub.embed(i)].clone()).collect();
        Self::from_all_images(sub.group(), images)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        self.character().is_irreducible()
    }
}

fn standard_matrix(p: &[usize]) -> CycMatrix {
    let n = p.len();
    let d = n - 1;
    let mut m = CycMatrix::zeros(d);
    // Coordinates of a vector with zero coordinate sum in the basis
    // f_j = e_j - e_n are its first n-1 coordinates.
    for j in 0..d {
        let mut v = vec![0i64; n];
        v[p[j]] += 1;
        v[p[n - 1]] -= 1;
        for (i, &c) in v.iter().take(d).enumerate() {
            if c != 0 {
                m.set(i, j, Cyclotomic::from_i64(c));
            }
        }
    }
    m
}

/// `Ind_H^G r` with blocks `r(t_i⁻¹ g t_j)` over the left coset representatives.
pub fn induce(sub: &Subgroup, r: &MatrixRep) -> Result<MatrixRep> {
    if !sub.group().same_as(r.group()) {
        return Err(FincharError::GroupMismatch);
    }
    let g = sub.parent();
    let reps = sub.coset_reps();
    let k = reps.len();
    let d = r.dim();
    let images = (0..g.order())
        .map(|x| {
            let mut m = CycMatrix::zeros(k * d);
            for (i, &ti) in reps.iter().enumerate() {
                for (j, &tj) in reps.iter().enumerate() {
                    let y = g.mul(g.mul(g.inv(ti), x), tj);
                    if let Some(h) = sub.locate(y) {
                        let block = r.image(h);
                        for a in 0..d {
                            for b in 0..d {
                                m.set(i * d + a, j * d + b, block.get(a, b).clone());
                            }
                        }
                    }
                }
            }
            m
        })
        .collect();
    let rep = MatrixRep::from_all_images(g, images)?;
    let by_formula = ClassFunction::induce(sub, &r.character())?;
    if rep.character() != by_formula {
        return Err(FincharError::Inconsistent("induced character disagrees with the induction formula".into()));
    }
    Ok(rep)
}

/// First linear character `η` with `ρ2 ≅ ρ1 ⊗ η`, decided by characters.
pub fn twist_search(rho1: &MatrixRep, rho2: &MatrixRep) -> Result<Option<LinearCharacter>> {
    rho1.check_same(rho2)?;
    if rho1.dim() != rho2.dim() {
        return Err(FincharError::DimMismatch { left: rho1.dim(), right: rho2.dim() });
    }
    super::character::twist_search_characters(&rho1.character(), &rho2.character())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finchar::FiniteGroup;

    #[test]
    fn regular_character_of_c3() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let chi = MatrixRep::regular(&g).character();
        assert_eq!(chi.values(), &[Cyclotomic::from_i64(3), Cyclotomic::zero(), Cyclotomic::zero()]);
        assert_eq!(MatrixRep::trivial(&g).character(), ClassFunction::trivial(&g));
    }

    #[test]
    fn s3_standard_is_irreducible() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let std = MatrixRep::standard(&g).unwrap();
        assert!(std.verify_all_pairs());
        assert!(std.is_irreducible().unwrap());
        let perm = MatrixRep::permutation(&g).unwrap();
        let sum = std.direct_sum(&MatrixRep::trivial(&g)).unwrap();
        assert_eq!(sum.character(), perm.character());
        let sign = MatrixRep::sign(&g).unwrap();
        assert_eq!(std.tensor(&sign).unwrap().character(), std.character());
    }

    #[test]
    fn irreducible_models_match_table() {
        for spec in ["sym:3", "sym:4", "dihedral:4", "quaternion", "heisenberg:3", "alt:4"] {
            let g = FiniteGroup::preset(spec).unwrap();
            let table = g.irreducible_characters().unwrap();
            for (i, chi) in table.iter().enumerate() {
                let rho = MatrixRep::irreducible(&g, i).unwrap();
                assert_eq!(&rho.character(), chi, "{spec} #{i}");
            }
        }
    }

    #[test]
    fn induction_examples() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a3 = Subgroup::derived(&g);
        let ind = induce(&a3, &MatrixRep::trivial(a3.group())).unwrap();
        let expected = MatrixRep::trivial(&g).direct_sum(&MatrixRep::sign(&g).unwrap()).unwrap();
        assert_eq!(ind.character(), expected.character());
        let whole = Subgroup::whole(&g);
        let same = induce(&whole, &MatrixRep::trivial(whole.group())).unwrap();
        assert_eq!(same.dim(), 1);
        assert!(same.character().values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn bad_generator_images_are_rejected() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let bad = CycMatrix::diagonal(&[Cyclotomic::from_i64(-1)]);
        assert!(matches!(MatrixRep::from_generator_images(&g, &[(1, bad)]), Err(FincharError::NotAHomomorphism(_))));
    }

    #[test]
    fn twist_search_finds_planted_twist() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let rho = MatrixRep::irreducible(&g, 4).unwrap();
        assert!(twist_search(&rho, &rho).unwrap().unwrap().is_trivial());
        let lin = g.linear_characters();
        let tw = rho.direct_sum(&MatrixRep::linear(&lin[1])).unwrap();
        let planted = tw.twist(&lin[2]).unwrap();
        let found = twist_search(&tw, &planted).unwrap().unwrap();
        assert_eq!(tw.twist(&found).unwrap().character(), planted.character());
        assert!(matches!(twist_search(&rho, &tw), Err(FincharError::DimMismatch { .. })));
    }
}
