//! Clifford theory: restriction to a normal subgroup, the permutation action
//! of the quotient on isotypic components, and invariance and extension of
//! linear characters.

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::character::{ClassFunction, LinearCharacter};
use super::group::{Quotient, Subgroup};
use super::rep::{twist_search, MatrixRep};
use super::{FincharError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicComponent {
    /// Position in the subgroup's character table.
    pub irreducible_index: usize,
    pub character: ClassFunction,
    pub multiplicity: u64,
}

/// The action of `G/N` on component indices: `perms[q][i]` is the image of
/// component `i` under the quotient element `q`.
#[derive(Clone, Debug)]
pub struct PermutationAction {
    pub quotient: Quotient,
    pub perms: Vec<Vec<usize>>,
}

impl PermutationAction {
    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    /// `perm(pq) = perm(p) ∘ perm(q)` for all quotient elements.
    pub fn is_homomorphism(&self) -> bool {
        let q = &self.quotient.group;
        (0..q.order()).all(|a| {
            (0..q.order()).all(|b| {
                let ab = &self.perms[q.mul(a, b)];
                (0..self.degree()).all(|i| ab[i] == self.perms[a][self.perms[b][i]])
            })
        })
    }

    /// Quotient elements acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.perms.len()).filter(|&q| self.perms[q].iter().enumerate().all(|(i, &j)| i == j)).collect()
    }
}

impl Serialize for PermutationAction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let q = &self.quotient.group;
        let labels: Vec<&str> = (0..q.order()).map(|i| q.label(i)).collect();
        let mut st = s.serialize_struct("PermutationAction", 2)?;
        st.serialize_field("quotient_elements", &labels)?;
        st.serialize_field("permutations", &self.perms)?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct CliffordDecomposition {
    pub normal: Subgroup,
    pub components: Vec<IsotypicComponent>,
    pub action: PermutationAction,
}

impl CliffordDecomposition {
    pub fn multiplicity_free(&self) -> bool {
        self.components.iter().all(|c| c.multiplicity == 1)
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.action.degree();
        n == 0 || (0..n).all(|j| self.action.perms.iter().any(|p| p[0] == j))
    }

    /// `Σ multiplicity · degree`.
    pub fn total_dimension(&self) -> u64 {
        self.components
            .iter()
            .map(|c| {
                let d = c.character.degree().to_rational().expect("character degree");
                c.multiplicity * u64::try_from(d.to_integer()).expect("small degree")
            })
            .sum()
    }
}

impl Serialize for CliffordDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CliffordDecomposition", 4)?;
        st.serialize_field("normal_subgroup_order", &self.normal.order())?;
        st.serialize_field("components", &self.components)?;
        st.serialize_field("action", &self.action)?;
        st.serialize_field("fixed_sets", &fixed_sets(&self.action))?;
        st.end()
    }
}

/// `ψ^g(y) = ψ(g⁻¹ y g)` for `ψ` a class function of the normal subgroup.
fn conjugate_on_subgroup(sub: &Subgroup, psi: &ClassFunction, g: usize) -> ClassFunction {
    let p = sub.parent();
    ClassFunction::from_element_fn(sub.group(), |i| {
        let y = p.conj(p.inv(g), sub.embed(i));
        psi.value(sub.locate(y).expect("normal subgroup")).clone()
    })
}

pub fn clifford_decompose(rho: &MatrixRep, sub: &Subgroup) -> Result<CliffordDecomposition> {
    clifford_decompose_character(&rho.character(), sub)
}

/// Splits `χ|N` into isotypic components and records how `G/N` permutes them.
pub fn clifford_decompose_character(chi: &ClassFunction, sub: &Subgroup) -> Result<CliffordDecomposition> {
    if !chi.group().same_as(sub.parent()) {
        return Err(FincharError::GroupMismatch);
    }
    let quotient = sub.quotient()?;
    let restricted = chi.restrict(sub)?;
    let table = sub.group().irreducible_characters()?;
    let mults = restricted.decompose()?;
    let components: Vec<IsotypicComponent> = mults
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| IsotypicComponent { irreducible_index: i, character: table[i].clone(), multiplicity: m })
        .collect();
    let mut perms = Vec::with_capacity(quotient.reps.len());
    for &g in &quotient.reps {
        let mut perm = Vec::with_capacity(components.len());
        for comp in &components {
            let moved = conjugate_on_subgroup(sub, &comp.character, g);
            let j = components
                .iter()
                .position(|c| c.character == moved)
                .ok_or_else(|| FincharError::Inconsistent("conjugate component is missing".into()))?;
            perm.push(j);
        }
        perms.push(perm);
    }
    let action = PermutationAction { quotient, perms };
    if !action.is_homomorphism() {
        return Err(FincharError::Inconsistent("component action is not a homomorphism".into()));
    }
    Ok(CliffordDecomposition { normal: sub.clone(), components, action })
}

/// `S(φ) = {i : φ(i) = i}` for every quotient element `φ`.
pub fn fixed_sets(action: &PermutationAction) -> Vec<Vec<usize>> {
    action
        .perms
        .iter()
        .map(|p| p.iter().enumerate().filter(|(i, &j)| *i == j).map(|(i, _)| i).collect())
        .collect()
}

/// A bijection between the components of two decompositions over the same
/// normal subgroup, induced by a linear character `λ` of the subgroup:
/// component `i` of the first, twisted by `λ`, is component `bijection[i]`
/// of the second.
#[derive(Clone, Debug)]
pub struct ComponentAlignment {
    pub twist: LinearCharacter,
    pub bijection: Vec<usize>,
}

impl Serialize for ComponentAlignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ComponentAlignment", 2)?;
        st.serialize_field("twist", &self.twist)?;
        st.serialize_field("bijection", &self.bijection)?;
        st.end()
    }
}

fn same_normal(d1: &CliffordDecomposition, d2: &CliffordDecomposition) -> Result<()> {
    if !d1.normal.parent().same_as(d2.normal.parent()) || d1.normal.elements() != d2.normal.elements() {
        return Err(FincharError::GroupMismatch);
    }
    Ok(())
}

pub fn align_components(d1: &CliffordDecomposition, d2: &CliffordDecomposition) -> Result<Option<ComponentAlignment>> {
    same_normal(d1, d2)?;
    if d1.components.len() != d2.components.len() {
        return Ok(None);
    }
    // Characters of the second decomposition live on its own copy of N.
    let n2 = d2.normal.group();
    let transport = |f: &ClassFunction| -> ClassFunction {
        ClassFunction::from_element_fn(n2, |i| {
            let x = d2.normal.embed(i);
            f.value(d1.normal.locate(x).expect("same elements")).clone()
        })
    };
    for lambda in d1.normal.group().linear_characters() {
        let mut bijection = Vec::with_capacity(d1.components.len());
        for comp in &d1.components {
            let twisted = transport(&comp.character.twist(&lambda)?);
            match d2.components.iter().position(|c| c.character == twisted && c.multiplicity == comp.multiplicity) {
                Some(j) if !bijection.contains(&j) => bijection.push(j),
                _ => break,
            }
        }
        if bijection.len() == d1.components.len() {
            return Ok(Some(ComponentAlignment { twist: lambda, bijection }));
        }
    }
    Ok(None)
}

/// For each quotient element, whether the aligned fixed sets coincide.
pub fn fixed_sets_agree(
    d1: &CliffordDecomposition,
    d2: &CliffordDecomposition,
    alignment: &ComponentAlignment,
) -> Result<Vec<bool>> {
    same_normal(d1, d2)?;
    let s1 = fixed_sets(&d1.action);
    let s2 = fixed_sets(&d2.action);
    Ok(s1
        .iter()
        .zip(&s2)
        .map(|(a, b)| {
            let mut mapped: Vec<usize> = a.iter().map(|&i| alignment.bijection[i]).collect();
            mapped.sort_unstable();
            mapped == *b
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub invariant: bool,
    pub quotient_order: usize,
    pub quotient_cyclic: bool,
    /// A linear character of the whole group restricting to the input.
    pub extension: Option<LinearCharacter>,
    /// How the extension was found: `cyclic` or `search`.
    pub method: Option<&'static str>,
}

impl Serialize for InvarianceReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvarianceReport", 5)?;
        st.serialize_field("invariant", &self.invariant)?;
        st.serialize_field("quotient_order", &self.quotient_order)?;
        st.serialize_field("quotient_cyclic", &self.quotient_cyclic)?;
        st.serialize_field("extension", &self.extension)?;
        st.serialize_field("method", &self.method)?;
        st.end()
    }
}

/// Whether `χ^g = χ` for all `g`, and an extension of `χ` to the whole group
/// when one exists (constructed directly when `G/N` is cyclic, otherwise by
/// exhaustive search among the linear characters of `G`).
pub fn invariant_character_check(chi: &LinearCharacter, sub: &Subgroup) -> Result<InvarianceReport> {
    if !chi.group().same_as(sub.group()) {
        return Err(FincharError::GroupMismatch);
    }
    let quotient = sub.quotient()?;
    let p = sub.parent();
    let exp_at = |x: usize| {
        let (m, e) = chi.exponent(sub.locate(x).expect("in subgroup"));
        (m, e)
    };
    let invariant = p.generators().iter().all(|&g| {
        (0..sub.order()).all(|i| {
            let y = sub.embed(i);
            exp_at(p.conj(p.inv(g), y)) == exp_at(y)
        })
    });
    let quotient_cyclic = quotient.is_cyclic();
    let mut report = InvarianceReport {
        invariant,
        quotient_order: quotient.group.order(),
        quotient_cyclic,
        extension: None,
        method: None,
    };
    if !invariant {
        return Ok(report);
    }
    if quotient_cyclic {
        let q = &quotient.group;
        let d = q.order();
        let gen_q = (0..d).find(|&x| q.element_order(x) == d).expect("cyclic quotient");
        let g = quotient.reps[gen_q];
        let (m, e) = exp_at(p.pow(g, d as i64));
        // c = ζ_{md}^e satisfies c^d = ζ_m^e = χ(g^d).
        let big = m * d as u32;
        let mut log = vec![0usize; d];
        let mut cur = 0usize;
        for (j, slot) in (0..d).map(|j| (j, cur)).collect::<Vec<_>>() {
            let _ = slot;
            log[cur] = j;
            cur = q.mul(cur, gen_q);
        }
        let exps: Vec<u32> = (0..p.order())
            .map(|x| {
                let j = log[quotient.proj[x]];
                let y = p.mul(p.pow(g, -(j as i64)), x);
                let (_, ey) = exp_at(y);
                ((j as u64 * e as u64 + d as u64 * ey as u64) % big as u64) as u32
            })
            .collect();
        let ext = LinearCharacter::new(p, big, exps)?;
        if ext.restrict(sub)? != *chi {
            return Err(FincharError::Inconsistent("extension does not restrict to the character".into()));
        }
        report.extension = Some(ext);
        report.method = Some("cyclic");
    } else {
        for eta in p.linear_characters() {
            if eta.restrict(sub)? == *chi {
                report.extension = Some(eta);
                report.method = Some("search");
                break;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistCandidate {
    /// Component of the second restriction matched by the first component.
    pub component: usize,
    pub character: LinearCharacter,
    pub invariance: InvarianceReport,
    /// Whether the extension (if any) twists the first representation into the second.
    pub extension_twists: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedTwistAnalysis {
    pub subgroup_order: usize,
    pub candidates: Vec<TwistCandidate>,
    pub twist_equivalent: bool,
}

/// For `ρ1, ρ2` with `ρ1` irreducible, multiplicity-free restrictions to the
/// normal subgroup `G'`, and a component `r2'` of `ρ2|G'` with
/// `r2' ≅ r1' ⊗ χ` for the first component `r1'` of `ρ1|G'`: decides whether
/// each such `χ` is invariant and whether its extensions twist `ρ1` into `ρ2`.
/// Refuses (rather than guessing) when the multiplicity-one or normality
/// hypotheses fail.
pub fn induced_twist_analysis(rho1: &MatrixRep, rho2: &MatrixRep, sub: &Subgroup) -> Result<InducedTwistAnalysis> {
    if !rho1.group().same_as(rho2.group()) || !rho1.group().same_as(sub.parent()) {
        return Err(FincharError::GroupMismatch);
    }
    if rho1.dim() != rho2.dim() {
        return Err(FincharError::DimMismatch { left: rho1.dim(), right: rho2.dim() });
    }
    if !sub.is_normal() {
        return Err(FincharError::NotNormal);
    }
    if !rho1.is_irreducible()? {
        return Err(FincharError::NotIrreducible);
    }
    let d1 = clifford_decompose(rho1, sub)?;
    let d2 = clifford_decompose(rho2, sub)?;
    if !d1.multiplicity_free() || !d2.multiplicity_free() {
        return Err(FincharError::MultiplicityNotOne);
    }
    let first = &d1.components[0].character;
    let mut candidates = Vec::new();
    for (j, comp) in d2.components.iter().enumerate() {
        for chi in sub.group().linear_characters() {
            if first.twist(&chi)? != comp.character {
                continue;
            }
            let invariance = invariant_character_check(&chi, sub)?;
            let extension_twists = match &invariance.extension {
                Some(eta) => Some(rho1.twist(eta)?.character() == rho2.character()),
                None => None,
            };
            candidates.push(TwistCandidate { component: j, character: chi, invariance, extension_twists });
        }
    }
    Ok(InducedTwistAnalysis {
        subgroup_order: sub.order(),
        candidates,
        twist_equivalent: twist_search(rho1, rho2)?.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finchar::{FiniteGroup, Heisenberg};

    #[test]
    fn heisenberg_restriction_to_t() {
        let h = Heisenberg::new(3).unwrap();
        let t = h.t_subgroup();
        let d1 = clifford_decompose(&h.rep(1).unwrap(), &t).unwrap();
        let d2 = clifford_decompose(&h.rep(2).unwrap(), &t).unwrap();
        for d in [&d1, &d2] {
            assert_eq!(d.components.len(), 3);
            assert!(d.multiplicity_free());
            assert!(d.is_transitive());
            assert_eq!(d.total_dimension(), 3);
            assert_eq!(d.action.kernel(), vec![0]);
            let s = fixed_sets(&d.action);
            assert_eq!(s[0], vec![0, 1, 2]);
            assert!(s[1..].iter().all(|x| x.is_empty()));
        }
        let alignment = align_components(&d1, &d2).unwrap().expect("twist on T exists");
        assert!(fixed_sets_agree(&d1, &d2, &alignment).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn whole_group_and_s3_regular() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let std = MatrixRep::standard(&g).unwrap();
        let whole = Subgroup::whole(&g);
        let d = clifford_decompose(&std, &whole).unwrap();
        assert_eq!(d.components.len(), 1);
        let a3 = Subgroup::derived(&g);
        let reg = clifford_decompose(&MatrixRep::regular(&g), &a3).unwrap();
        assert_eq!(reg.total_dimension(), 6);
        assert_eq!(reg.components.len(), 3);
        // The transposition coset fixes the trivial component and swaps the other two.
        let s = fixed_sets(&reg.action);
        assert_eq!(s[0].len(), 3);
        assert_eq!(s[1].len(), 1);
        let swap = g.element_by_label("(1 2)").unwrap();
        let h = Subgroup::generated(&g, &[swap]).unwrap();
        assert!(matches!(clifford_decompose(&std, &h), Err(FincharError::NotNormal)));
    }

    #[test]
    fn trivial_and_cyclic_actions() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let sub = Subgroup::generated(&g, &[g.element_by_label("g^2").unwrap()]).unwrap();
        let d = clifford_decompose(&MatrixRep::regular(&g), &sub).unwrap();
        // Abelian: conjugation is trivial, every set is everything.
        for s in fixed_sets(&d.action) {
            assert_eq!(s.len(), d.components.len());
        }
    }

    #[test]
    fn invariance_examples() {
        let h = Heisenberg::new(3).unwrap();
        let t = h.t_subgroup();
        let psi = h.psi(&t, 1).unwrap();
        let r = invariant_character_check(&psi, &t).unwrap();
        assert!(!r.invariant);
        assert!(r.extension.is_none());
        let triv = LinearCharacter::trivial(t.group());
        let r = invariant_character_check(&triv, &t).unwrap();
        assert!(r.invariant && r.quotient_cyclic);
        assert!(r.extension.unwrap().is_trivial());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let a3 = Subgroup::derived(&s3);
        for chi in a3.group().linear_characters() {
            let r = invariant_character_check(&chi, &a3).unwrap();
            assert_eq!(r.invariant, chi.is_trivial());
        }
    }

    #[test]
    fn invariant_characters_extend_over_cyclic_quotients() {
        // A character of the centre of Q8 that is invariant; the quotient Q8/Z is not cyclic.
        let q8 = FiniteGroup::quaternion().unwrap();
        let z = Subgroup::center(&q8);
        for chi in z.group().linear_characters() {
            let r = invariant_character_check(&chi, &z).unwrap();
            assert!(r.invariant);
            assert!(!r.quotient_cyclic);
            // Only the trivial character extends: -1 lies in the derived subgroup.
            assert_eq!(r.extension.is_some(), chi.is_trivial());
        }
        let c8 = FiniteGroup::cyclic(8).unwrap();
        let sub = Subgroup::generated(&c8, &[c8.element_by_label("g^2").unwrap()]).unwrap();
        for chi in sub.group().linear_characters() {
            let r = invariant_character_check(&chi, &sub).unwrap();
            assert_eq!(r.method, Some("cyclic"));
            assert_eq!(r.extension.unwrap().restrict(&sub).unwrap(), chi);
        }
    }

    #[test]
    fn induced_twist_analysis_refuses_without_hypotheses() {
        let h = Heisenberg::new(3).unwrap();
        let r1 = h.rep(1).unwrap();
        let r2 = h.rep(2).unwrap();
        let t = h.t_subgroup();
        let a = induced_twist_analysis(&r1, &r2, &t).unwrap();
        assert!(!a.twist_equivalent);
        assert!(!a.candidates.is_empty());
        assert!(a.candidates.iter().all(|c| !c.invariance.invariant));
        let center = h.center();
        assert!(matches!(induced_twist_analysis(&r1, &r2, &center), Err(FincharError::MultiplicityNotOne)));
        let (_, b, _) = h.generators();
        let not_normal = Subgroup::generated(h.group(), &[b]).unwrap();
        assert!(matches!(induced_twist_analysis(&r1, &r2, &not_normal), Err(FincharError::NotNormal)));
    }

    #[test]
    fn induced_twist_analysis_positive_case() {
        // D4 with the rotation subgroup: the 2-dim irreducible twisted by a
        // linear character that is trivial on the rotations.
        let g = FiniteGroup::dihedral(4).unwrap();
        let rot = Subgroup::generated(&g, &[g.element_by_label("r^1").unwrap()]).unwrap();
        let rho = MatrixRep::irreducible(&g, 4).unwrap();
        let eta = g.linear_characters().into_iter().find(|e| !e.is_trivial() && e.restrict(&rot).unwrap().is_trivial()).unwrap();
        let a = induced_twist_analysis(&rho, &rho.twist(&eta).unwrap(), &rot).unwrap();
        assert!(a.twist_equivalent);
        assert!(a.candidates.iter().any(|c| c.invariance.invariant && c.extension_twists == Some(true)));
    }
}
