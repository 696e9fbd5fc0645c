//! Class functions, linear characters and character tables.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::cyclotomic::Cyclotomic;
use super::group::{FiniteGroup, Group, Subgroup};
use super::{FincharError, Result};

/// A function on a group that is constant on conjugacy classes, stored as
/// one value per class.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Group,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

fn same_group(a: &Group, b: &Group) -> Result<()> {
    if a.same_as(b) {
        Ok(())
    } else {
        Err(FincharError::GroupMismatch)
    }
}

impl ClassFunction {
    pub fn new(group: &Group, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.num_classes() {
            return Err(FincharError::DimMismatch { left: group.num_classes(), right: values.len() });
        }
        Ok(ClassFunction { group: group.clone(), values })
    }

    /// Evaluates `f` on one representative per class.
    pub fn from_element_fn(group: &Group, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values = (0..group.num_classes()).map(|c| f(group.class_rep(c))).collect();
        ClassFunction { group: group.clone(), values }
    }

    pub fn constant(group: &Group, c: Cyclotomic) -> Self {
        ClassFunction { group: group.clone(), values: vec![c; group.num_classes()] }
    }

    pub fn trivial(group: &Group) -> Self {
        Self::constant(group, Cyclotomic::one())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(x)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        self.value(self.group.identity())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(Cyclotomic::conj)
    }

    pub fn pow(&self, k: u64) -> Self {
        self.map(|v| v.pow(k))
    }

    pub fn twist(&self, eta: &LinearCharacter) -> Result<Self> {
        self.mul(&eta.to_class_function())
    }

    /// Restriction to a subgroup, as a class function of the subgroup's own group.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        same_group(&self.group, sub.parent())?;
        Ok(Self::from_element_fn(sub.group(), |i| self.value(sub.embed(i)).clone()))
    }

    /// `Ind(ψ)(g) = (1/|H|) Σ_{x ∈ G} ψ°(x⁻¹ g x)`.
    pub fn induce(sub: &Subgroup, psi: &ClassFunction) -> Result<Self> {
        same_group(sub.group(), &psi.group)?;
        let g = sub.parent();
        let scale = BigRational::new(BigInt::one(), BigInt::from(sub.order()));
        Ok(Self::from_element_fn(g, |rep| {
            let mut acc = Cyclotomic::zero();
            for x in 0..g.order() {
                if let Some(y) = sub.locate(g.conj(g.inv(x), rep)) {
                    acc += psi.value(y);
                }
            }
            acc.scale(&scale)
        }))
    }

    pub fn inner(&self, other: &Self) -> Result<Cyclotomic> {
        same_group(&self.group, &other.group)?;
        let mut acc = Cyclotomic::zero();
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let size = Cyclotomic::from_i64(self.group.classes()[c].len() as i64);
            acc += &(&size * &(a * &b.conj()));
        }
        Ok(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order()))))
    }

    pub fn norm(&self) -> Result<BigRational> {
        self.inner(self)?.expect_rational()
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.norm()?.is_one())
    }

    /// Multiplicities of the irreducible characters (in table order); an
    /// error if some multiplicity is not a nonnegative integer.
    pub fn decompose(&self) -> Result<Vec<u64>> {
        let table = self.group.irreducible_characters()?;
        table
            .iter()
            .map(|irr| {
                let m = inner_product(self, irr)?;
                if !m.is_integer() || m < BigRational::zero() {
                    return Err(FincharError::NonRationalResult(format!("multiplicity {m}")));
                }
                Ok(m.to_integer().try_into().expect("small multiplicity"))
            })
            .collect()
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reps: Vec<&str> = (0..self.group.num_classes()).map(|c| self.group.label(self.group.class_rep(c))).collect();
        let mut st = s.serialize_struct("ClassFunction", 3)?;
        st.serialize_field("group", self.group.name())?;
        st.serialize_field("class_representatives", &reps)?;
        st.serialize_field("values", &self.values)?;
        st.end()
    }
}

/// `(1/|G|) Σ f(x) conj(g(x))`, required to be rational.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    f.inner(g)?.expect_rational()
}

/// Whether `χ1(g)^k = χ2(g)^k` on every class.
pub fn kth_power_equal(chi1: &ClassFunction, chi2: &ClassFunction, k: u64) -> Result<bool> {
    same_group(&chi1.group, &chi2.group)?;
    Ok(chi1.values.iter().zip(&chi2.values).all(|(a, b)| a.pow(k) == b.pow(k)))
}

/// First linear character `η` (in table order) with `χ2 = χ1 · η`.
pub fn twist_search_characters(chi1: &ClassFunction, chi2: &ClassFunction) -> Result<Option<LinearCharacter>> {
    same_group(&chi1.group, &chi2.group)?;
    if chi1.degree() != chi2.degree() {
        let d = |c: &ClassFunction| c.degree().to_rational().map_or(0, |q| q.to_integer().try_into().unwrap_or(0));
        return Err(FincharError::DimMismatch { left: d(chi1), right: d(chi2) });
    }
    for eta in chi1.group.linear_characters() {
        if chi1.twist(&eta)? == *chi2 {
            return Ok(Some(eta));
        }
    }
    Ok(None)
}

/// A homomorphism to the roots of unity, `x ↦ ζ_m^{e(x)}`.
#[derive(Clone, Debug)]
pub struct LinearCharacter {
    group: Group,
    modulus: u32,
    exps: Vec<u32>,
}

impl PartialEq for LinearCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group)
            && self
                .exps
                .iter()
                .zip(&other.exps)
                .all(|(&a, &b)| a as u64 * other.modulus as u64 == b as u64 * self.modulus as u64)
    }
}

impl Eq for LinearCharacter {}

impl LinearCharacter {
    /// Builds a linear character from exponents, checking the homomorphism law.
    pub fn new(group: &Group, modulus: u32, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != group.order() || modulus == 0 {
            return Err(FincharError::BadParameters("exponent vector does not match the group".into()));
        }
        let exps: Vec<u32> = exps.into_iter().map(|e| e % modulus).collect();
        let chi = LinearCharacter { group: group.clone(), modulus, exps };
        for x in 0..group.order() {
            for &g in group.generators() {
                if chi.exps[group.mul(x, g)] != (chi.exps[x] + chi.exps[g]) % modulus {
                    return Err(FincharError::NotAHomomorphism(format!(
                        "linear character at ({}, {})",
                        group.label(x),
                        group.label(g)
                    )));
                }
            }
        }
        Ok(chi)
    }

    pub fn trivial(group: &Group) -> Self {
        LinearCharacter { group: group.clone(), modulus: 1, exps: vec![0; group.order()] }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `(m, e)` with value `ζ_m^e` at `x`.
    pub fn exponent(&self, x: usize) -> (u32, u32) {
        (self.modulus, self.exps[x])
    }

    pub fn value(&self, x: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.modulus, self.exps[x] as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn to_class_function(&self) -> ClassFunction {
        ClassFunction::from_element_fn(&self.group, |x| self.value(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_group(&self.group, &other.group)?;
        let m = num_integer::lcm(self.modulus, other.modulus);
        let (a, b) = (m / self.modulus, m / other.modulus);
        let exps = self.exps.iter().zip(&other.exps).map(|(&x, &y)| (x * a + y * b) % m).collect();
        Ok(LinearCharacter { group: self.group.clone(), modulus: m, exps })
    }

    pub fn inverse(&self) -> Self {
        let m = self.modulus;
        LinearCharacter { group: self.group.clone(), modulus: m, exps: self.exps.iter().map(|&e| (m - e) % m).collect() }
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<Self> {
        same_group(&self.group, sub.parent())?;
        let exps = (0..sub.order()).map(|i| self.exps[sub.embed(i)]).collect();
        Ok(LinearCharacter { group: sub.group().clone(), modulus: self.modulus, exps })
    }

    /// Exponents of every element, for serialization.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }
}

impl Serialize for LinearCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<(String, u32)> =
            self.group.generators().iter().map(|&g| (self.group.label(g).to_string(), self.exps[g])).collect();
        let mut st = s.serialize_struct("LinearCharacter", 2)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("generator_exponents", &gens)?;
        st.end()
    }
}

/// Where an irreducible character came from, so a matrix model can be rebuilt.
#[derive(Clone, Debug)]
pub(super) enum IrreducibleSource {
    Linear(usize),
    Induced { generators: Vec<usize>, linear: usize },
}

#[derive(Clone, Debug)]
pub(super) struct IrreducibleRecord {
    pub(super) values: Vec<Cyclotomic>,
    pub(super) source: IrreducibleSource,
}

impl FiniteGroup {
    fn linear_table(self: &Arc<Self>) -> &(u32, Vec<Vec<u32>>) {
        self.cache.linear.get_or_init(|| {
            let derived = Subgroup::derived(self);
            let q = derived.quotient().expect("derived subgroup is normal");
            let (e, chars) = abelian_characters(&q.group);
            let pulled = chars.into_iter().map(|c| q.proj.iter().map(|&p| c[p]).collect()).collect();
            (e, pulled)
        })
    }

    /// Linear characters, trivial first, in a fixed order. Their number is
    /// `|G/[G,G]|`.
    pub fn linear_characters(self: &Arc<Self>) -> Vec<LinearCharacter> {
        let (m, table) = self.linear_table();
        table.iter().map(|exps| LinearCharacter { group: self.clone(), modulus: *m, exps: exps.clone() }).collect()
    }

    pub(super) fn irreducible_records(self: &Arc<Self>) -> Result<&[IrreducibleRecord]> {
        self.cache
            .irreducible
            .get_or_init(|| monomial_character_table(self))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// The irreducible characters: linear ones first, then by degree.
    ///
    /// Built from characters induced from linear characters of subgroups
    /// with at most two generators, which is complete for the monomial
    /// groups used here (abelian, dihedral, symmetric up to degree 4,
    /// quaternion, Heisenberg and their products). Any other group gets
    /// `CharacterTableIncomplete`.
    pub fn irreducible_characters(self: &Arc<Self>) -> Result<Vec<ClassFunction>> {
        Ok(self
            .irreducible_records()?
            .iter()
            .map(|r| ClassFunction { group: self.clone(), values: r.values.clone() })
            .collect())
    }
}

/// Characters of an abelian group by extending one cyclic factor at a time.
fn abelian_characters(q: &Group) -> (u32, Vec<Vec<u32>>) {
    let n = q.order();
    let e = q.exponent() as u32;
    let mut members = vec![0usize];
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut chars: Vec<Vec<u32>> = vec![vec![0; n]];
    for g in 0..n {
        if inside[g] {
            continue;
        }
        let mut d = 1;
        let mut gd = g;
        while !inside[gd] {
            gd = q.mul(gd, g);
            d += 1;
        }
        // gd = g^d lies in the current subgroup.
        let mut new_members = Vec::with_capacity(members.len() * d);
        let mut gj = 0usize;
        for _ in 0..d {
            for &s in &members {
                new_members.push(q.mul(s, gj));
            }
            gj = q.mul(gj, g);
        }
        let mut next = Vec::with_capacity(chars.len() * d);
        for chi in &chars {
            let target = chi[gd];
            assert_eq!(target % d as u32, 0, "root extraction in an abelian group");
            for t in 0..d as u32 {
                let f = target / d as u32 + t * (e / d as u32);
                let mut ext = chi.clone();
                let mut gj = 0usize;
                for j in 0..d as u32 {
                    for &s in &members {
                        ext[q.mul(s, gj)] = (chi[s] + j * f) % e;
                    }
                    gj = q.mul(gj, g);
                }
                next.push(ext);
            }
        }
        for &x in &new_members {
            inside[x] = true;
        }
        members = new_members;
        chars = next;
    }
    (e, chars)
}

fn monomial_character_table(g: &Group) -> Result<Vec<IrreducibleRecord>> {
    let n = g.order();
    let mut records: Vec<IrreducibleRecord> = g
        .linear_characters()
        .iter()
        .enumerate()
        .map(|(i, chi)| IrreducibleRecord { values: chi.to_class_function().values, source: IrreducibleSource::Linear(i) })
        .collect();
    let mut total = records.len() as u64;
    if total == n as u64 {
        return Ok(records);
    }
    // Cyclic subgroups, one generator each.
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic = Vec::new();
    for x in 1..n {
        if seen.insert(g.closure(&[x])) {
            cyclic.push(x);
        }
    }
    let class_sizes: Vec<i64> = g.classes().iter().map(|c| c.len() as i64).collect();
    // Proper subgroups in rounds: one or two cyclic generators first, then
    // joins of the previous round with one more cyclic subgroup, until the
    // table is complete or no new subgroup appears.
    let mut seen_sets: HashSet<Vec<usize>> = HashSet::new();
    let mut round: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, &x) in cyclic.iter().enumerate() {
        add_candidate(g, vec![x], &mut seen_sets, &mut round);
        for &y in &cyclic[i + 1..] {
            add_candidate(g, vec![x, y], &mut seen_sets, &mut round);
        }
    }
    while total < n as u64 && !round.is_empty() && seen_sets.len() <= SUBGROUP_SEARCH_CAP {
        round.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        for (_, gens) in &round {
            absorb_induced(g, gens, &class_sizes, &mut records, &mut total)?;
            if total == n as u64 {
                break;
            }
        }
        let mut next = Vec::new();
        for (set, gens) in &round {
            for &x in &cyclic {
                if set.binary_search(&x).is_err() {
                    let mut more = gens.clone();
                    more.push(x);
                    add_candidate(g, more, &mut seen_sets, &mut next);
                }
            }
        }
        round = next;
    }
    if total != n as u64 {
        return Err(FincharError::CharacterTableIncomplete { found: total, order: n });
    }
    let degree = |r: &IrreducibleRecord| r.values[0].to_rational().expect("integral degree");
    records.sort_by_key(|r| degree(r));
    Ok(records)
}

/// Bound on the number of subgroups examined by the character-table search.
const SUBGROUP_SEARCH_CAP: usize = 50_000;

fn add_candidate(g: &Group, gens: Vec<usize>, seen: &mut HashSet<Vec<usize>>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
    let set = g.closure(&gens);
    if set.len() < g.order() && seen.insert(set.clone()) {
        out.push((set, gens));
    }
}

/// Adds the irreducible characters induced from linear characters of the
/// subgroup generated by `gens`.
fn absorb_induced(
    g: &Group,
    gens: &[usize],
    class_sizes: &[i64],
    records: &mut Vec<IrreducibleRecord>,
    total: &mut u64,
) -> Result<()> {
    let n = g.order();
    let sub = Subgroup::generated(g, gens)?;
    let degree = sub.index() as u64;
    if *total + degree * degree > n as u64 {
        return Ok(());
    }
    // For each class of G: the subgroup elements among the conjugates x⁻¹ g x.
    let conjugates: Vec<Vec<usize>> = (0..g.num_classes())
        .map(|c| {
            let rep = g.class_rep(c);
            (0..n).filter_map(|x| sub.locate(g.conj(g.inv(x), rep))).collect()
        })
        .collect();
    let scale = BigRational::new(BigInt::one(), BigInt::from(sub.order()));
    for (li, psi) in sub.group().linear_characters().iter().enumerate() {
        let m = psi.modulus();
        let values: Vec<Cyclotomic> = conjugates
            .iter()
            .map(|ys| {
                let mut counts = vec![0i64; m as usize];
                for &y in ys {
                    counts[psi.exponent(y).1 as usize] += 1;
                }
                Cyclotomic::from_exponent_counts(m, &counts).scale(&scale)
            })
            .collect();
        // ⟨χ, χ⟩ = 1 decides irreducibility.
        let mut norm = Cyclotomic::zero();
        for (v, &sz) in values.iter().zip(class_sizes) {
            norm += &v.norm_sq().scale(&BigRational::from_integer(sz.into()));
        }
        if norm.to_rational() != Some(BigRational::from_integer(BigInt::from(n))) {
            continue;
        }
        if records.iter().any(|r| r.values == values) {
            continue;
        }
        records.push(IrreducibleRecord {
            values,
            source: IrreducibleSource::Induced { generators: gens.to_vec(), linear: li },
        });
        *total += degree * degree;
        if *total + degree * degree > n as u64 {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn degrees(g: &Group) -> Vec<i64> {
        g.irreducible_characters()
            .unwrap()
            .iter()
            .map(|c| c.degree().to_rational().unwrap().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn character_table_degrees() {
        let cases: [(&str, &[i64]); 7] = [
            ("sym:3", &[1, 1, 2]),
            ("dihedral:4", &[1, 1, 1, 1, 2]),
            ("quaternion", &[1, 1, 1, 1, 2]),
            ("sym:4", &[1, 1, 2, 3, 3]),
            ("alt:4", &[1, 1, 1, 3]),
            ("heisenberg:3", &[1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]),
            ("cyclic:6", &[1, 1, 1, 1, 1, 1]),
        ];
        for (spec, expected) in cases {
            let g = FiniteGroup::preset(spec).unwrap();
            assert_eq!(degrees(&g), expected, "{spec}");
        }
        // Degree-3 characters come from a subgroup needing three generators.
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::direct_product(&c2, &FiniteGroup::symmetric(4).unwrap()).unwrap();
        assert_eq!(degrees(&g), [1, 1, 1, 1, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn orthogonality_of_tables() {
        for spec in ["sym:3", "dihedral:4", "quaternion", "sym:4", "heisenberg:3", "dihedral:5"] {
            let g = FiniteGroup::preset(spec).unwrap();
            let t = g.irreducible_characters().unwrap();
            for (i, a) in t.iter().enumerate() {
                for (j, b) in t.iter().enumerate() {
                    let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(inner_product(a, b).unwrap(), expected, "{spec} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn linear_characters_form_a_group() {
        for spec in ["heisenberg:3", "dihedral:4", "cyclic:12", "quaternion"] {
            let g = FiniteGroup::preset(spec).unwrap();
            let lin = g.linear_characters();
            let derived = Subgroup::derived(&g);
            assert_eq!(lin.len(), derived.index());
            assert!(lin[0].is_trivial());
            for a in &lin {
                for b in &lin {
                    let p = a.mul(b).unwrap();
                    assert!(lin.contains(&p));
                    LinearCharacter::new(&g, p.modulus(), p.exponents().to_vec()).unwrap();
                }
            }
        }
    }

    #[test]
    fn s3_examples() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = g.irreducible_characters().unwrap();
        let triv = ClassFunction::trivial(&g);
        assert_eq!(inner_product(&triv, &triv).unwrap(), BigRational::one());
        assert_eq!(inner_product(&t[2], &triv).unwrap(), BigRational::zero());
        let triv_sign = t[0].add(&t[1]).unwrap();
        assert!(!kth_power_equal(&t[2], &triv_sign, 1).unwrap());
        assert!(kth_power_equal(&t[2], &t[2], 5).unwrap());
        assert_eq!(triv_sign.decompose().unwrap(), vec![1, 1, 0]);
        let a3 = Subgroup::derived(&g);
        let induced = ClassFunction::induce(&a3, &ClassFunction::trivial(a3.group())).unwrap();
        assert_eq!(induced, triv_sign);
        assert!(twist_search_characters(&t[0], &t[1]).unwrap().is_some());
        assert!(matches!(twist_search_characters(&t[0], &t[2]), Err(FincharError::DimMismatch { .. })));
    }

    #[test]
    fn group_mismatch_is_reported() {
        let a = FiniteGroup::symmetric(3).unwrap();
        let b = FiniteGroup::symmetric(3).unwrap();
        assert!(matches!(
            inner_product(&ClassFunction::trivial(&a), &ClassFunction::trivial(&b)),
            Err(FincharError::GroupMismatch)
        ));
    }

    #[test]
    fn non_rational_inner_product() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let f = ClassFunction::from_element_fn(&g, |x| if x == 1 { Cyclotomic::root_of_unity(3, 1) } else { Cyclotomic::zero() });
        let one = ClassFunction::trivial(&g);
        assert!(matches!(inner_product(&f, &one), Err(FincharError::NonRationalResult(_))));
    }
}
