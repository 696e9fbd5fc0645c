//! The cocycle `T(σ) = ρ1(σ)⁻¹ρ2(σ)` of two representations agreeing on a
//! subgroup, and commutant dimensions.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use super::cyclotomic::Cyclotomic;
use super::group::Subgroup;
use super::matrix::CycMatrix;
use super::rep::MatrixRep;
use super::{FincharError, Result};

/// Groups up to this order have the cocycle identity checked on all pairs;
/// larger ones on pairs `(σ, τ)` with `τ` a generator.
const ALL_PAIRS_LIMIT: usize = 200;

#[derive(Clone, Debug)]
pub struct TwistCocycle {
    rho1: MatrixRep,
    values: Vec<CycMatrix>,
    pub pairs_checked: usize,
    /// Every `T(σ)` commutes with `ρ1(N)`.
    pub in_commutant: bool,
    pub all_diagonal: bool,
    pub all_scalar: bool,
    pub is_trivial: bool,
}

impl TwistCocycle {
    pub fn value(&self, sigma: usize) -> &CycMatrix {
        &self.values[sigma]
    }

    pub fn values(&self) -> &[CycMatrix] {
        &self.values
    }
}

impl Serialize for TwistCocycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.rho1.group();
        let values: Vec<(&str, &CycMatrix)> = (0..g.order()).map(|x| (g.label(x), &self.values[x])).collect();
        let mut st = s.serialize_struct("TwistCocycle", 6)?;
        st.serialize_field("pairs_checked", &self.pairs_checked)?;
        st.serialize_field("in_commutant", &self.in_commutant)?;
        st.serialize_field("all_diagonal", &self.all_diagonal)?;
        st.serialize_field("all_scalar", &self.all_scalar)?;
        st.serialize_field("is_trivial", &self.is_trivial)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

/// Builds `T` and verifies `T(στ) = ρ1(τ)⁻¹T(σ)ρ1(τ)T(τ)`.
pub fn twist_cocycle(rho1: &MatrixRep, rho2: &MatrixRep, sub: &Subgroup) -> Result<TwistCocycle> {
    let g = rho1.group();
    if !g.same_as(rho2.group()) || !g.same_as(sub.parent()) {
        return Err(FincharError::GroupMismatch);
    }
    if rho1.dim() != rho2.dim() {
        return Err(FincharError::DimMismatch { left: rho1.dim(), right: rho2.dim() });
    }
    for x in sub.elements() {
        if rho1.image(x) != rho2.image(x) {
            return Err(FincharError::NotEqualOnSubgroup(g.label(x).to_string()));
        }
    }
    let values: Vec<CycMatrix> = (0..g.order()).map(|s| rho1.image(g.inv(s)).mul(rho2.image(s))).collect();
    let taus: Vec<usize> = if g.order() <= ALL_PAIRS_LIMIT { (0..g.order()).collect() } else { g.generators().to_vec() };
    let mut pairs_checked = 0;
    for &t in &taus {
        let r = rho1.image(t);
        let r_inv = rho1.image(g.inv(t));
        for s in 0..g.order() {
            let rhs = r_inv.mul(&values[s]).mul(r).mul(&values[t]);
            if values[g.mul(s, t)] != rhs {
                return Err(FincharError::Inconsistent(format!(
                    "cocycle identity fails at ({}, {})",
                    g.label(s),
                    g.label(t)
                )));
            }
            pairs_checked += 1;
        }
    }
    let in_commutant = values.iter().all(|v| sub.elements().iter().all(|&n| v.commutes_with(rho1.image(n))));
    if !in_commutant {
        return Err(FincharError::Inconsistent("cocycle leaves the commutant".into()));
    }
    Ok(TwistCocycle {
        rho1: rho1.clone(),
        pairs_checked,
        in_commutant,
        all_diagonal: values.iter().all(CycMatrix::is_diagonal),
        all_scalar: values.iter().all(CycMatrix::is_scalar),
        is_trivial: values.iter().all(CycMatrix::is_identity),
        values,
    })
}

/// Dimension over the scalar field of `{X : Xρ(g) = ρ(g)X for all g}`,
/// computed as a rational nullity divided by `φ(m)`.
pub fn commutant_dimension(rho: &MatrixRep) -> usize {
    let g = rho.group();
    let n = rho.dim();
    let mut m = 1u32;
    for &x in g.generators() {
        for e in rho.image(x).entries() {
            m = num_integer::lcm(m, e.conductor());
        }
    }
    let basis: Vec<Cyclotomic> = {
        let phi = Cyclotomic::one().lift(m).coefficients().len();
        (0..phi as i64).map(|k| Cyclotomic::root_of_unity(m, k)).collect()
    };
    let phi = basis.len();
    let unknowns = n * n * phi;
    // One column per unknown: the rational coordinates of Xρ(g) − ρ(g)X for
    // each generator, with X the unit matrix at (a, b) scaled by ζ^k.
    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(unknowns);
    for a in 0..n {
        for b in 0..n {
            for z in &basis {
                let mut x = CycMatrix::zeros(n);
                x.set(a, b, z.clone());
                let mut col = Vec::new();
                for &gen in g.generators() {
                    let r = rho.image(gen);
                    let d = x.mul(r).add(&r.mul(&x).scale(&Cyclotomic::from_i64(-1)));
                    for e in d.entries() {
                        col.extend(e.lifted_coeffs(m));
                    }
                }
                columns.push(col);
            }
        }
    }
    let rank = rational_rank(columns);
    (unknowns - rank) / phi
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = BigRational::one() / &rows[rank][col];
        let pivot: Vec<BigRational> = rows[rank].iter().map(|v| v * &inv).collect();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for (v, p) in rows[r].iter_mut().zip(&pivot).skip(col) {
                *v -= &f * p;
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finchar::{FiniteGroup, Heisenberg, LinearCharacter};

    #[test]
    fn identical_reps_give_trivial_cocycle() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let std = MatrixRep::standard(&g).unwrap();
        let t = twist_cocycle(&std, &std, &Subgroup::derived(&g)).unwrap();
        assert!(t.is_trivial);
        assert_eq!(t.pairs_checked, 36);
    }

    #[test]
    fn twist_by_character_trivial_on_subgroup_is_scalar() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a3 = Subgroup::derived(&g);
        let std = MatrixRep::standard(&g).unwrap();
        let sign = g.linear_characters().into_iter().find(|e| !e.is_trivial()).unwrap();
        let t = twist_cocycle(&std, &std.twist(&sign).unwrap(), &a3).unwrap();
        assert!(t.all_scalar && !t.is_trivial);
        for x in 0..6 {
            assert_eq!(t.value(x), &CycMatrix::scalar(2, &sign.value(x)));
        }
        let whole = Subgroup::whole(&g);
        assert!(matches!(
            twist_cocycle(&std, &std.twist(&sign).unwrap(), &whole),
            Err(FincharError::NotEqualOnSubgroup(_))
        ));
    }

    #[test]
    fn heisenberg_cocycle_is_diagonal() {
        let h = Heisenberg::new(3).unwrap();
        let t = h.t_subgroup();
        let g = h.group();
        let r1 = h.rep(1).unwrap();
        let (_, b, _) = h.generators();
        // η(B) = ξ, trivial on T.
        let exps: Vec<u32> = (0..g.order())
            .map(|x| (0..3).find(|&j| t.contains(g.mul(g.pow(b, -(j as i64)), x))).unwrap())
            .collect();
        let eta = LinearCharacter::new(g, 3, exps).unwrap();
        let p = [Cyclotomic::one(), Cyclotomic::root_of_unity(3, 1), Cyclotomic::root_of_unity(3, 1)];
        let r2 = r1.twist(&eta).unwrap().conjugate_by_diagonal(&p).unwrap();
        let c = twist_cocycle(&r1, &r2, &t).unwrap();
        assert!(c.in_commutant && c.all_diagonal && !c.all_scalar);
        assert_eq!(c.pairs_checked, 27 * 27);
    }

    #[test]
    fn commutant_dimension_matches_norm() {
        for spec in ["sym:3", "dihedral:4", "quaternion", "alt:4"] {
            let g = FiniteGroup::preset(spec).unwrap();
            for i in 0..g.num_classes() {
                let r = MatrixRep::irreducible(&g, i).unwrap();
                if r.dim() <= 4 {
                    assert_eq!(commutant_dimension(&r), 1, "{spec} irreducible {i}");
                }
            }
            let triv = MatrixRep::trivial(&g);
            let sum = triv.direct_sum(&triv).unwrap();
            assert_eq!(commutant_dimension(&sum), 4);
        }
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let perm = MatrixRep::permutation(&s3).unwrap();
        let norm = perm.character().norm().unwrap();
        assert_eq!(BigRational::from_integer(commutant_dimension(&perm).into()), norm);
    }
}
