//! The Heisenberg group of order `n³` and its `n`-dimensional representations.
//!
//! The element `(x, y, z)` stands for `C^z B^y A^x`; with `AB = CBA` and `C`
//! central this gives `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`.

use num_integer::Integer;

use super::character::LinearCharacter;
use super::cyclotomic::Cyclotomic;
use super::group::{FiniteGroup, Group, Subgroup};
use super::matrix::CycMatrix;
use super::rep::MatrixRep;
use super::{FincharError, Result};

#[derive(Clone, Debug)]
pub struct Heisenberg {
    n: u64,
    group: Group,
    a: usize,
    b: usize,
    c: usize,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl Heisenberg {
    /// `n` must be an odd prime.
    pub fn new(n: u64) -> Result<Self> {
        if n % 2 == 0 || !is_prime(n) {
            return Err(FincharError::BadParameters(format!("heisenberg group needs an odd prime, got {n}")));
        }
        let m = n as u32;
        let mul = |p: &(u32, u32, u32), q: &(u32, u32, u32)| {
            ((p.0 + q.0) % m, (p.1 + q.1) % m, ((p.2 + q.2) as u64 + p.0 as u64 * q.1 as u64).rem_euclid(n) as u32)
        };
        let label = |p: &(u32, u32, u32)| {
            let mut parts = Vec::new();
            for (e, s) in [(p.2, "C"), (p.1, "B"), (p.0, "A")] {
                match e {
                    0 => {}
                    1 => parts.push(s.to_string()),
                    k => parts.push(format!("{s}^{k}")),
                }
            }
            if parts.is_empty() {
                "e".to_string()
            } else {
                parts.join("")
            }
        };
        let gens = [(1 % m, 0, 0), (0, 1 % m, 0), (0, 0, 1 % m)];
        let (group, elements) = FiniteGroup::from_generators(&format!("heisenberg:{n}"), (0, 0, 0), &gens, mul, label)?;
        let find = |t: (u32, u32, u32)| elements.iter().position(|&e| e == t).expect("generator present");
        Ok(Heisenberg { n, a: find(gens[0]), b: find(gens[1]), c: find(gens[2]), group })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Indices of `A`, `B`, `C`.
    pub fn generators(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }

    /// `A^n = B^n = C^n = 1`, `AC = CA`, `BC = CB`, `AB = CBA`.
    pub fn relations_hold(&self) -> bool {
        let g = &self.group;
        let (a, b, c) = (self.a, self.b, self.c);
        let n = self.n as i64;
        g.pow(a, n) == 0
            && g.pow(b, n) == 0
            && g.pow(c, n) == 0
            && g.element_order(a) == self.n as usize
            && g.mul(a, c) == g.mul(c, a)
            && g.mul(b, c) == g.mul(c, b)
            && g.mul(a, b) == g.mul(g.mul(c, b), a)
    }

    /// The abelian normal subgroup `T = <A, C>` of index `n`.
    pub fn t_subgroup(&self) -> Subgroup {
        Subgroup::generated(&self.group, &[self.a, self.c]).expect("subgroup")
    }

    pub fn center(&self) -> Subgroup {
        Subgroup::generated(&self.group, &[self.c]).expect("subgroup")
    }

    fn check_a(&self, a: i64) -> Result<()> {
        if a.gcd(&(self.n as i64)) != 1 {
            return Err(FincharError::BadParameters(format!("a = {a} is not coprime to {}", self.n)));
        }
        Ok(())
    }

    /// `ρ_a(A) e_i = ξ^{(i-1)a} e_i`, `ρ_a(B) e_i = e_{i+1}`, `ρ_a(C) = ξ^a`.
    pub fn rep(&self, a: i64) -> Result<MatrixRep> {
        self.check_a(a)?;
        let n = self.n as usize;
        let m = self.n as u32;
        let diag: Vec<Cyclotomic> = (0..n).map(|i| Cyclotomic::root_of_unity(m, i as i64 * a)).collect();
        let shift: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let gens = [
            (self.a, CycMatrix::diagonal(&diag)),
            (self.b, CycMatrix::permutation(&shift)),
            (self.c, CycMatrix::scalar(n, &Cyclotomic::root_of_unity(m, a))),
        ];
        MatrixRep::from_generator_images(&self.group, &gens)
    }

    /// `ψ_a` on `T`: `A ↦ 1`, `C ↦ ξ^a`, the character `ρ_a` is induced from.
    pub fn psi(&self, t: &Subgroup, a: i64) -> Result<LinearCharacter> {
        self.check_a(a)?;
        let m = self.n as u32;
        let c_sub = t.locate(self.c).ok_or_else(|| FincharError::BadParameters("C is not in the subgroup".into()))?;
        let tg = t.group();
        // Every element of T is A^x C^z; read z off by peeling powers of C.
        let exps = (0..tg.order())
            .map(|i| {
                let mut z = 0u32;
                let mut y = i;
                while !is_power_of(tg, y, t.locate(self.a).expect("A in T")) {
                    y = tg.mul(y, tg.inv(c_sub));
                    z += 1;
                }
                ((z as i64 * a).rem_euclid(m as i64)) as u32
            })
            .collect();
        LinearCharacter::new(tg, m, exps)
    }
}

fn is_power_of(g: &Group, y: usize, base: usize) -> bool {
    let mut x = 0;
    loop {
        if x == y {
            return true;
        }
        x = g.mul(x, base);
        if x == 0 {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finchar::character::{inner_product, kth_power_equal};
    use crate::finchar::rep::{induce, twist_search};
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn group_structure() {
        let h = Heisenberg::new(3).unwrap();
        assert_eq!(h.group().order(), 27);
        assert_eq!(h.group().num_classes(), 11);
        assert!(h.relations_hold());
        assert_eq!(h.center().order(), 3);
        assert!(h.t_subgroup().is_normal());
        assert!(Heisenberg::new(4).is_err());
        assert!(Heisenberg::new(9).is_err());
        assert!(Heisenberg::new(5).unwrap().relations_hold());
    }

    #[test]
    fn representations() {
        let h = Heisenberg::new(3).unwrap();
        let r1 = h.rep(1).unwrap();
        let r2 = h.rep(2).unwrap();
        assert!(r1.verify_all_pairs());
        assert!(matches!(h.rep(3), Err(FincharError::BadParameters(_))));
        let (_, _, c) = h.generators();
        assert_eq!(r1.image(c), &CycMatrix::scalar(3, &Cyclotomic::root_of_unity(3, 1)));
        let chi1 = r1.character();
        let chi2 = r2.character();
        assert_eq!(inner_product(&chi1, &chi1).unwrap(), BigRational::one());
        assert_eq!(inner_product(&chi2, &chi2).unwrap(), BigRational::one());
        // Zero off the center, 3ξ^j on C^j.
        for x in 0..27 {
            let expected = if h.center().contains(x) {
                let j = (1..=3).find(|&j| h.group().pow(c, j) == x).unwrap() % 3;
                Cyclotomic::root_of_unity(3, j).scale(&BigRational::from_integer(3.into()))
            } else {
                Cyclotomic::zero()
            };
            assert_eq!(chi1.value(x), &expected);
        }
        assert!(kth_power_equal(&chi1, &chi2, 3).unwrap());
        assert!(!kth_power_equal(&chi1, &chi2, 1).unwrap());
        assert!(twist_search(&r1, &r2).unwrap().is_none());
    }

    #[test]
    fn rho_is_induced_from_psi() {
        let h = Heisenberg::new(3).unwrap();
        let t = h.t_subgroup();
        for a in [1, 2] {
            let psi = h.psi(&t, a).unwrap();
            let ind = induce(&t, &MatrixRep::linear(&psi)).unwrap();
            assert_eq!(ind.character(), h.rep(a).unwrap().character());
        }
    }
}
