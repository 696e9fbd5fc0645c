//! Square matrices over cyclotomic fields.

use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclotomic;
use super::{FincharError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    n: usize,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zeros(n: usize) -> Self {
        CycMatrix { n, data: vec![Cyclotomic::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Cyclotomic::one())
    }

    pub fn scalar(n: usize, s: &Cyclotomic) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn diagonal(entries: &[Cyclotomic]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(FincharError::Parse("matrix is not square".into()));
        }
        Ok(CycMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = Cyclotomic::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        let t = a * b;
                        out.data[i * n + j] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        CycMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        CycMatrix { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for i in 0..self.n {
            t += &self.data[i * self.n + i];
        }
        t
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let x = &self.data[i * a + j];
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        let y = &other.data[k * b + l];
                        if !y.is_zero() {
                            out.data[(i * b + k) * n + (j * b + l)] = x * y;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.data[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && (1..self.n).all(|i| self.get(i, i) == self.get(0, 0))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }
}

impl Serialize for CycMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic>>::deserialize(d)?;
        CycMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_identities() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let d = CycMatrix::diagonal(&[Cyclotomic::one(), z.clone(), z.pow(2)]);
        let p = CycMatrix::permutation(&[1, 2, 0]);
        assert_eq!(d.mul(&CycMatrix::identity(3)), d);
        assert_eq!(p.mul(&p).mul(&p), CycMatrix::identity(3));
        assert!(d.trace().is_zero());
        assert!(!d.commutes_with(&p));
        assert_eq!(d.kron(&p).trace(), d.trace() * p.trace());
        assert_eq!(d.direct_sum(&p).trace(), &d.trace() + &p.trace());
        assert!(CycMatrix::scalar(2, &z).is_scalar());
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<CycMatrix>(&js).unwrap(), d);
    }
}
