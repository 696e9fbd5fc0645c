//! Exact elements of cyclotomic fields `Q(ζ_m)`.
//!
//! A value is stored as rational coefficients in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}`, reduced modulo the `m`-th cyclotomic polynomial,
//! which makes equality a coefficient comparison. Values with different
//! conductors are lifted to the least common multiple before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{FincharError, Result};

struct Field {
    phi: usize,
    poly: Vec<i64>,
    /// `powers[k]` is `x^k mod Φ_m`, for `0 <= k < m`.
    powers: Vec<Vec<i64>>,
}

static FIELDS: LazyLock<RwLock<HashMap<u32, Arc<Field>>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

fn field(m: u32) -> Arc<Field> {
    if let Some(f) = FIELDS.read().expect("field cache").get(&m) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(m);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..m {
        powers.push(cur.clone());
        // Multiply by x, then fold the overflow term back with the monic polynomial.
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    let f = Arc::new(Field { phi, poly, powers });
    FIELDS.write().expect("field cache").insert(m, f.clone());
    f
}

fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    if let Some(f) = FIELDS.read().expect("field cache").get(&m) {
        return f.poly.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = divide_monic(&p, &field(d).poly);
        }
    }
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![q] }
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m > 0, "conductor must be positive");
        let f = field(m);
        let e = k.rem_euclid(m as i64) as usize;
        Cyclotomic {
            conductor: m,
            coeffs: f.powers[e].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    /// `Σ counts[e] ζ_m^e`: a sum of roots of unity with integer weights.
    pub fn from_exponent_counts(m: u32, counts: &[i64]) -> Self {
        let f = field(m);
        let mut acc = vec![0i64; f.phi];
        for (e, &n) in counts.iter().enumerate() {
            if n != 0 {
                for (a, &p) in acc.iter_mut().zip(&f.powers[e % m as usize]) {
                    *a += n * p;
                }
            }
        }
        Cyclotomic { conductor: m, coeffs: acc.into_iter().map(|c| BigRational::from_integer(c.into())).collect() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Rational value or `NonRationalResult`.
    pub fn expect_rational(&self) -> Result<BigRational> {
        self.to_rational().ok_or_else(|| FincharError::NonRationalResult(self.to_string()))
    }

    /// Coefficients in the power basis of `Q(ζ_big)`; `big` must be a multiple
    /// of the conductor.
    pub fn lifted_coeffs(&self, big: u32) -> Vec<BigRational> {
        assert_eq!(big % self.conductor, 0, "lift target must be a multiple of the conductor");
        if big == self.conductor {
            return self.coeffs.clone();
        }
        let f = field(big);
        let step = (big / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[(i * step) % big as usize]) {
                if p != 0 {
                    *o += c * BigRational::from_integer(p.into());
                }
            }
        }
        out
    }

    pub fn lift(&self, big: u32) -> Self {
        Cyclotomic { conductor: big, coeffs: self.lifted_coeffs(big) }
    }

    fn common(a: &Self, b: &Self) -> u32 {
        a.conductor.lcm(&b.conductor)
    }

    fn reduce_exponents(m: u32, acc: Vec<BigRational>) -> Self {
        let f = field(m);
        let mut out = vec![BigRational::zero(); f.phi];
        for (e, c) in acc.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *o += &c * BigRational::from_integer(p.into());
                }
            }
        }
        Cyclotomic { conductor: m, coeffs: out }
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let m = self.conductor as usize;
        let mut acc = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[(m - i) % m] += c;
        }
        Self::reduce_exponents(self.conductor, acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `z · conj(z)`.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// `Some(e)` with `self = ζ_n^e`, searching `n = lcm(2, conductor)`.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        let n = self.conductor.lcm(&2);
        (0..n).find(|&e| Self::root_of_unity(n, e as i64) == *self).map(|e| (n, e))
    }

    /// Parses `q0 + q1*z^1 + ...` with `z` a primitive `m`-th root of unity.
    pub fn parse(m: u32, text: &str) -> Result<Self> {
        if m == 0 {
            return Err(FincharError::Parse("conductor must be positive".into()));
        }
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(FincharError::Parse("empty cyclotomic literal".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = vec![BigRational::zero(); m as usize];
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(&term).to_string();
            let bad = || FincharError::Parse(format!("bad term `{term}` in `{text}`"));
            let (coef, exp) = match term.find('z') {
                None => (parse_rational(&term).ok_or_else(bad)?, 0i64),
                Some(pos) => {
                    let head = term[..pos].trim_end_matches('*');
                    let coef = match head {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        h => parse_rational(h).ok_or_else(bad)?,
                    };
                    let tail = &term[pos + 1..];
                    let exp = match tail {
                        "" => 1,
                        t => t.strip_prefix('^').and_then(|e| e.parse::<i64>().ok()).ok_or_else(bad)?,
                    };
                    (coef, exp)
                }
            };
            acc[exp.rem_euclid(m as i64) as usize] += coef;
        }
        Ok(Self::reduce_exponents(m, acc))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let m = Self::common(self, other);
        self.lifted_coeffs(m) == other.lifted_coeffs(m)
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let m = Cyclotomic::common(self, rhs);
        let a = self.lifted_coeffs(m);
        let b = rhs.lifted_coeffs(m);
        Cyclotomic { conductor: m, coeffs: a.into_iter().zip(b).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        let m = Cyclotomic::common(self, rhs);
        let a = self.lifted_coeffs(m);
        let b = rhs.lifted_coeffs(m);
        let mut acc = vec![BigRational::zero(); m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[(i + j) % m as usize] += x * y;
                }
            }
        }
        Cyclotomic::reduce_exponents(m, acc)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (_, true) => format!("z^{i}"),
                (_, false) => format!("{mag}*z^{i}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclotomicRepr {
    conductor: u32,
    value: String,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr { conductor: self.conductor, value: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CyclotomicRepr::deserialize(d)?;
        Cyclotomic::parse(r.conductor, &r.value).map_err(serde::de::Error::custom)
    }
}
