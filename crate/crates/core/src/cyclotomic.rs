//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CycloNumber`] is an element of `Q(ζ_n)` written in the power basis
//! `1, ζ_n, ..., ζ_n^(φ(n)-1)` of `Q[x]/(Φ_n(x))`. Numbers with different
//! conductors can be freely combined: the operands are embedded into the
//! field of the least common multiple first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Units of `Z/nZ` in increasing order. For `n = 1` this is `[0]`, the
/// single element of the trivial ring.
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

fn moebius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial,
/// as the product of `(x^d - 1)^μ(n/d)` over the divisors `d` of `n`.
/// Multiplications are done before divisions so every step stays integral.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let deg_bound: usize = divisors
        .iter()
        .filter(|&&d| moebius(n / d) == 1)
        .map(|&d| d as usize)
        .sum();
    let mut poly = vec![0i64; deg_bound + 1];
    poly[0] = 1;
    let mut len = 1;
    for &d in divisors.iter().filter(|&&d| moebius(n / d) == 1) {
        // multiply by (x^d - 1) = -(1 - x^d)
        let d = d as usize;
        for i in (0..len + d).rev() {
            let shifted = if i >= d { poly[i - d] } else { 0 };
            poly[i] = shifted - poly[i];
        }
        len += d;
    }
    for &d in divisors.iter().filter(|&&d| moebius(n / d) == -1) {
        // divide by (x^d - 1): q[i] = q[i - d] - p[i] read low to high
        let d = d as usize;
        for i in 0..len - d {
            let prev = if i >= d { poly[i - d] } else { 0 };
            poly[i] = prev - poly[i];
        }
        for i in len - d..len {
            debug_assert_eq!(poly[i], if i >= d { poly[i - d] } else { 0 }, "division was not exact");
            poly[i] = 0;
        }
        len -= d;
    }
    poly.truncate(len);
    poly
}

/// Reduces a dense polynomial (constant term first) modulo `x^n - 1` and
/// then modulo `Φ_n`, returning exactly `φ(n)` coefficients.
fn reduce(mut poly: Vec<Rational>, n: u64) -> Vec<Rational> {
    let n_us = n as usize;
    if poly.len() > n_us {
        let tail = poly.split_off(n_us);
        for (i, c) in tail.into_iter().enumerate() {
            poly[i % n_us] += c;
        }
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..poly.len()).rev() {
        if poly[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[top], Rational::zero());
        for (j, &pj) in phi[..deg].iter().enumerate() {
            match pj {
                0 => {}
                1 => poly[top - deg + j] -= &c,
                -1 => poly[top - deg + j] += &c,
                _ => poly[top - deg + j] -= &c * Rational::from_integer(BigInt::from(pj)),
            }
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

/// Integer version of [`reduce`] for polynomials of degree below `2n`.
fn reduce_integral(mut poly: Vec<BigInt>, n: u64) -> Vec<BigInt> {
    let n_us = n as usize;
    if poly.len() > n_us {
        let tail = poly.split_off(n_us);
        for (i, c) in tail.into_iter().enumerate() {
            poly[i % n_us] += c;
        }
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..poly.len()).rev() {
        if poly[top].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut poly[top]);
        for (j, &pj) in phi[..deg].iter().enumerate() {
            match pj {
                0 => {}
                1 => poly[top - deg + j] -= &c,
                -1 => poly[top - deg + j] += &c,
                _ => poly[top - deg + j] -= &c * pj,
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

/// Product of two integer coefficient vectors reduced mod `Φ_n`, in `i128`;
/// `None` if an input does not fit in `i64` or an intermediate overflows.
fn small_product(a: &[BigInt], b: &[BigInt], n: u64) -> Option<Vec<i128>> {
    let a: Vec<i128> = a.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<_>>()?;
    let b: Vec<i128> = b.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<_>>()?;
    let n_us = n as usize;
    let mut poly = vec![0i128; n_us.max(a.len() + b.len() - 1)];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let k = (i + j) % n_us;
            poly[k] = poly[k].checked_add(x.checked_mul(y)?)?;
        }
    }
    poly.truncate(n_us);
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[top]);
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi[..deg].iter().enumerate() {
            if pj != 0 {
                let t = &mut poly[top - deg + j];
                *t = t.checked_sub(c.checked_mul(i128::from(pj))?)?;
            }
        }
    }
    poly.truncate(deg);
    Some(poly)
}

/// Writes rational coefficients as integers over a common denominator.
fn clear_denominators(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// An exact element of the cyclotomic field `Q(ζ_n)`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn new(conductor: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        let phi = euler_phi(conductor) as usize;
        if coeffs.len() != phi {
            return Err(Error::InvalidInput(format!(
                "conductor {conductor} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycloNumber { conductor, coeffs })
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        CycloNumber { conductor: 1, coeffs: vec![q] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n > 0);
        let exp = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); exp + 1];
        poly[exp] = Rational::one();
        CycloNumber { conductor: n, coeffs: reduce(poly, n) }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Same field element viewed in `Q(ζ_m)`; requires `conductor | m`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == 0 || m % self.conductor != 0 {
            return Err(Error::InvalidInput(format!(
                "cannot embed conductor {} into Q(zeta_{m})",
                self.conductor
            )));
        }
        Ok(self.embed_unchecked(m))
    }

    fn embed_unchecked(&self, m: u64) -> Self {
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        CycloNumber { conductor: m, coeffs: reduce(poly, m) }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.conductor.lcm(&other.conductor);
        (self.embed_unchecked(l), other.embed_unchecked(l))
    }

    /// Image under the automorphism `ζ_n ↦ ζ_n^k`.
    pub fn galois_conjugate(&self, k: i64) -> Result<Self> {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u64;
        if n > 1 && k.gcd(&n) != 1 {
            return Err(Error::NotCoprime { k: k as i64, modulus: n });
        }
        Ok(self.galois_unchecked(k))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        let n = self.conductor;
        if n <= 2 {
            return self.clone();
        }
        let mut poly = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = ((i as u64 * k) % n) as usize;
            poly[j] += c;
        }
        CycloNumber { conductor: n, coeffs: reduce(poly, n) }
    }

    /// Complex conjugate, i.e. `σ_{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.conductor - 1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Total order used for deterministic sorting: compare the coefficient
    /// vectors lexicographically in the common field.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl From<Rational> for CycloNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;

    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        if self.conductor == rhs.conductor {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CycloNumber { conductor: self.conductor, coeffs };
        }
        let (a, b) = self.aligned(rhs);
        &a + &b
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;

    fn add(self, rhs: CycloNumber) -> CycloNumber {
        &self + &rhs
    }
}

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;

    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self + &(-rhs)
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;

    fn sub(self, rhs: CycloNumber) -> CycloNumber {
        &self - &rhs
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;

    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;

    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = if self.conductor == rhs.conductor {
            (self.clone(), rhs.clone())
        } else {
            self.aligned(rhs)
        };
        let (an, ad) = clear_denominators(&a.coeffs);
        let (bn, bd) = clear_denominators(&b.coeffs);
        let den = &ad * &bd;
        if let Some(coeffs) = small_product(&an, &bn, a.conductor) {
            let coeffs = coeffs.into_iter().map(|c| Rational::new(c.into(), den.clone())).collect();
            return CycloNumber { conductor: a.conductor, coeffs };
        }
        let mut poly = vec![BigInt::zero(); an.len() + bn.len() - 1];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        let coeffs = reduce_integral(poly, a.conductor)
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect();
        CycloNumber { conductor: a.conductor, coeffs }
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;

    fn mul(self, rhs: CycloNumber) -> CycloNumber {
        &self * &rhs
    }
}

impl std::iter::Sum for CycloNumber {
    fn sum<I: Iterator<Item = CycloNumber>>(iter: I) -> Self {
        iter.fold(CycloNumber::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl fmt::Display for CycloNumber {
    /// GAP-style rendering: `E(n)^k` denotes `ζ_n^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let root = match i {
                0 => None,
                1 => Some(format!("E({})", self.conductor)),
                _ => Some(format!("E({})^{i}", self.conductor)),
            };
            match root {
                None => write!(f, "{abs}")?,
                Some(r) if abs.is_one() => write!(f, "{r}")?,
                Some(r) => write!(f, "{abs}*{r}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloNumber::new(repr.conductor, coeffs).map_err(D::Error::custom)
    }
}

/// Parses `"p"` or `"p/q"`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a fraction: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
