//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! A value is stored as a length-N coefficient vector in the group-ring
//! basis `1, zeta_N, ..., zeta_N^{N-1}`, which keeps character-sum code
//! one-to-one with sums over group elements. Reduction modulo the N-th
//! cyclotomic polynomial happens lazily, only when testing for zero.

use crate::error::{Error, Result};
use crate::exact::{rat_int, ApproxComplex, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

/// An element of Q(zeta_N), `level = N`.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    level: u64,
    /// Coefficient of `zeta_N^k` at index `k`; length == level.
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    /// `zeta_N^k` (k taken modulo N). Rejects N = 0.
    pub fn root(level: u64, k: i64) -> Result<Self> {
        if level == 0 {
            return Err(Error::BadParameter("cyclotomic level must be positive".into()));
        }
        let mut coeffs = vec![Rational::zero(); level as usize];
        let idx = k.rem_euclid(level as i64) as usize;
        coeffs[idx] = Rational::one();
        Ok(CycloNumber { level, coeffs })
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloNumber { level: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Lift into Q(zeta_M); M must be a multiple of the current level.
    pub fn lift(&self, target: u64) -> Result<Self> {
        if target % self.level != 0 {
            return Err(Error::BadParameter(format!(
                "cannot lift level {} to non-multiple {}",
                self.level, target
            )));
        }
        let step = (target / self.level) as usize;
        let mut coeffs = vec![Rational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Ok(CycloNumber { level: target, coeffs })
    }

    fn common_level(&self, other: &Self) -> u64 {
        self.level.lcm(&other.level)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Entry-wise complex conjugation: zeta^k -> zeta^{-k}.
    pub fn conj(&self) -> Self {
        let n = self.level as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - k) % n] = c.clone();
        }
        CycloNumber { level: self.level, coeffs }
    }

    /// True iff the value reduces to zero modulo the N-th cyclotomic
    /// polynomial.
    pub fn is_zero_exact(&self) -> bool {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return true;
        }
        let phi = cyclotomic_polynomial(self.level);
        poly_rem(&self.coeffs, &phi).iter().all(|c| c.is_zero())
    }

    /// The rational part if the value is rational, else `None`.
    pub fn as_rational(&self) -> Option<Rational> {
        let cand = self.coeffs[0].clone();
        let diff = self.clone() - CycloNumber::from_rational(cand.clone());
        if diff.is_zero_exact() {
            Some(cand)
        } else {
            None
        }
    }

    /// Numeric evaluation at zeta_N = exp(2 pi i / N).
    pub fn embed(&self) -> ApproxComplex {
        let n = self.level as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().expect("rational coefficient converts to f64");
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += x * theta.cos();
            im += x * theta.sin();
        }
        ApproxComplex::new(re, im)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero_exact()
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: CycloNumber) -> CycloNumber {
        let level = self.common_level(&rhs);
        let a = self.lift(level).expect("lcm lift");
        let b = rhs.lift(level).expect("lcm lift");
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycloNumber { level, coeffs }
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: CycloNumber) -> CycloNumber {
        self + (-rhs)
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            level: self.level,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: CycloNumber) -> CycloNumber {
        let level = self.common_level(&rhs);
        let a = self.lift(level).expect("lcm lift");
        let b = rhs.lift(level).expect("lcm lift");
        let n = level as usize;
        let mut coeffs = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                // zeta^N = 1, so exponents add modulo N
                coeffs[(i + j) % n] += x * y;
            }
        }
        CycloNumber { level, coeffs }
    }
}

impl Zero for CycloNumber {
    fn zero() -> Self {
        CycloNumber::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
}

impl One for CycloNumber {
    fn one() -> Self {
        CycloNumber::from_int(1)
    }
}

// --- cyclotomic polynomials -------------------------------------------------

/// Phi_N as a monic coefficient vector (index = degree), computed by
/// exact division of x^N - 1 by Phi_d over all proper divisors d of N.
fn cyclotomic_polynomial(n: u64) -> Vec<Rational> {
    let mut num = vec![Rational::zero(); n as usize + 1];
    num[0] = -Rational::one();
    num[n as usize] = Rational::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact quotient of polynomials known to divide evenly.
fn poly_div_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let (q, r) = poly_divmod(num, den);
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

fn poly_rem(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    poly_divmod(num, den).1
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = den
        .iter()
        .rposition(|c| !c.is_zero())
        .expect("division by zero polynomial");
    let mut rem: Vec<Rational> = num.to_vec();
    let mut quot = vec![Rational::zero(); num.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let f = &rem[i] / &den[dd];
        quot[i - dd] = f.clone();
        for j in 0..=dd {
            let t = &den[j] * &f;
            rem[i - dd + j] -= t;
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

// --- serde ------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CycloWire {
    level: u64,
    coeffs: Vec<[i64; 2]>,
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let n = c.numer().to_i64().ok_or_else(|| S::Error::custom("numerator out of i64 range"))?;
                let d = c.denom().to_i64().ok_or_else(|| S::Error::custom("denominator out of i64 range"))?;
                Ok([n, d])
            })
            .collect::<std::result::Result<Vec<_>, S::Error>>()?;
        CycloWire { level: self.level, coeffs }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = CycloWire::deserialize(de)?;
        if wire.level == 0 || wire.coeffs.len() != wire.level as usize {
            return Err(D::Error::custom("coeffs length must equal level"));
        }
        let coeffs = wire
            .coeffs
            .into_iter()
            .map(|[n, d]| {
                if d <= 0 {
                    return Err(D::Error::custom("denominator must be positive"));
                }
                Ok(Rational::new(BigInt::from(n), BigInt::from(d)))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(CycloNumber { level: wire.level, coeffs })
    }
}

impl std::fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{k}", self.level)?;
            } else {
                write!(f, "{c}*z{}^{k}", self.level)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{approx_eq, rat};
    use proptest::prelude::*;

    fn zeta(n: u64, k: i64) -> CycloNumber {
        CycloNumber::root(n, k).unwrap()
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(zeta(2, 1), CycloNumber::from_int(-1));
        assert_eq!(zeta(4, 2), CycloNumber::from_int(-1));
        let s = zeta(3, 0) + zeta(3, 1) + zeta(3, 2);
        assert!(s.is_zero_exact());
        assert!(CycloNumber::root(0, 1).is_err());
    }

    #[test]
    fn ring_arithmetic() {
        assert_eq!(zeta(4, 1) * zeta(4, 1), CycloNumber::from_int(-1));
        assert_eq!(zeta(8, 1) * zeta(8, 1), zeta(4, 1));
        // (1 + zeta_3)(1 + zeta_3^2) = 1 via 1 + zeta_3 + zeta_3^2 = 0
        let a = CycloNumber::one() + zeta(3, 1);
        let b = CycloNumber::one() + zeta(3, 2);
        assert_eq!(a * b, CycloNumber::one());
    }

    #[test]
    fn conjugation() {
        assert_eq!(zeta(4, 1).conj(), -zeta(4, 1));
        let r = CycloNumber::from_rational(rat(7, 3));
        assert_eq!(r.conj(), r);
        let a = CycloNumber::one() + zeta(4, 1);
        assert_eq!(a.clone() * a.conj(), CycloNumber::from_int(2));
    }

    #[test]
    fn complex_embedding() {
        let i = zeta(4, 1).embed();
        assert!(approx_eq(i, ApproxComplex::new(0.0, 1.0), 1e-12).unwrap());
        let e8 = zeta(8, 1).embed();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(approx_eq(e8, ApproxComplex::new(s, s), 1e-12).unwrap());
        let m1 = CycloNumber::from_int(-1).embed();
        assert!(approx_eq(m1, ApproxComplex::new(-1.0, 0.0), 1e-12).unwrap());
        let sum = zeta(3, 1) + zeta(3, 2);
        assert!(approx_eq(sum.embed(), ApproxComplex::new(-1.0, 0.0), 1e-9).unwrap());
    }

    #[test]
    fn roundtrip_serde() {
        let a = zeta(6, 5) + CycloNumber::from_rational(rat(1, 2));
        let json = serde_json::to_string(&a).unwrap();
        let b: CycloNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zeta_powers_wrap() {
        for n in 1..=12u64 {
            let mut acc = CycloNumber::one();
            for _ in 0..n {
                acc = acc * zeta(n, 1);
            }
            assert_eq!(acc, CycloNumber::one(), "zeta_{n}^{n} != 1");
            if n > 1 {
                let total: CycloNumber = (0..n as i64)
                    .map(|k| zeta(n, k))
                    .fold(CycloNumber::zero(), |a, b| a + b);
                assert!(total.is_zero_exact(), "sum of all {n}-th roots != 0");
            }
        }
    }

    proptest! {
        #[test]
        fn conj_is_ring_homomorphism(n in 1u64..12, i in 0i64..12, j in 0i64..12,
                                     a in -5i64..5, b in -5i64..5) {
            let x = zeta(n, i).scale(&rat_int(a)) + CycloNumber::one();
            let y = zeta(n, j).scale(&rat_int(b)) - zeta(n, i + j);
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.clone().conj() * y.conj());
            prop_assert_eq!(x.clone().conj().conj(), x);
        }
    }
}
