//! Finite fields GF(p^m) of odd characteristic with a fixed element
//! enumeration, discrete-log table, additive characters, and the
//! permutation representation of the additive group.
//!
//! Elements are enumerated lexicographically on the coefficient tuple
//! (c_{m-1},...,c_0), zero first, so every matrix indexed "by the
//! elements of F_q" is byte-reproducible. The modulus is the lex-first
//! monic irreducible polynomial of degree m.

use crate::error::{Error, Result};
use crate::exact::CycloNumber;
use crate::matrix::{structured, IntMatrix, StructuredKind};
use serde::{Deserialize, Serialize};

/// An element of GF(p^m): coefficients of the residue representative,
/// `coeffs[i]` the coefficient of x^i, each in {0,...,p-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// GF(p^m) with precomputed enumeration and discrete-log tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, `modulus[i]` the coefficient of x^i, length m+1.
    modulus: Vec<u64>,
    generator: FieldElem,
    /// dlog[idx] = e with generator^e = element idx; None for zero.
    dlog: Vec<Option<u64>>,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> &FieldElem {
        &self.generator
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.m as usize] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        FieldElem { coeffs }
    }

    /// Enumeration index: sum of c_i p^i (lex on (c_{m-1},...,c_0)).
    pub fn index(&self, a: &FieldElem) -> usize {
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx as usize
    }

    pub fn element(&self, idx: usize) -> FieldElem {
        debug_assert!(idx < self.q as usize);
        let mut coeffs = vec![0; self.m as usize];
        let mut v = idx as u64;
        for c in coeffs.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        FieldElem { coeffs }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q as usize).map(|i| self.element(i))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FieldElem { coeffs }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElem { coeffs }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let prod = poly_mul_mod_p(&a.coeffs, &b.coeffs, self.p);
        let red = poly_rem_mod_p(&prod, &self.modulus, self.p);
        let mut coeffs = vec![0; self.m as usize];
        coeffs[..red.len()].copy_from_slice(&red);
        FieldElem { coeffs }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.index(a) == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn dlog(&self, a: &FieldElem) -> Result<u64> {
        self.dlog[self.index(a)].ok_or(Error::DlogOfZero)
    }

    /// Permutation representation of the additive group:
    /// phi(a) = tensor product over coordinates of Shift(p)^{a_i}, with
    /// the most significant enumeration digit as the leftmost factor.
    pub fn phi_rep(&self, a: &FieldElem) -> IntMatrix {
        let up = structured(StructuredKind::Shift, self.p as usize);
        let mut out = IntMatrix::identity(1);
        for &c in a.coeffs.iter().rev() {
            out = out.kron(&up.pow(c).expect("permutation power"));
        }
        out
    }

    /// Additive character chi_alpha(gamma) = zeta_p^{<alpha,gamma>} with
    /// the dot product on coefficient vectors.
    pub fn add_character(&self, alpha: &FieldElem, gamma: &FieldElem) -> CycloNumber {
        let dot: u64 = alpha
            .coeffs
            .iter()
            .zip(gamma.coeffs.iter())
            .map(|(a, g)| a * g % self.p)
            .sum::<u64>()
            % self.p;
        CycloNumber::root(self.p, dot as i64).expect("p >= 1")
    }
}

/// Character of the cyclic group Z_order: zeta_order^{alpha*beta}.
pub fn cyclic_character(order: u64, alpha: i64, beta: i64) -> CycloNumber {
    CycloNumber::root(order, alpha.wrapping_mul(beta)).expect("order >= 1")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Build GF(p^m) for an odd prime p. The modulus is the lex-first monic
/// irreducible of degree m; the generator is the first element in
/// enumeration order of multiplicative order q-1.
pub fn build_field(p: u64, m: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::BadParameter("characteristic 2 is out of scope".into()));
    }
    if m == 0 {
        return Err(Error::BadParameter("extension degree must be >= 1".into()));
    }
    let q = p.checked_pow(m).ok_or(Error::Overflow)?;

    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        find_lex_first_irreducible(p, m)?
    };
    if m > 1 && !is_irreducible(&modulus, p) {
        return Err(Error::VerificationFailed("modulus failed irreducibility re-check".into()));
    }

    let mut spec = FieldSpec {
        p,
        m,
        q,
        modulus,
        generator: FieldElem { coeffs: vec![0; m as usize] },
        dlog: vec![None; q as usize],
    };

    // first element in enumeration order with multiplicative order q-1
    let mut found = false;
    'search: for idx in 1..q as usize {
        let g = spec.element(idx);
        let mut acc = g.clone();
        for e in 1..q - 1 {
            if spec.index(&acc) == 1 {
                continue 'search; // order e < q-1
            }
            let _ = e;
            acc = spec.mul(&acc, &g);
        }
        if spec.index(&acc) == 1 {
            spec.generator = g;
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::VerificationFailed("no primitive element found".into()));
    }

    let mut acc = spec.one();
    for e in 0..q - 1 {
        let idx = spec.index(&acc);
        if spec.dlog[idx].is_some() {
            return Err(Error::VerificationFailed("generator order defect".into()));
        }
        spec.dlog[idx] = Some(e);
        acc = spec.mul(&acc, &spec.generator);
    }
    Ok(spec)
}

// --- polynomial arithmetic over F_p ----------------------------------------

fn poly_mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_rem_mod_p(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let md = poly_deg(modulus).expect("nonzero modulus");
    let lead_inv = mod_inv(modulus[md], p);
    let mut rem = a.to_vec();
    for i in (md..rem.len()).rev() {
        if rem[i] == 0 {
            continue;
        }
        let f = rem[i] * lead_inv % p;
        for j in 0..=md {
            let sub = f * modulus[j] % p;
            rem[i - md + j] = (rem[i - md + j] + p - sub) % p;
        }
    }
    rem.truncate(md);
    rem
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn poly_gcd_deg(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    loop {
        match poly_deg(&y) {
            None => return poly_deg(&x).unwrap_or(0),
            Some(_) => {
                let r = poly_rem_mod_p(&x, &y, p);
                x = y;
                y = r;
            }
        }
    }
}

/// Irreducibility over F_p via gcd(f, x^{p^k} - x) for k <= deg/2,
/// which subsumes the root check (k = 1 catches linear factors).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match poly_deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    for k in 1..=d / 2 {
        // x^{p^k} mod f by repeated Frobenius
        let mut xp = vec![0u64, 1]; // x
        for _ in 0..k {
            xp = poly_pow_mod(&xp, p, f, p);
        }
        // xp - x
        let mut g = xp;
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        if poly_deg(&g).is_none() {
            return false; // f splits over GF(p^k)
        }
        if poly_gcd_deg(f, &g, p) > 0 {
            return false;
        }
    }
    true
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem_mod_p(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem_mod_p(&poly_mul_mod_p(&acc, &b, p), modulus, p);
        }
        b = poly_rem_mod_p(&poly_mul_mod_p(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

fn find_lex_first_irreducible(p: u64, m: u32) -> Result<Vec<u64>> {
    let count = p.pow(m);
    for idx in 0..count {
        // idx encodes (c_{m-1},...,c_0) with c_{m-1} most significant
        let mut coeffs = vec![0u64; m as usize + 1];
        coeffs[m as usize] = 1;
        let mut v = idx;
        for i in 0..m as usize {
            coeffs[i] = v % p;
            v /= p;
        }
        if is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    Err(Error::VerificationFailed(format!("no irreducible polynomial of degree {m} over F_{p}")))
}

// JSON wire format per the external interface: modulus as [c0,...,cm].
#[derive(Serialize, Deserialize)]
pub struct FieldSpecWire {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u64>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecWire { p: self.p, m: self.m, modulus: self.modulus.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = FieldSpecWire::deserialize(de)?;
        let spec = build_field(w.p, w.m).map_err(serde::de::Error::custom)?;
        if spec.modulus != w.modulus {
            return Err(serde::de::Error::custom("non-canonical modulus in serialized field"));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn modulus_selection() {
        // x^2 + 1 irreducible over F_3 (-1 is a non-square)
        let f9 = build_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // x^2 + 1 reducible over F_5 (4 = 2^2), lex-first is x^2 + 2
        let f25 = build_field(5, 2).unwrap();
        assert_eq!(f25.modulus(), &[2, 0, 1]);
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(f7.index(f7.generator()), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(build_field(6, 1), Err(Error::NotPrime(6))));
        assert!(build_field(2, 3).is_err());
        assert!(build_field(3, 0).is_err());
    }

    #[test]
    fn gf9_arithmetic() {
        let f = build_field(3, 2).unwrap();
        // x * x = -1 = 2 since x^2 = -1 mod (x^2+1)
        let x = f.element(3); // coeffs (0,1) -> index 3
        assert_eq!(x.coeffs(), &[0, 1]);
        let sq = f.mul(&x, &x);
        assert_eq!(sq, f.from_int(2));
        for a in f.elements() {
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        }
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn dlog_table() {
        let f = build_field(7, 1).unwrap();
        assert_eq!(f.dlog(&f.one()).unwrap(), 0);
        assert_eq!(f.dlog(f.generator()).unwrap(), 1);
        // 3^3 = 27 = 6 mod 7
        assert_eq!(f.dlog(&f.from_int(6)).unwrap(), 3);
        assert!(f.dlog(&f.zero()).is_err());
        for a in f.elements().skip(1) {
            for b in f.elements().skip(1) {
                let lhs = f.dlog(&f.mul(&a, &b)).unwrap();
                let rhs = (f.dlog(&a).unwrap() + f.dlog(&b).unwrap()) % (f.q() - 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dlog_of_minus_one() {
        for (p, m) in [(3, 1), (7, 1), (3, 2), (5, 2), (3, 3)] {
            let f = build_field(p, m).unwrap();
            assert_eq!(f.dlog(&f.from_int(-1)).unwrap(), (f.q() - 1) / 2);
        }
    }

    #[test]
    fn phi_is_permutation_homomorphism() {
        let f = build_field(3, 2).unwrap();
        assert_eq!(f.phi_rep(&f.zero()), IntMatrix::identity(9));
        for a in f.elements() {
            let pa = f.phi_rep(&a);
            assert!(pa.is_zero_one());
            assert_eq!(pa.mul(&pa.transpose()).unwrap(), IntMatrix::identity(9));
            assert_eq!(pa.transpose(), f.phi_rep(&f.neg(&a)));
            for b in f.elements() {
                let pb = f.phi_rep(&b);
                assert_eq!(pa.mul(&pb).unwrap(), f.phi_rep(&f.add(&a, &b)));
            }
        }
        let f3 = build_field(3, 1).unwrap();
        let sum = f3
            .elements()
            .map(|a| f3.phi_rep(&a))
            .try_fold(IntMatrix::zeros(3, 3), |acc, m| acc.add(&m))
            .unwrap();
        assert_eq!(sum, IntMatrix::all_ones(3));
    }

    #[test]
    fn characters() {
        let f = build_field(3, 1).unwrap();
        for g in f.elements() {
            assert_eq!(f.add_character(&f.zero(), &g), CycloNumber::one());
        }
        // chi_1(2) = zeta_3^2
        assert_eq!(
            f.add_character(&f.from_int(1), &f.from_int(2)),
            CycloNumber::root(3, 2).unwrap()
        );
        let f9 = build_field(3, 2).unwrap();
        for alpha in f9.elements().skip(1) {
            let total = f9
                .elements()
                .map(|g| f9.add_character(&alpha, &g))
                .fold(CycloNumber::zero(), |a, b| a + b);
            assert!(total.is_zero_exact());
        }
    }

    #[test]
    fn cyclic_character_table_orthogonality() {
        use crate::exact::CycloNumber;
        // K K^T = 2m I for Z_4
        let order = 4i64;
        for a in 0..order {
            for b in 0..order {
                let dot = (0..order)
                    .map(|k| cyclic_character(4, a, k) * cyclic_character(4, k, b))
                    .fold(CycloNumber::zero(), |x, y| x + y);
                if a + b == 0 || a + b == order {
                    assert_eq!(dot, CycloNumber::from_int(4));
                } else {
                    assert!(dot.is_zero_exact(), "K K^T off-diagonal ({a},{b}) nonzero");
                }
            }
        }
        assert_eq!(cyclic_character(4, 2, 1), CycloNumber::from_int(-1));
        for a in 0..6 {
            assert_eq!(cyclic_character(6, 0, a), CycloNumber::one());
        }
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn field_laws_gf9(a in 0usize..9, b in 0usize..9, c in 0usize..9) {
            let f = build_field(3, 2).unwrap();
            let (a, b, c) = (f.element(a), f.element(b), f.element(c));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            if !(a == f.zero()) {
                let inv = f.inv(&a).unwrap();
                prop_assert_eq!(f.mul(&a, &inv), f.one());
                prop_assert_eq!(f.pow(&f.generator(), f.dlog(&a).unwrap()), a);
            }
        }

        #[test]
        fn additive_characters_are_homomorphisms(
            alpha in 0usize..25, b in 0usize..25, c in 0usize..25
        ) {
            let f = build_field(5, 2).unwrap();
            let (alpha, b, c) = (f.element(alpha), f.element(b), f.element(c));
            let lhs = f.add_character(&alpha, &f.add(&b, &c));
            let rhs = f.add_character(&alpha, &b) * f.add_character(&alpha, &c);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
