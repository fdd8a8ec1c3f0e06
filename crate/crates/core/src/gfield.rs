//! Exact GF(p^k) arithmetic with a deterministically chosen modulus.
//!
//! Elements are coefficient vectors over GF(p) reduced modulo the
//! lexicographically least monic irreducible polynomial of degree k, so a
//! field of a given order is byte-for-byte identical across runs. Elements
//! hold a reference to their field; mixing fields in arithmetic is a hard
//! error, not a coercion.

use serde_json::json;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the desk-scale limit 10^6")]
    TooLarge(u128),
    #[error("field order {order} is not {q}^{exp} for the requested norm")]
    OrderMismatch { order: u64, q: u64, exp: u32 },
    #[error("{d} does not divide the unit group order {units}")]
    NotADivisor { d: u64, units: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
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

/// Factors `q = p^k` with p prime, or reports that q is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, usize), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            return if rest == 1 {
                Ok((p, k))
            } else {
                Err(FieldError::NotPrimePower(q))
            };
        }
        p += 1;
    }
    Ok((q, 1))
}

#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic irreducible of degree k, coefficients low to high, length k+1.
    modulus: Vec<u64>,
}

pub type Field = Arc<FiniteField>;

impl FiniteField {
    /// Builds GF(p^k) with the lexicographically least monic irreducible
    /// modulus, ordering candidates by the integer value of their lower
    /// coefficients in base p.
    pub fn new(p: u64, k: usize) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u128).pow(k as u32);
        if order > 1_000_000 {
            return Err(FieldError::TooLarge(order));
        }
        let modulus = least_irreducible(p, k);
        Ok(Arc::new(FiniteField { p, k, modulus }))
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        let (p, k) = prime_power(q)?;
        FiniteField::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn table_json(&self) -> serde_json::Value {
        let q = self.order();
        let table = |op: &dyn Fn(u64, u64) -> u64| -> Vec<Vec<u64>> {
            (0..q)
                .map(|a| (0..q).map(|b| op(a, b)).collect())
                .collect()
        };
        json!({
            "p": self.p,
            "k": self.k,
            "modulus": self.modulus,
            "add": table(&|a, b| self.raw_add(a, b)),
            "mul": table(&|a, b| self.raw_mul(a, b)),
        })
    }

    fn raw_add(&self, a: u64, b: u64) -> u64 {
        value_of(
            &add_coeffs(&coeffs_of(a, self.p, self.k), &coeffs_of(b, self.p, self.k), self.p),
            self.p,
        )
    }

    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        value_of(
            &mul_coeffs(
                &coeffs_of(a, self.p, self.k),
                &coeffs_of(b, self.p, self.k),
                self.p,
                &self.modulus,
            ),
            self.p,
        )
    }
}

fn coeffs_of(mut value: u64, p: u64, k: usize) -> Vec<u64> {
    let mut c = vec![0u64; k];
    for slot in c.iter_mut() {
        *slot = value % p;
        value /= p;
    }
    c
}

fn value_of(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn add_coeffs(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

fn mul_coeffs(a: &[u64], b: &[u64], p: u64, modulus: &[u64]) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce modulo the monic modulus.
    for d in (k..2 * k - 1).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..k {
            let sub = (c * modulus[i]) % p;
            prod[d - k + i] = (prod[d - k + i] + p * p - sub) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// Polynomial remainder of `a` by monic `m` over GF(p); coefficients low to
/// high, empty vec for the zero polynomial.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a: Vec<u64> = a.to_vec();
    while let Some(&lead) = a.last() {
        if lead == 0 {
            a.pop();
            continue;
        }
        if a.len() < m.len() {
            break;
        }
        let shift = a.len() - m.len();
        let c = lead;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c * mi) % p;
            a[shift + i] = (a[shift + i] + p * p - sub) % p;
        }
    }
    a
}

fn is_irreducible(candidate: &[u64], p: u64) -> bool {
    let k = candidate.len() - 1;
    // Trial division by all monic polynomials of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for tail in 0..count {
            let mut div = coeffs_of(tail, p, d);
            div.push(1);
            if poly_rem(candidate, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    for tail_value in 0..p.pow(k as u32) {
        let mut m = coeffs_of(tail_value, p, k);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value().cmp(&other.value())
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Integer encoding sum(c_i * p^i); a total order used for all
    /// deterministic tie-breaking in the constructions.
    pub fn value(&self) -> u64 {
        value_of(&self.coeffs, self.field.p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut result = one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert!(
            *self.field == *other.field,
            "cross-field arithmetic is not defined"
        );
    }
}

pub fn element(field: &Field, coeffs: Vec<u64>) -> FieldElement {
    assert_eq!(coeffs.len(), field.k, "coefficient vector has wrong length");
    let coeffs = coeffs.iter().map(|&c| c % field.p).collect();
    FieldElement {
        field: field.clone(),
        coeffs,
    }
}

pub fn from_value(field: &Field, value: u64) -> FieldElement {
    assert!(value < field.order());
    FieldElement {
        field: field.clone(),
        coeffs: coeffs_of(value, field.p, field.k),
    }
}

pub fn zero(field: &Field) -> FieldElement {
    from_value(field, 0)
}

pub fn one(field: &Field) -> FieldElement {
    from_value(field, 1)
}

/// All field elements in value order.
pub fn elements(field: &Field) -> Vec<FieldElement> {
    (0..field.order()).map(|v| from_value(field, v)).collect()
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: add_coeffs(&self.coeffs, &rhs.coeffs, self.field.p),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.field.p;
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: mul_coeffs(&self.coeffs, &rhs.coeffs, self.field.p, &self.field.modulus),
        }
    }
}

/// The norm from a field of order q^(s-1) down to GF(q):
/// `N(A) = A^(1 + q + ... + q^(s-2))`. Multiplicative, surjective onto
/// GF(q)^* on nonzero elements, with fibers of size (q^(s-1)-1)/(q-1).
pub fn norm_map(a: &FieldElement, s: u32, q: u64) -> Result<FieldElement, FieldError> {
    if s < 2 {
        return Err(FieldError::OrderMismatch {
            order: a.field.order(),
            q,
            exp: s.saturating_sub(1),
        });
    }
    let order = a.field.order();
    let expected = (q as u128).pow(s - 1);
    if expected != order as u128 {
        return Err(FieldError::OrderMismatch {
            order,
            q,
            exp: s - 1,
        });
    }
    let exponent: u64 = (0..s - 1).map(|i| q.pow(i)).sum();
    Ok(a.pow(exponent))
}

/// Elements of the subfield of order q, identified by x^q = x, in value
/// order.
pub fn subfield_elements(field: &Field, q: u64) -> Vec<FieldElement> {
    let sub: Vec<FieldElement> = elements(field)
        .into_iter()
        .filter(|x| x.pow(q) == *x)
        .collect();
    assert_eq!(sub.len() as u64, q, "subfield of order {q} not present");
    sub
}

/// The unique multiplicative subgroup of order d (for d dividing q-1),
/// as elements sorted by value. Always contains 1.
pub fn unit_subgroup(field: &Field, d: u64) -> Result<Vec<FieldElement>, FieldError> {
    let units = field.order() - 1;
    if d == 0 || units % d != 0 {
        return Err(FieldError::NotADivisor { d, units });
    }
    // Least primitive element by value; deterministic generator choice.
    let generator = elements(field)
        .into_iter()
        .filter(|x| !x.is_zero())
        .find(|x| multiplicative_order(x) == units)
        .expect("the unit group of a finite field is cyclic");
    let step = units / d;
    let mut sub: Vec<FieldElement> = (0..d).map(|i| generator.pow(step * i)).collect();
    sub.sort();
    Ok(sub)
}

fn multiplicative_order(x: &FieldElement) -> u64 {
    let mut acc = x.clone();
    let mut ord = 1;
    let one_el = one(x.field());
    while acc != one_el {
        acc = &acc * x;
        ord += 1;
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn gf3_arithmetic() {
        let f = FiniteField::new(3, 1).unwrap();
        let one_ = one(&f);
        let two = from_value(&f, 2);
        assert!((&one_ + &two).is_zero());
        assert_eq!(&two * &two, one_);
    }

    #[test]
    fn gf8_unit_group_order() {
        let f = FiniteField::new(2, 3).unwrap();
        for x in elements(&f) {
            if !x.is_zero() {
                assert_eq!(x.pow(7), one(&f));
            }
        }
        // Least irreducible for GF(8): x^3 + x + 1.
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn gf9_frobenius_fixes_prime_field() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]); // x^2 + 1
        let fixed: Vec<u64> = elements(&f)
            .into_iter()
            .filter(|x| x.pow(3) == *x)
            .map(|x| x.value())
            .collect();
        assert_eq!(fixed, vec![0, 1, 2]);
    }

    #[test]
    fn norm_is_identity_for_s2() {
        let f = FiniteField::new(5, 1).unwrap();
        for x in elements(&f) {
            assert_eq!(norm_map(&x, 2, 5).unwrap(), x);
        }
    }

    #[test]
    fn norm_fibers_on_gf9() {
        // q=3, s=3: N(A) = A^4 maps GF(9)^* onto GF(3)^* four-to-one.
        let f = FiniteField::new(3, 2).unwrap();
        let mut hits = std::collections::HashMap::new();
        for x in elements(&f) {
            if x.is_zero() {
                continue;
            }
            let n = norm_map(&x, 3, 3).unwrap();
            assert_eq!(n.pow(3), n, "norm must land in the base subfield");
            *hits.entry(n.value()).or_insert(0u32) += 1;
        }
        assert_eq!(hits.len(), 2);
        assert!(hits.values().all(|&c| c == 4));
    }

    #[test]
    fn norm_is_multiplicative_on_gf25() {
        let f = FiniteField::new(5, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = from_value(&f, rng.gen_range(0..25));
            let b = from_value(&f, rng.gen_range(0..25));
            let lhs = norm_map(&(&a * &b), 3, 5).unwrap();
            let rhs = &norm_map(&a, 3, 5).unwrap() * &norm_map(&b, 3, 5).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn subgroups() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let vals: Vec<u64> = unit_subgroup(&f5, 2).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(vals, vec![1, 4]);

        let f7 = FiniteField::new(7, 1).unwrap();
        let vals: Vec<u64> = unit_subgroup(&f7, 3).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(vals, vec![1, 2, 4]);

        let f9 = FiniteField::new(3, 2).unwrap();
        let sub = unit_subgroup(&f9, 4).unwrap();
        assert_eq!(sub.len(), 4);
        for x in &sub {
            assert_eq!(x.pow(4), one(&f9));
        }
        assert!(unit_subgroup(&f9, 3).is_err());
    }

    #[test]
    fn subgroup_closed_under_mul_and_inverse() {
        let f = FiniteField::new(13, 1).unwrap();
        let sub = unit_subgroup(&f, 4).unwrap();
        for a in &sub {
            assert!(sub.contains(&a.inverse().unwrap()));
            for b in &sub {
                assert!(sub.contains(&(a * b)));
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for &(p, k) in &[(2u64, 4usize), (3, 2), (5, 2), (7, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            for _ in 0..200 {
                let a = from_value(&f, rng.gen_range(0..q));
                let b = from_value(&f, rng.gen_range(0..q));
                let c = from_value(&f, rng.gen_range(0..q));
                assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&a - &a, zero(&f));
                if !a.is_zero() {
                    assert_eq!(&a * &a.inverse().unwrap(), one(&f));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert!(FiniteField::new(2, 0).is_err());
        assert!(FiniteField::new(101, 4).is_err()); // 101^4 > 10^6
        assert!(prime_power(12).is_err());
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(17).unwrap(), (17, 1));
    }

    #[test]
    #[should_panic(expected = "cross-field")]
    fn cross_field_panics() {
        let f1 = FiniteField::new(3, 1).unwrap();
        let f2 = FiniteField::new(5, 1).unwrap();
        let _ = &one(&f1) + &one(&f2);
    }

    #[test]
    fn norm_rejects_wrong_order() {
        let f = FiniteField::new(3, 2).unwrap();
        assert!(norm_map(&one(&f), 3, 2).is_err());
    }

    #[test]
    fn table_dump_shape() {
        let f = FiniteField::new(2, 2).unwrap();
        let v = f.table_json();
        assert_eq!(v["p"], 2);
        assert_eq!(v["mul"].as_array().unwrap().len(), 4);
        // x * x = x + 1 under the least modulus x^2 + x + 1.
        assert_eq!(v["mul"][2][2], 3);
        assert_eq!(v["add"][3][3], 0);
    }
}
