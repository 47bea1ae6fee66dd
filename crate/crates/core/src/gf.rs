//! Arithmetic in the prime field GF(S).
//!
//! Elements are plain residues `0..S`. The field also carries its smallest
//! primitive element, which the single-tone code uses to build its
//! evaluation points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A prime field GF(S) together with its smallest primitive element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GfField {
    modulus: u64,
    alpha: u64,
}

/// A residue modulo the field's prime. Carries its modulus so that mixing
/// elements of different fields is detectable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GfElement {
    value: u64,
    modulus: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Construct GF(S) for a prime `S >= 3`, picking the smallest generator of
/// the multiplicative group as `alpha`.
pub fn make_field(modulus: u64) -> Result<GfField> {
    GfField::new(modulus)
}

impl GfField {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 3 || !is_prime(modulus) {
            return Err(Error::NonPrimeModulus(modulus));
        }
        let order = modulus - 1;
        let factors = prime_factors(order);
        // g generates GF(S)* iff g^((S-1)/p) != 1 for every prime p | S-1.
        let alpha = (2..modulus)
            .find(|&g| factors.iter().all(|&p| pow_mod(g, order / p, modulus) != 1))
            .expect("every prime field has a primitive element");
        Ok(Self { modulus, alpha })
    }

    /// The prime S.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Size of the multiplicative group, S - 1.
    pub fn group_order(&self) -> u64 {
        self.modulus - 1
    }

    pub fn alpha(&self) -> GfElement {
        self.element(self.alpha)
    }

    /// The residue of `value` modulo S.
    pub fn element(&self, value: u64) -> GfElement {
        GfElement {
            value: value % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn zero(&self) -> GfElement {
        self.element(0)
    }

    pub fn one(&self) -> GfElement {
        self.element(1)
    }

    /// Iterate over all S elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = GfElement> + '_ {
        (0..self.modulus).map(move |v| self.element(v))
    }
}

impl GfElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &GfElement) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.modulus, other.modulus))
        }
    }

    fn with_value(&self, value: u64) -> GfElement {
        GfElement {
            value,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse via Fermat: a^(S-2).
    pub fn inverse(&self) -> Result<GfElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.modulus));
        }
        Ok(self.with_value(pow_mod(self.value, self.modulus - 2, self.modulus)))
    }

    /// `self^exp` by repeated squaring, with `0^0 = 1`.
    pub fn pow(&self, exp: u64) -> GfElement {
        if self.is_zero() {
            return self.with_value(u64::from(exp == 0));
        }
        let reduced = exp % (self.modulus - 1);
        self.with_value(pow_mod(self.value, reduced, self.modulus))
    }

    /// Smallest `t >= 1` with `self^t = 1`.
    pub fn mult_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self.modulus - 1;
        // The order divides S-1; scan divisors in increasing order.
        let order = (1..=group)
            .filter(|t| group.is_multiple_of(*t))
            .find(|&t| pow_mod(self.value, t, self.modulus) == 1)
            .unwrap_or(group);
        Ok(order)
    }

    pub fn checked(&self, op: GfOp, rhs: &GfElement) -> Result<GfElement> {
        self.same_field(rhs)?;
        let m = self.modulus;
        let v = match op {
            GfOp::Add => (self.value + rhs.value) % m,
            GfOp::Sub => (self.value + m - rhs.value) % m,
            GfOp::Mul => ((self.value as u128 * rhs.value as u128) % m as u128) as u64,
            GfOp::Div => {
                let inv = rhs.inverse()?;
                ((self.value as u128 * inv.value as u128) % m as u128) as u64
            }
        };
        Ok(self.with_value(v))
    }
}

/// Field arithmetic with explicit error reporting.
pub fn gf_arith(a: GfElement, b: GfElement, op: GfOp) -> Result<GfElement> {
    a.checked(op, &b)
}

pub fn gf_pow(a: GfElement, exp: u64) -> GfElement {
    a.pow(exp)
}

pub fn mult_order(a: GfElement) -> Result<u64> {
    a.mult_order()
}

// The operator impls panic on mixed fields; use `checked` where that can
// happen legitimately.
impl Add for GfElement {
    type Output = GfElement;
    fn add(self, rhs: GfElement) -> GfElement {
        self.checked(GfOp::Add, &rhs).expect("field mismatch")
    }
}

impl Sub for GfElement {
    type Output = GfElement;
    fn sub(self, rhs: GfElement) -> GfElement {
        self.checked(GfOp::Sub, &rhs).expect("field mismatch")
    }
}

impl Mul for GfElement {
    type Output = GfElement;
    fn mul(self, rhs: GfElement) -> GfElement {
        self.checked(GfOp::Mul, &rhs).expect("field mismatch")
    }
}

impl Neg for GfElement {
    type Output = GfElement;
    fn neg(self) -> GfElement {
        self.with_value((self.modulus - self.value) % self.modulus)
    }
}

impl fmt::Display for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
