//! Arithmetic in GF(p^r).
//!
//! Elements are polynomials over Z_p of degree below `r`, reduced modulo a
//! fixed monic irreducible polynomial. The modulus is the least irreducible
//! monic polynomial of degree `r` when coefficient tuples
//! `(c_{r-1}, ..., c_0)` are compared lexicographically, and the primitive
//! root is the least element of full multiplicative order under the integer
//! encoding `sum coeffs[i] * p^i`. Both choices are deterministic, so any two
//! fields built from the same [`PrimePower`] are identical.

use crate::error::{Error, Result};
use std::fmt;

/// A prime power `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    r: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrimePower(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidPrimePower("exponent must be at least 1".into()));
        }
        let q = p
            .checked_pow(r)
            .ok_or_else(|| Error::InvalidPrimePower(format!("{p}^{r} overflows 64 bits")))?;
        Ok(Self { p, r, q })
    }

    /// Factor `q` as `p^r`.
    pub fn from_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidPrimePower(format!("{q} is not a prime power")));
        }
        let p = smallest_prime_factor(q);
        let mut rest = q;
        let mut r = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidPrimePower(format!("{q} is not a prime power")));
        }
        Ok(Self { p, r, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.r)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of GF(p^r): coefficient of `x^i` at index `i`, each in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    order: PrimePower,
    /// Low coefficients `c_0..c_{r-1}` of the monic modulus.
    modulus: Vec<u64>,
    primitive_root: FieldElement,
    fourth_root: Option<FieldElement>,
}

impl Field {
    pub fn new(order: PrimePower) -> Self {
        let p = order.p;
        let r = order.r as usize;
        let modulus = least_irreducible(p, r);
        let mut field = Self {
            order,
            modulus,
            primitive_root: FieldElement { coeffs: vec![0; r] },
            fourth_root: None,
        };
        let q = order.q;
        let cofactors: Vec<u64> = distinct_prime_factors(q - 1)
            .into_iter()
            .map(|l| (q - 1) / l)
            .collect();
        let one = field.one();
        let root = (1..q)
            .map(|code| field.element(code))
            .find(|a| cofactors.iter().all(|&e| field.pow(a, e) != one))
            .expect("the multiplicative group of a finite field is cyclic");
        if (q - 1).is_multiple_of(4) {
            field.fourth_root = Some(field.pow(&root, (q - 1) / 4));
        }
        field.primitive_root = root;
        field
    }

    /// Build GF(q) from the order alone.
    pub fn with_order(q: u64) -> Result<Self> {
        Ok(Self::new(PrimePower::from_order(q)?))
    }

    pub fn order(&self) -> PrimePower {
        self.order
    }

    pub fn q(&self) -> u64 {
        self.order.q
    }

    pub fn characteristic(&self) -> u64 {
        self.order.p
    }

    /// Monic modulus coefficients, constant term first, leading 1 included.
    pub fn modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn primitive_root(&self) -> &FieldElement {
        &self.primitive_root
    }

    pub fn fourth_root(&self) -> Option<&FieldElement> {
        self.fourth_root.as_ref()
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.order.r as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The element with integer encoding `code`; `code` must be below `q`.
    pub fn element(&self, code: u64) -> FieldElement {
        debug_assert!(code < self.order.q);
        let p = self.order.p;
        let mut rest = code;
        let coeffs = (0..self.order.r)
            .map(|_| {
                let c = rest % p;
                rest /= p;
                c
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.order.r as usize || coeffs.iter().any(|&c| c >= self.order.p) {
            return Err(Error::ForeignElement(format!("{coeffs:?} is not reduced for GF({})", self.order)));
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    pub fn encode(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.order.p + c)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order.q).map(|c| self.element(c))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.order.p;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % p).collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.order.p;
        let coeffs = a.coeffs.iter().map(|&x| (p - x) % p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.order.p;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + p - y) % p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.order.p as u128;
        let r = self.order.r as usize;
        let mut prod = vec![0u128; 2 * r - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // x^r = -(c_0 + c_1 x + ... + c_{r-1} x^{r-1})
        for top in (r..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let t = top - r + i;
                prod[t] = (prod[t] + (p - lead) * c as u128) % p;
            }
        }
        FieldElement { coeffs: prod[..r].iter().map(|&c| c as u64).collect() }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order.q - 2))
    }

    /// Euler's criterion: `a` is a square iff `a^((q-1)/2) = 1`.
    ///
    /// In characteristic 2 every element is a square.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.order.p == 2 {
            return Ok(true);
        }
        Ok(self.pow(a, (self.order.q - 1) / 2) == self.one())
    }

    /// The residue of `j` mod 4 where `a = w^j` for the primitive root `w`.
    pub fn quartic_class(&self, a: &FieldElement) -> Result<u8> {
        let fourth = self
            .fourth_root
            .as_ref()
            .ok_or(Error::NoQuarticStructure { q: self.order.q })?;
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let image = self.pow(a, (self.order.q - 1) / 4);
        let mut probe = self.one();
        for class in 0..4u8 {
            if probe == image {
                return Ok(class);
            }
            probe = self.mul(&probe, fourth);
        }
        unreachable!("a^((q-1)/4) is always a fourth root of unity")
    }
}

/// Least irreducible monic polynomial of degree `r` over Z_p; returns the low
/// coefficients `c_0..c_{r-1}`.
fn least_irreducible(p: u64, r: usize) -> Vec<u64> {
    let count = p.pow(r as u32);
    (0..count)
        .map(|code| digits(code, p, r))
        .find(|low| {
            let mut poly = low.clone();
            poly.push(1);
            is_irreducible(&poly, p)
        })
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut divisor = digits(code, p, d);
            divisor.push(1);
            if remainder_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn remainder_is_zero(poly: &[u64], monic: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = monic.len() - 1;
    for top in (dd..rem.len()).rev() {
        let lead = rem[top];
        if lead == 0 {
            continue;
        }
        for (i, &c) in monic.iter().enumerate() {
            let t = top - dd + i;
            rem[t] = (rem[t] + (p - lead) * c % p) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}
