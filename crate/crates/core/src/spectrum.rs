//! Exact spectral facts: minimal polynomial degree and SRG eigenvalues.
//!
//! No floating point. The minimal polynomial is found by stacking the
//! vectorised powers `I, A, A², ...` and eliminating over the integers until
//! the first linear dependence appears.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verifiers::ArParams;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// Monic minimal polynomial, coefficients from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPolynomial {
    pub coeffs: Vec<BigRational>,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients as integers, when they all are (always the case for integer matrices).
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl Serialize for MinimalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        text.serialize(s)
    }
}

fn checked_power(prev: &[i128], a: &Graph) -> Result<Vec<i128>> {
    let n = a.order();
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for j in a.neighbors(i) {
            let src = &prev[j * n..(j + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = d
                    .checked_add(s)
                    .ok_or_else(|| Error::InfeasibleParameters("matrix power overflows 128 bits".into()))?;
            }
        }
    }
    Ok(out)
}

struct EchelonRow {
    pivot: usize,
    values: Vec<BigInt>,
    /// `values = Σ combo[i] · vec(A^i)`
    combo: Vec<BigInt>,
}

fn reduce_by_gcd(values: &mut [BigInt], combo: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in values.iter().chain(combo.iter()) {
        if !x.is_zero() {
            g = num_integer::Integer::gcd(&g, x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for x in values.iter_mut().chain(combo.iter_mut()) {
            *x = &*x / &g;
        }
    }
}

/// The minimal polynomial of the adjacency matrix of `g`.
pub fn minimal_polynomial(g: &Graph) -> Result<MinimalPolynomial> {
    let n = g.order();
    let mut power: Vec<i128> = (0..n * n).map(|i| i128::from(i / n == i % n)).collect();
    let mut basis: Vec<EchelonRow> = Vec::new();
    for d in 0..=n {
        if d > 0 {
            power = checked_power(&power, g)?;
        }
        let mut values: Vec<BigInt> = power.iter().map(|&x| BigInt::from(x)).collect();
        let mut combo = vec![BigInt::zero(); d + 1];
        combo[d] = BigInt::one();
        for row in &basis {
            let coeff = values[row.pivot].clone();
            if coeff.is_zero() {
                continue;
            }
            let scale = row.values[row.pivot].clone();
            // values <- scale * values - coeff * row
            for (v, r) in values.iter_mut().zip(&row.values) {
                *v = &*v * &scale - &coeff * r;
            }
            for (i, c) in combo.iter_mut().enumerate() {
                let r = row.combo.get(i).cloned().unwrap_or_default();
                *c = &*c * &scale - &coeff * r;
            }
            reduce_by_gcd(&mut values, &mut combo);
        }
        match values.iter().position(|v| !v.is_zero()) {
            Some(pivot) => basis.push(EchelonRow { pivot, values, combo }),
            None => {
                let lead = BigRational::from_integer(combo[d].clone());
                let coeffs = combo.into_iter().map(|c| BigRational::from_integer(c) / &lead).collect();
                return Ok(MinimalPolynomial { coeffs });
            }
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Number of distinct eigenvalues of a graph: the degree of its minimal polynomial.
pub fn distinct_eigenvalue_count(g: &Graph) -> Result<usize> {
    minimal_polynomial(g).map(|p| p.degree())
}

/// `rational + coeff · √radicand` with `radicand` square-free; `radicand = 1` and `coeff = 0` for rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticIrrational {
    pub rational: Rational64,
    pub coeff: Rational64,
    pub radicand: u64,
}

impl QuadraticIrrational {
    pub fn from_rational(r: Rational64) -> Self {
        Self { rational: r, coeff: Rational64::zero(), radicand: 1 }
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Exact test of `x² - s·x - t = 0`.
    pub fn is_root_of(&self, s: i64, t: i64) -> bool {
        let (r, c, d) = (self.rational, self.coeff, Rational64::from_integer(self.radicand as i64));
        let s = Rational64::from_integer(s);
        let t = Rational64::from_integer(t);
        let rational_part = r * r + c * c * d - s * r - t;
        let surd_part = Rational64::from_integer(2) * r * c - s * c;
        rational_part.is_zero() && surd_part.is_zero()
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let den = num_integer::lcm(*self.rational.denom(), *self.coeff.denom());
        let a = self.rational.numer() * (den / self.rational.denom());
        let b = self.coeff.numer() * (den / self.coeff.denom());
        let sign = if b < 0 { "-" } else if a != 0 { "+" } else { "" };
        let mag = if b.abs() == 1 { String::new() } else { b.abs().to_string() };
        let lead = if a != 0 { a.to_string() } else { String::new() };
        let body = format!("{lead}{sign}{mag}√{}", self.radicand);
        if den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

impl Serialize for QuadraticIrrational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The non-principal eigenvalues of a strongly regular graph, `theta1 >= theta2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgEigenvalues {
    pub theta1: QuadraticIrrational,
    pub theta2: QuadraticIrrational,
}

fn square_free_split(mut n: u64) -> (u64, u64) {
    // n = s² · d with d square-free
    let mut s = 1;
    let mut f = 2;
    while f * f <= n {
        while n.is_multiple_of(f * f) {
            n /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, n)
}

/// Roots of `x² - (λ - μ)x - (k - μ)`.
pub fn srg_eigenvalues(p: ArParams) -> Result<SrgEigenvalues> {
    let sum = p.lambda as i64 - p.mu as i64;
    let product = p.k as i64 - p.mu as i64;
    let disc = sum * sum + 4 * product;
    if disc < 0 {
        return Err(Error::InfeasibleParameters(format!("discriminant {disc} is negative for {p}")));
    }
    let (s, d) = square_free_split(disc as u64);
    let half = Rational64::new(1, 2);
    let mid = Rational64::from_integer(sum) * half;
    let spread = Rational64::from_integer(s as i64) * half;
    let (theta1, theta2) = if d == 1 {
        (QuadraticIrrational::from_rational(mid + spread), QuadraticIrrational::from_rational(mid - spread))
    } else {
        (
            QuadraticIrrational { rational: mid, coeff: spread, radicand: d },
            QuadraticIrrational { rational: mid, coeff: -spread, radicand: d },
        )
    };
    Ok(SrgEigenvalues { theta1, theta2 })
}
