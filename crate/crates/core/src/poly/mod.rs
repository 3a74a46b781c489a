//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`MultiIndex`], whose ordering is
//! graded lexicographic. Iteration therefore always walks from the lowest
//! total degree upwards, which is also the order used by the text writer and
//! by the Fischer basis enumeration.

mod io;
mod sphere;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use io::{format_rational, parse_polynomial, parse_rational, write_polynomial};
pub use sphere::{sphere_max, sphere_max_with, FloatPoly, SphereMax, SphereMaxConfig};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("dimension must be at least 1, got {0}")]
    BadDimension(usize),
}

/// Exponent vector of a monomial `x_1^e_1 ... x_n^e_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u32; 6]>);

impl MultiIndex {
    pub fn new(exponents: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(exponents))
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, dim))
    }

    /// `x_var` (0-based).
    pub fn unit(dim: usize, var: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[var] = 1;
        e
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Exponents modulo two, packed one bit per variable.
    pub fn parity(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &e)| acc | (u64::from(e & 1) << i))
    }

    pub fn with(&self, var: usize, exponent: u32) -> Self {
        let mut e = self.clone();
        e.0[var] = exponent;
        e
    }

    fn combine(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// All multi-indices of total degree exactly `degree`, ascending in graded-lex order.
    pub fn homogeneous_basis(dim: usize, degree: u32) -> Vec<MultiIndex> {
        fn rec(dim: usize, var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if var + 1 == dim {
                cur.push(left);
                out.push(MultiIndex::new(cur));
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(dim, var + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            return out;
        }
        rec(dim, 0, degree, &mut Vec::with_capacity(dim), &mut out);
        out.sort();
        out
    }

    /// Basis of polynomials of degree at most `degree`, lowest degree first.
    pub fn graded_basis(dim: usize, degree: u32) -> Vec<MultiIndex> {
        (0..=degree)
            .flat_map(|k| Self::homogeneous_basis(dim, k))
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Total degree; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    pub fn monomial(exponents: MultiIndex, c: Rational) -> Self {
        let mut p = Self::zero(exponents.dim());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// The coordinate function `x_var` (0-based).
    pub fn var(dim: usize, var: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, var), Rational::one())
    }

    /// Builds a polynomial from possibly repeated terms; duplicates are summed.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        // graded order: the last key has maximal total degree
        match self.terms.keys().next_back() {
            Some(e) => Degree::Finite(e.degree()),
            None => Degree::NegInfinity,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(a), Some(b)) => a.degree() == b.degree(),
            _ => true,
        }
    }

    pub fn add_term(&mut self, e: MultiIndex, c: Rational) {
        debug_assert_eq!(e.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    /// Exact product.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.combine(eb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Partial derivative in `x_var` (0-based).
    pub fn partial(&self, var: usize) -> Polynomial {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e.get(var);
            if k > 0 {
                out.add_term(e.with(var, k - 1), c * Rational::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// `Δf = Σ ∂²f/∂x_j²`, exact.
    pub fn laplacian(&self) -> Polynomial {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            for var in 0..self.dim {
                let k = e.get(var);
                if k >= 2 {
                    let factor = BigInt::from(u64::from(k) * u64::from(k - 1));
                    out.add_term(e.with(var, k - 2), c * Rational::from_integer(factor));
                }
            }
        }
        out
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let max_deg = self.degree().finite().unwrap_or(0) as usize;
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(max_deg + 1);
                let mut acc = Rational::one();
                for _ in 0..=max_deg {
                    row.push(acc.clone());
                    acc = &acc * x;
                }
                row
            })
            .collect();
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (var, &k) in e.exponents().iter().enumerate() {
                if k > 0 {
                    t *= &powers[var][k as usize];
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Floating-point evaluation.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        Ok(FloatPoly::from_poly(self).eval(point))
    }

    /// Largest absolute coefficient, or `None` for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Option<Rational> {
        self.terms.values().map(|c| c.abs()).max()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono: Vec<String> = e
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimensions must agree")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial dimensions must agree")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimensions must agree")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Homogeneous components `f_0, f_1, ..., f_d`; zero components are kept as
/// empty entries so that the index equals the degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousDecomposition {
    pub dim: usize,
    pub components: Vec<Polynomial>,
}

impl HomogeneousDecomposition {
    pub fn component(&self, m: usize) -> Option<&Polynomial> {
        self.components.get(m)
    }

    pub fn recompose(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for c in &self.components {
            for (e, v) in c.terms() {
                out.add_term(e.clone(), v.clone());
            }
        }
        out
    }
}

pub fn homogeneous_decompose(f: &Polynomial) -> HomogeneousDecomposition {
    let mut components: Vec<Polynomial> = match f.degree() {
        Degree::NegInfinity => Vec::new(),
        Degree::Finite(d) => (0..=d).map(|_| Polynomial::zero(f.dim())).collect(),
    };
    for (e, c) in f.terms() {
        components[e.degree() as usize].terms.insert(e.clone(), c.clone());
    }
    HomogeneousDecomposition {
        dim: f.dim(),
        components,
    }
}

/// Natural logarithm of `|x|` for a nonzero big integer, without overflow.
pub fn ln_abs_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of `|x|` for a nonzero rational; `-inf` for zero.
pub fn ln_abs_rational(x: &Rational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_abs_bigint(x.numer()) - ln_abs_bigint(x.denom())
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let l = ln_abs_rational(x);
        let s = if x.numer().sign() == Sign::Minus {
            -1.0
        } else {
            1.0
        };
        s * l.exp()
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
