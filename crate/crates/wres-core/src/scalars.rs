//! Exact coefficient arithmetic: rationals, Gaussian rationals and the
//! polynomial ring in the five boundary parameters.
//!
//! Every quantity the engine produces lives in `Q(i)[H1, H2, SM, SB, TV]`
//! where `H1 = h'(0)`, `H2 = h''(0)`, `SM = s_M(x0)`, `SB = s_{∂M}(x0)` and
//! `TV = T^2 |V|^2`. Floating point enters only through
//! [`ParameterPolynomial::substitute_numeric`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational. `num`'s `BigRational` already maintains the
/// reduced-form invariants (gcd 1, positive denominator).
pub type Rational = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero in Q(i)")]
    DivisionByZero,
    #[error("missing numeric assignment for indeterminate {0}")]
    MissingAssignment(Indeterminate),
}

/// An element of the field Q(i).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    /// `a/b + (c/d) i`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussianRational { re: rat(a, b), im: rat(c, d) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Squared modulus, a plain rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    /// `i^k` for any signed power.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// The report serialization: `[re_num, re_den, im_num, im_den]`, each a
    /// decimal integer rendered as a string so arbitrary precision survives
    /// the trip through JSON.
    pub fn serialize_parts(&self) -> [String; 4] {
        [
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        ]
    }

    pub fn deserialize_parts(parts: &[String; 4]) -> Option<Self> {
        let p: Vec<BigInt> = parts.iter().map(|s| s.parse().ok()).collect::<Option<_>>()?;
        if p[1].is_zero() || p[3].is_zero() {
            return None;
        }
        Some(GaussianRational {
            re: BigRational::new(p[0].clone(), p[1].clone()),
            im: BigRational::new(p[2].clone(), p[3].clone()),
        })
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{} - ({})i", self.re, -self.im.clone())
        } else {
            write!(f, "{} + ({})i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The five free scalars of the boundary computation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Indeterminate {
    /// h'(0)
    H1,
    /// h''(0)
    H2,
    /// scalar curvature of M at x0
    SM,
    /// scalar curvature of the boundary at x0
    SB,
    /// T^2 |V|^2
    TV,
}

impl Indeterminate {
    pub const ALL: [Indeterminate; 5] =
        [Indeterminate::H1, Indeterminate::H2, Indeterminate::SM, Indeterminate::SB, Indeterminate::TV];

    pub fn index(self) -> usize {
        match self {
            Indeterminate::H1 => 0,
            Indeterminate::H2 => 1,
            Indeterminate::SM => 2,
            Indeterminate::SB => 3,
            Indeterminate::TV => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Indeterminate::H1 => "H1",
            Indeterminate::H2 => "H2",
            Indeterminate::SM => "SM",
            Indeterminate::SB => "SB",
            Indeterminate::TV => "TV",
        }
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over `[H1, H2, SM, SB, TV]`, lexicographically ordered.
pub type Monomial = [u8; 5];

pub const MONO_ONE: Monomial = [0; 5];

pub fn mono(ind: Indeterminate) -> Monomial {
    let mut m = MONO_ONE;
    m[ind.index()] = 1;
    m
}

pub fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = MONO_ONE;
    for k in 0..5 {
        m[k] = a[k] + b[k];
    }
    m
}

pub fn mono_to_string(m: &Monomial) -> String {
    if *m == MONO_ONE {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for ind in Indeterminate::ALL {
        let e = m[ind.index()];
        match e {
            0 => {}
            1 => parts.push(ind.name().to_string()),
            _ => parts.push(format!("{}^{}", ind.name(), e)),
        }
    }
    parts.join("*")
}

/// Numeric values for the indeterminates, used by the oracle.
#[derive(Clone, Copy, Debug, Default)]
pub struct Assignment {
    pub values: [Option<f64>; 5],
}

impl Assignment {
    pub fn new(h1: f64, h2: f64, sm: f64, sb: f64, tv: f64) -> Self {
        Assignment { values: [Some(h1), Some(h2), Some(sm), Some(sb), Some(tv)] }
    }

    pub fn get(&self, ind: Indeterminate) -> Option<f64> {
        self.values[ind.index()]
    }
}

/// Element of the ring Q(i)[H1, H2, SM, SB, TV]. Zero coefficients are never
/// stored; the map is ordered so serialization is canonical.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParameterPolynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ParameterPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(MONO_ONE, c);
        p
    }

    pub fn variable(ind: Indeterminate) -> Self {
        let mut p = Self::zero();
        p.add_term(mono(ind), GaussianRational::one());
        p
    }

    pub fn monomial(m: Monomial, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v.clone() * c.clone());
        }
        out
    }

    /// Drops every monomial that contains the given indeterminate.
    pub fn without(&self, ind: Indeterminate) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m[ind.index()] == 0 {
                out.add_term(*m, v.clone());
            }
        }
        out
    }

    /// Splits off the coefficient polynomial of `ind^1` (used for reports).
    pub fn coefficient_of(&self, ind: Indeterminate) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m[ind.index()] == 1 {
                let mut reduced = *m;
                reduced[ind.index()] = 0;
                out.add_term(reduced, v.clone());
            }
        }
        out
    }

    /// Exact evaluation followed by one conversion to floating point.
    pub fn substitute_numeric(&self, assignment: &Assignment) -> Result<Complex64, ScalarError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut factor = 1.0f64;
            for ind in Indeterminate::ALL {
                let e = m[ind.index()];
                if e > 0 {
                    let v = assignment
                        .get(ind)
                        .ok_or(ScalarError::MissingAssignment(ind))?;
                    factor *= v.powi(e as i32);
                }
            }
            acc += c.to_complex64() * factor;
        }
        Ok(acc)
    }

    /// Report serialization: list of (exponent-vector, coefficient) pairs in
    /// lexicographic monomial order.
    pub fn serialize_terms(&self) -> Vec<(Vec<u8>, [String; 4])> {
        self.terms
            .iter()
            .map(|(m, c)| (m.to_vec(), c.serialize_parts()))
            .collect()
    }

    pub fn deserialize_terms(items: &[(Vec<u8>, [String; 4])]) -> Option<Self> {
        let mut p = Self::zero();
        for (m, c) in items {
            if m.len() != 5 {
                return None;
            }
            let mut mm = MONO_ONE;
            mm.copy_from_slice(m);
            p.add_term(mm, GaussianRational::deserialize_parts(c)?);
        }
        Some(p)
    }
}

impl Add for ParameterPolynomial {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for ParameterPolynomial {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl Mul for ParameterPolynomial {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Neg for ParameterPolynomial {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero() - self
    }
}

impl fmt::Display for ParameterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if *m == MONO_ONE {
                    format!("({})", c)
                } else {
                    format!("({})*{}", c, mono_to_string(m))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for ParameterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
