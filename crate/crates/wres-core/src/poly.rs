//! Dense univariate polynomials over Q(i), the numerator arithmetic behind
//! the rational-function calculus in `ratfunc`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::GaussianRational;

/// Coefficients in ascending degree; the zero polynomial stores no terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// Monomial c * x^k.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&crate::scalars::rat(k as i64, 1)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Synthetic division by (x - root); the remainder must be zero.
    pub fn divide_by_linear(&self, root: &GaussianRational) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let mut out = vec![GaussianRational::zero(); n - 1];
        let mut carry = GaussianRational::zero();
        for k in (0..n).rev() {
            let value = self.coeffs[k].clone() + carry.clone() * root.clone();
            if k == 0 {
                if !value.is_zero() {
                    return None;
                }
            } else {
                out[k - 1] = value.clone();
                carry = value;
            }
        }
        Some(Self::from_coeffs(out))
    }

    /// Taylor shift: coefficients of p(center + t) in powers of t.
    pub fn shifted(&self, center: &GaussianRational) -> Self {
        let mut acc = Poly::zero();
        // Horner in the shifted variable: p(center+t) built from the top.
        for c in self.coeffs.iter().rev() {
            let shifted_x = Poly::from_coeffs(vec![center.clone(), GaussianRational::one()]);
            acc = acc * shifted_x + Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Poly::one();
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

    /// Truncated product modulo t^n.
    pub fn mul_mod(&self, rhs: &Poly, n: usize) -> Poly {
        let mut out = vec![GaussianRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![GaussianRational::zero(); n];
        for (k, c) in self.coeffs.into_iter().enumerate() {
            out[k] = c;
        }
        for (k, c) in rhs.coeffs.into_iter().enumerate() {
            out[k] = out[k].clone() + c;
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({})", c),
                1 => format!("({})*x", c),
                _ => format!("({})*x^{}", c, k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational as G;

    #[test]
    fn shift_and_divide() {
        // p = x^2 + 1 = (x-i)(x+i)
        let p = Poly::x() * Poly::x() + Poly::one();
        let q = p.divide_by_linear(&G::i()).unwrap();
        assert_eq!(q, Poly::from_coeffs(vec![G::i(), G::one()])); // x + i
        let shifted = p.shifted(&G::i());
        // (i+t)^2 + 1 = t^2 + 2it
        assert_eq!(shifted.coeff(0), G::zero());
        assert_eq!(shifted.coeff(1), G::from_parts(0, 1, 2, 1));
        assert_eq!(shifted.coeff(2), G::one());
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly::monomial(G::from_int(3), 3); // 3x^3
        assert_eq!(p.derivative(), Poly::monomial(G::from_int(9), 2));
        assert_eq!(p.eval(&G::from_int(2)), G::from_int(24));
    }
}
