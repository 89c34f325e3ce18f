//! Exact calculus of rational functions of xi_n whose poles are confined to
//! +/- i: arithmetic, differentiation, partial fractions, the Hardy
//! projection pi^+, the functional pi' and real-line integration by residues.
//!
//! Restricting the denominator to (xi_n - i)^p (xi_n + i)^q makes "pole on
//! the real axis" unrepresentable, which is all the boundary computation
//! needs: after evaluation on |xi'| = 1 every denominator is a power of
//! (1 + xi_n^2) or of (xi_n - i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::poly::Poly;
use crate::scalars::{rat, GaussianRational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFuncError {
    #[error("pi+ is defined only for decaying functions (deg(num) < p + q)")]
    NotDecaying,
    #[error("integrand is not absolutely integrable (need deg(num) <= p + q - 2)")]
    NotIntegrable,
}

/// N(xi) / ((xi - i)^p (xi + i)^q), reduced: N has no root at +/- i whenever
/// the corresponding power is positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoleLimitedRational {
    num: Poly,
    pow_minus_i: u32,
    pow_plus_i: u32,
}

impl PoleLimitedRational {
    pub fn new(num: Poly, pow_minus_i: u32, pow_plus_i: u32) -> Self {
        let mut f = PoleLimitedRational { num, pow_minus_i, pow_plus_i };
        f.reduce();
        f
    }

    pub fn zero() -> Self {
        Self::new(Poly::zero(), 0, 0)
    }

    pub fn one() -> Self {
        Self::new(Poly::one(), 0, 0)
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::new(p, 0, 0)
    }

    /// 1 / (1 + xi^2)^k.
    pub fn inv_one_plus_sq(k: u32) -> Self {
        Self::new(Poly::one(), k, k)
    }

    /// xi^p in the numerator over (1+xi^2)^k.
    pub fn xi_pow_over(p: usize, k: u32) -> Self {
        Self::new(Poly::monomial(GaussianRational::one(), p), k, k)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn pow_minus_i(&self) -> u32 {
        self.pow_minus_i
    }

    pub fn pow_plus_i(&self) -> u32 {
        self.pow_plus_i
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// deg(num) < p + q: the function decays at infinity.
    pub fn is_decaying(&self) -> bool {
        match self.num.degree() {
            None => true,
            Some(d) => (d as i64) < self.pow_minus_i as i64 + self.pow_plus_i as i64,
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.pow_minus_i = 0;
            self.pow_plus_i = 0;
            return;
        }
        let i = GaussianRational::i();
        while self.pow_minus_i > 0 {
            match self.num.divide_by_linear(&i) {
                Some(q) => {
                    self.num = q;
                    self.pow_minus_i -= 1;
                }
                None => break,
            }
        }
        let minus_i = -GaussianRational::i();
        while self.pow_plus_i > 0 {
            match self.num.divide_by_linear(&minus_i) {
                Some(q) => {
                    self.num = q;
                    self.pow_plus_i -= 1;
                }
                None => break,
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.num.scale(c), self.pow_minus_i, self.pow_plus_i)
    }

    /// Multiply by xi^k.
    pub fn mul_xi_pow(&self, k: usize) -> Self {
        Self::new(
            self.num.clone() * Poly::monomial(GaussianRational::one(), k),
            self.pow_minus_i,
            self.pow_plus_i,
        )
    }

    /// Exact first derivative in xi.
    pub fn derivative_once(&self) -> Self {
        let p = self.pow_minus_i as i64;
        let q = self.pow_plus_i as i64;
        // d/dxi [N / ((xi-i)^p (xi+i)^q)]
        //   = [N' (xi-i)(xi+i) - N (p (xi+i) + q (xi-i))] / ((xi-i)^{p+1} (xi+i)^{q+1})
        // and p (xi+i) + q (xi-i) = (p+q) xi + (p-q) i.
        let lin = Poly::from_coeffs(vec![
            GaussianRational::i().scale(&rat(p - q, 1)),
            GaussianRational::from_rational(rat(p + q, 1)),
        ]);
        let num = self.num.derivative() * (Poly::x() * Poly::x() + Poly::one()) - self.num.clone() * lin;
        Self::new(num, self.pow_minus_i + 1, self.pow_plus_i + 1)
    }

    pub fn derivative(&self, order: u32) -> Self {
        let mut f = self.clone();
        for _ in 0..order {
            f = f.derivative_once();
        }
        f
    }

    /// Laurent data at +i: coefficients a_0..a_{n-1} of the series of
    /// N(i+t) / (t+2i)^q in powers of t = xi - i.
    fn series_at_plus_i(&self, n: usize) -> Poly {
        if n == 0 {
            return Poly::zero();
        }
        let shifted = self.num.shifted(&GaussianRational::i());
        let inv = invert_linear_power(GaussianRational::from_parts(0, 1, 2, 1), self.pow_plus_i, n);
        shifted.mul_mod(&inv, n)
    }

    /// Same at -i: series of N(-i+t) / (t-2i)^p.
    fn series_at_minus_i(&self, n: usize) -> Poly {
        if n == 0 {
            return Poly::zero();
        }
        let shifted = self.num.shifted(&(-GaussianRational::i()));
        let inv = invert_linear_power(GaussianRational::from_parts(0, 1, -2, 1), self.pow_minus_i, n);
        shifted.mul_mod(&inv, n)
    }

    /// Principal parts at +i and at -i plus the polynomial remainder;
    /// the three pieces sum to the input exactly.
    pub fn partial_fractions(&self) -> (PoleLimitedRational, PoleLimitedRational, Poly) {
        let p = self.pow_minus_i as usize;
        let q = self.pow_plus_i as usize;

        // Principal part at +i: sum_{j=1..p} a_{p-j} / (xi-i)^j, combined over
        // the single denominator (xi-i)^p.
        let plus = if p > 0 {
            let series = self.series_at_plus_i(p);
            let mut num = Poly::zero();
            for j in 1..=p {
                // a_{p-j} (xi-i)^{p-j}
                let c = series.coeff(p - j);
                if !c.is_zero() {
                    let shift = Poly::from_coeffs(vec![-GaussianRational::i(), GaussianRational::one()])
                        .pow((p - j) as u32);
                    num = num + shift.scale(&c);
                }
            }
            PoleLimitedRational::new(num, self.pow_minus_i, 0)
        } else {
            PoleLimitedRational::zero()
        };

        let minus = if q > 0 {
            let series = self.series_at_minus_i(q);
            let mut num = Poly::zero();
            for j in 1..=q {
                let c = series.coeff(q - j);
                if !c.is_zero() {
                    let shift = Poly::from_coeffs(vec![GaussianRational::i(), GaussianRational::one()])
                        .pow((q - j) as u32);
                    num = num + shift.scale(&c);
                }
            }
            PoleLimitedRational::new(num, 0, self.pow_plus_i)
        } else {
            PoleLimitedRational::zero()
        };

        let remainder = self.clone() - plus.clone() - minus.clone();
        debug_assert_eq!(remainder.pow_minus_i, 0, "polynomial part must clear poles");
        debug_assert_eq!(remainder.pow_plus_i, 0, "polynomial part must clear poles");
        (plus, minus, remainder.num)
    }

    /// Hardy projection: retains exactly the principal part at +i. Defined
    /// only for decaying inputs so the contour limit exists; idempotent and
    /// commuting with d/dxi on its domain.
    pub fn pi_plus(&self) -> Result<PoleLimitedRational, RatFuncError> {
        if !self.is_decaying() {
            return Err(RatFuncError::NotDecaying);
        }
        let (plus, _, _) = self.partial_fractions();
        Ok(plus)
    }

    /// Residue at +i.
    pub fn residue_at_plus_i(&self) -> GaussianRational {
        let p = self.pow_minus_i as usize;
        if p == 0 {
            return GaussianRational::zero();
        }
        self.series_at_plus_i(p).coeff(p - 1)
    }

    /// pi' h = (1/2 pi) * contour integral over the upper poles
    ///        = i * Res_{+i} h.
    pub fn pi_prime(&self) -> GaussianRational {
        GaussianRational::i() * self.residue_at_plus_i()
    }

    /// Integral over the real line as an exact multiple of pi:
    /// int_R f = 2 pi i Res_{+i} f, returned divided by pi.
    pub fn integrate_real_line(&self) -> Result<GaussianRational, RatFuncError> {
        if self.is_zero() {
            return Ok(GaussianRational::zero());
        }
        let deg = self.num.degree().unwrap_or(0) as i64;
        if deg > self.pow_minus_i as i64 + self.pow_plus_i as i64 - 2 {
            return Err(RatFuncError::NotIntegrable);
        }
        Ok(GaussianRational::from_parts(0, 1, 2, 1) * self.residue_at_plus_i())
    }

    /// Numeric evaluation on the real axis (used by the quadrature oracle).
    pub fn eval_f64(&self, x: f64) -> num_complex::Complex64 {
        use num_complex::Complex64;
        let mut num = Complex64::new(0.0, 0.0);
        for (k, c) in self.num.coeffs().iter().enumerate() {
            num += c.to_complex64() * Complex64::new(x, 0.0).powu(k as u32);
        }
        let den = Complex64::new(x, -1.0).powu(self.pow_minus_i)
            * Complex64::new(x, 1.0).powu(self.pow_plus_i);
        num / den
    }

    pub fn render(&self) -> String {
        format!(
            "({:?}) / (xin-i)^{} (xin+i)^{}",
            self.num, self.pow_minus_i, self.pow_plus_i
        )
    }
}

/// Series of 1 / (t + c)^k modulo t^n (c != 0).
fn invert_linear_power(c: GaussianRational, k: u32, n: usize) -> Poly {
    // (t+c)^{-k} = c^{-k} (1 + t/c)^{-k}
    //            = c^{-k} sum_m binom(-k, m) (t/c)^m
    // with binom(-k, m) = (-1)^m k (k+1) .. (k+m-1) / m!.
    let c_inv = c.inv().expect("pole location is not zero");
    let mut coeffs = Vec::with_capacity(n);
    let mut binom = GaussianRational::one();
    let mut c_pow = c_inv.pow(k);
    for m in 0..n {
        if m > 0 {
            binom = binom.scale(&rat(-((k as i64) + (m as i64) - 1), m as i64));
            c_pow = c_pow * c_inv.clone();
        }
        coeffs.push(binom.clone() * c_pow.clone());
    }
    Poly::from_coeffs(coeffs)
}

impl Add for PoleLimitedRational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)] // lifts both summands to the common denominator
    fn add(self, rhs: Self) -> Self {
        let p = self.pow_minus_i.max(rhs.pow_minus_i);
        let q = self.pow_plus_i.max(rhs.pow_plus_i);
        let lift = |f: &PoleLimitedRational| {
            let dm = p - f.pow_minus_i;
            let dq = q - f.pow_plus_i;
            let mut n = f.num.clone();
            if dm > 0 {
                n = n * Poly::from_coeffs(vec![-GaussianRational::i(), GaussianRational::one()]).pow(dm);
            }
            if dq > 0 {
                n = n * Poly::from_coeffs(vec![GaussianRational::i(), GaussianRational::one()]).pow(dq);
            }
            n
        };
        Self::new(lift(&self) + lift(&rhs), p, q)
    }
}

impl Sub for PoleLimitedRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PoleLimitedRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.num, self.pow_minus_i, self.pow_plus_i)
    }
}

impl Mul for PoleLimitedRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.num * rhs.num,
            self.pow_minus_i + rhs.pow_minus_i,
            self.pow_plus_i + rhs.pow_plus_i,
        )
    }
}

impl fmt::Debug for PoleLimitedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational as G;

    fn one_over_one_plus_sq(k: u32) -> PoleLimitedRational {
        PoleLimitedRational::inv_one_plus_sq(k)
    }

    #[test]
    fn product_of_simple_poles() {
        let a = PoleLimitedRational::new(Poly::one(), 1, 0);
        let b = PoleLimitedRational::new(Poly::one(), 0, 1);
        assert_eq!(a * b, one_over_one_plus_sq(1));
        let s = one_over_one_plus_sq(1) + one_over_one_plus_sq(1).scale(&(-G::one()));
        assert!(s.is_zero());
    }

    #[test]
    fn third_derivative_of_sigma_minus2() {
        // d^3/dxi^3 [1/(1+xi^2)] = (24 xi - 24 xi^3)/(1+xi^2)^4
        let f = one_over_one_plus_sq(1);
        let d3 = f.derivative(3);
        let expected = PoleLimitedRational::new(
            Poly::from_coeffs(vec![
                G::zero(),
                G::from_int(24),
                G::zero(),
                G::from_int(-24),
            ]),
            4,
            4,
        );
        assert_eq!(d3, expected);
    }

    #[test]
    fn first_derivative_example() {
        let f = one_over_one_plus_sq(1);
        let expected = PoleLimitedRational::new(
            Poly::from_coeffs(vec![G::zero(), G::from_int(-2)]),
            2,
            2,
        );
        assert_eq!(f.derivative(1), expected);
        assert_eq!(f.derivative(0), f);
    }

    #[test]
    fn partial_fractions_of_cauchy_kernel() {
        // 1/(1+xi^2) = (-i/2)/(xi-i) + (i/2)/(xi+i)
        let f = one_over_one_plus_sq(1);
        let (plus, minus, poly) = f.partial_fractions();
        assert_eq!(
            plus,
            PoleLimitedRational::new(Poly::constant(G::from_parts(0, 1, -1, 2)), 1, 0)
        );
        assert_eq!(
            minus,
            PoleLimitedRational::new(Poly::constant(G::from_parts(0, 1, 1, 2)), 0, 1)
        );
        assert!(poly.is_zero());

        // A pure +i pole is its own principal part.
        let g = PoleLimitedRational::new(Poly::one(), 2, 0);
        let (p2, m2, r2) = g.partial_fractions();
        assert_eq!(p2, g);
        assert!(m2.is_zero());
        assert!(r2.is_zero());

        // A polynomial passes through untouched.
        let x = PoleLimitedRational::from_poly(Poly::x());
        let (p3, m3, r3) = x.partial_fractions();
        assert!(p3.is_zero());
        assert!(m3.is_zero());
        assert_eq!(r3, Poly::x());
    }

    #[test]
    fn pi_plus_values() {
        let f = one_over_one_plus_sq(1);
        let pf = f.pi_plus().unwrap();
        assert_eq!(
            pf,
            PoleLimitedRational::new(Poly::constant(G::from_parts(0, 1, -1, 2)), 1, 0)
        );
        // After two derivatives: -i/(xi-i)^3.
        let d2 = pf.derivative(2);
        assert_eq!(
            d2,
            PoleLimitedRational::new(Poly::constant(G::from_parts(0, 1, -1, 1)), 3, 0)
        );

        // Already analytic in the lower half plane: fixed point.
        let g = PoleLimitedRational::new(Poly::one(), 1, 0);
        assert_eq!(g.pi_plus().unwrap(), g);

        // (-5 i xi - 3 i xi^3)/(1+xi^2)^3 -> (9i - 7 xi)/(8 (xi - i)^3)
        let h = PoleLimitedRational::new(
            Poly::from_coeffs(vec![
                G::zero(),
                G::from_parts(0, 1, -5, 1),
                G::zero(),
                G::from_parts(0, 1, -3, 1),
            ]),
            3,
            3,
        );
        let expected = PoleLimitedRational::new(
            Poly::from_coeffs(vec![G::from_parts(0, 1, 9, 8), G::from_parts(-7, 8, 0, 1)]),
            3,
            0,
        );
        assert_eq!(h.pi_plus().unwrap(), expected);

        // Non-decaying inputs are rejected.
        let bad = PoleLimitedRational::new(Poly::monomial(G::one(), 2), 1, 1);
        assert_eq!(bad.pi_plus(), Err(RatFuncError::NotDecaying));
    }

    #[test]
    fn pi_prime_values() {
        assert_eq!(one_over_one_plus_sq(1).pi_prime(), G::from_parts(1, 2, 0, 1));
        let minus_only = PoleLimitedRational::new(Poly::one(), 0, 1);
        assert_eq!(minus_only.pi_prime(), G::zero());
        let double = PoleLimitedRational::new(Poly::one(), 2, 0);
        assert_eq!(double.pi_prime(), G::zero());
    }

    #[test]
    fn integrate_real_line_values() {
        // arctangent: integral of 1/(1+xi^2) = pi.
        assert_eq!(one_over_one_plus_sq(1).integrate_real_line().unwrap(), G::one());

        // (-20 i xi + 88 i xi^3 + 60 i xi^5)/(1+xi^2)^7 integrates to zero.
        let f = PoleLimitedRational::new(
            Poly::from_coeffs(vec![
                G::zero(),
                G::from_parts(0, 1, -20, 1),
                G::zero(),
                G::from_parts(0, 1, 88, 1),
                G::zero(),
                G::from_parts(0, 1, 60, 1),
            ]),
            7,
            7,
        );
        assert_eq!(f.integrate_real_line().unwrap(), G::zero());

        let bad = PoleLimitedRational::new(Poly::monomial(G::one(), 1), 1, 1);
        assert_eq!(bad.integrate_real_line(), Err(RatFuncError::NotIntegrable));
    }

    #[test]
    fn residue_check_case9_kernel() {
        // Res_{+i} [ xi / ((xi-i)^5 (xi+i)^2) ] = 3i/64; the final residue
        // evaluation the fifteen-case pipeline leans on in case 9.
        let f = PoleLimitedRational::new(Poly::x(), 5, 2);
        assert_eq!(f.residue_at_plus_i(), G::from_parts(0, 1, 3, 64));
    }
}
