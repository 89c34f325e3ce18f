//! Exact integration of monomials in xi' = (xi_1..xi_6) over the unit sphere
//! S^5 in R^6, returned as rational multiples of Omega_5 (= pi^3), plus the
//! Wick-pairing tensor form used to contract curvature factors.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::scalars::Rational;

/// Number of tangential directions.
pub const TANGENT_DIM: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SphereError {
    #[error("pairing tensor needs an even index count, got {0}")]
    OddIndexCount(usize),
}

/// A concrete monomial: exponent of each tangential coordinate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SphereMonomial {
    pub exponents: [u32; TANGENT_DIM],
}

impl SphereMonomial {
    pub fn new(exponents: [u32; TANGENT_DIM]) -> Self {
        SphereMonomial { exponents }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut e = self.exponents;
        for (a, b) in e.iter_mut().zip(rhs.exponents.iter()) {
            *a += b;
        }
        SphereMonomial { exponents: e }
    }

    /// Monomial built from a list of coordinate indices (1-based).
    pub fn from_indices(indices: &[u8]) -> Self {
        let mut e = [0u32; TANGENT_DIM];
        for &i in indices {
            e[(i - 1) as usize] += 1;
        }
        SphereMonomial { exponents: e }
    }
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Moment of the monomial over S^5 divided by Omega_5. For even exponents
/// 2a_i this is 2 prod[(2a_i)! / (4^{a_i} a_i!)] / (A + 2)! with A = sum a_i,
/// the Gamma-function closed form with all sqrt(pi) factors cancelled against
/// Omega_5 = 2 pi^3 / Gamma(3). Any odd exponent integrates to zero.
pub fn sphere_moment(m: &SphereMonomial) -> Rational {
    if m.exponents.iter().any(|e| e % 2 == 1) {
        return Rational::from_integer(BigInt::from(0));
    }
    let halves: Vec<u64> = m.exponents.iter().map(|&e| (e / 2) as u64).collect();
    let total: u64 = halves.iter().sum();
    let mut num = BigInt::from(2);
    let mut den = BigInt::one();
    for &a in &halves {
        num *= factorial(2 * a);
        den *= BigInt::from(4u32).pow(a as u32) * factorial(a);
    }
    den *= factorial(total + 2);
    Rational::new(num, den)
}

/// One perfect matching of the abstract slots 0..2m-1.
pub type Matching = Vec<(usize, usize)>;

/// The Wick-pairing form of a degree-2m moment: the common rational weight
/// and all (2m-1)!! matchings, so that
/// int xi_{mu_1} .. xi_{mu_2m} = weight * sum_matchings prod delta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTensor {
    pub weight: Rational,
    pub matchings: Vec<Matching>,
}

/// Weight of the degree-2m pairing tensor: the moment of a product of m
/// distinct squared coordinates (1/6 for 2m = 2, 1/48 for 2m = 4, ...).
pub fn pairing_weight(m: usize) -> Rational {
    let mut exps = [0u32; TANGENT_DIM];
    assert!(m <= TANGENT_DIM, "pairing weight beyond available coordinates");
    for e in exps.iter_mut().take(m) {
        *e = 2;
    }
    sphere_moment(&SphereMonomial::new(exps))
}

/// All perfect matchings on `slots` abstract indices, weighted by the moment
/// constant of that degree.
pub fn pairing_tensor(slots: usize) -> Result<PairingTensor, SphereError> {
    if slots % 2 == 1 {
        return Err(SphereError::OddIndexCount(slots));
    }
    let mut matchings = Vec::new();
    let mut current = Vec::new();
    let mut free: Vec<usize> = (0..slots).collect();
    enumerate_matchings(&mut free, &mut current, &mut matchings);
    Ok(PairingTensor { weight: pairing_weight(slots / 2), matchings })
}

fn enumerate_matchings(free: &mut [usize], current: &mut Matching, out: &mut Vec<Matching>) {
    if free.is_empty() {
        out.push(current.clone());
        return;
    }
    let first = free[0];
    for k in 1..free.len() {
        let partner = free[k];
        let mut rest: Vec<usize> = free[1..].to_vec();
        rest.retain(|&x| x != partner);
        current.push((first, partner));
        enumerate_matchings(&mut rest, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn odd_moments_vanish() {
        let m = SphereMonomial::from_indices(&[1]);
        assert_eq!(sphere_moment(&m), rat(0, 1));
        let m3 = SphereMonomial::from_indices(&[1, 2, 3]);
        assert_eq!(sphere_moment(&m3), rat(0, 1));
    }

    #[test]
    fn low_degree_moments() {
        // int xi_mu xi_nu = (1/6) delta_{mu nu}
        assert_eq!(sphere_moment(&SphereMonomial::from_indices(&[2, 2])), rat(1, 6));
        // int xi_1^2 xi_2^2 = 1/48
        assert_eq!(
            sphere_moment(&SphereMonomial::from_indices(&[1, 1, 2, 2])),
            rat(1, 48)
        );
        // int xi_1^4 = 1/16
        assert_eq!(
            sphere_moment(&SphereMonomial::from_indices(&[1, 1, 1, 1])),
            rat(1, 16)
        );
    }

    #[test]
    fn pairing_tensor_shapes() {
        let t2 = pairing_tensor(2).unwrap();
        assert_eq!(t2.weight, rat(1, 6));
        assert_eq!(t2.matchings, vec![vec![(0, 1)]]);

        let t4 = pairing_tensor(4).unwrap();
        assert_eq!(t4.weight, rat(1, 48));
        assert_eq!(t4.matchings.len(), 3);

        assert_eq!(pairing_tensor(3), Err(SphereError::OddIndexCount(3)));

        // (2m-1)!! matchings
        assert_eq!(pairing_tensor(6).unwrap().matchings.len(), 15);
        assert_eq!(pairing_tensor(8).unwrap().matchings.len(), 105);
    }

    #[test]
    fn normalization_sum_rule() {
        // sum_mu moment(xi_mu^2 * m) = moment(m) for every monomial m of
        // degree <= 6 (the sphere constraint sum xi^2 = 1).
        let mut monomials = vec![SphereMonomial::one()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for m in &monomials {
                for i in 1..=6u8 {
                    next.push(m.mul(&SphereMonomial::from_indices(&[i])));
                }
            }
            monomials.append(&mut next);
            monomials.sort();
            monomials.dedup();
        }
        for m in &monomials {
            let mut total = rat(0, 1);
            for i in 1..=6u8 {
                total += sphere_moment(&m.mul(&SphereMonomial::from_indices(&[i, i])));
            }
            assert_eq!(total, sphere_moment(m), "failed for {:?}", m);
        }
    }
}
