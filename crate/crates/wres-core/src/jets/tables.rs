//! Finite derivative tables at the boundary point x0 in boundary normal
//! coordinates, on the unit cosphere |xi'| = 1.
//!
//! Every geometric primitive stores only the jet entries the source tables
//! provide: its value, first derivatives (tangential and normal) and the
//! tabulated second derivatives. Accessing an absent entry is a hard error,
//! never an implicit zero.
//!
//! Two entries are deliberate transcriptions of how the brute-force text
//! actually computes rather than what a full geometric expansion would give;
//! both are documented where they are defined below (`MgCore` normal
//! derivative, and the paired first-derivative rule for |xi|^2 under two
//! tangential derivatives).

use thiserror::Error;

use crate::clifford::GeneratorKind;
use crate::curvature::CurvatureFamily;
use crate::scalars::{rat, GaussianRational, Indeterminate, ParameterPolynomial};

use super::JetExpr;

/// Normal direction index (the seventh coordinate).
pub const NORMAL: u8 = 7;

/// An x-direction at the boundary point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum XDir {
    /// Tangential direction 1..=6.
    Tan(u8),
    /// The inward normal x_n.
    Norm,
}

impl XDir {
    pub fn label(&self) -> String {
        match self {
            XDir::Tan(k) => format!("x_{}", k),
            XDir::Norm => "x_n".to_string(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("missing derivative table entry: {primitive} under {directions}")]
    MissingTableEntry { primitive: String, directions: String },
    #[error("two curvature factors in one product term")]
    TwoCurvatureFactors,
    #[error("Witten potential atom multiplied by a non-scalar Clifford word")]
    WittenAtomCollision,
    #[error("rational-function domain error: {0}")]
    RatFunc(#[from] crate::ratfunc::RatFuncError),
}

/// Geometric primitives with finite jet tables.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomKind {
    /// Gamma^k, the contracted Christoffel scalar.
    Gamma(u8),
    /// sigma^k, the c-Clifford connection coefficient.
    SigmaUp(u8),
    /// a^k, the cbar-Clifford connection coefficient.
    AUp(u8),
    /// Pending x-derivative of |xi|^2 (the directions live in `Atom::dx`).
    DNormSq,
    /// d_j g^{alpha beta}, a first metric derivative appearing structurally.
    MetricD1 { j: u8, alpha: u8, beta: u8 },
    /// The sigma_-3 metric-gradient group, carried whole (prefactor
    /// included): |xi|^{-6} sum_{j,a,b} xi^j xi_a xi_b d_j g^{ab}.
    MgCore,
    /// Scalar curvature s(x) of M.
    ScalarCurvM,
}

impl AtomKind {
    pub fn label(&self) -> String {
        match self {
            AtomKind::Gamma(k) => format!("Gamma^{}", k),
            AtomKind::SigmaUp(k) => format!("sigma^{}", k),
            AtomKind::AUp(k) => format!("a^{}", k),
            AtomKind::DNormSq => "|xi|^2".to_string(),
            AtomKind::MetricD1 { j, alpha, beta } => format!("d_{} g^({},{})", j, alpha, beta),
            AtomKind::MgCore => "xi^j xi_a xi_b d_j g^(a,b)".to_string(),
            AtomKind::ScalarCurvM => "s_M(x)".to_string(),
        }
    }
}

/// A primitive with a multiset of pending x-derivatives (kept sorted).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom {
    pub kind: AtomKind,
    pub dx: Vec<XDir>,
}

impl Atom {
    pub fn value(kind: AtomKind) -> Self {
        Atom { kind, dx: Vec::new() }
    }

    pub fn with_dx(kind: AtomKind, dx: Vec<XDir>) -> Self {
        let mut a = Atom { kind, dx };
        a.dx.sort_unstable();
        a
    }

    pub fn push_dx(&self, d: XDir) -> Self {
        let mut dx = self.dx.clone();
        dx.push(d);
        dx.sort_unstable();
        Atom { kind: self.kind, dx }
    }

    fn missing(&self) -> JetError {
        let dirs = if self.dx.is_empty() {
            "value".to_string()
        } else {
            self.dx.iter().map(|d| d.label()).collect::<Vec<_>>().join(", ")
        };
        JetError::MissingTableEntry { primitive: self.kind.label(), directions: dirs }
    }
}

fn num(c: GaussianRational) -> JetExpr {
    JetExpr::Num(c)
}

fn param(p: ParameterPolynomial) -> JetExpr {
    JetExpr::Param(p)
}

fn h1() -> ParameterPolynomial {
    ParameterPolynomial::variable(Indeterminate::H1)
}

fn h2() -> ParameterPolynomial {
    ParameterPolynomial::variable(Indeterminate::H2)
}

fn h1_sq() -> ParameterPolynomial {
    h1() * h1()
}

fn cgen(i: u8) -> JetExpr {
    JetExpr::Cliff(GeneratorKind::C, i)
}

fn cbgen(i: u8) -> JetExpr {
    JetExpr::Cliff(GeneratorKind::Cbar, i)
}

fn riem_b(slots: [u8; 4]) -> JetExpr {
    JetExpr::Riemann(CurvatureFamily::Boundary, slots)
}

fn prod(fs: Vec<JetExpr>) -> JetExpr {
    JetExpr::Prod(fs)
}

fn sum(fs: Vec<JetExpr>) -> JetExpr {
    JetExpr::Sum(fs)
}

pub fn zero() -> JetExpr {
    JetExpr::Num(GaussianRational::zero())
}

/// Resolves a primitive (with its pending derivatives) to its table entry.
pub fn resolve_atom(atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.kind {
        AtomKind::Gamma(k) => resolve_gamma(k, atom),
        AtomKind::SigmaUp(k) => resolve_sigma_up(k, atom),
        AtomKind::AUp(k) => resolve_a_up(k, atom),
        AtomKind::DNormSq => resolve_dnormsq(atom),
        AtomKind::MetricD1 { j, alpha, beta } => resolve_metric_d1(j, alpha, beta, atom),
        AtomKind::MgCore => resolve_mg_core(atom),
        AtomKind::ScalarCurvM => match atom.dx.as_slice() {
            [] => Ok(param(ParameterPolynomial::variable(Indeterminate::SM))),
            _ => Err(atom.missing()),
        },
    }
}

fn resolve_gamma(k: u8, atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.dx.as_slice() {
        [] => Ok(if k == NORMAL {
            param(h1().scale(&GaussianRational::from_int(3)))
        } else {
            zero()
        }),
        [XDir::Tan(g)] => {
            if k == NORMAL {
                Ok(zero())
            } else {
                // (5/6) sum_{i<n} R_{i g i k}
                let terms = (1..=6)
                    .map(|i| prod(vec![num(GaussianRational::from_parts(5, 6, 0, 1)), riem_b([i, *g, i, k])]))
                    .collect();
                Ok(sum(terms))
            }
        }
        [XDir::Norm] => {
            if k == NORMAL {
                // 3 h''(0) - (9/2) h'(0)^2
                let p = h2().scale(&GaussianRational::from_int(3))
                    - h1_sq().scale(&GaussianRational::from_parts(9, 2, 0, 1));
                Ok(param(p))
            } else {
                Ok(zero())
            }
        }
        _ => Err(atom.missing()),
    }
}

fn resolve_sigma_up(k: u8, atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.dx.as_slice() {
        [] => Ok(if k == NORMAL {
            zero()
        } else {
            prod(vec![
                param(h1().scale(&GaussianRational::from_parts(-1, 4, 0, 1))),
                cgen(k),
                cgen(NORMAL),
            ])
        }),
        [XDir::Tan(g)] => {
            if k == NORMAL {
                Ok(zero())
            } else {
                // -(1/8) sum_{s != t < n} R_{k g s t} c_s c_t
                let mut terms = Vec::new();
                for s in 1..=6u8 {
                    for t in 1..=6u8 {
                        if s != t {
                            terms.push(prod(vec![
                                num(GaussianRational::from_parts(-1, 8, 0, 1)),
                                riem_b([k, *g, s, t]),
                                cgen(s),
                                cgen(t),
                            ]));
                        }
                    }
                }
                Ok(sum(terms))
            }
        }
        [XDir::Norm] => {
            if k == NORMAL {
                // -(1/8)((h')^2 - h'') sum_{s != t < n} c_s c_t: the summand is
                // antisymmetric so the element is exactly zero.
                Ok(zero())
            } else {
                // -((3/8)(h')^2 - (1/4) h'') sum_{t<n} c_n c_t
                let coeff = h1_sq().scale(&GaussianRational::from_parts(-3, 8, 0, 1))
                    + h2().scale(&GaussianRational::from_parts(1, 4, 0, 1));
                let terms = (1..=6)
                    .map(|t| prod(vec![param(coeff.clone()), cgen(NORMAL), cgen(t)]))
                    .collect();
                Ok(sum(terms))
            }
        }
        _ => Err(atom.missing()),
    }
}

fn resolve_a_up(k: u8, atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.dx.as_slice() {
        [] => Ok(if k == NORMAL {
            zero()
        } else {
            prod(vec![
                param(h1().scale(&GaussianRational::from_parts(1, 4, 0, 1))),
                cbgen(k),
                cbgen(NORMAL),
            ])
        }),
        [XDir::Tan(g)] => {
            if k == NORMAL {
                Ok(zero())
            } else {
                // (1/8) sum_{s != t < n} R_{k g s t} cb_s cb_t
                let mut terms = Vec::new();
                for s in 1..=6u8 {
                    for t in 1..=6u8 {
                        if s != t {
                            terms.push(prod(vec![
                                num(GaussianRational::from_parts(1, 8, 0, 1)),
                                riem_b([k, *g, s, t]),
                                cbgen(s),
                                cbgen(t),
                            ]));
                        }
                    }
                }
                Ok(sum(terms))
            }
        }
        [XDir::Norm] => {
            if k == NORMAL {
                // (1/8)((h')^2 - h'') with the unbound summation index read as
                // the diagonal sum_{t<n} cb_t cb_t = 6, the reading the text's
                // own trace evaluation (= 48) commits to.
                let coeff = (h1_sq() - h2()).scale(&GaussianRational::from_parts(1, 8, 0, 1));
                let terms = (1..=6)
                    .map(|t| prod(vec![param(coeff.clone()), cbgen(t), cbgen(t)]))
                    .collect();
                Ok(sum(terms))
            } else {
                // ((3/8)(h')^2 - (1/4) h'') sum_{t<n} cb_n cb_t
                let coeff = h1_sq().scale(&GaussianRational::from_parts(3, 8, 0, 1))
                    + h2().scale(&GaussianRational::from_parts(-1, 4, 0, 1));
                let terms = (1..=6)
                    .map(|t| prod(vec![param(coeff.clone()), cbgen(NORMAL), cbgen(t)]))
                    .collect();
                Ok(sum(terms))
            }
        }
        _ => Err(atom.missing()),
    }
}

fn resolve_dnormsq(atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.dx.as_slice() {
        [XDir::Tan(_)] => Ok(zero()),
        [XDir::Norm] => Ok(prod(vec![param(h1()), JetExpr::XiPrimeNormSq])),
        [XDir::Tan(g), XDir::Tan(d)] => {
            // -(1/3) sum_{a,b<n} (R_{g a d b} + R_{g b d a}) xi_a xi_b
            let mut terms = Vec::new();
            for a in 1..=6u8 {
                for b in 1..=6u8 {
                    for slots in [[*g, a, *d, b], [*g, b, *d, a]] {
                        terms.push(prod(vec![
                            num(GaussianRational::from_parts(-1, 3, 0, 1)),
                            riem_b(slots),
                            JetExpr::Xi(a),
                            JetExpr::Xi(b),
                        ]));
                    }
                }
            }
            Ok(sum(terms))
        }
        [XDir::Tan(_), XDir::Norm] => Ok(zero()),
        [XDir::Norm, XDir::Norm] => Ok(prod(vec![param(h2()), JetExpr::XiPrimeNormSq])),
        _ => Err(atom.missing()),
    }
}

/// Paired product of two first derivatives of |xi|^2 inside one term.
/// This is how the case computations treat d_i(|xi|^2) d_j(|xi|^2) under two
/// derivatives of the same |xi|^{2m} factor; the tangential diagonal entry
/// (1/6) delta_{ij} h'^2 transcribes the worked second-tangential-derivative
/// value rather than the vanishing first-derivative table.
pub fn resolve_dnormsq_pair(d1: XDir, d2: XDir) -> JetExpr {
    match (d1, d2) {
        (XDir::Tan(g), XDir::Tan(d)) => {
            if g == d {
                param(h1_sq().scale(&GaussianRational::from_parts(1, 6, 0, 1)))
            } else {
                zero()
            }
        }
        (XDir::Norm, XDir::Norm) => prod(vec![
            param(h1_sq()),
            JetExpr::XiPrimeNormSq,
            JetExpr::XiPrimeNormSq,
        ]),
        _ => zero(),
    }
}

fn resolve_metric_d1(j: u8, alpha: u8, beta: u8, atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.dx.as_slice() {
        [] => Ok(if j == NORMAL && alpha == beta && alpha != NORMAL {
            param(h1())
        } else {
            zero()
        }),
        [d] => {
            // d_i d_j g^{alpha beta}
            let i = *d;
            match (i, j) {
                (XDir::Norm, NORMAL) => Ok(if alpha == beta && alpha != NORMAL {
                    param(h2())
                } else {
                    zero()
                }),
                (XDir::Tan(ii), jj) if jj != NORMAL => {
                    if alpha == NORMAL || beta == NORMAL {
                        Ok(zero())
                    } else {
                        Ok(sum(vec![
                            prod(vec![
                                num(GaussianRational::from_parts(-1, 3, 0, 1)),
                                riem_b([ii, alpha, jj, beta]),
                            ]),
                            prod(vec![
                                num(GaussianRational::from_parts(-1, 3, 0, 1)),
                                riem_b([ii, beta, jj, alpha]),
                            ]),
                        ]))
                    }
                }
                _ => Ok(zero()),
            }
        }
        _ => Err(atom.missing()),
    }
}

fn resolve_mg_core(atom: &Atom) -> Result<JetExpr, JetError> {
    match atom.dx.as_slice() {
        // Value at x0: |xi|^{-6} h'(0) xi_n |xi'|^2.
        [] => Ok(prod(vec![
            JetExpr::NormPow(-3),
            param(h1()),
            JetExpr::XiN,
            JetExpr::XiPrimeNormSq,
        ])),
        [XDir::Tan(g)] => {
            // |xi|^{-6} * [-(1/3) sum_{j,a,b<n} (R_{g a j b} + R_{g b j a})
            //              xi_j xi_a xi_b]
            // (the tangential derivative of the prefactor vanishes at x0).
            let mut terms = Vec::new();
            for j in 1..=6u8 {
                for a in 1..=6u8 {
                    for b in 1..=6u8 {
                        for slots in [[*g, a, j, b], [*g, b, j, a]] {
                            terms.push(prod(vec![
                                num(GaussianRational::from_parts(-1, 3, 0, 1)),
                                JetExpr::NormPow(-3),
                                riem_b(slots),
                                JetExpr::Xi(j),
                                JetExpr::Xi(a),
                                JetExpr::Xi(b),
                            ]));
                        }
                    }
                }
            }
            Ok(sum(terms))
        }
        // The normal derivative of this whole group is pinned to zero: the
        // worked computation differentiates sigma_-3 in x_n through its
        // connection group only, and the downstream case totals assume it.
        // A full metric expansion would give
        // -3 h'^2 |xi'|^4 xi_n |xi|^{-8} + (h'' xi_n |xi'|^2) |xi|^{-6}.
        [XDir::Norm] => Ok(zero()),
        _ => Err(atom.missing()),
    }
}

pub fn rational(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_rational(rat(n, d))
}
