//! Symbol expression trees over geometric primitives, differentiation driven
//! by the finite derivative tables at the boundary point, and evaluation at
//! (x0, |xi'| = 1) into canonical sums of boundary symbol terms.
//!
//! Contract: within one factor of the boundary-term integrand, all x
//! derivatives are applied before any xi derivative. x derivatives only
//! accumulate pending markers on primitives; xi derivatives resolve any
//! primitive they touch through its table (which is exact, because a
//! primitive's xi structure at x0 is fully known) and differentiate the
//! result structurally.

pub mod sigma;
pub mod tables;

use std::collections::BTreeMap;

use crate::clifford::{CliffordWord, GeneratorKind};
use crate::curvature::{CurvatureFamily, RiemannAtom};
use crate::poly::Poly;
use crate::ratfunc::PoleLimitedRational;
use crate::scalars::{GaussianRational, Monomial, ParameterPolynomial, MONO_ONE};
use crate::sphere::SphereMonomial;

pub use tables::{Atom, AtomKind, JetError, XDir, NORMAL};

/// A differentiation direction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    X(XDir),
    XiTan(u8),
    XiNorm,
}

/// Expression tree for symbols and their derivatives.
#[derive(Clone, PartialEq, Debug)]
pub enum JetExpr {
    Num(GaussianRational),
    Param(ParameterPolynomial),
    /// xi_n
    XiN,
    /// xi_k, tangential, k in 1..=6
    Xi(u8),
    /// |xi'|^2 (evaluates to 1 on the cosphere; differentiates to 2 xi_k)
    XiPrimeNormSq,
    /// |xi|^{2 m}
    NormPow(i32),
    Cliff(GeneratorKind, u8),
    Riemann(CurvatureFamily, [u8; 4]),
    /// Opaque Clifford-odd atom T sum_i c(e_i) cbar(grad_i V); traceless.
    WittenGrad,
    Atom(Atom),
    Sum(Vec<JetExpr>),
    Prod(Vec<JetExpr>),
}

impl JetExpr {
    pub fn zero() -> Self {
        JetExpr::Num(GaussianRational::zero())
    }

    pub fn num(c: GaussianRational) -> Self {
        JetExpr::Num(c)
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(self, JetExpr::Num(c) if c.is_zero())
    }

    /// xi_k for k in 1..=7 with the normal direction mapped to XiN.
    pub fn xi(k: u8) -> Self {
        if k == NORMAL {
            JetExpr::XiN
        } else {
            JetExpr::Xi(k)
        }
    }

    /// Exact derivative; the `order` convenience applies it repeatedly.
    pub fn derivative(&self, dir: Dir) -> Result<JetExpr, JetError> {
        Ok(match self {
            JetExpr::Num(_) | JetExpr::Param(_) | JetExpr::Cliff(..) | JetExpr::Riemann(..) | JetExpr::WittenGrad => {
                JetExpr::zero()
            }
            JetExpr::XiN => match dir {
                Dir::XiNorm => JetExpr::num(GaussianRational::one()),
                _ => JetExpr::zero(),
            },
            JetExpr::Xi(k) => match dir {
                Dir::XiTan(j) if j == *k => JetExpr::num(GaussianRational::one()),
                _ => JetExpr::zero(),
            },
            JetExpr::XiPrimeNormSq => match dir {
                Dir::XiTan(j) => JetExpr::Prod(vec![
                    JetExpr::num(GaussianRational::from_int(2)),
                    JetExpr::Xi(j),
                ]),
                _ => JetExpr::zero(),
            },
            JetExpr::NormPow(m) => match dir {
                Dir::X(d) => JetExpr::Prod(vec![
                    JetExpr::num(GaussianRational::from_int(*m as i64)),
                    JetExpr::NormPow(m - 1),
                    JetExpr::Atom(Atom::with_dx(AtomKind::DNormSq, vec![d])),
                ]),
                Dir::XiNorm => JetExpr::Prod(vec![
                    JetExpr::num(GaussianRational::from_int(2 * *m as i64)),
                    JetExpr::XiN,
                    JetExpr::NormPow(m - 1),
                ]),
                Dir::XiTan(j) => JetExpr::Prod(vec![
                    JetExpr::num(GaussianRational::from_int(2 * *m as i64)),
                    JetExpr::Xi(j),
                    JetExpr::NormPow(m - 1),
                ]),
            },
            JetExpr::Atom(atom) => match dir {
                Dir::X(d) => JetExpr::Atom(atom.push_dx(d)),
                // xi derivative: resolve through the table, then structural.
                _ => tables::resolve_atom(atom)?.derivative(dir)?,
            },
            JetExpr::Sum(items) => {
                let parts: Result<Vec<_>, _> = items.iter().map(|e| e.derivative(dir)).collect();
                JetExpr::Sum(parts?)
            }
            JetExpr::Prod(factors) => {
                let mut terms = Vec::new();
                for (k, f) in factors.iter().enumerate() {
                    let df = f.derivative(dir)?;
                    if df.is_zero_literal() {
                        continue;
                    }
                    let mut fs = factors.clone();
                    fs[k] = df;
                    terms.push(JetExpr::Prod(fs));
                }
                JetExpr::Sum(terms)
            }
        })
    }

    pub fn derivative_n(&self, dir: Dir, order: u32) -> Result<JetExpr, JetError> {
        let mut e = self.clone();
        for _ in 0..order {
            e = e.derivative(dir)?;
        }
        Ok(e)
    }
}

/// The Clifford content of a boundary term.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CliffPart {
    Word(CliffordWord),
    /// The opaque Witten potential atom; any trace through it vanishes.
    WittenGrad,
}

impl CliffPart {
    pub fn identity() -> Self {
        CliffPart::Word(CliffordWord::IDENTITY)
    }
}

/// Canonical key of a boundary term: everything except the xi_n profile.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TermKey {
    pub params: Monomial,
    pub xi_prime: SphereMonomial,
    pub cliff: CliffPart,
    pub riemann: Option<RiemannAtom>,
}

/// One additive term of an evaluated symbol at (x0, |xi'| = 1).
#[derive(Clone, PartialEq, Debug)]
pub struct BoundarySymbolTerm {
    pub key: TermKey,
    pub xi_n: PoleLimitedRational,
}

/// An evaluated symbol: a canonical finite sum of boundary terms, keyed so
/// that equal shapes merge and comparisons are exact.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct BoundaryValue {
    terms: BTreeMap<TermKey, PoleLimitedRational>,
}

impl BoundaryValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, key: TermKey, xi_n: PoleLimitedRational) {
        if xi_n.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(PoleLimitedRational::zero);
        *entry = entry.clone() + xi_n;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &PoleLimitedRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = BoundarySymbolTerm> {
        self.terms
            .into_iter()
            .map(|(key, xi_n)| BoundarySymbolTerm { key, xi_n })
    }

    pub fn add(&self, rhs: &BoundaryValue) -> BoundaryValue {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> BoundaryValue {
        let mut out = BoundaryValue::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.scale(c));
        }
        out
    }

    /// Structural xi_n derivative (the xi' and Clifford parts are constant).
    pub fn derivative_xi_n(&self, order: u32) -> BoundaryValue {
        let mut out = BoundaryValue::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.derivative(order));
        }
        out
    }

    /// Hardy projection applied to every xi_n profile.
    pub fn pi_plus(&self) -> Result<BoundaryValue, crate::ratfunc::RatFuncError> {
        let mut out = BoundaryValue::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.pi_plus()?);
        }
        Ok(out)
    }

    /// Drops every term whose parameter monomial contains `ind`.
    pub fn without_param(&self, ind: crate::scalars::Indeterminate) -> BoundaryValue {
        let mut out = BoundaryValue::zero();
        for (k, v) in &self.terms {
            if k.params[ind.index()] == 0 {
                out.add_term(*k, v.clone());
            }
        }
        out
    }

    /// Pointwise product of two evaluated symbols: multiplies xi_n profiles,
    /// concatenates xi' monomials, multiplies Clifford parts (the sign folds
    /// into the profile) and merges curvature factors.
    pub fn mul(&self, rhs: &BoundaryValue) -> Result<BoundaryValue, JetError> {
        let mut out = BoundaryValue::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let riemann = match (ka.riemann, kb.riemann) {
                    (None, None) => None,
                    (Some(r), None) | (None, Some(r)) => Some(r),
                    (Some(_), Some(_)) => return Err(JetError::TwoCurvatureFactors),
                };
                let (cliff, sign) = match (ka.cliff, kb.cliff) {
                    (CliffPart::Word(wa), CliffPart::Word(wb)) => {
                        let (s, w) = wa.mul(&wb);
                        (CliffPart::Word(w), s)
                    }
                    (CliffPart::WittenGrad, CliffPart::Word(w))
                    | (CliffPart::Word(w), CliffPart::WittenGrad) => {
                        if w.is_identity() {
                            (CliffPart::WittenGrad, 1)
                        } else {
                            return Err(JetError::WittenAtomCollision);
                        }
                    }
                    (CliffPart::WittenGrad, CliffPart::WittenGrad) => {
                        return Err(JetError::WittenAtomCollision)
                    }
                };
                let mut xi_n = va.clone() * vb.clone();
                if sign < 0 {
                    xi_n = xi_n.scale(&(-GaussianRational::one()));
                }
                let key = TermKey {
                    params: crate::scalars::mono_mul(&ka.params, &kb.params),
                    xi_prime: ka.xi_prime.mul(&kb.xi_prime),
                    cliff,
                    riemann,
                };
                out.add_term(key, xi_n);
            }
        }
        Ok(out)
    }

    /// Clifford trace: keeps identity-grade words with weight 8 and drops
    /// everything else (including the Witten potential atom).
    pub fn trace(&self) -> BoundaryValue {
        let mut out = BoundaryValue::zero();
        for (k, v) in &self.terms {
            match k.cliff {
                CliffPart::Word(w) if w.is_identity() => {
                    let key = TermKey { cliff: CliffPart::identity(), ..*k };
                    out.add_term(key, v.scale(&GaussianRational::from_int(8)));
                }
                _ => {}
            }
        }
        out
    }
}

/// One flattened product during evaluation.
#[derive(Clone, Default)]
struct FlatAccum {
    coeff: GaussianRational,
    params: ParameterPolynomial,
    xin_pow: u32,
    xi_exp: [u32; 6],
    norm_pow: i32,
    word: CliffordWord,
    witten: bool,
    riemann: Option<RiemannAtom>,
    atoms: Vec<Atom>,
}

impl FlatAccum {
    fn new() -> Self {
        FlatAccum {
            coeff: GaussianRational::one(),
            params: ParameterPolynomial::one(),
            ..Default::default()
        }
    }
}

/// Evaluates an expression at (x0, |xi'| = 1): resolves every pending
/// primitive through its table (with the paired rule for two first
/// derivatives of |xi|^2 inside one term), substitutes |xi|^2 -> 1 + xi_n^2
/// and |xi'|^2 -> 1, and collects the result into canonical boundary terms.
pub fn evaluate_at_boundary(expr: &JetExpr) -> Result<BoundaryValue, JetError> {
    let mut out = BoundaryValue::zero();
    let acc = FlatAccum::new();
    eval_into(expr, &acc, &mut out)?;
    Ok(out)
}

fn eval_into(expr: &JetExpr, acc: &FlatAccum, out: &mut BoundaryValue) -> Result<(), JetError> {
    match expr {
        JetExpr::Sum(items) => {
            for item in items {
                eval_into(item, acc, out)?;
            }
            Ok(())
        }
        JetExpr::Prod(factors) => {
            let mut current = acc.clone();
            let mut pending: Vec<&JetExpr> = Vec::new();
            for f in factors {
                match f {
                    JetExpr::Sum(_) | JetExpr::Prod(_) => pending.push(f),
                    simple => absorb(simple, &mut current)?,
                }
            }
            distribute(&pending, &current, out)
        }
        simple => {
            let mut current = acc.clone();
            absorb(simple, &mut current)?;
            distribute(&[], &current, out)
        }
    }
}

fn distribute(pending: &[&JetExpr], acc: &FlatAccum, out: &mut BoundaryValue) -> Result<(), JetError> {
    match pending.split_first() {
        None => finish(acc, out),
        Some((first, rest)) => match first {
            JetExpr::Sum(items) => {
                for item in items {
                    let mut nested = vec![item];
                    nested.extend_from_slice(rest);
                    distribute(&nested, acc, out)?;
                }
                Ok(())
            }
            JetExpr::Prod(factors) => {
                let mut current = acc.clone();
                let mut nested: Vec<&JetExpr> = Vec::new();
                for f in factors {
                    match f {
                        JetExpr::Sum(_) | JetExpr::Prod(_) => nested.push(f),
                        simple => absorb(simple, &mut current)?,
                    }
                }
                nested.extend_from_slice(rest);
                distribute(&nested, &current, out)
            }
            simple => {
                let mut current = acc.clone();
                absorb(simple, &mut current)?;
                distribute(rest, &current, out)
            }
        },
    }
}

fn absorb(leaf: &JetExpr, acc: &mut FlatAccum) -> Result<(), JetError> {
    match leaf {
        JetExpr::Num(c) => acc.coeff = acc.coeff.clone() * c.clone(),
        JetExpr::Param(p) => acc.params = acc.params.clone() * p.clone(),
        JetExpr::XiN => acc.xin_pow += 1,
        JetExpr::Xi(k) => acc.xi_exp[(*k - 1) as usize] += 1,
        JetExpr::XiPrimeNormSq => {} // |xi'|^2 = 1 on the cosphere
        JetExpr::NormPow(m) => acc.norm_pow += m,
        JetExpr::Cliff(kind, i) => {
            let gen = match kind {
                GeneratorKind::C => CliffordWord { bar_mask: 0, plain_mask: 1 << (i - 1) },
                GeneratorKind::Cbar => CliffordWord { bar_mask: 1 << (i - 1), plain_mask: 0 },
            };
            let (sign, w) = acc.word.mul(&gen);
            acc.word = w;
            if sign < 0 {
                acc.coeff = -acc.coeff.clone();
            }
        }
        JetExpr::Riemann(family, slots) => {
            if acc.riemann.is_some() {
                return Err(JetError::TwoCurvatureFactors);
            }
            // Store the canonical representative so equal tensors merge; a
            // repeated index inside an antisymmetric pair kills the term.
            match (RiemannAtom { family: *family, slots: *slots }).canonicalize() {
                None => acc.coeff = GaussianRational::zero(),
                Some((sign, canon)) => {
                    if sign < 0 {
                        acc.coeff = -acc.coeff.clone();
                    }
                    acc.riemann = Some(canon);
                }
            }
        }
        JetExpr::WittenGrad => acc.witten = true,
        JetExpr::Atom(a) => acc.atoms.push(a.clone()),
        JetExpr::Sum(_) | JetExpr::Prod(_) => unreachable!("compound absorbed elsewhere"),
    }
    Ok(())
}

fn finish(acc: &FlatAccum, out: &mut BoundaryValue) -> Result<(), JetError> {
    if acc.coeff.is_zero() || acc.params.is_zero() {
        return Ok(());
    }
    if !acc.atoms.is_empty() {
        // Resolve atoms: first-derivative markers of |xi|^2 resolve in pairs
        // within a term, everything else individually.
        let mut singles: Vec<XDir> = Vec::new();
        let mut resolved: Vec<JetExpr> = Vec::new();
        for atom in &acc.atoms {
            if atom.kind == AtomKind::DNormSq && atom.dx.len() == 1 {
                singles.push(atom.dx[0]);
            } else {
                resolved.push(tables::resolve_atom(atom)?);
            }
        }
        match singles.len() {
            0 => {}
            1 => resolved.push(tables::resolve_atom(&Atom::with_dx(
                AtomKind::DNormSq,
                vec![singles[0]],
            ))?),
            2 => resolved.push(tables::resolve_dnormsq_pair(singles[0], singles[1])),
            _ => {
                return Err(JetError::MissingTableEntry {
                    primitive: "|xi|^2".to_string(),
                    directions: "more than two paired first derivatives".to_string(),
                })
            }
        }
        let mut base = acc.clone();
        base.atoms.clear();
        let product = JetExpr::Prod(resolved);
        return eval_into(&product, &base, out);
    }

    // Pure structural term: build the canonical boundary term.
    // |xi|^{2m} evaluates to (1 + xi_n^2)^m.
    let mut num = Poly::monomial(acc.coeff.clone(), acc.xin_pow as usize);
    let (p, q) = if acc.norm_pow >= 0 {
        let lift = (Poly::x() * Poly::x() + Poly::one()).pow(acc.norm_pow as u32);
        num = num * lift;
        (0u32, 0u32)
    } else {
        let k = (-acc.norm_pow) as u32;
        (k, k)
    };
    let xi_n = PoleLimitedRational::new(num, p, q);
    if xi_n.is_zero() {
        return Ok(());
    }

    let cliff = if acc.witten {
        if !acc.word.is_identity() {
            return Err(JetError::WittenAtomCollision);
        }
        CliffPart::WittenGrad
    } else {
        CliffPart::Word(acc.word)
    };

    let mut exps = [0u32; 6];
    exps.copy_from_slice(&acc.xi_exp);
    for (mono, coeff) in acc.params.terms() {
        let key = TermKey {
            params: *mono,
            xi_prime: SphereMonomial::new(exps),
            cliff,
            riemann: acc.riemann,
        };
        out.add_term(key, xi_n.scale(coeff));
    }
    Ok(())
}

/// Convenience carried over from the tables: the empty parameter monomial.
pub fn scalar_key(xi_prime: SphereMonomial) -> TermKey {
    TermKey { params: MONO_ONE, xi_prime, cliff: CliffPart::identity(), riemann: None }
}
