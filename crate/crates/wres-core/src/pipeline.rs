//! The fifteen boundary cases: enumeration of the derivative multi-indices,
//! assembly of each integrand, trace, residue integration over xi_n, sphere
//! moments with curvature contraction, the boundary-term total, the theorem
//! record and the gravitational-action record.
//!
//! Every case value is the exact coefficient of pi * Omega_5 as an element
//! of Q(i)[H1, H2, SM, SB, TV].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::curvature::{CurvatureError, CurvatureFamily, RiemannAtom, RiemannCollector};
use crate::jets::{self, evaluate_at_boundary, BoundaryValue, CliffPart, Dir, JetError, XDir};
use crate::ratfunc::{PoleLimitedRational, RatFuncError};
use crate::scalars::{
    mono_mul, GaussianRational, Indeterminate, Monomial, ParameterPolynomial, Rational,
};
use crate::sphere::{sphere_moment, SphereMonomial};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("case {case_id}: {source}")]
    Jet {
        case_id: u8,
        #[source]
        source: JetError,
    },
    #[error("case {case_id}: {source}")]
    RatFunc {
        case_id: u8,
        #[source]
        source: RatFuncError,
    },
    #[error("case {case_id}: {source}")]
    Curvature {
        case_id: u8,
        #[source]
        source: CurvatureError,
    },
    #[error("case {case_id}: a manifold curvature factor survived the trace")]
    ManifoldCurvatureSurvived { case_id: u8 },
}

/// One solution of the order constraint: the derivative pattern of a case.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CaseSpec {
    pub case_id: u8,
    /// order of the left (projected) symbol factor, <= -p1
    pub r: i32,
    /// order of the right symbol factor, <= -p2
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl CaseSpec {
    /// The defining constraint -r - l + 1 + k + j + |alpha| = n.
    pub fn satisfies_constraint(&self, n: i32) -> bool {
        -self.r - self.l + 1 + self.k as i32 + self.j as i32 + self.alpha as i32 == n
    }

    /// (-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!), with the alpha! absorbed by
    /// summing ordered direction tuples: the tuple sum divided by |alpha|!
    /// equals the multi-index sum weighted by 1/alpha!.
    pub fn prefactor(&self) -> GaussianRational {
        let power = (self.alpha + self.j + self.k + 1) as i64;
        let mut denom = 1i64;
        for v in 1..=(self.j + self.k + 1) as i64 {
            denom *= v;
        }
        for v in 1..=self.alpha as i64 {
            denom *= v;
        }
        GaussianRational::i_pow(-power).scale(&crate::scalars::rat(1, denom))
    }
}

/// All solutions of the constraint for dimension n and orders (p1, p2),
/// bounded by the available symbol tables (orders down to -(n - 3)).
pub fn enumerate_cases(n: u32, p1: u32, p2: u32) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    let budget = n as i32 - 1; // -r - l + k + j + |alpha| = n - 1
    for r in (-(budget - p2 as i32))..=(-(p1 as i32)) {
        for l in (-(budget + r))..=(-(p2 as i32)) {
            let rest = budget + r + l;
            if rest < 0 {
                continue;
            }
            for k in 0..=rest {
                for j in 0..=(rest - k) {
                    let alpha = rest - k - j;
                    out.push(CaseSpec {
                        case_id: 0,
                        r,
                        l,
                        k: k as u32,
                        j: j as u32,
                        alpha: alpha as u32,
                    });
                }
            }
        }
    }
    out
}

/// The fifteen cases of the (n, p1, p2) = (7, 2, 2) computation in the
/// order the source lists them.
pub fn the_fifteen_cases() -> Vec<CaseSpec> {
    let table: [(i32, i32, u32, u32, u32); 15] = [
        (-2, -2, 0, 1, 1),
        (-2, -2, 0, 2, 0),
        (-2, -2, 0, 0, 2),
        (-2, -2, 1, 1, 0),
        (-2, -2, 1, 0, 1),
        (-2, -2, 2, 0, 0),
        (-2, -3, 0, 1, 0),
        (-2, -3, 0, 0, 1),
        (-2, -3, 1, 0, 0),
        (-3, -2, 0, 1, 0),
        (-3, -2, 0, 0, 1),
        (-3, -2, 1, 0, 0),
        (-3, -3, 0, 0, 0),
        (-2, -4, 0, 0, 0),
        (-4, -2, 0, 0, 0),
    ];
    table
        .iter()
        .enumerate()
        .map(|(idx, &(r, l, k, j, alpha))| CaseSpec {
            case_id: (idx + 1) as u8,
            r,
            l,
            k,
            j,
            alpha,
        })
        .collect()
}

/// One post-trace integrand term of a case, before xi_n integration and
/// sphere moments; the ledger entry numeric re-checks work from.
#[derive(Clone, Debug)]
pub struct LedgerTerm {
    pub params: Monomial,
    pub xi_n: PoleLimitedRational,
    pub xi_prime: SphereMonomial,
    pub riemann: Option<RiemannAtom>,
    /// Exact integral over the real line of the xi_n profile, as a Q(i)
    /// multiple of pi.
    pub residue_integral: GaussianRational,
    /// Exact sphere moment of the xi' monomial as a multiple of Omega_5.
    pub moment: Rational,
}

/// Exact evaluation of one case, with the per-term ledger.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub spec: CaseSpec,
    /// Coefficient of pi * Omega_5.
    pub value: ParameterPolynomial,
    pub ledger: Vec<LedgerTerm>,
}

/// Direction tuples of the alpha expansion: (1..=6)^m.
fn tangential_tuples(m: u32) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for t in &out {
            for d in 1..=6u8 {
                let mut tt = t.clone();
                tt.push(d);
                next.push(tt);
            }
        }
        out = next;
    }
    out
}

/// Left factor of the integrand for one direction tuple:
/// pi+ after d^j_{x_n} d^{tuple}_{xi'} d^k_{xi_n} of sigma_r.
fn left_factor(spec: &CaseSpec, tuple: &[u8]) -> Result<BoundaryValue, PipelineError> {
    let wrap_jet = |source| PipelineError::Jet { case_id: spec.case_id, source };
    let mut e = jets::sigma::build_symbol(spec.r);
    for _ in 0..spec.j {
        e = e.derivative(Dir::X(XDir::Norm)).map_err(wrap_jet)?;
    }
    for &g in tuple {
        e = e.derivative(Dir::XiTan(g)).map_err(wrap_jet)?;
    }
    e = e.derivative_n(Dir::XiNorm, spec.k).map_err(wrap_jet)?;
    let v = evaluate_at_boundary(&e).map_err(wrap_jet)?;
    v.pi_plus()
        .map_err(|source| PipelineError::RatFunc { case_id: spec.case_id, source })
}

/// Right factor: d^{tuple}_{x'} d^{j+1}_{xi_n} d^k_{x_n} of sigma_l.
fn right_factor(spec: &CaseSpec, tuple: &[u8]) -> Result<BoundaryValue, PipelineError> {
    let wrap_jet = |source| PipelineError::Jet { case_id: spec.case_id, source };
    let mut e = jets::sigma::build_symbol(spec.l);
    for _ in 0..spec.k {
        e = e.derivative(Dir::X(XDir::Norm)).map_err(wrap_jet)?;
    }
    for &g in tuple {
        e = e.derivative(Dir::X(XDir::Tan(g))).map_err(wrap_jet)?;
    }
    e = e.derivative_n(Dir::XiNorm, spec.j + 1).map_err(wrap_jet)?;
    evaluate_at_boundary(&e).map_err(wrap_jet)
}

/// Computes one case exactly. Pipeline: build symbols, apply derivatives,
/// project the left factor, trace the product, integrate the xi_n profile
/// by residues, integrate the xi' monomial over the sphere (contracting any
/// curvature factor), and apply the case prefactor.
pub fn compute_case(spec: &CaseSpec) -> Result<CaseResult, PipelineError> {
    let mut traced = BoundaryValue::zero();
    for tuple in tangential_tuples(spec.alpha) {
        let lv = left_factor(spec, &tuple)?;
        let rv = right_factor(spec, &tuple)?;
        let product = lv
            .mul(&rv)
            .map_err(|source| PipelineError::Jet { case_id: spec.case_id, source })?;
        traced = traced.add(&product.trace());
    }

    let prefactor = spec.prefactor();
    let mut value = ParameterPolynomial::zero();
    let mut ledger = Vec::new();
    let mut collectors: BTreeMap<Monomial, RiemannCollector> = BTreeMap::new();

    for (key, xi_n) in traced.terms() {
        debug_assert_eq!(key.cliff, CliffPart::identity());
        let xi_n = xi_n.scale(&prefactor);
        let residue_integral = xi_n
            .integrate_real_line()
            .map_err(|source| PipelineError::RatFunc { case_id: spec.case_id, source })?;
        let moment = sphere_moment(&key.xi_prime);
        ledger.push(LedgerTerm {
            params: key.params,
            xi_n: xi_n.clone(),
            xi_prime: key.xi_prime,
            riemann: key.riemann,
            residue_integral: residue_integral.clone(),
            moment: moment.clone(),
        });
        let weight = residue_integral.scale(&moment);
        match key.riemann {
            None => value.add_term(key.params, weight),
            Some(atom) => {
                if atom.family == CurvatureFamily::Manifold {
                    return Err(PipelineError::ManifoldCurvatureSurvived { case_id: spec.case_id });
                }
                collectors
                    .entry(key.params)
                    .or_default()
                    .add(atom, weight);
            }
        }
    }

    for (params, collector) in collectors {
        let scalar = collector
            .into_scalar()
            .map_err(|source| PipelineError::Curvature { case_id: spec.case_id, source })?;
        for (m, c) in scalar.terms() {
            value.add_term(mono_mul(&params, m), c.clone());
        }
    }

    Ok(CaseResult { spec: *spec, value, ledger })
}

/// Computes all fifteen cases, in parallel (they are independent and pure),
/// collecting the results in case order.
pub fn compute_all_cases() -> Result<Vec<CaseResult>, PipelineError> {
    let specs = the_fifteen_cases();
    let mut slots: Vec<Option<Result<CaseResult, PipelineError>>> =
        (0..specs.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for spec in &specs {
            handles.push(scope.spawn(move || compute_case(spec)));
        }
        for (slot, handle) in slots.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("case worker panicked"));
        }
    });
    slots.into_iter().map(|s| s.expect("filled")).collect()
}

/// The integral over the real line of the traced product of two evaluated
/// symbols (no projector), as the coefficient polynomial of pi * Omega_5.
fn integrate_traced(value: &BoundaryValue) -> Result<ParameterPolynomial, JetError> {
    let mut out = ParameterPolynomial::zero();
    let mut collectors: BTreeMap<Monomial, RiemannCollector> = BTreeMap::new();
    for (key, xi_n) in value.terms() {
        let integral = xi_n.integrate_real_line()?;
        let weight = integral.scale(&sphere_moment(&key.xi_prime));
        match key.riemann {
            None => out.add_term(key.params, weight),
            Some(atom) => collectors
                .entry(key.params)
                .or_default()
                .add(atom, weight),
        }
    }
    for (params, collector) in collectors {
        let scalar = collector.into_scalar().map_err(|_| JetError::TwoCurvatureFactors)?;
        for (m, c) in scalar.terms() {
            out.add_term(mono_mul(&params, m), c.clone());
        }
    }
    Ok(out)
}

/// Both sides of the projector swap identity
/// int tr[pi+ a . b] = int tr[a . b] - int tr[a . pi+ b],
/// which holds because the ++ and -- cross terms integrate to zero.
pub struct SwapCheck {
    pub direct: ParameterPolynomial,
    pub via_split: ParameterPolynomial,
}

pub fn pi_plus_swap(a: &BoundaryValue, b: &BoundaryValue) -> Result<SwapCheck, JetError> {
    let direct = integrate_traced(&a.pi_plus()?.mul(b)?.trace())?;
    let whole = integrate_traced(&a.mul(b)?.trace())?;
    let crossed = integrate_traced(&a.mul(&b.pi_plus()?)?.trace())?;
    Ok(SwapCheck { direct, via_split: whole - crossed })
}

/// Exact sum of the fifteen case values.
pub fn assemble_phi(cases: &[CaseResult]) -> ParameterPolynomial {
    let mut phi = ParameterPolynomial::zero();
    for c in cases {
        phi = phi + c.value.clone();
    }
    phi
}

/// Recomputes a case value from its stored ledger (residue integrals,
/// moments and the curvature reduction), independently of the value field.
pub fn recompute_from_ledger(case: &CaseResult) -> Result<ParameterPolynomial, CurvatureError> {
    let mut value = ParameterPolynomial::zero();
    let mut collectors: BTreeMap<Monomial, RiemannCollector> = BTreeMap::new();
    for term in &case.ledger {
        let weight = term.residue_integral.scale(&term.moment);
        match term.riemann {
            None => value.add_term(term.params, weight),
            Some(atom) => collectors
                .entry(term.params)
                .or_default()
                .add(atom, weight),
        }
    }
    for (params, collector) in collectors {
        let scalar = collector.into_scalar()?;
        for (m, c) in scalar.terms() {
            value.add_term(mono_mul(&params, m), c.clone());
        }
    }
    Ok(value)
}

/// Paper-stated case totals (coefficients of pi * Omega_5), for comparison.
pub fn paper_expected_case(case_id: u8) -> Option<ParameterPolynomial> {
    let h1 = || ParameterPolynomial::variable(Indeterminate::H1);
    let h2 = || ParameterPolynomial::variable(Indeterminate::H2);
    let sm = || ParameterPolynomial::variable(Indeterminate::SM);
    let sb = || ParameterPolynomial::variable(Indeterminate::SB);
    let tv = || ParameterPolynomial::variable(Indeterminate::TV);
    let h1sq = || h1() * h1();
    let g = GaussianRational::from_parts;
    Some(match case_id {
        1 | 5 | 11 => ParameterPolynomial::zero(),
        2 | 6 => h1sq().scale(&g(7, 8, 0, 1)) + h2().scale(&g(-3, 8, 0, 1)),
        3 => sb().scale(&g(1, 6, 0, 1)) + h1sq().scale(&g(11, 128, 0, 1)),
        4 => h1sq().scale(&g(-5, 8, 0, 1)),
        7 | 12 => h1sq().scale(&g(21, 8, 0, 1)),
        8 => sb().scale(&g(5, 16, 0, 1)),
        9 => h2().scale(&g(9, 16, 0, 1)) + h1sq().scale(&g(-45, 16, 0, 1)),
        10 => {
            h2().scale(&(g(9, 16, 0, 1) + g(0, 1, -45, 32)))
                + h1sq().scale(&(g(0, 1, 45, 32) + g(-45, 16, 0, 1)))
        }
        13 => h1sq().scale(&g(-233, 32, 0, 1)), // -(5/32) - (57/8)
        14 => {
            sm().scale(&g(-1, 4, 0, 1))
                + h1().scale(&(g(-45, 4, 0, 1) + g(0, 1, -5, 8)))
                + h1sq().scale(&(g(-23, 12, 0, 1) + g(0, 1, -3, 2)))
                + h2().scale(&g(235, 64, 0, 1))
                + sb().scale(&g(47, 96, 0, 1))
                + tv().scale(&g(-1, 1, 0, 1))
        }
        15 => {
            sm().scale(&g(-1, 4, 0, 1))
                + h1().scale(&(g(-45, 4, 0, 1) + g(0, 1, -5, 8)))
                + h1sq().scale(&(g(-23, 12, 0, 1) + g(0, 1, 3, 2)))
                + h2().scale(&g(235, 64, 0, 1))
                + sb().scale(&g(47, 96, 0, 1))
                + tv().scale(&g(-1, 1, 0, 1))
        }
        _ => return None,
    })
}

/// Paper-stated total of the boundary term (coefficient of pi * Omega_5).
pub fn paper_expected_phi() -> ParameterPolynomial {
    let h1 = ParameterPolynomial::variable(Indeterminate::H1);
    let h2 = ParameterPolynomial::variable(Indeterminate::H2);
    let sm = ParameterPolynomial::variable(Indeterminate::SM);
    let sb = ParameterPolynomial::variable(Indeterminate::SB);
    let tv = ParameterPolynomial::variable(Indeterminate::TV);
    let g = GaussianRational::from_parts;
    sm.scale(&g(-1, 2, 0, 1))
        + sb.scale(&g(35, 24, 0, 1))
        + tv.scale(&g(-2, 1, 0, 1))
        + h1.clone().scale(&(g(-45, 2, 0, 1) + g(0, 1, -5, 4)))
        + (h1.clone() * h1).scale(&(g(-3947, 384, 0, 1) + g(0, 1, 45, 32)))
        + h2.scale(&(g(247, 32, 0, 1) + g(0, 1, -45, 32)))
}

/// The theorem record: boundary density of the residue per unit boundary
/// volume (the interior term vanishes for p1 + p2 = 4 < n = 7).
#[derive(Clone, Debug)]
pub struct TheoremRecord {
    /// Engine boundary density: Phi as a coefficient of pi * Omega_5.
    pub engine_phi: ParameterPolynomial,
    /// Paper-stated total.
    pub paper_phi: ParameterPolynomial,
    /// Interior contribution (zero in this instance).
    pub interior: ParameterPolynomial,
    /// Imaginary part of the engine total (flagged explicitly: the density
    /// of a residue of this operator should be real).
    pub engine_imaginary_part: ParameterPolynomial,
}

pub fn theorem_wres(engine_phi: &ParameterPolynomial) -> TheoremRecord {
    use num_traits::Zero;
    let mut imag = ParameterPolynomial::zero();
    for (m, c) in engine_phi.terms() {
        if !c.im.is_zero() {
            imag.add_term(*m, GaussianRational::from_rational(c.im.clone()));
        }
    }
    TheoremRecord {
        engine_phi: engine_phi.clone(),
        paper_phi: paper_expected_phi(),
        interior: ParameterPolynomial::zero(),
        engine_imaginary_part: imag,
    }
}

/// The gravitational-action record of the final section: the extrinsic
/// curvature constant, the boundary action, and the proportionality constant
/// Q0 relating the boundary residue to the boundary action, quoted with both
/// the engine total and the stated total.
#[derive(Clone, Debug)]
pub struct GravitationalActionRecord {
    /// K(x0) = -(5/2) h'(0)
    pub extrinsic_curvature: ParameterPolynomial,
    /// I_{Gr,b} = -5 h'(0) Vol_{∂M}: the coefficient polynomial of
    /// Vol_{∂M}.
    pub boundary_action_coefficient: ParameterPolynomial,
    pub q0_engine: ParameterPolynomial,
    pub q0_paper: ParameterPolynomial,
    /// The proportionality statement, rendered once for the report.
    pub corollary: String,
}

pub fn gravitational_action(engine_phi: &ParameterPolynomial) -> GravitationalActionRecord {
    let h1 = ParameterPolynomial::variable(Indeterminate::H1);
    GravitationalActionRecord {
        extrinsic_curvature: h1.clone().scale(&GaussianRational::from_parts(-5, 2, 0, 1)),
        boundary_action_coefficient: h1.scale(&GaussianRational::from_int(-5)),
        q0_engine: engine_phi.clone(),
        q0_paper: paper_expected_phi(),
        corollary: "I_Gr,b = -5 h'(0) / (Q0 pi Omega5) * Wres_b[(pi+ D_T^-2)^2]".to_string(),
    }
}

/// Convenience: evaluated, projected symbol factors used by swap tests.
pub fn evaluated_symbol(order: i32) -> Result<BoundaryValue, JetError> {
    evaluate_at_boundary(&jets::sigma::build_symbol(order))
}
