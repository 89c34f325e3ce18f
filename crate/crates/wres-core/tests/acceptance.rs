//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! per item at the stated tolerance (exact Q(i) equality unless noted).
//!
//! Expected values tagged with equation numbers are the worked intermediate
//! values of the source computation; case totals are its stated totals. The
//! engine computes everything from the symbol and derivative tables alone,
//! so a mismatch here is an adjudication outcome, not a tolerance issue:
//! whenever a total disagrees, the engine value is confirmed independently
//! by the numeric oracle (criterion 3) and the report records the
//! discrepancy.

use num_traits::Zero;
use wres_core::clifford::{cb, CliffordElement};
use wres_core::curvature::{contract_with_moment, CurvatureTerm, RiemannAtom};
use wres_core::grammar::parse_boundary_value;
use wres_core::jets::sigma::{build_sigma_minus2, build_sigma_minus3};
use wres_core::jets::{evaluate_at_boundary, BoundaryValue, Dir, XDir};
use wres_core::oracle::{
    numeric_case_check, numeric_line_integral, numeric_sphere_moment, QuadratureConfig,
};
use wres_core::pipeline::{
    compute_all_cases, compute_case, paper_expected_case, pi_plus_swap, recompute_from_ledger,
    the_fifteen_cases,
};
use wres_core::poly::Poly;
use wres_core::ratfunc::PoleLimitedRational;
use wres_core::scalars::{rat, Assignment, GaussianRational, Indeterminate, ParameterPolynomial};
use wres_core::sphere::{pairing_tensor, sphere_moment, SphereMonomial};

struct Checklist {
    criterion: &'static str,
    failures: Vec<String>,
}

impl Checklist {
    fn new(criterion: &'static str) -> Self {
        Checklist { criterion, failures: Vec::new() }
    }

    fn check(&mut self, item: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            println!("ACCEPT {} :: {} :: PASS", self.criterion, item);
        } else {
            let d = detail();
            println!("ACCEPT {} :: {} :: FAIL ({})", self.criterion, item, d);
            self.failures.push(format!("{}: {}", item, d));
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("ACCEPT {} :: PASS", self.criterion);
        } else {
            println!("ACCEPT {} :: FAIL", self.criterion);
            panic!(
                "criterion {} failed on {} item(s):\n{}",
                self.criterion,
                self.failures.len(),
                self.failures.join("\n")
            );
        }
    }
}

fn fixture(src: &str) -> BoundaryValue {
    parse_boundary_value(src).unwrap_or_else(|e| panic!("fixture '{}': {}", src, e))
}

fn eq_check(list: &mut Checklist, item: &str, got: &BoundaryValue, expected: &BoundaryValue) {
    let ok = got == expected;
    list.check(item, ok, || format!("got {:?}, expected {:?}", got, expected));
}

/// sigma_-2 evaluated, with the requested derivatives applied first.
fn sigma2_derived(xs: &[Dir]) -> BoundaryValue {
    let mut e = build_sigma_minus2();
    for d in xs {
        e = e.derivative(*d).unwrap();
    }
    evaluate_at_boundary(&e).unwrap()
}

fn sigma3_derived(xs: &[Dir]) -> BoundaryValue {
    let mut e = build_sigma_minus3();
    for d in xs {
        e = e.derivative(*d).unwrap();
    }
    evaluate_at_boundary(&e).unwrap()
}

#[test]
fn criterion_1_intermediate_identities() {
    let mut list = Checklist::new("1 (intermediate identities)");

    // (3.22) d^3_{xi_n} sigma_-2
    eq_check(
        &mut list,
        "(3.22)",
        &sigma2_derived(&[Dir::XiNorm, Dir::XiNorm, Dir::XiNorm]),
        &fixture("(24 xin - 24 xin^3) / (1+xin^2)^4"),
    );

    // (3.23) d^2_{x_n} sigma_-2
    eq_check(
        &mut list,
        "(3.23)",
        &sigma2_derived(&[Dir::X(XDir::Norm), Dir::X(XDir::Norm)]),
        &fixture("2 h1 h1 / (1+xin^2)^3 - h2 / (1+xin^2)^2"),
    );

    // (3.24) pi+ of (3.23)
    eq_check(
        &mut list,
        "(3.24)",
        &sigma2_derived(&[Dir::X(XDir::Norm), Dir::X(XDir::Norm)]).pi_plus().unwrap(),
        &fixture("h1 h1 (8 i - 9 xin - 3 i xin^2) / 8 (xin-i)^3 + h2 (2 + i xin) / 4 (xin-i)^2"),
    );

    // (3.28) d_{xi_i} d_{xi_j} sigma_-2, diagonal and off-diagonal probes.
    eq_check(
        &mut list,
        "(3.28) diagonal",
        &sigma2_derived(&[Dir::XiTan(1), Dir::XiTan(1)]),
        &fixture("-2 / (1+xin^2)^2 + 8 xi(1)^2 / (1+xin^2)^3"),
    );
    eq_check(
        &mut list,
        "(3.28) off-diagonal",
        &sigma2_derived(&[Dir::XiTan(1), Dir::XiTan(2)]),
        &fixture("8 xi(1) xi(2) / (1+xin^2)^3"),
    );

    // (3.29) pi+ of (3.28)
    eq_check(
        &mut list,
        "(3.29) diagonal",
        &sigma2_derived(&[Dir::XiTan(1), Dir::XiTan(1)]).pi_plus().unwrap(),
        &fixture("(2 + i xin) / 2 (xin-i)^2 + xi(1)^2 (8 i - 9 xin - 3 i xin^2) / 2 (xin-i)^3"),
    );
    eq_check(
        &mut list,
        "(3.29) off-diagonal",
        &sigma2_derived(&[Dir::XiTan(1), Dir::XiTan(2)]).pi_plus().unwrap(),
        &fixture("xi(1) xi(2) (8 i - 9 xin - 3 i xin^2) / 2 (xin-i)^3"),
    );

    // (3.30) sum_{i,j<n} d_{x_i} d_{x_j} sigma_-2: the transcribed h'^2 part
    // plus the curvature part (1/3) sum (R_{iajb}+R_{ibja}) xi_a xi_b.
    let mut d2x_sum = BoundaryValue::zero();
    for i in 1..=6u8 {
        for j in 1..=6u8 {
            d2x_sum = d2x_sum.add(&sigma2_derived(&[Dir::X(XDir::Tan(i)), Dir::X(XDir::Tan(j))]));
        }
    }
    {
        let mut expected = fixture("2 h1 h1 / (1+xin^2)^3");
        for i in 1..=6u8 {
            for j in 1..=6u8 {
                for a in 1..=6u8 {
                    for b in 1..=6u8 {
                        for slots in [[i, a, j, b], [i, b, j, a]] {
                            expected = expected.add(&fixture(&format!(
                                "1/3 R({},{},{},{}) xi({}) xi({}) / (1+xin^2)^2",
                                slots[0], slots[1], slots[2], slots[3], a, b
                            )));
                        }
                    }
                }
            }
        }
        eq_check(&mut list, "(3.30)", &d2x_sum, &expected);
    }

    // (3.31) = d_{xi_n} of (3.30).
    {
        let got = d2x_sum.derivative_xi_n(1);
        let mut expected = fixture("-12 h1 h1 xin / (1+xin^2)^4");
        for i in 1..=6u8 {
            for j in 1..=6u8 {
                for a in 1..=6u8 {
                    for b in 1..=6u8 {
                        for slots in [[i, a, j, b], [i, b, j, a]] {
                            expected = expected.add(&fixture(&format!(
                                "-4/3 R({},{},{},{}) xi({}) xi({}) xin / (1+xin^2)^3",
                                slots[0], slots[1], slots[2], slots[3], a, b
                            )));
                        }
                    }
                }
            }
        }
        eq_check(&mut list, "(3.31)", &got, &expected);
    }

    // (3.37) d_{x_n} d_{xi_n} pi+ sigma_-2.
    eq_check(
        &mut list,
        "(3.37)",
        &sigma2_derived(&[Dir::X(XDir::Norm)]).pi_plus().unwrap().derivative_xi_n(1),
        &fixture("h1 (-3 - i xin) / 4 (xin-i)^3"),
    );

    // (3.38) = (3.82): d^2_{xi_n} d_{x_n} sigma_-2.
    let d38 = sigma2_derived(&[Dir::X(XDir::Norm), Dir::XiNorm, Dir::XiNorm]);
    eq_check(&mut list, "(3.38)", &d38, &fixture("h1 (4 - 20 xin^2) / (1+xin^2)^4"));
    eq_check(&mut list, "(3.82)", &d38, &fixture("(4 - 20 xin^2) h1 / (1+xin^2)^4"));

    // (3.41) mixed tangential-normal second derivative vanishes.
    list.check(
        "(3.41) = 0",
        (1..=6u8).all(|g| sigma2_derived(&[Dir::X(XDir::Norm), Dir::X(XDir::Tan(g))]).is_zero()),
        || "nonzero mixed derivative".to_string(),
    );

    // (3.43) = (3.62): d^2_{xi_n} pi+ sigma_-2 = -i/(xi_n - i)^3.
    let d43 = sigma2_derived(&[]).pi_plus().unwrap().derivative_xi_n(2);
    eq_check(&mut list, "(3.43)", &d43, &fixture("- i / (xin-i)^3"));
    eq_check(&mut list, "(3.62)", &d43, &fixture("- i / (xin-i)^3"));

    // (3.44) d_{xi_n} d^2_{x_n} sigma_-2.
    eq_check(
        &mut list,
        "(3.44)",
        &sigma2_derived(&[Dir::X(XDir::Norm), Dir::X(XDir::Norm)]).derivative_xi_n(1),
        &fixture("4 xin h2 / (1+xin^2)^3 - 12 xin h1 h1 / (1+xin^2)^4"),
    );

    // (3.47) pi+ d_{x_n} sigma_-2.
    eq_check(
        &mut list,
        "(3.47)",
        &sigma2_derived(&[Dir::X(XDir::Norm)]).pi_plus().unwrap(),
        &fixture("h1 (2 + i xin) / 4 (xin-i)^2"),
    );

    // (3.48) d^2_{xi_n} of (3.47).
    eq_check(
        &mut list,
        "(3.48)",
        &sigma2_derived(&[Dir::X(XDir::Norm)]).pi_plus().unwrap().derivative_xi_n(2),
        &fixture("h1 (4 + i xin) / 2 (xin-i)^4"),
    );

    // (3.54): the left-factor integration-by-parts rewrite of the eighth
    // case: sum_g int tr[d_{xi_g} pi+ s_-2 . d_{x_g} d_{xi_n} s_-3]
    //      = -sum_g int tr[d_{xi_n} d_{xi_g} pi+ s_-2 . d_{x_g} s_-3].
    {
        let mut lhs_traced = BoundaryValue::zero();
        let mut rhs_traced = BoundaryValue::zero();
        for g in 1..=6u8 {
            let left_a = sigma2_derived(&[Dir::XiTan(g)]).pi_plus().unwrap();
            let right_a = sigma3_derived(&[Dir::X(XDir::Tan(g)), Dir::XiNorm]);
            lhs_traced = lhs_traced.add(&left_a.mul(&right_a).unwrap().trace());
            let left_b = sigma2_derived(&[Dir::XiTan(g)]).pi_plus().unwrap().derivative_xi_n(1);
            let right_b = sigma3_derived(&[Dir::X(XDir::Tan(g))]);
            rhs_traced = rhs_traced.add(
                &left_b
                    .mul(&right_b)
                    .unwrap()
                    .trace()
                    .scale(&(-GaussianRational::one())),
            );
        }
        let lhs = integrate_traced(&lhs_traced);
        let rhs = integrate_traced(&rhs_traced);
        list.check("(3.54) by-parts identity", lhs == rhs, || {
            format!("lhs {:?} rhs {:?}", lhs, rhs)
        });
    }

    // (3.55) d^alpha_{xi'} sigma_-2 per direction.
    eq_check(
        &mut list,
        "(3.55)",
        &sigma2_derived(&[Dir::XiTan(3)]),
        &fixture("-2 xi(3) / (1+xin^2)^2"),
    );

    // (3.56) d_{xi_n} d_{xi_g} pi+ sigma_-2.
    eq_check(
        &mut list,
        "(3.56)",
        &sigma2_derived(&[Dir::XiTan(3)]).pi_plus().unwrap().derivative_xi_n(1),
        &fixture("(-3 - i xin) xi(3) / 2 (xin-i)^3"),
    );

    // (3.73) the ninth case's traced integrand.
    {
        let left = sigma2_derived(&[]).pi_plus().unwrap().derivative_xi_n(2);
        let right = sigma3_derived(&[Dir::X(XDir::Norm)]);
        let got = left.mul(&right).unwrap().trace();
        let expected = fixture(
            "12 xin (h1 h1 - h2) / (xin-i)^3 (1+xin^2)^2 \
             + h1 h1 (84 xin + 36 xin^3) / (xin-i)^3 (1+xin^2)^3 \
             - 24 xin h2 / (xin-i)^3 (1+xin^2)^2",
        );
        eq_check(&mut list, "(3.73)", &got, &expected);
    }

    // (3.88) the pi+ value the thirteenth case opens with.
    eq_check(
        &mut list,
        "(3.88)",
        &fixture("(-5 i xin - 3 i xin^3) / (1+xin^2)^3").pi_plus().unwrap(),
        &fixture("(9 i - 7 xin) / 8 (xin-i)^3"),
    );

    // Trace identities.
    list.check("trace id = 8", CliffordElement::identity().trace() == GaussianRational::from_int(8), || {
        "id trace".to_string()
    });
    {
        // (3.58): sum_{s != t} tr[cb_s cb_t] = 0.
        let mut total = GaussianRational::zero();
        for s in 1..=6u8 {
            for t in 1..=6u8 {
                if s != t {
                    total = total + (cb(s) * cb(t)).trace();
                }
            }
        }
        list.check("(3.58) = 0", total.is_zero(), || format!("{}", total));
    }
    {
        // (3.65): sum_{t<n} tr[cb_t cb_t] = 48.
        let mut total = GaussianRational::zero();
        for t in 1..=6u8 {
            total = total + (cb(t) * cb(t)).trace();
        }
        list.check("(3.65) = 48", total == GaussianRational::from_int(48), || format!("{}", total));
    }
    {
        // (3.84): tr[cb_n cb_k] = 0.
        let ok = (1..=6u8).all(|k| (cb(7) * cb(k)).trace().is_zero());
        list.check("(3.84) = 0", ok, || "nonzero".to_string());
    }
    {
        // (3.90): sum_{k,l<n} xi_k xi_l tr[cb_n cb_k cb_n cb_l] = -8 sum xi_k^2
        // and tr[cb_n cb_k c_n c_l] = 0.
        let diag_ok = (1..=6u8).all(|k| (cb(7) * cb(k) * cb(7) * cb(k)).trace() == GaussianRational::from_int(-8));
        let off_ok = (1..=6u8).all(|k| {
            (1..=6u8).all(|l| k == l || (cb(7) * cb(k) * cb(7) * cb(l)).trace().is_zero())
        });
        let mixed_ok = (1..=6u8).all(|k| {
            (1..=6u8).all(|l| {
                (cb(7) * cb(k) * wres_core::clifford::c(7) * wres_core::clifford::c(l))
                    .trace()
                    .is_zero()
            })
        });
        list.check("(3.90)", diag_ok && off_ok && mixed_ok, || "trace table mismatch".to_string());
    }

    // Sphere rules: (3.33) second moment, (3.34) full contraction, (3.51).
    list.check(
        "(3.33) moment 1/6 delta",
        sphere_moment(&SphereMonomial::from_indices(&[1, 1])) == rat(1, 6)
            && sphere_moment(&SphereMonomial::from_indices(&[1, 2])) == rat(0, 1),
        || "second moment".to_string(),
    );
    {
        let t = CurvatureTerm::boundary(['i', 'a', 'j', 'b']);
        let v = contract_with_moment(&t, &['i', 'a', 'j', 'b']).unwrap();
        list.check("(3.34) = 0", v.is_zero(), || format!("{:?}", v));
    }
    list.check(
        "(3.51) odd moments vanish",
        sphere_moment(&SphereMonomial::from_indices(&[1])).is_zero()
            && sphere_moment(&SphereMonomial::from_indices(&[1, 2, 3])).is_zero(),
        || "odd moment".to_string(),
    );

    // (3.85): the order -7 odd integrand integrates to zero exactly.
    {
        let f = fixture("(-20 i xin + 88 i xin^3 + 60 i xin^5) / (1+xin^2)^7");
        let mut ok = true;
        for (_, profile) in f.terms() {
            ok &= profile.integrate_real_line().unwrap().is_zero();
        }
        list.check("(3.85) = 0", ok, || "nonzero integral".to_string());
    }

    list.finish();
}

/// Integrates an already-traced value over xi_n and the sphere, reducing
/// curvature factors, as a polynomial (Omega_5 pi units).
fn integrate_traced(traced: &BoundaryValue) -> ParameterPolynomial {
    use std::collections::BTreeMap;
    use wres_core::curvature::RiemannCollector;
    use wres_core::scalars::{mono_mul, Monomial};
    let mut out = ParameterPolynomial::zero();
    let mut collectors: BTreeMap<Monomial, RiemannCollector> = BTreeMap::new();
    for (key, profile) in traced.terms() {
        let w = profile.integrate_real_line().unwrap().scale(&sphere_moment(&key.xi_prime));
        match key.riemann {
            None => out.add_term(key.params, w),
            Some(atom) => collectors
                .entry(key.params)
                .or_default()
                .add(atom, w),
        }
    }
    for (params, collector) in collectors {
        for (m, c) in collector.into_scalar().unwrap().terms() {
            out.add_term(mono_mul(&params, m), c.clone());
        }
    }
    out
}

#[test]
fn criterion_2_case_totals() {
    let mut list = Checklist::new("2 (case totals, strict subset)");
    let strict_subset: &[u8] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12];
    for spec in the_fifteen_cases() {
        if !strict_subset.contains(&spec.case_id) {
            continue;
        }
        let result = compute_case(&spec).unwrap();
        let expected = paper_expected_case(spec.case_id).unwrap();
        list.check(
            &format!("Case {} total", spec.case_id),
            result.value == expected,
            || format!("engine {:?} vs stated {:?}", result.value, expected),
        );
    }
    list.finish();
}

#[test]
fn criterion_3_adjudicated_totals() {
    let mut list = Checklist::new("3 (adjudicated comparisons)");
    let assignment = Assignment::new(0.3, 0.7, 1.1, 0.9, 0.5);
    let cases = compute_all_cases().unwrap();

    for id in [10u8, 13, 14, 15] {
        let case = &cases[(id - 1) as usize];
        let verdict = numeric_case_check(case, &assignment, 500 + id as u64, 1e-9).unwrap();
        list.check(
            &format!("Case {} engine value numerically confirmed", id),
            verdict.agrees(),
            || format!("{:?}", verdict),
        );
        // The comparison against the stated value is recorded, not asserted.
        let paper = paper_expected_case(id).unwrap();
        let status = if case.value == paper { "exact" } else { "discrepancy" };
        println!(
            "ACCEPT 3 :: Case {} vs stated value :: RECORDED ({})",
            id, status
        );
    }

    // Phi and the theorem total: dual-path confirmation of the sum.
    let phi = wres_core::pipeline::assemble_phi(&cases);
    {
        let mut numeric_sum = num_complex::Complex64::new(0.0, 0.0);
        for case in &cases {
            // Reuse each case's ledger numerically via the oracle check by
            // re-summing exact per-case values (already confirmed above and
            // in the report path); here confirm the ledger recomputation.
            let recomputed = recompute_from_ledger(case).unwrap();
            assert_eq!(recomputed, case.value, "ledger recomputation of case {}", case.spec.case_id);
            numeric_sum += case
                .value
                .substitute_numeric(&assignment)
                .unwrap();
        }
        let direct = phi.substitute_numeric(&assignment).unwrap();
        let ok = (numeric_sum - direct).norm() <= 1e-9 * direct.norm().max(1.0);
        list.check("Phi equals the sum of the fifteen cases", ok, || {
            format!("sum {} vs direct {}", numeric_sum, direct)
        });
    }
    {
        let paper_phi = wres_core::pipeline::paper_expected_phi();
        let status = if phi == paper_phi { "exact" } else { "discrepancy" };
        println!("ACCEPT 3 :: Phi vs stated total :: RECORDED ({})", status);
        let theorem = wres_core::pipeline::theorem_wres(&phi);
        println!(
            "ACCEPT 3 :: theorem boundary density imaginary part :: RECORDED ({:?})",
            theorem.engine_imaginary_part
        );
        list.check(
            "theorem interior term is zero",
            theorem.interior.is_zero(),
            || "nonzero interior".to_string(),
        );
        // Setting TV = 0 removes exactly the TV monomial.
        let no_tv = phi.without(Indeterminate::TV);
        let tv_part = phi.coefficient_of(Indeterminate::TV);
        list.check(
            "TV = 0 reduction removes exactly the TV monomial",
            no_tv.clone() + ParameterPolynomial::variable(Indeterminate::TV) * tv_part == phi,
            || "reduction mismatch".to_string(),
        );
        // The TV coefficient comes from cases 14 and 15 alone.
        let tv14 = cases[13].value.coefficient_of(Indeterminate::TV);
        let tv15 = cases[14].value.coefficient_of(Indeterminate::TV);
        list.check(
            "TV coefficient sourced by cases 14 and 15",
            tv14 + tv15 == phi.coefficient_of(Indeterminate::TV),
            || "TV bookkeeping".to_string(),
        );
    }

    // Swap identities for the cases that use the projector split.
    {
        let s2 = evaluate_at_boundary(&build_sigma_minus2()).unwrap();
        let s3 = evaluate_at_boundary(&build_sigma_minus3()).unwrap();
        let s4 = evaluate_at_boundary(&wres_core::jets::sigma::build_sigma_minus4_dt()).unwrap();
        let pairs: Vec<(&str, BoundaryValue, BoundaryValue)> = vec![
            ("case 10 split", sigma3_derived(&[Dir::X(XDir::Norm)]), s2.derivative_xi_n(2)),
            ("case 12 split", s3.clone(), sigma2_derived(&[Dir::X(XDir::Norm)]).derivative_xi_n(2)),
            ("case 15 split", s4, s2.derivative_xi_n(1)),
        ];
        for (label, a, b) in pairs {
            let swap = pi_plus_swap(&a, &b).unwrap();
            list.check(label, swap.direct == swap.via_split, || {
                format!("direct {:?} vs split {:?}", swap.direct, swap.via_split)
            });
        }
    }

    list.finish();
}

#[test]
fn criterion_4_property_suites() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut list = Checklist::new("4 (property suites)");

    // Clifford anticommutation: exhaustive over all generator pairs.
    {
        let mut gens = Vec::new();
        for i in 1..=7u8 {
            gens.push((wres_core::clifford::c(i), -1i64, 7 + i));
            gens.push((cb(i), 1i64, i));
        }
        let mut ok = true;
        for (a, sq_a, ka) in &gens {
            for (b, _, kb) in &gens {
                if ka == kb {
                    ok &= a.clone() * a.clone()
                        == CliffordElement::identity().scale(&GaussianRational::from_int(*sq_a));
                } else {
                    ok &= (a.clone() * b.clone() + b.clone() * a.clone()).is_zero();
                }
            }
        }
        list.check("anticommutation (exhaustive 14x14)", ok, || "relation failed".to_string());
    }

    // Trace cyclicity on 10^4 random pairs.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(7001);
        let mut ok = true;
        for _ in 0..10_000 {
            let a = random_clifford(&mut rng, 4);
            let b = random_clifford(&mut rng, 4);
            ok &= (a.clone() * b.clone()).trace() == (b * a).trace();
        }
        list.check("trace cyclicity (10^4 pairs)", ok, || "cyclicity failed".to_string());
    }

    // pi+ idempotence, linearity and derivative commutation on 10^3 random
    // decaying rationals; exact equality.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(7002);
        let mut ok = true;
        for _ in 0..1000 {
            let f = random_decaying(&mut rng);
            let g = random_decaying(&mut rng);
            let pf = f.pi_plus().unwrap();
            ok &= pf.pi_plus().unwrap() == pf;
            let sum_proj = (f.clone() + g.clone()).pi_plus().unwrap();
            ok &= sum_proj == pf.clone() + g.pi_plus().unwrap();
            ok &= f.derivative(1).pi_plus().unwrap() == pf.derivative(1);
            // (id - pi+) has its pole at -i only.
            let rest = f.clone() - pf.clone();
            ok &= rest.pow_minus_i() == 0;
            // Partial fractions reconstruct the input.
            let (plus, minus, poly) = f.partial_fractions();
            ok &= plus + minus + PoleLimitedRational::from_poly(poly) == f;
            // Integration splits exactly across the projection.
            if f.integrate_real_line().is_ok() {
                let whole = f.integrate_real_line().unwrap();
                let split = pf.integrate_real_line().unwrap() + rest.integrate_real_line().unwrap();
                ok &= whole == split;
            }
        }
        list.check("pi+ properties (10^3 rationals)", ok, || "pi+ law failed".to_string());
    }

    // Plus-plus and minus-minus vanishing on 10^3 random pairs.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(7003);
        let mut ok = true;
        for _ in 0..1000 {
            let f = random_decaying(&mut rng).pi_plus().unwrap();
            let g = random_decaying(&mut rng).pi_plus().unwrap();
            if (f.clone() * g.clone()).is_zero() {
                continue;
            }
            ok &= (f.clone() * g.clone()).integrate_real_line().unwrap().is_zero();
            // Mirror at -i via conjugation of the construction.
            let fm = mirror(&f);
            let gm = mirror(&g);
            ok &= (fm * gm).integrate_real_line().unwrap().is_zero();
        }
        list.check("++ and -- vanishing (10^3 pairs)", ok, || "vanishing failed".to_string());
    }

    // Sphere moment normalization for all monomials of degree <= 6.
    {
        let mut ok = true;
        for m in monomials_up_to(6) {
            let mut total = rat(0, 1);
            for i in 1..=6u8 {
                total += sphere_moment(&m.mul(&SphereMonomial::from_indices(&[i, i])));
            }
            ok &= total == sphere_moment(&m);
        }
        list.check("moment normalization (deg <= 6)", ok, || "sum rule failed".to_string());
    }

    // Riemann canonicalization idempotence plus the two vanishing
    // regressions the contraction machinery rests on.
    {
        let mut ok = true;
        for a in 1..=6u8 {
            for b in 1..=6u8 {
                for c in 1..=6u8 {
                    for d in 1..=6u8 {
                        if let Some((s, canon)) = RiemannAtom::boundary([a, b, c, d]).canonicalize() {
                            let (s2, canon2) = canon.canonicalize().unwrap();
                            ok &= s2 == 1 && canon2 == canon && s * s == 1;
                        }
                    }
                }
            }
        }
        let full = contract_with_moment(
            &CurvatureTerm::boundary(['i', 'a', 'j', 'b']),
            &['i', 'a', 'j', 'b'],
        )
        .unwrap();
        let pair = {
            let t1 = contract_with_moment(&CurvatureTerm::boundary(['i', 'a', 'j', 'b']), &['i', 'a', 'j', 'b'])
                .unwrap();
            let t2 = contract_with_moment(&CurvatureTerm::boundary(['i', 'b', 'j', 'a']), &['i', 'a', 'j', 'b'])
                .unwrap();
            t1 + t2
        };
        list.check(
            "Riemann canonicalization and vanishing regressions",
            ok && full.is_zero() && pair.is_zero(),
            || "curvature regression failed".to_string(),
        );
    }

    list.finish();
}

fn random_clifford(rng: &mut impl rand::Rng, words: usize) -> CliffordElement {
    let mut e = CliffordElement::zero();
    for _ in 0..words {
        let w = wres_core::clifford::CliffordWord {
            bar_mask: rng.gen::<u8>() & 0x7f,
            plain_mask: rng.gen::<u8>() & 0x7f,
        };
        e.add_word(w, GaussianRational::from_parts(rng.gen_range(-4..=4), 1, rng.gen_range(-4..=4), 1));
    }
    e
}

fn random_decaying(rng: &mut impl rand::Rng) -> PoleLimitedRational {
    loop {
        let p = rng.gen_range(1..=5u32);
        let q = rng.gen_range(1..=5u32);
        let deg = rng.gen_range(0..(p + q)) as usize;
        let coeffs: Vec<GaussianRational> = (0..=deg)
            .map(|_| {
                GaussianRational::from_parts(
                    rng.gen_range(-6..=6),
                    rng.gen_range(1..=3),
                    rng.gen_range(-6..=6),
                    rng.gen_range(1..=3),
                )
            })
            .collect();
        let f = PoleLimitedRational::new(Poly::from_coeffs(coeffs), p, q);
        if !f.is_zero() && f.is_decaying() {
            return f;
        }
    }
}

/// Mirrors a pure +i-pole function to a pure -i-pole one by conjugating all
/// coefficients (xi_n is real on the contour).
fn mirror(f: &PoleLimitedRational) -> PoleLimitedRational {
    let coeffs: Vec<GaussianRational> = f.num().coeffs().iter().map(|c| c.conj()).collect();
    PoleLimitedRational::new(Poly::from_coeffs(coeffs), f.pow_plus_i(), f.pow_minus_i())
}

fn monomials_up_to(degree: u32) -> Vec<SphereMonomial> {
    let mut out = vec![SphereMonomial::one()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &out {
            for i in 1..=6u8 {
                next.push(m.mul(&SphereMonomial::from_indices(&[i])));
            }
        }
        out.append(&mut next);
        out.sort();
        out.dedup();
    }
    out
}

#[test]
fn criterion_5_oracle_cross_checks() {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut list = Checklist::new("5 (oracle cross-checks)");

    // 100 random integrable rationals: residue integration vs quadrature.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(9001);
        let cfg = QuadratureConfig::default();
        let mut ok = true;
        for _ in 0..100 {
            let p = rng.gen_range(1..=7u32);
            let q = rng.gen_range(1..=7u32);
            if p + q < 2 {
                continue;
            }
            let max_deg = (p + q - 2).min(12);
            let deg = rng.gen_range(0..=max_deg) as usize;
            let coeffs: Vec<GaussianRational> = (0..=deg)
                .map(|_| {
                    GaussianRational::from_parts(
                        rng.gen_range(-9..=9),
                        rng.gen_range(1..=4),
                        rng.gen_range(-9..=9),
                        rng.gen_range(1..=4),
                    )
                })
                .collect();
            let f = PoleLimitedRational::new(Poly::from_coeffs(coeffs), p, q);
            if f.is_zero() {
                continue;
            }
            let exact = f.integrate_real_line().unwrap().to_complex64() * std::f64::consts::PI;
            let (numeric, _) = numeric_line_integral(&f, &cfg).unwrap();
            ok &= (exact - numeric).norm() <= 1e-9 * exact.norm().max(1.0);
        }
        list.check("line integration vs quadrature (100 rationals, 1e-9)", ok, || {
            "quadrature mismatch".to_string()
        });
    }

    // Sphere moments vs the Gamma closed form for all even monomials of
    // degree <= 8, relative 1e-12.
    {
        let omega5 = std::f64::consts::PI.powi(3);
        let mut ok = true;
        for m in monomials_up_to(4) {
            let mut even = SphereMonomial::one();
            for (k, e) in m.exponents.iter().enumerate() {
                even.exponents[k] = e * 2;
            }
            let exact =
                num_traits::ToPrimitive::to_f64(&sphere_moment(&even)).unwrap() * omega5;
            let numeric = numeric_sphere_moment(&even);
            ok &= (exact - numeric).abs() <= 1e-12 * exact.abs().max(1e-12);
        }
        list.check("sphere moments vs Gamma closed form (deg <= 8, 1e-12)", ok, || {
            "moment mismatch".to_string()
        });
    }

    // Pairing tensor bookkeeping: (2m-1)!! matchings, weight = moment.
    {
        let t = pairing_tensor(4).unwrap();
        list.check(
            "pairing tensor weight and count",
            t.matchings.len() == 3 && t.weight == rat(1, 48),
            || "pairing tensor".to_string(),
        );
    }

    list.finish();
}

#[test]
fn criterion_6_gravitational_action_outputs() {
    let mut list = Checklist::new("6 (gravitational action)");
    let cases = compute_all_cases().unwrap();
    let phi = wres_core::pipeline::assemble_phi(&cases);
    let record = wres_core::pipeline::gravitational_action(&phi);

    let h1 = ParameterPolynomial::variable(Indeterminate::H1);
    list.check(
        "K(x0) = -(5/2) H1",
        record.extrinsic_curvature == h1.clone().scale(&GaussianRational::from_parts(-5, 2, 0, 1)),
        || format!("{:?}", record.extrinsic_curvature),
    );
    list.check(
        "I_Gr,b = -5 H1 Vol(boundary)",
        record.boundary_action_coefficient == h1.scale(&GaussianRational::from_int(-5)),
        || format!("{:?}", record.boundary_action_coefficient),
    );
    list.check(
        "Q0 engine equals Phi",
        record.q0_engine == phi,
        || "Q0 engine mismatch".to_string(),
    );
    list.check(
        "Q0 paper equals the stated total",
        record.q0_paper == wres_core::pipeline::paper_expected_phi(),
        || "Q0 paper mismatch".to_string(),
    );
    list.check(
        "corollary statement emitted",
        record.corollary.contains("-5 h'(0)") && record.corollary.contains("Q0"),
        || record.corollary.clone(),
    );
    list.finish();
}
