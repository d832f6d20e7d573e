//! The acceptance suite: one runner per criterion, shared between the
//! `acceptance` integration test target and the CLI `selftest` command.
//!
//! Every check is exact — symbolic zero or exact rational equality,
//! never epsilon comparisons. Randomized checks use a fixed-seed
//! ChaCha stream so runs are reproducible byte for byte.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::expr::RatExpr;
use crate::factory::{
    build_eq10, build_eq3, closed_form, display_eq10, display_eq3, display_eq9,
    solve_recursion, EqDisplay, Family,
};
use crate::fields::{bracket_table, prolong, span_solve, VectorField};
use crate::jet::JetCtx;
use crate::parse::parse_expr;
use crate::poly::{Monomial, Poly};
use crate::rat::Rat;
use crate::render;
use crate::report::SymmetryReportJson;
use crate::symmetry::{
    determining_system, is_symmetry, solve_determining, AlgebraClass, AnsatzSpace,
};
use crate::vars::Var;

/// Result of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn pass(id: u32, name: &'static str, detail: impl Into<String>) -> Self {
        CriterionOutcome { id, name, passed: true, detail: detail.into() }
    }

    fn fail(id: u32, name: &'static str, detail: impl Into<String>) -> Self {
        CriterionOutcome { id, name, passed: false, detail: detail.into() }
    }

    /// The one-line pass/fail form printed by the suite.
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} — {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// Criterion 1: the order-k base family built from the recursion is
/// invariant under X1, X2, X3 with exact zero residual, k = 4..10.
pub fn criterion_1_theorem_1() -> CriterionOutcome {
    const ID: u32 = 1;
    const NAME: &str = "Theorem 1: eq3 invariant under X1, X2, X3 for k = 4..10";
    for k in 4..=10u32 {
        let coeffs = match solve_recursion(k) {
            Ok(c) => c,
            Err(e) => return CriterionOutcome::fail(ID, NAME, format!("k = {k}: {e}")),
        };
        let ode = match build_eq3(k, &coeffs) {
            Ok(o) => o,
            Err(e) => return CriterionOutcome::fail(ID, NAME, format!("k = {k}: {e}")),
        };
        for v in [VectorField::x1(), VectorField::x2(), VectorField::x3()] {
            if !is_symmetry(&v, &ode) {
                return CriterionOutcome::fail(
                    ID,
                    NAME,
                    format!("{} is not a symmetry at k = {k}", v.label().unwrap_or("?")),
                );
            }
        }
    }
    CriterionOutcome::pass(ID, NAME, "21 exact zero residuals (7 orders x 3 generators)")
}

/// Criterion 2: recursion coefficients re-substitute exactly for
/// k = 4..12 and agree in magnitude with the closed form; the sign
/// relation is reported, not asserted.
pub fn criterion_2_coefficients() -> CriterionOutcome {
    const ID: u32 = 2;
    const NAME: &str = "coefficient cross-check: recursion vs closed form, k = 4..12";
    let anchors: &[(u32, &[&str])] = &[(4, &["6", "-6"]), (5, &["10", "-30", "45/2"])];
    for (k, expected) in anchors {
        let rec = match solve_recursion(*k) {
            Ok(c) => c,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        let got: Vec<String> = rec.values().iter().map(|r| r.to_string()).collect();
        if got != *expected {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("anchor mismatch at k = {k}: got {got:?}"),
            );
        }
    }
    let mut ratios = Vec::new();
    for k in 4..=12u32 {
        let rec = match solve_recursion(k) {
            Ok(c) => c,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        if !rec.satisfies_recursion() {
            return CriterionOutcome::fail(ID, NAME, format!("re-substitution failed at k = {k}"));
        }
        let cf = match closed_form(k) {
            Ok(c) => c,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        let mut k_ratios = Vec::new();
        for q in 1..=(k - 2) {
            if rec.get(q).abs() != cf.get(q).abs() {
                return CriterionOutcome::fail(
                    ID,
                    NAME,
                    format!("|closed_form| != |recursion| at k = {k}, q = {q}"),
                );
            }
            if !rec.get(q).is_zero() {
                k_ratios.push((cf.get(q) / rec.get(q)).to_string());
            }
        }
        k_ratios.dedup();
        ratios.push(format!(
            "k={k}: sign(closed_form/recursion) = {}",
            if k_ratios.len() == 1 { k_ratios[0].clone() } else { "mixed".into() }
        ));
    }
    CriterionOutcome::pass(
        ID,
        NAME,
        format!("magnitudes agree; sign relation (reported, not asserted): {}", ratios.join("; ")),
    )
}

fn solve_family(family: Family, k: u32, degree: u32) -> Result<crate::symmetry::SymmetryReport, String> {
    let ode = crate::factory::build_family(family, k).map_err(|e| e.to_string())?;
    let sys = determining_system(&ode, &AnsatzSpace::new(degree)).map_err(|e| e.to_string())?;
    solve_determining(&sys).map_err(|e| e.to_string())
}

fn spans_expected(basis: &[VectorField], expected: &[VectorField]) -> Result<(), String> {
    for gen in expected {
        match span_solve(basis, gen) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return Err(format!(
                    "{} is outside the computed span",
                    gen.label().unwrap_or("<gen>")
                ))
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

/// Criterion 3: the base family has exactly five symmetries at ansatz
/// degree 2 for k = 4..7, spanning the expected generators, classified
/// sl(2,R) (+) r2; the dimension is unchanged at degrees 3 and 4 for
/// k = 4, 5.
pub fn criterion_3_theorem_2() -> CriterionOutcome {
    const ID: u32 = 3;
    const NAME: &str = "Theorem 2: eq3 has exactly five point symmetries";
    let expected = [
        VectorField::x2(),
        VectorField::x1(),
        VectorField::x3(),
        VectorField::x4(),
        VectorField::x5(),
    ];
    for k in 4..=7u32 {
        let report = match solve_family(Family::Eq3, k, 2) {
            Ok(r) => r,
            Err(e) => return CriterionOutcome::fail(ID, NAME, format!("k = {k}: {e}")),
        };
        if report.dimension != 5 {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("dimension {} != 5 at k = {k}, degree 2", report.dimension),
            );
        }
        if let Err(e) = spans_expected(&report.basis, &expected) {
            return CriterionOutcome::fail(ID, NAME, format!("k = {k}: {e}"));
        }
        if report.classification != AlgebraClass::Sl2RPlusR2 {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("classified {} at k = {k}", report.classification),
            );
        }
    }
    for k in 4..=5u32 {
        for degree in [3u32, 4] {
            let report = match solve_family(Family::Eq3, k, degree) {
                Ok(r) => r,
                Err(e) => return CriterionOutcome::fail(ID, NAME, format!("k = {k}: {e}")),
            };
            if report.dimension != 5 {
                return CriterionOutcome::fail(
                    ID,
                    NAME,
                    format!(
                        "dimension {} != 5 at k = {k}, degree {degree}",
                        report.dimension
                    ),
                );
            }
        }
    }
    CriterionOutcome::pass(
        ID,
        NAME,
        "dimension 5 and SL2R_PLUS_R2 for k = 4..7 at degree 2; stable at degrees 3, 4 for k = 4, 5",
    )
}

/// Criterion 4: the third-order equation has exactly six symmetries at
/// degree 2, classified sl(2,R) (+) sl(2,R), and its bracket table is
/// two commuting copies of the printed relations.
pub fn criterion_4_eq9() -> CriterionOutcome {
    const ID: u32 = 4;
    const NAME: &str = "third-order equation: exactly six symmetries, sl2 + sl2";
    let report = match solve_family(Family::Eq9, 3, 2) {
        Ok(r) => r,
        Err(e) => return CriterionOutcome::fail(ID, NAME, e),
    };
    if report.dimension != 6 {
        return CriterionOutcome::fail(ID, NAME, format!("dimension {} != 6", report.dimension));
    }
    if report.classification != AlgebraClass::Sl2RPlusSl2R {
        return CriterionOutcome::fail(ID, NAME, format!("classified {}", report.classification));
    }
    // Two commuting copies of the printed relations, checked on the
    // canonical generators: (X1, X2, X3) and (Y1, Y2, Y3) = (y dy, dy, y^2 dy).
    let y1 = VectorField::new(RatExpr::zero(), RatExpr::var(Var::Y)).expect("point field");
    let y2 = VectorField::x4();
    let y3 = VectorField::y2_dy();
    let basis = [
        VectorField::x1(),
        VectorField::x2(),
        VectorField::x3(),
        y1,
        y2,
        y3,
    ];
    if let Err(e) = spans_expected(&report.basis, &basis) {
        return CriterionOutcome::fail(ID, NAME, e);
    }
    let table = match bracket_table(&basis) {
        Ok(t) => t,
        Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
    };
    let rat = |n: i64| Rat::from(n);
    let unit = |m: usize, v: i64| {
        let mut row = vec![rat(0); 6];
        row[m] = rat(v);
        row
    };
    let checks: [(usize, usize, Vec<Rat>); 6] = [
        (1, 2, unit(0, 2)),  // [X2, X3] = 2 X1
        (0, 1, unit(1, -1)), // [X1, X2] = -X2
        (0, 2, unit(2, 1)),  // [X1, X3] = X3
        (4, 5, unit(3, 2)),  // [Y2, Y3] = 2 Y1
        (3, 4, unit(4, -1)), // [Y1, Y2] = -Y2
        (3, 5, unit(5, 1)),  // [Y1, Y3] = Y3
    ];
    for (i, j, want) in checks {
        if table.entry(i, j) != want.as_slice() {
            return CriterionOutcome::fail(ID, NAME, format!("bracket ({i},{j}) mismatch"));
        }
    }
    // cross-block commutators vanish
    for i in 0..3 {
        for j in 3..6 {
            if !table.entry(i, j).iter().all(Rat::is_zero) {
                return CriterionOutcome::fail(ID, NAME, format!("cross bracket ({i},{j}) nonzero"));
            }
        }
    }
    CriterionOutcome::pass(ID, NAME, "dimension 6, SL2R_PLUS_SL2R, bracket table is sl2 x sl2")
}

/// Criterion 5: the restricted family has exactly three symmetries at
/// degree 2 (k = 4..7), classified sl(2,R); the y-translations and
/// y-scaling fail directly; and every symmetry of the restricted
/// family is a symmetry of the base family.
pub fn criterion_5_theorem_3() -> CriterionOutcome {
    const ID: u32 = 5;
    const NAME: &str = "Theorem 3: eq10 has exactly sl(2,R)";
    for k in 4..=7u32 {
        let report = match solve_family(Family::Eq10, k, 2) {
            Ok(r) => r,
            Err(e) => return CriterionOutcome::fail(ID, NAME, format!("k = {k}: {e}")),
        };
        if report.dimension != 3 {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("dimension {} != 3 at k = {k}", report.dimension),
            );
        }
        if report.classification != AlgebraClass::Sl2R {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("classified {} at k = {k}", report.classification),
            );
        }
        let coeffs = match solve_recursion(k) {
            Ok(c) => c,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        let ode10 = match build_eq10(k, &coeffs) {
            Ok(o) => o,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        if is_symmetry(&VectorField::x4(), &ode10) || is_symmetry(&VectorField::x5(), &ode10) {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("X4 or X5 unexpectedly invariant at k = {k}"),
            );
        }
        let ode3 = match build_eq3(k, &coeffs) {
            Ok(o) => o,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        for v in &report.basis {
            if !is_symmetry(v, &ode3) {
                return CriterionOutcome::fail(
                    ID,
                    NAME,
                    format!("subset property broken at k = {k}"),
                );
            }
        }
    }
    CriterionOutcome::pass(
        ID,
        NAME,
        "dimension 3 and SL2R for k = 4..7; X4, X5 fail; symmetry set contained in eq3's",
    )
}

/// Criterion 6: the structure constants of (X1, X2, X3) reproduce the
/// printed relations exactly, and the Jacobi identity holds on all
/// triples drawn from the six generators.
pub fn criterion_6_structure_constants() -> CriterionOutcome {
    const ID: u32 = 6;
    const NAME: &str = "structure constants and Jacobi identity";
    let basis = [VectorField::x1(), VectorField::x2(), VectorField::x3()];
    let table = match bracket_table(&basis) {
        Ok(t) => t,
        Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
    };
    let rat = |n: i64| Rat::from(n);
    let want: [(usize, usize, [i64; 3]); 3] = [
        (1, 2, [2, 0, 0]),  // [X2, X3] = 2 X1
        (0, 1, [0, -1, 0]), // [X1, X2] = -X2
        (0, 2, [0, 0, 1]),  // [X1, X3] = X3
    ];
    for (i, j, w) in want {
        let w: Vec<Rat> = w.iter().map(|&n| rat(n)).collect();
        if table.entry(i, j) != w.as_slice() {
            return CriterionOutcome::fail(ID, NAME, format!("bracket ({i},{j}) mismatch"));
        }
    }
    if !table.is_antisymmetric() || !table.jacobi_holds() {
        return CriterionOutcome::fail(ID, NAME, "table fails antisymmetry or Jacobi".to_string());
    }
    let gens = [
        VectorField::x1(),
        VectorField::x2(),
        VectorField::x3(),
        VectorField::x4(),
        VectorField::x5(),
        VectorField::y2_dy(),
    ];
    for u in &gens {
        for v in &gens {
            for w in &gens {
                let cyc = u
                    .commutator(v)
                    .commutator(w)
                    .add(&v.commutator(w).commutator(u))
                    .add(&w.commutator(u).commutator(v));
                if !cyc.is_zero() {
                    return CriterionOutcome::fail(ID, NAME, "Jacobi identity violated".to_string());
                }
            }
        }
    }
    CriterionOutcome::pass(ID, NAME, "Eq.-style sl2 table exact; Jacobi holds on all 216 triples")
}

/// Criterion 7: the prolongation of x^2 d/dx matches the closed form
/// eta^(j) = -j(j-1) y^(j-1) - 2jx y^(j) for j = 1..10, and the
/// prolongation of d/dx has all-zero coefficients.
pub fn criterion_7_prolongation() -> CriterionOutcome {
    const ID: u32 = 7;
    const NAME: &str = "prolongation closed form and translation triviality";
    let pf = prolong(&VectorField::x3(), 10);
    for j in 1..=10u32 {
        let expected = RatExpr::var(Var::y(j - 1))
            .scale(&Rat::from(-((j * (j - 1)) as i64)))
            .sub(
                &RatExpr::var(Var::X)
                    .mul(&RatExpr::var(Var::y(j)))
                    .scale(&Rat::from(2 * j as i64)),
            );
        if !pf.eta_coeff(j).sub(&expected).is_zero() {
            return CriterionOutcome::fail(ID, NAME, format!("closed form fails at j = {j}"));
        }
    }
    let tf = prolong(&VectorField::x2(), 10);
    for j in 0..=10u32 {
        if !tf.eta_coeff(j).is_zero() {
            return CriterionOutcome::fail(ID, NAME, format!("translation coefficient {j} nonzero"));
        }
    }
    CriterionOutcome::pass(ID, NAME, "closed form verified for j = 1..10; translation prolongs to zero")
}

// ---- randomized kernel checks -------------------------------------------

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.random_range(-9i64..=9);
    let d = rng.random_range(1i64..=4);
    Rat::from((n, d))
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], max_terms: usize) -> Poly {
    let terms = rng.random_range(1..=max_terms);
    let mut p = Poly::zero();
    for _ in 0..terms {
        let mut factors = Vec::new();
        for &v in vars {
            let e = rng.random_range(0..=1u32);
            if e > 0 {
                factors.push((v, e));
            }
        }
        let c = random_rat(rng);
        p = p.add(&Poly::term(Monomial::from_factors(factors), c));
    }
    p
}

fn random_expr(rng: &mut ChaCha8Rng, vars: &[Var]) -> RatExpr {
    let num = random_poly(rng, vars, 2);
    // Short operands keep the cross-multiplied expansions small while
    // still exercising every rational-function code path.
    let den = loop {
        let d = random_poly(rng, vars, 2);
        if !d.is_zero() {
            break d;
        }
    };
    RatExpr::new(num, den).expect("nonzero denominator")
}

fn random_point(rng: &mut ChaCha8Rng, vars: &[Var]) -> BTreeMap<Var, Rat> {
    vars.iter()
        .map(|&v| {
            let n = rng.random_range(-1000i64..=1000);
            let d = rng.random_range(1i64..=50);
            (v, Rat::from((n, d)))
        })
        .collect()
}

/// Criterion 8: ring axioms, the Leibniz rule for the total derivative,
/// and agreement between the symbolic zero test and random rational
/// evaluation — 500 fixed-seed cases each, all exact.
pub fn criterion_8_kernel_properties() -> CriterionOutcome {
    const ID: u32 = 8;
    const NAME: &str = "kernel properties: ring axioms, Leibniz, zero test vs evaluation";
    let vars = [Var::X, Var::Y, Var::y(1), Var::y(2)];
    let mut rng = ChaCha8Rng::seed_from_u64(0x510de);

    for case in 0..500 {
        let a = random_expr(&mut rng, &vars);
        let b = random_expr(&mut rng, &vars);
        let c = random_expr(&mut rng, &vars);
        let assoc = a.add(&b).add(&c).sub(&a.add(&b.add(&c)));
        if !assoc.is_zero() {
            return CriterionOutcome::fail(ID, NAME, format!("associativity failed (case {case})"));
        }
        let distrib = a.mul(&b.add(&c)).sub(&a.mul(&b).add(&a.mul(&c)));
        if !distrib.is_zero() {
            return CriterionOutcome::fail(ID, NAME, format!("distributivity failed (case {case})"));
        }
    }

    let ctx = JetCtx::new(3).expect("order 3");
    for case in 0..500 {
        let e = random_expr(&mut rng, &vars);
        let f = random_expr(&mut rng, &vars);
        let lhs = match ctx.total_derivative(&e.mul(&f)) {
            Ok(v) => v,
            Err(err) => return CriterionOutcome::fail(ID, NAME, err.to_string()),
        };
        let rhs = ctx
            .total_derivative(&e)
            .expect("within order")
            .mul(&f)
            .add(&e.mul(&ctx.total_derivative(&f).expect("within order")));
        if !lhs.sub(&rhs).is_zero() {
            return CriterionOutcome::fail(ID, NAME, format!("Leibniz failed (case {case})"));
        }
    }

    for case in 0..500 {
        // A candidate that is sometimes identically zero by construction.
        let a = random_expr(&mut rng, &vars);
        let b = random_expr(&mut rng, &vars);
        let e = if case % 3 == 0 {
            a.mul(&b).sub(&b.mul(&a)) // identically zero
        } else {
            a.sub(&b)
        };
        let symbolic_zero = e.is_zero();
        let mut nonzero_seen = false;
        let mut valid_points = 0;
        let mut attempts = 0;
        while valid_points < 3 && attempts < 200 {
            attempts += 1;
            let pt = random_point(&mut rng, &vars);
            match e.eval(&pt) {
                Ok(v) => {
                    valid_points += 1;
                    if !v.is_zero() {
                        nonzero_seen = true;
                    }
                }
                Err(_) => continue, // denominator vanished; resample
            }
        }
        if valid_points < 3 {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("could not find 3 evaluable points (case {case})"),
            );
        }
        if symbolic_zero && nonzero_seen {
            return CriterionOutcome::fail(
                ID,
                NAME,
                format!("symbolically zero but evaluated nonzero (case {case})"),
            );
        }
        if !symbolic_zero && !nonzero_seen {
            // Extend the search before declaring disagreement; a truly
            // nonzero function vanishing at every sampled point would
            // contradict the zero test.
            let mut extra = 0;
            while extra < 50 {
                let pt = random_point(&mut rng, &vars);
                if let Ok(v) = e.eval(&pt) {
                    extra += 1;
                    if !v.is_zero() {
                        nonzero_seen = true;
                        break;
                    }
                }
            }
            if !nonzero_seen {
                return CriterionOutcome::fail(
                    ID,
                    NAME,
                    format!("nonzero expression evaluated to zero everywhere (case {case})"),
                );
            }
        }
    }

    CriterionOutcome::pass(ID, NAME, "500 exact cases each for associativity/distributivity, Leibniz, and the evaluation cross-oracle")
}

/// Criterion 9 (library side): every rendered output re-parses to an
/// equal expression, and report generation is byte-deterministic. The
/// CLI exit-code contract is exercised by the CLI crate's own
/// acceptance tests.
pub fn criterion_9_text_contract() -> CriterionOutcome {
    const ID: u32 = 9;
    const NAME: &str = "text contract: parser round trip and deterministic reports";
    let mut rendered: Vec<(String, RatExpr)> = Vec::new();

    for k in 4..=10u32 {
        let coeffs = match solve_recursion(k) {
            Ok(c) => c,
            Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
        };
        let displays = [
            display_eq3(k, &coeffs).map(|d| (d, build_eq3(k, &coeffs))),
            display_eq10(k, &coeffs).map(|d| (d, build_eq10(k, &coeffs))),
        ];
        for item in displays {
            let (display, ode) = match item {
                Ok((d, Ok(o))) => (d, o),
                Ok((_, Err(e))) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
                Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
            };
            match &display {
                EqDisplay::Solved { rhs, .. } => {
                    rendered.push((render::ascii(rhs), ode.rhs().clone()));
                }
                EqDisplay::Null { delta } => {
                    let sem = match delta.lower() {
                        Ok(v) => v,
                        Err(e) => return CriterionOutcome::fail(ID, NAME, e.to_string()),
                    };
                    rendered.push((render::ascii(delta), sem));
                }
            }
        }
    }
    if let EqDisplay::Null { delta } = display_eq9() {
        let sem = delta.lower().expect("eq9 display lowers");
        rendered.push((render::ascii(&delta), sem));
    }

    // Residuals and report basis fields render and re-parse too.
    let coeffs4 = solve_recursion(4).expect("k = 4");
    let ode10 = build_eq10(4, &coeffs4).expect("eq10 at k = 4");
    let residual = crate::symmetry::symmetry_residual(&VectorField::x5(), &ode10);
    rendered.push((residual.to_string(), residual.clone()));

    let report = match solve_family(Family::Eq3, 5, 2) {
        Ok(r) => r,
        Err(e) => return CriterionOutcome::fail(ID, NAME, e),
    };
    for f in &report.basis {
        rendered.push((f.xi().to_string(), f.xi().clone()));
        rendered.push((f.eta().to_string(), f.eta().clone()));
    }

    for (text, semantic) in &rendered {
        let reparsed = match parse_expr(text).map(|a| a.lower()) {
            Ok(Ok(v)) => v,
            Ok(Err(e)) => {
                return CriterionOutcome::fail(ID, NAME, format!("{text:?} failed lowering: {e}"))
            }
            Err(e) => {
                return CriterionOutcome::fail(ID, NAME, format!("{text:?} failed parsing: {e}"))
            }
        };
        if !reparsed.sub(semantic).is_zero() {
            return CriterionOutcome::fail(ID, NAME, format!("round trip changed value of {text:?}"));
        }
    }

    // Byte determinism of full report generation, run end to end twice.
    for (family, k) in [(Family::Eq3, 5), (Family::Eq9, 3), (Family::Eq10, 5)] {
        let a = match solve_family(family, k, 2) {
            Ok(r) => serde_json::to_string_pretty(&SymmetryReportJson::from_report(&r)),
            Err(e) => return CriterionOutcome::fail(ID, NAME, e),
        };
        let b = match solve_family(family, k, 2) {
            Ok(r) => serde_json::to_string_pretty(&SymmetryReportJson::from_report(&r)),
            Err(e) => return CriterionOutcome::fail(ID, NAME, e),
        };
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => {
                return CriterionOutcome::fail(
                    ID,
                    NAME,
                    format!("report bytes differ between runs for {}", family.name()),
                )
            }
            (Err(e), _) | (_, Err(e)) => {
                return CriterionOutcome::fail(ID, NAME, e.to_string())
            }
        }
    }

    CriterionOutcome::pass(
        ID,
        NAME,
        format!(
            "{} rendered outputs re-parse to equal expressions; reports are byte-identical across runs",
            rendered.len()
        ),
    )
}

/// Run the whole suite in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1_theorem_1(),
        criterion_2_coefficients(),
        criterion_3_theorem_2(),
        criterion_4_eq9(),
        criterion_5_theorem_3(),
        criterion_6_structure_constants(),
        criterion_7_prolongation(),
        criterion_8_kernel_properties(),
        criterion_9_text_contract(),
    ]
}
