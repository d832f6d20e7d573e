//! Coefficient solving and construction of the invariant ODE families.
//!
//! The band recursion is the authoritative coefficient source; the
//! Gamma-function closed form is computed independently as a
//! cross-check (the two are verified to agree in magnitude, and their
//! sign relation is reported rather than asserted).

use num_bigint::BigInt;
use num_traits::One;

use crate::ast::ExprAst;
use crate::error::{Error, Result};
use crate::expr::RatExpr;
use crate::jet::OdeSpec;
use crate::rat::Rat;
use crate::vars::Var;

/// Which formula produced a coefficient vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoeffSource {
    Recursion,
    ClosedForm,
}

impl CoeffSource {
    pub fn name(self) -> &'static str {
        match self {
            CoeffSource::Recursion => "recursion",
            CoeffSource::ClosedForm => "closed_form",
        }
    }
}

/// The tuple (a_1, ..., a_{k-2}) of exact rationals attached to the
/// order-k equation family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoefficientVector {
    k: u32,
    values: Vec<Rat>,
    source: CoeffSource,
}

impl CoefficientVector {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// a_q, 1-based as in the band equations.
    pub fn get(&self, q: u32) -> &Rat {
        &self.values[(q - 1) as usize]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn source(&self) -> CoeffSource {
        self.source
    }

    /// Re-substitute into the defining band system:
    /// 2 a_1 - f(k) = 0; 2q a_q + f(k+1-q) a_{q-1} = 0 for
    /// 2 <= q <= k-3; 2(k-1) a_{k-2} + f(3) a_{k-3} = 0.
    pub fn satisfies_recursion(&self) -> bool {
        let k = self.k;
        let two = Rat::from(2);
        let first = &(&two * self.get(1)) - &f_value(k, 1).expect("q = 1 in range");
        if !first.is_zero() {
            return false;
        }
        for q in 2..=k.saturating_sub(3) {
            let lhs = &(&Rat::from(2 * q as i64) * self.get(q))
                + &(&f_value(k, q).expect("q in range") * self.get(q - 1));
            if !lhs.is_zero() {
                return false;
            }
        }
        let last = &(&Rat::from(2 * (k - 1) as i64) * self.get(k - 2))
            + &(&f_value(k, k - 2).expect("q = k-2 in range") * self.get(k - 3));
        last.is_zero()
    }
}

/// The value f(k+1-q) = k^2 + k - 2kq - q + q^2, evaluated exactly as
/// printed. Requires 1 <= q <= k-2.
pub fn f_value(k: u32, q: u32) -> Result<Rat> {
    if q < 1 || q > k.saturating_sub(2) {
        return Err(Error::InvalidOde(format!(
            "f(k+1-q) needs 1 <= q <= k-2, got k = {k}, q = {q}"
        )));
    }
    let (k, q) = (k as i64, q as i64);
    Ok(Rat::from(k * k + k - 2 * k * q - q + q * q))
}

/// Solve the band system by forward recursion. The unique solution is
/// a_1 = f(k)/2, a_q = -f(k+1-q) a_{q-1} / (2q) for the middle band
/// (empty at k = 4), and a_{k-2} = -f(3) a_{k-3} / (2(k-1)).
pub fn solve_recursion(k: u32) -> Result<CoefficientVector> {
    if k < 4 {
        return Err(Error::OrderTooSmall { k, min: 4 });
    }
    let mut values = Vec::with_capacity((k - 2) as usize);
    values.push(f_value(k, 1)? / Rat::from(2));
    for q in 2..=(k - 3) {
        let prev = values.last().expect("a_1 pushed").clone();
        values.push(-(f_value(k, q)? * prev) / Rat::from(2 * q as i64));
    }
    let prev = values.last().expect("nonempty").clone();
    values.push(-(f_value(k, k - 2)? * prev) / Rat::from(2 * (k - 1) as i64));
    let out = CoefficientVector { k, values, source: CoeffSource::Recursion };
    debug_assert!(out.satisfies_recursion());
    Ok(out)
}

/// Gamma at a positive integer: (n-1)!.
fn gamma_int(n: u32) -> BigInt {
    assert!(n >= 1, "Gamma evaluated at a non-positive integer");
    let mut acc = BigInt::one();
    for i in 2..n {
        acc *= i;
    }
    acc
}

fn pow2(e: i64) -> Rat {
    Rat::from(2).pow(e as i32)
}

fn neg_one_pow(e: u32) -> Rat {
    if e % 2 == 0 {
        Rat::one()
    } else {
        Rat::from(-1)
    }
}

/// Evaluate the printed Gamma-function closed form exactly:
/// a_q = (-1)^q 2^(1-q) Gamma(k)^2 k / (2 Gamma(q+1) Gamma(k-q) Gamma(k+1-q))
/// for 1 <= q <= k-3, and
/// a_{k-2} = (-1)^(k-2) 2^(4-k) Gamma(k)^2 k / (8 (k-1) Gamma(k-2)).
pub fn closed_form(k: u32) -> Result<CoefficientVector> {
    if k < 4 {
        return Err(Error::OrderTooSmall { k, min: 4 });
    }
    let gk2 = gamma_int(k).pow(2);
    let kk = BigInt::from(k);
    let mut values = Vec::with_capacity((k - 2) as usize);
    for q in 1..=(k - 3) {
        let numer = Rat::from_integer(&gk2 * &kk);
        let denom = Rat::from_integer(
            BigInt::from(2) * gamma_int(q + 1) * gamma_int(k - q) * gamma_int(k + 1 - q),
        );
        values.push(neg_one_pow(q) * pow2(1 - q as i64) * numer / denom);
    }
    let numer = Rat::from_integer(&gk2 * &kk);
    let denom = Rat::from_integer(BigInt::from(8) * BigInt::from(k - 1) * gamma_int(k - 2));
    values.push(neg_one_pow(k - 2) * pow2(4 - k as i64) * numer / denom);
    Ok(CoefficientVector { k, values, source: CoeffSource::ClosedForm })
}

/// Equation family tags used by the CLI and the reports.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Eq3,
    Eq9,
    Eq10,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Eq3 => "eq3",
            Family::Eq9 => "eq9",
            Family::Eq10 => "eq10",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "eq3" => Some(Family::Eq3),
            "eq9" => Some(Family::Eq9),
            "eq10" => Some(Family::Eq10),
            _ => None,
        }
    }

    /// eq9 is pinned at order 3; the other families take any k >= 4.
    pub fn fixed_order(self) -> Option<u32> {
        match self {
            Family::Eq9 => Some(3),
            _ => None,
        }
    }
}

fn check_coeffs(k: u32, coeffs: &CoefficientVector) -> Result<()> {
    if k < 4 {
        return Err(Error::OrderTooSmall { k, min: 4 });
    }
    if coeffs.k != k {
        return Err(Error::CoefficientMismatch { coeff_k: coeffs.k, k });
    }
    Ok(())
}

/// Right-hand side of the base family:
/// sum_{q=1}^{k-3} a_q (y'')^q y^(k-q) (y')^(-q) + a_{k-2} (y'')^(k-1) (y')^(2-k).
fn eq3_rhs(k: u32, coeffs: &CoefficientVector) -> RatExpr {
    let y1 = RatExpr::var(Var::y(1));
    let y2 = RatExpr::var(Var::y(2));
    let mut rhs = RatExpr::zero();
    for q in 1..=(k - 3) {
        let term = y2
            .pow(q as i64)
            .expect("positive power")
            .mul(&RatExpr::var(Var::y(k - q)))
            .mul(&y1.pow(-(q as i64)).expect("y' is nonzero"))
            .scale(coeffs.get(q));
        rhs = rhs.add(&term);
    }
    let last = y2
        .pow((k - 1) as i64)
        .expect("positive power")
        .mul(&y1.pow(2 - k as i64).expect("y' is nonzero"))
        .scale(coeffs.get(k - 2));
    rhs.add(&last)
}

/// The members y^(k) = rhs of the base family (Theorem 1's equation).
pub fn build_eq3(k: u32, coeffs: &CoefficientVector) -> Result<OdeSpec> {
    check_coeffs(k, coeffs)?;
    Ok(OdeSpec::new(k, eq3_rhs(k, coeffs))?.with_label(format!("eq3(k={k})")))
}

/// The third-order equation 3(y'')^2 - 2 y' y''' = 0 in solved form
/// y''' = 3 (y'')^2 / (2 y').
pub fn build_eq9() -> OdeSpec {
    let y1 = RatExpr::var(Var::y(1));
    let y2 = RatExpr::var(Var::y(2));
    let rhs = y2
        .pow(2)
        .expect("positive power")
        .scale(&Rat::from((3, 2)))
        .div(&y1)
        .expect("y' is nonzero");
    OdeSpec::new(3, rhs).expect("order 3 is valid").with_label("eq9")
}

/// The term appended to the base family's defining expression to cut
/// the symmetry algebra down to sl(2,R):
/// (y + (2 y' y''' - 3 (y'')^2) (y')^(-4)) (y')^k.
pub fn eq10_tail(k: u32) -> RatExpr {
    let y0 = RatExpr::var(Var::Y);
    let y1 = RatExpr::var(Var::y(1));
    let y2 = RatExpr::var(Var::y(2));
    let y3 = RatExpr::var(Var::y(3));
    let schwarz_num = y1
        .mul(&y3)
        .scale(&Rat::from(2))
        .sub(&y2.pow(2).expect("positive power").scale(&Rat::from(3)));
    let inner = y0.add(&schwarz_num.mul(&y1.pow(-4).expect("y' is nonzero")));
    inner.mul(&y1.pow(k as i64).expect("positive power"))
}

/// The restricted family of Theorem 3: the base family's defining
/// expression plus `eq10_tail`, still in solved form.
pub fn build_eq10(k: u32, coeffs: &CoefficientVector) -> Result<OdeSpec> {
    check_coeffs(k, coeffs)?;
    let rhs = eq3_rhs(k, coeffs).sub(&eq10_tail(k));
    Ok(OdeSpec::new(k, rhs)?.with_label(format!("eq10(k={k})")))
}

/// A user-supplied tail term Phi(y, y', ..., y^(k-1)): no explicit x
/// and no derivative of order >= k.
#[derive(Clone, Debug)]
pub struct PhiTerm {
    k: u32,
    expr: RatExpr,
}

impl PhiTerm {
    pub fn new(k: u32, expr: RatExpr) -> Result<Self> {
        if expr.depends_on(Var::X) {
            return Err(Error::InvalidPhi("phi must not depend on x".into()));
        }
        if let Some(top) = expr.max_jet_order() {
            if top >= k {
                return Err(Error::InvalidPhi(format!(
                    "phi for an order-{k} equation uses y^({top})"
                )));
            }
        }
        Ok(PhiTerm { k, expr })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn expr(&self) -> &RatExpr {
        &self.expr
    }
}

/// The general template y^(k) = (base family rhs) + Phi. Generation
/// imposes the form only; whether the result keeps sl(2,R) is decided
/// afterwards by the symmetry checker.
pub fn build_eq11(k: u32, coeffs: &CoefficientVector, phi: &PhiTerm) -> Result<OdeSpec> {
    check_coeffs(k, coeffs)?;
    if phi.k != k {
        return Err(Error::InvalidPhi(format!(
            "phi was validated for k = {}, equation has k = {k}",
            phi.k
        )));
    }
    let rhs = eq3_rhs(k, coeffs).add(&phi.expr);
    Ok(OdeSpec::new(k, rhs)?.with_label(format!("eq11(k={k})")))
}

// ---- Display trees ------------------------------------------------------
//
// The families print term-by-term as written, not as one flattened
// fraction, so the builders expose structural ASTs alongside the
// OdeSpec. A consistency test checks that lowering the display AST
// reproduces the semantic equation.

/// How an equation is displayed.
#[derive(Clone, Debug)]
pub enum EqDisplay {
    /// `y^(k) = rhs`
    Solved { order: u32, rhs: ExprAst },
    /// `delta = 0`
    Null { delta: ExprAst },
}

fn coeff_term(a: &Rat, factors: Vec<ExprAst>) -> ExprAst {
    let mut fs = Vec::with_capacity(factors.len() + 1);
    let mag = a.abs();
    if !mag.is_one() {
        fs.push(ExprAst::Num(mag));
    }
    fs.extend(factors);
    let body = if fs.len() == 1 {
        fs.into_iter().next().expect("one factor")
    } else {
        ExprAst::Mul(fs)
    };
    if a.is_negative() {
        ExprAst::neg(body)
    } else {
        body
    }
}

fn var_pow(v: Var, e: i64) -> ExprAst {
    if e == 1 {
        ExprAst::var(v)
    } else {
        ExprAst::pow(ExprAst::var(v), e)
    }
}

fn eq3_rhs_terms(k: u32, coeffs: &CoefficientVector) -> Vec<ExprAst> {
    let mut terms = Vec::with_capacity((k - 2) as usize);
    for q in 1..=(k - 3) {
        terms.push(coeff_term(
            coeffs.get(q),
            vec![
                var_pow(Var::y(2), q as i64),
                ExprAst::var(Var::y(k - q)),
                var_pow(Var::y(1), -(q as i64)),
            ],
        ));
    }
    terms.push(coeff_term(
        coeffs.get(k - 2),
        vec![
            ExprAst::pow(ExprAst::var(Var::y(2)), (k - 1) as i64),
            ExprAst::pow(ExprAst::var(Var::y(1)), 2 - k as i64),
        ],
    ));
    terms
}

/// `y^(k) = sum of coefficient terms`.
pub fn display_eq3(k: u32, coeffs: &CoefficientVector) -> Result<EqDisplay> {
    check_coeffs(k, coeffs)?;
    Ok(EqDisplay::Solved { order: k, rhs: ExprAst::Add(eq3_rhs_terms(k, coeffs)) })
}

/// `3*y''^2 - 2*y'*y''' = 0`, as printed.
pub fn display_eq9() -> EqDisplay {
    let delta = ExprAst::Add(vec![
        ExprAst::mul(vec![ExprAst::num(3), ExprAst::pow(ExprAst::var(Var::y(2)), 2)]),
        ExprAst::neg(ExprAst::mul(vec![
            ExprAst::num(2),
            ExprAst::var(Var::y(1)),
            ExprAst::var(Var::y(3)),
        ])),
    ]);
    EqDisplay::Null { delta }
}

/// Display tree for the appended term of the restricted family.
pub fn eq10_tail_display(k: u32) -> ExprAst {
    let schwarz = ExprAst::Add(vec![
        ExprAst::mul(vec![
            ExprAst::num(2),
            ExprAst::var(Var::y(1)),
            ExprAst::var(Var::y(3)),
        ]),
        ExprAst::neg(ExprAst::mul(vec![
            ExprAst::num(3),
            ExprAst::pow(ExprAst::var(Var::y(2)), 2),
        ])),
    ]);
    ExprAst::mul(vec![
        ExprAst::Add(vec![
            ExprAst::var(Var::Y),
            ExprAst::div(schwarz, ExprAst::pow(ExprAst::var(Var::y(1)), 4)),
        ]),
        ExprAst::pow(ExprAst::var(Var::y(1)), k as i64),
    ])
}

/// The paper-style defining expression: `y^(k) - (base terms) + tail = 0`.
pub fn display_eq10(k: u32, coeffs: &CoefficientVector) -> Result<EqDisplay> {
    check_coeffs(k, coeffs)?;
    let mut terms = vec![ExprAst::var(Var::y(k))];
    for t in eq3_rhs_terms(k, coeffs) {
        terms.push(match t {
            ExprAst::Neg(inner) => *inner,
            other => ExprAst::neg(other),
        });
    }
    terms.push(eq10_tail_display(k));
    Ok(EqDisplay::Null { delta: ExprAst::Add(terms) })
}

/// Display tree for a family at the given order.
pub fn display_family(family: Family, k: u32, coeffs: Option<&CoefficientVector>) -> Result<EqDisplay> {
    match family {
        Family::Eq9 => Ok(display_eq9()),
        Family::Eq3 => display_eq3(k, coeffs.expect("eq3 needs coefficients")),
        Family::Eq10 => display_eq10(k, coeffs.expect("eq10 needs coefficients")),
    }
}

/// Build a family member (recursion coefficients for eq3/eq10).
pub fn build_family(family: Family, k: u32) -> Result<OdeSpec> {
    match family {
        Family::Eq9 => Ok(build_eq9()),
        Family::Eq3 => build_eq3(k, &solve_recursion(k)?),
        Family::Eq10 => build_eq10(k, &solve_recursion(k)?),
    }
}
