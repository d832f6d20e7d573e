//! Python bindings for the sl2ode toolkit.
//!
//! Exposes the exact expression type plus the high-level operations:
//! coefficient solving, equation generation, symmetry verification,
//! and determining-system solving. Reports cross the boundary as JSON
//! strings so Python sides can `json.loads` them.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use sl2ode::factory::{self, Family};
use sl2ode::fields::VectorField;
use sl2ode::jet::JetCtx;
use sl2ode::parse;
use sl2ode::report::{equation_json, SymmetryReportJson};
use sl2ode::symmetry::{determining_system, solve_determining, AnsatzSpace};
use sl2ode::vars;
use sl2ode::{OdeSpec, RatExpr};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family_from(name: &str) -> PyResult<Family> {
    Family::from_name(name)
        .ok_or_else(|| value_err(format!("unknown family {name:?} (expected eq3, eq9, eq10)")))
}

fn order_for(family: Family, k: Option<u32>) -> PyResult<u32> {
    match (family.fixed_order(), k) {
        (Some(fixed), None) => Ok(fixed),
        (Some(fixed), Some(k)) if k == fixed => Ok(fixed),
        (Some(fixed), Some(k)) => Err(value_err(format!(
            "{} is fixed at order {fixed}; got k = {k}",
            family.name()
        ))),
        (None, Some(k)) => Ok(k),
        (None, None) => Err(value_err(format!("{} requires k", family.name()))),
    }
}

fn field_from(spec: &str) -> PyResult<VectorField> {
    if let Some(builtin) = VectorField::builtin(spec.trim()) {
        return Ok(builtin);
    }
    parse::parse_field(spec).map_err(value_err)
}

fn var_from(name: &str) -> PyResult<sl2ode::Var> {
    vars::lookup(name).ok_or_else(|| value_err(format!("unknown variable {name:?}")))
}

/// An exact rational function of the jet variables x, y, y', y'', ...
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Expr {
    inner: RatExpr,
}

#[pymethods]
impl Expr {
    /// Parse an expression, e.g. `Expr("3*y''^2 - 2*y'*y'''")`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let ast = parse::parse_expr(text).map_err(value_err)?;
        Ok(Expr { inner: ast.lower().map_err(value_err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_string())
    }

    fn __add__(&self, other: &Expr) -> Expr {
        Expr { inner: self.inner.add(&other.inner) }
    }

    fn __sub__(&self, other: &Expr) -> Expr {
        Expr { inner: self.inner.sub(&other.inner) }
    }

    fn __mul__(&self, other: &Expr) -> Expr {
        Expr { inner: self.inner.mul(&other.inner) }
    }

    fn __truediv__(&self, other: &Expr) -> PyResult<Expr> {
        Ok(Expr { inner: self.inner.div(&other.inner).map_err(value_err)? })
    }

    fn __neg__(&self) -> Expr {
        Expr { inner: self.inner.neg() }
    }

    fn __pow__(&self, exp: i64, _modulo: Option<i64>) -> PyResult<Expr> {
        Ok(Expr { inner: self.inner.pow(exp).map_err(value_err)? })
    }

    fn __eq__(&self, other: &Expr) -> bool {
        self.inner == other.inner
    }

    /// True iff the expression is identically zero.
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Partial derivative with respect to a named variable.
    fn diff(&self, var: &str) -> PyResult<Expr> {
        Ok(Expr { inner: self.inner.partial_derivative(var_from(var)?) })
    }

    /// Substitute an expression for a named variable.
    fn subs(&self, var: &str, value: &Expr) -> PyResult<Expr> {
        Ok(Expr {
            inner: self
                .inner
                .substitute(var_from(var)?, &value.inner)
                .map_err(value_err)?,
        })
    }

    /// Total derivative D_x, treating y as a function of x.
    fn total_derivative(&self) -> PyResult<Expr> {
        let order = self.inner.max_jet_order().unwrap_or(0).max(1);
        let ctx = JetCtx::new(order).map_err(value_err)?;
        Ok(Expr { inner: ctx.total_derivative(&self.inner).map_err(value_err)? })
    }
}

/// The coefficient tuple (a_1, ..., a_{k-2}) as exact rational strings.
#[pyfunction]
#[pyo3(signature = (k, source = "recursion"))]
fn coefficients(k: u32, source: &str) -> PyResult<Vec<String>> {
    let v = match source {
        "recursion" => factory::solve_recursion(k).map_err(value_err)?,
        "closed_form" => factory::closed_form(k).map_err(value_err)?,
        other => return Err(value_err(format!("unknown source {other:?}"))),
    };
    Ok(v.values().iter().map(|r| r.to_string()).collect())
}

fn coeffs_for(family: Family, k: u32) -> PyResult<Option<factory::CoefficientVector>> {
    match family {
        Family::Eq9 => Ok(None),
        _ => Ok(Some(factory::solve_recursion(k).map_err(value_err)?)),
    }
}

/// Render a family member: format is "ascii", "latex", or "json".
#[pyfunction]
#[pyo3(signature = (family, k = None, format = "ascii"))]
fn equation(family: &str, k: Option<u32>, format: &str) -> PyResult<String> {
    let family = family_from(family)?;
    let k = order_for(family, k)?;
    let coeffs = coeffs_for(family, k)?;
    match format {
        "ascii" | "latex" => {
            let display =
                factory::display_family(family, k, coeffs.as_ref()).map_err(value_err)?;
            Ok(match format {
                "ascii" => sl2ode::render::equation_ascii(&display),
                _ => sl2ode::render::equation_latex(&display),
            })
        }
        "json" => {
            let doc = equation_json(family, k, coeffs.as_ref()).map_err(value_err)?;
            serde_json::to_string_pretty(&doc).map_err(value_err)
        }
        other => Err(value_err(format!("unknown format {other:?}"))),
    }
}

fn ode_for(family: &str, k: Option<u32>) -> PyResult<OdeSpec> {
    let family = family_from(family)?;
    let k = order_for(family, k)?;
    factory::build_family(family, k).map_err(value_err)
}

/// Whether a point field (builtin name or `xi = ..; eta = ..` text) is
/// a symmetry of a family member.
#[pyfunction]
#[pyo3(signature = (family, field, k = None))]
fn is_symmetry(family: &str, field: &str, k: Option<u32>) -> PyResult<bool> {
    let ode = ode_for(family, k)?;
    Ok(sl2ode::symmetry::is_symmetry(&field_from(field)?, &ode))
}

/// The reduced invariance residual in canonical text ("0" iff symmetry).
#[pyfunction]
#[pyo3(signature = (family, field, k = None))]
fn residual(family: &str, field: &str, k: Option<u32>) -> PyResult<String> {
    let ode = ode_for(family, k)?;
    Ok(sl2ode::symmetry::symmetry_residual(&field_from(field)?, &ode).to_string())
}

fn solve_report(ode: &OdeSpec, degree: u32) -> PyResult<String> {
    let system = determining_system(ode, &AnsatzSpace::new(degree)).map_err(value_err)?;
    let report = solve_determining(&system).map_err(value_err)?;
    serde_json::to_string_pretty(&SymmetryReportJson::from_report(&report)).map_err(value_err)
}

/// Solve the determining equations for a family member within a
/// polynomial ansatz; returns the symmetry report as a JSON string.
#[pyfunction]
#[pyo3(signature = (family, k = None, degree = 2))]
fn solve(family: &str, k: Option<u32>, degree: u32) -> PyResult<String> {
    solve_report(&ode_for(family, k)?, degree)
}

/// Solve a custom ODE y^(order) = rhs given as expression text.
#[pyfunction]
#[pyo3(signature = (order, rhs, degree = 2))]
fn solve_ode(order: u32, rhs: &str, degree: u32) -> PyResult<String> {
    let rhs = parse::parse_expr(rhs)
        .map_err(value_err)?
        .lower()
        .map_err(value_err)?;
    let ode = OdeSpec::new(order, rhs)
        .map_err(value_err)?
        .with_label(format!("custom(order={order})"));
    solve_report(&ode, degree)
}

/// Lie bracket of two point fields, in canonical `xi = ..; eta = ..` text.
#[pyfunction]
fn commutator(left: &str, right: &str) -> PyResult<String> {
    let l = field_from(left)?;
    let r = field_from(right)?;
    Ok(l.commutator(&r).to_string())
}

#[pymodule]
fn sl2ode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Expr>()?;
    m.add_function(wrap_pyfunction!(coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(equation, m)?)?;
    m.add_function(wrap_pyfunction!(is_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_ode, m)?)?;
    m.add_function(wrap_pyfunction!(commutator, m)?)?;
    Ok(())
}
