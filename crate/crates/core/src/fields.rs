//! Point vector fields on the (x, y) plane, their prolongations to jet
//! space, commutators, and exact structure constants.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::RatExpr;
use crate::jet::JetCtx;
use crate::linalg;
use crate::poly::Monomial;
use crate::rat::Rat;
use crate::vars::Var;

/// A point vector field `xi(x,y) d/dx + eta(x,y) d/dy`. The coefficient
/// functions may depend on x and y only.
#[derive(Clone, Debug)]
pub struct VectorField {
    xi: RatExpr,
    eta: RatExpr,
    label: Option<String>,
}

impl VectorField {
    pub fn new(xi: RatExpr, eta: RatExpr) -> Result<Self> {
        for (name, e) in [("xi", &xi), ("eta", &eta)] {
            if let Some(order) = e.max_jet_order() {
                if order >= 1 {
                    return Err(Error::NotPointField(format!(
                        "{name} depends on y^({order})"
                    )));
                }
            }
        }
        Ok(VectorField { xi, eta, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn xi(&self) -> &RatExpr {
        &self.xi
    }

    pub fn eta(&self) -> &RatExpr {
        &self.eta
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.eta.is_zero()
    }

    /// Act on a function of (x, y) as a first-order derivation.
    pub fn derive(&self, f: &RatExpr) -> RatExpr {
        self.xi
            .mul(&f.partial_derivative(Var::X))
            .add(&self.eta.mul(&f.partial_derivative(Var::Y)))
    }

    /// Lie bracket `[self, other]` as a point vector field.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        let xi = self.derive(&other.xi).sub(&other.derive(&self.xi));
        let eta = self.derive(&other.eta).sub(&other.derive(&self.eta));
        VectorField { xi, eta, label: None }
    }

    pub fn scale(&self, c: &Rat) -> VectorField {
        VectorField {
            xi: self.xi.scale(c),
            eta: self.eta.scale(c),
            label: None,
        }
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            xi: self.xi.add(&other.xi),
            eta: self.eta.add(&other.eta),
            label: None,
        }
    }

    // The named generators of the paper's realizations.

    /// X1 = x d/dx
    pub fn x1() -> Self {
        VectorField {
            xi: RatExpr::var(Var::X),
            eta: RatExpr::zero(),
            label: Some("X1".into()),
        }
    }

    /// X2 = d/dx
    pub fn x2() -> Self {
        VectorField {
            xi: RatExpr::one(),
            eta: RatExpr::zero(),
            label: Some("X2".into()),
        }
    }

    /// X3 = x^2 d/dx
    pub fn x3() -> Self {
        VectorField {
            xi: RatExpr::var(Var::X).pow(2).expect("positive power"),
            eta: RatExpr::zero(),
            label: Some("X3".into()),
        }
    }

    /// X4 = d/dy
    pub fn x4() -> Self {
        VectorField {
            xi: RatExpr::zero(),
            eta: RatExpr::one(),
            label: Some("X4".into()),
        }
    }

    /// X5 = y d/dy
    pub fn x5() -> Self {
        VectorField {
            xi: RatExpr::zero(),
            eta: RatExpr::var(Var::Y),
            label: Some("X5".into()),
        }
    }

    /// y^2 d/dy, the missing third generator of the y-side sl(2,R).
    pub fn y2_dy() -> Self {
        VectorField {
            xi: RatExpr::zero(),
            eta: RatExpr::var(Var::Y).pow(2).expect("positive power"),
            label: Some("y^2*dy".into()),
        }
    }

    /// Look up a generator by its conventional name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "X1" | "x1" => Some(Self::x1()),
            "X2" | "x2" => Some(Self::x2()),
            "X3" | "x3" => Some(Self::x3()),
            "X4" | "x4" => Some(Self::x4()),
            "X5" | "x5" => Some(Self::x5()),
            _ => None,
        }
    }
}

/// Coefficient-wise equality (labels ignored).
impl PartialEq for VectorField {
    fn eq(&self, other: &Self) -> bool {
        self.xi == other.xi && self.eta == other.eta
    }
}

impl Eq for VectorField {}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi = {}; eta = {}", self.xi, self.eta)
    }
}

/// A point field prolonged to jet order `k`, with the coefficients
/// eta^(0) = eta, eta^(j) = D_x eta^(j-1) - y^(j) D_x xi cached eagerly.
#[derive(Clone, Debug)]
pub struct ProlongedField {
    base: VectorField,
    order: u32,
    eta_coeffs: Vec<RatExpr>,
}

/// Prolong `v` to order `k` (k >= 1).
pub fn prolong(v: &VectorField, k: u32) -> ProlongedField {
    assert!(k >= 1, "prolongation order must be at least 1");
    let ctx = JetCtx::new(k).expect("k >= 1");
    let dx_xi = ctx
        .total_derivative(v.xi())
        .expect("xi has order 0 < max_order");
    let mut eta_coeffs = Vec::with_capacity(k as usize + 1);
    eta_coeffs.push(v.eta().clone());
    for j in 1..=k {
        let prev = &eta_coeffs[(j - 1) as usize];
        // D_x xi depends only on x, y, y'; each step stays within the
        // context because eta^(j-1) has order <= j-1 < k.
        let next = ctx
            .total_derivative(prev)
            .expect("eta^(j-1) has order <= k-1")
            .sub(&RatExpr::var(Var::y(j)).mul(&dx_xi));
        eta_coeffs.push(next);
    }
    ProlongedField { base: v.clone(), order: k, eta_coeffs }
}

impl ProlongedField {
    pub fn base(&self) -> &VectorField {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The coefficient eta^(j); j = 0 is eta itself.
    pub fn eta_coeff(&self, j: u32) -> &RatExpr {
        &self.eta_coeffs[j as usize]
    }

    /// Apply the prolonged field to an expression of order <= k:
    /// xi de/dx + sum_j eta^(j) de/dy^(j).
    pub fn apply(&self, e: &RatExpr) -> RatExpr {
        assert!(
            e.max_jet_order().unwrap_or(0) <= self.order,
            "expression order exceeds prolongation order"
        );
        let mut out = self.base.xi().mul(&e.partial_derivative(Var::X));
        for j in 0..=self.order {
            let v = Var::y(j);
            if !e.depends_on(v) {
                continue;
            }
            out = out.add(&self.eta_coeffs[j as usize].mul(&e.partial_derivative(v)));
        }
        out
    }

    /// Recompute the defining recursion and compare against the cached
    /// coefficients. Used by tests to validate the eager cache.
    pub fn recursion_holds(&self) -> bool {
        let recomputed = prolong(&self.base, self.order);
        self.eta_coeffs
            .iter()
            .zip(recomputed.eta_coeffs.iter())
            .all(|(a, b)| a.sub(b).is_zero())
            && self
                .eta_coeffs
                .iter()
                .enumerate()
                .all(|(j, e)| e.max_jet_order().unwrap_or(0) <= j as u32)
    }
}

/// Exact structure constants of a basis of vector fields:
/// `[v_i, v_j] = sum_m c[i][j][m] v_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
}

impl BracketTable {
    /// Build a table from raw structure constants `c[i][j][m]`.
    pub fn from_constants(c: Vec<Vec<Vec<Rat>>>) -> Self {
        let dim = c.len();
        assert!(c.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim)));
        BracketTable { dim, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients of `[v_i, v_j]` over the basis.
    pub fn entry(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|m| self.c[i][j][m] == -&self.c[j][i][m])
            })
        })
    }

    /// Jacobi identity on the structure constants:
    /// sum_m c[i][j][m] c[m][k][l] + cyclic = 0 for all i, j, k, l.
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = Rat::zero();
                        for m in 0..n {
                            acc += &(&self.c[i][j][m] * &self.c[m][k][l]);
                            acc += &(&self.c[j][k][m] * &self.c[m][i][l]);
                            acc += &(&self.c[k][i][m] * &self.c[m][j][l]);
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Stack a polynomial field's coefficients over a shared key set:
/// (component, monomial) -> coefficient.
fn field_vector(v: &VectorField, keys: &[(usize, Monomial)]) -> Vec<Rat> {
    let comps = [v.xi().numerator(), v.eta().numerator()];
    keys.iter()
        .map(|(c, m)| comps[*c].coefficient(m))
        .collect()
}

fn collect_keys(fields: &[&VectorField]) -> Vec<(usize, Monomial)> {
    let mut keys = Vec::new();
    for f in fields {
        for (c, poly) in [(0usize, f.xi().numerator()), (1, f.eta().numerator())] {
            for (m, _) in poly.terms() {
                keys.push((c, m.clone()));
            }
        }
    }
    keys.sort();
    keys.dedup();
    keys
}

fn require_polynomial(v: &VectorField) -> Result<()> {
    if !v.xi().is_polynomial() || !v.eta().is_polynomial() {
        return Err(Error::NotClosed(format!(
            "field {} has non-polynomial coefficients",
            v.label().unwrap_or("<unnamed>")
        )));
    }
    Ok(())
}

/// Express `target` in the rational span of `basis` (all polynomial
/// fields). Returns `None` when it is outside the span.
pub fn span_solve(basis: &[VectorField], target: &VectorField) -> Result<Option<Vec<Rat>>> {
    for v in basis.iter().chain(std::iter::once(target)) {
        require_polynomial(v)?;
    }
    let mut all: Vec<&VectorField> = basis.iter().collect();
    all.push(target);
    let keys = collect_keys(&all);
    let cols: Vec<Vec<Rat>> = basis.iter().map(|v| field_vector(v, &keys)).collect();
    let rhs = field_vector(target, &keys);
    Ok(linalg::solve_exact(&cols, &rhs))
}

/// Exact structure constants for a basis whose pairwise commutators all
/// lie in its rational span; errors loudly otherwise.
pub fn bracket_table(basis: &[VectorField]) -> Result<BracketTable> {
    let n = basis.len();
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let comm = basis[i].commutator(&basis[j]);
            let coeffs = span_solve(basis, &comm)?.ok_or_else(|| {
                Error::NotClosed(format!(
                    "[{}, {}] = ({}) is outside the span of the basis",
                    basis[i].label().unwrap_or(&format!("v{}", i + 1)),
                    basis[j].label().unwrap_or(&format!("v{}", j + 1)),
                    comm
                ))
            })?;
            for m in 0..n {
                c[j][i][m] = -&coeffs[m];
            }
            c[i][j] = coeffs;
        }
    }
    Ok(BracketTable { dim: n, c })
}
