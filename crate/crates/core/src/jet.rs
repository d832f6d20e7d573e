//! Jet-space bookkeeping: the total derivative operator and restriction
//! of expressions to the solution manifold of an ODE in solved form.

use crate::error::{Error, Result};
use crate::expr::RatExpr;
use crate::vars::Var;

/// Tracks the highest jet order in play. One spare order above
/// `max_order` is reserved so the total derivative can always write
/// `y^(max_order+1)` without truncating; feeding it an expression that
/// already uses the spare order is a hard error.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct JetCtx {
    max_order: u32,
}

impl JetCtx {
    /// Requires `max_order >= 1`.
    pub fn new(max_order: u32) -> Result<Self> {
        if max_order < 1 {
            return Err(Error::OrderTooSmall { k: max_order, min: 1 });
        }
        Ok(JetCtx { max_order })
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    /// All registered variables: x, y, y', ..., y^(max_order + 1).
    pub fn vars(&self) -> impl Iterator<Item = Var> {
        let top = self.max_order + 1;
        std::iter::once(Var::X).chain((0..=top).map(Var::y))
    }

    /// Total derivative D_x e = de/dx + sum_j y^(j+1) de/dy^(j).
    pub fn total_derivative(&self, e: &RatExpr) -> Result<RatExpr> {
        if let Some(order) = e.max_jet_order() {
            if order > self.max_order {
                return Err(Error::OrderOverflow { limit: self.max_order + 1 });
            }
        }
        let mut out = e.partial_derivative(Var::X);
        for j in 0..=self.max_order {
            let v = Var::y(j);
            if !e.depends_on(v) {
                continue;
            }
            let chain = RatExpr::var(Var::y(j + 1)).mul(&e.partial_derivative(v));
            out = out.add(&chain);
        }
        Ok(out)
    }
}

/// An ODE of order `k >= 3` in solved form `y^(k) = rhs`, with `rhs`
/// free of variables of order `>= k`. The defining expression is
/// `delta = y^(k) - rhs`, linear in `y^(k)` with coefficient 1.
#[derive(Clone, Debug)]
pub struct OdeSpec {
    order: u32,
    rhs: RatExpr,
    label: String,
}

impl OdeSpec {
    pub fn new(order: u32, rhs: RatExpr) -> Result<Self> {
        if order < 3 {
            return Err(Error::OrderTooSmall { k: order, min: 3 });
        }
        if let Some(top) = rhs.max_jet_order() {
            if top >= order {
                return Err(Error::InvalidOde(format!(
                    "rhs of an order-{order} equation uses y^({top})"
                )));
            }
        }
        let label = format!("ode(order={order})");
        Ok(OdeSpec { order, rhs, label })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rhs(&self) -> &RatExpr {
        &self.rhs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The defining expression `y^(k) - rhs`.
    pub fn delta(&self) -> RatExpr {
        RatExpr::var(Var::y(self.order)).sub(&self.rhs)
    }

    /// Restrict `e` to the solution manifold: substitute
    /// `y^(k) <- rhs`, normalized. Expressions one order above `k` are
    /// handled by a single cascade step `y^(k+1) <- D_x rhs`; anything
    /// higher is rejected.
    pub fn reduce(&self, e: &RatExpr) -> Result<RatExpr> {
        let k = self.order;
        let top = e.max_jet_order().unwrap_or(0);
        if top > k + 1 {
            return Err(Error::OrderOverflow { limit: k + 1 });
        }
        let mut out = e.clone();
        if top == k + 1 {
            let ctx = JetCtx::new(k)?;
            let dx_rhs = ctx.total_derivative(&self.rhs)?;
            out = out.substitute(Var::y(k + 1), &dx_rhs)?;
        }
        out.substitute(Var::y(k), &self.rhs)
    }
}

/// Two specs describe the same equation when the orders agree and the
/// right-hand sides are equal as rational functions. Labels are ignored.
impl PartialEq for OdeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.rhs == other.rhs
    }
}

impl Eq for OdeSpec {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn x() -> RatExpr {
        RatExpr::var(Var::X)
    }

    fn yp(j: u32) -> RatExpr {
        RatExpr::var(Var::y(j))
    }

    #[test]
    fn total_derivative_of_x_squared() {
        let ctx = JetCtx::new(3).unwrap();
        let d = ctx.total_derivative(&x().pow(2).unwrap()).unwrap();
        assert_eq!(d.to_string(), "2*x");
    }

    #[test]
    fn total_derivative_of_y_is_y_prime() {
        let ctx = JetCtx::new(1).unwrap();
        assert_eq!(ctx.total_derivative(&yp(0)).unwrap(), yp(1));
    }

    #[test]
    fn total_derivative_product_rule() {
        // D_x(y' y'') = y''^2 + y' y'''
        let ctx = JetCtx::new(2).unwrap();
        let d = ctx.total_derivative(&yp(1).mul(&yp(2))).unwrap();
        let expected = yp(2).pow(2).unwrap().add(&yp(1).mul(&yp(3)));
        assert_eq!(d, expected);
    }

    #[test]
    fn total_derivative_rejects_spare_order() {
        let ctx = JetCtx::new(2).unwrap();
        let e = yp(3); // already at the spare order
        assert!(matches!(
            ctx.total_derivative(&e),
            Err(Error::OrderOverflow { .. })
        ));
    }

    #[test]
    fn leibniz_rule_on_sample_pairs() {
        let ctx = JetCtx::new(3).unwrap();
        let pairs = [
            (yp(1).mul(&x()), yp(2)),
            (yp(0).pow(2).unwrap(), yp(1).add(&x())),
            (
                yp(2).div(&yp(1)).unwrap(),
                x().mul(&yp(0)).sub(&yp(3)),
            ),
        ];
        for (e, f) in pairs {
            let lhs = ctx.total_derivative(&e.mul(&f)).unwrap();
            let rhs = ctx
                .total_derivative(&e)
                .unwrap()
                .mul(&f)
                .add(&e.mul(&ctx.total_derivative(&f).unwrap()));
            assert!(lhs.sub(&rhs).is_zero());
        }
    }

    #[test]
    fn ode_spec_rejects_high_order_rhs() {
        assert!(OdeSpec::new(3, yp(3)).is_err());
        assert!(OdeSpec::new(2, yp(1)).is_err());
        assert!(OdeSpec::new(3, yp(2)).is_ok());
    }

    #[test]
    fn reduce_delta_to_zero() {
        // defining property: reduce(y^(k) - rhs) = 0
        let rhs = yp(2).pow(2).unwrap().div(&yp(1)).unwrap();
        let ode = OdeSpec::new(3, rhs).unwrap();
        assert!(ode.reduce(&ode.delta()).unwrap().is_zero());
    }

    #[test]
    fn reduce_leaves_low_order_expressions_alone() {
        let rhs = yp(2).pow(2).unwrap();
        let ode = OdeSpec::new(3, rhs).unwrap();
        let e = x().mul(&yp(0));
        assert_eq!(ode.reduce(&e).unwrap(), e);
    }

    #[test]
    fn reduce_is_idempotent() {
        let rhs = yp(2).mul(&yp(1)).add(&x());
        let ode = OdeSpec::new(3, rhs).unwrap();
        let e = yp(3).mul(&yp(3)).add(&yp(1).scale(&Rat::from(5)));
        let once = ode.reduce(&e).unwrap();
        let twice = ode.reduce(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn reduce_cascades_one_extra_order() {
        // y^(4) reduces through D_x(rhs) with y''' then replaced too.
        let rhs = yp(2).pow(2).unwrap(); // y''' = y''^2
        let ode = OdeSpec::new(3, rhs.clone()).unwrap();
        let reduced = ode.reduce(&yp(4)).unwrap();
        // D_x(y''^2) = 2 y'' y''' -> 2 y'' * y''^2 = 2 y''^3
        let expected = yp(2).pow(3).unwrap().scale(&Rat::from(2));
        assert_eq!(reduced, expected);
        assert!(matches!(
            ode.reduce(&yp(5)),
            Err(Error::OrderOverflow { .. })
        ));
    }

    #[test]
    fn reduce_is_linear_over_rational_combinations() {
        let rhs = yp(2).mul(&yp(1));
        let ode = OdeSpec::new(3, rhs).unwrap();
        let e = yp(3).mul(&yp(0));
        let f = yp(3).pow(2).unwrap().add(&x());
        let (a, b) = (Rat::from((2, 3)), Rat::from(-5));
        let lhs = ode.reduce(&e.scale(&a).add(&f.scale(&b))).unwrap();
        let rhs2 = ode
            .reduce(&e)
            .unwrap()
            .scale(&a)
            .add(&ode.reduce(&f).unwrap().scale(&b));
        assert!(lhs.sub(&rhs2).is_zero());
    }
}
