//! Normalized rational functions (polynomial numerator / denominator)
//! with a decidable zero test.
//!
//! Normal form: the denominator is monic under the global monomial
//! order, exact monomial and polynomial cancellations are applied, and
//! the zero function is `0/1`. Equality of `p/q` and `r/s` is decided
//! by expanding `p*s - r*q`; there is no multivariate GCD anywhere.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rat::Rat;
use crate::vars::Var;

/// A rational function in normal form.
#[derive(Clone, Debug)]
pub struct RatExpr {
    num: Poly,
    den: Poly,
}

impl RatExpr {
    /// Build `num / den`, normalizing. Errors when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    /// Normalization: cancel the common monomial content, fold exact
    /// polynomial quotients in either direction, and scale the
    /// denominator monic.
    fn normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatExpr { num: Poly::zero(), den: Poly::one() };
        }
        let mut num = num;
        let mut den = den;

        let common = num.monomial_content().gcd(&den.monomial_content());
        if !common.is_one() {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }

        // After monomial-content cancellation a single-term side can no
        // longer divide the other, so polynomial division is attempted
        // only between genuinely composite operands.
        if !den.is_constant() && den.num_terms() > 1 && num.num_terms() > 1 {
            if let Some(q) = num.exact_div(&den) {
                return RatExpr { num: q, den: Poly::one() };
            }
            if let Some(q) = den.exact_div(&num) {
                num = Poly::one();
                den = q;
            }
        }

        let lc = den.leading().expect("den nonzero").1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatExpr { num, den }
    }

    pub fn zero() -> Self {
        RatExpr { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatExpr { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatExpr { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn var(v: Var) -> Self {
        RatExpr { num: Poly::var(v), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatExpr { num: p, den: Poly::one() }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// True iff the numerator expands to the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RatExpr) -> RatExpr {
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RatExpr) -> RatExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatExpr {
        RatExpr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatExpr) -> RatExpr {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rat) -> RatExpr {
        if c.is_zero() {
            return RatExpr::zero();
        }
        RatExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Errors when `other` is (identically) zero.
    pub fn div(&self, other: &RatExpr) -> Result<RatExpr> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    /// Integer power; a negative exponent requires a nonzero base.
    pub fn pow(&self, n: i64) -> Result<RatExpr> {
        if n < 0 && self.is_zero() {
            return Err(Error::ZeroToNegativePower);
        }
        let e = n.unsigned_abs().try_into().map_err(|_| Error::Inconsistent("exponent too large".into()))?;
        let (num, den) = if n >= 0 {
            (self.num.pow(e), self.den.pow(e))
        } else {
            (self.den.pow(e), self.num.pow(e))
        };
        Ok(Self::normalized(num, den))
    }

    /// Standard quotient rule; the derivative of a `v`-free expression
    /// is zero.
    pub fn partial_derivative(&self, v: Var) -> RatExpr {
        if self.den.is_one() {
            return RatExpr::from_poly(self.num.partial_derivative(v));
        }
        if !self.den.depends_on(v) {
            return Self::normalized(self.num.partial_derivative(v), self.den.clone());
        }
        let num = self
            .num
            .partial_derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.partial_derivative(v)));
        Self::normalized(num, self.den.pow(2))
    }

    /// Replace every occurrence of `v` by `r`, then normalize. Errors
    /// when the substituted denominator collapses to zero.
    pub fn substitute(&self, v: Var, r: &RatExpr) -> Result<RatExpr> {
        let num = substitute_poly(&self.num, v, r);
        let den = substitute_poly(&self.den, v, r);
        if den.is_zero() {
            return Err(Error::SubstitutionZeroDenominator);
        }
        num.div(&den).map_err(|_| Error::SubstitutionZeroDenominator)
    }

    /// Exact evaluation at a rational point. Variables absent from
    /// `point` evaluate as zero.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Result<Rat> {
        let den = self.den.eval(point);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / den)
    }

    /// Largest jet order among occurring variables, if any.
    pub fn max_jet_order(&self) -> Option<u32> {
        self.num.max_jet_order().max(self.den.max_jet_order())
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.depends_on(v)
    }

    /// All variables occurring in numerator or denominator, sorted.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs = self.num.variables();
        vs.extend(self.den.variables());
        vs.sort();
        vs.dedup();
        vs
    }
}

/// Substitute `v -> r` in a polynomial by collecting powers of `v`.
fn substitute_poly(p: &Poly, v: Var, r: &RatExpr) -> RatExpr {
    if !p.depends_on(v) {
        return RatExpr::from_poly(p.clone());
    }
    // Split p = sum_d c_d(other vars) * v^d.
    let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let d = m.exponent(v);
        let rest = m.div(&Monomial::power(v, d)).expect("own exponent divides");
        let entry = by_degree.entry(d).or_insert_with(Poly::zero);
        *entry = entry.add(&Poly::term(rest, c.clone()));
    }
    let max_d = *by_degree.keys().next_back().expect("nonzero p");
    // Powers of r up to max_d, computed incrementally.
    let mut power = RatExpr::one();
    let mut powers = Vec::with_capacity(max_d as usize + 1);
    powers.push(power.clone());
    for _ in 0..max_d {
        power = power.mul(r);
        powers.push(power.clone());
    }
    let mut acc = RatExpr::zero();
    for (d, coeff) in by_degree {
        acc = acc.add(&powers[d as usize].mul(&RatExpr::from_poly(coeff)));
    }
    acc
}

/// Equality by cross-multiplied expansion: `p/q == r/s` iff `p*s - r*q`
/// is the zero polynomial.
impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den).sub(&other.num.mul(&self.den)).is_zero()
    }
}

impl Eq for RatExpr {}

/// Canonical text: numerator alone when the denominator is 1, else
/// `(num)/(den)` with single-term denominators unparenthesized.
impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_str = self.num.to_string();
        if self.num.num_terms() > 1 || num_str.contains('/') {
            write!(f, "({num_str})")?;
        } else {
            write!(f, "{num_str}")?;
        }
        write!(f, "/")?;
        let den_str = self.den.to_string();
        if self.den.num_terms() > 1 || den_str.contains('*') {
            write!(f, "({den_str})")
        } else {
            write!(f, "{den_str}")
        }
    }
}
