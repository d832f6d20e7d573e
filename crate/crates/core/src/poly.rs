//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are compared in graded lexicographic order over the fixed
//! variable-identifier order (higher jet order is more significant), so
//! term iteration and text output are canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;
use crate::vars::Var;

/// A power product of variables. Factors are sorted by variable id and
/// every stored exponent is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn from_factors(mut factors: Vec<(Var, u32)>) -> Self {
        factors.retain(|&(_, e)| e != 0);
        factors.sort_by_key(|&(v, _)| v);
        Monomial { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (va, ea) = self.factors[i];
            let (vb, eb) = other.factors[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Exact quotient `self / other`, or `None` when some exponent
    /// would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            let mut e = e;
            while j < other.factors.len() && other.factors[j].0 < v {
                return None; // divisor has a variable self lacks
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                let eb = other.factors[j].1;
                if eb > e {
                    return None;
                }
                e -= eb;
                j += 1;
            }
            if e > 0 {
                out.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let mut j = 0;
        for &(v, e) in &self.factors {
            while j < other.factors.len() && other.factors[j].0 < v {
                j += 1;
            }
            if j < other.factors.len() && other.factors[j].0 == v {
                out.push((v, e.min(other.factors[j].1)));
            }
        }
        Monomial { factors: out }
    }

    /// Variable raised to a power; exponent 0 gives the empty product.
    pub fn power(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { factors: vec![(v, e)] }
        }
    }
}

/// Graded lexicographic order: total degree first, then lexicographic
/// comparison of exponents starting from the highest variable id.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors.iter().rev();
        let mut b = other.factors.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    match va.cmp(&vb) {
                        Ordering::Equal => match ea.cmp(&eb) {
                            Ordering::Equal => continue,
                            ord => return ord,
                        },
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(v, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// A sparse multivariate polynomial. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term under the global monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Largest jet order among the variables present, if any jet
    /// variable occurs at all (`x` does not count).
    pub fn max_jet_order(&self) -> Option<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.vars())
            .filter_map(Var::order)
            .max()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let dm = m.div(&Monomial::var(v)).expect("exponent checked above");
            out.insert_term(dm, c * &Rat::from(e as i64));
        }
        out
    }

    /// Rational content: gcd of coefficient numerators over lcm of
    /// denominators, carrying the sign of the leading coefficient.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let unsigned = Rat::new(num_gcd, den_lcm).expect("lcm is nonzero");
        if self.leading().expect("nonzero").1.is_negative() {
            -unsigned
        } else {
            unsigned
        }
    }

    /// Componentwise-minimum monomial over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Exact quotient of every term by `m`; panics if not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m).expect("monomial content divides"), c.clone()))
                .collect(),
        }
    }

    /// Exact polynomial division: returns `q` with `self = q * d`, or
    /// `None` when the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            let t = Poly::term(qm, qc);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Substitute exact rational values for every variable.
    /// Variables absent from `point` evaluate as zero.
    pub fn eval(&self, point: &BTreeMap<Var, Rat>) -> Rat {
        let zero = Rat::zero();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let val = point.get(&v).unwrap_or(&zero);
                t *= &val.pow(e as i32);
            }
            acc += &t;
        }
        acc
    }

    /// All variables occurring in the polynomial, sorted.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.vars())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

/// Terms in descending monomial order; coefficients as `p/q` with `/1`
/// suppressed; unit coefficients absorbed into the sign.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::X)
    }

    fn y() -> Poly {
        Poly::var(Var::Y)
    }

    #[test]
    fn grlex_orders_by_degree_then_highest_variable() {
        let m_x2 = Monomial::power(Var::X, 2);
        let m_xy = Monomial::from_factors(vec![(Var::X, 1), (Var::Y, 1)]);
        let m_y = Monomial::var(Var::Y);
        let m_x = Monomial::var(Var::X);
        assert!(m_x2 > m_x);
        assert!(m_xy > m_x2); // same degree, y is more significant
        assert!(m_y > m_x);
        let m_y2 = Monomial::power(Var::y(2), 3);
        let m_y1 = Monomial::from_factors(vec![(Var::y(1), 1), (Var::y(2), 1), (Var::y(3), 1)]);
        assert!(m_y1 > m_y2); // y''' beats y''^3 at equal degree
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = x().mul(&y()).sub(&y().mul(&x()));
        assert!(p.is_zero());
    }

    #[test]
    fn binomial_identity_expands_to_zero() {
        let sum = x().add(&y());
        let lhs = sum.pow(2);
        let rhs = x().pow(2).add(&x().mul(&y()).scale(&Rat::from(2))).add(&y().pow(2));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn derivative_of_square() {
        let p = x().pow(2);
        assert_eq!(p.partial_derivative(Var::X).to_string(), "2*x");
        assert!(p.partial_derivative(Var::Y).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor() {
        // (x^2 - 1) / (x + 1) = x - 1
        let num = x().pow(2).sub(&Poly::one());
        let den = x().add(&Poly::one());
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q.to_string(), "x - 1");
        // x^2 + 1 is not divisible by x + 1
        assert!(x().pow(2).add(&Poly::one()).exact_div(&den).is_none());
    }

    #[test]
    fn content_and_monomial_content() {
        // -6x^2y - 9xy^2: content -3, monomial content xy
        let p = Poly::term(
            Monomial::from_factors(vec![(Var::X, 2), (Var::Y, 1)]),
            Rat::from(-6),
        )
        .add(&Poly::term(
            Monomial::from_factors(vec![(Var::X, 1), (Var::Y, 2)]),
            Rat::from(-9),
        ));
        assert_eq!(p.content(), Rat::from(-3));
        assert_eq!(p.monomial_content().to_string(), "x*y");
    }

    #[test]
    fn display_is_descending_with_signs() {
        let p = x().pow(2).add(&x().scale(&Rat::from(2))).add(&Poly::one());
        assert_eq!(p.to_string(), "x^2 + 2*x + 1");
        let q = Poly::one().sub(&x().pow(3));
        assert_eq!(q.to_string(), "-x^3 + 1");
    }

    #[test]
    fn eval_at_point() {
        let p = x().pow(2).add(&y().scale(&Rat::from(3)));
        let mut pt = BTreeMap::new();
        pt.insert(Var::X, Rat::from(2));
        pt.insert(Var::Y, Rat::from((1, 3)));
        assert_eq!(p.eval(&pt), Rat::from(5));
    }
}
