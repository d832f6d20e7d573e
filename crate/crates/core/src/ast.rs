//! Expression syntax trees.
//!
//! `ExprAst` is the common currency of the text front end: the parser
//! produces it, the ASCII/LaTeX/JSON emitters consume it, and `lower`
//! turns it into a normalized `RatExpr`. Equation builders also emit
//! ASTs directly so generated equations print term-by-term the way the
//! families are written, rather than as one flattened fraction.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::RatExpr;
use crate::rat::Rat;
use crate::vars::{self, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprAst {
    Num(Rat),
    Var(Var),
    Neg(Box<ExprAst>),
    Add(Vec<ExprAst>),
    Mul(Vec<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
}

impl ExprAst {
    pub fn num(n: i64) -> Self {
        ExprAst::Num(Rat::from(n))
    }

    pub fn var(v: Var) -> Self {
        ExprAst::Var(v)
    }

    pub fn neg(e: ExprAst) -> Self {
        ExprAst::Neg(Box::new(e))
    }

    pub fn add(terms: Vec<ExprAst>) -> Self {
        ExprAst::Add(terms)
    }

    pub fn mul(factors: Vec<ExprAst>) -> Self {
        ExprAst::Mul(factors)
    }

    pub fn div(a: ExprAst, b: ExprAst) -> Self {
        ExprAst::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(base: ExprAst, exp: i64) -> Self {
        ExprAst::Pow(Box::new(base), exp)
    }

    /// Evaluate the tree into a normalized rational function.
    pub fn lower(&self) -> Result<RatExpr> {
        match self {
            ExprAst::Num(c) => Ok(RatExpr::constant(c.clone())),
            ExprAst::Var(v) => Ok(RatExpr::var(*v)),
            ExprAst::Neg(e) => Ok(e.lower()?.neg()),
            ExprAst::Add(terms) => {
                let mut acc = RatExpr::zero();
                for t in terms {
                    acc = acc.add(&t.lower()?);
                }
                Ok(acc)
            }
            ExprAst::Mul(factors) => {
                let mut acc = RatExpr::one();
                for t in factors {
                    acc = acc.mul(&t.lower()?);
                }
                Ok(acc)
            }
            ExprAst::Div(a, b) => a.lower()?.div(&b.lower()?),
            ExprAst::Pow(base, exp) => base.lower()?.pow(*exp),
        }
    }

    /// JSON encoding of the tree (one-key objects per node kind).
    pub fn to_json(&self) -> Value {
        match self {
            ExprAst::Num(c) => json!({ "num": c.to_string() }),
            ExprAst::Var(v) => json!({ "var": v.name() }),
            ExprAst::Neg(e) => json!({ "neg": e.to_json() }),
            ExprAst::Add(ts) => json!({ "add": ts.iter().map(ExprAst::to_json).collect::<Vec<_>>() }),
            ExprAst::Mul(ts) => json!({ "mul": ts.iter().map(ExprAst::to_json).collect::<Vec<_>>() }),
            ExprAst::Div(a, b) => json!({ "div": [a.to_json(), b.to_json()] }),
            ExprAst::Pow(b, e) => json!({ "pow": { "base": b.to_json(), "exp": e } }),
        }
    }

    /// Decode the JSON encoding produced by `to_json`.
    pub fn from_json(v: &Value) -> Result<ExprAst> {
        let bad = |msg: &str| Error::Inconsistent(format!("bad expression JSON: {msg}"));
        let obj = v.as_object().ok_or_else(|| bad("expected object"))?;
        if obj.len() != 1 {
            return Err(bad("expected a single-key node"));
        }
        let (key, val) = obj.iter().next().expect("len checked");
        match key.as_str() {
            "num" => {
                let s = val.as_str().ok_or_else(|| bad("num must be a string"))?;
                let r: Rat = s.parse().map_err(|e: String| bad(&e))?;
                Ok(ExprAst::Num(r))
            }
            "var" => {
                let s = val.as_str().ok_or_else(|| bad("var must be a string"))?;
                vars::lookup(s)
                    .map(ExprAst::Var)
                    .ok_or_else(|| bad(&format!("unknown variable {s:?}")))
            }
            "neg" => Ok(ExprAst::neg(ExprAst::from_json(val)?)),
            "add" | "mul" => {
                let items = val.as_array().ok_or_else(|| bad("expected array"))?;
                let parsed: Result<Vec<_>> = items.iter().map(ExprAst::from_json).collect();
                let parsed = parsed?;
                Ok(if key == "add" {
                    ExprAst::Add(parsed)
                } else {
                    ExprAst::Mul(parsed)
                })
            }
            "div" => {
                let items = val.as_array().ok_or_else(|| bad("expected array"))?;
                if items.len() != 2 {
                    return Err(bad("div takes two operands"));
                }
                Ok(ExprAst::div(
                    ExprAst::from_json(&items[0])?,
                    ExprAst::from_json(&items[1])?,
                ))
            }
            "pow" => {
                let base = val.get("base").ok_or_else(|| bad("pow needs base"))?;
                let exp = val
                    .get("exp")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| bad("pow needs an integer exp"))?;
                Ok(ExprAst::pow(ExprAst::from_json(base)?, exp))
            }
            other => Err(bad(&format!("unknown node kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_evaluates_arithmetic() {
        // (x + 1)^2 / (x + 1) -> x + 1
        let x = ExprAst::var(Var::X);
        let e = ExprAst::div(
            ExprAst::pow(ExprAst::add(vec![x.clone(), ExprAst::num(1)]), 2),
            ExprAst::add(vec![x, ExprAst::num(1)]),
        );
        assert_eq!(e.lower().unwrap().to_string(), "x + 1");
    }

    #[test]
    fn json_round_trip_preserves_value() {
        let e = ExprAst::add(vec![
            ExprAst::mul(vec![ExprAst::num(3), ExprAst::pow(ExprAst::var(Var::y(2)), 2)]),
            ExprAst::neg(ExprAst::mul(vec![
                ExprAst::num(2),
                ExprAst::var(Var::y(1)),
                ExprAst::var(Var::y(3)),
            ])),
        ]);
        let v = e.to_json();
        let back = ExprAst::from_json(&v).unwrap();
        assert!(back.lower().unwrap().sub(&e.lower().unwrap()).is_zero());
    }

    #[test]
    fn lower_rejects_zero_division() {
        let e = ExprAst::div(ExprAst::num(1), ExprAst::num(0));
        assert!(e.lower().is_err());
    }
}
