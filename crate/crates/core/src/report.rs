//! JSON emission for coefficient vectors, equations, and symmetry
//! reports, plus equation-file loading for the CLI.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ast::ExprAst;
use crate::error::{Error, Result};
use crate::factory::{CoefficientVector, EqDisplay, Family};
use crate::jet::OdeSpec;
use crate::render;
use crate::symmetry::SymmetryReport;
use crate::vars::Var;

/// `{"k": 4, "a": ["6", "-6"], "source": "recursion"}`
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CoefficientsJson {
    pub k: u32,
    pub a: Vec<String>,
    pub source: String,
}

impl CoefficientsJson {
    pub fn from_vector(v: &CoefficientVector) -> Self {
        CoefficientsJson {
            k: v.k(),
            a: v.values().iter().map(|r| r.to_string()).collect(),
            source: v.source().name().to_string(),
        }
    }
}

/// Equation emission: family tag, order, the right-hand side of the
/// solved form as an expression AST, and both text displays.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct EquationJson {
    pub family: String,
    pub k: u32,
    pub order: u32,
    pub rhs: Value,
    pub display: EquationDisplayJson,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct EquationDisplayJson {
    pub ascii: String,
    pub latex: String,
}

impl EquationJson {
    pub fn new(family: Family, ode: &OdeSpec, display: &EqDisplay, rhs_ast: &ExprAst) -> Self {
        EquationJson {
            family: family.name().to_string(),
            k: ode.order(),
            order: ode.order(),
            rhs: rhs_ast.to_json(),
            display: EquationDisplayJson {
                ascii: render::equation_ascii(display),
                latex: render::equation_latex(display),
            },
        }
    }

    /// Rebuild the semantic ODE from the stored order and rhs tree.
    pub fn to_ode(&self) -> Result<OdeSpec> {
        let rhs = ExprAst::from_json(&self.rhs)?.lower()?;
        let label = if self.family == "custom" {
            format!("custom(order={})", self.order)
        } else {
            format!("{}(k={})", self.family, self.k)
        };
        Ok(OdeSpec::new(self.order, rhs)?.with_label(label))
    }
}

/// One basis field, both coefficient functions in canonical text.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FieldJson {
    pub label: String,
    pub xi: String,
    pub eta: String,
}

/// `SymmetryReport` emission: ODE id, ansatz degree, dimension, basis,
/// bracket table as nested rational-string arrays, classification tag,
/// and the ansatz-scope caveat.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SymmetryReportJson {
    pub ode: String,
    pub k: u32,
    pub degree: u32,
    pub dimension: usize,
    pub basis: Vec<FieldJson>,
    pub brackets: Option<Vec<Vec<Vec<String>>>>,
    pub classification: String,
    pub note: String,
}

impl SymmetryReportJson {
    pub fn from_report(r: &SymmetryReport) -> Self {
        let basis = r
            .basis
            .iter()
            .enumerate()
            .map(|(i, f)| FieldJson {
                label: f
                    .label()
                    .map(str::to_string)
                    .unwrap_or_else(|| format!("V{}", i + 1)),
                xi: f.xi().to_string(),
                eta: f.eta().to_string(),
            })
            .collect();
        let brackets = r.brackets.as_ref().map(|t| {
            (0..t.dim())
                .map(|i| {
                    (0..t.dim())
                        .map(|j| t.entry(i, j).iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect()
        });
        SymmetryReportJson {
            ode: r.ode_label.clone(),
            k: r.order,
            degree: r.degree,
            dimension: r.dimension,
            basis,
            brackets,
            classification: r.classification.name().to_string(),
            note: r.scope_note.clone(),
        }
    }
}

/// Parse an equation JSON document into an ODE (the `--ode-file` path).
pub fn ode_from_json_str(text: &str) -> Result<OdeSpec> {
    let parsed: EquationJson = serde_json::from_str(text)
        .map_err(|e| Error::InvalidOde(format!("bad equation JSON: {e}")))?;
    parsed.to_ode()
}

/// A custom equation document for hand-written ODE files: order plus
/// the rhs as expression text (parsed with the CLI grammar).
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CustomOdeJson {
    pub order: u32,
    pub rhs: String,
}

impl CustomOdeJson {
    pub fn to_ode(&self) -> Result<OdeSpec> {
        let rhs = crate::parse::parse_expr(&self.rhs)?.lower()?;
        Ok(OdeSpec::new(self.order, rhs)?
            .with_label(format!("custom(order={})", self.order)))
    }
}

/// Load an ODE from either document shape: the full `EquationJson`
/// emitted by `gen-eq --format json`, or the minimal `CustomOdeJson`.
pub fn ode_from_any_json(text: &str) -> Result<OdeSpec> {
    if let Ok(parsed) = serde_json::from_str::<EquationJson>(text) {
        return parsed.to_ode();
    }
    if let Ok(parsed) = serde_json::from_str::<CustomOdeJson>(text) {
        return parsed.to_ode();
    }
    Err(Error::InvalidOde(
        "unrecognized equation document (expected gen-eq JSON or {order, rhs})".into(),
    ))
}

/// Assemble the full equation JSON for a family member built from the
/// given coefficients (eq9 takes none). The rhs tree is the
/// solved-form right-hand side.
pub fn equation_json(family: Family, k: u32, coeffs: Option<&CoefficientVector>) -> Result<EquationJson> {
    let ode = match family {
        Family::Eq9 => crate::factory::build_eq9(),
        Family::Eq3 => crate::factory::build_eq3(k, coeffs.expect("eq3 needs coefficients"))?,
        Family::Eq10 => crate::factory::build_eq10(k, coeffs.expect("eq10 needs coefficients"))?,
    };
    let display = crate::factory::display_family(family, k, coeffs)?;
    let rhs_ast = match family {
        Family::Eq3 => match &display {
            EqDisplay::Solved { rhs, .. } => rhs.clone(),
            _ => unreachable!("eq3 displays solved"),
        },
        Family::Eq9 => {
            // solved rhs: 3*y''^2/(2*y')
            ExprAst::mul(vec![
                ExprAst::Num(crate::rat::Rat::from((3, 2))),
                ExprAst::pow(ExprAst::var(Var::y(2)), 2),
                ExprAst::pow(ExprAst::var(Var::y(1)), -1),
            ])
        }
        Family::Eq10 => {
            // solved rhs: (eq3 terms) - tail; encode as delta rearranged
            let coeffs = coeffs.expect("eq10 needs coefficients");
            match crate::factory::display_eq3(k, coeffs)? {
                EqDisplay::Solved { rhs, .. } => {
                    let mut terms = match rhs {
                        ExprAst::Add(ts) => ts,
                        other => vec![other],
                    };
                    terms.push(ExprAst::neg(crate::factory::eq10_tail_display(k)));
                    ExprAst::Add(terms)
                }
                _ => unreachable!("eq3 displays solved"),
            }
        }
    };
    // Consistency: the stored tree must lower to the semantic rhs.
    let lowered = rhs_ast.lower()?;
    debug_assert!(lowered.sub(ode.rhs()).is_zero());
    Ok(EquationJson::new(family, &ode, &display, &rhs_ast))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::solve_recursion;

    #[test]
    fn equation_json_round_trips_to_the_same_ode() {
        for (family, k) in [(Family::Eq3, 4), (Family::Eq3, 5), (Family::Eq10, 4), (Family::Eq9, 3)] {
            let coeffs = solve_recursion(if k < 4 { 4 } else { k }).ok();
            let doc = equation_json(family, k, coeffs.as_ref()).unwrap();
            let text = serde_json::to_string_pretty(&doc).unwrap();
            let ode = ode_from_any_json(&text).unwrap();
            assert_eq!(ode, crate::factory::build_family(family, k).unwrap());
        }
    }

    #[test]
    fn custom_ode_document_parses() {
        let doc = r#"{ "order": 3, "rhs": "3*y''^2/(2*y')" }"#;
        let ode = ode_from_any_json(doc).unwrap();
        assert_eq!(ode, crate::factory::build_eq9());
    }

    #[test]
    fn coefficients_json_shape() {
        let v = solve_recursion(5).unwrap();
        let j = CoefficientsJson::from_vector(&v);
        assert_eq!(j.k, 5);
        assert_eq!(j.a, vec!["10", "-30", "45/2"]);
        assert_eq!(j.source, "recursion");
    }
}
