//! ASCII and LaTeX emission for expression trees and equations.
//!
//! ASCII output re-parses under the grammar in [`crate::parse`]; that
//! round trip is part of the acceptance suite. Multiplications carrying
//! negative powers print in quotient style (`6*y''*y'''/y'`), matching
//! how the equation families are written.

use crate::ast::ExprAst;
use crate::factory::EqDisplay;
use crate::rat::Rat;
use crate::vars::Var;

// Precedence levels: 1 additive/negation, 2 multiplicative, 3 power,
// 4 atom. A child is parenthesized when its level is below the context.

fn num_level(c: &Rat) -> u8 {
    if c.is_negative() {
        1
    } else if c.is_integer() {
        4
    } else {
        2
    }
}

fn level(e: &ExprAst) -> u8 {
    match e {
        ExprAst::Num(c) => num_level(c),
        ExprAst::Var(_) => 4,
        ExprAst::Neg(_) => 1,
        ExprAst::Add(_) => 1,
        ExprAst::Mul(..) | ExprAst::Div(..) => 2,
        ExprAst::Pow(..) => 3,
    }
}

/// Invert a negative power for quotient-style printing; exponent -1
/// flips to the bare base.
fn flip_power(base: &ExprAst, exp: i64) -> ExprAst {
    if exp == -1 {
        base.clone()
    } else {
        ExprAst::pow(base.clone(), -exp)
    }
}

fn ascii_at(e: &ExprAst, min_level: u8) -> String {
    let s = ascii_node(e);
    if level(e) < min_level {
        format!("({s})")
    } else {
        s
    }
}

fn ascii_node(e: &ExprAst) -> String {
    match e {
        ExprAst::Num(c) => c.to_string(),
        ExprAst::Var(v) => v.name(),
        ExprAst::Neg(inner) => format!("-{}", ascii_at(inner, 2)),
        ExprAst::Add(terms) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                match t {
                    ExprAst::Neg(inner) if i > 0 => {
                        out.push_str(" - ");
                        out.push_str(&ascii_at(inner, 2));
                    }
                    _ if i > 0 => {
                        out.push_str(" + ");
                        out.push_str(&ascii_at(t, 2));
                    }
                    _ => out.push_str(&ascii_node(t)),
                }
            }
            out
        }
        ExprAst::Mul(factors) => {
            // Split off negative powers and print them as divisors.
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for f in factors {
                match f {
                    ExprAst::Pow(base, exp) if *exp < 0 => {
                        neg.push(flip_power(base, *exp));
                    }
                    _ => pos.push(f.clone()),
                }
            }
            let num = if pos.is_empty() {
                "1".to_string()
            } else {
                pos.iter()
                    .map(|f| ascii_at(f, 2))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            if neg.is_empty() {
                num
            } else if neg.len() == 1 {
                format!("{num}/{}", ascii_at(&neg[0], 3))
            } else {
                let den = neg
                    .iter()
                    .map(|f| ascii_at(f, 2))
                    .collect::<Vec<_>>()
                    .join("*");
                format!("{num}/({den})")
            }
        }
        ExprAst::Div(a, b) => format!("{}/{}", ascii_at(a, 2), ascii_at(b, 3)),
        ExprAst::Pow(base, exp) => format!("{}^{}", ascii_at(base, 4), exp),
    }
}

/// Render an expression tree as canonical ASCII.
pub fn ascii(e: &ExprAst) -> String {
    ascii_node(e)
}

fn latex_at(e: &ExprAst, min_level: u8) -> String {
    let s = latex_node(e);
    if level(e) < min_level {
        format!("\\left({s}\\right)")
    } else {
        s
    }
}

/// Primed variables need parentheses under a power: (y'')^2.
fn latex_pow_base(e: &ExprAst) -> String {
    match e {
        ExprAst::Var(v) if matches!(v.order(), Some(1..)) => format!("({})", v.latex()),
        _ => latex_at(e, 4),
    }
}

fn latex_node(e: &ExprAst) -> String {
    match e {
        ExprAst::Num(c) => {
            if c.is_integer() {
                c.to_string()
            } else {
                let sign = if c.is_negative() { "-" } else { "" };
                let a = c.abs();
                format!("{sign}\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
            }
        }
        ExprAst::Var(v) => v.latex(),
        ExprAst::Neg(inner) => format!("-{}", latex_at(inner, 2)),
        ExprAst::Add(terms) => {
            let mut out = String::new();
            for (i, t) in terms.iter().enumerate() {
                match t {
                    ExprAst::Neg(inner) if i > 0 => {
                        out.push_str(" - ");
                        out.push_str(&latex_at(inner, 2));
                    }
                    _ if i > 0 => {
                        out.push_str(" + ");
                        out.push_str(&latex_at(t, 2));
                    }
                    _ => out.push_str(&latex_node(t)),
                }
            }
            out
        }
        ExprAst::Mul(factors) => {
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for f in factors {
                match f {
                    ExprAst::Pow(base, exp) if *exp < 0 => {
                        neg.push(flip_power(base, *exp));
                    }
                    _ => pos.push(f.clone()),
                }
            }
            let join = |fs: &[ExprAst]| {
                fs.iter()
                    .map(|f| latex_at(f, 2))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let num = if pos.is_empty() { "1".to_string() } else { join(&pos) };
            if neg.is_empty() {
                num
            } else {
                format!("\\frac{{{num}}}{{{}}}", join(&neg))
            }
        }
        ExprAst::Div(a, b) => {
            format!("\\frac{{{}}}{{{}}}", latex_node(a), latex_node(b))
        }
        ExprAst::Pow(base, exp) => {
            let e_str = if (0..10).contains(exp) {
                exp.to_string()
            } else {
                format!("{{{exp}}}")
            };
            format!("{}^{}", latex_pow_base(base), e_str)
        }
    }
}

/// Render an expression tree as LaTeX.
pub fn latex(e: &ExprAst) -> String {
    latex_node(e)
}

/// Equation display in ASCII: solved form `y^(k) = rhs` or the
/// defining form `delta = 0`.
pub fn equation_ascii(d: &EqDisplay) -> String {
    match d {
        EqDisplay::Solved { order, rhs } => {
            format!("{} = {}", Var::y(*order).name(), ascii(rhs))
        }
        EqDisplay::Null { delta } => format!("{} = 0", ascii(delta)),
    }
}

/// Equation display in LaTeX.
pub fn equation_latex(d: &EqDisplay) -> String {
    match d {
        EqDisplay::Solved { order, rhs } => {
            format!("{} = {}", Var::y(*order).latex(), latex(rhs))
        }
        EqDisplay::Null { delta } => format!("{} = 0", latex(delta)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{display_eq10, display_eq3, display_eq9, solve_recursion};
    use crate::parse::parse_expr;

    #[test]
    fn eq3_ascii_golden() {
        let coeffs = solve_recursion(4).unwrap();
        let d = display_eq3(4, &coeffs).unwrap();
        assert_eq!(equation_ascii(&d), "y^(4) = 6*y''*y'''/y' - 6*y''^3/y'^2");
    }

    #[test]
    fn eq9_ascii_golden() {
        assert_eq!(equation_ascii(&display_eq9()), "3*y''^2 - 2*y'*y''' = 0");
    }

    #[test]
    fn eq10_ascii_golden() {
        let coeffs = solve_recursion(4).unwrap();
        let d = display_eq10(4, &coeffs).unwrap();
        assert_eq!(
            equation_ascii(&d),
            "y^(4) - 6*y''*y'''/y' + 6*y''^3/y'^2 \
             + (y + (2*y'*y''' - 3*y''^2)/y'^4)*y'^4 = 0"
        );
    }

    #[test]
    fn eq9_latex_golden() {
        assert_eq!(equation_latex(&display_eq9()), "3 (y'')^2 - 2 y' y''' = 0");
    }

    #[test]
    fn rendered_equations_reparse_to_equal_expressions() {
        for k in [4u32, 5, 6] {
            let coeffs = solve_recursion(k).unwrap();
            for d in [display_eq3(k, &coeffs).unwrap(), display_eq10(k, &coeffs).unwrap()] {
                let (text, original) = match &d {
                    EqDisplay::Solved { rhs, .. } => (ascii(rhs), rhs.clone()),
                    EqDisplay::Null { delta } => (ascii(delta), delta.clone()),
                };
                let reparsed = parse_expr(&text).unwrap().lower().unwrap();
                assert!(
                    reparsed.sub(&original.lower().unwrap()).is_zero(),
                    "round trip failed for {text}"
                );
            }
        }
    }

    #[test]
    fn fractional_coefficients_reparse() {
        // k = 5 has the 45/2 coefficient
        let coeffs = solve_recursion(5).unwrap();
        let d = display_eq3(5, &coeffs).unwrap();
        let text = equation_ascii(&d);
        assert!(text.contains("45/2"));
        if let EqDisplay::Solved { rhs, .. } = &d {
            let body = text.strip_prefix("y^(5) = ").unwrap();
            let reparsed = parse_expr(body).unwrap().lower().unwrap();
            assert!(reparsed.sub(&rhs.lower().unwrap()).is_zero());
        }
    }

    #[test]
    fn negation_inside_products_parenthesizes() {
        let e = ExprAst::mul(vec![
            ExprAst::neg(ExprAst::var(Var::X)),
            ExprAst::var(Var::Y),
        ]);
        assert_eq!(ascii(&e), "(-x)*y");
        let reparsed = parse_expr(&ascii(&e)).unwrap().lower().unwrap();
        assert!(reparsed.sub(&e.lower().unwrap()).is_zero());
    }
}
