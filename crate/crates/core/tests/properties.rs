//! Property tests for the symbolic kernel and the text front end.

use proptest::prelude::*;

use sl2ode::ast::ExprAst;
use sl2ode::jet::JetCtx;
use sl2ode::parse::parse_expr;
use sl2ode::poly::{Monomial, Poly};
use sl2ode::rat::Rat;
use sl2ode::render;
use sl2ode::{RatExpr, Var};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(Rat::from)
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec((0u32..4, 0u32..=2), 0..3).prop_map(|fs| {
        Monomial::from_factors(fs.into_iter().map(|(v, e)| (Var(v), e)).collect())
    })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((arb_monomial(), arb_rat()), 0..4).prop_map(|ts| {
        ts.into_iter()
            .fold(Poly::zero(), |acc, (m, c)| acc.add(&Poly::term(m, c)))
    })
}

fn arb_expr() -> impl Strategy<Value = RatExpr> {
    (
        arb_poly(),
        arb_poly().prop_filter("denominator nonzero", |p| !p.is_zero()),
    )
        .prop_map(|(n, d)| RatExpr::new(n, d).expect("nonzero denominator"))
}

fn arb_ast() -> impl Strategy<Value = ExprAst> {
    // Kept shallow: nested powers of sums blow up the expanded normal
    // forms and the round trip only needs syntactic variety.
    let leaf = prop_oneof![
        (-9i64..=9).prop_map(ExprAst::num),
        (0u32..6).prop_map(|v| ExprAst::var(Var(v))),
    ];
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2..4).prop_map(ExprAst::Add),
            proptest::collection::vec(inner.clone(), 2..3).prop_map(ExprAst::Mul),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ExprAst::div(a, b)),
            (inner.clone(), -2i64..=2).prop_map(|(b, e)| ExprAst::pow(b, e)),
            inner.prop_map(ExprAst::neg),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_associative(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        let lhs = a.add(&b).add(&c);
        let rhs = a.add(&b.add(&c));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn normalization_is_idempotent(e in arb_expr()) {
        let renorm = RatExpr::new(e.numerator().clone(), e.denominator().clone()).unwrap();
        prop_assert_eq!(renorm.numerator(), e.numerator());
        prop_assert_eq!(renorm.denominator(), e.denominator());
    }

    #[test]
    fn partial_derivatives_commute(e in arb_expr()) {
        let (u, v) = (Var::X, Var::y(1));
        let uv = e.partial_derivative(u).partial_derivative(v);
        let vu = e.partial_derivative(v).partial_derivative(u);
        prop_assert!(uv.sub(&vu).is_zero());
    }

    #[test]
    fn total_derivative_is_linear(
        e in arb_expr(),
        f in arb_expr(),
        a in arb_rat(),
        b in arb_rat(),
    ) {
        let ctx = JetCtx::new(3).unwrap();
        let lhs = ctx.total_derivative(&e.scale(&a).add(&f.scale(&b))).unwrap();
        let rhs = ctx
            .total_derivative(&e)
            .unwrap()
            .scale(&a)
            .add(&ctx.total_derivative(&f).unwrap().scale(&b));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn equality_matches_cross_multiplication(a in arb_expr(), b in arb_expr()) {
        let direct = a == b;
        let via_difference = a.sub(&b).is_zero();
        prop_assert_eq!(direct, via_difference);
    }

    #[test]
    fn ascii_round_trip_preserves_value(ast in arb_ast()) {
        let lowered = ast.lower();
        prop_assume!(lowered.is_ok());
        let lowered = lowered.unwrap();
        let text = render::ascii(&ast);
        let reparsed = parse_expr(&text)
            .unwrap_or_else(|e| panic!("rendered text {text:?} failed to parse: {e}"));
        let relowered = reparsed
            .lower()
            .unwrap_or_else(|e| panic!("reparsed {text:?} failed to lower: {e}"));
        prop_assert!(relowered.sub(&lowered).is_zero(), "round trip changed {}", text);
    }

    #[test]
    fn json_round_trip_preserves_value(ast in arb_ast()) {
        let lowered = ast.lower();
        prop_assume!(lowered.is_ok());
        let doc = ast.to_json();
        let back = ExprAst::from_json(&doc).unwrap();
        prop_assert!(back.lower().unwrap().sub(&lowered.unwrap()).is_zero());
    }
}
