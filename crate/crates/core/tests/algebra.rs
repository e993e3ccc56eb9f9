mod common;

use common::{graphon_suite, hosts_up_to};
use flagcalc::algebra::minimal_level;
use flagcalc::rational::{frac, int};
use flagcalc::{
    enumerate_graphs, eval_assertion, eval_on_graphon, eval_on_host, parse_assertion, parse_expr, to_linear_form,
    Assertion, DensityExpr, Graph, Oracle, Rational,
};
use proptest::prelude::*;

fn small_graphs() -> Vec<Graph> {
    (1..=3).flat_map(|n| enumerate_graphs(n).unwrap().iter().map(|c| c.graph().clone()).collect::<Vec<_>>()).collect()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| frac(a, b))
}

fn expr() -> impl Strategy<Value = DensityExpr> {
    let graphs = small_graphs();
    let leaf = prop_oneof![
        6 => proptest::sample::select(graphs).prop_map(DensityExpr::graph),
        1 => Just(DensityExpr::Zero),
        1 => Just(DensityExpr::One),
        1 => rational().prop_map(DensityExpr::constant),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (rational(), inner.clone()).prop_map(|(r, e)| DensityExpr::scale(r, e)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| DensityExpr::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| DensityExpr::mul(a, b)),
        ]
    })
}

fn flat_expr() -> impl Strategy<Value = DensityExpr> {
    expr().prop_filter("level at most 4", |e| minimal_level(e, 0) <= 4)
}

fn mul_free_expr() -> impl Strategy<Value = DensityExpr> {
    expr().prop_filter("no products or ones", |e| !e.contains_mul() && !e.contains_one())
}

fn oracles() -> Vec<Oracle> {
    let mut v: Vec<Oracle> = graphon_suite().into_iter().map(Oracle::Graphon).collect();
    v.push(Oracle::Host(Graph::cycle(5)));
    v.push(Oracle::Host("g:6:{12,13,24,35,46,56,14}".parse().unwrap()));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(back.to_string(), text.clone());
        for o in oracles() {
            prop_assert_eq!(o.eval(&back).unwrap(), o.eval(&e).unwrap());
        }
    }

    #[test]
    fn flattening_is_exact_on_graphons(e in flat_expr()) {
        let min = minimal_level(&e, 0);
        for n in min..=4 {
            let back = to_linear_form(&e, n).unwrap().to_expr();
            for w in graphon_suite() {
                prop_assert_eq!(eval_on_graphon(&back, &w).unwrap(), eval_on_graphon(&e, &w).unwrap(), "level {}", n);
            }
        }
    }

    #[test]
    fn multiplication_free_flattening_is_exact_on_hosts(e in mul_free_expr()) {
        let min = minimal_level(&e, 0);
        for n in min..=4 {
            let back = to_linear_form(&e, n).unwrap().to_expr();
            for g in hosts_up_to(5).iter().filter(|g| g.n() >= n) {
                prop_assert_eq!(eval_on_host(&back, g).unwrap(), eval_on_host(&e, g).unwrap());
            }
        }
    }

    #[test]
    fn ring_laws(a in expr(), b in expr(), c in expr(), r in rational()) {
        use DensityExpr as E;
        let pairs = [
            (E::mul(a.clone(), b.clone()), E::mul(b.clone(), a.clone())),
            (E::add(a.clone(), b.clone()), E::add(b.clone(), a.clone())),
            (E::mul(a.clone(), E::add(b.clone(), c.clone())), E::add(E::mul(a.clone(), b.clone()), E::mul(a.clone(), c.clone()))),
            (E::mul(E::mul(a.clone(), b.clone()), c.clone()), E::mul(a.clone(), E::mul(b.clone(), c.clone()))),
            (E::scale(r.clone(), E::add(a.clone(), b.clone())), E::add(E::scale(r.clone(), a.clone()), E::scale(r.clone(), b.clone()))),
            (E::mul(E::One, a.clone()), a.clone()),
            (E::add(E::Zero, a.clone()), a.clone()),
            (E::sub(a.clone(), a.clone()), E::Zero),
        ];
        for o in oracles() {
            for (x, y) in &pairs {
                prop_assert_eq!(o.eval(x).unwrap(), o.eval(y).unwrap());
            }
        }
    }

    #[test]
    fn products_commute_after_flattening(a in flat_expr(), b in flat_expr()) {
        let ab = DensityExpr::mul(a.clone(), b.clone());
        let n = minimal_level(&ab, 0);
        prop_assume!(n <= 5);
        prop_assert_eq!(to_linear_form(&ab, n).unwrap(), to_linear_form(&DensityExpr::mul(b, a), n).unwrap());
    }

    #[test]
    fn elimination_order_does_not_matter(a in proptest::sample::select(small_graphs()), b in proptest::sample::select(small_graphs()), c in proptest::sample::select(small_graphs())) {
        let (a, b, c) = (DensityExpr::graph(a), DensityExpr::graph(b), DensityExpr::graph(c));
        let left = DensityExpr::mul(DensityExpr::mul(a.clone(), b.clone()), c.clone());
        let right = DensityExpr::mul(a.clone(), DensityExpr::mul(b.clone(), c.clone()));
        let swapped = DensityExpr::mul(DensityExpr::mul(c, a), b);
        let n = minimal_level(&left, 0);
        prop_assume!(n <= 6);
        let want = to_linear_form(&left, n).unwrap();
        prop_assert_eq!(&to_linear_form(&right, n).unwrap(), &want);
        prop_assert_eq!(&to_linear_form(&swapped, n).unwrap(), &want);
    }
}

#[test]
fn connective_truth_tables() {
    let o = Oracle::Graphon(graphon_suite().remove(0));
    let lit = |b: bool| if b { Assertion::True } else { Assertion::False };
    for x in [false, true] {
        assert_eq!(eval_assertion(&Assertion::not(lit(x)), &o).unwrap(), !x);
        for y in [false, true] {
            let ev = |a: Assertion| eval_assertion(&a, &o).unwrap();
            assert_eq!(ev(Assertion::and(lit(x), lit(y))), x && y);
            assert_eq!(ev(Assertion::or(lit(x), lit(y))), x || y);
            assert_eq!(ev(Assertion::implies(lit(x), lit(y))), !x || y);
        }
    }
    let vals = [frac(-1, 2), int(0), frac(1, 3), int(1)];
    for a in &vals {
        for b in &vals {
            let (ea, eb) = (DensityExpr::constant(a.clone()), DensityExpr::constant(b.clone()));
            let ev = |x: Assertion| eval_assertion(&x, &o).unwrap();
            assert_eq!(ev(Assertion::eq(ea.clone(), eb.clone())), a == b);
            assert_eq!(ev(Assertion::leq(ea.clone(), eb.clone())), a <= b);
            assert_eq!(ev(Assertion::geq(ea.clone(), eb.clone())), a >= b);
            assert_eq!(ev(Assertion::lt(ea.clone(), eb.clone())), a < b);
            assert_eq!(ev(Assertion::gt(ea.clone(), eb.clone())), a > b);
        }
    }
}

#[test]
fn parsed_connectives_evaluate_like_their_sugar() {
    let o = Oracle::Graphon(flagcalc::StepGraphon::balanced_bipartite());
    let cases = [
        ("g:3:{12,13,23} = 0", true),
        ("g:2:{12} = 1/2", true),
        ("g:2:{12} < 1/2", false),
        ("g:2:{12} > 1/3 & g:3:{} = 1/4", true),
        ("g:3:{12,13,23} = 0 => g:2:{12} <= 1/2", true),
        ("!(g:2:{12} >= 1/2) | false", false),
        ("g:2:{12} * g:2:{12} = 1/4", true),
    ];
    for (text, want) in cases {
        let a = parse_assertion(text).unwrap();
        assert_eq!(eval_assertion(&a, &o).unwrap(), want, "{text}");
        let again = parse_assertion(&a.to_string()).unwrap();
        assert_eq!(eval_assertion(&again, &o).unwrap(), want);
    }
}

#[test]
fn labelled_expressions_flatten_over_their_type() {
    let e = parse_expr("(f:2:{}|t:1:{}|theta:1 - f:2:{12}|t:1:{}|theta:1) * (f:2:{}|t:1:{}|theta:1 - f:2:{12}|t:1:{}|theta:1)").unwrap();
    let lf = to_linear_form(&e, 3).unwrap();
    assert_eq!(lf.tau().size(), 1);
    assert_eq!(
        lf.coeffs(),
        &[int(1), int(-1), int(1), int(1), int(-1), int(1)]
    );
}
