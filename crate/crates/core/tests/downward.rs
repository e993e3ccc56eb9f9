mod common;

use common::{density_brute, graphon_suite, hosts_up_to};
use flagcalc::downward::flag_structures;
use flagcalc::rational::{frac, int};
use flagcalc::{
    adjointness_sweep, alpha_d, alpha_dagger, enumerate_flags, enumerate_graphs, eval_on_flag_host, eval_on_graphon,
    gamma_density, is_embedding, labelled_density, Flag, Graph, LinearForm, Rational, TypeGraph,
};
use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;

fn f(s: &str) -> Flag {
    s.parse().unwrap()
}

/// Fraction of injections of the type's vertices into the flag that
/// reproduce the flag up to relabelling of the unlabelled part.
fn q_brute(h: &Flag) -> Rational {
    let (g, k, n) = (h.graph(), h.tau().size(), h.n());
    let same = |theta: &[usize]| {
        let rest_a: Vec<usize> = (0..n).filter(|v| !h.theta().contains(v)).collect();
        let rest_b: Vec<usize> = (0..n).filter(|v| !theta.contains(v)).collect();
        rest_b.iter().copied().permutations(rest_b.len()).any(|p| {
            let mut map = vec![0; n];
            for i in 0..k {
                map[h.theta()[i]] = theta[i];
            }
            for (i, &v) in rest_a.iter().enumerate() {
                map[v] = p[i];
            }
            (0..n).tuple_combinations().all(|(u, v)| g.has_edge(u, v) == g.has_edge(map[u], map[v]))
        })
    };
    let total = (0..n).permutations(k).count();
    let hits = (0..n).permutations(k).filter(|t| same(t)).count();
    frac(hits as i64, total as i64)
}

fn gamma_brute(h: &Flag, g: &Graph) -> Rational {
    let tau = h.tau();
    let thetas: Vec<Vec<usize>> =
        (0..g.n()).permutations(tau.size()).filter(|t| is_embedding(tau, t, g).unwrap()).collect();
    if thetas.is_empty() {
        return Rational::zero();
    }
    let weight = q_brute(&tau.identity_flag()) * density_brute(tau.graph(), g);
    let sum: Rational =
        thetas.iter().map(|t| labelled_density(h, &Flag::new(g.clone(), t.clone(), tau.clone()).unwrap()).unwrap()).sum();
    weight * sum / int(thetas.len() as i64)
}

fn types_up_to(k: usize) -> Vec<TypeGraph> {
    (0..=k).flat_map(|m| enumerate_graphs(m).unwrap().iter().map(|c| TypeGraph::new(c.graph().clone())).collect::<Vec<_>>()).collect()
}

#[test]
fn alpha_d_examples() {
    let weight = |s: &str| alpha_d(&f(s)).unwrap().iter().map(|(_, w)| w.clone()).collect::<Vec<_>>();
    assert_eq!(weight("f:3:{23}|t:1:{}|theta:1"), vec![frac(1, 3)]);
    assert_eq!(weight("f:3:{12,23}|t:1:{}|theta:1"), vec![frac(2, 3)]);
    assert_eq!(weight("f:3:{12,23}|t:1:{}|theta:2"), vec![frac(1, 3)]);
    assert_eq!(weight("f:2:{12}|t:2:{12}|theta:1,2"), vec![int(1)]);
    assert_eq!(weight("f:2:{}|t:2:{}|theta:1,2"), vec![int(1)]);
    assert_eq!(weight("f:3:{12,13}|t:3:{12,13}|theta:1,2,3"), vec![frac(2, 6)]);
}

#[test]
fn q_matches_injection_count() {
    for tau in types_up_to(2) {
        for n in tau.size()..=4 {
            for h in enumerate_flags(&tau, n).unwrap().iter() {
                assert_eq!(flagcalc::q_coefficient(h.flag()).unwrap(), q_brute(h.flag()), "{h}");
            }
        }
    }
}

#[test]
fn gamma_examples() {
    let k3 = Graph::complete(3);
    assert_eq!(gamma_density(&f("f:2:{12}|t:1:{}|theta:1"), &k3).unwrap(), int(1));
    assert_eq!(gamma_density(&TypeGraph::vertex().identity_flag(), &Graph::path(4)).unwrap(), int(1));
    // no edge to embed the labelled edge into
    assert_eq!(gamma_density(&f("f:3:{12}|t:2:{12}|theta:1,2"), &Graph::edgeless(4)).unwrap(), int(0));
}

#[test]
fn adjointness_matches_brute_force_oracle() {
    let hosts = hosts_up_to(5);
    for tau in types_up_to(2) {
        for n in tau.size()..=4 {
            for h in enumerate_flags(&tau, n).unwrap().iter() {
                let h = h.flag();
                for g in &hosts {
                    let lhs = q_brute(h) * density_brute(h.graph(), g);
                    assert_eq!(lhs, gamma_brute(h, g), "{h} on {g}");
                    assert!(flagcalc::check_adjointness(h, g).unwrap());
                }
            }
        }
    }
}

#[test]
fn full_adjointness_sweep() {
    let report = adjointness_sweep(2, 4, 6).unwrap();
    assert!(report.failures.is_empty(), "{:?}", report.failures);
    assert!(report.cases > 5_000);
}

fn vertex_form() -> impl Strategy<Value = LinearForm> {
    proptest::collection::vec((-4i64..=4, 1i64..=3), 6).prop_map(|v| {
        LinearForm::new(TypeGraph::vertex(), 3, v.into_iter().map(|(a, b)| frac(a, b)).collect()).unwrap()
    })
}

fn flag_hosts(tau: &TypeGraph, max: usize, min: usize) -> Vec<Flag> {
    hosts_up_to(max).iter().filter(|g| g.n() >= min).flat_map(|g| flag_structures(tau, g).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_dagger_is_linear(x in vertex_form(), y in vertex_form(), a in -5i64..=5, b in 1i64..=5) {
        let (a, b) = (frac(a, b), frac(b, 7));
        let lhs = alpha_dagger(&x.scale(&a).add(&y.scale(&b)).unwrap()).unwrap();
        let rhs = alpha_dagger(&x).unwrap().scale(&a).add(&alpha_dagger(&y).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transfer_preserves_nonnegativity(x in vertex_form()) {
        let tau = TypeGraph::vertex();
        let e = x.to_expr();
        let nonneg = flag_hosts(&tau, 6, 3).iter().all(|h| eval_on_flag_host(&e, h).unwrap() >= int(0));
        if nonneg {
            let down = alpha_dagger(&x).unwrap().to_expr();
            for w in graphon_suite() {
                prop_assert!(eval_on_graphon(&down, &w).unwrap() >= int(0));
            }
        }
    }
}

#[test]
fn transfer_of_host_nonnegative_combinations() {
    // differences of labelled flags chosen so that some coefficients are negative
    let tau = TypeGraph::vertex();
    let hosts = flag_hosts(&tau, 6, 3);
    let mut kept = 0;
    for coeffs in (0..6).map(|_| [int(-1), int(0), int(1), int(2)]).multi_cartesian_product().step_by(7) {
        let lf = LinearForm::new(tau.clone(), 3, coeffs).unwrap();
        let e = lf.to_expr();
        if !hosts.iter().all(|h| eval_on_flag_host(&e, h).unwrap() >= int(0)) {
            continue;
        }
        kept += 1;
        let down = alpha_dagger(&lf).unwrap().to_expr();
        for w in graphon_suite() {
            assert!(eval_on_graphon(&down, &w).unwrap() >= int(0), "{lf}");
        }
    }
    assert!(kept > 0);
}
