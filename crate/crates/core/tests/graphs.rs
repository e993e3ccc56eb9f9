mod common;

use common::{all_labelled, aut_brute, classes_brute, iso_brute};
use flagcalc::{enumerate_flags, enumerate_graphs, q_coefficient, tau_isomorphic, Graph, TypeGraph};
use flagcalc::rational::{falling_factorial, ratio_u128};
use flagcalc::downward::embeddings;
use itertools::Itertools;
use num_traits::{One, Zero};

#[test]
fn counts_match_brute_force_classes() {
    let expected = [1, 1, 2, 4, 11, 34];
    for n in 0..=5 {
        let got = enumerate_graphs(n).unwrap();
        assert_eq!(got.len(), expected[n], "n = {n}");
        assert_eq!(classes_brute(n).len(), expected[n], "oracle at n = {n}");
    }
}

#[test]
fn canonical_form_agrees_with_bijection_search() {
    for n in 0..=4 {
        let all = all_labelled(n);
        for (a, b) in all.iter().tuple_combinations() {
            let same = a.canonical_form().unwrap() == b.canonical_form().unwrap();
            assert_eq!(same, iso_brute(a, b), "{a} vs {b}");
            assert_eq!(a.is_isomorphic(b), same);
        }
    }
    // at n = 5 compare each labelled graph against the class representatives
    let reps = enumerate_graphs(5).unwrap();
    for g in all_labelled(5) {
        let c = g.canonical_form().unwrap();
        assert_eq!(c.graph().canonical_form().unwrap(), c);
        let matches: Vec<_> = reps.iter().filter(|r| iso_brute(r.graph(), &g)).collect();
        assert_eq!(matches.len(), 1);
        assert_eq!(*matches[0], c);
    }
}

#[test]
fn complement_and_automorphisms() {
    for n in 0..=5 {
        for c in enumerate_graphs(n).unwrap().iter() {
            let g = c.graph();
            assert_eq!(&g.complement().complement(), g);
            let a = aut_brute(g);
            assert_eq!(g.automorphism_count() as usize, a, "{g}");
            assert_eq!(g.complement().automorphism_count() as usize, a);
        }
    }
    let p4 = Graph::path(4);
    assert!(p4.is_isomorphic(&p4.complement()));
    assert_eq!(p4.automorphism_count(), 2);
    assert_eq!(Graph::cycle(5).automorphism_count(), 10);
}

#[test]
fn flag_counts() {
    assert_eq!(enumerate_flags(&TypeGraph::vertex(), 3).unwrap().len(), 6);
    assert_eq!(enumerate_flags(&TypeGraph::vertex(), 2).unwrap().len(), 2);
}

#[test]
fn q_coefficients_sum_to_the_embedding_fraction() {
    let types: Vec<TypeGraph> = (0..=2)
        .flat_map(|k| enumerate_graphs(k).unwrap().iter().map(|c| TypeGraph::new(c.graph().clone())).collect::<Vec<_>>())
        .collect();
    for tau in &types {
        let k = tau.size();
        for n in k.max(1)..=5 {
            for c in enumerate_graphs(n).unwrap().iter() {
                let g = c.graph();
                let mut total = flagcalc::Rational::zero();
                for f in enumerate_flags(tau, n).unwrap().iter() {
                    if f.graph().is_isomorphic(g) {
                        total += q_coefficient(f.flag()).unwrap();
                    }
                }
                let emb = embeddings(tau, g).len() as u128;
                assert_eq!(total, ratio_u128(emb, falling_factorial(n, k)), "{tau} on {g}");
                if k == 1 {
                    assert!(total.is_one());
                }
            }
        }
    }
}

#[test]
fn tau_isomorphism_is_an_equivalence() {
    let tau = TypeGraph::vertex();
    let mut all = Vec::new();
    for g in all_labelled(3) {
        for v in 0..3 {
            all.push(flagcalc::Flag::new(g.clone(), vec![v], tau.clone()).unwrap());
        }
    }
    let classes = |a: &flagcalc::Flag, b: &flagcalc::Flag| tau_isomorphic(a, b).unwrap();
    for a in &all {
        assert!(classes(a, a));
    }
    for (a, b) in all.iter().tuple_combinations() {
        assert_eq!(classes(a, b), classes(b, a));
    }
    for (a, b, c) in all.iter().step_by(3).tuple_combinations() {
        if classes(a, b) && classes(b, c) {
            assert!(classes(a, c));
        }
    }
    let mut reps: Vec<&flagcalc::Flag> = Vec::new();
    for f in &all {
        if !reps.iter().any(|r| classes(r, f)) {
            reps.push(f);
        }
    }
    assert_eq!(reps.len(), 6);
}

#[test]
fn text_format_round_trips() {
    for c in enumerate_graphs(5).unwrap().iter() {
        let s = c.graph().to_string();
        assert_eq!(s.parse::<Graph>().unwrap(), *c.graph());
    }
    let big = Graph::cycle(11);
    assert!(big.to_string().contains("1-2"));
    assert_eq!(big.to_string().parse::<Graph>().unwrap(), big);
}
