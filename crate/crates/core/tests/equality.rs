mod common;

use std::collections::BTreeMap;

use lpa_core::equality::sink_normal_form;
use lpa_core::random::{random_element, random_graph, rng};
use lpa_core::repr::{Combination, Representation};
use lpa_core::{
    eq, eq_with, rep_apply, BasisVector, Bit, Booleans, Element, EqConfig, EqVerdict, Graph, Lpa, Rationals, Semiring,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn small_q(r: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(r.gen_range(1i64..=3).into(), 1.into())
}

fn one_bit(_: &mut ChaCha8Rng) -> Bit {
    Bit(true)
}

fn acyclic_graph(r: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> Graph {
    loop {
        let g = random_graph(r, max_v, max_e);
        if g.is_acyclic() {
            return g;
        }
    }
}

/// Expands randomly chosen terms of `x` a few times; the result is equal to
/// `x` in the algebra.
fn scramble<S: Semiring>(lpa: &Lpa<S>, r: &mut ChaCha8Rng, x: &Element<S::Elem>, steps: usize) -> Element<S::Elem> {
    let mut cur = x.clone();
    for _ in 0..steps {
        let keys: Vec<_> = cur
            .keys()
            .filter(|k| lpa.graph().is_regular(k.range()))
            .cloned()
            .collect();
        if keys.is_empty() {
            break;
        }
        let k = &keys[r.gen_range(0..keys.len())];
        cur = common::expand(lpa, &cur, k);
    }
    cur
}

fn act<S: Semiring>(lpa: &Lpa<S>, x: &Element<S::Elem>, v: &Combination<S::Elem>) -> Combination<S::Elem> {
    let ring = lpa.ring();
    let mut out: Combination<S::Elem> = BTreeMap::new();
    for (b, c) in v {
        for (b2, c2) in rep_apply(lpa, x, b).unwrap() {
            let val = ring.mul(c, &c2);
            let sum = out.remove(&b2).map_or(val.clone(), |p| ring.add(&p, &val));
            if !ring.is_zero(&sum) {
                out.insert(b2, sum);
            }
        }
    }
    out
}

fn vectors_to_depth(g: &Graph, depth: usize) -> Vec<BasisVector> {
    let rep = Representation::new(g);
    let mut layer: Vec<BasisVector> = g.vertices().map(BasisVector::seed).collect();
    let mut all = layer.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for b in &layer {
            for e in g.edges() {
                next.extend(rep.real_step(e, *b).unwrap());
                next.extend(rep.ghost_step(e, *b).unwrap());
            }
        }
        next.sort();
        next.dedup();
        all.extend(next.iter().copied());
        layer = next;
    }
    all.sort();
    all.dedup();
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn representation_respects_relations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 4, 6);
        let lpa = Lpa::new(g.clone(), Rationals::new());
        let x = random_element(&lpa, &mut r, 2, 2, false, small_q);
        let y = random_element(&lpa, &mut r, 2, 2, false, small_q);
        let xy = lpa.mul(&x, &y).unwrap();
        let one = lpa.ring().one();
        for b in vectors_to_depth(&g, 3) {
            let delta: Combination<BigRational> = BTreeMap::from([(b, one.clone())]);
            for e in g.edges() {
                let ghost_edge = lpa.mul(&lpa.ghost(e), &lpa.edge(e)).unwrap();
                prop_assert_eq!(act(&lpa, &ghost_edge, &delta), act(&lpa, &lpa.vertex(g.range(e)), &delta));
            }
            for v in g.vertices().filter(|&v| g.is_regular(v)) {
                let sum = lpa.sum(g.out_edges(v).iter().map(|&e| lpa.mul(&lpa.edge(e), &lpa.ghost(e)).unwrap()).collect::<Vec<_>>().iter()).unwrap();
                prop_assert_eq!(act(&lpa, &sum, &delta), act(&lpa, &lpa.vertex(v), &delta));
            }
            prop_assert_eq!(act(&lpa, &xy, &delta), act(&lpa, &x, &act(&lpa, &y, &delta)));
        }
    }

    #[test]
    fn acyclic_eq_matches_closure_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = acyclic_graph(&mut r, 3, 3);
        let lpa = Lpa::new(g, Booleans::new());
        let x = random_element(&lpa, &mut r, 2, 2, false, one_bit);
        let y = if r.gen_bool(0.5) {
            scramble(&lpa, &mut r, &x, 3)
        } else {
            random_element(&lpa, &mut r, 2, 2, false, one_bit)
        };
        let v = eq(&lpa, &x, &y).unwrap();
        prop_assert!(!v.is_unknown());
        let classes = common::ck2_classes(&lpa, &[x.clone(), y.clone()]);
        prop_assert_eq!(v.is_equal(), classes[0] == classes[1]);
    }

    #[test]
    fn verdicts_carry_checkable_evidence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 4, 6);
        let lpa = Lpa::new(g, Rationals::new());
        let x = random_element(&lpa, &mut r, 3, 2, false, small_q);
        let y = if r.gen_bool(0.5) {
            scramble(&lpa, &mut r, &x, 2)
        } else {
            random_element(&lpa, &mut r, 3, 2, false, small_q)
        };
        match eq(&lpa, &x, &y).unwrap() {
            EqVerdict::Equal(trace) => prop_assert!(trace.replay(&lpa, &x, &y).unwrap()),
            EqVerdict::Distinct(sep) => prop_assert!(sep.verify(&lpa, &x, &y).unwrap()),
            EqVerdict::Unknown { .. } => {}
        }
    }

    #[test]
    fn expansion_order_is_irrelevant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = acyclic_graph(&mut r, 5, 7);
        let lpa = Lpa::new(g, Rationals::new());
        let x = random_element(&lpa, &mut r, 3, 3, false, small_q);
        let y = scramble(&lpa, &mut r, &x, 4);
        prop_assert_eq!(sink_normal_form(&lpa, &x).unwrap(), sink_normal_form(&lpa, &y).unwrap());
    }

    #[test]
    fn scrambled_copies_are_equal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 3, 5);
        let lpa = Lpa::new(g, Rationals::new());
        let x = random_element(&lpa, &mut r, 2, 2, false, small_q);
        let y = scramble(&lpa, &mut r, &x, 2);
        let v = eq_with(&lpa, &x, &y, EqConfig::with_budget(8)).unwrap();
        prop_assert!(!v.is_distinct());
    }
}

/// Splits a pair `(x, y)` over **B** into pairs of real elements by
/// right multiplication with `v` and `e`, checking at each node that
/// `x = Σ_{v sink} x v + Σ_{e} (x e) e*`. Returns the real leaves.
fn split_to_real(
    lpa: &Lpa<Booleans>,
    x: &Element<Bit>,
    y: &Element<Bit>,
    leaves: &mut Vec<(Element<Bit>, Element<Bit>)>,
) {
    if x.is_real() && y.is_real() {
        leaves.push((x.clone(), y.clone()));
        return;
    }
    let g = lpa.graph();
    let mut rebuilt = (lpa.zero(), lpa.zero());
    for v in g.vertices() {
        let (xv, yv) = (lpa.mul(x, &lpa.vertex(v)).unwrap(), lpa.mul(y, &lpa.vertex(v)).unwrap());
        if xv.is_zero() && yv.is_zero() {
            continue;
        }
        if g.is_sink(v) {
            rebuilt = (lpa.add(&rebuilt.0, &xv).unwrap(), lpa.add(&rebuilt.1, &yv).unwrap());
            leaves.push((xv, yv));
            continue;
        }
        for &e in g.out_edges(v) {
            let (xe, ye) = (lpa.mul(&xv, &lpa.edge(e)).unwrap(), lpa.mul(&yv, &lpa.edge(e)).unwrap());
            let ghost = lpa.ghost(e);
            rebuilt = (
                lpa.add(&rebuilt.0, &lpa.mul(&xe, &ghost).unwrap()).unwrap(),
                lpa.add(&rebuilt.1, &lpa.mul(&ye, &ghost).unwrap()).unwrap(),
            );
            split_to_real(lpa, &xe, &ye, leaves);
        }
    }
    assert!(eq(lpa, x, &rebuilt.0).unwrap().is_equal(), "reassembly of {x:?}");
    assert!(eq(lpa, y, &rebuilt.1).unwrap().is_equal(), "reassembly of {y:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn boolean_congruence_is_generated_by_real_pairs(seed in any::<u64>(), rose in any::<bool>()) {
        let mut r = rng(seed);
        let g = if rose { Graph::rose(2) } else { Graph::line(2) };
        let lpa = Lpa::new(g, Booleans::new());
        let x = random_element(&lpa, &mut r, 2, 2, false, one_bit);
        let y = scramble(&lpa, &mut r, &x, 2);
        let y = if r.gen_bool(0.3) { lpa.add(&y, &lpa.mul(&x, &lpa.unit()).unwrap()).unwrap() } else { y };
        prop_assume!(eq(&lpa, &x, &y).unwrap().is_equal());
        let mut leaves = Vec::new();
        split_to_real(&lpa, &x, &y, &mut leaves);
        for (a, b) in leaves {
            prop_assert!(a.is_real() && b.is_real());
            prop_assert!(eq(&lpa, &a, &b).unwrap().is_equal(), "real leaf {:?} vs {:?}", a, b);
        }
    }
}
