mod common;

use lpa_core::random::{random_element, random_graph, rng};
use lpa_core::{Element, Graph, Lpa, Naturals, PrimeField, Rationals, Semiring, Tropical};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn small_q(r: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(r.gen_range(-4i64..=4).into(), r.gen_range(1i64..=3).into())
}

fn small_n(r: &mut ChaCha8Rng) -> BigUint {
    BigUint::from(r.gen_range(1u32..=5))
}

fn setup(seed: u64) -> (ChaCha8Rng, Lpa<Rationals>) {
    let mut r = rng(seed);
    let g = random_graph(&mut r, 4, 6);
    (r, Lpa::new(g, Rationals::new()))
}

fn triple(r: &mut ChaCha8Rng, lpa: &Lpa<Rationals>, terms: usize) -> [Element<BigRational>; 3] {
    [(); 3].map(|_| random_element(lpa, r, terms, 3, false, small_q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monomial_products_associate(seed in any::<u64>()) {
        let (mut r, lpa) = setup(seed);
        let [a, b, c] = triple(&mut r, &lpa, 1);
        let (a, b, c) = (a.monomials().next(), b.monomials().next(), c.monomials().next());
        prop_assume!(a.is_some() && b.is_some() && c.is_some());
        let (a, b, c) = (a.unwrap(), b.unwrap(), c.unwrap());
        let left = lpa.mono_mul(&a, &b).and_then(|ab| lpa.mono_mul(&ab, &c));
        let right = lpa.mono_mul(&b, &c).and_then(|bc| lpa.mono_mul(&a, &bc));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_associates_and_distributes(seed in any::<u64>()) {
        let (mut r, lpa) = setup(seed);
        let [x, y, z] = triple(&mut r, &lpa, 3);
        let xy_z = lpa.mul(&lpa.mul(&x, &y).unwrap(), &z).unwrap();
        let x_yz = lpa.mul(&x, &lpa.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let left = lpa.mul(&x, &lpa.add(&y, &z).unwrap()).unwrap();
        let right = lpa.add(&lpa.mul(&x, &y).unwrap(), &lpa.mul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let left = lpa.mul(&lpa.add(&x, &y).unwrap(), &z).unwrap();
        let right = lpa.add(&lpa.mul(&x, &z).unwrap(), &lpa.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn involution_reverses_products(seed in any::<u64>()) {
        let (mut r, lpa) = setup(seed);
        let [x, y, _] = triple(&mut r, &lpa, 3);
        let lhs = lpa.involute(&lpa.mul(&x, &y).unwrap());
        let rhs = lpa.mul(&lpa.involute(&y), &lpa.involute(&x)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(lpa.involute(&lpa.involute(&x)), x);
    }

    #[test]
    fn local_unit_fixes_elements(seed in any::<u64>()) {
        let (mut r, lpa) = setup(seed);
        let [x, y, _] = triple(&mut r, &lpa, 3);
        let u = lpa.local_unit(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(lpa.mul(&u, &x).unwrap(), x.clone());
        prop_assert_eq!(lpa.mul(&x, &u).unwrap(), x);
        prop_assert_eq!(lpa.mul(&u, &y).unwrap(), y);
    }

    #[test]
    fn natural_coefficients_multiply(seed in any::<u64>()) {
        let mut r = rng(seed);
        let lpa = Lpa::new(random_graph(&mut r, 3, 5), Naturals::new());
        let x = random_element(&lpa, &mut r, 3, 2, false, small_n);
        let y = random_element(&lpa, &mut r, 3, 2, false, small_n);
        let two = BigUint::from(2u32);
        let lhs = lpa.mul(&lpa.scale(&two, &x), &y).unwrap();
        prop_assert_eq!(lhs, lpa.scale(&two, &lpa.mul(&x, &y).unwrap()));
    }
}

fn check_edge_relations<S: Semiring>(lpa: &Lpa<S>) {
    let g = lpa.graph();
    for e in g.edges() {
        let (s, t) = (lpa.vertex(g.source(e)), lpa.vertex(g.range(e)));
        let (ee, es) = (lpa.edge(e), lpa.ghost(e));
        assert_eq!(lpa.mul(&s, &ee).unwrap(), ee);
        assert_eq!(lpa.mul(&ee, &t).unwrap(), ee);
        assert_eq!(lpa.mul(&t, &es).unwrap(), es);
        assert_eq!(lpa.mul(&es, &s).unwrap(), es);
        assert!(lpa.mul(&t, &ee).unwrap().is_zero() || g.source(e) == g.range(e));
        for f in g.edges() {
            let p = lpa.mul(&es, &lpa.edge(f)).unwrap();
            if e == f {
                assert_eq!(p, t);
            } else {
                assert!(p.is_zero());
            }
        }
    }
    for v in g.vertices() {
        for w in g.vertices() {
            let p = lpa.mul(&lpa.vertex(v), &lpa.vertex(w)).unwrap();
            assert_eq!(p.is_zero(), v != w);
        }
    }
}

#[test]
fn defining_relations_hold() {
    let mut r = rng(5);
    for _ in 0..50 {
        let g = random_graph(&mut r, 5, 8);
        check_edge_relations(&Lpa::new(g.clone(), Rationals::new()));
        check_edge_relations(&Lpa::new(g.clone(), Tropical::new()));
        check_edge_relations(&Lpa::new(g, PrimeField::new(3).unwrap()));
    }
    check_edge_relations(&Lpa::new(Graph::rose(3), Naturals::new()));
}
