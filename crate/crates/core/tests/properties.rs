use num_traits::Zero;
use omega_trace::poly::{rational, Coeff, Monomial, Polynomial, RingSignature};
use omega_trace::{Error, IdealHandle};
use proptest::prelude::*;

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn sig(n: usize, weights: Vec<u32>) -> RingSignature {
    RingSignature::new(NAMES[..n].to_vec(), weights).unwrap()
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| rational(a, b))
}

fn poly_in(s: RingSignature, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = s.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), coeff()), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(&s, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

/// A weighted-homogeneous polynomial in a random ring, with its degree.
fn homogeneous() -> impl Strategy<Value = (Polynomial, u64)> {
    (1usize..=4)
        .prop_flat_map(|n| (prop::collection::vec(1u32..=3, n), 1u64..=7))
        .prop_flat_map(|(weights, d)| {
            let s = sig(weights.len(), weights.clone());
            let monos = monomials_of_weighted_degree(&weights, d);
            let k = monos.len().max(1);
            (Just(s), Just(monos), prop::collection::vec((0..k, coeff()), 1..=5), Just(d))
        })
        .prop_map(|(s, monos, picks, d)| {
            let terms = picks.into_iter().filter_map(|(i, c)| monos.get(i).map(|m| (m.clone(), c)));
            (Polynomial::from_terms(&s, terms), d)
        })
}

fn monomials_of_weighted_degree(weights: &[u32], d: u64) -> Vec<Monomial> {
    fn go(w: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let mut e = 0;
        while e as u64 * w[i] as u64 <= left {
            cur[i] = e;
            go(w, i + 1, left - e as u64 * w[i] as u64, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    out
}

fn three() -> RingSignature {
    RingSignature::standard(&["x", "y", "z"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn euler_identity((f, d) in homogeneous()) {
        let s = f.signature().clone();
        let mut euler = Polynomial::zero(&s);
        for i in 0..s.nvars() {
            let xi = Polynomial::var(&s, i).scale(&Coeff::from_integer(s.weight(i).into()));
            euler = &euler + &(&xi * &f.partial_derivative(i));
        }
        prop_assert_eq!(euler, f.scale(&Coeff::from_integer((d as i64).into())));
        if !f.is_zero() {
            prop_assert_eq!(f.weighted_degree().unwrap(), Some(d));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_in(three(), 2, 4), b in poly_in(three(), 2, 4), c in poly_in(three(), 2, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&three()), a.clone());
    }

    #[test]
    fn print_then_parse_is_identity(a in poly_in(three(), 3, 6)) {
        let back = Polynomial::parse(&a.to_string(), &three()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn leibniz_rule(a in poly_in(three(), 3, 4), b in poly_in(three(), 3, 4), i in 0usize..3) {
        let lhs = (&a * &b).partial_derivative(i);
        let rhs = &(&a.partial_derivative(i) * &b) + &(&a * &b.partial_derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_basis_ignores_generator_order(
        gens in prop::collection::vec(poly_in(three(), 2, 3), 1..=3),
        rotate in 0usize..3,
    ) {
        let s = three();
        let mut permuted = gens.clone();
        permuted.reverse();
        let len = permuted.len();
        permuted.rotate_left(rotate % len);
        let a = IdealHandle::new(&s, gens).unwrap();
        let b = IdealHandle::new(&s, permuted).unwrap();
        match (a.groebner_basis(), b.groebner_basis()) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(Error::BudgetExceeded { .. }), Err(Error::BudgetExceeded { .. })) => {}
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn membership_matches_normal_form(
        gens in prop::collection::vec(poly_in(three(), 2, 3), 1..=2),
        hs in prop::collection::vec(poly_in(three(), 1, 3), 2),
        p in poly_in(three(), 2, 4),
    ) {
        let s = three();
        let i = IdealHandle::new(&s, gens.clone()).unwrap();
        prop_assume!(i.groebner_basis().is_ok());
        let mut combo = Polynomial::zero(&s);
        for (g, h) in gens.iter().zip(&hs) {
            combo = &combo + &(g * h);
        }
        prop_assert!(i.contains(&combo).unwrap());
        prop_assert!(i.normal_form(&combo).unwrap().is_zero());
        // normal forms are canonical on cosets
        let nf = i.normal_form(&p).unwrap();
        prop_assert_eq!(i.normal_form(&(&p + &combo)).unwrap(), nf.clone());
        prop_assert_eq!(i.contains(&p).unwrap(), nf.is_zero());
        prop_assert!(i.contains(&(&p - &nf)).unwrap());
    }
}

#[test]
fn rational_coefficients_stay_exact() {
    let s = three();
    let p = Polynomial::parse("1/3*x + 2/3*x", &s).unwrap();
    assert_eq!(p.to_string(), "x");
    let q = Polynomial::parse("1/3*x - 1/3*x", &s).unwrap();
    assert!(q.is_zero());
    assert!(Coeff::zero().is_zero());
}
