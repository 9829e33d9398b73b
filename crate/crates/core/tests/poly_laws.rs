use proptest::prelude::*;
use symcalc::poly::{apply_letter, linear_form, omega_power, MultiPoly, VarSet};
use symcalc::rational::ratio;
use symcalc::{BinaryForm, Rational};

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn poly_in(sets: Vec<VarSet>, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    let n: usize = sets.iter().map(|s| s.arity).sum();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), coeff()), 0..6)
        .prop_map(move |terms| MultiPoly::from_terms(sets.clone(), terms).unwrap())
}

fn xy() -> Vec<VarSet> {
    vec![VarSet::binary("x"), VarSet::binary("y")]
}

fn form(max_deg: u32) -> impl Strategy<Value = BinaryForm> {
    (0..=max_deg).prop_flat_map(|d| prop::collection::vec(coeff(), d as usize + 1))
        .prop_map(|c| BinaryForm::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_in(xy(), 3), b in poly_in(xy(), 3), c in poly_in(xy(), 3)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn omega_powers_compose(p in poly_in(xy(), 4), k1 in 0u32..3, k2 in 0u32..3) {
        let stepwise = omega_power(&omega_power(&p, "x", "y", k1).unwrap(), "x", "y", k2).unwrap();
        let direct = omega_power(&p, "x", "y", k1 + k2).unwrap();
        prop_assert!((&stepwise - &direct).is_zero());
    }

    #[test]
    fn apply_letter_is_bilinear(
        f in form(4),
        g in prop::collection::vec(coeff(), 5),
        t1 in poly_in(vec![VarSet::binary("a"), VarSet::binary("x")], 4),
        t2 in poly_in(vec![VarSet::binary("a"), VarSet::binary("x")], 4),
        s in coeff(),
    ) {
        let d = f.degree();
        let a = VarSet::binary("a");
        let op_f = f.to_poly(&a);
        let g = BinaryForm::new(g[..=d as usize].to_vec()).unwrap();
        let op_g = g.to_poly(&a);
        let sum_t = &t1 + &t2.scale(&s);
        let lhs = apply_letter(&op_f, "a", &sum_t).unwrap();
        let rhs = &apply_letter(&op_f, "a", &t1).unwrap() + &apply_letter(&op_f, "a", &t2).unwrap().scale(&s);
        prop_assert!((&lhs - &rhs).is_zero());
        let lhs = apply_letter(&(&op_f + &op_g.scale(&s)), "a", &t1).unwrap();
        let rhs = &apply_letter(&op_f, "a", &t1).unwrap() + &apply_letter(&op_g, "a", &t1).unwrap().scale(&s);
        prop_assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn letter_reconstructs_form(f in form(8)) {
        let (a, x) = (VarSet::binary("a"), VarSet::binary("x"));
        let d = f.degree();
        let ax = linear_form(&a, &x).unwrap().pow(d);
        let back = apply_letter(&f.to_poly(&a), "a", &ax).unwrap();
        prop_assert_eq!(BinaryForm::from_poly(&back, "x", Some(d)).unwrap(), f);
    }
}

#[test]
fn letter_on_constant_is_zero() {
    let a = VarSet::binary("a");
    let f = BinaryForm::from_ints(&[1, 0, -2, 0]).to_poly(&a);
    let one = MultiPoly::constant(vec![a], Rational::from_integer(1.into()));
    assert!(apply_letter(&f, "a", &one).unwrap().is_zero());
}

#[test]
fn letters_commute() {
    let (a, b, x) = (VarSet::binary("a"), VarSet::binary("b"), VarSet::binary("x"));
    let f = BinaryForm::from_ints(&[1, 2, -1]);
    let g = BinaryForm::from_ints(&[3, 0, 1]);
    let target = &linear_form(&a, &x).unwrap().pow(2) * &(&linear_form(&b, &x).unwrap().pow(2) * &symcalc::poly::bracket2(&a, &b).unwrap());
    let ab = apply_letter(&g.to_poly(&b), "b", &apply_letter(&f.to_poly(&a), "a", &target).unwrap()).unwrap();
    let ba = apply_letter(&f.to_poly(&a), "a", &apply_letter(&g.to_poly(&b), "b", &target).unwrap()).unwrap();
    assert_eq!(ab, ba);
}
