use num_traits::Zero;
use symcalc::covariants::{hessian, j_quotient, j_weights, membership};
use symcalc::oracle::quotient_hessian_numerator;
use symcalc::rational::{int, ratio};
use symcalc::sample;
use symcalc::transvectant::transvectant;
use symcalc::{BinForm, BinaryForm, Coeff, SymbolicForm};

fn same<C: Coeff>(a: &BinForm<C>, b: &BinForm<C>) -> bool {
    a.degree() == b.degree() && a.try_sub(b).unwrap().is_zero()
}

#[test]
fn j_matches_quotient_rule_symbolically() {
    for p in 0..=3 {
        for q in 1..=3 {
            if p + q < 2 {
                continue;
            }
            let (pf, qf) = (SymbolicForm::generic("p", p), SymbolicForm::generic("q", q));
            let lhs = &j_quotient(&pf, &qf) * &(&qf * &qf);
            assert!(same(&lhs, &quotient_hessian_numerator(&pf, &qf)), "p={p} q={q}");
        }
    }
}

#[test]
fn printed_second_weight_breaks_the_identity() {
    for (p, q) in [(3u32, 3u32), (2, 3), (4, 2)] {
        let pf = SymbolicForm::generic("p", p);
        let qf = SymbolicForm::generic("q", q);
        let [_, z2, _] = j_weights(p, q);
        assert!(!z2.is_zero());
        // flipping the sign of z2 reproduces the displayed weight
        let extra = (&(&pf * &pf) * &transvectant(&qf, &qf, 2).unwrap()).scale(&(-z2 * int(2)));
        let printed = &j_quotient(&pf, &qf) + &extra;
        let lhs = &printed * &(&qf * &qf);
        assert!(!same(&lhs, &quotient_hessian_numerator(&pf, &qf)), "p={p} q={q}");
    }
}

#[test]
fn j_vanishes_one_degree_up() {
    for q in 1..=3 {
        let pf = SymbolicForm::generic("p", q + 1);
        let qf = SymbolicForm::generic("q", q);
        assert!(j_quotient(&pf, &qf).is_zero(), "q={q}");
    }
}

#[test]
fn j_of_proportional_forms_is_zero() {
    let mut rng = sample::sampler(3);
    let f = sample::form(&mut rng, 4, 5);
    let g = &f * &BinaryForm::from_ints(&[2]);
    assert!(j_quotient(&g, &f).is_zero());
}

#[test]
fn gordan_series() {
    for q in 2..=6u32 {
        let f = SymbolicForm::generic("q", q);
        let lhs = transvectant(&(&f * &f), &f, 2).unwrap();
        let c = ratio(3 * q as i64 - 2, 2 * (2 * q as i64 - 1));
        let rhs = (&f * &transvectant(&f, &f, 2).unwrap()).scale(&c);
        assert!(same(&lhs, &rhs), "q={q}");
    }
}

#[test]
fn second_self_transvectant_is_hessian_multiple() {
    for d in 2..=6u32 {
        let f = SymbolicForm::generic("c", d);
        let t = transvectant(&f, &f, 2).unwrap();
        let h = hessian(&f);
        let scale = ratio(2, (d * d * (d - 1) * (d - 1)) as i64);
        assert!(same(&t, &h.scale(&scale)), "d={d}");
    }
}

#[test]
fn transvectants_are_equivariant() {
    let mut rng = sample::sampler(17);
    for _ in 0..20 {
        let g = sample::unimodular(&mut rng, 3);
        let (da, db) = (sample::form(&mut rng, 4, 5), sample::form(&mut rng, 3, 5));
        for k in 0..=3 {
            let before = transvectant(&da.substitute(&g), &db.substitute(&g), k).unwrap();
            let after = transvectant(&da, &db, k).unwrap().substitute(&g);
            assert_eq!(before, after, "k={k}");
        }
    }
}

#[test]
fn membership_is_invariant() {
    let mut rng = sample::sampler(23);
    for (d, e) in [(5u32, 2u32), (6, 1), (6, 3), (7, 2)] {
        let (l1, l2) = sample::independent_linear_pair(&mut rng, 4);
        let f = &l1.pow(d - e) * &l2.pow(e);
        let g = sample::unimodular(&mut rng, 3);
        let r = membership(&f.substitute(&g), &[e]).unwrap();
        assert_eq!(r.in_x(e), Some(true), "d={d} e={e}");
        let other = if e > 1 { e - 1 } else { e + 1 };
        if other <= d / 2 && other != e {
            assert_eq!(membership(&f, &[other]).unwrap().in_x(other), Some(false), "d={d} e={other}");
        }
    }
}
