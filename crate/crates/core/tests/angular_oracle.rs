use num_traits::Zero;
use symcalc::angular::{clebsch_gordan, wigner_3j, AngularData};
use symcalc::oracle::racah_cg;
use symcalc::transvectant::{n_coeff, s_sum, MonomialSpec};

#[test]
fn cg_agrees_with_racah_sum() {
    for ad in AngularData::sweep(12) {
        assert_eq!(clebsch_gordan(&ad), racah_cg(&ad), "{ad:?}");
    }
}

#[test]
fn three_j_column_swap_symmetry() {
    for ad in AngularData::sweep(8) {
        let w = wigner_3j(&ad);
        // (j2 j1 j; m2 m1 -m) = (-1)^(j1+j2+j) (j1 j2 j; m1 m2 -m)
        let swapped = wigner_3j(&AngularData::coupled(ad.two_j2, ad.two_j1, ad.two_j, ad.two_m2, ad.two_m1));
        let odd = ((ad.two_j1 + ad.two_j2 + ad.two_j) / 2) % 2 == 1;
        assert_eq!(swapped, if odd { w.negate() } else { w }, "{ad:?}");
    }
}

#[test]
fn n_vanishes_with_s() {
    for spec in MonomialSpec::all_up_to(4) {
        assert_eq!(n_coeff(&spec).is_zero(), s_sum(&spec).is_zero(), "{spec}");
    }
}
