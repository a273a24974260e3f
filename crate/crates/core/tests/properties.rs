use proptest::prelude::*;
use scramble_core::analysis::{fit_exponential_rate, fit_power_law, Window};
use scramble_core::stabilizer::braid::{braid_layer_even, braid_layer_odd};
use scramble_core::stabilizer::{apply_braid, apply_permutation, Embedding, TwoQubitClifford};
use scramble_core::{jw_inverse, jw_map, BitVec, MajoranaString, Phase, Series};

const M: usize = 150;

fn string() -> impl Strategy<Value = MajoranaString> {
    (proptest::collection::btree_set(0..M, 0..40), 0..4i64)
        .prop_map(|(modes, p)| MajoranaString::new(BitVec::from_indices(M, modes), Phase::from_exponent(p)))
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    Just((0..M).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(a in string(), b in string(), c in string()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn commutation_is_consistent_with_products(a in string(), b in string()) {
        let ab = a.multiply(&b);
        let ba = b.multiply(&a);
        prop_assert_eq!(ab.modes(), ba.modes());
        prop_assert_eq!(a.commutes_with(&b), ab.phase() == ba.phase());
    }

    #[test]
    fn jordan_wigner_round_trip(a in string(), b in string()) {
        prop_assert_eq!(jw_map(&jw_inverse(&a)), a.clone());
        prop_assert_eq!(jw_inverse(&a.multiply(&b)), jw_inverse(&a).multiply(&jw_inverse(&b)));
    }

    #[test]
    fn text_round_trip(a in string()) {
        prop_assert_eq!(MajoranaString::parse(M, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn braids_are_automorphisms(a in string(), b in string(), x in 0..M, y in 0..M) {
        prop_assume!(x != y);
        let mut ab = a.multiply(&b);
        let (mut ba, mut bb) = (a.clone(), b.clone());
        apply_braid(&mut ab, x, y);
        apply_braid(&mut ba, x, y);
        apply_braid(&mut bb, x, y);
        prop_assert_eq!(ab, ba.multiply(&bb));
        prop_assert_eq!(ba.weight(), a.weight());
    }

    #[test]
    fn braid_layers_are_automorphisms(a in string(), b in string(), w in proptest::array::uniform3(any::<u64>())) {
        let even: Vec<u64> = w.iter().map(|x| x & 0x5555_5555_5555_5555).collect();
        let mut odd: Vec<u64> = w.iter().map(|x| x & 0xAAAA_AAAA_AAAA_AAAA).collect();
        odd[2] &= (1u64 << ((M - 1) % 64)) - 1;
        let run = |s: &MajoranaString| {
            let mut s = s.clone();
            braid_layer_even(&mut s, &even);
            braid_layer_odd(&mut s, &odd);
            s
        };
        prop_assert_eq!(run(&a.multiply(&b)), run(&a).multiply(&run(&b)));
        prop_assert_eq!(run(&a).weight(), a.weight());
    }

    #[test]
    fn permutations_compose(a in string(), b in string(), p in permutation(), q in permutation()) {
        let mut seen = Vec::new();
        let apply = |s: &MajoranaString, perm: &[usize], seen: &mut Vec<bool>| {
            let mut s = s.clone();
            apply_permutation(&mut s, perm, seen);
            s
        };
        let qp: Vec<usize> = (0..M).map(|k| q[p[k]]).collect();
        prop_assert_eq!(apply(&apply(&a, &p, &mut seen), &q, &mut seen), apply(&a, &qp, &mut seen));
        prop_assert_eq!(apply(&a.multiply(&b), &p, &mut seen), apply(&a, &p, &mut seen).multiply(&apply(&b, &p, &mut seen)));
    }

    #[test]
    fn exact_gates_are_automorphisms(a in string(), b in string(), g in 0usize..11_520) {
        let table = TwoQubitClifford::from_index(g).monomial_table();
        let run = |s: &MajoranaString| {
            let mut s = s.clone();
            table.apply(&mut s, Embedding::JordanWigner);
            s
        };
        prop_assert_eq!(run(&a.multiply(&b)), run(&a).multiply(&run(&b)));
        prop_assert!(run(&a).is_hermitian() == a.is_hermitian());
    }

    #[test]
    fn planted_fits_are_recovered(rate in 0.001f64..0.5, amp in 0.1f64..10.0, expo in 0.2f64..2.0) {
        let times: Vec<f64> = (1..60).map(f64::from).collect();
        let n = times.len();
        let exp = Series { mean: times.iter().map(|t| amp * (rate * t).exp()).collect(), stderr: vec![0.0; n], times: times.clone() };
        let f = fit_exponential_rate(&exp, Window::All).unwrap();
        prop_assert!((f.estimate - rate).abs() < 1e-10);
        prop_assert!(f.stderr.is_finite() && f.stderr >= 0.0);
        let pow = Series { mean: times.iter().map(|t| amp * t.powf(expo)).collect(), stderr: vec![0.0; n], times };
        let f = fit_power_law(&pow, Window::Time(4.0, 50.0)).unwrap();
        prop_assert!((f.estimate - expo).abs() < 1e-10);
    }
}
