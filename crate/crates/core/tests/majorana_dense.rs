mod common;

use common::dense::{self, Mat};
use num_complex::Complex64 as C;
use scramble_core::stabilizer::{apply_braid, apply_permutation};
use scramble_core::{jw_inverse, jw_map, BitVec, MajoranaString, PauliString, Phase};

fn subsets(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u32 << m).map(move |mask| (0..m).filter(|k| mask >> k & 1 == 1).collect())
}

fn string(m: usize, modes: &[usize], phase: u8) -> MajoranaString {
    MajoranaString::new(BitVec::from_indices(m, modes.iter().copied()), Phase::from_exponent(phase as i64))
}

fn to_dense(s: &MajoranaString) -> Mat {
    let modes: Vec<usize> = s.modes().iter_ones().collect();
    dense::majorana(s.num_modes() / 2, &modes, s.phase().exponent())
}

fn pauli_dense(p: &PauliString) -> Mat {
    let word: String = (0..p.qubits())
        .map(|q| match (p.x().get(q), p.z().get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        })
        .collect();
    dense::scale(&dense::pauli_word(&word), dense::phase_of(p.phase().exponent()))
}

#[test]
fn basis_elements_are_hermitian_and_match_jordan_wigner() {
    for qubits in 1..=3 {
        let m = 2 * qubits;
        for modes in subsets(m) {
            for phase in 0..4u8 {
                let s = string(m, &modes, phase);
                let d = to_dense(&s);
                assert!(dense::close(&pauli_dense(&jw_inverse(&s)), &d), "{s}");
                assert_eq!(jw_map(&jw_inverse(&s)), s);
                assert_eq!(dense::close(&dense::dagger(&d), &d), s.is_hermitian(), "{s}");
            }
        }
    }
}

#[test]
fn products_match_dense_multiplication() {
    for qubits in 1..=3 {
        let m = 2 * qubits;
        for a in subsets(m) {
            for b in subsets(m) {
                for (pa, pb) in [(0, 0), (1, 2), (3, 1)] {
                    let (sa, sb) = (string(m, &a, pa), string(m, &b, pb));
                    let p = sa.multiply(&sb);
                    assert!(dense::close(&to_dense(&p), &dense::mul(&to_dense(&sa), &to_dense(&sb))), "{sa} * {sb}");
                    let (da, db) = (to_dense(&sa), to_dense(&sb));
                    let commute = dense::close(&dense::mul(&da, &db), &dense::mul(&db, &da));
                    assert_eq!(sa.commutes_with(&sb), commute);
                }
            }
        }
    }
}

#[test]
fn products_are_associative() {
    let m = 6;
    let all: Vec<Vec<usize>> = subsets(m).collect();
    for (i, a) in all.iter().enumerate().step_by(3) {
        for b in all.iter().skip(i % 5).step_by(5) {
            for c in all.iter().step_by(7) {
                let (x, y, z) = (string(m, a, 1), string(m, b, 0), string(m, c, 2));
                assert_eq!(x.multiply(&y).multiply(&z), x.multiply(&y.multiply(&z)));
            }
        }
    }
}

#[test]
fn jordan_wigner_preserves_two_qubit_commutation() {
    let letters = ['I', 'X', 'Y', 'Z'];
    let words: Vec<String> = letters.iter().flat_map(|a| letters.iter().map(move |b| format!("{a}{b}"))).collect();
    for a in &words {
        for b in &words {
            let pa = PauliString::parse(a).unwrap();
            let pb = PauliString::parse(b).unwrap();
            assert_eq!(jw_map(&pa).commutes_with(&jw_map(&pb)), pa.commutes_with(&pb), "{a} {b}");
            let prod = jw_map(&pa.multiply(&pb));
            assert_eq!(prod, jw_map(&pa).multiply(&jw_map(&pb)));
        }
    }
}

#[test]
fn braid_matches_dense_conjugation() {
    let qubits = 3;
    let m = 2 * qubits;
    let s2 = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let gab = dense::mul(&dense::gamma(qubits, a), &dense::gamma(qubits, b));
            // exp(-π/4 γ_a γ_b) conjugation sends γ_a to γ_b
            let v = dense::scale(&dense::add(&dense::eye(1 << qubits), &dense::scale(&gab, C::new(-1.0, 0.0))), s2);
            let vd = dense::dagger(&v);
            for modes in subsets(m) {
                let mut s = string(m, &modes, 0);
                let expected = dense::mul(&dense::mul(&v, &to_dense(&s)), &vd);
                apply_braid(&mut s, a, b);
                assert!(dense::close(&to_dense(&s), &expected), "braid ({a},{b}) on {modes:?}");
            }
        }
    }
}

#[test]
fn transpositions_match_dense_reflections() {
    let qubits = 3;
    let m = 2 * qubits;
    let s2 = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut seen = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            // (γ_a - γ_b)/√2 sends γ_a ↔ -γ_b and negates every other mode
            let u = dense::scale(&dense::add(&dense::gamma(qubits, a), &dense::scale(&dense::gamma(qubits, b), C::new(-1.0, 0.0))), s2);
            let mut perm: Vec<usize> = (0..m).collect();
            perm.swap(a, b);
            for modes in subsets(m) {
                let mut s = string(m, &modes, 0);
                let sign = if modes.len() % 2 == 0 { 1.0 } else { -1.0 };
                let expected = dense::scale(&dense::mul(&dense::mul(&u, &to_dense(&s)), &u), C::new(sign, 0.0));
                apply_permutation(&mut s, &perm, &mut seen);
                assert!(dense::close(&to_dense(&s), &expected), "swap ({a},{b}) on {modes:?}");
            }
        }
    }
}
