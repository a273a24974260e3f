//! Dense-matrix oracle for a handful of qubits.
#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

pub fn zeros(n: usize) -> Mat {
    vec![vec![C::new(0.0, 0.0); n]; n]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == C::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn scale(a: &Mat, s: C) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn dagger(a: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn close(a: &Mat, b: &Mat) -> bool {
    a.iter().zip(b).all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).norm() < 1e-9))
}

pub fn pauli(c: char) -> Mat {
    let o = C::new(0.0, 0.0);
    let l = C::new(1.0, 0.0);
    let i = C::new(0.0, 1.0);
    match c {
        'I' => vec![vec![l, o], vec![o, l]],
        'X' => vec![vec![o, l], vec![l, o]],
        'Y' => vec![vec![o, -i], vec![i, o]],
        'Z' => vec![vec![l, o], vec![o, -l]],
        _ => panic!("bad Pauli {c}"),
    }
}

/// Tensor product with qubit 0 as the most significant factor.
pub fn pauli_word(word: &str) -> Mat {
    let mut m = eye(1);
    for c in word.chars() {
        m = kron(&m, &pauli(c));
    }
    m
}

pub fn phase_of(k: u8) -> C {
    [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0), C::new(0.0, -1.0)][k as usize % 4]
}

/// Mode `k` (0-based): `X…X Z` for even `k`, `X…X Y` for odd `k`.
pub fn gamma(qubits: usize, k: usize) -> Mat {
    let q = k / 2;
    let word: String = (0..qubits)
        .map(|j| {
            if j < q {
                'X'
            } else if j == q {
                if k % 2 == 0 { 'Z' } else { 'Y' }
            } else {
                'I'
            }
        })
        .collect();
    pauli_word(&word)
}

/// `phase · i^{q(q-1)/2} γ_{i1} … γ_{iq}` for ascending modes.
pub fn majorana(qubits: usize, modes: &[usize], phase_exp: u8) -> Mat {
    let q = modes.len();
    let herm = ((q * q.saturating_sub(1) / 2) % 4) as u8;
    let mut m = scale(&eye(1 << qubits), phase_of(phase_exp + herm));
    for &k in modes {
        m = mul(&m, &gamma(qubits, k));
    }
    m
}

pub fn trace(a: &Mat) -> C {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// Projector `Π (1 + g)/2` onto the stabilized state.
pub fn stabilizer_state(generators: &[Mat]) -> Mat {
    let n = generators[0].len();
    let mut rho = eye(n);
    for g in generators {
        rho = mul(&rho, &scale(&add(&eye(n), g), C::new(0.5, 0.0)));
    }
    rho
}

/// Reduced state on qubits `lo..=hi` (0-based) of an `n`-qubit density matrix.
pub fn partial_trace(rho: &Mat, n: usize, lo: usize, hi: usize) -> Mat {
    let keep: Vec<usize> = (lo..=hi).collect();
    let na = keep.len();
    let mut out = zeros(1 << na);
    let bit = |idx: usize, q: usize| (idx >> (n - 1 - q)) & 1;
    for i in 0..(1usize << n) {
        for j in 0..(1usize << n) {
            let same_env = (0..n).filter(|q| !keep.contains(q)).all(|q| bit(i, q) == bit(j, q));
            if !same_env {
                continue;
            }
            let a = keep.iter().fold(0, |acc, &q| (acc << 1) | bit(i, q));
            let b = keep.iter().fold(0, |acc, &q| (acc << 1) | bit(j, q));
            out[a][b] += rho[i][j];
        }
    }
    out
}

/// Second Rényi entropy in bits.
pub fn renyi2_bits(rho_a: &Mat) -> f64 {
    let purity = trace(&mul(rho_a, rho_a)).re;
    -purity.log2()
}
