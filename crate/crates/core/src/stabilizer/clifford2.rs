//! The two-qubit Clifford group acting on Majorana modes 0–3.
//!
//! Two-qubit Paulis are 4-bit codes: bit 0 = x and bit 1 = z of qubit 0,
//! bit 2 = x and bit 3 = z of qubit 1, with `σ(1,1) = Y`. Majorana monomials
//! on modes 0–3 are 4-bit masks.

use std::sync::OnceLock;

use rand::Rng;

use crate::majorana::{jw_inverse, jw_map, MajoranaString, PauliString, Phase};
use crate::bits::BitVec;

/// Order of `Sp(4, F2)`.
pub const SYMPLECTIC_ORDER: usize = 720;
/// Order of the two-qubit Clifford group modulo phases.
pub const CLIFFORD2_ORDER: usize = SYMPLECTIC_ORDER * 16;

/// `phase · σ(bits)` on two qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Pauli2 {
    pub bits: u8,
    pub phase: Phase,
}

impl Pauli2 {
    pub const IDENTITY: Pauli2 = Pauli2 { bits: 0, phase: Phase::ONE };

    pub fn hermitian(bits: u8) -> Self {
        Pauli2 { bits: bits & 0xF, phase: Phase::ONE }
    }

    pub fn mul(self, other: Pauli2) -> Pauli2 {
        let mut k = self.phase.exponent() as i64 + other.phase.exponent() as i64;
        for q in 0..2 {
            let (x1, z1) = ((self.bits >> (2 * q)) & 1, (self.bits >> (2 * q + 1)) & 1);
            let (x2, z2) = ((other.bits >> (2 * q)) & 1, (other.bits >> (2 * q + 1)) & 1);
            k += single_g(x1, z1, x2, z2);
        }
        Pauli2 { bits: self.bits ^ other.bits, phase: Phase::from_exponent(k) }
    }
}

/// Exponent of `i` in `σ(x1,z1) σ(x2,z2) = i^g σ(x1⊕x2, z1⊕z2)`.
fn single_g(x1: u8, z1: u8, x2: u8, z2: u8) -> i64 {
    let (x2, z2) = (x2 as i64, z2 as i64);
    match (x1, z1) {
        (0, 0) => 0,
        (1, 1) => z2 - x2,
        (1, 0) => z2 * (2 * x2 - 1),
        _ => x2 * (1 - 2 * z2),
    }
}

/// `true` when the two codes anticommute.
pub fn symplectic(a: u8, b: u8) -> bool {
    let (ax, az) = (a & 0b0101, (a >> 1) & 0b0101);
    let (bx, bz) = (b & 0b0101, (b >> 1) & 0b0101);
    ((ax & bz) ^ (az & bx)).count_ones() % 2 == 1
}

fn symplectic_images() -> &'static [[u8; 4]] {
    static TABLE: OnceLock<Vec<[u8; 4]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(SYMPLECTIC_ORDER);
        for a in 1..16u8 {
            for b in 1..16u8 {
                if !symplectic(a, b) {
                    continue;
                }
                for c in 1..16u8 {
                    if symplectic(a, c) || symplectic(b, c) {
                        continue;
                    }
                    for d in 1..16u8 {
                        if symplectic(c, d) && !symplectic(a, d) && !symplectic(b, d) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    })
}

struct MonomialTables {
    /// `B_m` as a Pauli.
    to_pauli: [Pauli2; 16],
    /// Hermitian `σ(bits)` as `phase · B_m`.
    to_mono: [(u8, Phase); 16],
}

fn monomial_tables() -> &'static MonomialTables {
    static TABLES: OnceLock<MonomialTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut to_pauli = [Pauli2::IDENTITY; 16];
        let mut to_mono = [(0u8, Phase::ONE); 16];
        for m in 0..16u8 {
            let s = MajoranaString::new(BitVec::from_u64(4, m as u64), Phase::ONE);
            let p = jw_inverse(&s);
            to_pauli[m as usize] = Pauli2 { bits: pauli_code(&p), phase: p.phase() };
            let q = code_to_pauli(m);
            let image = jw_map(&q);
            to_mono[m as usize] = (image.modes().words()[0] as u8, image.phase());
        }
        MonomialTables { to_pauli, to_mono }
    })
}

fn pauli_code(p: &PauliString) -> u8 {
    let (x, z) = (p.x().words()[0], p.z().words()[0]);
    ((x & 1) | ((z & 1) << 1) | (((x >> 1) & 1) << 2) | (((z >> 1) & 1) << 3)) as u8
}

fn code_to_pauli(code: u8) -> PauliString {
    let x = BitVec::from_u64(2, ((code & 1) | ((code >> 1) & 2)) as u64);
    let z = BitVec::from_u64(2, (((code >> 1) & 1) | ((code >> 2) & 2)) as u64);
    PauliString::new(x, z, Phase::ONE)
}

/// `B_m` for a mask on modes 0–3, as a two-qubit Pauli.
pub fn monomial_to_pauli(m: u8) -> Pauli2 {
    monomial_tables().to_pauli[(m & 0xF) as usize]
}

/// A two-qubit Pauli as `(mask, phase)` with `p = phase · B_mask`.
pub fn pauli_to_monomial(p: Pauli2) -> (u8, Phase) {
    let (m, ph) = monomial_tables().to_mono[p.bits as usize];
    (m, ph * p.phase)
}

/// Which two-qubit Cliffords the sampler draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum GateSet {
    /// The full group, 11 520 elements.
    #[default]
    Uniform,
    /// The subgroup fixing `X_0 X_1` up to sign, i.e. conserving the
    /// fermion parity of modes 0–3 (768 elements).
    ParityPreserving,
}

/// A two-qubit Clifford stored as the images of `X_0, Z_0, X_1, Z_1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TwoQubitClifford {
    images: [Pauli2; 4],
}

const GENERATOR_CODES: [u8; 4] = [0b0001, 0b0010, 0b0100, 0b1000];
const LOCAL_PARITY: u8 = 0b0101;

impl TwoQubitClifford {
    pub fn identity() -> Self {
        Self { images: GENERATOR_CODES.map(Pauli2::hermitian) }
    }

    /// Images of `X_0, Z_0, X_1, Z_1`; must be Hermitian and satisfy the
    /// canonical commutation relations.
    pub fn from_images(images: [Pauli2; 4]) -> Option<Self> {
        let codes = images.map(|p| p.bits);
        let ok = images.iter().all(|p| p.phase.is_real())
            && symplectic(codes[0], codes[1])
            && symplectic(codes[2], codes[3])
            && [(0, 2), (0, 3), (1, 2), (1, 3)].iter().all(|&(i, j)| !symplectic(codes[i], codes[j]));
        ok.then_some(Self { images })
    }

    /// Element `index` of the group, `index < CLIFFORD2_ORDER`: symplectic
    /// part `index / 16`, image signs from the low four bits.
    pub fn from_index(index: usize) -> Self {
        let sym = symplectic_images()[index / 16];
        let signs = index % 16;
        let mut images = [Pauli2::IDENTITY; 4];
        for k in 0..4 {
            images[k] = Pauli2 { bits: sym[k], phase: Phase::sign((signs >> k) & 1 == 1) };
        }
        Self { images }
    }

    pub fn all() -> impl Iterator<Item = TwoQubitClifford> {
        (0..CLIFFORD2_ORDER).map(Self::from_index)
    }

    pub fn images(&self) -> [Pauli2; 4] {
        self.images
    }

    /// `U p U†`.
    pub fn conjugate(&self, p: Pauli2) -> Pauli2 {
        let bits = p.bits;
        let ys = ((bits & 1) & ((bits >> 1) & 1)) + (((bits >> 2) & 1) & ((bits >> 3) & 1));
        let mut out = Pauli2 { bits: 0, phase: p.phase * Phase::from_exponent(ys as i64) };
        for (k, img) in self.images.iter().enumerate() {
            if (bits >> k) & 1 == 1 {
                out = out.mul(*img);
            }
        }
        out
    }

    /// `self ∘ other`: conjugation by `other` first.
    pub fn compose(&self, other: &TwoQubitClifford) -> TwoQubitClifford {
        Self { images: other.images.map(|p| self.conjugate(p)) }
    }

    pub fn preserves_parity(&self) -> bool {
        self.conjugate(Pauli2::hermitian(LOCAL_PARITY)).bits == LOCAL_PARITY
    }

    pub fn sample<R: Rng + ?Sized>(rng: &mut R, set: GateSet) -> Self {
        match set {
            GateSet::Uniform => Self::from_index(rng.gen_range(0..CLIFFORD2_ORDER)),
            GateSet::ParityPreserving => {
                let table = parity_preserving_indices();
                Self::from_index(table[rng.gen_range(0..table.len())])
            }
        }
    }

    /// Action on Majorana monomials of modes 0–3: `U B_m U† = phase · B_m'`.
    pub fn monomial_table(&self) -> MonomialAction {
        let mut even = [(0u8, Phase::ONE); 16];
        let mut odd = [(0u8, Phase::ONE); 16];
        let parity = Pauli2::hermitian(LOCAL_PARITY);
        let parity_image = self.conjugate(parity);
        for m in 0..16u8 {
            let image = self.conjugate(monomial_to_pauli(m));
            even[m as usize] = pauli_to_monomial(image);
            odd[m as usize] = pauli_to_monomial(image.mul(parity_image).mul(parity));
        }
        MonomialAction { even, odd }
    }
}

fn parity_preserving_indices() -> &'static [usize] {
    static TABLE: OnceLock<Vec<usize>> = OnceLock::new();
    TABLE.get_or_init(|| (0..CLIFFORD2_ORDER).filter(|&i| TwoQubitClifford::from_index(i).preserves_parity()).collect())
}

/// Per-gate lookup tables for strings over many modes.
///
/// `even[m]` is the image of `B_m`. `odd[m]` is the image of
/// `B_m · B_F` followed by `B_F`, with `B_F = X_0 X_1` the parity of modes
/// 0–3; it is what a monomial sees when the rest of its string has odd
/// weight and therefore carries `X_0 X_1` through the Jordan–Wigner tail.
#[derive(Clone, Copy, Debug)]
pub struct MonomialAction {
    pub even: [(u8, Phase); 16],
    pub odd: [(u8, Phase); 16],
}

/// How a gate on qubits 0–1 acts on a string over more modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Embedding {
    /// Exact conjugation by the qubit unitary: the support above mode 3
    /// contributes its Jordan–Wigner tail on qubits 0–1.
    #[default]
    JordanWigner,
    /// The gate permutes the 15 non-identity monomials of modes 0–3 and
    /// leaves the rest of the string alone.
    ModeLocal,
}

impl MonomialAction {
    /// Applies the gate to `s`.
    pub fn apply(&self, s: &mut MajoranaString, embedding: Embedding) {
        let low = (s.modes().words()[0] & 0xF) as u8;
        let qm = low.count_ones() as i64;
        let qc = s.weight() as i64 - qm;
        let (image, phase) = match embedding {
            Embedding::ModeLocal => {
                let (m, ph) = self.even[low as usize];
                (m, ph)
            }
            Embedding::JordanWigner => {
                let (m, ph) = if qc % 2 == 1 { self.odd[low as usize] } else { self.even[low as usize] };
                let qn = m.count_ones() as i64;
                (m, ph * Phase::from_exponent(qm * qc - qn * qc))
            }
        };
        s.replace_low_modes(image);
        s.mul_phase(phase);
    }
}
