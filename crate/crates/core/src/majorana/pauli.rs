use std::fmt;

use crate::bits::BitVec;

use super::Phase;

/// `phase · ⊗_q σ(x_q, z_q)` with `σ(1,0) = X`, `σ(0,1) = Z`, `σ(1,1) = Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    phase: Phase,
}

impl PauliString {
    pub fn new(x: BitVec, z: BitVec, phase: Phase) -> Self {
        assert_eq!(x.len(), z.len(), "x and z lengths differ");
        Self { x, z, phase }
    }

    pub fn identity(qubits: usize) -> Self {
        Self::new(BitVec::zeros(qubits), BitVec::zeros(qubits), Phase::ONE)
    }

    /// Single-qubit `X`, `Y` or `Z` on qubit `q` (0-based).
    pub fn single(qubits: usize, q: usize, op: char) -> Self {
        let mut p = Self::identity(qubits);
        match op {
            'X' => p.x.set(q, true),
            'Z' => p.z.set(q, true),
            'Y' => {
                p.x.set(q, true);
                p.z.set(q, true);
            }
            _ => panic!("unknown Pauli `{op}`"),
        }
        p
    }

    /// Parses `"+XIZY"`-style text, qubit 1 first.
    pub fn parse(text: &str) -> Option<Self> {
        let (phase, body) = if let Some(rest) = text.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = text.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = text.strip_prefix('+') {
            (Phase::ONE, rest)
        } else if let Some(rest) = text.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else {
            (Phase::ONE, text)
        };
        let n = body.chars().count();
        let mut p = Self::identity(n);
        p.phase = phase;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' | 'Y' | 'Z' => {
                    let s = Self::single(n, q, c);
                    p.x.xor_assign(&s.x);
                    p.z.xor_assign(&s.z);
                }
                _ => return None,
            }
        }
        Some(p)
    }

    pub fn qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Symplectic form: `true` when the strings commute.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        assert_eq!(self.qubits(), other.qubits());
        let mut acc = 0u32;
        for k in 0..self.x.words().len() {
            let w = (self.x.words()[k] & other.z.words()[k]) ^ (self.z.words()[k] & other.x.words()[k]);
            acc ^= w.count_ones();
        }
        acc & 1 == 0
    }

    pub fn multiply(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.qubits(), other.qubits());
        let mut k = self.phase.exponent() as i64 + other.phase.exponent() as i64;
        for w in 0..self.x.words().len() {
            let (x1, z1) = (self.x.words()[w], self.z.words()[w]);
            let (x2, z2) = (other.x.words()[w], other.z.words()[w]);
            let y1 = x1 & z1;
            let xo = x1 & !z1;
            let zo = z1 & !x1;
            let plus = (y1 & z2 & !x2) | (xo & z2 & x2) | (zo & x2 & !z2);
            let minus = (y1 & x2 & !z2) | (xo & z2 & !x2) | (zo & x2 & z2);
            k += plus.count_ones() as i64 - minus.count_ones() as i64;
        }
        PauliString { x: self.x.xor(&other.x), z: self.z.xor(&other.z), phase: Phase::from_exponent(k) }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.token())?;
        for q in 0..self.qubits() {
            let c = match (self.x.get(q), self.z.get(q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        let x = PauliString::parse("X").unwrap();
        let y = PauliString::parse("Y").unwrap();
        let z = PauliString::parse("Z").unwrap();
        assert_eq!(x.multiply(&y).to_string(), "+iZ");
        assert_eq!(y.multiply(&z).to_string(), "+iX");
        assert_eq!(z.multiply(&x).to_string(), "+iY");
        assert_eq!(y.multiply(&x).to_string(), "-iZ");
        assert_eq!(x.multiply(&x).to_string(), "+I");
        assert!(!x.commutes_with(&z));
        let xx = PauliString::parse("XX").unwrap();
        let zz = PauliString::parse("ZZ").unwrap();
        assert!(xx.commutes_with(&zz));
    }
}
