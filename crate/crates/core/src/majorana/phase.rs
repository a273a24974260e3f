use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

/// A phase `i^k`, `k` mod 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    #[inline]
    pub const fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    #[inline]
    pub const fn exponent(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub const fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    /// `-1` raised to `bit`.
    #[inline]
    pub const fn sign(bit: bool) -> Phase {
        if bit {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }

    pub fn token(self) -> &'static str {
        match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        }
    }

    pub fn from_token(s: &str) -> Option<Phase> {
        match s {
            "+" => Some(Phase::ONE),
            "+i" => Some(Phase::I),
            "-" => Some(Phase::MINUS_ONE),
            "-i" => Some(Phase::MINUS_I),
            _ => None,
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    #[inline]
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl MulAssign for Phase {
    #[inline]
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    #[inline]
    fn neg(self) -> Phase {
        self * Phase::MINUS_ONE
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}
