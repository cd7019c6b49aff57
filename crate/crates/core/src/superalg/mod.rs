//! Finite-dimensional associative superalgebras given by structure constants,
//! with Frobenius data (trace form, dual basis, Nakayama automorphism) and an
//! optional degree-preserving anti-involution `⋆`.

mod algebra;
pub mod catalog;
pub mod embed;
pub mod identities;
pub mod matrix;

pub use algebra::{AlgElem, Field, SuperAlgebra};
pub use matrix::SuperMatrix;

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

/// An element of Z/2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Parity(bool);

impl Parity {
    pub const EVEN: Parity = Parity(false);
    pub const ODD: Parity = Parity(true);

    pub fn new(odd: bool) -> Self {
        Parity(odd)
    }

    pub fn from_int(n: usize) -> Self {
        Parity(n % 2 == 1)
    }

    pub fn is_odd(self) -> bool {
        self.0
    }

    pub fn is_even(self) -> bool {
        !self.0
    }

    pub fn as_u8(self) -> u8 {
        self.0 as u8
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity(self.0 ^ o.0)
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, o: Parity) {
        self.0 ^= o.0;
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, o: Parity) -> Parity {
        Parity(self.0 & o.0)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl serde::Serialize for Parity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}
