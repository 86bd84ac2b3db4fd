use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::polyring::Poly;

/// Genus of the base curve, at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(u32);

impl Genus {
    pub const MIN: u32 = 2;

    pub fn new(g: u32) -> Result<Self> {
        Self::at_least(g, Self::MIN)
    }

    /// Rejects genera below `min` (the divisor data needs `g >= 3`).
    pub fn at_least(g: u32, min: u32) -> Result<Self> {
        if g < min.max(Self::MIN) {
            return Err(Error::GenusOutOfRange {
                genus: g,
                min: min.max(Self::MIN),
            });
        }
        Ok(Self(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of 2-torsion points of the Jacobian, `2^(2g)`.
    pub fn torsion_count(self) -> BigInt {
        BigInt::from(1u8) << (2 * self.0)
    }

    pub fn torsion_poly(self) -> Poly {
        Poly::constant(BigRational::from_integer(self.torsion_count()))
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u32> for Genus {
    type Error = Error;
    fn try_from(g: u32) -> Result<Self> {
        Self::new(g)
    }
}
