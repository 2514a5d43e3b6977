use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Exact nonnegative integer of unbounded size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        Self(BigUint::zero())
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Base-10 logarithm, accurate to double precision even for values beyond `f64`.
    /// Zero maps to negative infinity.
    pub fn log10(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            return self.0.to_f64().expect("fits in f64").log10();
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().expect("64-bit prefix");
        top.log10() + shift as f64 * std::f64::consts::LOG10_2
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        Self(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        Self(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl std::str::FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<BigUint>().map(Self)
    }
}
