use std::fmt;

use crate::error::{Error, Result};

/// Coefficient ring tag: the integers, or the field with two elements.
///
/// Integer coefficients live in `i64` and every arithmetic step is checked;
/// overflow surfaces as [`Error::CoefficientOverflow`] rather than wrapping.
/// Over GF(2) coefficients are normalized to `{0, 1}` on entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Int,
    Gf2,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Int => "int",
            Ring::Gf2 => "f2",
        }
    }

    /// Parses the tokens used by matrix files and CLI flags.
    pub fn parse(token: &str) -> Result<Self> {
        match token {
            "int" => Ok(Ring::Int),
            "f2" => Ok(Ring::Gf2),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown ring {other:?}, expected \"int\" or \"f2\""),
            }),
        }
    }

    /// Brings a raw integer into the ring: identity over the integers,
    /// reduction to `{0, 1}` over GF(2).
    pub fn normalize(self, value: i64) -> i64 {
        match self {
            Ring::Int => value,
            Ring::Gf2 => value.rem_euclid(2),
        }
    }

    pub fn add(self, a: i64, b: i64) -> Result<i64> {
        match self {
            Ring::Int => a.checked_add(b).ok_or(Error::CoefficientOverflow),
            Ring::Gf2 => Ok((a + b) & 1),
        }
    }

    pub fn mul(self, a: i64, b: i64) -> Result<i64> {
        match self {
            Ring::Int => a.checked_mul(b).ok_or(Error::CoefficientOverflow),
            Ring::Gf2 => Ok(a & b & 1),
        }
    }

    pub fn neg(self, a: i64) -> Result<i64> {
        match self {
            Ring::Int => a.checked_neg().ok_or(Error::CoefficientOverflow),
            Ring::Gf2 => Ok(a & 1),
        }
    }

    /// Checks that two operands were built over the same ring.
    pub fn require_same(self, other: Ring) -> Result<Ring> {
        if self == other {
            Ok(self)
        } else {
            Err(Error::RingMismatch(self.name(), other.name()))
        }
    }

    /// Whether `value` is a legal coefficient as stored.
    pub fn admits(self, value: i64) -> bool {
        match self {
            Ring::Int => true,
            Ring::Gf2 => value == 0 || value == 1,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
