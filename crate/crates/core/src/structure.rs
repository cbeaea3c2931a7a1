use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::GroupSpec;
use crate::digraph::TraversalMode;
use crate::error::{Error, Result};

/// The six function groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Balanced edge functions, flexible traversal.
    HF,
    /// Balanceable vertex functions, flexible traversal.
    BF,
    /// Balanced vertex-and-edge functions, flexible traversal.
    WF,
    HR,
    BR,
    WR,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::HF,
        Family::BF,
        Family::WF,
        Family::HR,
        Family::BR,
        Family::WR,
    ];

    pub fn mode(self) -> TraversalMode {
        match self {
            Family::HF | Family::BF | Family::WF => TraversalMode::Flexible,
            Family::HR | Family::BR | Family::WR => TraversalMode::Rigid,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::HF => "HF",
            Family::BF => "BF",
            Family::WF => "WF",
            Family::HR => "HR",
            Family::BR => "BR",
            Family::WR => "WR",
        }
    }

    /// Whether cycle sums include vertex labels.
    pub fn includes_vertices(self) -> bool {
        !matches!(self, Family::HF | Family::HR)
    }

    pub fn check_mode(self, mode: TraversalMode) -> Result<()> {
        if self.mode() != mode {
            return Err(Error::FamilyModeMismatch {
                family: self.name(),
                mode: mode.name(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}; expected one of HF BF WF HR BR WR"))
    }
}

/// The formal group `A^p x (A_2)^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureDescriptor {
    pub a_exponent: usize,
    pub a2_exponent: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Finite(u128),
    Infinite,
    /// Finite but larger than `u128::MAX`.
    Overflow,
}

impl StructureDescriptor {
    pub fn new(a_exponent: usize, a2_exponent: usize) -> Self {
        Self {
            a_exponent,
            a2_exponent,
        }
    }

    /// `|A|^p * |A_2|^q`.
    pub fn cardinality(&self, spec: &GroupSpec) -> Cardinality {
        let a2 = spec.involution_subgroup().cardinality();
        let Some(a2_part) = checked_pow(a2, self.a2_exponent) else {
            return Cardinality::Overflow;
        };
        if self.a_exponent == 0 {
            return Cardinality::Finite(a2_part);
        }
        let Some(a) = spec.cardinality() else {
            return if spec.is_finite() {
                Cardinality::Overflow
            } else {
                Cardinality::Infinite
            };
        };
        match checked_pow(a, self.a_exponent).and_then(|x| x.checked_mul(a2_part)) {
            Some(n) => Cardinality::Finite(n),
            None => Cardinality::Overflow,
        }
    }
}

impl std::ops::Add for StructureDescriptor {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::new(
            self.a_exponent + other.a_exponent,
            self.a2_exponent + other.a2_exponent,
        )
    }
}

impl fmt::Display for StructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        match self.a2_exponent {
            0 => {}
            1 => terms.push("A_2".to_owned()),
            q => terms.push(format!("A_2^{q}")),
        }
        if self.a_exponent > 0 {
            terms.push(format!("A^{}", self.a_exponent));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" x "))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("infinite"),
            Cardinality::Overflow => f.write_str("overflow"),
        }
    }
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}
