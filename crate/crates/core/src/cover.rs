//! Double covers of curves and equivariant section counts.
//!
//! A curve `X` with involution has quotient `Y` of genus `g_Y`; the cover
//! `X -> Y` is ramified over `2n` points (étale when `n = 0`). This module
//! records the cover combinatorics and the dimensions of the invariant
//! parts of spaces of pluricanonical sections, for both choices of
//! linearization of the canonical bundle at the ramification points.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Which lift of the involution acts on germs of `i`-canonical sections.
///
/// In a chart at a ramification point where the involution is `t -> -t`,
/// the positive linearization sends a germ `a(t)` to `a(-t)` in every
/// canonical power; the negative one sends it to `(-1)^i a(-t)` in the
/// `i`-th power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linearization {
    Positive,
    Negative,
}

/// Errors raised by cover construction and section-count queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    /// The data does not describe a double cover of curves with an
    /// upstairs genus of at least two.
    #[error(
        "InadmissibleCover: g_Y = {g_y}, n = {n}, etale = {etale} does not \
         give a smooth double cover with upstairs genus >= 2"
    )]
    InadmissibleCover { g_y: u32, n: u32, etale: bool },
    /// The twisted section-count formula was queried outside the range
    /// where the underlying cohomology vanishing holds.
    #[error(
        "OutOfValidityWindow: twist index {i} outside the window for the \
         {k}-th canonical power (need a ramified cover and 0 <= i <= {max})"
    )]
    OutOfValidityWindow { k: u32, i: u32, max: i64 },
}

impl CoverError {
    /// Stable machine-readable name, used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            CoverError::InadmissibleCover { .. } => "InadmissibleCover",
            CoverError::OutOfValidityWindow { .. } => "OutOfValidityWindow",
        }
    }
}

/// A double cover `X -> Y = X / involution`, ramified over `2n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverData {
    g_y: u32,
    n: u32,
    etale: bool,
}

impl CoverData {
    /// Validates that `etale` agrees with `n = 0` and that the upstairs
    /// genus `2 g_Y - 1 + n` is at least two.
    pub fn new(g_y: u32, n: u32, etale: bool) -> Result<Self, CoverError> {
        let admissible = (etale == (n == 0)) && 2 * i64::from(g_y) - 1 + i64::from(n) >= 2;
        if admissible {
            Ok(CoverData { g_y, n, etale })
        } else {
            Err(CoverError::InadmissibleCover { g_y, n, etale })
        }
    }

    /// A cover ramified over `2n > 0` points.
    pub fn ramified(g_y: u32, n: u32) -> Result<Self, CoverError> {
        CoverData::new(g_y, n, false)
    }

    /// An unramified cover (forces `n = 0`).
    pub fn etale(g_y: u32) -> Result<Self, CoverError> {
        CoverData::new(g_y, 0, true)
    }

    pub fn g_y(&self) -> u32 {
        self.g_y
    }

    /// Half the number of ramification points.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_etale(&self) -> bool {
        self.etale
    }

    /// Genus of the covering curve: `2 g_Y - 1 + n`.
    pub fn genus_upstairs(&self) -> i64 {
        2 * i64::from(self.g_y) - 1 + i64::from(self.n)
    }

    /// Dimension of the invariant sections of the `i`-th canonical power,
    /// `i >= 1`, under the chosen linearization.
    pub fn h0_canonical_power_plus(&self, i: u32, lin: Linearization) -> i64 {
        assert!(i >= 1, "canonical power must be at least 1");
        let g_y = i64::from(self.g_y);
        let n = i64::from(self.n);
        let i = i64::from(i);
        match lin {
            Linearization::Positive => (2 * i - 1) * (g_y - 1) + i * n,
            Linearization::Negative => {
                if i == 1 {
                    g_y
                } else if i % 2 == 0 {
                    (2 * i - 1) * (g_y - 1) + i * n
                } else {
                    (2 * i - 1) * (g_y - 1) + (i - 1) * n
                }
            }
        }
    }

    /// Dimension of the invariant sections of the `k`-th canonical power
    /// twisted down by `i` times one ramification point, under the
    /// negative linearization.
    ///
    /// Valid for ramified covers with `0 <= i <= 2k - 2`; the untwisted
    /// `i = 0` case delegates to [`Self::h0_canonical_power_plus`] and is
    /// the only query allowed at `k = 1`.
    pub fn h0_twisted_plus(&self, k: u32, i: u32) -> Result<i64, CoverError> {
        assert!(k >= 1, "canonical power must be at least 1");
        if i == 0 {
            return Ok(self.h0_canonical_power_plus(k, Linearization::Negative));
        }
        let max = 2 * i64::from(k) - 2;
        if self.n == 0 || i64::from(i) > max || k == 1 {
            return Err(CoverError::OutOfValidityWindow { k, i, max });
        }
        let g_y = i64::from(self.g_y);
        let n = i64::from(self.n);
        let (k, i) = (i64::from(k), i64::from(i));
        let correction = match (k % 2 == 0, i % 2 == 0) {
            (true, true) => k * n - i / 2,
            (true, false) => k * n - (i + 1) / 2,
            (false, true) => (k - 1) * n - i / 2,
            (false, false) => (k - 1) * n - (i - 1) / 2,
        };
        Ok((2 * k - 1) * (g_y - 1) + correction)
    }
}

#[derive(Serialize, Deserialize)]
struct CoverRepr {
    #[serde(rename = "g_Y")]
    g_y: u32,
    n: u32,
    etale: bool,
}

impl Serialize for CoverData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CoverRepr {
            g_y: self.g_y,
            n: self.n,
            etale: self.etale,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoverData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CoverRepr::deserialize(deserializer)?;
        CoverData::new(repr.g_y, repr.n, repr.etale).map_err(D::Error::custom)
    }
}
