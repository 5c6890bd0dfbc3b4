//! Local models of spectral curves at a fiber.
//!
//! A germ of spectral data is the tuple of coefficient sections
//! `s_1, ..., s_r` of a degree-`r` monic polynomial
//! `P(x, t) = x^r + s_1 x^(r-1) + ... + s_r` in a chart around a point of
//! the base curve. Over a ramification point of the double cover the
//! involution acts by `t -> -t` and the chosen linearization constrains
//! the parity of each section. The module answers local questions about
//! the curve `P = 0`: smoothness along the fiber `t = 0`, fixed points of
//! the lifted involution, membership in the distinguished coefficient
//! spaces, and the genus bookkeeping of the associated covers.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{BiPoly, Poly};
use crate::cover::{CoverData, Linearization};

/// Where the chart sits: over a ramification point of the cover, or over
/// an ordinary (unramified) point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Ramified,
    Ordinary,
}

/// The distinguished coefficient spaces for spectral data.
///
/// `WPlus` and `WMinus` live under the positive linearization (`WMinus`
/// adds the square condition on the central fiber); `WMax` and `WTau`
/// live under the negative one (`WTau` adds vanishing conditions at the
/// chart's ramification point for one non-maximal invariant type).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WSpace {
    WPlus,
    WMinus,
    WMax,
    WTau {
        #[serde(rename = "k_p")]
        k_p: u32,
    },
}

impl WSpace {
    /// The linearization the space lives under.
    pub fn linearization(&self) -> Linearization {
        match self {
            WSpace::WPlus | WSpace::WMinus => Linearization::Positive,
            WSpace::WMax | WSpace::WTau { .. } => Linearization::Negative,
        }
    }

    pub fn label(&self) -> String {
        match self {
            WSpace::WPlus => "W+".to_string(),
            WSpace::WMinus => "W-".to_string(),
            WSpace::WMax => "Wmax".to_string(),
            WSpace::WTau { k_p } => format!("Wtau(k_p={k_p})"),
        }
    }
}

/// Errors raised by spectral-germ construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    /// The rank must be at least one.
    #[error("ZeroRank: spectral data needs rank >= 1")]
    ZeroRank,
    /// The number of sections must equal the rank.
    #[error("SectionCount: expected {expected} sections, got {got}")]
    SectionCount { expected: usize, got: usize },
    /// A section violates the parity forced by the chart linearization.
    #[error(
        "SectionParity: section s_{index} violates the parity required by \
         the {lin:?} linearization in a ramified chart"
    )]
    SectionParity { index: usize, lin: Linearization },
    /// The query only makes sense in a ramified chart.
    #[error("WrongChart: query requires a chart at a ramification point")]
    WrongChart,
    /// The queried space lives under the other linearization.
    #[error("LinearizationMismatch: germ is {germ:?} but the space needs {space:?}")]
    LinearizationMismatch {
        germ: Linearization,
        space: Linearization,
    },
    /// The alternating locus is empty: odd rank over a ramified cover.
    #[error("ParityError: odd rank {r} admits no alternating data over a ramified cover")]
    ParityError { r: u32 },
    /// Structurally valid input outside the hypotheses of the request.
    #[error("InadmissibleInput: {reason}")]
    InadmissibleInput { reason: String },
}

impl SpectralError {
    /// Stable machine-readable name, used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            SpectralError::ZeroRank => "ZeroRank",
            SpectralError::SectionCount { .. } => "SectionCount",
            SpectralError::SectionParity { .. } => "SectionParity",
            SpectralError::WrongChart => "WrongChart",
            SpectralError::LinearizationMismatch { .. } => "LinearizationMismatch",
            SpectralError::ParityError { .. } => "ParityError",
            SpectralError::InadmissibleInput { .. } => "InadmissibleInput",
        }
    }
}

/// Spectral data in one chart: sections `s_1, ..., s_r` plus the chart
/// kind and the linearization acting on canonical powers.
///
/// In a ramified chart the constructor enforces the parity each
/// linearization forces on germs of `i`-canonical sections: all sections
/// even for the positive linearization, and `s_i(-t) = (-1)^i s_i(t)` for
/// the negative one. Ordinary charts carry no constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralGerm {
    r: u32,
    sections: Vec<Poly>,
    chart: Chart,
    lin: Linearization,
}

impl SpectralGerm {
    pub fn new(
        r: u32,
        sections: Vec<Poly>,
        chart: Chart,
        lin: Linearization,
    ) -> Result<Self, SpectralError> {
        if r == 0 {
            return Err(SpectralError::ZeroRank);
        }
        if sections.len() != r as usize {
            return Err(SpectralError::SectionCount {
                expected: r as usize,
                got: sections.len(),
            });
        }
        if chart == Chart::Ramified {
            for (idx, s) in sections.iter().enumerate() {
                let i = idx + 1;
                let ok = match lin {
                    Linearization::Positive => s.is_even(),
                    Linearization::Negative => {
                        if i % 2 == 0 {
                            s.is_even()
                        } else {
                            s.is_odd()
                        }
                    }
                };
                if !ok {
                    return Err(SpectralError::SectionParity { index: i, lin });
                }
            }
        }
        Ok(SpectralGerm { r, sections, chart, lin })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The sections `s_1, ..., s_r` in order.
    pub fn sections(&self) -> &[Poly] {
        &self.sections
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn linearization(&self) -> Linearization {
        self.lin
    }

    /// The monic spectral polynomial `x^r + s_1 x^(r-1) + ... + s_r`.
    pub fn spectral_polynomial(&self) -> BiPoly {
        let r = self.r as usize;
        let mut coeffs = vec![Poly::zero(); r + 1];
        coeffs[r] = Poly::one();
        for (idx, s) in self.sections.iter().enumerate() {
            // s_i multiplies x^(r - i).
            coeffs[r - (idx + 1)] = s.clone();
        }
        BiPoly::new(coeffs)
    }

    /// Fixed points of the lifted involution on the fiber `t = 0` of this
    /// ramified chart.
    ///
    /// Under the positive linearization the involution restricts to the
    /// identity on the whole fiber. Under the negative one it acts as
    /// `x -> -x`, so the fixed points are the zeros of `P(x, 0)` at
    /// `x = 0`, counted with multiplicity — the number of trailing
    /// sections vanishing at `t = 0`.
    pub fn fixed_points_on_fiber(&self) -> Result<FiberFixedPoints, SpectralError> {
        if self.chart != Chart::Ramified {
            return Err(SpectralError::WrongChart);
        }
        match self.lin {
            Linearization::Positive => Ok(FiberFixedPoints::FiberwiseIdentity),
            Linearization::Negative => {
                let fiber = self.spectral_polynomial().eval_t0();
                let mult = fiber
                    .vanishing_order()
                    .expect("monic fiber polynomial is nonzero");
                Ok(FiberFixedPoints::Count(mult as u32))
            }
        }
    }

    /// Membership of the germ in one of the distinguished coefficient
    /// spaces, with a certificate.
    ///
    /// Requires a ramified chart and a germ under the space's
    /// linearization. The parity constraints of `WPlus` and `WMax` are
    /// exactly the constructor invariants, so those memberships always
    /// hold; `WMinus` additionally demands that the central fiber
    /// polynomial be a perfect square (certificate: the square root), and
    /// `WTau(k_p)` demands `ord(s_i) >= i - 2 k_p` for `i >= 2 k_p + 2`
    /// (certificate: the vanishing orders).
    pub fn w_membership(&self, space: WSpace) -> Result<WMembership, SpectralError> {
        if self.chart != Chart::Ramified {
            return Err(SpectralError::WrongChart);
        }
        let needed = space.linearization();
        if self.lin != needed {
            return Err(SpectralError::LinearizationMismatch {
                germ: self.lin,
                space: needed,
            });
        }
        let report = match space {
            WSpace::WPlus | WSpace::WMax => WMembership {
                member: true,
                certificate: WCertificate::None,
            },
            WSpace::WMinus => {
                let fiber = self.spectral_polynomial().eval_t0();
                match fiber.square_root() {
                    Ok(root) => WMembership {
                        member: true,
                        certificate: WCertificate::SquareRoot(root),
                    },
                    Err(_) => WMembership {
                        member: false,
                        certificate: WCertificate::None,
                    },
                }
            }
            WSpace::WTau { k_p } => {
                let orders: Vec<Option<usize>> =
                    self.sections.iter().map(Poly::vanishing_order).collect();
                let member = orders.iter().enumerate().all(|(idx, ord)| {
                    let i = (idx + 1) as i64;
                    if i < 2 * i64::from(k_p) + 2 {
                        return true;
                    }
                    let bound = i - 2 * i64::from(k_p);
                    match ord {
                        None => true,
                        Some(o) => *o as i64 >= bound,
                    }
                });
                WMembership {
                    member,
                    certificate: WCertificate::VanishingOrders(orders),
                }
            }
        };
        Ok(report)
    }

    /// Full local report: polynomial, fiber smoothness, involution fixed
    /// points (ramified charts only), and a node certificate when the
    /// central fiber is a perfect square.
    pub fn report(&self) -> SpectralCurveReport {
        let p = self.spectral_polynomial();
        let fiber = fiber_singularity_test(&p);
        let fixed_points = self.fixed_points_on_fiber().ok();
        let node_certificate = if self.chart == Chart::Ramified
            && self.lin == Linearization::Positive
        {
            p.eval_t0().square_root().ok().map(|q| q.radical())
        } else {
            None
        };
        SpectralCurveReport {
            smooth_on_fiber: fiber.smooth,
            singular_fiber_gcd: (!fiber.smooth).then_some(fiber.witness_gcd),
            fixed_points,
            node_certificate,
            spectral_polynomial: p,
        }
    }
}

/// Fixed-point count of the lifted involution on one fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberFixedPoints {
    /// The involution restricts to the identity on the fiber.
    FiberwiseIdentity,
    /// Finitely many fixed points, counted with multiplicity.
    Count(u32),
}

/// Result of a membership query, with its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WMembership {
    pub member: bool,
    pub certificate: WCertificate,
}

/// Evidence attached to a membership verdict. Serializes untagged: the
/// square root as a bare coefficient array, the vanishing orders as an
/// array of integers-or-null, the empty certificate as null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WCertificate {
    None,
    /// Square root of the central fiber polynomial (positive leading
    /// coefficient), for `WMinus`.
    SquareRoot(Poly),
    /// Vanishing order of each section at `t = 0` (`null` for the zero
    /// section), for `WTau`.
    VanishingOrders(Vec<Option<usize>>),
}

/// Smoothness verdict for the fiber `t = 0` of a spectral polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub smooth: bool,
    /// Monic gcd of `P(x,0)`, `dP/dx(x,0)`, `dP/dt(x,0)`; the constant 1
    /// exactly when the fiber is smooth, otherwise its roots are the
    /// singular points of the curve on this fiber.
    pub witness_gcd: Poly,
}

/// Tests the curve `P(x, t) = 0` for singular points along `t = 0`.
///
/// A point `(x0, 0)` is singular precisely when `P`, `dP/dx` and `dP/dt`
/// all vanish there, so the curve is singular on the fiber exactly when
/// the gcd of the three restrictions to `t = 0` has positive degree. This
/// catches singular points at any `x0`, not only at the origin.
///
/// `p` must be monic in `x` of degree at least one.
pub fn fiber_singularity_test(p: &BiPoly) -> FiberReport {
    assert!(
        p.is_monic_in_x() && p.x_degree().unwrap() >= 1,
        "spectral polynomial must be monic of positive degree in x"
    );
    let f = p.eval_t0();
    let fx = p.d_dx().eval_t0();
    let ft = p.d_dt().eval_t0();
    let g = Poly::gcd(&Poly::gcd(&f, &fx), &ft);
    FiberReport {
        smooth: g.degree() == Some(0),
        witness_gcd: g,
    }
}

/// Assembled local data for one germ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralCurveReport {
    pub spectral_polynomial: BiPoly,
    pub smooth_on_fiber: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_fiber_gcd: Option<Poly>,
    /// `None` in ordinary charts, where the involution does not act.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_points: Option<FiberFixedPoints>,
    /// Radical of the square root of the central fiber, when that fiber
    /// is a perfect square: the locus of nodes for generic such data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_certificate: Option<Poly>,
}

/// Which family of spectral data a genus ledger describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusScenario {
    /// Symmetric anti-invariant data: smooth spectral curve, positive
    /// linearization.
    AntiSymmetric,
    /// Alternating anti-invariant data: the central fibers over the
    /// ramification points are squares, so the spectral curve is nodal
    /// there (even rank only, over a ramified cover).
    AntiAlternating,
    /// Invariant data of maximal type: smooth spectral curve, negative
    /// linearization.
    InvariantMax,
    /// Invariant data with exactly one non-maximal point of type `k_p`;
    /// the spectral curve acquires one singular point of multiplicity
    /// `r - 2 k_p` and is resolved by normalization.
    InvariantTau {
        #[serde(rename = "k_p")]
        k_p: u32,
    },
}

/// Genus and dimension bookkeeping for one scenario over one cover.
///
/// All entries are determined by closed formulas; the ledger exists so
/// different routes to the same number can be compared. `g_normalized` and
/// `g_normalized_quotient` are present only in scenarios where the
/// spectral curve is singular and gets normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusLedger {
    /// Arithmetic genus of the spectral curve over `X`.
    pub g_spectral: i64,
    /// Degree of the ramification divisor of the spectral cover.
    pub deg_ram_spectral: i64,
    /// Genus of the quotient of the smooth model of the spectral curve by
    /// the lifted involution.
    pub g_quotient_spectral: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_normalized: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_normalized_quotient: Option<i64>,
    /// Dimension of the abelian variety the relevant fibration has as
    /// fiber (a Prym variety or an invariant Picard locus).
    pub prym_dim: i64,
}

/// Genus of a spectral curve of rank `r` cut out of the total space of a
/// line bundle of degree `deg_l` over a base of genus `g_base`.
pub fn spectral_genus(deg_l: i64, r: u32, g_base: i64) -> i64 {
    let r = i64::from(r);
    deg_l * r * (r - 1) / 2 + r * (g_base - 1) + 1
}

/// Builds the genus ledger for one scenario over one cover.
pub fn genus_ledger(
    c: &CoverData,
    r: u32,
    scenario: GenusScenario,
) -> Result<GenusLedger, SpectralError> {
    if r == 0 {
        return Err(SpectralError::ZeroRank);
    }
    let g_x = c.genus_upstairs();
    let g_y = i64::from(c.g_y());
    let n = i64::from(c.n());
    let rr = i64::from(r);
    let g_spec = spectral_genus(2 * g_x - 2, r, g_x);
    let deg_ram = rr * (rr - 1) * (2 * g_x - 2);
    match scenario {
        GenusScenario::AntiSymmetric => {
            let prym = rr * rr * (g_y - 1) + n * rr * (rr + 1) / 2;
            Ok(GenusLedger {
                g_spectral: g_spec,
                deg_ram_spectral: deg_ram,
                g_quotient_spectral: g_spec - prym,
                g_normalized: None,
                g_normalized_quotient: None,
                prym_dim: prym,
            })
        }
        GenusScenario::AntiAlternating => {
            if r % 2 != 0 && c.n() > 0 {
                return Err(SpectralError::ParityError { r });
            }
            // One node over each of the 2n ramification points of the
            // spectral cover lying over the cover's ramification locus.
            let nodes = rr * n;
            let g_norm = g_spec - nodes;
            let g_quot = (g_norm + 1) / 2;
            debug_assert_eq!((g_norm + 1) % 2, 0);
            Ok(GenusLedger {
                g_spectral: g_spec,
                deg_ram_spectral: deg_ram,
                g_quotient_spectral: g_quot,
                g_normalized: Some(g_norm),
                g_normalized_quotient: Some(g_quot),
                prym_dim: (g_norm - 1) / 2,
            })
        }
        GenusScenario::InvariantMax => {
            // Half the number of fixed points of the lifted involution:
            // none for even rank, one per ramification point for odd.
            let half_fixed = if r % 2 == 0 { 0 } else { n };
            let g_quot = (g_spec + 1 - half_fixed) / 2;
            debug_assert_eq!((g_spec + 1 - half_fixed) % 2, 0);
            Ok(GenusLedger {
                g_spectral: g_spec,
                deg_ram_spectral: deg_ram,
                g_quotient_spectral: g_quot,
                g_normalized: None,
                g_normalized_quotient: None,
                prym_dim: g_quot,
            })
        }
        GenusScenario::InvariantTau { k_p } => {
            if c.n() == 0 {
                return Err(SpectralError::InadmissibleInput {
                    reason: "a non-maximal type needs a ramification point".to_string(),
                });
            }
            if i64::from(k_p) >= rr / 2 {
                return Err(SpectralError::InadmissibleInput {
                    reason: format!("type k_p = {k_p} is not below the maximal type for rank {r}"),
                });
            }
            let kp = i64::from(k_p);
            let delta = rr - 2 * kp;
            let g_norm = g_spec - delta * (delta - 1) / 2;
            let eps = rr % 2;
            // Fixed points of the involution on the normalization: the
            // branches through the resolved singular point, plus one per
            // remaining ramification point in odd rank.
            let fixed = delta + eps * (2 * n - 1);
            let by_hurwitz = (2 * g_norm + 2 - fixed) / 4;
            debug_assert_eq!((2 * g_norm + 2 - fixed) % 4, 0);
            let closed = rr * rr * (g_y - 1) + 1 + (2 * n - 1) * (rr * rr - eps) / 4
                + kp * (rr - kp);
            assert_eq!(by_hurwitz, closed, "quotient genus routes disagree");
            Ok(GenusLedger {
                g_spectral: g_spec,
                deg_ram_spectral: deg_ram,
                g_quotient_spectral: closed,
                g_normalized: Some(g_norm),
                g_normalized_quotient: Some(closed),
                prym_dim: closed,
            })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GermRepr {
    r: u32,
    sections: Vec<Poly>,
    chart: Chart,
    linearization: Linearization,
}

impl Serialize for SpectralGerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GermRepr {
            r: self.r,
            sections: self.sections.clone(),
            chart: self.chart,
            linearization: self.lin,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectralGerm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GermRepr::deserialize(deserializer)?;
        SpectralGerm::new(repr.r, repr.sections, repr.chart, repr.linearization)
            .map_err(D::Error::custom)
    }
}
