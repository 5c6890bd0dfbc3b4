//! Equivariance structures on local Higgs fields.
//!
//! A Higgs germ is a square matrix of polynomials in the chart
//! coordinate `t` at a ramification point, together with one of three
//! structures tying the germ to its pullback under `t -> -t`: a
//! constant symmetric pairing, a constant antisymmetric pairing, or a
//! typed sign involution. The module classifies germs, computes the
//! Hitchin components `H_i = (-1)^i Tr(Λ^i φ)`, checks the parity each
//! structure forces on them, extracts the Pfaffian square root of the
//! characteristic polynomial in the antisymmetric case, and measures
//! vanishing orders in the typed case.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{BiPoly, Poly, PolyMatrix, Rat};

/// The structure a Higgs germ carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    /// `φ(t)ᵀ = S · φ(-t) · S⁻¹` for a constant symmetric invertible `S`.
    Symmetric { s: PolyMatrix },
    /// `φ(t)ᵀ = J · φ(-t) · J⁻¹` for a constant antisymmetric invertible `J`.
    Alternating { j: PolyMatrix },
    /// `φ(-t) = -A · φ(t) · A` with `A = diag(-1 × k_p, +1 × (r - k_p))`.
    InvariantTyped { k_p: u32 },
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Symmetric { .. } => "symmetric",
            Structure::Alternating { .. } => "alternating",
            Structure::InvariantTyped { .. } => "invariant_typed",
        }
    }
}

/// Errors raised while classifying a germ.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HiggsError {
    #[error("NonSquare: Higgs germ must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("DimensionMismatch: structure matrix is {got_rows}x{got_cols}, field is {r}x{r}")]
    DimensionMismatch {
        r: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("StructureMatrixNotConstant: pairing matrix must not depend on t")]
    StructureMatrixNotConstant,
    #[error("StructureMatrixNotSymmetric")]
    StructureMatrixNotSymmetric,
    #[error("StructureMatrixNotAntisymmetric")]
    StructureMatrixNotAntisymmetric,
    #[error("StructureMatrixNotInvertible")]
    StructureMatrixNotInvertible,
    #[error("TypeOutOfRange: k_p = {k_p} exceeds rank {r}")]
    TypeOutOfRange { k_p: u32, r: u32 },
    /// The equivariance identity fails; indices are 1-based and name the
    /// first failing entry in row-major order.
    #[error("StructureViolation: equivariance identity fails first at entry ({row}, {col})")]
    StructureViolation { row: usize, col: usize },
    #[error("WrongStructure: operation needs the {expected} structure")]
    WrongStructure { expected: &'static str },
}

impl HiggsError {
    /// Stable machine-readable name, used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            HiggsError::NonSquare { .. } => "NonSquare",
            HiggsError::DimensionMismatch { .. } => "DimensionMismatch",
            HiggsError::StructureMatrixNotConstant => "StructureMatrixNotConstant",
            HiggsError::StructureMatrixNotSymmetric => "StructureMatrixNotSymmetric",
            HiggsError::StructureMatrixNotAntisymmetric => "StructureMatrixNotAntisymmetric",
            HiggsError::StructureMatrixNotInvertible => "StructureMatrixNotInvertible",
            HiggsError::TypeOutOfRange { .. } => "TypeOutOfRange",
            HiggsError::StructureViolation { .. } => "StructureViolation",
            HiggsError::WrongStructure { .. } => "WrongStructure",
        }
    }
}

/// A classified Higgs germ: the matrix together with a structure it has
/// been verified to satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiggsGerm {
    phi: PolyMatrix,
    structure: Structure,
}

/// Verifies the equivariance identity of `structure` for `phi` and wraps
/// them into a germ.
///
/// The identity is checked entry by entry, exactly; on failure the error
/// names the first offending entry (1-based, row-major).
pub fn classify(phi: PolyMatrix, structure: Structure) -> Result<HiggsGerm, HiggsError> {
    if !phi.is_square() {
        return Err(HiggsError::NonSquare {
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    let r = phi.rows();
    let residual = match &structure {
        Structure::Symmetric { s } => {
            let inv = check_pairing(s, r, true)?;
            &phi.transpose() - &(&(s * &phi.reflect_t()) * &inv)
        }
        Structure::Alternating { j } => {
            let inv = check_pairing(j, r, false)?;
            &phi.transpose() - &(&(j * &phi.reflect_t()) * &inv)
        }
        Structure::InvariantTyped { k_p } => {
            if *k_p as usize > r {
                return Err(HiggsError::TypeOutOfRange {
                    k_p: *k_p,
                    r: r as u32,
                });
            }
            // phi(-t) + A phi(t) A, entrywise: the (i, j) entry of
            // A phi A is eps_i eps_j phi_ij with eps = -1 on the first
            // k_p indices.
            let k = *k_p as usize;
            let mut res = phi.reflect_t();
            for i in 0..r {
                for j in 0..r {
                    let flip = (i < k) ^ (j < k);
                    let term = if flip {
                        -phi.get(i, j).clone()
                    } else {
                        phi.get(i, j).clone()
                    };
                    *res.get_mut(i, j) = res.get(i, j) + &term;
                }
            }
            res
        }
    };
    for i in 0..r {
        for j in 0..r {
            if !residual.get(i, j).is_zero() {
                return Err(HiggsError::StructureViolation {
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
    }
    Ok(HiggsGerm { phi, structure })
}

fn check_pairing(
    m: &PolyMatrix,
    r: usize,
    symmetric: bool,
) -> Result<PolyMatrix, HiggsError> {
    if m.rows() != r || m.cols() != r {
        return Err(HiggsError::DimensionMismatch {
            r,
            got_rows: m.rows(),
            got_cols: m.cols(),
        });
    }
    if !m.is_constant() {
        return Err(HiggsError::StructureMatrixNotConstant);
    }
    if symmetric && !m.is_symmetric() {
        return Err(HiggsError::StructureMatrixNotSymmetric);
    }
    if !symmetric && !m.is_antisymmetric() {
        return Err(HiggsError::StructureMatrixNotAntisymmetric);
    }
    m.constant_inverse()
        .ok_or(HiggsError::StructureMatrixNotInvertible)
}

/// The Hitchin components of a germ, with their observed parities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HitchinImage {
    /// `H_1, ..., H_r` with `det(xI - φ) = x^r + Σ H_i x^(r-i)`.
    pub components: Vec<Poly>,
    /// Whether each `H_i` is an even polynomial in `t`.
    pub parity_flags: Vec<bool>,
}

/// Per-component verdict of the parity forced by a structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentParity {
    /// The index `i` of the component `H_i`.
    pub index: usize,
    /// Whether the structure requires `H_i` to be even (otherwise odd).
    pub required_even: bool,
    pub holds: bool,
}

/// The coefficients `H_1, ..., H_r` of the characteristic polynomial
/// `det(xI - φ) = x^r + Σ H_i x^(r-i)`, so `H_i = (-1)^i Tr(Λ^i φ)`.
///
/// `phi` must be square of positive size.
pub fn hitchin_components(phi: &PolyMatrix) -> Vec<Poly> {
    assert!(phi.is_square() && phi.rows() > 0, "Hitchin map needs a square matrix");
    let r = phi.rows();
    let cp = phi.char_poly().expect("square matrix has a characteristic polynomial");
    (1..=r).map(|i| cp.coeff(r - i)).collect()
}

/// `true` exactly when `φ^r` vanishes, `r` being the matrix size.
///
/// `phi` must be square.
pub fn is_nilpotent(phi: &PolyMatrix) -> bool {
    assert!(phi.is_square(), "nilpotency is asked of square matrices");
    let r = phi.rows();
    if r == 0 {
        return true;
    }
    let power = phi.pow(r as u32);
    (0..r).all(|i| (0..r).all(|j| power.get(i, j).is_zero()))
}

impl HiggsGerm {
    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn r(&self) -> usize {
        self.phi.rows()
    }

    /// The Hitchin components of the germ, with parity flags.
    pub fn hitchin_map(&self) -> HitchinImage {
        let components = hitchin_components(&self.phi);
        let parity_flags = components.iter().map(Poly::is_even).collect();
        HitchinImage {
            components,
            parity_flags,
        }
    }

    /// Checks the parity forced on every Hitchin component by the germ's
    /// structure: all even under the symmetric and alternating pairings,
    /// and `H_i(-t) = (-1)^i H_i(t)` in the typed invariant case.
    ///
    /// A violation is impossible for a classified germ, so it aborts
    /// rather than returning an error.
    pub fn equivariance_parity_check(&self) -> Vec<ComponentParity> {
        let components = hitchin_components(&self.phi);
        let report: Vec<ComponentParity> = components
            .iter()
            .enumerate()
            .map(|(idx, h)| {
                let i = idx + 1;
                let required_even = match self.structure {
                    Structure::Symmetric { .. } | Structure::Alternating { .. } => true,
                    Structure::InvariantTyped { .. } => i % 2 == 0,
                };
                let holds = if required_even { h.is_even() } else { h.is_odd() };
                ComponentParity {
                    index: i,
                    required_even,
                    holds,
                }
            })
            .collect();
        for v in &report {
            assert!(
                v.holds,
                "parity of H_{} violates the {} structure: internal bug",
                v.index,
                self.structure.kind()
            );
        }
        report
    }

    /// Square root of the characteristic polynomial of the central value
    /// `φ(0)` of an alternating germ, as the Pfaffian of `J(φ(0) - xI)`.
    ///
    /// The result `q` is normalized to positive leading coefficient and
    /// satisfies `q(x)² = det(xI - φ(0))` exactly, certifying that the
    /// central fiber of the spectral polynomial is a perfect square.
    pub fn alternating_square_certificate(&self) -> Result<Poly, HiggsError> {
        let j = match &self.structure {
            Structure::Alternating { j } => j,
            _ => {
                return Err(HiggsError::WrongStructure {
                    expected: "alternating",
                })
            }
        };
        let central = central_value(&self.phi);
        pfaffian_square_certificate(&central, j)
    }

    /// Vanishing order at `t = 0` of each Hitchin component (`None` for a
    /// vanishing component), asserting the typed lower bound
    /// `ord(H_i) >= max(0, i - 2 k_p)`.
    pub fn vanishing_order_profile(&self) -> Result<Vec<Option<usize>>, HiggsError> {
        let k_p = match self.structure {
            Structure::InvariantTyped { k_p } => k_p,
            _ => {
                return Err(HiggsError::WrongStructure {
                    expected: "invariant_typed",
                })
            }
        };
        let components = hitchin_components(&self.phi);
        let orders: Vec<Option<usize>> =
            components.iter().map(Poly::vanishing_order).collect();
        for (idx, ord) in orders.iter().enumerate() {
            let bound = invariant_vanishing_bound(k_p, (idx + 1) as u32);
            if let Some(o) = ord {
                assert!(
                    *o >= bound,
                    "H_{} vanishes to order {} < bound {}: internal bug",
                    idx + 1,
                    o,
                    bound
                );
            }
        }
        Ok(orders)
    }
}

/// The guaranteed vanishing order of `H_i` for a typed invariant germ:
/// `max(0, i - 2 k_p)`.
pub fn invariant_vanishing_bound(k_p: u32, i: u32) -> usize {
    i.saturating_sub(2 * k_p) as usize
}

/// Pfaffian square root for a constant twisted matrix: given constant
/// `a` and a constant antisymmetric invertible `j` with `aᵀ j = j a`,
/// returns `q` with positive leading coefficient such that
/// `q(x)² = det(xI - a)`.
pub fn pfaffian_square_certificate(
    a: &PolyMatrix,
    j: &PolyMatrix,
) -> Result<Poly, HiggsError> {
    if !a.is_square() {
        return Err(HiggsError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let r = a.rows();
    check_pairing(j, r, false)?;
    if !a.is_constant() {
        return Err(HiggsError::StructureMatrixNotConstant);
    }
    // The twist a^T j = j a is what makes j(a - xI) antisymmetric.
    if &a.transpose() * j != j * a {
        return Err(HiggsError::StructureViolation { row: 1, col: 1 });
    }
    // Encode x through the polynomial variable: j(a - xI) has entries
    // linear in x, and its Pfaffian is a polynomial in x.
    let x = PolyMatrix::identity(r).scale_poly(&Poly::monomial(1, Rat::from_int(1)));
    let pencil = j * &(a - &x);
    let pf = pencil
        .pfaffian()
        .expect("twisted pencil is antisymmetric of even size");
    let negative_lead = pf.leading().is_some_and(|c| c.is_negative());
    let q = if negative_lead { -&pf } else { pf };
    debug_assert_eq!(&q * &q, constant_char_poly(a));
    Ok(q)
}

/// `φ(0)`: the matrix of constant terms.
fn central_value(phi: &PolyMatrix) -> PolyMatrix {
    phi.map(|p| Poly::constant(p.coeff(0)))
}

/// Characteristic polynomial of a constant matrix, as a polynomial in a
/// single variable.
fn constant_char_poly(a: &PolyMatrix) -> Poly {
    let cp: BiPoly = a.char_poly().expect("square");
    let coeffs: Vec<Rat> = (0..=a.rows()).map(|k| cp.coeff(k).coeff(0)).collect();
    Poly::new(coeffs)
}
