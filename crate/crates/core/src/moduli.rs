//! Dimension dictionary, type combinatorics, and identity sweeps.
//!
//! Every moduli locus in play has a closed dimension formula in the
//! cover invariants `(g_Y, n)` and the rank `r` — often several, arrived
//! at by different routes. This module holds the formulas, the
//! combinatorics of invariant types (canonical forms, enumeration,
//! maximal types), the rank-2 two-torsion orbit computation, a read-only
//! oracle for connected-component counts, and the sweep that checks all
//! dimension identities against each other across a parameter grid.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{CoverData, Linearization};
use crate::spectral::{genus_ledger, spectral_genus, GenusScenario, WSpace};

/// Errors raised by dimension and combinatorics queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    /// The type sum and the degree disagree modulo 2.
    #[error("ParityViolation: sum of type entries is {sum}, degree is {d} (must agree mod 2)")]
    ParityViolation { sum: u32, d: i64 },
    /// The requested locus is empty.
    #[error("EmptyLocus: the anti-invariant minus locus is empty for odd rank {r} over a ramified cover")]
    EmptyLocus { r: u32 },
    /// Structurally valid input outside the hypotheses of the formula.
    #[error("InadmissibleInput: {reason}")]
    InadmissibleInput { reason: String },
    /// The component oracle has no entry for the scenario.
    #[error("UnknownScenario: the component table has no entry for this scenario")]
    UnknownScenario,
    /// The sweep grid exceeds the configured maximum.
    #[error("GridTooLarge: grid has {cells} cells, maximum is {max}")]
    GridTooLarge { cells: u64, max: u64 },
}

impl ModuliError {
    /// Stable machine-readable name, used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            ModuliError::ParityViolation { .. } => "ParityViolation",
            ModuliError::EmptyLocus { .. } => "EmptyLocus",
            ModuliError::InadmissibleInput { .. } => "InadmissibleInput",
            ModuliError::UnknownScenario => "UnknownScenario",
            ModuliError::GridTooLarge { .. } => "GridTooLarge",
        }
    }
}

/// Which anti-invariant locus: the symmetric (+) or alternating (-) one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AntiKind {
    Plus,
    Minus,
}

/// A type: one value `k_p` per ramification point, stored in canonical
/// form — the lexicographically smaller of `(k_p)_p` and `(r - k_p)_p`.
///
/// The flip accounts for the global sign ambiguity of the defining data,
/// and preserves the parity of the sum because the length is even.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InvariantType {
    r: u32,
    ks: Vec<u32>,
}

impl InvariantType {
    /// Builds a type, canonicalizing. Entries must satisfy `k_p <= r` and
    /// the number of entries must be even (one per ramification point).
    pub fn new(r: u32, ks: Vec<u32>) -> Result<Self, ModuliError> {
        if ks.len() % 2 != 0 {
            return Err(ModuliError::InadmissibleInput {
                reason: format!(
                    "a type has one entry per ramification point, so an even number, got {}",
                    ks.len()
                ),
            });
        }
        if let Some(bad) = ks.iter().find(|&&k| k > r) {
            return Err(ModuliError::InadmissibleInput {
                reason: format!("type entry {bad} exceeds rank {r}"),
            });
        }
        Ok(InvariantType {
            r,
            ks: canonical_ks(r, ks),
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The canonical entries `(k_p)_p`.
    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    pub fn sum(&self) -> u32 {
        self.ks.iter().sum()
    }

    /// Whether every entry lies in the maximal set: `{r/2}` for even
    /// rank, `{(r-1)/2, (r+1)/2}` for odd.
    pub fn is_maximal(&self) -> bool {
        let max = maximal_ks(self.r);
        self.ks.iter().all(|k| max.contains(k))
    }
}

fn canonical_ks(r: u32, ks: Vec<u32>) -> Vec<u32> {
    let flipped: Vec<u32> = ks.iter().map(|&k| r - k).collect();
    if flipped < ks {
        flipped
    } else {
        ks
    }
}

/// The entries a maximal type may use at each point.
pub fn maximal_ks(r: u32) -> Vec<u32> {
    if r % 2 == 0 {
        vec![r / 2]
    } else {
        vec![(r - 1) / 2, (r + 1) / 2]
    }
}

/// A sign vector over the ramification points, stored as the
/// lexicographically smaller of itself and its negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SignType {
    signs: Vec<i8>,
}

impl SignType {
    /// Entries must be +1 or -1, one per ramification point.
    pub fn new(signs: Vec<i8>) -> Result<Self, ModuliError> {
        if signs.len() % 2 != 0 {
            return Err(ModuliError::InadmissibleInput {
                reason: format!(
                    "a sign type has one entry per ramification point, so an even number, got {}",
                    signs.len()
                ),
            });
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(ModuliError::InadmissibleInput {
                reason: "sign entries must be +1 or -1".to_string(),
            });
        }
        let negated: Vec<i8> = signs.iter().map(|s| -s).collect();
        Ok(SignType {
            signs: signs.min(negated),
        })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Dimension of the invariant locus for a type, degree pair.
///
/// The formula is `r^2 (g_Y - 1) + 1 + sum_p k_p (r - k_p)`, losing the
/// `+1` and one `(g_Y - 1)` factor pair in the fixed-determinant variant
/// `(r^2 - 1)(g_Y - 1) + sum_p k_p (r - k_p)`. The degree enters only
/// through the parity constraint `sum_p k_p = d (mod 2)`.
pub fn dim_invariant_locus(
    c: &CoverData,
    t: &InvariantType,
    d: i64,
    fixed_det: bool,
) -> Result<i64, ModuliError> {
    if t.ks().len() != 2 * c.n() as usize {
        return Err(ModuliError::InadmissibleInput {
            reason: format!(
                "type has {} entries but the cover has {} ramification points",
                t.ks().len(),
                2 * c.n()
            ),
        });
    }
    let sum = t.sum();
    if i64::from(sum % 2) != d.rem_euclid(2) {
        return Err(ModuliError::ParityViolation { sum, d });
    }
    let r = i64::from(t.r());
    let g = i64::from(c.g_y());
    let pairing: i64 = t
        .ks()
        .iter()
        .map(|&k| i64::from(k) * (r - i64::from(k)))
        .sum();
    let base = if fixed_det {
        (r * r - 1) * (g - 1)
    } else {
        r * r * (g - 1) + 1
    };
    Ok(base + pairing)
}

/// Dimension of the anti-invariant locus of the given kind.
///
/// Plus: `r^2 (g_Y - 1) + n r (r + 1) / 2`. Minus:
/// `r^2 (g_Y - 1) + n r (r - 1) / 2`, empty for odd rank over a ramified
/// cover.
pub fn dim_anti_invariant(c: &CoverData, r: u32, kind: AntiKind) -> Result<i64, ModuliError> {
    if r == 0 {
        return Err(ModuliError::InadmissibleInput {
            reason: "rank must be at least 1".to_string(),
        });
    }
    let rr = i64::from(r);
    let g = i64::from(c.g_y());
    let n = i64::from(c.n());
    match kind {
        AntiKind::Plus => Ok(rr * rr * (g - 1) + n * rr * (rr + 1) / 2),
        AntiKind::Minus => {
            if r % 2 != 0 && c.n() > 0 {
                return Err(ModuliError::EmptyLocus { r });
            }
            Ok(rr * rr * (g - 1) + n * rr * (rr - 1) / 2)
        }
    }
}

/// Dimension of one of the distinguished coefficient spaces.
pub fn dim_w_space(c: &CoverData, r: u32, which: WSpace) -> Result<i64, ModuliError> {
    if r == 0 {
        return Err(ModuliError::InadmissibleInput {
            reason: "rank must be at least 1".to_string(),
        });
    }
    let rr = i64::from(r);
    let g = i64::from(c.g_y());
    let n = i64::from(c.n());
    match which {
        WSpace::WPlus => Ok(rr * rr * (g - 1) + n * rr * (rr + 1) / 2),
        WSpace::WMinus => {
            if r % 2 != 0 && c.n() > 0 {
                return Err(ModuliError::InadmissibleInput {
                    reason: format!(
                        "the minus space needs even rank over a ramified cover, got rank {r}"
                    ),
                });
            }
            let plus = rr * rr * (g - 1) + n * rr * (rr + 1) / 2;
            Ok(plus - rr * n)
        }
        WSpace::WMax => Ok(dim_w_max(c, r)),
        WSpace::WTau { k_p } => {
            if c.n() == 0 {
                return Err(ModuliError::InadmissibleInput {
                    reason: "a non-maximal type needs a ramification point".to_string(),
                });
            }
            if k_p >= r / 2 {
                return Err(ModuliError::InadmissibleInput {
                    reason: format!(
                        "k_p = {k_p} is not below the maximal type for rank {r}"
                    ),
                });
            }
            let drop: i64 = (1..=(rr - 2 * i64::from(k_p) - 1)).map(|i| (i + 1) / 2).sum();
            Ok(dim_w_max(c, r) - drop)
        }
    }
}

fn dim_w_max(c: &CoverData, r: u32) -> i64 {
    let rr = i64::from(r);
    let g = i64::from(c.g_y());
    let n = i64::from(c.n());
    if r % 2 == 0 {
        rr * rr * (g - 1) + n * rr * rr / 2 + 1
    } else {
        rr * rr * (g - 1) + n * (rr * rr - 1) / 2 + 1
    }
}

/// All canonical types of the given parity class; with `maximal_only`,
/// only those drawing every entry from the maximal set.
///
/// The cover must be ramified. The full enumeration walks the whole
/// product space `(0..=r)^(2n)`, so it is only feasible for small `r`
/// and `n`; the maximal enumeration walks at most `2^(2n)` vectors.
pub fn enumerate_types(
    c: &CoverData,
    r: u32,
    d: i64,
    maximal_only: bool,
) -> Vec<InvariantType> {
    assert!(c.n() >= 1, "type enumeration needs a ramification point");
    let points = 2 * c.n() as usize;
    let choices: Vec<u32> = if maximal_only {
        maximal_ks(r)
    } else {
        (0..=r).collect()
    };
    let want_parity = d.rem_euclid(2) as u32;
    let mut seen = BTreeSet::new();
    let mut stack = vec![(Vec::with_capacity(points), 0u32)];
    while let Some((prefix, sum)) = stack.pop() {
        if prefix.len() == points {
            if sum % 2 == want_parity {
                seen.insert(canonical_ks(r, prefix));
            }
            continue;
        }
        for &k in &choices {
            let mut next = prefix.clone();
            next.push(k);
            stack.push((next, sum + k));
        }
    }
    seen.into_iter()
        .map(|ks| InvariantType { r, ks })
        .collect()
}

/// Orbit structure of the two-torsion action on the connected components
/// of the rank-2 fixed-determinant alternating locus.
///
/// Components are modeled by sign vectors of length `2n` modulo global
/// negation; the acting group is the even-weight sign vectors modulo
/// global negation, acting componentwise. Both the number of component
/// classes and the number of orbits are computed exhaustively.
pub fn p2_orbits_rank2(n: u32) -> (u64, u64) {
    assert!((1..=8).contains(&n), "orbit computation supports 1 <= n <= 8");
    let bits = 2 * n;
    let full: u32 = (1u32 << bits) - 1;
    let canon = |m: u32| m.min(m ^ full);
    let reps: Vec<u32> = (0..=full).filter(|&m| canon(m) == m).collect();
    // Weight-2 vectors generate the even-weight group.
    let mut gens = Vec::new();
    for i in 0..bits {
        for j in (i + 1)..bits {
            gens.push((1u32 << i) | (1u32 << j));
        }
    }
    let mut visited: HashSet<u32> = HashSet::new();
    let mut orbit_count = 0u64;
    for &rep in &reps {
        if visited.contains(&rep) {
            continue;
        }
        orbit_count += 1;
        let mut queue = VecDeque::from([rep]);
        visited.insert(rep);
        while let Some(cur) = queue.pop_front() {
            for &g in &gens {
                let next = canon(cur ^ g);
                if visited.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    (orbit_count, reps.len() as u64)
}

/// A scenario the component oracle knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum OracleScenario {
    AntiInvariant {
        kind: AntiKind,
        etale: bool,
        r_even: bool,
    },
    FixedDeterminantSymmetric,
    FixedDeterminantAlternatingRankTwo { n: u32 },
}

/// Connected-component count of a locus, as the structure theorems state
/// it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentAnswer {
    Irreducible,
    Components(u64),
    Empty,
}

/// Read-only lookup of the component structure theorems. Nothing is
/// computed; the table restates what is proved elsewhere.
pub fn component_oracle(scenario: &OracleScenario) -> Result<ComponentAnswer, ModuliError> {
    match *scenario {
        OracleScenario::AntiInvariant { etale: true, .. } => Ok(ComponentAnswer::Components(2)),
        OracleScenario::AntiInvariant {
            kind: AntiKind::Plus,
            etale: false,
            ..
        } => Ok(ComponentAnswer::Irreducible),
        OracleScenario::AntiInvariant {
            kind: AntiKind::Minus,
            etale: false,
            r_even,
        } => Ok(if r_even {
            ComponentAnswer::Components(2)
        } else {
            ComponentAnswer::Empty
        }),
        OracleScenario::FixedDeterminantSymmetric => Ok(ComponentAnswer::Irreducible),
        OracleScenario::FixedDeterminantAlternatingRankTwo { n } => {
            if n == 0 {
                return Err(ModuliError::UnknownScenario);
            }
            Ok(ComponentAnswer::Components(1u64 << (2 * n - 1)))
        }
    }
}

/// Inclusive parameter ranges for the identity sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepGrid {
    /// Inclusive range of base genera.
    pub g_y: (u32, u32),
    /// Inclusive range of half-numbers of ramification points.
    pub n: (u32, u32),
    /// Inclusive range of ranks.
    pub r: (u32, u32),
}

impl SweepGrid {
    /// The default grid: `g_Y` in 1..=5, `n` in 1..=6, `r` in 1..=8.
    pub fn default_grid() -> Self {
        SweepGrid {
            g_y: (1, 5),
            n: (1, 6),
            r: (1, 8),
        }
    }

    pub fn cells(&self) -> u64 {
        let span = |(lo, hi): (u32, u32)| u64::from(hi.saturating_sub(lo)) + 1;
        span(self.g_y) * span(self.n) * span(self.r)
    }

    fn validate(&self) -> Result<(), ModuliError> {
        for (label, (lo, hi)) in [("g_y", self.g_y), ("n", self.n), ("r", self.r)] {
            if lo > hi {
                return Err(ModuliError::InadmissibleInput {
                    reason: format!("empty {label} range {lo}..{hi}"),
                });
            }
        }
        if self.r.0 == 0 {
            return Err(ModuliError::InadmissibleInput {
                reason: "rank range must start at 1 or higher".to_string(),
            });
        }
        Ok(())
    }
}

/// One failed identity instance: the cell, the identity's name, and the
/// two sides rendered as text (a side may be "empty").
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub g_y: u32,
    pub n: u32,
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_p: Option<u32>,
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an identity sweep. `failures` holds the counterexample
/// cell's failed identities and is empty exactly when the sweep passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub grid: SweepGrid,
    pub cells: u64,
    /// Grid cells skipped because the cover parameters are inadmissible.
    pub skipped_cells: u64,
    /// Total identity instances compared.
    pub checks: u64,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Markdown rendering: a summary row on success, one row per failed
    /// identity otherwise.
    pub fn to_markdown(&self) -> String {
        if self.passed() {
            let mut out = String::from("| result | cells | checks |\n|---|---|---|\n");
            out.push_str(&format!(
                "| all identities pass | {} | {} |\n",
                self.cells, self.checks
            ));
            return out;
        }
        let mut out = String::from(
            "| g_Y | n | r | k_p | identity | lhs | rhs |\n|---|---|---|---|---|---|---|\n",
        );
        for f in &self.failures {
            let kp = f.k_p.map_or("-".to_string(), |k| k.to_string());
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                f.g_y, f.n, f.r, kp, f.identity, f.lhs, f.rhs
            ));
        }
        out
    }
}

/// A dimension value in a report: a number, or an empty locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimValue {
    Dim(i64),
    Empty,
}

impl DimValue {
    fn render(&self) -> String {
        match self {
            DimValue::Dim(v) => v.to_string(),
            DimValue::Empty => "empty".to_string(),
        }
    }
}

/// A labeled dimension table with its internal consistency checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub rows: Vec<DimRow>,
    pub equality_checks: Vec<EqualityCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub label: String,
    pub dim: DimValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityCheck {
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl DimReport {
    pub fn all_pass(&self) -> bool {
        self.equality_checks.iter().all(|c| c.pass)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| space | dim |\n|---|---|\n");
        for row in &self.rows {
            out.push_str(&format!("| {} | {} |\n", row.label, row.dim.render()));
        }
        if !self.equality_checks.is_empty() {
            out.push_str("\n| check | status |\n|---|---|\n");
            for c in &self.equality_checks {
                let status = if c.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("| {} = {} | {} |\n", c.lhs, c.rhs, status));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,dim\n");
        for row in &self.rows {
            out.push_str(&format!("{},{}\n", row.label, row.dim.render()));
        }
        out
    }
}

/// The full dimension table for one cover and rank: every space with a
/// dimension formula, each cross-checked against its dimension-equal
/// partners.
pub fn full_dim_report(c: &CoverData, r: u32) -> Result<DimReport, ModuliError> {
    if r == 0 {
        return Err(ModuliError::InadmissibleInput {
            reason: "rank must be at least 1".to_string(),
        });
    }
    let mut rows = Vec::new();
    let mut checks = Vec::new();

    let w_plus = DimValue::Dim(dim_w_space(c, r, WSpace::WPlus)?);
    let u_plus = DimValue::Dim(dim_anti_invariant(c, r, AntiKind::Plus)?);
    let p_plus = match genus_ledger(c, r, GenusScenario::AntiSymmetric) {
        Ok(l) => DimValue::Dim(l.prym_dim),
        Err(_) => DimValue::Empty,
    };
    rows.push(DimRow { label: "W+".into(), dim: w_plus });
    rows.push(DimRow { label: "U+".into(), dim: u_plus });
    rows.push(DimRow { label: "P+".into(), dim: p_plus });
    checks.push(EqualityCheck {
        lhs: "W+".into(),
        rhs: "U+".into(),
        pass: w_plus == u_plus,
    });
    checks.push(EqualityCheck {
        lhs: "U+".into(),
        rhs: "P+".into(),
        pass: u_plus == p_plus,
    });

    let w_minus = match dim_w_space(c, r, WSpace::WMinus) {
        Ok(v) => DimValue::Dim(v),
        Err(_) => DimValue::Empty,
    };
    let u_minus = match dim_anti_invariant(c, r, AntiKind::Minus) {
        Ok(v) => DimValue::Dim(v),
        Err(ModuliError::EmptyLocus { .. }) => DimValue::Empty,
        Err(e) => return Err(e),
    };
    let p_minus = match genus_ledger(c, r, GenusScenario::AntiAlternating) {
        Ok(l) => DimValue::Dim(l.prym_dim),
        Err(_) => DimValue::Empty,
    };
    rows.push(DimRow { label: "W-".into(), dim: w_minus });
    rows.push(DimRow { label: "U-".into(), dim: u_minus });
    rows.push(DimRow { label: "P-".into(), dim: p_minus });
    checks.push(EqualityCheck {
        lhs: "W-".into(),
        rhs: "U-".into(),
        pass: w_minus == u_minus,
    });
    checks.push(EqualityCheck {
        lhs: "U-".into(),
        rhs: "P-".into(),
        pass: u_minus == p_minus,
    });

    let w_max = DimValue::Dim(dim_w_space(c, r, WSpace::WMax)?);
    let u_max = DimValue::Dim(dim_invariant_max(c, r)?);
    rows.push(DimRow { label: "Wmax".into(), dim: w_max });
    rows.push(DimRow { label: "Umax".into(), dim: u_max });
    checks.push(EqualityCheck {
        lhs: "Wmax".into(),
        rhs: "Umax".into(),
        pass: w_max == u_max,
    });

    if c.n() >= 1 {
        for k_p in 0..(r / 2) {
            let w_tau = DimValue::Dim(dim_w_space(c, r, WSpace::WTau { k_p })?);
            let u_tau = DimValue::Dim(dim_invariant_single_non_max(c, r, k_p)?);
            rows.push(DimRow {
                label: format!("Wtau(k_p={k_p})"),
                dim: w_tau,
            });
            rows.push(DimRow {
                label: format!("Utau(k_p={k_p})"),
                dim: u_tau,
            });
            checks.push(EqualityCheck {
                lhs: format!("Wtau(k_p={k_p})"),
                rhs: format!("Utau(k_p={k_p})"),
                pass: w_tau == u_tau,
            });
        }
    }
    Ok(DimReport {
        rows,
        equality_checks: checks,
    })
}

/// Dimension of the invariant locus for a maximal type (any choice — the
/// pairing term is the same for all of them).
fn dim_invariant_max(c: &CoverData, r: u32) -> Result<i64, ModuliError> {
    let k = if r % 2 == 0 { r / 2 } else { (r - 1) / 2 };
    let ks = vec![k; 2 * c.n() as usize];
    let t = InvariantType::new(r, ks)?;
    let d = i64::from(t.sum() % 2);
    dim_invariant_locus(c, &t, d, false)
}

/// Dimension of the invariant locus for a type that is maximal at all
/// ramification points except one, where it is `k_p`.
fn dim_invariant_single_non_max(c: &CoverData, r: u32, k_p: u32) -> Result<i64, ModuliError> {
    let max = if r % 2 == 0 { r / 2 } else { (r - 1) / 2 };
    let mut ks = vec![max; 2 * c.n() as usize];
    ks[0] = k_p;
    let t = InvariantType::new(r, ks)?;
    let d = i64::from(t.sum() % 2);
    dim_invariant_locus(c, &t, d, false)
}

fn sum_h0(c: &CoverData, r: u32, lin: Linearization) -> i64 {
    (1..=r).map(|i| c.h0_canonical_power_plus(i, lin)).sum()
}

/// The section-count route to the `Wtau` dimension: unconstrained powers
/// contribute their plain counts, constrained powers the twisted ones.
fn sum_h0_tau(c: &CoverData, r: u32, k_p: u32) -> i64 {
    (1..=r)
        .map(|i| {
            if i <= 2 * k_p + 1 {
                c.h0_canonical_power_plus(i, Linearization::Negative)
            } else {
                c.h0_twisted_plus(i, i - 2 * k_p - 1)
                    .expect("twist index is inside the validity window")
            }
        })
        .sum()
}

struct CellOutcome {
    checks: u64,
    failures: Vec<SweepFailure>,
    skipped: bool,
}

/// Runs every dimension identity on every grid cell.
///
/// Cells whose cover parameters are inadmissible are skipped and
/// counted. On the first cell with a failing identity, the sweep stops
/// scanning further cells and reports that cell's failures as the
/// counterexample.
pub fn identity_sweep(grid: &SweepGrid, max_cells: u64) -> Result<SweepReport, ModuliError> {
    grid.validate()?;
    let cells = grid.cells();
    if cells > max_cells {
        return Err(ModuliError::GridTooLarge {
            cells,
            max: max_cells,
        });
    }
    let mut coords = Vec::with_capacity(cells as usize);
    for g_y in grid.g_y.0..=grid.g_y.1 {
        for n in grid.n.0..=grid.n.1 {
            for r in grid.r.0..=grid.r.1 {
                coords.push((g_y, n, r));
            }
        }
    }
    let outcomes: Vec<CellOutcome> = coords
        .par_iter()
        .map(|&(g_y, n, r)| sweep_cell(g_y, n, r))
        .collect();
    let mut checks = 0u64;
    let mut skipped = 0u64;
    let mut failures = Vec::new();
    for outcome in outcomes {
        checks += outcome.checks;
        if outcome.skipped {
            skipped += 1;
        }
        if !outcome.failures.is_empty() {
            failures = outcome.failures;
            break;
        }
    }
    Ok(SweepReport {
        grid: *grid,
        cells,
        skipped_cells: skipped,
        checks,
        failures,
    })
}

fn sweep_cell(g_y: u32, n: u32, r: u32) -> CellOutcome {
    let cover = match CoverData::new(g_y, n, n == 0) {
        Ok(c) => c,
        Err(_) => {
            return CellOutcome {
                checks: 0,
                failures: Vec::new(),
                skipped: true,
            }
        }
    };
    let mut checks = 0u64;
    let mut failures = Vec::new();
    let mut check = |k_p: Option<u32>, identity: &str, lhs: DimValue, rhs: DimValue| {
        checks += 1;
        if lhs != rhs {
            failures.push(SweepFailure {
                g_y,
                n,
                r,
                k_p,
                identity: identity.to_string(),
                lhs: lhs.render(),
                rhs: rhs.render(),
            });
        }
    };
    let dim = DimValue::Dim;
    fn or_empty<E>(v: Result<i64, E>) -> DimValue {
        v.map(DimValue::Dim).unwrap_or(DimValue::Empty)
    }

    // Family 1: the plus coefficient space against the plus locus, with
    // the section-count route as a second witness.
    let w_plus = dim_w_space(&cover, r, WSpace::WPlus).expect("plus space always defined");
    let u_plus = dim_anti_invariant(&cover, r, AntiKind::Plus).expect("plus locus always defined");
    check(None, "dim W+ = dim U+", dim(w_plus), dim(u_plus));
    check(
        None,
        "dim W+ = sum of invariant section counts",
        dim(w_plus),
        dim(sum_h0(&cover, r, Linearization::Positive)),
    );

    // Family 2: the minus coefficient space against the minus locus
    // (both empty in the odd ramified case), and the alternating Prym.
    let w_minus = or_empty(dim_w_space(&cover, r, WSpace::WMinus));
    let u_minus = or_empty(dim_anti_invariant(&cover, r, AntiKind::Minus));
    check(None, "dim W- = dim U-", w_minus, u_minus);
    let p_minus = or_empty(
        genus_ledger(&cover, r, GenusScenario::AntiAlternating).map(|l| l.prym_dim),
    );
    check(None, "dim U- = alternating prym dimension", u_minus, p_minus);

    // Family 3: the maximal-type space against the maximal invariant
    // locus and the maximal-type Prym, with the section-count route.
    let w_max = dim_w_space(&cover, r, WSpace::WMax).expect("max space always defined");
    let u_max = dim_invariant_max(&cover, r).expect("maximal type is parity-consistent");
    check(None, "dim Wmax = dim Umax", dim(w_max), dim(u_max));
    let p_max = genus_ledger(&cover, r, GenusScenario::InvariantMax)
        .expect("max scenario always defined")
        .prym_dim;
    check(None, "dim Umax = maximal-type prym dimension", dim(u_max), dim(p_max));
    check(
        None,
        "dim Wmax = sum of anti-invariant section counts",
        dim(w_max),
        dim(sum_h0(&cover, r, Linearization::Negative)),
    );

    // Family 5: the symmetric Prym against the plus locus, plus two
    // genus routes to the same quotient.
    let sym = genus_ledger(&cover, r, GenusScenario::AntiSymmetric)
        .expect("symmetric scenario always defined");
    check(None, "symmetric prym dimension = dim U+", dim(sym.prym_dim), dim(u_plus));
    check(
        None,
        "symmetric prym = (g_spectral - 1 + rn)/2",
        dim(sym.prym_dim),
        dim((sym.g_spectral - 1 + i64::from(r) * i64::from(n)) / 2),
    );
    check(
        None,
        "quotient genus = downstairs spectral genus",
        dim(sym.g_quotient_spectral),
        dim(spectral_genus(
            2 * i64::from(g_y) - 2 + i64::from(n),
            r,
            i64::from(g_y),
        )),
    );

    // Families 4 and 6 need a non-maximal type, so a ramification point.
    if n >= 1 {
        for k_p in 0..(r / 2) {
            let w_tau =
                dim_w_space(&cover, r, WSpace::WTau { k_p }).expect("k_p below maximal");
            let u_tau = dim_invariant_single_non_max(&cover, r, k_p)
                .expect("single-non-max type is parity-consistent");
            check(Some(k_p), "dim Wtau = dim Utau", dim(w_tau), dim(u_tau));
            check(
                Some(k_p),
                "dim Wtau = sum of twisted section counts",
                dim(w_tau),
                dim(sum_h0_tau(&cover, r, k_p)),
            );
            let tau = genus_ledger(&cover, r, GenusScenario::InvariantTau { k_p })
                .expect("tau scenario defined below maximal");
            check(
                Some(k_p),
                "tau quotient genus = dim Utau",
                dim(tau.prym_dim),
                dim(u_tau),
            );
        }
    }

    CellOutcome {
        checks,
        failures,
        skipped: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover() -> CoverData {
        CoverData::ramified(2, 1).unwrap()
    }

    #[test]
    fn invariant_locus_dimensions() {
        let t = InvariantType::new(2, vec![1, 1]).unwrap();
        assert_eq!(dim_invariant_locus(&cover(), &t, 0, false).unwrap(), 7);
        assert_eq!(dim_invariant_locus(&cover(), &t, 0, true).unwrap(), 5);
        let odd = InvariantType::new(2, vec![1, 0]).unwrap();
        assert_eq!(
            dim_invariant_locus(&cover(), &odd, 0, false).unwrap_err(),
            ModuliError::ParityViolation { sum: 1, d: 0 }
        );
        // The same type is fine for odd degree.
        assert_eq!(dim_invariant_locus(&cover(), &odd, 1, false).unwrap(), 6);
        assert_eq!(dim_invariant_locus(&cover(), &odd, -3, false).unwrap(), 6);
    }

    #[test]
    fn anti_invariant_dimensions() {
        assert_eq!(dim_anti_invariant(&cover(), 2, AntiKind::Plus).unwrap(), 7);
        assert_eq!(dim_anti_invariant(&cover(), 2, AntiKind::Minus).unwrap(), 5);
        assert_eq!(
            dim_anti_invariant(&cover(), 3, AntiKind::Minus).unwrap_err(),
            ModuliError::EmptyLocus { r: 3 }
        );
        // Etale covers have a minus locus in every rank.
        let e = CoverData::etale(2).unwrap();
        assert_eq!(dim_anti_invariant(&e, 3, AntiKind::Minus).unwrap(), 9);
    }

    #[test]
    fn w_space_dimensions() {
        let c = cover();
        assert_eq!(dim_w_space(&c, 2, WSpace::WPlus).unwrap(), 7);
        assert_eq!(dim_w_space(&c, 2, WSpace::WMinus).unwrap(), 5);
        assert_eq!(dim_w_space(&c, 2, WSpace::WMax).unwrap(), 7);
        assert_eq!(dim_w_space(&c, 2, WSpace::WTau { k_p: 0 }).unwrap(), 6);
        assert!(dim_w_space(&c, 3, WSpace::WMinus).is_err());
        assert!(dim_w_space(&c, 2, WSpace::WTau { k_p: 1 }).is_err());
        let e = CoverData::etale(2).unwrap();
        assert_eq!(
            dim_w_space(&e, 3, WSpace::WMinus).unwrap(),
            dim_w_space(&e, 3, WSpace::WPlus).unwrap()
        );
    }

    #[test]
    fn w_tau_two_routes_agree() {
        for g_y in 1..=4 {
            for n in 1..=4 {
                let c = CoverData::ramified(g_y, n).unwrap();
                for r in 2..=8 {
                    for k_p in 0..(r / 2) {
                        assert_eq!(
                            dim_w_space(&c, r, WSpace::WTau { k_p }).unwrap(),
                            sum_h0_tau(&c, r, k_p),
                            "cell g_Y={g_y} n={n} r={r} k_p={k_p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn canonicalization_is_idempotent_and_parity_safe() {
        let t = InvariantType::new(3, vec![2, 2, 1, 2]).unwrap();
        assert_eq!(t.ks(), &[1, 1, 2, 1]);
        let again = InvariantType::new(3, t.ks().to_vec()).unwrap();
        assert_eq!(again, t);
        // Flipping preserves the parity of the sum.
        assert_eq!(t.sum() % 2, (2 + 2 + 1 + 2) % 2);
        assert!(InvariantType::new(2, vec![3, 0]).is_err());
        assert!(InvariantType::new(2, vec![1, 1, 1]).is_err());
    }

    #[test]
    fn enumerate_small_type_tables() {
        let c = cover();
        let all = enumerate_types(&c, 2, 0, false);
        let ks: Vec<&[u32]> = all.iter().map(|t| t.ks()).collect();
        assert_eq!(ks, vec![&[0, 0][..], &[0, 2][..], &[1, 1][..]]);
        let max = enumerate_types(&c, 2, 0, true);
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].ks(), &[1, 1]);
        let c2 = CoverData::ramified(2, 2).unwrap();
        assert_eq!(enumerate_types(&c2, 3, 0, true).len(), 4);
    }

    #[test]
    fn maximal_counts_for_odd_rank() {
        for n in 1..=4u32 {
            let c = CoverData::ramified(1, n).unwrap();
            for r in [3u32, 5, 7] {
                let count = enumerate_types(&c, r, 0, true).len() as u64;
                assert_eq!(count, 1u64 << (2 * (n - 1)), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(p2_orbits_rank2(1), (2, 2));
        assert_eq!(p2_orbits_rank2(2), (2, 8));
        assert_eq!(p2_orbits_rank2(3), (2, 32));
    }

    #[test]
    fn sign_type_canonical() {
        let s = SignType::new(vec![1, -1]).unwrap();
        assert_eq!(s.signs(), &[-1, 1]);
        assert!(SignType::new(vec![0, 1]).is_err());
        assert!(SignType::new(vec![1, 1, 1]).is_err());
    }

    #[test]
    fn oracle_table() {
        use ComponentAnswer::*;
        let anti = |kind, etale, r_even| OracleScenario::AntiInvariant { kind, etale, r_even };
        assert_eq!(
            component_oracle(&anti(AntiKind::Plus, false, true)).unwrap(),
            Irreducible
        );
        assert_eq!(
            component_oracle(&anti(AntiKind::Minus, false, true)).unwrap(),
            Components(2)
        );
        assert_eq!(
            component_oracle(&anti(AntiKind::Minus, false, false)).unwrap(),
            Empty
        );
        assert_eq!(
            component_oracle(&anti(AntiKind::Plus, true, false)).unwrap(),
            Components(2)
        );
        assert_eq!(
            component_oracle(&OracleScenario::FixedDeterminantSymmetric).unwrap(),
            Irreducible
        );
        assert_eq!(
            component_oracle(&OracleScenario::FixedDeterminantAlternatingRankTwo { n: 2 })
                .unwrap(),
            Components(8)
        );
        assert_eq!(
            component_oracle(&OracleScenario::FixedDeterminantAlternatingRankTwo { n: 0 })
                .unwrap_err(),
            ModuliError::UnknownScenario
        );
    }

    #[test]
    fn sweep_single_cell_and_grid_bound() {
        let grid = SweepGrid {
            g_y: (2, 2),
            n: (1, 1),
            r: (2, 2),
        };
        let report = identity_sweep(&grid, 10).unwrap();
        assert!(report.passed());
        assert_eq!(report.cells, 1);
        assert!(report.checks >= 10);
        assert!(report.to_markdown().contains("all identities pass"));
        assert_eq!(
            identity_sweep(&SweepGrid::default_grid(), 10).unwrap_err(),
            ModuliError::GridTooLarge { cells: 240, max: 10 }
        );
    }

    #[test]
    fn full_report_matches_frozen_example() {
        let report = full_dim_report(&cover(), 2).unwrap();
        assert!(report.all_pass());
        let get = |label: &str| {
            report
                .rows
                .iter()
                .find(|row| row.label == label)
                .unwrap()
                .dim
        };
        assert_eq!(get("W+"), DimValue::Dim(7));
        assert_eq!(get("U+"), DimValue::Dim(7));
        assert_eq!(get("P+"), DimValue::Dim(7));
        assert_eq!(get("W-"), DimValue::Dim(5));
        assert_eq!(get("U-"), DimValue::Dim(5));
        assert_eq!(get("Wtau(k_p=0)"), DimValue::Dim(6));
        let odd = full_dim_report(&cover(), 3).unwrap();
        assert!(odd.all_pass());
        assert_eq!(
            odd.rows.iter().find(|row| row.label == "U-").unwrap().dim,
            DimValue::Empty
        );
    }
}
