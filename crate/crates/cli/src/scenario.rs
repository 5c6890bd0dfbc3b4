//! JSON scenario files: one cover, a list of tasks, deterministic results.
//!
//! The schema is versioned; every payload validates through the module
//! constructors while the file is being deserialized, so a task that
//! reaches the runner is already mathematically well-formed. Validation
//! errors carry a JSON pointer to the offending field.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use prym_hitchin::cover::CoverData;
use prym_hitchin::higgs::{classify, Structure};
use prym_hitchin::moduli::{
    component_oracle, enumerate_types, full_dim_report, p2_orbits_rank2, ModuliError,
    OracleScenario,
};
use prym_hitchin::spectral::{
    fiber_singularity_test, genus_ledger, GenusScenario, SpectralGerm, WSpace,
};
use prym_hitchin::algebra::PolyMatrix;

use crate::CliError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: String,
    pub cover: CoverData,
    pub tasks: Vec<Task>,
}

/// One unit of work. The `kind` field selects the payload.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Task {
    /// Query a spectral germ.
    Germ { germ: SpectralGerm, query: GermQuery },
    /// Classify a Higgs germ and report its Hitchin image.
    Higgs { phi: PolyMatrix, structure: Structure },
    /// Genus ledger of a spectral curve scenario over the file's cover.
    Genus { r: u32, scenario: GenusScenario },
    /// Full dimension table for the file's cover at this rank.
    Dims { r: u32 },
    /// Enumerate invariant types over the file's cover.
    Types {
        r: u32,
        #[serde(default)]
        d: i64,
        #[serde(default)]
        maximal_only: bool,
    },
    /// Two-torsion orbit counts at this ramification half-count.
    Orbits { n: u32 },
    /// Pfaffian and determinant of an antisymmetric matrix.
    Pfaffian { matrix: PolyMatrix },
    /// Connected-component count for a moduli family.
    Oracle { scenario: OracleScenario },
}

impl Task {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Task::Germ { .. } => "germ",
            Task::Higgs { .. } => "higgs",
            Task::Genus { .. } => "genus",
            Task::Dims { .. } => "dims",
            Task::Types { .. } => "types",
            Task::Orbits { .. } => "orbits",
            Task::Pfaffian { .. } => "pfaffian",
            Task::Oracle { .. } => "oracle",
        }
    }
}

/// What to ask of a germ task.
#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GermQuery {
    /// The full spectral-curve report.
    Report,
    /// Smoothness of the central fiber with its gcd witness.
    Smoothness,
    /// Fixed points of the involution on the central fiber.
    FixedPoints,
    /// Membership in one of the section spaces, with certificate.
    Membership(WSpace),
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for segment in path.iter() {
        match segment {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Parses and validates a scenario file, reporting failures with a JSON
/// pointer to the offending field.
pub fn load(text: &str) -> Result<ScenarioFile, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ScenarioFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        CliError::data(
            "ScenarioInvalid",
            format!("at pointer {}: {}", pointer_of(e.path()), e.inner()),
        )
    })?;
    if file.version != "1" {
        return Err(CliError::data(
            "ScenarioInvalid",
            format!("at pointer /version: unsupported version {:?}", file.version),
        ));
    }
    Ok(file)
}

fn ser<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("module reports serialize")
}

fn run_task(cover: &CoverData, task: &Task) -> Result<Value, CliError> {
    match task {
        Task::Germ { germ, query } => match query {
            GermQuery::Report => Ok(ser(&germ.report())),
            GermQuery::Smoothness => Ok(ser(&fiber_singularity_test(
                &germ.spectral_polynomial(),
            ))),
            GermQuery::FixedPoints => Ok(ser(&germ.fixed_points_on_fiber()?)),
            GermQuery::Membership(space) => Ok(ser(&germ.w_membership(*space)?)),
        },
        Task::Higgs { phi, structure } => {
            let germ = classify(phi.clone(), structure.clone())?;
            let image = germ.hitchin_map();
            let mut out = ser(&image);
            out["structure"] = json!(germ.structure().kind());
            match germ.structure() {
                Structure::Alternating { .. } => {
                    out["certificate"] = ser(&germ.alternating_square_certificate()?);
                }
                Structure::InvariantTyped { .. } => {
                    out["vanishing_orders"] = ser(&germ.vanishing_order_profile()?);
                }
                Structure::Symmetric { .. } => {}
            }
            Ok(out)
        }
        Task::Genus { r, scenario } => Ok(ser(&genus_ledger(cover, *r, *scenario)?)),
        Task::Dims { r } => Ok(ser(&full_dim_report(cover, *r)?)),
        Task::Types { r, d, maximal_only } => {
            if cover.n() == 0 {
                return Err(CliError::data(
                    "InadmissibleInput",
                    "type enumeration needs a ramified cover",
                ));
            }
            if !maximal_only {
                let states = u64::from(*r + 1)
                    .checked_pow(2 * cover.n())
                    .unwrap_or(u64::MAX);
                const MAX_STATES: u64 = 2_000_000;
                if states > MAX_STATES {
                    return Err(ModuliError::GridTooLarge {
                        cells: states,
                        max: MAX_STATES,
                    }
                    .into());
                }
            }
            let types = enumerate_types(cover, *r, *d, *maximal_only);
            Ok(json!({
                "count": types.len(),
                "types": ser(&types),
            }))
        }
        Task::Orbits { n } => {
            if !(1..=8).contains(n) {
                return Err(CliError::data(
                    "InadmissibleInput",
                    format!("orbit counting supports n between 1 and 8, got {n}"),
                ));
            }
            let (scalars, orbits) = p2_orbits_rank2(*n);
            Ok(json!({ "n": n, "scalars": scalars, "orbits": orbits }))
        }
        Task::Pfaffian { matrix } => {
            let pf = matrix.pfaffian()?;
            let det = matrix.det()?;
            let square_matches = &(&pf * &pf) == &det;
            Ok(json!({
                "pfaffian": ser(&pf),
                "determinant": ser(&det),
                "square_matches": square_matches,
            }))
        }
        Task::Oracle { scenario } => Ok(ser(&component_oracle(scenario)?)),
    }
}

/// Runs every task against the file's cover, in input order. With
/// `parallel`, tasks fan out to the rayon pool; results (and the choice of
/// which error to report) are still collected in input order, so output
/// bytes never depend on scheduling.
pub fn run_all(file: &ScenarioFile, parallel: bool) -> Result<Vec<Value>, CliError> {
    let outcomes: Vec<Result<Value, CliError>> = if parallel {
        use rayon::prelude::*;
        file.tasks
            .par_iter()
            .map(|task| run_task(&file.cover, task))
            .collect()
    } else {
        file.tasks
            .iter()
            .map(|task| run_task(&file.cover, task))
            .collect()
    };
    let mut results = Vec::with_capacity(outcomes.len());
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(value) => results.push(value),
            Err(CliError::Data(message)) => {
                return Err(CliError::Data(format!("task {index}: {message}")));
            }
            Err(other) => return Err(other),
        }
    }
    Ok(results)
}
