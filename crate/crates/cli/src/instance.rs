//! Instance files.
//!
//! A center instance names the points, lists the family and the functionals
//! cutting out `Y`, and picks the constraint set:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "worked",
//!   "points": ["k1", "k2", "t"],
//!   "family": [[1, 0, 0], [0, 1, 0]],
//!   "functionals": [{ "support": ["k1", "k2"], "weights": [0.5, -0.5] }],
//!   "constraint": { "mode": "ball" },
//!   "options": { "eps": [0.2, 0.1, 0.05], "seed": 7 }
//! }
//! ```
//!
//! A Garkavi instance has `"kind": "garkavi"` and a `garkavi` block with `n`
//! and `seed`. Support entries are point labels or zero-based indices.

use std::path::Path;

use serde::{Deserialize, Serialize};
use supcenter_core::constraints::ball_polytope;
use supcenter_core::{
    CenterProblem, FunctionFamily, Functional, SubspaceSpec, SupSpace, Tolerances, Vector,
};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    #[default]
    Center,
    Garkavi,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalSpec {
    pub support: Vec<PointRef>,
    pub weights: Vec<f64>,
    /// Rescale the weights to total variation one instead of rejecting them.
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintSpec {
    /// `V = Y`
    Subspace,
    /// `V = B_Y`
    #[default]
    Ball,
    /// `V = lambda B_Y`
    ScaledBall { lambda: f64 },
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub tol: Option<f64>,
    pub eps: Option<Vec<f64>>,
    pub delta: Option<f64>,
    pub delta_max: Option<f64>,
    pub seed: Option<u64>,
    /// A near-center to repair.
    pub g: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GarkaviSpec {
    pub n: usize,
    pub seed: u64,
    pub theta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub kind: Kind,
    #[serde(default)]
    pub points: Option<Vec<String>>,
    #[serde(default)]
    pub family: Vec<Vec<f64>>,
    #[serde(default)]
    pub functionals: Vec<FunctionalSpec>,
    #[serde(default)]
    pub constraint: ConstraintSpec,
    /// Read the family as vertex values of affine functions on a simplex.
    #[serde(default)]
    pub simplex: bool,
    #[serde(default)]
    pub garkavi: Option<GarkaviSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CenterInstance {
    pub name: String,
    pub space: SupSpace,
    pub family: FunctionFamily,
    pub y: SubspaceSpec,
    pub constraint: ConstraintSpec,
    pub simplex: bool,
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GarkaviInstance {
    pub name: String,
    pub spec: GarkaviSpec,
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Center(CenterInstance),
    Garkavi(GarkaviInstance),
}

impl Instance {
    pub fn name(&self) -> &str {
        match self {
            Instance::Center(c) => &c.name,
            Instance::Garkavi(g) => &g.name,
        }
    }
}

fn field(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("field `{path}`: {msg}"))
}

pub fn load(path: &Path) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse(text: &str) -> Result<Instance, CliError> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("line {} column {}: {e}", e.line(), e.column())))?;
    validate(file)
}

pub fn validate(file: InstanceFile) -> Result<Instance, CliError> {
    if file.schema_version != SCHEMA_VERSION {
        return Err(field(
            "schema_version",
            format!(
                "unsupported version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            ),
        ));
    }
    if let Some(tol) = file.options.tol {
        if !(tol > 0.0 && tol < 1e-3) {
            return Err(field("options.tol", format!("{tol} is not in (0, 1e-3)")));
        }
    }
    if let Some(eps) = &file.options.eps {
        if let Some(e) = eps.iter().find(|e| !(**e > 0.0)) {
            return Err(field("options.eps", format!("{e} is not positive")));
        }
    }
    match file.kind {
        Kind::Garkavi => {
            let spec = file
                .garkavi
                .ok_or_else(|| field("garkavi", "required when kind is \"garkavi\""))?;
            if spec.n < 3 {
                return Err(field("garkavi.n", format!("{} is below 3", spec.n)));
            }
            Ok(Instance::Garkavi(GarkaviInstance {
                name: file.name,
                spec,
                options: file.options,
            }))
        }
        Kind::Center => {
            if file.family.is_empty() {
                return Err(field("family", "must list at least one function"));
            }
            let n = file.family[0].len();
            let labels = match file.points {
                Some(p) => p,
                None => (0..n).map(|i| format!("s{i}")).collect(),
            };
            let space = SupSpace::new(labels).map_err(|e| field("points", e))?;
            let mut members = Vec::with_capacity(file.family.len());
            for (i, f) in file.family.into_iter().enumerate() {
                if f.len() != space.dim() {
                    return Err(field(
                        &format!("family[{i}]"),
                        format!("has {} values for {} points", f.len(), space.dim()),
                    ));
                }
                if f.iter().any(|x| !x.is_finite()) {
                    return Err(field(&format!("family[{i}]"), "values must be finite"));
                }
                members.push(Vector::new(f));
            }
            let family = FunctionFamily::new(members).map_err(|e| field("family", e))?;
            let mut fs = Vec::with_capacity(file.functionals.len());
            for (i, spec) in file.functionals.into_iter().enumerate() {
                let path = format!("functionals[{i}]");
                let mut support = Vec::with_capacity(spec.support.len());
                for (j, p) in spec.support.iter().enumerate() {
                    let idx = match p {
                        PointRef::Index(k) if *k < space.dim() => *k,
                        PointRef::Index(k) => {
                            return Err(field(
                                &format!("{path}.support[{j}]"),
                                format!("index {k} out of range"),
                            ))
                        }
                        PointRef::Label(l) => space.index_of(l).ok_or_else(|| {
                            field(
                                &format!("{path}.support[{j}]"),
                                format!("unknown point `{l}`"),
                            )
                        })?,
                    };
                    support.push(idx);
                }
                let f = if spec.normalize {
                    Functional::normalized(support, spec.weights)
                } else {
                    Functional::new(support, spec.weights)
                };
                fs.push(f.map_err(|e| field(&path, e))?);
            }
            let y = SubspaceSpec::new(space.dim(), fs).map_err(|e| field("functionals", e))?;
            if let ConstraintSpec::ScaledBall { lambda } = file.constraint {
                if !(lambda > 0.0) {
                    return Err(field(
                        "constraint.lambda",
                        format!("{lambda} is not positive"),
                    ));
                }
            }
            if let Some(g) = &file.options.g {
                if g.len() != space.dim() {
                    return Err(field(
                        "options.g",
                        format!("has {} values for {} points", g.len(), space.dim()),
                    ));
                }
            }
            Ok(Instance::Center(CenterInstance {
                name: file.name,
                space,
                family,
                y,
                constraint: file.constraint,
                simplex: file.simplex,
                options: file.options,
            }))
        }
    }
}

impl CenterInstance {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn tolerances(&self, cli_tol: Option<f64>) -> Tolerances {
        match cli_tol.or(self.options.tol) {
            Some(t) => Tolerances::with_abs(t),
            None => Tolerances::default(),
        }
    }

    /// The problem with the instance's own constraint set.
    pub fn problem(&self, tol: Tolerances) -> Result<CenterProblem, CliError> {
        self.problem_with(self.constraint, tol)
    }

    pub fn problem_with(
        &self,
        mode: ConstraintSpec,
        tol: Tolerances,
    ) -> Result<CenterProblem, CliError> {
        let f = self.family.clone();
        let p = match mode {
            ConstraintSpec::Subspace => CenterProblem::subspace(&self.y, f, tol),
            ConstraintSpec::Ball => CenterProblem::unit_ball(&self.y, f, tol),
            ConstraintSpec::ScaledBall { lambda } => CenterProblem::new(
                f,
                ball_polytope(&self.y, lambda).map_err(CliError::from)?,
                tol,
            ),
        };
        p.map_err(CliError::from)
    }
}
