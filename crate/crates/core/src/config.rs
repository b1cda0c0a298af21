//! JSON run configuration: schema, validation, and assembly into domain
//! objects.
//!
//! Experiments carry too many parameters for flags; a config file is the
//! reproducibility unit. The schema rejects unknown keys, reports violations
//! with their key path, and fills documented defaults (cfl = 0.45, balance
//! tolerance 1e-8). The digest of the canonicalized config is echoed into
//! every output header.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{FluxError, Result};
use crate::exact::PlanarWeakSolution;
use crate::geometry::{foliate, BoundaryFoliation, BoxDomain, Coord, Disk, Domain};
use crate::solver::{BoundaryKind, InitialData, Mesh, SolverConfig};
use crate::systems::{StateVector, SystemModel, STANDARD_GRAVITY};

pub const MODEL_NAMES: &[&str] = &["burgers", "advection", "shallow_water"];

fn default_dim() -> usize {
    1
}
fn default_gravity() -> f64 {
    STANDARD_GRAVITY
}
fn default_cfl() -> f64 {
    0.45
}
fn default_quad_order() -> usize {
    8
}
fn default_k() -> usize {
    16
}
fn default_k_levels() -> Vec<usize> {
    vec![8, 16, 32, 64, 128, 256]
}
fn default_checks() -> Vec<String> {
    vec![
        "balance".into(),
        "lipschitz-trace".into(),
        "time-continuity".into(),
        "weak-form".into(),
    ]
}
fn default_time_grid() -> usize {
    20
}
fn default_min_jump() -> f64 {
    0.1
}
fn default_weak_trials() -> usize {
    10
}
fn default_unions() -> usize {
    100
}
fn default_max_union_cells() -> usize {
    40
}
fn default_resolutions() -> Vec<usize> {
    vec![32, 64, 128, 256]
}
fn default_wavenumber() -> usize {
    1
}
fn default_half() -> f64 {
    0.5
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub name: String,
    #[serde(default = "default_dim")]
    pub dim: usize,
    /// Shallow water only.
    #[serde(default = "default_gravity")]
    pub gravity: f64,
    /// Advection only.
    #[serde(default)]
    pub velocity: Option<Vec<f64>>,
}

impl ModelSpec {
    pub fn build(&self) -> Result<SystemModel> {
        match self.name.as_str() {
            "burgers" => SystemModel::burgers(self.dim),
            "advection" => {
                let velocity = self.velocity.clone().ok_or_else(|| FluxError::Config {
                    path: "model.velocity".into(),
                    message: "advection needs a velocity vector".into(),
                })?;
                SystemModel::advection(Coord::from_slice(&velocity)?)
            }
            "shallow_water" => {
                if self.dim != 1 {
                    return Err(FluxError::Config {
                        path: "model.dim".into(),
                        message: "shallow_water is one-dimensional".into(),
                    });
                }
                SystemModel::shallow_water(self.gravity)
            }
            other => Err(FluxError::Config {
                path: "model.name".into(),
                message: format!("unknown model `{other}`; expected one of {MODEL_NAMES:?}"),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub u_l: Vec<f64>,
    pub u_r: Vec<f64>,
    pub normal: Vec<f64>,
    #[serde(default)]
    pub offset: f64,
}

impl OracleSpec {
    pub fn build(&self, model: &SystemModel) -> Result<PlanarWeakSolution> {
        PlanarWeakSolution::new(
            model.clone(),
            Coord::from_slice(&self.normal)?,
            self.offset,
            StateVector::from_slice(&self.u_l)?,
            StateVector::from_slice(&self.u_r)?,
        )
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum DomainSpec {
    #[serde(rename = "box")]
    Box { lo: Vec<f64>, hi: Vec<f64> },
    #[serde(rename = "disk")]
    Disk { center: Vec<f64>, radius: f64 },
}

impl DomainSpec {
    pub fn build(&self) -> Result<Domain> {
        match self {
            DomainSpec::Box { lo, hi } => Ok(Domain::Box(BoxDomain::new(
                Coord::from_slice(lo)?,
                Coord::from_slice(hi)?,
            )?)),
            DomainSpec::Disk { center, radius } => Ok(Domain::Disk(Disk::new(
                Coord::from_slice(center)?,
                *radius,
            )?)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationSpec {
    #[serde(default = "default_half")]
    pub delta: f64,
    pub width: f64,
    pub count: usize,
    #[serde(default = "default_quad_order")]
    pub quad_order: usize,
}

impl FoliationSpec {
    pub fn build(&self, base: Domain) -> Result<BoundaryFoliation> {
        foliate(base, self.delta, self.width, self.count)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundsSpec {
    pub fn build(&self) -> Result<BoxDomain> {
        BoxDomain::new(Coord::from_slice(&self.lo)?, Coord::from_slice(&self.hi)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSpec {
    pub bounds: BoundsSpec,
    pub cells: Vec<usize>,
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum BcSpec {
    #[default]
    Outflow,
    Periodic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitSpec {
    /// Cell averages of the configured oracle's initial step (t = 0).
    Riemann {},
    /// Cell averages of the configured oracle at a positive time.
    Oracle { t0: f64 },
    /// Smooth sine profile (scalar 1D models).
    Sine {
        amplitude: f64,
        #[serde(default)]
        mean: f64,
        #[serde(default = "default_wavenumber")]
        wavenumber: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub mesh: MeshSpec,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    pub t_end: f64,
    #[serde(default)]
    pub checkpoints: Vec<f64>,
    #[serde(default)]
    pub bc: BcSpec,
    pub init: InitSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceProfileSpec {
    #[serde(default)]
    pub axis: usize,
    pub positions: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceSpec {
    #[serde(default)]
    pub t1: f64,
    pub t2: f64,
    #[serde(default = "default_k")]
    pub k: usize,
    /// When present, a face-flux profile instead of a foliation profile.
    #[serde(default)]
    pub faces: Option<FaceProfileSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LipschitzSpec {
    #[serde(default)]
    pub axis: usize,
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "default_k_levels")]
    pub k_levels: Vec<usize>,
    #[serde(default)]
    pub expected_slope: Option<f64>,
    /// Estimate from a foliation profile instead of box sections.
    #[serde(default)]
    pub use_foliation: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    #[serde(default)]
    pub t1: f64,
    pub t2: f64,
    #[serde(default)]
    pub lipschitz: Option<LipschitzSpec>,
    #[serde(default = "default_time_grid")]
    pub time_grid: usize,
    /// Axis-0 position of the face probed for the instantaneous-integrand
    /// jump assertion.
    #[serde(default)]
    pub jump_position: Option<f64>,
    #[serde(default = "default_min_jump")]
    pub min_jump: f64,
    #[serde(default = "default_weak_trials")]
    pub weak_trials: usize,
    #[serde(default = "default_unions")]
    pub unions: usize,
    #[serde(default = "default_max_union_cells")]
    pub max_union_cells: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothAdvectionSpec {
    pub velocity: f64,
    pub amplitude: f64,
    #[serde(default)]
    pub mean: f64,
    #[serde(default = "default_wavenumber")]
    pub wavenumber: usize,
    pub t_end: f64,
    pub bounds: BoundsSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSpec {
    #[serde(default = "default_resolutions")]
    pub resolutions: Vec<usize>,
    /// Face positions tracked in the ledger-vs-exact flux study.
    #[serde(default)]
    pub flux_positions: Vec<f64>,
    #[serde(default)]
    pub smooth: Option<SmoothAdvectionSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_balance_tol")]
    pub balance: f64,
    #[serde(default = "default_trace_tol")]
    pub trace: f64,
    #[serde(default = "default_weak_tol")]
    pub weak_form: f64,
    #[serde(default = "default_lipschitz_tol")]
    pub lipschitz_match: f64,
    #[serde(default = "default_discrete_tol")]
    pub discrete_balance_rel: f64,
    #[serde(default = "default_quadrature_tol")]
    pub quadrature: f64,
}

fn default_balance_tol() -> f64 {
    1e-8
}
fn default_trace_tol() -> f64 {
    1e-8
}
fn default_weak_tol() -> f64 {
    1e-6
}
fn default_lipschitz_tol() -> f64 {
    1e-4
}
fn default_discrete_tol() -> f64 {
    1e-12
}
fn default_quadrature_tol() -> f64 {
    1e-10
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            balance: default_balance_tol(),
            trace: default_trace_tol(),
            weak_form: default_weak_tol(),
            lipschitz_match: default_lipschitz_tol(),
            discrete_balance_rel: default_discrete_tol(),
            quadrature: default_quadrature_tol(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub oracle: Option<OracleSpec>,
    #[serde(default)]
    pub domain: Option<DomainSpec>,
    #[serde(default)]
    pub foliation: Option<FoliationSpec>,
    #[serde(default)]
    pub solver: Option<SolverSpec>,
    #[serde(default)]
    pub trace: Option<TraceSpec>,
    #[serde(default)]
    pub verify: Option<VerifySpec>,
    #[serde(default)]
    pub convergence: Option<ConvergenceSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

/// Parses and validates a config file, reporting schema violations with
/// their key path.
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let mut deserializer = serde_json::Deserializer::from_str(&text);
    let config: RunConfig =
        serde_path_to_error::deserialize(&mut deserializer).map_err(|err| FluxError::Config {
            path: err.path().to_string(),
            message: err.inner().to_string(),
        })?;
    config.validate()?;
    Ok(config)
}

impl RunConfig {
    /// Semantic validation beyond the schema.
    pub fn validate(&self) -> Result<()> {
        let model = self.model.build()?;
        if let Some(oracle) = &self.oracle {
            oracle.build(&model)?;
        }
        if let Some(domain) = &self.domain {
            let d = domain.build()?;
            if d.dim() != model.dim() {
                return Err(FluxError::Config {
                    path: "domain".into(),
                    message: format!(
                        "domain dimension {} but model dimension {}",
                        d.dim(),
                        model.dim()
                    ),
                });
            }
        }
        if let Some(fol) = &self.foliation {
            let base = self.domain.as_ref().ok_or_else(|| FluxError::Config {
                path: "foliation".into(),
                message: "a foliation needs a base domain".into(),
            })?;
            fol.build(base.build()?)?;
            if fol.quad_order == 0 {
                return Err(FluxError::Config {
                    path: "foliation.quad_order".into(),
                    message: "quadrature order must be at least 1".into(),
                });
            }
        }
        if let Some(solver) = &self.solver {
            if !(solver.cfl > 0.0 && solver.cfl < 1.0) {
                return Err(FluxError::Config {
                    path: "solver.cfl".into(),
                    message: format!("CFL must lie in (0, 1), got {}", solver.cfl),
                });
            }
            if solver.checkpoints.windows(2).any(|w| w[1] <= w[0]) {
                return Err(FluxError::Config {
                    path: "solver.checkpoints".into(),
                    message: "checkpoints must be strictly increasing".into(),
                });
            }
            if let Some(&last) = solver.checkpoints.last() {
                if last > solver.t_end + 1e-12 {
                    return Err(FluxError::Config {
                        path: "solver.checkpoints".into(),
                        message: "checkpoints must not exceed t_end".into(),
                    });
                }
            }
            // Zero-velocity advection never produces a positive time step.
            if let SystemModel::Advection { velocity } = &model {
                if velocity.norm() == 0.0 && solver.t_end > 0.0 {
                    return Err(FluxError::Config {
                        path: "model.velocity".into(),
                        message: "advection velocity must be nonzero for a solver run".into(),
                    });
                }
            }
            self.solver_config()?;
        }
        if let Some(trace) = &self.trace {
            if trace.t2 < trace.t1 {
                return Err(FluxError::Config {
                    path: "trace.t2".into(),
                    message: "t2 must not precede t1".into(),
                });
            }
        }
        if let Some(verify) = &self.verify {
            if verify.t2 < verify.t1 {
                return Err(FluxError::Config {
                    path: "verify.t2".into(),
                    message: "t2 must not precede t1".into(),
                });
            }
            for check in &verify.checks {
                let known = [
                    "balance",
                    "lipschitz-trace",
                    "time-continuity",
                    "weak-form",
                    "corollary-box",
                    "convergence",
                ];
                if !known.contains(&check.as_str()) {
                    return Err(FluxError::Config {
                        path: "verify.checks".into(),
                        message: format!("unknown check `{check}`; expected one of {known:?}"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn build_model(&self) -> Result<SystemModel> {
        self.model.build()
    }

    pub fn build_oracle(&self) -> Result<PlanarWeakSolution> {
        let model = self.build_model()?;
        self.oracle
            .as_ref()
            .ok_or_else(|| FluxError::Config {
                path: "oracle".into(),
                message: "this command needs an oracle section".into(),
            })?
            .build(&model)
    }

    pub fn build_domain(&self) -> Result<Domain> {
        self.domain
            .as_ref()
            .ok_or_else(|| FluxError::Config {
                path: "domain".into(),
                message: "this command needs a domain section".into(),
            })?
            .build()
    }

    pub fn build_foliation(&self) -> Result<BoundaryFoliation> {
        let spec = self.foliation.as_ref().ok_or_else(|| FluxError::Config {
            path: "foliation".into(),
            message: "this command needs a foliation section".into(),
        })?;
        spec.build(self.build_domain()?)
    }

    /// Assembles the solver configuration (requires the solver section).
    pub fn solver_config(&self) -> Result<SolverConfig> {
        let spec = self.solver.as_ref().ok_or_else(|| FluxError::Config {
            path: "solver".into(),
            message: "this command needs a solver section".into(),
        })?;
        let model = self.build_model()?;
        let mesh = Mesh::new(spec.mesh.bounds.build()?, &spec.mesh.cells)?;
        let init = match &spec.init {
            InitSpec::Riemann {} => InitialData::Oracle {
                solution: self.build_oracle()?,
                t0: 0.0,
            },
            InitSpec::Oracle { t0 } => InitialData::Oracle {
                solution: self.build_oracle()?,
                t0: *t0,
            },
            InitSpec::Sine {
                amplitude,
                mean,
                wavenumber,
            } => InitialData::Sine {
                amplitude: *amplitude,
                mean: *mean,
                wavenumber: *wavenumber,
            },
        };
        let config = SolverConfig {
            model,
            mesh,
            cfl: spec.cfl,
            t_end: spec.t_end,
            boundary: match spec.bc {
                BcSpec::Outflow => BoundaryKind::Outflow,
                BcSpec::Periodic => BoundaryKind::Periodic,
            },
            init,
        };
        config.validate()?;
        Ok(config)
    }

    /// Hex SHA-256 of the canonicalized (parsed and re-serialized) config.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let canonical = serde_json::to_string(self).expect("config serializes");
        let hash = Sha256::digest(canonical.as_bytes());
        let mut out = String::with_capacity(64);
        for byte in hash {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(tag: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("fluxlaw-config-{tag}-{}.json", std::process::id()));
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn minimal_fixture_parses_with_defaults() {
        let path = write_temp(
            "minimal",
            r#"{
                "model": {"name": "burgers", "dim": 1},
                "oracle": {"u_l": [1.0], "u_r": [0.0], "normal": [1.0]},
                "solver": {
                    "mesh": {"bounds": {"lo": [-1.0], "hi": [1.0]}, "cells": [64]},
                    "t_end": 1.0,
                    "init": {"kind": "riemann"}
                }
            }"#,
        );
        let config = parse_config(&path).unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(config.solver.as_ref().unwrap().cfl, 0.45);
        assert_eq!(config.tolerances.balance, 1e-8);
        assert_eq!(config.tolerances.quadrature, 1e-10);
    }

    #[test]
    fn oracle_warm_start_init_parses() {
        let path = write_temp(
            "warm-start",
            r#"{
                "model": {"name": "burgers", "dim": 1},
                "oracle": {"u_l": [0.0], "u_r": [1.0], "normal": [1.0]},
                "solver": {
                    "mesh": {"bounds": {"lo": [-1.0], "hi": [2.0]}, "cells": [16]},
                    "t_end": 0.8,
                    "init": {"kind": "oracle", "t0": 0.5}
                }
            }"#,
        );
        let config = parse_config(&path).unwrap();
        std::fs::remove_file(&path).ok();
        let solver = config.solver_config().unwrap();
        assert_eq!(solver.t_end, 0.8);
        match solver.init {
            crate::solver::InitialData::Oracle { t0, .. } => assert_eq!(t0, 0.5),
            other => panic!("unexpected init {other:?}"),
        }
    }

    #[test]
    fn missing_model_names_the_key() {
        let path = write_temp("missing-model", r#"{"seed": 3}"#);
        let err = parse_config(&path).unwrap_err();
        std::fs::remove_file(&path).ok();
        let message = err.to_string();
        assert!(message.contains("model"), "{message}");
    }

    #[test]
    fn cfl_out_of_range_is_rejected() {
        let path = write_temp(
            "bad-cfl",
            r#"{
                "model": {"name": "burgers"},
                "oracle": {"u_l": [1.0], "u_r": [0.0], "normal": [1.0]},
                "solver": {
                    "mesh": {"bounds": {"lo": [-1.0], "hi": [1.0]}, "cells": [8]},
                    "cfl": 1.5,
                    "t_end": 1.0,
                    "init": {"kind": "riemann"}
                }
            }"#,
        );
        let err = parse_config(&path).unwrap_err();
        std::fs::remove_file(&path).ok();
        assert!(err.to_string().contains("cfl"), "{err}");
    }

    #[test]
    fn unknown_model_suggests_alternatives() {
        let spec = ModelSpec {
            name: "euler".into(),
            dim: 1,
            gravity: STANDARD_GRAVITY,
            velocity: None,
        };
        let err = spec.build().unwrap_err();
        let message = err.to_string();
        assert!(message.contains("burgers"));
        assert!(message.contains("shallow_water"));
    }

    #[test]
    fn unknown_keys_are_rejected_with_path() {
        let path = write_temp(
            "unknown-key",
            r#"{"model": {"name": "burgers", "bogus": 1}}"#,
        );
        let err = parse_config(&path).unwrap_err();
        std::fs::remove_file(&path).ok();
        match err {
            FluxError::Config { path, message } => {
                assert!(path.contains("model"), "{path}: {message}");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn digest_is_stable_across_reparses() {
        let text = r#"{
            "model": {"name": "burgers"},
            "oracle": {"u_l": [1.0], "u_r": [0.0], "normal": [1.0]}
        }"#;
        let p1 = write_temp("digest-a", text);
        let c1 = parse_config(&p1).unwrap();
        std::fs::remove_file(&p1).ok();
        // Same content, different whitespace.
        let p2 = write_temp("digest-b", &text.replace('\n', " "));
        let c2 = parse_config(&p2).unwrap();
        std::fs::remove_file(&p2).ok();
        assert_eq!(c1.digest(), c2.digest());
    }
}
