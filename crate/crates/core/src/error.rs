//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FluxError {
    /// A state outside the model's admissible set (e.g. shallow-water depth <= 0).
    #[error("inadmissible state for {model}: {component} = {value} ({requirement})")]
    InadmissibleState {
        model: &'static str,
        component: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("direction must be a unit vector: |d| = {norm} (tolerance 1e-12)")]
    NonUnitDirection { norm: f64 },

    #[error(
        "star-state iteration did not converge after {iterations} iterations \
         (last depth {last_depth:e}, residual {residual:e})"
    )]
    NoConvergence {
        iterations: usize,
        last_depth: f64,
        residual: f64,
    },

    #[error("vacuum forms between the given shallow-water states")]
    Vacuum,

    /// A quadrature that could not meet its requested tolerance.
    #[error("tolerance {requested:e} not met for {context}: achieved {achieved:e}")]
    Accuracy {
        requested: f64,
        achieved: f64,
        context: String,
    },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("point {point:?} does not lie on the face (distance {distance:e})")]
    PointOffFace { point: Vec<f64>, distance: f64 },

    #[error("sampler does not cover {0}")]
    SamplerDomain(String),

    #[error("position {position} is not a mesh face on axis {axis} (nearest face at {nearest})")]
    NotAMeshFace {
        axis: usize,
        position: f64,
        nearest: f64,
    },

    #[error("no solver checkpoint at t = {0}")]
    UnknownCheckpoint(f64),

    #[error("degenerate time step: every wave speed vanishes but t_end > 0")]
    DegenerateTimeStep,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FluxError>;
