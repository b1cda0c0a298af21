//! Flux traces h(y; t1, t2) across foliation leaves, face-flux profiles
//! F^j(x_j; t1, t2), empirical Lipschitz constants, and time moduli of
//! continuity.
//!
//! The sign convention is outward: positive trace = mass leaving the domain,
//! so the balance equation reads m(t2) - m(t1) + h(t1, t2) = 0.

use crate::error::{FluxError, Result};
use crate::exact::PlanarWeakSolution;
use crate::geometry::{AxisFace, BoundaryFoliation, BoxDomain, Face};
use crate::systems::StateVector;

/// Where a flux number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Adaptive quadrature of an analytic solution.
    Quadrature,
    /// Read from a finite-volume flux ledger.
    Ledger,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Quadrature => "oracle-quadrature",
            Provenance::Ledger => "solver-ledger",
        }
    }
}

/// Anything that can produce time-integrated fluxes through faces: analytic
/// planar solutions or a solver's flux ledger.
pub trait FluxSource {
    fn components(&self) -> usize;
    fn dim(&self) -> usize;
    fn provenance(&self) -> Provenance;
    /// ∫_{t1}^{t2} ∫_face f(u)·ν dS dt in the face's own orientation,
    /// with an absolute error estimate.
    fn face_flux(&self, face: &Face, t1: f64, t2: f64, tol: f64) -> Result<(StateVector, f64)>;
}

impl FluxSource for PlanarWeakSolution {
    fn components(&self) -> usize {
        PlanarWeakSolution::components(self)
    }

    fn dim(&self) -> usize {
        PlanarWeakSolution::dim(self)
    }

    fn provenance(&self) -> Provenance {
        Provenance::Quadrature
    }

    fn face_flux(&self, face: &Face, t1: f64, t2: f64, tol: f64) -> Result<(StateVector, f64)> {
        PlanarWeakSolution::face_flux(self, face, t1, t2, tol)
    }
}

/// The value h(y; t1, t2) ∈ ℝ^D of a time-integrated boundary flux, with its
/// provenance and accumulated error estimate.
#[derive(Clone, Debug)]
pub struct FluxTrace {
    pub value: StateVector,
    pub y: f64,
    pub t1: f64,
    pub t2: f64,
    pub provenance: Provenance,
    pub error_estimate: f64,
}

/// Net outward flux through a closed boundary given as outward-oriented
/// faces. The tolerance is split evenly across faces.
pub fn flux_trace(
    source: &dyn FluxSource,
    faces: &[Face],
    y: f64,
    t1: f64,
    t2: f64,
    tol: f64,
) -> Result<FluxTrace> {
    if faces.is_empty() {
        return Err(FluxError::InvalidArgument("boundary has no faces".into()));
    }
    let tol_face = tol / faces.len() as f64;
    let mut value = StateVector::zeros(source.components());
    let mut error = 0.0;
    for face in faces {
        let (f, e) = source.face_flux(face, t1, t2, tol_face)?;
        value = value.add(&f);
        error += e;
    }
    Ok(FluxTrace {
        value,
        y,
        t1,
        t2,
        provenance: source.provenance(),
        error_estimate: error,
    })
}

/// Ordered flux traces sharing a time interval and tolerance.
#[derive(Clone, Debug)]
pub struct TraceProfile {
    samples: Vec<FluxTrace>,
    pub t1: f64,
    pub t2: f64,
    pub tol: f64,
}

impl TraceProfile {
    pub fn new(samples: Vec<FluxTrace>, t1: f64, t2: f64, tol: f64) -> Result<Self> {
        if samples.windows(2).any(|w| w[1].y < w[0].y) {
            return Err(FluxError::InvalidArgument(
                "profile parameters must be sorted".into(),
            ));
        }
        if samples.iter().any(|s| s.t1 != t1 || s.t2 != t2) {
            return Err(FluxError::InvalidArgument(
                "profile samples must share the time interval".into(),
            ));
        }
        Ok(Self {
            samples,
            t1,
            t2,
            tol,
        })
    }

    pub fn samples(&self) -> &[FluxTrace] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn components(&self) -> usize {
        self.samples.first().map_or(0, |s| s.value.components())
    }
}

/// Traces across K+1 equispaced leaves of a foliation.
pub fn trace_profile(
    source: &dyn FluxSource,
    foliation: &BoundaryFoliation,
    t1: f64,
    t2: f64,
    k: usize,
    tol: f64,
) -> Result<TraceProfile> {
    if k < 2 {
        return Err(FluxError::InvalidArgument(format!(
            "profile needs K >= 2, got {k}"
        )));
    }
    let (y_lo, y_hi) = foliation.y_range();
    let mut samples = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let y = y_lo + (y_hi - y_lo) * i as f64 / k as f64;
        let faces = foliation.leaf_at(y)?;
        samples.push(flux_trace(source, &faces, y, t1, t2, tol)?);
    }
    TraceProfile::new(samples, t1, t2, tol)
}

/// The flux profile F^j(x_j; t1, t2) across sections of a box at the given
/// positions along axis j, oriented +e_j.
pub fn face_flux_profile(
    source: &dyn FluxSource,
    domain: &BoxDomain,
    axis: usize,
    positions: &[f64],
    t1: f64,
    t2: f64,
    tol: f64,
) -> Result<TraceProfile> {
    if axis >= domain.dim() {
        return Err(FluxError::InvalidArgument(format!(
            "axis {axis} out of range for dimension {}",
            domain.dim()
        )));
    }
    if positions.is_empty() {
        return Err(FluxError::InvalidArgument(
            "no profile positions given".into(),
        ));
    }
    let mut samples = Vec::with_capacity(positions.len());
    for &p in positions {
        let face = if domain.dim() == 1 {
            Face::Axis(AxisFace::point_1d(p, 1.0))
        } else {
            Face::Axis(AxisFace::segment_2d(axis, p, domain.side(1 - axis), 1.0))
        };
        let (value, error) = source.face_flux(&face, t1, t2, tol)?;
        samples.push(FluxTrace {
            value,
            y: p,
            t1,
            t2,
            provenance: source.provenance(),
            error_estimate: error,
        });
    }
    TraceProfile::new(samples, t1, t2, tol)
}

/// Empirical Lipschitz data of a trace profile: the maximum first-difference
/// quotient per component, with its history under grid coarsening.
#[derive(Clone, Debug)]
pub struct LipschitzReport {
    /// Max |h_i(y_{k+1}) - h_i(y_k)| / (y_{k+1} - y_k) at full resolution.
    pub estimate: StateVector,
    /// (number of intervals, estimate) from coarsest (2 intervals) to finest,
    /// by decimating the profile in powers of two.
    pub history: Vec<(usize, StateVector)>,
    /// Exact slope when a closed form is known; filled by the caller.
    pub analytic: Option<StateVector>,
}

/// First-difference Lipschitz estimate over a profile with at least three
/// samples.
pub fn estimate_lipschitz(profile: &TraceProfile) -> Result<LipschitzReport> {
    let samples = profile.samples();
    if samples.len() < 3 {
        return Err(FluxError::InvalidArgument(format!(
            "Lipschitz estimation needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    let d = profile.components();

    let quotient = |stride: usize| -> StateVector {
        let mut out = StateVector::zeros(d);
        let mut k = 0;
        while k + stride < samples.len() {
            let a = &samples[k];
            let b = &samples[k + stride];
            let dy = b.y - a.y;
            if dy > 0.0 {
                for i in 0..d {
                    let q = (b.value[i] - a.value[i]).abs() / dy;
                    if q > out[i] {
                        out.set(i, q);
                    }
                }
            }
            k += stride;
        }
        out
    };

    let intervals = samples.len() - 1;
    let mut history = Vec::new();
    let mut stride = 1;
    while intervals / stride >= 2 {
        history.push((intervals / stride, quotient(stride)));
        stride *= 2;
    }
    history.reverse();

    Ok(LipschitzReport {
        estimate: quotient(1),
        history,
        analytic: None,
    })
}

/// One entry of a time-continuity scan: the gap Δt = t2' - t2 and the
/// componentwise |h(t1, t2') - h(t1, t2)|.
#[derive(Clone, Debug)]
pub struct TimeModulusPoint {
    pub dt: f64,
    pub delta: StateVector,
    pub t2_pair: (f64, f64),
}

/// Successive trace differences over a sorted list of right endpoints.
pub fn time_modulus(
    source: &dyn FluxSource,
    faces: &[Face],
    t1: f64,
    t2_list: &[f64],
    tol: f64,
) -> Result<Vec<TimeModulusPoint>> {
    if t2_list.windows(2).any(|w| w[1] < w[0]) {
        return Err(FluxError::InvalidArgument("t2 list must be sorted".into()));
    }
    if t2_list.iter().any(|&t| t < t1) {
        return Err(FluxError::InvalidArgument(
            "t2 values must not precede t1".into(),
        ));
    }
    let traces: Vec<FluxTrace> = t2_list
        .iter()
        .map(|&t2| flux_trace(source, faces, 0.0, t1, t2, tol))
        .collect::<Result<_>>()?;
    let d = source.components();
    Ok(traces
        .windows(2)
        .map(|w| {
            let mut delta = StateVector::zeros(d);
            for i in 0..d {
                delta.set(i, (w[1].value[i] - w[0].value[i]).abs());
            }
            TimeModulusPoint {
                dt: w[1].t2 - w[0].t2,
                delta,
                t2_pair: (w[0].t2, w[1].t2),
            }
        })
        .collect())
}
