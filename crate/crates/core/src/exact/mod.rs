//! Analytic weak-solution oracles: multi-dimensional planar waves built from
//! 1D Riemann solutions.
//!
//! A planar solution is u(x, t) = w((x·ν̂ - x₀)/t) where w is the self-similar
//! solution of the Riemann problem for the directional flux g = ν̂·f. It is an
//! exact (entropy) weak solution, locally bounded, with mass continuous in
//! time — exactly the hypotheses under which time-integrated boundary fluxes
//! are regular. Masses and face fluxes are computed by splitting integrals at
//! wave events, so piecewise-constant regions integrate exactly and fans meet
//! a requested tolerance.

mod face_flux;
mod mass;
mod weak_form;

pub use weak_form::PolynomialBump;

use crate::error::{FluxError, Result};
use crate::geometry::Coord;
use crate::quadrature::Sample;
use crate::systems::{RiemannFan, StateVector, SystemModel};

pub(crate) fn to_sample(v: &StateVector) -> Sample {
    let mut s = [0.0; 2];
    for (i, slot) in s.iter_mut().enumerate().take(v.components()) {
        *slot = v[i];
    }
    s
}

pub(crate) fn from_sample(s: Sample, components: usize) -> StateVector {
    match components {
        1 => StateVector::scalar(s[0]),
        _ => StateVector::pair(s[0], s[1]),
    }
}

/// An exact discontinuous weak solution: a planar wave with initial data
/// u_l on {x·ν̂ < x₀}, u_r on {x·ν̂ > x₀}.
#[derive(Clone, Debug)]
pub struct PlanarWeakSolution {
    model: SystemModel,
    normal: Coord,
    offset: f64,
    left: StateVector,
    right: StateVector,
    fan: RiemannFan,
}

impl PlanarWeakSolution {
    pub fn new(
        model: SystemModel,
        normal: Coord,
        offset: f64,
        left: StateVector,
        right: StateVector,
    ) -> Result<Self> {
        let fan = model.riemann_fan(&left, &right, &normal)?;
        Ok(Self {
            model,
            normal,
            offset,
            left,
            right,
            fan,
        })
    }

    pub fn model(&self) -> &SystemModel {
        &self.model
    }

    pub fn normal(&self) -> Coord {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn left(&self) -> StateVector {
        self.left
    }

    pub fn right(&self) -> StateVector {
        self.right
    }

    /// The 1D wave structure along the normal.
    pub fn fan(&self) -> &RiemannFan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn components(&self) -> usize {
        self.model.components()
    }

    /// Signed distance of x from the initial interface, along the normal.
    pub fn signed_coordinate(&self, x: &Coord) -> f64 {
        x.dot(&self.normal) - self.offset
    }

    /// Exact pointwise value. At t = 0 the initial data is returned, with the
    /// left state on the measure-zero interface itself.
    pub fn sample(&self, x: &Coord, t: f64) -> Result<StateVector> {
        if t < 0.0 {
            return Err(FluxError::InvalidArgument(format!(
                "time must be nonnegative, got {t}"
            )));
        }
        let xi = self.signed_coordinate(x);
        if t == 0.0 {
            return Ok(if xi <= 0.0 { self.left } else { self.right });
        }
        Ok(self.fan.sample(xi / t))
    }

    /// Componentwise sup bound over all of space-time; the constant that
    /// bounds |u| on any cylinder.
    pub fn sup_bound(&self) -> StateVector {
        self.fan.sup_abs()
    }

    /// Componentwise range of the solution over all of space-time.
    pub fn component_bounds(&self) -> (StateVector, StateVector) {
        self.fan.component_bounds()
    }

    /// Positions x·ν̂ of all wave kinks at time t.
    pub fn wave_positions(&self, t: f64) -> Vec<f64> {
        self.fan
            .speeds()
            .iter()
            .map(|s| self.offset + s * t)
            .collect()
    }

    /// Times in (t1, t2) at which a wave crosses the point with normal
    /// coordinate offset `xi` (relative to the initial interface).
    pub fn crossing_times(&self, xi: f64, t1: f64, t2: f64) -> WaveEventList {
        let mut times: Vec<f64> = self
            .fan
            .speeds()
            .iter()
            .filter_map(|&s| {
                if s * xi > 0.0 {
                    let t = xi / s;
                    (t > t1 && t < t2).then_some(t)
                } else {
                    None
                }
            })
            .collect();
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        times.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * t2.max(1.0));
        WaveEventList { times }
    }
}

/// Ordered times at which a wave (shock, contact, or fan edge) crosses a
/// fixed spatial point within a query interval.
#[derive(Clone, Debug)]
pub struct WaveEventList {
    times: Vec<f64>,
}

impl WaveEventList {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}
