//! Time-integrated face fluxes ∫_{t1}^{t2} ∫_face f(u)·ν dS dt of planar
//! solutions.
//!
//! Per surface node the time integral is split at wave crossing times:
//! piecewise-constant stretches integrate exactly, rarefaction stretches go
//! through adaptive Gauss quadrature. The surface integral is then refined
//! adaptively, seeded with the positions where a crossing time enters or
//! leaves the interval (the only kinks of the per-node flux). Half the
//! tolerance budget goes to the surface, half to the time integrals.

use std::cell::Cell;

use crate::error::{FluxError, Result};
use crate::geometry::{Coord, Face};
use crate::quadrature::{adaptive_quad, pairwise_sum, Sample, DEFAULT_MAX_SEGMENTS};
use crate::systems::{StateVector, Wave};

use super::{from_sample, to_sample, PlanarWeakSolution};

impl PlanarWeakSolution {
    /// ∫_{t1}^{t2} ∫_face f(u(x,t))·ν dS dt with an absolute error estimate.
    ///
    /// ν is the face's own orientation (flip it to negate the flux).
    pub fn face_flux(&self, face: &Face, t1: f64, t2: f64, tol: f64) -> Result<(StateVector, f64)> {
        if !(t1 >= 0.0 && t2 >= t1) {
            return Err(FluxError::InvalidArgument(format!(
                "need 0 <= t1 <= t2, got t1 = {t1}, t2 = {t2}"
            )));
        }
        if face.dim() != self.dim() {
            return Err(FluxError::SamplerDomain(format!(
                "face dimension {} (solution is {}-dimensional)",
                face.dim(),
                self.dim()
            )));
        }
        if t1 == t2 {
            return Ok((StateVector::zeros(self.components()), 0.0));
        }

        // 1D faces are points with counting measure.
        if let Face::Axis(af) = face {
            if af.cross.is_none() {
                let x = Coord::d1(af.position);
                let normal = Coord::d1(af.sign);
                let (value, error, converged) = self.node_time_flux(&x, &normal, t1, t2, tol)?;
                if !converged {
                    return Err(FluxError::Accuracy {
                        requested: tol,
                        achieved: error,
                        context: "time integration at a 1D face".into(),
                    });
                }
                return Ok((from_sample(value, self.components()), error));
            }
        }

        let measure = face.measure();
        let tol_surface = 0.5 * tol;
        let tol_node = 0.5 * tol / measure.max(1e-300);
        let (p0, p1) = face.param_range();
        let breakpoints = self.surface_breakpoints(face, t1, t2);

        let worst_node_error = Cell::new(0.0f64);
        let failure: Cell<Option<FluxError>> = Cell::new(None);
        let jacobian = face.param_jacobian();

        let integrand = |p: f64| -> Sample {
            let x = face.point_at(p);
            let normal = face.normal_at_param(p);
            match self.node_time_flux(&x, &normal, t1, t2, tol_node) {
                Ok((value, error, converged)) => {
                    worst_node_error.set(worst_node_error.get().max(error));
                    if !converged && failure.take().is_none() {
                        failure.set(Some(FluxError::Accuracy {
                            requested: tol_node,
                            achieved: error,
                            context: "per-node time integration".into(),
                        }));
                    }
                    [value[0] * jacobian, value[1] * jacobian]
                }
                Err(err) => {
                    if failure.take().is_none() {
                        failure.set(Some(err));
                    }
                    [0.0, 0.0]
                }
            }
        };

        let out = adaptive_quad(
            integrand,
            p0,
            p1,
            tol_surface,
            &breakpoints,
            DEFAULT_MAX_SEGMENTS,
        );
        if let Some(err) = failure.take() {
            return Err(err);
        }
        let error = out.error + measure * worst_node_error.get();
        if !out.converged {
            return Err(FluxError::Accuracy {
                requested: tol,
                achieved: error,
                context: "surface integration of the face flux".into(),
            });
        }
        Ok((from_sample(out.value, self.components()), error))
    }

    /// Per-node time integral of f(u(x,·))·ν over [t1, t2].
    ///
    /// Returns (value, error estimate, converged). Constant stretches between
    /// wave events contribute exactly; only rarefaction stretches consume the
    /// tolerance.
    fn node_time_flux(
        &self,
        x: &Coord,
        normal: &Coord,
        t1: f64,
        t2: f64,
        tol: f64,
    ) -> Result<(Sample, f64, bool)> {
        let xi = self.signed_coordinate(x);
        let events = self.crossing_times(xi, t1, t2);
        let mut edges = Vec::with_capacity(events.times().len() + 2);
        edges.push(t1);
        edges.extend_from_slice(events.times());
        edges.push(t2);

        // Segments whose midpoint similarity coordinate falls strictly inside
        // a fan need quadrature; all others are constant in time.
        let fan_segment = |a: f64, b: f64| -> bool {
            if xi == 0.0 {
                // ξ/t is identically zero: constant state w(0).
                return false;
            }
            let mid = 0.5 * (a + b);
            if mid <= 0.0 {
                return false;
            }
            let sim = xi / mid;
            self.fan().waves().iter().any(
                |w| matches!(w, Wave::Rarefaction { head, tail, .. } if *head < sim && sim < *tail),
            )
        };

        let fan_count = edges.windows(2).filter(|w| fan_segment(w[0], w[1])).count();
        let tol_per_fan = if fan_count > 0 {
            tol / fan_count as f64
        } else {
            tol
        };

        let mut pieces: Vec<Sample> = Vec::with_capacity(edges.len() - 1);
        let mut error = 0.0;
        let mut converged = true;
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            if fan_segment(a, b) {
                let failure: Cell<Option<FluxError>> = Cell::new(None);
                let out = adaptive_quad(
                    |t: f64| {
                        let u = self.fan().sample(xi / t);
                        match self.model().directional_flux(&u, normal) {
                            Ok(g) => to_sample(&g),
                            Err(err) => {
                                if failure.take().is_none() {
                                    failure.set(Some(err));
                                }
                                [0.0, 0.0]
                            }
                        }
                    },
                    a,
                    b,
                    tol_per_fan,
                    &[],
                    DEFAULT_MAX_SEGMENTS,
                );
                if let Some(err) = failure.take() {
                    return Err(err);
                }
                pieces.push(out.value);
                error += out.error;
                converged &= out.converged;
            } else {
                let mid = 0.5 * (a + b);
                let u = if xi == 0.0 {
                    self.fan().sample(0.0)
                } else if mid > 0.0 {
                    self.fan().sample(xi / mid)
                } else {
                    // t1 = t2 = 0 is excluded by the caller.
                    unreachable!("time segment with nonpositive midpoint");
                };
                let g = self.model().directional_flux(&u, normal)?;
                let s = to_sample(&g);
                pieces.push([s[0] * (b - a), s[1] * (b - a)]);
            }
        }

        let col0: Vec<f64> = pieces.iter().map(|p| p[0]).collect();
        let col1: Vec<f64> = pieces.iter().map(|p| p[1]).collect();
        Ok(([pairwise_sum(&col0), pairwise_sum(&col1)], error, converged))
    }

    /// Parameter values where a wave crossing time enters or leaves [t1, t2]
    /// along the face: the kinks of the per-node time-integrated flux.
    fn surface_breakpoints(&self, face: &Face, t1: f64, t2: f64) -> Vec<f64> {
        let mut targets: Vec<f64> = Vec::new();
        for s in self.fan().speeds() {
            for t in [t1, t2] {
                targets.push(s * t);
            }
        }
        targets.push(0.0);

        let nu = self.normal();
        let mut out = Vec::new();
        match face {
            Face::Axis(af) => {
                let Some((c0, c1)) = af.cross else { return out };
                let along = 1 - af.axis;
                if nu[along].abs() < 1e-14 {
                    return out;
                }
                let fixed = nu[af.axis] * af.position - self.offset();
                for target in targets {
                    let p = (target - fixed) / nu[along];
                    if p > c0 && p < c1 {
                        out.push(p);
                    }
                }
            }
            Face::Arc(arc) => {
                // ξ(θ) = c·ν - x₀ + R cos(θ - α) with α the normal's angle.
                let alpha = nu[1].atan2(nu[0]);
                let base = arc.center.dot(&nu) - self.offset();
                let (t_lo, t_hi) = arc.theta;
                for target in targets {
                    let q = (target - base) / arc.radius;
                    if q.abs() > 1.0 {
                        continue;
                    }
                    let corner = q.acos();
                    for candidate in [alpha + corner, alpha - corner] {
                        for k in -2..=2 {
                            let theta = candidate + 2.0 * std::f64::consts::PI * k as f64;
                            if theta > t_lo && theta < t_hi {
                                out.push(theta);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
