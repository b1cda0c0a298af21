//! Exact masses ∫_Ω u(x, t) dx of planar solutions over boxes and disks.
//!
//! A planar solution depends on x only through the normal coordinate
//! s = x·ν̂, so the mass reduces to a 1D integral of w((s - x₀)/t) against
//! the chord-length profile of the domain. Splitting at wave positions and
//! chord breakpoints makes the box integrand piecewise polynomial (degree
//! ≤ 4), which a fixed Gauss rule integrates exactly; disks fall back to
//! adaptive quadrature in an angular variable with absolute tolerance 1e-10.

use crate::error::{FluxError, Result};
use crate::geometry::{BoxDomain, Coord, Disk, Domain};
use crate::quadrature::{adaptive_quad, pairwise_sum, GaussRule, Sample, DEFAULT_MAX_SEGMENTS};
use crate::systems::StateVector;

use super::{from_sample, to_sample, PlanarWeakSolution};

/// Absolute tolerance of the adaptive fallback path.
pub const MASS_TOL: f64 = 1e-10;

impl PlanarWeakSolution {
    /// ∫_Ω u(x, t) dx, componentwise.
    pub fn mass(&self, domain: &Domain, t: f64) -> Result<StateVector> {
        if t < 0.0 {
            return Err(FluxError::InvalidArgument(format!(
                "time must be nonnegative, got {t}"
            )));
        }
        if domain.dim() != self.dim() {
            return Err(FluxError::SamplerDomain(format!(
                "domain dimension {} (solution is {}-dimensional)",
                domain.dim(),
                self.dim()
            )));
        }
        match domain {
            Domain::Box(b) => self.mass_box(b, t),
            Domain::Disk(d) => self.mass_disk(d, t),
        }
    }

    /// State at normal coordinate s (the planar profile at time t).
    fn profile(&self, s: f64, t: f64) -> StateVector {
        if t == 0.0 {
            if s - self.offset() <= 0.0 {
                self.left()
            } else {
                self.right()
            }
        } else {
            self.fan().sample((s - self.offset()) / t)
        }
    }

    fn mass_box(&self, b: &BoxDomain, t: f64) -> Result<StateVector> {
        let d = self.components();
        if b.measure() == 0.0 {
            return Ok(StateVector::zeros(d));
        }
        let rule = GaussRule::new(8);

        if b.dim() == 1 {
            let (a, c) = b.side(0);
            let cuts = self.piece_edges(a, c, t);
            let mut pieces: Vec<Sample> = Vec::with_capacity(cuts.len() - 1);
            for w in cuts.windows(2) {
                pieces.push(rule.integrate_vec(w[0], w[1], |s| to_sample(&self.profile(s, t))));
            }
            return Ok(reduce(&pieces, d));
        }

        // 2D: integrate profile(s) times the chord length of the box at
        // normal coordinate s. Chord breakpoints are corner projections.
        let projections: Vec<f64> = b.corners().iter().map(|p| p.dot(&self.normal())).collect();
        let s_min = projections.iter().cloned().fold(f64::INFINITY, f64::min);
        let s_max = projections
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let mut cuts = self.piece_edges(s_min, s_max, t);
        for p in projections {
            if p > s_min && p < s_max {
                cuts.push(p);
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (s_max - s_min).max(1.0));

        let mut pieces: Vec<Sample> = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            pieces.push(rule.integrate_vec(w[0], w[1], |s| {
                let chord = chord_length(b, &self.normal(), s);
                let u = self.profile(s, t);
                let mut v = to_sample(&u);
                v[0] *= chord;
                v[1] *= chord;
                v
            }));
        }
        Ok(reduce(&pieces, d))
    }

    fn mass_disk(&self, disk: &Disk, t: f64) -> Result<StateVector> {
        let d = self.components();
        let radius = disk.radius;
        let center_s = disk.center.dot(&self.normal());
        // Substitute s = center_s + R sin(φ): the chord 2√(R² - (s-c)²)
        // becomes 2R cos(φ) and ds = R cos(φ) dφ, removing the square-root
        // endpoints.
        let half_pi = std::f64::consts::FRAC_PI_2;
        let mut cuts = vec![-half_pi, half_pi];
        for pos in self.wave_positions(t) {
            let q = (pos - center_s) / radius;
            if q.abs() < 1.0 {
                cuts.push(q.asin());
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14);

        let integrand = |phi: f64| {
            let s = center_s + radius * phi.sin();
            let scale = 2.0 * radius * radius * phi.cos() * phi.cos();
            let mut v = to_sample(&self.profile(s, t));
            v[0] *= scale;
            v[1] *= scale;
            v
        };
        let out = adaptive_quad(
            integrand,
            -half_pi,
            half_pi,
            MASS_TOL,
            &cuts,
            DEFAULT_MAX_SEGMENTS,
        );
        if !out.converged {
            return Err(FluxError::Accuracy {
                requested: MASS_TOL,
                achieved: out.error,
                context: "mass over disk".into(),
            });
        }
        Ok(from_sample(out.value, d))
    }

    /// Sorted integration edges for [lo, hi] along the normal coordinate,
    /// split at wave positions.
    fn piece_edges(&self, lo: f64, hi: f64, t: f64) -> Vec<f64> {
        let mut cuts = vec![lo, hi];
        if t == 0.0 {
            let p = self.offset();
            if p > lo && p < hi {
                cuts.push(p);
            }
        } else {
            for p in self.wave_positions(t) {
                if p > lo && p < hi {
                    cuts.push(p);
                }
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (hi - lo).max(1.0));
        cuts
    }
}

/// Length of the intersection of a box with the line {x·ν = s}.
fn chord_length(b: &BoxDomain, nu: &Coord, s: f64) -> f64 {
    // Point on the line plus its tangent direction.
    let base = nu.scaled(s);
    let tangent = Coord::d2(-nu[1], nu[0]);
    let mut r_lo = f64::NEG_INFINITY;
    let mut r_hi = f64::INFINITY;
    for j in 0..2 {
        let (lo, hi) = b.side(j);
        if tangent[j].abs() < 1e-15 {
            if base[j] < lo || base[j] > hi {
                return 0.0;
            }
        } else {
            let r1 = (lo - base[j]) / tangent[j];
            let r2 = (hi - base[j]) / tangent[j];
            r_lo = r_lo.max(r1.min(r2));
            r_hi = r_hi.min(r1.max(r2));
        }
    }
    (r_hi - r_lo).max(0.0)
}

fn reduce(pieces: &[Sample], components: usize) -> StateVector {
    let col0: Vec<f64> = pieces.iter().map(|p| p[0]).collect();
    let col1: Vec<f64> = pieces.iter().map(|p| p[1]).collect();
    from_sample([pairwise_sum(&col0), pairwise_sum(&col1)], components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::SystemModel;

    fn burgers_shock_1d() -> PlanarWeakSolution {
        PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(1.0),
            StateVector::scalar(0.0),
        )
        .unwrap()
    }

    #[test]
    fn shock_mass_on_unit_interval() {
        let sol = burgers_shock_1d();
        let domain = Domain::Box(BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0)).unwrap());
        // Shock sits at 0.5 at t = 1, so the mass is 0.5; at t = 0 the
        // initial data vanishes on (0, 1).
        let m = sol.mass(&domain, 1.0).unwrap();
        assert!((m[0] - 0.5).abs() < 1e-13);
        let m = sol.mass(&domain, 0.0).unwrap();
        assert!(m[0].abs() < 1e-15);
    }

    #[test]
    fn degenerate_box_has_zero_mass() {
        let sol = burgers_shock_1d();
        let domain = Domain::Box(BoxDomain::degenerate(Coord::d1(0.3), Coord::d1(0.3)).unwrap());
        let m = sol.mass(&domain, 1.0).unwrap();
        assert_eq!(m[0], 0.0);
    }

    #[test]
    fn rarefaction_mass_matches_closed_form() {
        // Fan between 0 and t: ∫_0^1 u dx = t/2 · (value ramp) for t ≤ 1.
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(0.0),
            StateVector::scalar(1.0),
        )
        .unwrap();
        let domain = Domain::Box(BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0)).unwrap());
        let t = 0.8;
        // ∫_0^t x/t dx + ∫_t^1 1 dx = t/2 + (1 - t).
        let expected = t / 2.0 + (1.0 - t);
        let m = sol.mass(&domain, t).unwrap();
        assert!((m[0] - expected).abs() < 1e-13);
    }

    #[test]
    fn oblique_mass_against_midpoint_oracle() {
        // Brute-force 2D midpoint sum as an independent check.
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(2).unwrap(),
            Coord::d2(
                std::f64::consts::FRAC_1_SQRT_2,
                std::f64::consts::FRAC_1_SQRT_2,
            ),
            0.1,
            StateVector::scalar(1.0),
            StateVector::scalar(0.0),
        )
        .unwrap();
        let b = BoxDomain::new(Coord::d2(-0.5, -0.4), Coord::d2(0.9, 0.8)).unwrap();
        let t = 0.3;
        let n = 801;
        let mut acc = 0.0;
        let (dx, dy) = ((0.9f64 - -0.5) / n as f64, (0.8f64 - -0.4) / n as f64);
        for i in 0..n {
            for j in 0..n {
                let x = Coord::d2(-0.5 + (i as f64 + 0.5) * dx, -0.4 + (j as f64 + 0.5) * dy);
                acc += sol.sample(&x, t).unwrap()[0] * dx * dy;
            }
        }
        let m = sol.mass(&Domain::Box(b), t).unwrap();
        // Midpoint with a discontinuous integrand is only ~O(h) accurate.
        assert!(
            (m[0] - acc).abs() < 5e-3,
            "exact {} vs midpoint {acc}",
            m[0]
        );
    }

    #[test]
    fn disk_mass_of_constant_state() {
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(2).unwrap(),
            Coord::d2(1.0, 0.0),
            0.0,
            StateVector::scalar(0.75),
            StateVector::scalar(0.75),
        )
        .unwrap();
        let disk = Disk::new(Coord::d2(0.2, -0.1), 1.3).unwrap();
        let m = sol.mass(&Domain::Disk(disk), 0.5).unwrap();
        let area = std::f64::consts::PI * 1.3 * 1.3;
        assert!((m[0] - 0.75 * area).abs() < 1e-9);
    }

    #[test]
    fn disk_mass_of_halfplane_step() {
        // Step through the center at t = 0: exactly half the disk carries 1.
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(2).unwrap(),
            Coord::d2(
                std::f64::consts::FRAC_1_SQRT_2,
                std::f64::consts::FRAC_1_SQRT_2,
            ),
            0.0,
            StateVector::scalar(1.0),
            StateVector::scalar(0.0),
        )
        .unwrap();
        let disk = Disk::new(Coord::d2(0.0, 0.0), 1.0).unwrap();
        let m = sol.mass(&Domain::Disk(disk), 0.0).unwrap();
        assert!((m[0] - 0.5 * std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn mass_continuity_lipschitz_in_time() {
        // |m(t) - m(t')| ≤ sup|f·ν| · |∂Ω| · |t - t'| on a sampled grid.
        let sol = burgers_shock_1d();
        let domain = Domain::Box(BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0)).unwrap());
        let (lo, hi) = sol.component_bounds();
        let bound = sol.model().flux_normal_bound(&lo, &hi, None)[0] * domain.boundary_measure();
        let times: Vec<f64> = (0..=40).map(|k| k as f64 * 0.05).collect();
        let masses: Vec<f64> = times
            .iter()
            .map(|&t| sol.mass(&domain, t).unwrap()[0])
            .collect();
        for w in masses.windows(2) {
            assert!((w[1] - w[0]).abs() <= bound * 0.05 + 1e-12);
        }
    }
}
