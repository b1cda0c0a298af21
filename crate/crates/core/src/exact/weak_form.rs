//! Weak-form residuals: the space-time integral of u·∂φ/∂t + f(u)·∇φ against
//! smooth test functions vanishing on the cylinder boundary.
//!
//! For an exact weak solution the residual is identically zero; what is
//! reported is the quadrature of the integrand, split along wave lines so the
//! only error left is the quadrature's own. Test functions are polynomial
//! bumps: a squared parabolic window per coordinate times a random quadratic
//! polynomial with coefficients from a seeded generator.

use std::cell::Cell;

use crate::error::{FluxError, Result};
use crate::geometry::{BoxDomain, Coord};
use crate::quadrature::adaptive_quad_scalar;
use crate::rng::SplitMix64;

use super::PlanarWeakSolution;

const TOL_OUTER: f64 = 1e-8;
const TOL_MIDDLE: f64 = 1e-10;
const TOL_INNER: f64 = 1e-11;
const SEGMENTS_OUTER: usize = 800;
const SEGMENTS_MIDDLE: usize = 400;
const SEGMENTS_INNER: usize = 240;

/// Monomial exponents (x1, x2, t) of a quadratic polynomial in space-time.
const MONOMIALS_1D: &[(u32, u32, u32)] = &[
    (0, 0, 0),
    (1, 0, 0),
    (0, 0, 1),
    (2, 0, 0),
    (1, 0, 1),
    (0, 0, 2),
];
const MONOMIALS_2D: &[(u32, u32, u32)] = &[
    (0, 0, 0),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (2, 0, 0),
    (0, 2, 0),
    (0, 0, 2),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
];

/// A smooth ℝ^D-valued test function on a cylinder Q = Ω × [t1, t2],
/// vanishing on ∂Q: per component, a product of squared parabolic windows
/// times a quadratic polynomial.
#[derive(Clone, Debug)]
pub struct PolynomialBump {
    space: BoxDomain,
    time: (f64, f64),
    /// Per component, one coefficient per monomial.
    coeffs: Vec<Vec<f64>>,
}

fn window(s: f64, a: f64, b: f64) -> f64 {
    let q = 4.0 * (s - a) * (b - s) / ((b - a) * (b - a));
    q * q
}

fn window_derivative(s: f64, a: f64, b: f64) -> f64 {
    let scale = 4.0 / ((b - a) * (b - a));
    let q = scale * (s - a) * (b - s);
    let dq = scale * (a + b - 2.0 * s);
    2.0 * q * dq
}

impl PolynomialBump {
    fn monomials(&self) -> &'static [(u32, u32, u32)] {
        if self.space.dim() == 1 {
            MONOMIALS_1D
        } else {
            MONOMIALS_2D
        }
    }

    /// Random coefficients in [-1, 1] from a seeded generator.
    pub fn random(
        space: BoxDomain,
        t1: f64,
        t2: f64,
        components: usize,
        rng: &mut SplitMix64,
    ) -> Self {
        let count = if space.dim() == 1 {
            MONOMIALS_1D.len()
        } else {
            MONOMIALS_2D.len()
        };
        let coeffs = (0..components)
            .map(|_| (0..count).map(|_| rng.next_range(-1.0, 1.0)).collect())
            .collect();
        Self {
            space,
            time: (t1, t2),
            coeffs,
        }
    }

    /// The plain bump (polynomial part ≡ 1) in every component.
    pub fn plain(space: BoxDomain, t1: f64, t2: f64, components: usize) -> Self {
        let count = if space.dim() == 1 {
            MONOMIALS_1D.len()
        } else {
            MONOMIALS_2D.len()
        };
        let coeffs = (0..components)
            .map(|_| {
                let mut c = vec![0.0; count];
                c[0] = 1.0;
                c
            })
            .collect();
        Self {
            space,
            time: (t1, t2),
            coeffs,
        }
    }

    pub fn components(&self) -> usize {
        self.coeffs.len()
    }

    fn poly(&self, i: usize, x: &Coord, t: f64) -> f64 {
        let x2 = if x.dim() > 1 { x[1] } else { 0.0 };
        self.monomials()
            .iter()
            .zip(&self.coeffs[i])
            .map(|(&(e1, e2, et), &c)| {
                c * x[0].powi(e1 as i32) * x2.powi(e2 as i32) * t.powi(et as i32)
            })
            .sum()
    }

    fn poly_dt(&self, i: usize, x: &Coord, t: f64) -> f64 {
        let x2 = if x.dim() > 1 { x[1] } else { 0.0 };
        self.monomials()
            .iter()
            .zip(&self.coeffs[i])
            .filter(|(&(_, _, et), _)| et > 0)
            .map(|(&(e1, e2, et), &c)| {
                c * et as f64 * x[0].powi(e1 as i32) * x2.powi(e2 as i32) * t.powi(et as i32 - 1)
            })
            .sum()
    }

    fn poly_dx(&self, i: usize, axis: usize, x: &Coord, t: f64) -> f64 {
        let x2 = if x.dim() > 1 { x[1] } else { 0.0 };
        self.monomials()
            .iter()
            .zip(&self.coeffs[i])
            .filter(|(&(e1, e2, _), _)| if axis == 0 { e1 > 0 } else { e2 > 0 })
            .map(|(&(e1, e2, et), &c)| {
                let term = c * t.powi(et as i32);
                if axis == 0 {
                    term * e1 as f64 * x[0].powi(e1 as i32 - 1) * x2.powi(e2 as i32)
                } else {
                    term * e2 as f64 * x[0].powi(e1 as i32) * x2.powi(e2 as i32 - 1)
                }
            })
            .sum()
    }

    fn windows(&self, x: &Coord, t: f64) -> (f64, f64) {
        let mut spatial = 1.0;
        for j in 0..self.space.dim() {
            let (a, b) = self.space.side(j);
            spatial *= window(x[j], a, b);
        }
        (spatial, window(t, self.time.0, self.time.1))
    }

    pub fn value(&self, i: usize, x: &Coord, t: f64) -> f64 {
        let (sx, st) = self.windows(x, t);
        sx * st * self.poly(i, x, t)
    }

    pub fn dt(&self, i: usize, x: &Coord, t: f64) -> f64 {
        let (sx, st) = self.windows(x, t);
        let dst = window_derivative(t, self.time.0, self.time.1);
        sx * (dst * self.poly(i, x, t) + st * self.poly_dt(i, x, t))
    }

    pub fn gradient(&self, i: usize, x: &Coord, t: f64) -> Coord {
        let (sx, st) = self.windows(x, t);
        let p = self.poly(i, x, t);
        let mut out = Coord::zero(x.dim());
        for j in 0..self.space.dim() {
            let (a, b) = self.space.side(j);
            let wj = window(x[j], a, b);
            // Spatial window with axis j's factor swapped for its derivative.
            let others = if wj != 0.0 {
                sx / wj
            } else {
                let k = 1 - j;
                if self.space.dim() == 1 {
                    1.0
                } else {
                    let (ak, bk) = self.space.side(k);
                    window(x[k], ak, bk)
                }
            };
            let dwj = window_derivative(x[j], a, b);
            let dj = st * others * (dwj * p + wj * self.poly_dx(i, j, x, t));
            out = out.add(&Coord::unit_axis(j, x.dim(), dj));
        }
        out
    }
}

impl PlanarWeakSolution {
    /// |∫∫_Q Σ_i u_i ∂φ_i/∂t + f_i(u)·∇φ_i dx dt|; near zero certifies the
    /// weak-solution property.
    pub fn weak_form_residual(
        &self,
        test: &PolynomialBump,
        space: &BoxDomain,
        t1: f64,
        t2: f64,
    ) -> Result<f64> {
        if space.dim() != self.dim() {
            return Err(FluxError::SamplerDomain(format!(
                "cylinder dimension {} (solution is {}-dimensional)",
                space.dim(),
                self.dim()
            )));
        }
        if !(t1 >= 0.0 && t2 > t1) {
            return Err(FluxError::InvalidArgument(format!(
                "need 0 <= t1 < t2, got t1 = {t1}, t2 = {t2}"
            )));
        }
        if test.components() != self.components() {
            return Err(FluxError::InvalidArgument(
                "test function component count differs from the solution's".into(),
            ));
        }

        let failure: Cell<Option<FluxError>> = Cell::new(None);
        let integrand = |x: &Coord, t: f64| -> f64 {
            let result = self.sample(x, t).and_then(|u| {
                let f = self.model().flux(&u)?;
                let mut total = 0.0;
                for i in 0..self.components() {
                    total += u[i] * test.dt(i, x, t);
                    total += f.row(i).dot(&test.gradient(i, x, t));
                }
                Ok(total)
            });
            match result {
                Ok(v) => v,
                Err(err) => {
                    if failure.take().is_none() {
                        failure.set(Some(err));
                    }
                    0.0
                }
            }
        };

        let nu = self.normal();
        let speeds = self.fan().speeds();

        let spatial_integral = |t: f64| -> f64 {
            if space.dim() == 1 {
                let (a, b) = space.side(0);
                let cuts: Vec<f64> = speeds.iter().map(|s| self.offset() + s * t).collect();
                adaptive_quad_scalar(
                    |x| integrand(&Coord::d1(x), t),
                    a,
                    b,
                    TOL_INNER,
                    &cuts,
                    SEGMENTS_INNER,
                )
                .value[0]
            } else {
                let (a1, b1) = space.side(0);
                let (a2, b2) = space.side(1);
                // Wave lines at time t: ν·x = offset + s·t. Split the middle
                // integral where a wave line crosses the strip edges, the
                // inner one where it crosses the strip itself.
                let mut cuts1 = Vec::new();
                if nu[0].abs() > 1e-14 {
                    for s in &speeds {
                        for c in [a2, b2] {
                            cuts1.push((self.offset() + s * t - nu[1] * c) / nu[0]);
                        }
                    }
                }
                adaptive_quad_scalar(
                    |x1| {
                        let mut cuts2 = Vec::new();
                        if nu[1].abs() > 1e-14 {
                            for s in &speeds {
                                cuts2.push((self.offset() + s * t - nu[0] * x1) / nu[1]);
                            }
                        }
                        adaptive_quad_scalar(
                            |x2| integrand(&Coord::d2(x1, x2), t),
                            a2,
                            b2,
                            TOL_INNER,
                            &cuts2,
                            SEGMENTS_INNER,
                        )
                        .value[0]
                    },
                    a1,
                    b1,
                    TOL_MIDDLE,
                    &cuts1,
                    SEGMENTS_MIDDLE,
                )
                .value[0]
            }
        };

        // Outer time integral, split where a wave line passes a corner.
        let mut time_cuts = Vec::new();
        for corner in space.corners() {
            let xi = corner.dot(&nu) - self.offset();
            for s in &speeds {
                if *s != 0.0 {
                    let t = xi / s;
                    if t > t1 && t < t2 {
                        time_cuts.push(t);
                    }
                }
            }
        }
        let out = adaptive_quad_scalar(
            spatial_integral,
            t1,
            t2,
            TOL_OUTER,
            &time_cuts,
            SEGMENTS_OUTER,
        );
        if let Some(err) = failure.take() {
            return Err(err);
        }
        Ok(out.value[0].abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{StateVector, SystemModel};

    fn cylinder_1d() -> BoxDomain {
        BoxDomain::new(Coord::d1(-1.0), Coord::d1(1.0)).unwrap()
    }

    #[test]
    fn constant_solution_has_zero_residual() {
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(0.7),
            StateVector::scalar(0.7),
        )
        .unwrap();
        let q = cylinder_1d();
        let bump = PolynomialBump::plain(q.clone(), 0.0, 1.0, 1);
        let r = sol.weak_form_residual(&bump, &q, 0.0, 1.0).unwrap();
        assert!(r <= 1e-12, "residual {r}");
    }

    #[test]
    fn shock_residual_small_for_random_bumps() {
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(1.0),
            StateVector::scalar(0.0),
        )
        .unwrap();
        let q = cylinder_1d();
        let mut rng = SplitMix64::new(12345);
        for _ in 0..3 {
            let bump = PolynomialBump::random(q.clone(), 0.0, 1.0, 1, &mut rng);
            let r = sol.weak_form_residual(&bump, &q, 0.0, 1.0).unwrap();
            assert!(r <= 1e-6, "residual {r}");
        }
    }

    #[test]
    fn rarefaction_residual_small() {
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(0.0),
            StateVector::scalar(1.0),
        )
        .unwrap();
        let q = cylinder_1d();
        let mut rng = SplitMix64::new(99);
        let bump = PolynomialBump::random(q.clone(), 0.0, 1.0, 1, &mut rng);
        let r = sol.weak_form_residual(&bump, &q, 0.0, 1.0).unwrap();
        assert!(r <= 1e-6, "residual {r}");
    }

    #[test]
    fn oblique_2d_shock_residual_small() {
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
        let q = BoxDomain::new(Coord::d2(-1.0, -1.0), Coord::d2(1.0, 1.0)).unwrap();
        let mut rng = SplitMix64::new(2024);
        let bump = PolynomialBump::random(q.clone(), 0.0, 0.5, 1, &mut rng);
        let r = sol.weak_form_residual(&bump, &q, 0.0, 0.5).unwrap();
        assert!(r <= 1e-6, "residual {r}");
    }

    #[test]
    fn residual_detects_nonvanishing_test_function() {
        // A time window wider than the cylinder leaves boundary terms
        // behind; the residual must then be far from zero. This is the
        // negative control for the cancellation in the other tests.
        let sol = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(1.0),
            StateVector::scalar(0.0),
        )
        .unwrap();
        let q = cylinder_1d();
        let bump = PolynomialBump::plain(q.clone(), -0.5, 1.5, 1);
        let r = sol.weak_form_residual(&bump, &q, 0.0, 1.0).unwrap();
        assert!(r > 1e-3, "residual {r} should expose the boundary terms");
    }

    #[test]
    fn bump_vanishes_on_cylinder_boundary() {
        let q = BoxDomain::new(Coord::d2(0.0, -1.0), Coord::d2(2.0, 1.0)).unwrap();
        let mut rng = SplitMix64::new(5);
        let bump = PolynomialBump::random(q.clone(), 0.5, 1.5, 1, &mut rng);
        assert_eq!(bump.value(0, &Coord::d2(0.0, 0.3), 1.0), 0.0);
        assert_eq!(bump.value(0, &Coord::d2(1.0, 1.0), 1.0), 0.0);
        assert_eq!(bump.value(0, &Coord::d2(1.0, 0.3), 0.5), 0.0);
        assert!(bump.value(0, &Coord::d2(1.0, 0.0), 1.0).abs() >= 0.0);
    }

    #[test]
    fn bump_gradient_matches_finite_differences() {
        let q = BoxDomain::new(Coord::d2(0.0, -1.0), Coord::d2(2.0, 1.0)).unwrap();
        let mut rng = SplitMix64::new(17);
        let bump = PolynomialBump::random(q.clone(), 0.0, 1.0, 2, &mut rng);
        let x = Coord::d2(0.8, 0.2);
        let t = 0.4;
        let h = 1e-6;
        for i in 0..2 {
            let g = bump.gradient(i, &x, t);
            let dx = (bump.value(i, &Coord::d2(0.8 + h, 0.2), t)
                - bump.value(i, &Coord::d2(0.8 - h, 0.2), t))
                / (2.0 * h);
            let dy = (bump.value(i, &Coord::d2(0.8, 0.2 + h), t)
                - bump.value(i, &Coord::d2(0.8, 0.2 - h), t))
                / (2.0 * h);
            assert!((g[0] - dx).abs() < 1e-8);
            assert!((g[1] - dy).abs() < 1e-8);
            let dt = (bump.value(i, &x, t + h) - bump.value(i, &x, t - h)) / (2.0 * h);
            assert!((bump.dt(i, &x, t) - dt).abs() < 1e-8);
        }
    }
}
