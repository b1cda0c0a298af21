//! Exact Riemann solver for the 1D shallow-water equations.
//!
//! State (h, m) with depth h > 0 and momentum m = h·u; flux (m, m²/h + g·h²/2).
//! The star depth solves f_L(h) + f_R(h) + (u_R - u_L) = 0 by Newton iteration
//! from the two-rarefaction initial guess; each side is a shock when the star
//! depth exceeds the adjacent depth and a rarefaction otherwise.

use crate::error::{FluxError, Result};

use super::riemann::{Fan, RiemannFan, SwSide, Wave};
use super::StateVector;

const DEPTH_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct StarState {
    pub depth: f64,
    pub velocity: f64,
    pub iterations: usize,
}

/// Depth-connection function for one side: the velocity change needed to
/// connect depth `h` to the adjacent state of depth `h_k`, celerity `c_k`.
fn wave_function(gravity: f64, h: f64, h_k: f64, c_k: f64) -> f64 {
    if h <= h_k {
        // Rarefaction.
        2.0 * ((gravity * h).sqrt() - c_k)
    } else {
        // Shock.
        let mean = 0.5 * gravity * (h + h_k) / (h * h_k);
        (h - h_k) * mean.sqrt()
    }
}

fn wave_function_derivative(gravity: f64, h: f64, h_k: f64) -> f64 {
    if h <= h_k {
        (gravity / h).sqrt()
    } else {
        let mean = 0.5 * gravity * (h + h_k) / (h * h_k);
        let root = mean.sqrt();
        root - (h - h_k) * gravity / (4.0 * h * h * root)
    }
}

/// Newton iteration for the star region between the two waves.
pub fn star_state(gravity: f64, h_l: f64, u_l: f64, h_r: f64, u_r: f64) -> Result<StarState> {
    let c_l = (gravity * h_l).sqrt();
    let c_r = (gravity * h_r).sqrt();
    if u_r - u_l >= 2.0 * (c_l + c_r) {
        return Err(FluxError::Vacuum);
    }

    // Two-rarefaction approximation as the initial guess.
    let guess = 0.5 * (c_l + c_r) - 0.25 * (u_r - u_l);
    let mut h = (guess * guess / gravity).max(DEPTH_TOL * h_l.min(h_r));

    for iteration in 1..=MAX_ITERATIONS {
        let value =
            wave_function(gravity, h, h_l, c_l) + wave_function(gravity, h, h_r, c_r) + (u_r - u_l);
        let slope =
            wave_function_derivative(gravity, h, h_l) + wave_function_derivative(gravity, h, h_r);
        let step = value / slope;
        let mut next = h - step;
        if next <= 0.0 {
            next = 0.5 * h;
        }
        let converged = (next - h).abs() <= DEPTH_TOL * next.max(1.0);
        h = next;
        if converged {
            let velocity = 0.5 * (u_l + u_r)
                + 0.5 * (wave_function(gravity, h, h_r, c_r) - wave_function(gravity, h, h_l, c_l));
            return Ok(StarState {
                depth: h,
                velocity,
                iterations: iteration,
            });
        }
    }

    let residual =
        wave_function(gravity, h, h_l, c_l) + wave_function(gravity, h, h_r, c_r) + (u_r - u_l);
    Err(FluxError::NoConvergence {
        iterations: MAX_ITERATIONS,
        last_depth: h,
        residual,
    })
}

/// The full wave structure of the standard-orientation Riemann problem.
pub fn solve(gravity: f64, left: StateVector, right: StateVector) -> Result<RiemannFan> {
    let (h_l, m_l) = (left[0], left[1]);
    let (h_r, m_r) = (right[0], right[1]);
    let u_l = m_l / h_l;
    let u_r = m_r / h_r;
    let c_l = (gravity * h_l).sqrt();
    let c_r = (gravity * h_r).sqrt();

    if left == right {
        return Ok(RiemannFan::constant(left));
    }

    let star = star_state(gravity, h_l, u_l, h_r, u_r)?;
    if star.depth <= 0.0 {
        return Err(FluxError::Vacuum);
    }
    let c_star = (gravity * star.depth).sqrt();
    let middle = StateVector::pair(star.depth, star.depth * star.velocity);

    let left_wave = if star.depth > h_l {
        let speed = u_l - c_l * (star.depth * (star.depth + h_l) / (2.0 * h_l * h_l)).sqrt();
        Wave::Shock { speed }
    } else {
        Wave::Rarefaction {
            head: u_l - c_l,
            tail: star.velocity - c_star,
            fan: Fan::ShallowWater {
                side: SwSide::Left,
                vel: u_l,
                cel: c_l,
                gravity,
                mirrored: false,
            },
        }
    };

    let right_wave = if star.depth > h_r {
        let speed = u_r + c_r * (star.depth * (star.depth + h_r) / (2.0 * h_r * h_r)).sqrt();
        Wave::Shock { speed }
    } else {
        Wave::Rarefaction {
            head: star.velocity + c_star,
            tail: u_r + c_r,
            fan: Fan::ShallowWater {
                side: SwSide::Right,
                vel: u_r,
                cel: c_r,
                gravity,
                mirrored: false,
            },
        }
    };

    Ok(RiemannFan::new(
        vec![left, middle, right],
        vec![left_wave, right_wave],
    ))
}
