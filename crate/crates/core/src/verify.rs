//! Executable verdicts on the three regularity claims — the balance
//! equation, Lipschitz flux traces under boundary deformation, and time
//! continuity of interval fluxes — plus the weak form, the discrete
//! corollary for box meshes, and solver/oracle convergence.
//!
//! Checks never panic on quadrature failures: a failed computation becomes a
//! failing case in the report, and every case records its tolerance and
//! provenance. Reports are deterministic given the same inputs and seed
//! (runtimes excepted).

use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::exact::{PlanarWeakSolution, PolynomialBump};
use crate::geometry::{BoundaryFoliation, BoxDomain, Coord, Domain, Face};
use crate::rng::SplitMix64;
use crate::solver::{
    discrete_balance_residual, run, BoundaryKind, InitialData, LedgerFluxSource, Mesh,
    SolverConfig, Trajectory,
};
use crate::systems::{StateVector, SystemModel};
use crate::trace::{
    estimate_lipschitz, face_flux_profile, flux_trace, time_modulus, FluxSource, TraceProfile,
};

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub provenance: String,
    pub observed: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub passed: bool,
    pub runtime_ms: u64,
    pub inputs_digest: String,
    pub cases: Vec<CaseResult>,
}

impl VerificationReport {
    fn new(claim: &str) -> Self {
        Self {
            claim: claim.to_string(),
            passed: true,
            runtime_ms: 0,
            inputs_digest: String::new(),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, case: CaseResult) {
        self.passed &= case.passed;
        self.cases.push(case);
    }

    fn push_error(&mut self, name: &str, provenance: &str, tolerance: f64, err: &crate::FluxError) {
        self.push(CaseResult {
            name: name.to_string(),
            provenance: provenance.to_string(),
            observed: f64::NAN,
            tolerance,
            passed: false,
            detail: json!({ "error": err.to_string() }),
        });
    }

    pub fn with_digest(mut self, digest: &str) -> Self {
        self.inputs_digest = digest.to_string();
        self
    }
}

/// Balance equation on a fixed domain: |m(t2) - m(t1) + h(t1, t2)| per
/// component, where h is the net outward flux trace.
pub fn check_balance_exact(
    oracle: &PlanarWeakSolution,
    domain: &Domain,
    t1: f64,
    t2: f64,
    tol: f64,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("balance");
    let quad_tol = (tol * 0.1).min(1e-9);

    let pieces = (|| -> Result<(StateVector, StateVector, StateVector, f64)> {
        let m1 = oracle.mass(domain, t1)?;
        let m2 = oracle.mass(domain, t2)?;
        let trace = flux_trace(oracle, &domain.boundary(), 0.0, t1, t2, quad_tol)?;
        Ok((m1, m2, trace.value, trace.error_estimate))
    })();

    match pieces {
        Ok((m1, m2, h, flux_error)) => {
            for i in 0..oracle.components() {
                let residual = (m2[i] - m1[i] + h[i]).abs();
                report.push(CaseResult {
                    name: format!("component-{i}"),
                    provenance: "oracle-quadrature".into(),
                    observed: residual,
                    tolerance: tol,
                    passed: residual <= tol,
                    detail: json!({
                        "mass_t1": m1[i],
                        "mass_t2": m2[i],
                        "outward_flux": h[i],
                        "flux_error_estimate": flux_error,
                        "t1": t1,
                        "t2": t2,
                    }),
                });
            }
        }
        Err(err) => report.push_error("balance-evaluation", "oracle-quadrature", tol, &err),
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// What to differentiate in a Lipschitz check: a family of box sections or a
/// foliation of closed boundaries.
pub enum LipschitzTarget<'a> {
    /// F^j(x_j) across sections of a box, positions in [lo, hi] along `axis`.
    BoxFaces {
        domain: &'a BoxDomain,
        axis: usize,
        lo: f64,
        hi: f64,
    },
    Foliation(&'a BoundaryFoliation),
}

/// Lipschitz regularity of the flux trace: the first-difference estimate
/// must stabilize under grid doubling (≤ 5% growth per doubling once
/// K ≥ 32) and match a closed-form slope when one is supplied.
#[allow(clippy::too_many_arguments)]
pub fn check_trace_lipschitz(
    source: &dyn FluxSource,
    target: &LipschitzTarget,
    t1: f64,
    t2: f64,
    k_levels: &[usize],
    expected_slope: Option<f64>,
    match_tol: f64,
    quad_tol: f64,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("lipschitz-trace");
    let provenance = source.provenance().label();

    let profile_at = |k: usize| -> Result<TraceProfile> {
        match target {
            LipschitzTarget::BoxFaces {
                domain,
                axis,
                lo,
                hi,
            } => {
                let positions: Vec<f64> = (0..=k)
                    .map(|i| lo + (hi - lo) * i as f64 / k as f64)
                    .collect();
                face_flux_profile(source, domain, *axis, &positions, t1, t2, quad_tol)
            }
            LipschitzTarget::Foliation(fol) => {
                crate::trace::trace_profile(source, fol, t1, t2, k, quad_tol)
            }
        }
    };

    let mut estimates: Vec<(usize, f64)> = Vec::new();
    for &k in k_levels {
        match profile_at(k).and_then(|p| estimate_lipschitz(&p)) {
            Ok(lip) => {
                let value = lip.estimate.abs_max();
                estimates.push((k, value));
            }
            Err(err) => report.push_error(&format!("profile-K{k}"), provenance, match_tol, &err),
        }
    }

    for pair in estimates.windows(2) {
        let (k_prev, l_prev) = pair[0];
        let (k_next, l_next) = pair[1];
        if k_prev < 32 {
            continue;
        }
        let growth = if l_prev > 0.0 {
            l_next / l_prev - 1.0
        } else {
            0.0
        };
        report.push(CaseResult {
            name: format!("stabilization-K{k_prev}-to-K{k_next}"),
            provenance: provenance.into(),
            observed: growth,
            tolerance: 0.05,
            passed: growth <= 0.05,
            detail: json!({ "estimate_coarse": l_prev, "estimate_fine": l_next }),
        });
    }

    if let (Some(slope), Some(&(k_max, l_max))) = (expected_slope, estimates.last()) {
        let mismatch = (l_max - slope).abs();
        report.push(CaseResult {
            name: format!("closed-form-match-K{k_max}"),
            provenance: provenance.into(),
            observed: mismatch,
            tolerance: match_tol,
            passed: mismatch <= match_tol,
            detail: json!({
                "estimate": l_max,
                "expected": slope,
                "levels": estimates.iter().map(|(k, l)| json!({"K": k, "estimate": l})).collect::<Vec<_>>(),
            }),
        });
    } else if estimates.is_empty() {
        report.passed = false;
    }

    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// Time continuity: max |Δh|/Δt over a time grid against the bound
/// sup|f(u)·ν| · |Γ| derived from the solution's state range, while the
/// pointwise integrand is allowed (and expected, at shocks) to jump.
pub fn check_time_continuity(
    oracle: &PlanarWeakSolution,
    faces: &[Face],
    t1: f64,
    t2: f64,
    grid: usize,
    jump_face: Option<&Face>,
    min_jump: f64,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("time-continuity");
    let quad_tol = 1e-11;

    let (lo, hi) = oracle.component_bounds();
    let axis_normals: Vec<Coord> = faces
        .iter()
        .filter_map(|f| match f {
            Face::Axis(af) => Some(Coord::unit_axis(af.axis, oracle.dim(), af.sign)),
            Face::Arc(_) => None,
        })
        .collect();
    let has_arc = faces.iter().any(|f| matches!(f, Face::Arc(_)));
    let normals = if has_arc {
        None
    } else {
        Some(axis_normals.as_slice())
    };
    let sup = oracle.model().flux_normal_bound(&lo, &hi, normals);
    let boundary_measure: f64 = faces.iter().map(|f| f.measure()).sum();

    let t2s: Vec<f64> = (0..=grid)
        .map(|k| t1 + (t2 - t1) * k as f64 / grid as f64)
        .collect();
    match time_modulus(oracle, faces, t1, &t2s, quad_tol) {
        Ok(points) => {
            for i in 0..oracle.components() {
                let mut ratio = 0.0f64;
                for p in &points {
                    if p.dt > 0.0 {
                        ratio = ratio.max(p.delta[i] / p.dt);
                    }
                }
                let bound = sup[i] * boundary_measure;
                report.push(CaseResult {
                    name: format!("modulus-component-{i}"),
                    provenance: "oracle-quadrature".into(),
                    observed: ratio,
                    tolerance: bound * (1.0 + 1e-6),
                    passed: ratio <= bound * (1.0 + 1e-6),
                    detail: json!({
                        "sup_flux_density": sup[i],
                        "boundary_measure": boundary_measure,
                        "grid_points": t2s.len(),
                    }),
                });
            }
        }
        Err(err) => report.push_error("time-modulus", "oracle-quadrature", 0.0, &err),
    }

    if let Some(face) = jump_face {
        let jump = instantaneous_integrand_jump(oracle, face, t1, t2);
        report.push(CaseResult {
            name: "instantaneous-integrand-jump".into(),
            provenance: "oracle-quadrature".into(),
            observed: jump,
            tolerance: min_jump,
            passed: jump >= min_jump,
            detail: json!({
                "note": "pointwise flux density jumps at a wave crossing while the interval flux stays Lipschitz",
            }),
        });
    }

    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// Largest one-sided jump of the pointwise flux density f(u)·ν at wave
/// crossings of the face's midpoint node within (t1, t2).
pub fn instantaneous_integrand_jump(
    oracle: &PlanarWeakSolution,
    face: &Face,
    t1: f64,
    t2: f64,
) -> f64 {
    let (p0, p1) = face.param_range();
    let mid = 0.5 * (p0 + p1);
    let x = face.point_at(mid);
    let normal = face.normal_at_param(mid);
    let xi = oracle.signed_coordinate(&x);
    let mut best = 0.0f64;
    for t_star in oracle.crossing_times(xi, t1, t2).times() {
        let speed = xi / t_star;
        let delta = 1e-9 * (1.0 + speed.abs());
        // ξ/t decreases through the wave speed as t increases (for ξ > 0),
        // so "before" samples the fan just above the speed.
        let (before, after) = if xi > 0.0 {
            (
                oracle.fan().sample(speed + delta),
                oracle.fan().sample(speed - delta),
            )
        } else {
            (
                oracle.fan().sample(speed - delta),
                oracle.fan().sample(speed + delta),
            )
        };
        let g_before = oracle.model().directional_flux(&before, &normal);
        let g_after = oracle.model().directional_flux(&after, &normal);
        if let (Ok(a), Ok(b)) = (g_before, g_after) {
            for i in 0..oracle.components() {
                best = best.max((a[i] - b[i]).abs());
            }
        }
    }
    best
}

/// Weak-form residuals against seeded random polynomial bumps.
pub fn check_weak_form(
    oracle: &PlanarWeakSolution,
    space: &BoxDomain,
    t1: f64,
    t2: f64,
    trials: usize,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("weak-form");
    let mut rng = SplitMix64::new(seed);
    for trial in 0..trials {
        let bump = PolynomialBump::random(space.clone(), t1, t2, oracle.components(), &mut rng);
        match oracle.weak_form_residual(&bump, space, t1, t2) {
            Ok(residual) => report.push(CaseResult {
                name: format!("trial-{trial}"),
                provenance: "oracle-quadrature".into(),
                observed: residual,
                tolerance: tol,
                passed: residual <= tol,
                detail: json!({ "seed": seed, "trial": trial }),
            }),
            Err(err) => {
                report.push_error(&format!("trial-{trial}"), "oracle-quadrature", tol, &err)
            }
        }
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// Discrete balance over random cell unions and checkpoint pairs: the
/// per-cell corollary of the balance equation, exact up to roundoff.
pub fn check_discrete_balance(
    trajectory: &Trajectory,
    unions: usize,
    max_union_cells: usize,
    seed: u64,
    rel_tol: f64,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("corollary-box");
    let mut rng = SplitMix64::new(seed);
    let cell_count = trajectory.mesh().cell_count();
    let checkpoints = trajectory.times.len();

    let mut worst = 0.0f64;
    let mut worst_detail = json!(null);
    let mut failures = 0usize;
    for trial in 0..unions {
        let size = 1 + rng.next_below(max_union_cells);
        let mut cells: Vec<usize> = (0..size).map(|_| rng.next_below(cell_count)).collect();
        cells.sort_unstable();
        cells.dedup();
        let k1 = rng.next_below(checkpoints - 1);
        let k2 = k1 + 1 + rng.next_below(checkpoints - 1 - k1);
        match discrete_balance_residual(
            trajectory,
            &cells,
            trajectory.times[k1],
            trajectory.times[k2],
        ) {
            Ok(balance) => {
                let rel = balance.relative.abs_max();
                if rel > worst {
                    worst = rel;
                    worst_detail = json!({
                        "trial": trial,
                        "cells": cells.len(),
                        "t1": trajectory.times[k1],
                        "t2": trajectory.times[k2],
                    });
                }
                if rel > rel_tol {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    report.push(CaseResult {
        name: format!("random-unions-{unions}"),
        provenance: "solver-ledger".into(),
        observed: worst,
        tolerance: rel_tol,
        passed: failures == 0,
        detail: json!({
            "seed": seed,
            "unions": unions,
            "failures": failures,
            "worst_case": worst_detail,
        }),
    });
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// One resolution level of a convergence study.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceLevel {
    pub resolution: usize,
    /// Σ over tracked faces of |ledger flux - exact flux|.
    pub flux_error: Option<f64>,
    pub flux_errors_by_position: Vec<(f64, f64)>,
    /// L¹ field error against the exact solution at the end time.
    pub field_l1: Option<f64>,
}

/// Ledger fluxes against exact face fluxes under mesh refinement for a
/// planar-wave fixture (1D). Flux errors must decrease strictly beyond
/// N = 64.
#[allow(clippy::too_many_arguments)]
pub fn convergence_shock_flux(
    oracle: &PlanarWeakSolution,
    extent: &BoxDomain,
    resolutions: &[usize],
    positions: &[f64],
    cfl: f64,
    t_end: f64,
    quad_tol: f64,
) -> (VerificationReport, Vec<ConvergenceLevel>) {
    let start = Instant::now();
    let mut report = VerificationReport::new("convergence");
    let mut levels = Vec::new();

    // Exact targets once per position.
    let mut exact = Vec::new();
    for &p in positions {
        let face = Face::Axis(crate::geometry::AxisFace::point_1d(p, 1.0));
        match oracle.face_flux(&face, 0.0, t_end, quad_tol) {
            Ok((value, _)) => exact.push(value),
            Err(err) => {
                report.push_error(
                    &format!("exact-flux-at-{p}"),
                    "oracle-quadrature",
                    quad_tol,
                    &err,
                );
                report.runtime_ms = start.elapsed().as_millis() as u64;
                return (report, levels);
            }
        }
    }

    for &n in resolutions {
        let config = SolverConfig {
            model: oracle.model().clone(),
            mesh: match Mesh::new(extent.clone(), &[n]) {
                Ok(m) => m,
                Err(err) => {
                    report.push_error(&format!("mesh-N{n}"), "solver-ledger", 0.0, &err);
                    continue;
                }
            },
            cfl,
            t_end,
            boundary: BoundaryKind::Outflow,
            init: InitialData::Oracle {
                solution: oracle.clone(),
                t0: 0.0,
            },
        };
        match run(&config, &[]) {
            Ok(trajectory) => {
                let source = LedgerFluxSource::new(&trajectory);
                let mut by_position = Vec::new();
                let mut total = 0.0;
                for (&p, target) in positions.iter().zip(&exact) {
                    let face = Face::Axis(crate::geometry::AxisFace::point_1d(p, 1.0));
                    match source.face_flux(&face, 0.0, t_end, 0.0) {
                        Ok((value, _)) => {
                            let mut err = 0.0f64;
                            for i in 0..value.components() {
                                err = err.max((value[i] - target[i]).abs());
                            }
                            by_position.push((p, err));
                            total += err;
                        }
                        Err(e) => report.push_error(
                            &format!("ledger-N{n}-at-{p}"),
                            "solver-ledger",
                            0.0,
                            &e,
                        ),
                    }
                }
                // L¹ field error against exact cell averages.
                let field = trajectory.snapshots.last().expect("final snapshot");
                let vol = field.mesh().cell_measure();
                let mut l1 = 0.0;
                let mut l1_ok = true;
                for c in 0..field.mesh().cell_count() {
                    match oracle.mass(&Domain::Box(field.mesh().cell_box(c)), t_end) {
                        Ok(avg) => {
                            for i in 0..field.components() {
                                l1 += (field.get(c)[i] - avg[i] / vol).abs() * vol;
                            }
                        }
                        Err(_) => l1_ok = false,
                    }
                }
                levels.push(ConvergenceLevel {
                    resolution: n,
                    flux_error: Some(total),
                    flux_errors_by_position: by_position,
                    field_l1: l1_ok.then_some(l1),
                });
            }
            Err(err) => report.push_error(&format!("run-N{n}"), "solver-ledger", 0.0, &err),
        }
    }

    for pair in levels.windows(2) {
        if pair[0].resolution < 64 {
            continue;
        }
        let (e_coarse, e_fine) = (pair[0].flux_error.unwrap(), pair[1].flux_error.unwrap());
        report.push(CaseResult {
            name: format!(
                "flux-error-decreasing-N{}-to-N{}",
                pair[0].resolution, pair[1].resolution
            ),
            provenance: "solver-ledger".into(),
            observed: e_fine,
            tolerance: e_coarse,
            passed: e_fine < e_coarse,
            detail: json!({
                "coarse": { "N": pair[0].resolution, "error": e_coarse },
                "fine": { "N": pair[1].resolution, "error": e_fine },
            }),
        });
    }

    report.runtime_ms = start.elapsed().as_millis() as u64;
    (report, levels)
}

/// L¹ convergence of the field on smooth periodic advection; first order
/// means observed order ≥ 0.9.
#[allow(clippy::too_many_arguments)]
pub fn convergence_smooth_advection(
    velocity: f64,
    extent: &BoxDomain,
    resolutions: &[usize],
    amplitude: f64,
    mean: f64,
    wavenumber: usize,
    cfl: f64,
    t_end: f64,
) -> (VerificationReport, Vec<ConvergenceLevel>) {
    let start = Instant::now();
    let mut report = VerificationReport::new("convergence");
    let mut levels = Vec::new();
    let (lo, hi) = extent.side(0);
    let length = hi - lo;
    let k = 2.0 * std::f64::consts::PI * wavenumber as f64 / length;

    for &n in resolutions {
        let config = SolverConfig {
            model: SystemModel::advection(Coord::d1(velocity)).expect("valid model"),
            mesh: match Mesh::new(extent.clone(), &[n]) {
                Ok(m) => m,
                Err(err) => {
                    report.push_error(&format!("mesh-N{n}"), "solver-ledger", 0.0, &err);
                    continue;
                }
            },
            cfl,
            t_end,
            boundary: BoundaryKind::Periodic,
            init: InitialData::Sine {
                amplitude,
                mean,
                wavenumber,
            },
        };
        match run(&config, &[]) {
            Ok(trajectory) => {
                let field = trajectory.snapshots.last().expect("final snapshot");
                let dx = field.mesh().spacing(0);
                let mut l1 = 0.0;
                for c in 0..field.mesh().cell_count() {
                    let cell = field.mesh().cell_box(c);
                    let (a, b) = cell.side(0);
                    // Exact average of the translated sine over the cell.
                    let shift = velocity * t_end;
                    let avg = mean
                        + amplitude * ((k * (a - shift - lo)).cos() - (k * (b - shift - lo)).cos())
                            / (k * dx);
                    l1 += (field.get(c)[0] - avg).abs() * dx;
                }
                levels.push(ConvergenceLevel {
                    resolution: n,
                    flux_error: None,
                    flux_errors_by_position: Vec::new(),
                    field_l1: Some(l1),
                });
            }
            Err(err) => report.push_error(&format!("run-N{n}"), "solver-ledger", 0.0, &err),
        }
    }

    // Least-squares slope of log2(error) against log2(N).
    if levels.len() >= 2 {
        let points: Vec<(f64, f64)> = levels
            .iter()
            .filter_map(|l| l.field_l1.map(|e| ((l.resolution as f64).log2(), e.log2())))
            .collect();
        let n = points.len() as f64;
        let sx: f64 = points.iter().map(|p| p.0).sum();
        let sy: f64 = points.iter().map(|p| p.1).sum();
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let order = -slope;
        report.push(CaseResult {
            name: "field-l1-order".into(),
            provenance: "solver-ledger".into(),
            observed: order,
            tolerance: 0.9,
            passed: order >= 0.9,
            detail: json!({
                "levels": levels.iter().map(|l| json!({"N": l.resolution, "l1": l.field_l1})).collect::<Vec<_>>(),
            }),
        });
    } else {
        report.passed = false;
    }

    report.runtime_ms = start.elapsed().as_millis() as u64;
    (report, levels)
}

/// Halving the requested tolerance must halve (or better) the reported
/// error estimate of the oracle's face flux.
pub fn check_quadrature_contract(
    oracle: &PlanarWeakSolution,
    face: &Face,
    t1: f64,
    t2: f64,
    tol: f64,
) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new("convergence");
    let full = oracle.face_flux(face, t1, t2, tol);
    let half = oracle.face_flux(face, t1, t2, 0.5 * tol);
    match (full, half) {
        (Ok((_, e_full)), Ok((_, e_half))) => {
            report.push(CaseResult {
                name: "oracle-tolerance-contract".into(),
                provenance: "oracle-quadrature".into(),
                observed: e_half,
                tolerance: 0.5 * tol,
                passed: e_full <= tol && e_half <= 0.5 * tol,
                detail: json!({ "error_at_tol": e_full, "error_at_half_tol": e_half }),
            });
        }
        (Err(err), _) | (_, Err(err)) => {
            report.push_error("oracle-tolerance-contract", "oracle-quadrature", tol, &err)
        }
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{foliate, AxisFace, Disk};

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
    fn balance_check_passes_on_shock_fixture() {
        let oracle = burgers_shock_1d();
        let domain = Domain::Box(BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0)).unwrap());
        let report = check_balance_exact(&oracle, &domain, 0.0, 1.0, 1e-8);
        assert!(report.passed, "{report:?}");
        // The closed forms: m(1) - m(0) = 0.5, net outward flux = -0.5.
        let detail = &report.cases[0].detail;
        assert!((detail["mass_t2"].as_f64().unwrap() - 0.5).abs() < 1e-10);
        assert!((detail["outward_flux"].as_f64().unwrap() + 0.5).abs() < 1e-10);
    }

    #[test]
    fn balance_check_passes_on_constant_state() {
        let oracle = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(0.3),
            StateVector::scalar(0.3),
        )
        .unwrap();
        let domain = Domain::Box(BoxDomain::new(Coord::d1(-2.0), Coord::d1(1.5)).unwrap());
        let report = check_balance_exact(&oracle, &domain, 0.0, 1.0, 1e-12);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn lipschitz_check_converges_to_unit_slope() {
        let oracle = burgers_shock_1d();
        let domain = BoxDomain::new(Coord::d1(-1.0), Coord::d1(1.0)).unwrap();
        let target = LipschitzTarget::BoxFaces {
            domain: &domain,
            axis: 0,
            lo: 0.05,
            hi: 0.45,
        };
        let report = check_trace_lipschitz(
            &oracle,
            &target,
            0.0,
            1.0,
            &[8, 16, 32, 64],
            Some(1.0),
            1e-4,
            1e-10,
        );
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn time_continuity_check_with_jump_probe() {
        let oracle = burgers_shock_1d();
        let domain = BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0)).unwrap();
        let jump_face = Face::Axis(AxisFace::point_1d(0.25, 1.0));
        let report = check_time_continuity(
            &oracle,
            &domain.faces(),
            0.0,
            1.0,
            20,
            Some(&jump_face),
            0.4,
        );
        assert!(report.passed, "{report:?}");
        // The integrand jumps by f(1) - f(0) = 0.5 at the crossing.
        let jump = report
            .cases
            .iter()
            .find(|c| c.name == "instantaneous-integrand-jump")
            .unwrap();
        assert!((jump.observed - 0.5).abs() < 1e-6);
    }

    #[test]
    fn weak_form_check_on_rarefaction() {
        let oracle = PlanarWeakSolution::new(
            SystemModel::burgers(1).unwrap(),
            Coord::d1(1.0),
            0.0,
            StateVector::scalar(0.0),
            StateVector::scalar(1.0),
        )
        .unwrap();
        let space = BoxDomain::new(Coord::d1(-1.0), Coord::d1(2.0)).unwrap();
        let report = check_weak_form(&oracle, &space, 0.0, 1.0, 3, 42, 1e-6);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn discrete_balance_check_on_small_run() {
        let oracle = burgers_shock_1d();
        let config = SolverConfig {
            model: SystemModel::burgers(1).unwrap(),
            mesh: Mesh::new(
                BoxDomain::new(Coord::d1(-1.0), Coord::d1(1.0)).unwrap(),
                &[32],
            )
            .unwrap(),
            cfl: 0.45,
            t_end: 0.5,
            boundary: BoundaryKind::Outflow,
            init: InitialData::Oracle {
                solution: oracle,
                t0: 0.0,
            },
        };
        let trajectory = run(&config, &[0.25]).unwrap();
        let report = check_discrete_balance(&trajectory, 50, 10, 11, 1e-12);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn ledger_lipschitz_estimate_near_unit_slope() {
        // At N = 256 the ledger's face-flux profile across mesh interfaces in
        // (0, 0.5) reproduces the closed-form slope 1 within 0.1.
        let oracle = burgers_shock_1d();
        let config = SolverConfig {
            model: SystemModel::burgers(1).unwrap(),
            mesh: Mesh::new(
                BoxDomain::new(Coord::d1(-1.0), Coord::d1(1.0)).unwrap(),
                &[256],
            )
            .unwrap(),
            cfl: 0.45,
            t_end: 1.0,
            boundary: BoundaryKind::Outflow,
            init: InitialData::Oracle {
                solution: oracle,
                t0: 0.0,
            },
        };
        let trajectory = run(&config, &[]).unwrap();
        let source = LedgerFluxSource::new(&trajectory);
        let domain = BoxDomain::new(Coord::d1(-1.0), Coord::d1(1.0)).unwrap();
        // Mesh interfaces at multiples of 1/128.
        let positions: Vec<f64> = (8..=56).step_by(8).map(|i| i as f64 / 128.0).collect();
        let profile = face_flux_profile(&source, &domain, 0, &positions, 0.0, 1.0, 0.0).unwrap();
        let report = estimate_lipschitz(&profile).unwrap();
        assert!(
            (report.estimate[0] - 1.0).abs() <= 0.1,
            "ledger slope {}",
            report.estimate[0]
        );
    }

    #[test]
    fn failing_computation_becomes_a_failing_case() {
        // A dimension mismatch must surface as a failing report entry, not a
        // crash, and must not abort the remaining checks.
        let oracle = burgers_shock_1d();
        let domain = Domain::Box(BoxDomain::new(Coord::d2(0.0, 0.0), Coord::d2(1.0, 1.0)).unwrap());
        let report = check_balance_exact(&oracle, &domain, 0.0, 1.0, 1e-8);
        assert!(!report.passed);
        assert_eq!(report.cases.len(), 1);
        assert!(report.cases[0].detail["error"].is_string());
    }

    #[test]
    fn smooth_advection_order_is_first() {
        let extent = BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0)).unwrap();
        let (report, levels) =
            convergence_smooth_advection(1.0, &extent, &[32, 64, 128], 1.0, 0.0, 1, 0.45, 0.5);
        assert!(report.passed, "{report:?} {levels:?}");
    }

    #[test]
    fn disk_balance_with_oblique_shock() {
        let oracle = PlanarWeakSolution::new(
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
        let domain = Domain::Disk(Disk::new(Coord::d2(0.0, 0.0), 1.0).unwrap());
        let report = check_balance_exact(&oracle, &domain, 0.0, 0.5, 1e-8);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn lipschitz_on_foliation_of_disks() {
        let oracle = PlanarWeakSolution::new(
            SystemModel::advection(Coord::d2(1.0, 0.0)).unwrap(),
            Coord::d2(1.0, 0.0),
            0.0,
            StateVector::scalar(1.0),
            StateVector::scalar(0.0),
        )
        .unwrap();
        let base = Domain::Disk(Disk::new(Coord::d2(0.5, 0.0), 0.4).unwrap());
        let fol = foliate(base, 0.5, 0.05, 3).unwrap();
        let target = LipschitzTarget::Foliation(&fol);
        let report = check_trace_lipschitz(&oracle, &target, 0.0, 0.3, &[4, 8], None, 1e-4, 1e-7);
        assert!(report.passed, "{report:?}");
    }
}
