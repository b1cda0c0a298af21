//! Command-line frontend: `solve`, `trace`, `verify`, and `convergence`
//! subcommands driven by a JSON config, emitting CSV data files and JSON
//! reports with reproducible headers.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::config::{parse_config, RunConfig};
use crate::error::{FluxError, Result};
use crate::geometry::{surface_quadrature, AxisFace, Domain, Face};
use crate::output::{CsvField, OutputWriter, TOOL_NAME, TOOL_VERSION};
use crate::solver::run as run_solver;
use crate::trace::{face_flux_profile, trace_profile, TraceProfile};
use crate::verify::{
    check_balance_exact, check_discrete_balance, check_quadrature_contract, check_time_continuity,
    check_trace_lipschitz, check_weak_form, convergence_shock_flux, convergence_smooth_advection,
    ConvergenceLevel, LipschitzTarget, VerificationReport,
};

#[derive(Debug, Parser)]
#[command(name = TOOL_NAME, version, about = "Time-integrated boundary fluxes of hyperbolic conservation laws: exact oracles, a Godunov solver with a flux ledger, and verification reports.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory (overrides the config's `output_dir`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for randomized checks (overrides the config's `seed`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Run the finite-volume solver, writing field snapshots and the ledger.
    Solve,
    /// Evaluate a flux-trace profile, writing one CSV row per sample.
    Trace,
    /// Run the verification checks; exit 0 only if every check passes.
    Verify,
    /// Mesh-refinement study: ledger fluxes and field errors against exact.
    Convergence,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(config_path) = cli.config.as_deref() else {
        eprintln!("error: --config <path> is required");
        return ExitCode::from(2);
    };
    let config = match parse_config(config_path) {
        Ok(c) => c,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    match dispatch(cli.command, &config, cli.out.as_deref(), cli.seed) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// Executes a subcommand against a parsed config. Returns whether every
/// check passed (always true for data-only subcommands that succeed).
pub fn dispatch(
    command: Command,
    config: &RunConfig,
    out_override: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<bool> {
    let seed = seed_override.unwrap_or(config.seed);
    let out_dir = out_override
        .map(Path::to_path_buf)
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let writer = OutputWriter::new(&out_dir, &config.digest(), seed)?;

    match command {
        Command::Solve => run_solve(config, &writer).map(|_| true),
        Command::Trace => run_trace(config, &writer).map(|_| true),
        Command::Verify => run_verify(config, &writer, seed),
        Command::Convergence => run_convergence(config, &writer),
    }
}

fn run_solve(config: &RunConfig, writer: &OutputWriter) -> Result<()> {
    let solver_config = config.solver_config()?;
    let checkpoints = config
        .solver
        .as_ref()
        .map(|s| s.checkpoints.clone())
        .unwrap_or_default();
    let trajectory = run_solver(&solver_config, &checkpoints)?;

    let mesh = trajectory.mesh().clone();
    let components = trajectory.components();
    let mut field_columns: Vec<String> =
        (0..mesh.dim()).map(|j| ["x", "y"][j].to_string()).collect();
    for i in 1..=components {
        field_columns.push(format!("u_{i}"));
    }
    let column_refs: Vec<&str> = field_columns.iter().map(String::as_str).collect();

    for (k, snapshot) in trajectory.snapshots.iter().enumerate() {
        let mut rows = Vec::with_capacity(mesh.cell_count());
        for c in 0..mesh.cell_count() {
            let center = mesh.cell_center(c);
            let state = snapshot.get(c);
            let mut row: Vec<CsvField> = center
                .as_slice()
                .iter()
                .map(|&v| CsvField::Float(v))
                .collect();
            for i in 0..components {
                row.push(CsvField::Float(state[i]));
            }
            rows.push(row);
        }
        writer.write_csv_with_comments(
            &format!("field_{k:04}.csv"),
            &[format!(
                "time {}",
                crate::output::format_float(snapshot.time)
            )],
            &column_refs,
            &rows,
        )?;
    }

    // Ledger: one row per face per checkpoint interval.
    let mut ledger_columns: Vec<String> = ["axis", "face_index", "position", "t1", "t2"]
        .iter()
        .map(ToString::to_string)
        .collect();
    for i in 1..=components {
        ledger_columns.push(format!("F_{i}"));
    }
    let ledger_refs: Vec<&str> = ledger_columns.iter().map(String::as_str).collect();
    let mut rows = Vec::new();
    for k in 0..trajectory.intervals.len() {
        let (t1, t2) = (trajectory.times[k], trajectory.times[k + 1]);
        for axis in 0..mesh.dim() {
            let perp_count = mesh.perp_count(axis);
            for along in 0..=mesh.cells(axis) {
                for perp in 0..perp_count {
                    let flux = trajectory.interval_flux(k, k + 1, axis, along, perp);
                    let mut row = vec![
                        CsvField::Int(axis as i64),
                        CsvField::Int((along * perp_count + perp) as i64),
                        CsvField::Float(mesh.face_position(axis, along)),
                        CsvField::Float(t1),
                        CsvField::Float(t2),
                    ];
                    for i in 0..components {
                        row.push(CsvField::Float(flux[i]));
                    }
                    rows.push(row);
                }
            }
        }
    }
    writer.write_csv("ledger.csv", &ledger_refs, &rows)?;
    Ok(())
}

fn run_trace(config: &RunConfig, writer: &OutputWriter) -> Result<()> {
    let oracle = config.build_oracle()?;
    let spec = config.trace.as_ref().ok_or_else(|| FluxError::Config {
        path: "trace".into(),
        message: "the trace subcommand needs a trace section".into(),
    })?;
    let tol = config.tolerances.trace;

    let mut comments = Vec::new();
    let profile: TraceProfile = match &spec.faces {
        Some(faces) => {
            let domain = match config.build_domain()? {
                Domain::Box(b) => b,
                Domain::Disk(_) => {
                    return Err(FluxError::Config {
                        path: "trace.faces".into(),
                        message: "face profiles need a box domain".into(),
                    })
                }
            };
            face_flux_profile(
                &oracle,
                &domain,
                faces.axis,
                &faces.positions,
                spec.t1,
                spec.t2,
                tol,
            )?
        }
        None => {
            let foliation = config.build_foliation()?;
            // Surface-quadrature sanity line: leaf-0 weights must tile the
            // boundary measure at the configured order.
            let order = config.foliation.as_ref().map(|f| f.quad_order).unwrap_or(8);
            let measured: f64 = foliation
                .leaf(0)?
                .iter()
                .map(|face| surface_quadrature(face, order).total_weight())
                .sum();
            comments.push(format!(
                "leaf0 boundary measure {} (quadrature order {order})",
                crate::output::format_float(measured)
            ));
            trace_profile(&oracle, &foliation, spec.t1, spec.t2, spec.k, tol)?
        }
    };

    let components = profile.components();
    let mut columns: Vec<String> = vec!["y".into(), "t1".into(), "t2".into()];
    for i in 1..=components {
        columns.push(format!("h_{i}"));
    }
    columns.push("error_estimate".into());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();

    let rows: Vec<Vec<CsvField>> = profile
        .samples()
        .iter()
        .map(|s| {
            let mut row = vec![
                CsvField::Float(s.y),
                CsvField::Float(s.t1),
                CsvField::Float(s.t2),
            ];
            for i in 0..components {
                row.push(CsvField::Float(s.value[i]));
            }
            row.push(CsvField::Float(s.error_estimate));
            row
        })
        .collect();
    writer.write_csv_with_comments("trace.csv", &comments, &column_refs, &rows)?;
    Ok(())
}

/// The full machine-readable result of a `verify` run.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_digest: String,
    pub seed: u64,
    pub all_passed: bool,
    pub claims: Vec<VerificationReport>,
}

/// Runs every check enabled in the config's verify section and assembles the
/// report document (no files are written).
pub fn build_verify_document(config: &RunConfig, seed: u64) -> Result<ReportDocument> {
    let spec = config.verify.as_ref().ok_or_else(|| FluxError::Config {
        path: "verify".into(),
        message: "the verify subcommand needs a verify section".into(),
    })?;
    let digest = config.digest();
    let mut claims: Vec<VerificationReport> = Vec::new();

    for check in &spec.checks {
        match check.as_str() {
            "balance" => {
                let oracle = config.build_oracle()?;
                let domain = config.build_domain()?;
                claims.push(
                    check_balance_exact(
                        &oracle,
                        &domain,
                        spec.t1,
                        spec.t2,
                        config.tolerances.balance,
                    )
                    .with_digest(&digest),
                );
            }
            "lipschitz-trace" => {
                let oracle = config.build_oracle()?;
                let lip = spec.lipschitz.as_ref().ok_or_else(|| FluxError::Config {
                    path: "verify.lipschitz".into(),
                    message: "the lipschitz-trace check needs its parameter block".into(),
                })?;
                let report = if lip.use_foliation {
                    let foliation = config.build_foliation()?;
                    check_trace_lipschitz(
                        &oracle,
                        &LipschitzTarget::Foliation(&foliation),
                        spec.t1,
                        spec.t2,
                        &lip.k_levels,
                        lip.expected_slope,
                        config.tolerances.lipschitz_match,
                        config.tolerances.quadrature,
                    )
                } else {
                    let domain = match config.build_domain()? {
                        Domain::Box(b) => b,
                        Domain::Disk(_) => {
                            return Err(FluxError::Config {
                                path: "verify.lipschitz".into(),
                                message: "box-section profiles need a box domain".into(),
                            })
                        }
                    };
                    check_trace_lipschitz(
                        &oracle,
                        &LipschitzTarget::BoxFaces {
                            domain: &domain,
                            axis: lip.axis,
                            lo: lip.lo,
                            hi: lip.hi,
                        },
                        spec.t1,
                        spec.t2,
                        &lip.k_levels,
                        lip.expected_slope,
                        config.tolerances.lipschitz_match,
                        config.tolerances.quadrature,
                    )
                };
                claims.push(report.with_digest(&digest));
            }
            "time-continuity" => {
                let oracle = config.build_oracle()?;
                let domain = config.build_domain()?;
                let jump_face = spec.jump_position.map(|p| match &domain {
                    Domain::Box(b) if b.dim() == 2 => {
                        Face::Axis(AxisFace::segment_2d(0, p, b.side(1), 1.0))
                    }
                    _ => Face::Axis(AxisFace::point_1d(p, 1.0)),
                });
                claims.push(
                    check_time_continuity(
                        &oracle,
                        &domain.boundary(),
                        spec.t1,
                        spec.t2,
                        spec.time_grid,
                        jump_face.as_ref(),
                        spec.min_jump,
                    )
                    .with_digest(&digest),
                );
            }
            "weak-form" => {
                let oracle = config.build_oracle()?;
                let domain = match config.build_domain()? {
                    Domain::Box(b) => b,
                    Domain::Disk(_) => {
                        return Err(FluxError::Config {
                            path: "verify.checks".into(),
                            message: "the weak-form check needs a box domain".into(),
                        })
                    }
                };
                claims.push(
                    check_weak_form(
                        &oracle,
                        &domain,
                        spec.t1,
                        spec.t2,
                        spec.weak_trials,
                        seed,
                        config.tolerances.weak_form,
                    )
                    .with_digest(&digest),
                );
            }
            "corollary-box" => {
                let solver_config = config.solver_config()?;
                let checkpoints = config
                    .solver
                    .as_ref()
                    .map(|s| s.checkpoints.clone())
                    .unwrap_or_default();
                let trajectory = run_solver(&solver_config, &checkpoints)?;
                claims.push(
                    check_discrete_balance(
                        &trajectory,
                        spec.unions,
                        spec.max_union_cells,
                        seed,
                        config.tolerances.discrete_balance_rel,
                    )
                    .with_digest(&digest),
                );
            }
            "convergence" => {
                for report in run_convergence_checks(config)? {
                    claims.push(report.with_digest(&digest));
                }
            }
            other => {
                return Err(FluxError::Config {
                    path: "verify.checks".into(),
                    message: format!("unknown check `{other}`"),
                })
            }
        }
    }

    let all_passed = claims.iter().all(|c| c.passed);
    Ok(ReportDocument {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        config_digest: digest,
        seed,
        all_passed,
        claims,
    })
}

fn run_verify(config: &RunConfig, writer: &OutputWriter, seed: u64) -> Result<bool> {
    let document = build_verify_document(config, seed)?;
    for claim in &document.claims {
        println!(
            "{}: {} ({} cases, {} ms)",
            claim.claim,
            if claim.passed { "PASS" } else { "FAIL" },
            claim.cases.len(),
            claim.runtime_ms
        );
    }
    writer.write_json("report.json", &document)?;

    let columns = [
        "claim",
        "case",
        "provenance",
        "observed",
        "tolerance",
        "passed",
    ];
    let mut rows = Vec::new();
    for claim in &document.claims {
        for case in &claim.cases {
            rows.push(vec![
                CsvField::Str(claim.claim.clone()),
                CsvField::Str(case.name.clone()),
                CsvField::Str(case.provenance.clone()),
                CsvField::Float(case.observed),
                CsvField::Float(case.tolerance),
                CsvField::Str(case.passed.to_string()),
            ]);
        }
    }
    writer.write_csv("summary.csv", &columns, &rows)?;
    Ok(document.all_passed)
}

fn run_convergence_checks(config: &RunConfig) -> Result<Vec<VerificationReport>> {
    let spec = config
        .convergence
        .as_ref()
        .ok_or_else(|| FluxError::Config {
            path: "convergence".into(),
            message: "a convergence study needs a convergence section".into(),
        })?;
    let mut reports = Vec::new();

    if !spec.flux_positions.is_empty() {
        let oracle = config.build_oracle()?;
        let solver = config.solver.as_ref().ok_or_else(|| FluxError::Config {
            path: "solver".into(),
            message: "the flux study needs a solver section for the mesh extent".into(),
        })?;
        let extent = solver.mesh.bounds.build()?;
        let (report, _) = convergence_shock_flux(
            &oracle,
            &extent,
            &spec.resolutions,
            &spec.flux_positions,
            solver.cfl,
            solver.t_end,
            config.tolerances.quadrature,
        );
        reports.push(report);

        let probe = Face::Axis(AxisFace::point_1d(spec.flux_positions[0], 1.0));
        reports.push(check_quadrature_contract(
            &oracle,
            &probe,
            0.0,
            solver.t_end,
            config.tolerances.quadrature,
        ));
    }
    if let Some(smooth) = &spec.smooth {
        let extent = smooth.bounds.build()?;
        let (report, _) = convergence_smooth_advection(
            smooth.velocity,
            &extent,
            &spec.resolutions,
            smooth.amplitude,
            smooth.mean,
            smooth.wavenumber,
            config.solver.as_ref().map(|s| s.cfl).unwrap_or(0.45),
            smooth.t_end,
        );
        reports.push(report);
    }
    if reports.is_empty() {
        return Err(FluxError::Config {
            path: "convergence".into(),
            message: "the convergence section enables neither a flux study nor a smooth study"
                .into(),
        });
    }
    Ok(reports)
}

fn run_convergence(config: &RunConfig, writer: &OutputWriter) -> Result<bool> {
    let digest = config.digest();
    let spec = config
        .convergence
        .as_ref()
        .ok_or_else(|| FluxError::Config {
            path: "convergence".into(),
            message: "the convergence subcommand needs a convergence section".into(),
        })?;

    let mut reports = Vec::new();
    let mut level_rows: Vec<(String, ConvergenceLevel)> = Vec::new();

    if !spec.flux_positions.is_empty() {
        let oracle = config.build_oracle()?;
        let solver = config.solver.as_ref().ok_or_else(|| FluxError::Config {
            path: "solver".into(),
            message: "the flux study needs a solver section for the mesh extent".into(),
        })?;
        let extent = solver.mesh.bounds.build()?;
        let (report, levels) = convergence_shock_flux(
            &oracle,
            &extent,
            &spec.resolutions,
            &spec.flux_positions,
            solver.cfl,
            solver.t_end,
            config.tolerances.quadrature,
        );
        reports.push(report);
        level_rows.extend(levels.into_iter().map(|l| ("flux".to_string(), l)));
    }
    if let Some(smooth) = &spec.smooth {
        let extent = smooth.bounds.build()?;
        let (report, levels) = convergence_smooth_advection(
            smooth.velocity,
            &extent,
            &spec.resolutions,
            smooth.amplitude,
            smooth.mean,
            smooth.wavenumber,
            config.solver.as_ref().map(|s| s.cfl).unwrap_or(0.45),
            smooth.t_end,
        );
        reports.push(report);
        level_rows.extend(levels.into_iter().map(|l| ("smooth".to_string(), l)));
    }

    let all_passed = !reports.is_empty() && reports.iter().all(|r| r.passed);
    for report in &reports {
        println!(
            "{}: {} ({} cases, {} ms)",
            report.claim,
            if report.passed { "PASS" } else { "FAIL" },
            report.cases.len(),
            report.runtime_ms
        );
    }

    let columns = ["study", "resolution", "flux_error", "field_l1"];
    let rows: Vec<Vec<CsvField>> = level_rows
        .iter()
        .map(|(study, level)| {
            vec![
                CsvField::Str(study.clone()),
                CsvField::Int(level.resolution as i64),
                level
                    .flux_error
                    .map(CsvField::Float)
                    .unwrap_or_else(|| CsvField::Str(String::new())),
                level
                    .field_l1
                    .map(CsvField::Float)
                    .unwrap_or_else(|| CsvField::Str(String::new())),
            ]
        })
        .collect();
    writer.write_csv("convergence.csv", &columns, &rows)?;

    let document = ReportDocument {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        config_digest: digest,
        seed: config.seed,
        all_passed,
        claims: reports,
    };
    writer.write_json("convergence.json", &document)?;
    Ok(all_passed)
}
