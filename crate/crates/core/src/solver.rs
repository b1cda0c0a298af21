//! First-order Godunov finite-volume solver on uniform Cartesian meshes with
//! a per-face flux ledger.
//!
//! Every face's time-integrated numerical flux Σ F·|face|·Δt is accumulated
//! between checkpoints, so any union of cells satisfies the discrete balance
//!
//!   (Σ_U Δx·u)|_{t2} - (Σ_U Δx·u)|_{t1} = -(net ledger outflow through ∂U)
//!
//! exactly up to roundoff: the cell update and the ledger share the same
//! flux values. The update is unsplit dimension-by-dimension, one ledger
//! entry per face per step, and time steps are clipped (never interpolated)
//! to land exactly on checkpoints.

use crate::error::{FluxError, Result};
use crate::exact::PlanarWeakSolution;
use crate::geometry::{BoxDomain, Coord, Domain, Face};
use crate::quadrature::pairwise_sum;
use crate::systems::{StateVector, SystemModel};
use crate::trace::{FluxSource, Provenance};

const MAX_STEPS: usize = 50_000_000;
/// Face positions and checkpoint times are matched up to this relative slack.
const SNAP_TOL: f64 = 1e-9;

/// A uniform Cartesian mesh over a box.
#[derive(Clone, Debug)]
pub struct Mesh {
    extent: BoxDomain,
    cells: [usize; 2],
}

impl Mesh {
    pub fn new(extent: BoxDomain, cells: &[usize]) -> Result<Self> {
        if cells.len() != extent.dim() {
            return Err(FluxError::InvalidArgument(format!(
                "{} cell counts for a {}-dimensional box",
                cells.len(),
                extent.dim()
            )));
        }
        if cells.contains(&0) {
            return Err(FluxError::InvalidArgument(
                "cell counts must be at least 1".into(),
            ));
        }
        let mut counts = [1usize; 2];
        counts[..cells.len()].copy_from_slice(cells);
        Ok(Self {
            extent,
            cells: counts,
        })
    }

    pub fn dim(&self) -> usize {
        self.extent.dim()
    }

    pub fn extent(&self) -> &BoxDomain {
        &self.extent
    }

    pub fn cells(&self, axis: usize) -> usize {
        self.cells[axis]
    }

    pub fn cell_count(&self) -> usize {
        self.cells[0] * self.cells[1]
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        let (lo, hi) = self.extent.side(axis);
        (hi - lo) / self.cells[axis] as f64
    }

    pub fn min_spacing(&self) -> f64 {
        (0..self.dim())
            .map(|j| self.spacing(j))
            .fold(f64::INFINITY, f64::min)
    }

    /// Cell volume (all cells are congruent).
    pub fn cell_measure(&self) -> f64 {
        (0..self.dim()).map(|j| self.spacing(j)).product()
    }

    /// Measure of a face perpendicular to `axis` (1 in one dimension).
    pub fn face_measure(&self, axis: usize) -> f64 {
        if self.dim() == 1 {
            1.0
        } else {
            self.spacing(1 - axis)
        }
    }

    pub fn cell_index(&self, i: usize, j: usize) -> usize {
        j * self.cells[0] + i
    }

    pub fn cell_coords(&self, index: usize) -> (usize, usize) {
        (index % self.cells[0], index / self.cells[0])
    }

    pub fn cell_box(&self, index: usize) -> BoxDomain {
        let (i, j) = self.cell_coords(index);
        let (lo0, _) = self.extent.side(0);
        let d0 = self.spacing(0);
        if self.dim() == 1 {
            BoxDomain::new(
                Coord::d1(lo0 + i as f64 * d0),
                Coord::d1(lo0 + (i + 1) as f64 * d0),
            )
            .expect("cell boxes are nonempty")
        } else {
            let (lo1, _) = self.extent.side(1);
            let d1 = self.spacing(1);
            BoxDomain::new(
                Coord::d2(lo0 + i as f64 * d0, lo1 + j as f64 * d1),
                Coord::d2(lo0 + (i + 1) as f64 * d0, lo1 + (j + 1) as f64 * d1),
            )
            .expect("cell boxes are nonempty")
        }
    }

    pub fn cell_center(&self, index: usize) -> Coord {
        let b = self.cell_box(index);
        match self.dim() {
            1 => Coord::d1(0.5 * (b.side(0).0 + b.side(0).1)),
            _ => Coord::d2(
                0.5 * (b.side(0).0 + b.side(0).1),
                0.5 * (b.side(1).0 + b.side(1).1),
            ),
        }
    }

    /// Coordinate of face `index` along `axis` (0 ..= cells).
    pub fn face_position(&self, axis: usize, index: usize) -> f64 {
        let (lo, _) = self.extent.side(axis);
        lo + index as f64 * self.spacing(axis)
    }

    /// Number of cells transverse to `axis`.
    pub fn perp_count(&self, axis: usize) -> usize {
        if self.dim() == 1 {
            1
        } else {
            self.cells[1 - axis]
        }
    }
}

/// Per-cell conserved averages at a given time.
#[derive(Clone, Debug)]
pub struct CellField {
    mesh: Mesh,
    components: usize,
    data: Vec<f64>,
    pub time: f64,
}

impl CellField {
    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn get(&self, cell: usize) -> StateVector {
        let base = cell * self.components;
        match self.components {
            1 => StateVector::scalar(self.data[base]),
            _ => StateVector::pair(self.data[base], self.data[base + 1]),
        }
    }

    pub fn set(&mut self, cell: usize, value: &StateVector) {
        let base = cell * self.components;
        for i in 0..self.components {
            self.data[base + i] = value[i];
        }
    }

    /// Σ over a cell union of volume·u, componentwise (pairwise-summed).
    pub fn union_mass(&self, cells: &[usize]) -> StateVector {
        let vol = self.mesh.cell_measure();
        let mut out = StateVector::zeros(self.components);
        for i in 0..self.components {
            let terms: Vec<f64> = cells.iter().map(|&c| vol * self.get(c)[i]).collect();
            out.set(i, pairwise_sum(&terms));
        }
        out
    }

    pub fn min_max(&self, component: usize) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in 0..self.mesh.cell_count() {
            let v = self.get(c)[component];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }
}

/// Accumulated Σ (numerical flux)·(face measure)·Δt for every mesh face,
/// from a registered start time.
#[derive(Clone, Debug)]
pub struct FluxLedger {
    components: usize,
    dim: usize,
    /// Per axis: (cells_along + 1) · perp_count · components values.
    data: [Vec<f64>; 2],
    strides: [usize; 2],
    pub t_start: f64,
}

impl FluxLedger {
    pub fn new(mesh: &Mesh, components: usize, t_start: f64) -> Self {
        let mut data: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
        let mut strides = [0usize; 2];
        for axis in 0..mesh.dim() {
            let along = mesh.cells(axis) + 1;
            let perp = mesh.perp_count(axis);
            strides[axis] = perp * components;
            data[axis] = vec![0.0; along * perp * components];
        }
        Self {
            components,
            dim: mesh.dim(),
            data,
            strides,
            t_start,
        }
    }

    fn base(&self, axis: usize, along: usize, perp: usize) -> usize {
        along * self.strides[axis] + perp * self.components
    }

    pub fn accumulated(&self, axis: usize, along: usize, perp: usize) -> StateVector {
        let base = self.base(axis, along, perp);
        match self.components {
            1 => StateVector::scalar(self.data[axis][base]),
            _ => StateVector::pair(self.data[axis][base], self.data[axis][base + 1]),
        }
    }

    fn add(&mut self, axis: usize, along: usize, perp: usize, amount: &StateVector) {
        let base = self.base(axis, along, perp);
        for i in 0..self.components {
            self.data[axis][base + i] += amount[i];
        }
    }

    fn reset(&mut self, t_start: f64) {
        for axis in 0..self.dim {
            for v in &mut self.data[axis] {
                *v = 0.0;
            }
        }
        self.t_start = t_start;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Ghost cells copy the adjacent interior state.
    Outflow,
    Periodic,
}

/// Initial data for a run.
#[derive(Clone, Debug)]
pub enum InitialData {
    /// Cell averages of a planar-wave solution at time t0 (t0 = 0 is the
    /// two-state Riemann step). Averages are exact.
    Oracle {
        solution: PlanarWeakSolution,
        t0: f64,
    },
    /// A smooth sine profile along axis 0 (scalar models, 1D): mean +
    /// amplitude·sin(2π·wavenumber·(x - lo)/L).
    Sine {
        amplitude: f64,
        mean: f64,
        wavenumber: usize,
    },
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub model: SystemModel,
    pub mesh: Mesh,
    pub cfl: f64,
    pub t_end: f64,
    pub boundary: BoundaryKind,
    pub init: InitialData,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(FluxError::InvalidArgument(format!(
                "CFL number must lie in (0, 1), got {}",
                self.cfl
            )));
        }
        if self.mesh.dim() != self.model.dim() {
            return Err(FluxError::InvalidArgument(format!(
                "mesh dimension {} but model dimension {}",
                self.mesh.dim(),
                self.model.dim()
            )));
        }
        match &self.init {
            InitialData::Oracle { solution, t0 } => {
                if solution.dim() != self.model.dim() {
                    return Err(FluxError::InvalidArgument(
                        "initial oracle dimension differs from the model's".into(),
                    ));
                }
                if *t0 < 0.0 {
                    return Err(FluxError::InvalidArgument(
                        "initial time must be nonnegative".into(),
                    ));
                }
                if self.t_end < *t0 {
                    return Err(FluxError::InvalidArgument(
                        "t_end precedes the initial time".into(),
                    ));
                }
            }
            InitialData::Sine { .. } => {
                if self.model.dim() != 1 || self.model.components() != 1 {
                    return Err(FluxError::InvalidArgument(
                        "sine initial data needs a scalar 1D model".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn t_init(&self) -> f64 {
        match &self.init {
            InitialData::Oracle { t0, .. } => *t0,
            InitialData::Sine { .. } => 0.0,
        }
    }
}

/// Exact cell averages of the initial data plus an empty ledger.
pub fn init(config: &SolverConfig) -> Result<(CellField, FluxLedger)> {
    config.validate()?;
    let mesh = config.mesh.clone();
    let components = config.model.components();
    let mut field = CellField {
        components,
        data: vec![0.0; mesh.cell_count() * components],
        time: config.t_init(),
        mesh,
    };
    let vol = field.mesh.cell_measure();
    match &config.init {
        InitialData::Oracle { solution, t0 } => {
            for c in 0..field.mesh.cell_count() {
                let cell = field.mesh.cell_box(c);
                let avg = solution.mass(&Domain::Box(cell), *t0)?.scaled(1.0 / vol);
                config.model.check_admissible(&avg)?;
                field.set(c, &avg);
            }
        }
        InitialData::Sine {
            amplitude,
            mean,
            wavenumber,
        } => {
            let (lo, hi) = field.mesh.extent().side(0);
            let length = hi - lo;
            let k = 2.0 * std::f64::consts::PI * *wavenumber as f64 / length;
            let dx = field.mesh.spacing(0);
            for c in 0..field.mesh.cell_count() {
                let b = field.mesh.cell_box(c);
                let (a, e) = b.side(0);
                // Exact average of the sine over the cell.
                let avg =
                    mean + amplitude * ((k * (a - lo)).cos() - (k * (e - lo)).cos()) / (k * dx);
                field.set(c, &StateVector::scalar(avg));
            }
        }
    }
    let ledger = FluxLedger::new(&field.mesh, components, field.time);
    Ok((field, ledger))
}

/// One unsplit Godunov step. The step size is cfl·min_j Δx_j / max|λ|,
/// additionally capped by `dt_cap` (checkpoint clipping). Returns dt.
pub fn step(
    field: &mut CellField,
    ledger: &mut FluxLedger,
    model: &SystemModel,
    boundary: BoundaryKind,
    cfl: f64,
    dt_cap: Option<f64>,
) -> Result<f64> {
    let mesh = field.mesh.clone();
    let dim = mesh.dim();

    let mut max_speed = 0.0f64;
    for c in 0..mesh.cell_count() {
        let u = field.get(c);
        for axis in 0..dim {
            let d = Coord::unit_axis(axis, dim, 1.0);
            max_speed = max_speed.max(model.max_speed(&u, &d)?);
        }
    }
    if max_speed == 0.0 {
        return Err(FluxError::DegenerateTimeStep);
    }
    let mut dt = cfl * mesh.min_spacing() / max_speed;
    if let Some(cap) = dt_cap {
        dt = dt.min(cap);
    }

    // Fluxes per face, then one conservative update; the ledger records the
    // same numbers the update uses.
    let mut updates = vec![0.0; mesh.cell_count() * field.components];
    for axis in 0..dim {
        let d = Coord::unit_axis(axis, dim, 1.0);
        let n_along = mesh.cells(axis);
        let n_perp = mesh.perp_count(axis);
        let face_measure = mesh.face_measure(axis);
        let dx = mesh.spacing(axis);
        for perp in 0..n_perp {
            for along in 0..=n_along {
                let left_cell = if along > 0 {
                    cell_at(&mesh, axis, along - 1, perp)
                } else {
                    match boundary {
                        BoundaryKind::Outflow => cell_at(&mesh, axis, 0, perp),
                        BoundaryKind::Periodic => cell_at(&mesh, axis, n_along - 1, perp),
                    }
                };
                let right_cell = if along < n_along {
                    cell_at(&mesh, axis, along, perp)
                } else {
                    match boundary {
                        BoundaryKind::Outflow => cell_at(&mesh, axis, n_along - 1, perp),
                        BoundaryKind::Periodic => cell_at(&mesh, axis, 0, perp),
                    }
                };
                let ul = field.get(left_cell);
                let ur = field.get(right_cell);
                let flux = model.godunov_flux(&ul, &ur, &d)?;

                ledger.add(axis, along, perp, &flux.scaled(face_measure * dt));

                let scale = dt / dx;
                if along > 0 {
                    let c = cell_at(&mesh, axis, along - 1, perp);
                    for i in 0..field.components {
                        updates[c * field.components + i] -= scale * flux[i];
                    }
                }
                if along < n_along {
                    let c = cell_at(&mesh, axis, along, perp);
                    for i in 0..field.components {
                        updates[c * field.components + i] += scale * flux[i];
                    }
                }
            }
        }
    }
    for (slot, delta) in field.data.iter_mut().zip(&updates) {
        *slot += delta;
    }
    field.time += dt;

    // Strict admissibility after the update.
    for c in 0..mesh.cell_count() {
        model.check_admissible(&field.get(c))?;
    }
    Ok(dt)
}

fn cell_at(mesh: &Mesh, axis: usize, along: usize, perp: usize) -> usize {
    if axis == 0 {
        mesh.cell_index(along, perp)
    } else {
        mesh.cell_index(perp, along)
    }
}

/// Snapshots and per-interval ledgers recorded at checkpoint times.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub model: SystemModel,
    pub boundary: BoundaryKind,
    /// Checkpoint times, starting with the initial time.
    pub times: Vec<f64>,
    pub snapshots: Vec<CellField>,
    /// `intervals[k]` covers `(times[k], times[k+1]]`.
    pub intervals: Vec<FluxLedger>,
}

impl Trajectory {
    pub fn mesh(&self) -> &Mesh {
        self.snapshots[0].mesh()
    }

    pub fn components(&self) -> usize {
        self.snapshots[0].components()
    }

    pub fn checkpoint_index(&self, t: f64) -> Result<usize> {
        self.times
            .iter()
            .position(|&s| (s - t).abs() <= SNAP_TOL * t.abs().max(1.0))
            .ok_or(FluxError::UnknownCheckpoint(t))
    }

    /// Σ ledger fluxes over checkpoint intervals (k1, k2], one face slot.
    pub fn interval_flux(
        &self,
        k1: usize,
        k2: usize,
        axis: usize,
        along: usize,
        perp: usize,
    ) -> StateVector {
        let d = self.components();
        let mut out = StateVector::zeros(d);
        for ledger in &self.intervals[k1..k2] {
            out = out.add(&ledger.accumulated(axis, along, perp));
        }
        out
    }
}

/// Runs a configuration, landing exactly on each checkpoint by clipping dt.
/// The end time is an implicit final checkpoint.
pub fn run(config: &SolverConfig, checkpoints: &[f64]) -> Result<Trajectory> {
    config.validate()?;
    let (mut field, mut ledger) = init(config)?;
    let t_init = field.time;

    let mut marks: Vec<f64> = checkpoints.to_vec();
    if marks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FluxError::InvalidArgument(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    if marks
        .iter()
        .any(|&t| t <= t_init || t > config.t_end + 1e-12)
    {
        return Err(FluxError::InvalidArgument(format!(
            "checkpoints must lie in ({t_init}, {}]",
            config.t_end
        )));
    }
    let append_end = marks
        .last()
        .is_none_or(|&last| (last - config.t_end).abs() > SNAP_TOL * config.t_end.abs().max(1.0));
    if append_end && config.t_end > t_init {
        marks.push(config.t_end);
    }

    let mut trajectory = Trajectory {
        model: config.model.clone(),
        boundary: config.boundary,
        times: vec![t_init],
        snapshots: vec![field.clone()],
        intervals: Vec::new(),
    };

    let mut steps = 0usize;
    for &mark in &marks {
        ledger.reset(field.time);
        while field.time < mark {
            let cap = mark - field.time;
            step(
                &mut field,
                &mut ledger,
                &config.model,
                config.boundary,
                config.cfl,
                Some(cap),
            )?;
            steps += 1;
            if steps > MAX_STEPS {
                return Err(FluxError::InvalidArgument(
                    "step budget exhausted; check wave speeds and CFL".into(),
                ));
            }
        }
        // dt clipping makes the landing exact up to the last addition.
        field.time = mark;
        trajectory.times.push(mark);
        trajectory.snapshots.push(field.clone());
        trajectory.intervals.push(ledger.clone());
    }
    Ok(trajectory)
}

/// The discrete balance defect of a cell union between two checkpoints:
/// mass(t2) - mass(t1) + net outward ledger flow through the union boundary.
#[derive(Clone, Debug)]
pub struct DiscreteBalance {
    pub residual: StateVector,
    /// Residual divided by the scale max(|mass terms|, |net flux|).
    pub relative: StateVector,
}

pub fn discrete_balance_residual(
    trajectory: &Trajectory,
    cells: &[usize],
    t1: f64,
    t2: f64,
) -> Result<DiscreteBalance> {
    if cells.is_empty() {
        return Err(FluxError::InvalidArgument("cell union is empty".into()));
    }
    let k1 = trajectory.checkpoint_index(t1)?;
    let k2 = trajectory.checkpoint_index(t2)?;
    if k1 > k2 {
        return Err(FluxError::InvalidArgument(
            "checkpoints out of order".into(),
        ));
    }
    let mesh = trajectory.mesh().clone();
    let d = trajectory.components();
    let in_union = {
        let mut mask = vec![false; mesh.cell_count()];
        for &c in cells {
            if c >= mesh.cell_count() {
                return Err(FluxError::InvalidArgument(format!(
                    "cell index {c} out of range"
                )));
            }
            mask[c] = true;
        }
        mask
    };

    let m1 = trajectory.snapshots[k1].union_mass(cells);
    let m2 = trajectory.snapshots[k2].union_mass(cells);

    // Net outward ledger flow: faces whose inner side is in the union and
    // outer side is not (boundary faces use the boundary-condition neighbor).
    let mut net = StateVector::zeros(d);
    for &c in cells {
        let (i, j) = mesh.cell_coords(c);
        for axis in 0..mesh.dim() {
            let along = if axis == 0 { i } else { j };
            let perp = if axis == 0 { j } else { i };
            let n_along = mesh.cells(axis);
            for (face_along, sign) in [(along, -1.0), (along + 1, 1.0)] {
                let neighbor_along = if sign < 0.0 {
                    if along == 0 {
                        match trajectory.boundary {
                            BoundaryKind::Periodic => Some(n_along - 1),
                            BoundaryKind::Outflow => None,
                        }
                    } else {
                        Some(along - 1)
                    }
                } else if along + 1 == n_along {
                    match trajectory.boundary {
                        BoundaryKind::Periodic => Some(0),
                        BoundaryKind::Outflow => None,
                    }
                } else {
                    Some(along + 1)
                };
                let neighbor_in = neighbor_along
                    .map(|na| in_union[cell_at(&mesh, axis, na, perp)])
                    .unwrap_or(false);
                if neighbor_in {
                    continue;
                }
                let flux = trajectory.interval_flux(k1, k2, axis, face_along, perp);
                net = net.add(&flux.scaled(sign));
            }
        }
    }

    let mut residual = StateVector::zeros(d);
    let mut relative = StateVector::zeros(d);
    for i in 0..d {
        let r = m2[i] - m1[i] + net[i];
        let scale = m1[i].abs().max(m2[i].abs()).max(net[i].abs()).max(1e-300);
        residual.set(i, r);
        relative.set(i, r.abs() / scale);
    }
    Ok(DiscreteBalance { residual, relative })
}

/// Reads a trajectory's ledger as a flux source: faces must coincide with
/// mesh faces and times with checkpoints.
pub struct LedgerFluxSource<'a> {
    trajectory: &'a Trajectory,
}

impl<'a> LedgerFluxSource<'a> {
    pub fn new(trajectory: &'a Trajectory) -> Self {
        Self { trajectory }
    }

    fn snap(&self, axis: usize, position: f64) -> Result<usize> {
        let mesh = self.trajectory.mesh();
        let dx = mesh.spacing(axis);
        let (lo, _) = mesh.extent().side(axis);
        let raw = (position - lo) / dx;
        let index = raw.round();
        if (raw - index).abs() > SNAP_TOL / dx.min(1.0)
            || index < 0.0
            || index > mesh.cells(axis) as f64
        {
            return Err(FluxError::NotAMeshFace {
                axis,
                position,
                nearest: lo + index.clamp(0.0, mesh.cells(axis) as f64) * dx,
            });
        }
        Ok(index as usize)
    }
}

impl FluxSource for LedgerFluxSource<'_> {
    fn components(&self) -> usize {
        self.trajectory.components()
    }

    fn dim(&self) -> usize {
        self.trajectory.mesh().dim()
    }

    fn provenance(&self) -> Provenance {
        Provenance::Ledger
    }

    fn face_flux(&self, face: &Face, t1: f64, t2: f64, _tol: f64) -> Result<(StateVector, f64)> {
        let Face::Axis(af) = face else {
            return Err(FluxError::SamplerDomain(
                "ledger fluxes exist on axis faces only".into(),
            ));
        };
        let along = self.snap(af.axis, af.position)?;
        let k1 = self.trajectory.checkpoint_index(t1)?;
        let k2 = self.trajectory.checkpoint_index(t2)?;
        let perp_range = match af.cross {
            None => 0..1,
            Some((c0, c1)) => {
                let perp_axis = 1 - af.axis;
                let p0 = self.snap(perp_axis, c0)?;
                let p1 = self.snap(perp_axis, c1)?;
                if p1 <= p0 {
                    return Err(FluxError::InvalidArgument(
                        "face cross-section is empty on the mesh".into(),
                    ));
                }
                p0..p1
            }
        };
        let mut value = StateVector::zeros(self.components());
        for perp in perp_range {
            value = value.add(&self.trajectory.interval_flux(k1, k2, af.axis, along, perp));
        }
        Ok((value.scaled(af.sign), 0.0))
    }
}
