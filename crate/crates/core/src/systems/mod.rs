//! Conservation-law systems: flux functions, wave-speed bounds, and exact
//! Riemann solvers.
//!
//! A system u_t + div f(u) = 0 has D conserved components in n space
//! dimensions; f(u) is a D×n matrix. Three models are built in:
//!
//! * `burgers` (n ∈ {1,2}, D = 1): every flux component is u²/2, so the
//!   directional flux along a unit vector d is (d·𝟙)·u²/2,
//! * `advection` (n ∈ {1,2}, D = 1): f(u) = a·u for a constant velocity a,
//! * `shallow_water` (n = 1, D = 2): state (h, m), flux (m, m²/h + g·h²/2).
//!
//! Admissibility is enforced strictly (depth must stay positive); violations
//! are reported as errors, never repaired silently.

mod riemann;
pub mod shallow_water;

pub use riemann::{Fan, RiemannFan, SwSide, Wave};

use crate::error::{FluxError, Result};
use crate::geometry::Coord;

pub const MAX_COMPONENTS: usize = 2;
pub const MAX_DIM: usize = 2;

/// Default gravitational constant for shallow water [m/s²].
pub const STANDARD_GRAVITY: f64 = 9.81;

/// A conserved state with D ∈ {1, 2} components.
#[derive(Clone, Copy, PartialEq)]
pub struct StateVector {
    data: [f64; MAX_COMPONENTS],
    len: usize,
}

impl std::fmt::Debug for StateVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl StateVector {
    pub fn scalar(value: f64) -> Self {
        Self {
            data: [value, 0.0],
            len: 1,
        }
    }

    pub fn pair(first: f64, second: f64) -> Self {
        Self {
            data: [first, second],
            len: 2,
        }
    }

    pub fn zeros(components: usize) -> Self {
        debug_assert!((1..=MAX_COMPONENTS).contains(&components));
        Self {
            data: [0.0; MAX_COMPONENTS],
            len: components,
        }
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match values {
            [a] => Ok(Self::scalar(*a)),
            [a, b] => Ok(Self::pair(*a, *b)),
            _ => Err(FluxError::InvalidArgument(format!(
                "expected 1 or 2 state components, got {}",
                values.len()
            ))),
        }
    }

    pub fn components(&self) -> usize {
        self.len
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.len]
    }

    pub fn set(&mut self, i: usize, value: f64) {
        debug_assert!(i < self.len);
        self.data[i] = value;
    }

    pub fn add(&self, other: &StateVector) -> Self {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.len {
            out.data[i] += other.data[i];
        }
        out
    }

    pub fn sub(&self, other: &StateVector) -> Self {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        for v in &mut out.data[..self.len] {
            *v *= factor;
        }
        out
    }

    pub fn abs_max(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|v| v.is_finite())
    }
}

impl std::ops::Index<usize> for StateVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        debug_assert!(i < self.len);
        &self.data[i]
    }
}

/// The D×n flux matrix f(u); row i is the spatial flux vector of component i.
#[derive(Clone, Copy, Debug)]
pub struct FluxMatrix {
    rows: [[f64; MAX_DIM]; MAX_COMPONENTS],
    components: usize,
    dim: usize,
}

impl FluxMatrix {
    fn new(components: usize, dim: usize) -> Self {
        Self {
            rows: [[0.0; MAX_DIM]; MAX_COMPONENTS],
            components,
            dim,
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, component: usize, direction: usize) -> f64 {
        debug_assert!(component < self.components && direction < self.dim);
        self.rows[component][direction]
    }

    pub fn row(&self, component: usize) -> Coord {
        match self.dim {
            1 => Coord::d1(self.rows[component][0]),
            _ => Coord::d2(self.rows[component][0], self.rows[component][1]),
        }
    }

    /// f(u)·d per component.
    pub fn dot_direction(&self, d: &Coord) -> StateVector {
        let mut out = StateVector::zeros(self.components);
        for i in 0..self.components {
            out.set(i, self.row(i).dot(d));
        }
        out
    }
}

/// A conservation-law system with flux, wave-speed bound, and exact Riemann
/// solver.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemModel {
    Burgers { dim: usize },
    Advection { velocity: Coord },
    ShallowWater { gravity: f64 },
}

impl SystemModel {
    pub fn burgers(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(FluxError::InvalidArgument(format!(
                "burgers supports 1 or 2 space dimensions, got {dim}"
            )));
        }
        Ok(SystemModel::Burgers { dim })
    }

    pub fn advection(velocity: Coord) -> Result<Self> {
        Ok(SystemModel::Advection { velocity })
    }

    pub fn shallow_water(gravity: f64) -> Result<Self> {
        if !(gravity > 0.0) {
            return Err(FluxError::InvalidArgument(format!(
                "gravitational constant must be positive, got {gravity}"
            )));
        }
        Ok(SystemModel::ShallowWater { gravity })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SystemModel::Burgers { .. } => "burgers",
            SystemModel::Advection { .. } => "advection",
            SystemModel::ShallowWater { .. } => "shallow_water",
        }
    }

    /// Spatial dimension n.
    pub fn dim(&self) -> usize {
        match self {
            SystemModel::Burgers { dim } => *dim,
            SystemModel::Advection { velocity } => velocity.dim(),
            SystemModel::ShallowWater { .. } => 1,
        }
    }

    /// Number of conserved components D.
    pub fn components(&self) -> usize {
        match self {
            SystemModel::ShallowWater { .. } => 2,
            _ => 1,
        }
    }

    /// Strict admissibility check; names the offending component.
    pub fn check_admissible(&self, u: &StateVector) -> Result<()> {
        if u.components() != self.components() {
            return Err(FluxError::InvalidArgument(format!(
                "state has {} components, {} needs {}",
                u.components(),
                self.name(),
                self.components()
            )));
        }
        if !u.is_finite() {
            return Err(FluxError::InadmissibleState {
                model: self.name(),
                component: "state",
                value: f64::NAN,
                requirement: "all components must be finite",
            });
        }
        if let SystemModel::ShallowWater { .. } = self {
            if !(u[0] > 0.0) {
                return Err(FluxError::InadmissibleState {
                    model: self.name(),
                    component: "depth",
                    value: u[0],
                    requirement: "depth must be strictly positive",
                });
            }
        }
        Ok(())
    }

    /// The flux matrix f(u).
    pub fn flux(&self, u: &StateVector) -> Result<FluxMatrix> {
        self.check_admissible(u)?;
        let mut f = FluxMatrix::new(self.components(), self.dim());
        match self {
            SystemModel::Burgers { dim } => {
                let value = 0.5 * u[0] * u[0];
                for j in 0..*dim {
                    f.rows[0][j] = value;
                }
            }
            SystemModel::Advection { velocity } => {
                for j in 0..velocity.dim() {
                    f.rows[0][j] = velocity[j] * u[0];
                }
            }
            SystemModel::ShallowWater { gravity } => {
                let (h, m) = (u[0], u[1]);
                f.rows[0][0] = m;
                f.rows[1][0] = m * m / h + 0.5 * gravity * h * h;
            }
        }
        Ok(f)
    }

    fn check_direction(&self, d: &Coord) -> Result<()> {
        if d.dim() != self.dim() {
            return Err(FluxError::InvalidArgument(format!(
                "direction has dimension {}, {} needs {}",
                d.dim(),
                self.name(),
                self.dim()
            )));
        }
        if !d.is_unit() {
            return Err(FluxError::NonUnitDirection { norm: d.norm() });
        }
        Ok(())
    }

    /// f(u)·d for a unit direction d.
    pub fn directional_flux(&self, u: &StateVector, d: &Coord) -> Result<StateVector> {
        self.check_direction(d)?;
        Ok(self.flux(u)?.dot_direction(d))
    }

    /// Upper bound for |λ| over the characteristic speeds of d·f at u.
    pub fn max_speed(&self, u: &StateVector, d: &Coord) -> Result<f64> {
        self.check_direction(d)?;
        self.check_admissible(u)?;
        Ok(match self {
            SystemModel::Burgers { .. } => u[0].abs() * d.component_sum().abs(),
            SystemModel::Advection { velocity } => velocity.dot(d).abs(),
            SystemModel::ShallowWater { gravity } => {
                let (h, m) = (u[0], u[1]);
                (m / h).abs() + (gravity * h).sqrt()
            }
        })
    }

    /// The wave structure of the Riemann problem for the directional flux
    /// g(w) = d·f(w) with data (u_l, u_r).
    pub fn riemann_fan(
        &self,
        u_l: &StateVector,
        u_r: &StateVector,
        d: &Coord,
    ) -> Result<RiemannFan> {
        self.check_direction(d)?;
        self.check_admissible(u_l)?;
        self.check_admissible(u_r)?;
        if u_l == u_r {
            return Ok(RiemannFan::constant(*u_l));
        }
        Ok(match self {
            SystemModel::Burgers { .. } => {
                let coeff = d.component_sum();
                scalar_convex_fan(*u_l, *u_r, coeff)
            }
            SystemModel::Advection { velocity } => {
                let speed = velocity.dot(d);
                RiemannFan::new(vec![*u_l, *u_r], vec![Wave::Contact { speed }])
            }
            SystemModel::ShallowWater { gravity } => {
                // d = ±1 in one dimension. The solution of the mirrored flux
                // -f is the spatial reflection of the solution with the data
                // swapped.
                if d[0] > 0.0 {
                    shallow_water::solve(*gravity, *u_l, *u_r)?
                } else {
                    shallow_water::solve(*gravity, *u_r, *u_l)?.mirrored()
                }
            }
        })
    }

    /// The self-similar Riemann solution evaluated at ξ = x/t.
    pub fn riemann_solve(
        &self,
        u_l: &StateVector,
        u_r: &StateVector,
        d: &Coord,
        xi: f64,
    ) -> Result<StateVector> {
        Ok(self.riemann_fan(u_l, u_r, d)?.sample(xi))
    }

    /// Godunov numerical flux: the directional flux of the Riemann solution
    /// sampled on the interface ξ = 0.
    pub fn godunov_flux(
        &self,
        u_l: &StateVector,
        u_r: &StateVector,
        d: &Coord,
    ) -> Result<StateVector> {
        let interface = self.riemann_fan(u_l, u_r, d)?.sample(0.0);
        self.directional_flux(&interface, d)
    }

    /// Per-component upper bound of |f_i(u)·ν| over the componentwise state
    /// box [lo, hi] and unit normals `normals` (`None` = all directions).
    pub fn flux_normal_bound(
        &self,
        lo: &StateVector,
        hi: &StateVector,
        normals: Option<&[Coord]>,
    ) -> StateVector {
        match self {
            SystemModel::Burgers { dim } => {
                let factor = normals
                    .map(|ns| {
                        ns.iter()
                            .fold(0.0f64, |acc, n| acc.max(n.component_sum().abs()))
                    })
                    .unwrap_or((*dim as f64).sqrt());
                let u_max = lo[0].abs().max(hi[0].abs());
                StateVector::scalar(0.5 * u_max * u_max * factor)
            }
            SystemModel::Advection { velocity } => {
                let factor = normals
                    .map(|ns| {
                        ns.iter()
                            .fold(0.0f64, |acc, n| acc.max(velocity.dot(n).abs()))
                    })
                    .unwrap_or_else(|| velocity.norm());
                StateVector::scalar(lo[0].abs().max(hi[0].abs()) * factor)
            }
            SystemModel::ShallowWater { gravity } => {
                let m_max = lo[1].abs().max(hi[1].abs());
                let h_min = lo[0];
                let h_max = hi[0];
                StateVector::pair(m_max, m_max * m_max / h_min + 0.5 * gravity * h_max * h_max)
            }
        }
    }
}

/// Entropy solution for a scalar quadratic flux g(u) = coeff·u²/2.
fn scalar_convex_fan(u_l: StateVector, u_r: StateVector, coeff: f64) -> RiemannFan {
    let (a, b) = (u_l[0], u_r[0]);
    if coeff == 0.0 {
        // The flux is identically zero: a stationary jump.
        return RiemannFan::new(vec![u_l, u_r], vec![Wave::Contact { speed: 0.0 }]);
    }
    let lambda_l = coeff * a;
    let lambda_r = coeff * b;
    if lambda_l > lambda_r {
        let speed = 0.5 * coeff * (a + b);
        RiemannFan::new(vec![u_l, u_r], vec![Wave::Shock { speed }])
    } else {
        RiemannFan::new(
            vec![u_l, u_r],
            vec![Wave::Rarefaction {
                head: lambda_l,
                tail: lambda_r,
                fan: Fan::ScalarConvex { coeff },
            }],
        )
    }
}
