//! Domains, faces, outward normals, surface quadrature, and one-parameter
//! boundary foliations.
//!
//! A foliation is a nested family of boundaries Γ_y sweeping a tubular shell
//! around a base boundary; the parameter y is arclength along the outward
//! normal, so leaves of a concentric-circle foliation are exactly |y - y'|
//! apart. Box boundaries are inflated through the Minkowski sum (adjacent
//! offset faces extended to meet at the offset corner), which keeps every
//! leaf a box boundary.

use crate::error::{FluxError, Result};
use crate::quadrature::GaussRule;

pub const MAX_DIM: usize = 2;

/// A point or vector in 1 or 2 space dimensions.
#[derive(Clone, Copy, PartialEq)]
pub struct Coord {
    data: [f64; MAX_DIM],
    dim: usize,
}

impl std::fmt::Debug for Coord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Coord {
    pub fn d1(x: f64) -> Self {
        Self {
            data: [x, 0.0],
            dim: 1,
        }
    }

    pub fn d2(x: f64, y: f64) -> Self {
        Self {
            data: [x, y],
            dim: 2,
        }
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        match values {
            [x] => Ok(Self::d1(*x)),
            [x, y] => Ok(Self::d2(*x, *y)),
            _ => Err(FluxError::InvalidArgument(format!(
                "expected 1 or 2 coordinates, got {}",
                values.len()
            ))),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            data: [0.0; MAX_DIM],
            dim,
        }
    }

    /// Unit vector along axis `j`, scaled by `sign`.
    pub fn unit_axis(j: usize, dim: usize, sign: f64) -> Self {
        let mut data = [0.0; MAX_DIM];
        data[j] = sign;
        Self { data, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.dim]
    }

    pub fn dot(&self, other: &Coord) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-12
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        for v in &mut out.data {
            *v *= factor;
        }
        out
    }

    pub fn add(&self, other: &Coord) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = *self;
        for (v, w) in out.data.iter_mut().zip(other.data) {
            *v += w;
        }
        out
    }

    pub fn sub(&self, other: &Coord) -> Self {
        self.add(&other.scaled(-1.0))
    }

    /// Sum of the components; `d · (1, …, 1)`.
    pub fn component_sum(&self) -> f64 {
        self.as_slice().iter().sum()
    }
}

impl std::ops::Index<usize> for Coord {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

/// An axis-aligned box with nonempty per-axis intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxDomain {
    lo: Coord,
    hi: Coord,
}

impl BoxDomain {
    pub fn new(lo: Coord, hi: Coord) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(FluxError::Geometry("box endpoint dimensions differ".into()));
        }
        for j in 0..lo.dim() {
            if !(lo[j] < hi[j]) {
                return Err(FluxError::Geometry(format!(
                    "box interval on axis {j} is empty: [{}, {}]",
                    lo[j], hi[j]
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    /// Allows zero-width intervals; only for trivial degenerate-domain tests.
    pub fn degenerate(lo: Coord, hi: Coord) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(FluxError::Geometry("box endpoint dimensions differ".into()));
        }
        for j in 0..lo.dim() {
            if lo[j] > hi[j] {
                return Err(FluxError::Geometry(format!(
                    "box interval on axis {j} is reversed: [{}, {}]",
                    lo[j], hi[j]
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn lo(&self) -> Coord {
        self.lo
    }

    pub fn hi(&self) -> Coord {
        self.hi
    }

    pub fn side(&self, j: usize) -> (f64, f64) {
        (self.lo[j], self.hi[j])
    }

    pub fn measure(&self) -> f64 {
        (0..self.dim()).map(|j| self.hi[j] - self.lo[j]).product()
    }

    pub fn contains(&self, x: &Coord, tol: f64) -> bool {
        (0..self.dim()).all(|j| x[j] >= self.lo[j] - tol && x[j] <= self.hi[j] + tol)
    }

    pub fn corners(&self) -> Vec<Coord> {
        match self.dim() {
            1 => vec![Coord::d1(self.lo[0]), Coord::d1(self.hi[0])],
            _ => vec![
                Coord::d2(self.lo[0], self.lo[1]),
                Coord::d2(self.hi[0], self.lo[1]),
                Coord::d2(self.lo[0], self.hi[1]),
                Coord::d2(self.hi[0], self.hi[1]),
            ],
        }
    }

    /// Outward-oriented boundary faces.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces = Vec::with_capacity(2 * self.dim());
        for j in 0..self.dim() {
            for (position, sign) in [(self.lo[j], -1.0), (self.hi[j], 1.0)] {
                let cross = if self.dim() == 2 {
                    let k = 1 - j;
                    Some((self.lo[k], self.hi[k]))
                } else {
                    None
                };
                faces.push(Face::Axis(AxisFace {
                    axis: j,
                    position,
                    cross,
                    sign,
                    dim: self.dim(),
                }));
            }
        }
        faces
    }

    /// Offsets every face outward by `y` (inward for negative `y`).
    pub fn inflate(&self, y: f64) -> Result<BoxDomain> {
        let mut lo = self.lo;
        let mut hi = self.hi;
        for j in 0..self.dim() {
            lo.data[j] -= y;
            hi.data[j] += y;
            if !(lo.data[j] < hi.data[j]) {
                return Err(FluxError::Geometry(format!(
                    "inflating by {y} empties the box on axis {j}"
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    pub fn boundary_measure(&self) -> f64 {
        match self.dim() {
            1 => 2.0,
            _ => 2.0 * ((self.hi[0] - self.lo[0]) + (self.hi[1] - self.lo[1])),
        }
    }
}

/// A disk in the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: Coord,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Coord, radius: f64) -> Result<Self> {
        if center.dim() != 2 {
            return Err(FluxError::Geometry("disks require dimension 2".into()));
        }
        if !(radius > 0.0) {
            return Err(FluxError::Geometry(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }
}

/// A bounded domain: box or disk.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Box(BoxDomain),
    Disk(Disk),
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Box(b) => b.dim(),
            Domain::Disk(_) => 2,
        }
    }

    pub fn boundary(&self) -> Vec<Face> {
        match self {
            Domain::Box(b) => b.faces(),
            Domain::Disk(d) => vec![Face::Arc(ArcFace {
                center: d.center,
                radius: d.radius,
                theta: (0.0, 2.0 * std::f64::consts::PI),
                orientation: 1.0,
            })],
        }
    }

    pub fn boundary_measure(&self) -> f64 {
        match self {
            Domain::Box(b) => b.boundary_measure(),
            Domain::Disk(d) => 2.0 * std::f64::consts::PI * d.radius,
        }
    }

    pub fn inflate(&self, y: f64) -> Result<Domain> {
        match self {
            Domain::Box(b) => Ok(Domain::Box(b.inflate(y)?)),
            Domain::Disk(d) => {
                let radius = d.radius + y;
                if !(radius > 0.0) {
                    return Err(FluxError::Geometry(format!(
                        "inflating by {y} empties the disk (radius {})",
                        d.radius
                    )));
                }
                Ok(Domain::Disk(Disk {
                    center: d.center,
                    radius,
                }))
            }
        }
    }
}

/// A face of an axis-aligned box: point in 1D, segment in 2D.
#[derive(Clone, Debug, PartialEq)]
pub struct AxisFace {
    /// Axis the face is perpendicular to.
    pub axis: usize,
    /// Coordinate of the face along `axis`.
    pub position: f64,
    /// Extent along the other axis (2D only).
    pub cross: Option<(f64, f64)>,
    /// Normal is `sign * e_axis`.
    pub sign: f64,
    dim: usize,
}

impl AxisFace {
    pub fn point_1d(position: f64, sign: f64) -> Self {
        Self {
            axis: 0,
            position,
            cross: None,
            sign,
            dim: 1,
        }
    }

    pub fn segment_2d(axis: usize, position: f64, cross: (f64, f64), sign: f64) -> Self {
        Self {
            axis,
            position,
            cross: Some(cross),
            sign,
            dim: 2,
        }
    }
}

/// An arc of a circle, oriented radially (+1 outward, -1 inward).
#[derive(Clone, Debug, PartialEq)]
pub struct ArcFace {
    pub center: Coord,
    pub radius: f64,
    /// Angle range; a full circle is (0, 2π).
    pub theta: (f64, f64),
    pub orientation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Face {
    Axis(AxisFace),
    Arc(ArcFace),
}

impl Face {
    pub fn dim(&self) -> usize {
        match self {
            Face::Axis(f) => f.dim,
            Face::Arc(_) => 2,
        }
    }

    /// Surface measure: counting measure (1) for 1D point faces, length for
    /// segments and arcs.
    pub fn measure(&self) -> f64 {
        match self {
            Face::Axis(f) => match f.cross {
                None => 1.0,
                Some((c0, c1)) => c1 - c0,
            },
            Face::Arc(f) => f.radius * (f.theta.1 - f.theta.0),
        }
    }

    /// Parameter range of the face: degenerate for point faces, the cross
    /// interval for segments, the angle range for arcs.
    pub fn param_range(&self) -> (f64, f64) {
        match self {
            Face::Axis(f) => f.cross.unwrap_or((0.0, 0.0)),
            Face::Arc(f) => f.theta,
        }
    }

    /// |dS/dparam|.
    pub fn param_jacobian(&self) -> f64 {
        match self {
            Face::Axis(_) => 1.0,
            Face::Arc(f) => f.radius,
        }
    }

    pub fn point_at(&self, t: f64) -> Coord {
        match self {
            Face::Axis(f) => match f.cross {
                None => Coord::d1(f.position),
                Some(_) => {
                    if f.axis == 0 {
                        Coord::d2(f.position, t)
                    } else {
                        Coord::d2(t, f.position)
                    }
                }
            },
            Face::Arc(f) => Coord::d2(
                f.center[0] + f.radius * t.cos(),
                f.center[1] + f.radius * t.sin(),
            ),
        }
    }

    pub fn normal_at_param(&self, t: f64) -> Coord {
        match self {
            Face::Axis(f) => Coord::unit_axis(f.axis, f.dim, f.sign),
            Face::Arc(f) => Coord::d2(f.orientation * t.cos(), f.orientation * t.sin()),
        }
    }

    /// Unit outward normal at a point verified to lie on the face.
    pub fn outward_normal(&self, x: &Coord) -> Result<Coord> {
        const TOL: f64 = 1e-12;
        match self {
            Face::Axis(f) => {
                let mut distance = (x[f.axis] - f.position).abs();
                if let Some((c0, c1)) = f.cross {
                    let c = x[1 - f.axis];
                    let off = if c < c0 {
                        c0 - c
                    } else if c > c1 {
                        c - c1
                    } else {
                        0.0
                    };
                    distance = distance.max(off);
                }
                if distance > TOL {
                    return Err(FluxError::PointOffFace {
                        point: x.as_slice().to_vec(),
                        distance,
                    });
                }
                Ok(Coord::unit_axis(f.axis, f.dim, f.sign))
            }
            Face::Arc(f) => {
                let radial = x.sub(&f.center);
                let distance = (radial.norm() - f.radius).abs();
                if distance > TOL {
                    return Err(FluxError::PointOffFace {
                        point: x.as_slice().to_vec(),
                        distance,
                    });
                }
                Ok(radial.scaled(f.orientation / radial.norm()))
            }
        }
    }
}

/// Quadrature nodes on a face with surface-measure weights.
#[derive(Clone, Debug)]
pub struct SurfaceQuadrature {
    pub nodes: Vec<Coord>,
    pub normals: Vec<Coord>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl SurfaceQuadrature {
    pub fn total_weight(&self) -> f64 {
        crate::quadrature::pairwise_sum(&self.weights)
    }
}

/// Gauss-Legendre nodes on axis faces, equal-angle composite Gauss on arcs.
/// The weights sum to the exact surface measure.
pub fn surface_quadrature(face: &Face, order: usize) -> SurfaceQuadrature {
    assert!(order >= 1, "quadrature order must be at least 1");
    match face {
        Face::Axis(f) => match f.cross {
            None => SurfaceQuadrature {
                nodes: vec![Coord::d1(f.position)],
                normals: vec![Coord::unit_axis(0, 1, f.sign)],
                weights: vec![1.0],
                order,
            },
            Some((c0, c1)) => {
                let rule = GaussRule::new(order);
                let mut nodes = Vec::with_capacity(order);
                let mut weights = Vec::with_capacity(order);
                for (t, w) in rule.mapped(c0, c1) {
                    nodes.push(face.point_at(t));
                    weights.push(w);
                }
                let normal = Coord::unit_axis(f.axis, 2, f.sign);
                SurfaceQuadrature {
                    normals: vec![normal; nodes.len()],
                    nodes,
                    weights,
                    order,
                }
            }
        },
        Face::Arc(f) => {
            let panels = order.max(4);
            let rule = GaussRule::new(order);
            let (t0, t1) = f.theta;
            let mut nodes = Vec::new();
            let mut normals = Vec::new();
            let mut weights = Vec::new();
            for p in 0..panels {
                let a = t0 + (t1 - t0) * p as f64 / panels as f64;
                let b = t0 + (t1 - t0) * (p + 1) as f64 / panels as f64;
                for (t, w) in rule.mapped(a, b) {
                    nodes.push(face.point_at(t));
                    normals.push(face.normal_at_param(t));
                    weights.push(w * f.radius);
                }
            }
            SurfaceQuadrature {
                nodes,
                normals,
                weights,
                order,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoliationKind {
    BoxInflation,
    ConcentricCircle,
}

/// A one-parameter nested family of boundaries Γ_y, y in [-δ·w, (1-δ)·w],
/// sweeping a tubular shell around the base boundary.
#[derive(Clone, Debug)]
pub struct BoundaryFoliation {
    kind: FoliationKind,
    base: Domain,
    delta: f64,
    width: f64,
    ys: Vec<f64>,
}

/// Builds `count` equispaced leaves. The parameter y is normal arclength:
/// leaf y is the base boundary offset outward by y.
pub fn foliate(base: Domain, delta: f64, width: f64, count: usize) -> Result<BoundaryFoliation> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(FluxError::Geometry(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if !(width > 0.0) {
        return Err(FluxError::Geometry(format!(
            "width must be positive, got {width}"
        )));
    }
    if count < 2 {
        return Err(FluxError::Geometry(format!(
            "count must be at least 2, got {count}"
        )));
    }
    // The innermost domain must be nonempty.
    base.inflate(-delta * width)?;
    let kind = match base {
        Domain::Box(_) => FoliationKind::BoxInflation,
        Domain::Disk(_) => FoliationKind::ConcentricCircle,
    };
    let y_lo = -delta * width;
    let y_hi = (1.0 - delta) * width;
    let ys = (0..count)
        .map(|k| y_lo + (y_hi - y_lo) * k as f64 / (count - 1) as f64)
        .collect();
    Ok(BoundaryFoliation {
        kind,
        base,
        delta,
        width,
        ys,
    })
}

impl BoundaryFoliation {
    pub fn kind(&self) -> FoliationKind {
        self.kind
    }

    pub fn base(&self) -> &Domain {
        &self.base
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// The stored equispaced leaf parameters.
    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn y_range(&self) -> (f64, f64) {
        (-self.delta * self.width, (1.0 - self.delta) * self.width)
    }

    /// The domain Ω_y bounded by leaf y (defined for any y in the range).
    pub fn domain_at(&self, y: f64) -> Result<Domain> {
        let (lo, hi) = self.y_range();
        if y < lo - 1e-12 || y > hi + 1e-12 {
            return Err(FluxError::Geometry(format!(
                "y = {y} outside the foliation range [{lo}, {hi}]"
            )));
        }
        self.base.inflate(y)
    }

    /// The boundary Γ_y as outward-oriented faces.
    pub fn leaf_at(&self, y: f64) -> Result<Vec<Face>> {
        Ok(self.domain_at(y)?.boundary())
    }

    pub fn leaf(&self, index: usize) -> Result<Vec<Face>> {
        let y = *self.ys.get(index).ok_or_else(|| {
            FluxError::Geometry(format!(
                "leaf index {index} out of range (count {})",
                self.ys.len()
            ))
        })?;
        self.leaf_at(y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_inflation_matches_hand_offsets() {
        // delta = 0.5, width = 0.1, count = 3 on the unit square gives the
        // boundaries of [0.05, 0.95]^2, [0, 1]^2, [-0.05, 1.05]^2.
        let base = Domain::Box(BoxDomain::new(Coord::d2(0.0, 0.0), Coord::d2(1.0, 1.0)).unwrap());
        let fol = foliate(base, 0.5, 0.1, 3).unwrap();
        let expected = [(0.05, 0.95), (0.0, 1.0), (-0.05, 1.05)];
        for (&y, (lo, hi)) in fol.ys().iter().zip(expected) {
            let b = match fol.domain_at(y).unwrap() {
                Domain::Box(b) => b,
                _ => unreachable!(),
            };
            for j in 0..2 {
                assert!((b.side(j).0 - lo).abs() < 1e-14, "y = {y}");
                assert!((b.side(j).1 - hi).abs() < 1e-14, "y = {y}");
            }
        }
    }

    #[test]
    fn outward_normals_on_unit_box() {
        let b = BoxDomain::new(Coord::d2(0.0, 0.0), Coord::d2(1.0, 1.0)).unwrap();
        let faces = b.faces();
        // Right face of the unit box.
        let right = faces
            .iter()
            .find(|f| matches!(f, Face::Axis(a) if a.axis == 0 && a.sign > 0.0))
            .unwrap();
        let n = right.outward_normal(&Coord::d2(1.0, 0.5)).unwrap();
        assert_eq!(n.as_slice(), &[1.0, 0.0]);
        // Bottom face.
        let bottom = faces
            .iter()
            .find(|f| matches!(f, Face::Axis(a) if a.axis == 1 && a.sign < 0.0))
            .unwrap();
        let n = bottom.outward_normal(&Coord::d2(0.5, 0.0)).unwrap();
        assert_eq!(n.as_slice(), &[0.0, -1.0]);
    }

    #[test]
    fn circle_normal_is_radial() {
        let face = Face::Arc(ArcFace {
            center: Coord::d2(0.0, 0.0),
            radius: 1.0,
            theta: (0.0, 2.0 * std::f64::consts::PI),
            orientation: 1.0,
        });
        let n = face.outward_normal(&Coord::d2(0.0, 1.0)).unwrap();
        assert!((n[0]).abs() < 1e-15);
        assert!((n[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn off_face_point_is_rejected() {
        let face = Face::Axis(AxisFace::point_1d(0.5, 1.0));
        let err = face.outward_normal(&Coord::d1(0.6)).unwrap_err();
        assert!(matches!(err, FluxError::PointOffFace { .. }));
    }

    #[test]
    fn quadrature_weights_sum_to_surface_measure() {
        // Unit segment, order 1: single midpoint node of weight 1.
        let seg = Face::Axis(AxisFace::segment_2d(0, 0.0, (0.0, 1.0), 1.0));
        let q = surface_quadrature(&seg, 1);
        assert_eq!(q.nodes.len(), 1);
        assert!((q.total_weight() - 1.0).abs() < 1e-15);

        // Length-2 segment, order 3.
        let seg = Face::Axis(AxisFace::segment_2d(1, 1.0, (0.0, 2.0), -1.0));
        let q = surface_quadrature(&seg, 3);
        assert!((q.total_weight() - 2.0).abs() < 1e-13);

        // Unit circle: weights sum to 2π.
        let circ = Face::Arc(ArcFace {
            center: Coord::d2(0.0, 0.0),
            radius: 1.0,
            theta: (0.0, 2.0 * std::f64::consts::PI),
            orientation: 1.0,
        });
        let q = surface_quadrature(&circ, 5);
        assert!((q.total_weight() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn quadrature_is_exact_for_declared_order() {
        let seg = Face::Axis(AxisFace::segment_2d(0, 0.0, (0.0, 1.0), 1.0));
        let q = surface_quadrature(&seg, 4);
        // Degree-4 polynomial in the cross coordinate.
        let value: f64 = q
            .nodes
            .iter()
            .zip(&q.weights)
            .map(|(x, w)| w * x[1].powi(4))
            .sum();
        assert!((value - 0.2).abs() < 1e-13);
    }

    #[test]
    fn foliation_nesting_is_strict() {
        let base = Domain::Box(BoxDomain::new(Coord::d2(0.0, 0.0), Coord::d2(1.0, 1.0)).unwrap());
        let fol = foliate(base, 0.5, 0.1, 5).unwrap();
        let ys = fol.ys().to_vec();
        for pair in ys.windows(2) {
            let inner = match fol.domain_at(pair[0]).unwrap() {
                Domain::Box(b) => b,
                _ => unreachable!(),
            };
            let outer = match fol.domain_at(pair[1]).unwrap() {
                Domain::Box(b) => b,
                _ => unreachable!(),
            };
            for j in 0..2 {
                assert!(outer.side(j).0 < inner.side(j).0);
                assert!(inner.side(j).1 < outer.side(j).1);
            }
        }
    }

    #[test]
    fn disk_foliation_radii() {
        let base = Domain::Disk(Disk::new(Coord::d2(0.0, 0.0), 1.0).unwrap());
        let fol = foliate(base, 0.5, 0.1, 3).unwrap();
        let radii: Vec<f64> = fol
            .ys()
            .iter()
            .map(|&y| match fol.domain_at(y).unwrap() {
                Domain::Disk(d) => d.radius,
                _ => unreachable!(),
            })
            .collect();
        assert!((radii[0] - 0.95).abs() < 1e-15);
        assert!((radii[1] - 1.0).abs() < 1e-15);
        assert!((radii[2] - 1.05).abs() < 1e-15);
    }

    #[test]
    fn empty_inner_domain_is_rejected() {
        let base = Domain::Box(BoxDomain::new(Coord::d1(0.0), Coord::d1(0.05)).unwrap());
        let err = foliate(base, 0.5, 0.2, 3).unwrap_err();
        assert!(matches!(err, FluxError::Geometry(_)));
    }

    #[test]
    fn inflated_box_boundary_is_closed() {
        // Summed face measures must tile the perimeter with no gaps/overlaps.
        let b = BoxDomain::new(Coord::d2(0.0, 0.0), Coord::d2(1.0, 2.0)).unwrap();
        let inflated = b.inflate(0.1).unwrap();
        let total: f64 = inflated.faces().iter().map(|f| f.measure()).sum();
        assert!((total - inflated.boundary_measure()).abs() < 1e-13);
        assert!((total - 2.0 * (1.2 + 2.2)).abs() < 1e-13);
    }
}
