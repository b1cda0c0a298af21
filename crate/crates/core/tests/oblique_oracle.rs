//! Cross-validation of the event-split face-flux machinery against an
//! independent brute-force route: per-node crossing times located by
//! bisection on state equality (no wave-speed algebra), then adaptive
//! quadrature along the face with no breakpoint hints.

use fluxlaw::exact::PlanarWeakSolution;
use fluxlaw::geometry::{AxisFace, BoxDomain, Coord, Face};
use fluxlaw::quadrature::adaptive_quad_scalar;
use fluxlaw::systems::{StateVector, SystemModel};
use fluxlaw::trace::{face_flux_profile, FluxSource};

fn oblique_shock() -> PlanarWeakSolution {
    PlanarWeakSolution::new(
        SystemModel::burgers(2).unwrap(),
        Coord::d2(
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_1_SQRT_2,
        ),
        0.0,
        StateVector::scalar(1.0),
        StateVector::scalar(0.0),
    )
    .unwrap()
}

/// Time-integrated flux density at one node, locating the (single) state
/// switch by bisection on sampled values instead of wave-speed algebra.
fn node_flux_by_bisection(
    sol: &PlanarWeakSolution,
    x: &Coord,
    normal: &Coord,
    t1: f64,
    t2: f64,
) -> f64 {
    let state = |t: f64| sol.sample(x, t).unwrap();
    let density = |u: &StateVector| sol.model().directional_flux(u, normal).unwrap()[0];

    let eps = 1e-13 * (t2 - t1);
    let early = state(t1 + eps);
    let late = state(t2 - eps);
    if early == late {
        return density(&early) * (t2 - t1);
    }
    let mut lo = t1 + eps;
    let mut hi = t2 - eps;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if state(mid) == early {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let crossing = 0.5 * (lo + hi);
    density(&early) * (crossing - t1) + density(&late) * (t2 - crossing)
}

fn face_flux_by_bisection(sol: &PlanarWeakSolution, face: &AxisFace, t1: f64, t2: f64) -> f64 {
    let (c0, c1) = face.cross.unwrap();
    let normal = Coord::unit_axis(face.axis, 2, face.sign);
    let out = adaptive_quad_scalar(
        |tau| {
            let x = if face.axis == 0 {
                Coord::d2(face.position, tau)
            } else {
                Coord::d2(tau, face.position)
            };
            node_flux_by_bisection(sol, &x, &normal, t1, t2)
        },
        c0,
        c1,
        1e-11,
        &[],
        4000,
    );
    assert!(
        out.converged,
        "brute-force surface quadrature did not converge"
    );
    out.value[0]
}

#[test]
fn oblique_face_flux_matches_bisection_oracle() {
    let sol = oblique_shock();
    let (t1, t2) = (0.0, 0.5);
    for &p in &[0.1, 0.25, 0.4] {
        let face = AxisFace::segment_2d(0, p, (-0.5, 0.5), 1.0);
        let brute = face_flux_by_bisection(&sol, &face, t1, t2);
        let (event_split, err) = sol.face_flux(&Face::Axis(face), t1, t2, 1e-10).unwrap();
        assert!(
            (event_split[0] - brute).abs() <= 1e-8,
            "p = {p}: event-split {} vs bisection {brute} (reported error {err:e})",
            event_split[0]
        );
    }
}

#[test]
fn oblique_profile_matches_bisection_oracle() {
    let sol = oblique_shock();
    let domain = BoxDomain::new(Coord::d2(-0.5, -0.5), Coord::d2(0.5, 0.5)).unwrap();
    let positions = [0.05, 0.2, 0.35];
    let profile = face_flux_profile(&sol, &domain, 0, &positions, 0.0, 0.5, 1e-9).unwrap();
    for sample in profile.samples() {
        let face = AxisFace::segment_2d(0, sample.y, domain.side(1), 1.0);
        let brute = face_flux_by_bisection(&sol, &face, 0.0, 0.5);
        assert!(
            (sample.value[0] - brute).abs() <= 1e-8,
            "position {}: profile {} vs bisection {brute}",
            sample.y,
            sample.value[0]
        );
    }
}

#[test]
fn vertical_face_flux_matches_bisection_oracle() {
    // Axis-1 faces see the same oblique wave through the other coordinate.
    let sol = oblique_shock();
    let face = AxisFace::segment_2d(1, 0.2, (-0.4, 0.6), 1.0);
    let brute = face_flux_by_bisection(&sol, &face, 0.0, 0.5);
    let (event_split, _) = sol.face_flux(&Face::Axis(face), 0.0, 0.5, 1e-10).unwrap();
    assert!((event_split[0] - brute).abs() <= 1e-8);
}

#[test]
fn flux_source_trait_agrees_with_inherent_method() {
    let sol = oblique_shock();
    let face = Face::Axis(AxisFace::segment_2d(0, 0.25, (-0.5, 0.5), 1.0));
    let (a, _) = sol.face_flux(&face, 0.0, 0.5, 1e-10).unwrap();
    let (b, _) = FluxSource::face_flux(&sol, &face, 0.0, 0.5, 1e-10).unwrap();
    assert_eq!(a[0], b[0]);
}
