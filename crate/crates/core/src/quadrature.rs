//! Gauss-Legendre rules, adaptive quadrature, and deterministic summation.
//!
//! Integrands here are piecewise smooth once wave events are split out, so
//! the adaptive driver accepts a list of initial breakpoints and then bisects
//! the worst segment (error estimated as |G15 - G7|) until the summed error
//! estimate drops below the requested absolute tolerance.
//!
//! All reductions use pairwise summation in a fixed order so results are
//! reproducible bit for bit.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

/// Number of components an integrand sample carries. Scalar integrands leave
/// the tail at zero.
pub const SAMPLE_WIDTH: usize = 2;

pub type Sample = [f64; SAMPLE_WIDTH];

pub const DEFAULT_MAX_SEGMENTS: usize = 4000;

/// A fixed Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Nodes and weights via Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        // Sort ascending; the cos initial guess yields descending nodes.
        nodes.reverse();
        weights.reverse();
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes mapped to [a, b] with matching weights.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let terms: Vec<f64> = self.mapped(a, b).map(|(x, w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }

    pub fn integrate_vec<F: FnMut(f64) -> Sample>(&self, a: f64, b: f64, mut f: F) -> Sample {
        let mut comp = [
            Vec::with_capacity(self.len()),
            Vec::with_capacity(self.len()),
        ];
        for (x, w) in self.mapped(a, b) {
            let v = f(x);
            comp[0].push(w * v[0]);
            comp[1].push(w * v[1]);
        }
        [pairwise_sum(&comp[0]), pairwise_sum(&comp[1])]
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

fn low_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::new(7))
}

fn high_rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::new(15))
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: Sample,
    /// Absolute error estimate (sum over segments of |G15 - G7|).
    pub error: f64,
    pub evals: usize,
    /// False when the segment budget ran out before the tolerance was met.
    pub converged: bool,
}

impl QuadOutcome {
    pub fn zero() -> Self {
        Self {
            value: [0.0; SAMPLE_WIDTH],
            error: 0.0,
            evals: 0,
            converged: true,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: Sample,
    error: f64,
    seq: u64,
    /// Width has hit the bisection floor; keep its error but stop splitting.
    stuck: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on (splittable, error); seq breaks ties deterministically.
        (!self.stuck, self.error, other.seq)
            .partial_cmp(&(!other.stuck, other.error, self.seq))
            .unwrap_or(Ordering::Equal)
    }
}

/// Adaptive Gauss quadrature of a vector-valued integrand over [a, b].
///
/// `breakpoints` seeds the initial subdivision (values outside (a, b) are
/// ignored); pass the known kink/discontinuity locations so each segment is
/// smooth and the embedded error estimate is sharp.
pub fn adaptive_quad<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    breakpoints: &[f64],
    max_segments: usize,
) -> QuadOutcome
where
    F: FnMut(f64) -> Sample,
{
    if a == b {
        return QuadOutcome::zero();
    }
    if a > b {
        let mut out = adaptive_quad(f, b, a, tol, breakpoints, max_segments);
        out.value = [-out.value[0], -out.value[1]];
        return out;
    }

    let mut edges: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| *x > a && *x < b)
        .collect();
    edges.sort_by(|p, q| p.partial_cmp(q).unwrap());
    edges.dedup_by(|p, q| (*p - *q).abs() <= 1e-15 * (b - a));
    edges.insert(0, a);
    edges.push(b);

    let mut evals = 0usize;
    let mut seq = 0u64;
    let width_floor = 1e-14 * (b - a);
    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut total_error = 0.0;

    let make_segment = |lo: f64, hi: f64, f: &mut F, evals: &mut usize, seq: &mut u64| -> Segment {
        let coarse = low_rule().integrate_vec(lo, hi, &mut *f);
        let fine = high_rule().integrate_vec(lo, hi, &mut *f);
        *evals += low_rule().len() + high_rule().len();
        *seq += 1;
        Segment {
            a: lo,
            b: hi,
            value: fine,
            error: (fine[0] - coarse[0]).abs() + (fine[1] - coarse[1]).abs(),
            seq: *seq,
            stuck: hi - lo <= width_floor,
        }
    };

    for w in edges.windows(2) {
        let seg = make_segment(w[0], w[1], &mut f, &mut evals, &mut seq);
        total_error += seg.error;
        heap.push(seg);
    }

    while total_error > tol && heap.len() < max_segments {
        let worst = heap.pop().expect("heap cannot be empty here");
        if worst.stuck || worst.error == 0.0 {
            // Nothing left worth splitting.
            heap.push(worst);
            break;
        }
        total_error -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        let left = make_segment(worst.a, mid, &mut f, &mut evals, &mut seq);
        let right = make_segment(mid, worst.b, &mut f, &mut evals, &mut seq);
        total_error += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }

    // Deterministic reduction: sort segments by position, sum pairwise.
    let mut segments: Vec<Segment> = heap.into_vec();
    segments.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap());
    let col0: Vec<f64> = segments.iter().map(|s| s.value[0]).collect();
    let col1: Vec<f64> = segments.iter().map(|s| s.value[1]).collect();
    let errors: Vec<f64> = segments.iter().map(|s| s.error).collect();
    let error = pairwise_sum(&errors);

    QuadOutcome {
        value: [pairwise_sum(&col0), pairwise_sum(&col1)],
        error,
        evals,
        converged: error <= tol,
    }
}

/// Scalar adaptive quadrature; see [`adaptive_quad`].
pub fn adaptive_quad_scalar<F>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    breakpoints: &[f64],
    max_segments: usize,
) -> QuadOutcome
where
    F: FnMut(f64) -> f64,
{
    adaptive_quad(|x| [f(x), 0.0], a, b, tol, breakpoints, max_segments)
}

/// Pairwise (cascade) summation: deterministic and more accurate than a
/// running sum.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_weights_sum_to_interval_length() {
        for n in 1..=20 {
            let rule = GaussRule::new(n);
            let total: f64 = rule.mapped(0.0, 2.0).map(|(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-13, "n = {n}: {total}");
        }
    }

    #[test]
    fn gauss_exact_for_polynomials() {
        // n nodes are exact through degree 2n - 1.
        let rule = GaussRule::new(5);
        let value = rule.integrate(0.0, 1.0, |x| x.powi(9));
        assert!((value - 0.1).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_kink_with_breakpoint_hint() {
        let f = |x: f64| (x - 0.3).abs();
        let out = adaptive_quad_scalar(f, 0.0, 1.0, 1e-12, &[0.3], DEFAULT_MAX_SEGMENTS);
        // Exact: 0.3^2/2 + 0.7^2/2.
        let exact = 0.045 + 0.245;
        assert!(out.converged);
        assert!((out.value[0] - exact).abs() < 1e-12);
    }

    #[test]
    fn adaptive_finds_kink_without_hint() {
        let f = |x: f64| if x < 0.5 { 1.0 } else { 0.0 };
        let out = adaptive_quad_scalar(f, 0.0, 1.0, 1e-10, &[], DEFAULT_MAX_SEGMENTS);
        assert!((out.value[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn reversed_bounds_negate() {
        let out = adaptive_quad_scalar(|x| x, 1.0, 0.0, 1e-12, &[], DEFAULT_MAX_SEGMENTS);
        assert!((out.value[0] + 0.5).abs() < 1e-13);
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_inputs() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(pairwise_sum(&xs), 15.0);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
