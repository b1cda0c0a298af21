//! Self-similar solutions of 1D Riemann problems.
//!
//! A [`RiemannFan`] records the wave structure (types, speeds, star states)
//! of the entropy solution w(ξ) for a directional flux g(w) = d·f(w). Both
//! the analytic planar-wave oracles and the Godunov solver sample it.

use super::StateVector;

/// Evaluates states inside a rarefaction fan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fan {
    /// Scalar flux g(u) = coeff · u²/2; the fan value is ξ / coeff. The
    /// coefficient may be negative (mirrored orientation).
    ScalarConvex { coeff: f64 },
    /// Shallow-water fan, parametrized by the velocity and celerity of the
    /// adjacent constant state. `mirrored` evaluates the standard-orientation
    /// formulas at -ξ (solution of the reversed flux -f).
    ShallowWater {
        side: SwSide,
        vel: f64,
        cel: f64,
        gravity: f64,
        mirrored: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwSide {
    Left,
    Right,
}

impl Fan {
    pub fn value(&self, xi: f64) -> StateVector {
        match *self {
            Fan::ScalarConvex { coeff } => StateVector::scalar(xi / coeff),
            Fan::ShallowWater {
                side,
                vel,
                cel,
                gravity,
                mirrored,
            } => {
                let x = if mirrored { -xi } else { xi };
                let (celerity, velocity) = match side {
                    // Invariant u + 2c across a left fan; ξ = u - c.
                    SwSide::Left => {
                        let c = (vel + 2.0 * cel - x) / 3.0;
                        (c, x + c)
                    }
                    // Invariant u - 2c across a right fan; ξ = u + c.
                    SwSide::Right => {
                        let c = (x - vel + 2.0 * cel) / 3.0;
                        (c, x - c)
                    }
                };
                let depth = celerity * celerity / gravity;
                StateVector::pair(depth, depth * velocity)
            }
        }
    }

    fn mirrored(self) -> Self {
        match self {
            Fan::ScalarConvex { coeff } => Fan::ScalarConvex { coeff: -coeff },
            Fan::ShallowWater {
                side,
                vel,
                cel,
                gravity,
                mirrored,
            } => Fan::ShallowWater {
                side,
                vel,
                cel,
                gravity,
                mirrored: !mirrored,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Wave {
    Shock {
        speed: f64,
    },
    Contact {
        speed: f64,
    },
    /// Fan spanning speeds [head, tail] with head < tail.
    Rarefaction {
        head: f64,
        tail: f64,
        fan: Fan,
    },
}

impl Wave {
    /// Speed span (lo, hi); a single point for shocks and contacts.
    pub fn span(&self) -> (f64, f64) {
        match *self {
            Wave::Shock { speed } | Wave::Contact { speed } => (speed, speed),
            Wave::Rarefaction { head, tail, .. } => (head, tail),
        }
    }

    fn mirrored(self) -> Self {
        match self {
            Wave::Shock { speed } => Wave::Shock { speed: -speed },
            Wave::Contact { speed } => Wave::Contact { speed: -speed },
            Wave::Rarefaction { head, tail, fan } => Wave::Rarefaction {
                head: -tail,
                tail: -head,
                fan: fan.mirrored(),
            },
        }
    }
}

/// The wave structure of a 1D Riemann solution: k waves separating k + 1
/// constant states, ordered left to right with ascending speeds.
#[derive(Clone, Debug, PartialEq)]
pub struct RiemannFan {
    states: Vec<StateVector>,
    waves: Vec<Wave>,
}

impl RiemannFan {
    pub fn new(states: Vec<StateVector>, waves: Vec<Wave>) -> Self {
        debug_assert_eq!(states.len(), waves.len() + 1);
        debug_assert!(waves.windows(2).all(|w| w[0].span().1 <= w[1].span().0));
        Self { states, waves }
    }

    pub fn constant(state: StateVector) -> Self {
        Self {
            states: vec![state],
            waves: Vec::new(),
        }
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn waves(&self) -> &[Wave] {
        &self.waves
    }

    /// Solution of the mirrored problem with flux -g: states reversed, wave
    /// speeds negated, fans evaluated at -ξ.
    pub fn mirrored(mut self) -> Self {
        self.states.reverse();
        self.waves = self.waves.into_iter().rev().map(Wave::mirrored).collect();
        self
    }

    /// Value at the similarity coordinate ξ = x/t. At exactly a wave location
    /// the state to the left is returned (a measure-zero convention).
    pub fn sample(&self, xi: f64) -> StateVector {
        for (k, wave) in self.waves.iter().enumerate() {
            let (lo, hi) = wave.span();
            if xi <= lo {
                return self.states[k];
            }
            if xi < hi {
                if let Wave::Rarefaction { fan, .. } = wave {
                    return fan.value(xi);
                }
            }
        }
        *self.states.last().expect("fan has at least one state")
    }

    /// All kink speeds (shock/contact speeds and fan edges), ascending.
    pub fn speeds(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.waves.len());
        for wave in &self.waves {
            let (lo, hi) = wave.span();
            out.push(lo);
            if hi > lo {
                out.push(hi);
            }
        }
        out
    }

    pub fn max_abs_speed(&self) -> f64 {
        self.speeds().iter().fold(0.0, |acc, s| acc.max(s.abs()))
    }

    /// Componentwise lower/upper bounds over the whole fan, including
    /// rarefaction interiors (the shallow-water momentum attains its
    /// extremum at the sonic point ξ = 0).
    pub fn component_bounds(&self) -> (StateVector, StateVector) {
        let first = self.states[0];
        let mut lo = first;
        let mut hi = first;
        let absorb = |s: &StateVector, lo: &mut StateVector, hi: &mut StateVector| {
            for i in 0..s.components() {
                if s[i] < lo[i] {
                    lo.set(i, s[i]);
                }
                if s[i] > hi[i] {
                    hi.set(i, s[i]);
                }
            }
        };
        for s in &self.states[1..] {
            absorb(s, &mut lo, &mut hi);
        }
        for wave in &self.waves {
            if let Wave::Rarefaction { head, tail, fan } = wave {
                if *head < 0.0 && 0.0 < *tail {
                    absorb(&fan.value(0.0), &mut lo, &mut hi);
                }
            }
        }
        (lo, hi)
    }

    /// Sup-norm bound of the solution over all of space-time (the constant
    /// C bounding |u| on any cylinder).
    pub fn sup_abs(&self) -> StateVector {
        let (lo, hi) = self.component_bounds();
        let mut out = lo;
        for i in 0..out.components() {
            out.set(i, lo[i].abs().max(hi[i].abs()));
        }
        out
    }
}
