//! Node states, the pairwise update rules, and configurations.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered `Zero < E0 < E1 < One`. `Zero` is taken to be the initial
/// majority throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeState {
    Zero,
    E0,
    E1,
    One,
}

impl NodeState {
    pub const ALL: [NodeState; 4] = [NodeState::Zero, NodeState::E0, NodeState::E1, NodeState::One];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Compact trace encoding: `0`, `A`, `B`, `1`.
    pub fn as_char(self) -> char {
        match self {
            NodeState::Zero => '0',
            NodeState::E0 => 'A',
            NodeState::E1 => 'B',
            NodeState::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(NodeState::Zero),
            'A' => Some(NodeState::E0),
            'B' => Some(NodeState::E1),
            '1' => Some(NodeState::One),
            _ => None,
        }
    }
}

impl fmt::Display for NodeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Outcome of a contact between a node in state `a` and a node in state `b`.
///
/// The six rules are symmetric, so `apply_contact(b, a)` is always the
/// swapped result of `apply_contact(a, b)`. Pairs not covered by a rule are
/// returned unchanged.
#[inline]
pub fn apply_contact(a: NodeState, b: NodeState) -> (NodeState, NodeState) {
    use NodeState::*;
    match (a, b) {
        // 0 meets 1: both become undecided, each remembering what it saw.
        (Zero, One) => (E1, E0),
        (One, Zero) => (E0, E1),
        // e0 meets 1
        (E0, One) => (One, E1),
        (One, E0) => (E1, One),
        // e1 meets 0
        (E1, Zero) => (Zero, E0),
        (Zero, E1) => (E0, Zero),
        // swaps
        (E0, Zero) | (Zero, E0) | (E1, One) | (One, E1) | (E0, E1) | (E1, E0) => (b, a),
        _ => (a, b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    states: Vec<NodeState>,
    counts: [usize; 4],
}

impl Configuration {
    pub fn new(states: Vec<NodeState>) -> Self {
        let mut counts = [0; 4];
        for s in &states {
            counts[s.index()] += 1;
        }
        Configuration { states, counts }
    }

    /// Parses the `0AB1` trace encoding.
    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| {
                NodeState::from_char(c)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown state character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Configuration::new)
    }

    pub fn n(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[NodeState] {
        &self.states
    }

    #[inline]
    pub fn state(&self, i: usize) -> NodeState {
        self.states[i]
    }

    #[inline]
    pub fn count(&self, s: NodeState) -> usize {
        self.counts[s.index()]
    }

    pub fn counts(&self) -> [usize; 4] {
        self.counts
    }

    /// Applies a contact between nodes `i` and `j`; returns the states
    /// after the contact.
    #[inline]
    pub fn contact(&mut self, i: usize, j: usize) -> (NodeState, NodeState) {
        let (a, b) = (self.states[i], self.states[j]);
        let (a2, b2) = apply_contact(a, b);
        if (a2, b2) != (a, b) {
            self.counts[a.index()] -= 1;
            self.counts[b.index()] -= 1;
            self.counts[a2.index()] += 1;
            self.counts[b2.index()] += 1;
            self.states[i] = a2;
            self.states[j] = b2;
        }
        (a2, b2)
    }

    /// `count(Zero) - count(One)`; unchanged by every contact.
    pub fn conserved_difference(&self) -> i64 {
        conserved_difference(self)
    }
}

pub fn conserved_difference(c: &Configuration) -> i64 {
    c.count(NodeState::Zero) as i64 - c.count(NodeState::One) as i64
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.states {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// Where the initial `Zero` and `One` nodes go.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Nodes `1..=s0` hold `Zero`, the rest `One`. On a cycle this is a
    /// contiguous block; on a star the hub holds `Zero` when `s0 > 0`.
    Prefix,
    /// Uniformly random placement drawn from the given seed.
    Random(u64),
    /// Explicit per-node states; only `Zero` and `One` are allowed.
    Explicit(Vec<NodeState>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitSpec {
    pub s0: usize,
    pub s1: usize,
    pub placement: Placement,
}

impl InitSpec {
    pub fn new(s0: usize, s1: usize, placement: Placement) -> Self {
        InitSpec { s0, s1, placement }
    }

    pub fn prefix(s0: usize, s1: usize) -> Self {
        Self::new(s0, s1, Placement::Prefix)
    }

    pub fn explicit(states: Vec<NodeState>) -> Self {
        let s0 = states.iter().filter(|&&s| s == NodeState::Zero).count();
        let s1 = states.iter().filter(|&&s| s == NodeState::One).count();
        Self::new(s0, s1, Placement::Explicit(states))
    }

    pub fn n(&self) -> usize {
        self.s0 + self.s1
    }

    /// Initial majority fraction `α = s0 / n`.
    pub fn alpha(&self) -> f64 {
        self.s0 as f64 / self.n() as f64
    }

    pub fn is_draw(&self) -> bool {
        self.s0 == self.s1
    }

    /// Materialises the initial configuration for an `n`-node graph.
    pub fn configuration(&self, n: usize) -> Result<Configuration> {
        if self.s0 + self.s1 != n {
            return Err(Error::InvalidArgument(format!(
                "initial counts s0 = {} and s1 = {} must sum to n = {n}",
                self.s0, self.s1
            )));
        }
        let mut states: Vec<NodeState> = match &self.placement {
            Placement::Explicit(states) => {
                if states.len() != n {
                    return Err(Error::InvalidArgument(format!(
                        "explicit placement has {} states for n = {n}",
                        states.len()
                    )));
                }
                if states.iter().any(|s| matches!(s, NodeState::E0 | NodeState::E1)) {
                    return Err(Error::InvalidArgument(
                        "explicit placement may only contain Zero and One".into(),
                    ));
                }
                states.clone()
            }
            _ => std::iter::repeat_n(NodeState::Zero, self.s0)
                .chain(std::iter::repeat_n(NodeState::One, self.s1))
                .collect(),
        };
        if let Placement::Random(seed) = self.placement {
            states.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        let c = Configuration::new(states);
        if c.count(NodeState::Zero) != self.s0 || c.count(NodeState::One) != self.s1 {
            return Err(Error::InvalidArgument(format!(
                "explicit placement has {} Zero and {} One nodes, expected {} and {}",
                c.count(NodeState::Zero),
                c.count(NodeState::One),
                self.s0,
                self.s1
            )));
        }
        Ok(c)
    }
}

/// Replays the four-node line example: start `(1,0,0,0)` and apply the
/// contacts (1,2), (3,4), (1,2), (2,3), (1,2). Returns the configuration
/// after each contact.
pub fn replay_example_trace() -> Vec<Configuration> {
    use NodeState::*;
    let mut c = Configuration::new(vec![One, Zero, Zero, Zero]);
    [(0, 1), (2, 3), (0, 1), (1, 2), (0, 1)]
        .into_iter()
        .map(|(i, j)| {
            c.contact(i, j);
            c.clone()
        })
        .collect()
}
