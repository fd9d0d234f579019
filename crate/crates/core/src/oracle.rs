//! Independent ground truth.
//!
//! [`joint_event_prob`] sums product weights over every outcome tuple, and
//! [`absorbing_solve`] models each protocol toss by toss as a finite Markov
//! chain and solves it by elimination. Neither uses the closed forms in
//! [`crate::exact`].

use alloc::vec;
use alloc::vec::Vec;

use crate::{CoinBias, Distribution, Error, ProtocolKind, Result};

/// Upper bound on the number of tuples [`joint_event_prob`] will visit.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// Events over iid throws `A, B, C, D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventPattern {
    /// `A = B ∧ C = D`
    TwoDoubles,
    /// `A = B = C`
    Triple,
    /// `C = B`
    Match,
    /// `C = B | B ≠ A`
    MatchGivenMismatch,
}

impl EventPattern {
    pub const ALL: [EventPattern; 4] = [
        EventPattern::TwoDoubles,
        EventPattern::Triple,
        EventPattern::Match,
        EventPattern::MatchGivenMismatch,
    ];

    /// Number of iid draws the event is defined over.
    pub fn draws(self) -> usize {
        match self {
            EventPattern::TwoDoubles => 4,
            EventPattern::Triple | EventPattern::MatchGivenMismatch => 3,
            EventPattern::Match => 2,
        }
    }
}

/// Exact probability of `pattern` by visiting all `n^k` tuples.
pub fn joint_event_prob(d: &Distribution, pattern: EventPattern) -> Result<f64> {
    let probs = d.probs();
    let n = probs.len();
    let k = pattern.draws();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_CAP {
        return Err(Error::Capacity(total));
    }

    let mut event = 0.0;
    let mut given = 0.0;
    let mut tuple = vec![0usize; k];
    loop {
        let weight: f64 = tuple.iter().map(|&i| probs[i]).product();
        let t = &tuple;
        match pattern {
            EventPattern::TwoDoubles => {
                if t[0] == t[1] && t[2] == t[3] {
                    event += weight;
                }
            }
            EventPattern::Triple => {
                if t[0] == t[1] && t[1] == t[2] {
                    event += weight;
                }
            }
            EventPattern::Match => {
                if t[1] == t[0] {
                    event += weight;
                }
            }
            EventPattern::MatchGivenMismatch => {
                if t[1] != t[0] {
                    given += weight;
                    if t[2] == t[1] {
                        event += weight;
                    }
                }
            }
        }
        if !advance(&mut tuple, n) {
            break;
        }
    }

    if pattern == EventPattern::MatchGivenMismatch {
        if given <= 0.0 {
            return Err(Error::DegenerateConditioning);
        }
        return Ok(event / given);
    }
    Ok(event)
}

/// Odometer increment; false once every tuple has been produced.
fn advance(tuple: &mut [usize], n: usize) -> bool {
    for digit in tuple.iter_mut().rev() {
        *digit += 1;
        if *digit < n {
            return true;
        }
        *digit = 0;
    }
    false
}

/// Exact outcome of a protocol's absorbing chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSolution {
    pub protocol: ProtocolKind,
    pub p1_win: f64,
    pub p2_win: f64,
    /// Excludes the base-setting toss when `has_initial_toss` is set.
    pub expected_tosses: f64,
    pub has_initial_toss: bool,
    /// Player 1's winning probability conditioned on the base toss being
    /// heads and tails, for protocols that open with a base-setting toss.
    pub p1_given_base: Option<[f64; 2]>,
    pub states: usize,
}

#[derive(Debug, Clone, Copy)]
enum Target {
    State(usize),
    P1,
    P2,
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    prob: f64,
    tosses: f64,
    to: Target,
}

/// Transient states and their outgoing edges; state 0 is the start.
struct Chain {
    edges: Vec<Vec<Edge>>,
    base: Option<[usize; 2]>,
}

impl Chain {
    fn new(states: usize) -> Self {
        Self {
            edges: vec![Vec::new(); states],
            base: None,
        }
    }

    /// One toss from `from`: heads goes to `on_heads`, tails to `on_tails`.
    fn toss(&mut self, from: usize, p: f64, on_heads: Target, on_tails: Target) {
        self.toss_costing(from, p, 1.0, on_heads, on_tails);
    }

    fn toss_costing(&mut self, from: usize, p: f64, cost: f64, on_heads: Target, on_tails: Target) {
        self.edges[from].push(Edge { prob: p, tosses: cost, to: on_heads });
        self.edges[from].push(Edge { prob: 1.0 - p, tosses: cost, to: on_tails });
    }
}

/// Solves `(I − Q) x = r` for the three right-hand sides (player 1
/// absorption, player 2 absorption, expected tosses) at once.
fn solve(chain: &Chain) -> [Vec<f64>; 3] {
    let n = chain.edges.len();
    let width = n + 3;
    let mut m = vec![0.0; n * width];
    for (i, edges) in chain.edges.iter().enumerate() {
        let row = &mut m[i * width..(i + 1) * width];
        row[i] += 1.0;
        for e in edges {
            row[n + 2] += e.prob * e.tosses;
            match e.to {
                Target::State(j) => row[j] -= e.prob,
                Target::P1 => row[n] += e.prob,
                Target::P2 => row[n + 1] += e.prob,
            }
        }
    }

    // I − Q is diagonally dominant here, so no pivoting.
    for col in 0..n {
        let pivot = m[col * width + col];
        for c in col..width {
            m[col * width + c] /= pivot;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = m[r * width + col];
            if factor == 0.0 {
                continue;
            }
            for c in col..width {
                m[r * width + c] -= factor * m[col * width + c];
            }
        }
    }

    let column = |c: usize| (0..n).map(|r| m[r * width + n + c]).collect::<Vec<_>>();
    [column(0), column(1), column(2)]
}

const H: bool = true;
const T: bool = false;

fn side(heads: bool) -> usize {
    usize::from(!heads)
}

fn build(protocol: ProtocolKind, p: f64) -> Chain {
    use Target::{State, P1, P2};
    match protocol {
        ProtocolKind::VonNeumann => {
            // 0: start of pair, 1/2: first toss H/T
            let mut c = Chain::new(3);
            c.toss(0, p, State(1), State(2));
            c.toss(1, p, State(0), P1);
            c.toss(2, p, P2, State(0));
            c
        }
        ProtocolKind::SingleSound => {
            // 0: start, 1/2: base H/T
            let mut c = Chain::new(3);
            c.toss(0, p, State(1), State(2));
            c.toss(1, p, P1, P2);
            c.toss(2, p, P2, P1);
            c.base = Some([1, 2]);
            c
        }
        ProtocolKind::SoundVonNeumann => {
            // 0: start, 1 + side(b): turn start with base b,
            // 3 + 2·side(x) + clap: first toss x done, first sound clap?
            let mut c = Chain::new(7);
            c.toss_costing(0, p, 0.0, State(1), State(2));
            let mid = |x: bool, clap: bool| State(3 + 2 * side(x) + usize::from(clap));
            for base in [H, T] {
                c.toss(1 + side(base), p, mid(H, base == H), mid(T, base == T));
            }
            for x in [H, T] {
                for clap in [true, false] {
                    let from = 3 + 2 * side(x) + usize::from(clap);
                    let after = |y: bool| {
                        let second_clap = y == x;
                        match (clap, second_clap) {
                            (true, false) => P1,
                            (false, true) => P2,
                            _ => State(1 + side(y)),
                        }
                    };
                    c.toss(from, p, after(H), after(T));
                }
            }
            c.base = Some([1, 2]);
            c
        }
        ProtocolKind::FourTossNaive => {
            // 0: group start, 1 + side(t1), 3 + clap(X),
            // 5 + 2·clap(X) + side(t3)
            let mut c = Chain::new(9);
            c.toss(0, p, State(1), State(2));
            for t1 in [H, T] {
                let x = |t2: bool| State(3 + usize::from(t2 == t1));
                c.toss(1 + side(t1), p, x(H), x(T));
            }
            for x_clap in [false, true] {
                let third = |t3: bool| State(5 + 2 * usize::from(x_clap) + side(t3));
                c.toss(3 + usize::from(x_clap), p, third(H), third(T));
            }
            for x_clap in [false, true] {
                for t3 in [H, T] {
                    let from = 5 + 2 * usize::from(x_clap) + side(t3);
                    let fourth = |t4: bool| match (x_clap, t4 == t3) {
                        (true, false) => P1,
                        (false, true) => P2,
                        _ => State(0),
                    };
                    c.toss(from, p, fourth(H), fourth(T));
                }
            }
            c
        }
        ProtocolKind::Blind => {
            // 0: turn start, 1 + side(a), 3 + side(b) armed after B ≠ A
            let mut c = Chain::new(5);
            c.toss(0, p, State(1), State(2));
            c.toss(1, p, State(0), State(4));
            c.toss(2, p, State(3), State(0));
            c.toss(3, p, P2, P1);
            c.toss(4, p, P1, P2);
            c
        }
        ProtocolKind::FirstWhistle => {
            // 0: start, 1 + side(base), 3 + side(t) armed after a whistle
            let mut c = Chain::new(5);
            c.toss(0, p, State(1), State(2));
            c.toss(1, p, State(1), State(4));
            c.toss(2, p, State(3), State(2));
            c.toss(3, p, P2, P1);
            c.toss(4, p, P1, P2);
            c.base = Some([1, 2]);
            c
        }
    }
}

/// Solves the protocol's toss-level absorbing chain exactly.
pub fn absorbing_solve(protocol: ProtocolKind, b: CoinBias) -> Result<ChainSolution> {
    if b.is_degenerate() && protocol != ProtocolKind::SingleSound {
        return Err(Error::NonTermination { protocol, p: b.p() });
    }
    let chain = build(protocol, b.p());
    let [p1, p2, tosses] = solve(&chain);
    Ok(ChainSolution {
        protocol,
        p1_win: p1[0],
        p2_win: p2[0],
        expected_tosses: tosses[0],
        has_initial_toss: protocol.has_initial_toss(),
        p1_given_base: chain.base.map(|[h, t]| [p1[h], p1[t]]),
        states: chain.edges.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coin(p: f64) -> CoinBias {
        CoinBias::new(p).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let d = Distribution::new(vec![0.8, 0.1, 0.1]).unwrap();
        assert!((joint_event_prob(&d, EventPattern::Match).unwrap() - 0.66).abs() < 1e-12);
        let six = Distribution::uniform(6).unwrap();
        assert!((joint_event_prob(&six, EventPattern::Triple).unwrap() - 1.0 / 36.0).abs() < 1e-12);
        let fair = Distribution::uniform(2).unwrap();
        assert!(
            (joint_event_prob(&fair, EventPattern::MatchGivenMismatch).unwrap() - 0.5).abs() < 1e-12
        );
    }

    #[test]
    fn enumeration_errors() {
        let d = Distribution::point_mass(3, 0).unwrap();
        assert_eq!(
            joint_event_prob(&d, EventPattern::MatchGivenMismatch),
            Err(Error::DegenerateConditioning)
        );
        let big = Distribution::uniform(100).unwrap();
        assert_eq!(
            joint_event_prob(&big, EventPattern::TwoDoubles),
            Err(Error::Capacity(100_000_000))
        );
        // 100^3 is within the cap
        assert!(joint_event_prob(&big, EventPattern::Triple).is_ok());
    }

    #[test]
    fn sound_von_neumann_base_conditionals() {
        for p in [0.1, 0.37, 0.5, 0.9] {
            let s = absorbing_solve(ProtocolKind::SoundVonNeumann, coin(p)).unwrap();
            let [heads, tails] = s.p1_given_base.unwrap();
            assert!((heads - p).abs() < 1e-12);
            assert!((tails - (1.0 - p)).abs() < 1e-12);
            assert!(s.has_initial_toss);
        }
    }

    #[test]
    fn chain_examples() {
        let vn = absorbing_solve(ProtocolKind::VonNeumann, coin(0.25)).unwrap();
        assert!((vn.expected_tosses - 16.0 / 3.0).abs() < 1e-12);
        for i in 1..20 {
            let s = absorbing_solve(ProtocolKind::Blind, coin(i as f64 / 20.0)).unwrap();
            assert!((s.p1_win - 0.5).abs() < 1e-12);
        }
        let single = absorbing_solve(ProtocolKind::SingleSound, coin(1.0)).unwrap();
        assert_eq!(single.p1_win, 1.0);
        assert_eq!(single.expected_tosses, 2.0);
        assert!(matches!(
            absorbing_solve(ProtocolKind::Blind, coin(0.0)),
            Err(Error::NonTermination { .. })
        ));
    }

    #[test]
    fn absorption_is_complete() {
        for kind in ProtocolKind::ALL {
            for i in 1..50 {
                let s = absorbing_solve(kind, coin(i as f64 / 50.0)).unwrap();
                assert!((s.p1_win + s.p2_win - 1.0).abs() < 1e-12, "{kind} {i}");
                assert!(s.states <= 9);
            }
        }
    }
}
