//! The prover–adversary game that characterises resolution width, played
//! on the colouring formula of a graph.
//!
//! The prover remembers the colours of at most `w` vertices; each round it
//! queries a vertex or forgets one. The adversary keeps a proper colouring
//! of the resolution closure of the remembered vertices (the smallest
//! superset in which every outside vertex has at most one neighbour
//! inside) and answers queries from it. When the closure grows the
//! adversary colours only the new vertices, keeping the old colours fixed.
//! The prover wins when no such extension exists.
//!
//! The width measured here is the number of remembered vertices, not the
//! number of literals in a clause.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rand::seq::IteratorRandom;
use rand::Rng as _;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, ColourSearch, Graph};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Query(usize),
    Forget(usize),
    Pass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prover {
    Random,
    GreedyConflict,
}

impl std::str::FromStr for Prover {
    type Err = Error;

    fn from_str(s: &str) -> Result<Prover> {
        match s {
            "random" => Ok(Prover::Random),
            "greedy" | "greedy-conflict" => Ok(Prover::GreedyConflict),
            other => Err(Error::Parse(format!("unknown prover {other:?}"))),
        }
    }
}

/// A configuration the adversary cannot extend: its colouring of the old
/// closure, the enlarged closure, and a best-effort colouring of it that
/// necessarily has a monochromatic edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stuck {
    pub memory: Vec<usize>,
    pub fixed: BTreeMap<usize, usize>,
    pub closure: Vec<usize>,
    pub witness: BTreeMap<usize, usize>,
}

impl Stuck {
    /// The witness colouring is improper and no proper extension of the
    /// fixed colours to the closure exists.
    pub fn reverify(&self, g: &Graph, k: usize) -> Result<bool> {
        let improper = !graph::is_proper_partial(g, &self.witness);
        let region: BTreeSet<usize> = self.closure.iter().copied().filter(|v| !self.fixed.contains_key(v)).collect();
        let extension = ColourSearch::new(g, k).extend(&region, &self.fixed)?;
        Ok(improper && extension.is_none())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepResult {
    Answered(Option<usize>),
    Stuck(Stuck),
}

#[derive(Clone, Debug)]
pub struct GameState<'a> {
    g: &'a Graph,
    k: usize,
    w: usize,
    memory: BTreeSet<usize>,
    colouring: BTreeMap<usize, usize>,
    round: u64,
}

impl<'a> GameState<'a> {
    pub fn new(g: &'a Graph, k: usize, w: usize) -> Result<GameState<'a>> {
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        Ok(GameState {
            g,
            k,
            w,
            memory: BTreeSet::new(),
            colouring: BTreeMap::new(),
            round: 0,
        })
    }

    pub fn memory(&self) -> &BTreeSet<usize> {
        &self.memory
    }

    /// The adversary's colouring of the resolution closure of the memory.
    pub fn colouring(&self) -> &BTreeMap<usize, usize> {
        &self.colouring
    }

    pub fn round(&self) -> u64 {
        self.round
    }

    /// The adversary's colouring is proper and defined exactly on the
    /// resolution closure of the memory.
    pub fn check_invariants(&self) -> Result<()> {
        let closure = graph::resolution_closure(self.g, &self.memory);
        let domain: BTreeSet<usize> = self.colouring.keys().copied().collect();
        if domain != closure {
            return Err(Error::Invariant("adversary colouring is not defined on the closure".into()));
        }
        if !graph::is_proper_partial(self.g, &self.colouring) || self.colouring.values().any(|&c| c == 0 || c > self.k) {
            return Err(Error::Invariant("adversary colouring is improper".into()));
        }
        if self.memory.len() > self.w {
            return Err(Error::Invariant("memory exceeds the width".into()));
        }
        Ok(())
    }

    /// Applies one prover move and returns the adversary's answer.
    pub fn adversary_step(&mut self, mv: Move) -> Result<StepResult> {
        self.round += 1;
        match mv {
            Move::Pass => Ok(StepResult::Answered(None)),
            Move::Forget(v) => {
                self.memory.remove(&v);
                let closure = graph::resolution_closure(self.g, &self.memory);
                self.colouring.retain(|u, _| closure.contains(u));
                Ok(StepResult::Answered(None))
            }
            Move::Query(v) => {
                if v >= self.g.n() {
                    return Err(Error::domain(format!("vertex {v} outside the graph")));
                }
                if self.memory.contains(&v) {
                    return Ok(StepResult::Answered(self.colouring.get(&v).copied()));
                }
                if self.memory.len() >= self.w {
                    return Err(Error::precondition("memory is full; forget a vertex before querying"));
                }
                let mut memory = self.memory.clone();
                memory.insert(v);
                let closure = graph::resolution_closure(self.g, &memory);
                let region: BTreeSet<usize> =
                    closure.iter().copied().filter(|u| !self.colouring.contains_key(u)).collect();
                match ColourSearch::new(self.g, self.k).extend(&region, &self.colouring)? {
                    Some(ext) => {
                        self.memory = memory;
                        self.colouring = ext;
                        Ok(StepResult::Answered(self.colouring.get(&v).copied()))
                    }
                    None => Ok(StepResult::Stuck(Stuck {
                        memory: memory.into_iter().collect(),
                        fixed: self.colouring.clone(),
                        closure: closure.iter().copied().collect(),
                        witness: self.best_effort(&region),
                    })),
                }
            }
        }
    }

    /// First-fit colouring of `region` on top of the current colouring,
    /// taking the colour with fewest conflicts when none is free.
    fn best_effort(&self, region: &BTreeSet<usize>) -> BTreeMap<usize, usize> {
        let mut col = self.colouring.clone();
        for &v in region {
            let conflicts = |c: usize| self.g.neighbours(v).iter().filter(|u| col.get(u) == Some(&c)).count();
            let c = (1..=self.k).min_by_key(|&c| (conflicts(c), c)).expect("k ≥ 1");
            col.insert(v, c);
        }
        col
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Outcome {
    AdversarySurvived { rounds: u64, max_closure: usize },
    ProverWon { round: u64, stuck: Stuck },
}

impl Outcome {
    pub fn prover_won(&self) -> bool {
        matches!(self, Outcome::ProverWon { .. })
    }
}

#[derive(Serialize)]
struct TranscriptLine {
    round: u64,
    #[serde(rename = "move")]
    mv: Move,
    response: Option<usize>,
    closure_size: usize,
}

fn choose_move(state: &GameState, prover: Prover, rng: &mut rng::Rng) -> Move {
    let g = state.g;
    let n = g.n();
    let mem = &state.memory;
    if state.w == 0 || n == 0 {
        return Move::Pass;
    }
    let full = mem.len() >= state.w;
    match prover {
        Prover::Random => {
            let query = !full && (mem.is_empty() || n == mem.len() || rng.gen_bool(0.6));
            if query && mem.len() < n {
                let v = (0..n).filter(|v| !mem.contains(v)).choose(rng).expect("a vertex outside memory");
                Move::Query(v)
            } else {
                Move::Forget(*mem.iter().choose(rng).expect("memory is not empty"))
            }
        }
        Prover::GreedyConflict => {
            let known = |v: usize| g.neighbours(v).iter().filter(|u| mem.contains(u)).count();
            if !full && mem.len() < n {
                let v = (0..n)
                    .filter(|v| !mem.contains(v))
                    .max_by_key(|&v| (known(v), std::cmp::Reverse(v)))
                    .expect("a vertex outside memory");
                Move::Query(v)
            } else {
                let v = mem
                    .iter()
                    .copied()
                    .min_by_key(|&v| (known(v), v))
                    .expect("memory is not empty");
                Move::Forget(v)
            }
        }
    }
}

/// Plays `rounds` rounds between `prover` and the closure adversary.
/// Invariants are checked after every round; with a transcript sink, one
/// JSON line is written per round.
pub fn play(
    g: &Graph,
    k: usize,
    w: usize,
    prover: Prover,
    rounds: u64,
    seed: u64,
    mut transcript: Option<&mut dyn Write>,
) -> Result<Outcome> {
    let mut state = GameState::new(g, k, w)?;
    let mut rng = rng::from_seed(seed);
    let mut max_closure = 0;
    for _ in 0..rounds {
        let mv = choose_move(&state, prover, &mut rng);
        let result = state.adversary_step(mv)?;
        let response = match result {
            StepResult::Answered(c) => c,
            StepResult::Stuck(stuck) => {
                if let Some(out) = transcript.as_deref_mut() {
                    let line = TranscriptLine {
                        round: state.round,
                        mv,
                        response: None,
                        closure_size: stuck.closure.len(),
                    };
                    writeln!(out, "{}", serde_json::to_string(&line)?)?;
                }
                return Ok(Outcome::ProverWon {
                    round: state.round,
                    stuck,
                });
            }
        };
        state.check_invariants()?;
        max_closure = max_closure.max(state.colouring.len());
        if let Some(out) = transcript.as_deref_mut() {
            let line = TranscriptLine {
                round: state.round,
                mv,
                response,
                closure_size: state.colouring.len(),
            };
            writeln!(out, "{}", serde_json::to_string(&line)?)?;
        }
    }
    Ok(Outcome::AdversarySurvived { rounds, max_closure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_with_four_colours_never_loses() {
        for prover in [Prover::Random, Prover::GreedyConflict] {
            let out = play(&Graph::cycle(3), 4, 3, prover, 500, 1, None).unwrap();
            assert!(!out.prover_won());
        }
    }

    #[test]
    fn complete_graph_beats_the_adversary() {
        let g = Graph::complete(5);
        let out = play(&g, 4, 5, Prover::GreedyConflict, 100, 0, None).unwrap();
        let Outcome::ProverWon { round, stuck } = out else { panic!("adversary survived") };
        assert!(round <= 5);
        assert!(stuck.reverify(&g, 4).unwrap());

        let k4 = Graph::complete(4);
        let out = play(&k4, 3, 4, Prover::GreedyConflict, 100, 0, None).unwrap();
        let Outcome::ProverWon { round, stuck } = out else { panic!("adversary survived") };
        assert!(round <= 4);
        assert!(stuck.reverify(&k4, 3).unwrap());
    }

    #[test]
    fn zero_width_is_trivial() {
        let out = play(&Graph::complete(5), 2, 0, Prover::Random, 50, 3, None).unwrap();
        assert_eq!(out, Outcome::AdversarySurvived { rounds: 50, max_closure: 0 });
    }

    #[test]
    fn forgetting_shrinks_the_closure() {
        let g = Graph::petersen();
        let mut st = GameState::new(&g, 4, 4).unwrap();
        for v in [0, 2, 5] {
            st.adversary_step(Move::Query(v)).unwrap();
        }
        let before: BTreeSet<usize> = st.colouring().keys().copied().collect();
        st.adversary_step(Move::Forget(2)).unwrap();
        let after: BTreeSet<usize> = st.colouring().keys().copied().collect();
        assert!(after.is_subset(&before));
        st.check_invariants().unwrap();
    }

    #[test]
    fn transcript_has_one_line_per_round() {
        let mut buf = Vec::new();
        play(&Graph::cycle(6), 3, 2, Prover::Random, 20, 9, Some(&mut buf)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 20);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        for key in ["round", "move", "response", "closure_size"] {
            assert!(first.get(key).is_some());
        }
    }

    #[test]
    fn same_seed_same_game() {
        let g = graph::sample_gnp(60, 0.05, 4).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        play(&g, 4, 3, Prover::Random, 200, 11, Some(&mut a)).unwrap();
        play(&g, 4, 3, Prover::Random, 200, 11, Some(&mut b)).unwrap();
        assert_eq!(a, b);
    }
}
