//! Enumeration of all reachable state sets with the Mem₁/Mem₂ stop criterion.
//!
//! * Mem₁ starts with `S(1), …, S(α₀)`; Mem₂ with the pairs `(S(n), d)` for
//!   those `n` and every digit `d`.
//! * Each round transforms every set added to Mem₁ in the previous round by
//!   every digit, without checking that the extended digit string is a valid
//!   representation. Each result `S(N)` enters Mem₂ as `(S(N), d)` and enters
//!   Mem₁ only if all its ψ entries are bounded by `c` in absolute value.
//! * The loop stops on the first round in which Mem₂ does not grow.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::base::base_state_set;
use super::constants::ConstantsBundle;
use super::state::StateSet;
use super::transform::Transformer;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::substitution::ParrySubstitution;

/// States, transitions and the bookkeeping of the enumeration.
#[derive(Debug, Clone)]
pub struct FixpointResult {
    /// `S_0 = ∅`, then `S_1 … S_M`; `states[d] = S(d)` for `d = 1..=α₀`.
    pub states: Vec<Arc<StateSet>>,
    /// `delta[j][d]`, total over every state including the sink.
    pub delta: Vec<Vec<usize>>,
    /// Index of the sink state (`states.len()`), present when some transition
    /// produced a set that failed the c-bound.
    pub sink: Option<usize>,
    pub mem2_size: usize,
    /// `|Mem₂|` after initialization and after every round.
    pub mem2_history: Vec<usize>,
    /// Rounds of step 2 executed, including the final one without growth.
    pub iterations: usize,
    /// Distinct transformed sets rejected by the c-bound.
    pub rejected_sets: usize,
    /// Triples held by all distinct sets, admitted or not.
    pub stored_triples: usize,
}

impl FixpointResult {
    /// `M`, the number of non-empty states.
    pub fn state_count(&self) -> usize {
        self.states.len() - 1
    }

    /// Number of rows of `delta`.
    pub fn total_states(&self) -> usize {
        self.delta.len()
    }
}

const PENDING: usize = usize::MAX;

/// Runs the enumeration from freshly scanned base sets.
pub fn fixpoint_enumerate(
    sub: &ParrySubstitution,
    consts: &ConstantsBundle,
    limits: &Limits,
) -> Result<FixpointResult> {
    let a0 = sub.alpha0() as usize;
    let bases = (1..=a0)
        .into_par_iter()
        .map(|n| base_state_set(sub, consts, n, limits))
        .collect::<Result<Vec<_>>>()?;
    fixpoint_from_bases(sub, consts, bases, limits)
}

/// Runs the enumeration from the given `S(1), …, S(α₀)`.
pub fn fixpoint_from_bases(
    sub: &ParrySubstitution,
    consts: &ConstantsBundle,
    bases: Vec<StateSet>,
    limits: &Limits,
) -> Result<FixpointResult> {
    let a0 = sub.alpha0();
    assert_eq!(bases.len(), a0 as usize, "one base set per nonzero digit");
    let digits = a0 as usize + 1;
    let transformer = Transformer::new(sub, *consts);

    // every distinct set seen so far, admitted or not
    let mut ids: HashMap<Arc<StateSet>, usize> = HashMap::new();
    // set id → state index, for admitted sets
    let mut state_of: Vec<Option<usize>> = Vec::new();
    let mut states: Vec<Arc<StateSet>> = vec![Arc::new(StateSet::empty())];
    let mut delta: Vec<Vec<usize>> = vec![vec![PENDING; digits]];
    let mut mem2: HashSet<(usize, u32)> = HashSet::new();

    let mut stored = 0usize;
    let mut frontier = Vec::new();
    for base in bases {
        let set = Arc::new(base);
        let idx = states.len();
        let id = *ids.entry(set.clone()).or_insert_with(|| {
            stored += set.len();
            state_of.push(Some(idx));
            state_of.len() - 1
        });
        states.push(set);
        delta.push(vec![PENDING; digits]);
        for d in 0..=a0 {
            mem2.insert((id, d));
        }
        frontier.push(idx);
    }
    let mut history = vec![mem2.len()];
    let mut iterations = 0;
    let mut rejected = 0;

    loop {
        iterations += 1;
        let before = mem2.len();
        let rows = frontier
            .par_iter()
            .map(|&j| {
                (0..=a0)
                    .map(|d| transformer.step(&states[j], d))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let mut next = Vec::new();
        for (&j, row) in frontier.iter().zip(rows) {
            for (d, set) in row.into_iter().enumerate() {
                let set = Arc::new(set);
                let id = match ids.get(&set) {
                    Some(&id) => id,
                    None => {
                        let id = state_of.len();
                        stored += set.len();
                        if set.max_abs_entry() <= consts.c {
                            let idx = states.len();
                            states.push(set.clone());
                            delta.push(vec![PENDING; digits]);
                            state_of.push(Some(idx));
                            next.push(idx);
                        } else {
                            state_of.push(None);
                            rejected += 1;
                        }
                        ids.insert(set, id);
                        id
                    }
                };
                mem2.insert((id, d as u32));
                delta[j][d] = state_of[id].unwrap_or(PENDING);
            }
        }
        if states.len() > limits.max_states {
            return Err(Error::ResourceLimit {
                what: "automaton states",
                needed: states.len().to_string(),
                limit: limits.max_states,
            });
        }
        if stored > limits.max_triples {
            return Err(Error::ResourceLimit {
                what: "stored triples",
                needed: stored.to_string(),
                limit: limits.max_triples,
            });
        }
        history.push(mem2.len());
        if mem2.len() == before {
            break;
        }
        frontier = next;
    }

    delta[0][0] = 0;
    for (d, t) in delta[0].iter_mut().enumerate().skip(1) {
        *t = d;
    }
    let needs_sink = delta.iter().any(|row| row.contains(&PENDING));
    let sink = needs_sink.then(|| {
        let s = delta.len();
        for row in delta.iter_mut() {
            for t in row.iter_mut() {
                if *t == PENDING {
                    *t = s;
                }
            }
        }
        delta.push(vec![s; digits]);
        s
    });

    Ok(FixpointResult {
        states,
        delta,
        sink,
        mem2_size: mem2.len(),
        mem2_history: history,
        iterations,
        rejected_sets: rejected,
        stored_triples: stored,
    })
}
