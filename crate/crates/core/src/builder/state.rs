use std::fmt;

use crate::oracle::{PrelSet, RelParikhVector};
use crate::substitution::Letter;

/// `(ψ, a, b_{−L} ⋯ b_0 ⋯ b_L)`: the relative Parikh vector of a length-n
/// factor, its first letter, and the length-(2L+1) window centred on the
/// letter that follows it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct STriple {
    pub psi: RelParikhVector,
    pub a: Letter,
    pub window: Box<[Letter]>,
}

/// A canonically ordered, duplicate-free set of triples: one automaton state.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    triples: Vec<STriple>,
}

impl StateSet {
    /// The empty set `S_0`.
    pub fn empty() -> Self {
        StateSet::default()
    }

    pub fn from_triples(mut triples: Vec<STriple>) -> Self {
        triples.sort_unstable();
        triples.dedup();
        StateSet { triples }
    }

    pub fn triples(&self) -> &[STriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Largest `|ψ_ℓ|` over all triples.
    pub fn max_abs_entry(&self) -> u32 {
        self.triples
            .iter()
            .map(|t| t.psi.max_abs())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} triples, P^rel = {}", self.len(), project_prel(self))
    }
}

/// `{ψ : (ψ, a, b) ∈ S}`.
pub fn project_prel(state: &StateSet) -> PrelSet {
    state.triples.iter().map(|t| t.psi.clone()).collect()
}

/// Abelian-complexity and balance outputs per state; index 0 is `S_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputTables {
    pub tau_ac: Vec<u32>,
    pub tau_b: Vec<u32>,
}

/// `τ(j) = #P^rel_j`, `τ_B(j) = max ‖ψ−ψ′‖_∞`. Empty sets (S_0) get the sentinel 0 for both.
pub fn compute_outputs<S: AsRef<StateSet>>(states: &[S]) -> OutputTables {
    let (tau_ac, tau_b) = states
        .iter()
        .map(|s| {
            let prel = project_prel(s.as_ref());
            (prel.len() as u32, prel.balance())
        })
        .unzip();
    OutputTables { tau_ac, tau_b }
}

impl AsRef<StateSet> for StateSet {
    fn as_ref(&self) -> &StateSet {
        self
    }
}
