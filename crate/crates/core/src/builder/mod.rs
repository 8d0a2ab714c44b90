//! Construction of the automaton's state space from a balanced Parry
//! substitution: the window constants, the base sets `S(1)…S(α₀)`, the
//! digit transition on state sets, and the fixpoint enumeration.

mod base;
mod constants;
mod fixpoint;
mod state;
mod transform;

pub use base::{base_state_set, state_set_from_prefix};
pub use constants::{check_growth, compute_h, compute_l, ConstantsBundle};
pub use fixpoint::{fixpoint_enumerate, fixpoint_from_bases, FixpointResult};
pub use state::{compute_outputs, project_prel, OutputTables, STriple, StateSet};
pub use transform::{step_transform, Transformer};
