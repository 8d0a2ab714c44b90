//! Deterministic finite automaton with output reading greedy U-representations
//! most significant digit first. One transition table serves two output
//! functions: abelian complexity and the balance function.

mod export;
mod minimize;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::builder::{ConstantsBundle, FixpointResult, OutputTables};
use crate::error::{Error, Result};
use crate::numeration::{greedy_urep, NormalURep};
use crate::substitution::{ParrySubstitution, USequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    /// Abelian complexity `AC(n)`.
    Ac,
    /// Balance function `B(n)`.
    Balance,
}

impl OutputKind {
    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Ac => "ac",
            OutputKind::Balance => "balance",
        }
    }
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ac" => Ok(OutputKind::Ac),
            "balance" | "b" => Ok(OutputKind::Balance),
            other => Err(Error::Syntax(format!("unknown output {other:?}"))),
        }
    }
}

/// Provenance recorded alongside the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaoMeta {
    pub c: u32,
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "L")]
    pub l: usize,
    /// `M`: states other than the initial state and the sink.
    pub states: usize,
    pub sink: Option<usize>,
    /// Seconds since the Unix epoch; 0 in reproducible builds.
    pub built_at: u64,
    pub minimized: bool,
    /// Output functions this automaton still carries.
    pub outputs: Vec<OutputKind>,
}

impl DfaoMeta {
    pub fn new(consts: &ConstantsBundle, built_at: u64) -> Self {
        DfaoMeta {
            c: consts.c,
            h: consts.h,
            l: consts.l,
            states: 0,
            sink: None,
            built_at,
            minimized: false,
            outputs: vec![OutputKind::Ac, OutputKind::Balance],
        }
    }
}

/// `(Q, Σ, δ, q₀ = 0, Δ, τ)` with two output tables sharing `δ`.
///
/// States whose `tau_ac` is 0 (the initial state and the sink) carry no value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    pub(crate) substitution: ParrySubstitution,
    pub(crate) alphabet_max_digit: u32,
    pub(crate) delta: Vec<Vec<usize>>,
    pub(crate) tau_ac: Vec<u32>,
    pub(crate) tau_b: Vec<u32>,
    pub(crate) meta: DfaoMeta,
}

impl Dfao {
    /// Packages a fixpoint result with its output tables (one entry per
    /// non-sink state). The sink, if any, receives sentinel outputs.
    pub fn assemble(
        sub: &ParrySubstitution,
        fix: &FixpointResult,
        outputs: OutputTables,
        mut meta: DfaoMeta,
    ) -> Result<Self> {
        let OutputTables {
            mut tau_ac,
            mut tau_b,
        } = outputs;
        if tau_ac.len() != fix.states.len() || tau_b.len() != fix.states.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} states but output tables of length {} and {}",
                fix.states.len(),
                tau_ac.len(),
                tau_b.len()
            )));
        }
        if let Some(sink) = fix.sink {
            if sink != tau_ac.len() {
                return Err(Error::ShapeMismatch(format!(
                    "sink index {sink} is not last"
                )));
            }
            tau_ac.push(0);
            tau_b.push(0);
        }
        meta.states = fix.state_count();
        meta.sink = fix.sink;
        Dfao::from_parts(
            sub.clone(),
            sub.alpha0(),
            fix.delta.clone(),
            tau_ac,
            tau_b,
            meta,
        )
    }

    /// Checks table shapes and transition targets.
    pub fn from_parts(
        substitution: ParrySubstitution,
        alphabet_max_digit: u32,
        delta: Vec<Vec<usize>>,
        tau_ac: Vec<u32>,
        tau_b: Vec<u32>,
        meta: DfaoMeta,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("no states".into()));
        }
        if tau_ac.len() != n || tau_b.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{n} transition rows but output tables of length {} and {}",
                tau_ac.len(),
                tau_b.len()
            )));
        }
        let width = alphabet_max_digit as usize + 1;
        for (q, row) in delta.iter().enumerate() {
            if row.len() != width {
                return Err(Error::ShapeMismatch(format!(
                    "state {q} has {} transitions, expected {width}",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::ShapeMismatch(format!(
                    "state {q} points to missing state {t}"
                )));
            }
        }
        if let Some(s) = meta.sink {
            if s >= n {
                return Err(Error::ShapeMismatch(format!("sink {s} out of range")));
            }
        }
        Ok(Dfao {
            substitution,
            alphabet_max_digit,
            delta,
            tau_ac,
            tau_b,
            meta,
        })
    }

    pub fn substitution(&self) -> &ParrySubstitution {
        &self.substitution
    }

    pub fn meta(&self) -> &DfaoMeta {
        &self.meta
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet_max_digit(&self) -> u32 {
        self.alphabet_max_digit
    }

    pub fn transition(&self, state: usize, digit: u32) -> usize {
        self.delta[state][digit as usize]
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn tau_ac(&self) -> &[u32] {
        &self.tau_ac
    }

    pub fn tau_b(&self) -> &[u32] {
        &self.tau_b
    }

    pub fn output(&self, state: usize, which: OutputKind) -> u32 {
        match which {
            OutputKind::Ac => self.tau_ac[state],
            OutputKind::Balance => self.tau_b[state],
        }
    }

    /// Whether the state carries output values (false for the initial state and the sink).
    pub fn is_defined(&self, state: usize) -> bool {
        self.tau_ac[state] != 0
    }

    /// States visited from 0 while reading `digits`; one transition per digit.
    pub fn trace(&self, digits: &[u32]) -> Result<Vec<usize>> {
        let mut path = Vec::with_capacity(digits.len() + 1);
        let mut q = 0;
        path.push(q);
        for &d in digits {
            if d > self.alphabet_max_digit {
                return Err(Error::DigitRange {
                    digit: d,
                    max: self.alphabet_max_digit,
                });
            }
            q = self.delta[q][d as usize];
            path.push(q);
        }
        Ok(path)
    }

    /// `δ(0, digits)`.
    pub fn run(&self, digits: &[u32]) -> Result<usize> {
        let mut q = 0;
        for &d in digits {
            if d > self.alphabet_max_digit {
                return Err(Error::DigitRange {
                    digit: d,
                    max: self.alphabet_max_digit,
                });
            }
            q = self.delta[q][d as usize];
        }
        Ok(q)
    }

    /// `τ(δ(0, digits))` for the selected output.
    pub fn eval_digits(&self, digits: &NormalURep, which: OutputKind) -> Result<u32> {
        if !self.meta.outputs.contains(&which) {
            return Err(Error::OutputUnavailable(which.name()));
        }
        if digits.is_empty() {
            return Err(Error::EmptyInput);
        }
        let q = self.run(digits.digits())?;
        if !self.is_defined(q) {
            return Err(Error::UndefinedOutput { state: q });
        }
        Ok(self.output(q, which))
    }

    /// Evaluates at `n ≥ 1` through its greedy representation.
    pub fn eval_n(&self, useq: &USequence, n: &BigUint, which: OutputKind) -> Result<u32> {
        self.eval_digits(&greedy_urep(useq, n), which)
    }

    pub fn eval_u64(&self, useq: &USequence, n: u64, which: OutputKind) -> Result<u32> {
        self.eval_digits(&crate::numeration::greedy_urep_u64(useq, n), which)
    }
}
