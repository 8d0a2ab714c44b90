//! End-to-end construction: validation, balance estimate, constants,
//! fixpoint enumeration, output tables and assembly.

use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::builder::{compute_outputs, fixpoint_enumerate, ConstantsBundle};
use crate::dfao::{Dfao, DfaoMeta};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::oracle::{estimate_c, CEstimate, EstimateStatus, DEFAULT_ESTIMATE_CAP};
use crate::substitution::ParrySubstitution;

#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Balance bound to use; estimated from a prefix scan when absent.
    pub c: Option<u32>,
    /// Added to the estimated or given `c`.
    pub c_margin: u32,
    pub minimize: bool,
    /// Zeroes the timestamp so identical inputs give byte-identical output.
    pub reproducible: bool,
    pub limits: Limits,
    pub estimate_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            c: None,
            c_margin: 0,
            minimize: false,
            reproducible: false,
            limits: Limits::default(),
            estimate_cap: DEFAULT_ESTIMATE_CAP,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BuildReport {
    /// Present when `c` was estimated rather than supplied.
    pub estimate: Option<CEstimate>,
    pub consts: ConstantsBundle,
    pub mem2_history: Vec<usize>,
    pub iterations: usize,
    pub rejected_sets: usize,
    pub stored_triples: usize,
    /// `M` before minimization.
    pub states: usize,
    pub sink: bool,
    /// Rows of the final transition table.
    pub final_states: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn build(sub: &ParrySubstitution, opts: &BuildOptions) -> Result<(Dfao, BuildReport)> {
    let started = Instant::now();
    sub.validate()?;
    let (base_c, estimate) = match opts.c {
        Some(c) => (c, None),
        None => {
            let est = estimate_c(sub, opts.estimate_cap, &opts.limits)?;
            if est.status == EstimateStatus::StillGrowing {
                return Err(Error::ConstantsTooSmall(format!(
                    "balance estimate still growing (c ≥ {}) after {} letters; the word may not be balanced, pass c explicitly",
                    est.c, est.scanned_len
                )));
            }
            (est.c, Some(est))
        }
    };
    let consts = ConstantsBundle::derive(sub, base_c + opts.c_margin, &opts.limits)?;
    let fix = fixpoint_enumerate(sub, &consts, &opts.limits)?;
    let outputs = compute_outputs(&fix.states);
    let built_at = if opts.reproducible {
        0
    } else {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    };
    let mut dfao = Dfao::assemble(sub, &fix, outputs, DfaoMeta::new(&consts, built_at))?;
    if opts.minimize {
        dfao = dfao.minimize();
    }
    let report = BuildReport {
        estimate,
        consts,
        mem2_history: fix.mem2_history,
        iterations: fix.iterations,
        rejected_sets: fix.rejected_sets,
        stored_triples: fix.stored_triples,
        states: fix.states.len() - 1,
        sink: fix.sink.is_some(),
        final_states: dfao.num_states(),
        elapsed: started.elapsed(),
    };
    Ok((dfao, report))
}
