//! Brute-force ground truth: sliding windows over a long prefix of the fixed
//! point, collecting relative Parikh vectors per window length.
//!
//! Scans stop by a stabilization rule: the scanned prefix is doubled until the
//! result is unchanged across two consecutive doublings. This is a heuristic;
//! there is no constructive bound on how long a prefix must be.

use std::borrow::Borrow;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
#[cfg(test)]
use crate::substitution::Word;
use crate::substitution::{Letter, ParrySubstitution};

/// Letter counts `(|w|_0, …, |w|_{A−1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector {
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        ParikhVector { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `|w|`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `self − other` as a relative vector.
    pub fn relative_to(&self, other: &ParikhVector) -> RelParikhVector {
        RelParikhVector::from_components(
            self.counts
                .iter()
                .zip(&other.counts)
                .map(|(&a, &b)| (a as i64 - b as i64) as i32)
                .collect(),
        )
    }
}

/// `Ψ(w) − Ψ(u_0 ⋯ u_{|w|−1})`. Components sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelParikhVector(Box<[i32]>);

impl RelParikhVector {
    pub fn from_components(components: Vec<i32>) -> Self {
        RelParikhVector(components.into_boxed_slice())
    }

    pub fn components(&self) -> &[i32] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> u32 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// `‖self − other‖_∞`.
    pub fn linf_distance(&self, other: &RelParikhVector) -> u32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (*a as i64 - *b as i64).unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
    }
}

impl Borrow<[i32]> for RelParikhVector {
    fn borrow(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Display for RelParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The set of relative Parikh vectors of all factors of one length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrelSet {
    vectors: BTreeSet<RelParikhVector>,
}

impl PrelSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, v: RelParikhVector) -> bool {
        self.vectors.insert(v)
    }

    pub fn contains(&self, v: &RelParikhVector) -> bool {
        self.vectors.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &RelParikhVector> {
        self.vectors.iter()
    }

    /// Cardinality; for a true `P^rel(n)` this is the abelian complexity.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `max ‖ψ − ψ′‖_∞` over pairs; 0 for sets with fewer than two vectors.
    pub fn balance(&self) -> u32 {
        let v: Vec<&RelParikhVector> = self.vectors.iter().collect();
        let mut best = 0;
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                best = best.max(a.linf_distance(b));
            }
        }
        best
    }
}

impl FromIterator<RelParikhVector> for PrelSet {
    fn from_iter<I: IntoIterator<Item = RelParikhVector>>(iter: I) -> Self {
        PrelSet {
            vectors: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for PrelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

pub fn parikh(w: &[Letter], alphabet_size: usize) -> ParikhVector {
    let mut counts = vec![0u64; alphabet_size];
    for &l in w {
        counts[l as usize] += 1;
    }
    ParikhVector { counts }
}

/// Relative Parikh vector of `w` against the fixed-point prefix of the same length.
/// Whether `w` actually occurs in the fixed point is not checked.
pub fn rel_parikh(
    sub: &ParrySubstitution,
    w: &[Letter],
    limits: &Limits,
) -> Result<RelParikhVector> {
    let a = sub.alphabet_size();
    let prefix = sub.fixed_point_prefix(w.len(), limits)?;
    Ok(parikh(w, a).relative_to(&parikh(&prefix, a)))
}

/// Windows of length `n` starting at `start..` that fit inside `u`.
fn collect_windows(
    u: &[Letter],
    a: usize,
    n: usize,
    start: usize,
    end: usize,
    out: &mut HashSet<RelParikhVector>,
) {
    if n == 0 || n > u.len() {
        return;
    }
    let last_start = u.len() - n;
    let end = end.min(last_start + 1);
    if start >= end {
        return;
    }
    let mut base = vec![0i32; a];
    for &l in &u[..n] {
        base[l as usize] += 1;
    }
    let mut window = vec![0i32; a];
    for &l in &u[start..start + n] {
        window[l as usize] += 1;
    }
    let mut rel = vec![0i32; a];
    for j in start..end {
        if j > start {
            window[u[j - 1] as usize] -= 1;
            window[u[j + n - 1] as usize] += 1;
        }
        for k in 0..a {
            rel[k] = window[k] - base[k];
        }
        if !out.contains(rel.as_slice()) {
            out.insert(RelParikhVector::from_components(rel.clone()));
        }
    }
}

/// `{Ψ^rel(w) : w a length-n window of the first scan_len letters}`, with no stabilization.
pub fn prel_set(
    sub: &ParrySubstitution,
    n: usize,
    scan_len: usize,
    limits: &Limits,
) -> Result<PrelSet> {
    if scan_len < n {
        return Err(Error::Range(format!(
            "scan length {scan_len} shorter than n = {n}"
        )));
    }
    let u = sub.fixed_point_prefix(scan_len, limits)?;
    let mut set = HashSet::new();
    collect_windows(&u, sub.alphabet_size(), n, 0, usize::MAX, &mut set);
    Ok(set.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EstimateStatus {
    /// Unchanged across two consecutive doublings of the scanned prefix.
    Stable,
    /// Still changing when the length cap was reached.
    StillGrowing,
}

/// Empirical bound on relative Parikh vector components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CEstimate {
    pub c: u32,
    pub status: EstimateStatus,
    /// Length of the last prefix scanned.
    pub scanned_len: usize,
}

/// Default prefix cap for [`estimate_c`]; the scan is quadratic in the prefix length.
pub const DEFAULT_ESTIMATE_CAP: usize = 1 << 14;

const INITIAL_SCAN: usize = 256;

/// Largest `|Ψ^rel(w)_ℓ|` over every factor `w` of a prefix of length `len`
/// with `|w| ≤ len/2`.
fn max_rel_component(u: &[Letter], a: usize) -> u32 {
    let len = u.len();
    // prefix counts, row i = Ψ(u_0 ⋯ u_{i−1})
    let mut pc = vec![0i32; (len + 1) * a];
    for (i, &l) in u.iter().enumerate() {
        let (prev, next) = pc.split_at_mut((i + 1) * a);
        next[..a].copy_from_slice(&prev[i * a..]);
        next[l as usize] += 1;
    }
    (1..=len / 2)
        .into_par_iter()
        .map(|n| {
            let mut best = 0u32;
            for j in 0..=len - n {
                for k in 0..a {
                    let d = pc[(j + n) * a + k] - pc[j * a + k] - pc[n * a + k];
                    best = best.max(d.unsigned_abs());
                }
            }
            best
        })
        .max()
        .unwrap_or(0)
}

/// Empirical balance bound: doubles the scanned prefix until the maximal
/// relative-vector component is unchanged across two doublings.
pub fn estimate_c(sub: &ParrySubstitution, cap_len: usize, limits: &Limits) -> Result<CEstimate> {
    let a = sub.alphabet_size();
    let cap = cap_len.min(limits.max_prefix_len);
    let mut len = INITIAL_SCAN.min(cap).max(2);
    let u_full = sub.fixed_point_prefix(cap.max(len), limits)?;
    let mut history = vec![max_rel_component(&u_full[..len], a)];
    loop {
        let h = history.len();
        if h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3] {
            return Ok(CEstimate {
                c: history[h - 1],
                status: EstimateStatus::Stable,
                scanned_len: len,
            });
        }
        if len * 2 > cap {
            return Ok(CEstimate {
                c: *history.last().unwrap(),
                status: EstimateStatus::StillGrowing,
                scanned_len: len,
            });
        }
        len *= 2;
        history.push(max_rel_component(&u_full[..len], a));
    }
}

/// Stabilizing oracle over a shared, lazily grown fixed-point prefix.
#[derive(Debug, Clone)]
pub struct Oracle {
    sub: ParrySubstitution,
    limits: Limits,
    start: usize,
}

impl Oracle {
    pub fn new(sub: &ParrySubstitution, limits: Limits) -> Self {
        Oracle {
            sub: sub.clone(),
            limits,
            start: 0,
        }
    }

    /// Only windows starting at index `start` or later are scanned.
    pub fn starting_at(mut self, start: usize) -> Self {
        self.start = start;
        self
    }

    /// `P^rel(n)` with the doubling stabilization rule.
    pub fn prel_set(&self, n: usize) -> Result<PrelSet> {
        let mut sets = self.prel_sets(n, n)?;
        Ok(sets.pop().unwrap())
    }

    /// `P^rel(n)` for every `n` in `from..=to`, stabilized jointly.
    pub fn prel_sets(&self, from: usize, to: usize) -> Result<Vec<PrelSet>> {
        assert!(from >= 1 && from <= to);
        let a = self.sub.alphabet_size();
        let mut scan = (4 * to + self.start).max(INITIAL_SCAN);
        let mut sets: Vec<HashSet<RelParikhVector>> = vec![HashSet::new(); to - from + 1];
        let mut scanned_to = vec![self.start; to - from + 1];
        let mut sizes = Vec::new();
        loop {
            if scan > self.limits.max_prefix_len {
                return Err(Error::ResourceLimit {
                    what: "oracle scan",
                    needed: scan.to_string(),
                    limit: self.limits.max_prefix_len,
                });
            }
            let u = self.sub.fixed_point_prefix(scan, &self.limits)?;
            sets.par_iter_mut()
                .zip(scanned_to.par_iter_mut())
                .enumerate()
                .for_each(|(i, (set, done))| {
                    let n = from + i;
                    let end = scan + 1 - n;
                    collect_windows(&u, a, n, *done, end, set);
                    *done = end.max(*done);
                });
            sizes.push(sets.iter().map(HashSet::len).sum::<usize>());
            let k = sizes.len();
            if k >= 3 && sizes[k - 1] == sizes[k - 2] && sizes[k - 2] == sizes[k - 3] {
                break;
            }
            scan *= 2;
        }
        Ok(sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn ac(&self, n: usize) -> Result<usize> {
        Ok(self.prel_set(n)?.len())
    }

    pub fn balance(&self, n: usize) -> Result<u32> {
        Ok(self.prel_set(n)?.balance())
    }

    /// `(AC(n), B(n))` for `n` in `1..=to`.
    pub fn table(&self, to: usize) -> Result<Vec<(usize, u32)>> {
        if to == 0 {
            return Ok(Vec::new());
        }
        Ok(self
            .prel_sets(1, to)?
            .iter()
            .map(|s| (s.len(), s.balance()))
            .collect())
    }
}

/// Abelian complexity `AC(n) = #P^rel(n)` by stabilized brute force.
pub fn ac_bruteforce(sub: &ParrySubstitution, n: usize, limits: &Limits) -> Result<usize> {
    Oracle::new(sub, *limits).ac(n)
}

/// Balance function `B(n)` by stabilized brute force.
pub fn balance_bruteforce(sub: &ParrySubstitution, n: usize, limits: &Limits) -> Result<u32> {
    Oracle::new(sub, *limits).balance(n)
}
