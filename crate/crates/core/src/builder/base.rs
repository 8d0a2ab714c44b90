use std::collections::BTreeSet;

use super::constants::{check_growth, ConstantsBundle};
use super::state::{STriple, StateSet};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::oracle::RelParikhVector;
use crate::substitution::{Letter, ParrySubstitution};

/// Adds the triples for window starts `j` in `from..to` (those that fit in `u`).
fn scan_triples(
    u: &[Letter],
    alphabet: usize,
    n: usize,
    l: usize,
    from: usize,
    to: usize,
    out: &mut BTreeSet<STriple>,
) -> usize {
    // need j + n + L < |u|
    let end = to.min(u.len().saturating_sub(n + l));
    if from >= end {
        return from;
    }
    let mut base = vec![0i32; alphabet];
    for &x in &u[..n] {
        base[x as usize] += 1;
    }
    let mut window = vec![0i32; alphabet];
    for &x in &u[from..from + n] {
        window[x as usize] += 1;
    }
    for j in from..end {
        if j > from {
            window[u[j - 1] as usize] -= 1;
            window[u[j + n - 1] as usize] += 1;
        }
        let psi = window.iter().zip(&base).map(|(w, b)| w - b).collect();
        out.insert(STriple {
            psi: RelParikhVector::from_components(psi),
            a: u[j],
            window: u[j + n - l..=j + n + l].into(),
        });
    }
    end
}

/// `S(n) = {(Ψ^rel(u_j⋯u_{j+n−1}), u_j, u_{j+n−L}⋯u_{j+n+L}) : j ≥ L}`, gathered
/// from a prefix that is doubled until the set is unchanged across two doublings.
///
/// Every context window is also checked against the growth condition that
/// defines L.
pub fn base_state_set(
    sub: &ParrySubstitution,
    consts: &ConstantsBundle,
    n: usize,
    limits: &Limits,
) -> Result<StateSet> {
    if n == 0 {
        return Err(Error::Range("base sets start at n = 1".into()));
    }
    let l = consts.l;
    let a = sub.alphabet_size();
    let mut scan = (8 * (n + 2 * l + 1)).max(1024);
    let mut triples = BTreeSet::new();
    let mut next_start = l;
    let mut sizes = Vec::new();
    loop {
        if scan > limits.max_prefix_len {
            return Err(Error::ResourceLimit {
                what: "base state scan",
                needed: scan.to_string(),
                limit: limits.max_prefix_len,
            });
        }
        let u = sub.fixed_point_prefix(scan, limits)?;
        next_start = scan_triples(&u, a, n, l, next_start, usize::MAX, &mut triples);
        sizes.push(triples.len());
        let k = sizes.len();
        if k >= 3 && sizes[k - 1] == sizes[k - 2] && sizes[k - 2] == sizes[k - 3] {
            break;
        }
        scan *= 2;
    }
    for t in &triples {
        check_growth(sub, consts, &t.window[..l])?;
        check_growth(sub, consts, &t.window[l + 1..])?;
    }
    Ok(StateSet::from_triples(triples.into_iter().collect()))
}

/// `S(n)` from the windows `j ∈ [L, scan_len − n − L)` of a fixed prefix, without stabilization.
pub fn state_set_from_prefix(u: &[Letter], alphabet: usize, n: usize, l: usize) -> StateSet {
    let mut triples = BTreeSet::new();
    scan_triples(u, alphabet, n, l, l, usize::MAX, &mut triples);
    StateSet::from_triples(triples.into_iter().collect())
}
