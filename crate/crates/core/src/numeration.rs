//! Greedy normal U-representations `⟨n⟩_U = d_k ⋯ d_0` with `n = Σ d_j U_j`.

use std::borrow::Cow;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::oracle::ParikhVector;
use crate::substitution::{Letter, ParrySubstitution, USequence, Word};

/// Digit string, most significant digit first. The empty string represents 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalURep {
    digits: Vec<u32>,
}

impl NormalURep {
    pub fn from_digits(digits: Vec<u32>) -> Self {
        NormalURep { digits }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Appends a least significant digit.
    pub fn push(&mut self, digit: u32) {
        self.digits.push(digit);
    }

    /// Parses `"1010"` (one decimal digit each) or `"10,3,0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let digits = if text.is_empty() {
            Vec::new()
        } else if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Syntax(format!("bad digit {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Syntax(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Ok(NormalURep { digits })
    }

    /// Space-free decimal when every digit is at most 9, comma-separated otherwise.
    pub fn render(&self, max_digit: u32) -> String {
        if max_digit <= 9 {
            self.digits
                .iter()
                .map(|d| char::from_digit(*d, 10).unwrap_or('?'))
                .collect()
        } else {
            self.digits
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for NormalURep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.digits.iter().copied().max().unwrap_or(0);
        f.write_str(&self.render(max))
    }
}

fn covering<'a>(useq: &'a USequence, n: &BigUint) -> Cow<'a, USequence> {
    if useq.covers(n) {
        Cow::Borrowed(useq)
    } else {
        let mut ext = useq.clone();
        ext.cover(n);
        Cow::Owned(ext)
    }
}

/// Greedy expansion of `n`; extends a copy of `useq` when it is too short.
pub fn greedy_urep(useq: &USequence, n: &BigUint) -> NormalURep {
    if let Some(small) = n.to_u64() {
        if useq.covers_u64(small) {
            return greedy_urep_u64(useq, small);
        }
    }
    let useq = covering(useq, n);
    let values = useq.values();
    let top = match values.iter().rposition(|u| u <= n) {
        Some(k) => k,
        None => return NormalURep::default(),
    };
    let mut rem = n.clone();
    let mut digits = Vec::with_capacity(top + 1);
    for u in values[..=top].iter().rev() {
        let d = &rem / u;
        rem -= &d * u;
        digits.push(d.to_u32().expect("greedy digit fits in u32"));
    }
    debug_assert!(rem.is_zero());
    NormalURep { digits }
}

/// [`greedy_urep`] for machine-sized `n`.
pub fn greedy_urep_u64(useq: &USequence, n: u64) -> NormalURep {
    let small = useq.small_values();
    if !useq.covers_u64(n) {
        return greedy_urep(useq, &BigUint::from(n));
    }
    let top = match small.iter().rposition(|&u| u <= n) {
        Some(k) => k,
        None => return NormalURep::default(),
    };
    let mut rem = n;
    let mut digits = Vec::with_capacity(top + 1);
    for &u in small[..=top].iter().rev() {
        let d = rem / u;
        rem -= d * u;
        digits.push(d as u32);
    }
    NormalURep { digits }
}

/// `Σ d_j U_j`. Digits above α₀ are rejected; non-greedy strings are accepted.
pub fn urep_value(useq: &USequence, rep: &NormalURep) -> Result<BigUint> {
    let max = useq.max_digit();
    if let Some(&d) = rep.digits.iter().find(|&&d| d > max) {
        return Err(Error::DigitRange { digit: d, max });
    }
    let mut seq = Cow::Borrowed(useq);
    while seq.last_index() + 1 < rep.len() {
        seq.to_mut().extend();
    }
    let values = seq.values();
    Ok(rep
        .digits
        .iter()
        .rev()
        .zip(values)
        .map(|(&d, u)| u * d)
        .sum())
}

/// Whether `rep` is exactly the greedy representation of its value.
pub fn is_canonical(useq: &USequence, rep: &NormalURep) -> bool {
    match urep_value(useq, rep) {
        Ok(v) => greedy_urep(useq, &v) == *rep,
        Err(_) => false,
    }
}

/// `(φᵏ(0))^{d_k} ⋯ (φ(0))^{d_1} 0^{d_0}`, the prefix of the fixed point of length `n`.
pub fn prefix_from_digits(
    sub: &ParrySubstitution,
    rep: &NormalURep,
    limits: &Limits,
) -> Result<Word> {
    let useq = {
        let mut s = USequence::new(sub);
        while s.last_index() + 1 < rep.len() {
            s.extend();
        }
        s
    };
    let total = urep_value(&useq, rep)?;
    if total > BigUint::from(limits.max_prefix_len) {
        return Err(Error::ResourceLimit {
            what: "prefix from digits",
            needed: total.to_string(),
            limit: limits.max_prefix_len,
        });
    }
    let k = rep.len();
    // blocks[j] = φʲ(0)
    let mut blocks: Vec<Vec<Letter>> = Vec::with_capacity(k);
    if k > 0 {
        blocks.push(vec![0]);
    }
    for _ in 1..k {
        let next = sub.apply(blocks.last().unwrap()).into_letters();
        blocks.push(next);
    }
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    for (j, &d) in rep.digits.iter().rev().enumerate().rev() {
        for _ in 0..d {
            out.extend_from_slice(&blocks[j]);
        }
    }
    Ok(Word::from_letters(out))
}

/// `Σ_j d_j · Ψ(φʲ(0))`, the Parikh vector of the prefix without materializing it.
pub fn prefix_parikh(useq: &USequence, rep: &NormalURep) -> Result<ParikhVector> {
    let max = useq.max_digit();
    if let Some(&d) = rep.digits.iter().find(|&&d| d > max) {
        return Err(Error::DigitRange { digit: d, max });
    }
    let mut seq = Cow::Borrowed(useq);
    while seq.last_index() + 1 < rep.len() {
        seq.to_mut().extend();
    }
    let size = seq.matrix().size();
    let mut acc = vec![BigUint::zero(); size];
    for (j, &d) in rep.digits.iter().rev().enumerate() {
        if d == 0 {
            continue;
        }
        for (a, r) in acc.iter_mut().zip(seq.parikh_row(j).unwrap()) {
            *a += r * d;
        }
    }
    let counts = acc
        .into_iter()
        .map(|c| {
            c.to_u64()
                .ok_or_else(|| Error::Range(format!("letter count {c} exceeds u64")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ParikhVector::from_counts(counts))
}
