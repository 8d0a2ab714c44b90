//! Parry substitutions: the two canonical shapes
//!
//! ```text
//! simple:      ℓ ↦ 0^{α_ℓ}(ℓ+1)  for ℓ < m−1,   m−1 ↦ 0^{α_{m−1}}
//! non-simple:  ℓ ↦ 0^{α_ℓ}(ℓ+1)  for ℓ < m+p−1, m+p−1 ↦ 0^{α_{m+p−1}} m
//! ```
//!
//! together with their fixed points, incidence matrices and the sequence
//! `U_j = |φʲ(0)|` that drives the numeration system.

mod document;
mod matrix;
mod spectral;
mod word;

use serde::{Deserialize, Serialize};

pub use document::{parse_shorthand, parse_spec};
pub use matrix::{u_sequence, IncidenceMatrix, USequence};
pub use spectral::{
    characteristic_polynomial, BalanceVerdict, SpectralReport, DEFAULT_SPECTRAL_TOL,
};
pub use word::{Letter, Word};

use crate::error::{Constraint, Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubstitutionKind {
    Simple,
    NonSimple,
}

/// A simple or non-simple Parry substitution described by its exponents.
///
/// Construction does not check the Parry constraints; call [`validate`](Self::validate).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "document::SpecDocument", try_from = "document::SpecDocument")]
pub struct ParrySubstitution {
    kind: SubstitutionKind,
    m: u32,
    p: u32,
    alphas: Vec<u32>,
}

impl ParrySubstitution {
    /// Simple substitution over `m = alphas.len()` letters.
    pub fn simple(alphas: Vec<u32>) -> Self {
        ParrySubstitution {
            kind: SubstitutionKind::Simple,
            m: alphas.len() as u32,
            p: 0,
            alphas,
        }
    }

    /// Non-simple substitution over `m + p = alphas.len()` letters.
    pub fn non_simple(m: u32, p: u32, alphas: Vec<u32>) -> Self {
        ParrySubstitution {
            kind: SubstitutionKind::NonSimple,
            m,
            p,
            alphas,
        }
    }

    /// `0 ↦ 01, 1 ↦ 0`
    pub fn fibonacci() -> Self {
        Self::simple(vec![1, 1])
    }

    /// `0 ↦ 01, 1 ↦ 02, 2 ↦ 0`
    pub fn tribonacci() -> Self {
        Self::simple(vec![1, 1, 1])
    }

    pub fn kind(&self) -> SubstitutionKind {
        self.kind
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn alpha0(&self) -> u32 {
        self.alphas.first().copied().unwrap_or(0)
    }

    /// Number of letters `A`.
    pub fn alphabet_size(&self) -> usize {
        self.alphas.len()
    }

    /// The letter following the zero block in `φ(ℓ)`, if any.
    pub fn successor(&self, letter: Letter) -> Option<Letter> {
        let l = letter as usize;
        let last = self.alphabet_size() - 1;
        if l < last {
            Some(letter + 1)
        } else {
            match self.kind {
                SubstitutionKind::Simple => None,
                SubstitutionKind::NonSimple => Some(self.m as Letter),
            }
        }
    }

    /// `φ(ℓ)`.
    pub fn image(&self, letter: Letter) -> Word {
        let mut out = vec![0; self.alphas[letter as usize] as usize];
        out.extend(self.successor(letter));
        Word::from_letters(out)
    }

    /// `|φ(ℓ)|`.
    pub fn image_len(&self, letter: Letter) -> usize {
        self.alphas[letter as usize] as usize + usize::from(self.successor(letter).is_some())
    }

    /// `φ(ℓ)` for every letter, indexed by letter.
    pub fn images(&self) -> Vec<Vec<Letter>> {
        (0..self.alphabet_size())
            .map(|l| self.image(l as Letter).into_letters())
            .collect()
    }

    /// Compact shorthand (`simple:1,1`, `nonsimple:m=1,p=1:2,1`).
    pub fn shorthand(&self) -> String {
        let alphas = self
            .alphas
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        match self.kind {
            SubstitutionKind::Simple => format!("simple:{alphas}"),
            SubstitutionKind::NonSimple => format!("nonsimple:m={},p={}:{alphas}", self.m, self.p),
        }
    }

    /// Checks the exponent bounds, the tail condition, and the lexicographic
    /// condition on the exponent sequence `t = α₀α₁⋯` (zero-padded for the
    /// simple kind, with the cycle `α_m⋯α_{m+p−1}` repeated for the non-simple
    /// kind): every proper shift of `t` must be lexicographically smaller than `t`.
    pub fn validate(&self) -> Result<()> {
        let violation =
            |constraint, detail: String| Err(Error::ConstraintViolation { constraint, detail });
        let a0 = self.alpha0();
        if self.alphas.is_empty() {
            return Err(Error::Syntax("empty alphabet".into()));
        }
        if a0 < 1 {
            return violation(Constraint::LeadingExponentPositive, "α₀ = 0".into());
        }
        if let Some((l, &a)) = self.alphas.iter().enumerate().find(|(_, &a)| a > a0) {
            return violation(
                Constraint::ExponentBoundedByLeading,
                format!("α_{l} = {a} > α₀ = {a0}"),
            );
        }
        match self.kind {
            SubstitutionKind::Simple => {
                let last = *self.alphas.last().unwrap();
                if last < 1 {
                    return violation(
                        Constraint::SimpleTail,
                        format!("α_{} = 0", self.alphas.len() - 1),
                    );
                }
            }
            SubstitutionKind::NonSimple => {
                let m = self.m as usize;
                if self.m < 1 || self.p < 1 || m + self.p as usize != self.alphas.len() {
                    return Err(Error::Range(format!(
                        "nonsimple needs m ≥ 1, p ≥ 1, m+p = {}",
                        self.alphas.len()
                    )));
                }
                if self.alphas[m..].iter().all(|&a| a == 0) {
                    return violation(
                        Constraint::NonSimpleTail,
                        format!("α_{m}..α_{} are all 0", self.alphas.len() - 1),
                    );
                }
            }
        }
        if let Some(k) = self.first_dominating_shift() {
            return violation(
                Constraint::Lexicographic,
                format!(
                    "the shift by {k} of the exponent sequence is not smaller than the sequence"
                ),
            );
        }
        if self.image_len(0) < 2 {
            return violation(Constraint::Growth, "φ(0) = 0 is a fixed letter".into());
        }
        Ok(())
    }

    /// `t_i` for the exponent sequence described in [`validate`](Self::validate).
    fn exponent(&self, i: usize) -> u32 {
        let m = self.m as usize;
        match self.kind {
            SubstitutionKind::Simple => self.alphas.get(i).copied().unwrap_or(0),
            SubstitutionKind::NonSimple if i < m => self.alphas[i],
            SubstitutionKind::NonSimple => self.alphas[m + (i - m) % self.p as usize],
        }
    }

    /// Smallest `k ≥ 1` with `σᵏ(t) ≥_lex t`, if any. Both sequences are
    /// periodic from index `m` on, so comparing `2(m + p) + 1` terms decides.
    fn first_dominating_shift(&self) -> Option<usize> {
        let (m, p) = match self.kind {
            SubstitutionKind::Simple => (self.alphas.len(), 1),
            SubstitutionKind::NonSimple => (self.m as usize, self.p as usize),
        };
        let horizon = 2 * (m + p) + 1;
        (1..m + p).find(|&k| {
            (0..horizon)
                .map(|i| self.exponent(k + i).cmp(&self.exponent(i)))
                .find(|o| o.is_ne())
                .is_none_or(|o| o.is_gt())
        })
    }

    /// `φ(w)`.
    pub fn apply(&self, w: &[Letter]) -> Word {
        let images = self.images();
        let mut out = Vec::with_capacity(w.iter().map(|&l| images[l as usize].len()).sum());
        for &l in w {
            out.extend_from_slice(&images[l as usize]);
        }
        Word::from_letters(out)
    }

    /// `φᵏ(ℓ)`, refusing to materialize anything longer than `limits.max_prefix_len`.
    pub fn power_image(&self, letter: Letter, k: usize, limits: &Limits) -> Result<Word> {
        let m = self.incidence_matrix();
        let mut counts = vec![0u128; self.alphabet_size()];
        counts[letter as usize] = 1;
        for _ in 0..k {
            counts = m.left_mul_u128(&counts);
            let len: u128 = counts.iter().sum();
            if len > limits.max_prefix_len as u128 {
                return Err(Error::ResourceLimit {
                    what: "power image",
                    needed: format!("> {}", limits.max_prefix_len),
                    limit: limits.max_prefix_len,
                });
            }
        }
        let mut w = Word::from_letters(vec![letter]);
        for _ in 0..k {
            w = self.apply(&w);
        }
        Ok(w)
    }

    /// The first `len` letters of the fixed point `u = φ(u)` starting with 0.
    ///
    /// Letters are produced by expanding `u_i ↦ φ(u_i)` in reading order, so
    /// the work is linear in `len`.
    pub fn fixed_point_prefix(&self, len: usize, limits: &Limits) -> Result<Word> {
        if len > limits.max_prefix_len {
            return Err(Error::ResourceLimit {
                what: "fixed-point prefix",
                needed: len.to_string(),
                limit: limits.max_prefix_len,
            });
        }
        if len == 0 {
            return Ok(Word::new());
        }
        let images = self.images();
        debug_assert!(images[0].len() >= 2 && images[0][0] == 0);
        let mut out: Vec<Letter> =
            Vec::with_capacity(len + images.iter().map(Vec::len).max().unwrap_or(0));
        out.extend_from_slice(&images[0]);
        let mut next = 1;
        while out.len() < len {
            let l = out[next] as usize;
            out.extend_from_slice(&images[l]);
            next += 1;
        }
        out.truncate(len);
        Ok(Word::from_letters(out))
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let a = self.alphabet_size();
        let rows = (0..a)
            .map(|l| {
                let mut row = vec![0u64; a];
                for x in self.image(l as Letter).iter() {
                    row[*x as usize] += 1;
                }
                row
            })
            .collect();
        IncidenceMatrix::from_rows(rows)
    }

    /// Spectral sufficient condition for balancedness: every eigenvalue of the
    /// incidence matrix except the dominant one lies strictly inside the unit disc.
    pub fn spectral_balance_check(&self, tol: f64) -> Result<SpectralReport> {
        spectral::check(&self.incidence_matrix(), tol)
    }
}
