use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::ParrySubstitution;

/// `M[ℓ][k] = |φ(ℓ)|_k`; row `ℓ` is the Parikh vector of `φ(ℓ)`, so that
/// `Ψ(φ(w)) = Ψ(w)·M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == rows.len()));
        IncidenceMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.rows[row][col]
    }

    /// `|φ(ℓ)|` for each letter.
    pub fn row_sums(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Row vector times matrix, `v·M`.
    pub fn left_mul_i64(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.size()];
        for (coef, row) in v.iter().zip(&self.rows) {
            if *coef == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o += coef * x as i64;
            }
        }
        out
    }

    pub fn left_mul_u128(&self, v: &[u128]) -> Vec<u128> {
        let mut out = vec![0u128; self.size()];
        for (coef, row) in v.iter().zip(&self.rows) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o = o.saturating_add(coef.saturating_mul(x as u128));
            }
        }
        out
    }

    pub fn left_mul_big(&self, v: &[BigUint]) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.size()];
        for (coef, row) in v.iter().zip(&self.rows) {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                if x != 0 {
                    *o += coef * x;
                }
            }
        }
        out
    }
}

/// The sequence `U_j = |φʲ(0)|` together with the Parikh vectors `Ψ(φʲ(0))`,
/// the latter being row 0 of `Mʲ`. Values are exact big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct USequence {
    matrix: IncidenceMatrix,
    rows: Vec<Vec<BigUint>>,
    values: Vec<BigUint>,
    small: Vec<u64>,
}

impl USequence {
    /// Sequence holding only `U_0 = 1`.
    pub fn new(sub: &ParrySubstitution) -> Self {
        let matrix = sub.incidence_matrix();
        let mut first = vec![BigUint::zero(); matrix.size()];
        first[0] = BigUint::one();
        USequence {
            matrix,
            rows: vec![first],
            values: vec![BigUint::one()],
            small: vec![1],
        }
    }

    /// Index of the last stored term.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, j: usize) -> Option<&BigUint> {
        self.values.get(j)
    }

    /// `Ψ(φʲ(0))`.
    pub fn parikh_row(&self, j: usize) -> Option<&[BigUint]> {
        self.rows.get(j).map(Vec::as_slice)
    }

    /// Leading terms that fit in a `u64`.
    pub fn small_values(&self) -> &[u64] {
        &self.small
    }

    pub fn matrix(&self) -> &IncidenceMatrix {
        &self.matrix
    }

    /// α₀, the largest digit of a greedy representation.
    pub fn max_digit(&self) -> u32 {
        self.matrix.entry(0, 0) as u32
    }

    /// Appends `U_{k+1}`.
    pub fn extend(&mut self) {
        let next = self.matrix.left_mul_big(self.rows.last().unwrap());
        let value: BigUint = next.iter().sum();
        if self.small.len() == self.values.len() {
            if let Some(v) = value.to_u64() {
                self.small.push(v);
            }
        }
        self.values.push(value);
        self.rows.push(next);
    }

    /// Extends until the last term exceeds `n`, so `n` has a greedy representation.
    pub fn cover(&mut self, n: &BigUint) {
        while self.values.last().unwrap() <= n {
            self.extend();
        }
    }

    pub fn covers(&self, n: &BigUint) -> bool {
        self.values.last().unwrap() > n
    }

    pub fn covers_u64(&self, n: u64) -> bool {
        self.small.len() < self.values.len() || *self.small.last().unwrap() > n
    }
}

/// `U_0, …, U_k`.
pub fn u_sequence(sub: &ParrySubstitution, k: usize) -> USequence {
    let mut seq = USequence::new(sub);
    while seq.last_index() < k {
        seq.extend();
    }
    seq
}
