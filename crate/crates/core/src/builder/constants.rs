use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::substitution::{Letter, ParrySubstitution};

/// Balance bound `c` and the derived window constants `H`, `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsBundle {
    pub c: u32,
    /// Upper bound on `|Σ(ψ·M)|` over relative vectors with entries in `[−c, c]`.
    pub h: u64,
    /// Half-width of the context window; factors of length ≥ L grow by at least `2α₀ + H` under φ.
    pub l: usize,
}

impl ConstantsBundle {
    /// `H` and `L` from the closed forms, given `c`.
    pub fn derive(sub: &ParrySubstitution, c: u32, limits: &Limits) -> Result<Self> {
        let h = compute_h(sub, c);
        let l = compute_l(sub, c, h, limits)?;
        Ok(ConstantsBundle { c, h, l })
    }

    /// Bound on the number of distinct triples over all `S(n)`:
    /// `(2c+1)^A · A^{2L+2}`.
    pub fn triple_bound(&self, alphabet_size: usize) -> BigUint {
        let a = BigUint::from(alphabet_size);
        BigUint::from(2 * self.c + 1).pow(alphabet_size as u32) * a.pow(2 * self.l as u32 + 2)
    }
}

/// `max Σ_k ((c_0,…,c_{A−1})·M)_k` over `c_j ∈ {−c,…,c}`.
///
/// The component sum of `v·M` is `Σ_j v_j |φ(j)|`, and every `|φ(j)| ≥ 1`,
/// so the maximum is reached at `v = (c,…,c)`: `H = c · Σ_j |φ(j)|`.
pub fn compute_h(sub: &ParrySubstitution, c: u32) -> u64 {
    let total: u64 = (0..sub.alphabet_size())
        .map(|l| sub.image_len(l as Letter) as u64)
        .sum();
    c as u64 * total
}

/// Smallest `n` with `|u_0⋯u_{n−1}|_0 ≥ 2 + H/α₀ + c`.
pub fn compute_l(sub: &ParrySubstitution, c: u32, h: u64, limits: &Limits) -> Result<usize> {
    let a0 = sub.alpha0() as u64;
    if a0 == 0 {
        return Err(Error::ConstantsTooSmall("α₀ = 0".into()));
    }
    // zeros·α₀ ≥ (2 + c)·α₀ + H, in integers
    let target = (2 + c as u64) * a0 + h;
    let mut len = 64;
    loop {
        let u = sub.fixed_point_prefix(len.min(limits.max_prefix_len), limits)?;
        let mut zeros = 0u64;
        for (i, &l) in u.iter().enumerate() {
            if l == 0 {
                zeros += 1;
                if zeros * a0 >= target {
                    return Ok(i + 1);
                }
            }
        }
        if len >= limits.max_prefix_len {
            return Err(Error::ResourceLimit {
                what: "computing L",
                needed: format!("> {len}"),
                limit: limits.max_prefix_len,
            });
        }
        len *= 4;
    }
}

/// `|φ(w)| − |w| ≥ 2α₀ + H` for a factor `w` of length at least L.
pub fn check_growth(sub: &ParrySubstitution, consts: &ConstantsBundle, w: &[Letter]) -> Result<()> {
    let growth: u64 = w.iter().map(|&l| sub.image_len(l) as u64 - 1).sum();
    let need = 2 * sub.alpha0() as u64 + consts.h;
    if growth < need {
        return Err(Error::ConstantsTooSmall(format!(
            "factor of length {} grows by {growth} < 2α₀+H = {need} under φ (L = {})",
            w.len(),
            consts.l
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct enumeration over all vectors in `{−c,…,c}^A`.
    fn h_by_enumeration(sub: &ParrySubstitution, c: u32) -> i64 {
        let m = sub.incidence_matrix();
        let a = sub.alphabet_size();
        let c = c as i64;
        let mut v = vec![-c; a];
        let mut best = i64::MIN;
        loop {
            best = best.max(m.left_mul_i64(&v).iter().sum());
            let mut k = 0;
            loop {
                if k == a {
                    return best;
                }
                if v[k] < c {
                    v[k] += 1;
                    break;
                }
                v[k] = -c;
                k += 1;
            }
        }
    }

    #[test]
    fn closed_form_h_matches_enumeration() {
        let subs = [
            ParrySubstitution::fibonacci(),
            ParrySubstitution::tribonacci(),
            ParrySubstitution::non_simple(1, 1, vec![2, 1]),
            ParrySubstitution::simple(vec![2, 0, 1]),
            ParrySubstitution::simple(vec![3, 1, 2, 1]),
            ParrySubstitution::non_simple(2, 2, vec![2, 1, 0, 1]),
            ParrySubstitution::non_simple(1, 3, vec![1, 0, 1, 1]),
        ];
        for sub in &subs {
            for c in 0..=3 {
                assert_eq!(
                    compute_h(sub, c) as i64,
                    h_by_enumeration(sub, c),
                    "{sub:?} c={c}"
                );
            }
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(compute_h(&ParrySubstitution::fibonacci(), 1), 3);
        assert_eq!(compute_h(&ParrySubstitution::tribonacci(), 2), 10);
        assert_eq!(compute_h(&ParrySubstitution::tribonacci(), 0), 0);
    }

    #[test]
    fn l_values() {
        let limits = Limits::default();
        assert_eq!(
            compute_l(&ParrySubstitution::fibonacci(), 1, 3, &limits).unwrap(),
            9
        );
        // 14 zeros needed; the 14th zero of the Tribonacci word sits at index 24
        assert_eq!(
            compute_l(&ParrySubstitution::tribonacci(), 2, 10, &limits).unwrap(),
            25
        );
        // α₀=2, c=1, H=5: 2·zeros ≥ 3·2+5 ⇒ 6 zeros; u = 001 001 01 001 001 01 …
        assert_eq!(
            compute_l(
                &ParrySubstitution::non_simple(1, 1, vec![2, 1]),
                1,
                5,
                &limits
            )
            .unwrap(),
            9
        );
        // 2·5 ≥ 2·5: two zeros suffice
        assert_eq!(
            compute_l(&ParrySubstitution::simple(vec![5, 1]), 0, 0, &limits).unwrap(),
            2
        );
    }

    #[test]
    fn growth_check() {
        let fib = ParrySubstitution::fibonacci();
        let consts = ConstantsBundle::derive(&fib, 1, &Limits::default()).unwrap();
        let u = fib.fixed_point_prefix(200, &Limits::default()).unwrap();
        for w in u.windows(consts.l) {
            check_growth(&fib, &consts, w).unwrap();
        }
        assert!(matches!(
            check_growth(&fib, &consts, &[1, 0, 1]),
            Err(Error::ConstantsTooSmall(_))
        ));
    }
}
