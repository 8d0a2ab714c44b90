//! The digit transition `S(n) ↦ S(N)` for `⟨N⟩_U = ⟨n⟩_U d`.
//!
//! For a triple `(ψ, a, b_{−L}⋯b_L)` write `φ(a) = x_1⋯x_p` and lay out
//! `φ(b_{−L}⋯b_{−1}) = y_{−r}⋯y_0`, `φ(b_0) = y_1⋯y_q`, `φ(b_1⋯b_L) = y_{q+1}⋯y_s`.
//! With `h = Σ(ψ·M)` and `e = t + d − h`, each offset `t ∈ [0, p)` yields
//!
//! ```text
//! ψ̂ = ψ·M − Ψ(0^{t+d}) + Ψ(y_1⋯y_e)        if e > 0
//! ψ̂ = ψ·M − Ψ(0^{t+d})                      if e = 0
//! ψ̂ = ψ·M − Ψ(0^{t+d}) − Ψ(y_{e+1}⋯y_0)     if e < 0
//! â = x_{t+1},  b̂ = y_{e+1−L} ⋯ y_{e+1+L}
//! ```

use super::constants::ConstantsBundle;
use super::state::{STriple, StateSet};
use crate::error::{Error, Result};
use crate::oracle::RelParikhVector;
use crate::substitution::{IncidenceMatrix, Letter, ParrySubstitution};

/// Precomputed substitution data for repeated transitions.
#[derive(Debug, Clone)]
pub struct Transformer {
    images: Vec<Vec<Letter>>,
    matrix: IncidenceMatrix,
    alphabet: usize,
    max_digit: u32,
    consts: ConstantsBundle,
}

impl Transformer {
    pub fn new(sub: &ParrySubstitution, consts: ConstantsBundle) -> Self {
        Transformer {
            images: sub.images(),
            matrix: sub.incidence_matrix(),
            alphabet: sub.alphabet_size(),
            max_digit: sub.alpha0(),
            consts,
        }
    }

    pub fn consts(&self) -> &ConstantsBundle {
        &self.consts
    }

    /// All emitted triples before deduplication: exactly `Σ |φ(a)|` of them.
    pub fn emit(&self, state: &StateSet, digit: u32) -> Result<Vec<STriple>> {
        if digit > self.max_digit {
            return Err(Error::DigitRange {
                digit,
                max: self.max_digit,
            });
        }
        let l = self.consts.l;
        let d = digit as i64;
        let mut out = Vec::with_capacity(state.len() * 2);
        let mut ys: Vec<Letter> = Vec::new();
        for triple in state.triples() {
            let psi: Vec<i64> = triple.psi.components().iter().map(|&x| x as i64).collect();
            let psi_m = self.matrix.left_mul_i64(&psi);
            let h: i64 = psi_m.iter().sum();

            ys.clear();
            for &b in &triple.window[..l] {
                ys.extend_from_slice(&self.images[b as usize]);
            }
            // y_i lives at ys[i + r]
            let r = ys.len() as i64 - 1;
            for &b in &triple.window[l..] {
                ys.extend_from_slice(&self.images[b as usize]);
            }
            let s = ys.len() as i64 - 1 - r;
            let at = |i: i64| (i + r) as usize;

            let x = &self.images[triple.a as usize];
            for (t, &a_hat) in x.iter().enumerate() {
                let e = t as i64 + d - h;
                let lo = (e + 1 - l as i64).min(e + 1);
                let hi = (e + 1 + l as i64).max(e);
                if lo < -r {
                    return Err(Error::IndexOverflow {
                        index: lo,
                        low: -r,
                        high: s,
                    });
                }
                if hi > s {
                    return Err(Error::IndexOverflow {
                        index: hi,
                        low: -r,
                        high: s,
                    });
                }
                let mut psi_hat = psi_m.clone();
                psi_hat[0] -= t as i64 + d;
                if e > 0 {
                    for &y in &ys[at(1)..=at(e)] {
                        psi_hat[y as usize] += 1;
                    }
                } else if e < 0 {
                    for &y in &ys[at(e + 1)..=at(0)] {
                        psi_hat[y as usize] -= 1;
                    }
                }
                out.push(STriple {
                    psi: RelParikhVector::from_components(
                        psi_hat.into_iter().map(|v| v as i32).collect(),
                    ),
                    a: a_hat,
                    window: ys[at(e + 1 - l as i64)..=at(e + 1 + l as i64)].into(),
                });
            }
        }
        debug_assert!(out
            .iter()
            .all(|t| t.psi.components().len() == self.alphabet));
        Ok(out)
    }

    pub fn step(&self, state: &StateSet, digit: u32) -> Result<StateSet> {
        Ok(StateSet::from_triples(self.emit(state, digit)?))
    }
}

/// One digit transition on a single set; builds a [`Transformer`] per call.
pub fn step_transform(
    sub: &ParrySubstitution,
    consts: &ConstantsBundle,
    state: &StateSet,
    digit: u32,
) -> Result<StateSet> {
    Transformer::new(sub, *consts).step(state, digit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::base::{base_state_set, state_set_from_prefix};
    use crate::builder::project_prel;
    use crate::limits::Limits;
    use crate::numeration::{greedy_urep_u64, is_canonical, NormalURep};
    use crate::substitution::u_sequence;

    fn fib_setup() -> (ParrySubstitution, ConstantsBundle, Limits) {
        let sub = ParrySubstitution::fibonacci();
        let limits = Limits::default();
        let consts = ConstantsBundle::derive(&sub, 1, &limits).unwrap();
        (sub, consts, limits)
    }

    #[test]
    fn fibonacci_digit_zero_gives_s2() {
        let (sub, consts, limits) = fib_setup();
        let s1 = base_state_set(&sub, &consts, 1, &limits).unwrap();
        let s2 = step_transform(&sub, &consts, &s1, 0).unwrap();
        let u = sub.fixed_point_prefix(20_000, &limits).unwrap();
        assert_eq!(s2, state_set_from_prefix(&u, 2, 2, consts.l));
    }

    #[test]
    fn fibonacci_formal_step_on_invalid_digits() {
        let (sub, consts, limits) = fib_setup();
        let useq = u_sequence(&sub, 6);
        // "11" is not a normal representation: 3 = "100"
        assert!(!is_canonical(&useq, &NormalURep::parse("11").unwrap()));
        assert_eq!(greedy_urep_u64(&useq, 3).to_string(), "100");
        let s1 = base_state_set(&sub, &consts, 1, &limits).unwrap();
        let formal = step_transform(&sub, &consts, &s1, 1).unwrap();
        assert!(formal.triples().iter().all(|t| t.psi.sum() == 0));
        let u = sub.fixed_point_prefix(20_000, &limits).unwrap();
        // "101" = 4 is valid and reached through "10"
        let s2 = step_transform(&sub, &consts, &s1, 0).unwrap();
        let s4 = step_transform(&sub, &consts, &s2, 1).unwrap();
        assert_eq!(s4, state_set_from_prefix(&u, 2, 4, consts.l));
        let oracle = crate::oracle::Oracle::new(&sub, limits);
        assert_eq!(project_prel(&s4), oracle.prel_set(4).unwrap());
    }

    #[test]
    fn fan_out_and_invariants() {
        let (sub, consts, limits) = fib_setup();
        let tr = Transformer::new(&sub, consts);
        let s1 = base_state_set(&sub, &consts, 1, &limits).unwrap();
        for d in 0..=1 {
            let raw = tr.emit(&s1, d).unwrap();
            let expected: usize = s1.triples().iter().map(|t| sub.image_len(t.a)).sum();
            assert_eq!(raw.len(), expected);
            assert!(raw.iter().all(|t| t.psi.sum() == 0));
            assert!(raw.iter().all(|t| t.window.len() == 2 * consts.l + 1));
            assert!(tr.step(&s1, d).unwrap().len() <= s1.len() * 2);
        }
        assert!(matches!(tr.emit(&s1, 2), Err(Error::DigitRange { .. })));
    }

    #[test]
    fn undersized_window_overflows() {
        let (sub, consts, limits) = fib_setup();
        let s1 = base_state_set(&sub, &consts, 1, &limits).unwrap();
        // reuse the genuine windows but pretend H is larger than L allows
        let mut tight = consts;
        tight.l = 1;
        let shrunk = StateSet::from_triples(
            s1.triples()
                .iter()
                .map(|t| STriple {
                    psi: RelParikhVector::from_components(vec![5, -5]),
                    a: t.a,
                    window: t.window[consts.l - 1..=consts.l + 1].into(),
                })
                .collect(),
        );
        assert!(matches!(
            step_transform(&sub, &tight, &shrunk, 0),
            Err(Error::IndexOverflow { .. })
        ));
    }
}
