use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::IncidenceMatrix;
use crate::error::{Error, Result};

/// Default margin below 1 that non-dominant eigenvalue moduli must clear.
pub const DEFAULT_SPECTRAL_TOL: f64 = 1e-9;

const MAX_ITERATIONS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BalanceVerdict {
    /// All non-dominant eigenvalues lie strictly inside the unit disc: the
    /// fixed point is c-balanced for some c.
    Certified,
    /// Some non-dominant eigenvalue has modulus ≥ 1 − tol.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub verdict: BalanceVerdict,
    /// Coefficients of `det(xI − M)`, constant term first.
    pub characteristic_polynomial: Vec<i128>,
    /// Roots sorted by decreasing modulus; the first is the dominant one.
    #[serde(skip)]
    pub eigenvalues: Vec<Complex64>,
    pub dominant_modulus: f64,
    /// Largest modulus among the remaining roots (0 for a 1×1 matrix).
    pub subdominant_modulus: f64,
}

/// `det(xI − M)` by Faddeev–LeVerrier, exact over the integers. Constant term first.
pub fn characteristic_polynomial(m: &IncidenceMatrix) -> Vec<i128> {
    let n = m.size();
    let a: Vec<Vec<BigInt>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(&a, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
        .into_iter()
        .map(|c| {
            c.to_i128()
                .expect("characteristic polynomial coefficient overflows i128")
        })
        .collect()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// All complex roots of a monic polynomial (constant term first) by the
/// Durand–Kerner iteration.
pub(crate) fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 0.4 + k as f64 * std::f64::consts::TAU / n as f64;
            Complex64::from_polar(0.5 * radius, angle)
        })
        .collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    };
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if i != j {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if max_step < 1e-15 {
            return Ok(roots);
        }
    }
    // Clustered roots converge only linearly; accept if the residuals are tiny.
    let scale = monic.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    if roots
        .iter()
        .all(|&z| eval(z).norm() <= 1e-9 * scale * (1.0 + z.norm()).powi(n as i32))
    {
        Ok(roots)
    } else {
        Err(Error::NumericalFailure {
            iterations: MAX_ITERATIONS,
        })
    }
}

pub(crate) fn check(m: &IncidenceMatrix, tol: f64) -> Result<SpectralReport> {
    let poly = characteristic_polynomial(m);
    let coeffs: Vec<f64> = poly.iter().map(|&c| c as f64).collect();
    let mut eigenvalues = polynomial_roots(&coeffs)?;
    eigenvalues.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let dominant_modulus = eigenvalues.first().map_or(0.0, |z| z.norm());
    let subdominant_modulus = eigenvalues.get(1).map_or(0.0, |z| z.norm());
    let verdict = if subdominant_modulus < 1.0 - tol {
        BalanceVerdict::Certified
    } else {
        BalanceVerdict::Inconclusive
    };
    Ok(SpectralReport {
        verdict,
        characteristic_polynomial: poly,
        eigenvalues,
        dominant_modulus,
        subdominant_modulus,
    })
}
