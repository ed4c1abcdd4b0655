//! Symmetric tridiagonal eigenproblems.
//!
//! The lowest eigenvalue is isolated by Sturm-sequence bisection, then the
//! eigenvector is obtained by inverse iteration with a shift placed just below
//! the bracket. Because the shifted matrix is positive definite, the `LDLᵀ`
//! factorization needs no pivoting, and for matrices with non-positive
//! off-diagonals every iterate stays entrywise positive.
//!
//! [`dense_spectrum`] is an independent implicit-QL solver returning every
//! eigenvalue; it exists for validation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute bracket tolerance, scaled by `1 + ‖T‖∞`.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_INVERSE_ITERATIONS: usize = 50;
const MAX_DENSE_DIM: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSolution {
    pub value: f64,
    /// Unit 2-norm; first nonzero component positive.
    pub vector: Vec<f64>,
    /// Inverse-iteration steps taken.
    pub iterations: usize,
    /// `‖T v − λ v‖₂`.
    pub residual: f64,
}

fn check_shape(diag: &[f64], sub: &[f64]) -> Result<()> {
    if diag.is_empty() {
        return Err(Error::Contract("empty tridiagonal matrix".into()));
    }
    if sub.len() + 1 != diag.len() {
        return Err(Error::Contract(format!(
            "sub-diagonal length {} does not match diagonal length {}",
            sub.len(),
            diag.len()
        )));
    }
    if diag.iter().chain(sub).any(|v| !v.is_finite()) {
        return Err(Error::Contract("non-finite matrix entry".into()));
    }
    Ok(())
}

/// `‖T‖∞`, the maximum absolute row sum.
pub fn inf_norm(diag: &[f64], sub: &[f64]) -> f64 {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { sub[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { sub[i].abs() } else { 0.0 };
            diag[i].abs() + left + right
        })
        .fold(0.0, f64::max)
}

fn gershgorin(diag: &[f64], sub: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { sub[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { sub[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let pad = f64::EPSILON * (1.0 + lo.abs().max(hi.abs())) * 4.0;
    (lo - pad, hi + pad)
}

fn pivmin(sub: &[f64]) -> f64 {
    let max_sq = sub.iter().map(|e| e * e).fold(1.0, f64::max);
    f64::MIN_POSITIVE * max_sq
}

fn count_below(diag: &[f64], sub: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        // |q| >= pivmin bounds e²/q, so the recurrence cannot overflow.
        q = (diag[i] - x) - sub[i - 1] * sub[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Number of eigenvalues strictly below `x`, from the signs of the `LDLᵀ`
/// pivots of `T − xI`.
pub fn sturm_count(diag: &[f64], sub: &[f64], x: f64) -> Result<usize> {
    check_shape(diag, sub)?;
    if !x.is_finite() {
        return Err(Error::Contract(format!("non-finite Sturm shift {x}")));
    }
    Ok(count_below(diag, sub, x, pivmin(sub)))
}

/// Factor `T − σI = L D Lᵀ`. Returns `(d, l)` or `None` if a pivot is not
/// strictly positive.
fn ldlt_shifted(diag: &[f64], sub: &[f64], sigma: f64) -> Option<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut d = Vec::with_capacity(n);
    let mut l = Vec::with_capacity(n.saturating_sub(1));
    d.push(diag[0] - sigma);
    if !(d[0] > 0.0) {
        return None;
    }
    for i in 1..n {
        let li = sub[i - 1] / d[i - 1];
        let di = (diag[i] - sigma) - li * sub[i - 1];
        if !(di > 0.0) || !di.is_finite() {
            return None;
        }
        l.push(li);
        d.push(di);
    }
    Some((d, l))
}

fn ldlt_solve(d: &[f64], l: &[f64], rhs: &mut [f64]) {
    let n = d.len();
    for i in 1..n {
        rhs[i] -= l[i - 1] * rhs[i - 1];
    }
    for i in 0..n {
        rhs[i] /= d[i];
    }
    for i in (0..n - 1).rev() {
        rhs[i] -= l[i] * rhs[i + 1];
    }
}

fn mat_vec(diag: &[f64], sub: &[f64], v: &[f64]) -> Vec<f64> {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut acc = diag[i] * v[i];
            if i > 0 {
                acc += sub[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += sub[i] * v[i + 1];
            }
            acc
        })
        .collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn rayleigh(diag: &[f64], sub: &[f64], v: &[f64]) -> (f64, f64) {
    let tv = mat_vec(diag, sub, v);
    let rq: f64 = tv.iter().zip(v).map(|(a, b)| a * b).sum();
    let res = tv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - rq * b).powi(2))
        .sum::<f64>()
        .sqrt();
    (rq, res)
}

/// Positive, non-symmetric starting vectors; the second alternates signs in
/// case the first is orthogonal to the target.
fn start_vector(n: usize, attempt: usize) -> Vec<f64> {
    let golden = 0.618_033_988_749_895;
    (0..n)
        .map(|i| {
            let jitter = 1.0 + 0.5 * ((i as f64 + 1.0) * golden).fract();
            if attempt % 2 == 1 && i % 2 == 1 {
                -jitter
            } else {
                jitter
            }
        })
        .collect()
}

/// Lowest eigenpair of the symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `sub`.
///
/// The eigenvalue is accurate to `tol · (1 + ‖T‖∞)`; the returned value is
/// the Rayleigh quotient of the returned vector.
pub fn lowest_eigenpair(diag: &[f64], sub: &[f64], tol: f64) -> Result<EigenSolution> {
    check_shape(diag, sub)?;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Contract(format!("tolerance must be positive, got {tol}")));
    }
    let n = diag.len();
    if n == 1 {
        return Ok(EigenSolution {
            value: diag[0],
            vector: vec![1.0],
            iterations: 0,
            residual: 0.0,
        });
    }

    let norm = inf_norm(diag, sub);
    let scale = 1.0 + norm;
    let piv = pivmin(sub);

    // Invariant: count(lo) == 0, count(hi) >= 1.
    let (mut lo, mut hi) = gershgorin(diag, sub);
    let target = tol * scale;
    for _ in 0..256 {
        if hi - lo <= target {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, sub, mid, piv) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let slack = target + 8.0 * f64::EPSILON * scale;
    let mut delta = (hi - lo).max(f64::EPSILON * scale);
    let mut iterations = 0;
    let mut best: Option<(f64, Vec<f64>, f64)> = None;

    'attempts: for attempt in 0..6 {
        let sigma = lo - delta;
        let Some((d, l)) = ldlt_shifted(diag, sub, sigma) else {
            // Rounding put the shift on or above the lowest eigenvalue.
            delta *= 16.0;
            continue;
        };
        let mut v = start_vector(n, attempt);
        let nv = norm2(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        let mut prev_rq = f64::INFINITY;
        for _ in 0..MAX_INVERSE_ITERATIONS {
            iterations += 1;
            ldlt_solve(&d, &l, &mut v);
            let nv = norm2(&v);
            if !nv.is_finite() || nv == 0.0 {
                delta *= 16.0;
                continue 'attempts;
            }
            v.iter_mut().for_each(|x| *x /= nv);
            let (rq, res) = rayleigh(diag, sub, &v);
            let settled = (rq - prev_rq).abs() <= 4.0 * f64::EPSILON * scale;
            prev_rq = rq;
            if res <= 1e-14 * scale || settled {
                break;
            }
        }
        let (rq, res) = rayleigh(diag, sub, &v);
        if rq >= lo - slack && rq <= hi + slack {
            best = Some((rq, v, res));
            break;
        }
        // Converged to a higher eigenvalue: the start vector missed the target.
    }

    let (value, mut vector, residual) = best.ok_or_else(|| {
        Error::Contract("inverse iteration failed to converge to the lowest eigenvalue".into())
    })?;
    if let Some(first) = vector.iter().find(|x| **x != 0.0) {
        if *first < 0.0 {
            vector.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(EigenSolution {
        value,
        vector,
        iterations,
        residual,
    })
}

/// All eigenvalues in non-decreasing order by the implicit QL method with
/// Wilkinson shifts. Validation only; dimension is capped at 2000.
pub fn dense_spectrum(diag: &[f64], sub: &[f64]) -> Result<Vec<f64>> {
    check_shape(diag, sub)?;
    let n = diag.len();
    if n > MAX_DENSE_DIM {
        return Err(Error::Size(format!(
            "dense spectrum limited to dimension {MAX_DENSE_DIM}, got {n}"
        )));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = sub.iter().copied().chain(std::iter::once(0.0)).collect();

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::Contract("implicit QL did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}
