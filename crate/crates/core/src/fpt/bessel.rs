//! Bessel functions of the first kind for integer order.

use crate::error::{Error, Result};

/// `J_0(x), …, J_{nmax}(x)` by Miller's downward recurrence normalized with
/// `J_0 + 2 Σ_k J_{2k} = 1`. Absolute accuracy is ~1e-15 for |x| ≤ 50.
pub fn bessel_j_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    if ax < 1e-3 {
        for (n, o) in out.iter_mut().enumerate() {
            *o = series(n, ax);
        }
    } else {
        let big = nmax.max(ax as usize);
        let mut m = big + 20 + (40.0 * (big as f64 + 1.0)).sqrt() as usize;
        m += m % 2;
        let (mut jp1, mut j) = (0.0f64, 1e-300f64);
        let mut sum = 0.0;
        for k in (1..=m).rev() {
            let jm1 = 2.0 * k as f64 / ax * j - jp1;
            jp1 = j;
            j = jm1;
            if k - 1 <= nmax {
                out[k - 1] = j;
            }
            if (k - 1) % 2 == 0 && k - 1 > 0 {
                sum += 2.0 * j;
            }
            if j.abs() > 1e250 {
                j *= 1e-250;
                jp1 *= 1e-250;
                sum *= 1e-250;
                for o in out.iter_mut() {
                    *o *= 1e-250;
                }
            }
        }
        sum += j;
        for o in out.iter_mut() {
            *o /= sum;
        }
    }
    if x < 0.0 {
        for (n, o) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *o = -*o;
            }
        }
    }
    out
}

/// `J_n(x)` for any integer `n`, with `J_{−n} = (−1)^n J_n`.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let m = n.unsigned_abs() as usize;
    let v = bessel_j_all(m, x)[m];
    if n < 0 && m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Ascending power series `Σ_k (−1)^k (x/2)^{2k+n} / (k! (k+n)!)`.
pub fn series(n: usize, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= h / k as f64;
    }
    let mut sum = term;
    let h2 = h * h;
    for k in 1..500 {
        term *= -h2 / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// The `n`-th positive zero of `J_0` (1-based), bracketed around McMahon's
/// estimate and refined by bisection.
pub fn j0_zero(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("zeros are numbered from 1".into()));
    }
    let beta = (n as f64 - 0.25) * std::f64::consts::PI;
    let guess = beta + 1.0 / (8.0 * beta);
    let f = |x: f64| bessel_j(0, x);
    let (mut lo, mut hi) = (guess - 0.3, guess + 0.3);
    if f(lo) * f(hi) > 0.0 {
        return Err(Error::NoConvergence(format!("J0 zero {n} not bracketed")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
