//! Numerical evaluation of the first- and second-order FPT integrals.
//!
//! Both orders reduce to scalar integrals over `θ(t) = ∫_0^t h`:
//! `F1 = ∫ w e^{2iθ}` and `I2 = ∬_{t2<t1} w(t1) w(t2) sin(2θ1 − 2θ2)`.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::drive::{DriveKind, DriveProtocol};
use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// The two scalar integrals `(F1, I2)` over one period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FptIntegrals {
    pub first: C64,
    pub second: f64,
}

/// Exact piecewise-analytic integrals for square drives.
pub fn square_integrals(protocol: &DriveProtocol) -> Result<FptIntegrals> {
    let mut theta = 0.0;
    let mut first = C64::new(0.0, 0.0);
    let mut second = 0.0;
    for (t0, t1, w, h) in protocol.pieces()? {
        let tau = t1 - t0;
        let x = 2.0 * h * tau;
        // ∫_0^τ e^{2ihu} du and ∫_0^τ (τ−u) sin(2hu) du, series-guarded near h = 0
        let (e, inner) = if x.abs() < 1e-4 {
            let e = C64::new(
                tau * (1.0 - x * x / 6.0),
                tau * (x / 2.0 - x * x * x / 24.0),
            );
            (e, tau * tau * (x / 6.0 - x * x * x / 120.0))
        } else {
            let two_h = 2.0 * h;
            let e = C64::new(x.sin(), 1.0 - x.cos()) / two_h;
            (e, (x - x.sin()) / (two_h * two_h))
        };
        let piece = w * C64::from_polar(1.0, 2.0 * theta) * e;
        // cross terms with all earlier pieces: Im(E_k conj(Σ_{l<k} E_l))
        second += (piece * first.conj()).im + w * w * inner;
        first += piece;
        theta += h * tau;
    }
    Ok(FptIntegrals { first, second })
}

/// Composite Gauss–Legendre evaluation of `(F1, I2)` for generic `w(t)`, `θ(t)`.
/// `I2` is computed in the nested form `∫ w1 [sin2θ1 C(t1) − cos2θ1 S(t1)]`
/// with `C, S = ∫_0^{t} w (cos, sin) 2θ`.
pub fn nested_integrals<W, T>(
    w: W,
    theta: T,
    period: f64,
    panels: usize,
    order: usize,
) -> FptIntegrals
where
    W: Fn(f64) -> f64,
    T: Fn(f64) -> f64,
{
    let (x, wt) = gauss_legendre(order);
    let hwidth = period / panels as f64;
    let mut acc = C64::new(0.0, 0.0);
    let mut second = 0.0;
    for k in 0..panels {
        let a = k as f64 * hwidth;
        for (xi, wi) in x.iter().zip(&wt) {
            let t1 = a + 0.5 * hwidth * (xi + 1.0);
            // partial panel [a, t1]
            let span = t1 - a;
            let mut part = C64::new(0.0, 0.0);
            for (xj, wj) in x.iter().zip(&wt) {
                let t2 = a + 0.5 * span * (xj + 1.0);
                part += 0.5 * span * wj * w(t2) * C64::from_polar(1.0, 2.0 * theta(t2));
            }
            let cs = acc + part;
            let th = 2.0 * theta(t1);
            let val = w(t1) * (th.sin() * cs.re - th.cos() * cs.im);
            second += 0.5 * hwidth * wi * val;
        }
        for (xi, wi) in x.iter().zip(&wt) {
            let t = a + 0.5 * hwidth * (xi + 1.0);
            acc += 0.5 * hwidth * wi * w(t) * C64::from_polar(1.0, 2.0 * theta(t));
        }
    }
    FptIntegrals { first: acc, second }
}

/// `θ(t)` of any protocol.
pub fn phase_integral(protocol: &DriveProtocol, t: f64) -> Result<f64> {
    let p = &protocol.params;
    match protocol.kind {
        DriveKind::CosineTwoTone { .. } => {
            let om = p.omega1();
            Ok(protocol.sign.factor() * p.lambda0 * (om * t).sin() / om)
        }
        _ => {
            let mut th = 0.0;
            for (t0, t1, _, h) in protocol.pieces()? {
                if t <= t0 {
                    break;
                }
                th += h * (t.min(t1) - t0);
            }
            Ok(th)
        }
    }
}

/// Adaptive evaluation: panels double until both integrals change by less
/// than `tol` relative to `max(1, |·|)`.
pub fn adaptive_integrals(protocol: &DriveProtocol, tol: f64) -> Result<FptIntegrals> {
    protocol.validate()?;
    let t = protocol.params.t1;
    let theta = |s: f64| phase_integral(protocol, s).expect("validated");
    let w = |s: f64| protocol.coupling(s);
    let scale = protocol.params.lambda0 * t / PI;
    let mut panels = ((4.0 * scale).ceil() as usize).max(4);
    let mut prev = nested_integrals(w, theta, t, panels, 16);
    for _ in 0..14 {
        panels *= 2;
        let next = nested_integrals(w, theta, t, panels, 16);
        let d1 = (next.first - prev.first).norm() / next.first.norm().max(1.0);
        let d2 = (next.second - prev.second).abs() / next.second.abs().max(1.0);
        if d1 < tol && d2 < tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence(
        "FPT quadrature did not converge".into(),
    ))
}
