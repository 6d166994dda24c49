//! Floquet perturbation theory in the large-detuning limit.
//!
//! Every result is a scalar times a fixed kernel: order 1 is
//! `c σ̃⁺ + c* σ̃⁻` and order 2 is `n · [σ̃⁺, σ̃⁻]`.

pub mod bessel;
pub mod quadrature;

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::drive::{DriveKind, DriveProtocol};
use crate::error::{Error, Result};
use crate::hamiltonians::{
    op_hf2_kernel, op_sigma_plus_tilde, DetuningSign, OperatorMatrix, PhysicalParams, WorkingBasis,
};

pub use bessel::{bessel_j, bessel_j_all, j0_zero};
pub use quadrature::{adaptive_integrals, square_integrals, FptIntegrals};

/// Operator kernel an [`FptResult`] coefficient multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FptKernel {
    /// `c Σσ̃⁺ + c* Σσ̃⁻`
    RaisingPlusHc,
    /// `c · [Σσ̃⁺, Σσ̃⁻]` with real `c`
    Hf2,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FptResult {
    pub order: u8,
    pub coefficient: C64,
    pub kernel: FptKernel,
    pub protocol: DriveKind,
    pub sign: DetuningSign,
}

impl FptResult {
    fn first(protocol: &DriveProtocol, c: C64) -> Self {
        FptResult {
            order: 1,
            coefficient: c,
            kernel: FptKernel::RaisingPlusHc,
            protocol: protocol.kind,
            sign: protocol.sign,
        }
    }

    fn second(protocol: &DriveProtocol, c: f64) -> Self {
        FptResult {
            order: 2,
            coefficient: C64::new(c, 0.0),
            kernel: FptKernel::Hf2,
            protocol: protocol.kind,
            sign: protocol.sign,
        }
    }

    /// Magnitude of the coefficient (the operator norm scale).
    pub fn magnitude(&self) -> f64 {
        self.coefficient.norm()
    }

    pub fn matrix(&self, basis: &dyn WorkingBasis) -> Result<OperatorMatrix> {
        match self.kernel {
            FptKernel::RaisingPlusHc => {
                let sp = op_sigma_plus_tilde(basis);
                let data = sp.data.mapv(|z| z * self.coefficient);
                let herm = &data + &crate::linalg::dagger(&data);
                OperatorMatrix::new(herm, sp.tag, true)
            }
            FptKernel::Hf2 => Ok(op_hf2_kernel(basis).scaled(self.coefficient.re)),
        }
    }
}

/// `sin x / x` without the removable singularity.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    }
}

/// Phase `e^{±iγ}` carried by `σ̃⁺` in the first-order square result.
fn square_phase(gamma: f64, sign: DetuningSign) -> C64 {
    C64::from_polar(1.0, sign.factor() * gamma)
}

/// First order for the square two-tone drive: `c = w0 sinc(γ) e^{±iγ}`.
/// The `w1` modulation integrates to zero for odd `q`.
pub fn hf1_square(params: &PhysicalParams, sign: DetuningSign) -> FptResult {
    let gamma = params.gamma();
    let mut c = params.w0 * sinc(gamma) * square_phase(gamma, sign);
    // exact zero at γ = mπ instead of rounding noise from sin(mπ)
    let m = (gamma / PI).round();
    if m >= 1.0 && (gamma - m * PI).abs() < 1e-14 * gamma {
        c = C64::new(0.0, 0.0);
    }
    let proto = DriveProtocol::two_tone(*params).with_sign(sign);
    FptResult::first(&proto, c)
}

/// `A(α) = (6/α)[2 sin(α/6) − 2 sin(α/3) + sin(α/2)] − 1`, `α = 4γ`.
pub fn a_coeff(gamma: f64) -> f64 {
    let a = 4.0 * gamma;
    if a.abs() < 1e-2 {
        // Taylor series; the closed form loses digits to cancellation here
        let a2 = a * a;
        return -13.0 / 216.0 * a2 + 0.001_163_837_448_559_670_8 * a2 * a2;
    }
    6.0 / a * (2.0 * (a / 6.0).sin() - 2.0 * (a / 3.0).sin() + (a / 2.0).sin()) - 1.0
}

/// `N(γ) = w0 w1 A(γ) / (3 λ0)`.
pub fn n_gamma(params: &PhysicalParams) -> f64 {
    params.w0 * params.w1 * a_coeff(params.gamma()) / (3.0 * params.lambda0)
}

/// Second order for the square two-tone drive at `q = 3`:
/// `∓N(γ)·kernel` for the `∓λ0σ^z` detuning convention.
pub fn hf2_square(params: &PhysicalParams, sign: DetuningSign) -> FptResult {
    let proto = DriveProtocol::two_tone(*params).with_sign(sign);
    FptResult::second(&proto, sign.factor() * n_gamma(params))
}

/// First order for the cosine drive: `w0 J0(z1) Σσ̃^x`.
pub fn hf1_cosine(params: &PhysicalParams, harmonic: usize, sign: DetuningSign) -> FptResult {
    let proto = DriveProtocol::cosine(*params, harmonic).with_sign(sign);
    FptResult::first(&proto, C64::new(params.w0 * bessel_j(0, params.z1()), 0.0))
}

/// `I2(T1)` for the cosine drive from its double Bessel series.
pub fn i2_cosine(params: &PhysicalParams, harmonic: usize, sign: DetuningSign) -> Result<f64> {
    params.validate()?;
    let z = params.z1();
    let om = params.omega1();
    let t = params.t1;
    let (w0, w1) = (params.w0, params.w1);
    let p = harmonic as i64;
    let nmax = (z.abs() as usize + 2 * harmonic + 80).max(120);
    let jv = bessel_j_all(2 * nmax + 2 * harmonic + 4, z);
    let j = |n: i64| -> f64 {
        let m = n.unsigned_abs() as usize;
        let v = jv[m];
        if n < 0 && m % 2 == 1 {
            -v
        } else {
            v
        }
    };
    let j0 = j(0);

    let mut s_a = 0.0; // Σ J_{2n+1}/(2n+1)
    let mut s_b = 0.0; // Σ J_{2n+1}/(2(n+p+1))
    let mut s_c = 0.0; // Σ_{n≠p} J_{2n+1}/(2(n−p))
    let mut s_d = 0.0; // Σ (1/(2n+1) + 1/(2(n+p+1))) J_{2n+1} J_{2n+2p+2}
    let mut s_e = 0.0; // Σ_{n≠p} (1/(2n+1) + 1/(2(n−p))) J_{2n+1} J_{2n−2p}
    let mut small = 0;
    let mut converged = false;
    for n in 0..nmax as i64 {
        let jn = j(2 * n + 1);
        let inv = 1.0 / (2 * n + 1) as f64;
        let ta = jn * inv;
        let tb = jn / (2 * (n + p + 1)) as f64;
        let td = (inv + 1.0 / (2 * (n + p + 1)) as f64) * jn * j(2 * n + 2 * p + 2);
        let (tc, te) = if n == p {
            (0.0, 0.0)
        } else {
            let d = 1.0 / (2 * (n - p)) as f64;
            (jn * d, (inv + d) * jn * j(2 * n - 2 * p))
        };
        s_a += ta;
        s_b += tb;
        s_c += tc;
        s_d += td;
        s_e += te;
        let biggest = [ta, tb, tc, td, te]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if n > p && jn.abs() < 1e-15 && biggest < 1e-15 {
            small += 1;
            if small >= 3 {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "cosine I2 series at z1 = {z}"
        )));
    }
    let pf = p as f64;
    let here = -(4.0 * w0 * w0 * t / om) * j0 * s_a
        + (2.0 * w0 * w1 * t / om) * j0 * (j(2 * p + 1) / (2.0 * pf + 1.0) - s_b - s_c)
        + (2.0 * w0 * w1 * t / om) * (s_d + s_e);
    // the series is written for the +λσ^z convention; the other flips θ
    Ok(match sign {
        DetuningSign::Plus => here,
        DetuningSign::Minus => -here,
    })
}

/// Second order for the cosine drive, `(I2/T1)·kernel`.
pub fn hf2_cosine(
    params: &PhysicalParams,
    harmonic: usize,
    sign: DetuningSign,
) -> Result<FptResult> {
    let i2 = i2_cosine(params, harmonic, sign)?;
    let proto = DriveProtocol::cosine(*params, harmonic).with_sign(sign);
    Ok(FptResult::second(&proto, i2 / params.t1))
}

/// Closed-form coefficients of the asymmetric single-tone drive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymCoefficients {
    /// `C_+^(1)`, `C_−^(1)`
    pub c1: [C64; 2],
    /// `C^(2)_{++}`, `C^(2)_{−−}`
    pub c2_same: [C64; 2],
    /// `C^(2)_{+−}`, `C^(2)_{−+}`
    pub c2_opposite: [C64; 2],
}

pub fn asym_coefficients(params: &PhysicalParams, p: f64) -> Result<AsymCoefficients> {
    params.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "duty fraction p = {p} outside (0, 1)"
        )));
    }
    let (l, t) = (params.lambda0, params.t1);
    let e = |phase: f64| C64::from_polar(1.0, phase);
    let i = C64::new(0.0, 1.0);
    let c1 = |s: f64| {
        (2.0 * i * s / l)
            * (1.0 - 2.0 * e(2.0 * l * s * p * t) + e(2.0 * l * s * (2.0 * p - 1.0) * t))
    };
    let pre = -1.0 / (8.0 * l * l);
    let same = |s: f64| {
        pre * (1.0 - 2.0 * e(2.0 * p * s * t * l)
            + 2.0 * e(4.0 * p * s * t * l)
            + e(4.0 * (2.0 * p - 1.0) * s * t * l)
            - 2.0 * e(2.0 * (3.0 * p - 1.0) * s * t * l))
    };
    let opposite = |s: f64| {
        pre * (-2.0 + e(2.0 * (1.0 - p) * s * t * l) + e(2.0 * p * s * t * l)
            - 2.0 * i * l * t * (2.0 * p - 1.0))
    };
    Ok(AsymCoefficients {
        c1: [c1(1.0), c1(-1.0)],
        c2_same: [same(1.0), same(-1.0)],
        c2_opposite: [opposite(1.0), opposite(-1.0)],
    })
}

/// First order for the asymmetric drive, `(w0/4T1)(C_+σ̃⁺ + C_−σ̃⁻)` under the
/// default convention and the conjugate assignment under the other.
pub fn hf1_asymmetric(params: &PhysicalParams, p: f64, sign: DetuningSign) -> Result<FptResult> {
    let c = asym_coefficients(params, p)?;
    let on_plus = match sign {
        DetuningSign::Minus => c.c1[0],
        DetuningSign::Plus => c.c1[1],
    };
    let proto = DriveProtocol::asymmetric(*params, p).with_sign(sign);
    Ok(FptResult::first(
        &proto,
        params.w0 / (4.0 * params.t1) * on_plus,
    ))
}

/// Integers `(m1, m2)` with `λ0T1(2p−1) = m1π` and `λ0T1p = m2π`, if `p`
/// sits on a special point to within `tol`.
pub fn asym_special_indices(params: &PhysicalParams, p: f64, tol: f64) -> Option<(i64, i64)> {
    let x = params.lambda0 * params.t1 / PI;
    let m1 = x * (2.0 * p - 1.0);
    let m2 = x * p;
    if (m1 - m1.round()).abs() < tol && (m2 - m2.round()).abs() < tol {
        Some((m1.round() as i64, m2.round() as i64))
    } else {
        None
    }
}

/// `𝒩_1 = −w0² π m1 / (4 T1 λ0²)`.
pub fn asym_n1(params: &PhysicalParams, m1: i64) -> f64 {
    -params.w0 * params.w0 * PI * m1 as f64 / (4.0 * params.t1 * params.lambda0 * params.lambda0)
}

/// Second order for the asymmetric drive at a special point, where the first
/// order vanishes: `∓2𝒩_1·kernel` for the `∓λ0σ^z` convention.
pub fn hf2_asymmetric(params: &PhysicalParams, p: f64, sign: DetuningSign) -> Result<FptResult> {
    asym_coefficients(params, p)?;
    let (m1, _) = asym_special_indices(params, p, 1e-9).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "p = {p} is not a special point of the asymmetric drive"
        ))
    })?;
    let proto = DriveProtocol::asymmetric(*params, p).with_sign(sign);
    Ok(FptResult::second(
        &proto,
        sign.factor() * 2.0 * asym_n1(params, m1),
    ))
}

/// Closed-form result for any protocol at the given order.
pub fn analytic(protocol: &DriveProtocol, order: u8) -> Result<FptResult> {
    protocol.validate()?;
    let (params, sign) = (&protocol.params, protocol.sign);
    match (protocol.kind, order) {
        (
            DriveKind::SquareTwoTone {
                q: 3,
                w1_sign_flip: false,
            },
            1,
        ) => Ok(hf1_square(params, sign)),
        (
            DriveKind::SquareTwoTone {
                q: 3,
                w1_sign_flip: false,
            },
            2,
        ) => Ok(hf2_square(params, sign)),
        (DriveKind::SquareTwoTone { .. }, 1) => {
            let mut r = hf1_square(params, sign);
            r.protocol = protocol.kind;
            Ok(r)
        }
        (DriveKind::SquareAsymmetric { p }, 1) => hf1_asymmetric(params, p, sign),
        (DriveKind::SquareAsymmetric { p }, 2) => hf2_asymmetric(params, p, sign),
        (DriveKind::CosineTwoTone { harmonic }, 1) => Ok(hf1_cosine(params, harmonic, sign)),
        (DriveKind::CosineTwoTone { harmonic }, 2) => hf2_cosine(params, harmonic, sign),
        (kind, o) => Err(Error::InvalidArgument(format!(
            "no closed form at order {o} for {kind:?}"
        ))),
    }
}

/// Scalar coefficient of the order-1 or order-2 result from numerical
/// integration of the interaction-picture coupling.
pub fn oracle_result(protocol: &DriveProtocol, order: u8) -> Result<FptResult> {
    let ints = if protocol.is_square() {
        square_integrals(protocol)?
    } else {
        adaptive_integrals(protocol, 1e-12)?
    };
    let t = protocol.params.t1;
    match order {
        1 => Ok(FptResult::first(protocol, ints.first / t)),
        2 => Ok(FptResult::second(protocol, ints.second / t)),
        o => Err(Error::InvalidArgument(format!("order {o} not available"))),
    }
}

/// Oracle `H_F^(order)` assembled on `basis`.
pub fn fpt_quadrature_oracle(
    protocol: &DriveProtocol,
    order: u8,
    basis: &dyn WorkingBasis,
) -> Result<OperatorMatrix> {
    oracle_result(protocol, order)?.matrix(basis)
}

/// A frequency at which the first-order result vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub index: usize,
    pub omega1: f64,
    pub t1: f64,
    /// Duty fraction for the asymmetric drive.
    pub p: Option<f64>,
}

/// The first `count` special points. For the asymmetric drive the period is
/// kept (with `x = λ0T1/π` rounded to an integer) and `p = m2/x` is returned
/// for `m2 = 1, …, x − 1`.
pub fn special_frequencies(protocol: &DriveProtocol, count: usize) -> Result<Vec<SpecialPoint>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let l = protocol.params.lambda0;
    let point = |index: usize, omega1: f64, p: Option<f64>| SpecialPoint {
        index,
        omega1,
        t1: 2.0 * PI / omega1,
        p,
    };
    match protocol.kind {
        DriveKind::SquareTwoTone { .. } => {
            Ok((1..=count).map(|m| point(m, l / m as f64, None)).collect())
        }
        DriveKind::CosineTwoTone { .. } => (1..=count)
            .map(|n| Ok(point(n, 2.0 * l / j0_zero(n)?, None)))
            .collect(),
        DriveKind::SquareAsymmetric { .. } => {
            let x = (l * protocol.params.t1 / PI).round().max(2.0) as usize;
            let t1 = x as f64 * PI / l;
            Ok((1..x)
                .take(count)
                .map(|m2| SpecialPoint {
                    index: m2,
                    omega1: 2.0 * PI / t1,
                    t1,
                    p: Some(m2 as f64 / x as f64),
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{enumerate_basis, Boundary};
    use crate::linalg;

    fn two_tone(gamma: f64, w0: f64, w1: f64, sign: DetuningSign) -> DriveProtocol {
        DriveProtocol::two_tone(PhysicalParams::from_gamma(20.0, w0, w1, gamma).unwrap())
            .with_sign(sign)
    }

    #[test]
    fn first_order_square_examples() {
        let p = PhysicalParams::from_gamma(20.0, 1.3, 1.0, PI / 2.0).unwrap();
        let r = hf1_square(&p, DetuningSign::Plus);
        assert!((r.coefficient - C64::new(0.0, 2.0 * 1.3 / PI)).norm() < 1e-14);
        for m in 1..=4 {
            let p = PhysicalParams::from_gamma(20.0, 1.0, 1.0, m as f64 * PI).unwrap();
            assert_eq!(hf1_square(&p, DetuningSign::Minus).magnitude(), 0.0);
        }
        let p = PhysicalParams::from_gamma(20.0, 0.9, 1.0, 1e-9).unwrap();
        assert!((hf1_square(&p, DetuningSign::Minus).coefficient.re - 0.9).abs() < 1e-12);
    }

    #[test]
    fn first_order_matches_oracle_on_grid() {
        for sign in [DetuningSign::Minus, DetuningSign::Plus] {
            for k in 0..50 {
                let gamma = 0.05 + 0.13 * k as f64;
                let proto = two_tone(gamma, 1.0, 0.7, sign);
                let a = analytic(&proto, 1).unwrap();
                let o = oracle_result(&proto, 1).unwrap();
                assert!((a.coefficient - o.coefficient).norm() < 1e-12, "γ={gamma}");
            }
        }
    }

    #[test]
    fn a_coefficient_examples() {
        let s3 = 3f64.sqrt();
        assert!((a_coeff(2.0 * PI) - (-3.0 * s3 / (2.0 * PI) - 1.0)).abs() < 1e-13);
        assert!((a_coeff(PI) - (3.0 * s3 / PI - 1.0)).abs() < 1e-13);
        assert!(a_coeff(1e-9).abs() < 1e-15);
        // series and closed form agree across the switch
        let g: f64 = 0.0025 * 1.0001;
        let a = 4.0 * g;
        let closed =
            6.0 / a * (2.0 * (a / 6.0).sin() - 2.0 * (a / 3.0).sin() + (a / 2.0).sin()) - 1.0;
        assert!((a_coeff(g) - closed).abs() < 1e-12);
        let p = PhysicalParams::from_gamma(20.0, 1.0, 1.0, 2.0 * PI).unwrap();
        assert!((n_gamma(&p) + 0.030_450).abs() < 1e-5);
    }

    #[test]
    fn second_order_matches_oracle_on_grid() {
        for sign in [DetuningSign::Minus, DetuningSign::Plus] {
            for k in 0..60 {
                let gamma = 0.004 + 0.11 * k as f64;
                let proto = two_tone(gamma, 1.0, 1.0, sign);
                let a = analytic(&proto, 2).unwrap().coefficient.re;
                let o = oracle_result(&proto, 2).unwrap().coefficient.re;
                assert!(
                    (a - o).abs() < 1e-10 * o.abs().max(1e-6),
                    "γ={gamma} {a} {o}"
                );
            }
        }
        let p = PhysicalParams::from_gamma(20.0, 1.0, 0.0, 1.7).unwrap();
        assert_eq!(hf2_square(&p, DetuningSign::Minus).coefficient.re, 0.0);
    }

    #[test]
    fn second_order_frozen_values() {
        // values of the oracle under the +λσ^z convention, λ0 = 20, w0 = w1 = 1
        for (gamma, want) in [(0.7 * PI, -0.009_593_8), (2.37, -0.005_726_7)] {
            let p = PhysicalParams::from_gamma(20.0, 1.0, 1.0, gamma).unwrap();
            let got = hf2_square(&p, DetuningSign::Plus).coefficient.re;
            assert!((got - want).abs() < 5e-7, "γ={gamma}: {got}");
        }
    }

    #[test]
    fn cosine_first_order() {
        let l = 20.0;
        for n in 1..=3 {
            let om = 2.0 * l / j0_zero(n).unwrap();
            let p = PhysicalParams::new(l, 1.0, 1.0, 2.0 * PI / om).unwrap();
            assert!(hf1_cosine(&p, 1, DetuningSign::Minus).magnitude() < 1e-10);
        }
        let p = PhysicalParams::new(0.5, 2.0, 1.0, 2.0 * PI).unwrap();
        assert!(
            (hf1_cosine(&p, 1, DetuningSign::Plus).coefficient.re - 2.0 * 0.765_197_686_557_966_6)
                .abs()
                < 1e-14
        );
        for sign in [DetuningSign::Minus, DetuningSign::Plus] {
            for k in 0..10 {
                let p = PhysicalParams::new(1.0 + 0.9 * k as f64, 1.0, 0.6, 2.0 * PI).unwrap();
                let proto = DriveProtocol::cosine(p, 1).with_sign(sign);
                let a = analytic(&proto, 1).unwrap().coefficient;
                let o = oracle_result(&proto, 1).unwrap().coefficient;
                assert!((a - o).norm() < 1e-10, "{a} {o}");
            }
        }
    }

    #[test]
    fn cosine_series_matches_frozen_and_oracle() {
        let eta1 = j0_zero(1).unwrap();
        // (z1, w0, w1, p_h) → I2 with ω1 = 1 under the +λσ^z convention
        let table = [
            (3.0, 1.0, 0.0, 1usize, 2.948_039_715_733_8),
            (3.0, 1.0, 1.0, 1, 4.540_191_069_011_88),
            (1.3, 1.0, 1.0, 0, -4.679_556_887_741_0),
            (eta1, 1.0, 1.0, 1, 2.003_034_319_141_6),
            (3.0, 1.0, 1.0, 2, 2.642_691_456_191_6),
        ];
        for (z, w0, w1, ph, want) in table {
            let p = PhysicalParams::new(z / 2.0, w0, w1, 2.0 * PI).unwrap();
            let series = i2_cosine(&p, ph, DetuningSign::Plus).unwrap();
            assert!(
                (series - want).abs() < 1e-10,
                "z={z} p={ph}: {series} vs {want}"
            );
            let proto = DriveProtocol::cosine(p, ph).with_sign(DetuningSign::Plus);
            let quad = adaptive_integrals(&proto, 1e-13).unwrap().second;
            assert!((series - quad).abs() < 1e-8, "{series} {quad}");
            let flipped = i2_cosine(&p, ph, DetuningSign::Minus).unwrap();
            assert_eq!(flipped, -series);
        }
    }

    #[test]
    fn cosine_w1_free_series_is_first_line() {
        let p = PhysicalParams::new(2.2, 0.7, 0.0, 2.0 * PI / 1.7).unwrap();
        let z = p.z1();
        let sum: f64 = (0..80)
            .map(|n| bessel_j(2 * n + 1, z) / (2 * n + 1) as f64)
            .sum();
        let want = -(4.0 * 0.49 * p.t1 / p.omega1()) * bessel_j(0, z) * sum;
        assert!((i2_cosine(&p, 1, DetuningSign::Plus).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn asymmetric_coefficients() {
        // p = 1/2 with λ0T1 = 2πm
        let p = PhysicalParams::new(20.0, 1.0, 0.0, 2.0 * PI * 3.0 / 20.0).unwrap();
        let c = asym_coefficients(&p, 0.5).unwrap();
        assert!(c.c1[0].norm() < 1e-13 && c.c1[1].norm() < 1e-13);
        let p = PhysicalParams::new(20.0, 1.0, 0.0, 10.0 * PI / 20.0).unwrap();
        for m2 in 1..10 {
            let pp = m2 as f64 / 10.0;
            let c = asym_coefficients(&p, pp).unwrap();
            assert!(c.c1[0].norm() < 1e-12 && c.c1[1].norm() < 1e-12, "p={pp}");
            assert!(c.c2_same[0].norm() < 1e-12 && c.c2_same[1].norm() < 1e-12);
            let (m1, _) = asym_special_indices(&p, pp, 1e-9).unwrap();
            let want = C64::new(0.0, m1 as f64 * PI / (4.0 * 400.0));
            assert!(
                (c.c2_opposite[0] - want).norm() < 1e-12,
                "{:?}",
                c.c2_opposite
            );
        }
    }

    #[test]
    fn asymmetric_orders_match_oracle() {
        for sign in [DetuningSign::Minus, DetuningSign::Plus] {
            for k in 0..50 {
                let t1 = 0.07 + 0.031 * k as f64;
                let p = PhysicalParams::new(20.0, 1.0, 0.0, t1).unwrap();
                let proto = DriveProtocol::asymmetric(p, 0.1 + 0.015 * k as f64).with_sign(sign);
                let a = analytic(&proto, 1).unwrap().coefficient;
                let o = oracle_result(&proto, 1).unwrap().coefficient;
                assert!((a - o).norm() < 1e-9 * o.norm().max(1.0), "{a} {o}");
            }
            let p = PhysicalParams::new(20.0, 1.0, 0.0, 10.0 * PI / 20.0).unwrap();
            for m2 in 1..10 {
                let proto = DriveProtocol::asymmetric(p, m2 as f64 / 10.0).with_sign(sign);
                let a = analytic(&proto, 2).unwrap().coefficient.re;
                let o = oracle_result(&proto, 2).unwrap().coefficient.re;
                assert!((a - o).abs() < 1e-12, "p={} {a} {o}", m2 as f64 / 10.0);
            }
            let proto = DriveProtocol::asymmetric(p, 0.1).with_sign(sign);
            let a = analytic(&proto, 2).unwrap().coefficient.re;
            assert!((a.abs() - 0.02).abs() < 1e-14);
        }
    }

    #[test]
    fn special_frequency_lists() {
        let p = PhysicalParams::new(20.0, 1.0, 1.0, 0.3).unwrap();
        let sq = special_frequencies(&DriveProtocol::two_tone(p), 3).unwrap();
        assert_eq!(sq[1].omega1, 10.0);
        let cs = special_frequencies(&DriveProtocol::cosine(p, 1), 1).unwrap();
        assert!((cs[0].omega1 - 40.0 / 2.404_825_557_695_773).abs() < 1e-12);
        let p = PhysicalParams::new(20.0, 1.0, 0.0, 10.0 * PI / 20.0).unwrap();
        let asym = special_frequencies(&DriveProtocol::asymmetric(p, 0.3), 3).unwrap();
        let ps: Vec<f64> = asym.iter().map(|s| s.p.unwrap()).collect();
        assert_eq!(ps, vec![0.1, 0.2, 0.3]);
        assert!(special_frequencies(&DriveProtocol::two_tone(p), 0).is_err());
    }

    #[test]
    fn matrices_are_hermitian_and_match_kernels() {
        let basis = enumerate_basis(8, Boundary::Periodic).unwrap();
        let proto = two_tone(0.9, 1.0, 1.0, DetuningSign::Minus);
        for order in [1, 2] {
            let m = fpt_quadrature_oracle(&proto, order, &basis).unwrap();
            assert!(linalg::hermiticity_defect(&m.data) < 1e-14);
            let a = analytic(&proto, order).unwrap().matrix(&basis).unwrap();
            assert!(linalg::frobenius_diff(&a.data, &m.data) < 1e-10 * m.frobenius().max(1.0));
        }
        // a real coefficient reproduces w0 sinc Σσ̃^x
        let r = hf1_cosine(
            &PhysicalParams::new(0.5, 1.0, 1.0, 2.0 * PI).unwrap(),
            0,
            DetuningSign::Minus,
        );
        let x = crate::hamiltonians::op_sigma_x_tilde(&basis).scaled(r.coefficient.re);
        assert!(linalg::frobenius_diff(&r.matrix(&basis).unwrap().data, &x.data) < 1e-13);
    }
}
