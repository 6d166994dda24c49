//! First- and second-order Floquet perturbation theory: analytic coefficients,
//! the quadrature oracle and the special frequencies of each protocol.
//!
//! `cargo run --release --example fpt_coefficients`

use std::f64::consts::PI;

use pxp_floquet::drive::DriveProtocol;
use pxp_floquet::fpt::{analytic, j0_zero, oracle_result, special_frequencies};
use pxp_floquet::hamiltonians::PhysicalParams;

fn main() -> pxp_floquet::Result<()> {
    let (lambda0, w0, w1) = (20.0, 1.0, 1.0);
    println!("two-tone square drive, λ0 = {lambda0}, w0 = w1 = {w0}");
    println!(
        "{:>6} {:>24} {:>12} {:>12}",
        "γ/π", "c1 (analytic)", "c2", "c2 oracle"
    );
    for k in 0..=16 {
        let g = 0.5 + 0.25 * k as f64;
        let proto = DriveProtocol::two_tone(PhysicalParams::from_gamma(lambda0, w0, w1, g * PI)?);
        let c1 = analytic(&proto, 1)?.coefficient;
        let c2 = analytic(&proto, 2)?.coefficient.re;
        let o2 = oracle_result(&proto, 2)?.coefficient.re;
        println!(
            "{g:6.2} {:>11.6}{:+.6}i {c2:12.3e} {o2:12.3e}",
            c1.re, c1.im
        );
    }

    let base = DriveProtocol::two_tone(PhysicalParams::from_gamma(lambda0, w0, w1, 2.0 * PI)?);
    println!("\nspecial frequencies (H_F^(1) = 0):");
    for p in special_frequencies(&base, 4)? {
        println!("  m = {}: ω1 = {:.5}, T1 = {:.5}", p.index, p.omega1, p.t1);
    }

    println!("\ncosine drive: H_F^(1) ∝ J0(2λ0/ω1) vanishes at the Bessel zeros");
    for n in 1..=3 {
        let eta = j0_zero(n)?;
        let t1 = 2.0 * PI * eta / (2.0 * lambda0);
        let proto = DriveProtocol::cosine(PhysicalParams::new(lambda0, w0, w1, t1)?, 1);
        println!(
            "  η_{n} = {eta:.10}: |c1| = {:.2e}",
            analytic(&proto, 1)?.magnitude()
        );
    }

    println!("\nasymmetric drive at x = λ0T1/π = 10");
    let params = PhysicalParams::new(lambda0, w0, 0.0, 10.0 * PI / lambda0)?;
    for px in [1.0, 1.5, 2.0] {
        let proto = DriveProtocol::asymmetric(params, px / 10.0);
        let c1 = analytic(&proto, 1)?.magnitude();
        let c2 = analytic(&proto, 2)
            .map(|r| format!("{:.4e}", r.coefficient.re))
            .unwrap_or_else(|_| "n/a".into());
        println!("  px = {px}: |c1| = {c1:.3e}, c2 = {c2}");
    }
    Ok(())
}
