//! Window-averaged spectral form factor 𝒦(n) at the special point and at a
//! generic frequency.
//!
//! `cargo run --release --example spectral_form_factor -- 16`

use std::f64::consts::PI;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::DriveProtocol;
use pxp_floquet::hamiltonians::PhysicalParams;
use pxp_floquet::observables::sff_averaged;
use pxp_floquet::symmetry::{Sector, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let l: usize = std::env::args()
        .nth(1)
        .map_or(16, |s| s.parse().expect("L"));
    let sector = SectorBasis::new(&enumerate_basis(l, Boundary::Periodic)?, Sector::K0_EVEN)?;
    let d = sector.dim() as f64;
    let window: Vec<f64> = (0..20).map(|i| 0.95 + 0.1 * i as f64 / 19.0).collect();
    let ns: Vec<u64> = (0..=40)
        .map(|k| (10f64.powf(k as f64 / 10.0)).round() as u64)
        .collect();
    println!("L = {l}, D_sec = {d}, 1/D = {:.3e}", 1.0 / d);
    for g in [2.0, 2.0 / 3.0] {
        let proto = DriveProtocol::two_tone(PhysicalParams::from_gamma(20.0, 1.0, 1.0, g * PI)?);
        let k = sff_averaged(&proto, &sector, &ns, &window)?;
        let dip =
            k.n.iter()
                .zip(&k.values)
                .find(|(_, &v)| v <= 2.0 / d)
                .map(|(n, _)| *n);
        println!("γ/π = {g:.4}: first n with 𝒦 ≤ 2/D: {dip:?}");
        for (n, v) in k.n.iter().zip(&k.values).step_by(4) {
            println!("  n = {n:6}  𝒦·D = {:.3}", v * d);
        }
    }
    Ok(())
}
