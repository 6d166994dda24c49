//! The third XXZ charge lifted to the constrained chain commutes with the
//! second-order kernel; ‖[H_F, C3]‖ dips at γ = mπ.
//!
//! `cargo run --release --example third_charge -- 14`

use std::f64::consts::PI;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::{
    floquet_log_hamiltonian, floquet_operator, floquet_spectrum, DriveProtocol,
};
use pxp_floquet::hamiltonians::{build_third_charge_pxp, op_hf2_kernel, PhysicalParams};
use pxp_floquet::observables::commutator_norm;
use pxp_floquet::symmetry::{Sector, SectorBasis};
use pxp_floquet::xxzmap::xxz_charge_defect;

fn main() -> pxp_floquet::Result<()> {
    let l: usize = std::env::args()
        .nth(1)
        .map_or(14, |s| s.parse().expect("L"));
    println!(
        "‖[H_XXZ, C3_XXZ]‖ on 10 sites, N = 4: {:.1e}",
        xxz_charge_defect(10, 4, 1.0, -0.5)?
    );
    let sector = SectorBasis::new(&enumerate_basis(l, Boundary::Periodic)?, Sector::K0)?;
    let c3 = build_third_charge_pxp(&sector, 1.0, -0.5)?;
    println!(
        "L = {l}, K = 0, D_sec = {}: ‖[kernel, C3]‖ = {:.1e}",
        sector.dim(),
        commutator_norm(&op_hf2_kernel(&sector), &c3)?
    );
    for k in 0..=20 {
        let g = 1.9 + 0.01 * k as f64;
        let proto = DriveProtocol::two_tone(PhysicalParams::from_gamma(20.0, 1.0, 1.0, g * PI)?);
        let h = floquet_log_hamiltonian(&floquet_spectrum(
            &floquet_operator(&proto, &sector)?,
            proto.params.t1,
        )?);
        println!("  γ/π = {g:.2}: 𝒩 = {:.4}", commutator_norm(&h, &c3)?);
    }
    Ok(())
}
