//! Stroboscopic M^z(n) from |vac⟩ and |AFM⟩, its diagonal-ensemble value and
//! the thermalization time.
//!
//! `cargo run --release --example magnetization_dynamics -- 16`

use std::f64::consts::PI;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::{floquet_operator, floquet_spectrum, DriveProtocol};
use pxp_floquet::hamiltonians::{op_sigma_z_total, PhysicalParams};
use pxp_floquet::observables::{
    diagonal_ensemble, ite_average, magnetization_series, thermalization_time,
    THERMALIZATION_HORIZON,
};
use pxp_floquet::symmetry::{Sector, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let l: usize = std::env::args()
        .nth(1)
        .map_or(16, |s| s.parse().expect("L"));
    let sector = SectorBasis::new(&enumerate_basis(l, Boundary::Periodic)?, Sector::K0_EVEN)?;
    let z = op_sigma_z_total(&sector);
    let neel = (0..l).step_by(2).fold(0u32, |w, j| w | (1 << j));
    let ns: Vec<u64> = (0..=12)
        .map(|k| 10u64.pow(k / 2) * if k % 2 == 1 { 3 } else { 1 })
        .collect();
    println!("L = {l}, ITE M^z = {:.4}", ite_average(&z));
    for g in [2.0, 1.9] {
        let proto = DriveProtocol::two_tone(PhysicalParams::from_gamma(20.0, 1.0, 1.0, g * PI)?);
        let spec = floquet_spectrum(&floquet_operator(&proto, &sector)?, proto.params.t1)?;
        for (name, word) in [("vac", 0), ("afm", neel)] {
            let psi = sector.product_state(word)?;
            let m = magnetization_series(&spec, &psi, &z, &ns)?;
            let de = diagonal_ensemble(&spec, &psi, &z)?;
            // relative band: only meaningful when M^z(0) is nonzero
            let tau = if word == 0 {
                format!(
                    ", 5% departure {:?}",
                    thermalization_time(&spec, &psi, &z, 0.05, THERMALIZATION_HORIZON)?
                )
            } else {
                String::new()
            };
            println!("γ/π = {g}, {name}: DE = {de:.4}{tau}");
            let line: Vec<String> =
                m.n.iter()
                    .zip(&m.values)
                    .map(|(n, v)| format!("{n}:{v:.3}"))
                    .collect();
            println!("  {}", line.join("  "));
        }
    }
    Ok(())
}
