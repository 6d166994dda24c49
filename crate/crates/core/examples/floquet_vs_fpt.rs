//! Exact Floquet Hamiltonian `(i/T) log U` against its FPT expansion at the
//! special point γ = 2π; the residual shrinks as w³/λ0².
//!
//! `cargo run --release --example floquet_vs_fpt -- 12`

use std::f64::consts::PI;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::{
    floquet_log_hamiltonian, floquet_operator, floquet_spectrum, DriveProtocol,
};
use pxp_floquet::fpt::{hf1_square, hf2_square};
use pxp_floquet::hamiltonians::PhysicalParams;
use pxp_floquet::symmetry::{Sector, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let l: usize = std::env::args()
        .nth(1)
        .map_or(12, |s| s.parse().expect("L"));
    let sector = SectorBasis::new(&enumerate_basis(l, Boundary::Periodic)?, Sector::K0_EVEN)?;
    println!("L = {l}, D_sec = {}", sector.dim());
    println!(
        "{:>6} {:>5} {:>12} {:>12} {:>12}",
        "λ0", "w", "‖H_F‖", "‖H_F−H2‖/‖H2‖", "residual"
    );
    for lambda0 in [10.0, 20.0, 40.0] {
        for w in [1.0, 0.5] {
            let proto =
                DriveProtocol::two_tone(PhysicalParams::from_gamma(lambda0, w, w, 2.0 * PI)?);
            let spec = floquet_spectrum(&floquet_operator(&proto, &sector)?, proto.params.t1)?;
            let h = floquet_log_hamiltonian(&spec);
            let h1 = hf1_square(&proto.params, proto.sign).matrix(&sector)?;
            let h2 = hf2_square(&proto.params, proto.sign).matrix(&sector)?;
            let rel = h.sub(&h2)?.frobenius() / h2.frobenius();
            let res = h.sub(&h1)?.sub(&h2)?.frobenius();
            println!(
                "{lambda0:6} {w:5} {:12.5} {rel:12.5} {res:12.4e}",
                h.frobenius()
            );
        }
    }
    Ok(())
}
