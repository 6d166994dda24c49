//! Spacing ratio of the asymmetric single-tone drive across `px` at fixed
//! `x = λ0 T1 / π`.
//!
//! `cargo run --release --example asymmetric_sweep -- 18 10 0.9 1.0 1.15`
//!
//! `PXP_W0` sets the coupling (default 1) and `PXP_BC=obc` switches to an open
//! chain in its even-parity sector.

use std::f64::consts::PI;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::{floquet_operator, floquet_spectrum, DriveProtocol};
use pxp_floquet::fpt::asym_coefficients;
use pxp_floquet::hamiltonians::PhysicalParams;
use pxp_floquet::observables::{level_spacing_stats, SpacingStats, DEFAULT_BINS};
use pxp_floquet::symmetry::{Sector, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("number"))
        .collect();
    let l = args.first().map_or(16, |&v| v as usize);
    let x = args.get(1).copied().unwrap_or(10.0);
    let pxs: Vec<f64> = if args.len() > 2 {
        args[2..].to_vec()
    } else {
        vec![0.9, 1.0, 1.15, 2.0]
    };
    let lambda0 = 20.0;
    let w0 = std::env::var("PXP_W0")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);
    let open = std::env::var("PXP_BC").is_ok_and(|s| s == "obc");
    let params = PhysicalParams::new(lambda0, w0, 0.0, x * PI / lambda0)?;
    let (bc, sec) = if open {
        (
            Boundary::Open,
            Sector {
                momentum: None,
                parity: Some(1),
            },
        )
    } else {
        (Boundary::Periodic, Sector::K0_EVEN)
    };
    let parent = enumerate_basis(l, bc)?;
    let even = SectorBasis::new(&parent, sec)?;
    let odd = SectorBasis::new(
        &parent,
        Sector {
            parity: Some(-1),
            ..sec
        },
    )?;
    println!("L = {l}, x = {x}, D_sec = {} + {}", even.dim(), odd.dim());
    println!("px      <r>_even  <r>_pooled  |C_+^(1)|");
    for px in pxs {
        let p = px / x;
        let proto = DriveProtocol::asymmetric(params, p);
        let se = level_spacing_stats(
            &floquet_spectrum(&floquet_operator(&proto, &even)?, params.t1)?,
            DEFAULT_BINS,
        )?;
        let so = level_spacing_stats(
            &floquet_spectrum(&floquet_operator(&proto, &odd)?, params.t1)?,
            DEFAULT_BINS,
        )?;
        let pooled = SpacingStats::pooled(&[&se, &so], DEFAULT_BINS)?;
        let c = asym_coefficients(&params, p)?;
        println!(
            "{px:<7.3} {:.4}    {:.4}      {:.3e}",
            se.mean,
            pooled.mean,
            c.c1[0].norm()
        );
    }
    Ok(())
}
