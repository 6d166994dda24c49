//! Mean spacing ratio of the two-tone Floquet operator in the (K=0, P=+) sector.
//!
//! `cargo run --release --example level_statistics -- 18 2.0 1.9`

use std::time::Instant;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::{floquet_operator, floquet_spectrum, DriveProtocol};
use pxp_floquet::hamiltonians::PhysicalParams;
use pxp_floquet::observables::{level_spacing_stats, DEFAULT_BINS};
use pxp_floquet::symmetry::{Sector, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let l: usize = args.first().map_or(16, |s| s.parse().expect("L"));
    let gammas: Vec<f64> = if args.len() > 1 {
        args[1..].iter().map(|s| s.parse().expect("γ/π")).collect()
    } else {
        vec![2.0, 1.9]
    };
    let parent = enumerate_basis(l, Boundary::Periodic)?;
    let sector = SectorBasis::new(&parent, Sector::K0_EVEN)?;
    println!("L = {l}, D = {}, D_sec = {}", parent.dim(), sector.dim());
    for g in gammas {
        let t = Instant::now();
        let params = PhysicalParams::from_gamma(20.0, 1.0, 1.0, g * std::f64::consts::PI)?;
        let u = floquet_operator(&DriveProtocol::two_tone(params), &sector)?;
        let t_u = t.elapsed().as_secs_f64();
        let spec = floquet_spectrum(&u, params.t1)?;
        let stats = level_spacing_stats(&spec, DEFAULT_BINS)?;
        println!(
            "γ/π = {g:.3}  <r> = {:.4}  (U {:.1}s, spectrum {:.1}s)",
            stats.mean,
            t_u,
            t.elapsed().as_secs_f64() - t_u
        );
    }
    Ok(())
}
