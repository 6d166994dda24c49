//! Half-chain entanglement of Floquet eigenstates versus quasienergy.
//!
//! `cargo run --release --example entanglement -- 16 2.0 1.95`

use std::f64::consts::PI;

use pxp_floquet::basis::{enumerate_basis, Boundary};
use pxp_floquet::drive::{floquet_operator, floquet_spectrum, DriveProtocol};
use pxp_floquet::hamiltonians::PhysicalParams;
use pxp_floquet::observables::entanglement_entropy;
use pxp_floquet::symmetry::{Sector, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let l: usize = args.first().map_or(16, |s| s.parse().expect("L"));
    let gammas: Vec<f64> = if args.len() > 1 {
        args[1..].iter().map(|s| s.parse().expect("γ/π")).collect()
    } else {
        vec![2.0, 1.95]
    };
    let sector = SectorBasis::new(&enumerate_basis(l, Boundary::Periodic)?, Sector::K0_EVEN)?;
    for g in gammas {
        let proto = DriveProtocol::two_tone(PhysicalParams::from_gamma(20.0, 1.0, 1.0, g * PI)?);
        let spec = floquet_spectrum(&floquet_operator(&proto, &sector)?, proto.params.t1)?;
        let e = spec.quasienergies();
        let s: Vec<f64> = (0..spec.dim())
            .map(|i| entanglement_entropy(&spec.vectors.column(i).to_owned(), &sector))
            .collect::<pxp_floquet::Result<_>>()?;
        let d = s.len();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| e[a].total_cmp(&e[b]));
        let mid: Vec<f64> = order[d / 4..3 * d / 4].iter().map(|&i| s[i]).collect();
        let mean = mid.iter().sum::<f64>() / mid.len() as f64;
        let sd = (mid.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / mid.len() as f64).sqrt();
        println!("γ/π = {g}: middle-band S = {mean:.3} ± {sd:.3} (D_sec = {d})");
        // coarse text scatter: 10 quasienergy bins, min/max entropy per bin
        let lo = e.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for b in 0..10 {
            let (a, z) = (
                lo + (hi - lo) * b as f64 / 10.0,
                lo + (hi - lo) * (b + 1) as f64 / 10.0,
            );
            let bin: Vec<f64> = (0..d)
                .filter(|&i| e[i] >= a && (e[i] < z || b == 9))
                .map(|i| s[i])
                .collect();
            if let (Some(mn), Some(mx)) = (
                bin.iter().copied().reduce(f64::min),
                bin.iter().copied().reduce(f64::max),
            ) {
                println!(
                    "  E_F ∈ [{a:7.3}, {z:7.3}): {:3} states, S ∈ [{mn:.3}, {mx:.3}]",
                    bin.len()
                );
            }
        }
    }
    Ok(())
}
