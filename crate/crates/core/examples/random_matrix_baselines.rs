//! Spacing-ratio baselines: Poisson phases and circular orthogonal ensemble.
//!
//! `cargo run --release --example random_matrix_baselines -- 7`

use pxp_floquet::observables::{
    coe_ratios, phase_spacing_stats, poisson_phases, COE_MEAN_R, POISSON_MEAN_R,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> pxp_floquet::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = phase_spacing_stats(&poisson_phases(&mut rng, 5000), 20)?;
    println!(
        "Poisson, D = 5000: <r> = {:.4} (exact {POISSON_MEAN_R:.4})",
        p.mean
    );
    for block in [100, 500] {
        let r = coe_ratios(&mut rng, 5000, block)?;
        println!(
            "COE, 5000 ratios from D = {block} blocks: <r> = {:.4} (large-D {COE_MEAN_R})",
            r.iter().sum::<f64>() / r.len() as f64
        );
    }
    println!("P(r) histogram of the Poisson sample (density per bin of width 0.05):");
    for (i, d) in p.histogram.iter().enumerate() {
        println!(
            "  {:.2}-{:.2} {:6.3} {}",
            i as f64 / 20.0,
            (i + 1) as f64 / 20.0,
            d,
            "#".repeat((d * 20.0) as usize)
        );
    }
    Ok(())
}
