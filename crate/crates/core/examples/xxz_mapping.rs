//! The second-order Floquet kernel equals an XXZ chain with Δ = −1/2 on the
//! hard-rod-reduced lattice, up to a constant.
//!
//! `cargo run --release --example xxz_mapping -- 14`

use pxp_floquet::xxzmap::{obc_constant, pbc_constant, verify_obc, verify_pbc_k0};

fn main() -> pxp_floquet::Result<()> {
    let l: usize = std::env::args()
        .nth(1)
        .map_or(14, |s| s.parse().expect("L"));
    let j = 1.0;
    println!("PBC, K = 0: spectrum of 2J·kernel vs XXZ(J, Δ = −1/2) on L − N sites");
    for n in (1..l).take_while(|&n| 2 * n < l) {
        let r = verify_pbc_k0(l, n, j, -0.5)?;
        println!(
            "  N = {n}: dim {:4}, spectral dev {:.1e}, constant {:.6} (closed form {:.6}) {}",
            r.dim,
            r.spectral_deviation,
            r.constant,
            pbc_constant(l, n, j),
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    println!("OBC: J·kernel vs XXZ(J/2, Δ = −1/2) with edge field −J/4, entrywise");
    for n in 0..=l.div_ceil(2) {
        let r = verify_obc(l, n, j)?;
        println!(
            "  N = {n}: dim {:4}, entry dev {:.1e}, constant {:.4} (closed form {:.4}) {}",
            r.dim,
            r.entry_deviation,
            r.constant,
            obc_constant(l, n, j),
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
