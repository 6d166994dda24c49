//! Blockaded Hilbert spaces, symmetry sectors and the hard-rod maps.
//!
//! `cargo run --release --example constrained_basis -- 12`

use pxp_floquet::basis::{
    binomial, cyclic_deletion_map, enumerate_basis, fibonacci, hard_rod_map, lucas, Boundary,
    UpPositions,
};
use pxp_floquet::symmetry::{all_sectors, SectorBasis};

fn main() -> pxp_floquet::Result<()> {
    let l: usize = std::env::args()
        .nth(1)
        .map_or(12, |s| s.parse().expect("L"));
    let open = enumerate_basis(l, Boundary::Open)?;
    let ring = enumerate_basis(l, Boundary::Periodic)?;
    println!(
        "L = {l}: OBC D = {} (F_{} = {}), PBC D = {} (L_{l} = {})",
        open.dim(),
        l + 2,
        fibonacci(l + 2),
        ring.dim(),
        lucas(l)
    );

    println!("\nOBC sectors of fixed N");
    for n in 0..=l.div_ceil(2) {
        println!(
            "  N = {n:2}: {:5} states = C({}, {n})",
            open.with_up_count(n).dim(),
            l - n + 1
        );
        assert_eq!(open.with_up_count(n).dim() as u64, binomial(l - n + 1, n));
    }

    println!("\nPBC symmetry sectors");
    for s in all_sectors(l, Boundary::Periodic) {
        println!("  {:6} {:5}", s.label(), SectorBasis::new(&ring, s)?.dim());
    }

    println!("\nhard-rod map, L = 6, N = 2 (x1, x2) -> (y1, y2) on 5 sites");
    for s in enumerate_basis(6, Boundary::Open)?.with_up_count(2).iter() {
        let x = s.up_positions();
        let y = hard_rod_map(&UpPositions::new(x.positions().to_vec(), 6)?)?;
        println!("  {:?} -> {:?}", x.positions(), y.positions());
    }

    println!("\ncyclic deletion on {l} sites (first 8 states)");
    for s in ring.iter().take(8) {
        println!("  {s} -> {}", cyclic_deletion_map(s)?);
    }
    Ok(())
}
