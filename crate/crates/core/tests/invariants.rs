use std::collections::HashSet;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use pxp_floquet::basis::{
    binomial, cyclic_deletion_map, enumerate_basis, hard_rod_map, is_blockaded, lucas, Boundary,
    FockState,
};
use pxp_floquet::drive::{cosine_product, floquet_operator, floquet_spectrum, DriveProtocol};
use pxp_floquet::fpt::{analytic, oracle_result};
use pxp_floquet::hamiltonians::{
    build_h_ab, op_hf2_kernel, op_sigma_x_tilde, op_sigma_z_total, DetuningSign, OperatorMatrix,
    PhysicalParams,
};
use pxp_floquet::linalg::{hermiticity_defect, unitarity_defect};
use pxp_floquet::observables::{entanglement_entropy, level_spacing_stats, sff};
use pxp_floquet::symmetry::{all_sectors, Sector, SectorBasis};

fn boundary() -> impl Strategy<Value = Boundary> {
    prop_oneof![Just(Boundary::Open), Just(Boundary::Periodic)]
}

fn ring(l: usize) -> SectorBasis {
    SectorBasis::new(
        &enumerate_basis(l, Boundary::Periodic).unwrap(),
        Sector::K0_EVEN,
    )
    .unwrap()
}

fn periodic_orbit(word: u32, l: usize) -> usize {
    let s = FockState::new(word, l);
    (1..=l).find(|&r| s.translate(r) == s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_matches_brute_force(l in 2usize..=14, b in boundary()) {
        let basis = enumerate_basis(l, b).unwrap();
        let brute: Vec<u32> = (0..1u32 << l).filter(|&w| is_blockaded(w, l, b)).collect();
        prop_assert_eq!(basis.words(), &brute[..]);
    }

    #[test]
    fn hard_rod_image_is_a_binomial_injection(l in 2usize..=14, n_frac in 0.0f64..1.0) {
        let open = enumerate_basis(l, Boundary::Open).unwrap();
        let n = (n_frac * (l.div_ceil(2) + 1) as f64) as usize;
        let states = open.with_up_count(n);
        let image: HashSet<Vec<usize>> =
            states.iter().map(|s| hard_rod_map(&s.up_positions()).unwrap().positions().to_vec()).collect();
        prop_assert_eq!(image.len(), states.dim());
        prop_assert_eq!(image.len() as u64, binomial(l - n + 1, n));
    }

    #[test]
    fn cyclic_deletion_maps_orbits_to_orbits(l in 3usize..=14, pick in any::<prop::sample::Index>(), r in 0usize..14) {
        let ring = enumerate_basis(l, Boundary::Periodic).unwrap();
        let s = ring.state(pick.index(ring.dim()));
        let image = cyclic_deletion_map(s).unwrap();
        let shifted = cyclic_deletion_map(s.translate(r % l)).unwrap();
        let m = image.sites();
        prop_assert!((0..m.max(1)).any(|r2| image.translate(r2) == shifted));
        prop_assert_eq!(l % periodic_orbit(s.bits(), l), 0);
        if m > 0 {
            prop_assert_eq!(m % periodic_orbit(image.bits(), m), 0);
            // block count q = L / R is preserved
            prop_assert_eq!(l / periodic_orbit(s.bits(), l), m / periodic_orbit(image.bits(), m));
        }
    }

    #[test]
    fn sectors_tile_the_constrained_space(l in 3usize..=14, b in boundary()) {
        let full = enumerate_basis(l, b).unwrap();
        let mut total = 0;
        for sector in all_sectors(l, b) {
            let sb = SectorBasis::new(&full, sector).unwrap();
            let v = sb.isometry();
            let gram = v.t().mapv(|z| z.conj()).dot(&v);
            let eye = ndarray::Array2::<C64>::eye(sb.dim());
            prop_assert!((&gram - &eye).iter().all(|z| z.norm() < 1e-12));
            total += sb.dim();
        }
        prop_assert_eq!(total, full.dim());
        if b == Boundary::Periodic {
            prop_assert_eq!(total as u64, lucas(l));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn builders_are_hermitian(l in 4usize..=12, a in prop_oneof![Just(1i8), Just(-1)], bb in prop_oneof![Just(1i8), Just(-1)], lam in 0.1f64..30.0) {
        let sb = ring(l);
        let params = PhysicalParams::new(lam, 1.0, 0.7, 0.3).unwrap();
        let h = build_h_ab(&sb, &params, a, bb, DetuningSign::Minus);
        for op in [h, op_hf2_kernel(&sb), op_sigma_x_tilde(&sb), op_sigma_z_total(&sb)] {
            prop_assert!(hermiticity_defect(&op.data) < 1e-12);
        }
    }

    #[test]
    fn floquet_operator_is_unitary(
        l in 4usize..=12,
        lam in 1.0f64..30.0,
        w0 in 0.0f64..2.0,
        w1 in 0.0f64..2.0,
        g in 0.1f64..3.0,
        kind in 0usize..3,
    ) {
        let sb = ring(l);
        let params = PhysicalParams::from_gamma(lam, w0, w1, g * PI).unwrap();
        let proto = match kind {
            0 => DriveProtocol::two_tone(params),
            1 => DriveProtocol::asymmetric(params, 0.3),
            _ => DriveProtocol::cosine(params, 1),
        };
        // the midpoint product is unitary at any step count, converged or not
        let u = if kind == 2 {
            let data = cosine_product(&proto, &op_sigma_x_tilde(&sb), &op_sigma_z_total(&sb), 256).unwrap();
            OperatorMatrix::new(data, op_sigma_x_tilde(&sb).tag, false).unwrap()
        } else {
            floquet_operator(&proto, &sb).unwrap()
        };
        prop_assert!(unitarity_defect(&u.data) < 1e-10);
        let spec = floquet_spectrum(&u, proto.params.t1).unwrap();
        prop_assert!(spec.eigenvalues.iter().all(|z| (z.norm() - 1.0).abs() < 1e-10));
        prop_assert!(unitarity_defect(&spec.vectors) < 1e-10);
    }

    #[test]
    fn detuning_sign_negates_the_spectrum(l in 4usize..=12, lam in 1.0f64..30.0, g in 0.2f64..3.0) {
        let sb = ring(l);
        let params = PhysicalParams::from_gamma(lam, 1.0, 1.0, g * PI).unwrap();
        let phases = |s: DetuningSign| {
            let p = DriveProtocol::two_tone(params).with_sign(s);
            floquet_spectrum(&floquet_operator(&p, &sb).unwrap(), p.params.t1).unwrap().phases
        };
        let a = phases(DetuningSign::Minus);
        let mut b: Vec<f64> = phases(DetuningSign::Plus).iter().map(|x| -x).collect();
        b.sort_by(f64::total_cmp);
        // compare on the circle so a level sitting at the ±π seam is not split
        let on_circle = |x: f64, y: f64| {
            let d = (x - y).rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d)
        };
        prop_assert!(a.iter().zip(&b).all(|(&x, &y)| on_circle(x, y) < 1e-10));
    }

    #[test]
    fn first_order_matches_the_oracle(lam in 1.0f64..30.0, g in 0.05f64..4.0, kind in 0usize..3) {
        let params = PhysicalParams::from_gamma(lam, 0.8, 1.1, g * PI).unwrap();
        let proto = match kind {
            0 => DriveProtocol::two_tone(params),
            1 => DriveProtocol::asymmetric(params, 0.37),
            _ => DriveProtocol::cosine(params, 1),
        };
        let a = analytic(&proto, 1).unwrap().coefficient;
        let o = oracle_result(&proto, 1).unwrap().coefficient;
        prop_assert!((a - o).norm() < 1e-9 * a.norm().max(1.0));
    }

    #[test]
    fn diagnostics_stay_in_range(half in 3usize..=7, g in 0.2f64..3.0, n in 1u64..10_000) {
        let l = 2 * half;
        let sb = ring(l);
        let proto = DriveProtocol::two_tone(PhysicalParams::from_gamma(20.0, 1.0, 1.0, g * PI).unwrap());
        let spec = floquet_spectrum(&floquet_operator(&proto, &sb).unwrap(), proto.params.t1).unwrap();
        let k = sff(&spec, n);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&k));
        prop_assert!((sff(&spec, 0) - 1.0).abs() < 1e-15);
        let stats = level_spacing_stats(&spec, 20).unwrap();
        prop_assert!(stats.ratios.iter().all(|r| (0.0..=1.0).contains(r)));
        let area: f64 = stats.histogram.iter().sum::<f64>() / 20.0;
        prop_assert!(stats.ratios.is_empty() || (area - 1.0).abs() < 1e-12);
        // half chain of L/2 sites under OBC: Fibonacci-many configurations
        let d_a = pxp_floquet::basis::fibonacci(l / 2 + 2) as f64;
        for i in 0..spec.dim() {
            let s = entanglement_entropy(&spec.vectors.column(i).to_owned(), &sb).unwrap();
            prop_assert!(s >= -1e-12 && s <= d_a.ln() + 1e-12);
        }
    }
}
