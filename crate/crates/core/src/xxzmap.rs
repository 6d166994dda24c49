//! Checks of the exact map between the second-order constrained Floquet
//! Hamiltonian and the XXZ chain at `Δ = −1/2`.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::basis::{
    cyclic_deletion_map, enumerate_basis, hard_rod_map, spin_basis, Boundary, FockBasis, FockState,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{build_xxz, op_hf2_kernel, OperatorMatrix};
use crate::linalg;
use crate::symmetry::{build_orbits, Sector, SectorBasis};

/// Deviation below which a mapping check passes.
pub const MAPPING_TOL: f64 = 1e-10;

/// Up spins that can hop one site to the right
/// (`↓_{j−1} ↑_j ↓_{j+1} ↓_{j+2}`, cyclic under PBC).
pub fn flippable_count(state: FockState, boundary: Boundary) -> usize {
    let l = state.sites();
    let down = |k: isize| -> Option<bool> {
        match boundary {
            Boundary::Periodic => Some(!state.is_up(k.rem_euclid(l as isize) as usize)),
            Boundary::Open if k < 0 || k >= l as isize => None,
            Boundary::Open => Some(!state.is_up(k as usize)),
        }
    };
    (0..l)
        .filter(|&j| state.is_up(j))
        .filter(|&j| {
            let j = j as isize;
            down(j + 1) == Some(true) && down(j + 2) != Some(false) && down(j - 1) != Some(false)
        })
        .count()
}

/// Mirror image of [`flippable_count`]: up spins that can hop left.
pub fn left_flippable_count(state: FockState, boundary: Boundary) -> usize {
    flippable_count(state.reflect(), boundary)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MappingReport {
    pub sites: usize,
    pub up: usize,
    pub boundary: Boundary,
    pub dim: usize,
    pub j: f64,
    pub delta: f64,
    /// `max |H_PXP − H_XXZ − c·1|` over matched matrix entries.
    pub entry_deviation: f64,
    /// `max |E_PXP − E_XXZ − c|` over sorted spectra.
    pub spectral_deviation: f64,
    /// Constant `c` separating the two sides (fitted under PBC, fixed under OBC).
    pub constant: f64,
    /// Closed-form value of the constant.
    pub constant_closed_form: f64,
    pub pass: bool,
}

/// Permutation `π` with XXZ index `π[a]` for constrained index `a`.
fn match_orbits<F>(pxp: &SectorBasis, xxz: &SectorBasis, image: F) -> Result<Vec<usize>>
where
    F: Fn(FockState) -> Result<FockState>,
{
    if pxp.dim() != xxz.dim() {
        return Err(Error::OrbitMatch(format!(
            "sector dimensions {} and {}",
            pxp.dim(),
            xxz.dim()
        )));
    }
    let l = pxp.parent().sites();
    let mut seen = vec![false; xxz.dim()];
    let mut perm = Vec::with_capacity(pxp.dim());
    for &rep in pxp.representatives() {
        let img = image(FockState::new(rep, l))?;
        let (idx, _) = xxz.owner_of(img.bits()).ok_or_else(|| {
            Error::OrbitMatch(format!("image {img} of {rep:#b} outside the XXZ sector"))
        })?;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(Error::OrbitMatch(format!(
                "two orbits map onto XXZ state {idx}"
            )));
        }
        perm.push(idx);
    }
    Ok(perm)
}

fn compare(
    a: &Array2<C64>,
    b: &Array2<C64>,
    perm: &[usize],
    constant: Option<f64>,
) -> Result<(f64, f64, f64)> {
    let d = perm.len();
    let c = constant.unwrap_or_else(|| {
        let ta: f64 = (0..d).map(|i| a[[i, i]].re).sum();
        let tb: f64 = (0..d).map(|i| b[[i, i]].re).sum();
        if d == 0 {
            0.0
        } else {
            (ta - tb) / d as f64
        }
    });
    let mut entry: f64 = 0.0;
    for i in 0..d {
        for k in 0..d {
            let shift = if i == k { c } else { 0.0 };
            entry = entry.max((a[[i, k]] - b[[perm[i], perm[k]]] - shift).norm());
        }
    }
    let ea = linalg::eigh(a)?.values;
    let eb = linalg::eigh(b)?.values;
    let spectral = ea
        .iter()
        .zip(eb.iter())
        .fold(0.0f64, |m, (x, y)| m.max((x - y - c).abs()));
    Ok((entry, spectral, c))
}

/// Periodic chain at zero momentum: `2J·kernel` on `(L, N)` against the XXZ
/// chain `J, Δ` on `L − N` sites with `N` up spins, matched orbit by orbit
/// through cyclic deletion. The additive constant is fitted from traces.
pub fn verify_pbc_k0(l: usize, n: usize, j: f64, delta: f64) -> Result<MappingReport> {
    if n == 0 || 2 * n >= l {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ N < L/2, got L = {l}, N = {n}"
        )));
    }
    let parent = enumerate_basis(l, Boundary::Periodic)?.with_up_count(n);
    let pxp = SectorBasis::new(&parent, Sector::K0)?;
    let xparent = spin_basis(l - n, n, Boundary::Periodic)?;
    let xxz = SectorBasis::new(&xparent, Sector::K0)?;
    let perm = match_orbits(&pxp, &xxz, cyclic_deletion_map)?;
    let hp = op_hf2_kernel(&pxp).scaled(2.0 * j);
    let hx = build_xxz(&xxz, j, delta, 0.0)?;
    let (entry, spectral, c) = compare(&hp.data, &hx.data, &perm, None)?;
    Ok(MappingReport {
        sites: l,
        up: n,
        boundary: Boundary::Periodic,
        dim: pxp.dim(),
        j,
        delta,
        entry_deviation: entry,
        spectral_deviation: spectral,
        constant: c,
        constant_closed_form: pbc_constant(l, n, j),
        pass: entry < MAPPING_TOL && spectral < MAPPING_TOL,
    })
}

/// `J(11N − 3L)/2`, the constant separating the periodic sides.
pub fn pbc_constant(l: usize, n: usize, j: f64) -> f64 {
    j * (11.0 * n as f64 - 3.0 * l as f64) / 2.0
}

/// `(J'/2)(11N − 3L − 2)` with `J' = J/2`.
pub fn obc_constant(l: usize, n: usize, j: f64) -> f64 {
    0.25 * j * (11.0 * n as f64 - 3.0 * l as f64 - 2.0)
}

/// Open chain: `J·kernel` on `(L, N)` against
/// `J'Σ[(ττ)_xy − ½τ^zτ^z] − (J'/2)(τ^z_1 + τ^z_{L'}) + (J'/2)(11N − 3L − 2)`
/// on `L' = L − N + 1` sites, matched by the hard-rod map without fitting.
pub fn verify_obc(l: usize, n: usize, j: f64) -> Result<MappingReport> {
    let parent = enumerate_basis(l, Boundary::Open)?.with_up_count(n);
    if parent.dim() == 0 {
        return Err(Error::InvalidArgument(format!(
            "no blockaded states with L = {l}, N = {n}"
        )));
    }
    let lp = l + 1 - n;
    let xparent = spin_basis(lp, n, Boundary::Open)?;
    let jp = 0.5 * j;
    let hp = op_hf2_kernel(&parent).scaled(j);
    let c = obc_constant(l, n, j);
    let hx = build_xxz(&xparent, jp, -0.5, -0.5 * jp)?;
    let perm = obc_permutation(&parent, &xparent)?;
    let (entry, spectral, _) = compare(&hp.data, &hx.data, &perm, Some(c))?;
    Ok(MappingReport {
        sites: l,
        up: n,
        boundary: Boundary::Open,
        dim: parent.dim(),
        j,
        delta: -0.5,
        entry_deviation: entry,
        spectral_deviation: spectral,
        constant: c,
        constant_closed_form: c,
        pass: entry < MAPPING_TOL && spectral < MAPPING_TOL,
    })
}

fn obc_permutation(parent: &FockBasis, xparent: &FockBasis) -> Result<Vec<usize>> {
    if parent.dim() != xparent.dim() {
        return Err(Error::OrbitMatch(format!(
            "dimensions {} and {}",
            parent.dim(),
            xparent.dim()
        )));
    }
    let mut seen = vec![false; xparent.dim()];
    parent
        .iter()
        .map(|s| {
            let img = hard_rod_map(&s.up_positions())?.to_state();
            let idx = xparent
                .index_of(img.bits())
                .ok_or_else(|| Error::OrbitMatch(format!("image {img} outside the XXZ basis")))?;
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::OrbitMatch(format!(
                    "two states map onto XXZ state {idx}"
                )));
            }
            Ok(idx)
        })
        .collect()
}

/// Block structure of one zero-momentum orbit and of its image.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitBlocks {
    pub rep: u32,
    /// Period `R` and block count `q = L/R`.
    pub period: usize,
    pub blocks: usize,
    /// Up spins per block.
    pub per_block: usize,
    pub image_period: usize,
    pub image_blocks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormCheckReport {
    pub sites: usize,
    pub orbits: Vec<OrbitBlocks>,
    pub failures: usize,
    pub pass: bool,
}

/// For every periodic orbit with `N < L/2`: `N = m_1 q`, and the cyclic
/// deletion image has period `R − m_1` with the same block count.
pub fn sector_state_norm_check(l: usize) -> Result<NormCheckReport> {
    let basis = enumerate_basis(l, Boundary::Periodic)?;
    let mut orbits = Vec::new();
    let mut failures = 0;
    for o in build_orbits(&basis)? {
        let n = o.rep.up_count();
        if 2 * n >= l {
            continue;
        }
        let r = o.period;
        let q = l / r;
        let img = cyclic_deletion_map(o.rep)?;
        let lp = img.sites();
        let rp = (1..=lp)
            .find(|&k| img.translate(k).bits() == img.bits())
            .unwrap_or(lp);
        let m1 = n / q;
        let ok = n == m1 * q && rp == r - m1 && lp / rp == q;
        if !ok {
            failures += 1;
        }
        orbits.push(OrbitBlocks {
            rep: o.rep.bits(),
            period: r,
            blocks: q,
            per_block: m1,
            image_period: rp,
            image_blocks: lp / rp,
        });
    }
    Ok(NormCheckReport {
        sites: l,
        orbits,
        failures,
        pass: failures == 0,
    })
}

/// XXZ charge check: `‖[H_XXZ, C_3]‖_F` on a periodic chain.
pub fn xxz_charge_defect(sites: usize, up: usize, j: f64, delta: f64) -> Result<f64> {
    let b = spin_basis(sites, up, Boundary::Periodic)?;
    let h = build_xxz(&b, j, delta, 0.0)?;
    let c = crate::hamiltonians::build_third_charge_xxz(&b, j, delta)?;
    Ok(h.commutator(&c)?.frobenius())
}

/// The zero-momentum matrix of `2J·kernel` on `(L, N)` for inspection.
pub fn pbc_k0_matrix(l: usize, n: usize, j: f64) -> Result<(SectorBasis, OperatorMatrix)> {
    let parent = enumerate_basis(l, Boundary::Periodic)?.with_up_count(n);
    let pxp = SectorBasis::new(&parent, Sector::K0)?;
    let m = op_hf2_kernel(&pxp).scaled(2.0 * j);
    Ok((pxp, m))
}
