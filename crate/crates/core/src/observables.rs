//! Diagnostics on Floquet spectra and stroboscopic dynamics.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::basis::FockBasis;
use crate::drive::{
    evolve_coefficients, floquet_operator, floquet_spectrum, reduced_phase, DriveProtocol,
    FloquetSpectrum,
};
use crate::error::{Error, Result};
use crate::hamiltonians::{OperatorMatrix, WorkingBasis};
use crate::linalg;
use crate::symmetry::{split_product_state, SectorBasis};

/// Histogram bins used when none are requested.
pub const DEFAULT_BINS: usize = 50;

/// Levels below which ratio statistics are flagged as unreliable.
pub const MIN_RELIABLE_LEVELS: usize = 50;

/// Eigenvalue cutoff applied to reduced density matrices.
pub const ENTANGLEMENT_CUTOFF: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacingStats {
    pub ratios: Vec<f64>,
    pub mean: f64,
    /// Probability density per bin of width `1/n_bin` on [0, 1].
    pub histogram: Vec<f64>,
    /// Fewer than [`MIN_RELIABLE_LEVELS`] levels went in.
    pub low_count: bool,
}

impl SpacingStats {
    fn from_ratios(ratios: Vec<f64>, n_bin: usize, low_count: bool) -> Result<Self> {
        if ratios.is_empty() {
            return Err(Error::InvalidArgument("no spacing ratios".into()));
        }
        let n_bin = n_bin.max(1);
        let mut histogram = vec![0.0; n_bin];
        for &r in &ratios {
            let k = ((r * n_bin as f64) as usize).min(n_bin - 1);
            histogram[k] += 1.0;
        }
        let norm = ratios.len() as f64 / n_bin as f64;
        histogram.iter_mut().for_each(|h| *h /= norm);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        Ok(SpacingStats {
            ratios,
            mean,
            histogram,
            low_count,
        })
    }

    /// Statistics of several independent spectra taken together.
    pub fn pooled(parts: &[&SpacingStats], n_bin: usize) -> Result<Self> {
        let ratios: Vec<f64> = parts
            .iter()
            .flat_map(|s| s.ratios.iter().copied())
            .collect();
        let low = ratios.len() + 2 < MIN_RELIABLE_LEVELS;
        Self::from_ratios(ratios, n_bin, low)
    }
}

/// Ratios `min(s_p, s_{p+1}) / max(s_p, s_{p+1})` of consecutive spacings of
/// ascending phases; the spacing across the ±π seam is not used. Pairs of
/// zero spacings are skipped.
pub fn spacing_ratios(sorted: &[f64]) -> Vec<f64> {
    let s: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    s.windows(2)
        .filter_map(|w| {
            let (lo, hi) = if w[0] < w[1] {
                (w[0], w[1])
            } else {
                (w[1], w[0])
            };
            (hi > 0.0).then(|| lo / hi)
        })
        .collect()
}

pub fn phase_spacing_stats(phases: &[f64], n_bin: usize) -> Result<SpacingStats> {
    if phases.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "{} levels, need at least 3",
            phases.len()
        )));
    }
    let mut sorted = phases.to_vec();
    sorted.sort_by(f64::total_cmp);
    SpacingStats::from_ratios(
        spacing_ratios(&sorted),
        n_bin,
        phases.len() < MIN_RELIABLE_LEVELS,
    )
}

pub fn level_spacing_stats(spectrum: &FloquetSpectrum, n_bin: usize) -> Result<SpacingStats> {
    phase_spacing_stats(&spectrum.phases, n_bin)
}

/// Von Neumann entropy (nats) of sites `0..L/2` for a state given on the
/// full constrained basis.
pub fn entanglement_entropy_full(psi: &Array1<C64>, basis: &FockBasis) -> Result<f64> {
    let l = basis.sites();
    if l % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "half-chain cut needs even L, got {l}"
        )));
    }
    if psi.len() != basis.dim() {
        return Err(Error::BasisMismatch(format!(
            "state of length {} for basis of dim {}",
            psi.len(),
            basis.dim()
        )));
    }
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized(norm.sqrt()));
    }
    let half = l / 2;
    let amask = (1u32 << half) - 1;
    let mut a_words: Vec<u32> = basis.words().iter().map(|w| w & amask).collect();
    let mut b_words: Vec<u32> = basis.words().iter().map(|w| w >> half).collect();
    a_words.sort_unstable();
    a_words.dedup();
    b_words.sort_unstable();
    b_words.dedup();
    let mut m = Array2::<C64>::zeros((a_words.len(), b_words.len()));
    for (&w, &amp) in basis.words().iter().zip(psi.iter()) {
        let ia = a_words.binary_search(&(w & amask)).unwrap();
        let ib = b_words.binary_search(&(w >> half)).unwrap();
        m[[ia, ib]] = amp;
    }
    let rho = if a_words.len() <= b_words.len() {
        m.dot(&linalg::dagger(&m))
    } else {
        linalg::dagger(&m).dot(&m)
    };
    Ok(von_neumann(&rho)?)
}

fn von_neumann(rho: &Array2<C64>) -> Result<f64> {
    let e = linalg::eigh(rho)?;
    Ok(e.values
        .iter()
        .filter(|&&p| p > ENTANGLEMENT_CUTOFF)
        .map(|&p| -p * p.ln())
        .sum())
}

/// Half-chain entropy of a sector vector.
pub fn entanglement_entropy(v: &Array1<C64>, sector: &SectorBasis) -> Result<f64> {
    entanglement_entropy_full(&sector.expand_to_full(v)?, sector.parent())
}

/// `|Σ_p e^{iθ_p n}|² / D²`.
pub fn sff_phases(phases: &[f64], n: u64) -> f64 {
    let d = phases.len() as f64;
    let s: C64 = phases
        .iter()
        .map(|&t| C64::from_polar(1.0, reduced_phase(t, n)))
        .sum();
    s.norm_sqr() / (d * d)
}

pub fn sff(spectrum: &FloquetSpectrum, n: u64) -> f64 {
    sff_phases(&spectrum.phases, n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub n: Vec<u64>,
    pub values: Vec<f64>,
    pub observable: String,
    pub initial_state: String,
}

impl ObservableSeries {
    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// Pointwise sum with another series on the same cycles.
    pub fn add(&self, other: &ObservableSeries) -> Result<ObservableSeries> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(
                "series sampled on different cycles".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ObservableSeries {
            values,
            ..self.clone()
        })
    }
}

/// `𝒦(n)` averaged pointwise over the coupling values `w0_window`.
pub fn sff_averaged(
    protocol: &DriveProtocol,
    basis: &dyn WorkingBasis,
    n_list: &[u64],
    w0_window: &[f64],
) -> Result<ObservableSeries> {
    if w0_window.is_empty() {
        return Err(Error::InvalidArgument("empty w0 window".into()));
    }
    let mut acc = vec![0.0; n_list.len()];
    for &w0 in w0_window {
        let mut p = *protocol;
        p.params.w0 = w0;
        let spec = floquet_spectrum(&floquet_operator(&p, basis)?, p.params.t1)?;
        for (a, &n) in acc.iter_mut().zip(n_list) {
            *a += sff(&spec, n);
        }
    }
    let k = w0_window.len() as f64;
    Ok(ObservableSeries {
        n: n_list.to_vec(),
        values: acc.into_iter().map(|v| v / k).collect(),
        observable: "sff".into(),
        initial_state: "none".into(),
    })
}

fn check_op(spectrum: &FloquetSpectrum, op: &OperatorMatrix) -> Result<()> {
    if op.tag != spectrum.tag {
        return Err(Error::BasisMismatch(format!(
            "{} vs {}",
            op.tag, spectrum.tag
        )));
    }
    Ok(())
}

fn expectation(op: &OperatorMatrix, psi: &Array1<C64>) -> f64 {
    psi.iter()
        .zip(op.data.dot(psi).iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

/// `⟨ψ(n)|op|ψ(n)⟩ / L` on the cycles `n_list`. The state is not
/// renormalized, so contributions of orthogonal symmetry sectors add.
pub fn magnetization_series(
    spectrum: &FloquetSpectrum,
    psi0: &Array1<C64>,
    op: &OperatorMatrix,
    n_list: &[u64],
) -> Result<ObservableSeries> {
    check_op(spectrum, op)?;
    let c = spectrum.coefficients(psi0)?;
    let l = spectrum.tag.sites as f64;
    let diagonal = op
        .data
        .indexed_iter()
        .all(|((i, j), z)| i == j || *z == C64::new(0.0, 0.0));
    let dvals = op.diagonal();
    let values = n_list
        .iter()
        .map(|&n| {
            let psi = evolve_coefficients(spectrum, &c, n);
            let e = if diagonal {
                psi.iter().zip(&dvals).map(|(z, d)| z.norm_sqr() * d).sum()
            } else {
                expectation(op, &psi)
            };
            e / l
        })
        .collect();
    Ok(ObservableSeries {
        n: n_list.to_vec(),
        values,
        observable: "op".into(),
        initial_state: "psi0".into(),
    })
}

/// `Σ_clusters ⟨ψ|P_c op P_c|ψ⟩ / L`, with `P_c` the projector on each
/// cluster of degenerate eigenphases.
pub fn diagonal_ensemble(
    spectrum: &FloquetSpectrum,
    psi0: &Array1<C64>,
    op: &OperatorMatrix,
) -> Result<f64> {
    check_op(spectrum, op)?;
    let c = spectrum.coefficients(psi0)?;
    let ov = op.data.dot(&spectrum.vectors);
    let l = spectrum.tag.sites as f64;
    let mut total = 0.0;
    for cl in spectrum.clusters() {
        for &p in &cl {
            let vp = spectrum.vectors.column(p);
            for &q in &cl {
                let opq: C64 = vp
                    .iter()
                    .zip(ov.column(q).iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                total += (c[p].conj() * opq * c[q]).re;
            }
        }
    }
    Ok(total / l)
}

/// `tr(op) / (D·L)`.
pub fn ite_average(op: &OperatorMatrix) -> f64 {
    op.trace().re / (op.dim() as f64 * op.tag.sites as f64)
}

/// `⟨O⟩(n)/L` for a product state, evolved sector by sector and summed.
/// Each operator must commute with the lattice symmetries; one series is
/// returned per operator.
pub fn product_state_series(
    parent: &FockBasis,
    word: u32,
    protocol: &DriveProtocol,
    ops: &[fn(&dyn WorkingBasis) -> OperatorMatrix],
    n_list: &[u64],
) -> Result<Vec<Vec<f64>>> {
    let mut total = vec![vec![0.0; n_list.len()]; ops.len()];
    let mut weight = 0.0;
    for (sec, psi) in split_product_state(parent, word)? {
        weight += psi.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let spec = floquet_spectrum(&floquet_operator(protocol, &sec)?, protocol.params.t1)?;
        for (acc, op) in total.iter_mut().zip(ops) {
            let ser = magnetization_series(&spec, &psi, &op(&sec), n_list)?;
            acc.iter_mut().zip(&ser.values).for_each(|(a, v)| *a += v);
        }
    }
    if (weight - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(weight.sqrt()));
    }
    Ok(total)
}

/// Mean of `⟨op⟩/L` over cycles `n0, …, n0 + window − 1`.
pub fn steady_state_average(
    spectrum: &FloquetSpectrum,
    psi0: &Array1<C64>,
    op: &OperatorMatrix,
    n0: u64,
    window: u64,
) -> Result<f64> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be at least 1".into()));
    }
    let n: Vec<u64> = (n0..n0 + window).collect();
    let s = magnetization_series(spectrum, psi0, op, &n)?;
    Ok(s.values.iter().sum::<f64>() / window as f64)
}

/// `‖AB − BA‖_F`.
pub fn commutator_norm(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64> {
    Ok(a.commutator(b)?.frobenius())
}

/// Outcome of a departure-time search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Departure {
    At(u64),
    BeyondHorizon,
}

/// Default search horizon in cycles.
pub const THERMALIZATION_HORIZON: u64 = 1_000_000_000_000;

/// First cycle at which `|M(n) − M(0)| > threshold·|M(0)|`, scanning a
/// logarithmic grid (16 points per decade) up to `horizon` and bisecting
/// between the last grid point inside the band and the first outside.
pub fn thermalization_time(
    spectrum: &FloquetSpectrum,
    psi0: &Array1<C64>,
    op: &OperatorMatrix,
    threshold: f64,
    horizon: u64,
) -> Result<Departure> {
    check_op(spectrum, op)?;
    let c = spectrum.coefficients(psi0)?;
    let l = spectrum.tag.sites as f64;
    let m = |n: u64| expectation(op, &evolve_coefficients(spectrum, &c, n)) / l;
    let m0 = m(0);
    let band = threshold * m0.abs().max(1e-12);
    let out = |n: u64| (m(n) - m0).abs() > band;
    let mut grid: Vec<u64> = (0..=((horizon.max(1) as f64).log10() * 16.0).ceil() as i64)
        .map(|k| 10f64.powf(k as f64 / 16.0).round() as u64)
        .filter(|&n| n >= 1 && n <= horizon)
        .collect();
    grid.dedup();
    let mut prev = 0u64;
    for &n in &grid {
        if out(n) {
            let (mut lo, mut hi) = (prev, n);
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if out(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Departure::At(hi));
        }
        prev = n;
    }
    Ok(Departure::BeyondHorizon)
}

/// `2 ln 2 − 1`, the Poisson mean ratio.
pub const POISSON_MEAN_R: f64 = 0.386_294_361_119_890_6;
/// Mean ratio of the circular orthogonal ensemble.
pub const COE_MEAN_R: f64 = 0.5307;

/// `d` i.i.d. uniform phases in `(−π, π]`.
pub fn poisson_phases<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    (0..d)
        .map(|_| PI - rng.random::<f64>() * 2.0 * PI)
        .collect()
}

/// Haar-random `d×d` unitary from a QR-orthonormalized complex Ginibre matrix
/// with the diagonal phases of `R` removed.
pub fn haar_unitary<R: Rng>(rng: &mut R, d: usize) -> Array2<C64> {
    let mut q = Array2::<C64>::from_shape_fn((d, d), |_| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    for j in 0..d {
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for k in 0..j {
                let proj: C64 = (0..d).map(|i| q[[i, k]].conj() * q[[i, j]]).sum();
                for i in 0..d {
                    let v = q[[i, k]];
                    q[[i, j]] -= proj * v;
                }
            }
        }
        let norm = (0..d).map(|i| q[[i, j]].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..d {
            q[[i, j]] /= norm;
        }
    }
    q
}

/// Eigenphases of `WᵀW` with `W` Haar-distributed (a COE matrix).
pub fn coe_phases<R: Rng>(rng: &mut R, d: usize) -> Result<Vec<f64>> {
    let w = haar_unitary(rng, d);
    let u = w.t().dot(&w);
    let (vals, _, _) = linalg::schur(&u)?;
    let mut ph: Vec<f64> = vals
        .iter()
        .map(|&z| crate::drive::principal_arg(z))
        .collect();
    ph.sort_by(f64::total_cmp);
    Ok(ph)
}

/// About `total` COE ratios drawn from independent blocks of size `block`.
pub fn coe_ratios<R: Rng>(rng: &mut R, total: usize, block: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(total + block);
    while out.len() < total {
        out.extend(spacing_ratios(&coe_phases(rng, block)?));
    }
    out.truncate(total);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{enumerate_basis, Boundary};
    use crate::drive::floquet_operator;
    use crate::hamiltonians::{op_hf2_kernel, op_sigma_z_total, PhysicalParams};
    use crate::symmetry::Sector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spectrum(l: usize, gamma: f64) -> (FockBasis, FloquetSpectrum) {
        let b = enumerate_basis(l, Boundary::Periodic).unwrap();
        let p = PhysicalParams::from_gamma(20.0, 1.0, 1.0, gamma).unwrap();
        let u = floquet_operator(&DriveProtocol::two_tone(p), &b).unwrap();
        let s = floquet_spectrum(&u, p.t1).unwrap();
        (b, s)
    }

    #[test]
    fn equally_spaced_levels() {
        let ph: Vec<f64> = (0..40).map(|k| -3.0 + 0.1 * k as f64).collect();
        let s = phase_spacing_stats(&ph, DEFAULT_BINS).unwrap();
        assert!(s.ratios.iter().all(|r| (r - 1.0).abs() < 1e-9));
        assert!((s.mean - 1.0).abs() < 1e-9);
        assert!(s.low_count);
        let area: f64 = s.histogram.iter().sum::<f64>() / DEFAULT_BINS as f64;
        assert!((area - 1.0).abs() < 1e-12);
        assert!(phase_spacing_stats(&[0.0, 1.0], 10).is_err());
    }

    #[test]
    fn poisson_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = phase_spacing_stats(&poisson_phases(&mut rng, 5000), DEFAULT_BINS).unwrap();
        assert!((s.mean - POISSON_MEAN_R).abs() < 0.01, "{}", s.mean);
    }

    #[test]
    fn coe_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = haar_unitary(&mut rng, 30);
        assert!(linalg::unitarity_defect(&w) < 1e-12);
        let r = coe_ratios(&mut rng, 2000, 200).unwrap();
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        assert!((mean - COE_MEAN_R).abs() < 0.015, "{mean}");
    }

    /// Reduced density matrix in the full 2^L space.
    fn dense_entropy(psi: &Array1<C64>, basis: &FockBasis) -> f64 {
        let l = basis.sites();
        let h = l / 2;
        let da = 1usize << h;
        let mut m = Array2::<C64>::zeros((da, 1 << (l - h)));
        for (&w, &a) in basis.words().iter().zip(psi.iter()) {
            m[[(w as usize) & (da - 1), (w as usize) >> h]] = a;
        }
        von_neumann(&m.dot(&linalg::dagger(&m))).unwrap()
    }

    #[test]
    fn entropy_against_dense_oracle() {
        let b = enumerate_basis(12, Boundary::Periodic).unwrap();
        let sec = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let mut v = Array1::from_shape_fn(sec.dim(), |_| {
                C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            });
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.mapv_inplace(|z| z / n);
            let s = entanglement_entropy(&v, &sec).unwrap();
            let full = sec.expand_to_full(&v).unwrap();
            assert!((s - dense_entropy(&full, &b)).abs() < 1e-10);
        }
        let vac = sec.product_state(0).unwrap();
        assert!(entanglement_entropy(&vac, &sec).unwrap().abs() < 1e-14);
        assert!(entanglement_entropy(&vac.mapv(|z| z * 2.0), &sec).is_err());
    }

    #[test]
    fn entropy_bounds() {
        let b = enumerate_basis(8, Boundary::Open).unwrap();
        // (|0000 0000⟩ + |1000 1000⟩)/√2 has Schmidt weights (½, ½)
        let mut psi = Array1::zeros(b.dim());
        psi[b.index_of(0).unwrap()] = C64::new(0.5f64.sqrt(), 0.0);
        psi[b.index_of(0b1_0001).unwrap()] = C64::new(0.5f64.sqrt(), 0.0);
        assert!((entanglement_entropy_full(&psi, &b).unwrap() - 2f64.ln()).abs() < 1e-13);
        let l = 8;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v = Array1::from_shape_fn(b.dim(), |_| C64::new(rng.random::<f64>() - 0.5, 0.0));
        let v = &v / v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let da = b
            .words()
            .iter()
            .map(|w| w & ((1 << (l / 2)) - 1))
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let s = entanglement_entropy_full(&v, &b).unwrap();
        assert!(s >= 0.0 && s <= (da as f64).ln() + 1e-12);
    }

    #[test]
    fn sff_properties() {
        let b = enumerate_basis(14, Boundary::Periodic).unwrap();
        let sec = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        let p = PhysicalParams::from_gamma(20.0, 1.0, 1.0, 1.9 * PI).unwrap();
        let s = floquet_spectrum(
            &floquet_operator(&DriveProtocol::two_tone(p), &sec).unwrap(),
            p.t1,
        )
        .unwrap();
        assert_eq!(sff(&s, 0), 1.0);
        for n in [1u64, 10, 1000, 1 << 40] {
            let k = sff(&s, n);
            assert!((0.0..=1.0 + 1e-12).contains(&k));
        }
        assert_eq!(sff_phases(&[0.3], 17), 1.0);
        let d = s.dim() as f64;
        let avg: f64 = (10_000u64..11_000).map(|n| sff(&s, n)).sum::<f64>() / 1000.0;
        assert!((avg * d - 1.0).abs() < 0.2, "{}", avg * d);
    }

    #[test]
    fn series_and_ensembles() {
        let (b, s) = spectrum(10, 1.9 * PI);
        let z = op_sigma_z_total(&b);
        let vac = {
            let mut v = Array1::zeros(b.dim());
            v[b.index_of(0).unwrap()] = C64::new(1.0, 0.0);
            v
        };
        let ser = magnetization_series(&s, &vac, &z, &[0, 1, 5]).unwrap();
        assert!((ser.values[0] + 1.0).abs() < 1e-12);
        // the identity times L
        let id = OperatorMatrix::identity(z.tag, b.dim()).scaled(10.0);
        let one = magnetization_series(&s, &vac, &id, &[0, 3, 1_000_000]).unwrap();
        assert!(one.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
        // eigenstate input
        let e: Array1<C64> = s.vectors.column(7).to_owned();
        let ser = magnetization_series(&s, &e, &z, &[0, 100, 10_000]).unwrap();
        assert!(ser.values.iter().all(|v| (v - ser.values[0]).abs() < 1e-10));
        let de = diagonal_ensemble(&s, &e, &z).unwrap();
        assert!((de - ser.values[0]).abs() < 1e-10);
        assert!(
            thermalization_time(&s, &e, &z, 0.05, 1_000_000).unwrap() == Departure::BeyondHorizon
        );
        assert!((steady_state_average(&s, &e, &z, 50, 20).unwrap() - de).abs() < 1e-10);
        assert!(commutator_norm(&z, &z).unwrap() == 0.0);
        assert!(commutator_norm(&z, &op_hf2_kernel(&b)).unwrap() < 1e-12);
        let other = op_sigma_z_total(&enumerate_basis(8, Boundary::Periodic).unwrap());
        assert!(magnetization_series(&s, &vac, &other, &[0]).is_err());
        // L = 6 PBC trace from the brute-force oracle
        let b6 = enumerate_basis(6, Boundary::Periodic).unwrap();
        assert!((ite_average(&op_sigma_z_total(&b6)) + 48.0 / 108.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_ensemble_with_identity_propagator() {
        let b = enumerate_basis(8, Boundary::Periodic).unwrap();
        let p = PhysicalParams::from_gamma(20.0, 0.0, 0.0, 1.0).unwrap();
        let s = floquet_spectrum(
            &floquet_operator(&DriveProtocol::two_tone(p), &b).unwrap(),
            p.t1,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let v = Array1::from_shape_fn(b.dim(), |_| {
            C64::new(rng.random::<f64>(), rng.random::<f64>())
        });
        let v = &v / v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let z = op_sigma_z_total(&b);
        let want = expectation(&z, &v) / 8.0;
        // Σσ^z is diagonal in the Fock basis, so all levels are degenerate clusters
        assert!((diagonal_ensemble(&s, &v, &z).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn departure_is_found_by_bisection() {
        let (b, s) = spectrum(10, 1.9 * PI);
        let z = op_sigma_z_total(&b);
        let mut vac = Array1::zeros(b.dim());
        vac[b.index_of(0).unwrap()] = C64::new(1.0, 0.0);
        match thermalization_time(&s, &vac, &z, 0.05, 1_000_000).unwrap() {
            Departure::At(n) => {
                let ser = magnetization_series(&s, &vac, &z, &[n]).unwrap();
                assert!((ser.values[0] + 1.0).abs() > 0.05);
            }
            Departure::BeyondHorizon => panic!("vacuum should depart at γ = 1.9π"),
        }
    }
}
