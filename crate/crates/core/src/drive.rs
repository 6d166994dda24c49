//! Drive protocols, the one-period Floquet operator and its spectrum.

use std::collections::HashMap;
use std::f64::consts::PI;

use ndarray::{Array1, Array2, Axis};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonians::{
    h_ab_from_parts, op_sigma_x_tilde, op_sigma_z_total, BasisTag, DetuningSign, OperatorMatrix,
    PhysicalParams, WorkingBasis,
};
use crate::linalg::{self, EigenVectors};

/// Phase tolerance below which eigenphases are treated as degenerate.
pub const CLUSTER_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum DriveKind {
    /// Square detuning at ω1 and square coupling modulation at ω2 = q ω1.
    SquareTwoTone {
        q: usize,
        #[serde(default)]
        w1_sign_flip: bool,
    },
    /// Single-tone square detuning with duty fraction `p`; `w1` is unused.
    SquareAsymmetric { p: f64 },
    /// `λ(t) = λ0 cos ω1 t`, `w(t) = w0 + w1 cos((2 p_h + 1) ω1 t)`.
    CosineTwoTone { harmonic: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveProtocol {
    pub params: PhysicalParams,
    pub kind: DriveKind,
    #[serde(default)]
    pub sign: DetuningSign,
}

/// One piece of a square drive: duration and the signs `(a, b)` of `H[a,b]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub duration: f64,
    pub a: i8,
    pub b: i8,
}

impl DriveProtocol {
    pub fn two_tone(params: PhysicalParams) -> Self {
        DriveProtocol {
            params,
            kind: DriveKind::SquareTwoTone {
                q: 3,
                w1_sign_flip: false,
            },
            sign: DetuningSign::Minus,
        }
    }

    pub fn asymmetric(params: PhysicalParams, p: f64) -> Self {
        DriveProtocol {
            params,
            kind: DriveKind::SquareAsymmetric { p },
            sign: DetuningSign::Minus,
        }
    }

    pub fn cosine(params: PhysicalParams, harmonic: usize) -> Self {
        DriveProtocol {
            params,
            kind: DriveKind::CosineTwoTone { harmonic },
            sign: DetuningSign::Minus,
        }
    }

    pub fn with_sign(mut self, sign: DetuningSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        match self.kind {
            DriveKind::SquareTwoTone { q, .. } if q % 2 == 0 => Err(Error::InvalidArgument(
                format!("frequency ratio q = {q} must be odd"),
            )),
            DriveKind::SquareAsymmetric { p } if !(p > 0.0 && p < 1.0) => Err(
                Error::InvalidArgument(format!("duty fraction p = {p} outside (0, 1)")),
            ),
            _ => Ok(()),
        }
    }

    pub fn is_square(&self) -> bool {
        !matches!(self.kind, DriveKind::CosineTwoTone { .. })
    }

    /// Square-pulse segments in time order.
    pub fn segments(&self) -> Result<Vec<Segment>> {
        self.validate()?;
        let t1 = self.params.t1;
        match self.kind {
            DriveKind::SquareTwoTone { q, w1_sign_flip } => {
                let n = 2 * q;
                let dt = t1 / n as f64;
                Ok((0..n)
                    .map(|k| {
                        let a = if k < q { 1 } else { -1 };
                        let b = if k % 2 == 0 { -1 } else { 1 };
                        Segment {
                            duration: dt,
                            a,
                            b: if w1_sign_flip { -b } else { b },
                        }
                    })
                    .collect())
            }
            DriveKind::SquareAsymmetric { p } => Ok(vec![
                Segment {
                    duration: p * t1,
                    a: -1,
                    b: 0,
                },
                Segment {
                    duration: t1 - p * t1,
                    a: 1,
                    b: 0,
                },
            ]),
            DriveKind::CosineTwoTone { .. } => Err(Error::InvalidArgument(
                "cosine drive has no square segments".into(),
            )),
        }
    }

    /// Coupling `w(t)` multiplying `Σσ̃^x`.
    pub fn coupling(&self, t: f64) -> f64 {
        let p = &self.params;
        match self.kind {
            DriveKind::CosineTwoTone { harmonic } => {
                p.w0 + p.w1 * ((2 * harmonic + 1) as f64 * p.omega1() * t).cos()
            }
            _ => {
                let seg = self.segment_at(t);
                p.w0 + f64::from(seg.b) * p.w1
            }
        }
    }

    /// Coefficient `h(t)` of `Σσ^z` in `H(t)`.
    pub fn detuning(&self, t: f64) -> f64 {
        let p = &self.params;
        match self.kind {
            DriveKind::CosineTwoTone { .. } => {
                self.sign.factor() * p.lambda0 * (p.omega1() * t).cos()
            }
            _ => self.sign.factor() * f64::from(self.segment_at(t).a) * p.lambda0,
        }
    }

    fn segment_at(&self, t: f64) -> Segment {
        let segs = self.segments().expect("square protocol");
        let mut acc = 0.0;
        for s in &segs {
            acc += s.duration;
            if t < acc {
                return *s;
            }
        }
        *segs.last().unwrap()
    }

    /// Square drives as pieces `(t_start, t_end, w, h)` with constant coefficients.
    pub fn pieces(&self) -> Result<Vec<(f64, f64, f64, f64)>> {
        let p = &self.params;
        let mut t = 0.0;
        let mut out = Vec::new();
        for s in self.segments()? {
            let w = p.w0 + f64::from(s.b) * p.w1;
            let h = self.sign.factor() * f64::from(s.a) * p.lambda0;
            out.push((t, t + s.duration, w, h));
            t += s.duration;
        }
        Ok(out)
    }
}

fn propagate(vectors: &EigenVectors, phases: &Array1<C64>, m: &Array2<C64>) -> Array2<C64> {
    match vectors {
        EigenVectors::Real(v) => {
            let mut y = linalg::real_dot_complex(v.t(), m);
            for (mut row, ph) in y.axis_iter_mut(Axis(0)).zip(phases.iter()) {
                row.mapv_inplace(|z| z * ph);
            }
            linalg::real_dot_complex(v.view(), &y)
        }
        EigenVectors::Complex(v) => {
            let mut y = linalg::dagger(v).dot(m);
            for (mut row, ph) in y.axis_iter_mut(Axis(0)).zip(phases.iter()) {
                row.mapv_inplace(|z| z * ph);
            }
            v.dot(&y)
        }
    }
}

fn exp_phases(values: &Array1<f64>, dt: f64) -> Array1<C64> {
    values.mapv(|e| C64::from_polar(1.0, -e * dt))
}

fn check_unitary(u: Array2<C64>, tag: BasisTag) -> Result<OperatorMatrix> {
    let defect = linalg::unitarity_defect(&u);
    if !(defect < 1e-8) {
        return Err(Error::NotNormalized(defect));
    }
    Ok(OperatorMatrix {
        data: u,
        tag,
        hermitian: false,
    })
}

/// `U(T1, 0)` of a square drive, one Hermitian eigendecomposition per
/// distinct `H[a,b]`.
pub fn floquet_operator(
    protocol: &DriveProtocol,
    basis: &dyn WorkingBasis,
) -> Result<OperatorMatrix> {
    let segs = protocol.segments()?;
    let x = op_sigma_x_tilde(basis);
    let z = op_sigma_z_total(basis);
    floquet_operator_from_parts(protocol, &segs, &x, &z)
}

/// Same as [`floquet_operator`] with pre-built `Σσ̃^x` and `Σσ^z`.
pub fn floquet_operator_from_parts(
    protocol: &DriveProtocol,
    segs: &[Segment],
    x: &OperatorMatrix,
    z: &OperatorMatrix,
) -> Result<OperatorMatrix> {
    let mut cache: HashMap<(i8, i8), linalg::HermitianEigen> = HashMap::new();
    let mut u = linalg::identity(x.dim());
    for s in segs {
        if !cache.contains_key(&(s.a, s.b)) {
            let h = h_ab_from_parts(x, z, &protocol.params, s.a, s.b, protocol.sign);
            cache.insert((s.a, s.b), linalg::eigh(&h.data)?);
        }
        let e = &cache[&(s.a, s.b)];
        u = propagate(&e.vectors, &exp_phases(&e.values, s.duration), &u);
    }
    check_unitary(u, x.tag)
}

/// Midpoint-exponential product with `steps` uniform steps.
pub fn cosine_product(
    protocol: &DriveProtocol,
    x: &OperatorMatrix,
    z: &OperatorMatrix,
    steps: usize,
) -> Result<Array2<C64>> {
    let dt = protocol.params.t1 / steps as f64;
    let mut u = linalg::identity(x.dim());
    for k in 0..steps {
        let t = (k as f64 + 0.5) * dt;
        let h = x.combine(protocol.coupling(t), z, protocol.detuning(t))?;
        let e = linalg::eigh(&h.data)?;
        u = propagate(&e.vectors, &exp_phases(&e.values, dt), &u);
    }
    Ok(u)
}

/// Largest step count tried by [`floquet_operator_cosine`].
pub const MAX_COSINE_STEPS: usize = 1 << 16;

/// `U(T1, 0)` of the cosine drive, doubling `steps` until successive products
/// agree to `1e-8` in Frobenius norm.
pub fn floquet_operator_cosine(
    protocol: &DriveProtocol,
    basis: &dyn WorkingBasis,
    steps: usize,
) -> Result<OperatorMatrix> {
    if !matches!(protocol.kind, DriveKind::CosineTwoTone { .. }) {
        return Err(Error::InvalidArgument("not a cosine drive".into()));
    }
    protocol.validate()?;
    if steps < 64 || !steps.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "step count {steps} must be a power of two ≥ 64"
        )));
    }
    let x = op_sigma_x_tilde(basis);
    let z = op_sigma_z_total(basis);
    let mut n = steps;
    let mut prev = cosine_product(protocol, &x, &z, n)?;
    while 2 * n <= MAX_COSINE_STEPS {
        n *= 2;
        let next = cosine_product(protocol, &x, &z, n)?;
        let diff = linalg::frobenius_diff(&prev, &next);
        prev = next;
        if diff < 1e-8 {
            return check_unitary(prev, x.tag);
        }
    }
    Err(Error::NoConvergence(format!(
        "cosine propagator not converged at {MAX_COSINE_STEPS} steps"
    )))
}

/// Eigen-decomposition of a one-period propagator.
#[derive(Clone, Debug)]
pub struct FloquetSpectrum {
    /// Eigenphases `θ_p ∈ (−π, π]`, ascending.
    pub phases: Vec<f64>,
    /// `Λ_p` as returned by the Schur decomposition.
    pub eigenvalues: Vec<C64>,
    /// Orthonormal eigenvectors as columns, same order as `phases`.
    pub vectors: Array2<C64>,
    pub t1: f64,
    pub tag: BasisTag,
}

/// Principal argument in `(−π, π]`.
pub fn principal_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

impl FloquetSpectrum {
    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    /// `E_F^p = −θ_p / T1`.
    pub fn quasienergies(&self) -> Vec<f64> {
        self.phases.iter().map(|th| -th / self.t1).collect()
    }

    /// Index ranges of eigenphases that coincide within [`CLUSTER_TOL`]
    /// (including across the ±π seam).
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        clusters_of(&self.phases)
    }

    /// Overlaps `c_p = ⟨p|ψ⟩`.
    pub fn coefficients(&self, psi: &Array1<C64>) -> Result<Array1<C64>> {
        if psi.len() != self.dim() {
            return Err(Error::BasisMismatch(format!(
                "state of length {} vs spectrum of dim {}",
                psi.len(),
                self.dim()
            )));
        }
        Ok(self.vectors.t().mapv(|z| z.conj()).dot(psi))
    }
}

pub(crate) fn clusters_of(phases: &[f64]) -> Vec<Vec<usize>> {
    let n = phases.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match out.last_mut() {
            Some(c) if phases[i] - phases[*c.last().unwrap()] < CLUSTER_TOL => c.push(i),
            _ => out.push(vec![i]),
        }
    }
    if out.len() > 1 {
        let first = phases[out[0][0]];
        let last = phases[*out.last().unwrap().last().unwrap()];
        if first + 2.0 * PI - last < CLUSTER_TOL {
            let head = out.remove(0);
            out.last_mut().unwrap().extend(head);
        }
    }
    out
}

fn gram_schmidt_columns(v: &mut Array2<C64>, cols: &[usize]) {
    for (k, &c) in cols.iter().enumerate() {
        for &prev in &cols[..k] {
            let proj: C64 = v
                .column(prev)
                .iter()
                .zip(v.column(c).iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let pc = v.column(prev).to_owned();
            v.column_mut(c).scaled_add(-proj, &pc);
        }
        let norm = v.column(c).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.column_mut(c).mapv_inplace(|z| z / norm);
    }
}

/// Eigenphases and eigenvectors of a unitary via the complex Schur form.
pub fn floquet_spectrum(u: &OperatorMatrix, t1: f64) -> Result<FloquetSpectrum> {
    let (w, z, off) = linalg::schur(&u.data)?;
    let scale = (u.dim() as f64).sqrt().max(1.0);
    if off > 1e-8 * scale {
        return Err(Error::NotNormal(off));
    }
    let mut order: Vec<usize> = (0..w.len()).collect();
    let args: Vec<f64> = w.iter().map(|&l| principal_arg(l)).collect();
    order.sort_by(|&i, &j| args[i].total_cmp(&args[j]));
    let phases: Vec<f64> = order.iter().map(|&i| args[i]).collect();
    let eigenvalues = order.iter().map(|&i| w[i]).collect();
    let mut vectors = z.select(Axis(1), &order);
    for c in clusters_of(&phases) {
        if c.len() > 1 {
            gram_schmidt_columns(&mut vectors, &c);
        }
    }
    Ok(FloquetSpectrum {
        phases,
        eigenvalues,
        vectors,
        t1,
        tag: u.tag,
    })
}

/// `H_F = Σ_p E_F^p |p⟩⟨p|` on the principal branch.
pub fn floquet_log_hamiltonian(spec: &FloquetSpectrum) -> OperatorMatrix {
    let e = Array1::from(spec.quasienergies()).mapv(|x| C64::new(x, 0.0));
    let h = linalg::assemble(&EigenVectors::Complex(spec.vectors.clone()), &e);
    let h = (&h + &linalg::dagger(&h)).mapv(|z| z * 0.5);
    OperatorMatrix {
        data: h,
        tag: spec.tag,
        hermitian: true,
    }
}

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.4492935982947064e-16;

/// `θ·n mod 2π`, with the rounding error of the product recovered by a fused
/// multiply-add and a two-word reduction constant.
pub fn reduced_phase(theta: f64, n: u64) -> f64 {
    let nf = n as f64;
    let p = theta * nf;
    let err = theta.mul_add(nf, -p);
    let k = (p / TWO_PI_HI).round();
    let r = (-k).mul_add(TWO_PI_HI, p);
    (-k).mul_add(TWO_PI_LO, r) + err
}

/// `ψ(n) = Σ_p c_p Λ_p^n |p⟩`.
pub fn stroboscopic_evolve(
    spec: &FloquetSpectrum,
    psi0: &Array1<C64>,
    n: u64,
) -> Result<Array1<C64>> {
    let c = spec.coefficients(psi0)?;
    Ok(evolve_coefficients(spec, &c, n))
}

pub(crate) fn evolve_coefficients(spec: &FloquetSpectrum, c: &Array1<C64>, n: u64) -> Array1<C64> {
    let rotated: Array1<C64> = c
        .iter()
        .zip(spec.phases.iter())
        .map(|(ci, &th)| ci * C64::from_polar(1.0, reduced_phase(th, n)))
        .collect();
    spec.vectors.dot(&rotated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{enumerate_basis, Boundary};
    use crate::symmetry::{Sector, SectorBasis};

    fn p(lambda0: f64, w0: f64, w1: f64, gamma: f64) -> PhysicalParams {
        PhysicalParams::from_gamma(lambda0, w0, w1, gamma).unwrap()
    }

    #[test]
    fn segment_patterns() {
        let proto = DriveProtocol::two_tone(p(20.0, 1.0, 1.0, 2.0 * PI));
        let segs = proto.segments().unwrap();
        let ab: Vec<(i8, i8)> = segs.iter().map(|s| (s.a, s.b)).collect();
        assert_eq!(
            ab,
            vec![(1, -1), (1, 1), (1, -1), (-1, 1), (-1, -1), (-1, 1)]
        );
        let total: f64 = segs.iter().map(|s| s.duration).sum();
        assert!((total - proto.params.t1).abs() < 1e-15);
        let five = DriveProtocol {
            kind: DriveKind::SquareTwoTone {
                q: 5,
                w1_sign_flip: false,
            },
            ..proto
        };
        let s5 = five.segments().unwrap();
        assert_eq!(s5.len(), 10);
        assert!(s5
            .iter()
            .enumerate()
            .all(|(k, s)| s.b == if k % 2 == 0 { -1 } else { 1 }));
        let half = DriveProtocol::asymmetric(proto.params, 0.5)
            .segments()
            .unwrap();
        assert_eq!(half[0].duration, half[1].duration);
        assert_eq!((half[0].a, half[1].a), (-1, 1));
        assert!(DriveProtocol {
            kind: DriveKind::SquareTwoTone {
                q: 4,
                w1_sign_flip: false
            },
            ..proto
        }
        .segments()
        .is_err());
    }

    #[test]
    fn zero_coupling_gives_identity() {
        let b = enumerate_basis(8, Boundary::Periodic).unwrap();
        let u = floquet_operator(&DriveProtocol::two_tone(p(20.0, 0.0, 0.0, 1.3)), &b).unwrap();
        assert!(linalg::frobenius_diff(&u.data, &linalg::identity(b.dim())) < 1e-12);
    }

    #[test]
    fn asymmetric_free_part_is_identity_at_integer_points() {
        let b = enumerate_basis(8, Boundary::Periodic).unwrap();
        // λ0 T1 (2p − 1) = m1 π with x = λ0T1/π = 10, p = 0.15 → 2p−1 = −0.7, m1 = −7
        let params = PhysicalParams::new(20.0, 0.0, 0.0, 10.0 * PI / 20.0).unwrap();
        let u = floquet_operator(&DriveProtocol::asymmetric(params, 0.15), &b).unwrap();
        assert!(linalg::frobenius_diff(&u.data, &linalg::identity(b.dim())) < 1e-11);
        let u = floquet_operator(&DriveProtocol::asymmetric(params, 0.13), &b).unwrap();
        let zdiag = op_sigma_z_total(&b).diagonal();
        for (i, zz) in zdiag.iter().enumerate() {
            let want = C64::from_polar(1.0, 20.0 * params.t1 * (1.0 - 2.0 * 0.13) * zz);
            assert!((u.data[[i, i]] - want).norm() < 1e-11);
        }
    }

    #[test]
    fn determinant_matches_trace_phase() {
        let b = enumerate_basis(7, Boundary::Periodic).unwrap();
        let proto = DriveProtocol::two_tone(p(5.0, 1.0, 0.6, 0.9 * PI));
        let u = floquet_operator(&proto, &b).unwrap();
        assert!(linalg::unitarity_defect(&u.data) < 1e-10);
        let spec = floquet_spectrum(&u, proto.params.t1).unwrap();
        let total: f64 = spec.phases.iter().sum();
        let x = op_sigma_x_tilde(&b);
        let z = op_sigma_z_total(&b);
        let mut want = 0.0;
        for s in proto.segments().unwrap() {
            let h = h_ab_from_parts(&x, &z, &proto.params, s.a, s.b, proto.sign);
            want -= s.duration * h.trace().re;
        }
        let d = (total - want).rem_euclid(2.0 * PI);
        assert!(d.min(2.0 * PI - d) < 1e-8);
    }

    #[test]
    fn spectrum_of_diagonal_unitary() {
        let b = enumerate_basis(4, Boundary::Periodic).unwrap();
        let tag = WorkingBasis::tag(&b);
        let phis = [0.3, -1.2, 2.9, PI, -0.4, 1.0, 0.0];
        let u = Array2::from_diag(&Array1::from_iter(
            phis.iter().map(|&f| C64::from_polar(1.0, f)),
        ));
        let spec = floquet_spectrum(
            &OperatorMatrix {
                data: u,
                tag,
                hermitian: false,
            },
            1.0,
        )
        .unwrap();
        let mut want = phis.to_vec();
        want.sort_by(f64::total_cmp);
        for (a, b) in spec.phases.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
        let id = OperatorMatrix::identity(tag, 7);
        let s = floquet_spectrum(&id, 1.0).unwrap();
        assert!(s.phases.iter().all(|&t| t == 0.0));
        assert_eq!(s.clusters().len(), 1);
        assert!(floquet_log_hamiltonian(&s).frobenius() < 1e-14);
    }

    #[test]
    fn log_hamiltonian_round_trip() {
        let b = enumerate_basis(10, Boundary::Periodic).unwrap();
        let s = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        let proto = DriveProtocol::two_tone(p(20.0, 1.0, 1.0, 1.9 * PI));
        let u = floquet_operator(&proto, &s).unwrap();
        let spec = floquet_spectrum(&u, proto.params.t1).unwrap();
        assert!(linalg::unitarity_defect(&spec.vectors) < 1e-10);
        let hf = floquet_log_hamiltonian(&spec);
        assert!(linalg::hermiticity_defect(&hf.data) < 1e-12);
        let e = linalg::eigh(&hf.data).unwrap();
        let back = linalg::assemble(
            &e.vectors,
            &e.values
                .mapv(|x| C64::from_polar(1.0, -x * proto.params.t1)),
        );
        assert!(linalg::frobenius_diff(&back, &u.data) < 1e-8);
    }

    #[test]
    fn evolution_preserves_norm_and_eigenstates() {
        let b = enumerate_basis(10, Boundary::Periodic).unwrap();
        let s = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        let proto = DriveProtocol::two_tone(p(20.0, 1.0, 1.0, 1.9 * PI));
        let spec =
            floquet_spectrum(&floquet_operator(&proto, &s).unwrap(), proto.params.t1).unwrap();
        let psi0 = s.product_state(0).unwrap();
        assert!(
            linalg::frobenius_diff(
                &stroboscopic_evolve(&spec, &psi0, 0)
                    .unwrap()
                    .insert_axis(Axis(1)),
                &psi0.clone().insert_axis(Axis(1))
            ) < 1e-12
        );
        for n in [1u64, 1_000_000, 1_000_000_000_000] {
            let psi = stroboscopic_evolve(&spec, &psi0, n).unwrap();
            let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-10, "n={n}");
        }
        let eig = spec.vectors.column(3).to_owned();
        let later = stroboscopic_evolve(&spec, &eig, 12345).unwrap();
        let overlap: C64 = eig
            .iter()
            .zip(later.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn reduced_phase_is_accurate() {
        let th = 0.123456789;
        let naive = (th * 1e6f64).rem_euclid(2.0 * PI);
        let r = reduced_phase(th, 1_000_000).rem_euclid(2.0 * PI);
        assert!((naive - r).abs() < 1e-9);
        assert_eq!(reduced_phase(th, 0), 0.0);
    }

    #[test]
    fn cosine_drive_without_coupling_is_identity() {
        let b = enumerate_basis(6, Boundary::Periodic).unwrap();
        let proto = DriveProtocol::cosine(PhysicalParams::new(20.0, 0.0, 0.0, 0.4).unwrap(), 1);
        let u = floquet_operator_cosine(&proto, &b, 64).unwrap();
        assert!(linalg::frobenius_diff(&u.data, &linalg::identity(b.dim())) < 1e-8);
        assert!(floquet_operator_cosine(&proto, &b, 100).is_err());
    }

    #[test]
    fn cosine_midpoint_is_second_order() {
        let b = enumerate_basis(6, Boundary::Periodic).unwrap();
        let proto = DriveProtocol::cosine(PhysicalParams::new(4.0, 1.0, 0.5, 1.0).unwrap(), 1);
        let x = op_sigma_x_tilde(&b);
        let z = op_sigma_z_total(&b);
        let reference = cosine_product(&proto, &x, &z, 1 << 13).unwrap();
        let e1 = linalg::frobenius_diff(&cosine_product(&proto, &x, &z, 128).unwrap(), &reference);
        let e2 = linalg::frobenius_diff(&cosine_product(&proto, &x, &z, 256).unwrap(), &reference);
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }
}
