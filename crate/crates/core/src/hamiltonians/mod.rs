//! Static operators of the driven Rydberg chain and of the XXZ chain, as
//! dense matrices over a full or symmetry-resolved basis.

pub mod terms;

use std::fmt;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::basis::{Boundary, Constraint, FockBasis};
use crate::error::{Error, Result};
use crate::linalg;
use terms::{LatticeSum, LocalOperator, SiteOp, SiteOp::*, Term};

/// Identifies the basis an [`OperatorMatrix`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisTag {
    pub sites: usize,
    pub boundary: Boundary,
    pub constrained: bool,
    pub up: Option<usize>,
    /// Momentum index `k` with `K = 2πk/L`.
    pub momentum: Option<usize>,
    pub parity: Option<i8>,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            if self.constrained { "pxp" } else { "spin" },
            self.sites,
            self.boundary
        )?;
        if let Some(n) = self.up {
            write!(f, "-N{n}")?;
        }
        if let Some(k) = self.momentum {
            write!(f, "-k{k}")?;
        }
        match self.parity {
            Some(1) => f.write_str("-P+"),
            Some(_) => f.write_str("-P-"),
            None => Ok(()),
        }
    }
}

/// A basis that dense operators can be assembled in.
pub trait WorkingBasis: Sync {
    fn dim(&self) -> usize;
    fn tag(&self) -> BasisTag;
    fn sites(&self) -> usize {
        self.tag().sites
    }
    fn boundary(&self) -> Boundary {
        self.tag().boundary
    }
    /// Dense matrix of a (symmetry-respecting) sparse operator.
    fn assemble(&self, op: &dyn LocalOperator) -> Array2<C64>;
}

impl WorkingBasis for FockBasis {
    fn dim(&self) -> usize {
        FockBasis::dim(self)
    }

    fn tag(&self) -> BasisTag {
        BasisTag {
            sites: self.sites(),
            boundary: self.boundary(),
            constrained: self.constraint() == Constraint::Blockade,
            up: self.up_count(),
            momentum: None,
            parity: None,
        }
    }

    fn assemble(&self, op: &dyn LocalOperator) -> Array2<C64> {
        let d = FockBasis::dim(self);
        let mut m = Array2::<C64>::zeros((d, d));
        let mut buf = Vec::new();
        for (col, &w) in self.words().iter().enumerate() {
            buf.clear();
            op.apply(w, &mut buf);
            for &(w2, amp) in &buf {
                if let Some(row) = self.index_of(w2) {
                    m[[row, col]] += amp;
                }
            }
        }
        m
    }
}

/// Dense complex matrix tagged with the basis it lives in.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub data: Array2<C64>,
    pub tag: BasisTag,
    pub hermitian: bool,
}

impl OperatorMatrix {
    /// Wraps a matrix. When `hermitian` is requested the matrix is checked and
    /// symmetrized.
    pub fn new(data: Array2<C64>, tag: BasisTag, hermitian: bool) -> Result<Self> {
        let mut op = OperatorMatrix {
            data,
            tag,
            hermitian: false,
        };
        if hermitian {
            let scale = linalg::frobenius(&op.data).max(1.0);
            let defect = linalg::hermiticity_defect(&op.data);
            if defect > 1e-12 * scale {
                return Err(Error::InvalidArgument(format!(
                    "matrix not Hermitian: defect {defect:e}"
                )));
            }
            op.symmetrize();
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    fn symmetrize(&mut self) {
        let h = (&self.data + &linalg::dagger(&self.data)).mapv(|z| z * 0.5);
        self.data = h;
        self.hermitian = true;
    }

    fn check(&self, other: &OperatorMatrix) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::BasisMismatch(format!(
                "{} vs {}",
                self.tag, other.tag
            )));
        }
        Ok(())
    }

    pub fn identity(tag: BasisTag, dim: usize) -> Self {
        OperatorMatrix {
            data: linalg::identity(dim),
            tag,
            hermitian: true,
        }
    }

    pub fn zeros_like(&self) -> Self {
        OperatorMatrix {
            data: Array2::zeros(self.data.raw_dim()),
            tag: self.tag,
            hermitian: true,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        OperatorMatrix {
            data: self.data.mapv(|z| z * s),
            tag: self.tag,
            hermitian: self.hermitian,
        }
    }

    pub fn scaled_complex(&self, s: C64) -> Self {
        OperatorMatrix {
            data: self.data.mapv(|z| z * s),
            tag: self.tag,
            hermitian: self.hermitian && s.im == 0.0,
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &OperatorMatrix, b: f64) -> Result<Self> {
        self.check(other)?;
        let mut data = self.data.mapv(|z| z * a);
        data.scaled_add(C64::new(b, 0.0), &other.data);
        Ok(OperatorMatrix {
            data,
            tag: self.tag,
            hermitian: self.hermitian && other.hermitian,
        })
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<Self> {
        self.combine(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<Self> {
        self.combine(1.0, other, -1.0)
    }

    pub fn dot(&self, other: &OperatorMatrix) -> Result<Self> {
        self.check(other)?;
        Ok(OperatorMatrix {
            data: self.data.dot(&other.data),
            tag: self.tag,
            hermitian: false,
        })
    }

    pub fn commutator(&self, other: &OperatorMatrix) -> Result<Self> {
        self.check(other)?;
        Ok(OperatorMatrix {
            data: linalg::commutator(&self.data, &other.data),
            tag: self.tag,
            hermitian: false,
        })
    }

    pub fn dagger(&self) -> Self {
        OperatorMatrix {
            data: linalg::dagger(&self.data),
            tag: self.tag,
            hermitian: self.hermitian,
        }
    }

    pub fn frobenius(&self) -> f64 {
        linalg::frobenius(&self.data)
    }

    pub fn trace(&self) -> C64 {
        self.data.diag().sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.data.diag().iter().map(|z| z.re).collect()
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> Result<f64> {
        self.check(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Physical drive parameters (ħ = 1).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub lambda0: f64,
    pub w0: f64,
    pub w1: f64,
    pub t1: f64,
}

impl PhysicalParams {
    pub fn new(lambda0: f64, w0: f64, w1: f64, t1: f64) -> Result<Self> {
        let p = PhysicalParams {
            lambda0,
            w0,
            w1,
            t1,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters at fixed `γ = λ0 T1 / 2`.
    pub fn from_gamma(lambda0: f64, w0: f64, w1: f64, gamma: f64) -> Result<Self> {
        Self::new(lambda0, w0, w1, 2.0 * gamma / lambda0)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.lambda0 > 0.0
            && self.t1 > 0.0
            && self.w0 >= 0.0
            && self.w1 >= 0.0
            && [self.lambda0, self.t1, self.w0, self.w1]
                .iter()
                .all(|x| x.is_finite());
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "bad physical parameters {self:?}"
            )));
        }
        Ok(())
    }

    pub fn gamma(&self) -> f64 {
        0.5 * self.lambda0 * self.t1
    }

    pub fn alpha(&self) -> f64 {
        4.0 * self.gamma()
    }

    pub fn omega1(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.t1
    }

    pub fn z1(&self) -> f64 {
        2.0 * self.lambda0 / self.omega1()
    }
}

/// Sign convention of the detuning term in `H[a, b]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetuningSign {
    /// `H[a,b] = (w0 + b w1) Σ σ̃^x − a λ0 Σ σ^z`.
    #[default]
    Minus,
    /// `H[a,b] = (w0 + b w1) Σ σ̃^x + a λ0 Σ σ^z`.
    Plus,
}

impl DetuningSign {
    pub fn factor(self) -> f64 {
        match self {
            DetuningSign::Minus => -1.0,
            DetuningSign::Plus => 1.0,
        }
    }
}

fn assemble(basis: &dyn WorkingBasis, op: &LatticeSum, hermitian: bool) -> OperatorMatrix {
    let data = basis.assemble(op);
    let tag = basis.tag();
    if hermitian {
        OperatorMatrix::new(data, tag, true).expect("builder produced a non-Hermitian matrix")
    } else {
        OperatorMatrix {
            data,
            tag,
            hermitian: false,
        }
    }
}

fn lattice(basis: &dyn WorkingBasis) -> LatticeSum {
    LatticeSum::new(basis.sites(), basis.boundary())
}

pub fn sigma_x_tilde_terms(sites: usize, boundary: Boundary) -> LatticeSum {
    let mut s = LatticeSum::new(sites, boundary);
    s.add_translated(&Term::new(1.0, &[(-1, Down), (0, X), (1, Down)]));
    s
}

/// `Σ_j P_{j−1} σ^x_j P_{j+1}`.
pub fn op_sigma_x_tilde(basis: &dyn WorkingBasis) -> OperatorMatrix {
    assemble(
        basis,
        &sigma_x_tilde_terms(basis.sites(), basis.boundary()),
        true,
    )
}

/// `Σ_j P_{j−1} σ^+_j P_{j+1}` (not Hermitian).
pub fn op_sigma_plus_tilde(basis: &dyn WorkingBasis) -> OperatorMatrix {
    let mut s = lattice(basis);
    s.add_translated(&Term::new(1.0, &[(-1, Down), (0, Raise), (1, Down)]));
    assemble(basis, &s, false)
}

/// `Σ_j σ^z_j`, diagonal with entries `2N − L`.
pub fn op_sigma_z_total(basis: &dyn WorkingBasis) -> OperatorMatrix {
    let mut s = lattice(basis);
    s.add_translated(&Term::new(1.0, &[(0, Z)]));
    assemble(basis, &s, true)
}

pub fn hf2_kernel_terms(sites: usize, boundary: Boundary) -> LatticeSum {
    let mut s = LatticeSum::new(sites, boundary);
    s.add_translated_with_hc(&Term::new(
        1.0,
        &[(-1, Down), (0, Raise), (1, Lower), (2, Down)],
    ));
    s.add_translated(&Term::new(1.0, &[(-1, Down), (0, Z), (1, Down)]));
    s
}

/// `Σ_j P_{j−1}(σ^+_j σ^−_{j+1} + H.c.)P_{j+2} + Σ_j σ̃^z_j`.
pub fn op_hf2_kernel(basis: &dyn WorkingBasis) -> OperatorMatrix {
    assemble(
        basis,
        &hf2_kernel_terms(basis.sites(), basis.boundary()),
        true,
    )
}

/// `H[a,b] = (w0 + b w1) Σσ̃^x + sign·a λ0 Σσ^z`.
pub fn build_h_ab(
    basis: &dyn WorkingBasis,
    params: &PhysicalParams,
    a: i8,
    b: i8,
    sign: DetuningSign,
) -> OperatorMatrix {
    let x = op_sigma_x_tilde(basis);
    let z = op_sigma_z_total(basis);
    h_ab_from_parts(&x, &z, params, a, b, sign)
}

pub(crate) fn h_ab_from_parts(
    x: &OperatorMatrix,
    z: &OperatorMatrix,
    params: &PhysicalParams,
    a: i8,
    b: i8,
    sign: DetuningSign,
) -> OperatorMatrix {
    let cx = params.w0 + f64::from(b) * params.w1;
    let cz = sign.factor() * f64::from(a) * params.lambda0;
    x.combine(cx, z, cz).expect("same basis")
}

pub fn xxz_terms(sites: usize, boundary: Boundary, j: f64, delta: f64, h_edge: f64) -> LatticeSum {
    let mut s = LatticeSum::new(sites, boundary);
    // XX + YY = 2(σ^+σ^- + σ^-σ^+)
    s.add_translated_with_hc(&Term::new(2.0 * j, &[(0, Raise), (1, Lower)]));
    s.add_translated(&Term::new(j * delta, &[(0, Z), (1, Z)]));
    if h_edge != 0.0 {
        s.add_at(0, &Term::new(h_edge, &[(0, Z)]));
        s.add_at(sites - 1, &Term::new(h_edge, &[(0, Z)]));
    }
    s
}

/// `J Σ_j [(τ^xτ^x + τ^yτ^y) + Δ τ^zτ^z] + h_edge (τ^z_1 + τ^z_{L'})` on an
/// unconstrained basis.
pub fn build_xxz(
    basis: &dyn WorkingBasis,
    j: f64,
    delta: f64,
    h_edge: f64,
) -> Result<OperatorMatrix> {
    if basis.tag().constrained {
        return Err(Error::InvalidArgument(
            "XXZ chain needs an unconstrained basis".into(),
        ));
    }
    Ok(assemble(
        basis,
        &xxz_terms(basis.sites(), basis.boundary(), j, delta, h_edge),
        true,
    ))
}

/// Per-`N` blocks of the XXZ chain on `sites` sites.
pub fn xxz_blocks(
    sites: usize,
    boundary: Boundary,
    j: f64,
    delta: f64,
    h_edge: f64,
) -> Result<Vec<(usize, OperatorMatrix)>> {
    (0..=sites)
        .map(|n| {
            let b = crate::basis::spin_basis(sites, n, boundary)?;
            Ok((n, build_xxz(&b, j, delta, h_edge)?))
        })
        .collect()
}

pub fn third_charge_xxz_terms(sites: usize, j: f64, delta: f64) -> LatticeSum {
    let i2 = C64::new(0.0, 2.0);
    let mut s = LatticeSum::new(sites, Boundary::Periodic);
    s.add_translated_with_hc(&Term::new(
        i2 * j * delta,
        &[(0, Raise), (1, Lower), (2, Z)],
    ));
    s.add_translated_with_hc(&Term::new(i2 * j, &[(0, Lower), (1, Z), (2, Raise)]));
    s.add_translated_with_hc(&Term::new(
        i2 * j * delta,
        &[(0, Z), (1, Raise), (2, Lower)],
    ));
    s
}

/// Third conserved charge `T1 + T2 + T3` of the periodic XXZ chain.
pub fn build_third_charge_xxz(
    basis: &dyn WorkingBasis,
    j: f64,
    delta: f64,
) -> Result<OperatorMatrix> {
    let tag = basis.tag();
    if tag.constrained || tag.boundary != Boundary::Periodic {
        return Err(Error::InvalidArgument(
            "third XXZ charge needs a periodic spin basis".into(),
        ));
    }
    if tag.sites < 3 {
        return Err(Error::SiteCount(tag.sites));
    }
    Ok(assemble(
        basis,
        &third_charge_xxz_terms(tag.sites, j, delta),
        true,
    ))
}

fn o_terms() -> [(f64, Vec<(isize, SiteOp)>); 6] {
    [
        // O_1a
        (-1.0, vec![(-1, Down), (0, Raise), (1, Lower), (2, Down)]),
        // O_1b
        (
            1.0,
            vec![
                (-1, Down),
                (0, Raise),
                (1, Lower),
                (2, Down),
                (3, Up),
                (4, Down),
            ],
        ),
        // O_2a
        (
            -1.0,
            vec![(-1, Down), (0, Lower), (1, Down), (2, Raise), (3, Down)],
        ),
        // O_2b
        (
            1.0,
            vec![
                (-1, Down),
                (0, Lower),
                (1, Raise),
                (2, Lower),
                (3, Raise),
                (4, Down),
            ],
        ),
        // O_3a
        (
            -1.0,
            vec![(-1, Down), (0, Down), (1, Raise), (2, Lower), (3, Down)],
        ),
        // O_3b
        (
            1.0,
            vec![
                (-1, Down),
                (0, Up),
                (1, Down),
                (2, Raise),
                (3, Lower),
                (4, Down),
            ],
        ),
    ]
}

pub fn third_charge_pxp_terms(sites: usize, j: f64, delta: f64) -> LatticeSum {
    let weights = [delta, 2.0 * delta, 1.0, 1.0, delta, delta];
    let mut s = LatticeSum::new(sites, Boundary::Periodic);
    for ((sign, ops), w) in o_terms().into_iter().zip(weights) {
        let coeff = C64::new(0.0, 2.0 * j * w * sign);
        if coeff != C64::new(0.0, 0.0) {
            s.add_translated_with_hc(&Term::new(coeff, &ops));
        }
    }
    s
}

/// `C_3 = 2iJ[Δ(O_1a + 2 O_1b + O_3a + O_3b) + (O_2a + O_2b)] + H.c.` on a
/// periodic constrained basis.
pub fn build_third_charge_pxp(
    basis: &dyn WorkingBasis,
    j: f64,
    delta: f64,
) -> Result<OperatorMatrix> {
    let tag = basis.tag();
    if !tag.constrained || tag.boundary != Boundary::Periodic {
        return Err(Error::RequiresPeriodic);
    }
    if tag.sites < 6 {
        return Err(Error::SiteCount(tag.sites));
    }
    Ok(assemble(
        basis,
        &third_charge_pxp_terms(tag.sites, j, delta),
        true,
    ))
}
