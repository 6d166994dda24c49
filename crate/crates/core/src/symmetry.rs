//! Translation and reflection symmetry sectors of product-state bases.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::basis::{reflect_word, translate_word, Boundary, FockBasis, FockState};
use crate::error::{Error, Result};
use crate::hamiltonians::terms::LocalOperator;
use crate::hamiltonians::{BasisTag, OperatorMatrix, WorkingBasis};

/// Relative Frobenius tolerance for operator symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// A translation orbit, labelled by its smallest word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub rep: FockState,
    pub period: usize,
    /// 1 if the reflected orbit coincides with this one, else 2.
    pub parity_mult: u8,
    /// Index of the reflected orbit when it differs.
    pub partner: Option<usize>,
}

fn translation_rep(word: u32, sites: usize) -> (u32, usize) {
    let mut best = word;
    let mut period = sites;
    for r in 1..sites {
        let t = translate_word(word, sites, r);
        if t == word {
            period = r;
            break;
        }
        best = best.min(t);
    }
    (best, period)
}

/// Decomposes a periodic basis into translation orbits, in ascending order of
/// their representatives.
pub fn build_orbits(basis: &FockBasis) -> Result<Vec<Orbit>> {
    if basis.boundary() != Boundary::Periodic {
        return Err(Error::RequiresPeriodic);
    }
    let l = basis.sites();
    let mut reps: Vec<(u32, usize)> = Vec::new();
    for &w in basis.words() {
        let (rep, period) = translation_rep(w, l);
        if rep == w {
            reps.push((w, period));
        }
    }
    let position = |w: u32| reps.binary_search_by_key(&w, |&(r, _)| r).ok();
    let mut orbits = Vec::with_capacity(reps.len());
    for &(w, period) in &reps {
        let (mirror, _) = translation_rep(reflect_word(w, l), l);
        let same = mirror == w;
        orbits.push(Orbit {
            rep: FockState::new(w, l),
            period,
            parity_mult: if same { 1 } else { 2 },
            partner: if same { None } else { position(mirror) },
        });
    }
    Ok(orbits)
}

/// Quantum numbers selecting a symmetry sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Sector {
    /// Momentum index `k`, `K = 2πk/L`; `None` means no translation resolution.
    pub momentum: Option<usize>,
    /// Reflection eigenvalue ±1; `None` means no parity resolution.
    pub parity: Option<i8>,
}

impl Sector {
    pub const K0_EVEN: Sector = Sector {
        momentum: Some(0),
        parity: Some(1),
    };
    pub const K0: Sector = Sector {
        momentum: Some(0),
        parity: None,
    };

    pub fn label(&self) -> String {
        let mut s = String::new();
        match self.momentum {
            Some(k) => s.push_str(&format!("k{k}")),
            None => s.push_str("full"),
        }
        match self.parity {
            Some(1) => s.push_str("p+"),
            Some(_) => s.push_str("p-"),
            None => {}
        }
        s
    }
}

/// Orthonormal symmetry-adapted basis with its embedding into the parent
/// product basis.
#[derive(Clone, Debug)]
pub struct SectorBasis {
    parent: FockBasis,
    sector: Sector,
    /// Components of each sector vector: (parent index, amplitude).
    vectors: Vec<Vec<(usize, C64)>>,
    /// Smallest parent word of each sector vector.
    reps: Vec<u32>,
    /// For every parent index, its sector vector and amplitude.
    owner: Vec<Option<(usize, C64)>>,
}

impl SectorBasis {
    pub fn new(parent: &FockBasis, sector: Sector) -> Result<Self> {
        let l = parent.sites();
        if let Some(p) = sector.parity {
            if p != 1 && p != -1 {
                return Err(Error::IncompatibleSector(format!("parity {p}")));
            }
        }
        if sector.momentum.is_some() && parent.boundary() != Boundary::Periodic {
            return Err(Error::IncompatibleSector(
                "momentum needs periodic boundaries".into(),
            ));
        }
        let k = sector.momentum.map(|k| k % l);
        if sector.parity.is_some() {
            if let Some(k) = k {
                if k != 0 && 2 * k != l {
                    return Err(Error::IncompatibleSector(format!(
                        "parity resolution needs K = 0 or π, got k = {k} on {l} sites"
                    )));
                }
            }
        }
        // group elements g = T^r R^s with character χ(g); vector ∝ Σ_g χ(g)^* g|rep⟩
        let mut group: Vec<(usize, bool, C64)> = Vec::new();
        let shifts: Vec<usize> = if k.is_some() {
            (0..l).collect()
        } else {
            vec![0]
        };
        let reflections: &[bool] = if sector.parity.is_some() {
            &[false, true]
        } else {
            &[false]
        };
        for &s in reflections {
            for &r in &shifts {
                let kr = k.map_or(0.0, |k| 2.0 * PI * (k * r) as f64 / l as f64);
                let mut chi = C64::from_polar(1.0, -kr);
                if s {
                    chi *= f64::from(sector.parity.unwrap());
                }
                group.push((r, s, chi));
            }
        }
        let d = parent.dim();
        let mut visited = vec![false; d];
        let mut vectors = Vec::new();
        let mut reps = Vec::new();
        let mut owner = vec![None; d];
        for i in 0..d {
            if visited[i] {
                continue;
            }
            let w = parent.words()[i];
            let mut acc: BTreeMap<u32, C64> = BTreeMap::new();
            for &(r, s, chi) in &group {
                let g = translate_word(if s { reflect_word(w, l) } else { w }, l, r);
                *acc.entry(g).or_insert(C64::new(0.0, 0.0)) += chi.conj();
            }
            let mut comps = Vec::with_capacity(acc.len());
            for (&g, &a) in &acc {
                let j = parent.index_of(g).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "basis not closed under the symmetry group (word {g:#b})"
                    ))
                })?;
                visited[j] = true;
                if a.norm() > 1e-9 {
                    comps.push((j, a));
                }
            }
            let norm = comps.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-9 {
                continue;
            }
            let idx = vectors.len();
            for c in comps.iter_mut() {
                c.1 /= norm;
                owner[c.0] = Some((idx, c.1));
            }
            vectors.push(comps);
            reps.push(w);
        }
        Ok(SectorBasis {
            parent: parent.clone(),
            sector,
            vectors,
            reps,
            owner,
        })
    }

    pub fn parent(&self) -> &FockBasis {
        &self.parent
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn full_dim(&self) -> usize {
        self.parent.dim()
    }

    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    /// Components of sector vector `i` as (parent index, amplitude).
    pub fn components(&self, i: usize) -> &[(usize, C64)] {
        &self.vectors[i]
    }

    /// Sector vector and amplitude of a parent word, if it contributes.
    pub fn owner_of(&self, word: u32) -> Option<(usize, C64)> {
        self.parent.index_of(word).and_then(|i| self.owner[i])
    }

    /// Dense isometry `V` with sector vectors as columns.
    pub fn isometry(&self) -> Array2<C64> {
        let mut v = Array2::zeros((self.full_dim(), self.dim()));
        for (c, comps) in self.vectors.iter().enumerate() {
            for &(i, a) in comps {
                v[[i, c]] = a;
            }
        }
        v
    }

    /// `ψ_full = V ψ`.
    pub fn expand_to_full(&self, v: &Array1<C64>) -> Result<Array1<C64>> {
        if v.len() != self.dim() {
            return Err(Error::BasisMismatch(format!(
                "vector of length {} for sector of dim {}",
                v.len(),
                self.dim()
            )));
        }
        let mut out = Array1::zeros(self.full_dim());
        for (c, comps) in self.vectors.iter().enumerate() {
            for &(i, a) in comps {
                out[i] += a * v[c];
            }
        }
        Ok(out)
    }

    /// `V^† ψ_full`.
    pub fn project_state(&self, psi: &Array1<C64>) -> Result<Array1<C64>> {
        if psi.len() != self.full_dim() {
            return Err(Error::BasisMismatch(format!(
                "vector of length {} for basis of dim {}",
                psi.len(),
                self.full_dim()
            )));
        }
        Ok(self
            .vectors
            .iter()
            .map(|comps| comps.iter().map(|&(i, a)| a.conj() * psi[i]).sum())
            .collect())
    }

    /// Normalized sector vector of a product state (its symmetrized image).
    pub fn product_state(&self, word: u32) -> Result<Array1<C64>> {
        let (idx, _) = self.owner_of(word).ok_or_else(|| {
            Error::InvalidArgument(format!("word {word:#b} has no weight in this sector"))
        })?;
        let mut v = Array1::zeros(self.dim());
        v[idx] = C64::new(1.0, 0.0);
        Ok(v)
    }

    /// Permutations of parent indices implementing the symmetry generators.
    fn generators(&self) -> Vec<Vec<usize>> {
        let l = self.parent.sites();
        let map = |f: &dyn Fn(u32) -> u32| -> Option<Vec<usize>> {
            self.parent
                .words()
                .iter()
                .map(|&w| self.parent.index_of(f(w)))
                .collect()
        };
        let mut gens = Vec::new();
        if self.sector.momentum.is_some() {
            gens.extend(map(&|w| translate_word(w, l, 1)));
        }
        if self.sector.parity.is_some() {
            gens.extend(map(&|w| reflect_word(w, l)));
        }
        gens
    }
}

/// `max_g ‖P_g A P_g^† − A‖_F / ‖A‖_F` over the generators of the sector group.
/// All sectors of the lattice symmetry group: every momentum on a ring, with
/// parity resolved at `K = 0, π`; parity alone with open boundaries.
pub fn all_sectors(sites: usize, boundary: Boundary) -> Vec<Sector> {
    let both = |momentum| {
        [1, -1].map(|p| Sector {
            momentum,
            parity: Some(p),
        })
    };
    match boundary {
        Boundary::Open => both(None).to_vec(),
        Boundary::Periodic => (0..sites)
            .flat_map(|k| {
                if k == 0 || 2 * k == sites {
                    both(Some(k)).to_vec()
                } else {
                    vec![Sector {
                        momentum: Some(k),
                        parity: None,
                    }]
                }
            })
            .collect(),
    }
}

/// Splits a product state into its components in every sector it overlaps.
pub fn split_product_state(
    parent: &FockBasis,
    word: u32,
) -> Result<Vec<(SectorBasis, Array1<C64>)>> {
    let idx = parent.index_of(word).ok_or(Error::ConstraintViolation {
        word,
        sites: parent.sites(),
    })?;
    let mut full = Array1::<C64>::zeros(parent.dim());
    full[idx] = C64::new(1.0, 0.0);
    let mut out = Vec::new();
    for s in all_sectors(parent.sites(), parent.boundary()) {
        let sec = SectorBasis::new(parent, s)?;
        if sec.dim() == 0 {
            continue;
        }
        let part = sec.project_state(&full)?;
        if part.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-14 {
            out.push((sec, part));
        }
    }
    Ok(out)
}

pub fn symmetry_defect(op: &Array2<C64>, sector: &SectorBasis) -> f64 {
    let scale = crate::linalg::frobenius(op).max(1e-300);
    let mut worst: f64 = 0.0;
    for perm in sector.generators() {
        let mut s = 0.0;
        for ((i, j), z) in op.indexed_iter() {
            s += (op[[perm[i], perm[j]]] - z).norm_sqr();
        }
        worst = worst.max(s.sqrt() / scale);
    }
    worst
}

/// `B = V^† A V`, after checking that `A` commutes with the sector symmetries.
pub fn project_operator(op: &OperatorMatrix, sector: &SectorBasis) -> Result<OperatorMatrix> {
    if op.tag != WorkingBasis::tag(sector.parent()) {
        return Err(Error::BasisMismatch(format!(
            "{} vs {}",
            op.tag,
            WorkingBasis::tag(sector.parent())
        )));
    }
    let defect = symmetry_defect(&op.data, sector);
    if defect > SYMMETRY_TOL {
        return Err(Error::SymmetryViolation(defect));
    }
    let v = sector.isometry();
    let b = crate::linalg::dagger(&v).dot(&op.data.dot(&v));
    let mut out = OperatorMatrix {
        data: b,
        tag: sector.tag(),
        hermitian: false,
    };
    if op.hermitian {
        out = OperatorMatrix::new(out.data, out.tag, true)?;
    }
    Ok(out)
}

impl WorkingBasis for SectorBasis {
    fn dim(&self) -> usize {
        SectorBasis::dim(self)
    }

    fn tag(&self) -> BasisTag {
        BasisTag {
            momentum: self.sector.momentum,
            parity: self.sector.parity,
            ..WorkingBasis::tag(&self.parent)
        }
    }

    fn assemble(&self, op: &dyn LocalOperator) -> Array2<C64> {
        let d = self.dim();
        let mut m = Array2::<C64>::zeros((d, d));
        let mut buf = Vec::new();
        for (a, comps) in self.vectors.iter().enumerate() {
            for &(i, ca) in comps {
                buf.clear();
                op.apply(self.parent.words()[i], &mut buf);
                for &(w2, h) in &buf {
                    if let Some((b, cb)) = self.owner_of(w2) {
                        m[[b, a]] += cb.conj() * ca * h;
                    }
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{enumerate_basis, lucas};
    use crate::hamiltonians::{op_hf2_kernel, op_sigma_x_tilde, op_sigma_z_total};
    use crate::linalg;

    #[test]
    fn sectors_partition_the_space() {
        for (l, bc) in [
            (10, Boundary::Periodic),
            (9, Boundary::Periodic),
            (8, Boundary::Open),
        ] {
            let b = enumerate_basis(l, bc).unwrap();
            let total: usize = all_sectors(l, bc)
                .into_iter()
                .map(|s| SectorBasis::new(&b, s).unwrap().dim())
                .sum();
            assert_eq!(total, b.dim());
            let parts = split_product_state(&b, 0b0101_0101 & ((1 << l) - 1)).unwrap();
            let w: f64 = parts
                .iter()
                .flat_map(|(_, v)| v.iter().map(|z| z.norm_sqr()))
                .sum();
            assert!((w - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orbits_of_six_sites() {
        let b = enumerate_basis(6, Boundary::Periodic).unwrap();
        let orbits = build_orbits(&b).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.period).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3, 6, 6]);
        assert_eq!(orbits.iter().map(|o| o.period).sum::<usize>(), 18);
        let neel = orbits.iter().find(|o| o.rep.bits() == 0b010101).unwrap();
        assert_eq!(neel.period, 2);
        assert_eq!((orbits[0].period, orbits[0].parity_mult), (1, 1));
        assert!(build_orbits(&enumerate_basis(6, Boundary::Open).unwrap()).is_err());
    }

    #[test]
    fn chiral_orbits_have_partners() {
        // 100100 vs 101000 ... length 9 has mirror-distinct orbits
        let b = enumerate_basis(11, Boundary::Periodic).unwrap();
        let orbits = build_orbits(&b).unwrap();
        for (i, o) in orbits.iter().enumerate() {
            if let Some(p) = o.partner {
                assert_eq!(o.parity_mult, 2);
                assert_eq!(orbits[p].partner, Some(i));
                assert_eq!(orbits[p].period, o.period);
            }
        }
        assert!(orbits.iter().any(|o| o.partner.is_some()));
    }

    #[test]
    fn small_sector_dims() {
        let b = enumerate_basis(4, Boundary::Periodic).unwrap();
        let s = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        assert_eq!(s.dim(), 3);
        let z = op_sigma_z_total(&s);
        assert_eq!(z.diagonal(), vec![-4.0, -2.0, 0.0]);
        let b2 = enumerate_basis(2, Boundary::Periodic).unwrap();
        assert_eq!(SectorBasis::new(&b2, Sector::K0_EVEN).unwrap().dim(), 2);
        assert!(SectorBasis::new(
            &b,
            Sector {
                momentum: Some(1),
                parity: Some(1)
            }
        )
        .is_err());
    }

    #[test]
    fn sector_dims_sum_to_lucas() {
        for l in 2..=14 {
            let b = enumerate_basis(l, Boundary::Periodic).unwrap();
            let mut total = 0;
            for k in 0..l {
                if k == 0 || 2 * k == l {
                    for p in [1, -1] {
                        total += SectorBasis::new(
                            &b,
                            Sector {
                                momentum: Some(k),
                                parity: Some(p),
                            },
                        )
                        .unwrap()
                        .dim();
                    }
                } else {
                    total += SectorBasis::new(
                        &b,
                        Sector {
                            momentum: Some(k),
                            parity: None,
                        },
                    )
                    .unwrap()
                    .dim();
                }
            }
            assert_eq!(total as u64, lucas(l), "L={l}");
        }
    }

    #[test]
    fn isometry_and_amplitudes() {
        let b = enumerate_basis(12, Boundary::Periodic).unwrap();
        let orbits = build_orbits(&b).unwrap();
        let s = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        let v = s.isometry();
        let g = linalg::dagger(&v).dot(&v);
        assert!(linalg::frobenius_diff(&g, &linalg::identity(s.dim())) < 1e-12);
        for (i, &rep) in s.representatives().iter().enumerate() {
            let o = orbits.iter().find(|o| o.rep.bits() == rep).unwrap();
            let want = 1.0 / ((o.period * o.parity_mult as usize) as f64).sqrt();
            for &(_, a) in s.components(i) {
                assert!((a.re - want).abs() < 1e-12 && a.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn direct_assembly_matches_projection() {
        let b = enumerate_basis(10, Boundary::Periodic).unwrap();
        for sector in [
            Sector::K0_EVEN,
            Sector {
                momentum: Some(3),
                parity: None,
            },
            Sector {
                momentum: Some(5),
                parity: Some(-1),
            },
        ] {
            let s = SectorBasis::new(&b, sector).unwrap();
            let full = op_hf2_kernel(&b);
            let proj = project_operator(&full, &s).unwrap();
            let direct = op_hf2_kernel(&s);
            assert!(linalg::frobenius_diff(&proj.data, &direct.data) < 1e-12);
        }
    }

    #[test]
    fn projected_spectrum_is_contained() {
        let b = enumerate_basis(10, Boundary::Periodic).unwrap();
        let x = op_sigma_x_tilde(&b);
        let full = linalg::eigh(&x.data).unwrap().values;
        let s = SectorBasis::new(&b, Sector::K0_EVEN).unwrap();
        let sec = linalg::eigh(&project_operator(&x, &s).unwrap().data)
            .unwrap()
            .values;
        for e in sec.iter() {
            assert!(full.iter().any(|f| (f - e).abs() < 1e-9));
        }
    }

    #[test]
    fn symmetry_violation_is_detected() {
        let b = enumerate_basis(6, Boundary::Periodic).unwrap();
        let s = SectorBasis::new(&b, Sector::K0).unwrap();
        let mut op = op_sigma_z_total(&b);
        op.data[[1, 1]] += 1.0;
        assert!(matches!(
            project_operator(&op, &s),
            Err(Error::SymmetryViolation(_))
        ));
    }

    #[test]
    fn open_chain_parity_sectors() {
        let b = enumerate_basis(9, Boundary::Open).unwrap();
        let even = SectorBasis::new(
            &b,
            Sector {
                momentum: None,
                parity: Some(1),
            },
        )
        .unwrap();
        let odd = SectorBasis::new(
            &b,
            Sector {
                momentum: None,
                parity: Some(-1),
            },
        )
        .unwrap();
        assert_eq!(even.dim() + odd.dim(), b.dim());
        let k = op_hf2_kernel(&b);
        assert!(project_operator(&k, &even).is_ok());
    }
}
