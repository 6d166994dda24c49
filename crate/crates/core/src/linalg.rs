//! Dense eigensolvers (LAPACK `dsyevd`, `zheevd`, `zgees`) and small matrix helpers.

use std::os::raw::{c_char, c_int};

use lapack_sys::__BindgenComplex;
use ndarray::{Array1, Array2, ArrayView2, ShapeBuilder, Zip};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
/// eigenvectors as columns.
pub struct HermitianEigen {
    pub values: Array1<f64>,
    pub vectors: EigenVectors,
}

/// Eigenvectors keep a real representation when the input was real symmetric,
/// which halves the cost of every later product.
pub enum EigenVectors {
    Real(Array2<f64>),
    Complex(Array2<C64>),
}

impl EigenVectors {
    pub fn to_complex(&self) -> Array2<C64> {
        match self {
            EigenVectors::Real(v) => v.mapv(|x| C64::new(x, 0.0)),
            EigenVectors::Complex(v) => v.clone(),
        }
    }
}

fn lapack_err(routine: &'static str, info: c_int) -> Result<()> {
    if info != 0 {
        return Err(Error::Lapack { routine, info });
    }
    Ok(())
}

/// Whether every entry has vanishing imaginary part.
pub fn is_real(a: &Array2<C64>) -> bool {
    a.iter().all(|z| z.im == 0.0)
}

/// Real symmetric eigensolver (divide and conquer).
pub fn eigh_real(a: &Array2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigh_real needs a square matrix");
    let mut m = Array2::<f64>::zeros((n, n).f());
    m.assign(a);
    let mut w = Array1::<f64>::zeros(n);
    if n == 0 {
        return Ok((w, m));
    }
    let nn = n as c_int;
    let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
    let mut info = 0;
    let mut wq = [0.0f64];
    let mut iwq = [0 as c_int];
    let q: c_int = -1;
    unsafe {
        lapack_sys::dsyevd_(
            &jobz,
            &uplo,
            &nn,
            m.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            wq.as_mut_ptr(),
            &q,
            iwq.as_mut_ptr(),
            &q,
            &mut info,
        );
    }
    lapack_err("dsyevd", info)?;
    let lwork = wq[0] as c_int;
    let liwork = iwq[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevd_(
            &jobz,
            &uplo,
            &nn,
            m.as_mut_ptr(),
            &nn,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    lapack_err("dsyevd", info)?;
    Ok((w, m))
}

fn as_lapack(p: *mut C64) -> *mut __BindgenComplex<f64> {
    p.cast()
}

/// Complex Hermitian eigensolver (divide and conquer).
pub fn eigh_complex(a: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigh_complex needs a square matrix");
    let mut m = Array2::<C64>::zeros((n, n).f());
    m.assign(a);
    let mut w = Array1::<f64>::zeros(n);
    if n == 0 {
        return Ok((w, m));
    }
    let nn = n as c_int;
    let (jobz, uplo) = (b'V' as c_char, b'L' as c_char);
    let mut info = 0;
    let mut wq = [ZERO];
    let mut rwq = [0.0f64];
    let mut iwq = [0 as c_int];
    let q: c_int = -1;
    unsafe {
        lapack_sys::zheevd_(
            &jobz,
            &uplo,
            &nn,
            as_lapack(m.as_mut_ptr()),
            &nn,
            w.as_mut_ptr(),
            as_lapack(wq.as_mut_ptr()),
            &q,
            rwq.as_mut_ptr(),
            &q,
            iwq.as_mut_ptr(),
            &q,
            &mut info,
        );
    }
    lapack_err("zheevd", info)?;
    let lwork = wq[0].re as c_int;
    let lrwork = rwq[0] as c_int;
    let liwork = iwq[0];
    let mut work = vec![ZERO; lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        lapack_sys::zheevd_(
            &jobz,
            &uplo,
            &nn,
            as_lapack(m.as_mut_ptr()),
            &nn,
            w.as_mut_ptr(),
            as_lapack(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            &lrwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    lapack_err("zheevd", info)?;
    Ok((w, m))
}

/// Hermitian eigensolver that takes the real path whenever the matrix is real.
pub fn eigh(a: &Array2<C64>) -> Result<HermitianEigen> {
    if is_real(a) {
        let (values, v) = eigh_real(&a.mapv(|z| z.re))?;
        Ok(HermitianEigen {
            values,
            vectors: EigenVectors::Real(v),
        })
    } else {
        let (values, v) = eigh_complex(a)?;
        Ok(HermitianEigen {
            values,
            vectors: EigenVectors::Complex(v),
        })
    }
}

/// Complex Schur form `A = Z T Z^†`. Returns the diagonal of `T`, the unitary
/// Schur vectors `Z`, and the Frobenius norm of the strictly upper part of `T`
/// (zero for an exactly normal matrix).
pub fn schur(a: &Array2<C64>) -> Result<(Array1<C64>, Array2<C64>, f64)> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "schur needs a square matrix");
    let mut t = Array2::<C64>::zeros((n, n).f());
    t.assign(a);
    let mut w = Array1::<C64>::zeros(n);
    let mut z = Array2::<C64>::zeros((n, n).f());
    if n == 0 {
        return Ok((w, z, 0.0));
    }
    let nn = n as c_int;
    let (jobvs, sort) = (b'V' as c_char, b'N' as c_char);
    let mut sdim: c_int = 0;
    let mut rwork = vec![0.0f64; n];
    let mut bwork = [0 as c_int; 1];
    let mut info = 0;
    let mut wq = [ZERO];
    let q: c_int = -1;
    unsafe {
        lapack_sys::zgees_(
            &jobvs,
            &sort,
            None,
            &nn,
            as_lapack(t.as_mut_ptr()),
            &nn,
            &mut sdim,
            as_lapack(w.as_mut_ptr()),
            as_lapack(z.as_mut_ptr()),
            &nn,
            as_lapack(wq.as_mut_ptr()),
            &q,
            rwork.as_mut_ptr(),
            bwork.as_mut_ptr(),
            &mut info,
        );
    }
    lapack_err("zgees", info)?;
    let lwork = (wq[0].re as c_int).max(2 * nn);
    let mut work = vec![ZERO; lwork as usize];
    unsafe {
        lapack_sys::zgees_(
            &jobvs,
            &sort,
            None,
            &nn,
            as_lapack(t.as_mut_ptr()),
            &nn,
            &mut sdim,
            as_lapack(w.as_mut_ptr()),
            as_lapack(z.as_mut_ptr()),
            &nn,
            as_lapack(work.as_mut_ptr()),
            &lwork,
            rwork.as_mut_ptr(),
            bwork.as_mut_ptr(),
            &mut info,
        );
    }
    lapack_err("zgees", info)?;
    let mut off = 0.0;
    for j in 0..n {
        for i in 0..j {
            off += t[[i, j]].norm_sqr();
        }
    }
    Ok((w, z, off.sqrt()))
}

pub fn frobenius(a: &Array2<C64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn frobenius_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    Zip::from(a)
        .and(b)
        .fold(0.0, |acc, x, y| acc + (x - y).norm_sqr())
        .sqrt()
}

pub fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

/// `‖A − A^†‖_F`.
pub fn hermiticity_defect(a: &Array2<C64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += (a[[i, j]] - a[[j, i]].conj()).norm_sqr();
        }
    }
    s.sqrt()
}

/// `‖U^† U − 1‖_F`.
pub fn unitarity_defect(u: &Array2<C64>) -> f64 {
    let g = dagger(u).dot(u);
    let mut s = 0.0;
    for ((i, j), z) in g.indexed_iter() {
        let d = if i == j { z - ONE } else { *z };
        s += d.norm_sqr();
    }
    s.sqrt()
}

pub fn identity(n: usize) -> Array2<C64> {
    Array2::from_diag_elem(n, ONE)
}

pub fn commutator(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    a.dot(b) - b.dot(a)
}

/// `R · M` for real `R` and complex `M`, using two real products.
pub fn real_dot_complex(r: ArrayView2<f64>, m: &Array2<C64>) -> Array2<C64> {
    let re = m.mapv(|z| z.re);
    let im = m.mapv(|z| z.im);
    let a = r.dot(&re);
    let b = r.dot(&im);
    Zip::from(&a).and(&b).map_collect(|&x, &y| C64::new(x, y))
}

/// `V diag(phases) V^†`, the matrix function assembled from an eigenbasis.
pub fn assemble(vectors: &EigenVectors, diag: &Array1<C64>) -> Array2<C64> {
    match vectors {
        EigenVectors::Real(v) => {
            let mut vd = v.mapv(|x| C64::new(x, 0.0));
            for (mut col, d) in vd.columns_mut().into_iter().zip(diag.iter()) {
                col.mapv_inplace(|z| z * d);
            }
            let vt = v.t().to_owned();
            let re = vd.mapv(|z| z.re).dot(&vt);
            let im = vd.mapv(|z| z.im).dot(&vt);
            Zip::from(&re).and(&im).map_collect(|&x, &y| C64::new(x, y))
        }
        EigenVectors::Complex(v) => {
            let mut vd = v.clone();
            for (mut col, d) in vd.columns_mut().into_iter().zip(diag.iter()) {
                col.mapv_inplace(|z| z * d);
            }
            vd.dot(&dagger(v))
        }
    }
}
