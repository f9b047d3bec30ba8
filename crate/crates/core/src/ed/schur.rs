use std::os::raw::{c_char, c_int};

use lapack_sys::__BindgenComplex;
use ndarray::{Array1, Array2, ShapeBuilder};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Complex Schur form `A = Q T Q†`; returns `(diag T, Q)`.
///
/// For a normal matrix `T` is diagonal and the Schur vectors are orthonormal eigenvectors.
pub(crate) fn schur(a: &Array2<C64>) -> Result<(Array1<C64>, Array2<C64>)> {
    let n = a.nrows();
    if n == 0 {
        return Ok((Array1::zeros(0), Array2::zeros((0, 0))));
    }
    let mut t = Array2::<C64>::zeros((n, n).f());
    t.assign(a);
    let mut w = vec![C64::new(0.0, 0.0); n];
    let mut vs = Array2::<C64>::zeros((n, n).f());
    let mut rwork = vec![0.0f64; n];
    let mut bwork = vec![0 as c_int; n];
    let nn = n as c_int;
    let mut sdim: c_int = 0;
    let mut info: c_int = 0;
    let jobvs = b'V' as c_char;
    let sort = b'N' as c_char;

    // complex layout matches `__BindgenComplex<f64>` (two packed f64)
    let run = |work: &mut [C64],
               lwork: c_int,
               t: &mut Array2<C64>,
               w: &mut [C64],
               vs: &mut Array2<C64>,
               rwork: &mut [f64],
               bwork: &mut [c_int],
               sdim: &mut c_int,
               info: &mut c_int| unsafe {
        lapack_sys::zgees_(
            &jobvs,
            &sort,
            None,
            &nn,
            t.as_mut_ptr() as *mut __BindgenComplex<f64>,
            &nn,
            sdim,
            w.as_mut_ptr() as *mut __BindgenComplex<f64>,
            vs.as_mut_ptr() as *mut __BindgenComplex<f64>,
            &nn,
            work.as_mut_ptr() as *mut __BindgenComplex<f64>,
            &lwork,
            rwork.as_mut_ptr(),
            bwork.as_mut_ptr(),
            info,
        )
    };

    let mut query = [C64::new(0.0, 0.0)];
    run(&mut query, -1, &mut t, &mut w, &mut vs, &mut rwork, &mut bwork, &mut sdim, &mut info);
    if info != 0 {
        return Err(Error::Linalg(format!("zgees workspace query failed (info = {info})")));
    }
    let lwork = (query[0].re as usize).max(2 * n);
    let mut work = vec![C64::new(0.0, 0.0); lwork];
    run(&mut work, lwork as c_int, &mut t, &mut w, &mut vs, &mut rwork, &mut bwork, &mut sdim, &mut info);
    if info != 0 {
        return Err(Error::Linalg(format!("zgees failed (info = {info})")));
    }
    let mut q = Array2::<C64>::zeros((n, n));
    q.assign(&vs);
    Ok((Array1::from(w), q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes_a_rotation() {
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let a = ndarray::array![[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]];
        let (w, q) = schur(&a).unwrap();
        let mut args: Vec<f64> = w.iter().map(|z| z.arg()).collect();
        args.sort_by(f64::total_cmp);
        assert!((args[0] + 0.3).abs() < 1e-14 && (args[1] - 0.3).abs() < 1e-14);
        for (j, col) in q.columns().into_iter().enumerate() {
            let av = a.dot(&col);
            for i in 0..2 {
                assert!((av[i] - w[j] * col[i]).norm() < 1e-14);
            }
        }
    }
}
