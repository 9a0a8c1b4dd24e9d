//! Hermitian eigensolver: unitary Householder reduction to real symmetric
//! tridiagonal form, then implicit QL iterations with Wilkinson-style shifts.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Eigenvalues (ascending) and the unitary whose columns are the eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

/// Eigendecomposition of a matrix assumed Hermitian; only the lower triangle
/// is read after symmetrization.
pub(crate) fn hermitian_eigen<T: Real>(a: &ComplexMatrix<T>) -> Result<Eigen<T>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Shape(format!("eigendecomposition of a {}x{} matrix", a.rows(), a.cols())));
    }
    if n == 0 {
        return Ok(Eigen { values: Vec::new(), vectors: ComplexMatrix::zeros(0, 0) });
    }
    let half = T::lit(0.5);
    let mut w: Vec<Complex<T>> = (0..n * n)
        .map(|i| {
            let (r, c) = (i / n, i % n);
            (a[(r, c)] + a[(c, r)].conj()) * half
        })
        .collect();
    let mut q = ComplexMatrix::<T>::identity(n);

    let mut v = vec![Complex::<T>::zero(); n];
    let mut p = vec![Complex::<T>::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let norm = (lo..n).map(|i| w[i * n + k].norm_sqr()).sum::<T>().sqrt();
        if norm <= T::min_positive_value() {
            continue;
        }
        let x0 = w[lo * n + k];
        let phase = if x0.norm() > T::zero() { x0 / x0.norm() } else { Complex::one() };
        let alpha = -phase * norm;
        for i in lo..n {
            v[i] = w[i * n + k];
        }
        v[lo] -= alpha;
        let vnorm = (lo..n).map(|i| v[i].norm_sqr()).sum::<T>().sqrt();
        if vnorm <= T::min_positive_value() {
            continue;
        }
        for vi in &mut v[lo..n] {
            *vi /= vnorm;
        }
        // trailing block: A ← H A H with H = 1 − 2vv†, via w = Av − (v†Av) v
        for i in lo..n {
            p[i] = (lo..n).map(|j| w[i * n + j] * v[j]).sum();
        }
        let kappa: Complex<T> = (lo..n).map(|i| v[i].conj() * p[i]).sum();
        for i in lo..n {
            p[i] -= v[i] * kappa;
        }
        let two = T::lit(2.0);
        for i in lo..n {
            for j in lo..n {
                w[i * n + j] -= (v[i] * p[j].conj() + p[i] * v[j].conj()) * two;
            }
        }
        w[lo * n + k] = alpha;
        w[k * n + lo] = alpha.conj();
        for i in lo + 1..n {
            w[i * n + k] = Complex::zero();
            w[k * n + i] = Complex::zero();
        }
        // Q ← Q H
        for r in 0..n {
            let row = &mut q.data_mut()[r * n..(r + 1) * n];
            let s: Complex<T> = (lo..n).map(|j| row[j] * v[j]).sum();
            for j in lo..n {
                row[j] -= s * v[j].conj() * two;
            }
        }
    }

    // make the off-diagonal real with a diagonal phase similarity
    let mut diag: Vec<T> = (0..n).map(|i| w[i * n + i].re).collect();
    let mut off = vec![T::zero(); n];
    let mut phase = Complex::<T>::one();
    for i in 0..n {
        if i > 0 {
            for r in 0..n {
                q[(r, i)] *= phase;
            }
        }
        if i + 1 < n {
            let e = w[(i + 1) * n + i];
            let mag = e.norm();
            off[i] = mag;
            if mag > T::zero() {
                phase *= e / mag;
            }
        }
    }

    tridiagonal_ql(&mut diag, &mut off, &mut q)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| q[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Implicit QL on the symmetric tridiagonal `(d, e)` where `e[i]` couples
/// `i` and `i + 1`; rotations are accumulated into the columns of `z`.
fn tridiagonal_ql<T: Real>(d: &mut [T], e: &mut [T], z: &mut ComplexMatrix<T>) -> Result<()> {
    let n = d.len();
    let eps = T::epsilon();
    let max_iter = 60 * n.max(1);
    let mut iterations = 0;
    let mut f = T::zero();
    let mut tst1 = T::zero();
    e[n - 1] = T::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                iterations += 1;
                if iterations > max_iter {
                    return Err(Error::NoConvergence(max_iter));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (T::lit(2.0) * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..z.rows() {
                        let zi = z[(k, i)];
                        let zi1 = z[(k, i + 1)];
                        z[(k, i + 1)] = zi * s + zi1 * c;
                        z[(k, i)] = zi * c - zi1 * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    Ok(())
}
