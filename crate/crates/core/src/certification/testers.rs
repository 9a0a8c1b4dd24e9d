use num_complex::Complex;
use num_traits::Zero;

use crate::certification::tolerance::DENSE_EIG_LIMIT;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, SubsystemLayout};
use crate::scalar::Real;
use crate::twirl::{basis_operator_e, hypothesis_choi, vec_identity, AnomalyPattern};

/// Testers `{T_r}` and the inconclusive element `T_?` on a common layout.
#[derive(Clone, Debug)]
pub struct TesterSet<T: Real> {
    layout: SubsystemLayout,
    elements: Vec<(AnomalyPattern, HermitianOperator<T>)>,
    inconclusive: HermitianOperator<T>,
}

impl<T: Real> TesterSet<T> {
    pub fn new(
        layout: SubsystemLayout,
        elements: Vec<(AnomalyPattern, HermitianOperator<T>)>,
        inconclusive: HermitianOperator<T>,
    ) -> Result<Self> {
        let dim = layout.check_dense()?;
        if inconclusive.dim() != dim || elements.iter().any(|(_, t)| t.dim() != dim) {
            return Err(Error::Shape(format!("tester elements must all be {dim}x{dim}")));
        }
        Ok(Self { layout, elements, inconclusive })
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn elements(&self) -> &[(AnomalyPattern, HermitianOperator<T>)] {
        &self.elements
    }

    pub fn inconclusive(&self) -> &HermitianOperator<T> {
        &self.inconclusive
    }

    pub fn get(&self, r: &AnomalyPattern) -> Option<&HermitianOperator<T>> {
        self.elements.iter().find(|(p, _)| p == r).map(|(_, t)| t)
    }

    /// Adds `eps · Π₀^{⊗n}` to every conclusive element; a deliberate violation
    /// of the zero-error constraints used to show the checks have teeth.
    pub fn perturbed(&self, eps: T) -> Result<Self> {
        let e0 = basis_operator_e::<T>(&AnomalyPattern::null(self.layout.n_devices()), &self.layout)?;
        let elements =
            self.elements.iter().map(|(r, t)| Ok((r.clone(), t.add(&e0.scale(eps))?))).collect::<Result<_>>()?;
        Ok(Self { layout: self.layout, elements, inconclusive: self.inconclusive.clone() })
    }
}

/// The hypotheses `F_r` for every pattern of size `k`, lexicographic.
#[derive(Clone, Debug)]
pub struct Hypotheses<T: Real> {
    layout: SubsystemLayout,
    k: usize,
    elements: Vec<(AnomalyPattern, HermitianOperator<T>)>,
}

impl<T: Real> Hypotheses<T> {
    pub fn build(n: usize, k: usize, d: usize) -> Result<Self> {
        let layout = checked_instance(n, k, d)?;
        layout.check_dense()?;
        let elements = AnomalyPattern::all(n, k)
            .into_iter()
            .map(|r| {
                let f = hypothesis_choi::<T>(&r, k, &layout)?;
                Ok((r, f))
            })
            .collect::<Result<_>>()?;
        Ok(Self { layout, k, elements })
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn elements(&self) -> &[(AnomalyPattern, HermitianOperator<T>)] {
        &self.elements
    }

    pub fn get(&self, r: &AnomalyPattern) -> Option<&HermitianOperator<T>> {
        self.elements.iter().find(|(p, _)| p == r).map(|(_, f)| f)
    }
}

pub(crate) fn checked_instance(n: usize, k: usize, d: usize) -> Result<SubsystemLayout> {
    if k == 0 || k > n {
        return Err(Error::Config(format!("need 1 <= k <= n (got n={n}, k={k})")));
    }
    SubsystemLayout::new(n, d)
}

/// `T_r = d^{−n} E_r` and `T_? = d^{−n}(1 − Σ_r E_r)`.
pub fn optimal_testers<T: Real>(n: usize, k: usize, d: usize) -> Result<TesterSet<T>> {
    let layout = checked_instance(n, k, d)?;
    let dim = layout.check_dense()?;
    let norm = T::lit(d as f64).powi(n as i32).recip();
    let mut rest = ComplexMatrix::<T>::identity(dim);
    let mut elements = Vec::new();
    for r in AnomalyPattern::all(n, k) {
        let e = basis_operator_e::<T>(&r, &layout)?;
        rest.add_scaled(-T::one(), e.matrix());
        elements.push((r, e.scale(norm)));
    }
    let inconclusive = HermitianOperator::new(rest.scale(norm), layout.subsystem_dims())?;
    TesterSet::new(layout, elements, inconclusive)
}

fn check_layouts<T: Real>(t: &TesterSet<T>, h: &Hypotheses<T>) -> Result<()> {
    if t.layout() != h.layout() {
        return Err(Error::Shape(format!("tester layout {:?} vs hypothesis layout {:?}", t.layout(), h.layout())));
    }
    Ok(())
}

/// `max_{r≠s} |tr(T_rᵀ F_s)|`.
pub fn zero_error_residual<T: Real>(t: &TesterSet<T>, h: &Hypotheses<T>) -> Result<T> {
    check_layouts(t, h)?;
    let mut worst = T::zero();
    for (r, tr) in t.elements() {
        for (s, fs) in h.elements() {
            if r != s {
                worst = worst.max(tr.matrix().trace_transpose_product(fs.matrix())?.norm());
            }
        }
    }
    Ok(worst)
}

/// `(1/N) Σ_r tr(T_rᵀ F_r)`, returned with the size of its imaginary residue.
pub fn success_probability_born_complex<T: Real>(t: &TesterSet<T>, h: &Hypotheses<T>) -> Result<Complex<T>> {
    check_layouts(t, h)?;
    let mut acc = Complex::zero();
    for (r, fr) in h.elements() {
        let tr = t.get(r).ok_or_else(|| Error::Shape(format!("no tester element for pattern {r}")))?;
        acc += tr.matrix().trace_transpose_product(fr.matrix())?;
    }
    Ok(acc / T::lit(h.elements().len() as f64))
}

/// Born-rule success probability; errors if the imaginary residue exceeds `1e-12`.
pub fn success_probability_born<T: Real>(t: &TesterSet<T>, h: &Hypotheses<T>) -> Result<T> {
    let z = success_probability_born_complex(t, h)?;
    let limit = T::lit(1e-12_f64.max(T::EXACT_TOL * 1e-2));
    if z.im.abs() > limit {
        return Err(Error::Shape(format!("Born value has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// `‖Σ_r T_r + T_? − d^{−n}·1‖_max`.
pub fn completeness_residual<T: Real>(t: &TesterSet<T>) -> T {
    let d = t.layout().local_dim();
    let n = t.layout().n_devices();
    let mut sum = t.inconclusive().matrix().clone();
    for (_, e) in t.elements() {
        sum.add_scaled(T::one(), e.matrix());
    }
    let target = ComplexMatrix::identity(sum.rows()).scale(T::lit(d as f64).powi(n as i32).recip());
    sum.max_abs_diff(&target)
}

/// How a minimum eigenvalue was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenMethod {
    /// Full Hermitian diagonalization.
    Dense,
    /// Gershgorin lower bound after rotating each device into the `|φ⁺⟩` basis.
    GershgorinLocalBasis,
    /// Exact spectrum of a product / E-basis expansion.
    SpectralProduct,
}

/// Unitary on `ℂ^d ⊗ ℂ^d` whose first column is `|φ⁺⟩ = |1⟩⟩/√d`.
pub fn local_phi_basis<T: Real>(d: usize) -> ComplexMatrix<T> {
    let q = d * d;
    let inv = T::lit(d as f64).sqrt().recip();
    let mut cols: Vec<Vec<Complex<T>>> = vec![vec_identity::<T>(d).into_iter().map(|z| z * inv).collect()];
    for e in 0..q {
        if cols.len() == q {
            break;
        }
        let mut v = vec![Complex::zero(); q];
        v[e] = Complex::new(T::one(), T::zero());
        for _ in 0..2 {
            for c in &cols {
                let proj: Complex<T> = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm > T::lit(1e-6) {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(q, q, |r, c| cols[c][r])
}

/// `W† M W` with `W = V^{⊗n}`, applied one device at a time.
pub fn rotate_devices<T: Real>(m: &ComplexMatrix<T>, n: usize, v: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let q = v.rows();
    let dim = m.rows();
    let vh = v.adjoint();
    let vt = v.transpose();
    let mut out = m.clone();
    let mut buf = vec![Complex::zero(); q];
    for device in 0..n {
        let stride = q.pow((n - 1 - device) as u32);
        // rows: apply V† along this device's digit, for every column
        for col in 0..dim {
            for block in (0..dim).step_by(q * stride) {
                for off in 0..stride {
                    let base = block + off;
                    for (t, b) in buf.iter_mut().enumerate() {
                        *b = (0..q).map(|s| vh[(t, s)] * out[(base + s * stride, col)]).sum();
                    }
                    for (t, b) in buf.iter().enumerate() {
                        out[(base + t * stride, col)] = *b;
                    }
                }
            }
        }
        // columns: right-multiply by V, i.e. apply Vᵀ to each row vector
        for row in 0..dim {
            for block in (0..dim).step_by(q * stride) {
                for off in 0..stride {
                    let base = block + off;
                    for (t, b) in buf.iter_mut().enumerate() {
                        *b = (0..q).map(|s| vt[(t, s)] * out[(row, base + s * stride)]).sum();
                    }
                    for (t, b) in buf.iter().enumerate() {
                        out[(row, base + t * stride)] = *b;
                    }
                }
            }
        }
    }
    out
}

/// Gershgorin lower bound on the spectrum of a Hermitian matrix.
pub fn gershgorin_lower_bound<T: Real>(m: &ComplexMatrix<T>) -> T {
    (0..m.rows())
        .map(|i| {
            let off: T = m.row(i).iter().enumerate().filter(|(j, _)| *j != i).map(|(_, z)| z.norm()).sum();
            m[(i, i)].re - off
        })
        .fold(T::infinity(), |a, b| a.min(b))
}

/// Minimum eigenvalue of an operator on the tester layout: exact for side
/// length ≤ [`DENSE_EIG_LIMIT`], otherwise a rigorous lower bound that is
/// tight for operators diagonal in the local `|φ⁺⟩` basis.
pub fn layout_min_eigenvalue<T: Real>(op: &HermitianOperator<T>, layout: &SubsystemLayout) -> Result<(T, EigenMethod)> {
    if op.dim() <= DENSE_EIG_LIMIT {
        return Ok((op.min_eigenvalue()?, EigenMethod::Dense));
    }
    let v = local_phi_basis::<T>(layout.local_dim());
    let rotated = rotate_devices(op.matrix(), layout.n_devices(), &v);
    Ok((gershgorin_lower_bound(&rotated), EigenMethod::GershgorinLocalBasis))
}

/// Minimum eigenvalue over every tester element, including `T_?`.
pub fn min_tester_eigenvalue<T: Real>(t: &TesterSet<T>) -> Result<(T, EigenMethod)> {
    let mut worst = T::infinity();
    let mut method = EigenMethod::Dense;
    for op in t.elements().iter().map(|(_, e)| e).chain(std::iter::once(t.inconclusive())) {
        let (v, m) = layout_min_eigenvalue(op, t.layout())?;
        worst = worst.min(v);
        method = m;
    }
    Ok((worst, method))
}
