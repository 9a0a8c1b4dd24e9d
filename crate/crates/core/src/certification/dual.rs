use serde::Serialize;

use crate::certification::formula::{rational_to_f64, success_probability_formula};
use crate::certification::testers::Hypotheses;
use crate::certification::tolerance::PSD_TOL;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator, SubsystemLayout};
use crate::scalar::Real;
use crate::twirl::{basis_operator_e, AnomalyPattern};

/// The only instance with a dual certificate: four devices, two anomalies, qubits.
pub const DUAL_INSTANCE: (usize, usize, usize) = (4, 2, 2);

/// Dual variables `(Y_ε, y)` together with the multiplier `ν` and shift `ε`.
#[derive(Clone, Debug)]
pub struct DualCertificate<T: Real> {
    pub y_operator: HermitianOperator<T>,
    pub y: T,
    pub nu: T,
    pub epsilon: T,
}

/// `Y = (1/N) Σ_r E_r F_r E_r` and the hypotheses it was built from.
#[derive(Clone, Debug)]
pub struct DualAnsatz<T: Real> {
    hypotheses: Hypotheses<T>,
    y: HermitianOperator<T>,
    base_value: T,
}

impl<T: Real> DualAnsatz<T> {
    pub fn build() -> Result<Self> {
        let (n, k, d) = DUAL_INSTANCE;
        let hypotheses = Hypotheses::<T>::build(n, k, d)?;
        let layout = *hypotheses.layout();
        let dim = layout.check_dense()?;
        let mut acc = ComplexMatrix::<T>::zeros(dim, dim);
        let count = T::lit(hypotheses.elements().len() as f64);
        for (r, f) in hypotheses.elements() {
            let e = basis_operator_e::<T>(r, &layout)?;
            let sandwich = e.matrix().checked_matmul(f.matrix())?.checked_matmul(e.matrix())?;
            acc.add_scaled(count.recip(), &sandwich);
        }
        let y = HermitianOperator::new(acc, layout.subsystem_dims())?;
        let base_value = T::lit(rational_to_f64(&success_probability_formula(k, d)?));
        Ok(Self { hypotheses, y, base_value })
    }

    pub fn layout(&self) -> &SubsystemLayout {
        self.hypotheses.layout()
    }

    pub fn y(&self) -> &HermitianOperator<T> {
        &self.y
    }

    /// The primal optimum `y₀ = 5/8` the ansatz is built around.
    pub fn base_value(&self) -> T {
        self.base_value
    }

    pub fn patterns(&self) -> Vec<AnomalyPattern> {
        self.hypotheses.elements().iter().map(|(r, _)| r.clone()).collect()
    }

    /// `M_r(ν) = Y − F_rᵀ/N + ν Σ_{s≠r} F_sᵀ`.
    pub fn constraint_matrix(&self, r: &AnomalyPattern, nu: T) -> Result<HermitianOperator<T>> {
        let count = T::lit(self.hypotheses.elements().len() as f64);
        let mut m = self.y.matrix().clone();
        let mut found = false;
        for (s, f) in self.hypotheses.elements() {
            let ft = f.matrix().transpose();
            if s == r {
                m.add_scaled(-count.recip(), &ft);
                found = true;
            } else {
                m.add_scaled(nu, &ft);
            }
        }
        if !found {
            return Err(Error::Config(format!("pattern {r} is not a hypothesis of the dual instance")));
        }
        Ok(HermitianOperator::new_unchecked(m, self.layout().subsystem_dims()))
    }
}

/// Certificate at multiplier `ν` for the reference pattern `{1,2}`, plus the
/// minimum eigenvalue of the unshifted `M(ν)`.
///
/// The shift is added as `(ε/d^n)·1`: this raises every eigenvalue of `M(ν)`
/// by `ε/d^n` and `tr_out Y` by `ε·1`, so `ε = d^n · max(0, −λ_min)` restores
/// positivity and the dual value becomes `y₀ + ε`.
pub fn dual_certificate_from<T: Real>(ansatz: &DualAnsatz<T>, nu: T) -> Result<(DualCertificate<T>, T)> {
    if nu <= T::zero() {
        return Err(Error::Config(format!("nu must be positive (got {nu})")));
    }
    let reference = ansatz.patterns()[0].clone();
    let min_eig = ansatz.constraint_matrix(&reference, nu)?.min_eigenvalue()?;
    let d_n = T::lit(ansatz.layout().local_dim() as f64).powi(ansatz.layout().n_devices() as i32);
    let epsilon = d_n * (-min_eig).max(T::zero());
    let shift = HermitianOperator::identity(ansatz.layout().subsystem_dims()).scale(epsilon / d_n);
    let cert = DualCertificate { y_operator: ansatz.y().add(&shift)?, y: ansatz.base_value() + epsilon, nu, epsilon };
    Ok((cert, min_eig))
}

pub fn dual_certificate(nu: f64) -> Result<(DualCertificate<f64>, f64)> {
    dual_certificate_from(&DualAnsatz::<f64>::build()?, nu)
}

/// Every dual constraint evaluated at a certificate.
#[derive(Clone, Debug, Serialize)]
pub struct DualRow {
    pub nu: f64,
    /// Minimum eigenvalue of the unshifted `M(ν)` at the reference pattern.
    pub min_eig: f64,
    pub nu_times_min_eig: f64,
    pub epsilon: f64,
    pub dual_value: f64,
    /// `min_r λ_min(M_r(ν) + (ε/d^n)·1)`.
    pub shifted_min_eig: f64,
    /// `λ_min(Y_ε)`.
    pub y_min_eig: f64,
    /// `λ_min(y·1 − tr_out Y_ε)`.
    pub marginal_slack: f64,
    pub feasible: bool,
}

/// Verifies the certificate in the full space: PSD of `M_r(ν)` shifted for
/// every pattern `r`, `Y_ε ⪰ 0`, and `y·1_in ⪰ tr_out Y_ε`.
pub fn verify_dual<T: Real>(ansatz: &DualAnsatz<T>, cert: &DualCertificate<T>, min_eig: T) -> Result<DualRow> {
    let layout = ansatz.layout();
    let d_n = T::lit(layout.local_dim() as f64).powi(layout.n_devices() as i32);
    let mut shifted = T::infinity();
    for r in ansatz.patterns() {
        let m = ansatz.constraint_matrix(&r, cert.nu)?;
        shifted = shifted.min(m.min_eigenvalue()? + cert.epsilon / d_n);
    }
    let y_min = cert.y_operator.min_eigenvalue()?;
    let marginal = cert.y_operator.partial_trace(&layout.in_legs())?;
    let slack = HermitianOperator::identity(marginal.dims().to_vec()).scale(cert.y).sub(&marginal)?;
    let slack_min = slack.min_eigenvalue()?;
    let tol = T::lit(PSD_TOL);
    Ok(DualRow {
        nu: cert.nu.to_f64_lossy(),
        min_eig: min_eig.to_f64_lossy(),
        nu_times_min_eig: (cert.nu * min_eig).to_f64_lossy(),
        epsilon: cert.epsilon.to_f64_lossy(),
        dual_value: cert.y.to_f64_lossy(),
        shifted_min_eig: shifted.to_f64_lossy(),
        y_min_eig: y_min.to_f64_lossy(),
        marginal_slack: slack_min.to_f64_lossy(),
        feasible: shifted >= -tol && y_min >= -tol && slack_min >= -tol,
    })
}

/// `(ν, ε, dual value)` for each multiplier, every row verified.
pub fn dual_gap_report(nus: &[f64]) -> Result<Vec<DualRow>> {
    let ansatz = DualAnsatz::<f64>::build()?;
    nus.iter()
        .map(|&nu| {
            let (cert, min_eig) = dual_certificate_from(&ansatz, nu)?;
            verify_dual(&ansatz, &cert, min_eig)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_trace_and_marginal() {
        let a = DualAnsatz::<f64>::build().unwrap();
        // tr(E_r F_r E_r) = tr(E_r F_r) = d^n · P_s for each pattern
        assert!((a.y().trace() - 10.0).abs() < 1e-10);
        assert!(a.y().min_eigenvalue().unwrap() > -1e-12);
        let marginal = a.y().partial_trace(&a.layout().in_legs()).unwrap();
        assert!(marginal.matrix().max_abs_diff(&ComplexMatrix::identity(16).scale(0.625)) < 1e-12);
    }

    #[test]
    fn certificate_is_feasible_and_tightens() {
        let rows = dual_gap_report(&[50.0, 200.0, 800.0]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].epsilon < w[0].epsilon);
        }
        for row in &rows {
            assert!(row.feasible, "{row:?}");
            assert!(row.min_eig < 0.0);
            assert!(row.dual_value >= 0.625 - 1e-10);
        }
        assert!(rows[2].dual_value - 0.625 <= 0.01);
    }

    #[test]
    fn rejects_bad_multiplier() {
        assert!(dual_certificate(0.0).is_err());
        assert!(dual_certificate(-1.0).is_err());
    }
}
