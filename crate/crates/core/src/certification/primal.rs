use serde::Serialize;

use crate::certification::formula::{rational_string, rational_to_f64, success_probability_formula};
use crate::certification::testers::{
    checked_instance, completeness_residual, min_tester_eigenvalue, optimal_testers, success_probability_born,
    zero_error_residual, EigenMethod, Hypotheses,
};
use crate::certification::tolerance::{EQUALITY_TOL, PSD_TOL};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::twirl::{choi_average, identity_choi, projectors, AnomalyPattern};

/// Which representation the checks ran on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Representation {
    /// Full `d^{2n} × d^{2n}` matrices.
    Dense,
    /// Per-device factors; valid at any `n` because every tester and
    /// hypothesis is a tensor product across devices (or across the anomalous
    /// group for `C^(k)`).
    Factorized,
}

/// Every primal check for the optimal parallel testers at one instance.
#[derive(Clone, Debug, Serialize)]
pub struct PrimalReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub patterns: usize,
    pub representation: Representation,
    pub born: f64,
    pub formula: String,
    pub formula_value: f64,
    pub born_error: f64,
    pub zero_error_residual: f64,
    pub completeness_residual: f64,
    pub min_eigenvalue: f64,
    pub min_eigenvalue_method: EigenMethod,
    pub pass: bool,
}

impl PrimalReport {
    fn finish(mut self) -> Self {
        self.born_error = (self.born - self.formula_value).abs();
        self.pass = self.born_error <= EQUALITY_TOL
            && self.zero_error_residual <= EQUALITY_TOL
            && self.completeness_residual <= EQUALITY_TOL
            && self.min_eigenvalue >= -PSD_TOL;
        self
    }
}

fn skeleton(n: usize, k: usize, d: usize, representation: Representation) -> Result<PrimalReport> {
    let formula = success_probability_formula(k, d)?;
    Ok(PrimalReport {
        n,
        k,
        d,
        patterns: AnomalyPattern::all(n, k).len(),
        representation,
        born: f64::NAN,
        formula: rational_string(&formula),
        formula_value: rational_to_f64(&formula),
        born_error: f64::NAN,
        zero_error_residual: f64::NAN,
        completeness_residual: f64::NAN,
        min_eigenvalue: f64::NAN,
        min_eigenvalue_method: EigenMethod::Dense,
        pass: false,
    })
}

/// Primal checks on dense operators; fails when the layout exceeds the cap.
pub fn certify_primal_dense(n: usize, k: usize, d: usize) -> Result<PrimalReport> {
    let t = optimal_testers::<f64>(n, k, d)?;
    let h = Hypotheses::<f64>::build(n, k, d)?;
    let mut report = skeleton(n, k, d, Representation::Dense)?;
    report.born = success_probability_born(&t, &h)?;
    report.zero_error_residual = zero_error_residual(&t, &h)?;
    report.completeness_residual = completeness_residual(&t);
    let (min_eig, method) = min_tester_eigenvalue(&t)?;
    report.min_eigenvalue = min_eig;
    report.min_eigenvalue_method = method;
    Ok(report.finish())
}

/// Per-device factors `(Π₀, Π₁)` of the E basis and the per-device pairing data.
struct LocalData {
    pi: [ComplexMatrix<f64>; 2],
    /// `tr(Π_bᵀ |1⟩⟩⟨⟨1|)` for `b = 0, 1`.
    phi_overlap: [f64; 2],
    /// Spectrum of `Π_b`.
    spectra: [Vec<f64>; 2],
    /// `‖Π₀ + Π₁ − 1‖_max`, the only floating-point input to the E-basis resolution of identity.
    resolution_residual: f64,
}

impl LocalData {
    fn new(d: usize) -> Result<Self> {
        let (p0, p1) = projectors::<f64>(d)?;
        let phi = identity_choi::<f64>(d);
        let overlap =
            |p: &HermitianOperator<f64>| -> Result<f64> { Ok(p.matrix().trace_transpose_product(phi.matrix())?.re) };
        let resolution_residual = (p0.matrix() + p1.matrix()).max_abs_diff(&ComplexMatrix::identity(d * d));
        Ok(Self {
            phi_overlap: [overlap(&p0)?, overlap(&p1)?],
            spectra: [p0.eigenvalues()?, p1.eigenvalues()?],
            pi: [p0.into_matrix(), p1.into_matrix()],
            resolution_residual,
        })
    }

    /// Dense `⊗_{j∈group} Π_{[j∈s]}` on the devices of `group`, in order.
    fn group_factor(&self, s: &AnomalyPattern, group: &[usize]) -> Result<ComplexMatrix<f64>> {
        let mut acc = ComplexMatrix::identity(1);
        for &j in group {
            acc = acc.kron(&self.pi[s.contains_index(j) as usize])?;
        }
        Ok(acc)
    }
}

/// `tr(E_sᵀ F_r)` without forming either operator: the pairing factorizes
/// into `|1⟩⟩⟨⟨1|` overlaps on devices outside `r` and one `d^{2k}`-sized
/// trace against `C^(k)` on the devices of `r`.
fn pairing(local: &LocalData, choi: &HermitianOperator<f64>, s: &AnomalyPattern, r: &AnomalyPattern) -> Result<f64> {
    let outside: f64 =
        r.complement_indices().iter().map(|&j| local.phi_overlap[s.contains_index(j) as usize]).product();
    if outside == 0.0 {
        return Ok(0.0);
    }
    let inside = local.group_factor(s, &r.indices())?.trace_transpose_product(choi.matrix())?;
    Ok(outside * inside.re)
}

/// Primal checks on the factorized representation; feasible for any `n`
/// with `d^{2k}` under the dimension cap.
pub fn certify_primal_factorized(n: usize, k: usize, d: usize) -> Result<PrimalReport> {
    let _ = checked_instance(n, k, d)?;
    if n > 24 {
        return Err(Error::Unsupported(format!("factorized path enumerates 2^n E-basis labels; n={n} is too large")));
    }
    let local = LocalData::new(d)?;
    let choi = choi_average::<f64>(k, d)?;
    let norm = (d as f64).powi(n as i32).recip();
    let patterns = AnomalyPattern::all(n, k);
    let mut report = skeleton(n, k, d, Representation::Factorized)?;

    let mut born = 0.0;
    let mut cross: f64 = 0.0;
    for s in &patterns {
        for r in &patterns {
            let v = norm * pairing(&local, &choi, s, r)?;
            if s == r {
                born += v;
            } else {
                cross = cross.max(v.abs());
            }
        }
    }
    report.born = born / patterns.len() as f64;
    report.zero_error_residual = cross;

    // Expanded in the E basis (Σ_s E_s = (Π₀ + Π₁)^{⊗n}), the conclusive
    // elements carry coefficient d^{-n}·count_s on E_s and T_? = d^{-n}(1 − Σ_r E_r)
    // carries d^{-n}(1 − count_s). The E_s are orthogonal nonzero projectors, so
    // these coefficients are exactly the spectra.
    let labels = AnomalyPattern::power_set(n);
    let counts: Vec<f64> = labels.iter().map(|s| patterns.iter().filter(|r| *r == s).count() as f64).collect();
    let inconclusive: Vec<f64> = counts.iter().map(|c| 1.0 - c).collect();
    let coefficient_error = counts.iter().zip(&inconclusive).map(|(c, q)| (c + q - 1.0).abs()).fold(0.0, f64::max);
    let product_error = (1.0 + local.resolution_residual).powi(n as i32) - 1.0;
    report.completeness_residual = norm * (coefficient_error + product_error);

    // T_r is a product of projectors: its spectrum is the set of products of factor eigenvalues.
    let mut min_eig = f64::INFINITY;
    for r in &patterns {
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        for j in 0..n {
            let spec = &local.spectra[r.contains_index(j) as usize];
            let (smin, smax) = spec.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            let cands = [lo * smin, lo * smax, hi * smin, hi * smax];
            lo = cands.iter().copied().fold(f64::INFINITY, f64::min);
            hi = cands.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        }
        min_eig = min_eig.min(norm * lo);
    }
    let inconclusive_min = norm * inconclusive.iter().copied().fold(f64::INFINITY, f64::min);
    report.min_eigenvalue = min_eig.min(inconclusive_min);
    report.min_eigenvalue_method = EigenMethod::SpectralProduct;
    Ok(report.finish())
}

/// Dense checks when the layout fits under the dimension cap, factorized otherwise.
pub fn certify_primal(n: usize, k: usize, d: usize) -> Result<PrimalReport> {
    let layout = checked_instance(n, k, d)?;
    match layout.check_dense() {
        Ok(_) => certify_primal_dense(n, k, d),
        Err(Error::DimensionCap { .. }) => certify_primal_factorized(n, k, d),
        Err(e) => Err(e),
    }
}

/// Born value at each `n`; the optimum is independent of the number of devices.
#[derive(Clone, Debug, Serialize)]
pub struct NIndependenceRow {
    pub n: usize,
    pub born: f64,
    pub deviation: f64,
}

pub fn n_independence_check(ns: &[usize], k: usize, d: usize) -> Result<Vec<NIndependenceRow>> {
    let target = rational_to_f64(&success_probability_formula(k, d)?);
    ns.iter()
        .map(|&n| {
            let report = certify_primal(n, k, d)?;
            Ok(NIndependenceRow { n, born: report.born, deviation: (report.born - target).abs() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_and_factorized_agree() {
        for (n, k, d) in [(1, 1, 2), (2, 1, 2), (3, 2, 2), (2, 2, 3), (3, 1, 3), (4, 2, 2)] {
            let a = certify_primal_dense(n, k, d).unwrap();
            let b = certify_primal_factorized(n, k, d).unwrap();
            assert!(a.pass && b.pass, "({n},{k},{d}): {a:?} {b:?}");
            assert!((a.born - b.born).abs() < 1e-12);
            assert!((a.min_eigenvalue - b.min_eigenvalue).abs() < 1e-10);
        }
    }

    #[test]
    fn falls_back_beyond_the_cap() {
        let r = certify_primal(5, 1, 3).unwrap();
        assert_eq!(r.representation, Representation::Factorized);
        assert!((r.born - 8.0 / 9.0).abs() < 1e-12 && r.pass);
        let r = certify_primal(5, 2, 3).unwrap();
        assert!((r.born - 65.0 / 81.0).abs() < 1e-12 && r.pass);
    }

    #[test]
    fn invalid_instances() {
        assert!(certify_primal(2, 0, 2).is_err());
        assert!(certify_primal(2, 3, 2).is_err());
        assert!(certify_primal(2, 1, 1).is_err());
    }

    #[test]
    fn single_anomaly_independent_of_n() {
        for row in n_independence_check(&[1, 2, 3, 4, 5], 1, 2).unwrap() {
            assert!(row.deviation < 1e-10, "{row:?}");
        }
    }
}
