use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, SubsystemLayout};
use crate::scalar::Real;
use crate::twirl::choi::{choi_average, identity_choi, projectors};
use crate::twirl::pattern::AnomalyPattern;

/// Subsystem permutation that moves an operator laid out as
/// `(devices in `group`, in order) ⊗ (remaining devices, ascending)` into
/// device-major order. Entry `i` names the source subsystem of target `i`.
pub fn group_to_device_major(group: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut seen = vec![false; n];
    for &g in group {
        if g >= n || std::mem::replace(&mut seen[g], true) {
            return Err(Error::Subsystems(format!("invalid device group {group:?} for {n} devices")));
        }
    }
    let rest: Vec<usize> = (0..n).filter(|j| !seen[*j]).collect();
    let mut slot = vec![0usize; n];
    for (pos, &dev) in group.iter().chain(rest.iter()).enumerate() {
        slot[dev] = pos;
    }
    Ok((0..2 * n).map(|i| 2 * slot[i / 2] + i % 2).collect())
}

fn check_pattern(s: &AnomalyPattern, layout: &SubsystemLayout) -> Result<()> {
    if s.n() != layout.n_devices() {
        return Err(Error::Shape(format!("pattern over {} devices, layout over {}", s.n(), layout.n_devices())));
    }
    Ok(())
}

/// Per-device factors of `E_s`: `Π₁` on devices in `s`, `Π₀` elsewhere.
pub fn basis_factors<T: Real>(s: &AnomalyPattern, layout: &SubsystemLayout) -> Result<Vec<HermitianOperator<T>>> {
    check_pattern(s, layout)?;
    let (p0, p1) = projectors::<T>(layout.local_dim())?;
    Ok((0..layout.n_devices()).map(|j| if s.contains_index(j) { p1.clone() } else { p0.clone() }).collect())
}

/// `E_s` as a dense operator on the device-major layout.
pub fn basis_operator_e<T: Real>(s: &AnomalyPattern, layout: &SubsystemLayout) -> Result<HermitianOperator<T>> {
    layout.check_dense()?;
    let factors = basis_factors::<T>(s, layout)?;
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.kron(f)?;
    }
    Ok(acc)
}

/// `F_r = |1⟩⟩⟨⟨1|^{⊗(n−k)} ⊗ C^(k)`, with `C^(k)` on the devices of `r` and
/// the result in device-major order.
pub fn hypothesis_choi<T: Real>(
    r: &AnomalyPattern,
    k: usize,
    layout: &SubsystemLayout,
) -> Result<HermitianOperator<T>> {
    check_pattern(r, layout)?;
    if r.len() != k || k == 0 {
        return Err(Error::Config(format!("pattern {r} does not have size k={k}")));
    }
    layout.check_dense()?;
    let d = layout.local_dim();
    let mut acc = choi_average::<T>(k, d)?;
    let phi = identity_choi::<T>(d);
    for _ in r.complement_indices() {
        acc = acc.kron(&phi)?;
    }
    acc.permute(&group_to_device_major(&r.indices(), layout.n_devices())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use proptest::prelude::*;

    fn layout(n: usize, d: usize) -> SubsystemLayout {
        SubsystemLayout::new(n, d).unwrap()
    }

    #[test]
    fn e_basis_examples() {
        let e = basis_operator_e::<f64>(&AnomalyPattern::null(1), &layout(1, 2)).unwrap();
        let (p0, p1) = projectors::<f64>(2).unwrap();
        assert!(e.matrix().max_abs_diff(p0.matrix()) < 1e-15);
        let e1 = basis_operator_e::<f64>(&AnomalyPattern::new(2, vec![1]).unwrap(), &layout(2, 2)).unwrap();
        assert!(e1.matrix().max_abs_diff(&p1.matrix().kron(p0.matrix()).unwrap()) < 1e-15);
        assert!((e1.trace() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn e_basis_orthogonal_resolution() {
        let lay = layout(3, 2);
        let all = AnomalyPattern::power_set(3);
        let ops: Vec<_> = all.iter().map(|s| basis_operator_e::<f64>(s, &lay).unwrap()).collect();
        let mut sum = ComplexMatrix::zeros(64, 64);
        for (i, a) in ops.iter().enumerate() {
            sum.add_scaled(1.0, a.matrix());
            for b in &ops[i + 1..] {
                assert!((a.matrix() * b.matrix()).max_abs() < 1e-14);
            }
        }
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(64)) < 1e-12);
    }

    #[test]
    fn single_anomaly_hypotheses() {
        for d in [2, 3] {
            let f = hypothesis_choi::<f64>(&AnomalyPattern::new(1, vec![1]).unwrap(), 1, &layout(1, d)).unwrap();
            assert!(f.matrix().max_abs_diff(&ComplexMatrix::identity(d * d).scale(1.0 / d as f64)) < 1e-14);
        }
        // F_{2} on two qubit devices: tracing out device 2 leaves 2·|1⟩⟩⟨⟨1|.
        let f = hypothesis_choi::<f64>(&AnomalyPattern::new(2, vec![2]).unwrap(), 1, &layout(2, 2)).unwrap();
        assert!((f.trace() - 4.0).abs() < 1e-12);
        let reduced = f.partial_trace(&[0, 1]).unwrap();
        assert!(reduced.matrix().max_abs_diff(identity_choi::<f64>(2).scale(2.0).matrix()) < 1e-12);
        // and device 1 alone is (1/2)·1 scaled by tr |1⟩⟩⟨⟨1| = 2
        let other = f.partial_trace(&[2, 3]).unwrap();
        assert!(other.matrix().max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn single_anomaly_expansion_in_e_basis() {
        for (n, d) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)] {
            let lay = layout(n, d);
            let e0 = basis_operator_e::<f64>(&AnomalyPattern::null(n), &lay).unwrap();
            let scale = (d as f64).powi(n as i32 - 2);
            for r in AnomalyPattern::all(n, 1) {
                let f = hypothesis_choi::<f64>(&r, 1, &lay).unwrap();
                let er = basis_operator_e::<f64>(&r, &lay).unwrap();
                let expected = e0.add(&er).unwrap().scale(scale);
                assert!(f.matrix().max_abs_diff(expected.matrix()) < 1e-10, "n={n} d={d} r={r}");
            }
        }
    }

    #[test]
    fn hypotheses_are_real_symmetric_with_trace() {
        let lay = layout(3, 2);
        for r in AnomalyPattern::all(3, 2) {
            let f = hypothesis_choi::<f64>(&r, 2, &lay).unwrap();
            assert!((f.trace() - 8.0).abs() < 1e-10);
            assert!(f.matrix().max_abs_diff(&f.matrix().transpose()) < 1e-12);
            assert!(f.min_eigenvalue().unwrap() > -1e-10);
        }
    }

    #[test]
    fn mismatched_inputs() {
        let lay = layout(2, 2);
        assert!(hypothesis_choi::<f64>(&AnomalyPattern::new(3, vec![1]).unwrap(), 1, &lay).is_err());
        assert!(hypothesis_choi::<f64>(&AnomalyPattern::new(2, vec![1]).unwrap(), 2, &lay).is_err());
        assert!(group_to_device_major(&[0, 0], 2).is_err());
    }

    proptest! {
        // Reindexing a product of distinct per-device factors must put each
        // factor on its own device.
        #[test]
        fn reindexing_places_factors(n in 1usize..4, seed in 0u64..1000) {
            let mut order: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let group: Vec<usize> = order[..(seed as usize % n) + 1].to_vec();
            let as_device = |dev: usize| {
                let diag = [1.0 + dev as f64, 10.0 + dev as f64, 20.0, 30.0 + 2.0 * dev as f64];
                HermitianOperator::<f64>::new(ComplexMatrix::from_real_diagonal(&diag), vec![2, 2]).unwrap()
            };
            let mut rest: Vec<usize> = (0..n).filter(|j| !group.contains(j)).collect();
            rest.sort_unstable();
            let source_order: Vec<usize> = group.iter().chain(rest.iter()).copied().collect();
            let mut src = as_device(source_order[0]);
            for &dev in &source_order[1..] {
                src = src.kron(&as_device(dev)).unwrap();
            }
            let mut expected = as_device(0);
            for dev in 1..n {
                expected = expected.kron(&as_device(dev)).unwrap();
            }
            let moved = src.permute(&group_to_device_major(&group, n).unwrap()).unwrap();
            prop_assert!(moved.matrix().max_abs_diff(expected.matrix()) == 0.0);
        }
    }
}
