use std::collections::BTreeMap;

use num_complex::Complex;
use serde::Serialize;

use crate::combinatorics::{Partition, Permutation};
use crate::linalg::{hermitian_eig, ComplexMatrix};

/// Relative eigenvalue cutoff below which the Gram matrix is treated as singular.
const GRAM_RANK_TOL: f64 = 1e-10;

/// `Wg(σ, d)` for every cycle type `σ ⊢ k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeingartenTable {
    pub k: usize,
    pub d: usize,
    pub values: BTreeMap<Partition, f64>,
    /// True when `k > d`: the Gram matrix is singular and its Moore–Penrose
    /// pseudo-inverse was used.
    pub pseudo_inverse: bool,
}

impl WeingartenTable {
    pub fn get(&self, cycle_type: &Partition) -> f64 {
        self.values.get(cycle_type).copied().unwrap_or(0.0)
    }

    pub fn of(&self, p: &Permutation) -> f64 {
        self.get(&p.cycle_type())
    }
}

/// Builds the `k!×k!` Gram matrix `G[σ,π] = d^{#cycles(σπ⁻¹)}` and inverts it.
///
/// The inverse is computed spectrally, which makes the singular (`k > d`) case
/// a matter of dropping the null eigenvalues. `Wg` is a class function, so only
/// the row of the identity is kept, keyed by cycle type.
pub fn weingarten_table(k: usize, d: usize) -> WeingartenTable {
    assert!(k >= 1 && d >= 1, "Weingarten table needs k, d >= 1");
    let perms = Permutation::all(k);
    let size = perms.len();
    let df = d as f64;
    let gram = ComplexMatrix::from_fn(size, size, |a, b| {
        let c = perms[a].compose(&perms[b].inverse()).expect("same degree").num_cycles();
        Complex::new(df.powi(c as i32), 0.0)
    });
    let eig = hermitian_eig(&gram).expect("Gram matrix is real symmetric");
    let top = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cutoff = GRAM_RANK_TOL * top;
    // Row 0 of G⁺, since perms[0] is the identity.
    let mut row = vec![0.0; size];
    for (idx, &lambda) in eig.values.iter().enumerate() {
        if lambda.abs() <= cutoff {
            continue;
        }
        let v0 = eig.vectors[(0, idx)];
        for (b, slot) in row.iter_mut().enumerate() {
            *slot += (v0 * eig.vectors[(b, idx)].conj()).re / lambda;
        }
    }
    let mut values = BTreeMap::new();
    for (p, w) in perms.iter().zip(row) {
        values.entry(p.cycle_type()).or_insert(w);
    }
    WeingartenTable { k, d, values, pseudo_inverse: k > d }
}
