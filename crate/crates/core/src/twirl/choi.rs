use num_complex::Complex;

use crate::combinatorics::Permutation;
use crate::error::{Error, Result};
use crate::linalg::cap::{check_dim, checked_pow};
use crate::linalg::{ComplexMatrix, HermitianOperator};
use crate::scalar::Real;
use crate::twirl::weingarten::weingarten_table;

/// Index map of the permutation operator: basis state `x` is sent to `map[x]`.
fn perm_index_map(p: &Permutation, d: usize) -> Result<Vec<usize>> {
    let k = p.len();
    let dim = checked_pow(d, k)?;
    check_dim(dim)?;
    let inv = p.inverse();
    let mut digits = vec![0usize; k];
    let mut map = Vec::with_capacity(dim);
    for x in 0..dim {
        let mut rest = x;
        for slot in (0..k).rev() {
            digits[slot] = rest % d;
            rest /= d;
        }
        // output slot j carries input slot p⁻¹(j)
        let y = (0..k).fold(0usize, |acc, j| acc * d + digits[inv.apply(j)]);
        map.push(y);
    }
    Ok(map)
}

/// `U(p)|i₁…i_k⟩ = |i_{p⁻¹(1)}…i_{p⁻¹(k)}⟩` on `(ℂ^d)^{⊗k}`.
pub fn perm_operator<T: Real>(p: &Permutation, d: usize) -> Result<ComplexMatrix<T>> {
    let map = perm_index_map(p, d)?;
    let mut m = ComplexMatrix::zeros(map.len(), map.len());
    for (x, &y) in map.iter().enumerate() {
        m[(y, x)] = Complex::new(T::one(), T::zero());
    }
    Ok(m)
}

/// Haar average `∫ |U⟩⟩⟨⟨U|^{⊗k} dU` in the (all-in, all-out) subsystem order,
/// i.e. `Σ_{σ,π} Wg(σπ⁻¹, d) U(σ)_in ⊗ U(π)_out`.
pub fn choi_average_grouped<T: Real>(k: usize, d: usize) -> Result<HermitianOperator<T>> {
    if k == 0 || d == 0 {
        return Err(Error::Config(format!("choi_average needs k, d >= 1 (got k={k}, d={d})")));
    }
    let side = checked_pow(d, k)?;
    let dim = checked_pow(side, 2)?;
    check_dim(dim)?;
    let table = weingarten_table(k, d);
    let perms = Permutation::all(k);
    let maps: Vec<Vec<usize>> = perms.iter().map(|p| perm_index_map(p, d)).collect::<Result<_>>()?;
    let mut m = ComplexMatrix::<T>::zeros(dim, dim);
    for (s, sigma) in perms.iter().enumerate() {
        for (q, pi) in perms.iter().enumerate() {
            let w = T::lit(table.of(&sigma.compose(&pi.inverse())?));
            if w == T::zero() {
                continue;
            }
            for i in 0..side {
                let row_in = maps[s][i];
                for j in 0..side {
                    m[(row_in * side + maps[q][j], i * side + j)].re += w;
                }
            }
        }
    }
    Ok(HermitianOperator::new_unchecked(m, vec![d; 2 * k]))
}

/// Subsystem permutation taking (in₁…in_k, out₁…out_k) to (in₁, out₁, …, in_k, out_k).
pub fn grouped_to_device_major(k: usize) -> Vec<usize> {
    (0..2 * k).map(|i| if i % 2 == 0 { i / 2 } else { k + i / 2 }).collect()
}

/// `C^(k)` in device-major order `(in₁, out₁, …, in_k, out_k)`.
pub fn choi_average<T: Real>(k: usize, d: usize) -> Result<HermitianOperator<T>> {
    choi_average_grouped(k, d)?.permute(&grouped_to_device_major(k))
}

/// The four-term expression for `C^(2)`, laid out (in-pair, out-pair).
pub fn choi_two_anomalies_closed_form<T: Real>(d: usize) -> Result<HermitianOperator<T>> {
    if d < 2 {
        return Err(Error::Config(format!("closed form needs d >= 2 (got {d})")));
    }
    let id = ComplexMatrix::<T>::identity(d * d);
    let swap = perm_operator::<T>(&Permutation::transposition(2, 0, 1)?, d)?;
    let df = T::lit(d as f64);
    let mut m = id.kron(&id)?;
    m.add_scaled(-df.recip(), &id.kron(&swap)?);
    m.add_scaled(-df.recip(), &swap.kron(&id)?);
    m.add_scaled(T::one(), &swap.kron(&swap)?);
    let m = m.scale((df * df - T::one()).recip());
    Ok(HermitianOperator::new_unchecked(m, vec![d; 4]))
}

/// `|1⟩⟩ = Σ_i |i⟩|i⟩`, unnormalized.
pub fn vec_identity<T: Real>(d: usize) -> Vec<Complex<T>> {
    (0..d * d)
        .map(|x| if x / d == x % d { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) })
        .collect()
}

/// `|1⟩⟩⟨⟨1|` on one device, trace `d`.
pub fn identity_choi<T: Real>(d: usize) -> HermitianOperator<T> {
    let v = vec_identity::<T>(d);
    HermitianOperator::new_unchecked(ComplexMatrix::outer(&v, &v), vec![d, d])
}

/// `(Π₀, Π₁)` with `Π₀ = |1⟩⟩⟨⟨1|/d` and `Π₁ = 1 − Π₀`.
pub fn projectors<T: Real>(d: usize) -> Result<(HermitianOperator<T>, HermitianOperator<T>)> {
    if d < 2 {
        return Err(Error::Config(format!("projectors need d >= 2 (got {d})")));
    }
    let pi0 = identity_choi::<T>(d).scale(T::lit(d as f64).recip());
    let pi1 = HermitianOperator::identity(vec![d, d]).sub(&pi0)?;
    Ok((pi0, pi1))
}
