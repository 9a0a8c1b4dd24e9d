use num_complex::Complex;
use rand::Rng;
use serde::Serialize;

use crate::brauer::diagram::{Endpoint, Row, WalledBrauerDiagram};
use crate::error::{Error, Result};
use crate::linalg::cap::{check_dim, checked_pow};
use crate::linalg::{haar_unitary, ComplexMatrix};
use crate::scalar::Real;

/// Generators of the walled Brauer algebra, indexed as in `s_i`, `e_n` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `s_i`, `1 ≤ i < n`.
    LeftTransposition(usize),
    /// `e_n`, joining strand `n` to strand `n + 1` across the wall.
    Contraction,
    /// `s_i`, `n < i < n + m`.
    RightTransposition(usize),
}

pub fn generator(kind: Generator, n: usize, m: usize) -> Result<WalledBrauerDiagram> {
    let len = n + m;
    let through = |skip: &[usize]| -> Vec<(Endpoint, Endpoint)> {
        (1..=len).filter(|p| !skip.contains(p)).map(|p| (Endpoint(Row::Top, p), Endpoint(Row::Bottom, p))).collect()
    };
    let swap = |i: usize| {
        let mut pairs = through(&[i, i + 1]);
        pairs.push((Endpoint(Row::Top, i), Endpoint(Row::Bottom, i + 1)));
        pairs.push((Endpoint(Row::Top, i + 1), Endpoint(Row::Bottom, i)));
        pairs
    };
    let pairs = match kind {
        Generator::LeftTransposition(i) => {
            if i == 0 || i >= n {
                return Err(Error::GeneratorIndex {
                    index: i,
                    reason: format!("left transpositions need 1 <= i < n = {n}"),
                });
            }
            swap(i)
        }
        Generator::RightTransposition(i) => {
            if i <= n || i >= len {
                return Err(Error::GeneratorIndex {
                    index: i,
                    reason: format!("right transpositions need n = {n} < i < n + m = {len}"),
                });
            }
            swap(i)
        }
        Generator::Contraction => {
            if n == 0 || m == 0 {
                return Err(Error::GeneratorIndex { index: n, reason: "the contraction needs n, m >= 1".into() });
            }
            let mut pairs = through(&[n, n + 1]);
            pairs.push((Endpoint(Row::Top, n), Endpoint(Row::Top, n + 1)));
            pairs.push((Endpoint(Row::Bottom, n), Endpoint(Row::Bottom, n + 1)));
            pairs
        }
    };
    WalledBrauerDiagram::from_pairs(n, m, &pairs)
}

/// `s_i` with the side inferred from `i`; `s_n` is rejected since it would
/// carry a strand across the wall.
pub fn transposition(i: usize, n: usize, m: usize) -> Result<WalledBrauerDiagram> {
    if i < n {
        generator(Generator::LeftTransposition(i), n, m)
    } else if i > n {
        generator(Generator::RightTransposition(i), n, m)
    } else {
        Err(Error::GeneratorIndex { index: i, reason: format!("s_{i} would cross the wall at n = {n}") })
    }
}

/// Matrix of the diagram on `(ℂ^d)^{⊗(n+m)}`: the top row indexes rows, the
/// bottom row indexes columns, and each strand contributes a Kronecker delta.
pub fn diagram_to_operator<T: Real>(a: &WalledBrauerDiagram, d: usize) -> Result<ComplexMatrix<T>> {
    let len = a.len();
    let dim = checked_pow(d, len)?;
    check_dim(dim)?;
    let partner = a.partner_table();
    let one = Complex::new(T::one(), T::zero());
    let mut m = ComplexMatrix::zeros(dim, dim);
    // Enumerate only consistent index assignments: one free value per strand.
    let strands: Vec<(usize, usize)> = (0..2 * len).filter(|&x| x < partner[x]).map(|x| (x, partner[x])).collect();
    let mut dots = vec![0usize; 2 * len];
    let total = checked_pow(d, strands.len())?;
    for code in 0..total {
        let mut rest = code;
        for &(x, y) in &strands {
            let v = rest % d;
            rest /= d;
            dots[x] = v;
            dots[y] = v;
        }
        let row = (0..len).fold(0, |acc, p| acc * d + dots[p]);
        let col = (0..len).fold(0, |acc, p| acc * d + dots[len + p]);
        m[(row, col)] = one;
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub relations: Vec<RelationResidual>,
    pub max_residual: f64,
}

/// Evaluates every defining relation of the algebra as a matrix identity.
pub fn check_generator_relations(n: usize, m: usize, d: usize) -> Result<RelationReport> {
    let len = n + m;
    let op = |dg: &WalledBrauerDiagram| diagram_to_operator::<f64>(dg, d);
    let id = ComplexMatrix::<f64>::identity(checked_pow(d, len)?);
    let s: Vec<Option<ComplexMatrix<f64>>> =
        (0..len).map(|i| transposition(i, n, m).ok().map(|g| op(&g)).transpose()).collect::<Result<_>>()?;
    let valid: Vec<usize> = (1..len).filter(|&i| s[i].is_some()).collect();
    let si = |i: usize| s[i].as_ref().expect("valid index");
    let e = if n >= 1 && m >= 1 { Some(op(&generator(Generator::Contraction, n, m)?)?) } else { None };
    let mut rels = Vec::new();
    let mut push = |name: String, lhs: ComplexMatrix<f64>, rhs: ComplexMatrix<f64>| {
        rels.push(RelationResidual { relation: name, residual: lhs.max_abs_diff(&rhs) });
    };
    let prod = |ms: &[&ComplexMatrix<f64>]| ms.iter().skip(1).fold(ms[0].clone(), |acc, x| &acc * x);

    for &i in &valid {
        push(format!("s_{i}^2 = 1"), prod(&[si(i), si(i)]), id.clone());
        for &j in &valid {
            if j > i + 1 {
                push(format!("s_{i} s_{j} = s_{j} s_{i}"), prod(&[si(i), si(j)]), prod(&[si(j), si(i)]));
            }
        }
        if valid.contains(&(i + 1)) {
            let i1 = i + 1;
            push(
                format!("s_{i} s_{i1} s_{i} = s_{i1} s_{i} s_{i1}"),
                prod(&[si(i), si(i1), si(i)]),
                prod(&[si(i1), si(i), si(i1)]),
            );
        }
    }
    if let Some(e) = &e {
        push("e_n^2 = d e_n".into(), prod(&[e, e]), e.scale(d as f64));
        for &i in &valid {
            if i + 1 != n && i != n + 1 {
                push(format!("s_{i} e_n = e_n s_{i}"), prod(&[si(i), e]), prod(&[e, si(i)]));
            } else {
                push(format!("e_n s_{i} e_n = e_n"), prod(&[e, si(i), e]), e.clone());
            }
        }
        if n >= 2 && m >= 2 {
            let (a, b) = (si(n + 1), si(n - 1));
            push(
                "e_n s_{n+1} s_{n-1} e_n s_{n-1} = e_n s_{n+1} s_{n-1} e_n s_{n+1}".into(),
                prod(&[e, a, b, e, b]),
                prod(&[e, a, b, e, a]),
            );
            push(
                "s_{n-1} e_n s_{n+1} s_{n-1} e_n = s_{n+1} e_n s_{n+1} s_{n-1} e_n".into(),
                prod(&[b, e, a, b, e]),
                prod(&[a, e, a, b, e]),
            );
        }
    }
    let max_residual = rels.iter().map(|r| r.residual).fold(0.0, f64::max);
    Ok(RelationReport { n, m, d, relations: rels, max_residual })
}

/// `U^{⊗n} ⊗ (U*)^{⊗m}`.
pub fn mixed_action<T: Real>(u: &ComplexMatrix<T>, n: usize, m: usize) -> Result<ComplexMatrix<T>> {
    let conj = u.conj();
    let mut acc = ComplexMatrix::identity(1);
    for _ in 0..n {
        acc = acc.kron(u)?;
    }
    for _ in 0..m {
        acc = acc.kron(&conj)?;
    }
    Ok(acc)
}

/// Largest `‖[op(a), U^{⊗n} ⊗ (U*)^{⊗m}]‖_max` over Haar samples.
pub fn check_commutant<T: Real, R: Rng + ?Sized>(
    a: &WalledBrauerDiagram,
    d: usize,
    trials: usize,
    rng: &mut R,
) -> Result<T> {
    let op = diagram_to_operator::<T>(a, d)?;
    let mut worst = T::zero();
    for _ in 0..trials {
        let u = haar_unitary::<T, _>(d, rng);
        let w = mixed_action(u.matrix(), a.n_left(), a.n_right())?;
        worst = worst.max(op.commutator(&w)?.max_abs());
    }
    Ok(worst)
}

/// `‖op(a)·op(b) − d^l·op(c)‖_max` with `(c, l) = a ∘ b`; returns the residual and `l`.
pub fn homomorphism_check(a: &WalledBrauerDiagram, b: &WalledBrauerDiagram, d: usize) -> Result<(f64, usize)> {
    let c = a.compose(b)?;
    let lhs = &diagram_to_operator::<f64>(a, d)? * &diagram_to_operator::<f64>(b, d)?;
    let rhs = diagram_to_operator::<f64>(&c.diagram, d)?.scale((d as f64).powi(c.loop_count as i32));
    Ok((lhs.max_abs_diff(&rhs), c.loop_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Permutation;
    use crate::twirl::perm_operator;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_examples() {
        let s1 = generator(Generator::LeftTransposition(1), 2, 0).unwrap();
        assert_eq!(
            s1.pairs(),
            vec![(Endpoint(Row::Top, 1), Endpoint(Row::Bottom, 2)), (Endpoint(Row::Top, 2), Endpoint(Row::Bottom, 1)),]
        );
        let e = generator(Generator::Contraction, 1, 1).unwrap();
        assert_eq!(
            e.pairs(),
            vec![(Endpoint(Row::Top, 1), Endpoint(Row::Top, 2)), (Endpoint(Row::Bottom, 1), Endpoint(Row::Bottom, 2)),]
        );
        let s2 = generator(Generator::RightTransposition(2), 1, 2).unwrap();
        assert!(s2.pairs().contains(&(Endpoint(Row::Top, 2), Endpoint(Row::Bottom, 3))));
        assert!(transposition(2, 2, 2).is_err());
        assert!(generator(Generator::LeftTransposition(2), 2, 2).is_err());
        assert!(generator(Generator::RightTransposition(4), 2, 2).is_err());
        assert!(generator(Generator::Contraction, 2, 0).is_err());
    }

    #[test]
    fn operator_examples() {
        assert_eq!(
            diagram_to_operator::<f64>(&WalledBrauerDiagram::identity(1, 2), 2).unwrap(),
            ComplexMatrix::identity(8)
        );
        let e = diagram_to_operator::<f64>(&generator(Generator::Contraction, 1, 1).unwrap(), 2).unwrap();
        let expected =
            ComplexMatrix::from_fn(4, 4, |r, c| Complex::new(if r % 3 == 0 && c % 3 == 0 { 1.0 } else { 0.0 }, 0.0));
        assert_eq!(e, expected);
        let s1 = diagram_to_operator::<f64>(&generator(Generator::LeftTransposition(1), 2, 0).unwrap(), 3).unwrap();
        assert_eq!(s1, perm_operator::<f64>(&Permutation::transposition(2, 0, 1).unwrap(), 3).unwrap());
    }

    #[test]
    fn relations_small() {
        let r = check_generator_relations(1, 1, 3).unwrap();
        assert_eq!(r.relations.len(), 1);
        assert_eq!(r.max_residual, 0.0);
        let r = check_generator_relations(3, 0, 2).unwrap();
        assert!(r.relations.iter().any(|x| x.relation.contains("s_1 s_2 s_1")));
        assert_eq!(r.max_residual, 0.0);
        let r = check_generator_relations(2, 2, 2).unwrap();
        assert!(r.relations.len() >= 8);
        assert!(r.max_residual <= 1e-12);
    }

    #[test]
    fn homomorphism_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let e = generator(Generator::Contraction, 1, 1).unwrap();
        assert_eq!(homomorphism_check(&e, &e, 2).unwrap(), (0.0, 1));
        for _ in 0..20 {
            let a = WalledBrauerDiagram::random(2, 2, &mut rng);
            let b = WalledBrauerDiagram::random(2, 2, &mut rng);
            assert!(homomorphism_check(&a, &b, 3).unwrap().0 <= 1e-10);
        }
    }

    #[test]
    fn commutant_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let e = generator(Generator::Contraction, 1, 1).unwrap();
        assert!(check_commutant::<f64, _>(&e, 2, 20, &mut rng).unwrap() <= 1e-12);
        // the SWAP of V ⊗ V* is not a walled diagram and does not commute
        let swap = diagram_to_operator::<f64>(&generator(Generator::LeftTransposition(1), 2, 0).unwrap(), 2).unwrap();
        let u = haar_unitary::<f64, _>(2, &mut rng);
        let w = mixed_action(u.matrix(), 1, 1).unwrap();
        assert!(swap.commutator(&w).unwrap().max_abs() > 1e-3);
    }

    #[test]
    fn faithful_for_large_d() {
        for (n, m, d) in [(1, 1, 2), (2, 2, 4)] {
            let ops: Vec<_> =
                WalledBrauerDiagram::all(n, m).iter().map(|a| diagram_to_operator::<f64>(a, d).unwrap()).collect();
            for i in 0..ops.len() {
                for j in i + 1..ops.len() {
                    assert!(ops[i] != ops[j]);
                }
            }
        }
    }
}
