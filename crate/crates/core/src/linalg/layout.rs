use crate::error::{Error, Result};
use crate::linalg::cap::{check_dim, checked_pow};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// Tester-space layout: `n_devices` devices, each contributing an `(in, out)`
/// pair of `local_dim`-dimensional subsystems, device-major.
///
/// Subsystem `2j` is device `j`'s input leg, `2j + 1` its output leg (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemLayout {
    n_devices: usize,
    local_dim: usize,
}

impl SubsystemLayout {
    pub fn new(n_devices: usize, local_dim: usize) -> Result<Self> {
        if n_devices == 0 {
            return Err(Error::Config("a layout needs at least one device".into()));
        }
        if local_dim < 2 {
            return Err(Error::Config(format!("local dimension {local_dim} < 2")));
        }
        Ok(Self { n_devices, local_dim })
    }

    pub fn n_devices(&self) -> usize {
        self.n_devices
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// `d^{2n}`, or an error when that overflows.
    pub fn total_dim(&self) -> Result<usize> {
        checked_pow(self.local_dim, 2 * self.n_devices)
    }

    /// Errors unless the dense operators of this layout fit under the cap.
    pub fn check_dense(&self) -> Result<usize> {
        let dim = self.total_dim()?;
        check_dim(dim)?;
        Ok(dim)
    }

    pub fn subsystem_dims(&self) -> Vec<usize> {
        vec![self.local_dim; 2 * self.n_devices]
    }

    pub fn in_leg(&self, device: usize) -> usize {
        2 * device
    }

    pub fn out_leg(&self, device: usize) -> usize {
        2 * device + 1
    }

    pub fn in_legs(&self) -> Vec<usize> {
        (0..self.n_devices).map(|j| self.in_leg(j)).collect()
    }

    pub fn out_legs(&self) -> Vec<usize> {
        (0..self.n_devices).map(|j| self.out_leg(j)).collect()
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// For every basis index of the permuted space, the matching index of the
/// original space. Output subsystem `i` is input subsystem `perm[i]`.
fn permutation_index_map(dims: &[usize], perm: &[usize]) -> Result<Vec<usize>> {
    let k = dims.len();
    let mut seen = vec![false; k];
    if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Subsystems(format!("{perm:?} is not a permutation of {k} subsystems")));
    }
    let in_strides = strides(dims);
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let total: usize = dims.iter().product();
    let mut map = Vec::with_capacity(total);
    let mut digits = vec![0usize; k];
    for _ in 0..total {
        map.push(digits.iter().zip(perm).map(|(&x, &p)| x * in_strides[p]).sum());
        for i in (0..k).rev() {
            digits[i] += 1;
            if digits[i] < out_dims[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(map)
}

/// Reorders tensor factors: subsystem `i` of the result is subsystem `perm[i]`
/// of `m`. Returns the permuted matrix and its subsystem dimensions.
pub fn permute_subsystems<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &[usize],
    perm: &[usize],
) -> Result<(ComplexMatrix<T>, Vec<usize>)> {
    let total: usize = dims.iter().product();
    if m.rows() != total || m.cols() != total {
        return Err(Error::Shape(format!("{}x{} matrix with subsystem dims {dims:?}", m.rows(), m.cols())));
    }
    let map = permutation_index_map(dims, perm)?;
    let out = ComplexMatrix::from_fn(total, total, |r, c| m[(map[r], map[c])]);
    Ok((out, perm.iter().map(|&p| dims[p]).collect()))
}

/// Same reordering applied to a state vector.
pub fn permute_vector<T: Real>(
    v: &[num_complex::Complex<T>],
    dims: &[usize],
    perm: &[usize],
) -> Result<Vec<num_complex::Complex<T>>> {
    let map = permutation_index_map(dims, perm)?;
    if v.len() != map.len() {
        return Err(Error::Shape(format!("vector of length {} with dims {dims:?}", v.len())));
    }
    Ok(map.iter().map(|&i| v[i]).collect())
}

/// Traces out every subsystem not listed in `keep`; kept subsystems stay in
/// their original relative order.
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    dims: &[usize],
    keep: &[usize],
) -> Result<(ComplexMatrix<T>, Vec<usize>)> {
    let total: usize = dims.iter().product();
    if m.rows() != total || m.cols() != total {
        return Err(Error::Shape(format!("{}x{} matrix with subsystem dims {dims:?}", m.rows(), m.cols())));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    if kept.windows(2).any(|w| w[0] == w[1]) || kept.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Subsystems(format!("invalid keep set {keep:?} for {} subsystems", dims.len())));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
    let st = strides(dims);
    let offsets = |which: &[usize]| -> Vec<usize> {
        let mut offs = vec![0usize];
        for &s in which {
            let mut next = Vec::with_capacity(offs.len() * dims[s]);
            for &o in &offs {
                for x in 0..dims[s] {
                    next.push(o + x * st[s]);
                }
            }
            offs = next;
        }
        offs
    };
    let keep_off = offsets(&kept);
    let trace_off = offsets(&traced);
    let out = ComplexMatrix::from_fn(keep_off.len(), keep_off.len(), |r, c| {
        trace_off.iter().map(|&t| m[(keep_off[r] + t, keep_off[c] + t)]).sum()
    });
    Ok((out, kept.iter().map(|&k| dims[k]).collect()))
}
