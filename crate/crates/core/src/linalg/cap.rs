use crate::error::{Error, Result};

/// Environment variable overriding the dense dimension cap.
pub const DIM_CAP_ENV: &str = "ANOMALYID_DIM_CAP";
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Largest side length a dense operator may have.
pub fn dim_cap() -> usize {
    std::env::var(DIM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_DIM_CAP)
}

pub fn check_dim(requested: usize) -> Result<()> {
    let cap = dim_cap();
    if requested > cap {
        return Err(Error::DimensionCap { requested, cap });
    }
    Ok(())
}

/// `base^exp` with overflow reported as a cap violation.
pub fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32).ok_or(Error::DimensionCap { requested: usize::MAX, cap: dim_cap() })
}
