//! Process-wide numerical configuration.
//!
//! A single absolute tolerance governs every sphere-membership, tightness and
//! containment test so that certificates produced by different modules stay
//! comparable. It can be changed once at start-up (the CLI `--tol` flag) and is
//! read everywhere through [`tolerance`].

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_VERTEX_BUDGET: usize = 1 << 16;
/// Singular values below this count as rank deficiency.
pub const RANK_THRESHOLD: f64 = 1e-10;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9
static VERTEX_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_VERTEX_BUDGET);

pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

pub fn set_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be a positive finite number, got {tol}"
        )));
    }
    TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
    Ok(())
}

pub fn vertex_budget() -> usize {
    VERTEX_BUDGET.load(Ordering::Relaxed)
}

pub fn set_vertex_budget(budget: usize) -> Result<()> {
    if budget == 0 {
        return Err(Error::InvalidConfig("vertex budget must be positive".into()));
    }
    VERTEX_BUDGET.store(budget, Ordering::Relaxed);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bits_decode_to_default_tolerance() {
        assert_eq!(DEFAULT_TOLERANCE.to_bits(), 0x3E11_2E0B_E826_D695);
        assert_eq!(tolerance(), DEFAULT_TOLERANCE);
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        assert!(set_tolerance(0.0).is_err());
        assert!(set_tolerance(f64::NAN).is_err());
        assert!(set_vertex_budget(0).is_err());
    }
}
