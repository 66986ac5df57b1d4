use crate::formulas::{boring_lhs, boring_majorant, boring_rhs};
use crate::{Error, Result};
use serde::Serialize;

/// Outcome of scanning `1 + (1−p)^{5.4} < 2^{1−2p(1−p)}` over `(0, 1/2]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoringCheck {
    pub passed: bool,
    pub points: usize,
    /// Smallest `rhs − lhs` over the grid, and where it occurs.
    pub worst_margin: f64,
    pub worst_p: f64,
    /// Smallest `rhs − (1 + e^{−5.4p})` over the grid points in `(0, 1/3]`.
    pub majorant_worst_margin: f64,
    /// Smallest `rhs − lhs` over the grid points in `(1/3, 1/2]`.
    pub direct_worst_margin: f64,
}

/// Evaluates the inequality at `p = 10⁻⁹` and `p = i/(2·grid_points)` for
/// `i = 1..=grid_points`. The split check uses the majorant
/// `(1−p)^{5.4} ≤ e^{−5.4p}` below `1/3` and the direct form above.
pub fn check_boring_inequality(grid_points: usize) -> Result<BoringCheck> {
    if grid_points < 2 {
        return Err(Error::InvalidParameter(format!("grid_points must be at least 2, got {grid_points}")));
    }
    let mut worst = (f64::INFINITY, f64::NAN);
    let mut majorant = f64::INFINITY;
    let mut direct = f64::INFINITY;
    let grid = (1..=grid_points).map(|i| 0.5 * i as f64 / grid_points as f64);
    for p in std::iter::once(1e-9).chain(grid) {
        let rhs: f64 = boring_rhs(p);
        let margin = rhs - boring_lhs(p);
        if margin < worst.0 {
            worst = (margin, p);
        }
        if p <= 1.0 / 3.0 {
            majorant = majorant.min(rhs - boring_majorant(p));
        } else {
            direct = direct.min(margin);
        }
    }
    Ok(BoringCheck {
        passed: worst.0 > 0.0 && majorant > 0.0 && direct > 0.0,
        points: grid_points + 1,
        worst_margin: worst.0,
        worst_p: worst.1,
        majorant_worst_margin: majorant,
        direct_worst_margin: direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_passes_and_worst_point_is_near_zero() {
        let c = check_boring_inequality(10_000).unwrap();
        assert!(c.passed);
        assert_eq!(c.worst_p, 1e-9);
        assert!(c.worst_margin > 0.0 && c.worst_margin < 1e-8);
        assert!(c.direct_worst_margin > 0.3);
        assert!(check_boring_inequality(1).is_err());
    }
}
