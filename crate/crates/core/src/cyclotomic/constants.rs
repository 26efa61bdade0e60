use num_complex::Complex64;
use num_rational::BigRational;
use std::f64::consts::PI;

use super::CycNum;
use crate::error::InvariantError;

/// Normalization constants at level 4, all in Q(zeta_16).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactConstants {
    pub level: u32,
    /// Root used by the universal R-matrix, t = exp(-2 pi i / 4r).
    pub t_algebra: CycNum,
    /// Root used by the color-2 bridge formula J = t^(3 L.L) sqrt2 I, t = exp(2 pi i / 16).
    pub t_bridge: CycNum,
    /// b = sqrt(2/r) sin(pi/r).
    pub b: BigRational,
    /// c = exp(-6 pi i (r - 2) / 8r).
    pub c: CycNum,
    pub sqrt2: CycNum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxConstants {
    pub level: u32,
    pub t_algebra: Complex64,
    pub b: f64,
    pub c: Complex64,
}

/// Exact constants; only level 4 is realized exactly.
pub fn constants(r: u32) -> Result<ExactConstants, InvariantError> {
    if r < 2 {
        return Err(InvariantError::BadLevel(r));
    }
    if r != 4 {
        return Err(InvariantError::ApproximateOnly(r));
    }
    Ok(ExactConstants {
        level: 4,
        t_algebra: CycNum::zeta(16, -1),
        t_bridge: CycNum::zeta(16, 1),
        b: BigRational::new(1.into(), 2.into()),
        // -6 pi (r-2) / 8r = -3 pi / 8 = 2 pi (-3) / 16
        c: CycNum::zeta(16, -3),
        sqrt2: CycNum::sqrt2(16),
    })
}

pub fn approx_constants(r: u32) -> Result<ApproxConstants, InvariantError> {
    if r < 2 {
        return Err(InvariantError::BadLevel(r));
    }
    let rf = r as f64;
    Ok(ApproxConstants {
        level: r,
        t_algebra: Complex64::from_polar(1.0, -2.0 * PI / (4.0 * rf)),
        b: (2.0 / rf).sqrt() * (PI / rf).sin(),
        c: Complex64::from_polar(1.0, -6.0 * PI * (rf - 2.0) / (8.0 * rf)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_four_constants_match_formulas() {
        let exact = constants(4).unwrap();
        let approx = approx_constants(4).unwrap();
        assert_eq!(exact.b, BigRational::new(1.into(), 2.into()));
        assert!((approx.b - 0.5).abs() < 1e-15);
        assert_eq!(exact.c, CycNum::zeta(16, -3));
        assert!((exact.c.approx() - approx.c).norm() < 1e-14);
        assert_eq!(exact.t_bridge, CycNum::zeta(16, 1));
        assert!((exact.t_algebra.approx() - approx.t_algebra).norm() < 1e-14);
        assert_eq!(exact.t_algebra, exact.t_bridge.conj());
    }

    #[test]
    fn other_levels_are_approximate_only() {
        assert_eq!(constants(5), Err(InvariantError::ApproximateOnly(5)));
        assert_eq!(constants(1), Err(InvariantError::BadLevel(1)));
        assert!(approx_constants(7).is_ok());
    }
}
