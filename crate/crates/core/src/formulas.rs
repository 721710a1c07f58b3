//! Closed-form counts used by the catalog: trisecant degrees, node counts,
//! section counts and the slope bound for curves on a surface in `P^3`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::ring::binomial;

/// Degree and genus of a space curve, plus the auxiliary integers some
/// formulas need.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveNumerics {
    pub d: u32,
    pub g: u32,
}

impl CurveNumerics {
    pub fn new(d: u32, g: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::OutOfRange("curve degree must be at least 1".into()));
        }
        Ok(CurveNumerics { d, g })
    }

    pub fn rational(d: u32) -> Result<Self> {
        Self::new(d, 0)
    }

    pub fn trisecant_degree(&self) -> Result<BigInt> {
        berzolari(self.d, self.g)
    }
}

/// Degree of the trisecant surface of a space curve of degree `d` and genus
/// `g`: `(d-1)(d-2)(d-3)/3 - (d-2)g`.
pub fn berzolari(d: u32, g: u32) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::OutOfRange("berzolari requires d >= 1".into()));
    }
    let d = BigInt::from(d);
    let g = BigInt::from(g);
    let num: BigInt = (&d - 1) * (&d - 2) * (&d - 3);
    if !(&num % 3u32 == BigInt::from(0)) {
        return Err(Error::NonIntegral(format!("{num}/3")));
    }
    Ok(num / 3 - (&d - 2) * g)
}

/// Nodes of the plane projection of a rational curve of degree `d` from a
/// general point on it: the image has degree `d - 1`, so `C(d-2, 2)` nodes.
pub fn projection_nodes(d: u32) -> Result<BigInt> {
    if d < 3 {
        return Err(Error::OutOfRange(format!(
            "projection nodes require d >= 3, got {d}"
        )));
    }
    Ok(binomial(u64::from(d) - 2, 2))
}

/// `h^0(O_{P^3}(k)) = C(k+3, 3)`.
pub fn h0_p3(k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::OutOfRange(format!("h0_p3 requires k >= 0, got {k}")));
    }
    Ok(binomial(k as u64 + 3, 3))
}

/// `h^0(O_C(k)) = dk + 1` on a rational curve of degree `d`.
pub fn h0_curve(d: u32, k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::OutOfRange(format!(
            "h0_curve requires k >= 0, got {k}"
        )));
    }
    Ok(BigInt::from(d) * k + 1)
}

/// Lower bound on `a/b` for the proper transform `aH - bE` of a surface other
/// than `S`, from a curve `D` in `|mH - C|` on `S`:
/// `((m+d-4)e - e(e-3)) / (md - e)`, using `2g - 2 <= e(e-3)`.
///
/// As `m` grows this tends to `e/d`. It increases towards the limit when
/// `e > d` and decreases towards it when `e < d`.
pub fn z_slope(d: u32, e: u32, m: u32) -> Result<Q> {
    if d < 1 || e < 1 {
        return Err(Error::OutOfRange(
            "z_slope requires d >= 1 and e >= 1".into(),
        ));
    }
    let (d, e, m) = (i64::from(d), i64::from(e), i64::from(m));
    let den = m * d - e;
    if den <= 0 {
        return Err(Error::OutOfRange(format!(
            "z_slope requires md - e > 0, got {den}"
        )));
    }
    let num = (m + d - 4) * e - e * (e - 3);
    Ok(q(num) / q(den))
}

pub fn z_slope_limit(d: u32, e: u32) -> Result<Q> {
    if d < 1 || e < 1 {
        return Err(Error::OutOfRange(
            "z_slope requires d >= 1 and e >= 1".into(),
        ));
    }
    Ok(Q::new(BigInt::from(e), BigInt::from(d)))
}

/// Smallest `m` with `md - e > 0`.
pub fn z_slope_min_m(d: u32, e: u32) -> u32 {
    e / d + 1
}
