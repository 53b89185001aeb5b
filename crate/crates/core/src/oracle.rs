//! Independent verification oracle: uniform convexity of f on |z| < r via
//! the disk criterion Re(1 + z f″/f′) > |z f″/f′| on |z| = r, checked by
//! dense angular sampling of the complex ratio series. Shares no code path
//! with the two radius routes beyond the raw Taylor coefficients.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::ratio_one_plus_zfpp_fp;
use crate::radius::{Method, RadiusResult};
use crate::scalar::{Field, Real};
use crate::wright::ratio_one_plus_zfpp_fp_wright;
use crate::zeros::Family;
use crate::Norm;

/// Angular minimum of the uniform-convexity margin on one circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginReport<R> {
    pub r: R,
    /// min over θ of Re(Q) − |Q − 1| with Q = 1 + z f″/f′, z = r e^{iθ}.
    pub min_margin: R,
    pub argmin_angle: R,
    pub samples: usize,
}

const COARSE_SAMPLES: usize = 512;
const REFINE_SAMPLES: usize = 64;

fn ratio_q<R: Real>(family: &Family<R>, norm: Norm, z: Complex<R>) -> Result<Complex<R>>
where
    Complex<R>: Field<Re = R>,
{
    match family {
        Family::QBessel(p) => ratio_one_plus_zfpp_fp::<Complex<R>>(*p, norm, z),
        Family::Wright(p) => ratio_one_plus_zfpp_fp_wright::<Complex<R>>(*p, norm, z),
    }
}

fn margin_at<R: Real>(family: &Family<R>, norm: Norm, r: R, theta: R) -> Result<R>
where
    Complex<R>: Field<Re = R>,
{
    let z = Complex::new(r * theta.cos(), r * theta.sin());
    let q = ratio_q(family, norm, z)?;
    Ok(q.re - (q - Complex::new(R::one(), R::zero())).norm())
}

/// Minimum uniform-convexity margin over the circle |z| = r.
///
/// The ratio has real Taylor coefficients, so the margin is symmetric in θ
/// and only [0, π] is sampled; a second pass refines around the coarse
/// minimum.
pub fn uc_margin<R: Real>(family: &Family<R>, norm: Norm, r: R) -> Result<MarginReport<R>>
where
    Complex<R>: Field<Re = R>,
{
    let pi = R::of(std::f64::consts::PI);
    let mut best = (R::infinity(), R::zero());
    let step = pi / R::of((COARSE_SAMPLES - 1) as f64);
    for i in 0..COARSE_SAMPLES {
        let theta = step * R::of(i as f64);
        let m = margin_at(family, norm, r, theta)?;
        if m < best.0 {
            best = (m, theta);
        }
    }
    let lo = (best.1 - step).max(R::zero());
    let hi = (best.1 + step).min(pi);
    let fine = (hi - lo) / R::of((REFINE_SAMPLES - 1) as f64);
    for i in 0..REFINE_SAMPLES {
        let theta = lo + fine * R::of(i as f64);
        let m = margin_at(family, norm, r, theta)?;
        if m < best.0 {
            best = (m, theta);
        }
    }
    Ok(MarginReport {
        r,
        min_margin: best.0,
        argmin_angle: best.1,
        samples: COARSE_SAMPLES + REFINE_SAMPLES,
    })
}

/// Margin used for bracketing: evaluation failure past an already-found
/// positive-margin radius counts as a negative margin (the circle has
/// crossed a critical point of f′).
fn scan_margin<R: Real>(family: &Family<R>, norm: Norm, r: R, seen_positive: bool) -> Result<R>
where
    Complex<R>: Field<Re = R>,
{
    match uc_margin(family, norm, r) {
        Ok(rep) => Ok(rep.min_margin),
        Err(Error::NearCriticalPoint { .. }) | Err(Error::NonConvergence { .. })
            if seen_positive =>
        {
            Ok(-R::infinity())
        }
        Err(e) => Err(e),
    }
}

const ORACLE_ABS_TOL: f64 = 1e-9;
const MARGIN_TOL: f64 = 1e-10;

/// Radius of uniform convexity by bisection on the angular margin minimum.
///
/// `domain_upper` in the result is the first scan radius with negative
/// margin, not a critical-point bound.
pub fn oracle_radius<R: Real>(family: &Family<R>, norm: Norm) -> Result<RadiusResult<R>>
where
    Complex<R>: Field<Re = R>,
{
    match family {
        Family::QBessel(p) => p.validate()?,
        Family::Wright(p) => p.validate_radius()?,
    }
    // geometric scan for a sign-change bracket, scale-free
    let grow = R::of(1.3);
    let mut r = R::of(1e-3);
    let mut m = scan_margin(family, norm, r, false)?;
    let mut steps = 0usize;
    while m <= R::zero() {
        r = r / grow;
        m = scan_margin(family, norm, r, false)?;
        steps += 1;
        if steps > 200 {
            return Err(Error::ScanExhausted {
                found: 0,
                bound: r.as_f64(),
            });
        }
    }
    let mut lo = r;
    let mut hi = r;
    loop {
        hi = hi * grow;
        let mh = scan_margin(family, norm, hi, true)?;
        if mh < R::zero() {
            break;
        }
        lo = hi;
        steps += 1;
        if steps > 500 {
            return Err(Error::ScanExhausted {
                found: 0,
                bound: hi.as_f64(),
            });
        }
    }
    let domain_upper = hi;

    let abs_tol = R::of(ORACLE_ABS_TOL);
    let margin_tol = R::of(MARGIN_TOL);
    let mut iterations = 0u32;
    let mut mid = (lo + hi) * R::of(0.5);
    let mut mm = R::zero();
    while (hi - lo) > abs_tol.max(R::of(1e-12) * hi) && iterations < 200 {
        mid = (lo + hi) * R::of(0.5);
        mm = scan_margin(family, norm, mid, true)?;
        if mm.abs() <= margin_tol {
            break;
        }
        if mm > R::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(RadiusResult {
        radius: mid,
        bracket: (lo, hi),
        residual: mm,
        iterations,
        method: Method::Oracle,
        domain_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{QBesselParams, QKind};
    use crate::radius::{radius_uc_qbessel_g, radius_uc_wright_h};
    use crate::wright::WrightParams;

    #[test]
    fn margin_tends_to_one_at_the_origin() {
        let p = QBesselParams::new(QKind::Jackson2, 1.0_f64, 0.5).unwrap();
        let rep = uc_margin(&Family::QBessel(p), Norm::G, 1e-6).unwrap();
        assert!(
            (rep.min_margin - 1.0).abs() < 1e-4,
            "margin {}",
            rep.min_margin
        );
        assert_eq!(rep.samples, COARSE_SAMPLES + REFINE_SAMPLES);
    }

    #[test]
    fn margin_is_negative_past_the_radius() {
        let p = QBesselParams::new(QKind::Jackson2, 1.0_f64, 0.5).unwrap();
        let d = radius_uc_qbessel_g(&p).unwrap();
        let below = uc_margin(&Family::QBessel(p), Norm::G, 0.99 * d.direct.radius).unwrap();
        let above = uc_margin(&Family::QBessel(p), Norm::G, 1.01 * d.direct.radius).unwrap();
        assert!(below.min_margin > 0.0);
        assert!(above.min_margin < 0.0);
    }

    #[test]
    fn oracle_confirms_both_routes() {
        let p = QBesselParams::new(QKind::Jackson3, 1.5_f64, 0.3).unwrap();
        let d = radius_uc_qbessel_g(&p).unwrap();
        let o = oracle_radius(&Family::QBessel(p), Norm::G).unwrap();
        assert!((o.radius - d.direct.radius).abs() < 1e-6);

        let w = WrightParams::new(0.5_f64, 1.0).unwrap();
        let d = radius_uc_wright_h(&w).unwrap();
        let o = oracle_radius(&Family::Wright(w), Norm::H).unwrap();
        assert!((o.radius - d.direct.radius).abs() < 1e-6);
    }

    #[test]
    fn lemma_inequalities_hold_on_a_sampled_circle() {
        // |z/(b−z) − λz/(a−z)| ≤ r/(b−r) − λr/(a−r) for a > b > r ≥ |z|
        let (a, b, lam, r) = (2.0_f64, 1.0, 0.5, 0.9);
        let rhs = r / (b - r) - lam * r / (a - r);
        let mut max_lhs = f64::NEG_INFINITY;
        for i in 0..720 {
            let th = std::f64::consts::PI * i as f64 / 360.0;
            let z = num_complex::Complex::from_polar(r, th);
            let lhs = (z / (b - z) - z * lam / (a - z)).norm();
            max_lhs = max_lhs.max(lhs);
        }
        assert!(max_lhs <= rhs + 1e-12, "max {max_lhs} vs bound {rhs}");
    }
}
