//! Localization and refinement of the ordered positive zeros of the target
//! functions driving the radius computations: J, dJ/dz, the α/β/γ/δ
//! combination functions, Ψ, Ψ′, g′ and h′.
//!
//! Every target reduces to a real entire function of w with value 1 at
//! w = 0 (the known z^ν or z^{β−1} prefactors are divided out analytically),
//! scanned by sign change on a multiplicative grid and refined by bisection
//! inside a certified bracket. For most targets the natural variable is
//! w = z² and the table reports √w; the β/δ combinations also report √w
//! (the β_{ν,n} zeros), while h′-type Wright zeros (τ) live directly in z.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{m_coeff_vec, m_eval, QBesselParams, QKind};
use crate::scalar::Real;
use crate::series::newton_power_sums;
use crate::wright::{l_coeff_vec, l_eval, WrightParams};

/// Which function's positive zeros a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    /// J_ν^{(s)} (zeros j or l) / Ψ_{ρ,β} (zeros ζ).
    Function,
    /// dJ_ν^{(s)}/dz (zeros j′ or l′); q-Bessel only.
    Derivative,
    /// z·dJ^{(2)}/dz + (1−ν)J^{(2)} (zeros α); Jackson2 only.
    AlphaComb,
    /// z·dJ^{(2)}/dz + (2−ν)J^{(2)} (zeros β); Jackson2 only.
    BetaComb,
    /// z·dJ^{(3)}/dz + (1−ν)J^{(3)} (zeros γ); Jackson3 only.
    GammaComb,
    /// z·dJ^{(3)}/dz + (2−ν)J^{(3)} (zeros δ); Jackson3 only.
    DeltaComb,
    /// Ψ′_{ρ,β} (zeros ζ′); Wright only.
    PsiPrime,
    /// g′_{ρ,β} (zeros ϑ); Wright only.
    GPrime,
    /// h′_{ρ,β} (zeros τ); Wright only.
    HPrime,
}

/// Function family a zero target belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family<R> {
    QBessel(QBesselParams<R>),
    Wright(WrightParams<R>),
}

/// A named target function for zero localization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroTarget<R> {
    #[serde(flatten)]
    pub family: Family<R>,
    pub which: TargetKind,
}

/// Certified sign-change interval around a zero, in the reported variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket<R> {
    pub lo: R,
    pub hi: R,
}

/// Ordered positive zeros of a target with certified brackets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable<R> {
    pub target: ZeroTarget<R>,
    pub zeros: Vec<R>,
    pub brackets: Vec<Bracket<R>>,
    pub tol: R,
    /// Relative Newton corrections |f/f′|/w at each refined zero. For
    /// zeros past the cancellation floor of the defining series (possible
    /// for the Wright family in double precision), the entry is instead
    /// the relative half-width of the asymptotic spacing window used to
    /// estimate them.
    pub residuals: Vec<R>,
}

impl<R: Real> ZeroTarget<R> {
    pub fn new(family: Family<R>, which: TargetKind) -> Result<Self> {
        let t = Self { family, which };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.family, self.which) {
            (Family::QBessel(p), which) => {
                p.validate()?;
                match which {
                    TargetKind::Function | TargetKind::Derivative => Ok(()),
                    TargetKind::AlphaComb | TargetKind::BetaComb if p.kind == QKind::Jackson2 => {
                        Ok(())
                    }
                    TargetKind::GammaComb | TargetKind::DeltaComb if p.kind == QKind::Jackson3 => {
                        Ok(())
                    }
                    other => Err(Error::InvalidParameter(format!(
                        "target {other:?} is not defined for {:?}",
                        p.kind
                    ))),
                }
            }
            (Family::Wright(p), which) => {
                p.validate_radius()?;
                match which {
                    TargetKind::Function
                    | TargetKind::PsiPrime
                    | TargetKind::GPrime
                    | TargetKind::HPrime => Ok(()),
                    other => Err(Error::InvalidParameter(format!(
                        "target {other:?} is not defined for the Wright family"
                    ))),
                }
            }
        }
    }

    /// Whether the table reports √w (true) or w itself (false, h′-type).
    pub fn reports_sqrt(&self) -> bool {
        !matches!(
            (self.family, self.which),
            (Family::Wright(_), TargetKind::HPrime)
        )
    }

    /// Evaluate the stripped target function at w > 0 (value 1 at w = 0).
    pub(crate) fn eval_stripped(&self, w: R) -> Result<R> {
        match &self.family {
            Family::QBessel(p) => {
                let m = m_eval::<R>(*p, w)?;
                let nu = p.nu;
                Ok(match self.which {
                    TargetKind::Function => m.v,
                    TargetKind::Derivative => {
                        if nu == R::zero() {
                            // J′ ∝ z M′(z²); normalize by c₁ = M′(0)
                            let c1 = m_coeff_vec(*p, 2)[1];
                            m.d1 / c1
                        } else {
                            (nu * m.v + R::of(2.0) * w * m.d1) / nu
                        }
                    }
                    TargetKind::AlphaComb | TargetKind::GammaComb => m.v + R::of(2.0) * w * m.d1,
                    TargetKind::BetaComb | TargetKind::DeltaComb => m.v + w * m.d1,
                    _ => unreachable!("validated"),
                })
            }
            Family::Wright(p) => {
                let l = l_eval::<R>(*p, w)?;
                let beta = p.beta;
                Ok(match self.which {
                    TargetKind::Function => l.v,
                    TargetKind::PsiPrime => (beta * l.v + R::of(2.0) * w * l.d1) / beta,
                    TargetKind::GPrime => l.v + R::of(2.0) * w * l.d1,
                    TargetKind::HPrime => l.v + w * l.d1,
                    _ => unreachable!("validated"),
                })
            }
        }
    }

    /// Taylor coefficients of the stripped target (c_0 = 1 implied, returns
    /// c_1..c_len), the power-sum input.
    pub(crate) fn stripped_coeffs(&self, len: usize) -> Vec<R> {
        let base: Vec<R> = match &self.family {
            Family::QBessel(p) => m_coeff_vec(*p, len + 1),
            Family::Wright(p) => l_coeff_vec(*p, len + 1),
        };
        let weight = |n: usize, c: R| -> R {
            let nf = R::of(n as f64);
            match (self.family, self.which) {
                (_, TargetKind::Function) => c,
                (Family::QBessel(p), TargetKind::Derivative) => {
                    if p.nu == R::zero() {
                        // M′(w)/c₁: coefficient of w^n is c_{n+1}(n+1)/c₁
                        unreachable!("handled separately")
                    } else {
                        c * (p.nu + R::of(2.0) * nf) / p.nu
                    }
                }
                (_, TargetKind::AlphaComb)
                | (_, TargetKind::GammaComb)
                | (_, TargetKind::GPrime) => c * (R::one() + R::of(2.0) * nf),
                (_, TargetKind::BetaComb)
                | (_, TargetKind::DeltaComb)
                | (_, TargetKind::HPrime) => c * (R::one() + nf),
                (Family::Wright(p), TargetKind::PsiPrime) => {
                    c * (p.beta + R::of(2.0) * nf) / p.beta
                }
                _ => unreachable!("validated"),
            }
        };
        if let (Family::QBessel(p), TargetKind::Derivative) = (self.family, self.which) {
            if p.nu == R::zero() {
                let raw = m_coeff_vec(p, len + 2);
                let c1 = raw[1];
                return (1..=len)
                    .map(|n| raw[n + 1] * R::of((n + 1) as f64) / c1)
                    .collect();
            }
        }
        (1..=len).map(|n| weight(n, base[n])).collect()
    }

    /// Power sums σ_m = Σ_n w_n^{-m} over the target's w-zeros,
    /// m = 1..=m_max, via Newton's identities on the stripped coefficients.
    pub(crate) fn power_sums(&self, m_max: usize) -> Vec<R> {
        let c = self.stripped_coeffs(m_max);
        newton_power_sums(&c, m_max)
    }
}

/// Pairwise interlacing verdicts for two zero tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterlacingReport {
    /// a₁ < b₁ < a₂ < b₂ < … comparisons, in chain order.
    pub comparisons: Vec<bool>,
    pub pass: bool,
}

/// Multiplicative scan step; each coarse 1.05 interval is probed at four
/// subdivision points, zeros spread roughly geometrically so arithmetic
/// grids are wasteful.
const SCAN_STEP: f64 = 1.012272234429039; // 1.05^(1/4)
const BOUND_FACTOR: f64 = 64.0;
const MAX_BISECT: usize = 200;
/// Zeros needed before the phase spacing is trusted for estimates.
const MIN_FOUND_FOR_ESTIMATE: usize = 4;
/// A gap this many recent spacings wide means the scan lost resolution.
const GAP_FACTOR: f64 = 3.0;

/// Locate and refine the first `count` positive zeros of `target`.
pub fn scan_and_refine<R: Real>(
    target: &ZeroTarget<R>,
    count: usize,
    tol: R,
) -> Result<ZeroTable<R>> {
    target.validate()?;
    if count == 0 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    let f = |w: R| target.eval_stripped(w);

    // First-zero scale from σ₁ = Σ 1/w_n = −c₁.
    let c1 = target.stripped_coeffs(1)[0];
    let sigma1 = -c1;
    if !(sigma1 > R::zero()) {
        return Err(Error::InvalidParameter(
            "stripped target has no positive leading decay; cannot estimate scale".into(),
        ));
    }
    let w_first_est = R::one() / sigma1;
    let bound_scale = if target.reports_sqrt() {
        R::of(BOUND_FACTOR * BOUND_FACTOR)
    } else {
        R::of(BOUND_FACTOR)
    };
    let mut bound = w_first_est * bound_scale;

    // Scan coordinate in which the zeros are asymptotically equally
    // spaced: the oscillation phase u = w^{1/(1+ρ)} for the Wright family
    // and u = ln w for the q-Bessel families (geometric zeros).
    let u_of = |w: R| -> R {
        match &target.family {
            Family::QBessel(_) => w.ln(),
            Family::Wright(p) => w.powf(R::one() / (R::one() + p.rho)),
        }
    };
    let w_of = |u: R| -> R {
        match &target.family {
            Family::QBessel(_) => u.exp(),
            Family::Wright(p) => u.powf(R::one() + p.rho),
        }
    };

    let step = R::of(SCAN_STEP);
    let mut w_prev = w_first_est * R::of(1e-3);
    let mut f_prev = f(w_prev)?;
    let mut zeros_w: Vec<R> = Vec::with_capacity(count);
    let mut brackets_w: Vec<(R, R)> = Vec::with_capacity(count);
    let mut residuals: Vec<R> = Vec::with_capacity(count);

    while zeros_w.len() < count {
        let w = w_prev * step;
        if w > bound {
            return Err(Error::ScanExhausted {
                found: zeros_w.len(),
                bound: bound.as_f64(),
            });
        }
        // Past the cancellation floor of the series, sign changes become
        // unresolvable: either evaluation overflows or the next change sits
        // far beyond the established phase spacing. Both end the scan; the
        // remaining zeros are asymptotic-spacing estimates (see below).
        let n = zeros_w.len();
        if n >= MIN_FOUND_FOR_ESTIMATE {
            let du = (u_of(zeros_w[n - 1]) - u_of(zeros_w[n - 4])) / R::of(3.0);
            if u_of(w) - u_of(zeros_w[n - 1]) > R::of(GAP_FACTOR) * du {
                break;
            }
        }
        let fv = match f(w) {
            Ok(v) => v,
            Err(Error::NonConvergence { .. }) if n >= MIN_FOUND_FOR_ESTIMATE => break,
            Err(e) => return Err(e),
        };
        if f_prev * fv < R::zero() {
            let (zero, bracket, residual) = refine(&f, w_prev, f_prev, w, fv, tol)?;
            // zeros found so far push the scan bound outward
            bound = bound.max(zero * bound_scale);
            zeros_w.push(zero);
            brackets_w.push(bracket);
            residuals.push(residual);
        } else if fv == R::zero() {
            zeros_w.push(w);
            brackets_w.push((w_prev, w * step));
            residuals.push(R::zero());
            bound = bound.max(w * bound_scale);
        }
        w_prev = w;
        f_prev = fv;
    }

    // Zeros beyond the floating-point cancellation floor: continue the
    // table by the established phase spacing. Their residual reports the
    // relative half-width of the spacing window rather than a Newton
    // correction; downstream power-sum tails telescope against the table
    // entries exactly, so the estimates do not degrade radius results.
    if zeros_w.len() < count {
        let n = zeros_w.len();
        debug_assert!(n >= MIN_FOUND_FOR_ESTIMATE);
        let du = (u_of(zeros_w[n - 1]) - u_of(zeros_w[n - 4])) / R::of(3.0);
        let mut u = u_of(zeros_w[n - 1]);
        while zeros_w.len() < count {
            u = u + du;
            let z = w_of(u);
            let lo = w_of(u - du * R::of(0.5));
            let hi = w_of(u + du * R::of(0.5));
            zeros_w.push(z);
            brackets_w.push((lo, hi));
            residuals.push((hi - lo) * R::of(0.5) / z);
        }
    }

    let to_report = |w: R| if target.reports_sqrt() { w.sqrt() } else { w };
    Ok(ZeroTable {
        target: *target,
        zeros: zeros_w.iter().map(|&w| to_report(w)).collect(),
        brackets: brackets_w
            .iter()
            .map(|&(lo, hi)| Bracket {
                lo: to_report(lo),
                hi: to_report(hi),
            })
            .collect(),
        tol,
        residuals,
    })
}

/// Bisection to relative width `tol` inside a certified bracket, then a
/// secant polish step that must not exit the bracket.
fn refine<R: Real>(
    f: &dyn Fn(R) -> Result<R>,
    mut lo: R,
    mut flo: R,
    mut hi: R,
    mut fhi: R,
    tol: R,
) -> Result<(R, (R, R), R)> {
    debug_assert!(flo * fhi < R::zero());
    let mut iters = 0usize;
    while (hi - lo) > tol * (lo + hi) * R::of(0.5) && iters < MAX_BISECT {
        let mid = (lo + hi) * R::of(0.5);
        let fm = f(mid)?;
        if fm == R::zero() {
            lo = mid;
            hi = mid;
            break;
        }
        if flo * fm < R::zero() {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        iters += 1;
    }
    // secant estimate clamped to the bracket
    let mut zero = if fhi != flo {
        let s = lo - flo * (hi - lo) / (fhi - flo);
        if s > lo && s < hi {
            s
        } else {
            (lo + hi) * R::of(0.5)
        }
    } else {
        (lo + hi) * R::of(0.5)
    };
    if zero == R::zero() {
        zero = (lo + hi) * R::of(0.5);
    }
    let fz = f(zero)?;
    let slope = if hi > lo {
        (fhi - flo) / (hi - lo)
    } else {
        R::one()
    };
    let residual = if slope != R::zero() {
        (fz / slope).abs() / zero
    } else {
        R::zero()
    };
    Ok((zero, (lo, hi), residual))
}

/// Strict interlacing check a₁ < b₁ < a₂ < b₂ < … over the overlap window.
pub fn interlacing_check<R: Real>(a: &ZeroTable<R>, b: &ZeroTable<R>) -> Result<InterlacingReport> {
    if a.zeros.is_empty() || b.zeros.is_empty() {
        return Err(Error::InvalidParameter(
            "interlacing check needs non-empty tables".into(),
        ));
    }
    let n = a.zeros.len().min(b.zeros.len());
    let mut comparisons = Vec::new();
    for i in 0..n {
        comparisons.push(a.zeros[i] < b.zeros[i]);
        if i + 1 < a.zeros.len() {
            comparisons.push(b.zeros[i] < a.zeros[i + 1]);
        }
    }
    let pass = comparisons.iter().all(|&c| c);
    Ok(InterlacingReport { comparisons, pass })
}

impl<R: Real> ZeroTable<R> {
    /// Zeros in the scan variable w (squares where the table reports √w).
    pub fn zeros_w(&self) -> Vec<R> {
        if self.target.reports_sqrt() {
            self.zeros.iter().map(|&z| z * z).collect()
        } else {
            self.zeros.clone()
        }
    }

    pub fn first(&self) -> R {
        self.zeros[0]
    }
}
