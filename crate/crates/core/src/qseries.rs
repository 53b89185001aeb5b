//! q-Pochhammer symbols, the normalization constant c_ν(q), Jackson's second
//! and third q-Bessel functions and their derivatives by direct series
//! summation with certified truncation.
//!
//! Everything is built on the "stripped" entire series
//!   M(w) = Σ_{n≥0} c_n w^n,   M(0) = 1,
//! defined so that J_ν^{(2)}(z;q) = (z/2)^ν / c_ν(q) · M(z²) (with the 1/4
//! folded into the coefficients) and J_ν^{(3)}(z;q) = z^ν / c_ν(q) · M(z²).
//! The normalized forms are then g(z) = z·M(z²) and h(z) = z·M(z), which are
//! entire with integer powers only, so complex arguments need no branch cuts.

use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};
use crate::series::{eval_with_derivs, Deriv3, DEFAULT_EPS_REL, DEFAULT_MAX_TERMS};
use crate::Norm;

/// Which Jackson q-Bessel family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QKind {
    Jackson2,
    Jackson3,
}

/// One member of a q-Bessel family: kind s ∈ {2,3}, order ν > −1, q ∈ (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QBesselParams<R> {
    pub kind: QKind,
    pub nu: R,
    pub q: R,
}

/// Soft operating limit for q; the infinite products converge slowly above.
pub const Q_SOFT_LIMIT: f64 = 0.99;

impl<R: Real> QBesselParams<R> {
    pub fn new(kind: QKind, nu: R, q: R) -> Result<Self> {
        let p = Self { kind, nu, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nu > -R::one()) {
            return Err(Error::InvalidParameter(format!(
                "q-Bessel order requires nu > -1, got {}",
                self.nu
            )));
        }
        if !(self.q > R::zero() && self.q < R::one()) {
            return Err(Error::InvalidParameter(format!(
                "q must lie in (0,1), got {}",
                self.q
            )));
        }
        Ok(())
    }

    /// True above the documented soft operating range q ≤ 0.99.
    pub fn q_above_soft_limit(&self) -> bool {
        self.q > R::of(Q_SOFT_LIMIT)
    }
}

/// A series evaluation with its accuracy certificate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Serialize, F::Re: Serialize",
    deserialize = "F: Deserialize<'de>, F::Re: Deserialize<'de>"
))]
pub struct EvalResult<F: Field> {
    pub value: F,
    pub abs_error_est: F::Re,
    pub terms_used: usize,
}

fn check_q<R: Real>(q: R) -> Result<()> {
    if q > R::zero() && q < R::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "q must lie in (0,1), got {}",
            q
        )))
    }
}

/// q-Pochhammer symbol (a;q)_n; `n = None` means the infinite product,
/// truncated once |a q^{k−1}| falls below machine epsilon relative to 1.
pub fn q_pochhammer<R: Real>(a: R, q: R, n: Option<u64>) -> Result<EvalResult<R>> {
    check_q(q)?;
    match n {
        Some(n) => {
            let mut prod = R::one();
            let mut aq = a;
            for _ in 0..n {
                prod = prod * (R::one() - aq);
                aq = aq * q;
            }
            Ok(EvalResult {
                value: prod,
                abs_error_est: prod.abs() * R::epsilon() * R::of(n as f64),
                terms_used: (n as usize).max(1),
            })
        }
        None => {
            let mut prod = R::one();
            let mut aq = a;
            let mut k = 0usize;
            while aq.abs() >= R::epsilon() {
                prod = prod * (R::one() - aq);
                aq = aq * q;
                k += 1;
                if k > 1_000_000 {
                    return Err(Error::NonConvergence { max_terms: k });
                }
            }
            // remaining log-product bounded by Σ_{j≥0} |a| q^{K+j} = |aq^K|/(1−q)
            let tail = aq.abs() / (R::one() - q);
            Ok(EvalResult {
                value: prod,
                abs_error_est: prod.abs() * tail,
                terms_used: k.max(1),
            })
        }
    }
}

/// c_ν(q) = (q;q)_∞ / (q^{ν+1};q)_∞.
pub fn c_nu<R: Real>(nu: R, q: R) -> Result<EvalResult<R>> {
    if !(nu > -R::one()) {
        return Err(Error::InvalidParameter(format!(
            "c_nu requires nu > -1, got {}",
            nu
        )));
    }
    let num = q_pochhammer(q, q, None)?;
    let den = q_pochhammer(q.powf(nu + R::one()), q, None)?;
    let value = num.value / den.value;
    Ok(EvalResult {
        value,
        abs_error_est: value.abs()
            * (num.abs_error_est / num.value.abs() + den.abs_error_est / den.value.abs()),
        terms_used: num.terms_used.max(den.terms_used),
    })
}

/// Coefficients c_n of the stripped series M(w), c_0 = 1.
///
/// Jackson2: c_{n+1}/c_n = −q^{2n+1+ν} / (4 (1−q^{n+1})(1−q^{n+1+ν})),
/// Jackson3: c_{n+1}/c_n = −q^{n+1} / ((1−q^{n+1})(1−q^{n+1+ν})).
pub(crate) fn m_coeffs<R: Real>(p: QBesselParams<R>) -> impl Iterator<Item = R> {
    let QBesselParams { kind, nu, q } = p;
    let mut c = R::one();
    let mut n = 0usize;
    std::iter::from_fn(move || {
        let out = c;
        let nf = R::of(n as f64);
        let ratio = match kind {
            QKind::Jackson2 => {
                -q.powf(R::of(2.0) * nf + R::one() + nu)
                    / (R::of(4.0)
                        * (R::one() - q.powf(nf + R::one()))
                        * (R::one() - q.powf(nf + R::one() + nu)))
            }
            QKind::Jackson3 => {
                -q.powf(nf + R::one())
                    / ((R::one() - q.powf(nf + R::one())) * (R::one() - q.powf(nf + R::one() + nu)))
            }
        };
        c = c * ratio;
        n += 1;
        Some(out)
    })
}

/// First `len` coefficients of M(w) as a vector (power-sum input).
pub(crate) fn m_coeff_vec<R: Real>(p: QBesselParams<R>, len: usize) -> Vec<R> {
    m_coeffs(p).take(len).collect()
}

/// M(w), M′(w), M″(w).
pub(crate) fn m_eval<F: Field>(p: QBesselParams<F::Re>, w: F) -> Result<Deriv3<F>> {
    eval_with_derivs(
        m_coeffs(p),
        w,
        F::Re::of(DEFAULT_EPS_REL),
        DEFAULT_MAX_TERMS,
    )
}

/// Prefactor C with J(z) = C z^ν M(z²): 1/(2^ν c_ν) for Jackson2, 1/c_ν for
/// Jackson3.
fn prefactor<R: Real>(p: QBesselParams<R>) -> Result<R> {
    let c = c_nu(p.nu, p.q)?.value;
    Ok(match p.kind {
        QKind::Jackson2 => R::one() / (R::of(2.0).powf(p.nu) * c),
        QKind::Jackson3 => R::one() / c,
    })
}

fn check_deriv(deriv: u8) -> Result<()> {
    if deriv <= 2 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "derivative order must be 0, 1 or 2, got {deriv}"
        )))
    }
}

/// Jackson q-Bessel function J_ν^{(s)}(z;q) and its first two derivatives,
/// for real z ≥ 0 (the z^ν prefactor makes non-integer ν branch-sensitive;
/// complex arguments enter only through ratios, see
/// [`ratio_one_plus_zfpp_fp`]).
pub fn jackson_qbessel<R: Real>(p: QBesselParams<R>, z: R, deriv: u8) -> Result<EvalResult<R>> {
    p.validate()?;
    check_deriv(deriv)?;
    if z < R::zero() {
        return Err(Error::InvalidParameter(
            "jackson_qbessel takes real z >= 0".into(),
        ));
    }
    let c = prefactor(p)?;
    let nu = p.nu;
    if z == R::zero() {
        // limits of C z^{ν-deriv}(...) as z→0+
        let value = match deriv {
            0 => {
                if nu > R::zero() {
                    R::zero()
                } else if nu == R::zero() {
                    c
                } else {
                    return Err(Error::InvalidParameter("J(0) diverges for nu < 0".into()));
                }
            }
            1 => {
                if nu > R::one() {
                    R::zero()
                } else if nu == R::one() {
                    c
                } else {
                    return Err(Error::InvalidParameter("J'(0) diverges for nu < 1".into()));
                }
            }
            _ => {
                if nu > R::of(2.0) {
                    R::zero()
                } else if nu == R::of(2.0) {
                    R::of(2.0) * c
                } else {
                    return Err(Error::InvalidParameter("J''(0) diverges for nu < 2".into()));
                }
            }
        };
        return Ok(EvalResult {
            value,
            abs_error_est: R::zero(),
            terms_used: 1,
        });
    }
    let w = z * z;
    let m = m_eval::<R>(p, w)?;
    let (value, err) = match deriv {
        0 => (c * z.powf(nu) * m.v, c * z.powf(nu) * m.err[0]),
        1 => {
            let comb = nu * m.v + R::of(2.0) * w * m.d1;
            let e = nu.abs() * m.err[0] + R::of(2.0) * w * m.err[1];
            (
                c * z.powf(nu - R::one()) * comb,
                c * z.powf(nu - R::one()) * e,
            )
        }
        _ => {
            let comb = nu * (nu - R::one()) * m.v
                + (R::of(4.0) * nu + R::of(2.0)) * w * m.d1
                + R::of(4.0) * w * w * m.d2;
            let e = (nu * (nu - R::one())).abs() * m.err[0]
                + (R::of(4.0) * nu + R::of(2.0)).abs() * w * m.err[1]
                + R::of(4.0) * w * w * m.err[2];
            (
                c * z.powf(nu - R::of(2.0)) * comb,
                c * z.powf(nu - R::of(2.0)) * e,
            )
        }
    };
    Ok(EvalResult {
        value,
        abs_error_est: err.abs(),
        terms_used: m.terms,
    })
}

/// Classical Bessel J_ν(z) by its ascending series (limit-test reference).
pub fn classical_bessel<R: Real>(nu: R, z: R) -> Result<EvalResult<R>> {
    if !(nu > -R::one()) {
        return Err(Error::InvalidParameter(format!(
            "classical_bessel requires nu > -1, got {}",
            nu
        )));
    }
    if z == R::zero() {
        let value = if nu == R::zero() { R::one() } else { R::zero() };
        return Ok(EvalResult {
            value,
            abs_error_est: R::zero(),
            terms_used: 1,
        });
    }
    // J_ν(z) = (z/2)^ν B(z²), B coefficients b_0 = 1/Γ(ν+1),
    // b_{n+1}/b_n = −1/(4(n+1)(n+1+ν)).
    let b0 = crate::gamma::recip_gamma(nu + R::one());
    let coeffs = {
        let mut b = b0;
        let mut n = 0usize;
        std::iter::from_fn(move || {
            let out = b;
            let nf = R::of(n as f64);
            b = -b / (R::of(4.0) * (nf + R::one()) * (nf + R::one() + nu));
            n += 1;
            Some(out)
        })
    };
    let d = eval_with_derivs::<R, _>(coeffs, z * z, R::of(DEFAULT_EPS_REL), DEFAULT_MAX_TERMS)?;
    let pre = (z / R::of(2.0)).powf(nu);
    Ok(EvalResult {
        value: pre * d.v,
        abs_error_est: pre.abs() * d.err[0],
        terms_used: d.terms,
    })
}

/// Normalized q-Bessel forms g_ν^{(s)} and h_ν^{(s)} and their derivatives.
///
/// g(z) = z·M(z²) and h(z) = z·M(z). The f-normalization carries a fractional
/// power; only its ratios enter the radius work, exposed through
/// [`ratio_one_plus_zfpp_fp`], so `norm = F` is rejected here.
pub fn normalized_qbessel<F: Field>(
    p: QBesselParams<F::Re>,
    norm: Norm,
    z: F,
    deriv: u8,
) -> Result<EvalResult<F>> {
    p.validate()?;
    check_deriv(deriv)?;
    match norm {
        Norm::F => {
            if p.nu == F::Re::zero() {
                Err(Error::InvalidParameter(
                    "f-normalization requires nu != 0".into(),
                ))
            } else {
                Err(Error::Unsupported(
                    "f-normalization values are branch-sensitive; use ratio_one_plus_zfpp_fp"
                        .into(),
                ))
            }
        }
        Norm::G => {
            let w = z * z;
            let m = m_eval::<F>(p, w)?;
            let two = F::Re::of(2.0);
            let (value, err) = match deriv {
                0 => (z * m.v, z.modulus() * m.err[0]),
                1 => (
                    m.v + (w * m.d1).scale(two),
                    m.err[0] + two * w.modulus() * m.err[1],
                ),
                _ => (
                    (z * m.d1).scale(F::Re::of(6.0)) + (z * w * m.d2).scale(F::Re::of(4.0)),
                    F::Re::of(6.0) * z.modulus() * m.err[1]
                        + F::Re::of(4.0) * (z * w).modulus() * m.err[2],
                ),
            };
            Ok(EvalResult {
                value,
                abs_error_est: err,
                terms_used: m.terms,
            })
        }
        Norm::H => {
            let m = m_eval::<F>(p, z)?;
            let (value, err) = match deriv {
                0 => (z * m.v, z.modulus() * m.err[0]),
                1 => (m.v + z * m.d1, m.err[0] + z.modulus() * m.err[1]),
                _ => (
                    m.d1.scale(F::Re::of(2.0)) + z * m.d2,
                    F::Re::of(2.0) * m.err[1] + z.modulus() * m.err[2],
                ),
            };
            Ok(EvalResult {
                value,
                abs_error_est: err,
                terms_used: m.terms,
            })
        }
    }
}

fn guard_denominator<F: Field>(den: F, scale: F::Re, what: &'static str) -> Result<()> {
    if den.modulus() < F::Re::of(1e-12) * (scale + F::Re::min_positive_value()) {
        Err(Error::NearCriticalPoint {
            what,
            at: den.modulus().as_f64(),
        })
    } else {
        Ok(())
    }
}

/// The uniform-convexity test quantity 1 + z f″/f′ for the requested
/// normalization, via the closed chain-rule identities (no fractional
/// powers, no zero sums):
///   F: 1 + (1/ν − 1)·zJ′/J + zJ″/J′
///   G: 1 + (6wM′ + 4w²M″)/(M + 2wM′),  w = z²
///   H: 1 + (2wM′ + w²M″)/(M + wM′),    w = z
pub fn ratio_one_plus_zfpp_fp<F: Field>(p: QBesselParams<F::Re>, norm: Norm, z: F) -> Result<F> {
    p.validate()?;
    let nu = p.nu;
    match norm {
        Norm::F => {
            if nu == F::Re::zero() {
                return Err(Error::InvalidParameter(
                    "f-normalization requires nu != 0".into(),
                ));
            }
            let w = z * z;
            let m = m_eval::<F>(p, w)?;
            guard_denominator(m.v, m.v.modulus() + (w * m.d1).modulus(), "J")?;
            let zjp_over_j = F::from_real(nu) + (w * m.d1).scale(F::Re::of(2.0)) / m.v;
            let den = m.v.scale(nu) + (w * m.d1).scale(F::Re::of(2.0));
            guard_denominator(
                den,
                m.v.modulus() * nu.abs() + F::Re::of(2.0) * (w * m.d1).modulus(),
                "J'",
            )?;
            let num = m.v.scale(nu * (nu - F::Re::one()))
                + (w * m.d1).scale(F::Re::of(4.0) * nu + F::Re::of(2.0))
                + (w * w * m.d2).scale(F::Re::of(4.0));
            let zjpp_over_jp = num / den;
            Ok(F::one() + zjp_over_j.scale(F::Re::one() / nu - F::Re::one()) + zjpp_over_jp)
        }
        Norm::G => {
            let w = z * z;
            let m = m_eval::<F>(p, w)?;
            let den = m.v + (w * m.d1).scale(F::Re::of(2.0));
            guard_denominator(
                den,
                m.v.modulus() + F::Re::of(2.0) * (w * m.d1).modulus(),
                "g'",
            )?;
            let num = (w * m.d1).scale(F::Re::of(6.0)) + (w * w * m.d2).scale(F::Re::of(4.0));
            Ok(F::one() + num / den)
        }
        Norm::H => {
            let w = z;
            let m = m_eval::<F>(p, w)?;
            let den = m.v + w * m.d1;
            guard_denominator(den, m.v.modulus() + (w * m.d1).modulus(), "h'")?;
            let num = (w * m.d1).scale(F::Re::of(2.0)) + w * w * m.d2;
            Ok(F::one() + num / den)
        }
    }
}
