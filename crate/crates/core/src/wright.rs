//! The Wright function φ(ρ,β,z), the even-symmetrized λ_{ρ,β}(z) = φ(ρ,β,−z²),
//! Ψ_{ρ,β}(z) = z^β λ_{ρ,β}(z), and the three normalizations and their
//! derivatives.
//!
//! The stripped series here is L(w) = Γ(β) φ(ρ,β,−w), L(0) = 1, so that
//! g(z) = z·L(z²) and h(z) = z·L(z), mirroring the q-Bessel layout.

use num_traits::{Float, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{ln_gamma, signed_ln_recip_gamma};
use crate::scalar::{Field, Real};
use crate::series::{eval_with_derivs, Deriv3, DEFAULT_EPS_REL, DEFAULT_MAX_TERMS};
use crate::Norm;

/// One member of the Wright family. The bare series evaluator accepts
/// ρ > −1; every radius operation additionally requires ρ > 0 and β > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WrightParams<R> {
    pub rho: R,
    pub beta: R,
}

pub use crate::qseries::EvalResult;

impl<R: Real> WrightParams<R> {
    pub fn new(rho: R, beta: R) -> Result<Self> {
        let p = Self { rho, beta };
        p.validate_series()?;
        Ok(p)
    }

    /// Domain of the bare series: ρ > −1.
    pub fn validate_series(&self) -> Result<()> {
        if !(self.rho > -R::one()) {
            return Err(Error::InvalidParameter(format!(
                "Wright series requires rho > -1, got {}",
                self.rho
            )));
        }
        Ok(())
    }

    /// Hypotheses of the radius theorems: ρ > 0 and β > 0.
    pub fn validate_radius(&self) -> Result<()> {
        if !(self.rho > R::zero()) {
            return Err(Error::InvalidParameter(format!(
                "radius operations require rho > 0, got {}",
                self.rho
            )));
        }
        if !(self.beta > R::zero()) {
            return Err(Error::InvalidParameter(format!(
                "radius operations require beta > 0, got {}",
                self.beta
            )));
        }
        Ok(())
    }
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

/// Coefficients a_n = 1/(n! Γ(nρ+β)) of φ, with 1/Γ treated as entire.
fn phi_coeffs<R: Real>(p: WrightParams<R>) -> impl Iterator<Item = R> {
    let WrightParams { rho, beta } = p;
    (0..).map(move |n| {
        let nf = R::of(n as f64);
        let (ln_rg, sign) = signed_ln_recip_gamma(nf * rho + beta);
        if sign == 0 {
            return R::zero();
        }
        let ln_abs = ln_rg - ln_gamma(nf + R::one());
        let mag = ln_abs.exp();
        if sign > 0 {
            mag
        } else {
            -mag
        }
    })
}

/// Coefficients c_n = Γ(β)(−1)^n/(n! Γ(nρ+β)) of L(w) = Γ(β) φ(ρ,β,−w).
pub(crate) fn l_coeffs<R: Real>(p: WrightParams<R>) -> impl Iterator<Item = R> {
    let lg_beta = ln_gamma(p.beta);
    let WrightParams { rho, beta } = p;
    (0..).map(move |n| {
        let nf = R::of(n as f64);
        let (ln_rg, sign) = signed_ln_recip_gamma(nf * rho + beta);
        if sign == 0 {
            return R::zero();
        }
        let mag = (lg_beta + ln_rg - ln_gamma(nf + R::one())).exp();
        let s = if n % 2 == 0 { mag } else { -mag };
        if sign > 0 {
            s
        } else {
            -s
        }
    })
}

pub(crate) fn l_coeff_vec<R: Real>(p: WrightParams<R>, len: usize) -> Vec<R> {
    l_coeffs(p).take(len).collect()
}

/// L(w), L′(w), L″(w).
pub(crate) fn l_eval<F: Field>(p: WrightParams<F::Re>, w: F) -> Result<Deriv3<F>> {
    eval_with_derivs(
        l_coeffs(p),
        w,
        F::Re::of(DEFAULT_EPS_REL),
        DEFAULT_MAX_TERMS,
    )
}

/// Wright function φ(ρ,β,z) with term-wise derivatives in z.
pub fn wright_phi<F: Field>(p: WrightParams<F::Re>, z: F, deriv: u8) -> Result<EvalResult<F>> {
    p.validate_series()?;
    check_deriv(deriv)?;
    let d = eval_with_derivs::<F, _>(
        phi_coeffs(p),
        z,
        F::Re::of(DEFAULT_EPS_REL),
        DEFAULT_MAX_TERMS,
    )?;
    let (value, err) = match deriv {
        0 => (d.v, d.err[0]),
        1 => (d.d1, d.err[1]),
        _ => (d.d2, d.err[2]),
    };
    Ok(EvalResult {
        value,
        abs_error_est: err,
        terms_used: d.terms,
    })
}

/// λ_{ρ,β}(z) = φ(ρ,β,−z²) with z-derivatives via the chain rule.
pub fn lambda_func<F: Field>(p: WrightParams<F::Re>, z: F, deriv: u8) -> Result<EvalResult<F>> {
    p.validate_series()?;
    check_deriv(deriv)?;
    let w = z * z;
    let d = eval_with_derivs::<F, _>(
        phi_coeffs(p),
        -w,
        F::Re::of(DEFAULT_EPS_REL),
        DEFAULT_MAX_TERMS,
    )?;
    let two = F::Re::of(2.0);
    let (value, err) = match deriv {
        0 => (d.v, d.err[0]),
        // λ′(z) = −2z φ′(−z²)
        1 => (-(z * d.d1).scale(two), two * z.modulus() * d.err[1]),
        // λ″(z) = −2 φ′(−z²) + 4z² φ″(−z²)
        _ => (
            -d.d1.scale(two) + (w * d.d2).scale(F::Re::of(4.0)),
            two * d.err[1] + F::Re::of(4.0) * w.modulus() * d.err[2],
        ),
    };
    Ok(EvalResult {
        value,
        abs_error_est: err,
        terms_used: d.terms,
    })
}

/// Ψ_{ρ,β}(z) = z^β λ_{ρ,β}(z) for real z > 0 (real branch of z^β).
pub fn psi_func<R: Real>(p: WrightParams<R>, z: R, deriv: u8) -> Result<EvalResult<R>> {
    p.validate_series()?;
    check_deriv(deriv)?;
    if !(z > R::zero()) {
        return Err(Error::InvalidParameter(format!(
            "psi_func requires z > 0, got {}",
            z
        )));
    }
    let beta = p.beta;
    let lam0 = lambda_func::<R>(p, z, 0)?;
    let (value, err, terms) = match deriv {
        0 => (
            z.powf(beta) * lam0.value,
            z.powf(beta) * lam0.abs_error_est,
            lam0.terms_used,
        ),
        1 => {
            let lam1 = lambda_func::<R>(p, z, 1)?;
            (
                beta * z.powf(beta - R::one()) * lam0.value + z.powf(beta) * lam1.value,
                beta.abs() * z.powf(beta - R::one()) * lam0.abs_error_est
                    + z.powf(beta) * lam1.abs_error_est,
                lam0.terms_used.max(lam1.terms_used),
            )
        }
        _ => {
            let lam1 = lambda_func::<R>(p, z, 1)?;
            let lam2 = lambda_func::<R>(p, z, 2)?;
            (
                beta * (beta - R::one()) * z.powf(beta - R::of(2.0)) * lam0.value
                    + R::of(2.0) * beta * z.powf(beta - R::one()) * lam1.value
                    + z.powf(beta) * lam2.value,
                (beta * (beta - R::one())).abs() * z.powf(beta - R::of(2.0)) * lam0.abs_error_est
                    + R::of(2.0) * beta.abs() * z.powf(beta - R::one()) * lam1.abs_error_est
                    + z.powf(beta) * lam2.abs_error_est,
                lam0.terms_used.max(lam2.terms_used),
            )
        }
    };
    Ok(EvalResult {
        value,
        abs_error_est: err,
        terms_used: terms,
    })
}

/// Normalized Wright forms g_{ρ,β}(z) = z Γ(β) φ(ρ,β,−z²) = z·L(z²) and
/// h_{ρ,β}(z) = z Γ(β) φ(ρ,β,−z) = z·L(z), with derivatives. The
/// f-normalization is ratio-only, see [`ratio_one_plus_zfpp_fp_wright`].
pub fn normalized_wright<F: Field>(
    p: WrightParams<F::Re>,
    norm: Norm,
    z: F,
    deriv: u8,
) -> Result<EvalResult<F>> {
    p.validate_series()?;
    check_deriv(deriv)?;
    match norm {
        Norm::F => Err(Error::Unsupported(
            "f-normalization values are branch-sensitive; use ratio_one_plus_zfpp_fp_wright".into(),
        )),
        Norm::G => {
            let w = z * z;
            let l = l_eval::<F>(p, w)?;
            let (value, err) = match deriv {
                0 => (z * l.v, z.modulus() * l.err[0]),
                1 => (
                    l.v + (w * l.d1).scale(F::Re::of(2.0)),
                    l.err[0] + F::Re::of(2.0) * w.modulus() * l.err[1],
                ),
                _ => (
                    (z * l.d1).scale(F::Re::of(6.0)) + (z * w * l.d2).scale(F::Re::of(4.0)),
                    F::Re::of(6.0) * z.modulus() * l.err[1]
                        + F::Re::of(4.0) * (z * w).modulus() * l.err[2],
                ),
            };
            Ok(EvalResult {
                value,
                abs_error_est: err,
                terms_used: l.terms,
            })
        }
        Norm::H => {
            let l = l_eval::<F>(p, z)?;
            let (value, err) = match deriv {
                0 => (z * l.v, z.modulus() * l.err[0]),
                1 => (l.v + z * l.d1, l.err[0] + z.modulus() * l.err[1]),
                _ => (
                    l.d1.scale(F::Re::of(2.0)) + z * l.d2,
                    F::Re::of(2.0) * l.err[1] + z.modulus() * l.err[2],
                ),
            };
            Ok(EvalResult {
                value,
                abs_error_est: err,
                terms_used: l.terms,
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

/// The uniform-convexity test quantity 1 + z f″/f′ for the Wright
/// normalizations, via the chain-rule identities
///   F: 1 + (1/β − 1)·zΨ′/Ψ + zΨ″/Ψ′ (all in terms of L)
///   G: 1 + (6wL′ + 4w²L″)/(L + 2wL′),  w = z²
///   H: 1 + (2wL′ + w²L″)/(L + wL′),    w = z
pub fn ratio_one_plus_zfpp_fp_wright<F: Field>(
    p: WrightParams<F::Re>,
    norm: Norm,
    z: F,
) -> Result<F> {
    p.validate_series()?;
    let beta = p.beta;
    match norm {
        Norm::F => {
            if beta == F::Re::zero() {
                return Err(Error::InvalidParameter(
                    "f-normalization requires beta != 0".into(),
                ));
            }
            let w = z * z;
            let l = l_eval::<F>(p, w)?;
            guard_denominator(l.v, l.v.modulus() + (w * l.d1).modulus(), "Psi")?;
            let zpsip_over_psi = F::from_real(beta) + (w * l.d1).scale(F::Re::of(2.0)) / l.v;
            let den = l.v.scale(beta) + (w * l.d1).scale(F::Re::of(2.0));
            guard_denominator(
                den,
                l.v.modulus() * beta.abs() + F::Re::of(2.0) * (w * l.d1).modulus(),
                "Psi'",
            )?;
            let num = l.v.scale(beta * (beta - F::Re::one()))
                + (w * l.d1).scale(F::Re::of(4.0) * beta + F::Re::of(2.0))
                + (w * w * l.d2).scale(F::Re::of(4.0));
            let zpsipp_over_psip = num / den;
            Ok(F::one()
                + zpsip_over_psi.scale(F::Re::one() / beta - F::Re::one())
                + zpsipp_over_psip)
        }
        Norm::G => {
            let w = z * z;
            let l = l_eval::<F>(p, w)?;
            let den = l.v + (w * l.d1).scale(F::Re::of(2.0));
            guard_denominator(
                den,
                l.v.modulus() + F::Re::of(2.0) * (w * l.d1).modulus(),
                "g'",
            )?;
            let num = (w * l.d1).scale(F::Re::of(6.0)) + (w * w * l.d2).scale(F::Re::of(4.0));
            Ok(F::one() + num / den)
        }
        Norm::H => {
            let w = z;
            let l = l_eval::<F>(p, w)?;
            let den = l.v + w * l.d1;
            guard_denominator(den, l.v.modulus() + (w * l.d1).modulus(), "h'")?;
            let num = (w * l.d1).scale(F::Re::of(2.0)) + w * w * l.d2;
            Ok(F::one() + num / den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::classical_bessel;

    fn wp(rho: f64, beta: f64) -> WrightParams<f64> {
        WrightParams::new(rho, beta).unwrap()
    }

    #[test]
    fn series_head_is_reciprocal_gamma_beta() {
        assert!((wright_phi::<f64>(wp(1.0, 1.0), 0.0, 0).unwrap().value - 1.0).abs() < 5e-15);
        assert!((wright_phi::<f64>(wp(1.0, 2.0), 0.0, 0).unwrap().value - 1.0).abs() < 5e-15);
        let v = wright_phi::<f64>(wp(0.5, 0.5), 0.0, 0).unwrap().value;
        assert!((v - 1.0 / crate::gamma::gamma(0.5_f64)).abs() < 5e-15);
    }

    #[test]
    fn bessel_identity_phi_1_nu_plus_1() {
        // φ(1, ν+1, −x²/4)·(x/2)^ν = J_ν(x)
        for &nu in &[0.0_f64, 0.5, 1.0] {
            for &x in &[0.3_f64, 1.5, 4.0] {
                let phi = wright_phi::<f64>(wp(1.0, nu + 1.0), -x * x / 4.0, 0)
                    .unwrap()
                    .value;
                let lhs = phi * (x / 2.0_f64).powf(nu);
                let rhs = classical_bessel(nu, x).unwrap().value;
                assert!((lhs - rhs).abs() < 1e-12, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn lambda_is_even_with_flat_origin() {
        let p = wp(0.7, 1.3);
        for &z in &[0.4_f64, 1.1] {
            let plus = lambda_func::<f64>(p, z, 0).unwrap().value;
            let minus = lambda_func::<f64>(p, -z, 0).unwrap().value;
            assert!((plus - minus).abs() < 1e-15);
        }
        assert_eq!(lambda_func::<f64>(p, 0.0, 1).unwrap().value, 0.0);
    }

    #[test]
    fn lambda_derivatives_match_central_differences() {
        let p = wp(0.5, 1.0);
        let h = 1e-5;
        for &z in &[0.3_f64, 0.9] {
            let f = |x: f64| lambda_func::<f64>(p, x, 0).unwrap().value;
            let d1 = lambda_func::<f64>(p, z, 1).unwrap().value;
            let d2 = lambda_func::<f64>(p, z, 2).unwrap().value;
            assert!((d1 - (f(z + h) - f(z - h)) / (2.0 * h)).abs() < 1e-8);
            assert!((d2 - (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h)).abs() < 1e-4);
        }
    }

    #[test]
    fn psi_derivatives_match_central_differences() {
        let p = wp(1.0, 0.8);
        let h = 1e-5;
        for &z in &[0.4_f64, 1.0] {
            let f = |x: f64| psi_func(p, x, 0).unwrap().value;
            let d1 = psi_func(p, z, 1).unwrap().value;
            let d2 = psi_func(p, z, 2).unwrap().value;
            assert!((d1 - (f(z + h) - f(z - h)) / (2.0 * h)).abs() < 1e-7);
            assert!((d2 - (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h)).abs() < 1e-4);
        }
    }

    #[test]
    fn psi_leading_order_at_origin() {
        // Ψ(z) ~ z^β/Γ(β) as z→0
        let p = wp(0.5, 1.7);
        let z = 1e-4_f64;
        let got = psi_func(p, z, 0).unwrap().value;
        let expect = z.powf(p.beta) / crate::gamma::gamma(p.beta);
        assert!((got / expect - 1.0).abs() < 1e-7);
    }

    #[test]
    fn normalized_forms_are_in_class_a() {
        for p in [wp(0.5, 0.5), wp(1.0, 1.5), wp(2.0, 2.0)] {
            let z = 1e-6_f64;
            for norm in [Norm::G, Norm::H] {
                let v = normalized_wright::<f64>(p, norm, z, 0).unwrap().value;
                assert!((v / z - 1.0).abs() < 1e-5, "{:?} {:?}", p, norm);
                let d = normalized_wright::<f64>(p, norm, 0.0, 1).unwrap().value;
                assert!((d - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn wright_g_closed_form_for_rho_1_beta_three_halves() {
        // L(w) = Γ(3/2)φ(1,3/2,−w) = sin(2√w)/(2√w), so g(z) = sin(2z)/2
        let p = wp(1.0, 1.5);
        for &z in &[0.2_f64, 0.7, 1.4] {
            let g = normalized_wright::<f64>(p, Norm::G, z, 0).unwrap().value;
            assert!((g - (2.0 * z).sin() / 2.0).abs() < 1e-14, "z={z}");
        }
    }

    #[test]
    fn gamma_poles_contribute_zero_terms() {
        // β = 0: the n = 0 term has 1/Γ(0) = 0; series still converges
        let p = WrightParams {
            rho: 1.0,
            beta: 0.0,
        };
        let v = wright_phi::<f64>(p, 0.5, 0).unwrap().value;
        // φ(1,0,x) = Σ_{n≥1} x^n/(n!Γ(n)) with finite positive value
        let mut brute = 0.0;
        let mut fact = 1.0;
        for n in 1..30 {
            fact *= n as f64;
            brute += 0.5_f64.powi(n) / (fact * crate::gamma::gamma(n as f64));
        }
        assert!((v - brute).abs() < 1e-14);
    }

    #[test]
    fn negative_rho_series_is_accepted() {
        let p = WrightParams {
            rho: -0.5,
            beta: 1.0,
        };
        assert!(p.validate_series().is_ok());
        assert!(p.validate_radius().is_err());
        let v = wright_phi::<f64>(p, 0.2, 0).unwrap().value;
        assert!(v.is_finite());
    }

    #[test]
    fn ratio_is_one_at_origin() {
        use num_complex::Complex;
        let z = Complex::new(0.0, 0.0);
        for norm in [Norm::F, Norm::G, Norm::H] {
            let q = ratio_one_plus_zfpp_fp_wright::<Complex<f64>>(wp(1.0, 1.5), norm, z).unwrap();
            assert!((q - Complex::new(1.0, 0.0)).norm() < 1e-15, "{:?}", norm);
        }
    }
}
