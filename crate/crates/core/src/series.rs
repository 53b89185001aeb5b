//! Shared engine for entire functions given by their Taylor coefficients:
//! evaluation of the value and first two derivatives with certified
//! truncation, and Newton-identity power sums over the reciprocal zeros.

use num_traits::{Float, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Real};
use crate::sum::Compensated;

pub(crate) const DEFAULT_EPS_REL: f64 = 1e-15;
pub(crate) const DEFAULT_MAX_TERMS: usize = 2000;

/// Value and first two derivatives of Σ c_n w^n, with per-order
/// first-omitted-term error estimates and the term count used.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Deriv3<F: Field> {
    pub v: F,
    pub d1: F,
    pub d2: F,
    pub err: [F::Re; 3],
    pub terms: usize,
}

/// w^n held as m·2^e so the tracker survives |w|^n overflowing f64 while
/// the actual terms c_n w^n stay small (coefficients decay much faster).
#[derive(Clone, Copy)]
struct ScaledPow<F: Field> {
    m: F,
    e: i32,
}

impl<F: Field> ScaledPow<F> {
    fn one() -> Self {
        Self { m: F::one(), e: 0 }
    }

    fn zero() -> Self {
        Self { m: F::zero(), e: 0 }
    }

    fn step(&mut self, w: F) {
        self.m = self.m * w;
        let big = F::Re::of(2.0).powi(500);
        while self.m.modulus() > big {
            self.m = self.m.scale(F::Re::of(2.0).powi(-500));
            self.e += 500;
        }
    }

    /// c · m · 2^e, applied in halves so intermediate factors cannot
    /// overflow unless the true product does.
    fn term(&self, c: F::Re) -> F {
        let t = self.m.scale(c);
        if self.e == 0 {
            return t;
        }
        let h1 = self.e / 2;
        let h2 = self.e - h1;
        t.scale(F::Re::of(2.0).powi(h1))
            .scale(F::Re::of(2.0).powi(h2))
    }
}

/// Sum Σ c_n w^n together with its first two w-derivatives.
///
/// Truncation: stop once every order's term magnitude has fallen below
/// `eps_rel` times its partial sum for three consecutive indices and the
/// value-term ratio shows geometric decay.
pub(crate) fn eval_with_derivs<F, I>(
    coeffs: I,
    w: F,
    eps_rel: F::Re,
    max_terms: usize,
) -> Result<Deriv3<F>>
where
    F: Field,
    I: IntoIterator<Item = F::Re>,
{
    let mut s0 = Compensated::<F>::new();
    let mut s1 = Compensated::<F>::new();
    let mut s2 = Compensated::<F>::new();
    let mut err;

    let mut pow = ScaledPow::<F>::one(); // w^n
    let mut pow1 = ScaledPow::<F>::zero(); // w^{n-1}
    let mut pow2 = ScaledPow::<F>::zero(); // w^{n-2}

    let mut quiet_streak = 0usize;
    let mut prev_mag0 = F::Re::infinity();
    let tiny = F::Re::min_positive_value();

    for (n, c) in coeffs.into_iter().enumerate() {
        if n >= max_terms {
            return Err(Error::NonConvergence { max_terms });
        }
        let nf = F::Re::of(n as f64);
        let t0 = pow.term(c);
        let t1 = pow1.term(c * nf);
        let t2 = pow2.term(c * nf * (nf - F::Re::one()));
        if !t0.is_finite() || !t1.is_finite() || !t2.is_finite() {
            return Err(Error::NonConvergence { max_terms: n });
        }
        s0.add(t0);
        s1.add(t1);
        s2.add(t2);

        let m0 = t0.modulus();
        let m1 = t1.modulus();
        let m2 = t2.modulus();
        err = [m0, m1, m2];

        let small = m0 <= eps_rel * s0.value().modulus() + tiny
            && m1 <= eps_rel * s1.value().modulus() + tiny
            && m2 <= eps_rel * s2.value().modulus() + tiny;
        let decaying = m0 <= F::Re::of(0.9) * prev_mag0 || m0 == F::Re::zero();
        if n >= 3 && small && decaying {
            quiet_streak += 1;
            if quiet_streak >= 3 {
                return Ok(Deriv3 {
                    v: s0.value(),
                    d1: s1.value(),
                    d2: s2.value(),
                    err,
                    terms: n + 1,
                });
            }
        } else {
            quiet_streak = 0;
        }
        prev_mag0 = m0;

        pow2 = pow1;
        pow1 = pow;
        pow.step(w);
    }
    Err(Error::NonConvergence { max_terms })
}

/// Power sums σ_m = Σ_n w_n^{-m} of the zeros of f(w) = 1 + Σ_{k≥1} c_k w^k,
/// a genus-zero product ∏(1 − w/w_n), via Newton's identities:
///   σ_m = −m c_m − Σ_{i=1}^{m−1} c_i σ_{m−i}.
///
/// `c` holds c_1, c_2, ... (c_0 = 1 implied); returns σ_1..σ_{m_max}.
pub(crate) fn newton_power_sums<R: Real>(c: &[R], m_max: usize) -> Vec<R> {
    assert!(c.len() >= m_max, "need m_max Taylor coefficients");
    let mut sigma: Vec<R> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut acc = -R::of(m as f64) * c[m - 1];
        for i in 1..m {
            acc = acc - c[i - 1] * sigma[m - i - 1];
        }
        sigma.push(acc);
    }
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_series_and_derivatives() {
        // f(w) = e^w: c_n = 1/n!
        let coeffs = (0..200).scan(1.0_f64, |acc, n| {
            let c = *acc;
            *acc /= (n + 1) as f64;
            Some(c)
        });
        let d = eval_with_derivs(coeffs, 0.7_f64, 1e-15, 500).unwrap();
        let e = 0.7_f64.exp();
        assert!((d.v - e).abs() < 1e-14);
        assert!((d.d1 - e).abs() < 1e-14);
        assert!((d.d2 - e).abs() < 1e-14);
        assert!(d.err[0] < 1e-14);
    }

    #[test]
    fn power_sums_two_known_zeros() {
        // f(w) = (1 − w/2)(1 − w/5) = 1 − 0.7 w + 0.1 w²
        let c = [-0.7_f64, 0.1, 0.0, 0.0, 0.0, 0.0];
        let sigma = newton_power_sums(&c, 6);
        for (m, s) in sigma.iter().enumerate() {
            let expect = 0.5_f64.powi(m as i32 + 1) + 0.2_f64.powi(m as i32 + 1);
            assert!((s - expect).abs() < 1e-14, "m={} got {}", m + 1, s);
        }
    }

    #[test]
    fn at_zero_argument_terminates() {
        let coeffs = (0..50).map(|n| 1.0 / (1.0 + n as f64));
        let d = eval_with_derivs(coeffs, 0.0_f64, 1e-15, 100).unwrap();
        assert_eq!(d.v, 1.0);
        assert_eq!(d.d1, 0.5);
        assert_eq!(d.d2, 2.0 / 3.0);
    }
}
