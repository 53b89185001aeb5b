//! Radius of uniform convexity for the nine normalized functions, computed
//! by two independent routes and cross-checked:
//!
//! * R1 (`DirectEq`): the functional equations in J/J′/J″ (q-Bessel) or
//!   Ψ/Ψ′/Ψ″ and g′/g″, h′/h″ (Wright), evaluated from the defining series.
//! * R2 (`ZeroSum`): the strictly decreasing sum-over-zeros forms Φ_ν, A_ν,
//!   B_ν, u, v, w, with the first zeros explicit and the remainder of each
//!   pole sum restored exactly through Newton-identity power sums of the
//!   zeros (plain truncation cannot reach the required agreement for the
//!   polynomially spaced Wright zeros).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::{jackson_qbessel, QBesselParams};
use crate::scalar::Real;
use crate::wright::{normalized_wright, psi_func, WrightParams};
use crate::zeros::{scan_and_refine, Family, TargetKind, ZeroTable, ZeroTarget};
use crate::Norm;

/// How a radius value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectEq,
    ZeroSum,
    Oracle,
}

/// A computed radius of uniform convexity with its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult<R> {
    pub radius: R,
    pub bracket: (R, R),
    /// Value of the route's functional equation at the returned radius.
    pub residual: R,
    pub iterations: u32,
    pub method: Method,
    /// First critical zero bounding the search interval.
    pub domain_upper: R,
}

/// Both routes side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualRadius<R> {
    pub direct: RadiusResult<R>,
    pub zero_sum: RadiusResult<R>,
    /// |direct.radius − zero_sum.radius|.
    pub agreement: R,
}

#[derive(Debug, Clone, Copy)]
pub struct RadiusOptions<R> {
    /// Explicit zeros per table ahead of the power-sum remainder.
    pub zero_count: usize,
    pub zero_tol: R,
    /// Relative tolerance of the root search.
    pub root_tol: R,
}

impl<R: Real> Default for RadiusOptions<R> {
    fn default() -> Self {
        Self {
            zero_count: 12,
            zero_tol: R::of(1e-13),
            root_tol: R::of(1e-12),
        }
    }
}

/// Where zero tables come from; the CLI plugs a disk cache in here.
pub trait TableSource<R: Real> {
    fn table(&mut self, target: &ZeroTarget<R>, count: usize, tol: R) -> Result<ZeroTable<R>>;
}

/// Always recompute.
pub struct FreshTables;

impl<R: Real> TableSource<R> for FreshTables {
    fn table(&mut self, target: &ZeroTarget<R>, count: usize, tol: R) -> Result<ZeroTable<R>> {
        scan_and_refine(target, count, tol)
    }
}

/// Number of power sums backing each pole-sum remainder.
const POWER_SUM_ORDER: usize = 80;

/// Σ_n 2x/(w_n − x) over *all* zeros of a target: the first zeros enter
/// explicitly, the remainder as 2 Σ_m (σ_m − Σ_{n≤N} w_n^{−m}) x^m.
pub(crate) struct PoleSum<R> {
    ws: Vec<R>,
    tail: Vec<R>,
}

impl<R: Real> PoleSum<R> {
    pub(crate) fn new(table: &ZeroTable<R>, sigma: &[R]) -> Self {
        let ws = table.zeros_w();
        let mut inv: Vec<R> = ws.iter().map(|&w| R::one() / w).collect();
        let mut tail = Vec::with_capacity(sigma.len());
        for &s in sigma {
            let mut head = R::zero();
            for p in inv.iter() {
                head = head + *p;
            }
            tail.push(s - head);
            for (p, &w) in inv.iter_mut().zip(ws.iter()) {
                *p = *p / w;
            }
        }
        Self { ws, tail }
    }

    /// Evaluate at 0 ≤ x < w_1.
    pub(crate) fn eval(&self, x: R) -> Result<R> {
        if !(x < self.ws[0]) {
            return Err(Error::InvalidParameter(format!(
                "pole sum argument {} not below first zero {}",
                x, self.ws[0]
            )));
        }
        let mut acc = R::zero();
        for &w in &self.ws {
            acc = acc + R::of(2.0) * x / (w - x);
        }
        let mut xp = x;
        let mut quiet = 0usize;
        for &t in &self.tail {
            let term = R::of(2.0) * t * xp;
            acc = acc + term;
            if term.abs() <= R::of(1e-17) * (acc.abs() + R::one()) {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
            xp = xp * x;
        }
        Ok(acc)
    }
}

/// Style of the monotone sum form.
enum FormKind<R> {
    /// Φ or u: 1 − 2 S_deriv(r²) + 2(1 − 1/order) S_func(r²)
    FPrimePair { func: PoleSum<R>, order: R },
    /// A or v: 1 − 2 S(r²)
    GSquared,
    /// B or w: 1 − S(r)
    HLinear,
}

/// The strictly decreasing zero-sum target function of one radius problem.
pub struct ZeroSumForm<R> {
    deriv_sum: PoleSum<R>,
    kind: FormKind<R>,
    domain_upper: R,
}

impl<R: Real> ZeroSumForm<R> {
    pub fn domain_upper(&self) -> R {
        self.domain_upper
    }

    /// Evaluate at r ∈ (0, domain_upper).
    pub fn eval(&self, r: R) -> Result<R> {
        match &self.kind {
            FormKind::FPrimePair { func, order } => {
                let x = r * r;
                let sd = self.deriv_sum.eval(x)?;
                let sf = func.eval(x)?;
                Ok(R::one() - R::of(2.0) * sd + R::of(2.0) * (R::one() - R::one() / *order) * sf)
            }
            FormKind::GSquared => {
                let x = r * r;
                Ok(R::one() - R::of(2.0) * self.deriv_sum.eval(x)?)
            }
            FormKind::HLinear => Ok(R::one() - self.deriv_sum.eval(r)?),
        }
    }
}

/// Target kind whose first zero bounds the search interval.
fn critical_target_kind<R: Real>(family: &Family<R>, norm: Norm) -> Result<TargetKind> {
    Ok(match (family, norm) {
        (Family::QBessel(_), Norm::F) => TargetKind::Derivative,
        (Family::QBessel(p), Norm::G) => match p.kind {
            crate::qseries::QKind::Jackson2 => TargetKind::AlphaComb,
            crate::qseries::QKind::Jackson3 => TargetKind::GammaComb,
        },
        (Family::QBessel(p), Norm::H) => match p.kind {
            crate::qseries::QKind::Jackson2 => TargetKind::BetaComb,
            crate::qseries::QKind::Jackson3 => TargetKind::DeltaComb,
        },
        (Family::Wright(_), Norm::F) => TargetKind::PsiPrime,
        (Family::Wright(_), Norm::G) => TargetKind::GPrime,
        (Family::Wright(_), Norm::H) => TargetKind::HPrime,
    })
}

fn validate_for_norm<R: Real>(family: &Family<R>, norm: Norm) -> Result<()> {
    match family {
        Family::QBessel(p) => {
            p.validate()?;
            if norm == Norm::F && !(p.nu > R::zero()) {
                return Err(Error::InvalidParameter(format!(
                    "f-normalization radius requires nu > 0, got {}",
                    p.nu
                )));
            }
            Ok(())
        }
        Family::Wright(p) => p.validate_radius(),
    }
}

/// Build the zero-sum form (R2 objective) for one radius problem.
pub fn zero_sum_form<R: Real, T: TableSource<R>>(
    family: &Family<R>,
    norm: Norm,
    opts: &RadiusOptions<R>,
    tables: &mut T,
) -> Result<ZeroSumForm<R>> {
    validate_for_norm(family, norm)?;
    let crit_kind = critical_target_kind(family, norm)?;
    let crit_target = ZeroTarget::new(*family, crit_kind)?;
    let crit_table = tables.table(&crit_target, opts.zero_count, opts.zero_tol)?;
    let deriv_sum = PoleSum::new(&crit_table, &crit_target.power_sums(POWER_SUM_ORDER));

    // For the h-normalizations the radius variable already is w.
    let domain_upper = match (family, norm) {
        (Family::QBessel(_), Norm::H) => crit_table.zeros_w()[0],
        _ => crit_table.first(),
    };

    let kind = match norm {
        Norm::F => {
            let func_target = ZeroTarget::new(*family, TargetKind::Function)?;
            let func_table = tables.table(&func_target, opts.zero_count, opts.zero_tol)?;
            let func = PoleSum::new(&func_table, &func_target.power_sums(POWER_SUM_ORDER));
            let order = match family {
                Family::QBessel(p) => p.nu,
                Family::Wright(p) => p.beta,
            };
            FormKind::FPrimePair { func, order }
        }
        Norm::G => FormKind::GSquared,
        Norm::H => FormKind::HLinear,
    };
    Ok(ZeroSumForm {
        deriv_sum,
        kind,
        domain_upper,
    })
}

/// R1 objective: the direct functional equation evaluated from the series.
pub fn direct_form_eval<R: Real>(family: &Family<R>, norm: Norm, r: R) -> Result<R> {
    match (family, norm) {
        (Family::QBessel(p), Norm::F) => {
            // 1 + 2[(1/ν − 1) rJ′/J + rJ″/J′]
            let j0 = jackson_qbessel(*p, r, 0)?.value;
            let j1 = jackson_qbessel(*p, r, 1)?.value;
            let j2 = jackson_qbessel(*p, r, 2)?.value;
            let nu = p.nu;
            Ok(R::one() + R::of(2.0) * ((R::one() / nu - R::one()) * r * j1 / j0 + r * j2 / j1))
        }
        (Family::QBessel(p), Norm::G) => {
            // (2ν−1)(ν−1)J(r) + (5−4ν) r J′(r) + 2 r² J″(r)
            let j0 = jackson_qbessel(*p, r, 0)?.value;
            let j1 = jackson_qbessel(*p, r, 1)?.value;
            let j2 = jackson_qbessel(*p, r, 2)?.value;
            let nu = p.nu;
            Ok((R::of(2.0) * nu - R::one()) * (nu - R::one()) * j0
                + (R::of(5.0) - R::of(4.0) * nu) * r * j1
                + R::of(2.0) * r * r * j2)
        }
        (Family::QBessel(p), Norm::H) => {
            // (ν−1)(ν−2)J(√r) + (4−2ν)√r J′(√r) + r J″(√r)
            let s = r.sqrt();
            let j0 = jackson_qbessel(*p, s, 0)?.value;
            let j1 = jackson_qbessel(*p, s, 1)?.value;
            let j2 = jackson_qbessel(*p, s, 2)?.value;
            let nu = p.nu;
            Ok((nu - R::one()) * (nu - R::of(2.0)) * j0
                + (R::of(4.0) - R::of(2.0) * nu) * s * j1
                + r * j2)
        }
        (Family::Wright(p), Norm::F) => {
            // 1 + 2rΨ″/Ψ′ + 2(1/β − 1) rΨ′/Ψ
            let psi0 = psi_func(*p, r, 0)?.value;
            let psi1 = psi_func(*p, r, 1)?.value;
            let psi2 = psi_func(*p, r, 2)?.value;
            let beta = p.beta;
            Ok(R::one()
                + R::of(2.0) * r * psi2 / psi1
                + R::of(2.0) * (R::one() / beta - R::one()) * r * psi1 / psi0)
        }
        (Family::Wright(p), norm) => {
            // 1 + 2r g″/g′ resp. 1 + 2r h″/h′
            let d1 = normalized_wright::<R>(*p, norm, r, 1)?.value;
            let d2 = normalized_wright::<R>(*p, norm, r, 2)?.value;
            Ok(R::one() + R::of(2.0) * r * d2 / d1)
        }
    }
}

/// Bisection on a certified bracket with a secant polish that never leaves
/// the bracket.
fn bracketed_root<R: Real>(
    f: &dyn Fn(R) -> Result<R>,
    lo0: R,
    hi0: R,
    rel_tol: R,
) -> Result<(R, (R, R), u32, R)> {
    let mut lo = lo0;
    let mut hi = hi0;
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    if flo * fhi >= R::zero() {
        return Err(Error::NonBracketing {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let mut iterations = 0u32;
    while (hi - lo) > rel_tol * (lo + hi) * R::of(0.5) && iterations < 300 {
        let mid = (lo + hi) * R::of(0.5);
        let fm = f(mid)?;
        if fm == R::zero() {
            return Ok((mid, (lo, hi), iterations, R::zero()));
        }
        if flo * fm < R::zero() {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        iterations += 1;
    }
    // secant polish inside the bracket
    let mut root = (lo + hi) * R::of(0.5);
    if fhi != flo {
        let s = lo - flo * (hi - lo) / (fhi - flo);
        if s > lo && s < hi {
            root = s;
        }
    }
    let residual = f(root)?;
    Ok((root, (lo, hi), iterations, residual))
}

const EDGE_LO: f64 = 1e-9;
const EDGE_HI: f64 = 1e-6;

/// Compute both routes for one (family, norm) radius problem.
pub fn uc_radius<R: Real, T: TableSource<R>>(
    family: &Family<R>,
    norm: Norm,
    opts: &RadiusOptions<R>,
    tables: &mut T,
) -> Result<DualRadius<R>> {
    let form = zero_sum_form(family, norm, opts, tables)?;
    let du = form.domain_upper();
    let lo = du * R::of(EDGE_LO);
    let hi = du * (R::one() - R::of(EDGE_HI));

    let direct_f = |r: R| direct_form_eval(family, norm, r);
    let (r1, b1, it1, res1) = bracketed_root(&direct_f, lo, hi, opts.root_tol)?;
    let zs_f = |r: R| form.eval(r);
    let (r2, b2, it2, res2) = bracketed_root(&zs_f, lo, hi, opts.root_tol)?;

    let direct = RadiusResult {
        radius: r1,
        bracket: b1,
        residual: res1,
        iterations: it1,
        method: Method::DirectEq,
        domain_upper: du,
    };
    let zero_sum = RadiusResult {
        radius: r2,
        bracket: b2,
        residual: res2,
        iterations: it2,
        method: Method::ZeroSum,
        domain_upper: du,
    };
    Ok(DualRadius {
        direct,
        zero_sum,
        agreement: (r1 - r2).abs(),
    })
}

/// Radius of uniform convexity of f_ν^{(s)}; requires ν > 0.
pub fn radius_uc_qbessel_f<R: Real>(p: &QBesselParams<R>) -> Result<DualRadius<R>> {
    uc_radius(
        &Family::QBessel(*p),
        Norm::F,
        &RadiusOptions::default(),
        &mut FreshTables,
    )
}

/// Radius of uniform convexity of g_ν^{(s)}.
pub fn radius_uc_qbessel_g<R: Real>(p: &QBesselParams<R>) -> Result<DualRadius<R>> {
    uc_radius(
        &Family::QBessel(*p),
        Norm::G,
        &RadiusOptions::default(),
        &mut FreshTables,
    )
}

/// Radius of uniform convexity of h_ν^{(s)}.
pub fn radius_uc_qbessel_h<R: Real>(p: &QBesselParams<R>) -> Result<DualRadius<R>> {
    uc_radius(
        &Family::QBessel(*p),
        Norm::H,
        &RadiusOptions::default(),
        &mut FreshTables,
    )
}

/// Radius of uniform convexity of f_{ρ,β}.
pub fn radius_uc_wright_f<R: Real>(p: &WrightParams<R>) -> Result<DualRadius<R>> {
    uc_radius(
        &Family::Wright(*p),
        Norm::F,
        &RadiusOptions::default(),
        &mut FreshTables,
    )
}

/// Radius of uniform convexity of g_{ρ,β}.
pub fn radius_uc_wright_g<R: Real>(p: &WrightParams<R>) -> Result<DualRadius<R>> {
    uc_radius(
        &Family::Wright(*p),
        Norm::G,
        &RadiusOptions::default(),
        &mut FreshTables,
    )
}

/// Radius of uniform convexity of h_{ρ,β}.
pub fn radius_uc_wright_h<R: Real>(p: &WrightParams<R>) -> Result<DualRadius<R>> {
    uc_radius(
        &Family::Wright(*p),
        Norm::H,
        &RadiusOptions::default(),
        &mut FreshTables,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::ratio_one_plus_zfpp_fp;
    use crate::zeros::scan_and_refine;
    use crate::QKind;

    fn p2(nu: f64, q: f64) -> QBesselParams<f64> {
        QBesselParams::new(QKind::Jackson2, nu, q).unwrap()
    }

    #[test]
    fn pole_sum_matches_log_derivative() {
        // For (ρ=1, β=1): L(w) = ∏(1−w/w_n), so Σ 2x/(w_n−x) = −2x L′(x)/L(x)
        let p = WrightParams::new(1.0_f64, 1.0).unwrap();
        let target = ZeroTarget::new(Family::Wright(p), crate::TargetKind::Function).unwrap();
        let table = scan_and_refine(&target, 6, 1e-13).unwrap();
        let sum = PoleSum::new(&table, &target.power_sums(POWER_SUM_ORDER));
        for &x in &[0.3_f64, 0.9, 1.3] {
            let got = sum.eval(x).unwrap();
            let l = crate::wright::l_eval::<f64>(p, x).unwrap();
            let expect = -2.0 * x * l.d1 / l.v;
            assert!((got - expect).abs() < 1e-13 * (1.0 + expect.abs()), "x={x}");
        }
    }

    #[test]
    fn routes_agree_and_stay_inside_domain() {
        let p = p2(1.0, 0.5);
        for norm in [Norm::F, Norm::G, Norm::H] {
            let d = uc_radius(
                &Family::QBessel(p),
                norm,
                &RadiusOptions::default(),
                &mut FreshTables,
            )
            .unwrap();
            assert!(d.agreement < 1e-9, "{:?}: {}", norm, d.agreement);
            assert!(d.direct.radius > 0.0);
            assert!(d.direct.radius < d.direct.domain_upper);
            assert!(d.direct.residual.abs() < 1e-9);
            assert!(d.zero_sum.residual.abs() < 1e-9);
        }
    }

    #[test]
    fn direct_g_equation_is_equivalent_to_the_ratio_form() {
        // the J-combination equation vanishes exactly where 1 + 2r g″/g′ does
        let p = p2(0.75, 0.6);
        let d = radius_uc_qbessel_g(&p).unwrap();
        let r = d.direct.radius;
        let q = ratio_one_plus_zfpp_fp::<f64>(p, Norm::G, r).unwrap();
        assert!(
            (2.0 * q - 1.0).abs() < 1e-8,
            "ratio form value {}",
            2.0 * q - 1.0
        );
    }

    #[test]
    fn zero_sum_form_is_strictly_decreasing() {
        let family = Family::QBessel(p2(0.5, 0.8));
        for norm in [Norm::F, Norm::G, Norm::H] {
            let form =
                zero_sum_form(&family, norm, &RadiusOptions::default(), &mut FreshTables).unwrap();
            let du = form.domain_upper();
            let mut prev = f64::INFINITY;
            for i in 0..64 {
                let t = (i as f64 + 0.5) / 64.0;
                let r = du * (1e-6 + (1.0 - 2e-6) * t);
                let v = form.eval(r).unwrap();
                assert!(v < prev, "{:?} r={r}: {v} !< {prev}", norm);
                prev = v;
            }
            // endpoint limits; the h-form is linear in r near 0 (the f/g
            // forms are quadratic), so its deviation at 1e-6·du is ~2e-6
            let head_tol = if norm == Norm::H { 1e-5 } else { 1e-8 };
            assert!((form.eval(1e-6 * du).unwrap() - 1.0).abs() < head_tol);
            assert!(form.eval((1.0 - 1e-6) * du).unwrap() < -1e3);
        }
    }

    #[test]
    fn wright_f_requires_positive_parameters() {
        let bad = WrightParams {
            rho: -0.5_f64,
            beta: 1.0,
        };
        assert!(radius_uc_wright_f(&bad).is_err());
        let bad2 = WrightParams {
            rho: 1.0_f64,
            beta: -1.0,
        };
        assert!(radius_uc_wright_g(&bad2).is_err());
    }

    #[test]
    fn qbessel_f_requires_positive_order() {
        let p = QBesselParams {
            kind: QKind::Jackson2,
            nu: 0.0_f64,
            q: 0.5,
        };
        assert!(radius_uc_qbessel_f(&p).is_err());
        // g and h are fine at nu = 0
        assert!(radius_uc_qbessel_g(&p).is_ok());
        assert!(radius_uc_qbessel_h(&p).is_ok());
    }

    #[test]
    fn radius_shrinks_with_stronger_normalization_exponent() {
        // for fixed parameters the three radii are ordered consistently with
        // their domain bounds: r_g < g's domain, r_h < h's domain, etc.
        let p = WrightParams::new(1.0_f64, 1.0).unwrap();
        let f = radius_uc_wright_f(&p).unwrap();
        let g = radius_uc_wright_g(&p).unwrap();
        let h = radius_uc_wright_h(&p).unwrap();
        for d in [&f, &g, &h] {
            assert!(d.agreement < 1e-9);
            assert!(d.direct.radius > 0.0 && d.direct.radius < d.direct.domain_upper);
        }
    }
}
