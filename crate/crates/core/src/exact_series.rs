//! Exact generation of the `G` coefficient polynomials.
//!
//! The phase map `w²/2 = t - log t - 1` has a regular branch through the
//! saddle `t = 1` with `w ~ t - 1`. Reverting it gives
//!
//! ```text
//! t(w) = 1 + w + w²/3 + w³/36 - w⁴/270 + w⁵/4320 + ...
//! ```
//!
//! and the coefficients `G_k(γ)` are read off the regular part of
//!
//! ```text
//! t^(γ-1)/(1-t) · dt/dw + 1/w = Σ_k G_k(γ) wᵏ,
//! ```
//!
//! where the simple pole of the first term cancels the explicit `1/w`
//! exactly, for every γ. Everything here is exact rational arithmetic; γ is
//! kept symbolic so a single generation pass serves every evaluation point.
//! Only the even-index `G_2k` enter the `B_j` coefficients downstream, but
//! the odd ones fall out of the same expansion and are retained.

use std::sync::OnceLock;

use rug::ops::Pow;

use crate::error::{Error, Result};
use crate::gamma_poly::GammaPolynomial;
use crate::rational::{rat, Rational};
use crate::series::FormalSeries;

/// Default number of series terms (`M`) the evaluators are sized for.
pub const DEFAULT_TERM_CAP: u32 = 16;

/// Index of the highest `G` polynomial in the shared table. `B_j` for
/// `j <= M-1` consumes `G_2j`, so the ceiling tracks `2 * DEFAULT_TERM_CAP`.
pub const DEFAULT_G_CEILING: usize = 2 * DEFAULT_TERM_CAP as usize;

/// Reverts the phase map: returns `t(w) = Σ c_n wⁿ` with `c₀ = c₁ = 1`
/// such that `t - log t - 1 = w²/2` holds through `w^order`.
///
/// Differentiating the phase identity gives `(t - 1) t' = w t`, which yields
/// the coefficients by a short recurrence; the branch choice `w ~ t - 1`
/// fixes `c₁ = +1` (the identity alone only forces `c₁² = 1`).
pub fn invert_phase_map(order: u32) -> FormalSeries<Rational> {
    assert!(order >= 1, "need at least order 1");
    let order = order as usize;
    let mut c: Vec<Rational> = Vec::with_capacity(order + 1);
    c.push(Rational::from(1));
    c.push(Rational::from(1));
    for m in 2..=order {
        // coefficient of w^m in (t-1)t' = w t:
        //   (m+1) c₁ c_m + Σ_{i=2..m-1} c_i (m+1-i) c_{m+1-i} = c_{m-1}
        let mut acc = c[m - 1].clone();
        for i in 2..m {
            acc -= Rational::from(&c[i] * &c[m + 1 - i]) * Rational::from((m + 1 - i) as i64);
        }
        c.push(acc / Rational::from((m + 1) as i64));
    }
    FormalSeries::from_coeffs(0, c)
}

/// Checks `t - log t - 1 = w²/2` coefficientwise through `series.order()`.
///
/// This is the independent verification route: `log t` is computed by the
/// composition series `Σ (-1)^(m+1) (t-1)^m / m`, sharing nothing with the
/// recurrence in [`invert_phase_map`].
pub fn verify_phase_identity(series: &FormalSeries<Rational>) -> Result<bool> {
    if series.lowest_power() > 0 || series.coeff(0) != 1 {
        return Err(Error::invalid(
            "phase identity check needs a series with constant term 1 (log t undefined otherwise)",
        ));
    }
    let order = series.order();
    let u = series
        .sub(&FormalSeries::monomial(Rational::from(1), 0, order))
        .normalized(); // t - 1, valuation >= 1
    let log_t = log_by_composition(&u);

    let mut residual = series.sub(&log_t);
    residual = residual.sub(&FormalSeries::monomial(Rational::from(1), 0, order));
    if order >= 2 {
        residual = residual.sub(&FormalSeries::monomial(rat(1, 2), 2, order));
    }
    Ok((0..=residual.order()).all(|k| residual.coeff(k) == 0))
}

/// `log(1 + u) = Σ_{m>=1} (-1)^(m+1) u^m / m` for a series `u` with zero
/// constant term, summed until the powers of `u` leave the window.
fn log_by_composition(u: &FormalSeries<Rational>) -> FormalSeries<Rational> {
    assert!(
        u.lowest_power() >= 1 || u.coeff(0) == 0,
        "log composition needs valuation >= 1"
    );
    let order = u.order();
    let u = u.clone().normalized();
    let mut sum = FormalSeries::zero(order);
    let mut u_pow = u.clone();
    let mut m = 1i64;
    loop {
        let signed = if m % 2 == 1 {
            u_pow.scale(&rat(1, m))
        } else {
            u_pow.scale(&rat(-1, m))
        };
        sum = sum.add(&signed);
        if m >= order || u_pow.lowest_power() + u.lowest_power() > order {
            break;
        }
        u_pow = u_pow.mul(&u).truncate(order);
        m += 1;
    }
    sum.truncate(order)
}

/// Generates `G_0 ..= G_max_index` as polynomials in γ.
pub fn g_polynomials(max_index: usize) -> Vec<GammaPolynomial> {
    // To read off G_k for k <= K we need the expansion through w^(K+1),
    // which needs t' and (t-1)/w through that order, hence t through K+2.
    let n = max_index as u32 + 2;
    let t = invert_phase_map(n);

    let log_t = t.log();
    let t_prime = t.derivative();
    // (t-1)/w has constant term c₁ = 1 and is known through w^(K+1).
    let u = t
        .sub(&FormalSeries::monomial(Rational::from(1), 0, t.order()))
        .normalized()
        .shift(-1);
    let rational_part = t_prime.mul(&u.reciprocal());

    // t^(γ-1) = exp((γ-1) log t), with γ symbolic.
    let gamma_minus_one =
        GammaPolynomial::new(vec![rat(-1, 1), rat(1, 1)]);
    let v = log_t.map(|c| gamma_minus_one.scale(c));
    let t_pow = v.exp();

    let s = t_pow.mul(&rational_part.map(|c| GammaPolynomial::constant(c.clone())));

    // t^(γ-1)/(1-t)·t' + 1/w  =  -S/w + 1/w.  The pole cancels iff S₀ = 1.
    let lhs = s
        .shift(-1)
        .neg()
        .add(&FormalSeries::monomial(GammaPolynomial::one(), -1, s.order() - 1));
    assert!(
        lhs.coeff(-1).is_zero(),
        "pole of the γ-expansion failed to cancel: S₀ = {}",
        s.coeff(0)
    );

    (0..=max_index as i64)
        .map(|k| {
            let g = lhs.coeff(k);
            debug_assert!(
                g.degree().unwrap_or(0) <= k as usize + 1,
                "deg G_{k} exceeds {}",
                k + 1
            );
            g
        })
        .collect()
}

/// Immutable table of generated `G` polynomials.
///
/// Generation is pure and the table is never mutated afterwards, so sharing
/// between threads is free. [`GTable::shared`] exposes a process-wide table
/// built once at the default ceiling.
#[derive(Debug, Clone)]
pub struct GTable {
    polys: Vec<GammaPolynomial>,
}

impl GTable {
    pub fn generate(max_index: usize) -> Self {
        GTable {
            polys: g_polynomials(max_index),
        }
    }

    /// Process-wide table covering `G_0 ..= G_DEFAULT_G_CEILING`.
    pub fn shared() -> &'static GTable {
        static SHARED: OnceLock<GTable> = OnceLock::new();
        SHARED.get_or_init(|| GTable::generate(DEFAULT_G_CEILING))
    }

    pub fn max_index(&self) -> usize {
        self.polys.len() - 1
    }

    /// The polynomial `G_k(γ)`.
    pub fn g(&self, k: usize) -> Result<&GammaPolynomial> {
        self.polys.get(k).ok_or(Error::NotGenerated {
            requested: k,
            max: self.max_index(),
        })
    }

    /// The rescaled polynomial `Ĝ_2k = 6^2k · G_2k`.
    pub fn ghat(&self, k: usize) -> Result<GammaPolynomial> {
        let g = self.g(2 * k)?;
        let scale = Rational::from(rug::Integer::from(36).pow(k as u32));
        Ok(g.scale(&scale))
    }

    /// `Ĝ_2k` evaluated exactly at a rational γ.
    pub fn ghat_eval(&self, k: usize, gamma: &Rational) -> Result<Rational> {
        Ok(self.ghat(k)?.eval(gamma))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_coeffs(s: &FormalSeries<Rational>) -> Vec<Rational> {
        (0..=s.order()).map(|k| s.coeff(k)).collect()
    }

    #[test]
    fn reversion_matches_known_coefficients() {
        let t = invert_phase_map(5);
        let expect: Vec<Rational> = [
            (1, 1),
            (1, 1),
            (1, 3),
            (1, 36),
            (-1, 270),
            (1, 4320),
        ]
        .iter()
        .map(|&(n, d)| rat(n, d))
        .collect();
        assert_eq!(series_coeffs(&t), expect);
    }

    #[test]
    fn reversion_order_one_is_branch_normalized() {
        let t = invert_phase_map(1);
        assert_eq!(series_coeffs(&t), vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn phase_identity_holds_for_reversion() {
        for order in [1u32, 2, 3, 7, 10, 12] {
            let t = invert_phase_map(order);
            assert!(verify_phase_identity(&t).unwrap(), "order {order}");
        }
    }

    #[test]
    fn phase_identity_fails_on_perturbation() {
        let t = invert_phase_map(10);
        let bump = FormalSeries::monomial(Rational::from(1), 2, 10);
        assert!(!verify_phase_identity(&t.add(&bump)).unwrap());
    }

    #[test]
    fn phase_identity_accepts_printed_prefix() {
        let t = FormalSeries::from_coeffs(0, vec![rat(1, 1), rat(1, 1), rat(1, 3), rat(1, 36)]);
        assert!(verify_phase_identity(&t).unwrap());
    }

    #[test]
    fn phase_identity_rejects_bad_constant_term() {
        let s = FormalSeries::from_coeffs(0, vec![rat(2, 1), rat(1, 1)]);
        assert!(verify_phase_identity(&s).is_err());
    }

    #[test]
    fn g0_is_two_thirds_minus_gamma() {
        let table = GTable::generate(2);
        let expect = GammaPolynomial::new(vec![rat(2, 3), rat(-1, 1)]);
        assert_eq!(table.g(0).unwrap(), &expect);
    }

    #[test]
    fn g2_rescales_to_printed_polynomial() {
        // 36 G₂ = (46 - 225γ + 270γ² - 90γ³)/15
        let table = GTable::generate(4);
        let expect = GammaPolynomial::new(vec![rat(46, 15), rat(-15, 1), rat(18, 1), rat(-6, 1)]);
        assert_eq!(table.ghat(1).unwrap(), expect);
    }

    #[test]
    fn ghat_eval_known_points() {
        let table = GTable::generate(8);
        assert_eq!(table.ghat_eval(0, &rat(1, 4)).unwrap(), rat(5, 12));
        // corrected constant term of Ĝ₆ (the -3626, not -3226)
        assert_eq!(table.ghat_eval(3, &Rational::new()).unwrap(), rat(-3626, 350));
        assert_eq!(
            table.ghat_eval(4, &Rational::new()).unwrap(),
            rat(-4032746, 231000)
        );
    }

    #[test]
    fn ghat_beyond_table_is_an_error() {
        let table = GTable::generate(4);
        assert!(matches!(
            table.ghat_eval(3, &Rational::new()),
            Err(Error::NotGenerated { requested: 6, max: 4 })
        ));
    }

    #[test]
    fn regeneration_is_prefix_stable() {
        let small = GTable::generate(10);
        let large = GTable::generate(20);
        for k in 0..=10 {
            assert_eq!(small.g(k).unwrap(), large.g(k).unwrap(), "G_{k} changed");
        }
    }

    #[test]
    fn degrees_are_bounded() {
        let table = GTable::generate(12);
        for k in 0..=12 {
            let g = table.g(k).unwrap();
            assert!(g.degree().unwrap_or(0) <= k + 1);
        }
    }
}
