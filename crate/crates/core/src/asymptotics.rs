//! Expansion evaluators.
//!
//! Four quantities matter, all as `x → +∞`:
//!
//! * the dominant algebraic expansion of `w₁`/`w₂`, here summed to an
//!   arbitrary truncation `m` ([`algebraic_sum`]);
//! * the exponentially small remainder left after truncating the algebraic
//!   expansion at its least term (`𝒲`, computed by
//!   [`crate::oracle::w_residual`]);
//! * the refined expansion `E` of that remainder, with its second series of
//!   `B_j` coefficients and the *un*-doubled trigonometric prefactor
//!   ([`refined_exp_small`]; generic Kummer form in [`refined_kummer`]);
//! * the classical expansion whose exponentially small term carries the
//!   doubled prefactor and no `B`-series ([`standard_expansion`]) — once the
//!   algebraic part is optimally truncated, that term overstates the true
//!   remainder on the positive real axis by a factor of two.
//!
//! [`compare`] packages all of them side by side for one `(kind, a, x, M)`.

use rug::Float;

use crate::coefficients::{
    a_coefficients, b_coefficients, optimal_truncation, theta, Kind, KummerParams, TruncationSpec,
};
use crate::error::Result;
use crate::exact_series::GTable;
use crate::oracle::{
    cos_pi, pow2, pow_frac, reciprocal_gamma_rational, sin_pi, sqrt_pi, w_ref, BigReal,
    PrecisionContext,
};
use crate::rational::{rat, Rational};

/// A partial sum with its own accuracy bookkeeping: the magnitude of the
/// last included term and of the first omitted one (the conventional error
/// estimate for an asymptotic series).
#[derive(Clone, Debug)]
pub struct ExpansionValue {
    pub value: BigReal,
    pub terms_used: u32,
    pub last_term: BigReal,
    pub error_estimate: BigReal,
}

/// Side-by-side comparison of everything this crate can say about one
/// evaluation point.
#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub w_oracle: BigReal,
    pub algebraic: ExpansionValue,
    /// `w_oracle - algebraic.value`, by construction.
    pub residual_w: BigReal,
    pub refined_e: ExpansionValue,
    pub standard_exp_small: ExpansionValue,
    /// Standard exponentially small part over `residual_w`; tends to 2 on
    /// the positive axis.
    pub ratio_standard_over_w: BigReal,
    pub trunc: TruncationSpec,
}

/// Working precision for evaluations at this `x`: the oracle subtraction
/// dominates the requirement, so reuse its guard.
fn prec_for(x: &Rational, ctx: &PrecisionContext) -> Result<u32> {
    let z_abs = Rational::from(x * x).to_f64() / 2.0;
    ctx.working_prec(z_abs)
}

/// Prefactor of the algebraic expansion:
/// even `2^(1/4 + a/2) √π / Γ(1/4 - a/2)`, odd `2^(a/2 - 1/4) √π / Γ(3/4 - a/2)`,
/// times `x^(-a - 1/2)`. Gamma poles make it an exact zero.
fn algebraic_prefactor(kind: Kind, a: &Rational, xf: &Float, prec: u32) -> Float {
    let half_a = Rational::from(a / Rational::from(2));
    let (two_exp, gamma_arg) = match kind {
        Kind::Even => (rat(1, 4) + &half_a, rat(1, 4) - half_a.clone()),
        Kind::Odd => (half_a.clone() - rat(1, 4), rat(3, 4) - half_a),
    };
    let rg = reciprocal_gamma_rational(&gamma_arg, prec);
    if rg.is_zero() {
        return rg;
    }
    let exponent = -(a.clone() + rat(1, 2));
    pow2(&two_exp, prec) * sqrt_pi(prec) * rg * pow_frac(xf, &exponent)
}

/// Prefactor shared by both exponentially small expansions:
/// even `2^(1/4 - a/2) √π / Γ(1/4 + a/2)`, odd `2^(-a/2 - 1/4) √π / Γ(3/4 + a/2)`,
/// times `x^(a - 1/2) e^(-x²/2)`.
fn exp_small_prefactor(kind: Kind, a: &Rational, x: &Rational, prec: u32) -> Float {
    let xf = Float::with_val(prec, x);
    let half_a = Rational::from(a / Rational::from(2));
    let (two_exp, gamma_arg) = match kind {
        Kind::Even => (rat(1, 4) - &half_a, rat(1, 4) + half_a.clone()),
        Kind::Odd => (-(half_a.clone() + rat(1, 4)), rat(3, 4) + half_a),
    };
    let rg = reciprocal_gamma_rational(&gamma_arg, prec);
    if rg.is_zero() {
        return rg;
    }
    let power = pow_frac(&xf, &(a.clone() - rat(1, 2)));
    let exp = (Float::with_val(prec, Rational::from(x * x)) / -2i32).exp();
    pow2(&two_exp, prec) * sqrt_pi(prec) * rg * power * exp
}

fn two_over_sqrt_pi(prec: u32) -> Float {
    Float::with_val(prec, 2) / sqrt_pi(prec)
}

fn abs(x: &Float) -> Float {
    Float::with_val(x.prec(), x.abs_ref())
}

/// The dominant algebraic expansion truncated after `m` terms:
/// `prefactor · Σ_{k=0..m-1} (1/2 + a)_{2k} / (k! (2x²)^k)`.
///
/// At `a = 2n + 1/2` (even) or `a = 2n + 3/2` (odd) the reciprocal gamma in
/// the prefactor vanishes and the whole expansion is exactly zero — not an
/// error.
pub fn algebraic_sum(
    kind: Kind,
    a: &Rational,
    x: &Rational,
    m: u32,
    ctx: &PrecisionContext,
) -> Result<ExpansionValue> {
    assert!(m >= 1, "at least one term");
    let prec = prec_for(x, ctx)?;
    let xf = Float::with_val(prec, x);
    let pre = algebraic_prefactor(kind, a, &xf, prec);

    // term ratio: (1/2 + a + 2k)(3/2 + a + 2k) / ((k+1) · 2x²)
    let base = Float::with_val(prec, Rational::from(a + rat(1, 2)));
    let two_x2 = Float::with_val(prec, Rational::from(x * x)) * 2u32;
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    let mut last = Float::new(prec);
    for k in 0..m {
        sum += &term;
        last = term.clone();
        let f1 = Float::with_val(prec, &base + 2 * k);
        let f2 = Float::with_val(prec, &base + (2 * k + 1));
        term *= f1 * f2;
        term /= Float::with_val(prec, &two_x2 * (k + 1));
    }
    Ok(ExpansionValue {
        value: Float::with_val(prec, &pre * &sum),
        terms_used: m,
        last_term: abs(&(Float::with_val(prec, &pre * &last))),
        error_estimate: abs(&(Float::with_val(prec, &pre * &term))),
    })
}

/// The refined exponentially small expansion `E₁`/`E₂` with `terms` terms
/// in each sub-series:
///
/// ```text
/// E₁ = pre · { cos πϑ Σ (-1)^j (1/2-a)_{2j} / (j!(2x²)^j)
///              - (2 sin πϑ/√π) Σ (-1)^j 2^j B_j x^(-2j-1) }
/// E₂ = pre · { sin πϑ Σ (-1)^j (1/2-a)_{2j} / (j!(2x²)^j)
///              + (2 cos πϑ/√π) Σ (-1)^j 2^j B_j x^(-2j-1) }
/// ```
///
/// with `ϑ = a/2 - 1/4` and `B_j` evaluated at `γ_j = α - j`. The error
/// estimate is the first omitted term of each sub-series with its
/// trigonometric weight, under the common prefactor.
pub fn refined_exp_small(
    kind: Kind,
    a: &Rational,
    x: &Rational,
    terms: u32,
    trunc: &TruncationSpec,
    table: &GTable,
    ctx: &PrecisionContext,
) -> Result<ExpansionValue> {
    assert!(terms >= 1, "at least one term");
    let m = terms as usize;
    let prec = prec_for(x, ctx)?;
    let th = theta(a);

    let p = KummerParams::from_weber(kind, a, x)?;
    // one extra coefficient for the first omitted B-term
    let b = b_coefficients(&p, trunc, m + 1, table)?;

    let pre = exp_small_prefactor(kind, a, x, prec);
    let (trig_a, trig_b, b_sign) = match kind {
        Kind::Even => (cos_pi(&th, prec), sin_pi(&th, prec), -1i32),
        Kind::Odd => (sin_pi(&th, prec), cos_pi(&th, prec), 1i32),
    };
    let weight_b = two_over_sqrt_pi(prec);

    let xf = Float::with_val(prec, x);
    let two_x2 = Float::with_val(prec, Rational::from(x * x)) * 2u32;
    let base = Float::with_val(prec, Rational::from(rat(1, 2) - a));

    let mut a_term = Float::with_val(prec, 1); // (1/2-a)_{2j} / (j!(2x²)^j)
    let mut two_pow = Float::with_val(prec, 1); // 2^j
    let mut x_pow = xf.clone(); // x^(2j+1)
    let mut sum_a = Float::new(prec);
    let mut sum_b = Float::new(prec);
    let mut last_mag = Float::new(prec);
    let mut omitted_mag = Float::new(prec);

    for j in 0..=m {
        let b_term = Float::with_val(prec, &two_pow * &b[j]) / &x_pow;
        let weighted_mag = abs(&a_term) * abs(&trig_a) + abs(&b_term) * abs(&trig_b) * &weight_b;
        if j == m {
            omitted_mag = weighted_mag;
            break;
        }
        let sign = if j % 2 == 0 { 1i32 } else { -1i32 };
        sum_a += Float::with_val(prec, &a_term * sign);
        sum_b += Float::with_val(prec, &b_term * sign);
        if j == m - 1 {
            last_mag = weighted_mag;
        }
        // advance to index j+1
        let f1 = Float::with_val(prec, &base + 2 * j as u32);
        let f2 = Float::with_val(prec, &base + (2 * j as u32 + 1));
        a_term *= f1 * f2;
        a_term /= Float::with_val(prec, &two_x2 * (j as u32 + 1));
        two_pow *= 2u32;
        x_pow *= Float::with_val(prec, &xf * &xf);
    }

    let braces = Float::with_val(prec, &trig_a * &sum_a)
        + Float::with_val(prec, &trig_b * &sum_b) * &weight_b * b_sign;
    let pre_mag = abs(&pre);
    Ok(ExpansionValue {
        value: pre * braces,
        terms_used: terms,
        last_term: Float::with_val(prec, &pre_mag * &last_mag),
        error_estimate: pre_mag * omitted_mag,
    })
}

/// The refined expansion in its generic Kummer form: the exponentially
/// small right-hand side
///
/// ```text
/// x^ϑ̂ e^(-x) { cos πϑ̂ Σ (-1)^j A_j x^(-j)
///              - (2 sin πϑ̂ / √(2πx)) Σ (-1)^j B_j x^(-j) }
/// ```
///
/// with `ϑ̂ = a - b`, `A_j = (1-a)_j (b-a)_j / j!`. Multiplying by
/// `Γ(b)/Γ(a)` and mapping `(a, b, x) = (a/2+1/4, 1/2, x²/2)` reproduces
/// [`refined_exp_small`] for the even kind; the odd map carries the extra
/// factor `x` that turns `M` into `w₂`.
pub fn refined_kummer(
    p: &KummerParams,
    terms: u32,
    trunc: &TruncationSpec,
    table: &GTable,
    ctx: &PrecisionContext,
) -> Result<ExpansionValue> {
    assert!(terms >= 1, "at least one term");
    let m = terms as usize;
    // the cancellation scale on the Kummer side is e^-x itself
    let prec = ctx.working_prec(p.x.to_f64())?;
    let theta_hat = p.theta_hat();

    let a_coeffs = a_coefficients(p, m + 1);
    let b_coeffs = b_coefficients(p, trunc, m + 1, table)?;

    let xf = Float::with_val(prec, &p.x);
    let cos_t = cos_pi(&theta_hat, prec);
    let sin_t = sin_pi(&theta_hat, prec);
    let two_pi_x = Float::with_val(prec, rug::float::Constant::Pi) * 2u32 * &xf;
    let weight_b = Float::with_val(prec, 2) / two_pi_x.sqrt();

    let mut x_pow = Float::with_val(prec, 1); // x^j
    let mut sum_a = Float::new(prec);
    let mut sum_b = Float::new(prec);
    let mut last_mag = Float::new(prec);
    let mut omitted_mag = Float::new(prec);
    for j in 0..=m {
        let a_term = Float::with_val(prec, &a_coeffs[j]) / &x_pow;
        let b_term = Float::with_val(prec, &b_coeffs[j]) / &x_pow;
        let weighted_mag = abs(&a_term) * abs(&cos_t) + abs(&b_term) * abs(&sin_t) * &weight_b;
        if j == m {
            omitted_mag = weighted_mag;
            break;
        }
        let sign = if j % 2 == 0 { 1i32 } else { -1i32 };
        sum_a += Float::with_val(prec, &a_term * sign);
        sum_b += Float::with_val(prec, &b_term * sign);
        if j == m - 1 {
            last_mag = weighted_mag;
        }
        x_pow *= &xf;
    }

    let pre = pow_frac(&xf, &theta_hat) * (-xf.clone()).exp();
    let braces = Float::with_val(prec, &cos_t * &sum_a)
        - Float::with_val(prec, &sin_t * &sum_b) * &weight_b;
    let pre_mag = abs(&pre);
    Ok(ExpansionValue {
        value: pre * braces,
        terms_used: terms,
        last_term: Float::with_val(prec, &pre_mag * &last_mag),
        error_estimate: pre_mag * omitted_mag,
    })
}

/// Both components of the classical expansion, truncated after `k_terms`
/// terms each: the algebraic part (the same series as [`algebraic_sum`])
/// and the exponentially small part with the doubled prefactor,
///
/// ```text
/// even: pre · 2 cos πϑ · x^(a-1/2) e^(-x²/2) Σ (-1)^k (1/2-a)_{2k}/(k!(2x²)^k)
/// odd:  pre · 2 sin πϑ · x^(a-1/2) e^(-x²/2) Σ ...
/// ```
pub fn standard_expansion(
    kind: Kind,
    a: &Rational,
    x: &Rational,
    k_terms: u32,
    ctx: &PrecisionContext,
) -> Result<(ExpansionValue, ExpansionValue)> {
    assert!(k_terms >= 1, "at least one term");
    let prec = prec_for(x, ctx)?;
    let algebraic = algebraic_sum(kind, a, x, k_terms, ctx)?;

    let th = theta(a);
    let trig = match kind {
        Kind::Even => cos_pi(&th, prec),
        Kind::Odd => sin_pi(&th, prec),
    };
    let pre = exp_small_prefactor(kind, a, x, prec) * 2u32 * trig;

    let base = Float::with_val(prec, Rational::from(rat(1, 2) - a));
    let two_x2 = Float::with_val(prec, Rational::from(x * x)) * 2u32;
    let mut term = Float::with_val(prec, 1);
    let mut sum = Float::new(prec);
    let mut last = Float::new(prec);
    for k in 0..k_terms {
        let sign = if k % 2 == 0 { 1i32 } else { -1i32 };
        sum += Float::with_val(prec, &term * sign);
        last = term.clone();
        let f1 = Float::with_val(prec, &base + 2 * k);
        let f2 = Float::with_val(prec, &base + (2 * k + 1));
        term *= f1 * f2;
        term /= Float::with_val(prec, &two_x2 * (k + 1));
    }
    let exp_small = ExpansionValue {
        value: Float::with_val(prec, &pre * &sum),
        terms_used: k_terms,
        last_term: abs(&Float::with_val(prec, &pre * &last)),
        error_estimate: abs(&Float::with_val(prec, &pre * &term)),
    };
    Ok((algebraic, exp_small))
}

/// Runs the whole comparison at one point: oracle, optimally truncated
/// algebraic sum, exponentially small remainder `𝒲`, refined `E` with
/// `terms` terms, the standard exponentially small part with the same
/// number of terms, and the ratio standard/`𝒲` that exposes the factor-2
/// defect.
pub fn compare(
    kind: Kind,
    a: &Rational,
    x: &Rational,
    terms: u32,
    table: &GTable,
    ctx: &PrecisionContext,
) -> Result<ExpansionReport> {
    let trunc = optimal_truncation(a, x)?;
    let w_oracle = w_ref(kind, a, x, ctx)?;
    let algebraic = algebraic_sum(kind, a, x, trunc.m0(), ctx)?;
    let residual_w = Float::with_val(w_oracle.prec(), &w_oracle - &algebraic.value);
    let refined_e = refined_exp_small(kind, a, x, terms, &trunc, table, ctx)?;
    let (_, standard_exp_small) = standard_expansion(kind, a, x, terms, ctx)?;
    let ratio = Float::with_val(w_oracle.prec(), &standard_exp_small.value / &residual_w);
    Ok(ExpansionReport {
        w_oracle,
        algebraic,
        residual_w,
        refined_e,
        standard_exp_small,
        ratio_standard_over_w: ratio,
        trunc,
    })
}
