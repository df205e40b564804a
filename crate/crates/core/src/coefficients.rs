//! The numeric coefficient engine: Pochhammer symbols, the `A_j`/`B_j`
//! sequences of the exponentially small expansion, and the optimal
//! truncation index of the dominant algebraic expansion.
//!
//! Everything here has two routes: exact rationals (the default — the
//! regression tables should be cancellation-free) and MPFR floats at a
//! caller-chosen precision, which doubles as an independent cross-check of
//! the rational route.

use std::fmt;

use rug::Float;

use crate::error::{Error, Result};
use crate::exact_series::GTable;
use crate::rational::{nearest_int_half_up, rat, Rational};

/// Which of the two solutions of the differential equation is meant:
/// `Even` satisfies `w(0) = 1, w'(0) = 0`; `Odd` satisfies `w(0) = 0,
/// w'(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Even,
    Odd,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Even => write!(f, "even"),
            Kind::Odd => write!(f, "odd"),
        }
    }
}

/// Parameters of the differential equation side: `a`, the evaluation point
/// `x > 0`, and the number of exponential-series terms `M >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeberParams {
    pub a: Rational,
    pub x: Rational,
    pub terms: u32,
}

impl WeberParams {
    pub fn new(a: Rational, x: Rational, terms: u32) -> Result<Self> {
        if x <= 0 {
            return Err(Error::invalid(format!("x must be positive, got {x}")));
        }
        if terms == 0 {
            return Err(Error::invalid("M must be at least 1"));
        }
        Ok(WeberParams { a, x, terms })
    }

    /// `ϑ = a/2 - 1/4`, the exponent entering the trigonometric prefactors.
    pub fn theta(&self) -> Rational {
        theta(&self.a)
    }
}

/// Parameters of the Kummer-function side: `M(a, b, -x)` with `x > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct KummerParams {
    pub a: Rational,
    pub b: Rational,
    pub x: Rational,
}

impl KummerParams {
    pub fn new(a: Rational, b: Rational, x: Rational) -> Result<Self> {
        if x <= 0 {
            return Err(Error::invalid(format!("x must be positive, got {x}")));
        }
        Ok(KummerParams { a, b, x })
    }

    /// The parameter map from the differential-equation side:
    /// even solutions go to `(a/2 + 1/4, 1/2, x²/2)`, odd ones to
    /// `(a/2 + 3/4, 3/2, x²/2)`.
    pub fn from_weber(kind: Kind, a: &Rational, x: &Rational) -> Result<Self> {
        let half_a = Rational::from(a / Rational::from(2));
        let (ak, bk) = match kind {
            Kind::Even => (half_a + rat(1, 4), rat(1, 2)),
            Kind::Odd => (half_a + rat(3, 4), rat(3, 2)),
        };
        let xk = Rational::from(x * x) / Rational::from(2);
        KummerParams::new(ak, bk, xk)
    }

    /// `ϑ̂ = a - b`.
    pub fn theta_hat(&self) -> Rational {
        Rational::from(&self.a - &self.b)
    }
}

/// Optimal truncation data for the algebraic expansion: the index `m₀` and
/// the offset `α = m₀ - (x²/2 - a)`, with `|α| <= 1/2` by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationSpec {
    m0: u32,
    alpha: Rational,
}

impl TruncationSpec {
    /// Builds a spec directly. `α` is accepted anywhere in the open interval
    /// `(-1, 1)` — the expansion tolerates any such offset, even though
    /// [`optimal_truncation`] only ever produces `|α| <= 1/2`.
    pub fn new(m0: u32, alpha: Rational) -> Result<Self> {
        if m0 == 0 {
            return Err(Error::invalid("truncation index m0 must be positive"));
        }
        if Rational::from(alpha.clone().abs()) >= 1 {
            return Err(Error::invalid(format!("|alpha| must be < 1, got {alpha}")));
        }
        Ok(TruncationSpec { m0, alpha })
    }

    pub fn m0(&self) -> u32 {
        self.m0
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// `γ_j = α - j`, the point at which `G_2k` polynomials are evaluated.
    /// The definition is extended to `j = 0` by `γ₀ = α`.
    pub fn gamma(&self, j: u32) -> Rational {
        Rational::from(&self.alpha - Rational::from(j))
    }
}

/// Rising factorial `(base)_k = base (base+1) ... (base+k-1)`; empty product
/// for `k = 0`.
pub fn pochhammer(base: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut factor = base.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += 1;
    }
    acc
}

/// Rising factorial in float arithmetic, at the precision of `base`.
pub fn pochhammer_float(base: &Float, k: u32) -> Float {
    let prec = base.prec();
    let mut acc = Float::with_val(prec, 1);
    let mut factor = base.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += 1;
    }
    acc
}

/// `ϑ = a/2 - 1/4`.
pub fn theta(a: &Rational) -> Rational {
    Rational::from(a / Rational::from(2)) - rat(1, 4)
}

/// Picks the optimal truncation index of the algebraic expansion:
/// `m₀` is the nearest integer to `x²/2 - a` (ties toward the larger
/// integer, so `α = +1/2` rather than `-1/2`), and `α = m₀ - (x²/2 - a)`.
///
/// Requires `x²/2 - a >= 1`; below that the expansion has no least term to
/// truncate at.
pub fn optimal_truncation(a: &Rational, x: &Rational) -> Result<TruncationSpec> {
    let q = Rational::from(x * x) / Rational::from(2) - a.clone();
    if q < 1 {
        return Err(Error::XTooSmall(q.to_string()));
    }
    let m0_int = nearest_int_half_up(&q);
    let alpha = Rational::from(&m0_int - &q);
    let m0 = m0_int
        .to_u32()
        .ok_or_else(|| Error::invalid(format!("truncation index {m0_int} out of range")))?;
    debug_assert!(Rational::from(alpha.clone().abs()) <= rat(1, 2));
    TruncationSpec::new(m0, alpha)
}

/// The coefficients `A_j = (1-a)_j (b-a)_j / j!` for `j = 0 .. count-1`.
pub fn a_coefficients(p: &KummerParams, count: usize) -> Vec<Rational> {
    let one_minus_a = Rational::from(1 - &p.a);
    let b_minus_a = Rational::from(&p.b - &p.a);
    let mut out = Vec::with_capacity(count);
    let mut acc = Rational::from(1);
    out.push(acc.clone());
    for j in 1..count {
        let i = Rational::from((j - 1) as i64);
        acc *= Rational::from(&one_minus_a + &i);
        acc *= Rational::from(&b_minus_a + &i);
        acc /= Rational::from(j as i64);
        out.push(acc.clone());
    }
    out
}

/// The coefficients
/// `B_j = Σ_{k=0..j} (-2)^k (1/2)_k A_{j-k} G_{2k}(γ_{j-k})`
/// with `γ_i = α - i`, computed exactly.
///
/// Needs `G` polynomials up to index `2(count-1)`; a too-small table
/// surfaces as [`Error::NotGenerated`].
pub fn b_coefficients(
    p: &KummerParams,
    trunc: &TruncationSpec,
    count: usize,
    table: &GTable,
) -> Result<Vec<Rational>> {
    let a_coeffs = a_coefficients(p, count);
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let mut sum = Rational::new();
        // (-2)^k (1/2)_k accumulates as (-1)^k (2k-1)!!
        let mut front = Rational::from(1);
        for k in 0..=j {
            if k > 0 {
                front *= Rational::from(-(2 * k as i64 - 1));
            }
            let gamma = trunc.gamma((j - k) as u32);
            let g = table.g(2 * k)?.eval(&gamma);
            sum += Rational::from(&front * &a_coeffs[j - k]) * g;
        }
        out.push(sum);
    }
    Ok(out)
}

/// Float-arithmetic route for `A_j`, at precision `prec`.
pub fn a_coefficients_float(p: &KummerParams, count: usize, prec: u32) -> Vec<Float> {
    let one_minus_a = Float::with_val(prec, Rational::from(1 - &p.a));
    let b_minus_a = Float::with_val(prec, Rational::from(&p.b - &p.a));
    let mut out = Vec::with_capacity(count);
    let mut acc = Float::with_val(prec, 1);
    out.push(acc.clone());
    for j in 1..count {
        let i = (j - 1) as i64;
        acc *= Float::with_val(prec, &one_minus_a + i);
        acc *= Float::with_val(prec, &b_minus_a + i);
        acc /= j as u64;
        out.push(acc.clone());
    }
    out
}

/// Float-arithmetic route for `B_j`, at precision `prec`. Agrees with the
/// exact route to working precision; exists for irrational inputs and as a
/// cross-check.
pub fn b_coefficients_float(
    p: &KummerParams,
    trunc: &TruncationSpec,
    count: usize,
    table: &GTable,
    prec: u32,
) -> Result<Vec<Float>> {
    let a_coeffs = a_coefficients_float(p, count, prec);
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let mut sum = Float::new(prec);
        let mut front = Float::with_val(prec, 1);
        for k in 0..=j {
            if k > 0 {
                front *= -(2 * k as i64 - 1);
            }
            let gamma = Float::with_val(prec, trunc.gamma((j - k) as u32));
            let g = table.g(2 * k)?.eval_float(&gamma);
            sum += Float::with_val(prec, &front * &a_coeffs[j - k]) * g;
        }
        out.push(sum);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::GTable;

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&rat(7, 3), 0), rat(1, 1)); // empty product
        assert_eq!(pochhammer(&rat(3, 1), 4), rat(360, 1)); // 3*4*5*6
        // (-2n)_k = 0 for k >= 2n+1
        for n in 0..4u32 {
            let base = rat(-2 * n as i64, 1);
            assert_eq!(pochhammer(&base, 2 * n + 1), Rational::new());
            assert_eq!(pochhammer(&base, 2 * n + 3), Rational::new());
        }
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(&rat(1, 2)), Rational::new());
        assert_eq!(theta(&rat(1, 4)), rat(-1, 8));
        // a = 2n + 1/2 gives integer theta
        for n in 0..5i64 {
            assert_eq!(theta(&rat(4 * n + 1, 2)), rat(n, 1));
        }
    }

    #[test]
    fn truncation_examples() {
        let t = optimal_truncation(&rat(1, 4), &rat(6, 1)).unwrap();
        assert_eq!((t.m0(), t.alpha().clone()), (18, rat(1, 4)));

        let t = optimal_truncation(&rat(1, 1), &rat(6, 1)).unwrap();
        assert_eq!((t.m0(), t.alpha().clone()), (17, Rational::new()));

        // x²/2 - a = 16.75 rounds to 17, leaving alpha = +1/4
        let t = optimal_truncation(&rat(5, 4), &rat(6, 1)).unwrap();
        assert_eq!((t.m0(), t.alpha().clone()), (17, rat(1, 4)));
        // definition-based consistency: m0 + a - x²/2 == alpha
        let back = rat(17, 1) + rat(5, 4) - rat(18, 1);
        assert_eq!(&back, t.alpha());

        // exact tie 3.5 resolves toward the larger index
        let t = optimal_truncation(&rat(1, 1), &rat(3, 1)).unwrap();
        assert_eq!((t.m0(), t.alpha().clone()), (4, rat(1, 2)));
    }

    #[test]
    fn truncation_rejects_small_x() {
        assert!(matches!(
            optimal_truncation(&rat(1, 1), &rat(1, 1)),
            Err(Error::XTooSmall(_))
        ));
    }

    #[test]
    fn a_coefficients_start_at_one() {
        for (a, b) in [(rat(3, 8), rat(1, 2)), (rat(-7, 5), rat(3, 2))] {
            let p = KummerParams::new(a, b, rat(18, 1)).unwrap();
            assert_eq!(a_coefficients(&p, 3)[0], rat(1, 1));
        }
    }

    #[test]
    fn a_coefficients_weber_quarter() {
        // Weber a = 1/4 maps to (a, b) = (3/8, 1/2): A_1 = (5/8)(1/8) = 5/64
        let p = KummerParams::from_weber(Kind::Even, &rat(1, 4), &rat(6, 1)).unwrap();
        let a = a_coefficients(&p, 3);
        assert_eq!(a[1], rat(5, 64));
        assert_eq!(a[2], rat(585, 8192));
    }

    #[test]
    fn a_coefficients_weber_five_quarters() {
        let p = KummerParams::from_weber(Kind::Even, &rat(5, 4), &rat(6, 1)).unwrap();
        let a = a_coefficients(&p, 2);
        assert_eq!(a[1], rat(-3, 64));
    }

    #[test]
    fn b0_is_two_thirds_minus_alpha() {
        let table = GTable::generate(2);
        for (a, alpha) in [
            (rat(1, 4), rat(1, 4)),
            (rat(5, 4), Rational::new()),
            (rat(-2, 3), rat(-2, 5)),
        ] {
            let p = KummerParams::from_weber(Kind::Even, &a, &rat(6, 1)).unwrap();
            let trunc = TruncationSpec::new(7, alpha.clone()).unwrap();
            let b = b_coefficients(&p, &trunc, 1, &table).unwrap();
            assert_eq!(b[0], rat(2, 3) - alpha);
        }
    }

    #[test]
    fn b1_hand_check() {
        // Weber a = 5/4, alpha = 0:
        // B₁ = A₁ (2/3 - γ₁) - Ĝ₂(γ₀)/36 = (-3/64)(5/3) - 23/270
        let table = GTable::generate(2);
        let p = KummerParams::from_weber(Kind::Even, &rat(5, 4), &rat(6, 1)).unwrap();
        let trunc = TruncationSpec::new(17, Rational::new()).unwrap();
        let b = b_coefficients(&p, &trunc, 2, &table).unwrap();
        assert_eq!(b[1], rat(-5, 64) - rat(23, 270));
    }

    #[test]
    fn b_requires_generated_table() {
        let table = GTable::generate(4);
        let p = KummerParams::from_weber(Kind::Even, &rat(1, 4), &rat(6, 1)).unwrap();
        let trunc = TruncationSpec::new(18, rat(1, 4)).unwrap();
        assert!(matches!(
            b_coefficients(&p, &trunc, 4, &table),
            Err(Error::NotGenerated { requested: 6, .. })
        ));
    }

    #[test]
    fn float_route_matches_exact_route() {
        let table = GTable::generate(12);
        let p = KummerParams::from_weber(Kind::Odd, &rat(1, 4), &rat(6, 1)).unwrap();
        let trunc = TruncationSpec::new(18, rat(1, 4)).unwrap();
        let exact = b_coefficients(&p, &trunc, 7, &table).unwrap();
        let float = b_coefficients_float(&p, &trunc, 7, &table, 192).unwrap();
        for (e, f) in exact.iter().zip(&float) {
            let diff = Float::with_val(192, e) - f;
            assert!(diff.abs() < Float::with_val(64, 1e-45), "exact {e} vs float route");
        }
    }

    #[test]
    fn kind_display() {
        assert_eq!(Kind::Even.to_string(), "even");
        assert_eq!(Kind::Odd.to_string(), "odd");
    }
}
