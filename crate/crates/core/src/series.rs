//! Truncated formal power series over an exact coefficient ring.
//!
//! A series tracks the window of powers it knows exactly: everything from
//! `lowest_power()` up to `order()` inclusive. Coefficients below the window
//! are zero by construction; coefficients above it are *unknown*, and asking
//! for one is a bug, not a zero. Arithmetic propagates the window honestly —
//! multiplying two series only claims the orders that are actually
//! determined by the inputs.
//!
//! `lowest_power` may be negative; the expansion that generates the `G`
//! coefficients runs through a simple pole in `w`.

use crate::gamma_poly::GammaPolynomial;
use crate::rational::Rational;

/// Coefficient ring: exact, commutative, with scaling by rationals.
pub trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    fn from_rational(q: &Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale(&self, q: &Rational) -> Self {
        Rational::from(self * q)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Coeff for GammaPolynomial {
    fn zero() -> Self {
        GammaPolynomial::zero()
    }
    fn one() -> Self {
        GammaPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg(&self) -> Self {
        self.neg()
    }
    fn scale(&self, q: &Rational) -> Self {
        self.scale(q)
    }
    fn from_rational(q: &Rational) -> Self {
        GammaPolynomial::constant(q.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<C> {
    lowest: i64,
    /// `coeffs[i]` multiplies `w^(lowest + i)`; never empty.
    coeffs: Vec<C>,
}

impl<C: Coeff> FormalSeries<C> {
    /// Builds a series from the coefficients of `w^lowest ..= w^(lowest+n-1)`.
    pub fn from_coeffs(lowest: i64, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series must track at least one power");
        FormalSeries { lowest, coeffs }
    }

    /// The zero series known through `order`.
    pub fn zero(order: i64) -> Self {
        assert!(order >= 0);
        FormalSeries {
            lowest: 0,
            coeffs: vec![C::zero(); order as usize + 1],
        }
    }

    /// `coeff * w^power`, known through `order`.
    pub fn monomial(coeff: C, power: i64, order: i64) -> Self {
        assert!(power <= order);
        let mut coeffs = vec![C::zero(); (order - power) as usize + 1];
        coeffs[0] = coeff;
        FormalSeries { lowest: power, coeffs }
    }

    pub fn lowest_power(&self) -> i64 {
        self.lowest
    }

    /// Highest power whose coefficient is known exactly.
    pub fn order(&self) -> i64 {
        self.lowest + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `w^power`. Zero below the window; asking above the
    /// window is a contract violation.
    pub fn coeff(&self, power: i64) -> C {
        assert!(
            power <= self.order(),
            "coefficient of w^{power} requested, series only known through w^{}",
            self.order()
        );
        if power < self.lowest {
            C::zero()
        } else {
            self.coeffs[(power - self.lowest) as usize].clone()
        }
    }

    /// Drops leading coefficients that are exactly zero (raises `lowest`).
    /// Only known-zero information is discarded, so the series is unchanged
    /// as a mathematical object.
    pub fn normalized(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.lowest += 1;
        }
        self
    }

    /// Restricts the known window to `new_order`.
    pub fn truncate(&self, new_order: i64) -> Self {
        assert!(new_order >= self.lowest, "truncation below the window");
        assert!(new_order <= self.order(), "truncate cannot extend knowledge");
        let keep = (new_order - self.lowest) as usize + 1;
        FormalSeries {
            lowest: self.lowest,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Multiplies by `w^delta`.
    pub fn shift(&self, delta: i64) -> Self {
        FormalSeries {
            lowest: self.lowest + delta,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let lowest = self.lowest.min(rhs.lowest);
        let order = self.order().min(rhs.order());
        assert!(order >= lowest, "windows do not overlap");
        let coeffs = (lowest..=order)
            .map(|k| {
                let a = if k <= self.order() { self.coeff(k) } else { C::zero() };
                let b = if k <= rhs.order() { rhs.coeff(k) } else { C::zero() };
                a.add(&b)
            })
            .collect();
        FormalSeries { lowest, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        FormalSeries {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(C::neg).collect(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FormalSeries {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        FormalSeries {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Cauchy product. The result is only claimed through the order that
    /// both factors actually determine:
    /// `min(lhs.order + rhs.lowest, rhs.order + lhs.lowest)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let lowest = self.lowest + rhs.lowest;
        let order = (self.order() + rhs.lowest).min(rhs.order() + self.lowest);
        assert!(order >= lowest, "product window is empty");
        let n = (order - lowest) as usize + 1;
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        FormalSeries { lowest, coeffs: out }
    }

    /// Termwise derivative d/dw. Knowledge shrinks by one order.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rational::from(self.lowest + i as i64)))
            .collect();
        FormalSeries {
            lowest: self.lowest - 1,
            coeffs,
        }
        .normalized()
    }

    /// Termwise antiderivative with zero constant term. Requires that there
    /// is no `w^-1` term to integrate.
    pub fn integrate(&self) -> Self {
        if self.lowest <= -1 && self.order() >= -1 {
            assert!(self.coeff(-1).is_zero(), "cannot integrate a w^-1 term");
        }
        let coeffs: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.lowest + i as i64;
                if k == -1 {
                    C::zero()
                } else {
                    c.scale(&Rational::from((1, k + 1)))
                }
            })
            .collect();
        FormalSeries {
            lowest: self.lowest + 1,
            coeffs,
        }
    }

    /// Reciprocal of a series with constant term one.
    pub fn reciprocal(&self) -> Self {
        assert!(self.lowest == 0, "reciprocal expects a unit constant term");
        assert!(self.coeffs[0] == C::one(), "reciprocal expects constant term 1");
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        out[0] = C::one();
        for k in 1..n {
            let mut acc = C::zero();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = acc.neg();
        }
        FormalSeries { lowest: 0, coeffs: out }
    }

    /// log of a series with constant term one, via `(f'/f)` integrated.
    pub fn log(&self) -> Self {
        assert!(self.lowest == 0 && self.coeffs[0] == C::one(), "log expects constant term 1");
        self.derivative().mul(&self.reciprocal()).integrate()
    }

    /// exp of a series with valuation >= 1, by the recurrence
    /// `n e_n = sum_{k=1..n} k v_k e_(n-k)`.
    pub fn exp(&self) -> Self {
        let order = self.order();
        assert!(order >= 0);
        // All powers <= 0 must be zero.
        assert!(self.lowest >= 0, "exp expects valuation >= 1");
        assert!(self.lowest >= 1 || self.coeffs[0].is_zero(), "exp expects zero constant term");
        let n = order as usize + 1;
        let v: Vec<C> = (0..n).map(|k| self.coeff(k as i64)).collect();
        let mut e = vec![C::zero(); n];
        e[0] = C::one();
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                let kv = v[k].scale(&Rational::from(k as i64));
                acc = acc.add(&kv.mul(&e[m - k]));
            }
            e[m] = acc.scale(&Rational::from((1, m as i64)));
        }
        FormalSeries { lowest: 0, coeffs: e }
    }

    /// Lifts the coefficients into another ring.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FormalSeries<D> {
        FormalSeries {
            lowest: self.lowest,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (self.lowest + i as i64, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn geom(order: i64) -> FormalSeries<Rational> {
        // 1/(1-w) = 1 + w + w^2 + ...
        FormalSeries::from_coeffs(0, vec![Rational::from(1); order as usize + 1])
    }

    #[test]
    fn mul_window_is_honest() {
        // (1 + w) known to order 1, times (1 + w + w^2 + w^3) known to order 3:
        // only orders <= 1 + 0 are determined by the first factor.
        let a = FormalSeries::from_coeffs(0, vec![rat(1, 1), rat(1, 1)]);
        let b = geom(3);
        let p = a.mul(&b);
        assert_eq!(p.order(), 1);
        assert_eq!(p.coeff(1), rat(2, 1));
    }

    #[test]
    fn reciprocal_of_geometric() {
        let r = geom(5).reciprocal();
        assert_eq!(r.coeff(0), rat(1, 1));
        assert_eq!(r.coeff(1), rat(-1, 1));
        for k in 2..=5 {
            assert_eq!(r.coeff(k), rat(0, 1));
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        // f = 1 + w + w^2/3 known to order 6 (padded with zeros)
        let mut c = vec![rat(1, 1), rat(1, 1), rat(1, 3)];
        c.resize(7, Rational::new());
        let f = FormalSeries::from_coeffs(0, c);
        let back = f.log().exp();
        for k in 0..=6 {
            assert_eq!(back.coeff(k), f.coeff(k), "mismatch at w^{k}");
        }
    }

    #[test]
    fn derivative_integrate_roundtrip() {
        let f = geom(6);
        let g = f.derivative().integrate();
        for k in 1..=5 {
            assert_eq!(g.coeff(k), f.coeff(k));
        }
        assert_eq!(g.coeff(0), Rational::new()); // constant lost by design
    }

    #[test]
    fn shift_makes_poles() {
        let f = geom(3).shift(-1);
        assert_eq!(f.lowest_power(), -1);
        assert_eq!(f.coeff(-1), rat(1, 1));
        assert_eq!(f.order(), 2);
    }

    #[test]
    #[should_panic(expected = "only known through")]
    fn asking_beyond_window_panics() {
        let f = geom(2);
        let _ = f.coeff(3);
    }
}
