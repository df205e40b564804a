//! Polynomials in the shift symbol γ with exact rational coefficients.
//!
//! The expansion coefficients `G_k` produced by [`crate::exact_series`] are
//! polynomials in γ, so one generation pass serves every evaluation point
//! `γ_j = α - j`. Coefficients are kept canonical: no trailing zero, so the
//! degree is well defined and equality is plain structural equality.

use std::fmt;

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GammaPolynomial {
    /// `coeffs[i]` multiplies γ^i; the last entry is nonzero.
    coeffs: Vec<Rational>,
}

impl GammaPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        GammaPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        GammaPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GammaPolynomial::constant(Rational::from(1))
    }

    pub fn constant(c: Rational) -> Self {
        GammaPolynomial::new(vec![c])
    }

    /// The monomial γ.
    pub fn gamma() -> Self {
        GammaPolynomial::new(vec![Rational::new(), Rational::from(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= at;
            acc += c;
        }
        acc
    }

    /// Evaluation at a float point, at the point's working precision.
    pub fn eval_float(&self, at: &rug::Float) -> rug::Float {
        let prec = at.prec();
        let mut acc = rug::Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc *= at;
            acc += rug::Float::with_val(prec, c);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(r) = rhs.coeffs.get(i) {
                c += r;
            }
            out.push(c);
        }
        GammaPolynomial::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        GammaPolynomial {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return GammaPolynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        GammaPolynomial::new(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return GammaPolynomial::zero();
        }
        GammaPolynomial {
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * q)).collect(),
        }
    }
}

impl fmt::Display for GammaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let mag = Rational::from(c.clone().abs());
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "g")?;
                    } else {
                        write!(f, "g^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
