use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePolynomial {
    coeffs: Vec<BigRational>,
}

impl UnivariatePolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= dc * &c;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Splits off `(t - 1)^k` with `k` maximal, returning `k` and the value of
    /// the cofactor at `t = 1`. Panics on the zero polynomial.
    pub fn order_at_one(&self) -> (usize, BigRational) {
        assert!(!self.is_zero(), "order at t = 1 of the zero polynomial");
        let mut cur = self.coeffs.clone();
        let mut order = 0;
        loop {
            // Synthetic division by (t - 1); the final carry is the value at 1.
            let mut carry = BigRational::zero();
            let mut quot = vec![BigRational::zero(); cur.len().saturating_sub(1)];
            for i in (0..cur.len()).rev() {
                carry = &carry + &cur[i];
                if i > 0 {
                    quot[i - 1] = carry.clone();
                }
            }
            if !carry.is_zero() {
                return (order, carry);
            }
            order += 1;
            cur = quot;
        }
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        UnivariatePolynomial::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePolynomial::from_coeffs(out)
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{abs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Quotient of two univariate polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateRational {
    numerator: UnivariatePolynomial,
    denominator: UnivariatePolynomial,
}

impl UnivariateRational {
    pub fn new(numerator: UnivariatePolynomial, denominator: UnivariatePolynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &UnivariatePolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &UnivariatePolynomial {
        &self.denominator
    }

    /// Cancels the gcd and makes the denominator monic.
    pub fn reduce(&self) -> Self {
        if self.numerator.is_zero() {
            return Self {
                numerator: UnivariatePolynomial::zero(),
                denominator: UnivariatePolynomial::one(),
            };
        }
        let g = self.numerator.gcd(&self.denominator);
        let (num, _) = self.numerator.div_rem(&g);
        let (den, _) = self.denominator.div_rem(&g);
        let lead = den.leading().expect("nonzero denominator").recip();
        Self {
            numerator: num.scale(&lead),
            denominator: den.scale(&lead),
        }
    }

    /// `None` when the denominator vanishes at `t`.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.denominator.eval(t);
        (!d.is_zero()).then(|| self.numerator.eval(t) / d)
    }

    /// Cross-multiplication equality.
    pub fn equals(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl fmt::Display for UnivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gcd_and_reduce() {
        // (t^4 - 1)/(t^2 - 1) = t^2 + 1
        let num = UnivariatePolynomial::from_ints(&[-1, 0, 0, 0, 1]);
        let den = UnivariatePolynomial::from_ints(&[-1, 0, 1]);
        let r = UnivariateRational::new(num, den).unwrap().reduce();
        assert_eq!(r.numerator(), &UnivariatePolynomial::from_ints(&[1, 0, 1]));
        assert_eq!(r.denominator(), &UnivariatePolynomial::one());
    }

    #[test]
    fn reduced_denominator_is_monic() {
        let num = UnivariatePolynomial::from_ints(&[2, 2]);
        let den = UnivariatePolynomial::from_ints(&[-3, 0, 3]);
        let r = UnivariateRational::new(num, den).unwrap().reduce();
        assert_eq!(r.denominator(), &UnivariatePolynomial::from_ints(&[-1, 1]));
        assert_eq!(r.numerator(), &UnivariatePolynomial::from_coeffs(vec![BigRational::new(2.into(), 3.into())]));
    }

    #[test]
    fn order_at_one_counts_multiplicity() {
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        let p = UnivariatePolynomial::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.order_at_one(), (2, int(3)));
        assert_eq!(UnivariatePolynomial::from_ints(&[5]).order_at_one(), (0, int(5)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            UnivariateRational::new(UnivariatePolynomial::one(), UnivariatePolynomial::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = UnivariatePolynomial::from_ints(&[3, 0, -2, 5, 1]);
        let b = UnivariatePolynomial::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }
}
