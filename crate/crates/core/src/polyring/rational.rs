use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{pow_rat, Poly};
use super::univariate::{UnivariatePolynomial, UnivariateRational};
use crate::error::{Error, Result};

/// Numerator over an explicit multiset of denominator factors.
///
/// Every factor has constant term exactly 1, so `uv - 1` is stored as
/// `1 - uv` with the sign carried by the numerator. Nothing is ever cancelled
/// automatically; equality is decided by cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    numerator: Poly,
    factors: BTreeMap<Poly, u32>,
}

impl FactoredRational {
    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            numerator: p,
            factors: BTreeMap::new(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(Poly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `numerator / Π factor^mult`, normalizing each factor.
    pub fn new(numerator: Poly, denominator: &[(Poly, u32)]) -> Result<Self> {
        let mut out = Self::from_poly(numerator);
        for (f, m) in denominator {
            out = out.divide_by_poly(f, *m)?;
        }
        Ok(out)
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    /// Denominator factors in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.factors.iter().map(|(f, &m)| (f, m))
    }

    pub fn denominator(&self) -> Poly {
        product(self.factors.iter().map(|(f, &m)| (f, m)))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Divides by `p^mult`, moving `p` into the factor list.
    pub fn divide_by_poly(mut self, p: &Poly, mult: u32) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = p.constant_term();
        if c.is_zero() {
            return Err(Error::NonExpandableDivisor);
        }
        if mult == 0 {
            return Ok(self);
        }
        let inv = c.recip();
        self.numerator = self.numerator.scale(&pow_rat(&inv, mult));
        let normalized = p.scale(&inv);
        if !normalized.is_one() && !self.numerator.is_zero() {
            *self.factors.entry(normalized).or_insert(0) += mult;
        }
        Ok(self.canonical())
    }

    fn canonical(mut self) -> Self {
        if self.numerator.is_zero() {
            self.factors.clear();
        }
        self
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            numerator: self.numerator.scale(c),
            factors: self.factors.clone(),
        }
        .canonical()
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self {
            numerator: &self.numerator * p,
            factors: self.factors.clone(),
        }
        .canonical()
    }

    pub fn checked_add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common = self.factors.clone();
        for (f, &m) in &other.factors {
            let e = common.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |x: &Self| {
            let missing = common.iter().filter_map(|(f, &m)| {
                let have = x.factors.get(f).copied().unwrap_or(0);
                (m > have).then_some((f, m - have))
            });
            &x.numerator * &product(missing)
        };
        Self {
            numerator: lift(self) + lift(other),
            factors: common,
        }
        .canonical()
    }

    pub fn checked_mul(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        for (f, &m) in &other.factors {
            *factors.entry(f.clone()).or_insert(0) += m;
        }
        Self {
            numerator: &self.numerator * &other.numerator,
            factors,
        }
        .canonical()
    }

    /// `self / other`; the divisor's numerator must have a nonzero constant
    /// term so that it can join the denominator factors.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let flipped = Self::from_poly(other.denominator()).divide_by_poly(&other.numerator, 1)?;
        Ok(self.checked_mul(&flipped))
    }

    /// Cross-multiplication equality after dropping the shared factors.
    pub fn rat_eq(&self, other: &Self) -> bool {
        let only = |x: &Self, y: &Self| {
            x.factors.iter().filter_map(|(f, &m)| {
                let shared = y.factors.get(f).copied().unwrap_or(0).min(m);
                (m > shared).then_some((f.clone(), m - shared))
            }).collect::<Vec<_>>()
        };
        let den_a = only(self, other);
        let den_b = only(other, self);
        let lhs = &self.numerator * &product(den_b.iter().map(|(f, m)| (f, *m)));
        let rhs = &other.numerator * &product(den_a.iter().map(|(f, m)| (f, *m)));
        lhs == rhs
    }

    /// Substitutes `u = v = t`.
    pub fn diagonal(&self) -> UnivariateRational {
        let den = self
            .factors
            .iter()
            .fold(UnivariatePolynomial::one(), |acc, (f, &m)| &acc * &f.diagonal().pow(m));
        UnivariateRational::new(self.numerator.diagonal(), den)
            .expect("denominator factors have constant term 1")
    }

    /// Value of the reduced diagonal at `t = 1`.
    pub fn limit_at_one(&self) -> Result<BigRational> {
        let num = self.numerator.diagonal();
        if num.is_zero() {
            return Ok(BigRational::zero());
        }
        let (num_order, num_value) = num.order_at_one();
        let mut den_order = 0usize;
        let mut den_value = BigRational::one();
        for (f, &m) in &self.factors {
            let (o, val) = f.diagonal().order_at_one();
            den_order += o * m as usize;
            den_value *= pow_rat(&val, m);
        }
        match num_order.cmp(&den_order) {
            std::cmp::Ordering::Greater => Ok(BigRational::zero()),
            std::cmp::Ordering::Equal => Ok(num_value / den_value),
            std::cmp::Ordering::Less => Err(Error::PoleAtOne {
                order: den_order - num_order,
            }),
        }
    }

    /// The exact polynomial quotient, if the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<Poly> {
        let mut current = self.numerator.clone();
        for (f, &m) in &self.factors {
            for _ in 0..m {
                current = current.div_exact(f)?;
            }
        }
        Some(current)
    }

    /// Half the degree difference on the diagonal; the complex dimension when
    /// `self` is an E-polynomial.
    pub fn uv_degree(&self) -> Result<i64> {
        let num = self.numerator.diagonal();
        let Some(top) = num.degree() else {
            return Err(Error::ZeroInput);
        };
        let den: usize = self
            .factors
            .iter()
            .map(|(f, &m)| f.diagonal().degree().unwrap_or(0) * m as usize)
            .sum();
        let diff = top as i64 - den as i64;
        if diff % 2 != 0 {
            return Err(Error::OddDegree(diff));
        }
        Ok(diff / 2)
    }

    pub fn swap_uv(&self) -> Self {
        let mut factors = BTreeMap::new();
        for (f, &m) in &self.factors {
            *factors.entry(f.swap_uv()).or_insert(0) += m;
        }
        Self {
            numerator: self.numerator.swap_uv(),
            factors,
        }
    }

    /// Invariance under `u <-> v`, decided as a rational function.
    pub fn is_symmetric(&self) -> bool {
        if self.numerator.is_symmetric() && self.factors.keys().all(Poly::is_symmetric) {
            return true;
        }
        self.rat_eq(&self.swap_uv())
    }

    /// `None` when the denominator vanishes at the point.
    pub fn eval(&self, u: &BigRational, v: &BigRational) -> Option<BigRational> {
        let mut den = BigRational::one();
        for (f, &m) in &self.factors {
            den *= pow_rat(&f.eval(u, v), m);
        }
        (!den.is_zero()).then(|| self.numerator.eval(u, v) / den)
    }
}

fn product<'a, I>(factors: I) -> Poly
where
    I: IntoIterator<Item = (&'a Poly, u32)>,
{
    factors
        .into_iter()
        .fold(Poly::one(), |acc, (f, m)| acc * f.pow(m))
}

impl From<Poly> for FactoredRational {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Neg for &FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        FactoredRational {
            numerator: -&self.numerator,
            factors: self.factors.clone(),
        }
    }
}

impl Neg for FactoredRational {
    type Output = FactoredRational;
    fn neg(self) -> FactoredRational {
        -&self
    }
}

macro_rules! forward_rat_binop {
    ($tr:ident, $method:ident, $inner:expr) => {
        impl $tr<&FactoredRational> for &FactoredRational {
            type Output = FactoredRational;
            fn $method(self, rhs: &FactoredRational) -> FactoredRational {
                let f: fn(&FactoredRational, &FactoredRational) -> FactoredRational = $inner;
                f(self, rhs)
            }
        }
        impl $tr<FactoredRational> for FactoredRational {
            type Output = FactoredRational;
            fn $method(self, rhs: FactoredRational) -> FactoredRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FactoredRational> for FactoredRational {
            type Output = FactoredRational;
            fn $method(self, rhs: &FactoredRational) -> FactoredRational {
                (&self).$method(rhs)
            }
        }
        impl $tr<FactoredRational> for &FactoredRational {
            type Output = FactoredRational;
            fn $method(self, rhs: FactoredRational) -> FactoredRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_rat_binop!(Add, add, |a, b| a.checked_add(b));
forward_rat_binop!(Sub, sub, |a, b| a.checked_add(&-b));
forward_rat_binop!(Mul, mul, |a, b| a.checked_mul(b));

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / (", self.numerator)?;
        for (i, (p, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *m == 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})^{m}")?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: u32) -> Poly {
        Poly::uv_pow(k)
    }

    fn one_minus_q(k: u32) -> Poly {
        Poly::one() - q(k)
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn a_minus_a_is_canonical_zero() {
        let a = FactoredRational::new(Poly::u(), &[(one_minus_q(1), 2)]).unwrap();
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z, FactoredRational::zero());
        assert_eq!(z.factors().count(), 0);
    }

    #[test]
    fn no_automatic_cancellation() {
        let a = FactoredRational::new(Poly::one(), &[(one_minus_q(1), 1)]).unwrap();
        let b = FactoredRational::from_poly(one_minus_q(1));
        let prod = &a * &b;
        assert_eq!(prod.numerator(), &one_minus_q(1));
        assert_eq!(prod.factors().collect::<Vec<_>>(), vec![(&one_minus_q(1), 1)]);
        assert!(prod.rat_eq(&FactoredRational::one()));
    }

    #[test]
    fn common_denominator_sum() {
        let a = FactoredRational::new(Poly::one(), &[(one_minus_q(1), 1)]).unwrap();
        let b = FactoredRational::new(Poly::one(), &[(Poly::one() + q(1), 1)]).unwrap();
        let s = &a + &b;
        assert_eq!(s.numerator(), &Poly::from_int(2));
        assert_eq!(s.factors().count(), 2);
    }

    #[test]
    fn sign_normalization() {
        // 1/(uv - 1) is stored as -1/(1 - uv)
        let a = FactoredRational::new(Poly::one(), &[(q(1) - Poly::one(), 1)]).unwrap();
        assert_eq!(a.numerator(), &Poly::from_int(-1));
        assert_eq!(a.factors().next(), Some((&one_minus_q(1), 1)));
        // (uv - 1)^2 becomes (1 - uv)^2 with no sign change
        let b = FactoredRational::new(Poly::one(), &[(q(1) - Poly::one(), 2)]).unwrap();
        assert_eq!(b.numerator(), &Poly::one());
        assert_eq!(b.factors().next(), Some((&one_minus_q(1), 2)));
    }

    #[test]
    fn division_rules() {
        let a = FactoredRational::from_poly(one_minus_q(2));
        let b = FactoredRational::from_poly(Poly::one() + q(1));
        let quotient = a.checked_div(&b).unwrap();
        assert!(quotient.rat_eq(&FactoredRational::from_poly(one_minus_q(1))));
        assert_eq!(a.checked_div(&FactoredRational::from_poly(q(1))), Err(Error::NonExpandableDivisor));
        assert_eq!(a.checked_div(&FactoredRational::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rat_eq_examples() {
        let lhs = FactoredRational::new(one_minus_q(2), &[(one_minus_q(1), 1)]).unwrap();
        let rhs = FactoredRational::from_poly(Poly::one() + q(1));
        assert!(lhs.rat_eq(&rhs));
        let bad = FactoredRational::new(Poly::one() - Poly::u(), &[(Poly::one() - Poly::v(), 1)]).unwrap();
        assert!(!bad.rat_eq(&FactoredRational::one()));
    }

    #[test]
    fn diagonal_examples() {
        let p = FactoredRational::from_poly((Poly::one() - Poly::u()) * (Poly::one() - Poly::v()));
        let expected = UnivariatePolynomial::from_ints(&[1, -2, 1]);
        assert_eq!(p.diagonal().numerator(), &expected);
        let anti = FactoredRational::from_poly(Poly::u() - Poly::v());
        assert!(anti.diagonal().numerator().is_zero());
        // ((uv)^2 - 1)/(uv - 1) at g = 2 is (t^4 - 1)/(t^2 - 1)
        let g2 = FactoredRational::new(q(2) - Poly::one(), &[(q(1) - Poly::one(), 1)]).unwrap();
        let target = UnivariateRational::new(
            UnivariatePolynomial::from_ints(&[-1, 0, 0, 0, 1]),
            UnivariatePolynomial::from_ints(&[-1, 0, 1]),
        )
        .unwrap();
        assert!(g2.diagonal().equals(&target));
    }

    #[test]
    fn limit_examples() {
        let geo = FactoredRational::new(q(3) - Poly::one(), &[(q(1) - Poly::one(), 1)]).unwrap();
        assert_eq!(geo.limit_at_one(), Ok(int(3)));
        // double zero over a simple zero
        let g = 3;
        let num = (q(g) - Poly::one()) * (q(g - 1) - Poly::one());
        let r = FactoredRational::new(num, &[(q(2) - Poly::one(), 1)]).unwrap();
        assert_eq!(r.limit_at_one(), Ok(int(0)));
        let pole = FactoredRational::new(Poly::one(), &[(one_minus_q(1), 1)]).unwrap();
        assert_eq!(pole.limit_at_one(), Err(Error::PoleAtOne { order: 1 }));
    }

    #[test]
    fn polynomiality_examples() {
        let geo = FactoredRational::new(one_minus_q(6), &[(one_minus_q(1), 1)]).unwrap();
        let expected = (0..6).fold(Poly::zero(), |acc, k| acc + q(k));
        assert_eq!(geo.as_polynomial(), Some(expected));
        let bad = FactoredRational::new(Poly::one() - Poly::u(), &[(Poly::one() - Poly::v(), 1)]).unwrap();
        assert_eq!(bad.as_polynomial(), None);
        let r = FactoredRational::new(q(4) - Poly::one(), &[(q(2) - Poly::one(), 1)]).unwrap();
        assert_eq!(r.as_polynomial(), Some(Poly::one() + q(2)));
    }

    #[test]
    fn uv_degree_examples() {
        let p3 = FactoredRational::from_poly((0..4).fold(Poly::zero(), |acc, k| acc + q(k)));
        assert_eq!(p3.uv_degree(), Ok(3));
        assert_eq!(FactoredRational::zero().uv_degree(), Err(Error::ZeroInput));
        let r = FactoredRational::new(one_minus_q(6), &[(one_minus_q(1), 1)]).unwrap();
        assert_eq!(r.uv_degree(), Ok(5));
    }

    #[test]
    fn symmetry_is_semantic() {
        let odd = FactoredRational::new(Poly::one() - Poly::u(), &[(Poly::one() - Poly::u(), 1)]).unwrap();
        assert!(odd.is_symmetric());
        let not = FactoredRational::from_poly(Poly::u());
        assert!(!not.is_symmetric());
    }
}
