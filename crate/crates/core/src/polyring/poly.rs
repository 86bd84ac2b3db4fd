use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::univariate::UnivariatePolynomial;

/// Exponent pair `(deg_u, deg_v)`.
pub type Monomial = (u32, u32);

/// Sparse polynomial in `u, v` with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by `(deg_u, deg_v)`, so iteration is
/// lexicographic and two polynomials are equal exactly when their maps are.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BivariatePolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub type Poly = BivariatePolynomial;

/// Above this many dense cells the product falls back to a hash map.
const DENSE_PRODUCT_LIMIT: usize = 1 << 22;

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * u^du * v^dv`
    pub fn monomial(du: u32, dv: u32, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((du, dv), c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    /// `(uv)^k`
    pub fn uv_pow(k: u32) -> Self {
        Self::monomial(k, k, BigRational::one())
    }

    /// Builds a polynomial from possibly repeated terms, summing duplicates.
    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in iter {
            *terms.entry(m).or_insert_with(BigRational::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, du: u32, dv: u32) -> BigRational {
        self.terms.get(&(du, dv)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn deg_u(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn deg_v(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, x)| (m, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Multiplies by `u^du v^dv`.
    pub fn shift(&self, du: u32, dv: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + du, b + dv), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn swap_uv(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(a, b), c)| self.terms.get(&(b, a)) == Some(c))
    }

    pub fn eval(&self, u: &BigRational, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * pow_rat(u, a) * pow_rat(v, b);
        }
        acc
    }

    /// Substitutes `u = v = t`.
    pub fn diagonal(&self) -> UnivariatePolynomial {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        for (&(a, b), c) in &self.terms {
            coeffs[(a + b) as usize] += c;
        }
        UnivariatePolynomial::from_coeffs(coeffs)
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not divide.
    ///
    /// Works in `Q[v][u]`: the leading `u`-coefficient of the running remainder
    /// must be a `Q[v]`-multiple of the divisor's leading `u`-coefficient at
    /// every step. Reducing leading terms under lex order with `u > v` performs
    /// exactly that, because a single polynomial generates its ideal as a
    /// Gröbner basis.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (&lead_m, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((&m, c)) = rem.iter().next_back() {
            if m.0 < lead_m.0 || m.1 < lead_m.1 {
                return None;
            }
            let shift = (m.0 - lead_m.0, m.1 - lead_m.1);
            let factor = c / lead_c;
            for (&(a, b), dc) in &divisor.terms {
                let key = (a + shift.0, b + shift.1);
                let delta = dc * &factor;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.insert(shift, factor);
        }
        Some(Self { terms: quotient })
    }

    /// Common denominator of the coefficients and the integer numerators.
    fn integer_form(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .terms
            .iter()
            .map(|(&m, c)| (m, c.numer() * (&den / c.denom())))
            .collect();
        (ints, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_constant() {
            return other.scale(&self.constant_term());
        }
        if other.is_constant() {
            return self.scale(&other.constant_term());
        }
        let (a, da) = self.integer_form();
        let (b, db) = other.integer_form();
        let den = da * db;

        let width = (self.deg_v().unwrap_or(0) + other.deg_v().unwrap_or(0) + 1) as usize;
        let height = (self.deg_u().unwrap_or(0) + other.deg_u().unwrap_or(0) + 1) as usize;

        let small = small_product_bound(&a, &b);
        let products: Vec<(Monomial, BigInt)> = if width.saturating_mul(height) <= DENSE_PRODUCT_LIMIT {
            if small {
                let a64: Vec<_> = a.iter().map(|(m, c)| (*m, c.to_i128().unwrap())).collect();
                let b64: Vec<_> = b.iter().map(|(m, c)| (*m, c.to_i128().unwrap())).collect();
                let mut acc = vec![0i128; width * height];
                for &((ua, va), ca) in &a64 {
                    for &((ub, vb), cb) in &b64 {
                        acc[(ua + ub) as usize * width + (va + vb) as usize] += ca * cb;
                    }
                }
                collect_dense(acc.into_iter().map(BigInt::from), width)
            } else {
                let mut acc = vec![BigInt::zero(); width * height];
                for ((ua, va), ca) in &a {
                    for ((ub, vb), cb) in &b {
                        acc[(ua + ub) as usize * width + (va + vb) as usize] += ca * cb;
                    }
                }
                collect_dense(acc.into_iter(), width)
            }
        } else {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
            for ((ua, va), ca) in &a {
                for ((ub, vb), cb) in &b {
                    *acc.entry((ua + ub, va + vb)).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };

        Self {
            terms: products
                .into_iter()
                .map(|(m, c)| (m, BigRational::new(c, den.clone())))
                .collect(),
        }
    }

    fn add_assign_scaled(&mut self, other: &Self, sign: bool) {
        for (&m, c) in &other.terms {
            match self.terms.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    if sign {
                        *e.get_mut() += c;
                    } else {
                        *e.get_mut() -= c;
                    }
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(if sign { c.clone() } else { -c.clone() });
                }
            }
        }
    }
}

/// Whether the i128 accumulator cannot overflow for this product.
fn small_product_bound(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)]) -> bool {
    let bits = |xs: &[(Monomial, BigInt)]| xs.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    let term_bits = 64 - terms.leading_zeros() as u64;
    bits(a) + bits(b) + term_bits < 126
}

fn collect_dense<I: Iterator<Item = BigInt>>(acc: I, width: usize) -> Vec<(Monomial, BigInt)> {
    acc.enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (((i / width) as u32, (i % width) as u32), c))
        .collect()
}

pub(crate) fn pow_rat(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow(x.clone(), n as usize)
}

impl From<i64> for BivariatePolynomial {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigRational> for BivariatePolynomial {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(mut self) -> BivariatePolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        self.add_assign_scaled(rhs, true);
    }
}

impl SubAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn sub_assign(&mut self, rhs: &BivariatePolynomial) {
        self.add_assign_scaled(rhs, false);
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&BivariatePolynomial> for &BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
                let f: fn(&BivariatePolynomial, &BivariatePolynomial) -> BivariatePolynomial = $body;
                f(self, rhs)
            }
        }
        impl $tr<BivariatePolynomial> for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BivariatePolynomial> for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<BivariatePolynomial> for &BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    out += b;
    out
});
forward_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    out -= b;
    out
});
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&(a, b), _)| (a + b, std::cmp::Reverse(a)));
        for (i, (&(a, b), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = match (a, b) {
                (0, 0) => String::new(),
                _ => {
                    let part = |name: &str, e: u32| match e {
                        0 => None,
                        1 => Some(name.to_string()),
                        _ => Some(format!("{name}^{e}")),
                    };
                    [part("u", a), part("v", b)]
                        .into_iter()
                        .flatten()
                        .collect::<Vec<_>>()
                        .join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn one_minus(p: Poly) -> Poly {
        Poly::one() - p
    }

    #[test]
    fn binomial_product() {
        let p = one_minus(Poly::u()) * one_minus(Poly::v());
        let expected = Poly::from_terms([
            ((0, 0), r(1, 1)),
            ((1, 0), r(-1, 1)),
            ((0, 1), r(-1, 1)),
            ((1, 1), r(1, 1)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn additive_identity() {
        let p = Poly::u().pow(3) - Poly::v().scale(&r(1, 2));
        assert_eq!(&p + &Poly::zero(), p);
    }

    #[test]
    fn difference_of_squares() {
        let q = Poly::uv_pow(1);
        let p = (Poly::one() + &q) * (Poly::one() - &q);
        assert_eq!(p, Poly::one() - Poly::uv_pow(2));
    }

    #[test]
    fn powers() {
        assert_eq!(one_minus(Poly::u()).pow(0), Poly::one());
        let expected = Poly::from_terms([((0, 0), r(1, 1)), ((1, 0), r(2, 1)), ((2, 0), r(1, 1))]);
        assert_eq!((Poly::one() + Poly::u()).pow(2), expected);
        assert_eq!(Poly::uv_pow(1).pow(3), Poly::monomial(3, 3, r(1, 1)));
    }

    #[test]
    fn swap_exchanges_exponents() {
        let p = Poly::monomial(2, 1, r(1, 1));
        assert_eq!(p.swap_uv(), Poly::monomial(1, 2, r(1, 1)));
        let s = one_minus(Poly::u()) * one_minus(Poly::v());
        assert_eq!(s.swap_uv(), s);
        assert!(s.is_symmetric());
        assert!(!p.is_symmetric());
    }

    #[test]
    fn exact_division() {
        let q = Poly::uv_pow(1);
        let num = Poly::one() - Poly::uv_pow(6);
        let quotient = num.div_exact(&(Poly::one() - &q)).unwrap();
        let geometric = (0..6).fold(Poly::zero(), |acc, k| acc + Poly::uv_pow(k));
        assert_eq!(quotient, geometric);
        assert!(one_minus(Poly::u()).div_exact(&one_minus(Poly::v())).is_none());
        assert_eq!(Poly::zero().div_exact(&q), Some(Poly::zero()));
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let big = Poly::constant(BigRational::from_integer(BigInt::from(1u8) << 100u32)) + Poly::u();
        let sq = &big * &big;
        assert_eq!(sq.coeff(1, 0), BigRational::from_integer(BigInt::from(1u8) << 101u32));
        assert_eq!(sq.coeff(2, 0), r(1, 1));
    }

    #[test]
    fn display_is_readable() {
        let p = one_minus(Poly::u()) * one_minus(Poly::v());
        assert_eq!(p.to_string(), "1 - u - v + u*v");
        assert_eq!(Poly::monomial(2, 0, r(-1, 2)).to_string(), "-1/2*u^2");
    }

    #[test]
    fn diagonal_and_eval_agree() {
        let p = (Poly::one() + Poly::u().scale(&r(3, 2))) * one_minus(Poly::v()).pow(2);
        let t = r(5, 7);
        assert_eq!(p.diagonal().eval(&t), p.eval(&t, &t));
    }
}
