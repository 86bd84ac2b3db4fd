//! Truncated power series in an auxiliary variable `x` with coefficients in
//! `Q[u, v]`, and the symmetric-product generating functions built on them.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::genus::Genus;
use crate::polyring::{FactoredRational, Poly};

/// `Σ_{k=0..=order} c_k x^k`, exact up to `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Poly::one(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: usize) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        Self { coeffs }
    }

    /// `c0 + c1 x`
    pub fn linear(c0: Poly, c1: Poly, order: usize) -> Self {
        Self::from_coeffs(vec![c0, c1], order)
    }

    /// `1 / (1 - ratio x)` expanded as a geometric series.
    pub fn geometric(ratio: &Poly, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut cur = Poly::one();
        for _ in 0..=order {
            coeffs.push(cur.clone());
            cur = &cur * ratio;
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Poly> {
        self.coeffs.get(n).ok_or(Error::IndexBeyondOrder {
            index: n,
            order: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|p| p * c).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Poly::zero(); k.min(order + 1)];
        coeffs.extend(self.coeffs.iter().take((order + 1).saturating_sub(k)).cloned());
        Self { coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.order()), |acc, _| &acc * self)
    }

    /// Multiplicative inverse; the constant coefficient must be a nonzero
    /// rational constant.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() || !c0.is_constant() {
            return Err(Error::NotInvertible);
        }
        let inv0 = c0.constant_term().recip();
        let mut out: Vec<Poly> = Vec::with_capacity(self.coeffs.len());
        out.push(Poly::constant(inv0.clone()));
        for n in 1..self.coeffs.len() {
            let mut acc = Poly::zero();
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &out[n - k]);
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Poly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*x^{k}")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// The three generating functions whose coefficients give symmetric-product
/// E-polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratingShape {
    /// `(1-ux)^a (1-vx)^a / ((1-x)(1-uvx))`; `full_genus` picks `a = g`,
    /// otherwise `a = g - 1`.
    Quotient { full_genus: bool },
    /// `(1-ux)^(g-1) (1-vx)^(g-1)`
    BareProduct,
    /// `x (1-ux)^(g-1) (1-vx)^(g-1) / ((1-x)(1-uvx))`
    ShiftedQuotient,
}

impl FromStr for GeneratingShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quotient" | "symmetric-product" => Ok(Self::Quotient { full_genus: true }),
            "quotient-reduced" => Ok(Self::Quotient { full_genus: false }),
            "bare-product" => Ok(Self::BareProduct),
            "shifted-quotient" => Ok(Self::ShiftedQuotient),
            other => Err(Error::UnknownShape(other.to_string())),
        }
    }
}

/// `(1-ux)^a (1-vx)^a` truncated at `order`.
fn binomial_pair(a: u32, order: usize) -> TruncatedSeries {
    let lin_u = TruncatedSeries::linear(Poly::one(), -Poly::u(), order);
    let lin_v = TruncatedSeries::linear(Poly::one(), -Poly::v(), order);
    &lin_u.pow(a) * &lin_v.pow(a)
}

/// `1 / ((1-x)(1-uvx))`
fn double_geometric(order: usize) -> TruncatedSeries {
    &TruncatedSeries::geometric(&Poly::one(), order) * &TruncatedSeries::geometric(&Poly::uv_pow(1), order)
}

pub fn series_from_product(g: Genus, shape: GeneratingShape, order: usize) -> TruncatedSeries {
    let g = g.get();
    match shape {
        GeneratingShape::Quotient { full_genus } => {
            let a = if full_genus { g } else { g - 1 };
            &binomial_pair(a, order) * &double_geometric(order)
        }
        GeneratingShape::BareProduct => binomial_pair(g - 1, order),
        GeneratingShape::ShiftedQuotient => (&binomial_pair(g - 1, order) * &double_geometric(order)).shift(1),
    }
}

/// Degree data of one unstable stratum: `n = 2g - 2 - 2d` with `1 <= d <= g - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymProdParams {
    pub n: u32,
    pub g: Genus,
    pub d: u32,
}

impl SymProdParams {
    pub fn new(g: Genus, d: u32) -> Result<Self> {
        let max = g.get() - 1;
        if d < 1 || d > max {
            return Err(Error::DegreeOutOfRange { d, max });
        }
        Ok(Self {
            n: 2 * g.get() - 2 - 2 * d,
            g,
            d,
        })
    }

    /// All destabilizing degrees for `g`.
    pub fn all(g: Genus) -> impl Iterator<Item = Self> {
        (1..g.get()).map(move |d| Self::new(g, d).expect("d in range"))
    }
}

/// E-polynomial of the symmetric product `S^n X`.
pub fn sym_prod_e(n: u32, g: Genus) -> Poly {
    let order = n as usize;
    series_from_product(g, GeneratingShape::Quotient { full_genus: true }, order)
        .coeff(order)
        .expect("order equals index")
        .clone()
}

/// E-polynomial of the `2^(2g)`-fold cover of `S^n X` induced by square roots
/// in the Jacobian.
pub fn tilde_sym_prod_e(n: u32, g: Genus) -> Poly {
    let order = n as usize;
    let bare = series_from_product(g, GeneratingShape::BareProduct, order);
    let extra = bare.coeff(order).expect("order equals index");
    let weight = BigRational::from_integer(g.torsion_count() - 1);
    sym_prod_e(n, g) + extra.scale(&weight)
}

/// Both sides of the even-coefficient identity for `(1-ux)^(g-1)(1-vx)^(g-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenCoefficientSum {
    pub series_value: Poly,
    pub closed_value: Poly,
}

impl EvenCoefficientSum {
    pub fn agrees(&self) -> bool {
        self.series_value == self.closed_value
    }
}

fn default_order(g: Genus) -> usize {
    2 * g.get() as usize - 2
}

/// Sum over `d` of coefficient `x^(2g-2-2d)` of a series.
fn sum_over_unstable_degrees(g: Genus, series: &TruncatedSeries) -> Poly {
    SymProdParams::all(g).fold(Poly::zero(), |acc, p| {
        acc + series.coeff(p.n as usize).expect("n <= 2g - 2")
    })
}

pub fn even_coeff_sum(g: Genus) -> EvenCoefficientSum {
    let series = series_from_product(g, GeneratingShape::BareProduct, default_order(g));
    let series_value = sum_over_unstable_degrees(g, &series);

    let k = g.get() - 1;
    let minus = (Poly::one() - Poly::u()).pow(k) * (Poly::one() - Poly::v()).pow(k);
    let plus = (Poly::one() + Poly::u()).pow(k) * (Poly::one() + Poly::v()).pow(k);
    let closed_value = (minus + plus - Poly::uv_pow(k).scale_int(2)).scale(&half());
    EvenCoefficientSum {
        series_value,
        closed_value,
    }
}

/// Finite sum over `d` of the shifted-quotient coefficients, read directly
/// off the truncated series.
pub fn residue_sum_series(g: Genus) -> Poly {
    let series = series_from_product(g, GeneratingShape::ShiftedQuotient, default_order(g));
    sum_over_unstable_degrees(g, &series)
}

/// The three transcribed residues of
/// `(1-ux)^(g-1)(1-vx)^(g-1) / (x^(2g-4)(1-x^2)(1-x)(1-uvx))`.
#[derive(Clone, Debug)]
pub struct Residues {
    pub at_one: FactoredRational,
    pub at_minus_one: FactoredRational,
    pub at_inverse_uv: FactoredRational,
}

pub fn residues(g: Genus) -> Residues {
    let k = g.get() - 1;
    let q = Poly::uv_pow(1);
    let one = Poly::one();
    let minus_k = (&one - Poly::u()).pow(k) * (&one - Poly::v()).pow(k);
    let minus_k1 = (&one - Poly::u()).pow(k - 1) * (&one - Poly::v()).pow(k - 1);
    let plus_k = (&one + Poly::u()).pow(k) * (&one + Poly::v()).pow(k);
    let frac = |num: Poly, den: &[(Poly, u32)]| FactoredRational::new(num, den).expect("nonzero constant terms");

    let at_minus_one = frac(plus_k.scale(&quarter()), &[(&one + &q, 1)]);
    let at_inverse_uv = -frac(
        &Poly::uv_pow(k) * &minus_k,
        &[(&q - &one, 2), (&q + &one, 1)],
    );
    let gm1_half = BigRational::new((g.get() as i64 - 1).into(), 2.into());
    let four_g_7 = BigRational::new((4 * g.get() as i64 - 7).into(), 4.into());
    let mixed = Poly::u() + Poly::v() - q.scale_int(2);
    let at_one = -frac((mixed * &minus_k1).scale(&gm1_half), &[(&one - &q, 1)])
        - frac(minus_k.scale(&four_g_7), &[(&one - &q, 1)])
        + frac((&q * &minus_k).scale(&half()), &[(&q - &one, 2)]);
    Residues {
        at_one,
        at_minus_one,
        at_inverse_uv,
    }
}

/// `-(Res_{x=1} + Res_{x=-1} + Res_{x=1/uv})`
pub fn residue_sum_closed(g: Genus) -> FactoredRational {
    let r = residues(g);
    -(r.at_one + r.at_minus_one + r.at_inverse_uv)
}

pub(crate) fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

pub(crate) fn quarter() -> BigRational {
    BigRational::new(1.into(), 4.into())
}
