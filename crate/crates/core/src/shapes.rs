//! Building blocks shared by the transcribed formulas. `q` stands for `uv`.

use num_rational::BigRational;

use crate::genus::Genus;
use crate::polyring::{FactoredRational, Poly};

pub(crate) fn q(k: u32) -> Poly {
    Poly::uv_pow(k)
}

/// `1 - q^k`
pub(crate) fn one_minus_q(k: u32) -> Poly {
    Poly::one() - q(k)
}

/// `q^k - 1`
pub(crate) fn q_minus_one(k: u32) -> Poly {
    q(k) - Poly::one()
}

/// `1 + q + ... + q^hi` starting at `q^lo`; empty when `hi < lo`.
pub(crate) fn geometric(lo: u32, hi: u32) -> Poly {
    (lo..=hi).fold(Poly::zero(), |acc, k| acc + q(k))
}

/// `(1-u)^k (1-v)^k`
pub(crate) fn minus_pair(k: u32) -> Poly {
    (Poly::one() - Poly::u()).pow(k) * (Poly::one() - Poly::v()).pow(k)
}

/// `(1+u)^k (1+v)^k`
pub(crate) fn plus_pair(k: u32) -> Poly {
    (Poly::one() + Poly::u()).pow(k) * (Poly::one() + Poly::v()).pow(k)
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub(crate) fn torsion(g: Genus) -> Poly {
    g.torsion_poly()
}

/// `num / Π den^mult` for denominators whose constant term is nonzero by
/// construction.
pub(crate) fn frac(num: Poly, den: &[(Poly, u32)]) -> FactoredRational {
    FactoredRational::new(num, den).expect("formula denominators have nonzero constant term")
}

pub(crate) fn poly(p: Poly) -> FactoredRational {
    FactoredRational::from_poly(p)
}

/// `Π_{i=1..k} (1 - q^(offset + 2i)) / (1 - q^i)`
pub(crate) fn grassmann_product(k: u32, offset: u32) -> FactoredRational {
    (1..=k).fold(FactoredRational::one(), |acc, i| {
        acc * frac(one_minus_q(offset + 2 * i), &[(one_minus_q(i), 1)])
    })
}
