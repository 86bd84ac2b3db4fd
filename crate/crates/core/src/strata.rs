//! E-polynomials of the locally closed strata of the stable locus, and the two
//! candidate totals for the whole stable locus.
//!
//! The stable locus splits by the underlying bundle: stable bundles (the
//! cotangent bundle of the moduli of stable bundles), the four strictly
//! semistable shapes (Types I-IV), and the unstable bundles graded by the
//! degree `d` of the destabilizing line subbundle. The canonical total is the
//! sum of the per-stratum formulas; the closed-form display is kept
//! separately as a comparator.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genus::Genus;
use crate::polyring::{FactoredRational, Poly};
use crate::powerseries::{tilde_sym_prod_e, SymProdParams};
use crate::shapes::{frac, geometric, minus_pair, one_minus_q, plus_pair, poly, q, q_minus_one, rational, torsion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumId {
    StableBundle,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    Unstable(u32),
    UnstableTotal,
}

impl StratumId {
    /// Complex dimension of the stratum, `None` when it is empty.
    pub fn expected_dim(self, g: Genus) -> Option<i64> {
        let g = g.get() as i64;
        match self {
            Self::StableBundle => Some(6 * g - 6),
            Self::TypeI => Some(4 * g - 3),
            Self::TypeII if g == 2 => None,
            Self::TypeII => Some(5 * g - 5),
            Self::TypeIII => Some(3 * g - 3),
            Self::TypeIV => Some(4 * g - 4),
            Self::Unstable(d) => Some(5 * g - 5 - 2 * d as i64),
            Self::UnstableTotal => Some(5 * g - 7),
        }
    }

    /// Every stratum of the stable locus for `g`, unstable ones by degree.
    pub fn all(g: Genus) -> Vec<Self> {
        let mut out = vec![Self::StableBundle, Self::TypeI, Self::TypeII, Self::TypeIII, Self::TypeIV];
        out.extend((1..g.get()).map(Self::Unstable));
        out.push(Self::UnstableTotal);
        out
    }
}

impl fmt::Display for StratumId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StableBundle => write!(f, "stable"),
            Self::TypeI => write!(f, "type1"),
            Self::TypeII => write!(f, "type2"),
            Self::TypeIII => write!(f, "type3"),
            Self::TypeIV => write!(f, "type4"),
            Self::Unstable(d) => write!(f, "unstable:{d}"),
            Self::UnstableTotal => write!(f, "unstable"),
        }
    }
}

impl FromStr for StratumId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stable" => Ok(Self::StableBundle),
            "type1" => Ok(Self::TypeI),
            "type2" => Ok(Self::TypeII),
            "type3" => Ok(Self::TypeIII),
            "type4" => Ok(Self::TypeIV),
            "unstable" => Ok(Self::UnstableTotal),
            other => other
                .strip_prefix("unstable:")
                .and_then(|d| d.parse().ok())
                .map(Self::Unstable)
                .ok_or_else(|| Error::UnknownStratum(other.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StratumReport {
    pub genus: Genus,
    pub id: StratumId,
    pub e_poly: FactoredRational,
    pub expected_dim: Option<i64>,
    pub dim_check: bool,
    pub symmetric: bool,
}

impl Serialize for StratumReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StratumReport", 6)?;
        s.serialize_field("genus", &self.genus.get())?;
        s.serialize_field("stratum", &self.id.to_string())?;
        s.serialize_field("dim", &self.expected_dim)?;
        s.serialize_field("e", &self.e_poly)?;
        s.serialize_field("dim_check", &self.dim_check)?;
        s.serialize_field("symmetric", &self.symmetric)?;
        s.end()
    }
}

/// E-polynomial of a stratum with its dimension and symmetry checks.
pub fn stratum_report(g: Genus, id: StratumId) -> Result<StratumReport> {
    let e_poly = match id {
        StratumId::StableBundle => e_stable_locus(g),
        StratumId::TypeI => e_type1(g),
        StratumId::TypeII => e_type2(g),
        StratumId::TypeIII => e_type3(g),
        StratumId::TypeIV => e_type4(g),
        StratumId::Unstable(d) => e_unstable_stratum(g, d)?,
        StratumId::UnstableTotal => e_unstable_total(g).summed,
    };
    let expected_dim = id.expected_dim(g);
    let dim_check = match expected_dim {
        None => e_poly.is_zero(),
        Some(dim) => e_poly.uv_degree().ok() == Some(dim),
    };
    let symmetric = e_poly.is_symmetric();
    Ok(StratumReport {
        genus: g,
        id,
        e_poly,
        expected_dim,
        dim_check,
        symmetric,
    })
}

/// E-polynomial of the moduli of stable rank-2 bundles with trivial
/// determinant.
pub fn e_stable_moduli(g: Genus) -> FactoredRational {
    let g = g.get();
    let u2v = Poly::one() - Poly::monomial(2, 1, rational(1, 1));
    let uv2 = Poly::one() - Poly::monomial(1, 2, rational(1, 1));
    let top = u2v.pow(g) * uv2.pow(g) - q(g + 1) * minus_pair(g);
    let first = frac(top, &[(one_minus_q(1), 1), (one_minus_q(2), 1)]);
    let correction = frac(minus_pair(g), &[(one_minus_q(1), 1)])
        + frac(plus_pair(g), &[(Poly::one() + q(1), 1)]);
    first - correction.scale(&rational(1, 2))
}

/// Pairs with stable underlying bundle: the cotangent bundle of the moduli of
/// stable bundles.
pub fn e_stable_locus(g: Genus) -> FactoredRational {
    e_stable_moduli(g).mul_poly(&q(3 * g.get() - 3))
}

/// Invariant and anti-invariant parts of `E(J)` under `L -> L^{-1}`.
#[derive(Clone, Debug)]
pub struct Isotypic {
    pub plus: FactoredRational,
    pub minus: FactoredRational,
}

pub fn jacobian_isotypic(g: Genus) -> Isotypic {
    let (a, b) = (minus_pair(g.get()), plus_pair(g.get()));
    Isotypic {
        plus: poly((&a + &b).scale(&rational(1, 2))),
        minus: poly((a - b).scale(&rational(1, 2))),
    }
}

/// Same split for the complement of the `2^(2g)` fixed points; all of them
/// sit in the invariant part.
pub fn jacobian_complement_isotypic(g: Genus) -> Isotypic {
    let j = jacobian_isotypic(g);
    Isotypic {
        plus: j.plus - poly(torsion(g)),
        minus: j.minus,
    }
}

/// Isotypic split of `E(P^(g-2) x P^(g-2))` under the factor swap.
pub fn projective_pair_isotypic(g: Genus) -> Isotypic {
    let g = g.get();
    let den = [(q_minus_one(1), 1), (q_minus_one(2), 1)];
    Isotypic {
        plus: frac(q_minus_one(g) * q_minus_one(g - 1), &den),
        minus: frac(q(1) * q_minus_one(g - 1) * q_minus_one(g - 2), &den),
    }
}

/// Type I: `V = L + L^{-1}` with `L` not of order two.
pub fn e_type1(g: Genus) -> FactoredRational {
    let jac = jacobian_complement_isotypic(g);
    let proj = projective_pair_isotypic(g);
    let bracket = jac.plus * proj.plus + jac.minus * proj.minus;
    bracket.mul_poly(&(q(g.get()) * q_minus_one(1)))
}

/// Type II: nontrivial extension of `L^{-1}` by `L`, `L` not of order two.
pub fn e_type2(g: Genus) -> FactoredRational {
    let g_ = g.get();
    let prefactor = q(3 * g_ - 3) - q(2 * g_ - 1);
    let base = minus_pair(g_) - torsion(g);
    frac(prefactor * q_minus_one(g_ - 1) * base, &[(q_minus_one(1), 1)])
}

/// The five series of Kirwan's procedure for `P(C^g ⊗ sl(2))`.
#[derive(Clone, Debug)]
pub struct KirwanPipeline {
    pub start: FactoredRational,
    pub unstable: FactoredRational,
    pub correction: FactoredRational,
    pub partial: FactoredRational,
    pub exceptional: FactoredRational,
}

impl KirwanPipeline {
    /// `start - unstable + correction == partial`
    pub fn blowup_identity_holds(&self) -> bool {
        (&self.start - &self.unstable + &self.correction).rat_eq(&self.partial)
    }

    /// `partial - exceptional` equals the stable quotient.
    pub fn quotient_identity_holds(&self, g: Genus) -> bool {
        (&self.partial - &self.exceptional).rat_eq(&projective_stable_quotient(g))
    }
}

pub fn kirwan_type3_pipeline(g: Genus) -> KirwanPipeline {
    let g = g.get();
    let start = frac(one_minus_q(3 * g), &[(one_minus_q(2), 1), (one_minus_q(1), 1)]);
    let unstable = frac(q(2 * g - 1) * geometric(0, g - 1), &[(one_minus_q(1), 1)]);
    let correction = frac(geometric(0, g - 1) * geometric(1, 2 * g - 3), &[(one_minus_q(2), 1)])
        - frac(
            q(g - 1) * geometric(0, g - 2) * geometric(0, g - 1),
            &[(one_minus_q(1), 1)],
        );
    let partial = frac(
        one_minus_q(g - 1) * one_minus_q(g) * one_minus_q(g + 1),
        &[(one_minus_q(1), 2), (one_minus_q(2), 1)],
    );
    let fibre = frac(one_minus_q(g - 1).pow(2), &[(one_minus_q(1), 2)])
        + frac(one_minus_q(2 * g - 2), &[(one_minus_q(2), 1)]);
    let exceptional = frac(one_minus_q(g), &[(one_minus_q(1), 1)]) * fibre.scale(&rational(1, 2));
    KirwanPipeline {
        start,
        unstable,
        correction,
        partial,
        exceptional,
    }
}

/// `E(P(C^g ⊗ sl(2))^st / SL(2))`
pub fn projective_stable_quotient(g: Genus) -> FactoredRational {
    let g = g.get();
    frac(
        q(g) * one_minus_q(g - 1) * one_minus_q(g),
        &[(one_minus_q(1), 1), (one_minus_q(2), 1)],
    )
}

/// Type III: `V = L + L` with `L` of order two.
pub fn e_type3(g: Genus) -> FactoredRational {
    let g_ = g.get();
    frac(
        torsion(g) * q(g_) * q_minus_one(g_ - 1) * q_minus_one(g_),
        &[(q_minus_one(2), 1)],
    )
}

/// Type IV: nontrivial self-extension of `L` of order two.
pub fn e_type4(g: Genus) -> FactoredRational {
    let g_ = g.get();
    frac(
        torsion(g) * q(2 * g_ - 2) * q_minus_one(g_ - 1) * q_minus_one(g_),
        &[(q_minus_one(1), 1)],
    )
}

/// Pairs whose bundle is destabilized by a line subbundle of degree `d`.
pub fn e_unstable_stratum(g: Genus, d: u32) -> Result<FactoredRational> {
    let params = SymProdParams::new(g, d)?;
    Ok(poly(q(3 * g.get() - 3) * tilde_sym_prod_e(params.n, g)))
}

#[derive(Clone, Debug)]
pub struct UnstableTotal {
    /// The closed form obtained through the residue computation.
    pub closed: FactoredRational,
    /// Direct sum of the per-degree strata.
    pub summed: FactoredRational,
}

impl UnstableTotal {
    pub fn agrees(&self) -> bool {
        self.closed.rat_eq(&self.summed)
    }
}

/// Closed form of the unstable locus, term by term as displayed.
pub fn unstable_closed_form(g: Genus) -> FactoredRational {
    let g_ = g.get();
    let k = g_ - 1;
    let top = q(3 * g_ - 3);
    let half_torsion = poly(torsion(g).scale(&rational(1, 2)));
    let even = half_torsion.mul_poly(&(&top * (minus_pair(k) + plus_pair(k) - q(k).scale_int(2))));

    let mixed = Poly::u() + Poly::v() - q(1).scale_int(2);
    let bracket = -frac(plus_pair(k).scale(&rational(1, 4)), &[(Poly::one() + q(1), 1)])
        + frac(q(k) * minus_pair(k), &[(q_minus_one(1), 2), (q(1) + Poly::one(), 1)])
        + frac(
            (mixed * minus_pair(k - 1)).scale(&rational(g_ as i64 - 1, 2)),
            &[(one_minus_q(1), 1)],
        )
        + frac(minus_pair(k).scale(&rational(4 * g_ as i64 - 7, 4)), &[(one_minus_q(1), 1)])
        - frac((q(1) * minus_pair(k)).scale(&rational(1, 2)), &[(q_minus_one(1), 2)]);
    even + bracket.mul_poly(&(top * minus_pair(1)))
}

pub fn e_unstable_total(g: Genus) -> UnstableTotal {
    let summed = SymProdParams::all(g).fold(FactoredRational::zero(), |acc, p| {
        acc + e_unstable_stratum(g, p.d).expect("degree in range")
    });
    UnstableTotal {
        closed: unstable_closed_form(g),
        summed,
    }
}

/// Canonical `E(M^s)`: the sum of every stratum formula.
pub fn e_ms(g: Genus) -> FactoredRational {
    e_stable_locus(g) + e_type1(g) + e_type2(g) + e_type3(g) + e_type4(g) + e_unstable_total(g).summed
}

/// The closed-form display for `E(M^s)`, line by line, exactly as
/// printed (including its Type I and Type IV lines).
pub fn theorem_lines(g: Genus) -> Vec<(&'static str, FactoredRational)> {
    let g_ = g.get();
    let stable = e_stable_moduli(g).mul_poly(&q(3 * g_ - 3));
    let (a, b) = (minus_pair(g_), plus_pair(g_));
    let half = rational(1, 2);
    let type1_plus = frac(
        q(g_) * (&a + &b).scale(&half) * q_minus_one(g_) * q_minus_one(g_ - 1),
        &[(q_minus_one(2), 1)],
    );
    let type1_minus = frac(
        q(g_ + 1) * (&a - &b).scale(&half) * q_minus_one(g_ - 1) * q_minus_one(g_ - 2),
        &[(q_minus_one(2), 1)],
    );
    let type2 = frac(
        q(2 * g_ - 1) * q_minus_one(g_ - 2) * q_minus_one(g_ - 1) * (&a - torsion(g)),
        &[(q_minus_one(1), 1)],
    );
    vec![
        ("stable", stable),
        ("type1-invariant", type1_plus),
        ("type1-anti-invariant", type1_minus),
        ("type2", type2),
        ("type4", theorem_type4_line(g)),
        ("unstable", unstable_closed_form(g)),
    ]
}

/// The Type IV line as printed, with its extra `((uv)^(g-1) - 1)` factor.
pub fn theorem_type4_line(g: Genus) -> FactoredRational {
    let g_ = g.get();
    frac(
        torsion(g) * q(2 * g_ - 2) * q_minus_one(g_ - 1) * q_minus_one(g_ - 1) * q_minus_one(g_),
        &[(q_minus_one(1), 1)],
    )
}

pub fn e_ms_theorem_transcription(g: Genus) -> FactoredRational {
    theorem_lines(g)
        .into_iter()
        .fold(FactoredRational::zero(), |acc, (_, line)| acc + line)
}

/// The two transcription deltas documented for the closed-form display.
#[derive(Clone, Debug)]
pub struct DocumentedDeltas {
    /// `2^(2g) (uv)^g ((uv)^g - 1)((uv)^(g-1) - 1) / ((uv)^2 - 1)`: the
    /// `-2^(2g)` missing from the Type I line.
    pub type1: FactoredRational,
    /// `2^(2g) (uv)^(2g-2) ((uv)^g - 1)((uv)^(g-1) - 1)((uv)^(g-1) - 2) / (uv - 1)`:
    /// printed Type IV line minus the stratum formula.
    pub type4: FactoredRational,
}

impl DocumentedDeltas {
    pub fn total(&self) -> FactoredRational {
        &self.type1 + &self.type4
    }
}

pub fn documented_deltas(g: Genus) -> DocumentedDeltas {
    let g_ = g.get();
    DocumentedDeltas {
        type1: frac(
            torsion(g) * q(g_) * q_minus_one(g_) * q_minus_one(g_ - 1),
            &[(q_minus_one(2), 1)],
        ),
        type4: frac(
            torsion(g) * q(2 * g_ - 2) * q_minus_one(g_) * q_minus_one(g_ - 1) * (q(g_ - 1) - Poly::from_int(2)),
            &[(q_minus_one(1), 1)],
        ),
    }
}

/// Closed-form display versus the canonical stratum sum.
#[derive(Clone, Debug)]
pub struct TheoremComparison {
    pub difference: FactoredRational,
    /// Difference equals the sum of both documented deltas.
    pub matches_documented: bool,
    /// Difference equals the Type IV delta alone.
    pub matches_type4_only: bool,
    pub difference_polynomial: Option<Poly>,
    pub difference_at_one: Result<num_rational::BigRational>,
}

pub fn compare_theorem(g: Genus) -> TheoremComparison {
    let difference = e_ms_theorem_transcription(g) - e_ms(g);
    let deltas = documented_deltas(g);
    TheoremComparison {
        matches_documented: difference.rat_eq(&deltas.total()),
        matches_type4_only: difference.rat_eq(&deltas.type4),
        difference_polynomial: difference.as_polynomial(),
        difference_at_one: difference.limit_at_one(),
        difference,
    }
}
