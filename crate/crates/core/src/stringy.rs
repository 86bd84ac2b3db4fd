//! Stringy E-function of the Higgs moduli space via the Kirwan
//! desingularization: the divisor strata, their discrepancies, and the
//! Batyrev assembly.

use std::fmt;

use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::genus::Genus;
use crate::polyring::{format_rational, FactoredRational, Poly};
use crate::shapes::{frac, grassmann_product, minus_pair, one_minus_q, plus_pair, q, rational, torsion};
use crate::strata::e_ms;

/// The divisor data is only available from genus 3 on.
pub const MIN_GENUS: u32 = 3;

/// A subset `J` of the three exceptional divisors, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorSubset(u8);

impl DivisorSubset {
    pub const EMPTY: Self = Self(0);

    pub fn new(members: &[u8]) -> Result<Self> {
        let mut mask = 0u8;
        for &j in members {
            if !(1..=3).contains(&j) {
                return Err(Error::UnsupportedSubset(format!("divisor index {j}")));
            }
            mask |= 1 << (j - 1);
        }
        Ok(Self(mask))
    }

    pub fn members(self) -> Vec<u8> {
        (1..=3).filter(|j| self.contains(*j)).collect()
    }

    pub fn contains(self, j: u8) -> bool {
        (1..=3).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// All eight subsets, by size then lexicographically.
    pub fn all() -> Vec<Self> {
        let mut out: Vec<Self> = (0..8).map(Self).collect();
        out.sort_by_key(|s| (s.members().len(), s.members()));
        out
    }

    /// The seven nonempty subsets, each an open stratum of the assembly.
    pub fn open_strata() -> Vec<Self> {
        Self::all().into_iter().filter(|s| *s != Self::EMPTY).collect()
    }

    /// Subsets with a printed closed divisor formula.
    pub fn with_closed_form() -> Vec<Self> {
        Self::open_strata().into_iter().filter(|s| s.members() != [2]).collect()
    }
}

impl fmt::Display for DivisorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(u8::to_string).collect();
        write!(f, "D{}", m.join(""))
    }
}

impl Serialize for DivisorSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(serializer)
    }
}

/// Discrepancies of the three exceptional divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscrepancyData {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl DiscrepancyData {
    pub fn for_genus(g: Genus) -> Result<Self> {
        let g = Genus::at_least(g.get(), MIN_GENUS)?.get() as i64;
        Ok(Self {
            a1: 6 * g - 7,
            a2: 2 * g - 4,
            a3: 4 * g - 6,
        })
    }

    pub fn get(&self, j: u8) -> i64 {
        match j {
            1 => self.a1,
            2 => self.a2,
            3 => self.a3,
            _ => panic!("divisor index {j} out of range"),
        }
    }

    pub fn check_log_terminal(&self) -> Result<()> {
        for j in 1..=3 {
            let value = self.get(j);
            if value <= -1 {
                return Err(Error::LogTerminalityViolated { index: j as usize, value });
            }
        }
        Ok(())
    }

    /// `a_j + 1` for each member of `J`.
    pub fn weight_exponents(&self, subset: DivisorSubset) -> Vec<u32> {
        subset.members().iter().map(|&j| (self.get(j) + 1) as u32).collect()
    }

    /// `Π_{j∈J} (uv - 1)/((uv)^(a_j+1) - 1)`
    pub fn weight(&self, subset: DivisorSubset) -> FactoredRational {
        self.weight_exponents(subset)
            .into_iter()
            .fold(FactoredRational::one(), |acc, e| {
                acc * frac(one_minus_q(1), &[(one_minus_q(e), 1)])
            })
    }
}

/// E-polynomial of the isotropic Grassmannian of `k`-planes in `C^(2g)`.
pub fn e_grass_isotropic(k: u32, g: Genus) -> Result<FactoredRational> {
    if k == 0 || k > g.get() {
        return Err(Error::DegreeOutOfRange { d: k, max: g.get() });
    }
    Ok(grassmann_product(k, 2 * g.get() - 2 * k))
}

/// `(1 - (uv)^k)/(1 - uv)`
fn p(k: u32) -> FactoredRational {
    frac(one_minus_q(k), &[(one_minus_q(1), 1)])
}

fn unsupported(subset: DivisorSubset) -> Error {
    Error::UnsupportedSubset(subset.to_string())
}

fn divisor_genus(g: Genus) -> Result<(u32, FactoredRational, FactoredRational, Poly)> {
    let g = Genus::at_least(g.get(), MIN_GENUS)?;
    Ok((
        g.get(),
        e_grass_isotropic(3, g)?,
        e_grass_isotropic(2, g)?,
        torsion(g),
    ))
}

/// E-polynomial of the closed divisor intersection `D_J`.
pub fn e_divisor_closed(subset: DivisorSubset, g: Genus) -> Result<FactoredRational> {
    let (g, g3, g2, n) = divisor_genus(g)?;
    let body = match subset.members().as_slice() {
        [1] => (p(6) - p(3) + p(3) * p(3)) * g3,
        [3] => p(2 * g - 3) * p(3) * g2,
        [1, 2] => p(3) * p(3) * g3,
        [2, 3] => p(2 * g - 3) * p(2) * g2,
        [1, 3] => p(3) * p(2 * g - 4) * g2,
        [1, 2, 3] => p(2) * p(2 * g - 4) * g2,
        _ => return Err(unsupported(subset)),
    };
    Ok(body.mul_poly(&n))
}

/// E-polynomial of the open stratum `D_J^0`, for `J != {2}`.
pub fn e_divisor_open(subset: DivisorSubset, g: Genus) -> Result<FactoredRational> {
    let (g, g3, g2, n) = divisor_genus(g)?;
    let cubic = q(2) * (Poly::one() + q(1) + q(2));
    let (prefactor, grass) = match subset.members().as_slice() {
        [1] => (q(5) - q(2), g3),
        [3] => (q(2 * g - 2), g2),
        [1, 2] => (cubic, g3),
        [2, 3] => (q(2 * g - 4) * (Poly::one() + q(1)), g2),
        [1, 3] => (cubic, g3),
        [1, 2, 3] => ((Poly::one() + q(1)) * (Poly::one() + q(1) + q(2)), g3),
        _ => return Err(unsupported(subset)),
    };
    Ok(grass.mul_poly(&(n * prefactor)))
}

/// `E(I_(2g-3))^±`: the incidence variety split under the swap of point and
/// hyperplane.
pub fn incidence_isotypic(g: Genus) -> (FactoredRational, FactoredRational) {
    let g = g.get();
    let plus = frac(
        one_minus_q(2 * g - 2) * one_minus_q(2 * g - 3),
        &[(one_minus_q(1), 1), (one_minus_q(2), 1)],
    );
    let minus = plus.mul_poly(&q(1));
    (plus, minus)
}

/// `E(T*J)^±` under `-1`.
pub fn cotangent_jacobian_isotypic(g: Genus) -> (Poly, Poly) {
    let g = g.get();
    let (a, b) = (minus_pair(g), plus_pair(g));
    let half = rational(1, 2);
    (q(g) * (&a + &b).scale(&half), q(g) * (a - b).scale(&half))
}

/// `E(D_2^0)` as displayed in closed form.
pub fn e_d2_open(g: Genus) -> Result<FactoredRational> {
    let g = Genus::at_least(g.get(), MIN_GENUS)?;
    let (plus, _) = incidence_isotypic(g);
    let g_ = g.get();
    let half = rational(1, 2);
    let bracket = ((Poly::one() + q(1)) * minus_pair(g_)).scale(&half)
        + ((Poly::one() - q(1)) * plus_pair(g_)).scale(&half)
        - torsion(g);
    Ok(plus.mul_poly(&(q(g_) * bracket)))
}

/// `E(D_2^0)` assembled from the isotypic pieces, removing the `2^(2g)` fixed
/// points from the invariant part.
pub fn d2_open_from_pieces(g: Genus) -> Result<FactoredRational> {
    let g = Genus::at_least(g.get(), MIN_GENUS)?;
    let (i_plus, i_minus) = incidence_isotypic(g);
    let (t_plus, t_minus) = cotangent_jacobian_isotypic(g);
    Ok(i_plus.mul_poly(&(t_plus - torsion(g))) + i_minus.mul_poly(&t_minus))
}

/// Open stratum `D_J^0` for any nonempty `J`.
pub fn e_open_stratum(subset: DivisorSubset, g: Genus) -> Result<FactoredRational> {
    if subset.members() == [2] {
        e_d2_open(g)
    } else {
        e_divisor_open(subset, g)
    }
}

/// The seven open strata in assembly order.
pub fn open_strata(g: Genus) -> Result<Vec<(DivisorSubset, FactoredRational)>> {
    DivisorSubset::open_strata()
        .into_iter()
        .map(|j| Ok((j, e_open_stratum(j, g)?)))
        .collect()
}

/// `E_st = E(smooth part) + Σ_J E(D_J^0) Π_{j∈J} (uv-1)/((uv)^(a_j+1)-1)`
pub fn batyrev_assemble(
    strata: &[(DivisorSubset, FactoredRational)],
    disc: &DiscrepancyData,
    smooth_part: &FactoredRational,
) -> Result<FactoredRational> {
    disc.check_log_terminal()?;
    Ok(strata
        .iter()
        .fold(smooth_part.clone(), |acc, (j, e)| acc + e * &disc.weight(*j)))
}

/// Closed form of `E_st(M) - E(M^s)`, as displayed.
pub fn stringy_correction(g: Genus) -> Result<FactoredRational> {
    let g = Genus::at_least(g.get(), MIN_GENUS)?;
    let g_ = g.get();
    let half = rational(1, 2);
    let n = torsion(g);

    let bracket = ((Poly::one() + q(1)) * minus_pair(g_)).scale(&half)
        + ((Poly::one() - q(1)) * plus_pair(g_)).scale(&half)
        - &n;
    let first = frac(q(g_) * one_minus_q(2 * g_ - 2) * bracket, &[(one_minus_q(2), 1)]);

    let inner = frac(
        one_minus_q(8 * g_ - 10),
        &[(one_minus_q(2 * g_ - 3), 1), (one_minus_q(6 * g_ - 6), 1)],
    ) + frac(
        q(2) * one_minus_q(2 * g_ - 4) * one_minus_q(6 * g_ - 8),
        &[(one_minus_q(2), 1), (one_minus_q(2 * g_ - 3), 1), (one_minus_q(6 * g_ - 6), 1)],
    ) + frac(q(2 * g_ - 2), &[(one_minus_q(2), 1)]);
    let second = inner * frac(
        n * one_minus_q(2 * g_ - 2) * one_minus_q(2 * g_),
        &[(one_minus_q(4 * g_ - 5), 1)],
    );
    Ok(first + second)
}

/// `2^(2g) (3g-3)/(2g-3)`
pub fn stringy_euler_formula(g: Genus) -> Result<BigRational> {
    let g = Genus::at_least(g.get(), MIN_GENUS)?;
    let g_ = g.get() as i64;
    Ok(BigRational::new(g.torsion_count() * (3 * g_ - 3), (2 * g_ - 3).into()))
}

#[derive(Clone, Debug)]
pub struct BreakdownEntry {
    pub subset: DivisorSubset,
    pub e_open: FactoredRational,
    pub weight_exponents: Vec<u32>,
    pub contribution: FactoredRational,
}

impl Serialize for BreakdownEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BreakdownEntry", 3)?;
        s.serialize_field("J", &self.subset)?;
        s.serialize_field("e_open", &self.e_open)?;
        s.serialize_field("weight_exponents", &self.weight_exponents)?;
        s.end()
    }
}

#[derive(Clone, Debug)]
pub struct StringyReport {
    pub genus: Genus,
    pub e_ms: FactoredRational,
    pub correction: FactoredRational,
    pub e_st: FactoredRational,
    /// Value of `e_st` at `u = v = 1`.
    pub euler: BigRational,
    pub euler_formula: BigRational,
    /// Values of the two summands at `u = v = 1`.
    pub euler_ms: BigRational,
    pub euler_correction: BigRational,
    pub is_polynomial: bool,
    pub breakdown: Vec<BreakdownEntry>,
}

impl Serialize for StringyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("StringyReport", 8)?;
        s.serialize_field("genus", &self.genus.get())?;
        s.serialize_field("euler", &format_rational(&self.euler))?;
        s.serialize_field("euler_formula", &format_rational(&self.euler_formula))?;
        s.serialize_field("euler_ms", &format_rational(&self.euler_ms))?;
        s.serialize_field("euler_correction", &format_rational(&self.euler_correction))?;
        s.serialize_field("is_polynomial", &self.is_polynomial)?;
        s.serialize_field("e_st", &self.e_st)?;
        s.serialize_field("breakdown", &self.breakdown)?;
        s.end()
    }
}

/// Assembles `E_st(M) = E(M^s) + correction` and its invariants.
pub fn stringy_e(g: Genus) -> Result<StringyReport> {
    let g = Genus::at_least(g.get(), MIN_GENUS)?;
    let disc = DiscrepancyData::for_genus(g)?;
    let breakdown = open_strata(g)?
        .into_iter()
        .map(|(subset, e_open)| BreakdownEntry {
            contribution: &e_open * &disc.weight(subset),
            weight_exponents: disc.weight_exponents(subset),
            subset,
            e_open,
        })
        .collect();
    let e_ms = e_ms(g);
    let correction = stringy_correction(g)?;
    let e_st = &e_ms + &correction;
    Ok(StringyReport {
        genus: g,
        euler: e_st.limit_at_one()?,
        euler_formula: stringy_euler_formula(g)?,
        euler_ms: e_ms.limit_at_one()?,
        euler_correction: correction.limit_at_one()?,
        is_polynomial: e_st.as_polynomial().is_some(),
        e_ms,
        correction,
        e_st,
        breakdown,
    })
}
