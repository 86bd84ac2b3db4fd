//! Every formula re-evaluated at rational points with plain rational
//! arithmetic, independent of the polynomial and series machinery.

use hodge_stringy::strata::{self, StratumId};
use hodge_stringy::stringy::{self, DivisorSubset, DiscrepancyData};
use hodge_stringy::{FactoredRational, Genus};
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;

fn r(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn pw(x: &Q, k: i64) -> Q {
    num_traits::pow(x.clone(), k as usize)
}

/// Points with `uv` away from roots of unity.
fn points() -> Vec<(Q, Q)> {
    vec![(r(2, 3), r(5, 7)), (r(-3, 2), r(1, 4)), (r(3, 1), r(2, 1))]
}

struct At {
    u: Q,
    v: Q,
    q: Q,
    g: i64,
}

impl At {
    fn new(u: &Q, v: &Q, g: u32) -> Self {
        Self { u: u.clone(), v: v.clone(), q: u * v, g: g as i64 }
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn qk(&self, k: i64) -> Q {
        pw(&self.q, k)
    }
    fn a(&self, k: i64) -> Q {
        pw(&((self.one() - &self.u) * (self.one() - &self.v)), k)
    }
    fn b(&self, k: i64) -> Q {
        pw(&((self.one() + &self.u) * (self.one() + &self.v)), k)
    }
    fn n(&self) -> Q {
        pw(&r(2, 1), 2 * self.g)
    }
    fn half(&self) -> Q {
        r(1, 2)
    }

    /// Coefficient of `x^n` in `(1-ux)^a (1-vx)^a / ((1-x)(1-uvx))`, or without
    /// the geometric factors when `bare`.
    fn series_coeff(&self, a: i64, n: usize, bare: bool) -> Q {
        let mut c = vec![Q::zero(); n + 1];
        c[0] = Q::one();
        let mul_linear = |c: &mut Vec<Q>, root: &Q| {
            for i in (1..=n).rev() {
                let prev = c[i - 1].clone();
                c[i] -= root * prev;
            }
        };
        for _ in 0..a {
            mul_linear(&mut c, &self.u);
            mul_linear(&mut c, &self.v);
        }
        if !bare {
            for ratio in [Q::one(), self.q.clone()] {
                for i in 1..=n {
                    let prev = c[i - 1].clone();
                    c[i] += ratio.clone() * prev;
                }
            }
        }
        c[n].clone()
    }

    fn stable_moduli(&self) -> Q {
        let (g, q) = (self.g, &self.q);
        let one = self.one();
        let top = pw(&(&one - &self.u * &self.u * &self.v), g) * pw(&(&one - &self.u * &self.v * &self.v), g)
            - self.qk(g + 1) * self.a(g);
        top / ((&one - q) * (&one - self.qk(2)))
            - self.half() * (self.a(g) / (&one - q) + self.b(g) / (&one + q))
    }

    fn type1(&self) -> Q {
        let (g, q, one) = (self.g, &self.q, self.one());
        let den = (q - &one) * (self.qk(2) - &one);
        let plus = (self.half() * (self.a(g) + self.b(g)) - self.n()) * (self.qk(g) - &one) * (self.qk(g - 1) - &one) / &den;
        let minus = self.half() * (self.a(g) - self.b(g)) * q * (self.qk(g - 1) - &one) * (self.qk(g - 2) - &one) / &den;
        self.qk(g) * (q - &one) * (plus + minus)
    }

    fn type2(&self) -> Q {
        let (g, one) = (self.g, self.one());
        (self.qk(3 * g - 3) - self.qk(2 * g - 1)) * (self.qk(g - 1) - &one) / (&self.q - &one) * (self.a(g) - self.n())
    }

    fn type3(&self) -> Q {
        let (g, one) = (self.g, self.one());
        self.n() * self.qk(g) * (self.qk(g - 1) - &one) * (self.qk(g) - &one) / (self.qk(2) - &one)
    }

    fn type4(&self) -> Q {
        let (g, one) = (self.g, self.one());
        self.n() * self.qk(2 * g - 2) * (self.qk(g - 1) - &one) * (self.qk(g) - &one) / (&self.q - &one)
    }

    fn unstable(&self, d: i64) -> Q {
        let (g, n) = (self.g, (2 * self.g - 2 - 2 * d) as usize);
        let cover = self.series_coeff(g, n, false) + (self.n() - self.one()) * self.series_coeff(g - 1, n, true);
        self.qk(3 * g - 3) * cover
    }

    fn grass(&self, k: i64) -> Q {
        (1..=k).fold(self.one(), |acc, i| {
            acc * (self.one() - self.qk(2 * self.g - 2 * k + 2 * i)) / (self.one() - self.qk(i))
        })
    }

    fn open(&self, members: &[u8]) -> Q {
        let (g, one) = (self.g, self.one());
        let cubic = &one + &self.q + self.qk(2);
        let body = match members {
            [1] => (self.qk(5) - self.qk(2)) * self.grass(3),
            [3] => self.qk(2 * g - 2) * self.grass(2),
            [1, 2] | [1, 3] => self.qk(2) * &cubic * self.grass(3),
            [2, 3] => self.qk(2 * g - 4) * (&one + &self.q) * self.grass(2),
            [1, 2, 3] => (&one + &self.q) * &cubic * self.grass(3),
            [2] => {
                let inc = (&one - self.qk(2 * g - 2)) * (&one - self.qk(2 * g - 3)) / ((&one - &self.q) * (&one - self.qk(2)));
                let bracket = self.half() * (&one + &self.q) * self.a(g) + self.half() * (&one - &self.q) * self.b(g) - self.n();
                return self.qk(g) * inc * bracket;
            }
            _ => unreachable!(),
        };
        self.n() * body
    }
}

fn assert_at(e: &FactoredRational, u: &Q, v: &Q, expected: Q, what: &str) {
    assert_eq!(e.eval(u, v), Some(expected), "{what} at ({u}, {v})");
}

#[test]
fn strata_match_direct_evaluation() {
    for g in 2..=5 {
        let genus = Genus::new(g).unwrap();
        for (u, v) in points() {
            let at = At::new(&u, &v, g);
            let q3 = at.qk(3 * at.g - 3);
            assert_at(&strata::e_stable_locus(genus), &u, &v, &q3 * at.stable_moduli(), "stable");
            assert_at(&strata::e_type1(genus), &u, &v, at.type1(), "type1");
            assert_at(&strata::e_type2(genus), &u, &v, at.type2(), "type2");
            assert_at(&strata::e_type3(genus), &u, &v, at.type3(), "type3");
            assert_at(&strata::e_type4(genus), &u, &v, at.type4(), "type4");
            let mut unstable = Q::zero();
            for d in 1..g {
                let e = strata::stratum_report(genus, StratumId::Unstable(d)).unwrap().e_poly;
                assert_at(&e, &u, &v, at.unstable(d as i64), "unstable stratum");
                unstable += at.unstable(d as i64);
            }
            assert_at(&strata::e_unstable_total(genus).closed, &u, &v, unstable.clone(), "unstable closed form");
            let total = q3 * at.stable_moduli() + at.type1() + at.type2() + at.type3() + at.type4() + unstable;
            assert_at(&strata::e_ms(genus), &u, &v, total, "total");
        }
    }
}

#[test]
fn divisors_and_assembly_match_direct_evaluation() {
    for g in 3..=5 {
        let genus = Genus::new(g).unwrap();
        let disc = DiscrepancyData::for_genus(genus).unwrap();
        for (u, v) in points() {
            let at = At::new(&u, &v, g);
            let mut correction = Q::zero();
            for subset in DivisorSubset::open_strata() {
                let members = subset.members();
                let expected = at.open(&members);
                assert_at(&stringy::e_open_stratum(subset, genus).unwrap(), &u, &v, expected.clone(), "open stratum");
                let weight = members.iter().fold(Q::one(), |acc, &j| {
                    acc * (&at.q - Q::one()) / (at.qk(disc.get(j) + 1) - Q::one())
                });
                correction += expected * weight;
            }
            assert_at(&stringy::stringy_correction(genus).unwrap(), &u, &v, correction, "correction");
        }
    }
}

#[test]
fn isotropic_grassmannian_matches_direct_evaluation() {
    for g in 2..=5 {
        let genus = Genus::new(g).unwrap();
        for (u, v) in points() {
            let at = At::new(&u, &v, g);
            for k in 1..=g {
                assert_at(&stringy::e_grass_isotropic(k, genus).unwrap(), &u, &v, at.grass(k as i64), "grassmannian");
            }
        }
    }
}
