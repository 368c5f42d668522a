//! Order catalog of the finite simple groups — alternating, sporadic (with
//! the Tits group), and all Lie-type families — plus the two bounded
//! candidate scans used by the recognition arguments:
//!
//! - [`candidates`]: every simple group whose order divides a given N and
//!   whose order is divisible by a set of required primes (the 𝔖(p) scan);
//! - [`lie_with_prime`]: every simple group of Lie type containing a given
//!   prime r with π(G) inside a given allowed set, found by the
//!   per-characteristic multiplicative-order argument.
//!
//! Isomorphism coincidences (A_5 ≅ L_2(4) ≅ L_2(5), L_2(7) ≅ L_3(2),
//! A_6 ≅ L_2(9), A_8 ≅ L_4(2), U_4(2) ≅ S_4(3), B_2 ≅ C_2, B_n(2^k) ≅
//! C_n(2^k)) collapse to one canonical representative so "pairwise
//! nonisomorphic" counting is by isomorphism class, not formula instance.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, FactoredInteger};
use crate::error::{Error, Result};

/// Simple-group families. `Sporadic` carries an index into the embedded
/// constant table; `Tits` is the Tits group 2F_4(2)'.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Alt,
    Sporadic(usize),
    A,
    TwoA,
    B,
    C,
    D,
    TwoD,
    G2,
    F4,
    E6,
    TwoE6,
    E7,
    E8,
    ThreeD4,
    TwoB2,
    TwoG2,
    TwoF4,
    Tits,
}

/// A finite simple group given by family, rank and field (q = p^k).
/// For `Alt` the rank is the degree n; sporadic entries and the Tits group
/// carry no parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupSpec {
    pub family: Family,
    pub rank: u32,
    pub p: u64,
    pub k: u32,
}

struct SporadicEntry {
    name: &'static str,
    factors: &'static [(u64, u32)],
    out_has_2: bool,
}

static SPORADIC: &[SporadicEntry] = &[
    SporadicEntry { name: "M_11", factors: &[(2, 4), (3, 2), (5, 1), (11, 1)], out_has_2: false },
    SporadicEntry { name: "M_12", factors: &[(2, 6), (3, 3), (5, 1), (11, 1)], out_has_2: true },
    SporadicEntry { name: "M_22", factors: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)], out_has_2: true },
    SporadicEntry { name: "M_23", factors: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)], out_has_2: false },
    SporadicEntry { name: "M_24", factors: &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)], out_has_2: false },
    SporadicEntry { name: "J_1", factors: &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)], out_has_2: false },
    SporadicEntry { name: "J_2", factors: &[(2, 7), (3, 3), (5, 2), (7, 1)], out_has_2: true },
    SporadicEntry { name: "J_3", factors: &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)], out_has_2: true },
    SporadicEntry { name: "J_4", factors: &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)], out_has_2: false },
    SporadicEntry { name: "Co_1", factors: &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)], out_has_2: false },
    SporadicEntry { name: "Co_2", factors: &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)], out_has_2: false },
    SporadicEntry { name: "Co_3", factors: &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)], out_has_2: false },
    SporadicEntry { name: "Fi_22", factors: &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)], out_has_2: true },
    SporadicEntry { name: "Fi_23", factors: &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)], out_has_2: false },
    SporadicEntry { name: "Fi_24'", factors: &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)], out_has_2: true },
    SporadicEntry { name: "HS", factors: &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)], out_has_2: true },
    SporadicEntry { name: "McL", factors: &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)], out_has_2: true },
    SporadicEntry { name: "He", factors: &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)], out_has_2: true },
    SporadicEntry { name: "Ru", factors: &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)], out_has_2: false },
    SporadicEntry { name: "Suz", factors: &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)], out_has_2: true },
    SporadicEntry { name: "O'N", factors: &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)], out_has_2: true },
    SporadicEntry { name: "HN", factors: &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)], out_has_2: true },
    SporadicEntry { name: "Ly", factors: &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)], out_has_2: false },
    SporadicEntry { name: "Th", factors: &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)], out_has_2: false },
    SporadicEntry { name: "B", factors: &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)], out_has_2: false },
    SporadicEntry { name: "M", factors: &[(2, 46), (3, 20), (5, 9), (7, 6), (11, 2), (13, 3), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1), (41, 1), (47, 1), (59, 1), (71, 1)], out_has_2: false },
];

static TITS_FACTORS: &[(u64, u32)] = &[(2, 11), (3, 3), (5, 2), (13, 1)];

/// All parameterized Lie families, in enumeration order.
static LIE_FAMILIES: &[Family] = &[
    Family::A,
    Family::TwoA,
    Family::B,
    Family::C,
    Family::D,
    Family::TwoD,
    Family::G2,
    Family::F4,
    Family::E6,
    Family::TwoE6,
    Family::E7,
    Family::E8,
    Family::ThreeD4,
    Family::TwoB2,
    Family::TwoG2,
    Family::TwoF4,
];

fn min_rank(family: Family) -> u32 {
    match family {
        Family::A => 1,
        Family::TwoA => 2,
        Family::B => 2,
        Family::C => 3,
        Family::D | Family::TwoD => 4,
        _ => 0,
    }
}

fn has_rank(family: Family) -> bool {
    matches!(
        family,
        Family::A | Family::TwoA | Family::B | Family::C | Family::D | Family::TwoD
    )
}

/// Exponent of q in the order formula (number of positive roots).
fn q_exponent(family: Family, rank: u32) -> u32 {
    match family {
        Family::A | Family::TwoA => rank * (rank + 1) / 2,
        Family::B | Family::C => rank * rank,
        Family::D | Family::TwoD => rank * (rank - 1),
        Family::G2 => 6,
        Family::F4 => 24,
        Family::E6 | Family::TwoE6 => 36,
        Family::E7 => 63,
        Family::E8 => 120,
        Family::ThreeD4 => 12,
        Family::TwoB2 => 2,
        Family::TwoG2 => 3,
        Family::TwoF4 => 12,
        _ => 0,
    }
}

/// The (i, sign) list describing ∏ (q^i − sign·1) in the order formula;
/// sign −1 means q^i − 1, sign +1 means q^i + 1. 3D_4 is handled separately.
fn torus_terms(family: Family, rank: u32) -> Vec<(u32, i8)> {
    match family {
        Family::A => (2..=rank + 1).map(|i| (i, -1)).collect(),
        Family::TwoA => (2..=rank + 1)
            .map(|i| (i, if i % 2 == 1 { 1 } else { -1 }))
            .collect(),
        Family::B | Family::C => (1..=rank).map(|i| (2 * i, -1)).collect(),
        Family::D => {
            let mut t: Vec<(u32, i8)> = (1..rank).map(|i| (2 * i, -1)).collect();
            t.push((rank, -1));
            t
        }
        Family::TwoD => {
            let mut t: Vec<(u32, i8)> = (1..rank).map(|i| (2 * i, -1)).collect();
            t.push((rank, 1));
            t
        }
        Family::G2 => vec![(6, -1), (2, -1)],
        Family::F4 => vec![(12, -1), (8, -1), (6, -1), (2, -1)],
        Family::E6 => vec![(12, -1), (9, -1), (8, -1), (6, -1), (5, -1), (2, -1)],
        Family::TwoE6 => vec![(12, -1), (9, 1), (8, -1), (6, -1), (5, 1), (2, -1)],
        Family::E7 => vec![
            (18, -1),
            (14, -1),
            (12, -1),
            (10, -1),
            (8, -1),
            (6, -1),
            (2, -1),
        ],
        Family::E8 => vec![
            (30, -1),
            (24, -1),
            (20, -1),
            (18, -1),
            (14, -1),
            (12, -1),
            (8, -1),
            (2, -1),
        ],
        Family::TwoB2 => vec![(2, 1), (1, -1)],
        Family::TwoG2 => vec![(3, 1), (1, -1)],
        Family::TwoF4 => vec![(6, 1), (4, -1), (3, 1), (1, -1)],
        _ => Vec::new(),
    }
}

fn term_value(q: &BigUint, i: u32, sign: i8) -> BigUint {
    let qi = q.pow(i);
    if sign < 0 {
        qi - BigUint::one()
    } else {
        qi + BigUint::one()
    }
}

/// The center order d divided out of the universal group.
fn order_divisor(family: Family, rank: u32, q: &BigUint) -> BigUint {
    let one = BigUint::one();
    match family {
        Family::A => BigUint::from(rank as u64 + 1).gcd(&(q - &one)),
        Family::TwoA => BigUint::from(rank as u64 + 1).gcd(&(q + &one)),
        Family::B | Family::C => BigUint::from(2u32).gcd(&(q - &one)),
        Family::D => BigUint::from(4u32).gcd(&(q.pow(rank) - &one)),
        Family::TwoD => BigUint::from(4u32).gcd(&(q.pow(rank) + &one)),
        Family::E6 => BigUint::from(3u32).gcd(&(q - &one)),
        Family::TwoE6 => BigUint::from(3u32).gcd(&(q + &one)),
        Family::E7 => BigUint::from(2u32).gcd(&(q - &one)),
        _ => one,
    }
}

impl GroupSpec {
    /// Alternating group of degree n ≥ 5.
    pub fn alt(n: u32) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidParams(format!("A_{} is not simple", n)));
        }
        Ok(GroupSpec {
            family: Family::Alt,
            rank: n,
            p: 0,
            k: 0,
        })
    }

    /// Lie-type group; validates family constraints and simplicity.
    pub fn lie(family: Family, rank: u32, p: u64, k: u32) -> Result<Self> {
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if k == 0 {
            return Err(Error::InvalidParams("field exponent k = 0".into()));
        }
        let spec = GroupSpec { family, rank, p, k };
        if !spec.satisfies_constraints() {
            return Err(Error::InvalidParams(format!(
                "no simple group {:?} of rank {} over {}^{}",
                family, rank, p, k
            )));
        }
        Ok(spec)
    }

    /// Look up a sporadic group (or the Tits group) by name.
    pub fn sporadic(name: &str) -> Option<Self> {
        if name == "2F_4(2)'" {
            return Some(GroupSpec {
                family: Family::Tits,
                rank: 0,
                p: 0,
                k: 0,
            });
        }
        SPORADIC.iter().position(|e| e.name == name).map(|i| GroupSpec {
            family: Family::Sporadic(i),
            rank: 0,
            p: 0,
            k: 0,
        })
    }

    fn satisfies_constraints(&self) -> bool {
        let q = self.q_value();
        let q_small = q.to_u64();
        match self.family {
            Family::Alt => self.rank >= 5,
            Family::Sporadic(i) => i < SPORADIC.len(),
            Family::Tits => true,
            Family::A => self.rank >= 1 && !(self.rank == 1 && matches!(q_small, Some(2) | Some(3))),
            Family::TwoA => self.rank >= 2 && !(self.rank == 2 && q_small == Some(2)),
            Family::B => self.rank >= 2 && !(self.rank == 2 && q_small == Some(2)),
            // C_n(q) ≅ B_n(q) for even q and C_2 ≅ B_2; only odd q, n ≥ 3 here
            Family::C => self.rank >= 3 && self.p != 2,
            Family::D | Family::TwoD => self.rank >= 4,
            Family::G2 => q_small != Some(2),
            Family::F4 | Family::E6 | Family::TwoE6 | Family::E7 | Family::E8 | Family::ThreeD4 => {
                true
            }
            Family::TwoB2 => self.p == 2 && self.k >= 3 && self.k % 2 == 1,
            Family::TwoG2 => self.p == 3 && self.k >= 3 && self.k % 2 == 1,
            Family::TwoF4 => self.p == 2 && self.k >= 3 && self.k % 2 == 1,
        }
    }

    /// q = p^k (1 for alternating/sporadic).
    pub fn q_value(&self) -> BigUint {
        if self.p == 0 {
            BigUint::one()
        } else {
            BigUint::from(self.p).pow(self.k)
        }
    }

    fn q_label(&self) -> String {
        if self.k == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.k)
        }
    }

    /// Canonical display name: classical groups use L/U notation, twisted
    /// families keep their Lie symbols, q is rendered p^k when k > 1.
    pub fn label(&self) -> String {
        match self.family {
            Family::Alt => format!("A_{}", self.rank),
            Family::Sporadic(i) => SPORADIC[i].name.to_string(),
            Family::Tits => "2F_4(2)'".to_string(),
            Family::A => format!("L_{}({})", self.rank + 1, self.q_label()),
            Family::TwoA => format!("U_{}({})", self.rank + 1, self.q_label()),
            Family::B => format!("B_{}({})", self.rank, self.q_label()),
            Family::C => format!("C_{}({})", self.rank, self.q_label()),
            Family::D => format!("D_{}({})", self.rank, self.q_label()),
            Family::TwoD => format!("2D_{}({})", self.rank, self.q_label()),
            Family::G2 => format!("G_2({})", self.q_label()),
            Family::F4 => format!("F_4({})", self.q_label()),
            Family::E6 => format!("E_6({})", self.q_label()),
            Family::TwoE6 => format!("2E_6({})", self.q_label()),
            Family::E7 => format!("E_7({})", self.q_label()),
            Family::E8 => format!("E_8({})", self.q_label()),
            Family::ThreeD4 => format!("3D_4({})", self.q_label()),
            Family::TwoB2 => format!("2B_2({})", self.q_label()),
            Family::TwoG2 => format!("2G_2({})", self.q_label()),
            Family::TwoF4 => format!("2F_4({})", self.q_label()),
        }
    }

    /// Collapse isomorphism coincidences to the canonical representative.
    pub fn canonicalize(self) -> GroupSpec {
        let q = self.q_value().to_u64();
        match (self.family, self.rank, q) {
            (Family::A, 1, Some(4)) | (Family::A, 1, Some(5)) => GroupSpec {
                family: Family::Alt,
                rank: 5,
                p: 0,
                k: 0,
            },
            (Family::A, 1, Some(9)) => GroupSpec {
                family: Family::Alt,
                rank: 6,
                p: 0,
                k: 0,
            },
            (Family::A, 2, Some(2)) => GroupSpec {
                family: Family::A,
                rank: 1,
                p: 7,
                k: 1,
            },
            (Family::A, 3, Some(2)) => GroupSpec {
                family: Family::Alt,
                rank: 8,
                p: 0,
                k: 0,
            },
            (Family::B, 2, Some(3)) => GroupSpec {
                family: Family::TwoA,
                rank: 3,
                p: 2,
                k: 1,
            },
            (Family::C, 2, _) => GroupSpec {
                family: Family::B,
                ..self
            },
            (Family::C, _, _) if self.p == 2 => GroupSpec {
                family: Family::B,
                ..self
            },
            (Family::D, 3, _) => GroupSpec {
                family: Family::A,
                ..self
            },
            (Family::TwoD, 3, _) => GroupSpec {
                family: Family::TwoA,
                ..self
            },
            _ => self,
        }
    }

    /// Known isomorphic renamings of this (canonical) group.
    pub fn aliases(&self) -> Vec<String> {
        let q = self.q_value().to_u64();
        match (self.family, self.rank, q) {
            (Family::Alt, 5, _) => vec!["L_2(4)".into(), "L_2(5)".into()],
            (Family::Alt, 6, _) => vec!["L_2(9)".into()],
            (Family::Alt, 8, _) => vec!["L_4(2)".into()],
            (Family::A, 1, Some(7)) => vec!["L_3(2)".into()],
            (Family::TwoA, 3, Some(2)) => vec!["S_4(3)".into(), "B_2(3)".into()],
            (Family::B, r, _) => {
                if r == 2 || self.p == 2 {
                    vec![format!("C_{}({})", r, self.q_label())]
                } else {
                    Vec::new()
                }
            }
            _ => Vec::new(),
        }
    }

    /// Label with isomorphism aliases appended.
    pub fn full_label(&self) -> String {
        let aliases = self.aliases();
        if aliases.is_empty() {
            self.label()
        } else {
            format!("{} (≅ {})", self.label(), aliases.join(" ≅ "))
        }
    }

    /// Order as a plain integer, without factorization.
    pub fn order_value(&self) -> BigUint {
        match self.family {
            Family::Alt => {
                let mut v = BigUint::one();
                for i in 3..=self.rank as u64 {
                    v *= BigUint::from(i);
                }
                v
            }
            Family::Sporadic(i) => SPORADIC[i]
                .factors
                .iter()
                .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e)),
            Family::Tits => TITS_FACTORS
                .iter()
                .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e)),
            Family::ThreeD4 => {
                let q = self.q_value();
                let one = BigUint::one();
                q.pow(12)
                    * (q.pow(8) + q.pow(4) + &one)
                    * (q.pow(6) - &one)
                    * (q.pow(2) - &one)
            }
            _ => {
                let q = self.q_value();
                let mut v = q.pow(q_exponent(self.family, self.rank));
                for (i, sign) in torus_terms(self.family, self.rank) {
                    v *= term_value(&q, i, sign);
                }
                v / order_divisor(self.family, self.rank, &q)
            }
        }
    }

    /// π(|Out|): the primes dividing the outer automorphism group order.
    /// Exact per family (diagonal·field·graph parts).
    pub fn outer_prime_set(&self) -> BTreeSet<u64> {
        fn add_value(out: &mut BTreeSet<u64>, v: u64) {
            if v > 1 {
                if let Ok(f) = FactoredInteger::factorize_u64(v) {
                    for p in f.prime_set_u64().unwrap_or_default() {
                        out.insert(p);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        let q = self.q_value();
        let one = BigUint::one();
        match self.family {
            Family::Alt => {
                out.insert(2);
            }
            Family::Sporadic(i) => {
                if SPORADIC[i].out_has_2 {
                    out.insert(2);
                }
            }
            Family::Tits => {
                out.insert(2);
            }
            Family::A => {
                let d = BigUint::from(self.rank as u64 + 1).gcd(&(&q - &one));
                add_value(&mut out, d.to_u64().unwrap_or(1));
                add_value(&mut out, self.k as u64);
                if self.rank >= 2 {
                    out.insert(2);
                }
            }
            Family::TwoA => {
                let d = BigUint::from(self.rank as u64 + 1).gcd(&(&q + &one));
                add_value(&mut out, d.to_u64().unwrap_or(1));
                add_value(&mut out, 2 * self.k as u64);
            }
            Family::B | Family::C => {
                if self.p != 2 {
                    out.insert(2); // d = 2
                }
                add_value(&mut out, self.k as u64);
                if self.family == Family::B && self.rank == 2 && self.p == 2 {
                    out.insert(2); // exceptional graph automorphism
                }
            }
            Family::D => {
                out.insert(2); // d and the graph part
                if self.rank == 4 {
                    out.insert(3); // triality
                }
                add_value(&mut out, self.k as u64);
            }
            Family::TwoD => {
                out.insert(2);
                add_value(&mut out, 2 * self.k as u64);
            }
            Family::G2 => {
                add_value(&mut out, self.k as u64);
                if self.p == 3 {
                    out.insert(2);
                }
            }
            Family::F4 => {
                add_value(&mut out, self.k as u64);
                if self.p == 2 {
                    out.insert(2);
                }
            }
            Family::E6 => {
                let d = BigUint::from(3u32).gcd(&(&q - &one));
                add_value(&mut out, d.to_u64().unwrap_or(1));
                add_value(&mut out, self.k as u64);
                out.insert(2);
            }
            Family::TwoE6 => {
                let d = BigUint::from(3u32).gcd(&(&q + &one));
                add_value(&mut out, d.to_u64().unwrap_or(1));
                add_value(&mut out, 2 * self.k as u64);
            }
            Family::E7 => {
                if self.p != 2 {
                    out.insert(2);
                }
                add_value(&mut out, self.k as u64);
            }
            Family::E8 => add_value(&mut out, self.k as u64),
            Family::ThreeD4 => add_value(&mut out, 3 * self.k as u64),
            Family::TwoB2 | Family::TwoG2 | Family::TwoF4 => add_value(&mut out, self.k as u64),
        }
        out
    }
}

/// The standard order formula for the family, exactly factored.
pub fn simple_order(spec: &GroupSpec) -> Result<FactoredInteger> {
    match spec.family {
        Family::Alt => {
            // n!/2 via prime exponents of the factorial
            let n = spec.rank as u64;
            let mut factors: Vec<(BigUint, u32)> = Vec::new();
            let mut p = 2u64;
            while p <= n {
                if arith::is_prime_u64(p) {
                    let mut e = 0u32;
                    let mut pk = p;
                    while pk <= n {
                        e += (n / pk) as u32;
                        match pk.checked_mul(p) {
                            Some(v) => pk = v,
                            None => break,
                        }
                    }
                    if p == 2 {
                        e -= 1;
                    }
                    if e > 0 {
                        factors.push((BigUint::from(p), e));
                    }
                }
                p += 1;
            }
            FactoredInteger::from_factors(factors)
        }
        Family::Sporadic(i) => FactoredInteger::from_u64_factors(SPORADIC[i].factors),
        Family::Tits => FactoredInteger::from_u64_factors(TITS_FACTORS),
        Family::ThreeD4 => {
            let q = spec.q_value();
            let one = BigUint::one();
            let mut order =
                FactoredInteger::from_u64_factors(&[(spec.p, 12 * spec.k)])?;
            for v in [
                q.pow(8) + q.pow(4) + &one,
                q.pow(6) - &one,
                q.pow(2) - &one,
            ] {
                order = order.mul(&FactoredInteger::factorize(&v)?);
            }
            Ok(order)
        }
        _ => {
            let q = spec.q_value();
            let mut order = FactoredInteger::from_u64_factors(&[(
                spec.p,
                q_exponent(spec.family, spec.rank) * spec.k,
            )])?;
            for (i, sign) in torus_terms(spec.family, spec.rank) {
                order = order.mul(&FactoredInteger::factorize(&term_value(&q, i, sign))?);
            }
            let d = order_divisor(spec.family, spec.rank, &q);
            order.div_exact(&FactoredInteger::factorize(&d)?)
        }
    }
}

fn push_candidate(
    found: &mut BTreeMap<GroupSpec, BigUint>,
    spec: GroupSpec,
    order: BigUint,
) {
    let canonical = spec.canonicalize();
    found.entry(canonical).or_insert(order);
}

/// All simple groups P with |P| dividing N and every required prime dividing
/// |P| (so required ⊆ π(P) ⊆ π(N)). Deterministic ascending order by
/// (order, label); exhaustive because each family's order grows monotonically
/// in rank and field size. An empty result is valid.
pub fn candidates(n: &FactoredInteger, required: &[u64]) -> Result<Vec<GroupSpec>> {
    let n_val = n.value();
    let allowed = n.prime_set_u64()?;
    for r in required {
        if !allowed.contains(r) {
            return Ok(Vec::new());
        }
    }
    let divides = |order: &BigUint| -> bool {
        !order.is_zero() && (n_val % order).is_zero()
    };
    let wanted = |order: &BigUint| -> bool {
        required
            .iter()
            .all(|&r| (order % BigUint::from(r)).is_zero())
    };
    let mut found: BTreeMap<GroupSpec, BigUint> = BTreeMap::new();

    // alternating: n!/2 divides (n+1)!/2, so stop at the first failure
    let mut alt_order = BigUint::from(60u32);
    let mut deg = 5u32;
    while divides(&alt_order) {
        if wanted(&alt_order) {
            push_candidate(&mut found, GroupSpec::alt(deg)?, alt_order.clone());
        }
        deg += 1;
        alt_order *= BigUint::from(deg);
    }

    // sporadic groups and the Tits group
    for i in 0..SPORADIC.len() {
        let spec = GroupSpec {
            family: Family::Sporadic(i),
            rank: 0,
            p: 0,
            k: 0,
        };
        let order = spec.order_value();
        if divides(&order) && wanted(&order) {
            push_candidate(&mut found, spec, order);
        }
    }
    let tits = GroupSpec {
        family: Family::Tits,
        rank: 0,
        p: 0,
        k: 0,
    };
    let tits_order = tits.order_value();
    if divides(&tits_order) && wanted(&tits_order) {
        push_candidate(&mut found, tits, tits_order);
    }

    // Lie type: the q-part q^R must divide the p'-part of N, which bounds
    // both the field exponent and the rank
    for &p in &allowed {
        let v = n.exponent_u64(p);
        for &family in LIE_FAMILIES {
            let r_min = q_exponent(family, min_rank(family));
            for m in 1..=v {
                if m * r_min > v {
                    break;
                }
                let mut rank = min_rank(family);
                loop {
                    if m * q_exponent(family, rank) > v {
                        break;
                    }
                    let spec = GroupSpec {
                        family,
                        rank,
                        p,
                        k: m,
                    };
                    if spec.satisfies_constraints() {
                        let order = spec.order_value();
                        if divides(&order) && wanted(&order) {
                            push_candidate(&mut found, spec, order);
                        }
                    }
                    if !has_rank(family) {
                        break;
                    }
                    rank += 1;
                }
            }
        }
    }

    let mut out: Vec<(BigUint, String, GroupSpec)> = found
        .into_iter()
        .map(|(spec, order)| (order, spec.label(), spec))
        .collect();
    out.sort();
    Ok(out.into_iter().map(|(_, _, s)| s).collect())
}

/// Cyclotomic index sets: which Φ_j(p) divide q^i ± 1 for q = p^m.
fn divisors_of(x: u64) -> BTreeSet<u64> {
    let mut d = BTreeSet::new();
    let mut i = 1;
    while i * i <= x {
        if x % i == 0 {
            d.insert(i);
            d.insert(x / i);
        }
        i += 1;
    }
    d
}

fn needed_js(family: Family, rank: u32, m: u64) -> BTreeSet<u64> {
    let mut js = BTreeSet::new();
    if family == Family::ThreeD4 {
        // q^8 + q^4 + 1 = (q^12 − 1)/(q^4 − 1), plus (q^6 − 1)(q^2 − 1)
        let twelve: BTreeSet<u64> = divisors_of(12 * m);
        let four = divisors_of(4 * m);
        js.extend(twelve.difference(&four));
        js.extend(divisors_of(6 * m));
        js.extend(divisors_of(2 * m));
        return js;
    }
    for (i, sign) in torus_terms(family, rank) {
        let i = i as u64;
        if sign < 0 {
            js.extend(divisors_of(i * m));
        } else {
            let all = divisors_of(2 * i * m);
            let half = divisors_of(i * m);
            js.extend(all.difference(&half));
        }
    }
    js
}

/// Divide v by allowed primes only; Some(factors) if nothing else remains.
fn factor_over(v: &BigUint, allowed: &[u64]) -> Option<Vec<(u64, u32)>> {
    let mut rem = v.clone();
    let mut factors = Vec::new();
    for &p in allowed {
        let p_big = BigUint::from(p);
        let mut e = 0u32;
        while (&rem % &p_big).is_zero() {
            rem /= &p_big;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    if rem.is_one() {
        Some(factors)
    } else {
        None
    }
}

/// All simple groups of Lie type L(q'), q' = p'^m with p' in the allowed set,
/// such that r ∈ π(L(q')) ⊆ allowed. Follows the per-characteristic
/// multiplicative-order argument: a cyclotomic value Φ_j(p') can contribute
/// only if all its prime factors are allowed, and feasible indices j are
/// limited to multiplicative orders of allowed primes (plus the
/// Bang–Zsigmondy exception indices), which bounds field exponents and ranks.
pub fn lie_with_prime(r: u64, allowed: &BTreeSet<u64>) -> Result<Vec<GroupSpec>> {
    if !allowed.contains(&r) {
        return Err(Error::OutOfRange(format!(
            "prime {} is not in the allowed set",
            r
        )));
    }
    let allowed_vec: Vec<u64> = allowed.iter().copied().collect();
    let mut found: BTreeMap<GroupSpec, BigUint> = BTreeMap::new();

    for &p in &allowed_vec {
        // candidate cyclotomic indices over characteristic p
        let mut j_cands: BTreeSet<u64> = [1u64, 2].into_iter().collect();
        if p == 2 {
            j_cands.insert(6); // Φ_6(2) = 3 has no primitive divisor
        }
        for &s in &allowed_vec {
            if s == p || s == 2 {
                continue;
            }
            if p % s != 0 {
                j_cands.insert(arith::mult_order(p as i64, s)?);
            }
        }
        let mut j_feasible: BTreeSet<u64> = BTreeSet::new();
        for &j in &j_cands {
            let phi = arith::cyclotomic_value(p as i64, j as u32)?;
            let phi_abs = phi.magnitude().clone();
            if arith::strip_prime_parts(&phi_abs, &allowed_vec).is_one() {
                j_feasible.insert(j);
            }
        }
        let max_j = match j_feasible.iter().max() {
            Some(&m) => m,
            None => continue,
        };

        // field exponents: q'−1 divides every order, so all divisors of m
        // must be feasible
        let m_values: Vec<u64> = j_feasible
            .iter()
            .copied()
            .filter(|&m| divisors_of(m).iter().all(|d| j_feasible.contains(d)))
            .collect();

        for &m in &m_values {
            let q = BigUint::from(p).pow(m as u32);
            for &family in LIE_FAMILIES {
                let mut rank = min_rank(family);
                loop {
                    // smallest index the largest torus term needs
                    let needed = needed_js(family, rank, m);
                    if needed.iter().any(|&j| j > max_j) || !needed.is_subset(&j_feasible) {
                        break;
                    }
                    let spec = GroupSpec {
                        family,
                        rank,
                        p,
                        k: m as u32,
                    };
                    if spec.satisfies_constraints() {
                        if let Some(order) = lie_order_over(&spec, &q, &allowed_vec)? {
                            if order.exponent_u64(r) >= 1 {
                                push_candidate(&mut found, spec, order.value().clone());
                            }
                        }
                    }
                    if !has_rank(family) {
                        break;
                    }
                    rank += 1;
                }
            }
        }
    }

    let mut out: Vec<(BigUint, String, GroupSpec)> = found
        .into_iter()
        .map(|(spec, order)| (order, spec.label(), spec))
        .collect();
    out.sort();
    Ok(out.into_iter().map(|(_, _, s)| s).collect())
}

/// Factored order of a Lie-type spec when it is smooth over the allowed
/// primes; None as soon as any torus term leaves the allowed set.
fn lie_order_over(
    spec: &GroupSpec,
    q: &BigUint,
    allowed: &[u64],
) -> Result<Option<FactoredInteger>> {
    let mut order = FactoredInteger::from_u64_factors(&[(
        spec.p,
        q_exponent(spec.family, spec.rank) * spec.k,
    )])?;
    let one = BigUint::one();
    let terms: Vec<BigUint> = if spec.family == Family::ThreeD4 {
        vec![
            q.pow(8) + q.pow(4) + &one,
            q.pow(6) - &one,
            q.pow(2) - &one,
        ]
    } else {
        torus_terms(spec.family, spec.rank)
            .into_iter()
            .map(|(i, sign)| term_value(q, i, sign))
            .collect()
    };
    for t in terms {
        match factor_over(&t, allowed) {
            Some(factors) => {
                order = order.mul(&FactoredInteger::from_u64_factors(&factors)?);
            }
            None => return Ok(None),
        }
    }
    let d = order_divisor(spec.family, spec.rank, q);
    let order = order.div_exact(&FactoredInteger::factorize(&d)?)?;
    Ok(Some(order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{self, UnitaryParams};

    fn lie(f: Family, rank: u32, p: u64, k: u32) -> GroupSpec {
        GroupSpec::lie(f, rank, p, k).unwrap()
    }

    #[test]
    fn l2_7_has_order_168() {
        let spec = lie(Family::A, 1, 7, 1);
        let order = simple_order(&spec).unwrap();
        assert_eq!(order.value().to_u64().unwrap(), 168);
        assert_eq!(spec.label(), "L_2(7)");
    }

    #[test]
    fn u4_2_matches_unitary_module() {
        let spec = lie(Family::TwoA, 3, 2, 1);
        let from_catalog = simple_order(&spec).unwrap();
        let params = UnitaryParams::u4(2, 1).unwrap();
        let from_unitary = unitary::order_u(&params).unwrap();
        assert_eq!(from_catalog, from_unitary);
    }

    #[test]
    fn b2_59_divides_u4_59() {
        let b2 = simple_order(&lie(Family::B, 2, 59, 1)).unwrap();
        let u4 = unitary::order_u(&UnitaryParams::u4(59, 1).unwrap()).unwrap();
        assert!(b2.divides(&u4));
        // (1/2)·59^4·(59^2−1)(59^4−1)
        let expect = BigUint::from(59u64).pow(4)
            * BigUint::from(59u64 * 59 - 1)
            * (BigUint::from(59u64).pow(4) - BigUint::one())
            / BigUint::from(2u32);
        assert_eq!(b2.value(), &expect);
    }

    #[test]
    fn m11_is_7920() {
        let m11 = GroupSpec::sporadic("M_11").unwrap();
        assert_eq!(m11.order_value().to_u64().unwrap(), 7920);
    }

    #[test]
    fn sporadic_prime_sets_contain_their_largest_prime() {
        for i in 0..SPORADIC.len() {
            let spec = GroupSpec {
                family: Family::Sporadic(i),
                rank: 0,
                p: 0,
                k: 0,
            };
            let order = simple_order(&spec).unwrap();
            let primes = order.prime_set_u64().unwrap();
            let largest = SPORADIC[i].factors.iter().map(|&(p, _)| p).max().unwrap();
            assert_eq!(*primes.last().unwrap(), largest, "{}", SPORADIC[i].name);
            order.check_invariants().unwrap();
        }
    }

    #[test]
    fn candidates_for_60_is_alt5() {
        let n = FactoredInteger::factorize_u64(60).unwrap();
        let c = candidates(&n, &[5]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].family, Family::Alt);
        assert_eq!(c[0].rank, 5);
        assert_eq!(c[0].full_label(), "A_5 (≅ L_2(4) ≅ L_2(5))");
    }

    #[test]
    fn candidates_u3_31_with_7_19() {
        let params = UnitaryParams::u3(31, 1).unwrap();
        let n = unitary::order_u(&params).unwrap();
        let c = candidates(&n, &[7, 19]).unwrap();
        assert_eq!(c.len(), 1, "got {:?}", c.iter().map(|s| s.label()).collect::<Vec<_>>());
        assert_eq!(c[0].label(), "U_3(31)");
    }

    #[test]
    fn candidates_u4_9_with_41_73() {
        let params = UnitaryParams::u4(3, 2).unwrap();
        let n = unitary::order_u(&params).unwrap();
        let c = candidates(&n, &[41, 73]).unwrap();
        assert_eq!(c.len(), 1, "got {:?}", c.iter().map(|s| s.label()).collect::<Vec<_>>());
        assert_eq!(c[0].label(), "U_4(3^2)");
    }

    #[test]
    fn candidates_is_deterministic_and_orders_divide() {
        let n = unitary::order_u(&UnitaryParams::u4(5, 1).unwrap()).unwrap();
        let a = candidates(&n, &[]).unwrap();
        let b = candidates(&n, &[]).unwrap();
        assert_eq!(a, b);
        for spec in &a {
            let order = simple_order(spec).unwrap();
            assert!(
                order.divides(&n),
                "{} has order {} not dividing",
                spec.label(),
                order
            );
        }
        // the target itself always appears
        assert!(a.iter().any(|s| s.label() == "U_4(5)"));
    }

    #[test]
    fn candidates_with_prime_outside_allowed_is_empty() {
        let n = FactoredInteger::factorize_u64(60).unwrap();
        assert!(candidates(&n, &[41]).unwrap().is_empty());
    }

    #[test]
    fn canonicalization_collapses_coincidences() {
        assert_eq!(
            GroupSpec { family: Family::A, rank: 1, p: 2, k: 2 }.canonicalize(),
            GroupSpec::alt(5).unwrap()
        );
        assert_eq!(
            GroupSpec { family: Family::A, rank: 3, p: 2, k: 1 }.canonicalize(),
            GroupSpec::alt(8).unwrap()
        );
        let b23 = GroupSpec { family: Family::B, rank: 2, p: 3, k: 1 }.canonicalize();
        assert_eq!(b23.label(), "U_4(2)");
        let c2 = GroupSpec { family: Family::C, rank: 2, p: 7, k: 1 }.canonicalize();
        assert_eq!(c2.label(), "B_2(7)");
    }

    #[test]
    fn lie_scan_case_q49_r1201() {
        let params = UnitaryParams::u4(7, 2).unwrap();
        let order = unitary::order_u(&params).unwrap();
        let allowed: BTreeSet<u64> = order.prime_set_u64().unwrap().into_iter().collect();
        let found = lie_with_prime(1201, &allowed).unwrap();
        let labels: Vec<String> = found.iter().map(|s| s.label()).collect();
        assert_eq!(labels, vec!["L_2(7^4)", "B_2(7^2)", "U_4(7^2)"]);
    }

    #[test]
    fn lie_scan_rejects_prime_outside_allowed() {
        let allowed: BTreeSet<u64> = [2u64, 3, 5].into_iter().collect();
        assert!(lie_with_prime(7, &allowed).is_err());
    }

    #[test]
    fn outer_prime_sets() {
        // L_2(7^4): |Out| = 2·4 → {2}
        assert_eq!(
            lie(Family::A, 1, 7, 4).outer_prime_set(),
            [2u64].into_iter().collect::<BTreeSet<_>>()
        );
        // B_2(7^2): |Out| = 2·2 → {2}
        assert_eq!(
            lie(Family::B, 2, 7, 2).outer_prime_set(),
            [2u64].into_iter().collect::<BTreeSet<_>>()
        );
        // U_3(83): d = 3, field part 2 → {2, 3}
        assert_eq!(
            lie(Family::TwoA, 2, 83, 1).outer_prime_set(),
            [2u64, 3].into_iter().collect::<BTreeSet<_>>()
        );
        // A_7 → {2}
        assert_eq!(
            GroupSpec::alt(7).unwrap().outer_prime_set(),
            [2u64].into_iter().collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn alternating_orders() {
        assert_eq!(
            simple_order(&GroupSpec::alt(5).unwrap()).unwrap().value(),
            &BigUint::from(60u32)
        );
        assert_eq!(
            simple_order(&GroupSpec::alt(8).unwrap()).unwrap().value(),
            &BigUint::from(20160u32)
        );
        assert!(GroupSpec::alt(4).is_err());
    }

    #[test]
    fn twisted_family_constraints() {
        assert!(GroupSpec::lie(Family::TwoB2, 0, 2, 3).is_ok());
        assert!(GroupSpec::lie(Family::TwoB2, 0, 2, 2).is_err());
        assert!(GroupSpec::lie(Family::TwoB2, 0, 3, 3).is_err());
        assert!(GroupSpec::lie(Family::TwoG2, 0, 3, 3).is_ok());
        assert!(GroupSpec::lie(Family::A, 1, 2, 1).is_err()); // L_2(2) solvable
        assert!(GroupSpec::lie(Family::TwoA, 2, 2, 1).is_err()); // U_3(2)
    }

    #[test]
    fn suzuki_order_formula() {
        // |2B_2(8)| = 8^2·(8^2+1)·(8−1) = 29120
        let sz8 = lie(Family::TwoB2, 0, 2, 3);
        assert_eq!(sz8.order_value().to_u64().unwrap(), 29120);
    }
}
