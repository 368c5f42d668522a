//! Orders, spectra and maximal-order μ-sets of the projective special
//! unitary groups U_n(q), together with their order components.
//!
//! The order is |U_n(q)| = (1/d)·q^C(n,2)·∏_{i=2}^{n} (q^i − (−1)^i) with
//! d = (n, q+1). The spectrum enumeration generates the six families of
//! maximal element orders (torus lcm-values and p-power mixed classes) and
//! reduces to divisibility-maximal elements; the closed-form μ-sets for
//! U_3(q) and U_4(q) are implemented separately so the two routes can be
//! checked against each other.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{self, FactoredInteger};
use crate::error::{Error, Result};
use crate::graph;

/// Identifies U_n(q) by dimension n, characteristic p and field exponent k
/// (q = p^k). The characteristic is always explicit so q = 64 cannot be
/// misread as 4^3. d = gcd(n, q+1) is precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitaryParams {
    n: u32,
    p: u64,
    k: u32,
    q: u64,
    d: u64,
}

impl UnitaryParams {
    /// Validated constructor. Rejects non-prime p, overflowing q, n < 2 and
    /// the non-simple groups U_2(2), U_2(3), U_3(2).
    pub fn new(n: u32, p: u64, k: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("dimension n = {} < 2", n)));
        }
        if k == 0 {
            return Err(Error::InvalidParams("field exponent k = 0".into()));
        }
        if !arith::is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let q = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or(
            Error::InvalidParams(format!("q = {}^{} overflows u64", p, k)),
        )?;
        if matches!((n, q), (2, 2) | (2, 3) | (3, 2)) {
            return Err(Error::NotSimple { n, q });
        }
        let d = (n as u64).gcd(&(q + 1));
        Ok(UnitaryParams { n, p, k, q, d })
    }

    /// U_3(q) parameters.
    pub fn u3(p: u64, k: u32) -> Result<Self> {
        Self::new(3, p, k)
    }

    /// U_4(q) parameters.
    pub fn u4(p: u64, k: u32) -> Result<Self> {
        Self::new(4, p, k)
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// d = gcd(n, q+1), the center order divided out of SU_n(q).
    pub fn d(&self) -> u64 {
        self.d
    }

    /// Display name, e.g. "U_4(49)".
    pub fn label(&self) -> String {
        format!("U_{}({})", self.n, self.q)
    }

    /// q rendered as `p^k` when k > 1, else just p.
    pub fn q_label(&self) -> String {
        if self.k == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.k)
        }
    }

    /// q^i − (−1)^i as an exact big integer.
    fn torus_term(&self, i: u32) -> BigUint {
        let qi = BigUint::from(self.q).pow(i);
        if i % 2 == 0 {
            qi - BigUint::one()
        } else {
            qi + BigUint::one()
        }
    }
}

/// The set μ(G) of divisibility-maximal element orders, as factored
/// integers in ascending order. `complete` records that every element order
/// of the group divides some member (true for every constructor here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    mu: Vec<FactoredInteger>,
    complete: bool,
}

impl Spectrum {
    /// Reduce a set of generated orders to its divisibility-maximal elements.
    pub fn from_generators(values: Vec<FactoredInteger>) -> Self {
        let mut values = values;
        values.sort();
        values.dedup();
        let mut mu = Vec::new();
        'outer: for (i, v) in values.iter().enumerate() {
            for (j, w) in values.iter().enumerate() {
                if i != j && v.divides(w) {
                    continue 'outer;
                }
            }
            mu.push(v.clone());
        }
        mu.sort();
        let s = Spectrum { mu, complete: true };
        debug_assert!(s.check_maximality().is_ok());
        s
    }

    pub fn mu(&self) -> &[FactoredInteger] {
        &self.mu
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Values as plain integers, ascending.
    pub fn values(&self) -> Vec<BigUint> {
        self.mu.iter().map(|m| m.value().clone()).collect()
    }

    /// No element of μ divides another element of μ.
    pub fn check_maximality(&self) -> Result<()> {
        for (i, a) in self.mu.iter().enumerate() {
            for (j, b) in self.mu.iter().enumerate() {
                if i != j && a.divides(b) {
                    return Err(Error::Inconsistent(format!(
                        "spectrum not maximal: {} divides {}",
                        a, b
                    )));
                }
            }
        }
        Ok(())
    }
}

/// |U_n(q)| = (1/d)·q^C(n,2)·∏_{i=2}^{n}(q^i − (−1)^i), fully factored.
pub fn order_u(params: &UnitaryParams) -> Result<FactoredInteger> {
    let n = params.n;
    let choose2 = n * (n - 1) / 2;
    let q_part = FactoredInteger::from_u64_factors(&[(params.p, params.k * choose2)])?;
    let mut order = q_part;
    for i in 2..=n {
        let term = FactoredInteger::factorize(&params.torus_term(i))?;
        order = order.mul(&term);
    }
    let d = FactoredInteger::factorize_u64(params.d)?;
    order.div_exact(&d)
}

fn exact_div(value: &BigUint, divisor: &BigUint) -> Result<BigUint> {
    let (q, r) = value.div_rem(divisor);
    if !num_traits::Zero::is_zero(&r) {
        return Err(Error::Inconsistent(format!(
            "expected exact division: {} / {}",
            value, divisor
        )));
    }
    Ok(q)
}

/// All multisets of positive integers with the given sum and at least
/// `min_parts` parts; parts are nonincreasing within each multiset.
fn partitions_with_min_parts(sum: u32, min_parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, min_parts: usize) {
        if rest == 0 {
            if cur.len() >= min_parts {
                out.push(cur.clone());
            }
            return;
        }
        let mut part = max.min(rest);
        while part >= 1 {
            cur.push(part);
            rec(rest - part, part, cur, out, min_parts);
            cur.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(sum, sum, &mut Vec::new(), &mut out, min_parts);
    out
}

/// The full spectrum of U_n(q) by direct enumeration of the six generator
/// families, reduced to divisibility-maximal elements.
///
/// Families: (1) (q^n − (−1)^n)/(d(q+1)); (2) lcm over two-part compositions
/// divided by gcd(n/(n1,n2), q+1); (3) lcm over compositions into s ≥ 3
/// parts; (4) p^k'·(q^{n1} − (−1)^{n1})/d with p^{k'−1} + 1 + n1 = n;
/// (5) p^k'·lcm over s ≥ 2 parts with p^{k'−1} + 1 + Σ n_i = n; (6) p^k'
/// with p^{k'−1} + 1 = n. Compositions are treated as multisets since only
/// the lcm matters.
pub fn spectrum_u(params: &UnitaryParams) -> Result<Spectrum> {
    let n = params.n;
    let q = BigUint::from(params.q);
    let d = BigUint::from(params.d);
    let mut gens: Vec<BigUint> = Vec::new();

    // (1) (q^n − (−1)^n) / (d(q+1))
    let denom = &d * (&q + BigUint::one());
    gens.push(exact_div(&params.torus_term(n), &denom)?);

    // (2) two-part compositions
    for n1 in 1..n {
        let n2 = n - n1;
        if n1 > n2 {
            break;
        }
        let l = params.torus_term(n1).lcm(&params.torus_term(n2));
        let g = n1.gcd(&n2);
        debug_assert_eq!(n % g, 0);
        let divisor = BigUint::from((n / g) as u64).gcd(&(&q + BigUint::one()));
        gens.push(exact_div(&l, &divisor)?);
    }

    // (3) compositions into s >= 3 parts
    for parts in partitions_with_min_parts(n, 3) {
        let l = parts
            .iter()
            .fold(BigUint::one(), |acc, &i| acc.lcm(&params.torus_term(i)));
        gens.push(l);
    }

    // (4)–(6): classes with a p-power part; p^(k'−1) + 1 + (rest) = n
    let p = params.p;
    let mut pk1 = 1u64; // p^(k'−1)
    let mut kp = 1u32; // k'
    while pk1 + 1 <= n as u64 {
        let rest = n as u64 - 1 - pk1;
        let p_pow = BigUint::from(p).pow(kp);
        if rest == 0 {
            // (6) p^k' alone
            gens.push(p_pow.clone());
        } else {
            // (4) single part
            gens.push(&p_pow * exact_div(&params.torus_term(rest as u32), &d)?);
            // (5) s >= 2 parts
            for parts in partitions_with_min_parts(rest as u32, 2) {
                let l = parts
                    .iter()
                    .fold(BigUint::one(), |acc, &i| acc.lcm(&params.torus_term(i)));
                gens.push(&p_pow * l);
            }
        }
        pk1 = match pk1.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
        kp += 1;
    }

    let factored = gens
        .iter()
        .map(FactoredInteger::factorize)
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::from_generators(factored))
}

/// μ(U_3(q)) in closed form: four cases by parity of q and q mod 3, reduced
/// to a maximal set. q = 2 is rejected by the parameter constructor.
pub fn mu_u3(params: &UnitaryParams) -> Result<Spectrum> {
    if params.n != 3 {
        return Err(Error::InvalidParams(format!(
            "mu_u3 called with n = {}",
            params.n
        )));
    }
    let q = params.q;
    let p = params.p;
    let q_big = BigUint::from(q);
    let phi6 = &q_big * &q_big - &q_big + BigUint::one(); // q^2 − q + 1
    let q2m1 = &q_big * &q_big - BigUint::one();
    let qp1 = &q_big + BigUint::one();
    let three = BigUint::from(3u32);
    let q_is_minus1_mod3 = q % 3 == 2;
    let mut gens: Vec<BigUint> = Vec::new();
    if q % 2 == 1 {
        if !q_is_minus1_mod3 {
            gens.push(phi6);
            gens.push(q2m1);
            gens.push(BigUint::from(p) * &qp1);
        } else {
            gens.push(exact_div(&phi6, &three)?);
            gens.push(exact_div(&q2m1, &three)?);
            gens.push(exact_div(&(BigUint::from(p) * &qp1), &three)?);
            gens.push(qp1.clone());
        }
    } else if !q_is_minus1_mod3 {
        gens.push(phi6);
        gens.push(q2m1);
        gens.push(BigUint::from(2u32) * &qp1);
        gens.push(BigUint::from(4u32));
    } else {
        gens.push(exact_div(&phi6, &three)?);
        gens.push(exact_div(&q2m1, &three)?);
        gens.push(exact_div(&(BigUint::from(2u32) * &qp1), &three)?);
        gens.push(qp1.clone());
        gens.push(BigUint::from(4u32));
    }
    let factored = gens
        .iter()
        .map(FactoredInteger::factorize)
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::from_generators(factored))
}

/// μ(U_4(q)) in closed form. For odd q (d = (4, q+1)):
/// {(q−1)(q²+1)/d, (q³+1)/d, p(q²−1)/d, q²−1}, plus p(q+1) iff d = 4, plus 9
/// iff p = 3. For q = 2^m, m ≥ 2: {(q−1)(q²+1), q³+1, 2(q²−1), 4(q+1)}; for
/// q = 2: {5, 9, 12}. Reduced to a maximal set.
pub fn mu_u4(params: &UnitaryParams) -> Result<Spectrum> {
    if params.n != 4 {
        return Err(Error::InvalidParams(format!(
            "mu_u4 called with n = {}",
            params.n
        )));
    }
    let q = params.q;
    let p = params.p;
    if q == 2 {
        let gens = [5u64, 9, 12]
            .iter()
            .map(|&v| FactoredInteger::factorize_u64(v))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Spectrum::from_generators(gens));
    }
    let q_big = BigUint::from(q);
    let one = BigUint::one();
    let q2p1 = &q_big * &q_big + &one;
    let q2m1 = &q_big * &q_big - &one;
    let q3p1 = q_big.pow(3) + &one;
    let qp1 = &q_big + &one;
    let d = BigUint::from(params.d);
    let mut gens: Vec<BigUint> = Vec::new();
    if q % 2 == 1 {
        gens.push(exact_div(&((&q_big - &one) * &q2p1), &d)?);
        gens.push(exact_div(&q3p1, &d)?);
        gens.push(exact_div(&(BigUint::from(p) * &q2m1), &d)?);
        gens.push(q2m1.clone());
        if params.d == 4 {
            gens.push(BigUint::from(p) * &qp1);
        }
        if p == 3 {
            gens.push(BigUint::from(9u32));
        }
    } else {
        gens.push((&q_big - &one) * &q2p1);
        gens.push(q3p1);
        gens.push(BigUint::from(2u32) * &q2m1);
        gens.push(BigUint::from(4u32) * &qp1);
    }
    let factored = gens
        .iter()
        .map(FactoredInteger::factorize)
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::from_generators(factored))
}

/// Order components m_1, …, m_{s(G)}: coprime factors of |G| whose prime
/// sets are the connected components of GK(G). The component containing 2
/// comes first, the rest ascend by smallest prime.
pub fn order_components(
    order: &FactoredInteger,
    spectrum: &Spectrum,
) -> Result<Vec<FactoredInteger>> {
    let gk = graph::build_gk(spectrum, order)?;
    let comps = gk.components();
    let mut out = Vec::with_capacity(comps.len());
    for comp in comps {
        let mut factors = Vec::new();
        for p in comp {
            let p_big = BigUint::from(p);
            let e = order.exponent(&p_big);
            debug_assert!(e > 0);
            factors.push((p_big, e));
        }
        out.push(FactoredInteger::from_factors(factors)?);
    }
    let prod = out
        .iter()
        .fold(FactoredInteger::one(), |acc, m| acc.mul(m));
    if prod != *order {
        return Err(Error::Inconsistent(
            "order components do not multiply to the order".into(),
        ));
    }
    Ok(out)
}

/// Classify a vertex r of GK(U_n(q)) by e(r, q); the characteristic p is
/// reported as class 0. Used for the compact-form figure grouping.
pub fn vertex_class(params: &UnitaryParams, r: u64) -> Result<u64> {
    if r == params.p {
        return Ok(0);
    }
    arith::e_of(r, params.q as i64)
}

/// Compact-form grouping of GK(U_3(q)) / GK(U_4(q)) vertices following the
/// figure conventions: the designated primes (2 and 3 for U_3, 2 when
/// (q+1)_(2) = 4 for U_4, and the characteristic p) stay separate; the
/// remaining vertices merge by e(r, q) class. Returns (label, members) with
/// members ascending, groups ordered by their smallest member.
pub fn compact_classes(
    params: &UnitaryParams,
    gk: &graph::PrimeGraph,
) -> Result<Vec<(String, Vec<u64>)>> {
    let n = params.n;
    if n != 3 && n != 4 {
        return Err(Error::InvalidParams(
            "compact classes defined for U_3 and U_4 only".into(),
        ));
    }
    let qp1_2part = arith::r_part_u64(params.q + 1, 2).unwrap_or(1);
    let mut singles: Vec<u64> = vec![params.p];
    if n == 3 {
        singles.push(2);
        singles.push(3);
    } else if params.q % 2 == 1 && qp1_2part == 4 {
        singles.push(2);
    }
    singles.sort_unstable();
    singles.dedup();

    let mut grouped: std::collections::BTreeMap<u64, Vec<u64>> = std::collections::BTreeMap::new();
    for &v in gk.vertices() {
        if singles.contains(&v) {
            continue;
        }
        let class = vertex_class(params, v)?;
        grouped.entry(class).or_default().push(v);
    }
    let mut out: Vec<(String, Vec<u64>)> = Vec::new();
    for &s in &singles {
        if gk.vertices().contains(&s) {
            out.push((s.to_string(), vec![s]));
        }
    }
    for (class, members) in grouped {
        let name = match (n, class) {
            (3, 1) => "U1".to_string(),
            (3, 2) => "U2".to_string(),
            (3, 6) => "U3".to_string(),
            (4, e) => format!("R{}", e),
            (_, e) => format!("C{}", e),
        };
        out.push((name, members));
    }
    out.sort_by_key(|(_, m)| m[0]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn u(n: u32, p: u64, k: u32) -> UnitaryParams {
        UnitaryParams::new(n, p, k).unwrap()
    }

    #[test]
    fn rejects_non_simple_parameters() {
        assert_eq!(
            UnitaryParams::new(3, 2, 1),
            Err(Error::NotSimple { n: 3, q: 2 })
        );
        assert_eq!(
            UnitaryParams::new(2, 3, 1),
            Err(Error::NotSimple { n: 2, q: 3 })
        );
        assert!(UnitaryParams::new(4, 2, 1).is_ok());
        assert!(UnitaryParams::new(3, 4, 1).is_err()); // 4 not prime
    }

    #[test]
    fn order_u4_2_is_25920() {
        let o = order_u(&u(4, 2, 1)).unwrap();
        assert_eq!(o.to_string(), "2^6·3^4·5");
        assert_eq!(o.value().to_u64().unwrap(), 25920);
    }

    #[test]
    fn order_u3_31_matches_table() {
        let o = order_u(&u(3, 31, 1)).unwrap();
        assert_eq!(o.to_string(), "2^11·3·5·7^2·19·31^3");
    }

    #[test]
    fn order_u4_49_matches_table() {
        let o = order_u(&u(4, 7, 2)).unwrap();
        assert_eq!(o.to_string(), "2^11·3^2·5^6·7^12·13·181·1201");
    }

    #[test]
    fn spectrum_u4_2_is_5_9_12() {
        let s = spectrum_u(&u(4, 2, 1)).unwrap();
        let vals: Vec<u64> = s.values().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(vals, vec![5, 9, 12]);
    }

    #[test]
    fn mu_u3_31_matches_table() {
        let s = mu_u3(&u(3, 31, 1)).unwrap();
        let vals: Vec<u64> = s.values().iter().map(|v| v.to_u64().unwrap()).collect();
        // 7^2·19 = 931, 2^6·3·5 = 960, 2^5·31 = 992
        assert_eq!(vals, vec![931, 960, 992]);
    }

    #[test]
    fn mu_u3_37_matches_table() {
        let s = mu_u3(&u(3, 37, 1)).unwrap();
        let strings: Vec<String> = s.mu().iter().map(|m| m.to_string()).collect();
        assert_eq!(strings, vec!["31·43", "2^3·3^2·19", "2·19·37"]);
    }

    #[test]
    fn mu_u3_89_has_four_elements() {
        let s = mu_u3(&u(3, 89, 1)).unwrap();
        let strings: Vec<String> = s.mu().iter().map(|m| m.to_string()).collect();
        assert_eq!(strings, vec!["2·3^2·5", "7·373", "2^4·3·5·11", "2·3·5·89"]);
    }

    #[test]
    fn mu_u3_64_includes_the_even_q_four() {
        let s = mu_u3(&u(3, 2, 6)).unwrap();
        let vals: Vec<u64> = s.values().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(vals, vec![4, 130, 4033, 4095]);
    }

    #[test]
    fn mu_u4_2_and_3() {
        let s2 = mu_u4(&u(4, 2, 1)).unwrap();
        let vals: Vec<u64> = s2.values().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(vals, vec![5, 9, 12]);

        // q = 3: 9 present (p = 3), p(q+1) = 12 present (d = 4), 6 absorbed
        let s3 = mu_u4(&u(4, 3, 1)).unwrap();
        let vals: Vec<u64> = s3.values().iter().map(|v| v.to_u64().unwrap()).collect();
        assert_eq!(vals, vec![5, 7, 8, 9, 12]);
    }

    #[test]
    fn mu_u4_49_prime_set() {
        let s = mu_u4(&u(4, 7, 2)).unwrap();
        let mut primes: Vec<u64> = Vec::new();
        for m in s.mu() {
            primes.extend(m.prime_set_u64().unwrap());
        }
        primes.sort_unstable();
        primes.dedup();
        assert_eq!(primes, vec![2, 3, 5, 7, 13, 181, 1201]);
    }

    #[test]
    fn mu_matches_spectrum_for_sample_q() {
        for &(p, k) in &[(3u64, 1u32), (5, 1), (7, 2), (2, 6), (89, 1), (3, 4)] {
            let params = u(3, p, k);
            assert_eq!(
                mu_u3(&params).unwrap(),
                spectrum_u(&params).unwrap(),
                "mu_u3 vs spectrum for q = {}",
                params.q()
            );
            let params4 = u(4, p, k);
            assert_eq!(
                mu_u4(&params4).unwrap(),
                spectrum_u(&params4).unwrap(),
                "mu_u4 vs spectrum for q = {}",
                params4.q()
            );
        }
    }

    #[test]
    fn spectrum_u2_matches_l2() {
        // U_2(q) ≅ L_2(q): μ(L_2(q)) = maximal divisors of
        // {p, (q−1)/(2,q−1), (q+1)/(2,q−1)}
        for &(p, k) in &[(5u64, 1u32), (7, 1), (2, 3), (3, 2), (13, 1)] {
            let params = u(2, p, k);
            let q = params.q();
            let e = if q % 2 == 0 { 1 } else { 2 };
            let gens = vec![
                FactoredInteger::factorize_u64(p).unwrap(),
                FactoredInteger::factorize_u64((q - 1) / e).unwrap(),
                FactoredInteger::factorize_u64((q + 1) / e).unwrap(),
            ];
            let expected = Spectrum::from_generators(gens);
            assert_eq!(spectrum_u(&params).unwrap(), expected, "q = {}", q);
        }
    }

    #[test]
    fn every_mu_element_divides_order() {
        for &(p, k) in &[(31u64, 1u32), (7, 2), (2, 6), (97, 1)] {
            let params = u(3, p, k);
            let order = order_u(&params).unwrap();
            for m in mu_u3(&params).unwrap().mu() {
                assert!(m.divides(&order), "{} | {}", m, order);
            }
        }
    }

    #[test]
    fn order_components_u3_31() {
        let params = u(3, 31, 1);
        let order = order_u(&params).unwrap();
        let mu = mu_u3(&params).unwrap();
        let comps = order_components(&order, &mu).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_string(), "2^11·3·5·31^3");
        assert_eq!(comps[1].to_string(), "7^2·19");
    }

    #[test]
    fn order_components_u4_5_single() {
        let params = u(4, 5, 1);
        let order = order_u(&params).unwrap();
        let mu = mu_u4(&params).unwrap();
        let comps = order_components(&order, &mu).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0], order);
    }

    #[test]
    fn order_components_u4_3_three() {
        let params = u(4, 3, 1);
        let order = order_u(&params).unwrap();
        let mu = mu_u4(&params).unwrap();
        let comps = order_components(&order, &mu).unwrap();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[1].to_string(), "5");
        assert_eq!(comps[2].to_string(), "7");
    }

    #[test]
    fn partitions_enumerate_multisets() {
        let parts = partitions_with_min_parts(4, 3);
        assert_eq!(parts, vec![vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }
}
