//! Exact integer arithmetic: factorization, multiplicative orders, r-parts
//! and primitive prime divisors with the Bang–Zsigmondy exception list.
//!
//! Every public operation returns factored integers (or plain primes), never
//! bare values, so downstream prime-set queries are free. All values are
//! immutable after construction and the functions are pure, so unrestricted
//! concurrent use is safe.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Trial-division bound. Every number in scope is a product of q^i ± 1 for
/// q ≤ 97, so primes below this bound split all of them in milliseconds.
const SIEVE_BOUND: usize = 1_000_000;

fn sieve() -> &'static [u32] {
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut is_comp = vec![false; SIEVE_BOUND + 1];
        let mut primes = Vec::with_capacity(80_000);
        for p in 2..=SIEVE_BOUND {
            if !is_comp[p] {
                primes.push(p as u32);
                let mut m = p * p;
                while m <= SIEVE_BOUND {
                    is_comp[m] = true;
                    m += p;
                }
            }
        }
        primes
    })
}

// ---- u64 modular primitives ----

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64: the witness set {2, 3, 5, 7, 11, 13,
/// 17, 19, 23, 29, 31, 37} decides primality for every n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test for arbitrary-precision integers. Below 2^64 this is the
/// deterministic u64 test; above, a strong probable-prime test over the first
/// 20 prime bases (deterministic for n < 3.3·10^24, far beyond the factors
/// arising from q^i ± 1 in scope).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &[
        2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor of a
/// composite n > 3 that is not a prime power of 2.
fn brent_rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut saved = 2u64;
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            saved = y;
            d = x.abs_diff(y).gcd(&n);
            count += 1;
            if count > 1 << 26 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        // cycle hit a multiple of n or stalled; retry with a new constant
        let _ = saved;
        c += 1;
    }
}

/// Brent's cycle-finding rho with batched gcds (one gcd per 128 squarings).
fn brent_rho_big(n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        return BigUint::from(brent_rho_u64(small));
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        'outer: while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            if r > 1 << 40 {
                break 'outer;
            }
        }
        if &g == n {
            // backtrack one step at a time
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                if diff.is_zero() {
                    break;
                }
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return g;
        }
        c += &one;
    }
}

fn factor_u64_into(mut n: u64, out: &mut Vec<(BigUint, u32)>) {
    debug_assert!(n >= 1);
    for &p in sieve() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((BigUint::from(p), e));
        }
    }
    if n > 1 {
        if is_prime_u64(n) {
            out.push((BigUint::from(n), 1));
        } else {
            // beyond the sieve with no prime certificate: split recursively
            let d = brent_rho_u64(n);
            factor_u64_into(d, out);
            factor_u64_into(n / d, out);
        }
    }
}

fn factor_big_into(n: &BigUint, out: &mut Vec<(BigUint, u32)>) {
    if let Some(small) = n.to_u64() {
        factor_u64_into(small, out);
        return;
    }
    // trial division by small primes only; rho recovers medium factors far
    // faster than scanning the rest of the sieve against a wide remainder
    let mut rem = n.clone();
    for &p in sieve().iter().take_while(|&&p| p < 10_000) {
        let p_big = BigUint::from(p);
        if (&rem % &p_big).is_zero() {
            let mut e = 0;
            while (&rem % &p_big).is_zero() {
                rem /= &p_big;
                e += 1;
            }
            out.push((p_big, e));
            if let Some(small) = rem.to_u64() {
                if small > 1 {
                    factor_u64_into(small, out);
                }
                return;
            }
        }
    }
    if rem.is_one() {
        return;
    }
    if is_prime(&rem) {
        out.push((rem, 1));
        return;
    }
    let d = brent_rho_big(&rem);
    factor_big_into(&d, out);
    factor_big_into(&(rem / &d), out);
}

fn normalize(mut factors: Vec<(BigUint, u32)>) -> Vec<(BigUint, u32)> {
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        if e == 0 {
            continue;
        }
        match merged.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

// ---- FactoredInteger ----

/// An exact positive integer carried together with its full prime
/// factorization. Invariants: the product of prime^exponent equals the value,
/// primes are strictly ascending and pass a primality check, exponents are
/// ≥ 1, and the value is 1 exactly when the factor list is empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FactoredInteger {
    #[serde(serialize_with = "serialize_biguint")]
    value: BigUint,
    #[serde(serialize_with = "serialize_factors")]
    factors: Vec<(BigUint, u32)>,
}

fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn serialize_factors<S: serde::Serializer>(
    f: &[(BigUint, u32)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (p, e) in f {
        seq.serialize_element(&(p.to_string(), e))?;
    }
    seq.end()
}

impl FactoredInteger {
    /// The multiplicative identity: value 1, empty factorization.
    pub fn one() -> Self {
        FactoredInteger {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Factorize a positive integer. Trial division by primes below 10^6,
    /// then Brent–Pollard rho with primality certification for survivors.
    /// Deterministic; rejects zero.
    pub fn factorize(n: &BigUint) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::ZeroValue);
        }
        let mut factors = Vec::new();
        factor_big_into(n, &mut factors);
        Ok(FactoredInteger {
            value: n.clone(),
            factors: normalize(factors),
        })
    }

    /// Factorize a u64.
    pub fn factorize_u64(n: u64) -> Result<Self> {
        Self::factorize(&BigUint::from(n))
    }

    /// Rebuild from a prime-exponent list, validating every invariant.
    pub fn from_factors(factors: Vec<(BigUint, u32)>) -> Result<Self> {
        let factors = normalize(factors);
        let mut value = BigUint::one();
        for (p, e) in &factors {
            if !is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            value *= p.pow(*e);
        }
        Ok(FactoredInteger { value, factors })
    }

    /// Construct from (prime, exponent) pairs in u64 form; used for embedded
    /// table constants where primes are known small.
    pub fn from_u64_factors(factors: &[(u64, u32)]) -> Result<Self> {
        Self::from_factors(
            factors
                .iter()
                .map(|&(p, e)| (BigUint::from(p), e))
                .collect(),
        )
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// π(n): the set of prime divisors, ascending.
    pub fn prime_set(&self) -> Vec<BigUint> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    /// π(n) as u64 primes. Errors only if a prime exceeds u64, which cannot
    /// happen for the unitary orders in scope.
    pub fn prime_set_u64(&self) -> Result<Vec<u64>> {
        self.factors
            .iter()
            .map(|(p, _)| {
                p.to_u64()
                    .ok_or_else(|| Error::InvalidParams(format!("prime {} exceeds u64", p)))
            })
            .collect()
    }

    /// Exponent of the prime p in this integer (0 if absent).
    pub fn exponent(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn exponent_u64(&self, p: u64) -> u32 {
        self.exponent(&BigUint::from(p))
    }

    /// n_(r): the largest power of r dividing this integer, as (r, exponent)
    /// expanded to a value. Returns 1 when r does not divide.
    pub fn r_part(&self, r: u64) -> Result<BigUint> {
        if !is_prime_u64(r) {
            return Err(Error::NotPrime(r.to_string()));
        }
        Ok(BigUint::from(r).pow(self.exponent_u64(r)))
    }

    /// Whether this integer divides the other, checked on factorizations.
    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors
            .iter()
            .all(|(p, e)| other.exponent(p) >= *e)
    }

    /// Exact product.
    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        FactoredInteger {
            value: &self.value * &other.value,
            factors: normalize(factors),
        }
    }

    /// Exact quotient; errors unless `other` divides `self`.
    pub fn div_exact(&self, other: &FactoredInteger) -> Result<FactoredInteger> {
        if !other.divides(self) {
            return Err(Error::InvalidParams(format!(
                "{} does not divide {}",
                other.value, self.value
            )));
        }
        let mut factors = Vec::with_capacity(self.factors.len());
        for (p, e) in &self.factors {
            let rest = e - other.exponent(p);
            if rest > 0 {
                factors.push((p.clone(), rest));
            }
        }
        Ok(FactoredInteger {
            value: &self.value / &other.value,
            factors,
        })
    }

    /// Least common multiple, exact on factorizations.
    pub fn lcm(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        let mut i = 0;
        let mut j = 0;
        while i < self.factors.len() || j < other.factors.len() {
            if i < self.factors.len()
                && (j >= other.factors.len() || self.factors[i].0 < other.factors[j].0)
            {
                factors.push(self.factors[i].clone());
                i += 1;
            } else if j < other.factors.len()
                && (i >= self.factors.len() || other.factors[j].0 < self.factors[i].0)
            {
                factors.push(other.factors[j].clone());
                j += 1;
            } else {
                let (p, e1) = self.factors[i].clone();
                let e2 = other.factors[j].1;
                factors.push((p, e1.max(e2)));
                i += 1;
                j += 1;
            }
        }
        let value = factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        FactoredInteger { value, factors }
    }

    /// Verify the structural invariants; used by tests and debug assertions.
    pub fn check_invariants(&self) -> Result<()> {
        let mut prod = BigUint::one();
        let mut last: Option<&BigUint> = None;
        for (p, e) in &self.factors {
            if *e == 0 {
                return Err(Error::Inconsistent("zero exponent".into()));
            }
            if let Some(prev) = last {
                if prev >= p {
                    return Err(Error::Inconsistent("primes not strictly ascending".into()));
                }
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            prod *= p.pow(*e);
            last = Some(p);
        }
        if prod != self.value {
            return Err(Error::Inconsistent(format!(
                "factor product {} != value {}",
                prod, self.value
            )));
        }
        if self.value.is_one() != self.factors.is_empty() {
            return Err(Error::Inconsistent("value 1 iff factors empty".into()));
        }
        Ok(())
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{}^{}", p, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl fmt::Debug for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.value, self)
    }
}

// ---- free functions: prime sets, r-parts, orders ----

/// π(n) for a factored integer (ascending). Provided as a free function to
/// mirror the operation surface; identical to [`FactoredInteger::prime_set`].
pub fn prime_set(n: &FactoredInteger) -> Vec<BigUint> {
    n.prime_set()
}

/// n_(r): the largest power of the prime r dividing n.
pub fn r_part(n: &BigUint, r: u64) -> Result<BigUint> {
    if !is_prime_u64(r) {
        return Err(Error::NotPrime(r.to_string()));
    }
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    let r_big = BigUint::from(r);
    let mut part = BigUint::one();
    let mut rem = n.clone();
    while (&rem % &r_big).is_zero() {
        rem /= &r_big;
        part *= &r_big;
    }
    Ok(part)
}

/// u64 convenience wrapper for [`r_part`].
pub fn r_part_u64(n: u64, r: u64) -> Result<u64> {
    Ok(r_part(&BigUint::from(n), r)?.to_u64().expect("fits"))
}

fn reduce_mod(n: i64, r: u64) -> u64 {
    (n as i128).rem_euclid(r as i128) as u64
}

/// Multiplicative order of n modulo the odd prime r: the least k ≥ 1 with
/// n^k ≡ 1 (mod r). Divides r − 1. Errors if r is not an odd prime or r | n.
pub fn mult_order(n: i64, r: u64) -> Result<u64> {
    if r == 2 || !is_prime_u64(r) {
        return Err(Error::NotPrime(format!("{} (odd prime required)", r)));
    }
    let a = reduce_mod(n, r);
    if a == 0 {
        return Err(Error::NotCoprime(n.to_string(), r.to_string()));
    }
    let mut order = r - 1;
    let phi = FactoredInteger::factorize_u64(r - 1)?;
    for (p, _) in phi.factors() {
        let p = p.to_u64().expect("factor of r-1 fits u64");
        while order % p == 0 && pow_mod(a, order / p, r) == 1 {
            order /= p;
        }
    }
    debug_assert_eq!(pow_mod(a, order, r), 1);
    Ok(order)
}

/// Least k ≥ 1 with n^k ≡ −1 (mod r), when it exists. It exists exactly when
/// the multiplicative order of n mod r is even, and then equals half of it.
pub fn neg_order(n: i64, r: u64) -> Result<Option<u64>> {
    let ord = mult_order(n, r)?;
    if ord % 2 != 0 {
        return Ok(None);
    }
    let k = ord / 2;
    let a = reduce_mod(n, r);
    debug_assert_eq!(pow_mod(a, k, r), r - 1);
    Ok(Some(k))
}

/// e(r, n): multiplicative order of n modulo r for odd r; for r = 2 the
/// convention is e(2, n) = 1 if n ≡ 1 (mod 4) and e(2, n) = 2 if n ≡ 3 (mod 4).
pub fn e_of(r: u64, n: i64) -> Result<u64> {
    if n.unsigned_abs() <= 1 {
        return Err(Error::BaseTooSmall(n));
    }
    if r == 2 {
        if n % 2 == 0 {
            return Err(Error::NotCoprime(n.to_string(), "2".into()));
        }
        return Ok(if (n as i128).rem_euclid(4) == 1 { 1 } else { 2 });
    }
    mult_order(n, r)
}

// ---- cyclotomic values and primitive prime divisors ----

fn moebius(n: u64) -> Result<i32> {
    let f = FactoredInteger::factorize_u64(n)?;
    for (_, e) in f.factors() {
        if *e > 1 {
            return Ok(0);
        }
    }
    Ok(if f.factors().len() % 2 == 0 { 1 } else { -1 })
}

/// Φ_j(n) evaluated at an integer n, via Φ_j(x) = ∏_{d | j} (x^d − 1)^{μ(j/d)}.
pub fn cyclotomic_value(n: i64, j: u32) -> Result<BigInt> {
    if j == 0 {
        return Err(Error::OutOfRange("cyclotomic index 0".into()));
    }
    let x = BigInt::from(n);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in 1..=j {
        if j % d != 0 {
            continue;
        }
        let term = x.pow(d) - BigInt::one();
        match moebius((j / d) as u64)? {
            1 => num *= &term,
            -1 => den *= &term,
            _ => {}
        }
    }
    if den.is_zero() {
        // only possible when x^d = 1, i.e. |n| <= 1, which callers exclude
        return Err(Error::BaseTooSmall(n));
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// The Bang–Zsigmondy exceptions: the only (n, i) with |n| > 1, i ≥ 1 for
/// which R_i(n) is empty.
pub const ZSIGMONDY_EXCEPTIONS: [(i64, u32); 6] =
    [(2, 1), (2, 6), (-2, 2), (-2, 3), (3, 1), (-3, 2)];

/// R_i(n): the set of primitive prime divisors of n^i − 1, i.e. primes r with
/// e(r, n) = i (paper convention at r = 2). Computed by factoring the
/// cyclotomic value Φ_i(n) and filtering by multiplicative order; empty
/// exactly on the Bang–Zsigmondy exception list.
pub fn primitive_prime_divisors(n: i64, i: u32) -> Result<Vec<BigUint>> {
    if n.unsigned_abs() <= 1 {
        return Err(Error::BaseTooSmall(n));
    }
    if i == 0 {
        return Err(Error::OutOfRange("index i must be >= 1".into()));
    }
    let phi = cyclotomic_value(n, i)?.abs().to_biguint().expect("abs");
    if phi.is_one() {
        return Ok(Vec::new());
    }
    let factored = FactoredInteger::factorize(&phi)?;
    let mut out = Vec::new();
    for p in factored.prime_set() {
        let r = match p.to_u64() {
            Some(r) => r,
            None => {
                // primes beyond u64 cannot be checked with e_of's i64 base,
                // but they are necessarily primitive (they cannot divide i)
                out.push(p);
                continue;
            }
        };
        if reduce_mod(n, r) == 0 {
            continue;
        }
        if e_of(r, n)? == i as u64 {
            out.push(BigUint::from(r));
        }
    }
    out.sort();
    Ok(out)
}

/// Divide out of `v` every power of every prime in `primes`; the remainder is
/// 1 exactly when v is smooth over that set.
pub fn strip_prime_parts(v: &BigUint, primes: &[u64]) -> BigUint {
    let mut rem = v.clone();
    for &p in primes {
        let p = BigUint::from(p);
        while !rem.is_one() && (&rem % &p).is_zero() {
            rem /= &p;
        }
    }
    rem
}
