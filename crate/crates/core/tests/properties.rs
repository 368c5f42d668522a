//! Property tests for the arithmetic layer and the spectrum machinery.

use num_bigint::BigUint;
use proptest::prelude::*;

use odchar::arith::{self, FactoredInteger};
use odchar::unitary::{self, UnitaryParams};

/// splitmix64: deterministic pseudorandom stream for the bulk round-trip.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

fn random_prime(rng: &mut SplitMix, bits: u32) -> u64 {
    let mut cand = (rng.next() % (1 << bits)).max(2);
    while !arith::is_prime_u64(cand) {
        cand += 1;
    }
    cand
}

/// Factorization inverts expansion: build a random factored form, expand it,
/// re-factorize, and compare. Values go up to 2^128; the factor sizes mirror
/// the q^i ± 1 products the toolkit actually meets (many small primes, the
/// occasional medium one), so ten thousand cases stay fast.
#[test]
fn factorize_inverts_expansion_for_10k_inputs() {
    let mut rng = SplitMix(0x0dc_0ffee);
    for case in 0..10_000usize {
        let mut value = BigUint::from(1u32);
        let mut bits = 0u64;
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        let target_bits = 64 + rng.next() % 65; // up to 2^128
        while bits < target_bits {
            let prime_bits = 8 + (rng.next() % 12) as u32; // 8..19 bits
            let p = random_prime(&mut rng, prime_bits);
            let exp = 1 + (rng.next() % 3) as u32;
            value *= BigUint::from(p).pow(exp);
            factors.push((BigUint::from(p), exp));
            bits += (prime_bits as u64 + 1) * exp as u64;
        }
        let expected = FactoredInteger::from_factors(factors).unwrap();
        let refactored = FactoredInteger::factorize(&value).unwrap();
        assert_eq!(refactored, expected, "case {}: value {}", case, value);
        refactored.check_invariants().unwrap();
    }
}

/// A handful of deliberately hard inputs: products of two medium primes that
/// force the rho splitter (beyond the trial-division horizon).
#[test]
fn factorize_splits_medium_semiprimes() {
    let mut rng = SplitMix(0x5eed);
    for _ in 0..8 {
        let p = random_prime(&mut rng, 34);
        let q = random_prime(&mut rng, 34);
        let value = BigUint::from(p) * BigUint::from(q) * BigUint::from(p);
        let f = FactoredInteger::factorize(&value).unwrap();
        f.check_invariants().unwrap();
        assert_eq!(f.exponent(&BigUint::from(p)), if p == q { 3 } else { 2 });
    }
}

#[test]
fn factorize_roundtrips_uniform_u64() {
    let mut rng = SplitMix(0xfeed_beef);
    for _ in 0..2_000 {
        let n = rng.next().max(1);
        let f = FactoredInteger::factorize_u64(n).unwrap();
        assert_eq!(f.value(), &BigUint::from(n));
        f.check_invariants().unwrap();
    }
}

const ODD_PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 31, 97, 181, 523, 1201, 2269, 6481];

proptest! {
    #[test]
    fn mult_order_divides_r_minus_1(n in -10_000i64..10_000, idx in 0usize..ODD_PRIMES.len()) {
        let r = ODD_PRIMES[idx];
        if n.rem_euclid(r as i64) != 0 {
            let ord = arith::mult_order(n, r).unwrap();
            prop_assert_eq!((r - 1) % ord, 0);
        }
    }

    #[test]
    fn neg_order_exists_iff_order_even(n in 2i64..5_000, idx in 0usize..ODD_PRIMES.len()) {
        let r = ODD_PRIMES[idx];
        if n.rem_euclid(r as i64) != 0 {
            let ord = arith::mult_order(n, r).unwrap();
            let neg = arith::neg_order(n, r).unwrap();
            match neg {
                Some(k) => prop_assert_eq!(2 * k, ord),
                None => prop_assert_eq!(ord % 2, 1),
            }
        }
    }

    #[test]
    fn is_graphic_is_permutation_invariant(mut seq in proptest::collection::vec(0u32..7, 1..8), rot in 0usize..8) {
        let original = odchar::graph::is_graphic(&seq);
        let r = rot % seq.len();
        seq.rotate_left(r);
        prop_assert_eq!(odchar::graph::is_graphic(&seq), original);
    }

    #[test]
    fn spectrum_elements_divide_order_and_stay_maximal(idx in 0usize..8) {
        let params_list = [
            (3u64, 1u32), (5, 1), (7, 1), (3, 2), (2, 4), (11, 1), (7, 2), (2, 5),
        ];
        let (p, k) = params_list[idx];
        for n in [3u32, 4] {
            let params = UnitaryParams::new(n, p, k).unwrap();
            let order = unitary::order_u(&params).unwrap();
            let spec = unitary::spectrum_u(&params).unwrap();
            spec.check_maximality().unwrap();
            for m in spec.mu() {
                prop_assert!(m.divides(&order));
            }
            // lcm of μ has prime set exactly π(G)
            let lcm = spec
                .mu()
                .iter()
                .fold(FactoredInteger::one(), |acc, m| acc.lcm(m));
            prop_assert_eq!(lcm.prime_set(), order.prime_set());
        }
    }
}
