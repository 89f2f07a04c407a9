use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Prime factorization of |n| (n ≠ 0), primes ascending. Factors above u64 are not
/// expected for the lattices handled here and cause a panic.
pub fn factor(n: &BigInt) -> Vec<(u64, u32)> {
    assert!(!n.is_zero(), "factor(0)");
    let m = n.magnitude();
    if m.is_one() {
        return Vec::new();
    }
    let map: Vec<(u64, u32)> = match m.to_u128() {
        Some(x) => num_prime::nt_funcs::factorize128(x)
            .into_iter()
            .map(|(p, e)| (u64::try_from(p).expect("prime factor fits in u64"), e as u32))
            .collect(),
        None => num_prime::nt_funcs::factorize::<BigUint>(m.clone())
            .into_iter()
            .map(|(p, e)| (p.to_u64().expect("prime factor fits in u64"), e as u32))
            .collect(),
    };
    map
}

/// Prime factorization of |n| (n ≠ 0) with arbitrary-size primes, ascending.
pub fn factor_big(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factor_big(0)");
    let m = n.magnitude();
    if m.is_one() {
        return Vec::new();
    }
    num_prime::nt_funcs::factorize::<BigUint>(m.clone())
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e as u32))
        .collect()
}

pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

pub fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime(q) {
        q += 1;
    }
    q
}
