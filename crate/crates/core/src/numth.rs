//! Generalized Euler totient, exact counting and lower bounds, primality
//! and primitive-root machinery, and the Artin predicate for maximally
//! alternating BWT images. Everything here is exact integer arithmetic.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};
use crate::word::Word;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(m: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if m < 2 {
        return false;
    }
    for &p in &BASES {
        if m.is_multiple_of(p) {
            return m == p;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Least `t >= 1` with `a^t ≡ 1 (mod m)`. Direct iteration.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::Arithmetic(format!("modulus {m} must be at least 2")));
    }
    if gcd(a % m, m) != 1 {
        return Err(Error::Arithmetic(format!("{a} and {m} are not coprime")));
    }
    let mut acc = a % m;
    let mut t = 1u64;
    while acc != 1 {
        acc = mul_mod(acc, a % m, m);
        t += 1;
    }
    Ok(t)
}

/// True iff `a` generates the multiplicative group modulo `m`.
pub fn is_primitive_root(a: u64, m: u64) -> bool {
    if m < 2 || gcd(a % m, m) != 1 {
        return false;
    }
    matches!(multiplicative_order(a, m), Ok(t) if t == euler_phi(m))
}

/// Classical Euler totient by trial factorization.
pub fn euler_phi(d: u64) -> u64 {
    let mut n = d;
    let mut phi = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Largest power of `p` dividing `n`.
pub fn lambda_p(p: u64, n: u64) -> u64 {
    let mut lam = 1;
    let mut rest = n;
    while rest.is_multiple_of(p) {
        lam *= p;
        rest /= p;
    }
    lam
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Generalized Euler totient `Φ_p(n)`: the number of polynomials of degree
/// `< n` over `GF(p)` coprime with `X^n - 1`, computed as the all-integer
/// product `p^(n - n/λ) · Π_{d | n/λ} (p^ord - 1)^(φ(d)/ord)` where `λ` is
/// the largest power of `p` dividing `n` and `ord` is the multiplicative
/// order of `p` modulo `d` (with `ord = 1` for `d = 1`).
pub fn phi_generalized(p: u64, n: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::Arithmetic(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::Arithmetic("n must be positive".into()));
    }
    let reduced = n / lambda_p(p, n);
    let mut acc = BigUint::from(p).pow((n - reduced) as u32);
    for d in divisors(reduced) {
        let ord = if d == 1 {
            1
        } else {
            multiplicative_order(p, d)?
        };
        let phi_d = euler_phi(d);
        if !phi_d.is_multiple_of(ord) {
            return Err(Error::Internal(format!(
                "φ({d}) = {phi_d} not divisible by ord = {ord}"
            )));
        }
        let factor = BigUint::from(p).pow(ord as u32) - BigUint::one();
        acc *= factor.pow((phi_d / ord) as u32);
    }
    Ok(acc)
}

/// Exact number of ternary generalized de Bruijn words of length `3n`:
/// `2^(n-1) · Φ_3(n) / n`.
pub fn count_gdbw_ternary(n: u64) -> Result<BigUint> {
    let numerator = (BigUint::one() << (n - 1) as usize) * phi_generalized(3, n)?;
    let (q, r) = num_integer_div_rem(&numerator, &BigUint::from(n));
    if r != BigUint::from(0u32) {
        return Err(Error::Internal(format!(
            "2^(n-1)·Φ_3(n) not divisible by n = {n}"
        )));
    }
    Ok(q)
}

fn num_integer_div_rem(a: &BigUint, b: &BigUint) -> (BigUint, BigUint) {
    (a / b, a % b)
}

/// Exact lower bound `Φ_3(n) / 2n` on the number of ternary necklaces of
/// length `3n` with completely unclustered BWT.
pub fn lower_bound_unclustered(n: u64) -> Result<Ratio<BigUint>> {
    Ok(Ratio::new(phi_generalized(3, n)?, BigUint::from(2 * n)))
}

/// The word `α^n` where `α = (k-1)(k-2)...0`.
pub fn alpha_power(k: usize, n: usize) -> Result<Word> {
    let alpha: Vec<u8> = (0..k as u8).rev().collect();
    let letters: Vec<u8> = alpha.iter().copied().cycle().take(k * n).collect();
    Word::new(letters, k)
}

/// True iff `kn+1` is prime and `k` is a primitive root modulo `kn+1`.
pub fn artin_rhs(k: u64, n: u64) -> bool {
    let m = k * n + 1;
    is_prime(m) && is_primitive_root(k, m)
}

/// True iff `α^n` is a BWT image, decided both by the single-cycle test on
/// its standard permutation and by the modular form `π(i) = ki mod (kn+1)`
/// on `{1..kn}`; the two routes are asserted to agree.
pub fn artin_lhs(k: u64, n: u64) -> Result<bool> {
    if k < 2 || n < 1 {
        return Err(Error::Precondition("need k >= 2 and n >= 1".into()));
    }
    let m = k * n + 1;
    // Modular route: orbit of 1 under i -> ki mod (kn+1).
    let mut cur = k % m;
    let mut orbit = 1u64;
    while cur != 1 {
        if cur == 0 || orbit > k * n {
            orbit = 0;
            break;
        }
        cur = mul_mod(cur, k, m);
        orbit += 1;
    }
    let fast = orbit == k * n;
    // Direct route: standard permutation of the explicit word.
    let direct = alpha_power(k as usize, n as usize)?.is_bwt_image_aperiodic();
    if fast != direct {
        return Err(Error::Internal(format!(
            "modular and direct BWT-image tests disagree at k={k}, n={n}"
        )));
    }
    Ok(direct)
}

/// Check `artin_lhs(k, n) = artin_rhs(k, n)` for `n = 1..n_max` and return
/// the `n` where the predicate holds. Any mismatch is a hard failure.
pub fn artin_equivalence_check(k: u64, n_max: u64) -> Result<Vec<u64>> {
    let mut holds = Vec::new();
    for n in 1..=n_max {
        let lhs = artin_lhs(k, n)?;
        let rhs = artin_rhs(k, n);
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "Artin equivalence violated at k={k}, n={n}: lhs={lhs}, rhs={rhs}"
            )));
        }
        if lhs {
            holds.push(n);
        }
    }
    Ok(holds)
}
