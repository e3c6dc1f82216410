//! Independent brute-force reference implementations used to validate the
//! constructive modules at small sizes. Guards are hard limits: an oracle
//! never returns partial ground truth.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::enumerate_hamiltonian_cycles;
use crate::word::{inverse_bwt, Necklace, Word};

/// Word-scan guard: at most this many words are enumerated.
pub const WORD_SCAN_GUARD: u64 = 10_000_000;

fn checked_pow(base: u64, exp: u32, guard: u64) -> Result<u64> {
    match base.checked_pow(exp) {
        Some(v) if v <= guard => Ok(v),
        _ => Err(Error::GuardExceeded(format!(
            "{base}^{exp} exceeds scan limit {guard}"
        ))),
    }
}

/// All distinct necklaces of length `n` over `Σ_k`, canonical forms in
/// lexicographic order, by full word scan and dedup.
pub fn enumerate_necklaces(k: usize, n: usize) -> Result<Vec<Necklace>> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if k == 0 || k > crate::word::MAX_ALPHABET {
        return Err(Error::BadAlphabet(k));
    }
    checked_pow(k as u64, n as u32, WORD_SCAN_GUARD)?;
    let mut canon: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut letters = vec![0u8; n];
    loop {
        let word = Word::new(letters.clone(), k).expect("scan letters are in range");
        canon.insert(word.canonical().canonical().letters().to_vec());
        // Odometer step over base-k digits.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(canon
                    .into_iter()
                    .map(|l| Word::new(l, k).unwrap().canonical())
                    .collect());
            }
            pos -= 1;
            letters[pos] += 1;
            if (letters[pos] as usize) < k {
                break;
            }
            letters[pos] = 0;
        }
    }
}

/// Exhaustive enumeration report for one `(k, n)` pair.
#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub k: usize,
    pub n: usize,
    pub total_necklaces: usize,
    pub unclustered_count: usize,
    pub witnesses: Vec<Necklace>,
}

/// Count (and list) the necklaces of length `n` over `Σ_k` whose BWT has
/// exactly `n` runs, by exhaustive `bwt` + `run_count`.
pub fn count_unclustered(k: usize, n: usize) -> Result<EnumerationReport> {
    let necklaces = enumerate_necklaces(k, n)?;
    let total_necklaces = necklaces.len();
    let witnesses: Vec<Necklace> = necklaces
        .into_iter()
        .filter(|u| u.is_completely_unclustered())
        .collect();
    Ok(EnumerationReport {
        k,
        n,
        total_necklaces,
        unclustered_count: witnesses.len(),
        witnesses,
    })
}

/// Classical necklace count `(1/n) Σ_{d|n} φ(d) k^(n/d)`; self-check for the
/// enumeration.
pub fn necklace_count_formula(k: u64, n: u64) -> u64 {
    let mut total = 0u64;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += crate::numth::euler_phi(d) * k.pow((n / d) as u32);
        }
    }
    total / n
}

// Polynomials over GF(p) as coefficient vectors, lowest degree first,
// trailing zeros trimmed.
fn poly_trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db], p);
    while a.len() > db {
        let da = a.len() - 1;
        let factor = (a[da] * lead_inv) % p;
        if factor != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = da - db + i;
                a[idx] = (a[idx] + p - factor * bc % p) % p;
            }
        }
        a.pop();
        a = poly_trim(a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn poly_gcd_is_unit(f: &[u64], g: &[u64], p: u64) -> bool {
    let mut a = poly_trim(f.to_vec());
    let mut b = poly_trim(g.to_vec());
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Count polynomials over `GF(p)` of degree `< n` coprime with `X^n - 1`,
/// by exhaustive enumeration and Euclid's algorithm.
pub fn brute_phi(p: u64, n: usize) -> Result<u64> {
    if !crate::numth::is_prime(p) {
        return Err(Error::Arithmetic(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::Arithmetic("n must be positive".into()));
    }
    checked_pow(p, n as u32, WORD_SCAN_GUARD)?;
    // X^n - 1
    let mut modulus = vec![0u64; n + 1];
    modulus[0] = p - 1;
    modulus[n] = 1;
    let mut coeffs = vec![0u64; n];
    let mut count = 0u64;
    loop {
        if poly_gcd_is_unit(&modulus, &coeffs, p) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(count);
            }
            coeffs[pos] += 1;
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
    }
}

/// All generalized de Bruijn words of length `kn`, one per Hamiltonian
/// cycle of `DB(k,kn)`, in lexicographic order of canonical form.
pub fn enumerate_gdbw(k: usize, n: usize) -> Result<Vec<Necklace>> {
    let cycles = enumerate_hamiltonian_cycles(k, n)?;
    let mut out: Vec<Necklace> = cycles
        .iter()
        .map(|path| {
            let sigma = path.to_inverse_perm();
            let word = crate::graph::word_from_inverse_perm(&sigma, k, n)
                .expect("Hamiltonian cycle yields a permutation power");
            inverse_bwt(&word).expect("single cycle by construction")
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_gdbw;

    #[test]
    fn necklace_enumeration_counts() {
        assert_eq!(enumerate_necklaces(2, 4).unwrap().len(), 6);
        assert_eq!(enumerate_necklaces(3, 1).unwrap().len(), 3);
        assert_eq!(enumerate_necklaces(3, 3).unwrap().len(), 11);
        for (k, n) in [(2u64, 6u64), (3, 4), (4, 3)] {
            assert_eq!(
                enumerate_necklaces(k as usize, n as usize).unwrap().len() as u64,
                necklace_count_formula(k, n),
                "k={k} n={n}"
            );
        }
    }

    #[test]
    fn necklace_enumeration_guard() {
        assert!(matches!(
            enumerate_necklaces(3, 40),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn count_unclustered_binary_length_four() {
        let report = count_unclustered(2, 4).unwrap();
        assert_eq!(report.unclustered_count, 1);
        assert_eq!(report.witnesses[0].to_string(), "0011");
    }

    #[test]
    fn count_unclustered_ternary_nonempty() {
        assert!(count_unclustered(3, 3).unwrap().unclustered_count >= 1);
        assert!(count_unclustered(3, 6).unwrap().unclustered_count >= 1);
    }

    #[test]
    fn brute_phi_values() {
        assert_eq!(brute_phi(3, 1).unwrap(), 2);
        assert_eq!(brute_phi(3, 2).unwrap(), 4);
        // X^3 - 1 = (X+1)(X^2+X+1) over GF(2); the unit group of
        // GF(2)[X]/(X^3-1) = GF(2) x GF(4) has 1 * 3 = 3 elements.
        assert_eq!(brute_phi(2, 3).unwrap(), 3);
        assert_eq!(brute_phi(5, 2).unwrap(), 16);
    }

    #[test]
    fn brute_phi_matches_closed_form() {
        for p in [2u64, 3, 5] {
            for n in 1..=6 {
                assert_eq!(
                    num_bigint::BigUint::from(brute_phi(p, n).unwrap()),
                    crate::numth::phi_generalized(p, n as u64).unwrap(),
                    "p={p} n={n}"
                );
            }
        }
    }

    #[test]
    fn enumerate_gdbw_examples() {
        let words = enumerate_gdbw(3, 1).unwrap();
        let texts: Vec<String> = words.iter().map(|u| u.to_string()).collect();
        assert_eq!(texts, vec!["012", "021"]);

        let words = enumerate_gdbw(3, 2).unwrap();
        assert_eq!(words.len(), 4);
        assert!(words.iter().all(|u| is_gdbw(u, 3)));

        let words = enumerate_gdbw(2, 2).unwrap();
        assert!(words.iter().any(|u| u.to_string() == "0011"));
    }

    #[test]
    fn enumerate_gdbw_distinct() {
        let words = enumerate_gdbw(3, 3).unwrap();
        assert_eq!(words.len(), 24);
        let distinct: BTreeSet<String> = words.iter().map(|u| u.to_string()).collect();
        assert_eq!(distinct.len(), words.len());
    }
}
