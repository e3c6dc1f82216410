//! Extending the `kn`-length construction to every length: last-block
//! position control, single-letter insertion and deletion, and the k-ary
//! all-letters extension.

use crate::error::{Error, Result};
use crate::graph::{generate_gdbw_word, CyclePath};
use crate::untie::{reroute, untie_all};
use crate::word::{inverse_bwt, Necklace, Word};

/// Which position of the final block carries the letter 2. The third
/// possibility, position `3n-1`, corresponds to the self-loop of `DB(3,3n)`
/// and never occurs on a Hamiltonian cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastBlockVariant {
    /// `w_{3n-3} = 2`
    PenultimateMinusOne,
    /// `w_{3n-2} = 2`
    Penultimate,
}

/// A completely unclustered BWT image of a ternary generalized de Bruijn
/// word of length `3n`, with the 2 of the last block at the requested
/// position.
pub fn unclustered_with_marked_last_block(n: usize, variant: LastBlockVariant) -> Result<Word> {
    let k = 3usize;
    let w = generate_gdbw_word(k, n)?;
    let target = match variant {
        LastBlockVariant::PenultimateMinusOne => 3 * n - 3,
        LastBlockVariant::Penultimate => 3 * n - 2,
    };
    let sigma = w.inverse_standard_permutation();
    // Vertex 3n-1 is the last occurrence of letter 2; its out-edge lands on
    // the 2 of the final block.
    let current = sigma.apply(3 * n - 1);
    let w = if current == target {
        w
    } else {
        let a: Vec<usize> = (1..=k).map(|j| j * n - 1).collect();
        let b: Vec<usize> = (0..k).map(|t| 3 * n - 3 + t).collect();
        let path = CyclePath::from_inverse_perm(&sigma, k)?;
        let rerouted = reroute(&path, &a, &b, (3 * n - 1, current))?;
        crate::graph::word_from_inverse_perm(&rerouted.to_inverse_perm(), k, n)?
    };
    // Remaining ties sit at blocks <= n-2, so untying never touches the
    // final block.
    let (out, _) = untie_all(&w, k, n)?;
    if out.letters()[target] != 2 {
        return Err(Error::Internal(format!(
            "marked position {target} lost its 2"
        )));
    }
    Ok(out)
}

fn check_unclustered_gdbw_image(w: &Word) -> Result<usize> {
    if w.alphabet_size() != 3 || !w.len().is_multiple_of(3) {
        return Err(Error::Precondition(
            "expected a ternary word of length divisible by 3".into(),
        ));
    }
    if !w.is_alphabet_permutation_power() {
        return Err(Error::NotPermutationPower);
    }
    if !w.is_bwt_image_aperiodic() {
        return Err(Error::NotBwtImage);
    }
    if w.run_count() != w.len() {
        return Err(Error::Precondition(
            "word is not completely unclustered".into(),
        ));
    }
    Ok(w.len() / 3)
}

/// Insert a 2 between positions `3n-2` and `3n-1`. Requires `w_{3n-3} = 2`;
/// the result is one letter longer, still completely unclustered and still a
/// BWT image.
pub fn insert_two(w: &Word) -> Result<Word> {
    let n = check_unclustered_gdbw_image(w)?;
    if w.letters()[3 * n - 3] != 2 {
        return Err(Error::Precondition(format!(
            "letter at position {} must be 2",
            3 * n - 3
        )));
    }
    let mut letters = w.letters().to_vec();
    letters.insert(3 * n - 1, 2);
    let out = Word::new(letters, 3)?;
    debug_assert_eq!(out.run_count(), w.run_count() + 1);
    debug_assert!(out.is_bwt_image_aperiodic());
    Ok(out)
}

/// Delete the 2 at position `3n-2`. The result is one letter shorter, still
/// completely unclustered and still a BWT image.
pub fn delete_two(w: &Word) -> Result<Word> {
    let n = check_unclustered_gdbw_image(w)?;
    if w.letters()[3 * n - 2] != 2 {
        return Err(Error::Precondition(format!(
            "letter at position {} must be 2",
            3 * n - 2
        )));
    }
    let mut letters = w.letters().to_vec();
    letters.remove(3 * n - 2);
    let out = Word::new(letters, 3)?;
    debug_assert_eq!(out.run_count(), w.run_count() - 1);
    debug_assert!(out.is_bwt_image_aperiodic());
    Ok(out)
}

/// Completely unclustered ternary BWT image of any length `n >= 1`.
pub fn construct_unclustered_ternary_word(n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    match n {
        1 => return Word::parse("0", 3),
        2 => return Word::parse("10", 3),
        3 => return Word::parse("201", 3),
        _ => {}
    }
    match n % 3 {
        0 => {
            let (w, _) = untie_all(&generate_gdbw_word(3, n / 3)?, 3, n / 3)?;
            Ok(w)
        }
        1 => {
            let base = unclustered_with_marked_last_block(
                (n - 1) / 3,
                LastBlockVariant::PenultimateMinusOne,
            )?;
            insert_two(&base)
        }
        _ => {
            let base =
                unclustered_with_marked_last_block((n + 1) / 3, LastBlockVariant::Penultimate)?;
            delete_two(&base)
        }
    }
}

/// Ternary necklace of length `n` with completely unclustered BWT.
pub fn construct_unclustered_ternary(n: usize) -> Result<Necklace> {
    inverse_bwt(&construct_unclustered_ternary_word(n)?)
}

/// Rewrite a ternary completely unclustered BWT image of length `n >= k`
/// into one over `Σ_k` containing every letter, without changing the
/// standard permutation: the top ranks of the inverse standard permutation
/// receive the new letters `k-1` down to `3`, and the letters 2 and 1 are
/// re-seated one rank further down when the rewrite consumed all their
/// original occurrences.
pub fn extend_alphabet(w: &Word, k: usize) -> Result<Word> {
    if k < 3 {
        return Err(Error::AlphabetTooSmall);
    }
    if w.alphabet_size() != 3 {
        return Err(Error::Precondition("expected a ternary word".into()));
    }
    let n = w.len();
    if n < k {
        return Err(Error::LengthBelowAlphabet);
    }
    if !w.is_bwt_image_aperiodic() {
        return Err(Error::NotBwtImage);
    }
    if w.run_count() != n {
        return Err(Error::Precondition(
            "word is not completely unclustered".into(),
        ));
    }
    let sigma = w.inverse_standard_permutation();
    let parikh = w.parikh();
    let mut letters = w.letters().to_vec();
    for i in 1..=k - 3 {
        letters[sigma.apply(n - i)] = (k - i) as u8;
    }
    let mut placed_two = false;
    if k - 3 >= parikh[2] {
        letters[sigma.apply(n - (k - 2))] = 2;
        placed_two = true;
    }
    if placed_two && k - 2 >= parikh[2] + parikh[1] {
        letters[sigma.apply(n - (k - 1))] = 1;
    }
    let out = Word::new(letters, k)?;
    debug_assert_eq!(out.standard_permutation(), w.standard_permutation());
    debug_assert_eq!(out.run_count(), n);
    debug_assert!(out.parikh().iter().all(|&c| c >= 1));
    Ok(out)
}

/// Length-`n` necklace over `Σ_k` with completely unclustered BWT; when
/// `require_all_letters` is set, every letter of `Σ_k` occurs.
pub fn construct_unclustered(n: usize, k: usize, require_all_letters: bool) -> Result<Necklace> {
    if k < 3 {
        return Err(Error::AlphabetTooSmall);
    }
    if require_all_letters && n < k {
        return Err(Error::LengthBelowAlphabet);
    }
    let ternary = construct_unclustered_ternary_word(n)?;
    let image = if require_all_letters {
        extend_alphabet(&ternary, k)?
    } else {
        ternary.with_alphabet(k)?
    };
    inverse_bwt(&image)
}
