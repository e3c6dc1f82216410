//! Words over `Σ_k = {0..k-1}`, necklaces, the Burrows-Wheeler transform and
//! its inverse, run-length encoding, and standard permutations.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest alphabet renderable with one base-36 digit per letter.
pub const MAX_ALPHABET: usize = 36;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// A nonempty word over `Σ_k`. Letters are stored as codes `0..k-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<u8>,
    alphabet_size: usize,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > MAX_ALPHABET {
            return Err(Error::BadAlphabet(alphabet_size));
        }
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&l) = letters.iter().find(|&&l| (l as usize) >= alphabet_size) {
            return Err(Error::LetterOutOfRange {
                letter: l as u32,
                alphabet: alphabet_size,
            });
        }
        Ok(Self {
            letters,
            alphabet_size,
        })
    }

    /// Parse a word written as contiguous base-36 digits (`0-9` then `a-z`).
    pub fn parse(text: &str, alphabet_size: usize) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            let code = c
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("invalid letter {c:?}")))?;
            letters.push(code as u8);
        }
        Self::new(letters, alphabet_size)
    }

    /// Parse with the alphabet inferred as (largest letter + 1).
    pub fn parse_infer(text: &str) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for c in text.chars() {
            let code = c
                .to_digit(36)
                .ok_or_else(|| Error::Parse(format!("invalid letter {c:?}")))?;
            letters.push(code as u8);
        }
        let k = letters.iter().copied().max().map_or(1, |m| m as usize + 1);
        Self::new(letters, k)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// The same letter sequence viewed over a (possibly larger) alphabet.
    pub fn with_alphabet(&self, alphabet_size: usize) -> Result<Self> {
        Self::new(self.letters.clone(), alphabet_size)
    }

    /// Moves the last letter to the front: `w_{n-1} w_0 ... w_{n-2}`.
    pub fn shift(&self) -> Self {
        let n = self.letters.len();
        let mut letters = Vec::with_capacity(n);
        letters.push(self.letters[n - 1]);
        letters.extend_from_slice(&self.letters[..n - 1]);
        Self {
            letters,
            alphabet_size: self.alphabet_size,
        }
    }

    /// The rotation starting at position `r`.
    pub fn rotation(&self, r: usize) -> Self {
        let n = self.letters.len();
        let r = r % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[r..]);
        letters.extend_from_slice(&self.letters[..r]);
        Self {
            letters,
            alphabet_size: self.alphabet_size,
        }
    }

    /// Per-letter occurrence counts, indexed by letter code.
    pub fn parikh(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.alphabet_size];
        for &l in &self.letters {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn rle(&self) -> RunLengthEncoding {
        let mut runs: Vec<(u8, usize)> = Vec::new();
        for &l in &self.letters {
            match runs.last_mut() {
                Some((letter, count)) if *letter == l => *count += 1,
                _ => runs.push((l, 1)),
            }
        }
        RunLengthEncoding { runs }
    }

    /// Number of maximal runs of the word.
    pub fn run_count(&self) -> usize {
        1 + self
            .letters
            .windows(2)
            .filter(|pair| pair[0] != pair[1])
            .count()
    }

    /// `π_w` with `π_w(i) < π_w(j)` iff `(w_i, i) < (w_j, j)`.
    pub fn standard_permutation(&self) -> Permutation {
        let parikh = self.parikh();
        let mut next_rank = vec![0usize; self.alphabet_size];
        let mut acc = 0;
        for (l, &count) in parikh.iter().enumerate() {
            next_rank[l] = acc;
            acc += count;
        }
        let mut one_line = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            one_line.push(next_rank[l as usize]);
            next_rank[l as usize] += 1;
        }
        Permutation::new(one_line).expect("rank assignment is a bijection")
    }

    /// `σ = π_w^{-1}`: the positions of letter 0 in left-to-right order, then
    /// the positions of letter 1, and so on.
    pub fn inverse_standard_permutation(&self) -> Permutation {
        let mut by_letter: Vec<Vec<usize>> = vec![Vec::new(); self.alphabet_size];
        for (pos, &l) in self.letters.iter().enumerate() {
            by_letter[l as usize].push(pos);
        }
        let one_line: Vec<usize> = by_letter.into_iter().flatten().collect();
        Permutation::new(one_line).expect("position listing is a bijection")
    }

    /// True iff the standard permutation is a single `|w|`-cycle, i.e. `w` is
    /// the BWT of some aperiodic necklace.
    pub fn is_bwt_image_aperiodic(&self) -> bool {
        self.standard_permutation().is_single_cycle()
    }

    /// True iff `k` divides `|w|` and every consecutive block of `k` letters
    /// contains each letter of `Σ_k` exactly once.
    pub fn is_alphabet_permutation_power(&self) -> bool {
        let k = self.alphabet_size;
        if !self.letters.len().is_multiple_of(k) {
            return false;
        }
        let mut seen = vec![false; k];
        for block in self.letters.chunks(k) {
            seen.iter_mut().for_each(|s| *s = false);
            for &l in block {
                if seen[l as usize] {
                    return false;
                }
                seen[l as usize] = true;
            }
        }
        true
    }

    /// Canonical necklace of this word's conjugacy class.
    pub fn canonical(&self) -> Necklace {
        Necklace::of(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            f.write_str(std::str::from_utf8(&DIGITS[l as usize..l as usize + 1]).unwrap())?;
        }
        Ok(())
    }
}

/// Run-length encoding: maximal `(letter, length)` runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthEncoding {
    runs: Vec<(u8, usize)>,
}

impl RunLengthEncoding {
    pub fn runs(&self) -> &[(u8, usize)] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn total_length(&self) -> usize {
        self.runs.iter().map(|&(_, len)| len).sum()
    }
}

/// Conjugacy class of a word, stored as its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    canonical: Word,
    primitive: bool,
}

impl Necklace {
    pub fn of(w: &Word) -> Self {
        let start = least_rotation_index(w.letters());
        let canonical = w.rotation(start);
        let primitive = is_primitive(canonical.letters());
        Self {
            canonical,
            primitive,
        }
    }

    pub fn canonical(&self) -> &Word {
        &self.canonical
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet_size(&self) -> usize {
        self.canonical.alphabet_size()
    }

    /// Last column of the matrix whose rows are all `|u|` rotations (with
    /// multiplicity) sorted lexicographically.
    pub fn bwt(&self) -> Word {
        let letters = self.canonical.letters();
        let n = letters.len();
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by(|&a, &b| compare_rotations(letters, a, b));
        let out: Vec<u8> = starts.iter().map(|&r| letters[(r + n - 1) % n]).collect();
        Word::new(out, self.canonical.alphabet_size()).expect("same letters, same alphabet")
    }

    /// True iff the BWT has exactly `|u|` runs.
    pub fn is_completely_unclustered(&self) -> bool {
        self.bwt().run_count() == self.len()
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

fn compare_rotations(letters: &[u8], a: usize, b: usize) -> Ordering {
    let n = letters.len();
    for t in 0..n {
        let ord = letters[(a + t) % n].cmp(&letters[(b + t) % n]);
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Index of the lexicographically least rotation (Booth-style two-pointer
/// scan, O(n)).
fn least_rotation_index(s: &[u8]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i == j {
                    i += 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j == i {
                    j += 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// A word is primitive iff it is not a proper integer power.
fn is_primitive(s: &[u8]) -> bool {
    let n = s.len();
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut t = border[i - 1];
        while t > 0 && s[i] != s[t] {
            t = border[t - 1];
        }
        if s[i] == s[t] {
            t += 1;
        }
        border[i] = t;
    }
    let period = n - border[n - 1];
    !(period < n && n.is_multiple_of(period))
}

/// The rotation of the preimage read off from row 0 of the BWT matrix, i.e.
/// the lexicographically least rotation.
pub fn inverse_bwt_word(w: &Word) -> Result<Word> {
    let pi = w.standard_permutation();
    if !pi.is_single_cycle() {
        return Err(Error::NotBwtImage);
    }
    let n = w.len();
    let mut letters = vec![0u8; n];
    let mut row = 0usize;
    for pos in (0..n).rev() {
        letters[pos] = w.letters()[row];
        row = pi.apply(row);
    }
    Word::new(letters, w.alphabet_size())
}

/// The unique aperiodic necklace `u` with `bwt(u) = w`.
pub fn inverse_bwt(w: &Word) -> Result<Necklace> {
    Ok(Necklace::of(&inverse_bwt_word(w)?))
}
