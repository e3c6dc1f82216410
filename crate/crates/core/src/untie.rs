//! Tie detection in alphabet-permutation powers and the Hamiltonian-cycle
//! rerouting that eliminates ties, producing generalized de Bruijn words
//! with completely unclustered BWT.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    generate_gdbw_word, generate_gdbw_word_seeded, is_gdb_edge, word_from_inverse_perm, CyclePath,
};
use crate::word::{inverse_bwt, Necklace, Word};

/// A tie at block `i`: equality `w_{ki+k-1} = w_{k(i+1)}`, together with the
/// letter `j0` witnessing it through the inverse standard permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Tie {
    pub block: usize,
    pub witness: u8,
}

/// One rerouting step of the untie loop, for trace output.
#[derive(Debug, Clone, Serialize)]
pub struct UntieStep {
    pub block: usize,
    pub witness: u8,
    pub removed_edge: (usize, usize),
    pub segments: [Vec<usize>; 3],
    pub rerouted_path: Vec<usize>,
    pub word: String,
}

fn check_gdbw_image(w: &Word, k: usize, n: usize) -> Result<()> {
    if w.alphabet_size() != k || w.len() != k * n {
        return Err(Error::Precondition(format!(
            "word of length {} over alphabet {} is not a candidate for k={k}, n={n}",
            w.len(),
            w.alphabet_size()
        )));
    }
    if !w.is_alphabet_permutation_power() {
        return Err(Error::NotPermutationPower);
    }
    if !w.is_bwt_image_aperiodic() {
        return Err(Error::NotBwtImage);
    }
    Ok(())
}

/// Exactly the blocks `i` in `0..n-1` with `w_{ki+k-1} = w_{k(i+1)}`, each
/// with its unique witness letter.
pub fn find_ties(w: &Word, k: usize, n: usize) -> Result<Vec<Tie>> {
    check_gdbw_image(w, k, n)?;
    let sigma = w.inverse_standard_permutation();
    let letters = w.letters();
    let mut ties = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let last_of_block = letters[k * i + k - 1];
        let first_of_next = letters[k * (i + 1)];
        if last_of_block == first_of_next {
            let j0 = last_of_block as usize;
            // Sanity: the tying letter occurrences are the
            // (i+1)-th and (i+2)-th of letter j0.
            assert_eq!(sigma.apply(j0 * n + i), k * i + k - 1);
            assert_eq!(sigma.apply(j0 * n + i + 1), k * (i + 1));
            ties.push(Tie {
                block: i,
                witness: last_of_block,
            });
        }
    }
    Ok(ties)
}

/// Reroute `path` so that it avoids `e = (x, y)` with `x ∈ A`, `y ∈ B`:
/// rotate to start at `y`, cut after the first and second visits to an
/// `A`-vertex into `γ1·γ2·γ3`, and return `γ1·γ3·γ2`.
pub fn reroute(path: &CyclePath, a: &[usize], b: &[usize], e: (usize, usize)) -> Result<CyclePath> {
    reroute_with_segments(path, a, b, e).map(|(p, _)| p)
}

pub fn reroute_with_segments(
    path: &CyclePath,
    a: &[usize],
    b: &[usize],
    e: (usize, usize),
) -> Result<(CyclePath, [Vec<usize>; 3])> {
    let m = path.len();
    let k = path.k();
    if a.len() < 3 || b.len() < 3 {
        return Err(Error::Reroute(format!(
            "vertex sets must have at least 3 elements, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    for &x in a {
        for &y in b {
            if !is_gdb_edge(k, m, x, y) {
                return Err(Error::Reroute(format!(
                    "({x}, {y}) is not an edge of DB({k},{m})"
                )));
            }
        }
        for j in 0..k {
            let t = (k * x + j) % m;
            if !b.contains(&t) {
                return Err(Error::Reroute(format!(
                    "out-edge ({x}, {t}) leaves the target set"
                )));
            }
        }
    }
    let (x, y) = e;
    if !a.contains(&x) || !b.contains(&y) {
        return Err(Error::Reroute(format!("edge ({x}, {y}) is not in A x B")));
    }
    let rotated = path.rotated_to(y)?;
    if *rotated.labels().last().unwrap() != x {
        return Err(Error::Reroute(format!(
            "path does not visit the edge ({x}, {y})"
        )));
    }
    let labels = rotated.labels();
    let mut cuts = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| a.contains(l))
        .map(|(t, _)| t);
    let first = cuts.next().expect("path visits every A-vertex");
    let second = cuts.next().expect("|A| >= 3 so at least three A-visits");
    let seg1 = labels[..=first].to_vec();
    let seg2 = labels[first + 1..=second].to_vec();
    let seg3 = labels[second + 1..].to_vec();
    let mut out = Vec::with_capacity(m);
    out.extend_from_slice(&seg1);
    out.extend_from_slice(&seg3);
    out.extend_from_slice(&seg2);
    let rerouted = CyclePath::new(out, k)?;
    Ok((rerouted, [seg1, seg2, seg3]))
}

fn untie_at(
    w: &Word,
    k: usize,
    n: usize,
    tie: Tie,
    shift_block: bool,
) -> Result<(Word, UntieStep)> {
    let j0 = tie.witness as usize;
    // Rightmost variant removes (j0·n+i0, ki0+k-1) with sets A_{i0}, B_{i0};
    // leftmost removes (j0·n+i0+1, k(i0+1)) with sets A_{i0+1}, B_{i0+1}.
    let block = if shift_block {
        tie.block + 1
    } else {
        tie.block
    };
    let x = j0 * n + block;
    let y = if shift_block {
        k * (tie.block + 1)
    } else {
        k * tie.block + k - 1
    };
    let a: Vec<usize> = (0..k).map(|j| j * n + block).collect();
    let b: Vec<usize> = (0..k).map(|t| k * block + t).collect();
    let sigma = w.inverse_standard_permutation();
    let path = CyclePath::from_inverse_perm(&sigma, k)?;
    let (rerouted, segments) = reroute_with_segments(&path, &a, &b, (x, y))?;
    let word = word_from_inverse_perm(&rerouted.to_inverse_perm(), k, n)?;
    let step = UntieStep {
        block: tie.block,
        witness: tie.witness,
        removed_edge: (x, y),
        segments,
        rerouted_path: rerouted.labels().to_vec(),
        word: word.to_string(),
    };
    Ok((word, step))
}

/// Break the rightmost tie. The result differs from `w` only inside that
/// tie's block and has no tie at any block to its right.
pub fn untie_rightmost(w: &Word, k: usize, n: usize) -> Result<Word> {
    untie_rightmost_step(w, k, n).map(|(word, _)| word)
}

pub fn untie_rightmost_step(w: &Word, k: usize, n: usize) -> Result<(Word, UntieStep)> {
    let ties = find_ties(w, k, n)?;
    let tie = *ties.last().ok_or(Error::NoTie)?;
    untie_at(w, k, n, tie, false)
}

/// Break the leftmost tie by modifying block `i0+1` only; the result has no
/// tie at any block `<= i0`.
pub fn untie_leftmost(w: &Word, k: usize, n: usize) -> Result<Word> {
    let ties = find_ties(w, k, n)?;
    let tie = *ties.first().ok_or(Error::NoTie)?;
    untie_at(w, k, n, tie, true).map(|(word, _)| word)
}

/// Apply [`untie_rightmost`] until the word is tie-free, returning the final
/// word and the step trace. Terminates within `n-1` steps.
pub fn untie_all(w: &Word, k: usize, n: usize) -> Result<(Word, Vec<UntieStep>)> {
    check_gdbw_image(w, k, n)?;
    if k < 3 {
        return Err(Error::AlphabetTooSmall);
    }
    let mut current = w.clone();
    let mut steps = Vec::new();
    while !find_ties(&current, k, n)?.is_empty() {
        if steps.len() >= n {
            return Err(Error::Internal(format!(
                "untie loop did not terminate within {n} steps"
            )));
        }
        let (next, step) = untie_rightmost_step(&current, k, n)?;
        current = next;
        steps.push(step);
    }
    Ok((current, steps))
}

/// BWT image of a completely unclustered generalized de Bruijn word of
/// length `kn`, built from the deterministic seed word.
pub fn make_unclustered_gdbw_word(k: usize, n: usize) -> Result<Word> {
    if k < 3 {
        return Err(Error::AlphabetTooSmall);
    }
    let (word, _) = untie_all(&generate_gdbw_word(k, n)?, k, n)?;
    Ok(word)
}

/// Seed-controlled variant of [`make_unclustered_gdbw_word`].
pub fn make_unclustered_gdbw_word_seeded(k: usize, n: usize, seed: u64) -> Result<Word> {
    if k < 3 {
        return Err(Error::AlphabetTooSmall);
    }
    let (word, _) = untie_all(&generate_gdbw_word_seeded(k, n, seed)?, k, n)?;
    Ok(word)
}

/// Generalized de Bruijn word of length `kn` with completely unclustered BWT.
pub fn make_unclustered_gdbw(k: usize, n: usize) -> Result<Necklace> {
    inverse_bwt(&make_unclustered_gdbw_word(k, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_gdbw;

    fn w3(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    #[test]
    fn find_ties_examples() {
        let ties = find_ties(&w3("201021120"), 3, 3).unwrap();
        assert_eq!(
            ties,
            vec![Tie {
                block: 1,
                witness: 1
            }]
        );

        let ties = find_ties(&w3("201102120"), 3, 3).unwrap();
        assert_eq!(ties.iter().map(|t| t.block).collect::<Vec<_>>(), vec![0]);

        assert!(find_ties(&w3("210210210210210210"), 3, 6)
            .unwrap()
            .is_empty());

        let ties = find_ties(&w3("210012210012210021"), 3, 6).unwrap();
        assert_eq!(
            ties.iter().map(|t| t.block).collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn find_ties_rejects_non_power() {
        assert!(matches!(
            find_ties(&w3("211"), 3, 1),
            Err(Error::NotPermutationPower)
        ));
    }

    #[test]
    fn reroute_worked_examples() {
        let path = CyclePath::new(vec![5, 6, 0, 1, 3, 2, 8, 7, 4], 3).unwrap();
        let (out, segments) = reroute_with_segments(&path, &[1, 4, 7], &[3, 4, 5], (4, 5)).unwrap();
        assert_eq!(out.labels(), &[5, 6, 0, 1, 4, 3, 2, 8, 7]);
        assert_eq!(segments[0], vec![5, 6, 0, 1]);
        assert_eq!(segments[1], vec![3, 2, 8, 7]);
        assert_eq!(segments[2], vec![4]);

        let path = CyclePath::new(vec![2, 8, 7, 5, 6, 0, 1, 4, 3], 3).unwrap();
        let (out, segments) = reroute_with_segments(&path, &[0, 3, 6], &[0, 1, 2], (3, 2)).unwrap();
        assert_eq!(out.labels(), &[2, 8, 7, 5, 6, 1, 4, 3, 0]);
        assert_eq!(segments[0], vec![2, 8, 7, 5, 6]);
        assert_eq!(segments[1], vec![0]);
        assert_eq!(segments[2], vec![1, 4, 3]);
    }

    #[test]
    fn reroute_degenerate_three_cycle() {
        let path = CyclePath::new(vec![0, 1, 2], 3).unwrap();
        let out = reroute(&path, &[0, 1, 2], &[0, 1, 2], (2, 0)).unwrap();
        assert_eq!(out.labels(), &[0, 2, 1]);
    }

    #[test]
    fn reroute_rejects_unvisited_edge() {
        let path = CyclePath::new(vec![5, 6, 0, 1, 3, 2, 8, 7, 4], 3).unwrap();
        // (1, 4) is an A x B edge but the path goes 1 -> 3.
        assert!(reroute(&path, &[1, 4, 7], &[3, 4, 5], (1, 4)).is_err());
        assert!(reroute(&path, &[1, 4], &[3, 4, 5], (4, 5)).is_err());
    }

    #[test]
    fn untie_rightmost_worked_example() {
        assert_eq!(
            untie_rightmost(&w3("201021120"), 3, 3).unwrap().to_string(),
            "201102120"
        );
        assert_eq!(
            untie_rightmost(&w3("201102120"), 3, 3).unwrap().to_string(),
            "120102120"
        );
        assert!(matches!(
            untie_rightmost(&w3("120102120"), 3, 3),
            Err(Error::NoTie)
        ));
    }

    #[test]
    fn untie_leftmost_behaviour() {
        // Leftmost tie of 201021120 is block 1; only block 2 may change.
        let w = w3("201021120");
        let out = untie_leftmost(&w, 3, 3).unwrap();
        for pos in 0..6 {
            assert_eq!(out.letters()[pos], w.letters()[pos]);
        }
        let ties = find_ties(&out, 3, 3).unwrap();
        assert!(ties.iter().all(|t| t.block > 1));

        assert!(matches!(
            untie_leftmost(&w3("120102120"), 3, 3),
            Err(Error::NoTie)
        ));

        // Leftmost tie of 210012210012210021 is block 0; only block 1 changes.
        let w = w3("210012210012210021");
        let out = untie_leftmost(&w, 3, 6).unwrap();
        for pos in 0..18 {
            if !(3..6).contains(&pos) {
                assert_eq!(out.letters()[pos], w.letters()[pos], "pos {pos}");
            }
        }
        assert!(find_ties(&out, 3, 6).unwrap().iter().all(|t| t.block > 0));
    }

    #[test]
    fn untie_all_traces_worked_example() {
        let (word, steps) = untie_all(&w3("201021120"), 3, 3).unwrap();
        assert_eq!(word.to_string(), "120102120");
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].word, "201102120");
        assert_eq!(steps[0].rerouted_path, vec![5, 6, 0, 1, 4, 3, 2, 8, 7]);
        assert_eq!(steps[1].word, "120102120");
        assert_eq!(steps[1].rerouted_path, vec![2, 8, 7, 5, 6, 1, 4, 3, 0]);
        assert_eq!(inverse_bwt(&word).unwrap().to_string(), "002212011");
    }

    #[test]
    fn make_unclustered_gdbw_small() {
        let u = make_unclustered_gdbw(3, 1).unwrap();
        assert_eq!(u.len(), 3);
        assert!(u.is_completely_unclustered());

        let u = make_unclustered_gdbw(3, 6).unwrap();
        assert_eq!(u.len(), 18);
        assert_eq!(u.bwt().run_count(), 18);
        assert!(is_gdbw(&u, 3));

        assert!(matches!(
            make_unclustered_gdbw(2, 3),
            Err(Error::AlphabetTooSmall)
        ));
    }

    #[test]
    fn untie_rightmost_is_local_and_monotone() {
        for k in 3..=5 {
            for n in 2..=6 {
                for seed in 0..5 {
                    let w = generate_gdbw_word_seeded(k, n, seed).unwrap();
                    let mut current = w;
                    let mut steps = 0;
                    loop {
                        let ties = find_ties(&current, k, n).unwrap();
                        let Some(&tie) = ties.last() else { break };
                        let next = untie_rightmost(&current, k, n).unwrap();
                        for pos in 0..k * n {
                            if !(k * tie.block..k * tie.block + k).contains(&pos) {
                                assert_eq!(
                                    next.letters()[pos],
                                    current.letters()[pos],
                                    "k={k} n={n} seed={seed} pos={pos}"
                                );
                            }
                        }
                        assert!(find_ties(&next, k, n)
                            .unwrap()
                            .iter()
                            .all(|t| t.block < tie.block));
                        current = next;
                        steps += 1;
                        assert!(steps < n);
                    }
                    assert_eq!(current.run_count(), k * n);
                }
            }
        }
    }
}
