//! Generalized de Bruijn multigraphs `DB(k,n)`, Eulerian cycles, the
//! line-graph lift to Hamiltonian cycles of `DB(k,kn)`, and the
//! cycle / permutation / word correspondences.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{inverse_bwt, Necklace, Word};

/// `DB(k,n)`: vertices `0..n-1`, edges `m -> (km+i) mod n` for `i = 0..k-1`.
/// Stored implicitly; adjacency is arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GdbGraph {
    k: usize,
    n: usize,
}

/// An edge of a [`GdbGraph`], identified by `(source, letter)` so that
/// parallel edges and self-loops are distinct values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub source: usize,
    pub letter: u8,
}

impl GdbGraph {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if !(2..=crate::word::MAX_ALPHABET).contains(&k) {
            return Err(Error::BadAlphabet(k));
        }
        if n == 0 {
            return Err(Error::Precondition(
                "graph needs at least one vertex".into(),
            ));
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.k * self.n
    }

    pub fn target(&self, e: EdgeRef) -> usize {
        (self.k * e.source + e.letter as usize) % self.n
    }

    /// `(km+i) mod n` for `i = 0..k-1`, in order of `i`.
    pub fn out_neighbors(&self, m: usize) -> Result<Vec<usize>> {
        if m >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: m,
                order: self.n,
            });
        }
        Ok((0..self.k).map(|i| (self.k * m + i) % self.n).collect())
    }

    /// Label of the line-graph vertex corresponding to `e`:
    /// `(k·source + letter) mod kn`.
    pub fn line_graph_label(&self, e: EdgeRef) -> usize {
        (self.k * e.source + e.letter as usize) % (self.k * self.n)
    }

    /// Deterministic Eulerian cycle: start at vertex 0, always extend along
    /// the unused edge with the smallest letter (Hierholzer).
    pub fn eulerian_cycle(&self) -> Vec<EdgeRef> {
        let order: Vec<Vec<u8>> = (0..self.n).map(|_| (0..self.k as u8).collect()).collect();
        self.eulerian_cycle_with_order(order)
    }

    /// Seed-controlled randomized variant: unused edges are taken in a
    /// per-vertex order shuffled by the seed.
    pub fn eulerian_cycle_seeded(&self, seed: u64) -> Vec<EdgeRef> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order: Vec<Vec<u8>> = (0..self.n)
            .map(|_| {
                let mut letters: Vec<u8> = (0..self.k as u8).collect();
                letters.shuffle(&mut rng);
                letters
            })
            .collect();
        self.eulerian_cycle_with_order(order)
    }

    fn eulerian_cycle_with_order(&self, order: Vec<Vec<u8>>) -> Vec<EdgeRef> {
        let mut next = vec![0usize; self.n];
        let mut stack: Vec<(usize, Option<EdgeRef>)> = vec![(0, None)];
        let mut circuit = Vec::with_capacity(self.edge_count());
        while let Some(&(v, incoming)) = stack.last() {
            if next[v] < self.k {
                let letter = order[v][next[v]];
                next[v] += 1;
                let edge = EdgeRef { source: v, letter };
                stack.push((self.target(edge), Some(edge)));
            } else {
                stack.pop();
                if let Some(e) = incoming {
                    circuit.push(e);
                }
            }
        }
        circuit.reverse();
        debug_assert_eq!(circuit.len(), self.edge_count());
        circuit
    }

    /// DOT text with one edge line per [`EdgeRef`]; byte-stable across runs.
    pub fn export_dot(&self, with_line_labels: bool) -> String {
        let mut out = String::new();
        out.push_str("digraph {\n");
        for m in 0..self.n {
            for i in 0..self.k {
                let e = EdgeRef {
                    source: m,
                    letter: i as u8,
                };
                if with_line_labels {
                    let _ = writeln!(
                        out,
                        "  {} -> {} [label={}];",
                        m,
                        self.target(e),
                        self.line_graph_label(e)
                    );
                } else {
                    let _ = writeln!(out, "  {} -> {};", m, self.target(e));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Vertex-label sequence of a Hamiltonian cycle of `DB(k, m)` where
/// `m = labels.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclePath {
    labels: Vec<usize>,
    k: usize,
}

impl CyclePath {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::InvalidCyclePath("empty label sequence".into()));
        }
        if k < 2 {
            return Err(Error::BadAlphabet(k));
        }
        let mut seen = vec![false; m];
        for &l in &labels {
            if l >= m {
                return Err(Error::InvalidCyclePath(format!(
                    "label {l} out of range 0..{m}"
                )));
            }
            if seen[l] {
                return Err(Error::InvalidCyclePath(format!("label {l} repeated")));
            }
            seen[l] = true;
        }
        for t in 0..m {
            let cur = labels[t];
            let next = labels[(t + 1) % m];
            if !is_gdb_edge(k, m, cur, next) {
                return Err(Error::InvalidCyclePath(format!(
                    "{cur} -> {next} is not an edge of DB({k},{m})"
                )));
            }
        }
        Ok(Self { labels, k })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `σ` with `σ(labels_t) = labels_{t+1 mod m}`; a single `m`-cycle.
    pub fn to_inverse_perm(&self) -> Permutation {
        let m = self.labels.len();
        let mut one_line = vec![0usize; m];
        for t in 0..m {
            one_line[self.labels[t]] = self.labels[(t + 1) % m];
        }
        Permutation::new(one_line).expect("distinct labels give a bijection")
    }

    /// The cycle of a single-cycle permutation read as a path, starting at
    /// label 0.
    pub fn from_inverse_perm(sigma: &Permutation, k: usize) -> Result<Self> {
        if !sigma.is_single_cycle() {
            return Err(Error::InvalidCyclePath(
                "permutation is not a single cycle".into(),
            ));
        }
        let m = sigma.len();
        let mut labels = Vec::with_capacity(m);
        let mut cur = 0usize;
        for _ in 0..m {
            labels.push(cur);
            cur = sigma.apply(cur);
        }
        Self::new(labels, k)
    }

    /// Same cyclic sequence rotated to start at `label`.
    pub fn rotated_to(&self, label: usize) -> Result<Self> {
        let pos = self
            .labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::InvalidCyclePath(format!("label {label} not on path")))?;
        let mut labels = Vec::with_capacity(self.labels.len());
        labels.extend_from_slice(&self.labels[pos..]);
        labels.extend_from_slice(&self.labels[..pos]);
        Ok(Self { labels, k: self.k })
    }
}

pub(crate) fn is_gdb_edge(k: usize, n: usize, from: usize, to: usize) -> bool {
    (to + n - (k * from) % n) % n < k
}

/// Lift an Eulerian cycle of `G` to the Hamiltonian cycle of `DB(k,kn)` whose
/// labels are the line-graph labels of its edges.
pub fn eulerian_to_hamiltonian(cycle: &[EdgeRef], g: &GdbGraph) -> Result<CyclePath> {
    if cycle.len() != g.edge_count() {
        return Err(Error::InvalidEulerianCycle(format!(
            "expected {} edges, got {}",
            g.edge_count(),
            cycle.len()
        )));
    }
    let mut used = vec![false; g.edge_count()];
    for window in 0..cycle.len() {
        let e = cycle[window];
        if e.source >= g.n() || e.letter as usize >= g.k() {
            return Err(Error::InvalidEulerianCycle(format!(
                "edge ({}, {}) not in graph",
                e.source, e.letter
            )));
        }
        let id = e.source * g.k() + e.letter as usize;
        if used[id] {
            return Err(Error::InvalidEulerianCycle(format!(
                "edge ({}, {}) repeated",
                e.source, e.letter
            )));
        }
        used[id] = true;
        let next = cycle[(window + 1) % cycle.len()];
        if g.target(e) != next.source {
            return Err(Error::InvalidEulerianCycle(format!(
                "edges do not chain at position {window}"
            )));
        }
    }
    let labels: Vec<usize> = cycle.iter().map(|&e| g.line_graph_label(e)).collect();
    CyclePath::new(labels, g.k())
}

/// Word `w` of length `kn` with `w[σ(jn+i)] = j`; always an
/// alphabet-permutation power when `σ` comes from a Hamiltonian cycle.
pub fn word_from_inverse_perm(sigma: &Permutation, k: usize, n: usize) -> Result<Word> {
    if sigma.len() != k * n {
        return Err(Error::Precondition(format!(
            "permutation has size {}, expected {}",
            sigma.len(),
            k * n
        )));
    }
    // Validates single-cycle and the DB(k,kn) edge structure.
    CyclePath::from_inverse_perm(sigma, k)?;
    let mut letters = vec![0u8; k * n];
    for j in 0..k {
        for i in 0..n {
            letters[sigma.apply(j * n + i)] = j as u8;
        }
    }
    let w = Word::new(letters, k)?;
    debug_assert!(w.is_alphabet_permutation_power());
    Ok(w)
}

/// BWT image of the deterministic generalized de Bruijn word of length `kn`.
pub fn generate_gdbw_word(k: usize, n: usize) -> Result<Word> {
    let g = GdbGraph::new(k, n)?;
    let path = eulerian_to_hamiltonian(&g.eulerian_cycle(), &g)?;
    word_from_inverse_perm(&path.to_inverse_perm(), k, n)
}

/// Seed-controlled variant of [`generate_gdbw_word`].
pub fn generate_gdbw_word_seeded(k: usize, n: usize, seed: u64) -> Result<Word> {
    let g = GdbGraph::new(k, n)?;
    let path = eulerian_to_hamiltonian(&g.eulerian_cycle_seeded(seed), &g)?;
    word_from_inverse_perm(&path.to_inverse_perm(), k, n)
}

/// Deterministic generalized de Bruijn word of length `kn`.
pub fn generate_gdbw(k: usize, n: usize) -> Result<Necklace> {
    inverse_bwt(&generate_gdbw_word(k, n)?)
}

/// True iff `|u| ≡ 0 (mod k)` and `BWT(u)` is an alphabet-permutation power
/// over `Σ_k`.
pub fn is_gdbw(u: &Necklace, k: usize) -> bool {
    if k < 2 || !u.len().is_multiple_of(k) {
        return false;
    }
    match u.bwt().with_alphabet(k) {
        Ok(w) => w.is_alphabet_permutation_power(),
        Err(_) => false,
    }
}

/// Guard for exhaustive Hamiltonian-cycle enumeration.
pub const HAMILTONIAN_ENUM_GUARD: usize = 12;

/// All Hamiltonian cycles of `DB(k,kn)` up to rotation, each fixed to start
/// at label 0.
pub fn enumerate_hamiltonian_cycles(k: usize, n: usize) -> Result<Vec<CyclePath>> {
    let g = GdbGraph::new(k, n)?;
    let m = k * n;
    if m > HAMILTONIAN_ENUM_GUARD {
        return Err(Error::GuardExceeded(format!(
            "kn = {m} exceeds enumeration limit {HAMILTONIAN_ENUM_GUARD}"
        )));
    }
    let _ = g;
    let mut out = Vec::new();
    let mut visited = vec![false; m];
    let mut path = Vec::with_capacity(m);
    visited[0] = true;
    path.push(0usize);
    backtrack_hamiltonian(k, m, &mut visited, &mut path, &mut out);
    Ok(out)
}

fn backtrack_hamiltonian(
    k: usize,
    m: usize,
    visited: &mut Vec<bool>,
    path: &mut Vec<usize>,
    out: &mut Vec<CyclePath>,
) {
    if path.len() == m {
        let last = *path.last().unwrap();
        if is_gdb_edge(k, m, last, 0) {
            out.push(CyclePath::new(path.clone(), k).expect("backtracked path is valid"));
        }
        return;
    }
    let cur = *path.last().unwrap();
    for j in 0..k {
        let next = (k * cur + j) % m;
        if visited[next] {
            continue;
        }
        visited[next] = true;
        path.push(next);
        backtrack_hamiltonian(k, m, visited, path, out);
        path.pop();
        visited[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn out_neighbors_examples() {
        let g = GdbGraph::new(3, 6).unwrap();
        assert_eq!(g.out_neighbors(2).unwrap(), vec![0, 1, 2]);
        assert_eq!(g.out_neighbors(0).unwrap(), vec![0, 1, 2]);
        let g9 = GdbGraph::new(3, 9).unwrap();
        assert_eq!(g9.out_neighbors(4).unwrap(), vec![3, 4, 5]);
        assert!(g.out_neighbors(6).is_err());
    }

    #[test]
    fn degree_regularity() {
        for k in 2..=5 {
            for n in 1..=8 {
                let g = GdbGraph::new(k, n).unwrap();
                let mut indeg = vec![0usize; n];
                for m in 0..n {
                    for &t in &g.out_neighbors(m).unwrap() {
                        indeg[t] += 1;
                    }
                }
                assert!(indeg.iter().all(|&d| d == k), "k={k} n={n}");
            }
        }
    }

    /// Independent edge-cover checker for Eulerian cycles.
    fn check_eulerian(cycle: &[EdgeRef], g: &GdbGraph) {
        assert_eq!(cycle.len(), g.edge_count());
        let distinct: HashSet<(usize, u8)> = cycle.iter().map(|e| (e.source, e.letter)).collect();
        assert_eq!(distinct.len(), g.edge_count());
        for t in 0..cycle.len() {
            assert_eq!(g.target(cycle[t]), cycle[(t + 1) % cycle.len()].source);
        }
    }

    #[test]
    fn eulerian_cycle_small_graphs() {
        let g = GdbGraph::new(3, 1).unwrap();
        let c = g.eulerian_cycle();
        check_eulerian(&c, &g);
        let letters: HashSet<u8> = c.iter().map(|e| e.letter).collect();
        assert_eq!(letters, HashSet::from([0, 1, 2]));

        let g = GdbGraph::new(3, 2).unwrap();
        check_eulerian(&g.eulerian_cycle(), &g);

        let g = GdbGraph::new(3, 3).unwrap();
        check_eulerian(&g.eulerian_cycle(), &g);
    }

    #[test]
    fn eulerian_cycle_covers_every_edge() {
        for k in 2..=5 {
            for n in 1..=10 {
                let g = GdbGraph::new(k, n).unwrap();
                check_eulerian(&g.eulerian_cycle(), &g);
                check_eulerian(&g.eulerian_cycle_seeded(7), &g);
            }
        }
    }

    #[test]
    fn eulerian_cycle_is_deterministic() {
        let g = GdbGraph::new(3, 6).unwrap();
        assert_eq!(g.eulerian_cycle(), g.eulerian_cycle());
        assert_eq!(g.eulerian_cycle_seeded(42), g.eulerian_cycle_seeded(42));
    }

    #[test]
    fn line_graph_label_examples() {
        let g = GdbGraph::new(3, 6).unwrap();
        assert_eq!(
            g.line_graph_label(EdgeRef {
                source: 4,
                letter: 2
            }),
            14
        );
        assert_eq!(
            g.line_graph_label(EdgeRef {
                source: 0,
                letter: 0
            }),
            0
        );
        assert_eq!(
            g.line_graph_label(EdgeRef {
                source: 5,
                letter: 2
            }),
            17
        );
    }

    #[test]
    fn line_graph_isomorphism() {
        // e -> label(e) is a bijection onto vertices of DB(k,kn) and chains
        // in DB(k,n) correspond exactly to edges of DB(k,kn).
        let k = 3;
        for n in 1..=6 {
            let g = GdbGraph::new(k, n).unwrap();
            let mut edges = Vec::new();
            for m in 0..n {
                for i in 0..k {
                    edges.push(EdgeRef {
                        source: m,
                        letter: i as u8,
                    });
                }
            }
            let labels: HashSet<usize> = edges.iter().map(|&e| g.line_graph_label(e)).collect();
            assert_eq!(labels.len(), k * n);
            assert_eq!(labels, (0..k * n).collect());
            for &e1 in &edges {
                for &e2 in &edges {
                    let chains = g.target(e1) == e2.source;
                    let edge_in_line =
                        is_gdb_edge(k, k * n, g.line_graph_label(e1), g.line_graph_label(e2));
                    assert_eq!(chains, edge_in_line, "n={n} e1={e1:?} e2={e2:?}");
                }
            }
        }
    }

    #[test]
    fn eulerian_to_hamiltonian_small() {
        for (k, n) in [(3, 1), (3, 3), (3, 6), (2, 2)] {
            let g = GdbGraph::new(k, n).unwrap();
            let path = eulerian_to_hamiltonian(&g.eulerian_cycle(), &g).unwrap();
            assert_eq!(path.len(), k * n);
        }
    }

    #[test]
    fn eulerian_to_hamiltonian_rejects_bad_input() {
        let g = GdbGraph::new(3, 3).unwrap();
        let mut cycle = g.eulerian_cycle();
        cycle.swap(0, 4);
        assert!(eulerian_to_hamiltonian(&cycle, &g).is_err());
        assert!(eulerian_to_hamiltonian(&cycle[..5], &g).is_err());
    }

    #[test]
    fn cycle_to_inverse_perm_examples() {
        let path = CyclePath::new(vec![5, 6, 0, 1, 3, 2, 8, 7, 4], 3).unwrap();
        let sigma = path.to_inverse_perm();
        assert_eq!(sigma.cycles(), vec![vec![0, 1, 3, 2, 8, 7, 4, 5, 6]]);

        let path = CyclePath::new(vec![0, 1, 2], 3).unwrap();
        assert_eq!(path.to_inverse_perm().cycles(), vec![vec![0, 1, 2]]);

        let path = CyclePath::new(
            vec![0, 2, 8, 7, 4, 14, 6, 1, 5, 17, 15, 9, 10, 13, 3, 11, 16, 12],
            3,
        )
        .unwrap();
        assert_eq!(
            path.to_inverse_perm().cycles(),
            vec![vec![
                0, 2, 8, 7, 4, 14, 6, 1, 5, 17, 15, 9, 10, 13, 3, 11, 16, 12
            ]]
        );
    }

    #[test]
    fn word_from_inverse_perm_examples() {
        let sigma = Permutation::from_cycle(
            &[0, 2, 8, 7, 4, 14, 6, 1, 5, 17, 15, 9, 10, 13, 3, 11, 16, 12],
            18,
        )
        .unwrap();
        assert_eq!(
            word_from_inverse_perm(&sigma, 3, 6).unwrap().to_string(),
            "210210210210210210"
        );

        let sigma = Permutation::from_cycle(&[0, 1, 3, 2, 8, 7, 4, 5, 6], 9).unwrap();
        assert_eq!(
            word_from_inverse_perm(&sigma, 3, 3).unwrap().to_string(),
            "201021120"
        );

        let sigma = Permutation::from_cycle(&[0, 1, 2], 3).unwrap();
        let w = word_from_inverse_perm(&sigma, 3, 1).unwrap();
        assert!(w.is_alphabet_permutation_power());
    }

    #[test]
    fn word_from_inverse_perm_rejects_multi_cycle() {
        let sigma = Permutation::identity(9);
        assert!(word_from_inverse_perm(&sigma, 3, 3).is_err());
    }

    #[test]
    fn generate_gdbw_examples() {
        let u = generate_gdbw(3, 3).unwrap();
        assert_eq!(u.len(), 9);
        assert!(is_gdbw(&u, 3));

        let u = generate_gdbw(3, 1).unwrap();
        assert_eq!(u.len(), 3);
        assert!(["012", "021"].contains(&u.to_string().as_str()));

        let u = generate_gdbw(2, 2).unwrap();
        assert_eq!(u.to_string(), "0011");
    }

    #[test]
    fn generate_gdbw_always_valid() {
        for k in 2..=5 {
            for n in 1..=8 {
                let u = generate_gdbw(k, n).unwrap();
                assert_eq!(u.len(), k * n);
                assert!(is_gdbw(&u, k), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn is_gdbw_examples() {
        let v = Word::parse("011021001120212220", 3).unwrap().canonical();
        assert!(is_gdbw(&v, 3));
        let u = Word::parse("001022112", 3).unwrap().canonical();
        assert!(is_gdbw(&u, 3));
        let not = Word::parse("000111", 3).unwrap().canonical();
        assert!(!is_gdbw(&not, 3));
    }

    #[test]
    fn enumerate_hamiltonian_cycles_counts() {
        assert_eq!(enumerate_hamiltonian_cycles(3, 1).unwrap().len(), 2);
        assert_eq!(enumerate_hamiltonian_cycles(3, 2).unwrap().len(), 4);
        assert_eq!(enumerate_hamiltonian_cycles(2, 1).unwrap().len(), 1);
        assert!(enumerate_hamiltonian_cycles(3, 5).is_err());
    }

    #[test]
    fn dot_export_shapes() {
        let g = GdbGraph::new(3, 6).unwrap();
        let dot = g.export_dot(false);
        assert_eq!(dot.matches("->").count(), 18);
        for m in 0..6usize {
            for i in 0..3usize {
                assert!(dot.contains(&format!("  {} -> {};", m, (3 * m + i) % 6)));
            }
        }

        let g1 = GdbGraph::new(3, 1).unwrap();
        let dot1 = g1.export_dot(false);
        assert_eq!(dot1.matches("0 -> 0;").count(), 3);

        let g2 = GdbGraph::new(2, 2).unwrap();
        assert_eq!(g2.export_dot(false).matches("->").count(), 4);
    }

    #[test]
    fn dot_export_line_labels() {
        let g = GdbGraph::new(3, 6).unwrap();
        let dot = g.export_dot(true);
        for label in 0..18 {
            assert!(dot.contains(&format!("[label={label}];")), "label {label}");
        }
    }
}
