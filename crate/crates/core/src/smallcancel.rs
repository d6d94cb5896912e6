//! Pieces of a one-relator presentation and the metric small cancellation
//! conditions `C'(λ)`, `T(4)` and `(T')`, with explicit witnesses.
//!
//! A piece is a non-empty common prefix of two distinct elements of the
//! symmetrized set. All elements are inserted into a prefix trie; a trie
//! node reached by at least two elements is a piece, and membership of a
//! reduced word among the subwords of the symmetrized set is a trie walk.

use thiserror::Error;

use crate::rational::Rational;
use crate::words::{is_proper_power, symmetrized_set, CyclicWord, Letter, Word};

/// Relator length up to which triple enumeration is always exhaustive.
pub const EXHAUSTIVE_RELATOR_LENGTH: usize = 64;
/// Candidate-triple budget applied above [`EXHAUSTIVE_RELATOR_LENGTH`].
pub const TRIPLE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmallCancelError {
    #[error("relator is a proper power; use the torsion branch")]
    ProperPowerInput,
    #[error("relator is empty")]
    EmptyRelator,
    #[error("lambda must satisfy 0 < lambda < 1, got {0}")]
    InvalidLambda(Rational),
}

/// One place where a word occurs: `length` letters of symmetrized-set
/// element `element`, starting at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub element: usize,
    pub position: usize,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub word: Word,
    /// Every element having `word` as a prefix, in element order.
    pub occurrences: Vec<Occurrence>,
}

/// Pieces `w1, w2, w3` with `w1 w2`, `w1 w3` and `w2^-1 w3` all subwords
/// of the symmetrized set. `hosts` records one occurrence of each of the
/// three concatenations, in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleWitness {
    pub w1: Word,
    pub w2: Word,
    pub w3: Word,
    pub hosts: [Occurrence; 3],
    pub total_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Piece(Piece),
    Triple(TripleWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub parameter: Option<Rational>,
    /// Set when triple enumeration stopped at [`TRIPLE_CAP`].
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TripleOptions {
    /// Admit at most one empty `W_i`, as long as all three
    /// concatenations stay non-empty.
    pub allow_empty_piece: bool,
}

#[derive(Debug, Clone)]
struct TrieNode {
    children: Vec<(Letter, u32)>,
    /// Elements whose prefix reaches this node, ascending.
    elements: Vec<u32>,
    depth: u32,
}

/// Prefix trie over the elements of a symmetrized set.
#[derive(Debug, Clone)]
pub struct PrefixTrie {
    nodes: Vec<TrieNode>,
}

impl PrefixTrie {
    pub fn new(elements: &[Word]) -> Self {
        let mut nodes = vec![TrieNode {
            children: Vec::new(),
            elements: (0..elements.len() as u32).collect(),
            depth: 0,
        }];
        for (idx, w) in elements.iter().enumerate() {
            let mut cur = 0usize;
            for &l in w.letters() {
                let next = match nodes[cur].children.iter().find(|(c, _)| *c == l) {
                    Some(&(_, n)) => n as usize,
                    None => {
                        let n = nodes.len();
                        let depth = nodes[cur].depth + 1;
                        nodes.push(TrieNode {
                            children: Vec::new(),
                            elements: Vec::new(),
                            depth,
                        });
                        nodes[cur].children.push((l, n as u32));
                        n
                    }
                };
                nodes[next].elements.push(idx as u32);
                cur = next;
            }
        }
        Self { nodes }
    }

    fn step(&self, node: usize, l: Letter) -> Option<usize> {
        self.nodes[node]
            .children
            .iter()
            .find(|(c, _)| *c == l)
            .map(|&(_, n)| n as usize)
    }

    fn walk_from(&self, mut node: usize, letters: &[Letter]) -> Option<usize> {
        for &l in letters {
            node = self.step(node, l)?;
        }
        Some(node)
    }

    fn walk_inverse_from(&self, mut node: usize, letters: &[Letter]) -> Option<usize> {
        for &l in letters.iter().rev() {
            node = self.step(node, l.inverse())?;
        }
        Some(node)
    }

    /// Elements having `w` as a prefix. Empty if none.
    pub fn elements_with_prefix(&self, w: &[Letter]) -> &[u32] {
        match self.walk_from(0, w) {
            Some(n) => &self.nodes[n].elements,
            None => &[],
        }
    }

    /// True iff `w` is a non-empty prefix of some element.
    pub fn contains(&self, w: &[Letter]) -> bool {
        !w.is_empty() && self.walk_from(0, w).is_some()
    }
}

/// Everything the condition checks need, computed once per relator.
#[derive(Debug, Clone)]
pub struct PieceAnalysis {
    relator: CyclicWord,
    elements: Vec<Word>,
    trie: PrefixTrie,
    pieces: Vec<Piece>,
}

impl PieceAnalysis {
    pub fn new(relator: &CyclicWord) -> Result<Self, SmallCancelError> {
        if relator.is_empty() {
            return Err(SmallCancelError::EmptyRelator);
        }
        if is_proper_power(relator).is_proper_power {
            return Err(SmallCancelError::ProperPowerInput);
        }
        let elements = symmetrized_set(relator);
        let trie = PrefixTrie::new(&elements);
        let mut pieces = Vec::new();
        // depth-first over the trie so that prefixes are visited in order
        let mut stack = vec![(0usize, Vec::<Letter>::new())];
        while let Some((node, word)) = stack.pop() {
            let n = &trie.nodes[node];
            if n.depth > 0 {
                if n.elements.len() < 2 {
                    continue;
                }
                pieces.push(Piece {
                    word: Word::new(word.clone()),
                    occurrences: n
                        .elements
                        .iter()
                        .map(|&e| Occurrence {
                            element: e as usize,
                            position: 0,
                            length: word.len(),
                        })
                        .collect(),
                });
            }
            for &(l, child) in &n.children {
                let mut w = word.clone();
                w.push(l);
                stack.push((child as usize, w));
            }
        }
        pieces.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then(a.word.cmp(&b.word)));
        Ok(Self {
            relator: relator.clone(),
            elements,
            trie,
            pieces,
        })
    }

    pub fn relator(&self) -> &CyclicWord {
        &self.relator
    }

    pub fn relator_length(&self) -> usize {
        self.relator.len()
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn trie(&self) -> &PrefixTrie {
        &self.trie
    }

    /// Pieces sorted by length, then lexicographically.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn max_piece_length(&self) -> usize {
        self.pieces.last().map_or(0, |p| p.word.len())
    }

    pub fn is_piece(&self, w: &[Letter]) -> bool {
        !w.is_empty() && self.trie.elements_with_prefix(w).len() >= 2
    }

    /// `C'(λ)`: every piece is strictly shorter than `λ r`.
    pub fn check_metric(&self, lambda: Rational) -> Result<ConditionReport, SmallCancelError> {
        if lambda <= Rational::from_integer(0) || lambda >= Rational::from_integer(1) {
            return Err(SmallCancelError::InvalidLambda(lambda));
        }
        let r = self.relator_length() as i64;
        let max = self.max_piece_length();
        // l < (p/q) r  <=>  l q < p r, q > 0
        let holds = (max as i64) * lambda.denom() < lambda.numer() * r;
        let witnesses = if holds {
            Vec::new()
        } else {
            let longest = self
                .pieces
                .iter()
                .find(|p| p.word.len() == max)
                .expect("a violating piece exists");
            vec![Witness::Piece(longest.clone())]
        };
        Ok(ConditionReport {
            holds,
            witnesses,
            parameter: Some(lambda),
            capped: false,
        })
    }

    /// Every triple witness, sorted by `(w1, w2, w3)`.
    pub fn triples(&self, opts: TripleOptions) -> TripleScan {
        let cap = if self.relator_length() > EXHAUSTIVE_RELATOR_LENGTH {
            Some(TRIPLE_CAP)
        } else {
            None
        };
        self.triples_with_cap(opts, cap)
    }

    fn occurrence_of(&self, node: usize) -> Occurrence {
        let n = &self.trie.nodes[node];
        Occurrence {
            element: n.elements[0] as usize,
            position: 0,
            length: n.depth as usize,
        }
    }

    pub(crate) fn triples_with_cap(&self, opts: TripleOptions, cap: Option<usize>) -> TripleScan {
        let empty = Word::empty();
        // lexicographic order makes the loops below emit witnesses sorted
        let mut candidates: Vec<&Word> = self.pieces.iter().map(|p| &p.word).collect();
        candidates.sort();
        if opts.allow_empty_piece {
            candidates.insert(0, &empty);
        }
        let mut witnesses = Vec::new();
        let mut examined = 0usize;
        let mut capped = false;
        'outer: for w1 in &candidates {
            let Some(n1) = self.trie.walk_from(0, w1.letters()) else {
                continue;
            };
            // W2 (and W3) such that w1 w2 is a subword
            let partners: Vec<(&Word, usize)> = candidates
                .iter()
                .filter_map(|w| {
                    self.trie
                        .walk_from(n1, w.letters())
                        .filter(|&n| self.trie.nodes[n].depth > 0)
                        .map(|n| (*w, n))
                })
                .collect();
            for &(w2, n12) in &partners {
                let Some(n2inv) = self.trie.walk_inverse_from(0, w2.letters()) else {
                    continue;
                };
                for &(w3, n13) in &partners {
                    examined += 1;
                    if cap.is_some_and(|c| examined > c) {
                        capped = true;
                        break 'outer;
                    }
                    let empties = [w1, w2, w3].iter().filter(|w| w.is_empty()).count();
                    if empties > 1 {
                        continue;
                    }
                    let Some(n23) = self.trie.walk_from(n2inv, w3.letters()) else {
                        continue;
                    };
                    if self.trie.nodes[n23].depth == 0 {
                        continue;
                    }
                    witnesses.push(TripleWitness {
                        w1: (*w1).clone(),
                        w2: w2.clone(),
                        w3: w3.clone(),
                        hosts: [
                            self.occurrence_of(n12),
                            self.occurrence_of(n13),
                            self.occurrence_of(n23),
                        ],
                        total_length: w1.len() + w2.len() + w3.len(),
                    });
                }
            }
        }
        debug_assert!(witnesses.windows(2).all(|p| (&p[0].w1, &p[0].w2, &p[0].w3) < (&p[1].w1, &p[1].w2, &p[1].w3)));
        TripleScan { witnesses, capped }
    }

    pub fn check_t4(&self, opts: TripleOptions) -> ConditionReport {
        let scan = self.triples(opts);
        report_from_triples(scan.witnesses, scan.capped)
    }

    pub fn check_tprime(&self, opts: TripleOptions) -> ConditionReport {
        let scan = self.triples(opts);
        tprime_from_scan(&scan, self.relator_length())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleScan {
    pub witnesses: Vec<TripleWitness>,
    pub capped: bool,
}

fn report_from_triples(triples: Vec<TripleWitness>, capped: bool) -> ConditionReport {
    ConditionReport {
        holds: triples.is_empty() && !capped,
        witnesses: triples.into_iter().map(Witness::Triple).collect(),
        parameter: None,
        capped,
    }
}

/// `(T')` from a completed scan: violators have `2 * total >= r`.
pub fn tprime_from_scan(scan: &TripleScan, relator_length: usize) -> ConditionReport {
    let violators: Vec<TripleWitness> = scan
        .witnesses
        .iter()
        .filter(|t| 2 * t.total_length >= relator_length)
        .cloned()
        .collect();
    let mut report = report_from_triples(violators, false);
    // a capped scan can only refute, never confirm
    if scan.capped && report.holds {
        report.holds = false;
        report.capped = true;
    }
    report.parameter = Some(Rational::new(1, 2));
    report
}

/// `T(4)` report from a completed scan.
pub fn t4_from_scan(scan: &TripleScan) -> ConditionReport {
    report_from_triples(scan.witnesses.clone(), scan.capped)
}

pub fn enumerate_pieces(relator: &CyclicWord) -> Result<Vec<Piece>, SmallCancelError> {
    Ok(PieceAnalysis::new(relator)?.pieces)
}

pub fn check_metric(
    relator: &CyclicWord,
    lambda: Rational,
) -> Result<ConditionReport, SmallCancelError> {
    PieceAnalysis::new(relator)?.check_metric(lambda)
}

pub fn check_t4(relator: &CyclicWord, opts: TripleOptions) -> Result<ConditionReport, SmallCancelError> {
    Ok(PieceAnalysis::new(relator)?.check_t4(opts))
}

pub fn check_tprime(
    relator: &CyclicWord,
    opts: TripleOptions,
) -> Result<ConditionReport, SmallCancelError> {
    Ok(PieceAnalysis::new(relator)?.check_tprime(opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::cyclic_reduce;
    use std::collections::{BTreeMap, BTreeSet, HashSet};

    fn cw(codes: &[i32]) -> CyclicWord {
        cyclic_reduce(&Word::from_signed(codes))
    }

    fn example_one() -> CyclicWord {
        cw(&[1, 1, 1, 1, 2, 1, 2, 1, -2, -1, 2, 2, 2, -1, 2])
    }

    /// Counts distinct places (orientation, start) of every cyclic subword
    /// of R and R^-1 with length below r; a piece occurs at two places.
    fn oracle_pieces(r: &CyclicWord) -> BTreeMap<Vec<Letter>, usize> {
        let fwd: Vec<Letter> = r.letters().to_vec();
        let bwd: Vec<Letter> = fwd.iter().rev().map(|l| l.inverse()).collect();
        let n = fwd.len();
        let mut counts: BTreeMap<Vec<Letter>, BTreeSet<(usize, usize)>> = BTreeMap::new();
        for (o, s) in [&fwd, &bwd].iter().enumerate() {
            for start in 0..n {
                for len in 1..n {
                    let sub: Vec<Letter> = (0..len).map(|k| s[(start + k) % n]).collect();
                    counts.entry(sub).or_default().insert((o, start));
                }
            }
        }
        counts
            .into_iter()
            .filter(|(_, places)| places.len() >= 2)
            .map(|(w, places)| (w, places.len()))
            .collect()
    }

    #[test]
    fn pieces_of_distinct_letters_are_empty() {
        assert!(enumerate_pieces(&cw(&[1, 2, 3])).unwrap().is_empty());
    }

    #[test]
    fn pieces_of_aabb_are_single_letters() {
        let pieces = enumerate_pieces(&cw(&[1, 1, 2, 2])).unwrap();
        let words: BTreeSet<Word> = pieces.iter().map(|p| p.word.clone()).collect();
        let expected: BTreeSet<Word> = [[1], [2], [-1], [-2]]
            .iter()
            .map(|c| Word::from_signed(c))
            .collect();
        assert_eq!(words, expected);
        let oracle: BTreeSet<Word> = oracle_pieces(&cw(&[1, 1, 2, 2]))
            .into_keys()
            .map(Word::new)
            .collect();
        assert_eq!(words, oracle);
    }

    #[test]
    fn example_one_longest_piece_has_length_three() {
        let a = PieceAnalysis::new(&example_one()).unwrap();
        assert_eq!(a.max_piece_length(), 3);
        let oracle = oracle_pieces(&example_one());
        assert_eq!(oracle.keys().map(Vec::len).max(), Some(3));
        assert_eq!(a.pieces().len(), oracle.len());
    }

    #[test]
    fn pieces_are_prefix_closed() {
        let a = PieceAnalysis::new(&example_one()).unwrap();
        let set: HashSet<&Word> = a.pieces().iter().map(|p| &p.word).collect();
        for p in a.pieces() {
            for k in 1..p.word.len() {
                assert!(set.contains(&Word::new(p.word.letters()[..k].to_vec())));
            }
            assert!(p.occurrences.len() >= 2);
        }
    }

    #[test]
    fn proper_power_is_rejected() {
        assert_eq!(
            enumerate_pieces(&cw(&[1, 2, 1, 2])).unwrap_err(),
            SmallCancelError::ProperPowerInput
        );
    }

    #[test]
    fn metric_condition_examples() {
        let r = example_one();
        assert!(check_metric(&r, Rational::new(1, 4)).unwrap().holds);
        let c16 = check_metric(&r, Rational::new(1, 6)).unwrap();
        assert!(!c16.holds);
        match &c16.witnesses[0] {
            Witness::Piece(p) => assert_eq!(p.word.len(), 3),
            other => panic!("unexpected witness {other:?}"),
        }
        let aabb = check_metric(&cw(&[1, 1, 2, 2]), Rational::new(1, 4)).unwrap();
        assert!(!aabb.holds);
        assert!(check_metric(&r, Rational::new(1, 1)).is_err());
        assert!(check_metric(&r, Rational::new(0, 1)).is_err());
    }

    #[test]
    fn t4_and_tprime_examples() {
        let opts = TripleOptions::default();
        let abc = cw(&[1, 2, 3]);
        assert!(check_t4(&abc, opts).unwrap().holds);
        assert!(check_tprime(&abc, opts).unwrap().holds);

        let r = example_one();
        let t4 = check_t4(&r, opts).unwrap();
        assert!(!t4.holds);
        assert!(!t4.witnesses.is_empty());
        let tp = check_tprime(&r, opts).unwrap();
        assert!(tp.holds);
        for w in &t4.witnesses {
            let Witness::Triple(t) = w else { panic!() };
            assert!(2 * t.total_length < 15);
        }
    }

    #[test]
    fn triple_hosts_point_at_the_concatenations() {
        let a = PieceAnalysis::new(&example_one()).unwrap();
        let scan = a.triples(TripleOptions::default());
        for t in &scan.witnesses {
            let cats = [
                t.w1.concat(&t.w2),
                t.w1.concat(&t.w3),
                t.w2.inverse().concat(&t.w3),
            ];
            for (cat, host) in cats.iter().zip(t.hosts.iter()) {
                assert!(cat.is_reduced());
                let e = &a.elements()[host.element];
                assert_eq!(&e.letters()[host.position..host.position + host.length], cat.letters());
            }
        }
    }

    #[test]
    fn aabb_triples_match_exhaustive_scan() {
        let r = cw(&[1, 1, 2, 2]);
        let a = PieceAnalysis::new(&r).unwrap();
        let pieces: Vec<Vec<Letter>> = oracle_pieces(&r).into_keys().collect();
        let elems = symmetrized_set(&r);
        let is_sub = |w: &[Letter]| {
            elems
                .iter()
                .any(|e| e.letters().len() >= w.len() && &e.letters()[..w.len()] == w)
        };
        let mut expected = BTreeSet::new();
        for p1 in &pieces {
            for p2 in &pieces {
                for p3 in &pieces {
                    let c1: Vec<Letter> = p1.iter().chain(p2).copied().collect();
                    let c2: Vec<Letter> = p1.iter().chain(p3).copied().collect();
                    let inv2 = Word::new(p2.clone()).inverse();
                    let c3: Vec<Letter> = inv2.letters().iter().chain(p3).copied().collect();
                    if is_sub(&c1) && is_sub(&c2) && is_sub(&c3) {
                        expected.insert((p1.clone(), p2.clone(), p3.clone()));
                    }
                }
            }
        }
        let got: BTreeSet<_> = a
            .triples(TripleOptions::default())
            .witnesses
            .into_iter()
            .map(|t| (t.w1.letters().to_vec(), t.w2.letters().to_vec(), t.w3.letters().to_vec()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_piece_flag_only_adds_triples() {
        let r = example_one();
        let a = PieceAnalysis::new(&r).unwrap();
        let plain = a.triples(TripleOptions::default()).witnesses;
        let with_empty = a
            .triples(TripleOptions {
                allow_empty_piece: true,
            })
            .witnesses;
        assert!(with_empty.len() > plain.len());
        for t in &plain {
            assert!(with_empty.contains(t));
        }
        for t in &with_empty {
            let empties = [&t.w1, &t.w2, &t.w3].iter().filter(|w| w.is_empty()).count();
            assert!(empties <= 1);
        }
    }

    #[test]
    fn cap_marks_report() {
        let a = PieceAnalysis::new(&example_one()).unwrap();
        let scan = a.triples_with_cap(TripleOptions::default(), Some(10));
        assert!(scan.capped);
        assert!(!t4_from_scan(&scan).holds);
        let tp = tprime_from_scan(&scan, 15);
        assert!(!tp.holds && tp.capped);
    }

    #[test]
    fn verdicts_invariant_under_rotation_and_inversion() {
        let base = Word::from_signed(&[1, 1, 1, 1, 2, 1, 2, 1, -2, -1, 2, 2, 2, -1, 2]);
        let reference = PieceAnalysis::new(&cyclic_reduce(&base)).unwrap();
        let opts = TripleOptions::default();
        for k in 0..base.len() {
            for w in [base.rotated(k), base.rotated(k).inverse()] {
                let a = PieceAnalysis::new(&cyclic_reduce(&w)).unwrap();
                for lambda in [Rational::new(1, 6), Rational::new(1, 4)] {
                    assert_eq!(
                        a.check_metric(lambda).unwrap().holds,
                        reference.check_metric(lambda).unwrap().holds
                    );
                }
                assert_eq!(a.check_t4(opts).holds, reference.check_t4(opts).holds);
                assert_eq!(a.check_tprime(opts).holds, reference.check_tprime(opts).holds);
            }
        }
    }
}
