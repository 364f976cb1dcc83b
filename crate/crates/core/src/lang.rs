//! Regular-language engine: nondeterministic acceptors with determinization,
//! boolean algebra and inclusion, plus the synchronization-related languages
//! of a DFA and finitely generated two-sided ideals.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{words_up_to, Alphabet, SymbolId, Word};
use crate::dfa::{Dfa, SubsetState};
use crate::error::{Error, Result};

/// A finite acceptor, possibly nondeterministic (no epsilon moves).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangAcceptor {
    alphabet: Alphabet,
    /// `trans[s][a]` lists the successor states.
    trans: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
}

/// A finitely generated two-sided ideal `A*UA*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLang {
    pub alphabet: Alphabet,
    pub generators: Vec<Word>,
}

impl LangAcceptor {
    pub fn new(
        alphabet: Alphabet,
        trans: Vec<Vec<Vec<usize>>>,
        initial: Vec<usize>,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = trans.len();
        if finals.len() != n {
            return Err(Error::Invalid("finals length mismatch".into()));
        }
        for row in &trans {
            if row.len() != alphabet.len() {
                return Err(Error::Invalid("transition row width mismatch".into()));
            }
            if row.iter().flatten().any(|&t| t >= n) {
                return Err(Error::Invalid("transition target out of range".into()));
            }
        }
        if initial.iter().any(|&s| s >= n) {
            return Err(Error::Invalid("initial state out of range".into()));
        }
        Ok(LangAcceptor {
            alphabet,
            trans,
            initial,
            finals,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.trans.len()
    }

    /// The empty language over the alphabet.
    pub fn empty(alphabet: Alphabet) -> Self {
        LangAcceptor {
            alphabet,
            trans: vec![],
            initial: vec![],
            finals: vec![],
        }
    }

    /// `A*`.
    pub fn all_words(alphabet: Alphabet) -> Self {
        let loops = vec![(0..alphabet.len()).map(|_| vec![0]).collect()];
        LangAcceptor {
            alphabet,
            trans: loops,
            initial: vec![0],
            finals: vec![true],
        }
    }

    /// `A^{≥k}`: all words of length at least `k`.
    pub fn at_least_length(alphabet: Alphabet, k: usize) -> Self {
        let m = alphabet.len();
        let trans = (0..=k)
            .map(|i| {
                let next = if i < k { i + 1 } else { k };
                (0..m).map(|_| vec![next]).collect()
            })
            .collect();
        let mut finals = vec![false; k + 1];
        finals[k] = true;
        LangAcceptor {
            alphabet,
            trans,
            initial: vec![0],
            finals,
        }
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    /// Single successor lookup; only meaningful on determinized acceptors.
    pub fn det_step(&self, s: usize, a: SymbolId) -> usize {
        self.trans[s][a][0]
    }

    /// Initial state of a determinized acceptor.
    pub fn det_initial(&self) -> usize {
        self.initial[0]
    }

    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        let mut cur: BTreeSet<usize> = self.initial.iter().copied().collect();
        for &a in word {
            cur = cur
                .iter()
                .flat_map(|&s| self.trans[s][a].iter().copied())
                .collect();
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&s| self.finals[s])
    }

    /// Subset construction. The result is deterministic and complete (the
    /// empty subset acts as the dead state).
    pub fn determinize(&self) -> LangAcceptor {
        let m = self.alphabet.len();
        let start: BTreeSet<usize> = self.initial.iter().copied().collect();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        index.insert(start.clone(), 0);
        let mut order = vec![start];
        let mut trans: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let cur = order[i].clone();
            finals.push(cur.iter().any(|&s| self.finals[s]));
            let mut row = Vec::with_capacity(m);
            for a in 0..m {
                let next: BTreeSet<usize> = cur
                    .iter()
                    .flat_map(|&s| self.trans[s][a].iter().copied())
                    .collect();
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    order.push(next);
                    order.len() - 1
                });
                row.push(vec![id]);
            }
            trans.push(row);
            i += 1;
        }
        LangAcceptor {
            alphabet: self.alphabet.clone(),
            trans,
            initial: vec![0],
            finals,
        }
    }

    pub fn complement(&self) -> LangAcceptor {
        let mut det = self.determinize();
        for f in det.finals.iter_mut() {
            *f = !*f;
        }
        det
    }

    pub fn intersect(&self, other: &LangAcceptor) -> Result<LangAcceptor> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let m = self.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut initial = Vec::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = *index.entry((p, q)).or_insert_with(|| {
                    order.push((p, q));
                    order.len() - 1
                });
                if !initial.contains(&id) {
                    initial.push(id);
                }
            }
        }
        let mut trans: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            finals.push(self.finals[p] && other.finals[q]);
            let mut row = Vec::with_capacity(m);
            for a in 0..m {
                let mut targets = Vec::new();
                for &p2 in &self.trans[p][a] {
                    for &q2 in &other.trans[q][a] {
                        let id = *index.entry((p2, q2)).or_insert_with(|| {
                            order.push((p2, q2));
                            order.len() - 1
                        });
                        if !targets.contains(&id) {
                            targets.push(id);
                        }
                    }
                }
                row.push(targets);
            }
            trans.push(row);
            i += 1;
        }
        Ok(LangAcceptor {
            alphabet: self.alphabet.clone(),
            trans,
            initial,
            finals,
        })
    }

    pub fn union(&self, other: &LangAcceptor) -> Result<LangAcceptor> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let shift = self.n_states();
        let mut trans = self.trans.clone();
        for row in &other.trans {
            trans.push(
                row.iter()
                    .map(|ts| ts.iter().map(|&t| t + shift).collect())
                    .collect(),
            );
        }
        let mut initial = self.initial.clone();
        initial.extend(other.initial.iter().map(|&s| s + shift));
        let mut finals = self.finals.clone();
        finals.extend(other.finals.iter().copied());
        Ok(LangAcceptor {
            alphabet: self.alphabet.clone(),
            trans,
            initial,
            finals,
        })
    }

    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.n_states()];
        let mut stack = self.initial.clone();
        for &s in &self.initial {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            if self.finals[s] {
                return false;
            }
            for row in &self.trans[s] {
                for &t in row {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        true
    }

    /// Shortest accepted word, shortlex tie-break; `None` for the empty
    /// language.
    pub fn shortest_member(&self) -> Option<Word> {
        let det = self.determinize();
        if det.finals[0] {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(usize, SymbolId)>> = vec![None; det.n_states()];
        let mut seen = vec![false; det.n_states()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for a in 0..det.alphabet.len() {
                let t = det.trans[s][a][0];
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                parent[t] = Some((s, a));
                if det.finals[t] {
                    let mut word = Vec::new();
                    let mut cur = t;
                    while let Some((p, sym)) = parent[cur] {
                        word.push(sym);
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                queue.push_back(t);
            }
        }
        None
    }
}

impl LangAcceptor {
    /// Determinizes and merges behaviorally equivalent states (Moore
    /// refinement). Keeps iterated language constructions small.
    pub fn minimized(&self) -> LangAcceptor {
        let det = self.determinize();
        let n = det.n_states();
        let m = det.alphabet.len();
        let mut block_of: Vec<usize> = det.finals.iter().map(|&f| usize::from(f)).collect();
        loop {
            let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|s| {
                    let sig: Vec<usize> = (0..m).map(|a| block_of[det.trans[s][a][0]]).collect();
                    let fresh = index.len();
                    *index.entry((block_of[s], sig)).or_insert(fresh)
                })
                .collect();
            if next == block_of {
                break;
            }
            block_of = next;
        }
        let n_blocks = block_of.iter().max().map_or(0, |&b| b + 1);
        let mut rep = vec![usize::MAX; n_blocks];
        for s in 0..n {
            if rep[block_of[s]] == usize::MAX {
                rep[block_of[s]] = s;
            }
        }
        let trans = rep
            .iter()
            .map(|&s| (0..m).map(|a| vec![block_of[det.trans[s][a][0]]]).collect())
            .collect();
        let finals = rep.iter().map(|&s| det.finals[s]).collect();
        LangAcceptor {
            alphabet: det.alphabet,
            trans,
            initial: vec![block_of[0]],
            finals,
        }
    }
}

pub fn includes(bigger: &LangAcceptor, smaller: &LangAcceptor) -> Result<bool> {
    Ok(smaller.intersect(&bigger.complement())?.is_empty())
}

pub fn equivalent(l1: &LangAcceptor, l2: &LangAcceptor) -> Result<bool> {
    Ok(includes(l1, l2)? && includes(l2, l1)?)
}

/// Power-automaton acceptor tracking `S·u` from the given start subset, with
/// an arbitrary acceptance predicate on subsets.
fn power_acceptor(
    dfa: &Dfa,
    start: SubsetState,
    accept: impl Fn(SubsetState) -> bool,
) -> LangAcceptor {
    let m = dfa.alphabet().len();
    let mut index: HashMap<SubsetState, usize> = HashMap::new();
    index.insert(start, 0);
    let mut order = vec![start];
    let mut trans: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut finals = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let cur = order[i];
        finals.push(accept(cur));
        let mut row = Vec::with_capacity(m);
        for a in 0..m {
            let next = dfa.step_subset(cur, a);
            let id = *index.entry(next).or_insert_with(|| {
                order.push(next);
                order.len() - 1
            });
            row.push(vec![id]);
        }
        trans.push(row);
        i += 1;
    }
    LangAcceptor {
        alphabet: dfa.alphabet().clone(),
        trans,
        initial: vec![0],
        finals,
    }
}

/// `Syn(A) = {u : |Q·u| = 1}`.
pub fn syn_language(dfa: &Dfa) -> LangAcceptor {
    syn_from(dfa, dfa.full_set())
}

/// `Syn(S) = {u : |S·u| = 1}`.
pub fn syn_from(dfa: &Dfa, start: SubsetState) -> LangAcceptor {
    power_acceptor(dfa, start, |s| s.len() == 1)
}

/// `R(s) = {u : Q·u = {s}}`.
pub fn r_language(dfa: &Dfa, s: usize) -> Result<LangAcceptor> {
    if s >= dfa.n_states() {
        return Err(Error::UnknownState(format!("#{s}")));
    }
    let target = SubsetState::from_states(&[s]);
    Ok(power_acceptor(dfa, dfa.full_set(), |set| set == target))
}

/// `Fix(S) = {u ∈ A⁺ : S·u = S}`. A fresh initial state excludes the empty
/// word.
pub fn fix_language(dfa: &Dfa, start: SubsetState) -> LangAcceptor {
    let inner = power_acceptor(dfa, start, |set| set == start);
    // Clone state 0's transitions into a fresh non-final initial state.
    let shift = 1;
    let mut trans: Vec<Vec<Vec<usize>>> = vec![inner.trans[0]
        .iter()
        .map(|ts| ts.iter().map(|&t| t + shift).collect())
        .collect()];
    for row in &inner.trans {
        trans.push(
            row.iter()
                .map(|ts| ts.iter().map(|&t| t + shift).collect())
                .collect(),
        );
    }
    let mut finals = vec![false];
    finals.extend(inner.finals.iter().copied());
    LangAcceptor {
        alphabet: inner.alphabet,
        trans,
        initial: vec![0],
        finals,
    }
}

impl IdealLang {
    pub fn new(alphabet: Alphabet, generators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("ideal needs at least one generator".into()));
        }
        for w in &generators {
            if w.iter().any(|&a| a >= alphabet.len()) {
                return Err(Error::UnknownSymbol("generator symbol out of range".into()));
            }
        }
        Ok(IdealLang {
            alphabet,
            generators,
        })
    }

    /// Acceptor for `A*UA*`: nondeterministically guess where a generator
    /// starts.
    pub fn acceptor(&self) -> LangAcceptor {
        let m = self.alphabet.len();
        // State 0: A* loop, initial. State 1: accepting A* loop.
        let mut trans: Vec<Vec<Vec<usize>>> = vec![
            (0..m).map(|_| vec![0]).collect(),
            (0..m).map(|_| vec![1]).collect(),
        ];
        let mut finals = vec![false, true];
        for w in &self.generators {
            if w.is_empty() {
                // ε generator: the ideal is all of A*.
                finals[0] = true;
                continue;
            }
            // Chain of |w|-1 intermediate states; last step lands on state 1.
            let mut cur = 0usize;
            for (i, &a) in w.iter().enumerate() {
                let next = if i + 1 == w.len() {
                    1
                } else {
                    trans.push((0..m).map(|_| vec![]).collect());
                    finals.push(false);
                    trans.len() - 1
                };
                trans[cur][a].push(next);
                cur = next;
            }
        }
        LangAcceptor {
            alphabet: self.alphabet.clone(),
            trans,
            initial: vec![0],
            finals,
        }
    }
}

/// Checks that the acceptor denotes a two-sided ideal: `aL ⊆ L` and
/// `La ⊆ L` for every letter.
pub fn is_ideal(l: &LangAcceptor) -> Result<bool> {
    let m = l.alphabet().len();
    for a in 0..m {
        if !includes(l, &prepend_letter(l, a))? || !includes(l, &append_letter(l, a))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{a·w : w ∈ L}`.
fn prepend_letter(l: &LangAcceptor, a: SymbolId) -> LangAcceptor {
    let shift = 1;
    let m = l.alphabet().len();
    let mut trans: Vec<Vec<Vec<usize>>> = vec![(0..m).map(|_| vec![]).collect()];
    trans[0][a] = l.initial.iter().map(|&s| s + shift).collect();
    let mut finals = vec![false];
    for row in &l.trans {
        trans.push(
            row.iter()
                .map(|ts| ts.iter().map(|&t| t + shift).collect())
                .collect(),
        );
    }
    // Accepting `a` alone requires ε ∈ L: model it by a fresh final state.
    finals.extend(l.finals.iter().copied());
    if l.initial.iter().any(|&s| l.finals[s]) {
        trans.push((0..m).map(|_| vec![]).collect());
        finals.push(true);
        let f = trans.len() - 1;
        trans[0][a].push(f);
    }
    LangAcceptor {
        alphabet: l.alphabet.clone(),
        trans,
        initial: vec![0],
        finals,
    }
}

/// `{w·a : w ∈ L}`.
fn append_letter(l: &LangAcceptor, a: SymbolId) -> LangAcceptor {
    let m = l.alphabet().len();
    let mut trans = l.trans.clone();
    let mut finals = vec![false; l.n_states()];
    trans.push((0..m).map(|_| vec![]).collect());
    finals.push(true);
    let f = trans.len() - 1;
    for (s, &is_final) in l.finals.iter().enumerate() {
        if is_final {
            trans[s][a].push(f);
        }
    }
    LangAcceptor {
        alphabet: l.alphabet.clone(),
        trans,
        initial: l.initial.clone(),
        finals,
    }
}

/// All members of the ideal language up to `max_len` none of whose proper
/// factors belong to it (the bifix code generating the ideal).
pub fn minimal_ideal_words(l: &LangAcceptor, max_len: usize) -> Result<Vec<Word>> {
    if !is_ideal(l)? {
        return Err(Error::NotAnIdeal);
    }
    let mut out = Vec::new();
    for w in words_up_to(l.alphabet().len(), max_len) {
        if !l.accepts(&w) {
            continue;
        }
        // For an ideal, a proper factor lies in L iff one of the two maximal
        // proper factors does.
        if w.is_empty() || (!l.accepts(&w[1..]) && !l.accepts(&w[..w.len() - 1])) {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn adding_machine_dfa() -> Dfa {
        Dfa::new(
            ["q", "s"],
            Alphabet::binary(),
            vec![vec![1, 0], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn syn_language_against_direct_simulation() {
        for dfa in [
            adding_machine_dfa(),
            families::cerny(3).unwrap(),
            families::cerny(4).unwrap(),
        ] {
            let syn = syn_language(&dfa);
            for w in words_up_to(dfa.alphabet().len(), 6) {
                let direct = dfa.run_subset(dfa.full_set(), &w).len() == 1;
                assert_eq!(syn.accepts(&w), direct);
            }
        }
    }

    #[test]
    fn adding_machine_syn_is_words_containing_zero() {
        let dfa = adding_machine_dfa();
        let syn = syn_language(&dfa);
        // Words containing at least one 0 = ideal generated by {0}.
        let has_zero = IdealLang::new(Alphabet::binary(), vec![vec![0]])
            .unwrap()
            .acceptor();
        assert!(equivalent(&syn, &has_zero).unwrap());
    }

    #[test]
    fn permutation_dfa_has_empty_syn() {
        let d = Dfa::new(
            ["p", "q"],
            Alphabet::binary(),
            vec![vec![1, 1], vec![0, 0]],
        )
        .unwrap();
        assert!(syn_language(&d).is_empty());
    }

    #[test]
    fn r_language_examples() {
        let dfa = adding_machine_dfa();
        let sink = dfa.state_index("s").unwrap();
        let q = dfa.state_index("q").unwrap();
        assert!(equivalent(&r_language(&dfa, sink).unwrap(), &syn_language(&dfa)).unwrap());
        assert!(r_language(&dfa, q).unwrap().is_empty());
        let one = Dfa::new(["x"], Alphabet::binary(), vec![vec![0, 0]]).unwrap();
        assert!(equivalent(
            &r_language(&one, 0).unwrap(),
            &LangAcceptor::all_words(Alphabet::binary())
        )
        .unwrap());
    }

    #[test]
    fn syn_from_and_fix() {
        let dfa = families::cerny(3).unwrap();
        assert!(equivalent(&syn_from(&dfa, dfa.full_set()), &syn_language(&dfa)).unwrap());
        let singleton = SubsetState::from_states(&[0]);
        assert!(syn_from(&dfa, singleton).accepts(&[]));
        // Image of the merging letter 1: Q·1 = {1, 2} for C_3; Fix of it is
        // nonempty and excludes ε.
        let s = dfa.step_subset(dfa.full_set(), 1);
        let fix = fix_language(&dfa, s);
        assert!(!fix.accepts(&[]));
        assert!(!fix.is_empty());
        let w = fix.shortest_member().unwrap();
        assert!(!w.is_empty());
        assert_eq!(dfa.run_subset(s, &w), s);
    }

    #[test]
    fn ideal_acceptors() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let contains_a = IdealLang::new(ab.clone(), vec![vec![0]]).unwrap().acceptor();
        assert!(contains_a.accepts(&[1, 0, 1]));
        assert!(!contains_a.accepts(&[1, 1]));
        let factor_ab = IdealLang::new(ab.clone(), vec![vec![0, 1]]).unwrap().acceptor();
        assert!(factor_ab.accepts(&[1, 0, 1, 1]));
        assert!(!factor_ab.accepts(&[1, 0, 0]));
        assert!(is_ideal(&contains_a).unwrap());
        assert!(is_ideal(&factor_ab).unwrap());
        // A^{≥2} is an ideal; a non-ideal: the singleton {a}.
        assert!(is_ideal(&LangAcceptor::at_least_length(ab.clone(), 2)).unwrap());
        let mut just_a = IdealLang::new(ab, vec![vec![0]]).unwrap().acceptor();
        // Strip the trailing A* loop to get {a} followed by anything minus...
        // simpler: build the singleton directly.
        just_a = LangAcceptor::new(
            just_a.alphabet.clone(),
            vec![vec![vec![1], vec![]], vec![vec![], vec![]]],
            vec![0],
            vec![false, true],
        )
        .unwrap();
        assert!(!is_ideal(&just_a).unwrap());
    }

    #[test]
    fn minimal_words_of_ideals() {
        let bin = Alphabet::binary();
        let geq2 = LangAcceptor::at_least_length(bin.clone(), 2);
        let min = minimal_ideal_words(&geq2, 4).unwrap();
        assert_eq!(min, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let contains_a = IdealLang::new(ab, vec![vec![0]]).unwrap().acceptor();
        assert_eq!(minimal_ideal_words(&contains_a, 4).unwrap(), vec![vec![0]]);
        // Syn(C_3): minimal-word count grows with the length bound.
        let c3 = families::cerny(3).unwrap();
        let syn = syn_language(&c3);
        let upto8 = minimal_ideal_words(&syn, 8).unwrap();
        let upto12 = minimal_ideal_words(&syn, 12).unwrap();
        assert!(upto12.len() > upto8.len());
        // Non-ideal input is rejected.
        let singleton = LangAcceptor::new(
            bin,
            vec![vec![vec![1], vec![]], vec![vec![], vec![]]],
            vec![0],
            vec![false, true],
        )
        .unwrap();
        assert_eq!(minimal_ideal_words(&singleton, 3), Err(Error::NotAnIdeal));
    }

    #[test]
    fn boolean_algebra_basics() {
        let bin = Alphabet::binary();
        let geq2 = LangAcceptor::at_least_length(bin.clone(), 2);
        let geq3 = LangAcceptor::at_least_length(bin.clone(), 3);
        assert!(includes(&geq2, &geq3).unwrap());
        assert!(!includes(&geq3, &geq2).unwrap());
        assert!(equivalent(&geq2, &geq2.determinize()).unwrap());
        assert!(equivalent(&geq2.complement().complement(), &geq2).unwrap());
        let union = geq2.union(&geq3).unwrap();
        assert!(equivalent(&union, &geq2).unwrap());
        assert!(equivalent(&geq2.intersect(&geq3).unwrap(), &geq3).unwrap());
        assert_eq!(geq3.shortest_member(), Some(vec![0, 0, 0]));
        assert!(LangAcceptor::empty(bin).shortest_member().is_none());
    }

    #[test]
    fn shortest_member_of_cerny_syn() {
        let c4 = families::cerny(4).unwrap();
        let w = syn_language(&c4).shortest_member().unwrap();
        assert_eq!(w.len(), 9);
        assert_eq!(w, c4.shortest_reset_word().unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let bin = LangAcceptor::all_words(Alphabet::binary());
        let ab = LangAcceptor::all_words(Alphabet::new(["a", "b"]).unwrap());
        assert_eq!(bin.intersect(&ab), Err(Error::AlphabetMismatch));
        assert_eq!(bin.union(&ab).err(), Some(Error::AlphabetMismatch));
    }
}
