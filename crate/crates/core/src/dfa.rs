//! Deterministic finite automata (semiautomata) and their structural
//! classifications: synchronization, sinks, nilpotency, boundedness,
//! simplicity and finite generation of the reset-word ideal.

use std::collections::{HashMap, VecDeque};

use petgraph::graph::DiGraph;

use crate::alphabet::{words_of_length, Alphabet, SymbolId, Word};
use crate::error::{Error, Result};
use crate::lang;

/// Index of a state inside a [`Dfa`].
pub type StateId = usize;

/// A complete DFA `(Q, A, δ)`. Out-regular by construction: `delta` is total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<String>,
    alphabet: Alphabet,
    /// `delta[q][a]` is the successor of `q` under symbol `a`.
    delta: Vec<Vec<StateId>>,
}

/// A nonempty subset of the states of a host DFA, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetState(pub u64);

/// A partition of the state set compatible with every letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    pub blocks: Vec<Vec<StateId>>,
}

/// Sink inventory of a DFA.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sink {
    None,
    Unique(StateId),
    Multiple(Vec<StateId>),
}

/// Verdict of the finitely-generated-ideal test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FgVerdict {
    Yes,
    /// A reachable subset `S` and a word fixing it with `Syn(S) ≠ Syn(m(f))`.
    No { subset: SubsetState, fix_word: Word },
    /// The transition monoid did not close under the cap.
    Unknown,
}

/// Aggregate of the structural classifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfaClassification {
    pub synchronizing: bool,
    pub shortest_reset_length: Option<usize>,
    pub sink: Sink,
    pub nilpotent: bool,
    /// Defined only when a unique sink exists.
    pub bounded: Option<bool>,
    pub simple: bool,
    pub strongly_connected: bool,
}

impl SubsetState {
    pub fn from_states(states: &[StateId]) -> Self {
        let mut bits = 0u64;
        for &q in states {
            bits |= 1 << q;
        }
        SubsetState(bits)
    }

    pub fn full(n: usize) -> Self {
        SubsetState(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0 >> q & 1 == 1
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..64).filter(|&q| self.contains(q))
    }
}

impl Dfa {
    pub fn new<S: Into<String>>(
        states: impl IntoIterator<Item = S>,
        alphabet: Alphabet,
        delta: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(Error::Invalid("state set must not be empty".into()));
        }
        if states.len() > 64 {
            return Err(Error::Invalid("at most 64 states are supported".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.contains(char::is_whitespace) || s.contains('|') {
                return Err(Error::Invalid(format!("invalid state token `{s}`")));
            }
            if states[..i].contains(s) {
                return Err(Error::Invalid(format!("duplicate state `{s}`")));
            }
        }
        if delta.len() != states.len() {
            return Err(Error::Invalid("transition table has wrong height".into()));
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(Error::Invalid("transition table has wrong width".into()));
            }
            if row.iter().any(|&t| t >= states.len()) {
                return Err(Error::Invalid("transition target out of range".into()));
            }
        }
        Ok(Dfa {
            states,
            alphabet,
            delta,
        })
    }

    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Result<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn step(&self, q: StateId, a: SymbolId) -> StateId {
        self.delta[q][a]
    }

    pub fn run(&self, q: StateId, word: &[SymbolId]) -> StateId {
        word.iter().fold(q, |p, &a| self.step(p, a))
    }

    pub fn step_subset(&self, set: SubsetState, a: SymbolId) -> SubsetState {
        let mut out = 0u64;
        for q in set.states().take_while(|&q| q < self.n_states()) {
            out |= 1 << self.step(q, a);
        }
        SubsetState(out)
    }

    pub fn run_subset(&self, set: SubsetState, word: &[SymbolId]) -> SubsetState {
        word.iter().fold(set, |s, &a| self.step_subset(s, a))
    }

    pub fn full_set(&self) -> SubsetState {
        SubsetState::full(self.n_states())
    }

    /// Synchronization via the pair-merging criterion: every pair of states
    /// must reach a common successor.
    pub fn is_synchronizing(&self) -> bool {
        let n = self.n_states();
        // mergeable[p][q]: some word sends p and q to the same state.
        // Backward closure from the diagonal.
        let mut mergeable = vec![false; n * n];
        let mut queue = VecDeque::new();
        for q in 0..n {
            mergeable[q * n + q] = true;
            queue.push_back((q, q));
        }
        // Reverse edges of the pair automaton.
        let mut preimages: HashMap<(StateId, StateId), Vec<(StateId, StateId)>> = HashMap::new();
        for p in 0..n {
            for q in 0..n {
                for a in 0..self.alphabet.len() {
                    let (mut x, mut y) = (self.step(p, a), self.step(q, a));
                    if x > y {
                        std::mem::swap(&mut x, &mut y);
                    }
                    preimages.entry((x, y)).or_default().push((p.min(q), p.max(q)));
                }
            }
        }
        while let Some(pair) = queue.pop_front() {
            if let Some(pres) = preimages.get(&pair) {
                for &(p, q) in pres {
                    if !mergeable[p * n + q] {
                        mergeable[p * n + q] = true;
                        queue.push_back((p, q));
                    }
                }
            }
        }
        (0..n).all(|p| (p..n).all(|q| mergeable[p * n + q]))
    }

    /// Shortest reset word by breadth-first search over subset states,
    /// exploring letters in declared order so ties break shortlex.
    pub fn shortest_reset_word(&self) -> Option<Word> {
        let full = self.full_set();
        if full.len() == 1 {
            return Some(Vec::new());
        }
        let mut parent: HashMap<SubsetState, (SubsetState, SymbolId)> = HashMap::new();
        let mut queue = VecDeque::new();
        parent.insert(full, (full, 0));
        queue.push_back(full);
        while let Some(set) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let next = self.step_subset(set, a);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert((set, a));
                    if next.len() == 1 {
                        let mut word = Vec::new();
                        let mut cur = next;
                        while cur != full {
                            let (prev, sym) = parent[&cur];
                            word.push(sym);
                            cur = prev;
                        }
                        word.reverse();
                        return Some(word);
                    }
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Sink inventory: states fixed by every letter.
    pub fn sink(&self) -> Sink {
        let sinks: Vec<StateId> = (0..self.n_states())
            .filter(|&q| (0..self.alphabet.len()).all(|a| self.step(q, a) == q))
            .collect();
        match sinks.len() {
            0 => Sink::None,
            1 => Sink::Unique(sinks[0]),
            _ => Sink::Multiple(sinks),
        }
    }

    pub fn unique_sink(&self) -> Option<StateId> {
        match self.sink() {
            Sink::Unique(s) => Some(s),
            _ => None,
        }
    }

    /// Nilpotent iff a unique sink exists and the sink-removed digraph is
    /// acyclic.
    pub fn is_nilpotent(&self) -> bool {
        let Some(s) = self.unique_sink() else {
            return false;
        };
        !self.states_on_sink_avoiding_cycles(s).iter().any(|&b| b)
    }

    /// Marks the states lying on some cycle of the sink-removed digraph.
    fn states_on_sink_avoiding_cycles(&self, sink: StateId) -> Vec<bool> {
        let n = self.n_states();
        let sccs = self.sink_removed_sccs(sink);
        let mut on_cycle = vec![false; n];
        for scc in &sccs {
            let nontrivial = scc.len() > 1
                || (0..self.alphabet.len()).any(|a| self.step(scc[0], a) == scc[0]);
            if nontrivial {
                for &q in scc {
                    on_cycle[q] = true;
                }
            }
        }
        on_cycle
    }

    fn sink_removed_sccs(&self, sink: StateId) -> Vec<Vec<StateId>> {
        let mut graph = DiGraph::<StateId, ()>::new();
        let mut nodes = HashMap::new();
        for q in 0..self.n_states() {
            if q != sink {
                nodes.insert(q, graph.add_node(q));
            }
        }
        for q in 0..self.n_states() {
            if q == sink {
                continue;
            }
            for a in 0..self.alphabet.len() {
                let t = self.step(q, a);
                if t != sink {
                    graph.add_edge(nodes[&q], nodes[&t], ());
                }
            }
        }
        petgraph::algo::tarjan_scc(&graph)
            .into_iter()
            .map(|scc| scc.into_iter().map(|ix| graph[ix]).collect())
            .collect()
    }

    /// Structural boundedness test: requires a unique sink; every nontrivial
    /// SCC of the sink-removed digraph must be a simple cycle (exactly one
    /// internal out-edge per vertex, counted per letter) and no nontrivial SCC
    /// may reach another one.
    pub fn is_bounded(&self) -> Result<bool> {
        let sink = self.unique_sink().ok_or(Error::NoUniqueSink)?;
        let sccs = self.sink_removed_sccs(sink);
        let mut scc_of: HashMap<StateId, usize> = HashMap::new();
        let mut nontrivial = vec![false; sccs.len()];
        for (i, scc) in sccs.iter().enumerate() {
            for &q in scc {
                scc_of.insert(q, i);
            }
            nontrivial[i] = scc.len() > 1
                || (0..self.alphabet.len()).any(|a| self.step(scc[0], a) == scc[0]);
        }
        for (i, scc) in sccs.iter().enumerate() {
            if !nontrivial[i] {
                continue;
            }
            for &q in scc {
                let internal = (0..self.alphabet.len())
                    .filter(|&a| {
                        let t = self.step(q, a);
                        t != sink && scc_of[&t] == i
                    })
                    .count();
                if internal != 1 {
                    return Ok(false);
                }
            }
        }
        // No nontrivial SCC may reach a different nontrivial SCC.
        for (i, scc) in sccs.iter().enumerate() {
            if !nontrivial[i] {
                continue;
            }
            let mut seen = vec![false; self.n_states()];
            let mut stack: Vec<StateId> = scc.clone();
            for &q in scc {
                seen[q] = true;
            }
            while let Some(q) = stack.pop() {
                for a in 0..self.alphabet.len() {
                    let t = self.step(q, a);
                    if t == sink || seen[t] {
                        continue;
                    }
                    if nontrivial[scc_of[&t]] && scc_of[&t] != i {
                        return Ok(false);
                    }
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        Ok(true)
    }

    /// Smallest congruence containing `(p, q)`: closure under the letter
    /// action and under the equivalence axioms.
    pub fn principal_congruence(&self, p: StateId, q: StateId) -> Congruence {
        let n = self.n_states();
        let mut uf: Vec<StateId> = (0..n).collect();
        fn find(uf: &mut Vec<StateId>, x: StateId) -> StateId {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        let mut queue = vec![(p, q)];
        while let Some((x, y)) = queue.pop() {
            let (rx, ry) = (find(&mut uf, x), find(&mut uf, y));
            if rx == ry {
                continue;
            }
            uf[rx.max(ry)] = rx.min(ry);
            for a in 0..self.alphabet.len() {
                // Merging two classes may force their letter images together;
                // pushing representatives is enough because images of merged
                // states get revisited through the queue.
                queue.push((self.step(x, a), self.step(y, a)));
            }
            // Re-push all pairs now identified so their images merge too.
            for z in 0..n {
                if find(&mut uf, z) == rx.min(ry) {
                    for a in 0..self.alphabet.len() {
                        queue.push((self.step(x, a), self.step(z, a)));
                    }
                }
            }
        }
        let mut blocks: HashMap<StateId, Vec<StateId>> = HashMap::new();
        for x in 0..n {
            let r = find(&mut uf, x);
            blocks.entry(r).or_default().push(x);
        }
        let mut blocks: Vec<Vec<StateId>> = blocks.into_values().collect();
        blocks.sort();
        Congruence { blocks }
    }

    /// Simple iff every principal congruence is universal.
    pub fn is_simple(&self) -> bool {
        let n = self.n_states();
        for p in 0..n {
            for q in p + 1..n {
                if self.principal_congruence(p, q).blocks.len() != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// Sufficient condition for simplicity: `|Q|` prime and the permutation
    /// letters act transitively.
    pub fn simple_by_permutation_criterion(&self) -> bool {
        if !is_prime(self.n_states()) {
            return false;
        }
        let perm_letters: Vec<SymbolId> = (0..self.alphabet.len())
            .filter(|&a| {
                let mut seen = vec![false; self.n_states()];
                (0..self.n_states()).all(|q| {
                    let t = self.step(q, a);
                    !std::mem::replace(&mut seen[t], true)
                })
            })
            .collect();
        if perm_letters.is_empty() {
            return self.n_states() == 1;
        }
        // Orbit of state 0 under the permutation letters and their inverses
        // (inverses are powers, so forward closure over the subgroup suffices
        // when we saturate with repeated application).
        let mut reach = vec![false; self.n_states()];
        reach[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..self.n_states() {
                if !reach[q] {
                    continue;
                }
                for &a in &perm_letters {
                    let t = self.step(q, a);
                    if !reach[t] {
                        reach[t] = true;
                        changed = true;
                    }
                }
            }
        }
        reach.iter().all(|&b| b)
    }

    /// All subsets of the form `Q·u`.
    pub fn reachable_subsets(&self) -> Vec<SubsetState> {
        let mut seen = vec![self.full_set()];
        let mut queue = VecDeque::from([self.full_set()]);
        let mut set = std::collections::HashSet::new();
        set.insert(self.full_set());
        while let Some(s) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.step_subset(s, a);
                if set.insert(t) {
                    seen.push(t);
                    queue.push_back(t);
                }
            }
        }
        seen.sort();
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n_states();
        let reach_from = |start: StateId, rev: bool| {
            let mut seen = vec![false; n];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(q) = stack.pop() {
                for p in 0..n {
                    for a in 0..self.alphabet.len() {
                        let (src, dst) = if rev { (p, q) } else { (q, p) };
                        if self.step(src, a) == dst && !seen[p] {
                            seen[p] = true;
                            stack.push(p);
                        }
                    }
                }
            }
            seen
        };
        reach_from(0, false).iter().all(|&b| b) && reach_from(0, true).iter().all(|&b| b)
    }

    /// Full structural classification.
    pub fn classify(&self) -> DfaClassification {
        let reset = self.shortest_reset_word();
        let sink = self.sink();
        let bounded = match sink {
            Sink::Unique(_) => self.is_bounded().ok(),
            _ => None,
        };
        DfaClassification {
            synchronizing: reset.is_some(),
            shortest_reset_length: reset.map(|w| w.len()),
            sink,
            nilpotent: self.is_nilpotent(),
            bounded,
            simple: self.is_simple(),
            strongly_connected: self.is_strongly_connected(),
        }
    }

    /// Enumerates the transition monoid as transformations of `Q`, BFS over
    /// generator words, capped. Returns `(transformations, shortest words)`
    /// or `None` when the cap is exceeded.
    pub fn transition_monoid(&self, cap: usize) -> Option<Vec<(Vec<StateId>, Word)>> {
        let n = self.n_states();
        let identity: Vec<StateId> = (0..n).collect();
        let mut table: Vec<(Vec<StateId>, Word)> = vec![(identity.clone(), Vec::new())];
        let mut seen = std::collections::HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![(identity, Vec::new())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (f, w) in &frontier {
                for a in 0..self.alphabet.len() {
                    let g: Vec<StateId> = f.iter().map(|&q| self.step(q, a)).collect();
                    if seen.insert(g.clone()) {
                        let mut wg = w.clone();
                        wg.push(a);
                        if table.len() >= cap {
                            return None;
                        }
                        table.push((g.clone(), wg.clone()));
                        next.push((g, wg));
                    }
                }
            }
            frontier = next;
        }
        Some(table)
    }

    /// Decides whether `Syn(A)` is a finitely generated ideal, via the
    /// reachable-subset / maximal-fixed-set characterization. The monoid
    /// enumeration is capped; exceeding it yields `Unknown`.
    pub fn is_finitely_generated_syn(&self, monoid_cap: usize) -> Result<FgVerdict> {
        if self.shortest_reset_word().is_none() {
            return Err(Error::NotSynchronizing);
        }
        let Some(monoid) = self.transition_monoid(monoid_cap) else {
            return Ok(FgVerdict::Unknown);
        };
        let full = self.full_set();
        for s in self.reachable_subsets() {
            if s.len() <= 1 || s == full {
                continue;
            }
            for (f, w) in &monoid {
                if w.is_empty() {
                    continue;
                }
                let image = apply_transformation(s, f);
                if image != s {
                    continue;
                }
                let m = eventual_image(self, f);
                let syn_s = lang::syn_from(self, s);
                let syn_m = lang::syn_from(self, m);
                if !lang::equivalent(&syn_s, &syn_m)? {
                    return Ok(FgVerdict::No {
                        subset: s,
                        fix_word: w.clone(),
                    });
                }
            }
        }
        Ok(FgVerdict::Yes)
    }
}

fn apply_transformation(set: SubsetState, f: &[StateId]) -> SubsetState {
    let mut out = 0u64;
    for q in set.states().take_while(|&q| q < f.len()) {
        out |= 1 << f[q];
    }
    SubsetState(out)
}

/// `m(f)`: the image of `f^k` for the smallest `k` with stabilized image;
/// this is the maximal subset fixed by `f`.
fn eventual_image(dfa: &Dfa, f: &[StateId]) -> SubsetState {
    let mut cur = dfa.full_set();
    loop {
        let next = apply_transformation(cur, f);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

impl Congruence {
    /// Checks the partition axioms plus compatibility with the letter action.
    pub fn is_valid_for(&self, dfa: &Dfa) -> bool {
        let n = dfa.n_states();
        let mut block_of = vec![usize::MAX; n];
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return false;
            }
            for &q in block {
                if q >= n || block_of[q] != usize::MAX {
                    return false;
                }
                block_of[q] = i;
            }
        }
        if block_of.iter().any(|&b| b == usize::MAX) {
            return false;
        }
        for block in &self.blocks {
            for a in 0..dfa.alphabet().len() {
                let target = block_of[dfa.step(block[0], a)];
                if block.iter().any(|&q| block_of[dfa.step(q, a)] != target) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exhaustive word-based nilpotency oracle: all words of length `|Q|` send
/// `Q` to the sink singleton. Intended for small instances in tests.
pub fn nilpotent_by_word_oracle(dfa: &Dfa) -> bool {
    let Some(s) = dfa.unique_sink() else {
        return false;
    };
    let target = SubsetState::from_states(&[s]);
    words_of_length(dfa.alphabet().len(), dfa.n_states())
        .all(|w| dfa.run_subset(dfa.full_set(), &w) == target)
}
