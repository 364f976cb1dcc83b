//! Exact group/semigroup exploration: element enumeration with canonical
//! forms, element orders, relation search, the infinite-order coloring of
//! non-nilpotent sink automata and the finite-iff-nilpotent experiment.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::{words_of_length, SymbolId, Word};
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::exec;
use crate::mealy::{color, gen, inv, Element, Generator, GroupColoring, GroupWord, MealyMachine};

/// Exact order of an element, or the cap it survived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Finite(usize),
    ExceedsCap(usize),
}

/// Result of exhaustive group enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureStatus {
    Closed { order: usize },
    CapExceeded,
}

/// Canonical elements found by BFS over generator words, with one shortest
/// word per element.
#[derive(Debug, Clone)]
pub struct ElementTable {
    pub elements: Vec<(Element, GroupWord)>,
    pub status: ClosureStatus,
}

/// Canonical powers larger than this switch the order check from minimized
/// products to witness evaluation (some shift elements have `2^n`-state
/// canonical `n`-th powers).
const ORDER_STATE_CAP: usize = 4096;

pub fn element_order_of(e: &Element, cap: usize) -> Result<OrderResult> {
    if e.is_identity() {
        return Ok(OrderResult::Finite(1));
    }
    let mut p = e.clone();
    for n in 2..=cap {
        p = p.compose(e)?;
        if p.is_identity() {
            return Ok(OrderResult::Finite(n));
        }
        if p.n_states() > ORDER_STATE_CAP {
            // Certify every remaining power ≠ id by exhibiting a moved word;
            // still exact, just not via the product machine.
            for m in n + 1..=cap {
                if power_witness(e, m).is_none() {
                    return Err(Error::ResourceExceeded(format!(
                        "order check: power {m} too large to minimize and no \
                         short witness of non-identity found"
                    )));
                }
            }
            return Ok(OrderResult::ExceedsCap(cap));
        }
    }
    Ok(OrderResult::ExceedsCap(cap))
}

/// A word moved by `e^m`, if one is found among all short words and
/// single-spike words `x·yᴸ`.
fn power_witness(e: &Element, m: usize) -> Option<Word> {
    let syms = e.alphabet().len();
    let moved = |w: &Word| -> bool {
        let mut cur = w.clone();
        for _ in 0..m {
            cur = e.apply(&cur);
        }
        cur != *w
    };
    for w in crate::alphabet::words_up_to(syms, 8) {
        if moved(&w) {
            return Some(w);
        }
    }
    for exp in 4..=9 {
        let len = 1usize << exp;
        for x in 0..syms {
            for y in 0..syms {
                let mut w = vec![x];
                w.extend(std::iter::repeat(y).take(len));
                if moved(&w) {
                    return Some(w);
                }
            }
        }
    }
    None
}

pub fn element_order(machine: &MealyMachine, g: &[Generator], cap: usize) -> Result<OrderResult> {
    element_order_of(&machine.element_of_word(g)?, cap)
}

/// BFS over the group generated by the state functions and their inverses.
pub fn enumerate_group(machine: &MealyMachine, element_cap: usize) -> Result<ElementTable> {
    if !machine.is_invertible() {
        return Err(Error::NotInvertible("enumeration needs a group".into()));
    }
    let gens: Vec<(Generator, Element)> = (0..machine.n_states())
        .flat_map(|q| [gen(q), inv(q)])
        .map(|g| Ok((g, machine.element(g)?)))
        .collect::<Result<_>>()?;
    let identity = Element::identity(machine.alphabet().clone());
    let mut seen: HashSet<Element> = HashSet::from([identity.clone()]);
    let mut elements: Vec<(Element, GroupWord)> = vec![(identity, Vec::new())];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let (base, word) = elements[i].clone();
        for (g, ge) in &gens {
            let next = base.compose(ge)?;
            if seen.insert(next.clone()) {
                if elements.len() >= element_cap {
                    return Ok(ElementTable {
                        elements,
                        status: ClosureStatus::CapExceeded,
                    });
                }
                let mut w = word.clone();
                w.push(*g);
                queue.push_back(elements.len());
                elements.push((next, w));
            }
        }
    }
    let order = elements.len();
    Ok(ElementTable {
        elements,
        status: ClosureStatus::Closed { order },
    })
}

/// All pairs of distinct positive generator words up to `max_len` that
/// define equal elements.
pub fn relation_search(
    machine: &MealyMachine,
    max_len: usize,
) -> Result<Vec<(GroupWord, GroupWord)>> {
    let n = machine.n_states();
    let mut words: Vec<GroupWord> = Vec::new();
    for len in 1..=max_len {
        words.extend(words_of_length(n, len).map(|w| w.into_iter().map(gen).collect::<Vec<_>>()));
    }
    let elems: Vec<Result<Element>> =
        exec::map_vec(words.clone(), |w| machine.element_of_word(&w));
    let mut by_elem: HashMap<Element, Vec<usize>> = HashMap::new();
    for (i, e) in elems.into_iter().enumerate() {
        by_elem.entry(e?).or_default().push(i);
    }
    let mut pairs = Vec::new();
    let mut groups: Vec<Vec<usize>> = by_elem.into_values().filter(|v| v.len() > 1).collect();
    groups.sort();
    for group in groups {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                pairs.push((words[i].clone(), words[j].clone()));
            }
        }
    }
    Ok(pairs)
}

/// Which branch of the infinite-order construction applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionCase {
    /// Sink distance within the cycle length: block-level odometer.
    DLeK,
    /// Sink distance exceeding the cycle length.
    DGtK,
}

/// The coloring produced for a non-nilpotent sink automaton, together with
/// the data needed to verify it.
#[derive(Debug, Clone)]
pub struct InfiniteOrderColoring {
    pub coloring: GroupColoring,
    pub q0: StateId,
    /// Cycle label `v = x₀…x_{k−1}` with `q₀·v = q₀`.
    pub cycle_word: Word,
    /// Path label `y` with `q₀·y = sink`; padded with `x` beyond the path in
    /// the d ≤ k case.
    pub path_word: Word,
    pub case: ConstructionCase,
}

/// Builds a group coloring whose group contains an element of infinite
/// order, following the cycle/path construction for synchronizing
/// non-nilpotent automata with a sink.
pub fn adding_machine_coloring(dfa: &Dfa) -> Result<InfiniteOrderColoring> {
    let sink = dfa.unique_sink().ok_or(Error::NoUniqueSink)?;
    if dfa.alphabet().len() < 2 {
        return Err(Error::Invalid("construction needs |A| > 1".into()));
    }
    if dfa.shortest_reset_word().is_none() {
        return Err(Error::NotSynchronizing);
    }
    if dfa.is_nilpotent() {
        return Err(Error::Nilpotent);
    }
    let on_cycle = states_on_sink_avoiding_cycles(dfa, sink);
    // Candidate cycles: shortest simple sink-avoiding cycle per start state,
    // shortlex labels; then candidate paths to the sink whose interior
    // states avoid all sink-avoiding cycles.
    let mut candidates: Vec<(StateId, Word)> = Vec::new();
    for q0 in 0..dfa.n_states() {
        if q0 == sink || !on_cycle[q0] {
            continue;
        }
        if let Some(v) = shortest_simple_cycle(dfa, q0, sink) {
            candidates.push((q0, v));
        }
    }
    candidates.sort_by(|(p, v), (q, w)| (v.len(), v, p).cmp(&(w.len(), w, q)));
    for (q0, v) in candidates {
        let paths = sink_paths(dfa, q0, sink, &on_cycle);
        for y in paths {
            if let Some(result) = try_build(dfa, sink, q0, &v, &y, &on_cycle)? {
                return Ok(result);
            }
        }
    }
    Err(Error::Invalid(
        "no admissible cycle/path pair found".into(),
    ))
}

fn states_on_sink_avoiding_cycles(dfa: &Dfa, sink: StateId) -> Vec<bool> {
    let n = dfa.n_states();
    let mut on_cycle = vec![false; n];
    // A state lies on a sink-avoiding cycle iff it can reach itself without
    // visiting the sink.
    for q in 0..n {
        if q == sink {
            continue;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![q];
        let mut found = false;
        while let Some(p) = stack.pop() {
            for a in 0..dfa.alphabet().len() {
                let t = dfa.step(p, a);
                if t == sink {
                    continue;
                }
                if t == q {
                    found = true;
                }
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
            if found {
                break;
            }
        }
        on_cycle[q] = found;
    }
    on_cycle
}

/// Shortest sink-avoiding cycle through `q0` with pairwise distinct states,
/// shortlex label tie-break.
fn shortest_simple_cycle(dfa: &Dfa, q0: StateId, sink: StateId) -> Option<Word> {
    // Iterative deepening keeps the shortlex order exact at small depths.
    for len in 1..=dfa.n_states() {
        let mut label = Vec::new();
        let mut visited = vec![false; dfa.n_states()];
        visited[q0] = true;
        if cycle_dfs(dfa, q0, q0, sink, len, &mut label, &mut visited) {
            return Some(label);
        }
    }
    None
}

fn cycle_dfs(
    dfa: &Dfa,
    cur: StateId,
    q0: StateId,
    sink: StateId,
    remaining: usize,
    label: &mut Word,
    visited: &mut Vec<bool>,
) -> bool {
    for a in 0..dfa.alphabet().len() {
        let t = dfa.step(cur, a);
        if t == sink {
            continue;
        }
        if remaining == 1 {
            if t == q0 {
                label.push(a);
                return true;
            }
            continue;
        }
        if t == q0 || visited[t] {
            continue;
        }
        visited[t] = true;
        label.push(a);
        if cycle_dfs(dfa, t, q0, sink, remaining - 1, label, visited) {
            return true;
        }
        label.pop();
        visited[t] = false;
    }
    false
}

/// Simple paths `q0 → sink` whose interior states lie on no sink-avoiding
/// cycle, shortest first with shortlex tie-break.
fn sink_paths(dfa: &Dfa, q0: StateId, sink: StateId, on_cycle: &[bool]) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=dfa.n_states() {
        let mut label = Vec::new();
        let mut visited = vec![false; dfa.n_states()];
        visited[q0] = true;
        path_dfs(dfa, q0, sink, on_cycle, len, &mut label, &mut visited, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn path_dfs(
    dfa: &Dfa,
    cur: StateId,
    sink: StateId,
    on_cycle: &[bool],
    remaining: usize,
    label: &mut Word,
    visited: &mut Vec<bool>,
    out: &mut Vec<Word>,
) {
    for a in 0..dfa.alphabet().len() {
        let t = dfa.step(cur, a);
        if remaining == 1 {
            if t == sink {
                label.push(a);
                out.push(label.clone());
                label.pop();
            }
            continue;
        }
        if t == sink || visited[t] || on_cycle[t] {
            continue;
        }
        visited[t] = true;
        label.push(a);
        path_dfs(dfa, t, sink, on_cycle, remaining - 1, label, visited, out);
        label.pop();
        visited[t] = false;
    }
}

/// Partial output assignment `(state, input) → output` with per-state
/// injectivity; rejects conflicting requirements.
struct Constraints {
    map: HashMap<(StateId, SymbolId), SymbolId>,
}

impl Constraints {
    fn new() -> Self {
        Constraints {
            map: HashMap::new(),
        }
    }

    fn require(&mut self, q: StateId, a: SymbolId, b: SymbolId) -> bool {
        if let Some(&cur) = self.map.get(&(q, a)) {
            return cur == b;
        }
        // Per-state output injectivity.
        if self
            .map
            .iter()
            .any(|(&(p, x), &y)| p == q && x != a && y == b)
        {
            return false;
        }
        self.map.insert((q, a), b);
        true
    }

    /// Extends to a full coloring, preferring the identity on unconstrained
    /// edges.
    fn complete(&self, n: usize, m: usize) -> GroupColoring {
        let mut perms = Vec::with_capacity(n);
        for q in 0..n {
            let mut row = vec![usize::MAX; m];
            let mut used = vec![false; m];
            for a in 0..m {
                if let Some(&b) = self.map.get(&(q, a)) {
                    row[a] = b;
                    used[b] = true;
                }
            }
            for a in 0..m {
                if row[a] == usize::MAX && !used[a] {
                    row[a] = a;
                    used[a] = true;
                }
            }
            for a in 0..m {
                if row[a] == usize::MAX {
                    let b = (0..m).find(|&b| !used[b]).unwrap();
                    row[a] = b;
                    used[b] = true;
                }
            }
            perms.push(row);
        }
        GroupColoring { perms }
    }
}

fn try_build(
    dfa: &Dfa,
    sink: StateId,
    q0: StateId,
    v: &Word,
    y: &Word,
    on_cycle: &[bool],
) -> Result<Option<InfiniteOrderColoring>> {
    let k = v.len();
    let d = y.len();
    let m = dfa.alphabet().len();
    let mut c = Constraints::new();
    // Identity on the sink.
    for a in 0..m {
        if !c.require(sink, a, a) {
            return Ok(None);
        }
    }
    let cycle_states: Vec<StateId> = {
        let mut states = vec![q0];
        for &a in &v[..k - 1] {
            states.push(dfa.step(*states.last().unwrap(), a));
        }
        states
    };
    if d <= k {
        // Cycle outputs y₀…y_{d−1} then x_d…x_{k−1}; path outputs x₀…x_{d−1}.
        let mut padded = y.to_vec();
        padded.extend_from_slice(&v[d..]);
        for i in 0..k {
            if !c.require(cycle_states[i], v[i], padded[i]) {
                return Ok(None);
            }
        }
        let mut p = q0;
        for i in 0..d {
            if !c.require(p, y[i], v[i]) {
                return Ok(None);
            }
            p = dfa.step(p, y[i]);
        }
        let coloring = c.complete(dfa.n_states(), m);
        let result = InfiniteOrderColoring {
            coloring,
            q0,
            cycle_word: v.clone(),
            path_word: padded,
            case: ConstructionCase::DLeK,
        };
        if verify_coloring(dfa, &result, sink)? {
            return Ok(Some(result));
        }
        return Ok(None);
    }
    // d > k: use the first k letters of y; q1 = q0·y[..k] must avoid all
    // sink-avoiding cycles.
    let yk = &y[..k];
    let q1 = dfa.run(q0, yk);
    if q1 == sink || on_cycle[q1] {
        return Ok(None);
    }
    for i in 0..k {
        if !c.require(cycle_states[i], v[i], yk[i]) {
            return Ok(None);
        }
    }
    let mut p = q0;
    for (i, &a) in yk.iter().enumerate() {
        if !c.require(p, a, v[i]) {
            return Ok(None);
        }
        p = dfa.step(p, a);
    }
    // Identity along the periodic y-trajectory from q1 until it revisits a
    // (state, phase) pair or falls into the sink.
    let mut cur = q1;
    let mut seen: HashSet<(StateId, usize)> = HashSet::new();
    let mut phase = 0usize;
    while cur != sink && seen.insert((cur, phase)) {
        if cur == q0 {
            return Ok(None);
        }
        let a = yk[phase];
        if !c.require(cur, a, a) {
            return Ok(None);
        }
        cur = dfa.step(cur, a);
        phase = (phase + 1) % k;
    }
    let coloring = c.complete(dfa.n_states(), m);
    let result = InfiniteOrderColoring {
        coloring,
        q0,
        cycle_word: v.clone(),
        path_word: yk.to_vec(),
        case: ConstructionCase::DGtK,
    };
    if verify_coloring(dfa, &result, sink)? {
        return Ok(Some(result));
    }
    Ok(None)
}

/// Verifies the block relations of the construction and (for the longer-path
/// case) the infinite-order witness.
fn verify_coloring(dfa: &Dfa, c: &InfiniteOrderColoring, sink: StateId) -> Result<bool> {
    let machine = color(dfa, &c.coloring)?;
    let v = &c.cycle_word;
    let y = &c.path_word;
    // q₀∘v = y, q₀·v = q₀ and q₀∘y = v.
    if machine.apply(c.q0, v) != *y || dfa.run(c.q0, v) != c.q0 {
        return Ok(false);
    }
    if machine.apply(c.q0, y) != *v {
        return Ok(false);
    }
    match c.case {
        ConstructionCase::DLeK => {
            if dfa.run(c.q0, y) != sink {
                return Ok(false);
            }
        }
        ConstructionCase::DGtK => {
            let q1 = dfa.run(c.q0, y);
            if q1 == sink || q1 == c.q0 {
                return Ok(false);
            }
            match element_order(&machine, &[gen(c.q0)], 64)? {
                OrderResult::ExceedsCap(_) => {}
                OrderResult::Finite(_) => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Block-level odometer law of the d ≤ k construction: applying `q₀`
/// `1 + 2ⁿ` times to blocks of `v` yields `n` blocks of `y`, one `v`, then
/// `y` blocks. Checked on prefixes of `n + 2` blocks for `n ≤ max_n`.
pub fn verify_odometer_prefix_law(
    dfa: &Dfa,
    c: &InfiniteOrderColoring,
    max_n: usize,
) -> Result<bool> {
    if c.case != ConstructionCase::DLeK {
        return Err(Error::WrongFamily);
    }
    let machine = color(dfa, &c.coloring)?;
    for n in 0..=max_n {
        let blocks = n + 2;
        let mut word: Word = Vec::new();
        for _ in 0..blocks {
            word.extend_from_slice(&c.cycle_word);
        }
        let times = 1 + (1usize << n);
        for _ in 0..times {
            word = machine.apply(c.q0, &word);
        }
        let mut expected: Word = Vec::new();
        for _ in 0..n {
            expected.extend_from_slice(&c.path_word);
        }
        expected.extend_from_slice(&c.cycle_word);
        expected.extend_from_slice(&c.path_word);
        if word != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Iterator over all `(|A|!)^{|Q|}` group colorings of a DFA.
pub struct ColoringEnumerator {
    perms: Vec<Vec<SymbolId>>,
    indices: Vec<usize>,
    n_states: usize,
    done: bool,
}

impl ColoringEnumerator {
    pub fn new(dfa: &Dfa) -> ColoringEnumerator {
        let m = dfa.alphabet().len();
        // Heap-order permutation generation, then sorted for determinism.
        let mut perms = Vec::new();
        permutations(&mut (0..m).collect::<Vec<_>>(), m, &mut perms);
        perms.sort();
        ColoringEnumerator {
            perms,
            indices: vec![0; dfa.n_states()],
            n_states: dfa.n_states(),
            done: false,
        }
    }

    pub fn count(&self) -> usize {
        self.perms.len().pow(self.n_states as u32)
    }
}

fn permutations(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(arr.clone());
        return;
    }
    for i in 0..k {
        permutations(arr, k - 1, out);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

impl Iterator for ColoringEnumerator {
    type Item = GroupColoring;

    fn next(&mut self) -> Option<GroupColoring> {
        if self.done {
            return None;
        }
        let coloring = GroupColoring {
            perms: self
                .indices
                .iter()
                .map(|&i| self.perms[i].clone())
                .collect(),
        };
        // Odometer increment over the index vector.
        let mut pos = 0;
        loop {
            if pos == self.n_states {
                self.done = true;
                break;
            }
            self.indices[pos] += 1;
            if self.indices[pos] < self.perms.len() {
                break;
            }
            self.indices[pos] = 0;
            pos += 1;
        }
        Some(coloring)
    }
}

/// Outcome of the finite-iff-nilpotent experiment.
#[derive(Debug, Clone)]
pub enum NilpotencyExperiment {
    /// The DFA is nilpotent: all colorings enumerated, every group closed.
    AllFinite { orders: Vec<usize> },
    /// Not nilpotent: the constructed coloring has an infinite-order witness.
    InfiniteWitness {
        coloring: InfiniteOrderColoring,
        survived_cap: usize,
    },
    /// The coloring space exceeded the budget; sampled results only.
    Partial { sampled_orders: Vec<usize> },
}

pub fn finite_iff_nilpotent_experiment(
    dfa: &Dfa,
    element_cap: usize,
    coloring_budget: usize,
) -> Result<NilpotencyExperiment> {
    let sink = dfa.unique_sink().ok_or(Error::NoUniqueSink)?;
    let _ = sink;
    if dfa.alphabet().len() < 2 {
        return Err(Error::Invalid("experiment needs |A| > 1".into()));
    }
    if dfa.shortest_reset_word().is_none() {
        return Err(Error::NotSynchronizing);
    }
    if dfa.is_nilpotent() {
        let enumerator = ColoringEnumerator::new(dfa);
        let truncated = enumerator.count() > coloring_budget;
        let mut orders = Vec::new();
        for coloring in ColoringEnumerator::new(dfa).take(coloring_budget) {
            let machine = color(dfa, &coloring)?;
            match enumerate_group(&machine, element_cap)?.status {
                ClosureStatus::Closed { order } => orders.push(order),
                ClosureStatus::CapExceeded => {
                    return Err(Error::ResourceExceeded(
                        "nilpotent coloring failed to close under the cap".into(),
                    ))
                }
            }
        }
        if truncated {
            return Ok(NilpotencyExperiment::Partial {
                sampled_orders: orders,
            });
        }
        return Ok(NilpotencyExperiment::AllFinite { orders });
    }
    let coloring = adding_machine_coloring(dfa)?;
    let machine = color(dfa, &coloring.coloring)?;
    match element_order(&machine, &[gen(coloring.q0)], 64)? {
        OrderResult::ExceedsCap(cap) => Ok(NilpotencyExperiment::InfiniteWitness {
            coloring,
            survived_cap: cap,
        }),
        OrderResult::Finite(_) => Err(Error::TheoremViolation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::families;
    use crate::mealy::GroupColoring;

    fn adding_machine_dfa() -> Dfa {
        Dfa::new(
            ["q", "s"],
            Alphabet::binary(),
            vec![vec![1, 0], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn identity_coloring_has_trivial_group() {
        let dfa = families::cerny(3).unwrap();
        let machine = color(&dfa, &GroupColoring::identity(&dfa)).unwrap();
        let table = enumerate_group(&machine, 100).unwrap();
        assert_eq!(table.status, ClosureStatus::Closed { order: 1 });
    }

    #[test]
    fn cerny_flip_coloring_group_is_z2() {
        // Every state outputs the complement regardless of the transition
        // taken, so all generators define the same involution and the group
        // collapses to Z/2.
        for n in [3usize, 4] {
            let dfa = families::cerny(n).unwrap();
            let machine = color(&dfa, &families::cerny_coloring(n)).unwrap();
            let table = enumerate_group(&machine, 1000).unwrap();
            assert_eq!(table.status, ClosureStatus::Closed { order: 2 });
            for q in 0..n {
                assert_eq!(
                    element_order(&machine, &[gen(q)], 10).unwrap(),
                    OrderResult::Finite(2)
                );
                assert!(machine.equal_elements(&[gen(q)], &[gen(0)]).unwrap());
            }
        }
    }

    #[test]
    fn adding_machine_generator_exceeds_cap() {
        let dfa = adding_machine_dfa();
        let machine = crate::mealy::MealyMachine::new(
            dfa,
            vec![vec![1, 0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(
            element_order(&machine, &[gen(0)], 64).unwrap(),
            OrderResult::ExceedsCap(64)
        );
        assert_eq!(
            element_order(&machine, &[gen(1)], 10).unwrap(),
            OrderResult::Finite(1)
        );
    }

    #[test]
    fn relation_search_on_free_and_non_free() {
        // De Bruijn (k=2, Z2): free semigroup, no relations up to length 3.
        let db = families::DeBruijn::new(2, &families::FiniteGroupTable::cyclic(2)).unwrap();
        assert!(relation_search(&db.machine, 3).unwrap().is_empty());
        // Černý flip coloring: plenty of relations (all generators equal).
        let dfa = families::cerny(3).unwrap();
        let machine = color(&dfa, &families::cerny_coloring(3)).unwrap();
        let rel = relation_search(&machine, 2).unwrap();
        assert!(!rel.is_empty());
        assert!(rel.contains(&(vec![gen(0)], vec![gen(1)])));
    }

    #[test]
    fn construction_reproduces_the_adding_machine() {
        let dfa = adding_machine_dfa();
        let built = adding_machine_coloring(&dfa).unwrap();
        assert_eq!(built.case, ConstructionCase::DLeK);
        assert_eq!(built.q0, 0);
        assert_eq!(built.cycle_word, vec![1]); // the loop q·1 = q
        assert_eq!(built.path_word, vec![0]); // the exit q·0 = s
        // The coloring swaps at q and is the identity on s: exactly the
        // adding machine.
        assert_eq!(built.coloring.perms, vec![vec![1, 0], vec![0, 1]]);
        assert!(verify_odometer_prefix_law(&dfa, &built, 10).unwrap());
    }

    #[test]
    fn construction_longer_path_case() {
        // Cycle of length 1 at c0, sink at distance 2: the d > k branch.
        let dfa = Dfa::new(
            ["c0", "p1", "s"],
            Alphabet::new(["a", "b"]).unwrap(),
            vec![vec![0, 1], vec![2, 2], vec![2, 2]],
        )
        .unwrap();
        let built = adding_machine_coloring(&dfa).unwrap();
        assert_eq!(built.case, ConstructionCase::DGtK);
        let machine = color(&dfa, &built.coloring).unwrap();
        assert_eq!(
            element_order(&machine, &[gen(built.q0)], 64).unwrap(),
            OrderResult::ExceedsCap(64)
        );
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        let nil = Dfa::new(
            ["q", "s"],
            Alphabet::binary(),
            vec![vec![1, 1], vec![1, 1]],
        )
        .unwrap();
        assert!(matches!(
            adding_machine_coloring(&nil),
            Err(Error::Nilpotent)
        ));
        let c3 = families::cerny(3).unwrap();
        assert!(matches!(
            adding_machine_coloring(&c3),
            Err(Error::NoUniqueSink)
        ));
    }

    #[test]
    fn coloring_enumerator_counts() {
        let dfa = adding_machine_dfa();
        let colorings: Vec<_> = ColoringEnumerator::new(&dfa).collect();
        assert_eq!(colorings.len(), 4); // (2!)^2
        let distinct: std::collections::HashSet<_> =
            colorings.iter().map(|c| c.perms.clone()).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn nilpotency_experiment_both_directions() {
        // 3-state nilpotent chain: q -> r -> s.
        let nil = Dfa::new(
            ["q", "r", "s"],
            Alphabet::binary(),
            vec![vec![1, 1], vec![2, 2], vec![2, 2]],
        )
        .unwrap();
        match finite_iff_nilpotent_experiment(&nil, 100_000, 100).unwrap() {
            NilpotencyExperiment::AllFinite { orders } => {
                assert_eq!(orders.len(), 8);
                // Iterated-wreath bound for |A|=2, index 3: |Sym(2)|^(2^3-1) = 2^7.
                assert!(orders.iter().all(|&o| 128 % o == 0));
            }
            other => panic!("expected AllFinite, got {other:?}"),
        }
        match finite_iff_nilpotent_experiment(&adding_machine_dfa(), 100_000, 100).unwrap() {
            NilpotencyExperiment::InfiniteWitness { survived_cap, .. } => {
                assert_eq!(survived_cap, 64);
            }
            other => panic!("expected InfiniteWitness, got {other:?}"),
        }
        // Sinkless input is a precondition error.
        assert!(matches!(
            finite_iff_nilpotent_experiment(&families::cerny(3).unwrap(), 100, 100),
            Err(Error::NoUniqueSink)
        ));
    }
}
