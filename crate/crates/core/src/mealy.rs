//! Invertible Mealy machines as sequential functions: application,
//! inversion, composition, minimization and exact element equality via
//! canonical minimized transducers.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, SymbolId, Word};
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};

/// Hard cap on product-machine states before canonicalization.
const PRODUCT_STATE_CAP: usize = 1_000_000;

/// A Mealy machine: a DFA plus a total output map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    dfa: Dfa,
    /// `lambda[q][a]` is the output emitted reading `a` in `q`.
    lambda: Vec<Vec<SymbolId>>,
}

/// A per-state permutation of the alphabet; colors a DFA into an invertible
/// Mealy machine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupColoring {
    /// `perms[q][a]` is the output for input `a` at state `q`.
    pub perms: Vec<Vec<SymbolId>>,
}

/// One factor of a generator word: a state's sequential function or its
/// inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub state: StateId,
    pub inverse: bool,
}

/// A product of generators `A_{q₁}∘…∘A_{qₙ}`; the rightmost factor is
/// applied first. Empty means the identity.
pub type GroupWord = Vec<Generator>;

/// A canonical pointed transducer: minimized, reachable, states renumbered
/// in BFS order from the start state 0. Two elements of the generated
/// semigroup are equal iff their canonical forms are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    alphabet: Alphabet,
    delta: Vec<Vec<StateId>>,
    lambda: Vec<Vec<SymbolId>>,
}

/// Self-similar (wreath) representation of an element: root permutation plus
/// one section per input symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathRecursion {
    pub sigma: Vec<SymbolId>,
    pub sections: Vec<Element>,
}

impl MealyMachine {
    pub fn new(dfa: Dfa, lambda: Vec<Vec<SymbolId>>) -> Result<Self> {
        if lambda.len() != dfa.n_states() {
            return Err(Error::Invalid("output table has wrong height".into()));
        }
        for row in &lambda {
            if row.len() != dfa.alphabet().len() {
                return Err(Error::Invalid("output table has wrong width".into()));
            }
            if row.iter().any(|&b| b >= dfa.alphabet().len()) {
                return Err(Error::Invalid("output symbol out of range".into()));
            }
        }
        Ok(MealyMachine { dfa, lambda })
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn n_states(&self) -> usize {
        self.dfa.n_states()
    }

    pub fn output(&self, q: StateId, a: SymbolId) -> SymbolId {
        self.lambda[q][a]
    }

    pub fn output_rows(&self) -> &[Vec<SymbolId>] {
        &self.lambda
    }

    /// True when every state function `λ_q` is a permutation of the alphabet.
    pub fn is_invertible(&self) -> bool {
        self.lambda.iter().all(|row| {
            let mut seen = vec![false; row.len()];
            row.iter().all(|&b| !std::mem::replace(&mut seen[b], true))
        })
    }

    /// The sequential function `A_q` on a finite word.
    pub fn apply(&self, q: StateId, w: &[SymbolId]) -> Word {
        let mut out = Vec::with_capacity(w.len());
        let mut cur = q;
        for &a in w {
            out.push(self.lambda[cur][a]);
            cur = self.dfa.step(cur, a);
        }
        out
    }

    /// Inverse machine: state `q` reads `λ_q(a)`, outputs `a`, moves to
    /// `q·a`.
    pub fn invert(&self) -> Result<MealyMachine> {
        if !self.is_invertible() {
            let bad = (0..self.n_states())
                .find(|&q| {
                    let mut seen = vec![false; self.alphabet().len()];
                    !self.lambda[q]
                        .iter()
                        .all(|&b| !std::mem::replace(&mut seen[b], true))
                })
                .unwrap();
            return Err(Error::NotInvertible(self.dfa.state_name(bad).to_string()));
        }
        let m = self.alphabet().len();
        let mut delta = vec![vec![0; m]; self.n_states()];
        let mut lambda = vec![vec![0; m]; self.n_states()];
        for q in 0..self.n_states() {
            for a in 0..m {
                let b = self.lambda[q][a];
                delta[q][b] = self.dfa.step(q, a);
                lambda[q][b] = a;
            }
        }
        let dfa = Dfa::new(
            self.dfa.state_names().to_vec(),
            self.alphabet().clone(),
            delta,
        )?;
        MealyMachine::new(dfa, lambda)
    }

    /// Applies a generator word, rightmost factor first.
    pub fn apply_word(&self, g: &[Generator], w: &[SymbolId]) -> Result<Word> {
        let inverse = if g.iter().any(|f| f.inverse) {
            Some(self.invert()?)
        } else {
            None
        };
        let mut cur = w.to_vec();
        for f in g.iter().rev() {
            let machine = if f.inverse {
                inverse.as_ref().unwrap()
            } else {
                self
            };
            cur = machine.apply(f.state, &cur);
        }
        Ok(cur)
    }

    /// Behavioral partition refinement; the result is reduced and pointwise
    /// equivalent, with representative state names kept.
    pub fn minimize(&self) -> MealyMachine {
        let block_of = self.behavior_partition();
        let n_blocks = block_of.iter().max().map_or(0, |&b| b + 1);
        let mut rep = vec![usize::MAX; n_blocks];
        for q in 0..self.n_states() {
            if rep[block_of[q]] == usize::MAX {
                rep[block_of[q]] = q;
            }
        }
        let m = self.alphabet().len();
        let names: Vec<String> = rep
            .iter()
            .map(|&q| self.dfa.state_name(q).to_string())
            .collect();
        let delta: Vec<Vec<StateId>> = rep
            .iter()
            .map(|&q| (0..m).map(|a| block_of[self.dfa.step(q, a)]).collect())
            .collect();
        let lambda: Vec<Vec<SymbolId>> = rep.iter().map(|&q| self.lambda[q].clone()).collect();
        let dfa = Dfa::new(names, self.alphabet().clone(), delta).unwrap();
        MealyMachine::new(dfa, lambda).unwrap()
    }

    pub fn is_reduced(&self) -> bool {
        self.minimize().n_states() == self.n_states()
    }

    /// Block index per state: states are merged iff their sequential
    /// functions coincide.
    fn behavior_partition(&self) -> Vec<usize> {
        behavior_partition(self.n_states(), self.alphabet().len(), &|q, a| {
            (self.dfa.step(q, a), self.lambda[q][a])
        })
    }

    /// Canonical form of the sequential function `A_q` (or its inverse).
    pub fn element(&self, g: Generator) -> Result<Element> {
        let machine = if g.inverse { self.invert()? } else { self.clone() };
        let m = machine.alphabet().len();
        Ok(Element::canonicalize(
            machine.alphabet().clone(),
            g.state,
            &|q, a| (machine.dfa.step(q, a), machine.lambda[q][a]),
            machine.n_states(),
            m,
        ))
    }

    /// Canonical form of a generator word.
    pub fn element_of_word(&self, g: &[Generator]) -> Result<Element> {
        let mut acc = Element::identity(self.alphabet().clone());
        for &f in g {
            // Word q₁…qₙ denotes A_{q₁}∘…∘A_{qₙ}: each new factor is applied
            // before the accumulated prefix.
            acc = acc.compose(&self.element(f)?)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self, g: &[Generator]) -> Result<bool> {
        Ok(self.element_of_word(g)?.is_identity())
    }

    pub fn equal_elements(&self, g1: &[Generator], g2: &[Generator]) -> Result<bool> {
        Ok(self.element_of_word(g1)? == self.element_of_word(g2)?)
    }

    /// Wreath recursion of a generator word.
    pub fn wreath_recursion(&self, g: &[Generator]) -> Result<WreathRecursion> {
        Ok(self.element_of_word(g)?.wreath_recursion())
    }

    /// The element of a word realized as a standalone machine with a
    /// designated state (index 0).
    pub fn product_machine(&self, g: &[Generator]) -> Result<(MealyMachine, StateId)> {
        let e = self.element_of_word(g)?;
        let names: Vec<String> = (0..e.delta.len()).map(|i| format!("x{i}")).collect();
        let dfa = Dfa::new(names, e.alphabet.clone(), e.delta.clone())?;
        Ok((MealyMachine::new(dfa, e.lambda.clone())?, 0))
    }
}

/// Shared partition-refinement loop over an abstract `(δ, λ)` view.
fn behavior_partition(
    n: usize,
    m: usize,
    step: &dyn Fn(StateId, SymbolId) -> (StateId, SymbolId),
) -> Vec<usize> {
    // Initial split by output rows.
    let mut block_of: Vec<usize> = {
        let mut index: HashMap<Vec<SymbolId>, usize> = HashMap::new();
        (0..n)
            .map(|q| {
                let row: Vec<SymbolId> = (0..m).map(|a| step(q, a).1).collect();
                let next = index.len();
                *index.entry(row).or_insert(next)
            })
            .collect()
    };
    loop {
        let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig: Vec<usize> = (0..m).map(|a| block_of[step(q, a).0]).collect();
                let fresh = index.len();
                *index.entry((block_of[q], sig)).or_insert(fresh)
            })
            .collect();
        if next == block_of {
            return block_of;
        }
        block_of = next;
    }
}

impl Element {
    /// The identity sequential function.
    pub fn identity(alphabet: Alphabet) -> Element {
        let m = alphabet.len();
        Element {
            alphabet,
            delta: vec![vec![0; m]],
            lambda: vec![(0..m).collect()],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == Element::identity(self.alphabet.clone())
    }

    pub fn apply(&self, w: &[SymbolId]) -> Word {
        let mut out = Vec::with_capacity(w.len());
        let mut cur = 0;
        for &a in w {
            out.push(self.lambda[cur][a]);
            cur = self.delta[cur][a];
        }
        out
    }

    /// Restrict to the part reachable from `start`, minimize, renumber in BFS
    /// order (alphabet order on edges).
    fn canonicalize(
        alphabet: Alphabet,
        start: StateId,
        step: &dyn Fn(StateId, SymbolId) -> (StateId, SymbolId),
        n: usize,
        m: usize,
    ) -> Element {
        // Reachable restriction first.
        let mut old_of = vec![start];
        let mut new_of: HashMap<StateId, usize> = HashMap::from([(start, 0)]);
        let mut i = 0;
        while i < old_of.len() {
            let q = old_of[i];
            for a in 0..m {
                let (t, _) = step(q, a);
                if !new_of.contains_key(&t) {
                    new_of.insert(t, old_of.len());
                    old_of.push(t);
                }
            }
            i += 1;
        }
        let _ = n;
        let rn = old_of.len();
        let reach_step =
            |q: usize, a: usize| -> (usize, SymbolId) {
                let (t, b) = step(old_of[q], a);
                (new_of[&t], b)
            };
        let block_of = behavior_partition(rn, m, &reach_step);
        // BFS renumbering of the quotient from the start block.
        let mut rep_of_block: HashMap<usize, usize> = HashMap::new();
        for q in 0..rn {
            rep_of_block.entry(block_of[q]).or_insert(q);
        }
        let mut order = vec![block_of[0]];
        let mut rank: HashMap<usize, usize> = HashMap::from([(block_of[0], 0)]);
        let mut i = 0;
        while i < order.len() {
            let b = order[i];
            let rep = rep_of_block[&b];
            for a in 0..m {
                let tb = block_of[reach_step(rep, a).0];
                if !rank.contains_key(&tb) {
                    rank.insert(tb, order.len());
                    order.push(tb);
                }
            }
            i += 1;
        }
        let delta: Vec<Vec<StateId>> = order
            .iter()
            .map(|&b| {
                (0..m)
                    .map(|a| rank[&block_of[reach_step(rep_of_block[&b], a).0]])
                    .collect()
            })
            .collect();
        let lambda: Vec<Vec<SymbolId>> = order
            .iter()
            .map(|&b| (0..m).map(|a| reach_step(rep_of_block[&b], a).1).collect())
            .collect();
        Element {
            alphabet,
            delta,
            lambda,
        }
    }

    /// `self ∘ other`: `other` is applied first. Product construction over
    /// reachable pairs, then canonicalized.
    pub fn compose(&self, other: &Element) -> Result<Element> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let m = self.alphabet.len();
        let mut pairs = vec![(0usize, 0usize)];
        let mut index: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        let mut lambda: Vec<Vec<SymbolId>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (o, inn) = pairs[i];
            let mut drow = Vec::with_capacity(m);
            let mut lrow = Vec::with_capacity(m);
            for a in 0..m {
                let b = other.lambda[inn][a];
                let c = self.lambda[o][b];
                let next = (self.delta[o][b], other.delta[inn][a]);
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                drow.push(id);
                lrow.push(c);
            }
            if pairs.len() > PRODUCT_STATE_CAP {
                return Err(Error::ResourceExceeded(format!(
                    "product machine exceeded {PRODUCT_STATE_CAP} states"
                )));
            }
            delta.push(drow);
            lambda.push(lrow);
            i += 1;
        }
        Ok(Element::canonicalize(
            self.alphabet.clone(),
            0,
            &|q, a| (delta[q][a], lambda[q][a]),
            pairs.len(),
            m,
        ))
    }

    /// Inverse element; requires all output rows to be permutations.
    pub fn inverse(&self) -> Result<Element> {
        let m = self.alphabet.len();
        for row in &self.lambda {
            let mut seen = vec![false; m];
            if !row.iter().all(|&b| !std::mem::replace(&mut seen[b], true)) {
                return Err(Error::NotInvertible("canonical element".into()));
            }
        }
        let mut delta = vec![vec![0; m]; self.n_states()];
        let mut lambda = vec![vec![0; m]; self.n_states()];
        for q in 0..self.n_states() {
            for a in 0..m {
                let b = self.lambda[q][a];
                delta[q][b] = self.delta[q][a];
                lambda[q][b] = a;
            }
        }
        Ok(Element::canonicalize(
            self.alphabet.clone(),
            0,
            &|q, a| (delta[q][a], lambda[q][a]),
            self.n_states(),
            m,
        ))
    }

    pub fn wreath_recursion(&self) -> WreathRecursion {
        let m = self.alphabet.len();
        let sigma = self.lambda[0].clone();
        let sections = (0..m)
            .map(|a| {
                Element::canonicalize(
                    self.alphabet.clone(),
                    self.delta[0][a],
                    &|q, s| (self.delta[q][s], self.lambda[q][s]),
                    self.n_states(),
                    m,
                )
            })
            .collect();
        WreathRecursion { sigma, sections }
    }
}

impl GroupColoring {
    pub fn identity(dfa: &Dfa) -> GroupColoring {
        let m = dfa.alphabet().len();
        GroupColoring {
            perms: vec![(0..m).collect(); dfa.n_states()],
        }
    }

    pub fn validate(&self, dfa: &Dfa) -> Result<()> {
        let m = dfa.alphabet().len();
        if self.perms.len() != dfa.n_states() {
            return Err(Error::Invalid("coloring has wrong number of states".into()));
        }
        for (q, row) in self.perms.iter().enumerate() {
            let mut seen = vec![false; m];
            if row.len() != m
                || !row
                    .iter()
                    .all(|&b| b < m && !std::mem::replace(&mut seen[b], true))
            {
                return Err(Error::NotInvertible(dfa.state_name(q).to_string()));
            }
        }
        Ok(())
    }
}

/// Builds the invertible Mealy machine `M(A, χ)`.
pub fn color(dfa: &Dfa, coloring: &GroupColoring) -> Result<MealyMachine> {
    coloring.validate(dfa)?;
    MealyMachine::new(dfa.clone(), coloring.perms.clone())
}

/// Convenience constructors for generator words.
pub fn gen(state: StateId) -> Generator {
    Generator {
        state,
        inverse: false,
    }
}

pub fn inv(state: StateId) -> Generator {
    Generator {
        state,
        inverse: true,
    }
}
