//! Concrete families: Černý automata with the bit-flip coloring, De Bruijn
//! automata over a finite group with the χ_k coloring, the ζ trace
//! identities, the truncated power-series action and the lamplighter
//! relation suite.

use std::collections::HashMap;

use crate::alphabet::{words_of_length, Alphabet, SymbolId, Word};
use crate::dfa::{Dfa, StateId};
use crate::error::{Error, Result};
use crate::group;
use crate::lang::IdealLang;
use crate::mealy::{color, gen, inv, Element, GroupColoring, MealyMachine};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    tokens: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    abelian: bool,
}

impl FiniteGroupTable {
    pub fn new(tokens: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = tokens.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("malformed Cayley table".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::Invalid("Cayley entry out of range".into()));
        }
        // Identity: a (necessarily unique) two-sided neutral element.
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("Cayley table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::Invalid(format!("`{}` has no inverse", tokens[x])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid("Cayley table is not associative".into()));
                    }
                }
            }
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| table[a][b] == table[b][a]));
        // Tokens double as alphabet symbols downstream.
        Alphabet::new(tokens.clone())?;
        Ok(FiniteGroupTable {
            tokens,
            table,
            identity,
            inverse,
            abelian,
        })
    }

    /// The cyclic group Z_m with tokens `0..m-1`.
    pub fn cyclic(m: usize) -> FiniteGroupTable {
        let tokens = (0..m).map(|i| i.to_string()).collect();
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        FiniteGroupTable::new(tokens, table).unwrap()
    }

    /// Parses a Cayley table: first line lists the element tokens; each
    /// following line is `x: x*e1 x*e2 ...` row products in header order.
    pub fn from_cayley_text(text: &str) -> Result<FiniteGroupTable> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty Cayley table".into(),
        })?;
        let tokens: Vec<String> = header.split_whitespace().map(String::from).collect();
        let index: HashMap<&str, usize> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        if index.len() != tokens.len() {
            return Err(Error::Parse {
                line: ln + 1,
                msg: "duplicate element token".into(),
            });
        }
        let mut table = vec![None; tokens.len()];
        for (ln, line) in lines {
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            let head = head.strip_suffix(':').unwrap_or(head);
            let &row = index.get(head).ok_or_else(|| Error::Parse {
                line: ln + 1,
                msg: format!("unknown element `{head}`"),
            })?;
            let entries: Vec<usize> = parts
                .map(|t| {
                    index.get(t).copied().ok_or_else(|| Error::Parse {
                        line: ln + 1,
                        msg: format!("unknown element `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if entries.len() != tokens.len() {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: "wrong row length".into(),
                });
            }
            table[row] = Some(entries);
        }
        let table: Vec<Vec<usize>> = table
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(Error::Parse {
                line: 0,
                msg: "missing Cayley row".into(),
            })?;
        FiniteGroupTable::new(tokens, table)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.op(x, a);
            n += 1;
        }
        n
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.tokens.clone()).unwrap()
    }
}

/// The Černý automaton C_n: letter 0 is the n-cycle `i ↦ i+1`, letter 1
/// fixes everything except `0 ↦ 1`.
pub fn cerny(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::Invalid("Černý automaton needs n ≥ 2".into()));
    }
    let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let delta = (0..n)
        .map(|i| vec![(i + 1) % n, if i == 0 { 1 } else { i }])
        .collect();
    Dfa::new(states, Alphabet::binary(), delta)
}

/// The bit-flip coloring: every transition outputs the complemented input.
pub fn cerny_coloring(n: usize) -> GroupColoring {
    GroupColoring {
        perms: vec![vec![1, 0]; n],
    }
}

/// The two-sided ideal generated by the pair of synchronizing words
/// `w₁ = 1^{n−1}(0^{n−1}1^{n−1})^{n−2}0^{n−1}` and its bit complement.
/// Membership in Syn(C_n) is verified; if the words fail under the declared
/// letter roles they are re-tried with roles swapped (the returned flag
/// records a swap).
pub fn cerny_ideal(n: usize) -> Result<(IdealLang, bool)> {
    let dfa = cerny(n)?;
    let build = |zero: SymbolId, one: SymbolId| -> Vec<Word> {
        let mut w1 = vec![one; n - 1];
        for _ in 0..n.saturating_sub(2) {
            w1.extend(vec![zero; n - 1]);
            w1.extend(vec![one; n - 1]);
        }
        w1.extend(vec![zero; n - 1]);
        let w2 = w1.iter().map(|&a| 1 - a).collect();
        vec![w1, w2]
    };
    for (swapped, (zero, one)) in [(false, (0, 1)), (true, (1, 0))] {
        let words = build(zero, one);
        if words
            .iter()
            .all(|w| dfa.run_subset(dfa.full_set(), w).len() == 1)
        {
            return Ok((IdealLang::new(Alphabet::binary(), words)?, swapped));
        }
    }
    Err(Error::Invalid(
        "ideal generators are not synchronizing under either letter role".into(),
    ))
}

fn debruijn_state_name(group: &FiniteGroupTable, word: &[usize]) -> String {
    let single = group.tokens.iter().all(|t| t.chars().count() == 1);
    let sep = if single { "" } else { "-" };
    word.iter()
        .map(|&x| group.tokens[x].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

/// The De Bruijn automaton B_k(A): states A^k, transition
/// `ys →^x sx`.
pub fn debruijn(k: usize, group: &FiniteGroupTable) -> Result<Dfa> {
    if k == 0 {
        return Err(Error::Invalid("De Bruijn automaton needs k ≥ 1".into()));
    }
    let m = group.len();
    let states: Vec<Word> = words_of_length(m, k).collect();
    let index: HashMap<&Word, usize> = states.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let names: Vec<String> = states
        .iter()
        .map(|w| debruijn_state_name(group, w))
        .collect();
    let delta = states
        .iter()
        .map(|u| {
            (0..m)
                .map(|x| {
                    let mut v: Word = u[1..].to_vec();
                    v.push(x);
                    index[&v]
                })
                .collect()
        })
        .collect();
    Dfa::new(names, group.alphabet(), delta)
}

/// The coloring χ_k: the edge `ys →^x sx` outputs `x ⋆ y⁻¹`.
pub fn chi_coloring(k: usize, group: &FiniteGroupTable) -> Result<GroupColoring> {
    if k == 0 {
        return Err(Error::Invalid("De Bruijn coloring needs k ≥ 1".into()));
    }
    let m = group.len();
    let perms = words_of_length(m, k)
        .map(|u| (0..m).map(|x| group.op(x, group.inv(u[0]))).collect())
        .collect();
    Ok(GroupColoring { perms })
}

/// A De Bruijn automaton bundled with its group, coloring and state table.
#[derive(Debug, Clone)]
pub struct DeBruijn {
    pub k: usize,
    pub group: FiniteGroupTable,
    pub dfa: Dfa,
    pub machine: MealyMachine,
    states: Vec<Word>,
}

impl DeBruijn {
    pub fn new(k: usize, group: &FiniteGroupTable) -> Result<DeBruijn> {
        let dfa = debruijn(k, group)?;
        let machine = color(&dfa, &chi_coloring(k, group)?)?;
        let states = words_of_length(group.len(), k).collect();
        Ok(DeBruijn {
            k,
            group: group.clone(),
            dfa,
            machine,
            states,
        })
    }

    pub fn state_word(&self, q: StateId) -> &[usize] {
        &self.states[q]
    }

    pub fn state_of_word(&self, w: &[usize]) -> Result<StateId> {
        if w.len() != self.k || w.iter().any(|&x| x >= self.group.len()) {
            return Err(Error::WrongFamily);
        }
        self.states
            .iter()
            .position(|s| s == w)
            .ok_or(Error::WrongFamily)
    }

    /// The trace word `ζ(q, v)ᵢ = (q·v[0,i−1])[1]`: the first coordinate of
    /// the state before consuming `v`'s i-th letter.
    pub fn zeta(&self, q: StateId, v: &[SymbolId]) -> Result<Word> {
        if v.is_empty() {
            return Err(Error::Invalid("ζ needs a nonempty word".into()));
        }
        if v.iter().any(|&x| x >= self.group.len()) {
            return Err(Error::WrongFamily);
        }
        let mut out = Vec::with_capacity(v.len());
        let mut cur = q;
        for &x in v {
            out.push(self.states[cur][0]);
            cur = self.dfa.step(cur, x);
        }
        Ok(out)
    }
}

/// A finite prefix of a boundary sequence, as coefficients in an abelian
/// group (written additively).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub coeffs: Vec<usize>,
}

/// Which element of B(k,A) acts on the series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesAction {
    /// `B_q`: `F ↦ (1−t^k)F − F_q` with `F_q` the degree-<k polynomial of q.
    Generator { q: Word },
    /// `B_e^{-1}` (`e = 0^k`): `F ↦ F / (1−t^k)`.
    InverseOfNeutral,
    /// The conjugate `B_e^ℓ (B_q B_e^{−1}) B_e^{−ℓ}` of the translation
    /// `t_q`: `F ↦ F − (1−t^k)^ℓ F_q`. (A conjugate of `B_q` itself keeps
    /// the multiplier `1−t^k`, so the translation form is the one this
    /// polynomial realizes.)
    Conjugate { q: Word, l: usize },
}

fn sub(group: &FiniteGroupTable, a: usize, b: usize) -> usize {
    group.op(a, group.inv(b))
}

/// Coefficientwise evaluation of the polynomial action on a truncated
/// series.
pub fn series_apply(
    group: &FiniteGroupTable,
    k: usize,
    action: &SeriesAction,
    prefix: &SeriesPrefix,
) -> Result<SeriesPrefix> {
    if !group.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let g = &prefix.coeffs;
    if g.iter().any(|&x| x >= group.len()) {
        return Err(Error::Invalid("coefficient out of range".into()));
    }
    let n = g.len();
    let check_q = |q: &Word| -> Result<()> {
        if q.len() != k || q.iter().any(|&x| x >= group.len()) {
            return Err(Error::WrongFamily);
        }
        Ok(())
    };
    let coeffs = match action {
        SeriesAction::Generator { q } => {
            check_q(q)?;
            if n < k {
                return Err(Error::PrefixTooShort);
            }
            (0..n)
                .map(|i| {
                    let mut c = g[i];
                    if i >= k {
                        c = sub(group, c, g[i - k]);
                    } else {
                        c = sub(group, c, q[i]);
                    }
                    c
                })
                .collect()
        }
        SeriesAction::InverseOfNeutral => {
            let mut h = vec![group.identity(); n];
            for i in 0..n {
                h[i] = if i >= k { group.op(g[i], h[i - k]) } else { g[i] };
            }
            h
        }
        SeriesAction::Conjugate { q, l } => {
            check_q(q)?;
            if n < k * (l + 1) {
                return Err(Error::PrefixTooShort);
            }
            // c = (1−t^k)^ℓ F_q has coefficient binom(ℓ,j)(−1)^j q_r at
            // degree jk + r.
            let mut out = g.clone();
            for j in 0..=*l {
                let binom = binomial(*l, j);
                for (r, &qr) in q.iter().enumerate() {
                    let i = j * k + r;
                    // Subtract (−1)^j · binom · q_r from out[i].
                    let mut term = group.identity();
                    for _ in 0..binom {
                        term = group.op(term, qr);
                    }
                    if j % 2 == 1 {
                        term = group.inv(term);
                    }
                    out[i] = sub(group, out[i], term);
                }
            }
            out
        }
    };
    Ok(SeriesPrefix { coeffs })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Exact verification of the wreath-product relations of B(k,A) for abelian
/// A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LamplighterReport {
    pub k: usize,
    pub group_order: usize,
    /// (state index h, expected order of h in A^k, verified).
    pub torsion: Vec<(StateId, usize, bool)>,
    pub conjugates_commute: bool,
    pub shift_has_infinite_order_to: usize,
    pub translations_injective: bool,
}

impl LamplighterReport {
    pub fn all_pass(&self) -> bool {
        self.torsion.iter().all(|&(_, _, ok)| ok)
            && self.conjugates_commute
            && self.translations_injective
    }
}

pub fn lamplighter_suite(
    k: usize,
    group: &FiniteGroupTable,
    conj_range: usize,
    order_cap: usize,
) -> Result<LamplighterReport> {
    if !group.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let db = DeBruijn::new(k, group)?;
    let machine = &db.machine;
    let e = db.state_of_word(&vec![group.identity(); k])?;
    let a = machine.element(inv(e))?;
    // Torsion part: t_h = B_h · B_e^{−1} acts as translation by −F_h.
    let mut torsion = Vec::new();
    let mut translations: Vec<Element> = Vec::new();
    for h in 0..machine.n_states() {
        let t_h = machine.element(gen(h))?.compose(&a)?;
        let expected: usize = db
            .state_word(h)
            .iter()
            .map(|&x| group.order_of(x))
            .fold(1, lcm);
        let order = group::element_order_of(&t_h, order_cap)?;
        torsion.push((h, expected, order == group::OrderResult::Finite(expected)));
        translations.push(t_h);
    }
    // t_e must be the identity and h ↦ t_h injective.
    let translations_injective = (0..translations.len()).all(|i| {
        (i + 1..translations.len()).all(|j| translations[i] != translations[j])
    }) && translations[e].is_identity();
    // Conjugates a^i t_h a^{−i} pairwise commute.
    let a_inv = a.inverse()?;
    let mut conjugates = Vec::new();
    for h in 0..machine.n_states() {
        for i in 0..=conj_range {
            // a^i t_h a^{−i} and a^{−i} t_h a^{i} cover both signs of i.
            let mut pos = translations[h].clone();
            let mut neg = translations[h].clone();
            for _ in 0..i {
                pos = a.compose(&pos)?.compose(&a_inv)?;
                neg = a_inv.compose(&neg)?.compose(&a)?;
            }
            conjugates.push(pos);
            if i > 0 {
                conjugates.push(neg);
            }
        }
    }
    let mut conjugates_commute = true;
    'outer: for x in &conjugates {
        for y in &conjugates {
            if x.compose(y)? != y.compose(x)? {
                conjugates_commute = false;
                break 'outer;
            }
        }
    }
    // a has no finite order up to the cap.
    let shift_order = group::element_order_of(&a, order_cap)?;
    let shift_has_infinite_order_to = match shift_order {
        group::OrderResult::ExceedsCap(c) => c,
        group::OrderResult::Finite(_) => 0,
    };
    Ok(LamplighterReport {
        k,
        group_order: group.len(),
        torsion,
        conjugates_commute,
        shift_has_infinite_order_to,
        translations_injective,
    })
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
