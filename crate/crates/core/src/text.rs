//! Line-oriented text format for automata.
//!
//! ```text
//! type: dfa            # or: mealy
//! alphabet: 0 1
//! states: q s
//! trans: q 0 s         # dfa:   <state> <symbol> <state>
//! trans: q 0|1 s       # mealy: <state> <in>|<out> <state>
//! ```
//! `#` starts a comment; every (state, symbol) pair appears exactly once.

use std::collections::HashMap;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::mealy::MealyMachine;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Dfa(Dfa),
    Mealy(MealyMachine),
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn logical_lines(text: &str) -> Lines<'_> {
    let items = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    Lines { items }
}

fn take_header<'a>(lines: &[(usize, &'a str)], idx: usize, key: &str) -> Result<(usize, &'a str)> {
    let &(ln, line) = lines
        .get(idx)
        .ok_or_else(|| err(0, format!("missing `{key}:` line")))?;
    let rest = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| err(ln, format!("expected `{key}:` line")))?;
    Ok((ln, rest.trim()))
}

/// Parses either format, detected from the `type:` line.
pub fn parse_automaton(text: &str) -> Result<Parsed> {
    let lines = logical_lines(text);
    let (ln, kind) = take_header(&lines.items, 0, "type")?;
    match kind {
        "dfa" => Ok(Parsed::Dfa(parse_body(&lines.items, false)?.0)),
        "mealy" => {
            let (dfa, lambda) = parse_body(&lines.items, true)?;
            Ok(Parsed::Mealy(MealyMachine::new(dfa, lambda)?))
        }
        other => Err(err(ln, format!("unknown type `{other}`"))),
    }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    match parse_automaton(text)? {
        Parsed::Dfa(d) => Ok(d),
        Parsed::Mealy(_) => Err(err(1, "expected `type: dfa`")),
    }
}

pub fn parse_mealy(text: &str) -> Result<MealyMachine> {
    match parse_automaton(text)? {
        Parsed::Mealy(m) => Ok(m),
        Parsed::Dfa(_) => Err(err(1, "expected `type: mealy`")),
    }
}

fn parse_body(lines: &[(usize, &str)], mealy: bool) -> Result<(Dfa, Vec<Vec<usize>>)> {
    let (ln_a, alpha) = take_header(lines, 1, "alphabet")?;
    let alphabet = Alphabet::new(alpha.split_whitespace().map(String::from))
        .map_err(|e| err(ln_a, e.to_string()))?;
    let (ln_s, states_line) = take_header(lines, 2, "states")?;
    let names: Vec<String> = states_line.split_whitespace().map(String::from).collect();
    if names.is_empty() {
        return Err(err(ln_s, "no states declared"));
    }
    let state_idx: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    if state_idx.len() != names.len() {
        return Err(err(ln_s, "duplicate state name"));
    }
    let m = alphabet.len();
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; m]; names.len()];
    let mut lambda: Vec<Vec<Option<usize>>> = vec![vec![None; m]; names.len()];
    for &(ln, line) in &lines[3..] {
        let rest = line
            .strip_prefix("trans")
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| err(ln, "expected `trans:` line"))?;
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let [src, label, dst] = parts.as_slice() else {
            return Err(err(ln, "expected `trans: <state> <label> <state>`"));
        };
        let &src = state_idx
            .get(src)
            .ok_or_else(|| err(ln, format!("unknown state `{src}`")))?;
        let &dst = state_idx
            .get(dst)
            .ok_or_else(|| err(ln, format!("unknown state `{dst}`")))?;
        let (input, output): (&str, Option<&str>) = if mealy {
            let (i, o) = label
                .split_once('|')
                .ok_or_else(|| err(ln, "mealy transition label must be `<in>|<out>`"))?;
            (i, Some(o))
        } else {
            if label.contains('|') {
                return Err(err(ln, "dfa transition label must be a single symbol"));
            }
            (label, None)
        };
        let input = alphabet
            .index_of(input)
            .map_err(|e| err(ln, e.to_string()))?;
        if delta[src][input].is_some() {
            return Err(err(
                ln,
                format!("duplicate transition for ({}, {})", names[src], alphabet.symbol(input)),
            ));
        }
        delta[src][input] = Some(dst);
        if let Some(o) = output {
            lambda[src][input] = Some(
                alphabet
                    .index_of(o)
                    .map_err(|e| err(ln, e.to_string()))?,
            );
        }
    }
    let mut delta_full = Vec::with_capacity(names.len());
    let mut lambda_full = Vec::with_capacity(names.len());
    for (q, row) in delta.iter().enumerate() {
        let mut drow = Vec::with_capacity(m);
        let mut lrow = Vec::with_capacity(m);
        for a in 0..m {
            drow.push(row[a].ok_or_else(|| {
                err(
                    0,
                    format!(
                        "missing transition for ({}, {})",
                        names[q],
                        alphabet.symbol(a)
                    ),
                )
            })?);
            if mealy {
                lrow.push(lambda[q][a].unwrap());
            }
        }
        delta_full.push(drow);
        lambda_full.push(lrow);
    }
    Ok((Dfa::new(names, alphabet, delta_full)?, lambda_full))
}

pub fn render_dfa(dfa: &Dfa) -> String {
    let mut out = String::from("type: dfa\n");
    render_common(&mut out, dfa, None);
    out
}

pub fn render_mealy(machine: &MealyMachine) -> String {
    let mut out = String::from("type: mealy\n");
    render_common(&mut out, machine.dfa(), Some(machine));
    out
}

fn render_common(out: &mut String, dfa: &Dfa, machine: Option<&MealyMachine>) {
    out.push_str("alphabet:");
    for s in dfa.alphabet().symbols() {
        out.push(' ');
        out.push_str(s);
    }
    out.push('\n');
    out.push_str("states:");
    for s in dfa.state_names() {
        out.push(' ');
        out.push_str(s);
    }
    out.push('\n');
    for q in 0..dfa.n_states() {
        for a in 0..dfa.alphabet().len() {
            let label = match machine {
                Some(m) => format!(
                    "{}|{}",
                    dfa.alphabet().symbol(a),
                    dfa.alphabet().symbol(m.output(q, a))
                ),
                None => dfa.alphabet().symbol(a).to_string(),
            };
            out.push_str(&format!(
                "trans: {} {} {}\n",
                dfa.state_name(q),
                label,
                dfa.state_name(dfa.step(q, a))
            ));
        }
    }
}
