//! Line-oriented text format for automata.
//!
//! ```text
//! states 3
//! alphabet a b
//! initial 1
//! final 3
//! trans 1 a 2
//! ...
//! ```
//!
//! A DFA needs exactly one `trans` line per (state, symbol) pair. In an NFA
//! `initial` lists any number of states and pairs may repeat or be absent.

use std::collections::BTreeSet;

use super::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::transform::strip_comment;

struct Raw {
    states: usize,
    alphabet: Vec<String>,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    // (line, from, symbol index, to)
    trans: Vec<(usize, usize, usize, usize)>,
    last_line: usize,
}

fn parse_raw(text: &str, deterministic: bool) -> Result<Raw> {
    let mut states: Option<usize> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut initials: Option<(usize, Vec<String>)> = None;
    let mut finals: Option<(usize, Vec<String>)> = None;
    let mut trans_raw: Vec<(usize, Vec<String>)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("non-empty line");
        let rest: Vec<String> = tokens.map(str::to_string).collect();
        let duplicate = || Error::parse(line_no, format!("duplicate `{keyword}` line"));
        match keyword {
            "states" => {
                if states.is_some() {
                    return Err(duplicate());
                }
                let [count] = rest.as_slice() else {
                    return Err(Error::parse(line_no, "`states` takes exactly one count"));
                };
                let count = parse_number(line_no, count)?;
                if count == 0 {
                    return Err(Error::parse(line_no, "an automaton needs at least one state"));
                }
                states = Some(count);
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(duplicate());
                }
                if rest.is_empty() {
                    return Err(Error::parse(line_no, "the alphabet must be non-empty"));
                }
                let mut seen = BTreeSet::new();
                if let Some(dup) = rest.iter().find(|s| !seen.insert(s.as_str())) {
                    return Err(Error::parse(line_no, format!("duplicate symbol `{dup}`")));
                }
                alphabet = Some(rest);
            }
            "initial" => {
                if initials.is_some() {
                    return Err(duplicate());
                }
                if deterministic && rest.len() != 1 {
                    return Err(Error::parse(line_no, "a DFA has exactly one initial state"));
                }
                initials = Some((line_no, rest));
            }
            "final" => {
                if finals.is_some() {
                    return Err(duplicate());
                }
                finals = Some((line_no, rest));
            }
            "trans" => {
                if rest.len() != 3 {
                    return Err(Error::parse(line_no, "`trans` takes `<from> <symbol> <to>`"));
                }
                trans_raw.push((line_no, rest));
            }
            other => return Err(Error::parse(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let end = last_line.max(1);
    let n = states.ok_or_else(|| Error::parse(end, "missing `states` line"))?;
    let alphabet = alphabet.ok_or_else(|| Error::parse(end, "missing `alphabet` line"))?;
    let (init_line, init_tokens) = initials.ok_or_else(|| Error::parse(end, "missing `initial` line"))?;
    let state_set = |line: usize, tokens: &[String]| -> Result<BTreeSet<usize>> {
        tokens.iter().map(|tok| parse_state(line, tok, n)).collect()
    };
    let initials = state_set(init_line, &init_tokens)?;
    let finals = match finals {
        Some((line, tokens)) => state_set(line, &tokens)?,
        None => BTreeSet::new(),
    };
    let mut trans = Vec::with_capacity(trans_raw.len());
    for (line, toks) in trans_raw {
        let from = parse_state(line, &toks[0], n)?;
        let symbol = alphabet
            .iter()
            .position(|s| *s == toks[1])
            .ok_or_else(|| Error::parse(line, format!("unknown symbol `{}`", toks[1])))?;
        let to = parse_state(line, &toks[2], n)?;
        trans.push((line, from, symbol, to));
    }
    Ok(Raw { states: n, alphabet, initials, finals, trans, last_line: end })
}

fn parse_number(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::parse(line, format!("`{tok}` is not a number")))
}

fn parse_state(line: usize, tok: &str, n: usize) -> Result<usize> {
    let s = parse_number(line, tok)?;
    if s == 0 || s > n {
        return Err(Error::parse(line, format!("state {s} is outside 1..={n}")));
    }
    Ok(s)
}

/// Parses the DFA text format, rejecting missing or duplicate transitions.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let raw = parse_raw(text, true)?;
    let k = raw.alphabet.len();
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; k]; raw.states];
    for &(line, from, symbol, to) in &raw.trans {
        let slot = &mut table[from - 1][symbol];
        if slot.is_some() {
            return Err(Error::parse(
                line,
                format!("duplicate transition for (state {from}, symbol {})", raw.alphabet[symbol]),
            ));
        }
        *slot = Some(to);
    }
    let mut rows = Vec::with_capacity(raw.states);
    for (p, row) in table.into_iter().enumerate() {
        let mut targets = Vec::with_capacity(k);
        for (a, target) in row.into_iter().enumerate() {
            match target {
                Some(q) => targets.push(q),
                None => {
                    return Err(Error::parse(
                        raw.last_line,
                        format!("missing transition for (state {}, symbol {})", p + 1, raw.alphabet[a]),
                    ))
                }
            }
        }
        rows.push(targets);
    }
    let initial = *raw.initials.iter().next().expect("checked during parsing");
    Dfa::new(raw.alphabet, rows, initial, &raw.finals).map_err(|e| Error::parse(raw.last_line, e.to_string()))
}

/// Parses the NFA text format.
pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let raw = parse_raw(text, false)?;
    let triples: Vec<(usize, usize, usize)> = raw.trans.iter().map(|&(_, p, a, q)| (p, a, q)).collect();
    Nfa::new(raw.states, raw.alphabet, &triples, &raw.initials, &raw.finals)
        .map_err(|e| Error::parse(raw.last_line, e.to_string()))
}

fn header(out: &mut String, n: usize, alphabet: &[String], initials: &BTreeSet<usize>, finals: &BTreeSet<usize>) {
    let join = |set: &BTreeSet<usize>| set.iter().map(|s| format!(" {s}")).collect::<String>();
    out.push_str(&format!("states {n}\n"));
    out.push_str(&format!("alphabet {}\n", alphabet.join(" ")));
    out.push_str(&format!("initial{}\n", join(initials)));
    out.push_str(&format!("final{}\n", join(finals)));
}

/// Emits a DFA; transitions are listed state by state in alphabet order.
pub fn emit_dfa(dfa: &Dfa) -> String {
    let mut out = String::new();
    header(&mut out, dfa.n(), dfa.alphabet(), &BTreeSet::from([dfa.initial()]), &dfa.finals());
    for p in 1..=dfa.n() {
        for (a, name) in dfa.alphabet().iter().enumerate() {
            out.push_str(&format!("trans {p} {name} {}\n", dfa.next(p, a)));
        }
    }
    out
}

pub fn emit_nfa(nfa: &Nfa) -> String {
    let mut out = String::new();
    header(&mut out, nfa.n(), nfa.alphabet(), &nfa.initials(), &nfa.finals());
    for p in 1..=nfa.n() {
        for (a, name) in nfa.alphabet().iter().enumerate() {
            for q in nfa.successors(p, a) {
                out.push_str(&format!("trans {p} {name} {q}\n"));
            }
        }
    }
    out
}
