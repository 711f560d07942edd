use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// A complete deterministic finite automaton.
///
/// The transition table is total: every `(state, letter)` has exactly one
/// target. Letters are indices into the (sorted) alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    finals: Vec<bool>,
    /// `delta[state * alphabet.len() + letter]`
    delta: Vec<usize>,
}

impl Dfa {
    /// Builds a DFA from per-state rows of targets (one entry per letter).
    pub fn from_rows(
        alphabet: Alphabet,
        initial: usize,
        finals: &[usize],
        rows: &[Vec<usize>],
    ) -> Result<Self> {
        let n = rows.len();
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(n * k);
        for (state, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidDfa(format!(
                    "state {state} has {} transitions, expected {k}",
                    row.len()
                )));
            }
            delta.extend_from_slice(row);
        }
        let mut final_flags = vec![false; n];
        for &f in finals {
            if f >= n {
                return Err(Error::InvalidDfa(format!("final state {f} out of range 0..{n}")));
            }
            final_flags[f] = true;
        }
        Dfa::from_parts(alphabet, initial, final_flags, delta)
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        let n = finals.len();
        if n == 0 {
            return Err(Error::InvalidDfa("automaton has no states".into()));
        }
        if initial >= n {
            return Err(Error::InvalidDfa(format!("initial state {initial} out of range 0..{n}")));
        }
        if delta.len() != n * alphabet.len() {
            return Err(Error::InvalidDfa("transition table is not total".into()));
        }
        if let Some(bad) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidDfa(format!("transition target {bad} out of range 0..{n}")));
        }
        Ok(Dfa {
            alphabet,
            initial,
            finals,
            delta,
        })
    }

    /// One-state automaton for the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa {
            alphabet,
            initial: 0,
            finals: vec![false],
            delta: vec![0; k],
        }
    }

    /// One-state automaton for `A*`.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut d = Dfa::empty(alphabet);
        d.finals[0] = true;
        d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .map(|(i, _)| i)
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[state * self.alphabet.len() + letter]
    }

    /// State reached from `state` after reading `letters`.
    pub fn run_from(&self, state: usize, letters: &[usize]) -> usize {
        letters.iter().fold(state, |q, &a| self.step(q, a))
    }

    pub fn accepts_letters(&self, letters: &[usize]) -> bool {
        self.finals[self.run_from(self.initial, letters)]
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepts_letters(&self.alphabet.encode(word)?))
    }

    /// Same automaton with final and non-final states swapped.
    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d
    }

    pub fn to_file(&self) -> DfaFile {
        let k = self.alphabet.len();
        let delta = (0..k)
            .map(|a| {
                let column = (0..self.state_count()).map(|q| self.step(q, a)).collect();
                (self.alphabet.symbol(a).to_string(), column)
            })
            .collect();
        DfaFile {
            alphabet: self.alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            states: self.state_count(),
            initial: self.initial,
            finals: self.finals().collect(),
            delta,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("DFA serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<DfaFile>(text)?.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Dfa::from_json(&text)
    }
}

/// On-disk DFA format:
/// `{"alphabet":["a","b"],"states":3,"initial":0,"finals":[0],"delta":{"a":[1,2,2],"b":[2,0,2]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaFile {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub delta: BTreeMap<String, Vec<usize>>,
}

impl TryFrom<DfaFile> for Dfa {
    type Error = Error;

    fn try_from(file: DfaFile) -> Result<Dfa> {
        let mut symbols = Vec::with_capacity(file.alphabet.len());
        for s in &file.alphabet {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::InvalidAlphabet(format!(
                        "symbol \"{s}\" must be a single character"
                    )))
                }
            }
        }
        let alphabet = Alphabet::new(symbols)?;
        if file.delta.len() != alphabet.len() {
            return Err(Error::InvalidDfa(format!(
                "delta has {} letters, alphabet has {}",
                file.delta.len(),
                alphabet.len()
            )));
        }
        let mut rows = vec![Vec::with_capacity(alphabet.len()); file.states];
        for &symbol in alphabet.symbols() {
            let column = file
                .delta
                .get(&symbol.to_string())
                .ok_or_else(|| Error::InvalidDfa(format!("no transitions for symbol '{symbol}'")))?;
            if column.len() != file.states {
                return Err(Error::InvalidDfa(format!(
                    "transitions on '{symbol}' cover {} states, expected {}",
                    column.len(),
                    file.states
                )));
            }
            for (row, &target) in rows.iter_mut().zip(column) {
                row.push(target);
            }
        }
        Dfa::from_rows(alphabet, file.initial, &file.finals, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AB_STAR: &str =
        r#"{"alphabet":["a","b"],"states":3,"initial":0,"finals":[0],"delta":{"a":[1,2,2],"b":[2,0,2]}}"#;

    #[test]
    fn loads_the_documented_format() {
        let d = Dfa::from_json(AB_STAR).unwrap();
        assert_eq!(d.state_count(), 3);
        assert!(d.accepts("abab").unwrap());
        assert!(!d.accepts("aba").unwrap());
        assert_eq!(d.to_json(), AB_STAR);
    }

    #[test]
    fn rejects_partial_tables() {
        let short = AB_STAR.replace("[2,0,2]", "[2,0]");
        assert!(matches!(Dfa::from_json(&short), Err(Error::InvalidDfa(_))));
        let missing = r#"{"alphabet":["a","b"],"states":1,"initial":0,"finals":[],"delta":{"a":[0]}}"#;
        assert!(matches!(Dfa::from_json(missing), Err(Error::InvalidDfa(_))));
        let out_of_range = AB_STAR.replace("[1,2,2]", "[1,2,3]");
        assert!(matches!(Dfa::from_json(&out_of_range), Err(Error::InvalidDfa(_))));
        let bad_initial = AB_STAR.replace("\"initial\":0", "\"initial\":7");
        assert!(matches!(Dfa::from_json(&bad_initial), Err(Error::InvalidDfa(_))));
    }
}
