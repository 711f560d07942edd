use std::fmt;

use crate::error::{Error, Result};

/// A finite, sorted alphabet of single-character symbols (`a`–`z`, `0`–`9`).
///
/// Letters are addressed by their index in sorted order everywhere in the
/// crate, so "alphabet order" and "index order" coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if let Some(bad) = symbols
            .iter()
            .find(|c| !(c.is_ascii_lowercase() || c.is_ascii_digit()))
        {
            return Err(Error::InvalidAlphabet(format!(
                "symbol '{bad}' is not a lowercase letter or digit"
            )));
        }
        symbols.sort_unstable();
        if let Some(w) = symbols.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidAlphabet(format!("duplicate symbol '{}'", w[0])));
        }
        Ok(Alphabet { symbols })
    }

    /// Parses `"ab"` or `"a,b"`.
    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.chars().filter(|c| *c != ',' && !c.is_whitespace()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, letter: usize) -> char {
        self.symbols[letter]
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    /// Maps a word to letter indices.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| self.index_of(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    pub fn decode(&self, letters: &[usize]) -> String {
        letters.iter().map(|&a| self.symbols[a]).collect()
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_validated() {
        let a = Alphabet::parse("b,a").unwrap();
        assert_eq!(a.symbols(), &['a', 'b']);
        assert_eq!(a.index_of('b'), Some(1));
        assert!(Alphabet::parse("aa").is_err());
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("A").is_err());
    }

    #[test]
    fn encode_rejects_unknown_symbols() {
        let a = Alphabet::parse("ab").unwrap();
        assert_eq!(a.encode("ba").unwrap(), vec![1, 0]);
        assert!(matches!(a.encode("c"), Err(Error::UnknownSymbol('c'))));
        assert_eq!(a.decode(&[0, 1, 1]), "abb");
    }
}
