use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Abstract syntax of a regular pattern.
///
/// Grammar (precedence star > concatenation > union):
///
/// ```text
/// union   := concat ('|' concat)*
/// concat  := postfix postfix*
/// postfix := atom ('*' | '+')*
/// atom    := symbol | '∅' | '%' | '_' | '(' union ')'
/// ```
///
/// `∅`/`%` is the empty language and `_` the empty word. Whitespace is ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Empty,
    Epsilon,
    Letter(char),
    Concat(Vec<Pattern>),
    Union(Vec<Pattern>),
    Star(Box<Pattern>),
    Plus(Box<Pattern>),
}

/// Parses `text` over `alphabet`.
pub fn parse_pattern(text: &str, alphabet: &Alphabet) -> Result<Pattern> {
    let tokens: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser {
        tokens,
        cursor: 0,
        alphabet,
        end: text.chars().count(),
    };
    let pattern = parser.union()?;
    match parser.peek() {
        None => Ok(pattern),
        Some((pos, ')')) => Err(Error::Parse {
            position: pos,
            message: "unbalanced ')'".into(),
        }),
        Some((pos, c)) => Err(Error::Parse {
            position: pos,
            message: format!("unexpected '{c}'"),
        }),
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, char)>,
    cursor: usize,
    alphabet: &'a Alphabet,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.tokens.get(self.cursor).copied()
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn union(&mut self) -> Result<Pattern> {
        let mut branches = vec![self.concat()?];
        while let Some((_, '|')) = self.peek() {
            self.cursor += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Pattern::Union(branches)
        })
    }

    fn concat(&mut self) -> Result<Pattern> {
        let mut factors = Vec::new();
        while let Some((_, c)) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            factors.push(self.postfix()?);
        }
        match factors.len() {
            0 => Err(Error::Parse {
                position: self.position(),
                message: "expected an expression".into(),
            }),
            1 => Ok(factors.pop().unwrap()),
            _ => Ok(Pattern::Concat(factors)),
        }
    }

    fn postfix(&mut self) -> Result<Pattern> {
        let mut p = self.atom()?;
        while let Some((_, c)) = self.peek() {
            match c {
                '*' => p = Pattern::Star(Box::new(p)),
                '+' => p = Pattern::Plus(Box::new(p)),
                _ => break,
            }
            self.cursor += 1;
        }
        Ok(p)
    }

    fn atom(&mut self) -> Result<Pattern> {
        let Some((pos, c)) = self.peek() else {
            return Err(Error::Parse {
                position: self.end,
                message: "unexpected end of pattern".into(),
            });
        };
        self.cursor += 1;
        match c {
            '∅' | '%' => Ok(Pattern::Empty),
            '_' => Ok(Pattern::Epsilon),
            '(' => {
                let inner = self.union()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.cursor += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::Parse {
                        position: pos,
                        message: "unbalanced '('".into(),
                    }),
                }
            }
            c if self.alphabet.index_of(c).is_some() => Ok(Pattern::Letter(c)),
            c if c.is_ascii_lowercase() || c.is_ascii_digit() => Err(Error::Parse {
                position: pos,
                message: format!("symbol '{c}' is not declared in alphabet [{}]", self.alphabet),
            }),
            c => Err(Error::Parse {
                position: pos,
                message: format!("unexpected '{c}'"),
            }),
        }
    }
}

impl Pattern {
    /// Direct membership test on the syntax tree, independent of any automaton.
    pub fn matches(&self, word: &str) -> bool {
        let word: Vec<char> = word.chars().collect();
        self.ends(&word, &BTreeSet::from([0])).contains(&word.len())
    }

    /// Positions reachable after matching `self` starting from any of `starts`.
    fn ends(&self, word: &[char], starts: &BTreeSet<usize>) -> BTreeSet<usize> {
        match self {
            Pattern::Empty => BTreeSet::new(),
            Pattern::Epsilon => starts.clone(),
            Pattern::Letter(c) => starts
                .iter()
                .filter(|&&i| word.get(i) == Some(c))
                .map(|i| i + 1)
                .collect(),
            Pattern::Concat(parts) => parts
                .iter()
                .fold(starts.clone(), |acc, p| p.ends(word, &acc)),
            Pattern::Union(parts) => parts.iter().flat_map(|p| p.ends(word, starts)).collect(),
            Pattern::Star(inner) => closure(inner, word, starts.clone()),
            Pattern::Plus(inner) => closure(inner, word, inner.ends(word, starts)),
        }
    }

    /// Every symbol used by the pattern.
    pub fn symbols(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<char>) {
        match self {
            Pattern::Empty | Pattern::Epsilon => {}
            Pattern::Letter(c) => {
                out.insert(*c);
            }
            Pattern::Concat(ps) | Pattern::Union(ps) => ps.iter().for_each(|p| p.collect_symbols(out)),
            Pattern::Star(p) | Pattern::Plus(p) => p.collect_symbols(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Pattern::Union(_) => 0,
            Pattern::Concat(_) => 1,
            _ => 2,
        }
    }
}

fn closure(inner: &Pattern, word: &[char], mut reached: BTreeSet<usize>) -> BTreeSet<usize> {
    let mut frontier = reached.clone();
    while !frontier.is_empty() {
        let next = inner.ends(word, &frontier);
        frontier = next.difference(&reached).copied().collect();
        reached.extend(frontier.iter().copied());
    }
    reached
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, p: &Pattern, min: u8| {
            if p.precedence() < min {
                write!(f, "({p})")
            } else {
                write!(f, "{p}")
            }
        };
        match self {
            Pattern::Empty => write!(f, "∅"),
            Pattern::Epsilon => write!(f, "_"),
            Pattern::Letter(c) => write!(f, "{c}"),
            Pattern::Concat(ps) => ps.iter().try_for_each(|p| child(f, p, 2)),
            Pattern::Union(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    child(f, p, 1)?;
                }
                Ok(())
            }
            Pattern::Star(p) => {
                child(f, p, 3)?;
                write!(f, "*")
            }
            Pattern::Plus(p) => {
                child(f, p, 3)?;
                write!(f, "+")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Pattern::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn star(p: Pattern) -> Pattern {
        Star(Box::new(p))
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse_pattern("a*ba*", &ab()).unwrap(),
            Concat(vec![star(Letter('a')), Letter('b'), star(Letter('a'))])
        );
        assert_eq!(parse_pattern("_", &ab()).unwrap(), Epsilon);
        assert_eq!(
            parse_pattern("(ab)*", &ab()).unwrap(),
            star(Concat(vec![Letter('a'), Letter('b')]))
        );
        assert_eq!(parse_pattern("∅", &ab()).unwrap(), Empty);
        assert_eq!(parse_pattern("%", &ab()).unwrap(), Empty);
    }

    #[test]
    fn union_binds_loosest() {
        assert_eq!(
            parse_pattern("ab|b+", &ab()).unwrap(),
            Union(vec![
                Concat(vec![Letter('a'), Letter('b')]),
                Plus(Box::new(Letter('b')))
            ])
        );
    }

    #[test]
    fn undeclared_symbol_reports_position() {
        match parse_pattern("ab(c)", &ab()) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbalanced_parentheses() {
        assert!(matches!(parse_pattern("(ab", &ab()), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_pattern("ab)", &ab()), Err(Error::Parse { position: 2, .. })));
        assert!(parse_pattern("a|", &ab()).is_err());
        assert!(parse_pattern("*", &ab()).is_err());
    }

    #[test]
    fn printer_round_trips() {
        for text in ["a*ba*", "(ab)*", "a|b(a|b)*", "(a|_)+b", "∅", "(a*)*"] {
            let p = parse_pattern(text, &ab()).unwrap();
            let again = parse_pattern(&p.to_string(), &ab()).unwrap();
            assert_eq!(p, again, "{text} printed as {p}");
        }
    }

    #[test]
    fn direct_matching() {
        let p = parse_pattern("a*ba*b(a|b)*", &ab()).unwrap();
        assert!(p.matches("bb"));
        assert!(p.matches("abab"));
        assert!(!p.matches("aba"));
        let e = parse_pattern("(a*)*", &ab()).unwrap();
        assert!(e.matches(""));
        assert!(e.matches("aaa"));
        assert!(!e.matches("b"));
    }
}
