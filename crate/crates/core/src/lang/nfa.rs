use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::error::{Error, Result};

use super::dfa::Dfa;
use super::ops::minimize;
use super::pattern::Pattern;

/// An epsilon-free nondeterministic automaton.
#[derive(Clone, Debug)]
pub(crate) struct Nfa {
    pub alphabet: Alphabet,
    pub initial: Vec<usize>,
    pub finals: Vec<bool>,
    /// `transitions[state][letter]` lists the targets.
    pub transitions: Vec<Vec<Vec<usize>>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            alphabet,
            initial: Vec::new(),
            finals: vec![false; states],
            transitions: vec![vec![Vec::new(); k]; states],
        }
    }

    pub fn add(&mut self, from: usize, letter: usize, to: usize) {
        self.transitions[from][letter].push(to);
    }

    /// Subset construction. The empty subset, when reachable, becomes the sink,
    /// so the result is complete.
    pub fn determinize(&self, budget: &Budget) -> Result<Dfa> {
        let k = self.alphabet.len();
        let start: Vec<usize> = self.initial.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(current) = queue.pop_front() {
            for a in 0..k {
                let target: BTreeSet<usize> = subsets[current]
                    .iter()
                    .flat_map(|&q| self.transitions[q][a].iter().copied())
                    .collect();
                let target: Vec<usize> = target.into_iter().collect();
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        if id >= budget.max_states {
                            return Err(Error::Budget {
                                what: "DFA state",
                                limit: budget.max_states,
                            });
                        }
                        index.insert(target.clone(), id);
                        subsets.push(target);
                        queue.push_back(id);
                        id
                    }
                };
                delta.push((current, a, id));
            }
        }
        let n = subsets.len();
        let mut table = vec![0; n * k];
        for (q, a, t) in delta {
            table[q * k + a] = t;
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa::from_parts(self.alphabet.clone(), 0, finals, table)
    }
}

/// Compiles a pattern to its minimal complete DFA (Glushkov automaton,
/// subset construction, minimization).
pub fn compile_dfa(pattern: &Pattern, alphabet: &Alphabet, budget: &Budget) -> Result<Dfa> {
    let mut g = Glushkov::default();
    let info = g.visit(pattern, alphabet)?;
    let positions = g.letters.len();
    let mut nfa = Nfa::new(alphabet.clone(), positions + 1);
    nfa.initial.push(0);
    for &p in &info.first {
        nfa.add(0, g.letters[p], p + 1);
    }
    for (p, follow) in g.follow.iter().enumerate() {
        for &q in follow {
            nfa.add(p + 1, g.letters[q], q + 1);
        }
    }
    for &p in &info.last {
        nfa.finals[p + 1] = true;
    }
    nfa.finals[0] = info.nullable;
    minimize(&nfa.determinize(budget)?)
}

#[derive(Default)]
struct Glushkov {
    /// Letter index of each position.
    letters: Vec<usize>,
    follow: Vec<BTreeSet<usize>>,
}

struct Info {
    nullable: bool,
    first: BTreeSet<usize>,
    last: BTreeSet<usize>,
}

impl Glushkov {
    fn visit(&mut self, p: &Pattern, alphabet: &Alphabet) -> Result<Info> {
        Ok(match p {
            Pattern::Empty => Info {
                nullable: false,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Pattern::Epsilon => Info {
                nullable: true,
                first: BTreeSet::new(),
                last: BTreeSet::new(),
            },
            Pattern::Letter(c) => {
                let letter = alphabet.index_of(*c).ok_or(Error::UnknownSymbol(*c))?;
                let pos = self.letters.len();
                self.letters.push(letter);
                self.follow.push(BTreeSet::new());
                Info {
                    nullable: false,
                    first: BTreeSet::from([pos]),
                    last: BTreeSet::from([pos]),
                }
            }
            Pattern::Concat(parts) => {
                let mut acc = Info {
                    nullable: true,
                    first: BTreeSet::new(),
                    last: BTreeSet::new(),
                };
                for part in parts {
                    let next = self.visit(part, alphabet)?;
                    for &x in &acc.last {
                        self.follow[x].extend(next.first.iter().copied());
                    }
                    if acc.nullable {
                        acc.first.extend(next.first.iter().copied());
                    }
                    if next.nullable {
                        acc.last.extend(next.last);
                    } else {
                        acc.last = next.last;
                    }
                    acc.nullable &= next.nullable;
                }
                acc
            }
            Pattern::Union(parts) => {
                let mut acc = Info {
                    nullable: false,
                    first: BTreeSet::new(),
                    last: BTreeSet::new(),
                };
                for part in parts {
                    let next = self.visit(part, alphabet)?;
                    acc.nullable |= next.nullable;
                    acc.first.extend(next.first);
                    acc.last.extend(next.last);
                }
                acc
            }
            Pattern::Star(inner) | Pattern::Plus(inner) => {
                let mut info = self.visit(inner, alphabet)?;
                for &x in &info.last {
                    self.follow[x].extend(info.first.iter().copied());
                }
                if matches!(p, Pattern::Star(_)) {
                    info.nullable = true;
                }
                info
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_pattern;

    fn compile(text: &str, alphabet: &str) -> Dfa {
        let alphabet = Alphabet::parse(alphabet).unwrap();
        let p = parse_pattern(text, &alphabet).unwrap();
        compile_dfa(&p, &alphabet, &Budget::default()).unwrap()
    }

    #[test]
    fn ab_star_has_three_states() {
        // start/accepting, after 'a', sink
        let d = compile("(ab)*", "ab");
        assert_eq!(d.state_count(), 3);
        assert!(d.is_final(d.initial()));
        let mid = d.step(0, 0);
        let sink = d.step(0, 1);
        assert_ne!(mid, sink);
        assert_eq!(d.step(mid, 1), 0);
        assert_eq!(d.step(mid, 0), sink);
        assert_eq!(d.step(sink, 0), sink);
        assert_eq!(d.step(sink, 1), sink);
    }

    #[test]
    fn empty_language_is_one_state() {
        let d = compile("∅", "ab");
        assert_eq!(d.state_count(), 1);
        assert_eq!(d.finals().count(), 0);
    }

    #[test]
    fn at_least_two_bs_counts_to_two() {
        let d = compile("a*ba*b(a|b)*", "ab");
        assert_eq!(d.state_count(), 3);
        let one = d.step(0, 1);
        let two = d.step(one, 1);
        assert_eq!(d.step(0, 0), 0);
        assert_eq!(d.step(one, 0), one);
        assert_eq!(d.step(two, 0), two);
        assert_eq!(d.step(two, 1), two);
        assert_eq!(d.finals().collect::<Vec<_>>(), vec![two]);
    }

    #[test]
    fn budget_is_enforced() {
        let alphabet = Alphabet::parse("ab").unwrap();
        // (a|b)*a(a|b)^5 needs 2^6 states
        let p = parse_pattern("(a|b)*a(a|b)(a|b)(a|b)(a|b)(a|b)", &alphabet).unwrap();
        let tight = Budget::default().with_limit(10);
        assert!(matches!(
            compile_dfa(&p, &alphabet, &tight),
            Err(Error::Budget { .. })
        ));
        assert_eq!(compile_dfa(&p, &alphabet, &Budget::default()).unwrap().state_count(), 64);
    }
}
