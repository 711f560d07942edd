use std::collections::{HashMap, VecDeque};

use crate::budget::Budget;
use crate::error::{Error, Result};

use super::dfa::Dfa;

/// Boolean operation for [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Union,
    Intersection,
    Difference,
}

impl Combine {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            Combine::Union => x || y,
            Combine::Intersection => x && y,
            Combine::Difference => x && !y,
        }
    }
}

/// Outcome of an inclusion test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion {
    Holds,
    /// Shortest word of the inner language missing from the outer one.
    Fails(String),
}

impl Inclusion {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Holds)
    }
}

/// Minimal complete DFA for the same language.
///
/// Unreachable states are dropped, states are merged by Hopcroft partition
/// refinement and renumbered in BFS order from the initial state with letters
/// taken in alphabet order. Two DFAs accept the same language iff their
/// minimizations are equal.
pub fn minimize(d: &Dfa) -> Result<Dfa> {
    let k = d.alphabet().len();
    let reachable = bfs_order(d, d.initial());
    let mut local = vec![usize::MAX; d.state_count()];
    for (i, &q) in reachable.iter().enumerate() {
        local[q] = i;
    }
    let n = reachable.len();
    let delta: Vec<usize> = reachable
        .iter()
        .flat_map(|&q| (0..k).map(move |a| (q, a)))
        .map(|(q, a)| local[d.step(q, a)])
        .collect();
    let finals: Vec<bool> = reachable.iter().map(|&q| d.is_final(q)).collect();

    let block_of = hopcroft(n, k, &delta, &finals);
    let blocks = block_of.iter().max().map_or(0, |b| b + 1);
    let mut quotient = vec![0; blocks * k];
    let mut quotient_finals = vec![false; blocks];
    for q in 0..n {
        let b = block_of[q];
        quotient_finals[b] = finals[q];
        for a in 0..k {
            quotient[b * k + a] = block_of[delta[q * k + a]];
        }
    }
    let merged = Dfa::from_parts(d.alphabet().clone(), block_of[0], quotient_finals, quotient)?;
    Ok(renumber_bfs(&merged))
}

/// States reachable from `start`, in BFS order over the sorted alphabet.
fn bfs_order(d: &Dfa, start: usize) -> Vec<usize> {
    let k = d.alphabet().len();
    let mut seen = vec![false; d.state_count()];
    let mut order = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        i += 1;
        for a in 0..k {
            let t = d.step(q, a);
            if !seen[t] {
                seen[t] = true;
                order.push(t);
            }
        }
    }
    order
}

fn renumber_bfs(d: &Dfa) -> Dfa {
    let k = d.alphabet().len();
    let order = bfs_order(d, d.initial());
    let mut new_id = vec![usize::MAX; d.state_count()];
    for (i, &q) in order.iter().enumerate() {
        new_id[q] = i;
    }
    let delta = order
        .iter()
        .flat_map(|&q| (0..k).map(move |a| (q, a)))
        .map(|(q, a)| new_id[d.step(q, a)])
        .collect();
    let finals = order.iter().map(|&q| d.is_final(q)).collect();
    Dfa::from_parts(d.alphabet().clone(), 0, finals, delta).expect("renumbering preserves validity")
}

/// Hopcroft's partition refinement. Returns the block of every state.
fn hopcroft(n: usize, k: usize, delta: &[usize], finals: &[bool]) -> Vec<usize> {
    let mut inverse = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for (a, inv) in inverse.iter_mut().enumerate() {
            inv[delta[q * k + a]].push(q);
        }
    }

    let (accepting, rejecting): (Vec<usize>, Vec<usize>) = (0..n).partition(|&q| finals[q]);
    let mut blocks: Vec<Vec<usize>> = [accepting, rejecting]
        .into_iter()
        .filter(|b| !b.is_empty())
        .collect();
    let mut block_of = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        for &q in members {
            block_of[q] = b;
        }
    }
    let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
    let mut worklist = Vec::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() { 0 } else { 1 };
        for a in 0..k {
            worklist.push((smaller, a));
            pending[smaller][a] = true;
        }
    }

    while let Some((splitter, a)) = worklist.pop() {
        pending[splitter][a] = false;
        let mut touched: Vec<usize> = Vec::new();
        let mut marked: HashMap<usize, Vec<usize>> = HashMap::new();
        for &y in &blocks[splitter] {
            for &x in &inverse[a][y] {
                let b = block_of[x];
                let entry = marked.entry(b).or_insert_with(|| {
                    touched.push(b);
                    Vec::new()
                });
                entry.push(x);
            }
        }
        for b in touched {
            let inside = marked.remove(&b).unwrap();
            if inside.len() == blocks[b].len() {
                continue;
            }
            let new_block = blocks.len();
            for &q in &inside {
                block_of[q] = new_block;
            }
            blocks[b].retain(|&q| block_of[q] == b);
            blocks.push(inside);
            pending.push(vec![false; k]);
            for c in 0..k {
                let target = if pending[b][c] || blocks[new_block].len() <= blocks[b].len() {
                    new_block
                } else {
                    b
                };
                if !pending[target][c] {
                    pending[target][c] = true;
                    worklist.push((target, c));
                }
            }
        }
    }
    block_of
}

/// Product automaton for a Boolean combination of two languages, minimized.
pub fn combine(x: &Dfa, y: &Dfa, op: Combine, budget: &Budget) -> Result<Dfa> {
    x.alphabet().ensure_same(y.alphabet())?;
    let k = x.alphabet().len();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = vec![(x.initial(), y.initial())];
    index.insert(states[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q) = states[i];
        i += 1;
        for a in 0..k {
            let next = (x.step(p, a), y.step(q, a));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= budget.max_states {
                        return Err(Error::Budget {
                            what: "DFA state",
                            limit: budget.max_states,
                        });
                    }
                    index.insert(next, states.len());
                    states.push(next);
                    states.len() - 1
                }
            };
            delta.push(id);
        }
    }
    let finals = states
        .iter()
        .map(|&(p, q)| op.apply(x.is_final(p), y.is_final(q)))
        .collect();
    minimize(&Dfa::from_parts(x.alphabet().clone(), 0, finals, delta)?)
}

/// Shortest accepted word (ties broken by alphabet order), or `None` when
/// the language is empty.
pub fn is_empty(d: &Dfa) -> Option<String> {
    let k = d.alphabet().len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; d.state_count()];
    let mut seen = vec![false; d.state_count()];
    let mut queue = VecDeque::from([d.initial()]);
    seen[d.initial()] = true;
    while let Some(q) = queue.pop_front() {
        if d.is_final(q) {
            let mut letters = Vec::new();
            let mut cur = q;
            while let Some((prev, a)) = parent[cur] {
                letters.push(a);
                cur = prev;
            }
            letters.reverse();
            return Some(d.alphabet().decode(&letters));
        }
        for a in 0..k {
            let t = d.step(q, a);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, a));
                queue.push_back(t);
            }
        }
    }
    None
}

/// Tests `L(inner) ⊆ L(outer)`.
pub fn includes(outer: &Dfa, inner: &Dfa, budget: &Budget) -> Result<Inclusion> {
    let rest = combine(inner, outer, Combine::Difference, budget)?;
    Ok(match is_empty(&rest) {
        None => Inclusion::Holds,
        Some(w) => Inclusion::Fails(w),
    })
}

/// Language equality.
pub fn equivalent(x: &Dfa, y: &Dfa) -> Result<bool> {
    x.alphabet().ensure_same(y.alphabet())?;
    Ok(minimize(x)? == minimize(y)?)
}

/// Whether every letter permutes the states (the automaton is also
/// co-deterministic). On a minimal DFA this certifies a group language.
pub fn is_permutation_automaton(d: &Dfa) -> bool {
    let n = d.state_count();
    (0..d.alphabet().len()).all(|a| {
        let mut hit = vec![false; n];
        (0..n).all(|q| !std::mem::replace(&mut hit[d.step(q, a)], true))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::lang::{compile_dfa, parse_pattern};

    fn lang(text: &str, alphabet: &str) -> Dfa {
        let alphabet = Alphabet::parse(alphabet).unwrap();
        compile_dfa(&parse_pattern(text, &alphabet).unwrap(), &alphabet, &Budget::default()).unwrap()
    }

    #[test]
    fn redundant_a_star_collapses() {
        let ab = Alphabet::parse("ab").unwrap();
        // five states, three of them equivalent accepting a-loops
        let d = Dfa::from_rows(
            ab,
            0,
            &[0, 1, 2],
            &[vec![1, 3], vec![2, 4], vec![0, 3], vec![3, 3], vec![4, 3]],
        )
        .unwrap();
        let m = minimize(&d).unwrap();
        assert_eq!(m.state_count(), 2);
        assert_eq!(m, minimize(&m).unwrap());
        let unary = Dfa::from_rows(Alphabet::parse("a").unwrap(), 0, &[0, 1], &[vec![1], vec![0]]).unwrap();
        assert_eq!(minimize(&unary).unwrap().state_count(), 1);
    }

    #[test]
    fn even_as_needs_two_states() {
        let m = lang("(aa)*", "a");
        assert_eq!(m.state_count(), 2);
        assert_eq!(minimize(&m).unwrap(), m);
    }

    #[test]
    fn combine_examples() {
        let b = Budget::default();
        let even = lang("(aa)*", "a");
        let odd = lang("a(aa)*", "a");
        let meet = combine(&even, &odd, Combine::Intersection, &b).unwrap();
        assert_eq!(is_empty(&meet), None);
        let nothing = lang("∅", "a");
        assert_eq!(combine(&even, &nothing, Combine::Union, &b).unwrap(), even);
        let diff = combine(&lang("a*", "a"), &lang("_", "a"), Combine::Difference, &b).unwrap();
        assert!(equivalent(&diff, &lang("aa*", "a")).unwrap());
        let other = lang("b", "ab");
        assert!(matches!(
            combine(&even, &other, Combine::Union, &b),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn shortest_words() {
        assert_eq!(is_empty(&lang("∅", "ab")), None);
        assert_eq!(is_empty(&lang("(ab)*", "ab")), Some(String::new()));
        assert_eq!(is_empty(&lang("a*ba*b(a|b)*", "ab")), Some("bb".into()));
        assert_eq!(is_empty(&lang("(b|a)(a|b)", "ab")), Some("aa".into()));
    }

    #[test]
    fn inclusion_examples() {
        let b = Budget::default();
        let all = lang("a*", "a");
        let even = lang("(aa)*", "a");
        assert!(includes(&all, &even, &b).unwrap().holds());
        assert_eq!(includes(&even, &all, &b).unwrap(), Inclusion::Fails("a".into()));
        let split = lang("(aa)*|a(aa)*", "a");
        assert!(includes(&split, &all, &b).unwrap().holds());
    }

    #[test]
    fn permutation_automata() {
        assert!(is_permutation_automaton(&lang("(aa)*", "a")));
        assert!(!is_permutation_automaton(&lang("a*ba*", "ab")));
        assert!(is_permutation_automaton(&lang("(a|b)*", "ab")));
        assert!(!is_permutation_automaton(&lang("(ab)*", "ab")));
        assert!(is_permutation_automaton(&lang("(b|ab*ab*a)*", "ab")));
    }
}
