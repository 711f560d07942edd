//! Covers of a language by marked products over a group language, and
//! guarded factorizations of words.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lang::{combine, includes, is_empty, is_permutation_automaton, minimize, Combine, Dfa, Nfa};
use crate::monoid::{transition_monoid, Element, SyntacticMorphism};

/// `↑_L w = L a₁ L a₂ ⋯ aₙ L`, and `↑_L ε = L`.
///
/// Built from `n + 1` copies of `L`'s automaton, copy `i` jumping to the
/// initial state of copy `i + 1` on `a_{i+1}` from any final state.
pub fn up_arrow(l: &Dfa, word: &str, budget: &Budget) -> Result<Dfa> {
    let letters = l.alphabet().encode(word)?;
    let (states, k) = (l.state_count(), l.alphabet().len());
    let copies = letters.len() + 1;
    let mut nfa = Nfa::new(l.alphabet().clone(), states * copies);
    nfa.initial = vec![l.initial()];
    for c in 0..copies {
        let base = c * states;
        for q in 0..states {
            for a in 0..k {
                nfa.add(base + q, a, base + l.step(q, a));
            }
        }
        for q in l.finals() {
            match letters.get(c) {
                Some(&a) => nfa.add(base + q, a, base + states + l.initial()),
                None => nfa.finals[base + q] = true,
            }
        }
    }
    minimize(&nfa.determinize(budget)?)
}

/// `L' = η⁻¹(1_G)` for the syntactic group morphism `η` of a group language:
/// the words acting as the identity on `L`'s minimal automaton.
pub fn identity_kernel(l: &Dfa, budget: &Budget) -> Result<Dfa> {
    let min = minimize(l)?;
    if !is_permutation_automaton(&min) {
        return Err(Error::Precondition("language is not a group language".into()));
    }
    let g = transition_monoid(&min, budget)?;
    let k = g.alphabet().len();
    let rows: Vec<Vec<usize>> = g.elements().map(|x| (0..k).map(|a| g.step(x, a)).collect()).collect();
    let finals: Vec<usize> = vec![g.identity()];
    minimize(&Dfa::from_rows(g.alphabet().clone(), g.identity(), &finals, &rows)?)
}

#[derive(Clone, Debug)]
pub struct CoverEntry {
    pub base: String,
    pub language: Dfa,
}

/// A cover of `H` by languages `↑_L w`.
#[derive(Clone, Debug)]
pub struct CoverResult {
    pub entries: Vec<CoverEntry>,
    /// `H ⊆ ⋃ entries` was verified by an inclusion check.
    pub certified: bool,
}

impl CoverResult {
    pub fn bases(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.base.as_str()).collect()
    }

    /// Union of the entry languages.
    pub fn union(&self, budget: &Budget) -> Result<Dfa> {
        let Some(first) = self.entries.first() else {
            return Err(Error::Precondition("empty cover".into()));
        };
        self.entries[1..]
            .iter()
            .try_fold(first.language.clone(), |u, e| combine(&u, &e.language, Combine::Union, budget))
    }

    /// Re-verifies `H ⊆ ⋃ entries` and that every base lies in `H`.
    pub fn covers(&self, h: &Dfa, budget: &Budget) -> Result<bool> {
        if !self.entries.iter().all(|e| h.accepts(&e.base).unwrap_or(false)) {
            return Ok(false);
        }
        if self.entries.is_empty() {
            return Ok(is_empty(h).is_none());
        }
        Ok(includes(&self.union(budget)?, h, budget)?.holds())
    }

    /// No base lies in `↑_{L'}` of another base, `L'` the identity kernel of `L`.
    pub fn is_antichain(&self, l: &Dfa, budget: &Budget) -> Result<bool> {
        let kernel = identity_kernel(l, budget)?;
        for (i, x) in self.entries.iter().enumerate() {
            let above = up_arrow(&kernel, &x.base, budget)?;
            for (j, y) in self.entries.iter().enumerate() {
                if i != j && above.accepts(&y.base)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Greedy cover of `H` by languages `↑_L w` with `w ∈ H`, for a group
/// language `L` containing `ε`.
///
/// Repeatedly adds the shortlex-least word of `H` not yet covered. A later
/// base is never in `↑_L` of an earlier one, and `↑_{L'} ⊆ ↑_L`, so the
/// bases form an antichain for the well-quasi-order induced by `L'` and the
/// loop stops. Stopping at `budget.max_cover_bases` leaves the result
/// uncertified.
pub fn pgcov_cover(h: &Dfa, l: &Dfa, budget: &Budget) -> Result<CoverResult> {
    h.alphabet().ensure_same(l.alphabet())?;
    let l = minimize(l)?;
    if !is_permutation_automaton(&l) {
        return Err(Error::Precondition("L must be a group language (permutation automaton)".into()));
    }
    if !l.accepts_letters(&[]) {
        return Err(Error::Precondition("L must contain the empty word".into()));
    }
    let mut entries = Vec::new();
    let mut covered = Dfa::empty(h.alphabet().clone());
    loop {
        let rest = combine(h, &covered, Combine::Difference, budget)?;
        let Some(base) = is_empty(&rest) else {
            break;
        };
        if entries.len() >= budget.max_cover_bases {
            return Ok(CoverResult {
                entries,
                certified: false,
            });
        }
        let language = up_arrow(&l, &base, budget)?;
        covered = combine(&covered, &language, Combine::Union, budget)?;
        entries.push(CoverEntry { base, language });
    }
    let mut result = CoverResult {
        entries,
        certified: false,
    };
    result.certified = result.covers(h, budget)?;
    Ok(result)
}

/// `w = w₁ ⋯ w_{n+1}` with idempotent links `eᵢ ∈ E(S)` such that
/// `α(wᵢ) eᵢ = α(wᵢ)` and `eᵢ α(wᵢ₊₁) = α(wᵢ₊₁)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardedDecomposition {
    pub blocks: Vec<String>,
    pub links: Vec<Element>,
}

impl GuardedDecomposition {
    /// Checks all invariants against `m` and the original word.
    pub fn verify(&self, m: &SyntacticMorphism, word: &str) -> bool {
        if self.blocks.concat() != word
            || self.blocks.iter().any(String::is_empty)
            || self.links.len() + 1 != self.blocks.len()
        {
            return false;
        }
        let Ok(images) = self.blocks.iter().map(|b| m.evaluate(b)).collect::<Result<Vec<_>>>() else {
            return false;
        };
        self.links.iter().enumerate().all(|(i, &e)| {
            e < m.size()
                && m.is_idempotent(e)
                && m.in_nonempty_image(e)
                && m.mul(images[i], e) == images[i]
                && m.mul(e, images[i + 1]) == images[i + 1]
        })
    }
}

/// An `α`-guarded decomposition of a nonempty word.
///
/// Words of length at most `k = |M|²` form a single block. Longer words
/// split off their last `k + 1` letters `a₀ ⋯ a_k`: among the `k + 1`
/// splittings `(α(a₀⋯aᵢ), α(aᵢ₊₁⋯a_k))` two coincide, say at `i < j`
/// (smallest such pair), giving `u = a₀⋯aᵢ`, `v = aᵢ₊₁⋯a_k` and the link
/// `e = α(aᵢ₊₁⋯aⱼ)^ω`. The remaining prefix is handled recursively and `u`
/// is appended to its last block.
pub fn guarded_decomposition(m: &SyntacticMorphism, word: &str) -> Result<GuardedDecomposition> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let letters = m.alphabet().encode(word)?;
    let k = m.size() * m.size();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut links = Vec::new();
    split(m, &letters, k, &mut blocks, &mut links);
    Ok(GuardedDecomposition {
        blocks: blocks.iter().map(|b| m.alphabet().decode(b)).collect(),
        links,
    })
}

fn split(m: &SyntacticMorphism, w: &[usize], k: usize, blocks: &mut Vec<Vec<usize>>, links: &mut Vec<Element>) {
    if w.len() <= k {
        blocks.push(w.to_vec());
        return;
    }
    let (prefix, tail) = w.split_at(w.len() - (k + 1));
    let mut prefixes = Vec::with_capacity(k + 1);
    let mut acc = m.identity();
    for &a in tail {
        acc = m.step(acc, a);
        prefixes.push(acc);
    }
    let mut suffixes = vec![m.identity(); k + 1];
    for i in (0..k).rev() {
        suffixes[i] = m.mul(m.letter_image(tail[i + 1]), suffixes[i + 1]);
    }
    let (i, j) = (0..=k)
        .flat_map(|i| (i + 1..=k).map(move |j| (i, j)))
        .find(|&(i, j)| prefixes[i] == prefixes[j] && suffixes[i] == suffixes[j])
        .expect("pigeonhole: k + 1 splittings, at most |M|² distinct");
    let (u, v) = tail.split_at(i + 1);
    let e = m.omega(m.evaluate_letters(&tail[i + 1..=j]));

    if prefix.len() <= k {
        blocks.push([prefix, u].concat());
    } else {
        split(m, prefix, k, blocks, links);
        blocks.last_mut().expect("nonempty").extend_from_slice(u);
    }
    links.push(e);
    blocks.push(v.to_vec());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::lang::{compile_dfa, equivalent, parse_pattern};
    use crate::monoid::tests::morphism;

    fn dfa(p: &str, a: &str) -> Dfa {
        let alphabet = Alphabet::parse(a).unwrap();
        compile_dfa(&parse_pattern(p, &alphabet).unwrap(), &alphabet, &Budget::default()).unwrap()
    }

    #[test]
    fn up_arrow_examples() {
        let b = Budget::default();
        let even = dfa("(aa)*", "a");
        assert!(equivalent(&up_arrow(&even, "", &b).unwrap(), &even).unwrap());
        assert!(equivalent(&up_arrow(&even, "a", &b).unwrap(), &dfa("a(aa)*", "a")).unwrap());
        let all = dfa("(a|b)*", "ab");
        let shuffle = dfa("(a|b)*a(a|b)*b(a|b)*a(a|b)*", "ab");
        assert!(equivalent(&up_arrow(&all, "aba", &b).unwrap(), &shuffle).unwrap());
    }

    #[test]
    fn cover_examples() {
        let b = Budget::default();
        let c = pgcov_cover(&dfa("a*", "a"), &dfa("(aa)*", "a"), &b).unwrap();
        assert!(c.certified);
        assert_eq!(c.bases(), vec!["", "a"]);
        assert!(c.is_antichain(&dfa("(aa)*", "a"), &b).unwrap());

        let all = dfa("(a|b)*", "ab");
        let c = pgcov_cover(&all, &all, &b).unwrap();
        assert_eq!(c.bases(), vec![""]);
        let c = pgcov_cover(&dfa("(ab)*", "ab"), &all, &b).unwrap();
        assert_eq!(c.bases(), vec![""]);
        assert!(c.certified);
    }

    #[test]
    fn cover_preconditions() {
        let b = Budget::default();
        let h = dfa("a*", "a");
        assert!(matches!(pgcov_cover(&h, &dfa("a(aa)*", "a"), &b), Err(Error::Precondition(_))));
        assert!(matches!(pgcov_cover(&h, &dfa("a*b", "ab"), &b), Err(Error::AlphabetMismatch { .. })));
        assert!(matches!(pgcov_cover(&h, &dfa("a", "a"), &b), Err(Error::Precondition(_))));
    }

    #[test]
    fn cover_stops_at_base_budget() {
        let tight = Budget {
            max_cover_bases: 1,
            ..Budget::default()
        };
        let c = pgcov_cover(&dfa("a*", "a"), &dfa("(aaa)*", "a"), &tight).unwrap();
        assert!(!c.certified);
        assert_eq!(c.entries.len(), 1);
    }

    #[test]
    fn decomposition_examples() {
        let m = morphism("(a|b)*a(a|b)*", "ab");
        let d = guarded_decomposition(&m, "aaa").unwrap();
        assert_eq!(d.blocks, vec!["aaa"]);

        let m = morphism("a*", "a");
        assert_eq!(m.size(), 1);
        let d = guarded_decomposition(&m, "aa").unwrap();
        assert_eq!(d.blocks, vec!["a", "a"]);
        assert_eq!(d.links, vec![m.identity()]);
        assert!(d.verify(&m, "aa"));
        assert!(matches!(guarded_decomposition(&m, ""), Err(Error::EmptyWord)));
    }

    #[test]
    fn long_words_decompose() {
        let m = morphism("(ab)*", "ab");
        let w = "ab".repeat(60) + "ba";
        let d = guarded_decomposition(&m, &w).unwrap();
        assert!(d.blocks.len() > 1);
        assert!(d.verify(&m, &w));
        assert_eq!(d, guarded_decomposition(&m, &w).unwrap());
    }
}
