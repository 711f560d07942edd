//! Seeded generators for automata, words and patterns, used by the test
//! corpora and the examples.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::lang::{minimize, Dfa};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A complete DFA with uniform transitions and finals on `states` states.
pub fn random_dfa(rng: &mut impl Rng, states: usize, alphabet: &Alphabet) -> Dfa {
    let rows: Vec<Vec<usize>> = (0..states)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..states)).collect())
        .collect();
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_rows(alphabet.clone(), 0, &finals, &rows).expect("well-formed by construction")
}

/// A uniformly drawn DFA that is already minimal, with a state count drawn
/// uniformly from `1..=max_states`. Draws are rejected until one is minimal,
/// so small state counts do not dominate through collapse.
pub fn random_minimal_dfa(rng: &mut impl Rng, max_states: usize, alphabet: &Alphabet) -> Dfa {
    let states = rng.gen_range(1..=max_states);
    loop {
        let d = random_dfa(rng, states, alphabet);
        let min = minimize(&d).expect("complete DFA minimizes");
        if min.state_count() == states {
            return min;
        }
    }
}

/// A permutation automaton whose language contains `ε`: each letter acts as
/// a uniform random permutation and the initial state is final.
pub fn random_permutation_dfa(rng: &mut impl Rng, states: usize, alphabet: &Alphabet) -> Dfa {
    let rows_by_letter: Vec<Vec<usize>> = (0..alphabet.len())
        .map(|_| {
            let mut p: Vec<usize> = (0..states).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let rows: Vec<Vec<usize>> = (0..states)
        .map(|q| rows_by_letter.iter().map(|p| p[q]).collect())
        .collect();
    let finals: Vec<usize> = (0..states).filter(|&q| q == 0 || rng.gen_bool(0.5)).collect();
    Dfa::from_rows(alphabet.clone(), 0, &finals, &rows).expect("well-formed by construction")
}

/// A uniform word of length `0..=max_len`.
pub fn random_word(rng: &mut impl Rng, alphabet: &Alphabet, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *alphabet.symbols().choose(rng).expect("nonempty alphabet")).collect()
}

/// A random pattern of bounded depth over the alphabet's symbols.
pub fn random_pattern(rng: &mut impl Rng, alphabet: &Alphabet, depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => "_".into(),
            _ => alphabet.symbols().choose(rng).expect("nonempty alphabet").to_string(),
        };
    }
    match rng.gen_range(0..4) {
        0 => format!("{}{}", random_pattern(rng, alphabet, depth - 1), random_pattern(rng, alphabet, depth - 1)),
        1 => format!("({}|{})", random_pattern(rng, alphabet, depth - 1), random_pattern(rng, alphabet, depth - 1)),
        2 => format!("({})*", random_pattern(rng, alphabet, depth - 1)),
        _ => format!("({})+", random_pattern(rng, alphabet, depth - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::is_permutation_automaton;

    #[test]
    fn generators_are_seeded() {
        let alphabet = Alphabet::parse("ab").unwrap();
        let x = random_dfa(&mut rng(7), 4, &alphabet);
        let y = random_dfa(&mut rng(7), 4, &alphabet);
        assert_eq!(x, y);
        assert_eq!(random_word(&mut rng(3), &alphabet, 20), random_word(&mut rng(3), &alphabet, 20));
    }

    #[test]
    fn permutation_dfas_contain_epsilon() {
        let alphabet = Alphabet::parse("ab").unwrap();
        let mut r = rng(11);
        for _ in 0..20 {
            let d = random_permutation_dfa(&mut r, 3, &alphabet);
            assert!(is_permutation_automaton(&d));
            assert!(d.accepts("").unwrap());
        }
    }
}
