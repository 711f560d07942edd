use std::collections::HashMap;

use super::{Element, SyntacticMorphism};

/// The ultimately periodic sequence `T_i = α(Aⁱ)`.
///
/// `sets` lists `T_0 .. T_{threshold + period - 1}`; beyond that
/// `T_{i + period} = T_i` for every `i ≥ threshold`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableInfo {
    pub sets: Vec<Vec<Element>>,
    pub threshold: usize,
    pub period: usize,
}

impl StableInfo {
    /// `T_i` for any length `i`.
    pub fn at(&self, i: usize) -> &[Element] {
        if i < self.sets.len() {
            &self.sets[i]
        } else {
            &self.sets[self.threshold + (i - self.threshold) % self.period]
        }
    }
}

/// Iterates `T_{i+1} = T_i · α(A)` from `T_0 = {1_M}` until the first repeat,
/// which yields the minimal threshold and period.
pub fn stable_sequence(m: &SyntacticMorphism) -> StableInfo {
    let k = m.alphabet().len();
    let mut seen: HashMap<Vec<Element>, usize> = HashMap::new();
    let mut sets: Vec<Vec<Element>> = Vec::new();
    let mut current = vec![m.identity()];
    loop {
        if let Some(&first) = seen.get(&current) {
            return StableInfo {
                threshold: first,
                period: sets.len() - first,
                sets,
            };
        }
        let mut hit = vec![false; m.size()];
        for &x in &current {
            for a in 0..k {
                hit[m.step(x, a)] = true;
            }
        }
        let next = (0..m.size()).filter(|&x| hit[x]).collect();
        seen.insert(current.clone(), sets.len());
        sets.push(std::mem::replace(&mut current, next));
    }
}
