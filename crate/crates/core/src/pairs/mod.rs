//! Pair relations `(s, t) ∈ M²` such that `α⁻¹(s)` cannot be separated from
//! `α⁻¹(t)` by a language of the basis.
//!
//! The relation is reflexive and symmetric for every supported basis but not
//! transitive in general, so nothing here closes it under composition.

mod group;
mod modular;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::monoid::{Element, SyntacticMorphism};

pub use group::{
    group_morphism_pairs, FiniteGroup, GroupFile, GroupMorphism, LengthModulo, LetterAction, ParikhModulo,
    TrivialGroup,
};
pub use modular::{amt_pairs, mod_pairs};

/// Which basis a pair relation was computed for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairBasis {
    #[serde(rename = "ST")]
    St,
    #[serde(rename = "MOD")]
    Mod,
    #[serde(rename = "AMT")]
    Amt,
    #[serde(rename = "CUSTOM")]
    Custom(String),
    #[serde(rename = "EXPLICIT")]
    Explicit,
}

impl fmt::Display for PairBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairBasis::St => write!(f, "ST"),
            PairBasis::Mod => write!(f, "MOD"),
            PairBasis::Amt => write!(f, "AMT"),
            PairBasis::Custom(id) => write!(f, "CUSTOM({id})"),
            PairBasis::Explicit => write!(f, "EXPLICIT"),
        }
    }
}

/// Witness words `(u, v)` with `α(u) = s` and `α(v) = t`.
pub type WitnessPair = (String, String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRelation {
    basis: PairBasis,
    size: usize,
    /// Row-major `size × size` bit matrix.
    bits: Vec<u64>,
    count: usize,
    /// Witness words, referenced by index from `witnesses`.
    words: Vec<String>,
    witnesses: HashMap<(u32, u32), (u32, u32)>,
    certified: bool,
}

impl PairRelation {
    pub(crate) fn new(basis: PairBasis, size: usize) -> Self {
        PairRelation {
            basis,
            size,
            bits: vec![0; (size * size).div_ceil(64)],
            count: 0,
            words: Vec::new(),
            witnesses: HashMap::new(),
            certified: true,
        }
    }

    /// A relation given by an explicit list of pairs, witnessed from the
    /// morphism's element witnesses.
    pub fn explicit(m: &SyntacticMorphism, pairs: impl IntoIterator<Item = (Element, Element)>) -> Self {
        let mut rel = PairRelation::new(PairBasis::Explicit, m.size());
        for (s, t) in pairs {
            rel.insert(s, t, Some((m.witness(s), m.witness(t))));
        }
        rel
    }

    /// Keeps the first witness recorded for a pair.
    pub(crate) fn insert(&mut self, s: Element, t: Element, witness: Option<WitnessPair>) {
        if !self.contains(s, t) {
            let refs = witness.map(|(u, v)| (self.add_word(u), self.add_word(v)));
            self.insert_ref(s, t, refs);
        }
    }

    /// Stores a witness word for later [`insert_ref`](Self::insert_ref) calls.
    pub(crate) fn add_word(&mut self, word: String) -> u32 {
        self.words.push(word);
        (self.words.len() - 1) as u32
    }

    /// Like `insert`, with witnesses given as indices from `add_word`.
    pub(crate) fn insert_ref(&mut self, s: Element, t: Element, witness: Option<(u32, u32)>) {
        let bit = s * self.size + t;
        if self.bits[bit / 64] >> (bit % 64) & 1 == 0 {
            self.bits[bit / 64] |= 1 << (bit % 64);
            self.count += 1;
            if let Some(w) = witness {
                self.witnesses.insert((s as u32, t as u32), w);
            }
        }
    }

    pub(crate) fn set_certified(&mut self, certified: bool) {
        self.certified = certified;
    }

    pub fn basis(&self) -> &PairBasis {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// False when the relation is only an over-approximation whose stability
    /// could not be certified.
    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn contains(&self, s: Element, t: Element) -> bool {
        let bit = s * self.size + t;
        s < self.size && t < self.size && self.bits[bit / 64] >> (bit % 64) & 1 == 1
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        let n = self.size;
        self.bits.iter().enumerate().flat_map(move |(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let bit = i * 64 + rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    (bit / n, bit % n)
                })
            })
        })
    }

    pub fn witness(&self, s: Element, t: Element) -> Option<(&str, &str)> {
        let &(u, v) = self.witnesses.get(&(s as u32, t as u32))?;
        Some((&self.words[u as usize], &self.words[v as usize]))
    }

    /// Every `t` such that `(s, t)` is in the relation.
    pub fn partners(&self, s: Element) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).filter(move |&t| self.contains(s, t))
    }

    pub fn is_subset_of(&self, other: &PairRelation) -> bool {
        self.iter().all(|(s, t)| other.contains(s, t))
    }

    /// Same pairs, ignoring basis tags, witnesses and certification.
    pub fn same_pairs(&self, other: &PairRelation) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|s| self.contains(s, s))
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(s, t)| self.contains(t, s))
    }

    /// Every pair carries a witness and the witnesses evaluate to their pair.
    pub fn witnesses_valid(&self, m: &SyntacticMorphism) -> bool {
        self.iter().all(|(s, t)| match self.witness(s, t) {
            Some((u, v)) => m.evaluate(u).ok() == Some(s) && m.evaluate(v).ok() == Some(t),
            None => false,
        })
    }

    pub fn dump(&self) -> PairDump {
        PairDump {
            basis: self.basis.clone(),
            certified: self.certified,
            pairs: self
                .iter()
                .map(|(s, t)| {
                    let (u, v) = self
                        .witness(s, t)
                        .map_or((None, None), |(u, v)| (Some(u.to_string()), Some(v.to_string())));
                    (s, t, u, v)
                })
                .collect(),
        }
    }
}

/// JSON dump: basis tag and `[s, t, u_witness, v_witness]` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDump {
    pub basis: PairBasis,
    pub certified: bool,
    pub pairs: Vec<(Element, Element, Option<String>, Option<String>)>,
}

/// ST-pairs: since `ST = {∅, A*}` separates nothing, every pair is an ST-pair.
pub fn st_pairs(m: &SyntacticMorphism) -> PairRelation {
    let mut rel = PairRelation::new(PairBasis::St, m.size());
    let words: Vec<u32> = m.elements().map(|x| rel.add_word(m.witness(x))).collect();
    for s in m.elements() {
        for t in m.elements() {
            rel.insert_ref(s, t, Some((words[s], words[t])));
        }
    }
    rel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::tests::morphism;

    #[test]
    fn st_pairs_are_everything() {
        assert_eq!(st_pairs(&morphism("(a|b)*", "ab")).len(), 1);
        assert_eq!(st_pairs(&morphism("(a|b)*a(a|b)*", "ab")).len(), 4);
        let m = morphism("(ab)*", "ab");
        let rel = st_pairs(&m);
        assert_eq!(rel.len(), 36);
        assert!(rel.is_reflexive() && rel.is_symmetric() && rel.witnesses_valid(&m));
    }

    #[test]
    fn partners_lists_the_row() {
        let m = morphism("(aa)*", "a");
        let rel = PairRelation::explicit(&m, [(0, 0), (0, 1), (1, 1)]);
        assert_eq!(rel.partners(0).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(rel.partners(1).collect::<Vec<_>>(), vec![1]);
        assert!(!rel.is_symmetric());
    }
}
