//! Syntactic monoids computed as transition monoids of minimal complete DFAs.

mod order;
mod stable;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lang::{minimize, Dfa};

pub use order::{syntactic_preorder, OrderRelation};
pub use stable::{stable_sequence, StableInfo};

/// Index of a monoid element. Elements are numbered in the BFS order in
/// which their shortest witness words are discovered; the identity is 0.
pub type Element = usize;

/// The syntactic morphism `α: A* → M` of a regular language.
///
/// `M` is stored as a dense multiplication table together with the image of
/// every letter, the accepting set `F` (so that `L = α⁻¹(F)`), the image
/// `S = α(A⁺)` of nonempty words and its idempotents `E(S)`.
#[derive(Clone, Debug)]
pub struct SyntacticMorphism {
    alphabet: Alphabet,
    size: usize,
    table: Vec<u32>,
    /// `right[x * k + a] = x · α(a)`
    right: Vec<u32>,
    letter_image: Vec<Element>,
    accepting: Vec<bool>,
    parent: Vec<Option<(Element, usize)>>,
    nonempty: Vec<bool>,
    idempotents_s: Vec<Element>,
    omega: Vec<Element>,
    transformations: Vec<Vec<u32>>,
}

/// Transition monoid of `d`. When `d` is minimal and complete this is the
/// syntactic monoid of `L(d)`.
///
/// Elements are the state transformations induced by words, generated
/// breadth-first from the identity with letters in alphabet order, so every
/// witness word is shortest and shortlex-least among shortest.
pub fn transition_monoid(d: &Dfa, budget: &Budget) -> Result<SyntacticMorphism> {
    let n = d.state_count();
    let k = d.alphabet().len();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut index: HashMap<Vec<u32>, Element> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut transformations = vec![identity];
    let mut parent = vec![None];
    let mut right: Vec<u32> = Vec::new();
    let mut x = 0;
    while x < transformations.len() {
        for a in 0..k {
            let next: Vec<u32> = transformations[x]
                .iter()
                .map(|&q| d.step(q as usize, a) as u32)
                .collect();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = transformations.len();
                    if id >= budget.max_elements {
                        return Err(Error::Budget {
                            what: "monoid element",
                            limit: budget.max_elements,
                        });
                    }
                    index.insert(next.clone(), id);
                    transformations.push(next);
                    parent.push(Some((x, a)));
                    id
                }
            };
            right.push(id as u32);
        }
        x += 1;
    }

    let size = transformations.len();
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        let row = &mut table[x * size..(x + 1) * size];
        row[0] = x as u32;
        for y in 1..size {
            let (p, a) = parent[y].expect("non-identity elements have a parent");
            row[y] = right[row[p] as usize * k + a];
        }
    }

    let letter_image = (0..k).map(|a| right[a] as Element).collect();
    let accepting = transformations
        .iter()
        .map(|t| d.is_final(t[d.initial()] as usize))
        .collect();
    let mut nonempty = vec![false; size];
    for &y in &right {
        nonempty[y as usize] = true;
    }

    let mut m = SyntacticMorphism {
        alphabet: d.alphabet().clone(),
        size,
        table,
        right,
        letter_image,
        accepting,
        parent,
        nonempty,
        idempotents_s: Vec::new(),
        omega: Vec::new(),
        transformations,
    };
    m.omega = (0..size).map(|x| m.compute_omega(x)).collect();
    m.idempotents_s = (0..size)
        .filter(|&x| m.nonempty[x] && m.is_idempotent(x))
        .collect();
    Ok(m)
}

impl SyntacticMorphism {
    /// Minimizes `d` and returns the syntactic morphism of its language.
    pub fn of_language(d: &Dfa, budget: &Budget) -> Result<Self> {
        transition_monoid(&minimize(d)?, budget)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.table[x * self.size + y] as Element
    }

    /// Product of a sequence of elements (identity for the empty sequence).
    pub fn product(&self, factors: &[Element]) -> Element {
        factors.iter().fold(self.identity(), |acc, &x| self.mul(acc, x))
    }

    pub fn letter_image(&self, letter: usize) -> Element {
        self.letter_image[letter]
    }

    /// `x · α(letter)` without a table lookup on the full row.
    pub fn step(&self, x: Element, letter: usize) -> Element {
        self.right[x * self.alphabet.len() + letter] as Element
    }

    pub fn is_accepting(&self, x: Element) -> bool {
        self.accepting[x]
    }

    pub fn accepting(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements().filter(|&x| self.accepting[x])
    }

    /// Whether `x ∈ S = α(A⁺)`.
    pub fn in_nonempty_image(&self, x: Element) -> bool {
        self.nonempty[x]
    }

    pub fn nonempty_image(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements().filter(|&x| self.nonempty[x])
    }

    /// `E(S)`, the idempotents of `S = α(A⁺)`, in increasing order.
    pub fn idempotents_s(&self) -> &[Element] {
        &self.idempotents_s
    }

    /// `E(M)`, every idempotent of the monoid.
    pub fn idempotents(&self) -> Vec<Element> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    /// `x^ω`, the unique idempotent power of `x`.
    pub fn omega(&self, x: Element) -> Element {
        self.omega[x]
    }

    /// `x^{ω+1} = x^ω · x`.
    pub fn omega_plus(&self, x: Element) -> Element {
        self.mul(self.omega[x], x)
    }

    fn compute_omega(&self, x: Element) -> Element {
        let mut p = x;
        loop {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
    }

    pub fn evaluate_letters(&self, letters: &[usize]) -> Element {
        letters.iter().fold(self.identity(), |x, &a| self.step(x, a))
    }

    /// `α(word)`.
    pub fn evaluate(&self, word: &str) -> Result<Element> {
        Ok(self.evaluate_letters(&self.alphabet.encode(word)?))
    }

    pub fn witness_letters(&self, x: Element) -> Vec<usize> {
        let mut letters = Vec::new();
        let mut cur = x;
        while let Some((p, a)) = self.parent[cur] {
            letters.push(a);
            cur = p;
        }
        letters.reverse();
        letters
    }

    /// Shortest word mapped to `x`.
    pub fn witness(&self, x: Element) -> String {
        self.alphabet.decode(&self.witness_letters(x))
    }

    /// The state transformation of the underlying automaton realizing `x`.
    pub fn transformation(&self, x: Element) -> &[u32] {
        &self.transformations[x]
    }

    /// Whether every element has an inverse.
    pub fn is_group(&self) -> bool {
        self.elements()
            .all(|x| self.elements().any(|y| self.mul(x, y) == 0 && self.mul(y, x) == 0))
    }

    /// Serializable dump of the monoid, with the order when one is given.
    pub fn dump(&self, order: Option<&OrderRelation>) -> MonoidDump {
        MonoidDump {
            alphabet: self.alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            elements: self
                .elements()
                .map(|x| ElementDump {
                    index: x,
                    witness: self.witness(x),
                })
                .collect(),
            identity: self.identity(),
            letter_image: self
                .alphabet
                .symbols()
                .iter()
                .enumerate()
                .map(|(a, c)| (c.to_string(), self.letter_image[a]))
                .collect(),
            table: self
                .elements()
                .map(|x| self.elements().map(|y| self.mul(x, y)).collect())
                .collect(),
            accepting: self.accepting().collect(),
            nonempty_image: self.nonempty_image().collect(),
            idempotents_s: self.idempotents_s.clone(),
            order: order.map(OrderRelation::rows),
        }
    }
}

/// JSON dump of a syntactic morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDump {
    pub alphabet: Vec<String>,
    pub elements: Vec<ElementDump>,
    pub identity: Element,
    pub letter_image: std::collections::BTreeMap<String, Element>,
    pub table: Vec<Vec<Element>>,
    pub accepting: Vec<Element>,
    pub nonempty_image: Vec<Element>,
    pub idempotents_s: Vec<Element>,
    /// Row `s` has a `1` at position `t` iff `s ≤ t`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDump {
    pub index: Element,
    pub witness: String,
}
