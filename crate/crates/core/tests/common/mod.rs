//! Brute-force oracles written straight from the definitions. Nothing here
//! calls into the library's monoid, order, pair or equation code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use hierarchy_one::{Dfa, SyntacticMorphism};
use serde_json::Value;

/// A finite monoid with a letter morphism and an accepting set.
#[derive(Clone, Debug)]
pub struct Brute {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    pub letters: Vec<usize>,
    pub accepting: Vec<bool>,
    pub identity: usize,
}

impl Brute {
    /// Transition monoid of a (minimal) DFA by BFS over state maps.
    pub fn from_dfa(d: &Dfa) -> Self {
        let states = d.state_count();
        let k = d.alphabet().len();
        let id: Vec<usize> = (0..states).collect();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id.clone(), 0)]);
        let mut maps = vec![id];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for a in 0..k {
                let next: Vec<usize> = maps[x].iter().map(|&q| d.step(q, a)).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), maps.len());
                    queue.push_back(maps.len());
                    maps.push(next);
                }
            }
        }
        let n = maps.len();
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| index[&maps[x].iter().map(|&q| maps[y][q]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let letters = (0..k)
            .map(|a| index[&(0..states).map(|q| d.step(q, a)).collect::<Vec<_>>()])
            .collect();
        let accepting = maps.iter().map(|f| d.is_final(f[d.initial()])).collect();
        Brute {
            n,
            table,
            letters,
            accepting,
            identity: 0,
        }
    }

    /// From a fixture entry `{"table", "letters", "accepting"}`; element 0 is the identity.
    pub fn from_fixture(v: &Value) -> Self {
        let table: Vec<Vec<usize>> = serde_json::from_value(v["table"].clone()).unwrap();
        let letters: Vec<usize> = serde_json::from_value(v["letters"].clone()).unwrap();
        let acc: Vec<usize> = serde_json::from_value(v["accepting"].clone()).unwrap();
        let n = table.len();
        Brute {
            n,
            accepting: (0..n).map(|x| acc.contains(&x)).collect(),
            table,
            letters,
            identity: 0,
        }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn prod(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    pub fn evaluate(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &a| self.mul(acc, self.letters[a]))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn omega(&self, x: usize) -> usize {
        let mut p = x;
        for _ in 0..=self.n {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
        panic!("no idempotent power");
    }

    /// `S = α(A⁺)`: closure of the letter images under products.
    pub fn s_image(&self) -> Vec<usize> {
        let mut set: BTreeSet<usize> = self.letters.iter().copied().collect();
        loop {
            let more: Vec<usize> = set
                .iter()
                .flat_map(|&x| self.letters.iter().map(move |&a| (x, a)))
                .map(|(x, a)| self.mul(x, a))
                .filter(|y| !set.contains(y))
                .collect();
            if more.is_empty() {
                return set.into_iter().collect();
            }
            set.extend(more);
        }
    }

    pub fn idempotents_s(&self) -> Vec<usize> {
        self.s_image().into_iter().filter(|&x| self.is_idempotent(x)).collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// Syntactic order by contexts: `xsy ∈ F ⇒ xty ∈ F` for all `x, y`.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| !self.accepting[self.prod(&[x, s, y])] || self.accepting[self.prod(&[x, t, y])]))
    }

    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|s| (0..self.n).map(move |t| (s, t))).collect()
    }

    pub fn polc(&self, pairs: &[(usize, usize)]) -> bool {
        pairs
            .iter()
            .all(|&(s, t)| self.leq(self.mul(self.omega(s), s), self.prod(&[self.omega(s), t, self.omega(s)])))
    }

    pub fn polg(&self, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().filter(|p| p.0 == self.identity).all(|&(_, s)| self.leq(self.identity, s))
    }

    pub fn polgp(&self, pairs: &[(usize, usize)]) -> bool {
        let es = self.idempotents_s();
        pairs
            .iter()
            .filter(|p| p.0 == self.identity)
            .all(|&(_, s)| es.iter().all(|&e| self.leq(e, self.prod(&[e, s, e]))))
    }

    pub fn gone(&self, pairs: &[(usize, usize)]) -> bool {
        pairs.iter().all(|&(q, s)| {
            (0..self.n).all(|r| {
                (0..self.n).all(|t| {
                    let x = self.omega(self.mul(q, r));
                    let y = self.mul(s, t);
                    self.prod(&[x, self.omega(y), y]) == self.prod(&[x, q, t, self.omega(y)])
                })
            })
        })
    }

    pub fn wgone(&self, pairs: &[(usize, usize)]) -> bool {
        let es = self.idempotents_s();
        pairs.iter().all(|&(q, s)| {
            es.iter().all(|&e| {
                es.iter().all(|&f| {
                    (0..self.n).all(|r| {
                        (0..self.n).all(|t| {
                            let x = self.omega(self.prod(&[e, q, f, r, e]));
                            let y = self.prod(&[e, s, f, t, e]);
                            self.prod(&[x, self.omega(y), y]) == self.prod(&[x, q, f, t, self.omega(y)])
                        })
                    })
                })
            })
        })
    }

    pub fn simon(&self) -> bool {
        (0..self.n).all(|s| {
            (0..self.n).all(|t| {
                let x = self.omega(self.mul(s, t));
                self.mul(x, s) == x && x == self.mul(t, x)
            })
        })
    }

    pub fn knast(&self) -> bool {
        let s_img = self.s_image();
        let es = self.idempotents_s();
        for &e in &es {
            for &f in &es {
                for &q in &s_img {
                    for &r in &s_img {
                        for &s in &s_img {
                            for &t in &s_img {
                                let x = self.omega(self.prod(&[e, q, f, r, e]));
                                let y = self.omega(self.prod(&[e, s, f, t, e]));
                                if self.mul(x, y) != self.prod(&[x, q, f, t, y]) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn grbpol(&self) -> bool {
        let es = self.idempotents();
        es.iter()
            .all(|&e| es.iter().all(|&f| self.omega(self.mul(e, f)) == self.omega(self.mul(f, e))))
    }

    /// Pairs `(α(u), α(v))` with `|u| ≡ |v| (mod m)`, by saturating
    /// `(residue, element)` configurations.
    pub fn length_mod_pairs(&self, m: usize) -> BTreeSet<(usize, usize)> {
        let mut seen = vec![vec![false; self.n]; m];
        seen[0][self.identity] = true;
        let mut queue = VecDeque::from([(0, self.identity)]);
        while let Some((g, x)) = queue.pop_front() {
            for &a in &self.letters {
                let next = ((g + 1) % m, self.mul(x, a));
                if !std::mem::replace(&mut seen[next.0][next.1], true) {
                    queue.push_back(next);
                }
            }
        }
        let mut out = BTreeSet::new();
        for row in &seen {
            for s in (0..self.n).filter(|&s| row[s]) {
                for t in (0..self.n).filter(|&t| row[t]) {
                    out.insert((s, t));
                }
            }
        }
        out
    }

    /// Pairs with Parikh vectors equal modulo `q`, by saturating
    /// `(vector, element)` configurations.
    pub fn parikh_mod_pairs(&self, q: usize) -> BTreeSet<(usize, usize)> {
        let k = self.letters.len();
        let mut seen: HashMap<Vec<usize>, BTreeSet<usize>> = HashMap::new();
        let start = (vec![0; k], self.identity);
        seen.entry(start.0.clone()).or_default().insert(start.1);
        let mut queue = VecDeque::from([start]);
        while let Some((v, x)) = queue.pop_front() {
            for (a, &img) in self.letters.iter().enumerate() {
                let mut w = v.clone();
                w[a] = (w[a] + 1) % q;
                let y = self.mul(x, img);
                if seen.entry(w.clone()).or_default().insert(y) {
                    queue.push_back((w, y));
                }
            }
        }
        let mut out = BTreeSet::new();
        for set in seen.values() {
            for &s in set {
                for &t in set {
                    out.insert((s, t));
                }
            }
        }
        out
    }
}

/// Element map from the library's numbering to the oracle's, through the
/// library's witness words. Panics unless it is an isomorphism of monoids
/// respecting letters and accepting sets.
pub fn isomorphism(m: &SyntacticMorphism, b: &Brute) -> Vec<usize> {
    assert_eq!(m.size(), b.n, "monoid sizes differ");
    let map: Vec<usize> = m
        .elements()
        .map(|x| b.evaluate(&m.alphabet().encode(&m.witness(x)).unwrap()))
        .collect();
    let image: BTreeSet<usize> = map.iter().copied().collect();
    assert_eq!(image.len(), b.n, "witness map is not a bijection");
    for x in m.elements() {
        assert_eq!(m.is_accepting(x), b.accepting[map[x]]);
        for y in m.elements() {
            assert_eq!(map[m.mul(x, y)], b.mul(map[x], map[y]));
        }
    }
    for a in 0..m.alphabet().len() {
        assert_eq!(map[m.letter_image(a)], b.letters[a]);
    }
    map
}

pub fn fixture() -> Value {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/golden.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}
