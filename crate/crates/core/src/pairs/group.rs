use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::monoid::{Element, SyntacticMorphism};

use super::{PairBasis, PairRelation};

/// A morphism `β: A* → G` into a finite group, seen through its right
/// action `g ↦ g · β(a)` on group elements numbered `0..order`.
pub trait LetterAction {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn act(&self, g: usize, letter: usize) -> usize;
    fn label(&self) -> String;
}

/// The trivial group: `β(u) = β(v)` for all words.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialGroup;

impl LetterAction for TrivialGroup {
    fn order(&self) -> usize {
        1
    }
    fn identity(&self) -> usize {
        0
    }
    fn act(&self, _: usize, _: usize) -> usize {
        0
    }
    fn label(&self) -> String {
        "trivial".into()
    }
}

/// Word length modulo `m`, into `Z/mZ`.
#[derive(Clone, Copy, Debug)]
pub struct LengthModulo(pub usize);

impl LetterAction for LengthModulo {
    fn order(&self) -> usize {
        self.0
    }
    fn identity(&self) -> usize {
        0
    }
    fn act(&self, g: usize, _: usize) -> usize {
        (g + 1) % self.0
    }
    fn label(&self) -> String {
        format!("length mod {}", self.0)
    }
}

/// Parikh vector modulo `q`, into `(Z/qZ)^A`, encoded in base `q` with the
/// count of letter `a` as digit `a`.
#[derive(Clone, Copy, Debug)]
pub struct ParikhModulo {
    modulus: usize,
    letters: usize,
    order: usize,
}

impl ParikhModulo {
    /// `None` when `q^letters` overflows.
    pub fn new(modulus: usize, letters: usize) -> Option<Self> {
        let order = (0..letters).try_fold(1usize, |acc, _| acc.checked_mul(modulus))?;
        Some(ParikhModulo {
            modulus,
            letters,
            order,
        })
    }
}

impl LetterAction for ParikhModulo {
    fn order(&self) -> usize {
        self.order
    }
    fn identity(&self) -> usize {
        0
    }
    fn act(&self, g: usize, letter: usize) -> usize {
        let place = self.modulus.pow(letter as u32);
        if (g / place) % self.modulus == self.modulus - 1 {
            g - (self.modulus - 1) * place
        } else {
            g + place
        }
    }
    fn label(&self) -> String {
        format!("Parikh vector mod {} over {} letters", self.modulus, self.letters)
    }
}

/// A finite group given by its multiplication table, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("group has no elements".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} out of range 0..{n}")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        if let Some(x) = (0..n).find(|&x| !(0..n).any(|y| table[x][y] == identity && table[y][x] == identity)) {
            return Err(Error::InvalidGroup(format!("element {x} has no inverse")));
        }
        Ok(FiniteGroup { table, identity })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }
}

/// A letter-to-group-element assignment; extends uniquely to a morphism.
#[derive(Clone, Debug)]
pub struct GroupMorphism {
    group: FiniteGroup,
    letter_image: Vec<usize>,
    label: String,
}

impl GroupMorphism {
    pub fn new(group: FiniteGroup, alphabet: &Alphabet, images: &BTreeMap<String, usize>, label: impl Into<String>) -> Result<Self> {
        let mut letter_image = Vec::with_capacity(alphabet.len());
        for &c in alphabet.symbols() {
            let g = *images
                .get(&c.to_string())
                .ok_or_else(|| Error::InvalidGroup(format!("no image for letter '{c}'")))?;
            if g >= group.order() {
                return Err(Error::InvalidGroup(format!("image {g} of '{c}' is not a group element")));
            }
            letter_image.push(g);
        }
        if let Some(extra) = images.keys().find(|k| {
            let mut cs = k.chars();
            !matches!((cs.next(), cs.next()), (Some(c), None) if alphabet.index_of(c).is_some())
        }) {
            return Err(Error::InvalidGroup(format!("image given for unknown letter \"{extra}\"")));
        }
        Ok(GroupMorphism {
            group,
            letter_image,
            label: label.into(),
        })
    }

    /// Reads `{"elements":n,"table":[[...]],"letter_image":{"a":i,...}}`.
    pub fn from_json(text: &str, alphabet: &Alphabet, label: impl Into<String>) -> Result<Self> {
        let file: GroupFile = serde_json::from_str(text)?;
        if file.elements != file.table.len() {
            return Err(Error::InvalidGroup(format!(
                "declared {} elements but the table has {} rows",
                file.elements,
                file.table.len()
            )));
        }
        GroupMorphism::new(FiniteGroup::new(file.table)?, alphabet, &file.letter_image, label)
    }

    pub fn load(path: impl AsRef<Path>, alphabet: &Alphabet) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        GroupMorphism::from_json(&text, alphabet, path.display().to_string())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
}

impl LetterAction for GroupMorphism {
    fn order(&self) -> usize {
        self.group.order()
    }
    fn identity(&self) -> usize {
        self.group.identity()
    }
    fn act(&self, g: usize, letter: usize) -> usize {
        self.group.mul(g, self.letter_image[letter])
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Custom group input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub elements: usize,
    pub table: Vec<Vec<usize>>,
    pub letter_image: BTreeMap<String, usize>,
}

/// `{(α(u), α(v)) : β(u) = β(v)}`: the pairs of `α` that no language
/// recognized by `β` separates.
///
/// Both words evolve independently, so the reachable quadruples
/// `((β(u), α(u)), (β(v), α(v)))` are exactly `R × R` where `R` is the set
/// of configurations `(β(w), α(w))` reachable from `(1_G, 1_M)`. Each pair
/// keeps the witnesses of least total length (smallest group element on ties).
pub fn group_morphism_pairs<G: LetterAction + ?Sized>(
    m: &SyntacticMorphism,
    beta: &G,
    budget: &Budget,
) -> Result<PairRelation> {
    let n = m.size();
    let k = m.alphabet().len();
    let states = beta
        .order()
        .checked_mul(n)
        .filter(|&s| s <= budget.max_group_states)
        .ok_or(Error::Budget {
            what: "group configuration",
            limit: budget.max_group_states,
        })?;
    const UNSEEN: u32 = u32::MAX;
    let mut prev = vec![UNSEEN; states];
    let mut via = vec![0u16; states];
    let mut depth = vec![0u32; states];
    let start = beta.identity() * n + m.identity();
    prev[start] = start as u32;
    let mut queue = VecDeque::from([start]);
    let mut by_group: HashMap<usize, Vec<usize>> = HashMap::new();
    while let Some(c) = queue.pop_front() {
        let (g, x) = (c / n, c % n);
        by_group.entry(g).or_default().push(c);
        for a in 0..k {
            let next = beta.act(g, a) * n + m.step(x, a);
            if prev[next] == UNSEEN {
                prev[next] = c as u32;
                via[next] = a as u16;
                depth[next] = depth[c] + 1;
                queue.push_back(next);
            }
        }
    }

    let mut best: BTreeMap<(Element, Element), (u32, usize, usize)> = BTreeMap::new();
    let mut groups: Vec<_> = by_group.into_iter().collect();
    groups.sort_unstable();
    for (_, configs) in &groups {
        for &cu in configs {
            for &cv in configs {
                let key = (cu % n, cv % n);
                let cost = depth[cu] + depth[cv];
                best.entry(key)
                    .and_modify(|b| {
                        if cost < b.0 {
                            *b = (cost, cu, cv)
                        }
                    })
                    .or_insert((cost, cu, cv));
            }
        }
    }

    let word = |mut c: usize| {
        let mut letters = Vec::new();
        while prev[c] as usize != c {
            letters.push(via[c] as usize);
            c = prev[c] as usize;
        }
        letters.reverse();
        m.alphabet().decode(&letters)
    };
    let mut rel = PairRelation::new(PairBasis::Custom(beta.label()), n);
    for ((s, t), (_, cu, cv)) in best {
        rel.insert(s, t, Some((word(cu), word(cv))));
    }
    Ok(rel)
}
