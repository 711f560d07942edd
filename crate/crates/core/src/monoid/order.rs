use super::{Element, SyntacticMorphism};

/// A preorder on monoid elements stored as a bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderRelation {
    size: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl OrderRelation {
    /// `s ≤ t` iff `predicate(s, t)`.
    pub fn from_predicate(size: usize, mut predicate: impl FnMut(Element, Element) -> bool) -> Self {
        let mut rel = OrderRelation::empty(size);
        for s in 0..size {
            for t in 0..size {
                if predicate(s, t) {
                    rel.set(s, t, true);
                }
            }
        }
        rel
    }

    /// Equality, i.e. the monoid viewed as unordered.
    pub fn equality(size: usize) -> Self {
        OrderRelation::from_predicate(size, |s, t| s == t)
    }

    fn empty(size: usize) -> Self {
        let words_per_row = size.div_ceil(64);
        OrderRelation {
            size,
            words_per_row,
            bits: vec![0; size * words_per_row],
        }
    }

    fn set(&mut self, s: Element, t: Element, value: bool) {
        let word = &mut self.bits[s * self.words_per_row + t / 64];
        if value {
            *word |= 1 << (t % 64);
        } else {
            *word &= !(1 << (t % 64));
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, s: Element, t: Element) -> bool {
        self.bits[s * self.words_per_row + t / 64] >> (t % 64) & 1 == 1
    }

    /// Rows as bitstrings: character `t` of row `s` is `1` iff `s ≤ t`.
    pub fn rows(&self) -> Vec<String> {
        (0..self.size)
            .map(|s| (0..self.size).map(|t| if self.leq(s, t) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|s| self.leq(s, s))
    }

    fn row(&self, s: Element) -> &[u64] {
        &self.bits[s * self.words_per_row..(s + 1) * self.words_per_row]
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size).all(|s| {
            (0..self.size)
                .filter(|&t| self.leq(s, t))
                .all(|t| self.row(t).iter().zip(self.row(s)).all(|(&above_t, &above_s)| above_t & !above_s == 0))
        })
    }

    /// `s ≤ t ⇒ as ≤ at ∧ sa ≤ ta` for every letter `a`. For a transitive
    /// relation this is full compatibility (`s ≤ t ∧ s' ≤ t' ⇒ ss' ≤ tt'`),
    /// since the letters generate `M`.
    pub fn is_compatible(&self, m: &SyntacticMorphism) -> bool {
        let k = m.alphabet().len();
        (0..self.size).all(|s| {
            (0..self.size).filter(|&t| self.leq(s, t)).all(|t| {
                (0..k).all(|a| {
                    let x = m.letter_image(a);
                    self.leq(m.mul(x, s), m.mul(x, t)) && self.leq(m.step(s, a), m.step(t, a))
                })
            })
        })
    }

    /// Whether the accepting set of `m` is an upper set.
    pub fn accepting_is_upper_set(&self, m: &SyntacticMorphism) -> bool {
        m.accepting()
            .all(|s| (0..self.size).all(|t| !self.leq(s, t) || m.is_accepting(t)))
    }
}

/// The syntactic order: `s ≤ t` iff every context `(x, y)` with
/// `x·s·y ∈ F` also has `x·t·y ∈ F`. The accepting set is an upper set.
///
/// Computed as the complement of the least relation containing
/// `F × (M \ F)` and closed under "`(s,t)` is bad if `(a·s, a·t)` or
/// `(s·a, t·a)` is bad" for letters `a`, by backward propagation over
/// letter preimages.
pub fn syntactic_preorder(m: &SyntacticMorphism) -> OrderRelation {
    let n = m.size();
    let k = m.alphabet().len();
    let mut right_pre = vec![vec![Vec::new(); n]; k];
    let mut left_pre = vec![vec![Vec::new(); n]; k];
    for x in 0..n {
        for a in 0..k {
            right_pre[a][m.step(x, a)].push(x as u32);
            left_pre[a][m.mul(m.letter_image(a), x)].push(x as u32);
        }
    }

    let mut bad = OrderRelation::empty(n);
    let mut queue: Vec<(u32, u32)> = Vec::new();
    for s in m.accepting() {
        for t in (0..n).filter(|&t| !m.is_accepting(t)) {
            bad.set(s, t, true);
            queue.push((s as u32, t as u32));
        }
    }
    while let Some((s, t)) = queue.pop() {
        for pre in [&right_pre, &left_pre] {
            for a in 0..k {
                for &x in &pre[a][s as usize] {
                    for &y in &pre[a][t as usize] {
                        if !bad.leq(x as usize, y as usize) {
                            bad.set(x as usize, y as usize, true);
                            queue.push((x, y));
                        }
                    }
                }
            }
        }
    }

    let mut order = bad;
    order.bits.iter_mut().for_each(|w| *w = !*w);
    let tail = n % 64;
    if tail != 0 {
        let mask = (1u64 << tail) - 1;
        for s in 0..n {
            order.bits[s * order.words_per_row + order.words_per_row - 1] &= mask;
        }
    }
    order
}
