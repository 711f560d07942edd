use crate::budget::Budget;
use crate::error::Error;
use crate::monoid::{stable_sequence, Element, SyntacticMorphism};

use super::group::{group_morphism_pairs, ParikhModulo};
use super::{st_pairs, PairBasis, PairRelation};

/// MOD-pairs from the ultimately periodic sequence `T_i = α(Aⁱ)`.
///
/// `(s, t)` is a pair iff `s ∈ T_i`, `t ∈ T_j` for some `i ≡ j (mod p)` with
/// `i = j` or `max(i, j) ≥ n0`. Once one length is past the threshold it can
/// be pumped by multiples of `p` to match the other modulo any `m`, and
/// lengths below `n0 + 2p` cover every residue class of both phases.
pub fn mod_pairs(m: &SyntacticMorphism) -> PairRelation {
    let stable = stable_sequence(m);
    let (n0, p) = (stable.threshold, stable.period);
    let horizon = n0 + 2 * p;
    let k = m.alphabet().len();
    let n = m.size();

    // layers[i][x] = (predecessor, letter) of a length-i word reaching x
    let mut layers: Vec<Vec<Option<(Element, usize)>>> = vec![vec![None; n]];
    layers[0][m.identity()] = Some((m.identity(), usize::MAX));
    for i in 0..horizon.saturating_sub(1) {
        let mut next = vec![None; n];
        for x in stable.at(i) {
            for a in 0..k {
                next[m.step(*x, a)].get_or_insert((*x, a));
            }
        }
        layers.push(next);
        debug_assert!(layers[i + 1].iter().filter(|e| e.is_some()).count() == stable.at(i + 1).len());
    }
    // words[i][x]: a length-i word reaching x, for x ∈ T_i
    let mut words: Vec<Vec<Option<String>>> = Vec::with_capacity(layers.len());
    for (i, layer) in layers.iter().enumerate() {
        let row = (0..n)
            .map(|x| {
                let (prev, a) = layer[x]?;
                Some(if i == 0 {
                    String::new()
                } else {
                    let mut w = words[i - 1][prev].clone().expect("predecessor has a word");
                    w.push(m.alphabet().symbol(a));
                    w
                })
            })
            .collect();
        words.push(row);
    }

    let mut rel = PairRelation::new(PairBasis::Mod, n);
    let refs: Vec<Vec<Option<u32>>> = words
        .into_iter()
        .map(|row| row.into_iter().map(|w| w.map(|w| rel.add_word(w))).collect())
        .collect();
    for i in 0..horizon {
        for j in 0..horizon {
            if i % p != j % p || (i != j && i.max(j) < n0) {
                continue;
            }
            for &s in stable.at(i) {
                for &t in stable.at(j) {
                    rel.insert_ref(s, t, refs[i][s].zip(refs[j][t]));
                }
            }
        }
    }
    rel
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Period of the cyclic subsemigroup generated by `x`.
fn cycle_length(m: &SyntacticMorphism, x: Element) -> usize {
    let mut seen = vec![usize::MAX; m.size()];
    let mut p = x;
    for i in 0.. {
        if seen[p] != usize::MAX {
            return i - seen[p];
        }
        seen[p] = i;
        p = m.mul(p, x);
    }
    unreachable!()
}

fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&r| (2..r).take_while(|d| d * d <= r).all(|d| r % d != 0)).collect()
}

/// AMT-pairs by modulus escalation over Parikh vectors modulo `q`.
///
/// Starts at `q` = lcm of the cycle lengths of all elements and multiplies by
/// a prime `r ≤ |M|` whenever `R_{q·r}` is strictly smaller than `R_q`. The
/// result is certified once no such prime refines it. If the budget runs out
/// first, the last relation is returned uncertified; it is then still a
/// superset of the true relation since `R_q` only shrinks as `q` grows.
pub fn amt_pairs(m: &SyntacticMorphism, budget: &Budget) -> PairRelation {
    let k = m.alphabet().len();
    let mut q = m.elements().map(|x| cycle_length(m, x)).fold(1, |acc, c| acc / gcd(acc, c) * c);
    let relation_at = |q: usize| -> Result<PairRelation, Error> {
        let beta = ParikhModulo::new(q, k).ok_or(Error::Budget {
            what: "group configuration",
            limit: budget.max_group_states,
        })?;
        group_morphism_pairs(m, &beta, budget)
    };
    let retag = |mut rel: PairRelation, certified: bool| {
        rel.basis = PairBasis::Amt;
        rel.set_certified(certified);
        rel
    };

    let mut current = match relation_at(q) {
        Ok(rel) => rel,
        Err(_) => return retag(st_pairs(m), false),
    };
    let primes = primes_up_to(m.size());
    'escalate: loop {
        for &r in &primes {
            let Some(finer_q) = q.checked_mul(r) else {
                return retag(current, false);
            };
            match relation_at(finer_q) {
                Ok(finer) if finer.len() < current.len() => {
                    q = finer_q;
                    current = finer;
                    continue 'escalate;
                }
                Ok(_) => {}
                Err(_) => return retag(current, false),
            }
        }
        return retag(current, true);
    }
}
