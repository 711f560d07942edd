//! Pairs and membership for a basis given by a finite group morphism.
//!
//! The group is S₃, with `a` a transposition and `b` a 3-cycle.
//!
//! cargo run --example custom_group

use std::collections::BTreeMap;

use hierarchy_one::membership::decide_morphism;
use hierarchy_one::pairs::{group_morphism_pairs, FiniteGroup, GroupMorphism};
use hierarchy_one::{compile_dfa, parse_pattern, transition_monoid, Alphabet, Basis, Budget, Level};

/// S₃ as permutations of {0, 1, 2}, composed left to right.
fn s3() -> (Vec<Vec<usize>>, usize, usize) {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [1, 2, 0], [0, 2, 1], [2, 1, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|p| perms.iter().map(|q| index([q[p[0]], q[p[1]], q[p[2]]])).collect())
        .collect();
    (table, index([1, 0, 2]), index([1, 2, 0]))
}

fn main() -> hierarchy_one::Result<()> {
    let budget = Budget::default();
    let alphabet = Alphabet::parse("ab")?;
    let (table, transposition, cycle) = s3();
    let images = BTreeMap::from([("a".to_string(), transposition), ("b".to_string(), cycle)]);
    let beta = GroupMorphism::new(FiniteGroup::new(table)?, &alphabet, &images, "S3")?;

    for text in ["(ab)*", "(a|b)*a(a|b)*", "((a|b)(a|b))*", "b*ab*"] {
        let m = transition_monoid(&compile_dfa(&parse_pattern(text, &alphabet)?, &alphabet, &budget)?, &budget)?;
        let pairs = group_morphism_pairs(&m, &beta, &budget)?;
        let basis = Basis::Custom(beta.clone());
        let (pol, _) = decide_morphism(&m, &basis, Level::Pol, false, &budget)?;
        let (bpol, _) = decide_morphism(&m, &basis, Level::Bpol, false, &budget)?;
        println!(
            "{text:<16} |M| = {}, {} S3-pairs, Pol: {}, BPol: {}",
            m.size(),
            pairs.len(),
            pol.member,
            bpol.member
        );
    }
    Ok(())
}
