//! Compare the ST, MOD and AMT pair relations of one morphism.
//!
//! cargo run --example pair_relations

use hierarchy_one::pairs::{amt_pairs, mod_pairs, st_pairs};
use hierarchy_one::{compile_dfa, parse_pattern, transition_monoid, Alphabet, Budget, PairRelation};

fn show(name: &str, rel: &PairRelation) {
    println!("{name}: {} pairs{}", rel.len(), if rel.certified() { "" } else { " (not certified)" });
    for (s, t) in rel.iter().filter(|(s, t)| s < t) {
        let (u, v) = rel.witness(s, t).expect("every pair has a witness");
        println!("  ({s}, {t})  u = {u:?}  v = {v:?}");
    }
}

fn main() -> hierarchy_one::Result<()> {
    let budget = Budget::default();
    let alphabet = Alphabet::parse("ab")?;
    // words with an even number of a's, ending in b
    let text = "(b*ab*a)*b*b";
    let m = transition_monoid(&compile_dfa(&parse_pattern(text, &alphabet)?, &alphabet, &budget)?, &budget)?;
    println!("{text}: {} elements", m.size());

    let (st, md, amt) = (st_pairs(&m), mod_pairs(&m), amt_pairs(&m, &budget));
    show("ST", &st);
    show("MOD", &md);
    show("AMT", &amt);
    assert!(amt.is_subset_of(&md) && md.is_subset_of(&st));
    Ok(())
}
