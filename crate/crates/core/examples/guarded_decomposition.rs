//! Split long words into blocks separated by idempotent-guarded links.
//!
//! cargo run --example guarded_decomposition

use hierarchy_one::random::{random_word, rng};
use hierarchy_one::{compile_dfa, guarded_decomposition, parse_pattern, transition_monoid, Alphabet, Budget};

fn main() -> hierarchy_one::Result<()> {
    let budget = Budget::default();
    let ab = Alphabet::parse("ab")?;
    let m = transition_monoid(&compile_dfa(&parse_pattern("(ab)*", &ab)?, &ab, &budget)?, &budget)?;
    println!("|M| = {}, blocks split once a word exceeds {} letters", m.size(), m.size() * m.size());

    let mut r = rng(42);
    for _ in 0..5 {
        let word = random_word(&mut r, &ab, 90);
        let d = guarded_decomposition(&m, &word)?;
        println!("{} letters -> {} blocks, links {:?}, verified {}", word.len(), d.blocks.len(), d.links, d.verify(&m, &word));
    }
    let d = guarded_decomposition(&m, &"ab".repeat(30))?;
    println!("(ab)^30: {}", d.blocks.join(" | "));
    Ok(())
}
