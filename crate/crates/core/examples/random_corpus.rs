//! Decide a seeded corpus of random minimal DFAs in parallel and tally
//! which classes they fall into.
//!
//! cargo run --release --example random_corpus -- 200

use hierarchy_one::membership::decide_morphism;
use hierarchy_one::random::{random_minimal_dfa, rng};
use hierarchy_one::{transition_monoid, Alphabet, Basis, Budget, Level};
use rayon::prelude::*;

fn main() -> hierarchy_one::Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let alphabet = Alphabet::parse("ab")?;
    let budget = Budget::default();
    let mut r = rng(7);
    let dfas: Vec<_> = (0..count).map(|_| random_minimal_dfa(&mut r, 5, &alphabet)).collect();

    let classes = [
        ("Pol(ST)", Basis::St, Level::Pol, false),
        ("Pol(ST⁺)", Basis::St, Level::Pol, true),
        ("BPol(ST)", Basis::St, Level::Bpol, false),
        ("BPol(ST⁺)", Basis::St, Level::Bpol, true),
        ("BPol(MOD)", Basis::Mod, Level::Bpol, false),
        ("BPol(MOD⁺)", Basis::Mod, Level::Bpol, true),
    ];
    let tallies: Vec<Vec<bool>> = dfas
        .par_iter()
        .map(|d| {
            let m = transition_monoid(d, &budget).expect("small DFAs fit the budget");
            classes
                .iter()
                .map(|(_, basis, level, plus)| decide_morphism(&m, basis, *level, *plus, &budget).expect("computable").0.member)
                .collect()
        })
        .collect();

    println!("{count} random minimal DFAs over {{a, b}} with at most 5 states");
    for (i, (name, ..)) in classes.iter().enumerate() {
        println!("  {name:<12} {:>4}", tallies.iter().filter(|row| row[i]).count());
    }
    Ok(())
}
