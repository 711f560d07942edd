//! Syntactic monoid, order, idempotents and the stable length sequence.
//!
//! cargo run --example analyze_monoid -- '(ab)*' ab

use hierarchy_one::monoid::{stable_sequence, syntactic_preorder};
use hierarchy_one::{compile_dfa, parse_pattern, transition_monoid, Alphabet, Budget};

fn main() -> hierarchy_one::Result<()> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "a(aa)*b*".into());
    let alphabet = Alphabet::parse(&args.next().unwrap_or_else(|| "ab".into()))?;
    let budget = Budget::default();

    let dfa = compile_dfa(&parse_pattern(&text, &alphabet)?, &alphabet, &budget)?;
    let m = transition_monoid(&dfa, &budget)?;
    let order = syntactic_preorder(&m);
    println!("{text}: {} states, {} elements", dfa.state_count(), m.size());

    for x in m.elements() {
        let w = m.witness(x);
        let below: Vec<_> = m.elements().filter(|&y| y != x && order.leq(y, x)).collect();
        println!(
            "{x:>3} {:<8} ω = {:<3} {}{} above {below:?}",
            if w.is_empty() { "ε" } else { &w },
            m.omega(x),
            if m.is_accepting(x) { "F " } else { "  " },
            if m.is_idempotent(x) { "idem" } else { "    " },
        );
    }
    println!("E(S) = {:?}", m.idempotents_s());

    let stable = stable_sequence(&m);
    println!("α(Aⁱ) is periodic from i = {} with period {}", stable.threshold, stable.period);
    for i in 0..stable.threshold + stable.period {
        println!("  T_{i} = {:?}", stable.at(i));
    }
    Ok(())
}
