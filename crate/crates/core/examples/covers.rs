//! Cover a language H by languages L a₁ L ⋯ aₙ L for a group language L.
//!
//! cargo run --example covers

use hierarchy_one::covers::up_arrow;
use hierarchy_one::{compile_dfa, parse_pattern, pgcov_cover, Alphabet, Budget, Dfa};

fn dfa(text: &str, alphabet: &Alphabet) -> hierarchy_one::Result<Dfa> {
    compile_dfa(&parse_pattern(text, alphabet)?, alphabet, &Budget::default())
}

fn main() -> hierarchy_one::Result<()> {
    let budget = Budget::default();
    let ab = Alphabet::parse("ab")?;

    let l = dfa("((a|b)(a|b))*", &ab)?;
    let up = up_arrow(&l, "ab", &budget)?;
    println!("L↑ab = L a L b L: {} states, accepts aab {}, aaab {}", up.state_count(), up.accepts("aab")?, up.accepts("aaab")?);

    for (h, group) in [("a*", "((a|b)(a|b))*"), ("(a|b)*ab(a|b)*", "((a|b)(a|b))*"), ("b*ab*", "(b*ab*a)*b*")] {
        let cover = pgcov_cover(&dfa(h, &ab)?, &dfa(group, &ab)?, &budget)?;
        println!(
            "H = {h}, L = {group}: bases {:?}, {}",
            cover.bases(),
            if cover.certified { "certified" } else { "not certified" }
        );
        assert!(cover.covers(&dfa(h, &ab)?, &budget)?);
    }
    Ok(())
}
