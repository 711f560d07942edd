//! Decide a few classic languages against every level of the ST hierarchy.
//!
//! cargo run --example decide

use hierarchy_one::{decide, Alphabet, Basis, Budget, Input, Level};

fn main() -> hierarchy_one::Result<()> {
    let budget = Budget::default();
    let ab = Alphabet::parse("ab")?;
    let languages = ["(a|b)*a(a|b)*b(a|b)*", "(ab)*", "a", "(a|b)*aa(a|b)*", "(aa)*"];

    for text in languages {
        let input = Input::pattern(text, ab.clone());
        for (level, plus) in [(Level::Pol, false), (Level::Pol, true), (Level::Bpol, false), (Level::Bpol, true)] {
            let report = decide(&input, &Basis::St, level, plus, &budget)?;
            println!("{text:<22} {}", report.summary());
            if let Some(v) = &report.witness {
                let words: Vec<String> = v.words.iter().map(|(k, w)| format!("{k}={w:?}")).collect();
                println!("{:<22}   violated by {}", "", words.join(" "));
            }
        }
    }

    // (aa)* needs a modular basis
    let input = Input::pattern("(aa)*", Alphabet::parse("a")?);
    println!("{:<22} {}", "(aa)*", decide(&input, &Basis::Mod, Level::Bpol, false, &budget)?.summary());
    Ok(())
}
