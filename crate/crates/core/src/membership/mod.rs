//! Characteristic equations and the full decision pipeline.

mod equations;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lang::{compile_dfa, minimize, parse_pattern, Dfa};
use crate::monoid::{syntactic_preorder, transition_monoid, Element, OrderRelation, SyntacticMorphism};
use crate::pairs::{amt_pairs, group_morphism_pairs, mod_pairs, st_pairs, GroupMorphism, PairRelation};

pub use equations::{
    check_bpol_group, check_bpol_group_plus, check_pol, check_pol_group, check_pol_group_plus, check_specialized,
    Specialized,
};

/// Identifies the equation a verdict was decided by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EquationId {
    /// `s^{ω+1} ≤ s^ω t s^ω`
    Polc,
    /// `1 ≤ s`
    Polg,
    /// `e ≤ ese`
    Polgp,
    /// `(qr)^ω (st)^{ω+1} = (qr)^ω q t (st)^ω`
    Gone,
    /// `(eqfre)^ω (esfte)^{ω+1} = (eqfre)^ω q f t (esfte)^ω`
    Wgone,
    Simon,
    Knast,
    Grbpol,
}

impl EquationId {
    /// Inequalities are checked against an order, the rest are identities.
    pub fn is_ordered(self) -> bool {
        matches!(self, EquationId::Polc | EquationId::Polg | EquationId::Polgp)
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            EquationId::Polc => "s^{ω+1} ≤ s^ω t s^ω",
            EquationId::Polg => "1 ≤ s",
            EquationId::Polgp => "e ≤ ese",
            EquationId::Gone => "(qr)^ω (st)^{ω+1} = (qr)^ω qt (st)^ω",
            EquationId::Wgone => "(eqfre)^ω (esfte)^{ω+1} = (eqfre)^ω qft (esfte)^ω",
            EquationId::Simon => "(st)^ω s = (st)^ω = t (st)^ω",
            EquationId::Knast => "(eqfre)^ω (esfte)^ω = (eqfre)^ω qft (esfte)^ω",
            EquationId::Grbpol => "(ef)^ω = (fe)^ω",
        };
        f.write_str(text)
    }
}

/// Values of the quantified variables; unbound ones are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bindings {
    pub q: Option<Element>,
    pub r: Option<Element>,
    pub s: Option<Element>,
    pub t: Option<Element>,
    pub e: Option<Element>,
    pub f: Option<Element>,
}

impl Bindings {
    fn named(&self) -> impl Iterator<Item = (&'static str, Element)> {
        [("q", self.q), ("r", self.r), ("s", self.s), ("t", self.t), ("e", self.e), ("f", self.f)]
            .into_iter()
            .filter_map(|(name, x)| x.map(|x| (name, x)))
    }
}

/// A falsifying assignment together with the two sides it produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<Element>,
    /// A shortest word for each bound variable.
    pub words: BTreeMap<String, String>,
    pub lhs: Element,
    pub rhs: Element,
}

impl Violation {
    pub(crate) fn new(m: &SyntacticMorphism, b: Bindings, lhs: Element, rhs: Element) -> Self {
        Violation {
            q: b.q,
            r: b.r,
            s: b.s,
            t: b.t,
            e: b.e,
            f: b.f,
            words: b.named().map(|(name, x)| (name.to_string(), m.witness(x))).collect(),
            lhs,
            rhs,
        }
    }

    pub fn bindings(&self) -> Bindings {
        Bindings {
            q: self.q,
            r: self.r,
            s: self.s,
            t: self.t,
            e: self.e,
            f: self.f,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub member: bool,
    pub equation: EquationId,
    pub violation: Option<Violation>,
}

impl Verdict {
    pub(crate) fn member(equation: EquationId) -> Self {
        Verdict {
            member: true,
            equation,
            violation: None,
        }
    }

    /// Re-evaluates a non-member verdict from scratch: the witness words must
    /// map to the bound elements and the equation must fail on them with the
    /// stored sides. Ordered equations use `order`, or the syntactic order
    /// when none is given. Member verdicts are trivially consistent.
    pub fn recheck(&self, m: &SyntacticMorphism, order: Option<&OrderRelation>) -> bool {
        if self.member {
            return self.violation.is_none();
        }
        let Some(v) = &self.violation else {
            return false;
        };
        let b = v.bindings();
        let words_ok = b
            .named()
            .all(|(name, x)| v.words.get(name).and_then(|w| m.evaluate(w).ok()) == Some(x));
        let in_range = b.named().all(|(_, x)| x < m.size());
        if !words_ok || !in_range {
            return false;
        }
        let sides = equations::sides(m, self.equation, &b);
        if !sides.contains(&(v.lhs, v.rhs)) {
            return false;
        }
        if self.equation.is_ordered() {
            let computed;
            let order = match order {
                Some(o) => o,
                None => {
                    computed = syntactic_preorder(m);
                    &computed
                }
            };
            !order.leq(v.lhs, v.rhs)
        } else {
            v.lhs != v.rhs
        }
    }
}

/// Where a language comes from.
#[derive(Clone, Debug)]
pub enum Input {
    Pattern { text: String, alphabet: Alphabet },
    Dfa { dfa: Dfa, label: String },
}

impl Input {
    pub fn pattern(text: impl Into<String>, alphabet: Alphabet) -> Self {
        Input::Pattern {
            text: text.into(),
            alphabet,
        }
    }

    pub fn dfa(dfa: Dfa, label: impl Into<String>) -> Self {
        Input::Dfa {
            dfa,
            label: label.into(),
        }
    }

    pub fn compile(&self, budget: &Budget) -> Result<Dfa> {
        match self {
            Input::Pattern { text, alphabet } => compile_dfa(&parse_pattern(text, alphabet)?, alphabet, budget),
            Input::Dfa { dfa, .. } => minimize(dfa),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Input::Pattern { text, .. } => text.clone(),
            Input::Dfa { label, .. } => label.clone(),
        }
    }
}

/// Basis of group languages the hierarchy is built over.
#[derive(Clone, Debug)]
pub enum Basis {
    St,
    Mod,
    Amt,
    /// All group languages; only `BPol(GR)` is supported.
    Gr,
    Custom(GroupMorphism),
}

impl Basis {
    /// Parses `st`, `mod`, `amt`, `gr` or `group:<file>`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "st" => Ok(Basis::St),
            "mod" => Ok(Basis::Mod),
            "amt" => Ok(Basis::Amt),
            "gr" => Ok(Basis::Gr),
            other => match other.strip_prefix("group:") {
                Some(_) => Ok(Basis::Custom(GroupMorphism::load(&text["group:".len()..], alphabet)?)),
                None => Err(Error::Unsupported(format!("unknown basis \"{text}\""))),
            },
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Basis::St => "ST".into(),
            Basis::Mod => "MOD".into(),
            Basis::Amt => "AMT".into(),
            Basis::Gr => "GR".into(),
            Basis::Custom(g) => format!("CUSTOM({})", crate::pairs::LetterAction::label(g)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Level {
    Pol,
    Bpol,
}

impl Level {
    pub fn parse(text: &str) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "pol" => Ok(Level::Pol),
            "bpol" => Ok(Level::Bpol),
            _ => Err(Error::Unsupported(format!("unknown level \"{text}\""))),
        }
    }
}

/// `Pol(ST⁺)`-style notation for a class.
pub fn class_notation(basis: &str, level: Level, plus: bool) -> String {
    let op = match level {
        Level::Pol => "Pol",
        Level::Bpol => "BPol",
    };
    format!("{op}({basis}{})", if plus { "⁺" } else { "" })
}

/// Familiar name of a class, when it has one.
pub fn class_name(basis: &str, level: Level, plus: bool) -> Option<&'static str> {
    match (basis, level, plus) {
        ("ST", Level::Bpol, false) => Some("piecewise testable"),
        ("ST", Level::Bpol, true) => Some("dot-depth one"),
        ("MOD", Level::Bpol, false) => Some("BΣ1(<,MOD)"),
        ("MOD", Level::Bpol, true) => Some("BΣ1(<,+1,MOD)"),
        ("ST", Level::Pol, false) => Some("Σ2(<)"),
        ("ST", Level::Pol, true) => Some("Σ2(<,+1)"),
        ("GR", Level::Bpol, false) => Some("BPol(GR)"),
        _ => None,
    }
}

/// Summary of the pair relation a verdict relied on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSummary {
    pub count: usize,
    pub certified: bool,
}

/// Everything a decision produced. Serializes to the report JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub dfa_states: usize,
    pub monoid_size: usize,
    pub basis: String,
    pub level: Level,
    pub plus: bool,
    pub class: String,
    pub member: bool,
    pub equation: EquationId,
    pub witness: Option<Violation>,
    /// False when the pair relation is an uncertified over-approximation.
    pub certified: bool,
    /// A non-member verdict that rests on an uncertified pair relation.
    /// Member verdicts stay sound: extra pairs only add constraints.
    pub conditional: bool,
    pub pairs: Option<PairSummary>,
    pub elapsed_us: u64,
}

impl Report {
    /// One-line verdict, e.g. `NOT a member of BPol(ST) (piecewise testable)`.
    pub fn summary(&self) -> String {
        let head = match (self.member, self.conditional) {
            (true, _) => "member of",
            (false, false) => "NOT a member of",
            (false, true) => "conditionally NOT a member of",
        };
        let name = class_name(&self.basis, self.level, self.plus)
            .filter(|n| *n != self.class)
            .map(|n| format!(" ({n})"))
            .unwrap_or_default();
        format!("{head} {}{name}", self.class)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The pair relation of `m` for a basis. GR-pairs are not computable here.
pub fn pair_relation(m: &SyntacticMorphism, basis: &Basis, budget: &Budget) -> Result<PairRelation> {
    match basis {
        Basis::St => Ok(st_pairs(m)),
        Basis::Mod => Ok(mod_pairs(m)),
        Basis::Amt => Ok(amt_pairs(m, budget)),
        Basis::Gr => Err(gr_unsupported()),
        Basis::Custom(g) => group_morphism_pairs(m, g, budget),
    }
}

fn gr_unsupported() -> Error {
    Error::Unsupported("GR-pairs not computable in this tool".into())
}

/// Evaluates the right equation for `(basis, level, plus)` on a morphism.
///
/// Level `Pol` uses the group-basis equations (`1 ≤ s`, `e ≤ ese`), `BPol`
/// the pair equations, and `BPol(GR)` the idempotent-commutation criterion.
pub fn decide_morphism(
    m: &SyntacticMorphism,
    basis: &Basis,
    level: Level,
    plus: bool,
    budget: &Budget,
) -> Result<(Verdict, Option<PairRelation>)> {
    if matches!(basis, Basis::Gr) {
        if level == Level::Pol || plus {
            return Err(gr_unsupported());
        }
        return Ok((check_specialized(m, Specialized::GrBpol), None));
    }
    let pairs = pair_relation(m, basis, budget)?;
    let verdict = match (level, plus) {
        (Level::Pol, false) => check_pol_group(m, &syntactic_preorder(m), &pairs),
        (Level::Pol, true) => check_pol_group_plus(m, &syntactic_preorder(m), &pairs),
        (Level::Bpol, false) => check_bpol_group(m, &pairs),
        (Level::Bpol, true) => check_bpol_group_plus(m, &pairs),
    };
    Ok((verdict, Some(pairs)))
}

/// Compile, minimize, build the syntactic morphism and run the checker.
pub fn decide(input: &Input, basis: &Basis, level: Level, plus: bool, budget: &Budget) -> Result<Report> {
    if matches!(basis, Basis::Gr) && (level == Level::Pol || plus) {
        return Err(gr_unsupported());
    }
    let started = Instant::now();
    let dfa = input.compile(budget)?;
    let m = transition_monoid(&dfa, budget)?;
    let (verdict, pairs) = decide_morphism(&m, basis, level, plus, budget)?;
    let certified = pairs.as_ref().is_none_or(PairRelation::certified);
    let tag = basis.tag();
    Ok(Report {
        input: input.describe(),
        dfa_states: dfa.state_count(),
        monoid_size: m.size(),
        class: class_notation(&tag, level, plus),
        basis: tag,
        level,
        plus,
        member: verdict.member,
        equation: verdict.equation,
        witness: verdict.violation,
        certified,
        conditional: !certified && !verdict.member,
        pairs: pairs.map(|p| PairSummary {
            count: p.len(),
            certified: p.certified(),
        }),
        elapsed_us: started.elapsed().as_micros() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: &str, a: &str, basis: Basis, level: Level, plus: bool) -> Report {
        let input = Input::pattern(p, Alphabet::parse(a).unwrap());
        decide(&input, &basis, level, plus, &Budget::default()).unwrap()
    }

    #[test]
    fn decide_examples() {
        assert!(run("(a|b)*a(a|b)*b(a|b)*", "ab", Basis::St, Level::Bpol, false).member);
        assert!(run("(ab)*", "ab", Basis::St, Level::Bpol, true).member);
        let r = run("(ab)*", "ab", Basis::St, Level::Bpol, false);
        assert!(!r.member);
        assert_eq!(r.summary(), "NOT a member of BPol(ST) (piecewise testable)");
        assert!(!run("(aa)*", "a", Basis::St, Level::Bpol, false).member);
        assert!(run("(aa)*", "a", Basis::Mod, Level::Bpol, false).member);
        assert!(run("(aa)*", "a", Basis::Gr, Level::Bpol, false).member);
    }

    #[test]
    fn gr_requires_bpol_without_plus() {
        let input = Input::pattern("(aa)*", Alphabet::parse("a").unwrap());
        for (level, plus) in [(Level::Pol, false), (Level::Bpol, true)] {
            let err = decide(&input, &Basis::Gr, level, plus, &Budget::default()).unwrap_err();
            assert_eq!(err.to_string(), "unsupported: GR-pairs not computable in this tool");
        }
    }

    #[test]
    fn report_round_trips() {
        let r = run("(ab)*", "ab", Basis::St, Level::Bpol, false);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let value: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(value["basis"], "ST");
        assert_eq!(value["level"], "BPOL");
        assert!(value["witness"]["words"].is_object());
    }
}
