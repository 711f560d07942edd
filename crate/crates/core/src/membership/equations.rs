//! Equation sweeps. Each checker returns the first violation in its sweep
//! order, so results are deterministic.
//!
//! The four-variable equations factor as `X · Y` where `X` depends on
//! `(q, r)` and `Y` on `(s, t)`. For fixed `(e, f, q)` only the distinct
//! values of the `X` part matter, and likewise for `s`; the sweeps
//! deduplicate those before pairing them, keeping the first `r` or `t`
//! producing each value as its representative.

use std::collections::{HashMap, HashSet};

use crate::monoid::{Element, OrderRelation, SyntacticMorphism};
use crate::pairs::PairRelation;

use super::{Bindings, EquationId, Verdict, Violation};

fn fail(m: &SyntacticMorphism, equation: EquationId, bindings: Bindings, lhs: Element, rhs: Element) -> Verdict {
    Verdict {
        member: false,
        equation,
        violation: Some(Violation::new(m, bindings, lhs, rhs)),
    }
}

/// `Pol(C)`: `s^{ω+1} ≤ s^ω t s^ω` for every pair `(s, t)`.
pub fn check_pol(m: &SyntacticMorphism, order: &OrderRelation, pairs: &PairRelation) -> Verdict {
    for (s, t) in pairs.iter() {
        let (lhs, rhs) = sides(m, EquationId::Polc, &Bindings { s: Some(s), t: Some(t), ..Bindings::default() })[0];
        if !order.leq(lhs, rhs) {
            let b = Bindings { s: Some(s), t: Some(t), ..Bindings::default() };
            return fail(m, EquationId::Polc, b, lhs, rhs);
        }
    }
    Verdict::member(EquationId::Polc)
}

/// `Pol(G)` for a group basis: `1 ≤ s` whenever `(1, s)` is a pair.
pub fn check_pol_group(m: &SyntacticMorphism, order: &OrderRelation, pairs: &PairRelation) -> Verdict {
    let one = m.identity();
    for s in pairs.partners(one) {
        if !order.leq(one, s) {
            return fail(m, EquationId::Polg, Bindings { s: Some(s), ..Bindings::default() }, one, s);
        }
    }
    Verdict::member(EquationId::Polg)
}

/// `Pol(G⁺)`: `e ≤ e·s·e` for `e ∈ E(S)` whenever `(1, s)` is a pair.
pub fn check_pol_group_plus(m: &SyntacticMorphism, order: &OrderRelation, pairs: &PairRelation) -> Verdict {
    for &e in m.idempotents_s() {
        for s in pairs.partners(m.identity()) {
            let rhs = m.product(&[e, s, e]);
            if !order.leq(e, rhs) {
                let b = Bindings { s: Some(s), e: Some(e), ..Bindings::default() };
                return fail(m, EquationId::Polgp, b, e, rhs);
            }
        }
    }
    Verdict::member(EquationId::Polgp)
}

/// Distinct `(eqfre)^ω` over `r ∈ domain`, each with its first `r`.
fn left_factors(m: &SyntacticMorphism, e: Element, f: Element, q: Element, domain: &[Element]) -> Vec<(Element, Element)> {
    let mut seen = vec![false; m.size()];
    let eqf = m.product(&[e, q, f]);
    let mut out = Vec::new();
    for &r in domain {
        let x = m.omega(m.product(&[eqf, r, e]));
        if !std::mem::replace(&mut seen[x], true) {
            out.push((x, r));
        }
    }
    out
}

/// Distinct `(Y_lhs, f·t, (esfte)^ω)` over `t ∈ domain`, each with its first
/// `t`. `Y_lhs` is `(esfte)^{ω+1}` when `plus` holds and `(esfte)^ω` otherwise.
fn right_factors(
    m: &SyntacticMorphism,
    e: Element,
    f: Element,
    s: Element,
    domain: &[Element],
    plus: bool,
) -> Vec<(Element, Element, Element, Element)> {
    let mut seen = HashSet::new();
    let esf = m.product(&[e, s, f]);
    let mut out = Vec::new();
    for &t in domain {
        let y = m.product(&[esf, t, e]);
        let w = m.omega(y);
        let lhs = if plus { m.mul(w, y) } else { w };
        let ft = m.mul(f, t);
        if seen.insert((lhs, ft, w)) {
            out.push((lhs, ft, w, t));
        }
    }
    out
}

/// Sweeps `X · Y_lhs = X · q · f·t · (esfte)^ω` with `(q, s)` outer, `(e, f)`
/// in the middle and deduplicated `r`, `t` inner. Factor lists are cached
/// per `(e, f, q)` and `(e, f, s)` as they are first needed, so a violation
/// found early costs little.
fn sweep(
    m: &SyntacticMorphism,
    equation: EquationId,
    links: &[(Element, Element)],
    qs: &mut dyn Iterator<Item = (Element, Element)>,
    domain: &[Element],
    plus: bool,
) -> Verdict {
    let mut lefts: HashMap<(usize, Element), Vec<(Element, Element)>> = HashMap::new();
    let mut rights: HashMap<(usize, Element), Vec<(Element, Element, Element, Element)>> = HashMap::new();
    for (q, s) in qs {
        for (li, &(e, f)) in links.iter().enumerate() {
            let xs = lefts.entry((li, q)).or_insert_with(|| left_factors(m, e, f, q, domain));
            let ys = rights.entry((li, s)).or_insert_with(|| right_factors(m, e, f, s, domain, plus));
            for &(x, r) in xs.iter() {
                let xq = m.mul(x, q);
                for &(y_lhs, ft, w, t) in ys.iter() {
                    let lhs = m.mul(x, y_lhs);
                    let rhs = m.product(&[xq, ft, w]);
                    if lhs != rhs {
                        let bindings = Bindings {
                            q: Some(q),
                            r: Some(r),
                            s: Some(s),
                            t: Some(t),
                            e: (equation != EquationId::Gone).then_some(e),
                            f: (equation != EquationId::Gone).then_some(f),
                        };
                        return fail(m, equation, bindings, lhs, rhs);
                    }
                }
            }
        }
    }
    Verdict::member(equation)
}

/// `BPol(G)`: `(qr)^ω (st)^{ω+1} = (qr)^ω q t (st)^ω` for every pair
/// `(q, s)` and all `r, t`.
pub fn check_bpol_group(m: &SyntacticMorphism, pairs: &PairRelation) -> Verdict {
    // e = f = 1 turns the shared sweep into exactly this equation
    let one = m.identity();
    let domain: Vec<Element> = m.elements().collect();
    sweep(m, EquationId::Gone, &[(one, one)], &mut pairs.iter(), &domain, true)
}

/// `BPol(G⁺)`: `(eqfre)^ω (esfte)^{ω+1} = (eqfre)^ω q f t (esfte)^ω` for every
/// pair `(q, s)`, all `r, t` and `e, f ∈ E(S)`.
pub fn check_bpol_group_plus(m: &SyntacticMorphism, pairs: &PairRelation) -> Verdict {
    let domain: Vec<Element> = m.elements().collect();
    sweep(m, EquationId::Wgone, &idempotent_links(m), &mut pairs.iter(), &domain, true)
}

fn idempotent_links(m: &SyntacticMorphism) -> Vec<(Element, Element)> {
    let es = m.idempotents_s();
    es.iter().flat_map(|&e| es.iter().map(move |&f| (e, f))).collect()
}

/// Which classical characterization [`check_specialized`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialized {
    /// `(st)^ω s = (st)^ω = t (st)^ω`: piecewise testable.
    Simon,
    /// `(eqfre)^ω (esfte)^ω = (eqfre)^ω q f t (esfte)^ω` over `S`: dot-depth one.
    Knast,
    /// `(ef)^ω = (fe)^ω` over all idempotents: `BPol(GR)`.
    GrBpol,
}

pub fn check_specialized(m: &SyntacticMorphism, kind: Specialized) -> Verdict {
    match kind {
        Specialized::Simon => {
            for s in m.elements() {
                for t in m.elements() {
                    let b = Bindings { s: Some(s), t: Some(t), ..Bindings::default() };
                    if let Some(&(lhs, rhs)) = sides(m, EquationId::Simon, &b).iter().find(|(l, r)| l != r) {
                        return fail(m, EquationId::Simon, b, lhs, rhs);
                    }
                }
            }
            Verdict::member(EquationId::Simon)
        }
        Specialized::Knast => {
            let s_image: Vec<Element> = m.nonempty_image().collect();
            let mut qs = s_image.iter().flat_map(|&q| s_image.iter().map(move |&s| (q, s)));
            sweep(m, EquationId::Knast, &idempotent_links(m), &mut qs, &s_image, false)
        }
        Specialized::GrBpol => {
            let es = m.idempotents();
            for &e in &es {
                for &f in &es {
                    let b = Bindings { e: Some(e), f: Some(f), ..Bindings::default() };
                    let (lhs, rhs) = sides(m, EquationId::Grbpol, &b)[0];
                    if lhs != rhs {
                        return fail(m, EquationId::Grbpol, b, lhs, rhs);
                    }
                }
            }
            Verdict::member(EquationId::Grbpol)
        }
    }
}

/// The `(lhs, rhs)` sides of an equation under full bindings, straight from
/// its definition. SIMON has two equalities and yields both.
pub(crate) fn sides(m: &SyntacticMorphism, equation: EquationId, b: &Bindings) -> Vec<(Element, Element)> {
    let one = m.identity();
    let get = |x: Option<Element>| x.unwrap_or(one);
    let (q, r, s, t, e, f) = (get(b.q), get(b.r), get(b.s), get(b.t), get(b.e), get(b.f));
    let w = |x: Element| m.omega(x);
    match equation {
        EquationId::Polc => vec![(m.omega_plus(s), m.product(&[w(s), t, w(s)]))],
        EquationId::Polg => vec![(one, s)],
        EquationId::Polgp => vec![(e, m.product(&[e, s, e]))],
        EquationId::Gone => {
            let (x, y) = (w(m.mul(q, r)), m.mul(s, t));
            vec![(m.mul(x, m.omega_plus(y)), m.product(&[x, q, t, w(y)]))]
        }
        EquationId::Wgone | EquationId::Knast => {
            let x = w(m.product(&[e, q, f, r, e]));
            let y = m.product(&[e, s, f, t, e]);
            let lhs = if equation == EquationId::Wgone { m.omega_plus(y) } else { w(y) };
            vec![(m.mul(x, lhs), m.product(&[x, q, f, t, w(y)]))]
        }
        EquationId::Simon => {
            let x = w(m.mul(s, t));
            vec![(m.mul(x, s), x), (x, m.mul(t, x))]
        }
        EquationId::Grbpol => vec![(w(m.mul(e, f)), w(m.mul(f, e)))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::syntactic_preorder;
    use crate::monoid::tests::morphism;
    use crate::pairs::{mod_pairs, st_pairs};

    fn pol(p: &str, a: &str, plus: bool, modular: bool) -> Verdict {
        let m = morphism(p, a);
        let o = syntactic_preorder(&m);
        let pairs = if modular { mod_pairs(&m) } else { st_pairs(&m) };
        let v = if plus {
            check_pol_group_plus(&m, &o, &pairs)
        } else {
            check_pol_group(&m, &o, &pairs)
        };
        assert!(v.recheck(&m, Some(&o)));
        v
    }

    #[test]
    fn pol_examples() {
        let m = morphism("(a|b)*a(a|b)*", "ab");
        let o = syntactic_preorder(&m);
        assert!(check_pol(&m, &o, &st_pairs(&m)).member);
        assert!(pol("(a|b)*a(a|b)*", "ab", false, false).member);

        let m = morphism("a(aa)*", "a");
        let o = syntactic_preorder(&m);
        let v = check_pol(&m, &o, &st_pairs(&m));
        assert!(!v.member && v.recheck(&m, Some(&o)));
        let odd = m.letter_image(0);
        let viol = v.violation.unwrap();
        assert_eq!((viol.s, viol.t), (Some(m.identity()), Some(odd)));
        assert!(check_pol(&m, &o, &mod_pairs(&m)).member);

        let v = pol("a(aa)*", "a", false, false);
        assert_eq!(v.violation.unwrap().s, Some(odd));
        assert!(pol("a(aa)*", "a", false, true).member);
    }

    #[test]
    fn pol_plus_examples() {
        assert!(pol("a", "ab", true, false).member);
        assert!(!pol("a", "ab", false, false).member);
        assert!(!pol("a(aa)*", "a", true, false).member);
        assert!(pol("a(aa)*", "a", true, true).member);
    }

    #[test]
    fn bpol_examples() {
        let m = morphism("(a|b)*a(a|b)*b(a|b)*", "ab");
        assert!(check_bpol_group(&m, &st_pairs(&m)).member);
        assert!(check_bpol_group_plus(&m, &st_pairs(&m)).member);
        assert!(check_specialized(&m, Specialized::Simon).member);

        let m = morphism("(ab)*", "ab");
        let v = check_bpol_group(&m, &st_pairs(&m));
        assert!(!v.member && v.recheck(&m, None));
        assert!(check_bpol_group_plus(&m, &st_pairs(&m)).member);
        assert!(!check_specialized(&m, Specialized::Simon).member);
        assert!(check_specialized(&m, Specialized::Knast).member);

        let m = morphism("(aa)*", "a");
        assert!(!check_bpol_group(&m, &st_pairs(&m)).member);
        assert!(check_bpol_group(&m, &mod_pairs(&m)).member);
        assert!(check_specialized(&m, Specialized::GrBpol).member);

        let m = morphism("a(aa)*", "a");
        assert!(check_bpol_group_plus(&m, &mod_pairs(&m)).member);
    }

    #[test]
    fn trivial_monoid_satisfies_everything() {
        let m = morphism("(a|b)*", "ab");
        for kind in [Specialized::Simon, Specialized::Knast, Specialized::GrBpol] {
            assert!(check_specialized(&m, kind).member);
        }
    }

    #[test]
    fn grbpol_rejects_non_commuting_idempotents() {
        // a(a|b)*: e = α(a), f = α(b) are idempotents with ef ≠ fe as ω-powers
        let m = morphism("a(a|b)*", "ab");
        let v = check_specialized(&m, Specialized::GrBpol);
        assert!(!v.member && v.recheck(&m, None));
    }
}
