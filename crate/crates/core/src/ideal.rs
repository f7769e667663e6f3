//! Directed sets, downward closure, ideals and the ideal completion.

use std::fmt;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::order::{Element, Poset, PosetBuilder};
use crate::subset::{Subset, MAX_WIDTH};
use crate::verdict::{Verdict, Witness};

/// A nonempty, downward-closed, directed subset of a finitary basis.
///
/// Equality is set equality; ideals order canonically by their members.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(Subset);

impl Ideal {
    pub fn members(self) -> Subset {
        self.0
    }

    pub fn is_subset_of(self, other: Ideal) -> bool {
        self.0.is_subset_of(other.0)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{:?}", self.0)
    }
}

/// Every finite `F ⊆ s` has an upper bound inside `s`.
///
/// On failure the witness is the smallest failing `F`, lexicographically
/// least among those. The empty `F` fails exactly when `s` is empty.
pub fn is_directed(p: &Poset, s: Subset) -> Result<Verdict> {
    p.check_within_carrier(s, Error::SubsetEscapesCarrier)?;
    // A finite set bounded by one of its own members bounds all its subsets.
    if !p.upper_bounds_unchecked(s, s).is_empty() {
        return Ok(Verdict::pass());
    }
    let witness = s
        .subsets_by_size()
        .find(|&f| p.upper_bounds_unchecked(s, f).is_empty())
        .expect("s itself has no upper bound in s");
    Ok(Verdict::fail(Witness::Subset(witness)))
}

fn check_nested(p: &Poset, b: Subset, i: Subset) -> Result<()> {
    p.check_within_carrier(b, Error::SubsetEscapesCarrier)?;
    match i.difference(b).first() {
        Some(x) => Err(Error::SubsetEscapesBasis(p.name(x))),
        None => Ok(()),
    }
}

/// Pointwise form: for `e` in `i` and `x` in `b`, `x <= e` implies `x` in `i`.
/// The witness is the first offending `(e, x)`.
pub fn is_downward_closed_orig(p: &Poset, b: Subset, i: Subset) -> Result<Verdict> {
    check_nested(p, b, i)?;
    for e in i {
        for x in b {
            if p.leq(x, e) && !i.contains(x) {
                return Ok(Verdict::fail(Witness::Pair(e, x)));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Lower-set form: `lower_set(b, e) ⊆ i` for every `e` in `i`. The witness is
/// the first `e` whose lower set escapes `i`.
pub fn is_downward_closed_alt(p: &Poset, b: Subset, i: Subset) -> Result<Verdict> {
    check_nested(p, b, i)?;
    for e in i {
        if !p.lower_set(b, e)?.is_subset_of(i) {
            return Ok(Verdict::fail(Witness::Element(e)));
        }
    }
    Ok(Verdict::pass())
}

/// Downward closed in the basis and directed, with bounds taken inside `i`.
pub fn is_ideal(basis: &Basis<'_>, i: Subset) -> Result<Verdict> {
    let p = basis.poset();
    let closed = is_downward_closed_orig(p, basis.carrier(), i)?;
    if !closed.holds {
        return Ok(closed);
    }
    is_directed(p, i)
}

/// The lower set of `x` in the basis.
pub fn principal_ideal(basis: &Basis<'_>, x: usize) -> Result<Ideal> {
    if !basis.carrier().contains(x) {
        return Err(Error::ElementNotInBasis(basis.poset().name(x)));
    }
    Ok(Ideal(basis.poset().lower_set(basis.carrier(), x)?))
}

/// `{ bottom }`, the least ideal.
pub fn bottom_ideal(basis: &Basis<'_>) -> Ideal {
    Ideal(Subset::singleton(basis.bottom()))
}

/// Every ideal of the basis, in canonical order.
///
/// Filters all subsets of the basis through [`is_ideal`], then cross-checks
/// the result against the principal ideals; any disagreement is an error.
pub fn enumerate_ideals(basis: &Basis<'_>) -> Result<Vec<Ideal>> {
    let mut ideals = Vec::new();
    for s in basis.carrier().submasks() {
        if is_ideal(basis, s)?.holds {
            ideals.push(Ideal(s));
        }
    }
    ideals.sort();

    let mut principal = basis
        .carrier()
        .iter()
        .map(|x| principal_ideal(basis, x))
        .collect::<Result<Vec<_>>>()?;
    principal.sort();
    if ideals != principal {
        let p = basis.poset();
        let render = |v: &[Ideal]| {
            v.iter()
                .map(|i| p.braced(i.members()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        return Err(Error::PrincipalityMismatch(format!(
            "definitional [{}] vs principal [{}]",
            render(&ideals),
            render(&principal)
        )));
    }
    Ok(ideals)
}

/// The ideals of a basis ordered by inclusion.
///
/// Ideal `k` is element `k` of [`Completion::poset`], whose element names
/// (`I0`, `I1`, ... zero-padded) sort in the same order as the ideals.
#[derive(Clone, Debug)]
pub struct Completion {
    ideals: Vec<Ideal>,
    poset: Poset,
    ground: Vec<Element>,
}

pub fn build_completion(basis: &Basis<'_>) -> Result<Completion> {
    let ideals = enumerate_ideals(basis)?;
    let width = ideals.len().saturating_sub(1).to_string().len();
    let names: Vec<Element> = (0..ideals.len())
        .map(|k| Element::new(format!("I{k:0width$}")))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (a, ia) in ideals.iter().enumerate() {
        for (b, ib) in ideals.iter().enumerate() {
            if ia.is_subset_of(*ib) {
                pairs.push((names[a].clone(), names[b].clone()));
            }
        }
    }
    let poset = PosetBuilder::new()
        .max_carrier(MAX_WIDTH)
        .build(names, pairs)?;
    Ok(Completion {
        ideals,
        poset,
        ground: basis.poset().elements().to_vec(),
    })
}

impl Completion {
    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn ideal(&self, k: usize) -> Ideal {
        self.ideals[k]
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// The inclusion order, one element per ideal.
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn index_of(&self, members: Subset) -> Option<usize> {
        self.ideals.binary_search(&Ideal(members)).ok()
    }

    /// The least ideal, as the lub of the empty family.
    pub fn bottom(&self) -> Option<Ideal> {
        self.poset
            .lub_in_unchecked(self.poset.carrier(), Subset::EMPTY)
            .map(|k| self.ideals[k])
    }

    /// `{bot,tt}` rendering of ideal `k`.
    pub fn label(&self, k: usize) -> String {
        let names: Vec<&str> = self.ideals[k]
            .members()
            .iter()
            .map(|x| self.ground[x].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// The ideals are exactly the principal ideals, and `x ↦ ↓x` is an order
/// isomorphism from the basis onto the completion.
pub fn check_principality(basis: &Basis<'_>, completion: &Completion) -> Result<Verdict> {
    let p = basis.poset();
    let mut image = Vec::new();
    for x in basis.carrier() {
        let down = principal_ideal(basis, x)?;
        match completion.index_of(down.members()) {
            Some(k) => image.push((x, k)),
            None => return Ok(Verdict::fail(Witness::Element(x))),
        }
    }
    let covered: Subset = image.iter().map(|&(_, k)| k).collect();
    if let Some(k) = completion.poset().carrier().difference(covered).first() {
        return Ok(Verdict::fail(Witness::Subset(completion.ideal(k).members())));
    }
    for &(x, kx) in &image {
        for &(y, ky) in &image {
            if p.leq(x, y) != completion.poset().leq(kx, ky) {
                return Ok(Verdict::fail(Witness::Pair(x, y)));
            }
        }
    }
    Ok(Verdict::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::PosetBuilder;

    fn poset(carrier: &[&str], covers: &[(&str, &str)]) -> Poset {
        let el = |s: &str| Element::new(s).unwrap();
        PosetBuilder::new()
            .closure(true)
            .build(
                carrier.iter().map(|s| el(s)),
                covers.iter().map(|(a, b)| (el(a), el(b))),
            )
            .unwrap()
    }

    fn flat_bool() -> Poset {
        poset(&["bot", "tt", "ff"], &[("bot", "tt"), ("bot", "ff")])
    }

    fn diamond() -> Poset {
        poset(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
    }

    fn set(p: &Poset, names: &[&str]) -> Subset {
        p.subset(names).unwrap()
    }

    #[test]
    fn directed_examples() {
        let p = flat_bool();
        assert_eq!(
            is_directed(&p, Subset::EMPTY).unwrap(),
            Verdict::fail(Witness::Subset(Subset::EMPTY))
        );
        assert!(is_directed(&p, set(&p, &["bot", "tt"])).unwrap().holds);
        assert_eq!(
            is_directed(&p, p.carrier()).unwrap(),
            Verdict::fail(Witness::Subset(set(&p, &["tt", "ff"])))
        );
    }

    #[test]
    fn directed_witness_is_least_smallest() {
        let p = poset(
            &["a", "b", "c", "ab", "ac", "bc"],
            &[("a", "ab"), ("b", "ab"), ("a", "ac"), ("c", "ac"), ("b", "bc"), ("c", "bc")],
        );
        let v = is_directed(&p, p.carrier()).unwrap();
        let Some(Witness::Subset(w)) = v.witness else {
            panic!("expected a subset witness")
        };
        // Canonical order a, ab, ac, b, bc, c: {a,bc} is the first unbounded pair.
        assert_eq!(p.names(w), ["a", "bc"]);
    }

    #[test]
    fn downward_closed_examples() {
        let d = diamond();
        let all = d.carrier();
        let a = d.index_of("a").unwrap();
        let bot = d.index_of("bot").unwrap();
        let only_a = Subset::singleton(a);
        assert_eq!(
            is_downward_closed_orig(&d, all, only_a).unwrap(),
            Verdict::fail(Witness::Pair(a, bot))
        );
        assert!(!is_downward_closed_alt(&d, all, only_a).unwrap().holds);
        assert!(is_downward_closed_orig(&d, all, Subset::EMPTY).unwrap().holds);
        assert!(is_downward_closed_alt(&d, all, Subset::EMPTY).unwrap().holds);
        for x in 0..d.len() {
            let down = d.lower_set(all, x).unwrap();
            assert!(is_downward_closed_orig(&d, all, down).unwrap().holds);
        }

        let p = flat_bool();
        assert!(is_downward_closed_alt(&p, p.carrier(), set(&p, &["bot", "ff"])).unwrap().holds);
    }

    #[test]
    fn downward_closed_rejects_escaping_subset() {
        let p = flat_bool();
        let b = set(&p, &["bot", "tt"]);
        let i = set(&p, &["ff"]);
        assert_eq!(
            is_downward_closed_orig(&p, b, i),
            Err(Error::SubsetEscapesBasis("ff".into()))
        );
        assert_eq!(
            is_downward_closed_alt(&p, b, i),
            Err(Error::SubsetEscapesBasis("ff".into()))
        );
    }

    #[test]
    fn ideal_examples() {
        let p = flat_bool();
        let basis = Basis::of_poset(&p).unwrap();
        assert!(is_ideal(&basis, set(&p, &["bot"])).unwrap().holds);
        let tt = is_ideal(&basis, set(&p, &["tt"])).unwrap();
        assert!(matches!(tt.witness, Some(Witness::Pair(_, _))));

        let d = diamond();
        let basis = Basis::of_poset(&d).unwrap();
        let v = is_ideal(&basis, set(&d, &["bot", "a", "b"])).unwrap();
        assert_eq!(v, Verdict::fail(Witness::Subset(set(&d, &["a", "b"]))));
    }

    #[test]
    fn principal_and_bottom_ideals() {
        let p = flat_bool();
        let basis = Basis::of_poset(&p).unwrap();
        let tt = p.index_of("tt").unwrap();
        assert_eq!(principal_ideal(&basis, tt).unwrap().members(), set(&p, &["bot", "tt"]));
        assert_eq!(principal_ideal(&basis, basis.bottom()).unwrap(), bottom_ideal(&basis));
        assert_eq!(bottom_ideal(&basis).members(), set(&p, &["bot"]));

        let d = diamond();
        let basis = Basis::of_poset(&d).unwrap();
        let top = d.index_of("top").unwrap();
        assert_eq!(principal_ideal(&basis, top).unwrap().members(), d.carrier());

        let sub = Basis::new(&d, set(&d, &["bot", "a"])).unwrap();
        assert_eq!(
            principal_ideal(&sub, top),
            Err(Error::ElementNotInBasis("top".into()))
        );
    }

    #[test]
    fn enumerate_examples() {
        let p = flat_bool();
        let basis = Basis::of_poset(&p).unwrap();
        let ideals: Vec<String> = enumerate_ideals(&basis)
            .unwrap()
            .into_iter()
            .map(|i| p.braced(i.members()))
            .collect();
        assert_eq!(ideals, ["{bot}", "{bot,ff}", "{bot,tt}"]);

        let d = diamond();
        let basis = Basis::of_poset(&d).unwrap();
        let ideals = enumerate_ideals(&basis).unwrap();
        assert_eq!(ideals.len(), 4);
        let bottom = bottom_ideal(&basis);
        assert!(ideals.iter().all(|i| bottom.is_subset_of(*i)));

        let one = poset(&["x"], &[]);
        let basis = Basis::of_poset(&one).unwrap();
        assert_eq!(enumerate_ideals(&basis).unwrap(), [Ideal(Subset::singleton(0))]);
    }

    #[test]
    fn completion_of_flat_booleans() {
        let p = flat_bool();
        let basis = Basis::of_poset(&p).unwrap();
        let c = build_completion(&basis).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.bottom(), Some(bottom_ideal(&basis)));
        assert_eq!(c.poset().covers().len(), 2);
        assert_eq!(c.label(0), "{bot}");
        assert!(check_principality(&basis, &c).unwrap().holds);
    }

    #[test]
    fn completion_of_diamond_is_a_diamond() {
        let d = diamond();
        let basis = Basis::of_poset(&d).unwrap();
        let c = build_completion(&basis).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.poset().covers().len(), 4);
        assert!(check_principality(&basis, &c).unwrap().holds);
    }

    #[test]
    fn completion_names_sort_with_ideals() {
        let names: Vec<String> = (0..12).map(|k| format!("e{k:02}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let chain: Vec<(&str, &str)> = refs.windows(2).map(|w| (w[0], w[1])).collect();
        let p = poset(&refs, &chain);
        let basis = Basis::of_poset(&p).unwrap();
        let c = build_completion(&basis).unwrap();
        assert_eq!(c.poset().element(0).as_str(), "I00");
        for k in 0..c.len() {
            assert_eq!(c.index_of(c.ideal(k).members()), Some(k));
        }
        assert!(check_principality(&basis, &c).unwrap().holds);
    }
}
