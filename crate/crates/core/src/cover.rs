//! Finite covering subfamilies, and the union of a directed family of ideals.
//!
//! [`finite_cover`] follows the inductive construction on the finite target:
//! the empty target is covered by the empty family, and covering `A ∪ {x}`
//! adds one member set containing `x` to the cover of `A`.
//! [`check_union_of_directed_ideals`] verifies that the union of a directed
//! family of ideals is again an ideal by the same route, then confirms the
//! verdict with the definitional check.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::basis::Basis;
use crate::error::Error;
use crate::ideal::{is_directed, is_ideal, Completion, Ideal};
use crate::order::Poset;
use crate::subset::Subset;
use crate::verdict::{Verdict, Witness};

/// A finite set of subsets, deduplicated and in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Family {
    sets: Vec<Subset>,
}

impl Family {
    pub fn new(sets: impl IntoIterator<Item = Subset>) -> Self {
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        sets.sort();
        sets.dedup();
        Family { sets }
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.sets.iter().all(|&s| other.contains(s))
    }

    #[must_use]
    fn add(mut self, s: Subset) -> Self {
        if let Err(at) = self.sets.binary_search(&s) {
            self.sets.insert(at, s);
        }
        self
    }
}

pub fn union_of(f: &Family) -> Subset {
    f.sets.iter().fold(Subset::EMPTY, |acc, &s| acc.union(s))
}

/// A finite subfamily covering a target, with the set chosen for each
/// target element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub subfamily: Family,
    pub assignment: BTreeMap<usize, Subset>,
}

/// The target element that lies in no member set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("element #{0} lies in no member of the family")]
pub struct NotCovered(pub usize);

/// Covers `target` by taking, for each element in canonical order, the
/// canonically first member set that contains it.
pub fn finite_cover(f: &Family, target: Subset) -> Result<CoverWitness, NotCovered> {
    let base = CoverWitness {
        subfamily: Family::default(),
        assignment: BTreeMap::new(),
    };
    target.iter().try_fold(base, |mut acc, x| {
        let chosen = *f.sets.iter().find(|s| s.contains(x)).ok_or(NotCovered(x))?;
        acc.assignment.insert(x, chosen);
        acc.subfamily = acc.subfamily.add(chosen);
        Ok(acc)
    })
}

/// A cover of least cardinality, by exhaustive search over subfamilies.
///
/// Exponential in the family size. Ties go to the canonically first
/// subfamily; each element is assigned its first containing chosen set.
pub fn minimum_cover(f: &Family, target: Subset) -> Result<CoverWitness, NotCovered> {
    if let Some(x) = target.difference(union_of(f)).first() {
        return Err(NotCovered(x));
    }
    assert!(f.len() <= 64, "family too large for exhaustive search");
    let picks = Subset::full(f.len())
        .subsets_by_size()
        .find(|picks| {
            let chosen = picks.iter().fold(Subset::EMPTY, |acc, k| acc.union(f.sets[k]));
            target.is_subset_of(chosen)
        })
        .expect("the whole family covers the target");
    let chosen = Family::new(picks.iter().map(|k| f.sets[k]));
    finite_cover(&chosen, target)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnionError {
    /// The family is not directed under inclusion; holds the failing
    /// subfamily.
    #[error("family of ideals is not directed")]
    PreconditionNotDirected(Vec<Subset>),
    #[error("family member is not an ideal")]
    MemberNotIdeal(Subset, Verdict),
    /// The union failed the ideal check. This contradicts the theorem and
    /// indicates a defect.
    #[error("union of a directed family of ideals is not an ideal: {0}")]
    UnionNotIdeal(String),
    #[error(transparent)]
    Order(#[from] Error),
}

/// Checks that the union of the directed family `si` is an ideal, and returns
/// it.
///
/// `completion` must be the completion of `basis`. Members are checked to be
/// ideals and the family to be directed under inclusion before the union is
/// examined.
pub fn check_union_of_directed_ideals(
    basis: &Basis<'_>,
    completion: &Completion,
    si: &[Subset],
) -> Result<Ideal, UnionError> {
    let p = basis.poset();
    let mut indices = Subset::EMPTY;
    for &member in si {
        if !member.is_subset_of(basis.carrier()) {
            let x = member.difference(basis.carrier()).first().unwrap_or_default();
            return Err(UnionError::Order(Error::SubsetEscapesBasis(p.name(x))));
        }
        let verdict = is_ideal(basis, member)?;
        if !verdict.holds {
            return Err(UnionError::MemberNotIdeal(member, verdict));
        }
        let k = completion
            .index_of(member)
            .ok_or_else(|| UnionError::UnionNotIdeal(format!(
                "ideal {} is missing from the completion",
                p.braced(member)
            )))?;
        indices = indices.with(k);
    }
    let directed = is_directed(completion.poset(), indices)?;
    if let Some(Witness::Subset(w)) = directed.witness {
        return Err(UnionError::PreconditionNotDirected(
            w.iter().map(|k| completion.ideal(k).members()).collect(),
        ));
    }

    let family = Family::new(si.iter().copied());
    let union = union_of(&family);

    if let Some(reason) = union_failure(p, basis.carrier(), &family, union) {
        return Err(UnionError::UnionNotIdeal(reason));
    }
    let definitional = is_ideal(basis, union)?;
    if !definitional.holds {
        let reason = definitional
            .witness
            .map(|w| w.describe(p))
            .unwrap_or_default();
        return Err(UnionError::UnionNotIdeal(format!(
            "definitional check failed on {reason} while the structural check passed"
        )));
    }
    Ok(completion
        .index_of(union)
        .map(|k| completion.ideal(k))
        .expect("an ideal of the basis is in its completion"))
}

/// The structural route: downward closure through the member containing each
/// element, directedness through a finite cover and a bounding member.
fn union_failure(p: &Poset, b: Subset, family: &Family, union: Subset) -> Option<String> {
    for e in union {
        let member = *family
            .sets
            .iter()
            .find(|s| s.contains(e))
            .expect("every union element lies in some member");
        for x in b {
            if p.leq(x, e) && !member.contains(x) {
                return Some(format!(
                    "{} <= {} but {} is not in {}",
                    p.name(x),
                    p.name(e),
                    p.name(x),
                    p.braced(member)
                ));
            }
        }
    }
    for f in union.submasks() {
        let cover = match finite_cover(family, f) {
            Ok(cover) => cover,
            Err(NotCovered(x)) => return Some(format!("{} escapes the union", p.name(x))),
        };
        // Directedness of the family yields one member above the whole cover.
        let Some(&bound) = family
            .sets
            .iter()
            .find(|m| cover.subfamily.sets.iter().all(|s| s.is_subset_of(**m)))
        else {
            return Some(format!("cover of {} has no bounding member", p.braced(f)));
        };
        if !f.is_subset_of(bound) || p.upper_bounds_unchecked(bound, f).is_empty() {
            return Some(format!(
                "{} has no upper bound in {}",
                p.braced(f),
                p.braced(bound)
            ));
        }
    }
    None
}

/// The lub of `si` (completion indices) under inclusion.
pub fn lub_in_completion(c: &Completion, si: Subset) -> Result<Option<Ideal>, Error> {
    Ok(c.poset()
        .lub_in(c.poset().carrier(), si)?
        .map(|k| c.ideal(k)))
}
