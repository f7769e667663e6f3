//! Finitary basis recognition.
//!
//! A subset `B` of a finite poset is a finitary basis when it is inhabited
//! and every subset of `B` with an upper bound in `B` has a least upper bound
//! in `B`. Countability is automatic for finite carriers. The empty subset is
//! bounded by any member of an inhabited `B`, so every basis has a bottom.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::subset::Subset;

/// Why a subset fails to be a finitary basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    NotInhabited,
    BoundedSubsetWithoutLub,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::NotInhabited => "NotInhabited",
            FailureReason::BoundedSubsetWithoutLub => "BoundedSubsetWithoutLub",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisFailure {
    pub subset: Subset,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub is_basis: bool,
    pub bottom: Option<usize>,
    pub failure: Option<BasisFailure>,
    pub notes: Vec<&'static str>,
}

const COUNTABLE_NOTE: &str = "countability holds vacuously for a finite carrier";

/// Decides whether `b` is a finitary basis by checking every subset of `b`.
///
/// The first failing subset in cardinality-then-lexicographic order is
/// reported, so an unbounded-below basis always fails on the empty set.
pub fn check_finitary_basis(p: &Poset, b: Subset) -> Result<BasisReport> {
    p.check_within_carrier(b, Error::SubsetEscapesCarrier)?;
    let notes = vec![COUNTABLE_NOTE];
    if b.is_empty() {
        return Ok(BasisReport {
            is_basis: false,
            bottom: None,
            failure: Some(BasisFailure {
                subset: Subset::EMPTY,
                reason: FailureReason::NotInhabited,
            }),
            notes,
        });
    }
    let failing = b.subsets_by_size().find(|&s| {
        !p.upper_bounds_unchecked(b, s).is_empty() && p.lub_in_unchecked(b, s).is_none()
    });
    Ok(BasisReport {
        is_basis: failing.is_none(),
        bottom: p.lub_in_unchecked(b, Subset::EMPTY),
        failure: failing.map(|subset| BasisFailure {
            subset,
            reason: FailureReason::BoundedSubsetWithoutLub,
        }),
        notes,
    })
}

/// Same verdict as [`check_finitary_basis`], checking only the empty set and
/// pairs. For finite `b` this suffices: a bounded set `s ∪ {x}` has lub
/// `lub {lub s, x}`, by induction.
pub fn check_finitary_basis_fast(p: &Poset, b: Subset) -> Result<bool> {
    p.check_within_carrier(b, Error::SubsetEscapesCarrier)?;
    if p.lub_in_unchecked(b, Subset::EMPTY).is_none() {
        return Ok(false);
    }
    let members: Vec<usize> = b.iter().collect();
    for (k, &x) in members.iter().enumerate() {
        for &y in &members[k + 1..] {
            let pair = Subset::singleton(x).with(y);
            if !p.upper_bounds_unchecked(b, pair).is_empty() && p.lub_in_unchecked(b, pair).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The least element of `b`, i.e. the lub of the empty set.
pub fn bottom_of(p: &Poset, b: Subset) -> Result<Option<usize>> {
    p.check_within_carrier(b, Error::SubsetEscapesCarrier)?;
    Ok(p.lub_in_unchecked(b, Subset::EMPTY))
}

/// A subset of a poset known to be a finitary basis.
#[derive(Clone, Copy, Debug)]
pub struct Basis<'p> {
    poset: &'p Poset,
    carrier: Subset,
    bottom: usize,
}

impl<'p> Basis<'p> {
    pub fn new(poset: &'p Poset, carrier: Subset) -> Result<Self> {
        let report = check_finitary_basis(poset, carrier)?;
        match (report.failure, report.bottom) {
            (None, Some(bottom)) => Ok(Basis {
                poset,
                carrier,
                bottom,
            }),
            (Some(failure), _) => Err(Error::NotAFinitaryBasis {
                reason: failure.reason,
                subset: poset.names(failure.subset),
            }),
            (None, None) => unreachable!("an inhabited finitary basis has a bottom"),
        }
    }

    /// The whole carrier as the basis.
    pub fn of_poset(poset: &'p Poset) -> Result<Self> {
        Self::new(poset, poset.carrier())
    }

    pub fn poset(&self) -> &'p Poset {
        self.poset
    }

    pub fn carrier(&self) -> Subset {
        self.carrier
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
