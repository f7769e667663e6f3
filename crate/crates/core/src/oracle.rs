//! Executable theorem checks over concrete instances.
//!
//! Each check counts the instances it examined and collects a description of
//! every violation. A theorem holds on the inputs iff no violation is found.

use crate::basis::{check_finitary_basis, check_finitary_basis_fast, Basis};
use crate::cover::{
    check_union_of_directed_ideals, finite_cover, lub_in_completion, union_of, Family, UnionError,
};
use crate::error::Result;
use crate::ideal::{
    bottom_ideal, build_completion, check_principality, enumerate_ideals, is_directed,
    is_downward_closed_alt, is_downward_closed_orig, is_ideal, principal_ideal, Completion,
};
use crate::order::Poset;
use crate::subset::Subset;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl Outcome {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(describe());
        }
    }

    pub fn absorb(&mut self, other: Outcome) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// No subset has two distinct elements satisfying the lub predicate, and
/// [`Poset::lub_in`] returns the one that does.
pub fn lubs_unique(p: &Poset, universe: Subset, subsets: impl IntoIterator<Item = Subset>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for s in subsets {
        let lubs: Subset = universe.iter().filter(|&b| p.is_lub_in(universe, s, b)).collect();
        let found = p.lub_in(universe, s)?;
        out.record(lubs.len() <= 1 && found == lubs.first(), || {
            format!(
                "{} has lubs {} in {}",
                p.braced(s),
                p.braced(lubs),
                p.braced(universe)
            )
        });
    }
    Ok(out)
}

/// The two downward-closure formulations agree.
pub fn dc_eqv(p: &Poset, b: Subset, candidates: impl IntoIterator<Item = Subset>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for i in candidates {
        let orig = is_downward_closed_orig(p, b, i)?.holds;
        let alt = is_downward_closed_alt(p, b, i)?.holds;
        out.record(orig == alt, || {
            format!(
                "{} in {}: pointwise says {orig}, lower-set form says {alt}",
                p.braced(i),
                p.braced(b)
            )
        });
    }
    Ok(out)
}

/// Directed sets are inhabited.
pub fn directed_inhabited(p: &Poset, candidates: impl IntoIterator<Item = Subset>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for s in candidates {
        let directed = is_directed(p, s)?.holds;
        out.record(!directed || !s.is_empty(), || "the empty set passed as directed".to_string());
    }
    Ok(out)
}

/// Every principal ideal is an ideal.
pub fn principal_ideals_are_ideals(basis: &Basis<'_>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for x in basis.carrier() {
        let down = principal_ideal(basis, x)?;
        let verdict = is_ideal(basis, down.members())?;
        out.record(verdict.holds, || {
            let p = basis.poset();
            format!("principal ideal of {} = {} is not an ideal", p.name(x), p.braced(down.members()))
        });
    }
    Ok(out)
}

/// `{ bottom }` is an ideal and lies below every ideal.
pub fn bottom_singleton_is_bottom_ideal(basis: &Basis<'_>, completion: &Completion) -> Result<Outcome> {
    let p = basis.poset();
    let mut out = Outcome::default();
    let bottom = bottom_ideal(basis);
    out.record(is_ideal(basis, bottom.members())?.holds, || {
        format!("{} is not an ideal", p.braced(bottom.members()))
    });
    out.record(completion.bottom() == Some(bottom), || {
        "the completion's least element is not the bottom singleton".to_string()
    });
    for ideal in completion.ideals() {
        out.record(bottom.is_subset_of(*ideal), || {
            format!("{} is not included in {}", p.braced(bottom.members()), p.braced(ideal.members()))
        });
    }
    Ok(out)
}

/// Ideals are exactly the principal ideals, order-isomorphic to the basis.
pub fn principality(basis: &Basis<'_>, completion: &Completion) -> Result<Outcome> {
    let mut out = Outcome::default();
    let verdict = check_principality(basis, completion)?;
    out.record(verdict.holds, || {
        let w = verdict.witness.as_ref().map(|w| w.describe(basis.poset()));
        format!("principal embedding fails at {}", w.unwrap_or_default())
    });
    Ok(out)
}

/// For every directed family of ideals drawn from `families` (subsets of the
/// completion's indices), the union is an ideal and is the family's lub.
/// Non-directed families must be rejected as such.
pub fn union_of_directed_ideals(
    basis: &Basis<'_>,
    completion: &Completion,
    families: impl IntoIterator<Item = Subset>,
) -> Result<Outcome> {
    let p = basis.poset();
    let mut out = Outcome::default();
    for si in families {
        let members: Vec<Subset> = si.iter().map(|k| completion.ideal(k).members()).collect();
        let directed = is_directed(completion.poset(), si)?.holds;
        let result = check_union_of_directed_ideals(basis, completion, &members);
        let render = || {
            members
                .iter()
                .map(|&m| p.braced(m))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match (directed, result) {
            (true, Ok(union)) => {
                let lub = lub_in_completion(completion, si)?;
                let definitional = is_ideal(basis, union.members())?.holds;
                let expected = union_of(&Family::new(members.iter().copied()));
                out.record(
                    definitional && lub == Some(union) && union.members() == expected,
                    || format!("union of [{}] is not the lub ideal", render()),
                );
            }
            (false, Err(UnionError::PreconditionNotDirected(_))) => {}
            (_, Err(UnionError::Order(e))) => return Err(e),
            (directed, result) => out.record(false, || {
                format!("[{}] directed={directed}: unexpected {result:?}", render())
            }),
        }
    }
    Ok(out)
}

/// Soundness of [`finite_cover`]: the subfamily is drawn from the family,
/// covers the target, has at most one set per target element, and is empty
/// for an empty target.
pub fn cover_soundness(f: &Family, target: Subset) -> Outcome {
    let mut out = Outcome::default();
    match finite_cover(f, target) {
        Ok(w) => {
            let assigned_ok = w
                .assignment
                .iter()
                .all(|(&x, &s)| s.contains(x) && w.subfamily.contains(s));
            out.record(
                w.subfamily.is_subfamily_of(f)
                    && target.is_subset_of(union_of(&w.subfamily))
                    && w.subfamily.len() <= target.len()
                    && (!target.is_empty() || w.subfamily.is_empty())
                    && assigned_ok,
                || format!("unsound cover of {target:?} from {f:?}: {w:?}"),
            );
        }
        Err(e) => out.record(!target.is_subset_of(union_of(f)), || {
            format!("cover of {target:?} failed with {e} though the union covers it")
        }),
    }
    out
}

/// Summary of running every theorem check on one poset with its whole
/// carrier as the candidate basis.
#[derive(Clone, Debug, Default)]
pub struct PosetSweep {
    pub is_basis: bool,
    pub lubs_unique: Outcome,
    pub dc_eqv: Outcome,
    pub directed_inhabited: Outcome,
    pub basis_fast_path: Outcome,
    pub principal_ideals: Outcome,
    pub bottom_ideal: Outcome,
    pub principality: Outcome,
    pub union_of_directed: Outcome,
}

impl PosetSweep {
    pub fn outcomes(&self) -> [(&'static str, &Outcome); 8] {
        [
            ("lubs_unique", &self.lubs_unique),
            ("dc_eqv", &self.dc_eqv),
            ("directed_inhabited", &self.directed_inhabited),
            ("basis_fast_path", &self.basis_fast_path),
            ("pr_idl_is_idl", &self.principal_ideals),
            ("bot_singleton_is_bot_ideal", &self.bottom_ideal),
            ("principality", &self.principality),
            ("union_of_directed_ideals", &self.union_of_directed),
        ]
    }
}

/// Runs every check exhaustively on `p` (all subsets, all families).
pub fn sweep(p: &Poset) -> Result<PosetSweep> {
    let carrier = p.carrier();
    let mut out = PosetSweep {
        lubs_unique: lubs_unique(p, carrier, carrier.submasks())?,
        dc_eqv: dc_eqv(p, carrier, carrier.submasks())?,
        directed_inhabited: directed_inhabited(p, carrier.submasks())?,
        ..PosetSweep::default()
    };
    let report = check_finitary_basis(p, carrier)?;
    let fast = check_finitary_basis_fast(p, carrier)?;
    out.basis_fast_path.record(report.is_basis == fast, || {
        format!("exhaustive and pairwise basis checks disagree on {p:?}")
    });
    out.is_basis = report.is_basis;
    if !report.is_basis {
        return Ok(out);
    }
    let basis = Basis::new(p, carrier)?;
    let completion = build_completion(&basis)?;
    debug_assert_eq!(enumerate_ideals(&basis)?.len(), completion.len());
    out.principal_ideals = principal_ideals_are_ideals(&basis)?;
    out.bottom_ideal = bottom_singleton_is_bottom_ideal(&basis, &completion)?;
    out.principality = principality(&basis, &completion)?;
    out.union_of_directed =
        union_of_directed_ideals(&basis, &completion, completion.poset().carrier().submasks())?;
    Ok(out)
}
