//! Finite posets, upper bounds, least upper bounds and lower sets.
//!
//! A [`Poset`] keeps its carrier sorted by element name, so element index
//! order is the canonical order used for every tie-break and every listing.
//! Subsets passed to the operations here are bitmasks over those indices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_WIDTH};

/// Default cap on carrier size. Ideal enumeration is exponential in it.
pub const DEFAULT_MAX_CARRIER: usize = 24;

/// A named point of the universe.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(String);

impl Element {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_token(&name) {
            Ok(Element(name))
        } else {
            Err(Error::InvalidElement(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Element::new(s)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// A finite partial order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<Element>,
    // up[i] = { j | i <= j }, down[i] = { j | j <= i }
    up: Vec<Subset>,
    down: Vec<Subset>,
}

/// Builds a [`Poset`] from a carrier and an order relation.
///
/// In strict mode the relation must already be a partial order. With
/// `closure(true)` the relation is treated as a generating set and its
/// reflexive-transitive closure is checked instead, so only antisymmetry can
/// fail (a cycle).
#[derive(Clone, Debug)]
pub struct PosetBuilder {
    closure: bool,
    max_carrier: usize,
}

impl Default for PosetBuilder {
    fn default() -> Self {
        PosetBuilder {
            closure: false,
            max_carrier: DEFAULT_MAX_CARRIER,
        }
    }
}

impl PosetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn closure(mut self, on: bool) -> Self {
        self.closure = on;
        self
    }

    /// Values above [`MAX_WIDTH`] are clamped to it.
    pub fn max_carrier(mut self, cap: usize) -> Self {
        self.max_carrier = cap.min(MAX_WIDTH);
        self
    }

    pub fn build<C, R>(&self, carrier: C, leq: R) -> Result<Poset>
    where
        C: IntoIterator<Item = Element>,
        R: IntoIterator<Item = (Element, Element)>,
    {
        let elements: Vec<Element> = carrier.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if elements.len() > self.max_carrier {
            return Err(Error::CarrierTooLarge {
                size: elements.len(),
                cap: self.max_carrier,
            });
        }
        let n = elements.len();
        let index = |e: &Element| elements.binary_search(e).ok();

        let mut pairs: Vec<(Element, Element)> = leq.into_iter().collect();
        pairs.sort();
        let mut up = vec![Subset::EMPTY; n];
        for (x, y) in &pairs {
            let i = index(x).ok_or_else(|| Error::DanglingElement(x.to_string()))?;
            let j = index(y).ok_or_else(|| Error::DanglingElement(y.to_string()))?;
            up[i] = up[i].with(j);
        }

        if self.closure {
            reflexive_transitive_closure(&mut up);
        }
        let name = |i: usize| elements[i].to_string();

        if !self.closure {
            if let Some(x) = (0..n).find(|&x| !up[x].contains(x)) {
                return Err(Error::NotReflexive(name(x)));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if up[x].contains(y) && up[y].contains(x) {
                    return Err(Error::NotAntisymmetric(name(x), name(y)));
                }
            }
        }
        if !self.closure {
            for x in 0..n {
                for y in up[x] {
                    if let Some(z) = up[y].difference(up[x]).first() {
                        return Err(Error::NotTransitive(name(x), name(y), name(z)));
                    }
                }
            }
        }
        Ok(Poset::from_up_sets(elements, up))
    }
}

/// Warshall's algorithm over bitset rows, plus the diagonal.
pub(crate) fn reflexive_transitive_closure(up: &mut [Subset]) {
    let n = up.len();
    for (i, row) in up.iter_mut().enumerate() {
        *row = row.with(i);
    }
    for k in 0..n {
        let row_k = up[k];
        for row in up.iter_mut() {
            if row.contains(k) {
                *row = row.union(row_k);
            }
        }
    }
}

/// Validates a strict (already closed) relation with the default carrier cap.
pub fn validate_poset<C, R>(carrier: C, leq: R) -> Result<Poset>
where
    C: IntoIterator<Item = Element>,
    R: IntoIterator<Item = (Element, Element)>,
{
    PosetBuilder::new().build(carrier, leq)
}

impl Poset {
    /// `elements` must be sorted and `up` a valid order; no checks are made.
    pub(crate) fn from_up_sets(elements: Vec<Element>, up: Vec<Subset>) -> Self {
        let n = elements.len();
        let mut down = vec![Subset::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in *row {
                down[j] = down[j].with(i);
            }
        }
        Poset { elements, up, down }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_str().cmp(name)).ok()
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{ y | x <= y }`
    pub fn up_set(&self, x: usize) -> Subset {
        self.up[x]
    }

    /// `{ y | y <= x }`
    pub fn down_set(&self, x: usize) -> Subset {
        self.down[x]
    }

    /// Every pair of the relation, in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| self.up[x].iter().map(move |y| (x, y)))
    }

    /// The covering relation (transitive reduction), in canonical order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let above = self.up[x].without(x);
            for y in above {
                let between = above.intersection(self.down[y].without(y));
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().try_fold(Subset::EMPTY, |acc, name| {
            let name = name.as_ref();
            self.index_of(name)
                .map(|i| acc.with(i))
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        })
    }

    /// Member names in canonical order.
    pub fn names(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.name(i)).collect()
    }

    pub(crate) fn name(&self, i: usize) -> String {
        self.elements
            .get(i)
            .map_or_else(|| format!("#{i}"), Element::to_string)
    }

    /// `{a,b}` rendering of a subset.
    pub fn braced(&self, s: Subset) -> String {
        format!("{{{}}}", self.names(s).join(","))
    }

    pub(crate) fn check_within_carrier(&self, s: Subset, err: fn(String) -> Error) -> Result<()> {
        match s.difference(self.carrier()).first() {
            Some(i) => Err(err(self.name(i))),
            None => Ok(()),
        }
    }

    fn check_universe(&self, universe: Subset, s: Subset) -> Result<()> {
        self.check_within_carrier(universe, Error::SubsetEscapesCarrier)?;
        match s.difference(universe).first() {
            Some(i) => Err(Error::SubsetEscapesUniverse(self.name(i))),
            None => Ok(()),
        }
    }

    pub fn is_upper_bound_in(&self, universe: Subset, s: Subset, b: usize) -> bool {
        universe.contains(b) && s.is_subset_of(self.down[b])
    }

    /// The `LubIn` predicate: `b` bounds `s` within `universe` and lies below
    /// every other such bound.
    pub fn is_lub_in(&self, universe: Subset, s: Subset, b: usize) -> bool {
        self.is_upper_bound_in(universe, s, b)
            && universe
                .iter()
                .filter(|&c| self.is_upper_bound_in(universe, s, c))
                .all(|c| self.leq(b, c))
    }

    /// Every member of `universe` above all of `s`. The empty set is bounded
    /// by the whole universe.
    pub fn upper_bounds(&self, universe: Subset, s: Subset) -> Result<Subset> {
        self.check_universe(universe, s)?;
        Ok(self.upper_bounds_unchecked(universe, s))
    }

    pub(crate) fn upper_bounds_unchecked(&self, universe: Subset, s: Subset) -> Subset {
        s.iter().fold(universe, |acc, x| acc.intersection(self.up[x]))
    }

    /// The least upper bound of `s` in `universe`, if one exists.
    ///
    /// # Panics
    /// If two distinct least upper bounds are found, which antisymmetry rules
    /// out for any validated poset.
    pub fn lub_in(&self, universe: Subset, s: Subset) -> Result<Option<usize>> {
        self.check_universe(universe, s)?;
        Ok(self.lub_in_unchecked(universe, s))
    }

    pub(crate) fn lub_in_unchecked(&self, universe: Subset, s: Subset) -> Option<usize> {
        let bounds = self.upper_bounds_unchecked(universe, s);
        let mut least = bounds.iter().filter(|&b| bounds.is_subset_of(self.up[b]));
        let lub = least.next();
        if let Some(other) = least.next() {
            panic!(
                "MultipleLubs: {} and {} are both least upper bounds of {}",
                self.name(lub.unwrap_or(other)),
                self.name(other),
                self.braced(s)
            );
        }
        lub
    }

    /// `{ x in universe | x <= b }`
    pub fn lower_set(&self, universe: Subset, b: usize) -> Result<Subset> {
        self.check_within_carrier(universe, Error::SubsetEscapesCarrier)?;
        if !universe.contains(b) {
            return Err(Error::ElementNotInUniverse(self.name(b)));
        }
        Ok(self.down[b].intersection(universe))
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.name(x), self.name(y)))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("covers", &covers)
            .finish()
    }
}
