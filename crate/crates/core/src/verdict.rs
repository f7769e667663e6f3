use crate::order::Poset;
use crate::subset::Subset;

/// Outcome of a subset predicate, with a replayable witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Element(usize),
    Pair(usize, usize),
    Subset(Subset),
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

impl Witness {
    pub fn describe(&self, p: &Poset) -> String {
        match *self {
            Witness::Element(x) => p.name(x),
            Witness::Pair(x, y) => format!("({}, {})", p.name(x), p.name(y)),
            Witness::Subset(s) => p.braced(s),
        }
    }
}
