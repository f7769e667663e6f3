//! Finitary bases over finite posets: basis recognition, ideals, ideal
//! completions, finite covers of unions, and exhaustive theorem oracles.
//!
//! ```
//! use finbasis::{dsl, Basis, build_completion};
//!
//! let spec = dsl::parse_spec("basis Bool\nelements bot tt ff\norder bot <= tt\norder bot <= ff\n").unwrap();
//! let poset = spec.poset(false, 24).unwrap();
//! let basis = Basis::of_poset(&poset).unwrap();
//! let completion = build_completion(&basis).unwrap();
//! assert_eq!(completion.len(), 3);
//! ```

pub mod basis;
pub mod check;
pub mod cover;
pub mod dot;
pub mod dsl;
pub mod error;
pub mod generate;
pub mod ideal;
pub mod oracle;
pub mod order;
pub mod subset;
pub mod verdict;

pub use basis::{bottom_of, check_finitary_basis, Basis, BasisReport, FailureReason};
pub use cover::{
    check_union_of_directed_ideals, finite_cover, lub_in_completion, minimum_cover, union_of,
    CoverWitness, Family, NotCovered, UnionError,
};
pub use error::{Error, Result};
pub use ideal::{
    bottom_ideal, build_completion, enumerate_ideals, is_directed, is_downward_closed_alt,
    is_downward_closed_orig, is_ideal, principal_ideal, Completion, Ideal,
};
pub use order::{validate_poset, Element, Poset, PosetBuilder};
pub use subset::Subset;
pub use verdict::{Verdict, Witness};
