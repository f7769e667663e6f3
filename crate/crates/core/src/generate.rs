//! Poset generators for the exhaustive and randomized oracle suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::order::{reflexive_transitive_closure, Element, Poset};
use crate::subset::Subset;

/// Seeded generator used by every randomized suite.
pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Names whose lexicographic order matches index order: `a`..`z`, then
/// zero-padded `e00`, `e01`, ... for larger carriers.
pub fn labels(n: usize) -> Vec<Element> {
    (0..n)
        .map(|i| {
            let name = if n <= 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("e{i:02}")
            };
            Element::new(name).expect("generated labels are tokens")
        })
        .collect()
}

/// Every partial order on `n` labeled elements.
///
/// Built one element at a time: the new element `k` is placed with a
/// down-closed set `D` below it and an up-closed set `U` above it, disjoint,
/// with every member of `D` below every member of `U`. Each order on
/// `0..=k` arises from exactly one order on `0..k` this way.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let names = labels(n);
    all_up_sets(n)
        .into_iter()
        .map(|up| Poset::from_up_sets(names.clone(), up))
        .collect()
}

fn all_up_sets(n: usize) -> Vec<Vec<Subset>> {
    let mut layer: Vec<Vec<Subset>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        let previous = Subset::full(k);
        for up in &layer {
            let down = transpose(up);
            for below in previous.submasks() {
                let down_closed = below.iter().all(|d| down[d].is_subset_of(below));
                if !down_closed {
                    continue;
                }
                for above in previous.difference(below).submasks() {
                    let up_closed = above.iter().all(|u| up[u].is_subset_of(above));
                    let linked = below.iter().all(|d| above.is_subset_of(up[d]));
                    if up_closed && linked {
                        let mut extended: Vec<Subset> = up
                            .iter()
                            .enumerate()
                            .map(|(d, row)| if below.contains(d) { row.with(k) } else { *row })
                            .collect();
                        extended.push(above.with(k));
                        next.push(extended);
                    }
                }
            }
        }
        layer = next;
    }
    layer
}

fn transpose(up: &[Subset]) -> Vec<Subset> {
    let mut down = vec![Subset::EMPTY; up.len()];
    for (i, row) in up.iter().enumerate() {
        for j in *row {
            down[j] = down[j].with(i);
        }
    }
    down
}

/// A random poset on `n` elements: each edge of the upper-triangular
/// adjacency is drawn with probability 1/2, the vertices are relabeled by a
/// random permutation, and the reflexive-transitive closure is taken.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut up = vec![Subset::EMPTY; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                up[perm[i]] = up[perm[i]].with(perm[j]);
            }
        }
    }
    reflexive_transitive_closure(&mut up);
    Poset::from_up_sets(labels(n), up)
}

/// Each member of `universe` kept independently with probability 1/2.
pub fn random_subset<R: Rng>(rng: &mut R, universe: Subset) -> Subset {
    universe.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::PosetBuilder;

    #[test]
    fn labeled_poset_counts() {
        // OEIS A001035.
        let counts: Vec<usize> = (0..=5).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, [1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn generated_posets_are_valid_and_distinct() {
        let posets = all_posets(4);
        for p in &posets {
            let rebuilt = PosetBuilder::new()
                .build(
                    p.elements().to_vec(),
                    p.pairs().map(|(x, y)| (p.element(x).clone(), p.element(y).clone())),
                )
                .unwrap();
            assert_eq!(&rebuilt, p);
        }
        let mut relations: Vec<Vec<(usize, usize)>> = posets.iter().map(|p| p.pairs().collect()).collect();
        relations.sort();
        relations.dedup();
        assert_eq!(relations.len(), 219);
    }

    #[test]
    fn random_posets_are_reproducible_and_valid() {
        let a: Vec<Poset> = (0..20).map({
            let mut r = rng(7);
            move |_| random_poset(&mut r, 8)
        }).collect();
        let b: Vec<Poset> = (0..20).map({
            let mut r = rng(7);
            move |_| random_poset(&mut r, 8)
        }).collect();
        assert_eq!(a, b);
        for p in &a {
            PosetBuilder::new()
                .build(
                    p.elements().to_vec(),
                    p.pairs().map(|(x, y)| (p.element(x).clone(), p.element(y).clone())),
                )
                .unwrap();
        }
    }
}
