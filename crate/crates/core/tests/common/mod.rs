//! Brute-force reference implementations over boolean relation matrices.
//!
//! Nothing here calls into the library's order, basis or ideal code; every
//! predicate is a literal loop over the defining quantifiers.

#![allow(dead_code)]

use finbasis::{validate_poset, Element, Poset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naive {
    pub n: usize,
    pub le: Vec<Vec<bool>>,
}

pub fn label(i: usize) -> String {
    char::from(b'a' + i as u8).to_string()
}

pub fn members(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn has(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

/// Every submask of `mask`, by counting through all masks below `1 << n`.
pub fn submasks(n: usize, mask: u64) -> Vec<u64> {
    (0..1u64 << n).filter(|m| m & !mask == 0).collect()
}

/// Every partial order on `n` labeled points: each unordered pair is
/// below, above or incomparable, and only transitive assignments survive.
pub fn all_orders(n: usize) -> Vec<Naive> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => le[i][j] = true,
                2 => le[j][i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| !(le[x][y] && le[y][z]) || le[x][z]))
        });
        if transitive {
            out.push(Naive { n, le });
        }
    }
    out
}

impl Naive {
    pub fn from_poset(p: &Poset) -> Self {
        let n = p.len();
        let le = (0..n).map(|x| (0..n).map(|y| p.leq(x, y)).collect()).collect();
        Naive { n, le }
    }

    /// Builds the library poset through strict validation.
    pub fn to_poset(&self) -> Poset {
        let el = |i: usize| Element::new(label(i)).unwrap();
        let mut pairs = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.le[x][y] {
                    pairs.push((el(x), el(y)));
                }
            }
        }
        let p = validate_poset((0..self.n).map(el), pairs).unwrap();
        for i in 0..self.n {
            assert_eq!(p.element(i).as_str(), label(i));
        }
        p
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn is_ub(&self, universe: u64, s: u64, b: usize) -> bool {
        has(universe, b) && members(self.n, s).into_iter().all(|x| self.le[x][b])
    }

    /// All elements satisfying the lub predicate.
    pub fn lubs(&self, universe: u64, s: u64) -> Vec<usize> {
        let ubs: Vec<usize> = (0..self.n).filter(|&b| self.is_ub(universe, s, b)).collect();
        ubs.iter()
            .copied()
            .filter(|&b| ubs.iter().all(|&c| self.le[b][c]))
            .collect()
    }

    pub fn is_basis(&self, b: u64) -> bool {
        b != 0
            && submasks(self.n, b).into_iter().all(|s| {
                let bounded = (0..self.n).any(|u| self.is_ub(b, s, u));
                !bounded || !self.lubs(b, s).is_empty()
            })
    }

    pub fn bottom(&self, b: u64) -> Option<usize> {
        members(self.n, b)
            .into_iter()
            .find(|&x| members(self.n, b).into_iter().all(|y| self.le[x][y]))
    }

    pub fn lower(&self, b: u64, x: usize) -> u64 {
        members(self.n, b)
            .into_iter()
            .filter(|&y| self.le[y][x])
            .fold(0, |m, y| m | 1 << y)
    }

    pub fn is_downward_closed(&self, b: u64, i: u64) -> bool {
        members(self.n, i).into_iter().all(|e| {
            members(self.n, b)
                .into_iter()
                .all(|x| !self.le[x][e] || has(i, x))
        })
    }

    /// Every subset of `s` (the empty one included) has an upper bound in `s`.
    pub fn is_directed(&self, s: u64) -> bool {
        submasks(self.n, s)
            .into_iter()
            .all(|f| (0..self.n).any(|u| self.is_ub(s, f, u)))
    }

    pub fn is_ideal(&self, b: u64, i: u64) -> bool {
        i & !b == 0 && self.is_downward_closed(b, i) && self.is_directed(i)
    }

    pub fn ideals(&self, b: u64) -> Vec<u64> {
        submasks(self.n, b)
            .into_iter()
            .filter(|&i| self.is_ideal(b, i))
            .collect()
    }
}

/// Directedness of a family of sets under inclusion.
pub fn family_directed(family: &[u64]) -> bool {
    let k = family.len();
    (0..1u64 << k).all(|pick| {
        let chosen: Vec<u64> = (0..k).filter(|&j| has(pick, j)).map(|j| family[j]).collect();
        family
            .iter()
            .any(|&u| chosen.iter().all(|&c| c & !u == 0))
    })
}
