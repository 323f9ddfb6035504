//! Brute-force oracles shared by the integration suites. Nothing here goes
//! through `build_instance` or the branch-and-bound solver.

#![allow(dead_code)]

use std::collections::HashSet;
use std::ops::RangeInclusive;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use weak_delta::structures::{is_sunflower_triple, StructureKind};
use weak_delta::{BinaryFamily, BinaryVector, Family, Point, TernaryFamily, TernaryVector};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn violates<V: Point>(kind: StructureKind, t: [V; 3]) -> bool {
    matches!(V::violation(kind, &t), Ok(Some(_)))
}

/// Size of the largest `kind`-free subset of `ground`, by enumerating all
/// `2^|ground|` subsets with a top-bit recurrence. `|ground| <= 24`.
pub fn naive_max_free<V: Point>(ground: &[V], kind: StructureKind) -> usize {
    let m = ground.len();
    assert!(m <= 24);
    let mut by_top: Vec<Vec<u32>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if kind.allows_repeats()
                && (violates(kind, [ground[i], ground[i], ground[j]])
                    || violates(kind, [ground[i], ground[j], ground[j]]))
            {
                by_top[j].push((1 << i) | (1 << j));
            }
            for l in j + 1..m {
                if violates(kind, [ground[i], ground[j], ground[l]]) {
                    by_top[l].push((1 << i) | (1 << j) | (1 << l));
                }
            }
        }
    }
    let mut free = vec![false; 1 << m];
    free[0] = true;
    let mut best = 0;
    for s in 1u32..(1 << m) {
        let top = 31 - s.leading_zeros() as usize;
        let ok = free[(s & !(1 << top)) as usize] && by_top[top].iter().all(|&c| c & s != c);
        free[s as usize] = ok;
        if ok {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

pub fn cube_points(n: usize) -> Vec<BinaryVector> {
    BinaryVector::all(n).unwrap().collect()
}

pub fn ternary_points(n: usize) -> Vec<TernaryVector> {
    TernaryVector::all(n).unwrap().collect()
}

/// A uniformly random subset of `{0,1}^n` with size drawn from `sizes`.
pub fn random_binary_family(rng: &mut StdRng, n: usize, sizes: RangeInclusive<usize>) -> BinaryFamily {
    let mut pts = cube_points(n);
    pts.shuffle(rng);
    let size = rng.gen_range(*sizes.start()..=(*sizes.end()).min(pts.len()));
    BinaryFamily::from_members(n, pts.into_iter().take(size)).unwrap()
}

pub fn random_ternary_family(rng: &mut StdRng, n: usize, sizes: RangeInclusive<usize>) -> TernaryFamily {
    let mut pts = ternary_points(n);
    pts.shuffle(rng);
    let size = rng.gen_range(*sizes.start()..=(*sizes.end()).min(pts.len()));
    TernaryFamily::from_members(n, pts.into_iter().take(size)).unwrap()
}

/// A random sunflower-free family: shuffle the cube and add each point
/// whose addition creates no sunflower, up to a random target size.
pub fn random_sunflower_free(rng: &mut StdRng, n: usize) -> BinaryFamily {
    let mut pts = cube_points(n);
    pts.shuffle(rng);
    let target = rng.gen_range(1..=pts.len());
    let mut members: Vec<BinaryVector> = Vec::new();
    for v in pts {
        if members.len() >= target {
            break;
        }
        let sf = |a: &BinaryVector, b: &BinaryVector, c: &BinaryVector| is_sunflower_triple(a, b, c).unwrap();
        let clash = members.iter().any(|a| sf(&v, &v, a) || sf(&v, a, a) || members.iter().any(|b| sf(&v, a, b)));
        if !clash {
            members.push(v);
        }
    }
    BinaryFamily::from_members(n, members).unwrap()
}

/// Capset check by pair lookup: `x, y` distinct and `-(x + y)` present.
pub fn has_line_by_lookup(family: &TernaryFamily) -> bool {
    let set: HashSet<Vec<u8>> = family.iter().map(|v| v.coords().collect()).collect();
    let m = family.members();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let third: Vec<u8> = m[i].coords().zip(m[j].coords()).map(|(a, b)| (6 - a - b) % 3).collect();
            if set.contains(&third) {
                return true;
            }
        }
    }
    false
}

/// Explicit `sum over x of |f_x(A) ∩ B|`, translating `A` point by point.
pub fn explicit_overlap_sum(a: &BinaryFamily, b: &BinaryFamily) -> (u64, Vec<u64>) {
    let n = a.dim();
    let mut per_x = Vec::with_capacity(1 << n);
    for x in BinaryVector::all(n).unwrap() {
        let hits = a.iter().filter(|y| b.contains(&x.xor(y).unwrap())).count() as u64;
        per_x.push(hits);
    }
    (per_x.iter().sum(), per_x)
}

pub fn family_of<V: Point>(n: usize, pts: &[V]) -> Family<V> {
    Family::from_members(n, pts.iter().copied()).unwrap()
}
