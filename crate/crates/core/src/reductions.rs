//! Constructive maps between the structures: XOR translation on the cube,
//! slicing by weight, the projection `F_3^n -> {0,1}^n` sending `2` to `0`
//! and its full preimage, and the dense-translate search behind the
//! averaging argument.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::family::{BinaryFamily, TernaryFamily};
use crate::vector::{BinaryVector, TernaryVector};

/// Default cap on the number of vectors [`lift`] may produce.
pub const DEFAULT_LIFT_CAP: usize = 1 << 20;

/// Default cap on the dimension for the exhaustive translate scan.
pub const DEFAULT_TRANSLATE_CAP: usize = 20;

/// Image of `family` under `y -> x + y (mod 2)`.
pub fn xor_translate(x: &BinaryVector, family: &BinaryFamily) -> Result<BinaryFamily> {
    if x.dim() != family.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: family.dim() });
    }
    // Translation is a bijection, so no duplicates can arise.
    BinaryFamily::from_members(family.dim(), family.iter().map(|y| x.xor(y).unwrap()))
}

/// A family split by weight.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceDecomposition {
    /// `slices[w]` holds the members of weight `w`, in input order.
    pub slices: Vec<BinaryFamily>,
    /// Weight of a largest slice; the smallest such weight on ties.
    pub best_weight: usize,
    /// `|A| / (n + 1)`, which the best slice always meets.
    pub pigeonhole_bound: Ratio<u64>,
}

impl SliceDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.slices.iter().map(|s| s.len()).collect()
    }

    pub fn best(&self) -> &BinaryFamily {
        &self.slices[self.best_weight]
    }
}

pub fn weight_slices(family: &BinaryFamily) -> SliceDecomposition {
    let n = family.dim();
    let mut slices: Vec<BinaryFamily> = (0..=n).map(|_| BinaryFamily::new(n).unwrap()).collect();
    for v in family {
        slices[v.weight() as usize].insert(*v).unwrap();
    }
    let best_weight = (0..=n).max_by(|&a, &b| slices[a].len().cmp(&slices[b].len()).then(b.cmp(&a))).unwrap_or(0);
    SliceDecomposition { slices, best_weight, pigeonhole_bound: Ratio::new(family.len() as u64, n as u64 + 1) }
}

/// Coordinate-wise image under `0 -> 0, 1 -> 1, 2 -> 0`, duplicates merged
/// (first occurrence keeps its position).
pub fn project(family: &TernaryFamily) -> BinaryFamily {
    let n = family.dim();
    BinaryFamily::from_members_dedup(n, family.iter().map(|t| BinaryVector::from_bits(n, t.ones_plane()).unwrap()))
        .unwrap()
}

/// Number of vectors [`lift`] would produce: `sum over a of 2^zeros(a)`.
pub fn lift_size(family: &BinaryFamily) -> u128 {
    family.iter().map(|a| 1u128 << a.zeros()).sum()
}

/// Full preimage under the projection, with the default size cap.
pub fn lift(family: &BinaryFamily) -> Result<TernaryFamily> {
    lift_with_cap(family, DEFAULT_LIFT_CAP)
}

/// Full preimage: every zero coordinate of every member independently
/// becomes 0 or 2. Members are expanded in input order, and each member's
/// preimages in lexicographic order.
pub fn lift_with_cap(family: &BinaryFamily, cap: usize) -> Result<TernaryFamily> {
    let size = lift_size(family);
    if size > cap as u128 {
        return Err(Error::LiftTooLarge { size, cap });
    }
    let n = family.dim();
    let mut out = Vec::with_capacity(size as usize);
    for a in family {
        let zeros = !a.bits() & BinaryVector::ones(n).unwrap().bits();
        // Ascending submask enumeration of the zero positions.
        let mut twos = 0u64;
        loop {
            out.push(TernaryVector::from_planes(n, a.bits(), twos).unwrap());
            twos = twos.wrapping_sub(zeros) & zeros;
            if twos == 0 {
                break;
            }
        }
    }
    // Preimages of distinct vectors are disjoint.
    TernaryFamily::from_members(n, out)
}

/// `|f_x(A) ∩ B|` for every translate `x`, indexed by `x.bits()`.
pub fn translate_overlaps(a: &BinaryFamily, b: &BinaryFamily, cap: usize) -> Result<Vec<u64>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.dim() });
    }
    if n > cap {
        return Err(Error::TranslateCapExceeded { n, cap });
    }
    // f_x(a) = b exactly when x = a + b, so each pair hits one translate.
    let mut counts = vec![0u64; 1usize << n];
    for u in a {
        for v in b {
            counts[(u.bits() ^ v.bits()) as usize] += 1;
        }
    }
    Ok(counts)
}

/// A translate maximizing the overlap with `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseTranslate {
    pub x: BinaryVector,
    /// `f_x(A) ∩ B`, canonically ordered.
    pub intersection: BinaryFamily,
}

pub fn find_dense_translate(a: &BinaryFamily, b: &BinaryFamily) -> Result<DenseTranslate> {
    find_dense_translate_with_cap(a, b, DEFAULT_TRANSLATE_CAP)
}

/// Exhaustive over all `2^n` translates; ties go to the lexicographically
/// smallest `x`.
pub fn find_dense_translate_with_cap(a: &BinaryFamily, b: &BinaryFamily, cap: usize) -> Result<DenseTranslate> {
    let counts = translate_overlaps(a, b, cap)?;
    let n = a.dim();
    let mut best = 0usize;
    for (x, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = x;
        }
    }
    let x = BinaryVector::from_bits(n, best as u64)?;
    let image = xor_translate(&x, a)?;
    let intersection = b.filter(|v| image.contains(v)).canonical();
    debug_assert_eq!(intersection.len() as u64, counts[best]);
    Ok(DenseTranslate { x, intersection })
}
