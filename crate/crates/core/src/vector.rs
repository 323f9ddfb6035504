//! Fixed-dimension points of `{0,1}^n` and `F_3^n`.
//!
//! Both vector types pack coordinate `1` into the most significant used bit,
//! so that for equal dimensions the natural integer order of the packed words
//! coincides with the lexicographic order of the row strings.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::structures::{self, Alphabet, Evidence, StructureKind};

/// Largest supported dimension; one machine word per bit plane.
pub const MAX_DIM: usize = 63;

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Common behaviour of the two vector alphabets.
pub trait Point: Copy + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync {
    const ALPHABET: Alphabet;

    fn dim(&self) -> usize;

    /// Row syntax: one character per coordinate, coordinate 1 first.
    fn to_row(&self) -> String;

    /// Parses a row of `s.len()` characters. On failure returns the 0-based
    /// offending column and a message.
    fn parse_row(s: &str) -> std::result::Result<Self, (usize, String)>;

    /// Evidence that `triple` forms a `kind` structure, or `None`.
    fn violation(kind: StructureKind, triple: &[Self; 3]) -> Result<Option<Evidence>>;
}

/// A point of the Boolean cube `{0,1}^n`, equivalently a subset of `{1..n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    // Field order matters for the derived `Ord`: dimension first, then bits.
    n: u8,
    bits: u64,
}

impl BinaryVector {
    /// Builds a vector from a packed word where coordinate `i` (1-based)
    /// lives at bit `n - i`.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_dim(n)?;
        if bits & !low_mask(n) != 0 {
            return Err(Error::Range(format!("bits {bits:#x} do not fit in dimension {n}")));
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_bits(n, 0)
    }

    pub fn ones(n: usize) -> Result<Self> {
        Self::from_bits(n, low_mask(n))
    }

    /// Builds a vector from coordinate values, coordinate 1 first.
    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        check_dim(coords.len())?;
        let mut bits = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if c > 1 {
                return Err(Error::InvalidCoordinate { position: i + 1, value: c });
            }
            bits = (bits << 1) | u64::from(c);
        }
        Ok(Self { n: coords.len() as u8, bits })
    }

    /// Vector with ones exactly at the given 1-based coordinates.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        check_dim(n)?;
        let mut bits = 0u64;
        for &i in support {
            if i == 0 || i > n {
                return Err(Error::Range(format!("coordinate {i} outside 1..={n}")));
            }
            bits |= 1 << (n - i);
        }
        Ok(Self { n: n as u8, bits })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value of 1-based coordinate `i`.
    pub fn coord(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.dim(), "coordinate {i} out of range");
        ((self.bits >> (self.dim() - i)) & 1) as u8
    }

    pub fn coords(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.dim()).map(move |i| self.coord(i))
    }

    /// Number of non-zero coordinates.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of zero coordinates.
    #[inline]
    pub fn zeros(&self) -> u32 {
        self.n as u32 - self.weight()
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() })
        }
    }

    /// Hamming distance, which on the cube is also the squared Euclidean distance.
    pub fn hamming(&self, other: &Self) -> Result<u32> {
        self.same_dim(other)?;
        Ok((self.bits ^ other.bits).count_ones())
    }

    /// Size of the intersection of the two underlying sets.
    pub fn inner(&self, other: &Self) -> Result<u32> {
        self.same_dim(other)?;
        Ok((self.bits & other.bits).count_ones())
    }

    /// Coordinate-wise sum mod 2.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(Self { n: self.n, bits: self.bits ^ other.bits })
    }

    /// Every point of `{0,1}^n` in lexicographic order.
    pub fn all(n: usize) -> Result<impl DoubleEndedIterator<Item = Self>> {
        check_dim(n)?;
        if n > 40 {
            return Err(Error::Range(format!("refusing to enumerate 2^{n} points")));
        }
        Ok((0..(1u64 << n)).map(move |bits| Self { n: n as u8, bits }))
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_row())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b\"{}\"", self.to_row())
    }
}

impl Point for BinaryVector {
    const ALPHABET: Alphabet = Alphabet::Binary;

    fn dim(&self) -> usize {
        self.n as usize
    }

    fn to_row(&self) -> String {
        self.coords().map(|c| char::from(b'0' + c)).collect()
    }

    fn parse_row(s: &str) -> std::result::Result<Self, (usize, String)> {
        if s.chars().count() > MAX_DIM {
            return Err((0, format!("row longer than {MAX_DIM}")));
        }
        let mut bits = 0u64;
        for (col, ch) in s.chars().enumerate() {
            let c = match ch {
                '0' => 0,
                '1' => 1,
                other => return Err((col, format!("character {other:?} is not binary"))),
            };
            bits = (bits << 1) | c;
        }
        Ok(Self { n: s.chars().count() as u8, bits })
    }

    fn violation(kind: StructureKind, triple: &[Self; 3]) -> Result<Option<Evidence>> {
        structures::binary_evidence(kind, triple)
    }
}

/// A point of `F_3^n`, stored as two bit planes (coordinates equal to 1,
/// coordinates equal to 2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TernaryVector {
    n: u8,
    ones: u64,
    twos: u64,
}

impl TernaryVector {
    pub fn from_coords(coords: &[u8]) -> Result<Self> {
        check_dim(coords.len())?;
        let (mut ones, mut twos) = (0u64, 0u64);
        for (i, &c) in coords.iter().enumerate() {
            if c > 2 {
                return Err(Error::InvalidCoordinate { position: i + 1, value: c });
            }
            ones = (ones << 1) | u64::from(c == 1);
            twos = (twos << 1) | u64::from(c == 2);
        }
        Ok(Self { n: coords.len() as u8, ones, twos })
    }

    /// Builds a vector from its two bit planes.
    pub fn from_planes(n: usize, ones: u64, twos: u64) -> Result<Self> {
        check_dim(n)?;
        if (ones | twos) & !low_mask(n) != 0 || ones & twos != 0 {
            return Err(Error::Range("inconsistent ternary bit planes".into()));
        }
        Ok(Self { n: n as u8, ones, twos })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_planes(n, 0, 0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// Mask of coordinates equal to 1.
    #[inline]
    pub fn ones_plane(&self) -> u64 {
        self.ones
    }

    /// Mask of coordinates equal to 2.
    #[inline]
    pub fn twos_plane(&self) -> u64 {
        self.twos
    }

    /// Mask of coordinates equal to 0.
    #[inline]
    pub fn zeros_plane(&self) -> u64 {
        !(self.ones | self.twos) & low_mask(self.dim())
    }

    pub fn coord(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.dim(), "coordinate {i} out of range");
        let shift = self.dim() - i;
        ((self.ones >> shift) & 1) as u8 + 2 * ((self.twos >> shift) & 1) as u8
    }

    pub fn coords(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.dim()).map(move |i| self.coord(i))
    }

    /// Every point of `F_3^n` in lexicographic order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Self>> {
        check_dim(n)?;
        if n > 25 {
            return Err(Error::Range(format!("refusing to enumerate 3^{n} points")));
        }
        let total = 3u64.pow(n as u32);
        Ok((0..total).map(move |mut idx| {
            let (mut ones, mut twos) = (0u64, 0u64);
            // The last coordinate is the least significant base-3 digit.
            for bit in 0..n {
                match idx % 3 {
                    1 => ones |= 1 << bit,
                    2 => twos |= 1 << bit,
                    _ => {}
                }
                idx /= 3;
            }
            Self { n: n as u8, ones, twos }
        }))
    }
}

impl Ord for TernaryVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            let diff = (self.ones ^ other.ones) | (self.twos ^ other.twos);
            if diff == 0 {
                return Ordering::Equal;
            }
            let top = 63 - diff.leading_zeros();
            let trit = |v: &Self| ((v.ones >> top) & 1) + 2 * ((v.twos >> top) & 1);
            trit(self).cmp(&trit(other))
        })
    }
}

impl PartialOrd for TernaryVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_row())
    }
}

impl fmt::Debug for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t\"{}\"", self.to_row())
    }
}

impl Point for TernaryVector {
    const ALPHABET: Alphabet = Alphabet::Ternary;

    fn dim(&self) -> usize {
        self.n as usize
    }

    fn to_row(&self) -> String {
        self.coords().map(|c| char::from(b'0' + c)).collect()
    }

    fn parse_row(s: &str) -> std::result::Result<Self, (usize, String)> {
        let mut coords = Vec::with_capacity(s.len());
        for (col, ch) in s.chars().enumerate() {
            match ch {
                '0' | '1' | '2' => coords.push(ch as u8 - b'0'),
                other => return Err((col, format!("character {other:?} is not ternary"))),
            }
        }
        Self::from_coords(&coords).map_err(|e| (0, e.to_string()))
    }

    fn violation(kind: StructureKind, triple: &[Self; 3]) -> Result<Option<Evidence>> {
        structures::ternary_evidence(kind, triple)
    }
}
