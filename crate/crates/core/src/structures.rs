//! Forbidden configurations: weak Δ-systems, equilateral triangles,
//! sunflowers and capset lines, at the level of single triples and of whole
//! families.
//!
//! Repetition rules differ by kind. A sunflower triple may repeat one of its
//! members (`x, x, z` is a sunflower whenever `x ⊂ z`); the other three kinds
//! only ever consider pairwise distinct triples.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::vector::{BinaryVector, Point, TernaryVector};

/// The alphabet a family is written over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Binary,
    Ternary,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Binary => "binary",
            Alphabet::Ternary => "ternary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    /// Three sets with equal pairwise intersection sizes.
    WeakDelta,
    /// Three distinct points with equal pairwise Hamming distances.
    Equilateral,
    /// Not-all-equal triple whose coordinate multisets are `{0,0,0}`,
    /// `{1,1,1}` or `{0,0,1}`.
    Sunflower,
    /// Not-all-equal triple of `F_3^n` summing to zero.
    CapsetLine,
}

impl StructureKind {
    pub const ALL: [StructureKind; 4] =
        [StructureKind::WeakDelta, StructureKind::Equilateral, StructureKind::Sunflower, StructureKind::CapsetLine];

    pub fn alphabet(self) -> Alphabet {
        match self {
            StructureKind::CapsetLine => Alphabet::Ternary,
            _ => Alphabet::Binary,
        }
    }

    /// Whether a violating triple may contain a repeated member.
    pub fn allows_repeats(self) -> bool {
        self == StructureKind::Sunflower
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::WeakDelta => "weak-delta",
            StructureKind::Equilateral => "equilateral",
            StructureKind::Sunflower => "sunflower",
            StructureKind::CapsetLine => "capset-line",
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StructureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Range(format!("unknown structure kind {s:?}")))
    }
}

/// Per-kind witness data attached to a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Weak Δ-system: the common pairwise intersection size.
    CommonIntersection(u32),
    /// Equilateral triangle: the common pairwise distance.
    CommonDistance(u32),
    /// Sunflower: the core, i.e. the coordinates where all three are 1.
    SunflowerCore(BinaryVector),
    /// Capset line: one character per coordinate, `c` where the three
    /// values coincide and `d` where they are `{0,1,2}`.
    LineTrace(String),
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::CommonIntersection(s) => write!(f, "common intersection size {s}"),
            Evidence::CommonDistance(d) => write!(f, "common distance {d}"),
            Evidence::SunflowerCore(core) => write!(f, "core {core}"),
            Evidence::LineTrace(t) => write!(f, "coordinate trace {t}"),
        }
    }
}

fn same_dims(dims: impl IntoIterator<Item = usize>) -> Result<()> {
    let mut it = dims.into_iter();
    if let Some(first) = it.next() {
        for d in it {
            if d != first {
                return Err(Error::DimensionMismatch { left: first, right: d });
            }
        }
    }
    Ok(())
}

/// True iff all pairwise intersections of the `k >= 3` distinct sets have
/// the same size.
pub fn is_weak_delta_system(sets: &[BinaryVector]) -> Result<bool> {
    if sets.len() < 3 {
        return Err(Error::TooFewSets(sets.len()));
    }
    same_dims(sets.iter().map(|v| v.dim()))?;
    for (i, a) in sets.iter().enumerate() {
        if sets[i + 1..].contains(a) {
            return Err(Error::RepeatedVector(a.to_row()));
        }
    }
    let common = sets[0].inner(&sets[1])?;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].inner(&sets[j])? != common {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Non-trivial equilateral triangle: pairwise distinct, equal distances.
pub fn is_equilateral_triple(x: &BinaryVector, y: &BinaryVector, z: &BinaryVector) -> Result<bool> {
    let (dxy, dyz, dzx) = (x.hamming(y)?, y.hamming(z)?, z.hamming(x)?);
    Ok(dxy > 0 && dxy == dyz && dyz == dzx)
}

#[inline]
fn two_ones_mask(x: u64, y: u64, z: u64) -> u64 {
    (x & y & !z) | (x & !y & z) | (!x & y & z)
}

/// Sunflower in the binary-vector sense; two of the three may coincide.
pub fn is_sunflower_triple(x: &BinaryVector, y: &BinaryVector, z: &BinaryVector) -> Result<bool> {
    same_dims([x.dim(), y.dim(), z.dim()])?;
    if x == y && y == z {
        return Ok(false);
    }
    // Allowed coordinate multisets have zero, one or three ones; never two.
    Ok(two_ones_mask(x.bits(), y.bits(), z.bits()) == 0)
}

/// Line test through coordinate arithmetic: every coordinate sums to 0 mod 3.
pub fn capset_line_by_sum(x: &TernaryVector, y: &TernaryVector, z: &TernaryVector) -> Result<bool> {
    same_dims([x.dim(), y.dim(), z.dim()])?;
    if x == y && y == z {
        return Ok(false);
    }
    Ok((1..=x.dim()).all(|i| (x.coord(i) + y.coord(i) + z.coord(i)).is_multiple_of(3)))
}

/// Line test through coordinate patterns: every coordinate multiset is
/// `{0,1,2}` or constant. Works on the bit planes.
pub fn capset_line_by_pattern(x: &TernaryVector, y: &TernaryVector, z: &TernaryVector) -> Result<bool> {
    same_dims([x.dim(), y.dim(), z.dim()])?;
    if x == y && y == z {
        return Ok(false);
    }
    let (constant, distinct) = coordinate_patterns(x, y, z);
    let full = constant | distinct;
    let all = if x.dim() == 0 { 0 } else { u64::MAX >> (64 - x.dim()) };
    Ok(full == all)
}

fn coordinate_patterns(x: &TernaryVector, y: &TernaryVector, z: &TernaryVector) -> (u64, u64) {
    let eq =
        |a: &TernaryVector, b: &TernaryVector| !((a.ones_plane() ^ b.ones_plane()) | (a.twos_plane() ^ b.twos_plane()));
    let (xy, yz, zx) = (eq(x, y), eq(y, z), eq(z, x));
    let constant = xy & yz;
    let distinct = !xy & !yz & !zx;
    let all = if x.dim() == 0 { 0 } else { u64::MAX >> (64 - x.dim()) };
    (constant & all, distinct & all)
}

/// Not-all-equal triple summing to zero mod 3. Both line tests run and
/// must agree.
pub fn is_capset_line(x: &TernaryVector, y: &TernaryVector, z: &TernaryVector) -> Result<bool> {
    let by_sum = capset_line_by_sum(x, y, z)?;
    let by_pattern = capset_line_by_pattern(x, y, z)?;
    assert_eq!(by_sum, by_pattern, "line tests disagree on {x} {y} {z}");
    Ok(by_sum)
}

pub(crate) fn binary_evidence(kind: StructureKind, t: &[BinaryVector; 3]) -> Result<Option<Evidence>> {
    let [x, y, z] = t;
    match kind {
        StructureKind::WeakDelta => {
            if x == y || y == z || z == x {
                same_dims([x.dim(), y.dim(), z.dim()])?;
                return Ok(None);
            }
            Ok(is_weak_delta_system(t)?.then(|| Evidence::CommonIntersection(x.inner(y).unwrap())))
        }
        StructureKind::Equilateral => {
            Ok(is_equilateral_triple(x, y, z)?.then(|| Evidence::CommonDistance(x.hamming(y).unwrap())))
        }
        StructureKind::Sunflower => Ok(is_sunflower_triple(x, y, z)?.then(|| {
            let core = BinaryVector::from_bits(x.dim(), x.bits() & y.bits() & z.bits()).unwrap();
            Evidence::SunflowerCore(core)
        })),
        StructureKind::CapsetLine => Err(Error::AlphabetMismatch { kind, alphabet: Alphabet::Binary }),
    }
}

pub(crate) fn ternary_evidence(kind: StructureKind, t: &[TernaryVector; 3]) -> Result<Option<Evidence>> {
    if kind != StructureKind::CapsetLine {
        return Err(Error::AlphabetMismatch { kind, alphabet: Alphabet::Ternary });
    }
    let [x, y, z] = t;
    if !is_capset_line(x, y, z)? {
        return Ok(None);
    }
    let (constant, _) = coordinate_patterns(x, y, z);
    let n = x.dim();
    let trace = (1..=n).map(|i| if (constant >> (n - i)) & 1 == 1 { 'c' } else { 'd' }).collect();
    Ok(Some(Evidence::LineTrace(trace)))
}

/// A triple exhibiting a forbidden structure, with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationCertificate<V: Point> {
    pub kind: StructureKind,
    pub triple: [V; 3],
    pub evidence: Evidence,
}

impl<V: Point> ViolationCertificate<V> {
    /// Re-runs the predicate; a certificate is sound iff this is true.
    pub fn verify(&self) -> bool {
        let repeats_ok = self.kind.allows_repeats()
            || (self.triple[0] != self.triple[1]
                && self.triple[1] != self.triple[2]
                && self.triple[0] != self.triple[2]);
        repeats_ok && matches!(V::violation(self.kind, &self.triple), Ok(Some(ref e)) if *e == self.evidence)
    }
}

fn check_alphabet<V: Point>(kind: StructureKind) -> Result<()> {
    if kind.alphabet() == V::ALPHABET {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { kind, alphabet: V::ALPHABET })
    }
}

/// First violating triple whose first index is `i`, scanning `(i, j, l)`
/// lexicographically.
fn scan_from<V: Point>(members: &[V], kind: StructureKind, i: usize) -> Option<ViolationCertificate<V>> {
    let m = members.len();
    let repeats = kind.allows_repeats();
    let j_start = if repeats { i } else { i + 1 };
    for j in j_start..m {
        let l_start = if repeats { j } else { j + 1 };
        for l in l_start..m {
            if i == l {
                continue;
            }
            let triple = [members[i], members[j], members[l]];
            // Alphabet and dimension were validated by the caller.
            if let Some(evidence) = V::violation(kind, &triple).ok().flatten() {
                return Some(ViolationCertificate { kind, triple, evidence });
            }
        }
    }
    None
}

/// Lexicographically first violating triple of the canonically ordered
/// family, or `None` if the family is `kind`-free.
pub fn find_violation<V: Point>(family: &Family<V>, kind: StructureKind) -> Result<Option<ViolationCertificate<V>>> {
    check_alphabet::<V>(kind)?;
    let sorted = family.canonical();
    let members = sorted.members();
    Ok((0..members.len()).find_map(|i| scan_from(members, kind, i)))
}

/// Same contract as [`find_violation`], with the outer index spread over
/// the rayon pool. The result is the same triple regardless of pool size.
pub fn find_violation_parallel<V: Point>(
    family: &Family<V>,
    kind: StructureKind,
) -> Result<Option<ViolationCertificate<V>>> {
    check_alphabet::<V>(kind)?;
    let sorted = family.canonical();
    let members = sorted.members();
    Ok((0..members.len()).into_par_iter().find_map_first(|i| scan_from(members, kind, i)))
}

pub fn is_free<V: Point>(family: &Family<V>, kind: StructureKind) -> Result<bool> {
    Ok(find_violation(family, kind)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{BinaryFamily, TernaryFamily};

    fn b(s: &str) -> BinaryVector {
        BinaryVector::parse_row(s).unwrap()
    }

    fn t(s: &str) -> TernaryVector {
        TernaryVector::parse_row(s).unwrap()
    }

    #[test]
    fn weak_delta_examples() {
        assert!(is_weak_delta_system(&[b("110"), b("101"), b("011")]).unwrap());
        assert!(is_weak_delta_system(&[b("100"), b("010"), b("001")]).unwrap());
        assert!(!is_weak_delta_system(&[b("00"), b("10"), b("11")]).unwrap());
        assert_eq!(is_weak_delta_system(&[b("00"), b("10")]), Err(Error::TooFewSets(2)));
        assert!(matches!(is_weak_delta_system(&[b("00"), b("10"), b("00")]), Err(Error::RepeatedVector(_))));
        assert!(is_weak_delta_system(&[b("00"), b("10"), b("011")]).is_err());
        // k = 4: the four singletons of {1..4}.
        assert!(is_weak_delta_system(&[b("1000"), b("0100"), b("0010"), b("0001")]).unwrap());
    }

    #[test]
    fn equilateral_examples() {
        assert!(is_equilateral_triple(&b("100"), &b("010"), &b("001")).unwrap());
        let x = b("101");
        assert!(!is_equilateral_triple(&x, &x, &x).unwrap());
        assert!(!is_equilateral_triple(&b("00"), &b("01"), &b("11")).unwrap());
        assert!(is_equilateral_triple(&b("00"), &b("01"), &b("1")).is_err());
    }

    #[test]
    fn sunflower_examples() {
        assert!(is_sunflower_triple(&b("01"), &b("01"), &b("11")).unwrap());
        assert!(!is_sunflower_triple(&b("110"), &b("101"), &b("011")).unwrap());
        let v = b("0110");
        assert!(!is_sunflower_triple(&v, &v, &v).unwrap());
    }

    #[test]
    fn capset_line_examples() {
        assert!(is_capset_line(&t("0"), &t("1"), &t("2")).unwrap());
        let v = t("12");
        assert!(!is_capset_line(&v, &v, &v).unwrap());
        assert!(is_capset_line(&t("02"), &t("11"), &t("20")).unwrap());
        assert!(!is_capset_line(&t("01"), &t("11"), &t("20")).unwrap());
        assert!(is_capset_line(&t("0"), &t("1"), &t("12")).is_err());
    }

    #[test]
    fn capset_line_tests_agree_exhaustively() {
        for n in 0..=4 {
            let pts: Vec<_> = TernaryVector::all(n).unwrap().collect();
            for x in &pts {
                for y in &pts {
                    for z in &pts {
                        assert_eq!(
                            capset_line_by_sum(x, y, z).unwrap(),
                            capset_line_by_pattern(x, y, z).unwrap(),
                            "{x} {y} {z}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for k in StructureKind::ALL {
            assert_eq!(k.name().parse::<StructureKind>().unwrap(), k);
        }
        assert!("sunflowers".parse::<StructureKind>().is_err());
    }

    #[test]
    fn find_violation_examples() {
        let fam = BinaryFamily::from_rows(2, &["00", "10", "11"]).unwrap();
        assert!(find_violation(&fam, StructureKind::WeakDelta).unwrap().is_none());

        let fam = BinaryFamily::from_rows(2, &["11", "01"]).unwrap();
        let cert = find_violation(&fam, StructureKind::Sunflower).unwrap().unwrap();
        assert_eq!(cert.triple, [b("01"), b("01"), b("11")]);
        assert_eq!(cert.evidence, Evidence::SunflowerCore(b("01")));
        assert!(cert.verify());

        for kind in StructureKind::ALL {
            match kind.alphabet() {
                Alphabet::Binary => {
                    let empty = BinaryFamily::new(3).unwrap();
                    assert!(find_violation(&empty, kind).unwrap().is_none());
                }
                Alphabet::Ternary => {
                    let empty = TernaryFamily::new(3).unwrap();
                    assert!(find_violation(&empty, kind).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn is_free_examples() {
        let cube = BinaryFamily::from_rows(2, &["00", "10", "01", "11"]).unwrap();
        assert!(!is_free(&cube, StructureKind::WeakDelta).unwrap());
        let cert = find_violation(&cube, StructureKind::WeakDelta).unwrap().unwrap();
        assert_eq!(cert.triple, [b("00"), b("01"), b("10")]);
        assert_eq!(cert.evidence, Evidence::CommonIntersection(0));

        let single = BinaryFamily::from_rows(3, &["101"]).unwrap();
        for kind in [StructureKind::WeakDelta, StructureKind::Equilateral, StructureKind::Sunflower] {
            assert!(is_free(&single, kind).unwrap());
        }
        let single = TernaryFamily::from_rows(3, &["101"]).unwrap();
        assert!(is_free(&single, StructureKind::CapsetLine).unwrap());
    }

    #[test]
    fn zero_two_cube_is_a_capset() {
        for n in 0..=4 {
            let fam =
                TernaryFamily::from_members(n, TernaryVector::all(n).unwrap().filter(|v| v.ones_plane() == 0)).unwrap();
            assert_eq!(fam.len(), 1 << n);
            assert!(is_free(&fam, StructureKind::CapsetLine).unwrap());
        }
    }

    #[test]
    fn alphabet_mismatch() {
        let fam = BinaryFamily::from_rows(1, &["1"]).unwrap();
        assert!(matches!(find_violation(&fam, StructureKind::CapsetLine), Err(Error::AlphabetMismatch { .. })));
        let fam = TernaryFamily::from_rows(1, &["1"]).unwrap();
        assert!(matches!(is_free(&fam, StructureKind::Sunflower), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let fam = BinaryFamily::from_members(4, BinaryVector::all(4).unwrap().rev()).unwrap();
        for kind in [StructureKind::WeakDelta, StructureKind::Equilateral, StructureKind::Sunflower] {
            assert_eq!(find_violation(&fam, kind).unwrap(), find_violation_parallel(&fam, kind).unwrap());
        }
    }
}
