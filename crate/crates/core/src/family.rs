//! Duplicate-free families of vectors and the `.fam` text format.
//!
//! ```text
//! binary n=3      # header: `binary n=<n>` or `ternary n=<n>`
//! 110
//! 101             # `#` starts a comment, blank lines are skipped
//! ```

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::structures::Alphabet;
use crate::vector::{BinaryVector, Point, TernaryVector, MAX_DIM};

/// Ordered, duplicate-free collection of points sharing one dimension.
#[derive(Clone)]
pub struct Family<V: Point> {
    n: usize,
    members: Vec<V>,
    lookup: HashSet<V>,
}

pub type BinaryFamily = Family<BinaryVector>;
pub type TernaryFamily = Family<TernaryVector>;

impl<V: Point> Family<V> {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        Ok(Self { n, members: Vec::new(), lookup: HashSet::new() })
    }

    /// Builds a family, rejecting duplicates and dimension mismatches.
    pub fn from_members<I: IntoIterator<Item = V>>(n: usize, members: I) -> Result<Self> {
        let mut fam = Self::new(n)?;
        for v in members {
            if !fam.insert(v)? {
                return Err(Error::DuplicateMember(v.to_row()));
            }
        }
        Ok(fam)
    }

    /// Builds a family, silently merging duplicates (first occurrence wins).
    pub fn from_members_dedup<I: IntoIterator<Item = V>>(n: usize, members: I) -> Result<Self> {
        let mut fam = Self::new(n)?;
        for v in members {
            fam.insert(v)?;
        }
        Ok(fam)
    }

    /// Parses rows in `.fam` row syntax.
    pub fn from_rows<S: AsRef<str>>(n: usize, rows: &[S]) -> Result<Self> {
        let mut members = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let v = V::parse_row(row.as_ref()).map_err(|(col, message)| Error::Parse {
                line: i + 1,
                column: col + 1,
                message,
            })?;
            members.push(v);
        }
        Self::from_members(n, members)
    }

    /// Appends `v`; returns `false` if it was already present.
    pub fn insert(&mut self, v: V) -> Result<bool> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: v.dim() });
        }
        if !self.lookup.insert(v) {
            return Ok(false);
        }
        self.members.push(v);
        Ok(true)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn members(&self) -> &[V] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, V> {
        self.members.iter()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.lookup.contains(v)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n == other.n && self.members.iter().all(|v| other.contains(v))
    }

    /// Same members, lexicographically sorted.
    pub fn canonical(&self) -> Self {
        let mut members = self.members.clone();
        members.sort_unstable();
        Self { n: self.n, members, lookup: self.lookup.clone() }
    }

    pub fn is_canonical(&self) -> bool {
        self.members.windows(2).all(|w| w[0] < w[1])
    }

    /// Sub-family of members satisfying `keep`, in the same order.
    pub fn filter<F: FnMut(&V) -> bool>(&self, mut keep: F) -> Self {
        let members: Vec<V> = self.members.iter().copied().filter(|v| keep(v)).collect();
        let lookup = members.iter().copied().collect();
        Self { n: self.n, members, lookup }
    }

    pub fn rows(&self) -> Vec<String> {
        self.members.iter().map(|v| v.to_row()).collect()
    }

    /// Serializes in `.fam` format with a trailing newline.
    pub fn to_fam(&self) -> String {
        let mut out = format!("{} n={}\n", V::ALPHABET, self.n);
        for v in &self.members {
            out.push_str(&v.to_row());
            out.push('\n');
        }
        out
    }
}

impl<V: Point> PartialEq for Family<V> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.members == other.members
    }
}

impl<V: Point> Eq for Family<V> {}

impl<V: Point> fmt::Debug for Family<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, ", self.n)?;
        f.debug_set().entries(self.members.iter()).finish()?;
        f.write_str(")")
    }
}

impl<'a, V: Point> IntoIterator for &'a Family<V> {
    type Item = &'a V;
    type IntoIter = std::slice::Iter<'a, V>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// A family of either alphabet, as read from a `.fam` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyFamily {
    Binary(BinaryFamily),
    Ternary(TernaryFamily),
}

impl AnyFamily {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            AnyFamily::Binary(_) => Alphabet::Binary,
            AnyFamily::Ternary(_) => Alphabet::Ternary,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyFamily::Binary(f) => f.dim(),
            AnyFamily::Ternary(f) => f.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyFamily::Binary(f) => f.len(),
            AnyFamily::Ternary(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_fam(&self) -> String {
        match self {
            AnyFamily::Binary(f) => f.to_fam(),
            AnyFamily::Ternary(f) => f.to_fam(),
        }
    }

    pub fn canonical(&self) -> Self {
        match self {
            AnyFamily::Binary(f) => AnyFamily::Binary(f.canonical()),
            AnyFamily::Ternary(f) => AnyFamily::Ternary(f.canonical()),
        }
    }
}

impl From<BinaryFamily> for AnyFamily {
    fn from(f: BinaryFamily) -> Self {
        AnyFamily::Binary(f)
    }
}

impl From<TernaryFamily> for AnyFamily {
    fn from(f: TernaryFamily) -> Self {
        AnyFamily::Ternary(f)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(at) => &line[..at],
        None => line,
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(Alphabet, usize)> {
    let err = |column: usize, message: String| Error::Parse { line: line_no, column, message };
    let mut words = line.split_whitespace();
    let alphabet = match words.next() {
        Some("binary") => Alphabet::Binary,
        Some("ternary") => Alphabet::Ternary,
        Some(other) => return Err(err(1, format!("expected `binary` or `ternary`, found {other:?}"))),
        None => return Err(err(1, "missing header".into())),
    };
    let n_col = line.find("n=").map_or(line.len() + 1, |c| c + 1);
    let n = match words.next().and_then(|w| w.strip_prefix("n=")) {
        Some(digits) => digits.parse::<usize>().map_err(|_| err(n_col + 2, format!("invalid dimension {digits:?}")))?,
        None => return Err(err(n_col, "expected `n=<dimension>`".into())),
    };
    if let Some(extra) = words.next() {
        return Err(err(1, format!("unexpected token {extra:?} in header")));
    }
    if n > MAX_DIM {
        return Err(err(n_col + 2, format!("dimension {n} exceeds {MAX_DIM}")));
    }
    Ok((alphabet, n))
}

fn parse_body<V: Point>(n: usize, lines: impl Iterator<Item = (usize, String)>) -> Result<Family<V>> {
    let mut fam = Family::new(n)?;
    for (line_no, row) in lines {
        let len = row.chars().count();
        if len != n {
            return Err(Error::Parse {
                line: line_no,
                column: len.min(n) + 1,
                message: format!("row has {len} characters, expected {n}"),
            });
        }
        let v =
            V::parse_row(&row).map_err(|(col, message)| Error::Parse { line: line_no, column: col + 1, message })?;
        if !fam.insert(v)? {
            return Err(Error::Parse { line: line_no, column: 1, message: format!("duplicate row {row}") });
        }
    }
    Ok(fam)
}

/// Parses `.fam` text. Blank and comment-only lines before the header are
/// skipped.
pub fn parse_family(text: &str) -> Result<AnyFamily> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim().to_string()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) =
        lines.next().ok_or_else(|| Error::Parse { line: 1, column: 1, message: "missing header".into() })?;
    let (alphabet, n) = parse_header(&header, header_line)?;
    Ok(match alphabet {
        Alphabet::Binary => AnyFamily::Binary(parse_body(n, lines)?),
        Alphabet::Ternary => AnyFamily::Ternary(parse_body(n, lines)?),
    })
}
