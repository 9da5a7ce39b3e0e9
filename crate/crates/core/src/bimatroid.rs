//! Bimatroids and their cryptomorphic descriptions.
//!
//! A bimatroid on `E × F` is stored through its regular minors. From these
//! we derive the extended matroid on `E ⊔ F` (bases `I^c ⊔ J`), the
//! relative rank table and the vertical/horizontal regular rectangles, and
//! each view can be turned back into the minors.
//!
//! Masks over `E ⊔ F` put the rows in bits `0..m` and the columns in bits
//! `m..m+n`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::{check_basis_family, BasisViolation, Matroid};
use crate::subset::{self, Mask};

/// A pair `(I, J)` of equal-size row and column subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Minor {
    pub rows: Mask,
    pub cols: Mask,
}

impl Minor {
    pub const EMPTY: Minor = Minor { rows: 0, cols: 0 };

    pub fn new(rows: Mask, cols: Mask) -> Self {
        Self { rows, cols }
    }

    pub fn size(&self) -> usize {
        subset::size(self.rows)
    }

    pub fn transpose(self) -> Self {
        Self { rows: self.cols, cols: self.rows }
    }
}

/// Canonical order: by size, then row mask, then column mask.
impl Ord for Minor {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.size(), self.rows, self.cols).cmp(&(other.size(), other.rows, other.cols))
    }
}

impl PartialOrd for Minor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Minor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<_> = subset::elements(self.rows).collect();
        let c: Vec<_> = subset::elements(self.cols).collect();
        write!(f, "({r:?}, {c:?})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// Failure witness for the regular-minor axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimatroidViolation {
    MissingEmptyMinor,
    /// Axiom 2(a) fails for `i' ∈ I' − I`.
    RowExchange { minor: Minor, other: Minor, row: usize },
    /// Axiom 2(b) fails for `j ∈ J − J'`.
    ColumnExchange { minor: Minor, other: Minor, col: usize },
    /// The family `{I^c ⊔ J}` is not a basis family.
    Extended(BasisViolation),
}

impl fmt::Display for BimatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimatroidViolation::MissingEmptyMinor => write!(f, "(∅, ∅) is not a regular minor"),
            BimatroidViolation::RowExchange { minor, other, row } => {
                write!(f, "row exchange fails for row {row} with {minor} and {other}")
            }
            BimatroidViolation::ColumnExchange { minor, other, col } => {
                write!(f, "column exchange fails for column {col} with {minor} and {other}")
            }
            BimatroidViolation::Extended(v) => write!(f, "extended family: {v}"),
        }
    }
}

/// Failure witness for the relative-rank axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankViolation {
    Bound { s: Mask, t: Mask },
    RowStep { s: Mask, t: Mask, row: usize },
    ColumnStep { s: Mask, t: Mask, col: usize },
    Bisubmodular { first: (Mask, Mask), second: (Mask, Mask) },
}

/// Failure witness for the vertical-rectangle axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RectangleViolation {
    MissingEmpty,
    TooWide { s: Mask, t: Mask },
    NotClosed { from: (Mask, Mask), missing: (Mask, Mask) },
    Augmentation { first: (Mask, Mask), second: (Mask, Mask) },
}

/// `(i, j)` such that the Laplace expansion finds no partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaplaceViolation {
    Column { minor: Minor, col: usize },
    Row { minor: Minor, row: usize },
}

/// A bimatroid on `rows × cols`, given by its regular minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimatroid {
    rows: Vec<String>,
    cols: Vec<String>,
    minors: BTreeSet<Minor>,
}

impl Bimatroid {
    /// Wraps a family of minors after shape checks only (equal sizes,
    /// inside the ground sets). Use [`Bimatroid::validate`] for the axioms.
    pub fn new(rows: Vec<String>, cols: Vec<String>, minors: impl IntoIterator<Item = Minor>) -> Result<Self> {
        subset::check_ground(rows.len() + cols.len())?;
        let (er, ec) = (subset::full(rows.len()), subset::full(cols.len()));
        let minors: BTreeSet<Minor> = minors.into_iter().collect();
        for m in &minors {
            if !subset::is_subset(m.rows, er) || !subset::is_subset(m.cols, ec) {
                return Err(Error::Shape(format!("minor {m} outside the ground sets")));
            }
            if subset::size(m.rows) != subset::size(m.cols) {
                return Err(Error::Shape(format!("minor {m} is not square")));
            }
        }
        Ok(Self { rows, cols, minors })
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }
    pub fn cols(&self) -> &[String] {
        &self.cols
    }
    pub fn m(&self) -> usize {
        self.rows.len()
    }
    pub fn n(&self) -> usize {
        self.cols.len()
    }
    pub fn minors(&self) -> &BTreeSet<Minor> {
        &self.minors
    }

    pub fn row_mask(&self) -> Mask {
        subset::full(self.m())
    }
    pub fn col_mask(&self) -> Mask {
        subset::full(self.n())
    }

    pub fn is_regular(&self, rows: Mask, cols: Mask) -> bool {
        self.minors.contains(&Minor::new(rows, cols))
    }

    /// `R_k` for `k = 0 ..= min(m, n)`.
    pub fn minor_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.m().min(self.n()) + 1];
        for m in &self.minors {
            counts[m.size()] += 1;
        }
        counts
    }

    /// Checks axioms (1), (2a) and (2b) directly on the minors.
    pub fn validate(&self) -> Result<(), BimatroidViolation> {
        if !self.minors.contains(&Minor::EMPTY) {
            return Err(BimatroidViolation::MissingEmptyMinor);
        }
        let lookup: HashSet<Minor> = self.minors.iter().copied().collect();
        let has = |rows, cols| lookup.contains(&Minor::new(rows, cols));
        for &a in &self.minors {
            for &b in &self.minors {
                for i2 in subset::elements(b.rows & !a.rows) {
                    let swap = subset::elements(a.rows & !b.rows).any(|i| has(a.rows & !(1 << i) | 1 << i2, a.cols));
                    let grow = swap
                        || subset::elements(b.cols & !a.cols).any(|j2| has(a.rows | 1 << i2, a.cols | 1 << j2));
                    if !grow {
                        return Err(BimatroidViolation::RowExchange { minor: a, other: b, row: i2 });
                    }
                }
                for j in subset::elements(a.cols & !b.cols) {
                    let swap = subset::elements(b.cols & !a.cols).any(|j2| has(a.rows, a.cols & !(1 << j) | 1 << j2));
                    let shrink = swap
                        || subset::elements(a.rows & !b.rows).any(|i| has(a.rows & !(1 << i), a.cols & !(1 << j)));
                    if !shrink {
                        return Err(BimatroidViolation::ColumnExchange { minor: a, other: b, col: j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Same verdict as [`Bimatroid::validate`], computed through the basis
    /// exchange axiom on `{I^c ⊔ J}`.
    pub fn validate_via_extended(&self) -> Result<(), BimatroidViolation> {
        if !self.minors.contains(&Minor::EMPTY) {
            return Err(BimatroidViolation::MissingEmptyMinor);
        }
        check_basis_family(&self.extended_family()).map_err(BimatroidViolation::Extended)
    }

    /// Image of a minor under `(I, J) ↦ I^c ⊔ J`.
    pub fn extended_basis(&self, minor: Minor) -> Mask {
        (self.row_mask() & !minor.rows) | minor.cols << self.m()
    }

    pub fn extended_family(&self) -> BTreeSet<Mask> {
        self.minors.iter().map(|&m| self.extended_basis(m)).collect()
    }

    /// Labels of `E ⊔ F`, rows first.
    pub fn disjoint_union_labels(&self) -> Vec<String> {
        self.rows.iter().chain(&self.cols).cloned().collect()
    }

    /// The extended matroid on `E ⊔ F`. Assumes the bimatroid is valid.
    pub fn extended_matroid(&self) -> Matroid {
        Matroid::from_bases_unchecked(self.disjoint_union_labels(), self.extended_family())
            .expect("valid bimatroid has a nonempty equicardinal extended family")
    }

    /// Inverse of [`Bimatroid::extended_matroid`]: `e` must be a basis of
    /// `m`; it becomes the row set and its complement the column set.
    pub fn from_extended_matroid(m: &Matroid, e: Mask) -> Result<Self> {
        if !m.is_basis(e) {
            return Err(Error::Precondition("the row set must be a basis of the matroid".into()));
        }
        let f = m.full_mask() & !e;
        let rows = subset::elements(e).map(|i| m.ground()[i].clone()).collect();
        let cols = subset::elements(f).map(|i| m.ground()[i].clone()).collect();
        let minors = m
            .bases()
            .iter()
            .map(|&b| Minor::new(subset::compress(e & !b, e), subset::compress(b & f, f)));
        Self::new(rows, cols, minors)
    }

    /// Size of the largest regular minor inside `S × T`, by scanning minors.
    pub fn relative_rank(&self, s: Mask, t: Mask) -> usize {
        self.minors
            .iter()
            .rev()
            .find(|m| subset::is_subset(m.rows, s) && subset::is_subset(m.cols, t))
            .map_or(0, Minor::size)
    }

    /// `r(E, F)`.
    pub fn rank(&self) -> usize {
        self.minors.iter().next_back().map_or(0, Minor::size)
    }

    /// Relative rank table from the minors (maximum over contained minors).
    pub fn rank_table(&self) -> RelativeRankTable {
        let (m, n) = (self.m(), self.n());
        let bits = m + n;
        let mut values = vec![0u8; 1 << bits];
        for minor in &self.minors {
            let idx = (minor.rows | minor.cols << m) as usize;
            values[idx] = values[idx].max(minor.size() as u8);
        }
        for bit in 0..bits {
            for x in 0..1usize << bits {
                if x >> bit & 1 == 1 {
                    values[x] = values[x].max(values[x ^ 1 << bit]);
                }
            }
        }
        RelativeRankTable { m, n, values }
    }

    /// Relative rank table via `r(S, T) = r̂(S^c ⊔ T) − |S^c|`.
    pub fn rank_table_via_extended(&self) -> RelativeRankTable {
        let (m, n) = (self.m(), self.n());
        let ext = self.extended_matroid().rank_table();
        let values = (0..1usize << (m + n))
            .map(|idx| {
                let s = idx as Mask & self.row_mask();
                let t = idx as Mask >> m;
                let sc = self.row_mask() & !s;
                ext[(sc | t << m) as usize] - subset::size(sc) as u8
            })
            .collect();
        RelativeRankTable { m, n, values }
    }

    /// All `(S, T)` with `r(S, T) = |T| <= |S|` (vertical) or
    /// `r(S, T) = |S| <= |T|` (horizontal), in increasing `(S, T)` order.
    pub fn regular_rectangles(&self, orientation: Orientation) -> BTreeSet<(Mask, Mask)> {
        self.rank_table().rectangles(orientation)
    }

    /// Rebuilds the bimatroid from its vertical regular rectangles: the
    /// square ones are exactly the regular minors.
    pub fn from_vertical_rectangles(
        rows: Vec<String>,
        cols: Vec<String>,
        family: &BTreeSet<(Mask, Mask)>,
    ) -> Result<Self> {
        let minors = family
            .iter()
            .filter(|(s, t)| subset::size(*s) == subset::size(*t))
            .map(|&(s, t)| Minor::new(s, t));
        Self::new(rows, cols, minors)
    }

    /// Both parts of the Laplace expansion lemma, on every regular minor.
    pub fn laplace_property(&self) -> Result<(), LaplaceViolation> {
        for &minor in &self.minors {
            for j in subset::elements(minor.cols) {
                if !subset::elements(minor.rows).any(|i| self.is_regular(minor.rows & !(1 << i), minor.cols & !(1 << j))) {
                    return Err(LaplaceViolation::Column { minor, col: j });
                }
            }
            for i in subset::elements(minor.rows) {
                if !subset::elements(minor.cols).any(|j| self.is_regular(minor.rows & !(1 << i), minor.cols & !(1 << j))) {
                    return Err(LaplaceViolation::Row { minor, row: i });
                }
            }
        }
        Ok(())
    }

    /// Bimatroid on `F × E` with `(J, I)` regular iff `(I, J)` is.
    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            minors: self.minors.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Restriction to `E' × F'` (masks over rows and columns).
    pub fn restrict(&self, rows: Mask, cols: Mask) -> Self {
        let rows = rows & self.row_mask();
        let cols = cols & self.col_mask();
        Self {
            rows: subset::elements(rows).map(|i| self.rows[i].clone()).collect(),
            cols: subset::elements(cols).map(|j| self.cols[j].clone()).collect(),
            minors: self
                .minors
                .iter()
                .filter(|m| subset::is_subset(m.rows, rows) && subset::is_subset(m.cols, cols))
                .map(|m| Minor::new(subset::compress(m.rows, rows), subset::compress(m.cols, cols)))
                .collect(),
        }
    }
}

/// Relative rank function on `2^E × 2^F`, indexed by `S | T << m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeRankTable {
    m: usize,
    n: usize,
    values: Vec<u8>,
}

impl RelativeRankTable {
    /// `f(S, T)` evaluated on every pair.
    pub fn from_fn(m: usize, n: usize, f: impl Fn(Mask, Mask) -> u8) -> Result<Self> {
        subset::check_ground(m + n)?;
        let values = (0..1usize << (m + n))
            .map(|idx| f(idx as Mask & subset::full(m), idx as Mask >> m))
            .collect();
        Ok(Self { m, n, values })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Mask, t: Mask) -> usize {
        self.values[(s | t << self.m) as usize] as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    fn pairs(&self) -> impl Iterator<Item = (Mask, Mask)> + '_ {
        (0..=subset::full(self.n)).flat_map(move |t| (0..=subset::full(self.m)).map(move |s| (s, t)))
    }

    /// Bound, unit-step monotonicity and bisubmodularity, exhaustively.
    pub fn validate(&self) -> Result<(), RankViolation> {
        let (em, fm) = (subset::full(self.m), subset::full(self.n));
        for (s, t) in self.pairs() {
            let r = self.get(s, t);
            if r > subset::size(s).min(subset::size(t)) {
                return Err(RankViolation::Bound { s, t });
            }
            for e in 0..self.m {
                let up = self.get(s | 1 << e, t);
                if up < r || up > r + 1 {
                    return Err(RankViolation::RowStep { s, t, row: e });
                }
            }
            for f in 0..self.n {
                let up = self.get(s, t | 1 << f);
                if up < r || up > r + 1 {
                    return Err(RankViolation::ColumnStep { s, t, col: f });
                }
            }
        }
        let _ = (em, fm);
        for (s, t) in self.pairs() {
            let r1 = self.get(s, t);
            for (s2, t2) in self.pairs() {
                if r1 + self.get(s2, t2) < self.get(s | s2, t & t2) + self.get(s & s2, t | t2) {
                    return Err(RankViolation::Bisubmodular { first: (s, t), second: (s2, t2) });
                }
            }
        }
        Ok(())
    }

    /// Minors `(I, J)` with `r(I, J) = |I| = |J|`.
    pub fn to_bimatroid(&self, rows: Vec<String>, cols: Vec<String>) -> Result<Bimatroid> {
        if rows.len() != self.m || cols.len() != self.n {
            return Err(Error::Dimension("labels do not match the table".into()));
        }
        let minors = self
            .pairs()
            .filter(|&(s, t)| subset::size(s) == subset::size(t) && self.get(s, t) == subset::size(s))
            .map(|(s, t)| Minor::new(s, t));
        Bimatroid::new(rows, cols, minors)
    }

    pub fn rectangles(&self, orientation: Orientation) -> BTreeSet<(Mask, Mask)> {
        self.pairs()
            .filter(|&(s, t)| {
                let (ss, ts, r) = (subset::size(s), subset::size(t), self.get(s, t));
                match orientation {
                    Orientation::Vertical => r == ts && ts <= ss,
                    Orientation::Horizontal => r == ss && ss <= ts,
                }
            })
            .collect()
    }
}

/// The four vertical-rectangle axioms on an `m × n` ground.
pub fn validate_rectangle_axioms(m: usize, n: usize, family: &BTreeSet<(Mask, Mask)>) -> Result<(), RectangleViolation> {
    let _ = n;
    if !family.contains(&(0, 0)) {
        return Err(RectangleViolation::MissingEmpty);
    }
    if let Some(&(s, t)) = family.iter().find(|(s, t)| subset::size(*t) > subset::size(*s)) {
        return Err(RectangleViolation::TooWide { s, t });
    }
    // closure under single steps implies closure under S ⊆ S', T' ⊆ T
    for &(s, t) in family {
        let bigger = (0..m).filter(|&e| !subset::contains(s, e)).map(|e| (s | 1 << e, t));
        let narrower = subset::elements(t).map(|f| (s, t & !(1 << f)));
        if let Some(missing) = bigger.chain(narrower).find(|p| !family.contains(p)) {
            return Err(RectangleViolation::NotClosed { from: (s, t), missing });
        }
    }
    let excess = |s: Mask, t: Mask| subset::size(t) as i64 - subset::size(s) as i64;
    for &(s, t) in family {
        for &(s2, t2) in family {
            if excess(s, t) <= excess(s2, t2) {
                continue;
            }
            let shrink = subset::elements(s2 & !s).any(|e| family.contains(&(s2 & !(1 << e), t2)));
            let widen = shrink || subset::elements(t & !t2).any(|f| family.contains(&(s2, t2 | 1 << f)));
            if !widen {
                return Err(RectangleViolation::Augmentation { first: (s, t), second: (s2, t2) });
            }
        }
    }
    Ok(())
}

/// Horizontal rectangles of `A` are the vertical rectangles of `Aᵀ` with
/// the coordinates swapped, so they are checked through that translation.
pub fn validate_horizontal_rectangle_axioms(
    m: usize,
    n: usize,
    family: &BTreeSet<(Mask, Mask)>,
) -> Result<(), RectangleViolation> {
    let swapped: BTreeSet<(Mask, Mask)> = family.iter().map(|&(s, t)| (t, s)).collect();
    validate_rectangle_axioms(n, m, &swapped)
}
