//! Matroids on small ordered ground sets, given by their bases.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactnum::FieldMatrix;
use crate::subset::{self, Mask};

/// A matroid stored as an explicit family of bases.
///
/// Ground labels are informational; every operation works on positions.
#[derive(Clone)]
pub struct Matroid {
    ground: Vec<String>,
    bases: BTreeSet<Mask>,
    rank: usize,
    rank_table: OnceLock<Arc<Vec<u8>>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("bases", &self.bases.iter().map(|&b| subset::elements(b).collect::<Vec<_>>()).collect::<Vec<_>>())
            .finish()
    }
}

/// Why a family of sets fails the basis axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisViolation {
    Empty,
    UnequalSizes { first: Mask, second: Mask },
    /// `x ∈ b1 − b2` admits no `y ∈ b2 − b1` with `b1 − x + y` a basis.
    Exchange { b1: Mask, b2: Mask, x: usize },
}

impl fmt::Display for BasisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &Mask| format!("{:?}", subset::elements(*m).collect::<Vec<_>>());
        match self {
            BasisViolation::Empty => write!(f, "no bases"),
            BasisViolation::UnequalSizes { first, second } => {
                write!(f, "bases {} and {} differ in size", show(first), show(second))
            }
            BasisViolation::Exchange { b1, b2, x } => {
                write!(f, "exchange fails for x={x} between {} and {}", show(b1), show(b2))
            }
        }
    }
}

// Below this ground size the full rank table is cheaper than repeated scans.
const TABLE_THRESHOLD: usize = 16;

pub fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Checks nonemptiness, equicardinality and the exchange axiom.
pub fn check_basis_family(bases: &BTreeSet<Mask>) -> Result<(), BasisViolation> {
    let Some(&first) = bases.iter().next() else {
        return Err(BasisViolation::Empty);
    };
    if let Some(&other) = bases.iter().find(|&&b| subset::size(b) != subset::size(first)) {
        return Err(BasisViolation::UnequalSizes { first, second: other });
    }
    let lookup: HashSet<Mask> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            for x in subset::elements(b1 & !b2) {
                let base = b1 & !(1 << x);
                let ok = subset::elements(b2 & !b1).any(|y| lookup.contains(&(base | 1 << y)));
                if !ok {
                    return Err(BasisViolation::Exchange { b1, b2, x });
                }
            }
        }
    }
    Ok(())
}

impl Matroid {
    /// Builds a matroid from a basis family; fails on violated axioms.
    pub fn new(ground: Vec<String>, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let m = Self::from_bases_unchecked(ground, bases)?;
        m.validate_bases()
            .map_err(|v| Error::Precondition(format!("not a matroid: {v}")))?;
        Ok(m)
    }

    /// Builds the value without running the exchange check. The family
    /// must still be nonempty, equicardinal and inside the ground set.
    pub fn from_bases_unchecked(ground: Vec<String>, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        subset::check_ground(ground.len())?;
        let bases: BTreeSet<Mask> = bases.into_iter().collect();
        let all = subset::full(ground.len());
        if bases.iter().any(|&b| !subset::is_subset(b, all)) {
            return Err(Error::Shape("basis outside the ground set".into()));
        }
        let rank = match bases.iter().next() {
            Some(&b) => subset::size(b),
            None => return Err(Error::Precondition("a matroid needs at least one basis".into())),
        };
        if bases.iter().any(|&b| subset::size(b) != rank) {
            return Err(Error::Precondition("bases of different sizes".into()));
        }
        Ok(Self { ground, bases, rank, rank_table: OnceLock::new() })
    }

    /// The matroid whose rank function is given by a full `2^n` table.
    /// The table is trusted to be a matroid rank function.
    pub fn from_rank_table(ground: Vec<String>, table: Vec<u8>) -> Result<Self> {
        let n = ground.len();
        if table.len() != 1 << n {
            return Err(Error::Dimension("rank table must have 2^n entries".into()));
        }
        let r = table[subset::full(n) as usize] as usize;
        let bases: Vec<Mask> = subset::k_subsets(n, r).filter(|&s| table[s as usize] as usize == r).collect();
        let m = Self::from_bases_unchecked(ground, bases)?;
        let _ = m.rank_table.set(Arc::new(table));
        Ok(m)
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        Self::uniform_on(r, default_labels("", n))
    }

    pub fn uniform_on(r: usize, ground: Vec<String>) -> Result<Self> {
        let n = ground.len();
        if r > n {
            return Err(Error::Precondition(format!("uniform matroid U({r},{n}) needs r <= n")));
        }
        subset::check_ground(n)?;
        Self::from_bases_unchecked(ground, subset::k_subsets(n, r))
    }

    /// The rank-0 matroid on the given ground set.
    pub fn zero_on(ground: Vec<String>) -> Result<Self> {
        Self::uniform_on(0, ground)
    }

    /// Column matroid of a matrix; columns are labelled `0..n`.
    pub fn from_matrix_columns(a: &FieldMatrix) -> Result<Self> {
        Self::from_matrix_columns_on(a, default_labels("", a.cols()))
    }

    pub fn from_matrix_columns_on(a: &FieldMatrix, ground: Vec<String>) -> Result<Self> {
        let n = a.cols();
        if ground.len() != n {
            return Err(Error::Dimension("one label per column required".into()));
        }
        subset::check_ground(n)?;
        let r = a.rank();
        let rows = subset::full(a.rows());
        let bases: Vec<Mask> = subset::k_subsets(n, r).filter(|&s| a.submatrix_rank(rows, s) == r).collect();
        Self::from_bases_unchecked(ground, bases)
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn full_mask(&self) -> Mask {
        subset::full(self.ground.len())
    }

    pub fn bases(&self) -> &BTreeSet<Mask> {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_basis(&self, s: Mask) -> bool {
        self.bases.contains(&s)
    }

    pub fn validate_bases(&self) -> Result<(), BasisViolation> {
        check_basis_family(&self.bases)
    }

    /// `max |B ∩ S|` over all bases.
    pub fn rank_of(&self, s: Mask) -> usize {
        match self.rank_table.get() {
            Some(t) => t[s as usize] as usize,
            None if self.size() <= TABLE_THRESHOLD => self.rank_table()[s as usize] as usize,
            None => self.bases.iter().map(|&b| subset::size(b & s)).max().unwrap_or(0),
        }
    }

    /// The full rank function, indexed by subset mask.
    pub fn rank_table(&self) -> Arc<Vec<u8>> {
        self.rank_table
            .get_or_init(|| {
                let n = self.ground.len();
                let indep = self.independence_table();
                let mut rank = vec![0u8; 1 << n];
                for s in 1..1usize << n {
                    rank[s] = if indep[s] {
                        (s as Mask).count_ones() as u8
                    } else {
                        subset::elements(s as Mask).map(|e| rank[s & !(1 << e)]).max().unwrap_or(0)
                    };
                }
                Arc::new(rank)
            })
            .clone()
    }

    fn independence_table(&self) -> Vec<bool> {
        let n = self.ground.len();
        let mut indep = vec![false; 1 << n];
        for &b in &self.bases {
            indep[b as usize] = true;
        }
        // supersets have larger masks, so a descending sweep sees them first
        for s in (0..1usize << n).rev() {
            if indep[s] {
                continue;
            }
            let missing = subset::full(n) & !(s as Mask);
            indep[s] = subset::elements(missing).any(|e| indep[s | 1 << e]);
        }
        indep
    }

    pub fn is_independent(&self, s: Mask) -> bool {
        self.rank_of(s) == subset::size(s)
    }

    pub fn is_spanning(&self, s: Mask) -> bool {
        self.rank_of(s) == self.rank
    }

    pub fn independent_sets(&self) -> Vec<Mask> {
        let table = self.rank_table();
        (0..table.len() as Mask).filter(|&s| table[s as usize] as usize == subset::size(s)).collect()
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: Mask) -> Mask {
        let r = self.rank_of(s);
        (0..self.size()).filter(|&e| self.rank_of(s | 1 << e) == r).fold(s, |acc, e| acc | 1 << e)
    }

    pub fn flats(&self) -> Vec<Mask> {
        (0..=self.full_mask()).filter(|&s| self.closure(s) == s).collect()
    }

    pub fn hyperplanes(&self) -> Vec<Mask> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.flats().into_iter().filter(|&f| self.rank_of(f) + 1 == self.rank).collect()
    }

    /// Complements of hyperplanes.
    pub fn cocircuits(&self) -> Vec<Mask> {
        let all = self.full_mask();
        let mut out: Vec<Mask> = self.hyperplanes().into_iter().map(|h| all & !h).collect();
        out.sort_unstable();
        out
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<Mask> {
        (0..=self.full_mask())
            .filter(|&s| {
                !self.is_independent(s) && subset::elements(s).all(|e| self.is_independent(s & !(1 << e)))
            })
            .collect()
    }

    pub fn dual(&self) -> Matroid {
        let all = self.full_mask();
        Self {
            ground: self.ground.clone(),
            rank: self.size() - self.rank,
            bases: self.bases.iter().map(|&b| all & !b).collect(),
            rank_table: OnceLock::new(),
        }
    }

    fn keep_labels(&self, keep: Mask) -> Vec<String> {
        subset::elements(keep).map(|i| self.ground[i].clone()).collect()
    }

    /// Restriction to `keep`.
    pub fn restrict(&self, keep: Mask) -> Matroid {
        let r = self.rank_of(keep);
        let bases: BTreeSet<Mask> = self
            .bases
            .iter()
            .filter(|&&b| subset::size(b & keep) == r)
            .map(|&b| subset::compress(b & keep, keep))
            .collect();
        Self { ground: self.keep_labels(keep), rank: r, bases, rank_table: OnceLock::new() }
    }

    /// Deletion `M \ S`.
    pub fn delete(&self, s: Mask) -> Matroid {
        self.restrict(self.full_mask() & !s)
    }

    /// Contraction `M / S`, computed against the lexicographically first
    /// maximal independent subset of `S`.
    pub fn contract(&self, s: Mask) -> Matroid {
        let s = s & self.full_mask();
        let keep = self.full_mask() & !s;
        let mut basis_of_s: Mask = 0;
        for e in subset::elements(s) {
            if self.is_independent(basis_of_s | 1 << e) {
                basis_of_s |= 1 << e;
            }
        }
        let bases: BTreeSet<Mask> = self
            .bases
            .iter()
            .filter(|&&b| subset::is_subset(basis_of_s, b))
            .map(|&b| subset::compress(b & keep, keep))
            .collect();
        Self {
            ground: self.keep_labels(keep),
            rank: self.rank - subset::size(basis_of_s),
            bases,
            rank_table: OnceLock::new(),
        }
    }

    /// `M ⊕ N` on the concatenated ground set (M's elements first).
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.size();
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().cloned());
        subset::check_ground(ground.len())?;
        let bases = self.bases.iter().flat_map(|&a| other.bases.iter().map(move |&b| a | b << n));
        Self::from_bases_unchecked(ground, bases)
    }

    /// Matroid union on a common ground set, via
    /// `r(S) = min_{T ⊆ S} |S − T| + r_M(T) + r_N(T)`.
    pub fn union(&self, other: &Matroid) -> Result<Matroid> {
        if self.size() != other.size() {
            return Err(Error::GroundMismatch(format!(
                "union of matroids on {} and {} elements",
                self.size(),
                other.size()
            )));
        }
        let n = self.size();
        let (ra, rb) = (self.rank_table(), other.rank_table());
        // best[S] = min over T ⊆ S of r_M(T) + r_N(T) − |T|, by a subset sweep
        let mut best: Vec<i32> = (0..1usize << n)
            .map(|t| ra[t] as i32 + rb[t] as i32 - (t as Mask).count_ones() as i32)
            .collect();
        for bit in 0..n {
            for s in 0..1usize << n {
                if s >> bit & 1 == 1 {
                    best[s] = best[s].min(best[s ^ 1 << bit]);
                }
            }
        }
        let table = (0..1usize << n).map(|s| ((s as Mask).count_ones() as i32 + best[s]) as u8).collect();
        Self::from_rank_table(self.ground.clone(), table)
    }

    /// Same matroid on a new list of labels.
    pub fn relabel(&self, ground: Vec<String>) -> Result<Matroid> {
        if ground.len() != self.size() {
            return Err(Error::Dimension("relabeling must keep the ground size".into()));
        }
        Ok(Self { ground, ..self.clone() })
    }

    /// Positions of `labels` in the ground list.
    pub fn mask_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        labels.iter().try_fold(0, |acc, l| {
            let l = l.as_ref();
            self.ground
                .iter()
                .position(|g| g == l)
                .map(|i| acc | 1 << i)
                .ok_or_else(|| Error::Precondition(format!("unknown element {l:?}")))
        })
    }

    /// Counts of independent sets by cardinality, `I_0 ..= I_r`.
    pub fn independent_set_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.rank + 1];
        for s in self.independent_sets() {
            counts[subset::size(s)] += 1;
        }
        counts
    }
}

/// Fano plane: the seven nonzero vectors of `GF(2)^3` as columns.
pub fn fano() -> Matroid {
    use crate::exactnum::{Matrix, PrimeField};
    let gf2 = PrimeField::new(2).expect("2 is prime");
    let cols: Vec<[i64; 3]> = (1..8).map(|v| [v & 1, v >> 1 & 1, v >> 2 & 1]).collect();
    let rows: Vec<Vec<i64>> = (0..3).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let a = Matrix::from_i64_rows(gf2, &rows).expect("rectangular");
    Matroid::from_matrix_columns(&FieldMatrix::Prime(a)).expect("7 elements")
}
