//! Exact scalars and dense linear algebra over ℚ and prime fields.
//!
//! Rationals are `num_rational::BigRational`, which already keeps every
//! value in lowest terms with a positive denominator. Prime-field elements
//! are plain residues; the modulus lives in the [`PrimeField`] context.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::subset::{self, Mask};

pub type Rational = BigRational;

/// Modulus used for random realizations.
pub const DEFAULT_PRIME: u32 = 65521;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"a"`, `"-a"` or `"a/b"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        None => text.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Arithmetic context for the scalars of a [`Matrix`].
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn embed_int(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Determinant of a square matrix. The default is Gaussian elimination.
    fn det(&self, m: &Matrix<Self>) -> Self::Elem {
        gaussian_det(m)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn embed_int(&self, v: i64) -> Rational {
        int(v)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn det(&self, m: &Matrix<Self>) -> Rational {
        bareiss_det(m)
    }
}

/// A residue in `[0, p)`; the modulus is carried by [`PrimeField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElement(u32);

impl PrimeFieldElement {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Fails unless `p` is a prime no larger than `2^31`.
    pub fn new(p: u32) -> Result<Self> {
        if p > 1 << 31 || !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not a prime <= 2^31")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: i64) -> PrimeFieldElement {
        PrimeFieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    /// Image of a rational under `ℤ_(p) → 𝔽_p`; fails if `p` divides the
    /// denominator.
    pub fn from_rational(&self, q: &Rational) -> Result<PrimeFieldElement> {
        let p = BigInt::from(self.p);
        let reduce = |x: &BigInt| x.mod_floor(&p).to_u32().expect("residue fits in u32");
        let den = PrimeFieldElement(reduce(q.denom()));
        let inv = self
            .inv(&den)
            .ok_or_else(|| Error::Precondition(format!("denominator of {q} vanishes mod {}", self.p)))?;
        Ok(self.mul(&PrimeFieldElement(reduce(q.numer())), &inv))
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let p = self.p as u64;
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = PrimeFieldElement;

    fn zero(&self) -> PrimeFieldElement {
        PrimeFieldElement(0)
    }
    fn one(&self) -> PrimeFieldElement {
        PrimeFieldElement(1 % self.p)
    }
    fn embed_int(&self, v: i64) -> PrimeFieldElement {
        self.elem(v)
    }
    fn add(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        PrimeFieldElement(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32)
    }
    fn sub(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        PrimeFieldElement(((a.0 as u64 + self.p as u64 - b.0 as u64) % self.p as u64) as u32)
    }
    fn mul(&self, a: &PrimeFieldElement, b: &PrimeFieldElement) -> PrimeFieldElement {
        PrimeFieldElement((a.0 as u64 * b.0 as u64 % self.p as u64) as u32)
    }
    fn neg(&self, a: &PrimeFieldElement) -> PrimeFieldElement {
        PrimeFieldElement((self.p - a.0) % self.p)
    }
    fn inv(&self, a: &PrimeFieldElement) -> Option<PrimeFieldElement> {
        (a.0 != 0).then(|| PrimeFieldElement(self.pow(a.0 as u64, self.p as u64 - 2) as u32))
    }
    fn is_zero(&self, a: &PrimeFieldElement) -> bool {
        a.0 == 0
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { field, rows, cols, entries })
    }

    /// Builds a matrix from small integers; rows must be of equal length.
    pub fn from_i64_rows(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let entries = rows.iter().flatten().map(|&v| field.embed_int(v)).collect();
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Self { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { field: self.field.clone(), rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on the selected rows and columns (bit masks).
    pub fn submatrix(&self, row_mask: Mask, col_mask: Mask) -> Self {
        let rows: Vec<usize> = subset::elements(row_mask).collect();
        let cols: Vec<usize> = subset::elements(col_mask).collect();
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self { field: self.field.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    pub fn det(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(self.field.det(self))
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce().len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduces `self` to reduced row echelon form in place and returns the
    /// pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// A basis of the right kernel, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut rref = self.clone();
        let pivots = rref.row_reduce();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|fc| {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.get(r, fc));
            }
            v
        })
        .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn gaussian_det<F: Field>(m: &Matrix<F>) -> F::Elem {
    let f = m.field.clone();
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return f.zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = f.neg(&det);
        }
        let pivot = a.get(c, c).clone();
        det = f.mul(&det, &pivot);
        let inv = f.inv(&pivot).expect("pivot is nonzero");
        for i in c + 1..n {
            if f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = f.mul(a.get(i, c), &inv);
            for j in c..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Fraction-free elimination: rows are scaled to integers, then the
/// Bareiss recurrence keeps every intermediate value an integer minor.
fn bareiss_det(m: &Matrix<Rationals>) -> Rational {
    let n = m.rows;
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &lcm;
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::new(sign * &a[n - 1][n - 1], scale)
}

/// Signature counts of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self { positive, negative, zero }
    }
}

/// Inertia by symmetric congruence elimination.
///
/// A nonzero diagonal pivot contributes its sign; when the remaining
/// diagonal is all zero but some off-diagonal `a_ij` is not, the hyperbolic
/// block `[[0, a_ij], [a_ij, 0]]` is split off and contributes one positive
/// and one negative direction.
pub fn inertia(m: &Matrix<Rationals>) -> Result<Inertia> {
    if !m.is_symmetric() {
        return Err(Error::Shape("inertia requires a symmetric matrix".into()));
    }
    let mut a: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut active: Vec<usize> = (0..m.rows).collect();
    let mut out = Inertia::new(0, 0, 0);
    loop {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let k = active.swap_remove(pos);
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for &i in &active {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for &j in &active {
                    let v = &a[i][j] - &factor * &a[k][j];
                    a[i][j] = v;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.zero += active.len();
            return Ok(out);
        };
        active.retain(|&l| l != i && l != j);
        out.positive += 1;
        out.negative += 1;
        // Schur complement against [[0, b], [b, 0]], whose inverse is
        // [[0, 1/b], [1/b, 0]].
        let b = a[i][j].clone();
        for &l in &active {
            for &h in &active {
                let corr = (&a[l][i] * &a[h][j] + &a[l][j] * &a[h][i]) / &b;
                let v = &a[l][h] - corr;
                a[l][h] = v;
            }
        }
    }
}

/// A matrix over either supported field.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldMatrix {
    Rational(Matrix<Rationals>),
    Prime(Matrix<PrimeField>),
}

/// A scalar over either supported field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldValue {
    Rational(Rational),
    Prime(PrimeFieldElement),
}

impl FieldValue {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_zero(),
            FieldValue::Prime(x) => x.value() == 0,
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(q) => f.write_str(&format_rational(q)),
            FieldValue::Prime(x) => write!(f, "{x}"),
        }
    }
}

macro_rules! dispatch {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            FieldMatrix::Rational($m) => $body,
            FieldMatrix::Prime($m) => $body,
        }
    };
}

impl FieldMatrix {
    pub fn rows(&self) -> usize {
        dispatch!(self, m => m.rows())
    }

    pub fn cols(&self) -> usize {
        dispatch!(self, m => m.cols())
    }

    pub fn rank(&self) -> usize {
        dispatch!(self, m => m.rank())
    }

    pub fn det(&self) -> Result<FieldValue> {
        match self {
            FieldMatrix::Rational(m) => m.det().map(FieldValue::Rational),
            FieldMatrix::Prime(m) => m.det().map(FieldValue::Prime),
        }
    }

    /// Whether the square submatrix on `(row_mask, col_mask)` is invertible.
    pub fn minor_nonzero(&self, row_mask: Mask, col_mask: Mask) -> bool {
        dispatch!(self, m => {
            let sub = m.submatrix(row_mask, col_mask);
            !m.field().is_zero(&m.field().det(&sub))
        })
    }

    pub fn submatrix_rank(&self, row_mask: Mask, col_mask: Mask) -> usize {
        dispatch!(self, m => m.submatrix(row_mask, col_mask).rank())
    }

    pub fn transpose(&self) -> Self {
        match self {
            FieldMatrix::Rational(m) => FieldMatrix::Rational(m.transpose()),
            FieldMatrix::Prime(m) => FieldMatrix::Prime(m.transpose()),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (FieldMatrix::Rational(a), FieldMatrix::Rational(b)) => a.mul(b).map(FieldMatrix::Rational),
            (FieldMatrix::Prime(a), FieldMatrix::Prime(b)) if a.field() == b.field() => {
                a.mul(b).map(FieldMatrix::Prime)
            }
            _ => Err(Error::Dimension("matrices over different fields".into())),
        }
    }
}

impl From<Matrix<Rationals>> for FieldMatrix {
    fn from(m: Matrix<Rationals>) -> Self {
        FieldMatrix::Rational(m)
    }
}

impl From<Matrix<PrimeField>> for FieldMatrix {
    fn from(m: Matrix<PrimeField>) -> Self {
        FieldMatrix::Prime(m)
    }
}
