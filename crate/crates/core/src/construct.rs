//! Realizable, relation, map, bond and identity bimatroids.

use rand::Rng;

use crate::bimatroid::{Bimatroid, Minor};
use crate::error::{Error, Result};
use crate::exactnum::{FieldMatrix, Matrix, PrimeField, PrimeFieldElement};
use crate::matroid::{default_labels, Matroid};
use crate::morphism::SetMap;
use crate::subset::{self, Mask};

/// Largest `min(rows, cols)` accepted by [`from_matrix`].
pub const MATRIX_MINOR_BUDGET: usize = 10;

/// Realizable bimatroid with rows `e0..` and columns `f0..`.
pub fn from_matrix(a: &FieldMatrix) -> Result<Bimatroid> {
    from_matrix_labeled(a, default_labels("e", a.rows()), default_labels("f", a.cols()))
}

/// Regular minors are the square submatrices with nonzero determinant.
pub fn from_matrix_labeled(a: &FieldMatrix, rows: Vec<String>, cols: Vec<String>) -> Result<Bimatroid> {
    let (m, n) = (a.rows(), a.cols());
    if rows.len() != m || cols.len() != n {
        return Err(Error::Dimension(format!("{}×{} labels for a {m}×{n} matrix", rows.len(), cols.len())));
    }
    if m.min(n) > MATRIX_MINOR_BUDGET {
        return Err(Error::Budget(format!(
            "min(rows, cols) = {} exceeds the minor enumeration budget of {MATRIX_MINOR_BUDGET}",
            m.min(n)
        )));
    }
    subset::check_ground(m + n)?;
    let mut minors = Vec::new();
    for k in 0..=m.min(n) {
        for i in subset::k_subsets(m, k) {
            for j in subset::k_subsets(n, k) {
                if a.minor_nonzero(i, j) {
                    minors.push(Minor::new(i, j));
                }
            }
        }
    }
    Bimatroid::new(rows, cols, minors)
}

/// Adjacency of a relation: `adj[e]` is the mask of columns related to `e`.
fn adjacency(pairs: &[(usize, usize)], m: usize, n: usize) -> Result<Vec<Mask>> {
    let mut adj = vec![0 as Mask; m];
    for &(e, f) in pairs {
        if e >= m || f >= n {
            return Err(Error::Shape(format!("pair ({e}, {f}) outside {m}×{n}")));
        }
        adj[e] |= 1 << f;
    }
    Ok(adj)
}

/// Whether the relation contains a perfect matching of `rows` onto `cols`
/// (equal sizes assumed). Kuhn's augmenting paths.
pub fn has_perfect_matching(adj: &[Mask], rows: Mask, cols: Mask) -> bool {
    // owner[f] = row currently matched to column f
    let mut owner = [usize::MAX; 64];

    fn augment(e: usize, adj: &[Mask], cols: Mask, seen: &mut Mask, owner: &mut [usize; 64]) -> bool {
        for f in subset::elements(adj[e] & cols & !*seen) {
            *seen |= 1 << f;
            if owner[f] == usize::MAX || augment(owner[f], adj, cols, seen, owner) {
                owner[f] = e;
                return true;
            }
        }
        false
    }

    subset::elements(rows).all(|e| {
        let mut seen = 0;
        augment(e, adj, cols, &mut seen, &mut owner)
    })
}

/// Relation bimatroid: `(I, J)` regular iff the pairs contain a perfect
/// matching between `I` and `J`.
pub fn from_relation(pairs: &[(usize, usize)], rows: Vec<String>, cols: Vec<String>) -> Result<Bimatroid> {
    let (m, n) = (rows.len(), cols.len());
    subset::check_ground(m + n)?;
    let adj = adjacency(pairs, m, n)?;
    let mut minors = Vec::new();
    for k in 0..=m.min(n) {
        for i in subset::k_subsets(m, k) {
            for j in subset::k_subsets(n, k) {
                if has_perfect_matching(&adj, i, j) {
                    minors.push(Minor::new(i, j));
                }
            }
        }
    }
    Bimatroid::new(rows, cols, minors)
}

/// Bimatroid of the graph `{(φ(f), f)}` of a map `φ: F → E`, on `E × F`.
pub fn from_map(phi: &SetMap) -> Result<Bimatroid> {
    let pairs: Vec<_> = phi.images().iter().enumerate().map(|(f, &e)| (e, f)).collect();
    from_relation(&pairs, phi.codomain().to_vec(), phi.domain().to_vec())
}

/// Bond bimatroid on `B × F`: `(I, J)` regular iff `(B − I) ∪ J` is a
/// basis of `m`. Rows are the elements of `basis` in ground order.
pub fn bond(m: &Matroid, basis: Mask) -> Result<Bimatroid> {
    if !m.is_basis(basis) {
        return Err(Error::Precondition("bond bimatroid needs a basis of the matroid".into()));
    }
    let rows: Vec<String> = subset::elements(basis).map(|i| m.ground()[i].clone()).collect();
    let (r, n) = (rows.len(), m.size());
    subset::check_ground(r + n)?;
    let mut minors = Vec::new();
    for i in subset::subsets(subset::full(r)) {
        let rest = basis & !subset::expand(i, basis);
        for j in subset::k_subsets(n, subset::size(i)) {
            if m.is_basis(rest | j) && rest & j == 0 {
                minors.push(Minor::new(i, j));
            }
        }
    }
    Bimatroid::new(rows, m.ground().to_vec(), minors)
}

/// The unit `I_E`: minors `(I, I)` for every `I ⊆ E`.
pub fn identity(labels: Vec<String>) -> Result<Bimatroid> {
    let all = subset::full(labels.len());
    Bimatroid::new(labels.clone(), labels, subset::subsets(all).map(|i| Minor::new(i, i)))
}

/// Matrix over `field` with uniform nonzero entries on the relation and
/// zeros elsewhere.
pub fn random_lift<R: Rng + ?Sized>(
    pairs: &[(usize, usize)],
    m: usize,
    n: usize,
    field: &PrimeField,
    rng: &mut R,
) -> Result<FieldMatrix> {
    let adj = adjacency(pairs, m, n)?;
    let p = field.modulus() as i64;
    let entries: Vec<PrimeFieldElement> = (0..m * n)
        .map(|idx| {
            let (e, f) = (idx / n, idx % n);
            if subset::contains(adj[e], f) {
                field.elem(rng.random_range(1..p))
            } else {
                field.elem(0)
            }
        })
        .collect();
    Ok(Matrix::new(*field, m, n, entries)?.into())
}
