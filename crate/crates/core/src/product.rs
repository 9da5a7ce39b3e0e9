//! Products of bimatroids, the category and transpose laws, the
//! union-contraction formula for the extended matroid of a product, and
//! the comparison with products of realizing matrices.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bimatroid::{Bimatroid, Minor};
use crate::construct;
use crate::error::{Error, Result};
use crate::exactnum::FieldMatrix;
use crate::matroid::{default_labels, Matroid};
use crate::subset::{self, Mask};

/// `b` with its rows reordered to match the columns of `a`.
fn aligned(a: &Bimatroid, b: &Bimatroid) -> Result<Bimatroid> {
    if a.cols() == b.rows() {
        return Ok(b.clone());
    }
    let mismatch = || Error::GroundMismatch(format!("columns {:?} vs rows {:?}", a.cols(), b.rows()));
    if a.cols().len() != b.rows().len() {
        return Err(mismatch());
    }
    let distinct: BTreeSet<&String> = a.cols().iter().collect();
    if distinct.len() != a.cols().len() {
        return Err(mismatch());
    }
    // perm[i] = position in a.cols() of b's i-th row label
    let perm = b
        .rows()
        .iter()
        .map(|l| a.cols().iter().position(|c| c == l))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(mismatch)?;
    let move_rows = |rows: Mask| subset::elements(rows).fold(0, |acc, i| acc | 1 << perm[i]);
    Bimatroid::new(
        a.cols().to_vec(),
        b.cols().to_vec(),
        b.minors().iter().map(|m| Minor::new(move_rows(m.rows), m.cols)),
    )
}

/// `A · B` on `E × G`: `(I, K)` regular iff `(I, J)` and `(J, K)` are
/// regular for some `J ⊆ F`. The middle ground sets must agree as labeled
/// sets.
pub fn product(a: &Bimatroid, b: &Bimatroid) -> Result<Bimatroid> {
    let b = aligned(a, b)?;
    let mut by_middle: HashMap<Mask, Vec<Mask>> = HashMap::new();
    for m in b.minors() {
        by_middle.entry(m.rows).or_default().push(m.cols);
    }
    let mut minors = BTreeSet::new();
    for m in a.minors() {
        if let Some(ks) = by_middle.get(&m.cols) {
            minors.extend(ks.iter().map(|&k| Minor::new(m.rows, k)));
        }
    }
    Bimatroid::new(a.rows().to_vec(), b.cols().to_vec(), minors)
}

/// `(Â ⊕ 0_G ∨ 0_E ⊕ B̂) / F` on `E ⊔ G`, computed with matroid direct
/// sum, union and contraction.
pub fn frenk_extended(a: &Bimatroid, b: &Bimatroid) -> Result<Matroid> {
    let b = aligned(a, b)?;
    let (m, n) = (a.m(), a.n());
    let a_hat = a.extended_matroid().direct_sum(&Matroid::zero_on(b.cols().to_vec())?)?;
    let b_hat = Matroid::zero_on(a.rows().to_vec())?.direct_sum(&b.extended_matroid())?;
    let middle = subset::full(n) << m;
    Ok(a_hat.union(&b_hat)?.contract(middle))
}

/// Outcome of the category and transpose laws on one composable triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryLaws {
    pub associativity: bool,
    pub left_unit: bool,
    pub right_unit: bool,
    pub double_transpose: bool,
    pub identity_transpose: bool,
    /// `(A · B)ᵀ = Bᵀ · Aᵀ`.
    pub dagger: bool,
}

impl CategoryLaws {
    pub fn all_hold(&self) -> bool {
        self.associativity
            && self.left_unit
            && self.right_unit
            && self.double_transpose
            && self.identity_transpose
            && self.dagger
    }
}

/// Checks the laws on `a: E×F`, `b: F×G`, `c: G×H`.
pub fn check_category_laws(a: &Bimatroid, b: &Bimatroid, c: &Bimatroid) -> Result<CategoryLaws> {
    let ab = product(a, b)?;
    let associativity = product(&ab, c)? == product(a, &product(b, c)?)?;
    let id_e = construct::identity(a.rows().to_vec())?;
    let id_f = construct::identity(a.cols().to_vec())?;
    let left_unit = product(&id_e, a)? == *a;
    let right_unit = product(a, &id_f)? == *a;
    let double_transpose = [a, b, c].iter().all(|x| x.transpose().transpose() == **x);
    let identity_transpose = id_e.transpose() == id_e && id_f.transpose() == id_f;
    let dagger = ab.transpose() == product(&b.transpose(), &a.transpose())?
        && product(b, c)?.transpose() == product(&c.transpose(), &b.transpose())?;
    Ok(CategoryLaws { associativity, left_unit, right_unit, double_transpose, identity_transpose, dagger })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchyBinetReport {
    /// Regular minors of the matrix product are regular in the bimatroid
    /// product.
    pub inclusion: bool,
    /// The two families coincide.
    pub equality: bool,
}

/// Compares `from_matrix(A·B)` with `from_matrix(A) · from_matrix(B)`.
pub fn cauchy_binet_check(a: &FieldMatrix, b: &FieldMatrix) -> Result<CauchyBinetReport> {
    let ab = a.mul(b)?;
    let (e, f, g) = (default_labels("e", a.rows()), default_labels("f", a.cols()), default_labels("g", b.cols()));
    let direct = construct::from_matrix_labeled(&ab, e.clone(), g.clone())?;
    let via_product = product(
        &construct::from_matrix_labeled(a, e, f.clone())?,
        &construct::from_matrix_labeled(b, f, g)?,
    )?;
    Ok(CauchyBinetReport {
        inclusion: direct.minors().is_subset(via_product.minors()),
        equality: direct.minors() == via_product.minors(),
    })
}

/// Composite `R · S = {(e, g) : (e, f) ∈ R and (f, g) ∈ S for some f}`.
pub fn relation_composite(r: &[(usize, usize)], s: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let out: BTreeSet<(usize, usize)> = r
        .iter()
        .flat_map(|&(e, f)| s.iter().filter(move |&&(f2, _)| f2 == f).map(move |&(_, g)| (e, g)))
        .collect();
    out.into_iter().collect()
}
