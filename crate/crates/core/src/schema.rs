//! JSON interchange formats.
//!
//! Every `*Json` type parses what it emits. Output is canonical: subsets are
//! listed as ascending indices, families in the order of the underlying
//! ordered sets, so equal objects serialize to identical bytes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::bimatroid::{Bimatroid, Minor, Orientation, RelativeRankTable};
use crate::construct;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, FieldMatrix, Matrix, PrimeField, Rational, Rationals};
use crate::matroid::Matroid;
use crate::morphism::{MatroidMorphism, SetMap};
use crate::polynomial::MultiPoly;
use crate::subset::{self, Mask};

/// An integer or an `"a/b"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(v) => Ok(Rational::from_integer((*v).into())),
            Scalar::Text(t) => parse_rational(t),
        }
    }

    /// Integers that fit in `i64` stay numbers, everything else is text.
    pub fn from_rational(q: &Rational) -> Self {
        use num_traits::ToPrimitive;
        match q.is_integer().then(|| q.numer().to_i64()).flatten() {
            Some(v) => Scalar::Int(v),
            None => Scalar::Text(format_rational(q)),
        }
    }
}

/// An element named by position or by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

impl ElementRef {
    fn resolve(&self, labels: &[String]) -> Result<usize> {
        match self {
            ElementRef::Index(i) if *i < labels.len() => Ok(*i),
            ElementRef::Index(i) => Err(Error::Parse(format!("index {i} out of range 0..{}", labels.len()))),
            ElementRef::Label(l) => labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Parse(format!("unknown label {l:?}"))),
        }
    }
}

fn mask_of(refs: &[ElementRef], labels: &[String]) -> Result<Mask> {
    refs.iter().try_fold(0, |acc, r| Ok(acc | 1 << r.resolve(labels)?))
}

fn mask_of_indices(indices: &[usize], len: usize) -> Result<Mask> {
    indices.iter().try_fold(0, |acc, &i| {
        if i < len {
            Ok(acc | 1 << i)
        } else {
            Err(Error::Parse(format!("index {i} out of range 0..{len}")))
        }
    })
}

fn indices(mask: Mask) -> Vec<usize> {
    subset::elements(mask).collect()
}

fn check_labels(what: &str, labels: &[String]) -> Result<()> {
    let distinct: BTreeSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() {
        return Err(Error::Parse(format!("duplicate labels in {what}")));
    }
    subset::check_ground(labels.len())
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("schema types always serialize")
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldTag {
    Q,
    Fp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldTag,
    /// Defaults to 65521 when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Scalar>>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<FieldMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Shape(format!("entries do not form a {} x {} grid", self.rows, self.cols)));
        }
        let values: Vec<Rational> = self.entries.iter().flatten().map(Scalar::to_rational).collect::<Result<_>>()?;
        match self.field {
            FieldTag::Q => Ok(Matrix::new(Rationals, self.rows, self.cols, values)?.into()),
            FieldTag::Fp => {
                let field = match self.p {
                    Some(p) => PrimeField::new(p)?,
                    None => PrimeField::default(),
                };
                let elems = values.iter().map(|q| field.from_rational(q)).collect::<Result<_>>()?;
                Ok(Matrix::new(field, self.rows, self.cols, elems)?.into())
            }
        }
    }

    pub fn from_matrix(a: &FieldMatrix) -> Self {
        let (rows, cols) = (a.rows(), a.cols());
        let (field, p, flat): (FieldTag, Option<u32>, Vec<Scalar>) = match a {
            FieldMatrix::Rational(m) => (FieldTag::Q, None, m.entries().iter().map(Scalar::from_rational).collect()),
            FieldMatrix::Prime(m) => (
                FieldTag::Fp,
                Some(m.field().modulus()),
                m.entries().iter().map(|e| Scalar::Int(e.value() as i64)).collect(),
            ),
        };
        let entries = if cols == 0 { vec![Vec::new(); rows] } else { flat.chunks(cols).map(<[Scalar]>::to_vec).collect() };
        Self { field, p, rows, cols, entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground: Vec<String>,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidJson {
    /// Fails with a precondition error when the bases violate exchange.
    pub fn to_matroid(&self) -> Result<Matroid> {
        check_labels("ground", &self.ground)?;
        let bases = self.bases.iter().map(|b| mask_of_indices(b, self.ground.len())).collect::<Result<Vec<_>>>()?;
        Matroid::new(self.ground.clone(), bases)
    }

    pub fn from_matroid(m: &Matroid) -> Self {
        Self { ground: m.ground().to_vec(), bases: m.bases().iter().map(|&b| indices(b)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorJson {
    #[serde(rename = "I")]
    pub rows: Vec<ElementRef>,
    #[serde(rename = "J")]
    pub cols: Vec<ElementRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimatroidJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub regular_minors: Vec<MinorJson>,
}

impl BimatroidJson {
    /// Shape checks only; the axioms are checked by
    /// [`Bimatroid::validate`].
    pub fn to_bimatroid(&self) -> Result<Bimatroid> {
        check_labels("rows", &self.rows)?;
        check_labels("cols", &self.cols)?;
        let minors = self
            .regular_minors
            .iter()
            .map(|mj| Ok(Minor::new(mask_of(&mj.rows, &self.rows)?, mask_of(&mj.cols, &self.cols)?)))
            .collect::<Result<Vec<_>>>()?;
        Bimatroid::new(self.rows.clone(), self.cols.clone(), minors)
    }

    pub fn from_bimatroid(b: &Bimatroid) -> Self {
        let refs = |mask| subset::elements(mask).map(ElementRef::Index).collect();
        Self {
            rows: b.rows().to_vec(),
            cols: b.cols().to_vec(),
            regular_minors: b.minors().iter().map(|m| MinorJson { rows: refs(m.rows), cols: refs(m.cols) }).collect(),
        }
    }
}

/// The extended matroid together with the row set `E` as a basis. Rows
/// and columns may share names, so `ground` may repeat a label; elements
/// are identified by position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedJson {
    pub ground: Vec<String>,
    pub bases: Vec<Vec<usize>>,
    #[serde(rename = "E")]
    pub row_set: Vec<usize>,
}

/// Relative rank table; `values[S + 2^m · T]` is `r(S, T)` with `S`, `T`
/// read as bit masks over the rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTableJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub values: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleJson {
    #[serde(rename = "S")]
    pub rows: Vec<usize>,
    #[serde(rename = "T")]
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectanglesJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub orientation: Orientation,
    pub rectangles: Vec<RectangleJson>,
}

/// Any of the four equivalent descriptions of a bimatroid, told apart by
/// their required fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BimatroidView {
    Minors(BimatroidJson),
    Extended(ExtendedJson),
    RankTable(RankTableJson),
    Rectangles(RectanglesJson),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViewKind {
    Minors,
    Extended,
    RankTable,
    Rectangles(Orientation),
}

/// Validation of a view in its own axiom system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewValidity {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

impl ViewValidity {
    fn from<E: std::fmt::Debug>(r: std::result::Result<(), E>) -> Self {
        match r {
            Ok(()) => Self { valid: true, violation: None },
            Err(e) => Self { valid: false, violation: Some(format!("{e:?}")) },
        }
    }
}

impl BimatroidView {
    pub fn of(b: &Bimatroid, kind: ViewKind) -> Self {
        let (rows, cols) = (b.rows().to_vec(), b.cols().to_vec());
        match kind {
            ViewKind::Minors => BimatroidView::Minors(BimatroidJson::from_bimatroid(b)),
            ViewKind::Extended => {
                let ext = MatroidJson::from_matroid(&b.extended_matroid());
                BimatroidView::Extended(ExtendedJson { ground: ext.ground, bases: ext.bases, row_set: (0..b.m()).collect() })
            }
            ViewKind::RankTable => BimatroidView::RankTable(RankTableJson { rows, cols, values: b.rank_table().values().to_vec() }),
            ViewKind::Rectangles(orientation) => BimatroidView::Rectangles(RectanglesJson {
                rows,
                cols,
                orientation,
                rectangles: b
                    .regular_rectangles(orientation)
                    .into_iter()
                    .map(|(s, t)| RectangleJson { rows: indices(s), cols: indices(t) })
                    .collect(),
            }),
        }
    }

    /// Checks the axioms native to this view.
    pub fn validate(&self) -> Result<ViewValidity> {
        Ok(match self {
            BimatroidView::Minors(j) => ViewValidity::from(j.to_bimatroid()?.validate()),
            BimatroidView::Extended(j) => {
                subset::check_ground(j.ground.len())?;
                let bases = j.bases.iter().map(|b| mask_of_indices(b, j.ground.len())).collect::<Result<BTreeSet<_>>>()?;
                let e = mask_of_indices(&j.row_set, j.ground.len())?;
                match crate::matroid::check_basis_family(&bases) {
                    Err(v) => ViewValidity::from(Err(v)),
                    Ok(()) if !bases.contains(&e) => ViewValidity::from(Err("row set is not a basis")),
                    Ok(()) => ViewValidity::from(Ok::<(), ()>(())),
                }
            }
            BimatroidView::RankTable(j) => ViewValidity::from(rank_table(j)?.validate()),
            BimatroidView::Rectangles(j) => {
                let family = rectangle_family(j)?;
                let (m, n) = (j.rows.len(), j.cols.len());
                ViewValidity::from(match j.orientation {
                    Orientation::Vertical => crate::bimatroid::validate_rectangle_axioms(m, n, &family),
                    Orientation::Horizontal => crate::bimatroid::validate_horizontal_rectangle_axioms(m, n, &family),
                })
            }
        })
    }

    /// Reads the regular minors back off the view. Square rectangles of
    /// either orientation are exactly the regular minors.
    pub fn to_bimatroid(&self) -> Result<Bimatroid> {
        match self {
            BimatroidView::Minors(j) => j.to_bimatroid(),
            BimatroidView::Extended(j) => {
                subset::check_ground(j.ground.len())?;
                let bases = j.bases.iter().map(|b| mask_of_indices(b, j.ground.len())).collect::<Result<Vec<_>>>()?;
                let m = Matroid::new(j.ground.clone(), bases)?;
                let e = mask_of_indices(&j.row_set, j.ground.len())?;
                Bimatroid::from_extended_matroid(&m, e)
            }
            BimatroidView::RankTable(j) => rank_table(j)?.to_bimatroid(j.rows.clone(), j.cols.clone()),
            BimatroidView::Rectangles(j) => {
                Bimatroid::from_vertical_rectangles(j.rows.clone(), j.cols.clone(), &rectangle_family(j)?)
            }
        }
    }
}

fn rank_table(j: &RankTableJson) -> Result<RelativeRankTable> {
    check_labels("rows", &j.rows)?;
    check_labels("cols", &j.cols)?;
    let (m, n) = (j.rows.len(), j.cols.len());
    if j.values.len() != 1 << (m + n) {
        return Err(Error::Shape(format!("rank table needs {} values, got {}", 1u64 << (m + n), j.values.len())));
    }
    RelativeRankTable::from_fn(m, n, |s, t| j.values[(s | t << m) as usize])
}

fn rectangle_family(j: &RectanglesJson) -> Result<BTreeSet<(Mask, Mask)>> {
    check_labels("rows", &j.rows)?;
    check_labels("cols", &j.cols)?;
    j.rectangles
        .iter()
        .map(|r| Ok((mask_of_indices(&r.rows, j.rows.len())?, mask_of_indices(&r.cols, j.cols.len())?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub pairs: Vec<(ElementRef, ElementRef)>,
}

impl RelationJson {
    pub fn pairs(&self) -> Result<Vec<(usize, usize)>> {
        self.pairs.iter().map(|(e, f)| Ok((e.resolve(&self.rows)?, f.resolve(&self.cols)?))).collect()
    }

    pub fn to_bimatroid(&self) -> Result<Bimatroid> {
        check_labels("rows", &self.rows)?;
        check_labels("cols", &self.cols)?;
        construct::from_relation(&self.pairs()?, self.rows.clone(), self.cols.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub map: BTreeMap<String, String>,
}

impl MapJson {
    pub fn to_map(&self) -> Result<SetMap> {
        check_labels("domain", &self.domain)?;
        check_labels("codomain", &self.codomain)?;
        SetMap::from_labels(self.domain.clone(), self.codomain.clone(), &self.map)
    }

    pub fn from_map(phi: &SetMap) -> Self {
        Self { domain: phi.domain().to_vec(), codomain: phi.codomain().to_vec(), map: phi.to_label_map() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source: MatroidJson,
    pub target: MatroidJson,
    pub map: BTreeMap<String, String>,
}

impl MorphismJson {
    /// The underlying matroids and map, before the morphism condition is
    /// checked.
    pub fn parts(&self) -> Result<(Matroid, Matroid, SetMap)> {
        let source = self.source.to_matroid()?;
        let target = self.target.to_matroid()?;
        let map = SetMap::from_labels(source.ground().to_vec(), target.ground().to_vec(), &self.map)?;
        Ok((source, target, map))
    }

    pub fn to_morphism(&self) -> Result<MatroidMorphism> {
        let (source, target, map) = self.parts()?;
        MatroidMorphism::new(source, target, map)
    }

    pub fn from_morphism(phi: &MatroidMorphism) -> Self {
        Self {
            source: MatroidJson::from_matroid(phi.source()),
            target: MatroidJson::from_matroid(phi.target()),
            map: phi.map().to_label_map(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn to_poly(&self) -> Result<MultiPoly> {
        check_labels("vars", &self.vars)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exp.len() != self.vars.len() {
                    return Err(Error::Shape(format!("exponent {:?} has the wrong length", t.exp)));
                }
                Ok((t.exp.clone(), t.coef.to_rational()?))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(self.vars.clone(), terms)
    }

    /// Terms in increasing lexicographic order of exponents; coefficients
    /// always as `"a/b"` text.
    pub fn from_poly(p: &MultiPoly) -> Self {
        Self {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(exp, c)| TermJson { exp: exp.clone(), coef: Scalar::Text(format_rational(c)) })
                .collect(),
        }
    }
}
