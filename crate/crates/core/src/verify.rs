//! Executable checks of the log-concavity theorems.
//!
//! Each check produces a [`TheoremReport`] holding the counting sequences,
//! one exact inequality record per index and a list of cross-path
//! properties. Every count that feeds an inequality is computed twice, by
//! direct enumeration and by collapsing a generating polynomial, and the
//! two must agree exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bimatroid::{Bimatroid, Orientation};
use crate::corpus::{self, FieldChoice};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, Rational};
use crate::lorentzian::{self, MAX_LORENTZIAN_DEGREE, MAX_LORENTZIAN_VARS};
use crate::matroid::Matroid;
use crate::morphism::{self, MatroidMorphism};
use crate::polynomial::{self, MultiPoly};
use crate::schema::{BimatroidJson, MatroidJson, MorphismJson};
use crate::subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    A,
    B,
    C,
    Mason,
    CPipeline,
    ELorentzian,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] =
        [TheoremId::A, TheoremId::B, TheoremId::C, TheoremId::Mason, TheoremId::CPipeline, TheoremId::ELorentzian];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::C => "C",
            TheoremId::Mason => "mason",
            TheoremId::CPipeline => "C-pipeline",
            TheoremId::ELorentzian => "E-lorentzian",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown theorem {s:?}")))
    }
}

/// One inequality `lhs >= rhs` at index `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Which sequence the inequality is about, when a report has several.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<String>,
    pub k: i64,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// A yes/no fact that must hold, typically agreement of two computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: serde_json::Value,
    pub seed: u64,
    #[serde(default)]
    pub sequences: BTreeMap<String, Vec<String>>,
    pub checks: Vec<CheckRecord>,
    #[serde(default)]
    pub properties: Vec<PropertyRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// Conjunction of every check and every property.
    pub verdict: bool,
}

impl TheoremReport {
    fn new(theorem: TheoremId, instance: serde_json::Value) -> Self {
        Self {
            theorem: theorem.as_str().into(),
            instance,
            seed: 0,
            sequences: BTreeMap::new(),
            checks: Vec::new(),
            properties: Vec::new(),
            skipped: None,
            verdict: true,
        }
    }

    fn sequence(&mut self, name: &str, seq: &[Rational]) {
        self.sequences.insert(name.into(), seq.iter().map(format_rational).collect());
    }

    fn property(&mut self, name: &str, holds: bool, detail: Option<String>) {
        self.properties.push(PropertyRecord { name: name.into(), holds, detail });
    }

    fn finish(mut self) -> Self {
        self.verdict = self.checks.iter().all(|c| c.holds) && self.properties.iter().all(|p| p.holds);
        self
    }

    /// The sequence recorded under `name`, parsed back to rationals.
    pub fn sequence_values(&self, name: &str) -> Option<Vec<Rational>> {
        self.sequences.get(name)?.iter().map(|s| crate::exactnum::parse_rational(s).ok()).collect()
    }

    /// `true` when some record or property failed, i.e. an alarm.
    pub fn is_alarm(&self) -> bool {
        !self.verdict
    }
}

fn counts(v: &[u64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::from_integer(c.into())).collect()
}

fn binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(subset::binomial(n, k).into())
}

fn at(seq: &[Rational], k: usize) -> Rational {
    seq.get(k).cloned().unwrap_or_else(Rational::zero)
}

fn padded(seq: &[Rational], len: usize) -> Vec<Rational> {
    (0..len.max(seq.len())).map(|k| at(seq, k)).collect()
}

/// `(a_k / C(s,k))² >= a_{k+1}/C(s,k+1) · a_{k−1}/C(s,k−1)` for
/// `1 <= k < s`.
fn ulc_records(name: Option<&str>, seq: &[Rational], s: usize) -> Vec<CheckRecord> {
    let norm = |k: usize| at(seq, k) / binomial(s, k);
    (1..s)
        .map(|k| {
            let lhs = norm(k) * norm(k);
            let rhs = norm(k + 1) * norm(k - 1);
            record(name, k, lhs, rhs)
        })
        .collect()
}

/// `a_k² >= a_{k+1} a_{k−1}` for `1 <= k < len − 1`.
fn lc_records(name: Option<&str>, seq: &[Rational]) -> Vec<CheckRecord> {
    (1..seq.len().saturating_sub(1))
        .map(|k| record(name, k, &seq[k] * &seq[k], &seq[k + 1] * &seq[k - 1]))
        .collect()
}

fn record(name: Option<&str>, k: usize, lhs: Rational, rhs: Rational) -> CheckRecord {
    CheckRecord {
        sequence: name.map(str::to_string),
        k: k as i64,
        holds: lhs >= rhs,
        lhs: format_rational(&lhs),
        rhs: format_rational(&rhs),
    }
}

fn agreement(report: &mut TheoremReport, name: &str, direct: &[Rational], other: &[Rational]) {
    let len = direct.len().max(other.len());
    let (a, b) = (padded(direct, len), padded(other, len));
    let detail = (a != b).then(|| {
        let show = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
        format!("direct ({}) vs polynomial ({})", show(&a), show(&b))
    });
    report.property(name, a == b, detail);
}

fn no_internal_zeros(report: &mut TheoremReport, name: &str, seq: &[Rational]) {
    let holds = lorentzian::no_internal_zeros(seq).unwrap_or(false);
    report.property(&format!("no_internal_zeros:{name}"), holds, None);
}

/// Runs the bivariate test both ways when the polynomial is within the
/// Lorentzian caps; a disagreement or a non-Lorentzian answer fails.
fn bivariate_lorentzian(report: &mut TheoremReport, name: &str, seq: &[Rational]) {
    let d = seq.len().saturating_sub(1);
    if d > MAX_LORENTZIAN_DEGREE as usize {
        return;
    }
    let (holds, detail) = match lorentzian::bivariate_ulc_equivalence(seq, d) {
        Ok(b) => (b, None),
        Err(e) => (false, Some(e.to_string())),
    };
    report.property(&format!("bivariate_lorentzian:{name}"), holds, detail);
}

fn require_valid(b: &Bimatroid) -> Result<()> {
    b.validate().map_err(|v| Error::Precondition(format!("not a bimatroid: {v:?}")))
}

fn bimatroid_instance(b: &Bimatroid) -> serde_json::Value {
    serde_json::json!({ "bimatroid": BimatroidJson::from_bimatroid(b) })
}

fn morphism_instance(phi: &MatroidMorphism) -> serde_json::Value {
    serde_json::json!({ "morphism": MorphismJson::from_morphism(phi) })
}

/// Ultra log-concavity of the regular-minor counts `R_k` with
/// normalization `m ∧ n`.
pub fn check_theorem_a(b: &Bimatroid) -> Result<TheoremReport> {
    require_valid(b)?;
    let mut report = TheoremReport::new(TheoremId::A, bimatroid_instance(b));
    let l = b.m().min(b.n());
    let r = padded(&counts(&b.minor_counts()), l + 1);
    report.sequence("R", &r);
    report.checks = ulc_records(None, &r, l);
    no_internal_zeros(&mut report, "R", &r);

    let to_y: Vec<bool> = (0..b.m() + b.n()).map(|i| i >= b.m()).collect();
    let collapsed = polynomial::regular_minor_poly(b)?.bivariate_collapse(&to_y)?;
    agreement(&mut report, "counts_match_polynomial_collapse", &r, &collapsed);
    bivariate_lorentzian(&mut report, "R", &collapsed);
    Ok(report.finish())
}

/// Counts of regular rectangles by column count (vertical) and by row
/// count (horizontal), each ultra log-concave with normalization `|E|+|F|`.
pub fn check_theorem_b(b: &Bimatroid) -> Result<TheoremReport> {
    require_valid(b)?;
    let mut report = TheoremReport::new(TheoremId::B, bimatroid_instance(b));
    let n_total = b.m() + b.n();
    for (name, orientation) in [("RR_vertical", Orientation::Vertical), ("RR_horizontal", Orientation::Horizontal)] {
        let mut direct = vec![0u64; n_total + 1];
        for (s, t) in b.regular_rectangles(orientation) {
            let k = match orientation {
                Orientation::Vertical => subset::size(t),
                Orientation::Horizontal => subset::size(s),
            };
            direct[k] += 1;
        }
        let direct = counts(&direct);
        report.sequence(name, &direct);
        report.checks.extend(ulc_records(Some(name), &direct, n_total));
        no_internal_zeros(&mut report, name, &direct);

        // horizontal rectangles of A are the vertical ones of Aᵀ
        let oriented = match orientation {
            Orientation::Vertical => b.clone(),
            Orientation::Horizontal => b.transpose(),
        };
        let ext = oriented.extended_matroid();
        let p = polynomial::independent_set_poly_homogenized(&ext, "z")?;
        let to_y: Vec<bool> = (0..=n_total).map(|i| i >= oriented.m() && i < n_total).collect();
        let collapsed = p.bivariate_collapse(&to_y)?;
        agreement(&mut report, &format!("counts_match_polynomial_collapse:{name}"), &direct, &collapsed);
        bivariate_lorentzian(&mut report, name, &collapsed);
    }
    Ok(report.finish())
}

/// `B_k(φ)` by the pullback: `T` independent in `M` whose rank in `φ*M'`
/// equals `rk M'`.
fn basis_counts_via_pullback(phi: &MatroidMorphism) -> Result<Vec<u64>> {
    let pulled = morphism::pullback(phi.map(), phi.target())?;
    let want = phi.target().rank();
    let mut out = vec![0u64; phi.source().rank() + 1];
    for t in phi.source().independent_sets() {
        if pulled.rank_of(t) == want {
            out[subset::size(t)] += 1;
        }
    }
    Ok(out)
}

/// Log-concavity of `B_k(φ)`.
pub fn check_theorem_c(phi: &MatroidMorphism) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(TheoremId::C, morphism_instance(phi));
    fill_theorem_c(&mut report, phi)?;
    Ok(report.finish())
}

fn fill_theorem_c(report: &mut TheoremReport, phi: &MatroidMorphism) -> Result<Vec<Rational>> {
    let b = counts(&phi.basis_counts());
    report.sequence("B", &b);
    report.checks = lc_records(None, &b);
    no_internal_zeros(report, "B", &b);
    agreement(report, "counts_match_pullback", &b, &counts(&basis_counts_via_pullback(phi)?));
    if phi.image_spans() {
        // B_k(φ) = coefficient of w0^{r−k} in the r-weak polynomial over C(r, r−k)
        let r = phi.source().rank();
        let p = polynomial::weak_basis_poly(phi, r)?;
        let to_y: Vec<bool> = (0..p.num_vars()).map(|i| i > 0).collect();
        let via_poly: Vec<Rational> = p
            .bivariate_collapse(&to_y)?
            .iter()
            .enumerate()
            .map(|(k, c)| c / binomial(r, r - k))
            .collect();
        agreement(report, "counts_match_weak_polynomial", &b, &via_poly);
    }
    Ok(b)
}

/// Log-concavity of the independent-set counts `I_k(M)`, as Theorem C for
/// the map to a single loop.
pub fn check_mason(m: &Matroid) -> Result<TheoremReport> {
    let phi = MatroidMorphism::to_point(m.clone());
    let mut report = TheoremReport::new(TheoremId::Mason, serde_json::json!({ "matroid": MatroidJson::from_matroid(m) }));
    let b = fill_theorem_c(&mut report, &phi)?;
    let renamed = report.sequences.remove("B").expect("recorded above");
    report.sequences.insert("I".into(), renamed);
    if let Some(p) = report.properties.iter_mut().find(|p| p.name == "no_internal_zeros:B") {
        p.name = "no_internal_zeros:I".into();
    }
    agreement(&mut report, "counts_match_independent_sets", &b, &counts(&m.independent_set_counts()));
    Ok(report.finish())
}

/// The padded matroid `M̃_φ`: exchange, the `Q`-collapse identity and ultra
/// log-concavity of `C(r,k) B_k` with normalization `r`.
pub fn check_theorem_c_pipeline(phi: &MatroidMorphism) -> Result<TheoremReport> {
    if !phi.image_spans() {
        return Err(Error::Precondition("the image of the morphism does not span the target".into()));
    }
    let mut report = TheoremReport::new(TheoremId::CPipeline, morphism_instance(phi));
    let r = phi.source().rank();
    let n = phi.source().size();
    let b = counts(&phi.basis_counts());
    report.sequence("B", &b);

    let tilde = match phi.tilde_matroid() {
        Ok(m) => {
            report.property("tilde_exchange", true, None);
            m
        }
        Err(e) => {
            report.property("tilde_exchange", false, Some(e.to_string()));
            return Ok(report.finish());
        }
    };
    let pb = polynomial::basis_generating_poly(&tilde)?;

    // w_q -> x collapses every S ⊔ T to C(r, |T|) x^{r−|T|} w^T
    let mut target = vec!["x".to_string()];
    target.extend(phi.source().ground().iter().cloned());
    let forms: Vec<Vec<Rational>> = (0..r + n)
        .map(|i| {
            let mut row = vec![Rational::zero(); n + 1];
            row[if i < r { 0 } else { i - r + 1 }] = Rational::one();
            row
        })
        .collect();
    let q_collapsed = pb.substitute(target.clone(), &forms)?;
    let expected = MultiPoly::from_terms(
        target,
        phi.bases().into_iter().map(|t| {
            let k = subset::size(t);
            let mut e = vec![(r - k) as u32];
            e.extend((0..n).map(|i| subset::contains(t, i) as u32));
            (e, binomial(r, k))
        }),
    )?;
    report.property("q_collapse_coefficients", q_collapsed == expected, None);
    let weak = polynomial::weak_basis_poly(phi, r)?;
    // same variable order, with x in place of w0
    report.property("q_collapse_is_weak_polynomial", q_collapsed.terms() == weak.terms(), None);

    let weighted: Vec<Rational> = b.iter().enumerate().map(|(k, bk)| binomial(r, k) * bk).collect();
    report.sequence("weighted", &weighted);
    report.checks = ulc_records(Some("weighted"), &weighted, r);
    no_internal_zeros(&mut report, "weighted", &weighted);

    let to_y: Vec<bool> = (0..r + n).map(|i| i >= r).collect();
    agreement(&mut report, "weighted_match_bivariate_collapse", &weighted, &pb.bivariate_collapse(&to_y)?);
    bivariate_lorentzian(&mut report, "weighted", &weighted);

    if r + n <= MAX_LORENTZIAN_VARS && r <= MAX_LORENTZIAN_DEGREE as usize {
        let (holds, detail) = match lorentzian::is_lorentzian(&pb) {
            Ok(v) => (v, None),
            Err(e) => (false, Some(e.to_string())),
        };
        report.property("tilde_basis_polynomial_lorentzian", holds, detail);
    }
    Ok(report.finish())
}

/// Lorentzian-ness of the `α`-weak basis generating polynomial; skipped
/// with a reason outside the variable and degree caps.
pub fn check_weak_basis_poly_lorentzian(phi: &MatroidMorphism, alpha: usize) -> Result<TheoremReport> {
    if alpha < phi.nullity() {
        return Err(Error::Precondition(format!("α = {alpha} is below the nullity {}", phi.nullity())));
    }
    let mut instance = morphism_instance(phi);
    instance["alpha"] = alpha.into();
    let mut report = TheoremReport::new(TheoremId::ELorentzian, instance);
    let p = polynomial::weak_basis_poly(phi, alpha)?;
    let vars = p.num_vars();
    let degree = p.degree().unwrap_or(0);
    if vars > MAX_LORENTZIAN_VARS || degree > MAX_LORENTZIAN_DEGREE {
        report.skipped = Some(format!(
            "{vars} variables and degree {degree} exceed the caps of {MAX_LORENTZIAN_VARS} and {MAX_LORENTZIAN_DEGREE}"
        ));
        return Ok(report.finish());
    }
    let w0_degrees: Vec<Rational> = {
        let mut seen = vec![Rational::zero(); phi.source().rank() + 1];
        for e in p.terms().keys() {
            seen[e[0] as usize] = int(1);
        }
        seen
    };
    report.sequence("w0_degree_support", &w0_degrees);
    let classification = lorentzian::classify(&p)?;
    let detail = (!classification.lorentzian).then(|| format!("{:?}", classification.witnesses));
    report.property("lorentzian", classification.lorentzian, detail);
    Ok(report.finish())
}

/// Parameters for random trials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub max_rows: usize,
    pub max_cols: usize,
    pub field: FieldChoice,
    /// `α` for the weak-polynomial check; `None` picks `nul(φ)` or `rk M`
    /// at random.
    pub alpha: Option<usize>,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self { max_rows: 4, max_cols: 4, field: FieldChoice::Fp, alpha: None }
    }
}

/// Trial `index` of a seeded random run.
///
/// Bimatroid theorems draw a matrix with up to `max_rows × max_cols`
/// entries over the chosen field. Morphism theorems draw a realizable
/// morphism over `GF(65521)` with `|F| <= max_cols` and
/// `|F'| <= max_rows`; Mason draws the column matroid of a random matrix.
pub fn random_trial(theorem: TheoremId, seed: u64, index: u64, params: &RandomParams) -> Result<TheoremReport> {
    let mut rng = corpus::trial_rng(seed, index);
    let mut report = match theorem {
        TheoremId::A | TheoremId::B => {
            let (_, b) = corpus::random_matrix_bimatroid(&mut rng, params.max_rows, params.max_cols, params.field)?;
            if theorem == TheoremId::A {
                check_theorem_a(&b)?
            } else {
                check_theorem_b(&b)?
            }
        }
        TheoremId::Mason => {
            check_mason(&corpus::random_realizable_matroid(&mut rng, params.max_rows, params.max_cols, params.field)?)?
        }
        TheoremId::C | TheoremId::CPipeline | TheoremId::ELorentzian => {
            let phi = corpus::random_realizable_morphism(&mut rng, params.max_cols, params.max_rows)?;
            match theorem {
                TheoremId::C => check_theorem_c(&phi)?,
                TheoremId::CPipeline => check_theorem_c_pipeline(&phi)?,
                _ => {
                    let alpha = params
                        .alpha
                        .unwrap_or_else(|| if rng.random_bool(0.5) { phi.nullity() } else { phi.source().rank() });
                    check_weak_basis_poly_lorentzian(&phi, alpha.max(phi.nullity()))?
                }
            }
        }
    };
    report.seed = seed;
    report.instance["trial"] = index.into();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;
    use crate::exactnum::Matrix;
    use crate::exactnum::Rationals;
    use crate::matroid::default_labels;

    fn q(rows: &[Vec<i64>]) -> Bimatroid {
        construct::from_matrix(&Matrix::from_i64_rows(Rationals, rows).unwrap().into()).unwrap()
    }

    fn seq(report: &TheoremReport, name: &str) -> Vec<i64> {
        use num_traits::ToPrimitive;
        report.sequence_values(name).unwrap().iter().map(|x| x.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn theorem_a_examples() {
        let id = check_theorem_a(&q(&[vec![1, 0], vec![0, 1]])).unwrap();
        assert_eq!(seq(&id, "R"), vec![1, 2, 1]);
        assert_eq!(id.checks.len(), 1);
        assert_eq!((id.checks[0].lhs.as_str(), id.checks[0].rhs.as_str()), ("1", "1"));
        assert!(id.verdict);
        let ones = check_theorem_a(&q(&[vec![1, 1], vec![1, 1]])).unwrap();
        assert_eq!(seq(&ones, "R"), vec![1, 4, 0]);
        assert_eq!((ones.checks[0].lhs.as_str(), ones.checks[0].rhs.as_str()), ("4", "0"));
        assert!(ones.verdict);
    }

    #[test]
    fn theorem_b_examples() {
        let id = check_theorem_b(&q(&[vec![1]])).unwrap();
        assert_eq!(seq(&id, "RR_vertical"), vec![2, 1, 0]);
        assert!(id.verdict, "{id:?}");
        let zero = check_theorem_b(&q(&[vec![0]])).unwrap();
        assert_eq!(seq(&zero, "RR_vertical"), vec![2, 0, 0]);
        assert_eq!(seq(&zero, "RR_horizontal"), vec![2, 0, 0]);
        assert!(zero.verdict);
    }

    #[test]
    fn invalid_bimatroid_is_a_precondition_error() {
        let b = Bimatroid::new(default_labels("e", 1), default_labels("f", 1), [crate::bimatroid::Minor::new(1, 1)]).unwrap();
        assert!(matches!(check_theorem_a(&b), Err(Error::Precondition(_))));
    }

    #[test]
    fn theorem_c_and_mason_on_u23() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let c = check_theorem_c(&MatroidMorphism::to_point(u23.clone())).unwrap();
        assert_eq!(seq(&c, "B"), vec![1, 3, 3]);
        assert_eq!((c.checks[0].lhs.as_str(), c.checks[0].rhs.as_str()), ("9", "3"));
        assert!(c.verdict);
        let mason = check_mason(&u23).unwrap();
        assert_eq!(seq(&mason, "I"), vec![1, 3, 3]);
        assert!(mason.properties.iter().any(|p| p.name == "counts_match_independent_sets" && p.holds));
        let id = check_theorem_c(&MatroidMorphism::identity(Matroid::uniform(1, 2).unwrap())).unwrap();
        assert_eq!(seq(&id, "B"), vec![0, 2]);
        assert!(id.verdict);
    }

    #[test]
    fn pipeline_weighted_sequence() {
        let rep = check_theorem_c_pipeline(&MatroidMorphism::to_point(Matroid::uniform(2, 3).unwrap())).unwrap();
        assert_eq!(seq(&rep, "weighted"), vec![1, 6, 3]);
        assert_eq!((rep.checks[0].lhs.as_str(), rep.checks[0].rhs.as_str()), ("9", "3"));
        assert!(rep.verdict, "{rep:?}");
        assert!(rep.properties.iter().any(|p| p.name == "tilde_basis_polynomial_lorentzian"));
        let id = check_theorem_c_pipeline(&MatroidMorphism::identity(Matroid::uniform(1, 2).unwrap())).unwrap();
        assert!(id.verdict);
    }

    #[test]
    fn pipeline_requires_spanning_image() {
        let target = Matroid::new(default_labels("g", 2), [0b10]).unwrap();
        let source = Matroid::uniform(0, 1).unwrap();
        let map = crate::morphism::SetMap::new(source.ground().to_vec(), target.ground().to_vec(), vec![0]).unwrap();
        let phi = MatroidMorphism::new(source, target, map).unwrap();
        assert!(matches!(check_theorem_c_pipeline(&phi), Err(Error::Precondition(_))));
    }

    #[test]
    fn weak_polynomial_examples() {
        let u23 = MatroidMorphism::to_point(Matroid::uniform(2, 3).unwrap());
        assert!(check_weak_basis_poly_lorentzian(&u23, 2).unwrap().verdict);
        let id = MatroidMorphism::identity(Matroid::uniform(2, 3).unwrap());
        let rep = check_weak_basis_poly_lorentzian(&id, 0).unwrap();
        assert!(rep.verdict && rep.skipped.is_none());
        assert!(matches!(check_weak_basis_poly_lorentzian(&u23, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn caps_exceeded_is_skipped() {
        let phi = MatroidMorphism::to_point(Matroid::uniform(6, 12).unwrap());
        let rep = check_weak_basis_poly_lorentzian(&phi, 6).unwrap();
        assert!(rep.skipped.is_some() && rep.verdict);
    }

    #[test]
    fn random_trials_are_deterministic_and_hold() {
        let params = RandomParams::default();
        for theorem in TheoremId::ALL {
            for i in 0..5 {
                let a = random_trial(theorem, 42, i, &params).unwrap();
                let b = random_trial(theorem, 42, i, &params).unwrap();
                assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
                assert!(a.verdict, "{theorem} trial {i}: {a:?}");
            }
        }
    }

    #[test]
    fn theorem_names_parse() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!("c-pipeline".parse::<TheoremId>().unwrap(), TheoremId::CPipeline);
        assert!("Z".parse::<TheoremId>().is_err());
    }
}
