//! Log-concavity of sequences, M-convexity of supports and the
//! (strictly) Lorentzian tests via exact Hessian inertia.
//!
//! A homogeneous `p` of degree `d` is classified Lorentzian when its
//! coefficients are non-negative, its support is M-convex, and every
//! quadratic `∂^α p` with `|α| = d − 2` has a Hessian with at most one
//! positive eigenvalue. Only `α` below some support monomial are visited:
//! for the others `∂^α p = 0`.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{inertia, Inertia, Matrix, Rational, Rationals};
use crate::polynomial::{multi_factorial, Exponent, MultiPoly};
use crate::subset::{self, Mask};

/// Largest variable count accepted by the Lorentzian tests.
pub const MAX_LORENTZIAN_VARS: usize = 12;
/// Largest degree accepted by the Lorentzian tests.
pub const MAX_LORENTZIAN_DEGREE: u32 = 8;

fn check_non_negative(seq: &[Rational]) -> Result<()> {
    if seq.iter().any(|a| a.is_negative()) {
        return Err(Error::Contract("sequence entries must be non-negative".into()));
    }
    Ok(())
}

pub fn no_internal_zeros(seq: &[Rational]) -> Result<bool> {
    check_non_negative(seq)?;
    let nonzero: Vec<usize> = (0..seq.len()).filter(|&k| !seq[k].is_zero()).collect();
    Ok(match (nonzero.first(), nonzero.last()) {
        (Some(&lo), Some(&hi)) => hi - lo + 1 == nonzero.len(),
        _ => true,
    })
}

/// Weakly increasing, then weakly decreasing.
pub fn is_unimodal(seq: &[Rational]) -> Result<bool> {
    check_non_negative(seq)?;
    let mut k = 1;
    while k < seq.len() && seq[k - 1] <= seq[k] {
        k += 1;
    }
    while k < seq.len() && seq[k - 1] >= seq[k] {
        k += 1;
    }
    Ok(k >= seq.len())
}

/// No internal zeros and `a_k² >= a_{k−1} a_{k+1}` at every interior `k`.
pub fn is_log_concave(seq: &[Rational]) -> Result<bool> {
    Ok(no_internal_zeros(seq)? && (1..seq.len().saturating_sub(1)).all(|k| lc_holds(seq, k)))
}

fn lc_holds(seq: &[Rational], k: usize) -> bool {
    &seq[k] * &seq[k] >= &seq[k - 1] * &seq[k + 1]
}

/// `a_k / C(s, k)`.
pub fn ulc_normalize(seq: &[Rational], s: usize) -> Result<Vec<Rational>> {
    check_non_negative(seq)?;
    if seq.len() > s + 1 {
        return Err(Error::Precondition(format!(
            "normalization length {s} is too small for {} entries",
            seq.len()
        )));
    }
    Ok(seq
        .iter()
        .enumerate()
        .map(|(k, a)| a / Rational::from_integer(subset::binomial(s, k).into()))
        .collect())
}

/// The normalized sequence `a_k / C(s, k)` is log-concave.
pub fn is_ultra_log_concave(seq: &[Rational], s: usize) -> Result<bool> {
    is_log_concave(&ulc_normalize(seq, s)?)
}

/// Witness that the exchange property fails: `α_i > β_i` and no `j` with
/// `α_j < β_j` has `α − e_i + e_j` in the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeWitness {
    pub alpha: Exponent,
    pub beta: Exponent,
    pub i: usize,
}

/// Exhaustive exchange check on a set of equal-length exponent vectors.
pub fn is_m_convex(support: &[Exponent]) -> Result<(), ExchangeWitness> {
    let len = support.first().map_or(0, Vec::len);
    if len <= 64 && support.iter().all(|a| a.iter().all(|&x| x <= 1)) {
        return m_convex_01(support);
    }
    m_convex_general(support)
}

/// The general exchange check on integer vectors.
pub fn m_convex_general(support: &[Exponent]) -> Result<(), ExchangeWitness> {
    let set: HashSet<&Exponent> = support.iter().collect();
    for alpha in support {
        for beta in support {
            for i in (0..alpha.len()).filter(|&i| alpha[i] > beta[i]) {
                let found = (0..alpha.len()).filter(|&j| alpha[j] < beta[j]).any(|j| {
                    let mut moved = alpha.clone();
                    moved[i] -= 1;
                    moved[j] += 1;
                    set.contains(&moved)
                });
                if !found {
                    return Err(ExchangeWitness { alpha: alpha.clone(), beta: beta.clone(), i });
                }
            }
        }
    }
    Ok(())
}

/// 0/1 supports as bit masks; same verdict as [`m_convex_general`].
fn m_convex_01(support: &[Exponent]) -> Result<(), ExchangeWitness> {
    let to_mask = |a: &Exponent| subset::from_indices((0..a.len()).filter(|&i| a[i] == 1));
    let masks: Vec<Mask> = support.iter().map(to_mask).collect();
    let set: HashSet<Mask> = masks.iter().copied().collect();
    for (a, &ma) in masks.iter().enumerate() {
        for (b, &mb) in masks.iter().enumerate() {
            for i in subset::elements(ma & !mb) {
                let base = ma & !(1 << i);
                if !subset::elements(mb & !ma).any(|j| set.contains(&(base | 1 << j))) {
                    return Err(ExchangeWitness { alpha: support[a].clone(), beta: support[b].clone(), i });
                }
            }
        }
    }
    Ok(())
}

/// Why a polynomial fails one of the two tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NonPositiveCoefficient { exponent: Exponent },
    MissingMonomial { exponent: Exponent },
    NotMConvex(ExchangeWitness),
    /// Inertia of `Hess(∂^α p)` disagrees with the required signature.
    Signature { alpha: Exponent, inertia: Inertia },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub strict: bool,
    pub lorentzian: bool,
    pub witnesses: Vec<Witness>,
}

fn check_caps(p: &MultiPoly) -> Result<()> {
    if !p.is_homogeneous() {
        return Err(Error::Precondition("Lorentzian tests need a homogeneous polynomial".into()));
    }
    if p.num_vars() > MAX_LORENTZIAN_VARS {
        return Err(Error::Budget(format!("{} variables exceed {MAX_LORENTZIAN_VARS}", p.num_vars())));
    }
    if p.degree().unwrap_or(0) > MAX_LORENTZIAN_DEGREE {
        return Err(Error::Budget(format!("degree exceeds {MAX_LORENTZIAN_DEGREE}")));
    }
    Ok(())
}

/// Multi-indices `α` of degree `d − 2` lying below some support monomial.
fn hessian_indices(p: &MultiPoly) -> BTreeSet<Exponent> {
    let n = p.num_vars();
    let mut out = BTreeSet::new();
    for beta in p.terms().keys() {
        for i in 0..n {
            for j in i..n {
                let needed = if i == j { 2 } else { 1 };
                if beta[i] < needed || beta[j] < needed {
                    continue;
                }
                let mut alpha = beta.clone();
                alpha[i] -= 1;
                alpha[j] -= 1;
                out.insert(alpha);
            }
        }
    }
    out
}

/// `Hess(∂^α p)`, with entries `a_β β!` for `β = α + e_i + e_j`.
pub fn derivative_hessian(p: &MultiPoly, alpha: &[u32], factorials: &HashMap<Exponent, Rational>) -> Matrix<Rationals> {
    let n = p.num_vars();
    let mut h = Matrix::zeros(Rationals, n, n);
    let mut beta = alpha.to_vec();
    for i in 0..n {
        for j in i..n {
            beta[i] += 1;
            beta[j] += 1;
            if let Some(c) = p.terms().get(&beta) {
                let v = c * &factorials[&beta];
                h.set(i, j, v.clone());
                h.set(j, i, v);
            }
            beta[i] -= 1;
            beta[j] -= 1;
        }
    }
    h
}

/// Runs both tests, collecting witnesses. Errors on non-homogeneous
/// input or when the variable or degree caps are exceeded.
pub fn classify(p: &MultiPoly) -> Result<Classification> {
    check_caps(p)?;
    let mut witnesses = Vec::new();
    let Some(d) = p.degree() else {
        // the zero polynomial is a limit of strictly Lorentzian ones
        return Ok(Classification { strict: false, lorentzian: true, witnesses });
    };
    let n = p.num_vars();

    let mut non_negative = true;
    if let Some((e, _)) = p.terms().iter().find(|(_, c)| c.is_negative()) {
        non_negative = false;
        witnesses.push(Witness::NonPositiveCoefficient { exponent: e.clone() });
    }
    let full_support = p.terms().len() as u128 == subset::binomial(n + d as usize - 1, d as usize);
    if !full_support {
        if let Some(missing) = first_missing_monomial(p, n, d) {
            witnesses.push(Witness::MissingMonomial { exponent: missing });
        }
    }
    let mut strict = non_negative && full_support;

    let m_convex = match is_m_convex(&p.support()) {
        Ok(()) => true,
        Err(w) => {
            witnesses.push(Witness::NotMConvex(w));
            false
        }
    };
    let mut lorentzian = non_negative && m_convex;

    if d >= 2 && (strict || lorentzian) {
        let factorials: HashMap<Exponent, Rational> =
            p.terms().keys().map(|e| (e.clone(), multi_factorial(e))).collect();
        for alpha in hessian_indices(p) {
            let h = derivative_hessian(p, &alpha, &factorials);
            let sig = inertia(&h).expect("Hessians are symmetric");
            let strict_ok = sig == Inertia::new(1, n - 1, 0);
            let lorentzian_ok = sig.positive <= 1;
            if (strict && !strict_ok) || (lorentzian && !lorentzian_ok) {
                witnesses.push(Witness::Signature { alpha: alpha.clone(), inertia: sig });
            }
            strict &= strict_ok;
            lorentzian &= lorentzian_ok;
            if !strict && !lorentzian {
                break;
            }
        }
    }
    Ok(Classification { strict, lorentzian, witnesses })
}

fn first_missing_monomial(p: &MultiPoly, n: usize, d: u32) -> Option<Exponent> {
    fn rec(p: &MultiPoly, prefix: &mut Exponent, n: usize, left: u32) -> Option<Exponent> {
        if prefix.len() + 1 == n {
            prefix.push(left);
            let hit = (!p.terms().contains_key(prefix.as_slice())).then(|| prefix.clone());
            prefix.pop();
            return hit;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            let hit = rec(p, prefix, n, left - a);
            prefix.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
    if n == 0 {
        return None;
    }
    rec(p, &mut Vec::new(), n, d)
}

pub fn is_strictly_lorentzian(p: &MultiPoly) -> Result<bool> {
    Ok(classify(p)?.strict)
}

pub fn is_lorentzian(p: &MultiPoly) -> Result<bool> {
    Ok(classify(p)?.lorentzian)
}

/// Decides whether `Σ a_k x^{d−k} y^k` is Lorentzian both through the
/// polynomial test and through "ultra log-concave without internal zeros";
/// a disagreement is reported as [`Error::Inconsistent`].
pub fn bivariate_ulc_equivalence(seq: &[Rational], d: usize) -> Result<bool> {
    if seq.len() != d + 1 {
        return Err(Error::Dimension(format!("expected {} coefficients, got {}", d + 1, seq.len())));
    }
    check_non_negative(seq)?;
    let via_poly = is_lorentzian(&MultiPoly::bivariate(seq)?)?;
    let via_sequence = no_internal_zeros(seq)? && is_ultra_log_concave(seq, d)?;
    if via_poly != via_sequence {
        return Err(Error::Inconsistent(format!(
            "bivariate test on {:?}: polynomial says {via_poly}, sequence says {via_sequence}",
            seq.iter().map(|a| a.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(via_poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;
    use crate::matroid::{default_labels, fano, Matroid};
    use crate::polynomial::{basis_generating_poly, indicator_poly};
    use proptest::prelude::*;

    fn seq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn xy(terms: &[([u32; 2], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            vec!["x".into(), "y".into()],
            terms.iter().map(|(e, c)| (e.to_vec(), int(*c))).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn sequence_examples() {
        let s = seq(&[1, 2, 1]);
        assert!(no_internal_zeros(&s).unwrap() && is_unimodal(&s).unwrap() && is_log_concave(&s).unwrap());
        let z = seq(&[1, 0, 1]);
        assert!(!no_internal_zeros(&z).unwrap() && !is_log_concave(&z).unwrap());
        let t = seq(&[1, 1, 2]);
        assert!(!is_log_concave(&t).unwrap() && is_unimodal(&t).unwrap());
        assert!(is_ultra_log_concave(&seq(&[1, 2, 1]), 2).unwrap());
        assert!(!is_ultra_log_concave(&seq(&[1, 1, 1]), 2).unwrap());
        assert!(is_ultra_log_concave(&seq(&[1, 4, 0]), 2).unwrap());
        assert!(is_ultra_log_concave(&seq(&[1, 2, 1]), 1).is_err());
        assert!(matches!(is_log_concave(&seq(&[1, -1])), Err(Error::Contract(_))));
        assert!(!is_unimodal(&seq(&[2, 1, 2])).unwrap());
    }

    #[test]
    fn m_convex_examples() {
        assert_eq!(is_m_convex(&[vec![1, 0], vec![0, 1]]), Ok(()));
        let w = is_m_convex(&[vec![2, 0], vec![0, 2]]).unwrap_err();
        assert_eq!(w.i, 0);
        let f = fano();
        assert_eq!(is_m_convex(&basis_generating_poly(&f).unwrap().support()), Ok(()));
    }

    #[test]
    fn lorentzian_fixtures() {
        let strict = xy(&[([2, 0], 1), ([1, 1], 4), ([0, 2], 1)]);
        let c = classify(&strict).unwrap();
        assert!(c.strict && c.lorentzian);
        let mixed = xy(&[([1, 1], 1)]);
        let c = classify(&mixed).unwrap();
        assert!(!c.strict && c.lorentzian);
        let squares = xy(&[([2, 0], 1), ([0, 2], 1)]);
        let c = classify(&squares).unwrap();
        assert!(!c.strict && !c.lorentzian);
        assert!(c.witnesses.iter().any(|w| matches!(w, Witness::NotMConvex(_))));
        assert!(is_lorentzian(&xy(&[([1, 0], 1), ([0, 2], 1)])).is_err());
    }

    #[test]
    fn signature_failure_with_m_convex_support() {
        // x² + 3xy + y² is fine; x² + xy + y² has Hessian [[2,1],[1,2]] ≻ 0
        assert!(is_strictly_lorentzian(&xy(&[([2, 0], 1), ([1, 1], 3), ([0, 2], 1)])).unwrap());
        let c = classify(&xy(&[([2, 0], 1), ([1, 1], 1), ([0, 2], 1)])).unwrap();
        assert!(!c.lorentzian);
        assert!(matches!(c.witnesses.last(), Some(Witness::Signature { .. })));
    }

    #[test]
    fn low_degree_cases() {
        let linear = xy(&[([1, 0], 2), ([0, 1], 3)]);
        assert!(is_strictly_lorentzian(&linear).unwrap());
        let single = xy(&[([1, 0], 2)]);
        assert!(!is_strictly_lorentzian(&single).unwrap() && is_lorentzian(&single).unwrap());
        let constant = xy(&[([0, 0], 5)]);
        assert!(is_strictly_lorentzian(&constant).unwrap());
        assert!(is_lorentzian(&MultiPoly::zero(vec!["x".into()]).unwrap()).unwrap());
    }

    #[test]
    fn caps_enforced() {
        let wide = MultiPoly::var(default_labels("w", 13), 0).unwrap();
        assert!(matches!(classify(&wide), Err(Error::Budget(_))));
        let deep = MultiPoly::from_terms(vec!["x".into()], [(vec![9], int(1))]).unwrap();
        assert!(matches!(classify(&deep), Err(Error::Budget(_))));
    }

    #[test]
    fn bivariate_examples() {
        assert!(bivariate_ulc_equivalence(&seq(&[1, 2, 1]), 2).unwrap());
        assert!(!bivariate_ulc_equivalence(&seq(&[1, 1, 1]), 2).unwrap());
        assert!(bivariate_ulc_equivalence(&seq(&[0, 1, 0]), 2).unwrap());
        assert!(bivariate_ulc_equivalence(&seq(&[0, 0, 0]), 2).unwrap());
        assert!(bivariate_ulc_equivalence(&seq(&[1, 2]), 2).is_err());
    }

    #[test]
    fn direct_hessian_matches_derivative_route() {
        let p = basis_generating_poly(&Matroid::uniform(3, 5).unwrap()).unwrap();
        let sq = MultiPoly::from_terms(
            default_labels("w", 3),
            [(vec![3, 1, 0], int(2)), (vec![2, 2, 0], int(5)), (vec![1, 1, 2], int(1)), (vec![2, 1, 1], int(3))],
        )
        .unwrap();
        for q in [p, sq] {
            let factorials: HashMap<Exponent, Rational> =
                q.terms().keys().map(|e| (e.clone(), multi_factorial(e))).collect();
            for alpha in hessian_indices(&q) {
                let direct = derivative_hessian(&q, &alpha, &factorials);
                let route = q.partial_derivative(&alpha).unwrap().hessian().unwrap();
                assert_eq!(direct, route, "alpha = {alpha:?}");
            }
        }
    }

    #[test]
    fn matroid_and_indicator_polys_are_lorentzian() {
        for m in [fano(), Matroid::uniform(2, 4).unwrap(), Matroid::new(default_labels("x", 3), [0b101, 0b110]).unwrap()] {
            assert!(is_lorentzian(&basis_generating_poly(&m).unwrap()).unwrap());
        }
        // a non-multiaffine M-convex set: Δ_2^2 minus nothing
        let support = vec![vec![2, 0], vec![1, 1], vec![0, 2]];
        assert!(is_lorentzian(&indicator_poly(vec!["x".into(), "y".into()], &support).unwrap()).unwrap());
    }

    fn small_lorentzian_bivariate() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0i64..6, 2..5)
    }

    proptest! {
        #[test]
        fn mask_and_general_m_convex_agree(masks in proptest::collection::btree_set(0u64..32, 1..10)) {
            let support: Vec<Exponent> = masks.iter().map(|&m| (0..5).map(|i| (m >> i & 1) as u32).collect()).collect();
            prop_assert_eq!(is_m_convex(&support).is_ok(), m_convex_general(&support).is_ok());
        }

        #[test]
        fn bivariate_paths_agree(v in proptest::collection::vec(0i64..7, 1..8)) {
            let d = v.len() - 1;
            prop_assert!(bivariate_ulc_equivalence(&seq(&v), d).is_ok());
        }

        #[test]
        fn closure_under_products_substitution_truncation(a in small_lorentzian_bivariate(), b in small_lorentzian_bivariate()) {
            let p = MultiPoly::bivariate(&seq(&a)).unwrap();
            let q = MultiPoly::bivariate(&seq(&b)).unwrap();
            if is_lorentzian(&p).unwrap() && is_lorentzian(&q).unwrap() {
                prop_assert!(is_lorentzian(&p.tensor(&q).unwrap()).unwrap());
                let forms = vec![vec![int(1), int(0), int(2)], vec![int(0), int(1), int(1)]];
                let sub = p.substitute(default_labels("z", 3), &forms).unwrap();
                prop_assert!(is_lorentzian(&sub).unwrap());
                let d = a.len() as u32 - 1;
                for k in 0..=d {
                    prop_assert!(is_lorentzian(&p.truncate_le(&[k, d]).unwrap()).unwrap());
                    prop_assert!(is_lorentzian(&p.truncate_ge(&[k, 0]).unwrap()).unwrap());
                }
            }
        }
    }
}
