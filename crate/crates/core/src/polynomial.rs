//! Sparse multivariate polynomials with exact rational coefficients and
//! the generating polynomials attached to bimatroids, matroids and
//! morphisms.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::bimatroid::Bimatroid;
use crate::error::{Error, Result};
use crate::exactnum::{int, Matrix, Rational, Rationals};
use crate::matroid::Matroid;
use crate::morphism::MatroidMorphism;
use crate::subset::{self, Mask};

/// Largest number of variables a polynomial may carry.
pub const MAX_VARS: usize = 24;

pub type Exponent = Vec<u32>;

/// `Σ a_α w^α` with no zero coefficients stored. Terms iterate in
/// lexicographic order of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Rational>,
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

/// `α!` for a multi-index.
pub fn multi_factorial(alpha: &[u32]) -> Rational {
    alpha.iter().fold(Rational::one(), |acc, &a| acc * factorial(a))
}

fn binomial_q(n: usize, k: usize) -> Rational {
    Rational::from_integer(subset::binomial(n, k).into())
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::Budget(format!("{} variables exceed the cap of {MAX_VARS}", vars.len())));
        }
        Ok(Self { vars, terms: BTreeMap::new() })
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut p = Self::zero(vars)?;
        for (exp, coef) in terms {
            if exp.len() != p.vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent of length {} for {} variables",
                    exp.len(),
                    p.vars.len()
                )));
            }
            p.add_term(exp, coef);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Exponent, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Result<Self> {
        let n = vars.len();
        Self::from_terms(vars, [(vec![0; n], c)])
    }

    /// The variable `w_i`.
    pub fn var(vars: Vec<String>, i: usize) -> Result<Self> {
        let mut exp = vec![0; vars.len()];
        *exp.get_mut(i).ok_or_else(|| Error::Dimension(format!("no variable {i}")))? = 1;
        Self::from_terms(vars, [(exp, Rational::one())])
    }

    /// Multiaffine polynomial `Σ_{S} Π_{i ∈ S} w_i` over a family of masks.
    pub fn from_masks(vars: Vec<String>, masks: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let n = vars.len();
        Self::from_terms(
            vars,
            masks.into_iter().map(|s| ((0..n).map(|i| subset::contains(s, i) as u32).collect(), Rational::one())),
        )
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }
    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a <= 1))
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::GroundMismatch("polynomials over different variables".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut acc: HashMap<Exponent, Rational> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Self::from_terms(self.vars.clone(), acc)
    }

    fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::constant(self.vars.clone(), Rational::one())?;
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Product of two polynomials in disjoint variable sets, on the
    /// concatenated variables.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let terms = self.terms.iter().flat_map(|(e1, c1)| {
            other.terms.iter().map(move |(e2, c2)| {
                let mut e = e1.clone();
                e.extend(e2.iter().copied());
                (e, c1 * c2)
            })
        });
        Self::from_terms(vars, terms.collect::<Vec<_>>())
    }

    /// `∂^α p`.
    pub fn partial_derivative(&self, alpha: &[u32]) -> Result<Self> {
        if alpha.len() != self.vars.len() {
            return Err(Error::Dimension("multi-index length differs from the variable count".into()));
        }
        let terms = self.terms.iter().filter(|(e, _)| e.iter().zip(alpha).all(|(a, b)| a >= b)).map(|(e, c)| {
            let falling = e.iter().zip(alpha).fold(Rational::one(), |acc, (&a, &b)| {
                acc * ((a - b + 1)..=a).fold(Rational::one(), |f, x| f * int(x as i64))
            });
            (e.iter().zip(alpha).map(|(a, b)| a - b).collect(), c * falling)
        });
        Self::from_terms(self.vars.clone(), terms.collect::<Vec<_>>())
    }

    /// `p(A z)`: variable `i` becomes `Σ_j forms[i][j] z_j`. Coefficients
    /// must be non-negative.
    pub fn substitute(&self, target_vars: Vec<String>, forms: &[Vec<Rational>]) -> Result<Self> {
        if forms.len() != self.vars.len() {
            return Err(Error::Dimension("one linear form per variable is required".into()));
        }
        let n = target_vars.len();
        if forms.iter().any(|f| f.len() != n) {
            return Err(Error::Dimension("linear forms must use every target variable slot".into()));
        }
        if forms.iter().flatten().any(|c| c.is_negative()) {
            return Err(Error::Contract("substitution coefficients must be non-negative".into()));
        }
        let linear: Vec<MultiPoly> = forms
            .iter()
            .map(|f| {
                let terms = f.iter().enumerate().map(|(j, c)| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (e, c.clone())
                });
                Self::from_terms(target_vars.clone(), terms.collect::<Vec<_>>())
            })
            .collect::<Result<_>>()?;
        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero(target_vars.clone())?;
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_vars.clone(), c.clone())?;
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = powers.entry((i, a)) {
                    e.insert(linear[i].pow(a)?);
                }
                term = term.mul(&powers[&(i, a)])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Label-keyed substitution: every variable of `self` must be assigned
    /// a form over `target_vars`.
    pub fn substitute_named(
        &self,
        target_vars: Vec<String>,
        assignment: &BTreeMap<String, BTreeMap<String, Rational>>,
    ) -> Result<Self> {
        let forms = self
            .vars
            .iter()
            .map(|v| {
                let form = assignment.get(v).ok_or_else(|| Error::Precondition(format!("no form for {v:?}")))?;
                let mut row = vec![Rational::zero(); target_vars.len()];
                for (name, c) in form {
                    let j = target_vars
                        .iter()
                        .position(|t| t == name)
                        .ok_or_else(|| Error::Precondition(format!("unknown target variable {name:?}")))?;
                    row[j] += c;
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute(target_vars, &forms)
    }

    /// Value at the all-ones point.
    pub fn eval_ones(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// `p_{≤κ}`: terms with `α ≤ κ` componentwise.
    pub fn truncate_le(&self, kappa: &[u32]) -> Result<Self> {
        self.filter_terms(kappa, |a, k| a <= k)
    }

    /// `p_{≥κ}`: terms with `α ≥ κ` componentwise.
    pub fn truncate_ge(&self, kappa: &[u32]) -> Result<Self> {
        self.filter_terms(kappa, |a, k| a >= k)
    }

    fn filter_terms(&self, kappa: &[u32], keep: impl Fn(u32, u32) -> bool) -> Result<Self> {
        if kappa.len() != self.vars.len() {
            return Err(Error::Dimension("κ length differs from the variable count".into()));
        }
        Ok(Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().zip(kappa).all(|(&a, &k)| keep(a, k)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        })
    }

    /// Hessian of a quadratic form: `H_ii = 2 c_{2e_i}`, `H_ij = c_{e_i+e_j}`.
    pub fn hessian(&self) -> Result<Matrix<Rationals>> {
        if self.degree().is_some_and(|d| d != 2) || !self.is_homogeneous() {
            return Err(Error::Precondition("the Hessian is taken of a quadratic form".into()));
        }
        let n = self.vars.len();
        let mut h = Matrix::zeros(Rationals, n, n);
        for (e, c) in &self.terms {
            let idx: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                h.set(i, i, c * int(2));
            } else {
                h.set(i, j, c.clone());
                h.set(j, i, c.clone());
            }
        }
        Ok(h)
    }

    /// Coefficient list `a_k` of `x^{d−k} y^k` after sending each variable
    /// to `x` (`false`) or `y` (`true`).
    pub fn bivariate_collapse(&self, to_y: &[bool]) -> Result<Vec<Rational>> {
        if to_y.len() != self.vars.len() {
            return Err(Error::Dimension("grouping length differs from the variable count".into()));
        }
        if !self.is_homogeneous() {
            return Err(Error::Precondition("bivariate collapse needs a homogeneous polynomial".into()));
        }
        let Some(d) = self.degree() else {
            return Ok(Vec::new());
        };
        let mut out = vec![Rational::zero(); d as usize + 1];
        for (e, c) in &self.terms {
            let k: u32 = e.iter().zip(to_y).filter(|(_, &y)| y).map(|(a, _)| a).sum();
            out[k as usize] += c;
        }
        Ok(out)
    }

    /// `Σ_k a_k x^{d−k} y^k` in variables `x, y`.
    pub fn bivariate(seq: &[Rational]) -> Result<Self> {
        let d = seq.len().saturating_sub(1) as u32;
        Self::from_terms(
            vec!["x".into(), "y".into()],
            seq.iter().enumerate().map(|(k, a)| (vec![d - k as u32, k as u32], a.clone())).collect::<Vec<_>>(),
        )
    }
}

/// Indicator polynomial `Σ_{α ∈ S} w^α / α!`.
pub fn indicator_poly(vars: Vec<String>, support: &[Exponent]) -> Result<MultiPoly> {
    MultiPoly::from_terms(vars, support.iter().map(|a| (a.clone(), multi_factorial(a).recip())).collect::<Vec<_>>())
}

/// `Σ_{(I,J)} Π_{e ∈ I^c} w_e Π_{f ∈ J} w_f` in the variables `E ⊔ F`.
pub fn regular_minor_poly(b: &Bimatroid) -> Result<MultiPoly> {
    MultiPoly::from_masks(b.disjoint_union_labels(), b.minors().iter().map(|&m| b.extended_basis(m)))
}

pub fn basis_generating_poly(m: &Matroid) -> Result<MultiPoly> {
    MultiPoly::from_masks(m.ground().to_vec(), m.bases().iter().copied())
}

/// `Σ_{S independent} z^{N − |S|} Π_{e ∈ S} w_e`, with `z` appended as
/// the last variable.
pub fn independent_set_poly_homogenized(m: &Matroid, z: &str) -> Result<MultiPoly> {
    let n = m.size();
    let mut vars = m.ground().to_vec();
    vars.push(z.to_string());
    let terms = m.independent_sets().into_iter().map(|s| {
        let mut e: Exponent = (0..n).map(|i| subset::contains(s, i) as u32).collect();
        e.push((n - subset::size(s)) as u32);
        (e, Rational::one())
    });
    MultiPoly::from_terms(vars, terms.collect::<Vec<_>>())
}

/// `Σ_k Σ_{T ∈ B_k(φ)} C(α, r−k) w_0^{r−k} Π_{f ∈ T} w_f`, with `w0`
/// first.
pub fn weak_basis_poly(phi: &MatroidMorphism, alpha: usize) -> Result<MultiPoly> {
    if alpha < phi.nullity() {
        return Err(Error::Contract(format!("α = {alpha} is below the nullity {}", phi.nullity())));
    }
    let src = phi.source();
    let (n, r) = (src.size(), src.rank());
    let mut vars = vec!["w0".to_string()];
    vars.extend(src.ground().iter().cloned());
    let terms = phi.bases().into_iter().map(|t| {
        let k = subset::size(t);
        let mut e: Exponent = vec![(r - k) as u32];
        e.extend((0..n).map(|i| subset::contains(t, i) as u32));
        (e, binomial_q(alpha, r - k))
    });
    MultiPoly::from_terms(vars, terms.collect::<Vec<_>>())
}
