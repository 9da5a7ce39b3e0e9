//! Morphisms of matroids, pullbacks, quotients, bases of a morphism and
//! the padded matroid `M̃_φ` on `Q ⊔ F`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::matroid::{check_basis_family, default_labels, Matroid};
use crate::subset::{self, Mask};

/// A total function between two ordered label sets, stored by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetMap {
    domain: Vec<String>,
    codomain: Vec<String>,
    images: Vec<usize>,
}

impl SetMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::Precondition("the map must be total on its domain".into()));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= codomain.len()) {
            return Err(Error::Precondition(format!("image index {bad} outside the codomain")));
        }
        Ok(Self { domain, codomain, images })
    }

    /// From a label-to-label assignment covering the whole domain.
    pub fn from_labels(domain: Vec<String>, codomain: Vec<String>, map: &BTreeMap<String, String>) -> Result<Self> {
        let images = domain
            .iter()
            .map(|d| {
                let target = map.get(d).ok_or_else(|| Error::Precondition(format!("no image for {d:?}")))?;
                codomain
                    .iter()
                    .position(|c| c == target)
                    .ok_or_else(|| Error::Precondition(format!("image {target:?} not in the codomain")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, images)
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let images = (0..labels.len()).collect();
        Self { domain: labels.clone(), codomain: labels, images }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }
    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, s: Mask) -> Mask {
        subset::elements(s).fold(0, |acc, i| acc | 1 << self.images[i])
    }

    pub fn preimage(&self, t: Mask) -> Mask {
        (0..self.images.len()).filter(|&i| subset::contains(t, self.images[i])).fold(0, |acc, i| acc | 1 << i)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &SetMap) -> Result<SetMap> {
        if first.codomain != self.domain {
            return Err(Error::GroundMismatch("composed maps do not meet".into()));
        }
        let images = first.images.iter().map(|&i| self.images[i]).collect();
        Self::new(first.domain.clone(), self.codomain.clone(), images)
    }

    pub fn is_surjective(&self) -> bool {
        self.image(subset::full(self.domain.len())) == subset::full(self.codomain.len())
    }

    /// Label-keyed view of the map.
    pub fn to_label_map(&self) -> BTreeMap<String, String> {
        self.domain.iter().zip(&self.images).map(|(d, &i)| (d.clone(), self.codomain[i].clone())).collect()
    }
}

fn check_grounds(m: &Matroid, target: &Matroid, phi: &SetMap) -> Result<()> {
    if phi.domain().len() != m.size() || phi.codomain().len() != target.size() {
        return Err(Error::GroundMismatch("map does not fit the source and target ground sets".into()));
    }
    Ok(())
}

/// `r'(φ(T + f)) − r'(φ(T)) <= r(T + f) − r(T)` for all `T` and `f ∉ T`.
/// Chains of single steps telescope to the condition for all `T1 ⊆ T2`.
pub fn is_morphism_rank(m: &Matroid, target: &Matroid, phi: &SetMap) -> bool {
    if check_grounds(m, target, phi).is_err() {
        return false;
    }
    let (r, r2) = (m.rank_table(), target.rank_table());
    (0..=m.full_mask()).all(|t| {
        let (base, base2) = (r[t as usize], r2[phi.image(t) as usize]);
        (0..m.size()).filter(|&f| !subset::contains(t, f)).all(|f| {
            let u = t | 1 << f;
            r2[phi.image(u) as usize] - base2 <= r[u as usize] - base
        })
    })
}

/// Preimages of flats of the target are flats of the source.
pub fn is_morphism_flats(m: &Matroid, target: &Matroid, phi: &SetMap) -> bool {
    if check_grounds(m, target, phi).is_err() {
        return false;
    }
    target.flats().into_iter().all(|fl| {
        let pre = phi.preimage(fl);
        m.closure(pre) == pre
    })
}

/// Preimages of cocircuits of the target are unions of cocircuits of the
/// source.
pub fn is_morphism_cocircuits(m: &Matroid, target: &Matroid, phi: &SetMap) -> bool {
    if check_grounds(m, target, phi).is_err() {
        return false;
    }
    let source_cocircuits = m.cocircuits();
    target.cocircuits().into_iter().all(|c| {
        let pre = phi.preimage(c);
        let covered = source_cocircuits.iter().filter(|&&d| subset::is_subset(d, pre)).fold(0, |acc, &d| acc | d);
        covered == pre
    })
}

/// Matroid on the source ground with rank `T ↦ r'(φ(T))`.
pub fn pullback(phi: &SetMap, target: &Matroid) -> Result<Matroid> {
    if phi.codomain().len() != target.size() {
        return Err(Error::GroundMismatch("map codomain does not match the target".into()));
    }
    let r2 = target.rank_table();
    let n = phi.domain().len();
    let table = (0..1usize << n).map(|t| r2[phi.image(t as Mask) as usize]).collect();
    Matroid::from_rank_table(phi.domain().to_vec(), table)
}

/// `n` is a quotient of `m` when the identity is a morphism `m → n`.
pub fn is_quotient(m: &Matroid, n: &Matroid) -> Result<bool> {
    if m.ground() != n.ground() {
        return Err(Error::GroundMismatch("quotients live on the same ground set".into()));
    }
    Ok(is_morphism_rank(m, n, &SetMap::identity(m.ground().to_vec())))
}

/// A map of ground sets satisfying the morphism condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidMorphism {
    source: Matroid,
    target: Matroid,
    map: SetMap,
}

impl MatroidMorphism {
    pub fn new(source: Matroid, target: Matroid, map: SetMap) -> Result<Self> {
        check_grounds(&source, &target, &map)?;
        if !is_morphism_rank(&source, &target, &map) {
            return Err(Error::Precondition("the map is not a morphism of matroids".into()));
        }
        Ok(Self { source, target, map })
    }

    /// Every matroid maps to `U_{0,1}`.
    pub fn to_point(source: Matroid) -> Self {
        let target = Matroid::zero_on(vec!["g0".into()]).expect("one element");
        let map = SetMap::new(source.ground().to_vec(), target.ground().to_vec(), vec![0; source.size()])
            .expect("constant map");
        Self { source, target, map }
    }

    pub fn identity(m: Matroid) -> Self {
        let map = SetMap::identity(m.ground().to_vec());
        Self { source: m.clone(), target: m, map }
    }

    pub fn source(&self) -> &Matroid {
        &self.source
    }
    pub fn target(&self) -> &Matroid {
        &self.target
    }
    pub fn map(&self) -> &SetMap {
        &self.map
    }

    pub fn pullback(&self) -> Matroid {
        pullback(&self.map, &self.target).expect("grounds checked at construction")
    }

    /// `rk M − rk φ*M'`.
    pub fn nullity(&self) -> usize {
        self.source.rank() - self.target.rank_of(self.map.image(self.source.full_mask()))
    }

    pub fn image_spans(&self) -> bool {
        self.target.is_spanning(self.map.image(self.source.full_mask()))
    }

    /// `T` independent in the source with `φ(T)` spanning the target,
    /// ordered by size then mask.
    pub fn bases(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = self
            .source
            .independent_sets()
            .into_iter()
            .filter(|&t| self.target.is_spanning(self.map.image(t)))
            .collect();
        out.sort_by_key(|&t| (subset::size(t), t));
        out
    }

    /// `B_k` for `k = 0 ..= rk M`.
    pub fn basis_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.source.rank() + 1];
        for t in self.bases() {
            counts[subset::size(t)] += 1;
        }
        counts
    }

    /// Bases `S ⊔ T` of `M̃_φ` on `Q ⊔ F`: `T ∈ B(φ)` and `S ⊆ Q` with
    /// `|S| = r − |T|`. `Q` occupies the low `r` bits.
    pub fn tilde_bases(&self) -> Result<BTreeSet<Mask>> {
        let r = self.source.rank();
        let bases = self.bases();
        if bases.is_empty() {
            return Err(Error::Precondition("the image of the morphism does not span the target".into()));
        }
        subset::check_ground(r + self.source.size())?;
        Ok(bases
            .into_iter()
            .flat_map(|t| subset::k_subsets(r, r - subset::size(t)).map(move |s| s | t << r))
            .collect())
    }

    /// `M̃_φ` with ground `q0 .. q{r−1}` followed by the source ground.
    /// Fails with [`Error::Inconsistent`] if the family is not a matroid.
    pub fn tilde_matroid(&self) -> Result<Matroid> {
        let bases = self.tilde_bases()?;
        check_basis_family(&bases)
            .map_err(|v| Error::Inconsistent(format!("padded family violates basis exchange: {v}")))?;
        let mut ground = default_labels("q", self.source.rank());
        ground.extend(self.source.ground().iter().cloned());
        Matroid::from_bases_unchecked(ground, bases)
    }
}
