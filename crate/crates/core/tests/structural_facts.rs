use std::collections::BTreeSet;

use bimatroid::bimatroid::{Orientation, RelativeRankTable};
use bimatroid::corpus::{self, trial_rng, FieldChoice};
use bimatroid::lorentzian::{self, is_m_convex, m_convex_general};
use bimatroid::matroid::default_labels;
use bimatroid::polynomial::basis_generating_poly;
use bimatroid::product::product;
use bimatroid::subset::{self, Mask};
use bimatroid::{construct, Bimatroid, Matroid, MatroidMorphism, SetMap};
use proptest::prelude::*;
use rand::Rng;

fn matrix_bimatroid(seed: u64) -> Bimatroid {
    corpus::random_matrix_bimatroid(&mut trial_rng(seed, 0), 4, 4, FieldChoice::Fp).unwrap().1
}

fn random_matroid(seed: u64, max_cols: usize) -> Matroid {
    corpus::random_realizable_matroid(&mut trial_rng(seed, 0), 4, max_cols, FieldChoice::Q).unwrap()
}

#[test]
fn size_sum_table_is_not_a_relative_rank_function() {
    let table = RelativeRankTable::from_fn(1, 1, |s, t| (subset::size(s) + subset::size(t)) as u8).unwrap();
    assert!(table.validate().is_err());
}

#[test]
fn map_to_a_point_has_independent_sets_as_bases() {
    for (name, m) in corpus::catalog_matroids() {
        let phi = MatroidMorphism::to_point(m.clone());
        let mut expected = m.independent_sets();
        expected.sort_by_key(|&t| (subset::size(t), t));
        assert_eq!(phi.bases(), expected, "{name}");
    }
}

#[test]
fn identity_morphism_has_matroid_bases() {
    for (name, m) in corpus::catalog_matroids() {
        let phi = MatroidMorphism::identity(m.clone());
        let got: BTreeSet<Mask> = phi.bases().into_iter().collect();
        assert_eq!(&got, m.bases(), "{name}");
    }
}

#[test]
fn catalog_basis_supports_are_m_convex_and_lorentzian() {
    for (name, m) in corpus::catalog_matroids() {
        let p = basis_generating_poly(&m).unwrap();
        let support = p.support();
        assert_eq!(is_m_convex(&support), Ok(()), "{name}");
        assert_eq!(m_convex_general(&support), Ok(()), "{name}");
        assert!(lorentzian::is_lorentzian(&p).unwrap(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vertical_rectangles_are_extended_independent_sets(seed in any::<u64>()) {
        let b = matrix_bimatroid(seed);
        let via_rectangles: BTreeSet<Mask> = b
            .regular_rectangles(Orientation::Vertical)
            .into_iter()
            .map(|(s, t)| (b.row_mask() & !s) | t << b.m())
            .collect();
        let independent: BTreeSet<Mask> = b.extended_matroid().independent_sets().into_iter().collect();
        prop_assert_eq!(via_rectangles, independent);
    }

    #[test]
    fn transpose_extended_is_dual_extended(seed in any::<u64>()) {
        let b = matrix_bimatroid(seed);
        let (m, n) = (b.m(), b.n());
        // the transpose lists F before E; move its bases back to E ⊔ F
        let swap = |x: Mask| (x >> n) | (x & subset::full(n)) << m;
        let transposed: BTreeSet<Mask> = b.transpose().extended_matroid().bases().iter().map(|&x| swap(x)).collect();
        let dual = b.extended_matroid().dual();
        prop_assert_eq!(&transposed, dual.bases());
    }

    #[test]
    fn map_bimatroids_compose(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (a, bsz, c) = (rng.random_range(1..=4usize), rng.random_range(1..=4usize), rng.random_range(1..=4usize));
        let psi = SetMap::new(default_labels("a", a), default_labels("b", bsz), (0..a).map(|_| rng.random_range(0..bsz)).collect()).unwrap();
        let phi = SetMap::new(default_labels("b", bsz), default_labels("c", c), (0..bsz).map(|_| rng.random_range(0..c)).collect()).unwrap();
        let composite = construct::from_map(&phi.after(&psi).unwrap()).unwrap();
        let via_product = product(&construct::from_map(&phi).unwrap(), &construct::from_map(&psi).unwrap()).unwrap();
        prop_assert_eq!(composite, via_product);
    }

    #[test]
    fn small_basis_polynomials_are_lorentzian(seed in any::<u64>()) {
        let m = random_matroid(seed, 6);
        let p = basis_generating_poly(&m).unwrap();
        prop_assert_eq!(is_m_convex(&p.support()), Ok(()));
        prop_assert!(lorentzian::is_lorentzian(&p).unwrap());
    }

    #[test]
    fn bond_agrees_with_extended_view(seed in any::<u64>()) {
        let m = random_matroid(seed, 6);
        let basis = *m.bases().iter().next().unwrap();
        let bond = construct::bond(&m, basis).unwrap();
        prop_assert_eq!(bond.validate(), Ok(()));
        // restricted to the columns outside the basis, the bond bimatroid
        // is the bimatroid read off M with the basis as row set
        let restricted = bond.restrict(bond.row_mask(), m.full_mask() & !basis);
        prop_assert_eq!(restricted, Bimatroid::from_extended_matroid(&m, basis).unwrap());
    }
}
