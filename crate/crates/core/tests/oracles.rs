//! Reference values computed without the library's own machinery:
//! cofactor determinants on machine integers, permutation search for
//! matchings, Gaussian rank of submatrices and closed-form counts.

use std::collections::BTreeSet;

use bimatroid::bimatroid::Minor;
use bimatroid::corpus::{self, trial_rng, FieldChoice};
use bimatroid::exactnum::{int, Matrix, Rationals};
use bimatroid::lorentzian::classify;
use bimatroid::matroid::{default_labels, fano};
use bimatroid::polynomial::MultiPoly;
use bimatroid::subset::{self, Mask};
use bimatroid::verify;
use bimatroid::{construct, FieldMatrix, Matroid, MatroidMorphism};
use proptest::prelude::*;
use rand::Rng;

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

fn pick(grid: &[Vec<i64>], rows: Mask, cols: Mask) -> Vec<Vec<i128>> {
    subset::elements(rows).map(|i| subset::elements(cols).map(|j| grid[i][j] as i128).collect()).collect()
}

fn random_grid(seed: u64) -> Vec<Vec<i64>> {
    let mut rng = trial_rng(seed, 0);
    let (m, n) = (rng.random_range(1..=4usize), rng.random_range(1..=4usize));
    (0..m).map(|_| (0..n).map(|_| rng.random_range(-2..=2)).collect()).collect()
}

fn q(grid: &[Vec<i64>]) -> FieldMatrix {
    Matrix::from_i64_rows(Rationals, grid).unwrap().into()
}

fn has_matching(pairs: &BTreeSet<(usize, usize)>, rows: &[usize], cols: &[usize]) -> bool {
    fn go(pairs: &BTreeSet<(usize, usize)>, rows: &[usize], free: &mut Vec<usize>) -> bool {
        let Some((&e, rest)) = rows.split_first() else { return true };
        for k in 0..free.len() {
            let f = free[k];
            if pairs.contains(&(e, f)) {
                free.remove(k);
                let found = go(pairs, rest, free);
                free.insert(k, f);
                if found {
                    return true;
                }
            }
        }
        false
    }
    go(pairs, rows, &mut cols.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matrix_minors_match_cofactor_determinants(seed in any::<u64>()) {
        let grid = random_grid(seed);
        let (m, n) = (grid.len(), grid[0].len());
        let expected: BTreeSet<Minor> = (0..=m.min(n))
            .flat_map(|k| subset::k_subsets(m, k).flat_map(move |i| subset::k_subsets(n, k).map(move |j| (i, j))))
            .filter(|&(i, j)| cofactor_det(&pick(&grid, i, j)) != 0)
            .map(|(i, j)| Minor::new(i, j))
            .collect();
        let b = construct::from_matrix(&q(&grid)).unwrap();
        prop_assert_eq!(b.minors(), &expected);
    }

    #[test]
    fn relative_rank_is_submatrix_rank(seed in any::<u64>()) {
        let a = corpus::random_matrix(&mut trial_rng(seed, 0), 4, 4, FieldChoice::Fp);
        let b = construct::from_matrix(&a).unwrap();
        let table = b.rank_table();
        for s in subset::subsets(subset::full(4)) {
            for t in subset::subsets(subset::full(4)) {
                prop_assert_eq!(table.get(s, t), a.submatrix_rank(s, t));
            }
        }
    }

    #[test]
    fn rectangle_counts_match_submatrix_ranks(seed in any::<u64>()) {
        let grid = random_grid(seed);
        let (m, n) = (grid.len(), grid[0].len());
        let a = q(&grid);
        let mut vertical = vec![0i64; m + n + 1];
        let mut horizontal = vec![0i64; m + n + 1];
        for s in subset::subsets(subset::full(m)) {
            for t in subset::subsets(subset::full(n)) {
                let r = a.submatrix_rank(s, t);
                let (ss, ts) = (subset::size(s), subset::size(t));
                if r == ts && ts <= ss {
                    vertical[ts] += 1;
                }
                if r == ss && ss <= ts {
                    horizontal[ss] += 1;
                }
            }
        }
        let report = verify::check_theorem_b(&construct::from_matrix(&a).unwrap()).unwrap();
        let as_ints = |name: &str| report.sequence_values(name).unwrap().iter().map(|x| x.to_integer().try_into().unwrap()).collect::<Vec<i64>>();
        prop_assert_eq!(as_ints("RR_vertical"), vertical);
        prop_assert_eq!(as_ints("RR_horizontal"), horizontal);
        prop_assert!(report.verdict);
    }

    #[test]
    fn relation_minors_match_permutation_search(seed in any::<u64>()) {
        let (pairs, m, n) = corpus::random_relation(&mut trial_rng(seed, 0), 4, 4);
        let set: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
        let b = construct::from_relation(&pairs, default_labels("e", m), default_labels("f", n)).unwrap();
        for k in 0..=m.min(n) {
            for i in subset::k_subsets(m, k) {
                for j in subset::k_subsets(n, k) {
                    let rows: Vec<usize> = subset::elements(i).collect();
                    let cols: Vec<usize> = subset::elements(j).collect();
                    prop_assert_eq!(b.is_regular(i, j), has_matching(&set, &rows, &cols));
                }
            }
        }
    }

    /// `ax² + bxy + cy²` with non-negative coefficients is Lorentzian iff
    /// `b² >= 4ac`, and strictly so iff all coefficients are positive and
    /// the inequality is strict.
    #[test]
    fn binary_quadratics_follow_the_discriminant(a in 0i64..12, b in 0i64..12, c in 0i64..12) {
        prop_assume!(a + b + c > 0);
        let p = MultiPoly::from_terms(
            vec!["x".into(), "y".into()],
            [(vec![2, 0], int(a)), (vec![1, 1], int(b)), (vec![0, 2], int(c))],
        ).unwrap();
        let verdict = classify(&p).unwrap();
        prop_assert_eq!(verdict.lorentzian, b * b >= 4 * a * c);
        prop_assert_eq!(verdict.strict, a > 0 && b > 0 && c > 0 && b * b > 4 * a * c);
    }

    #[test]
    fn padded_matroid_basis_count(seed in any::<u64>()) {
        let phi = corpus::random_realizable_morphism(&mut trial_rng(seed, 0), 6, 3).unwrap();
        let r = phi.source().rank();
        let expected: u128 = phi.basis_counts().iter().enumerate().map(|(k, &c)| subset::binomial(r, r - k) * c as u128).sum();
        prop_assert_eq!(phi.tilde_matroid().unwrap().bases().len() as u128, expected);
    }
}

fn independent_counts(m: &Matroid) -> Vec<u64> {
    verify::check_mason(m)
        .unwrap()
        .sequence_values("I")
        .unwrap()
        .iter()
        .map(|x| x.to_integer().try_into().unwrap())
        .collect()
}

#[test]
fn independent_set_counts_of_known_matroids() {
    for r in 0..=4usize {
        for n in r..=6 {
            let expected: Vec<u64> = (0..=r).map(|k| subset::binomial(n, k) as u64).collect();
            assert_eq!(independent_counts(&Matroid::uniform(r, n).unwrap()), expected, "U{r},{n}");
        }
    }
    // forests of K4 by edge count; 16 spanning trees by Cayley
    let k4 = corpus::catalog_matroids().into_iter().find(|(n, _)| n == "M(K4)").unwrap().1;
    assert_eq!(independent_counts(&k4), vec![1, 6, 15, 16]);
    // 35 triples minus the 7 lines
    assert_eq!(independent_counts(&fano()), vec![1, 7, 21, 28]);
}

#[test]
fn morphism_basis_counts_by_hand() {
    // U2,3 onto a single coloop: every nonempty independent set spans
    let source = Matroid::uniform(2, 3).unwrap();
    let target = Matroid::uniform_on(1, vec!["g0".into()]).unwrap();
    let map = bimatroid::SetMap::new(source.ground().to_vec(), target.ground().to_vec(), vec![0; 3]).unwrap();
    let phi = MatroidMorphism::new(source, target, map).unwrap();
    assert_eq!(phi.basis_counts(), vec![0, 3, 3]);
    assert_eq!(phi.nullity(), 1);
}
