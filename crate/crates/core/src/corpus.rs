//! Seeded random instances and the fixture catalog.
//!
//! Trial `i` of a run with seed `s` draws from `ChaCha8Rng::seed_from_u64`
//! applied to `s + i` (wrapping), so every trial is reproducible on its own
//! and independent of how trials are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bimatroid::Bimatroid;
use crate::construct;
use crate::error::Result;
use crate::exactnum::{Field, FieldMatrix, Matrix, PrimeField, PrimeFieldElement, Rationals};
use crate::matroid::{default_labels, fano, Matroid};
use crate::morphism::{MatroidMorphism, SetMap};

/// Seed for trial `index` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(trial_seed(seed, index))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldChoice {
    /// `GF(65521)`.
    Fp,
    /// The rationals, with small integer entries.
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MatrixMode {
    Uniform,
    Sparse,
    LowRank,
}

fn random_entry<R: Rng + ?Sized>(rng: &mut R, field: FieldChoice) -> i64 {
    match field {
        FieldChoice::Fp => rng.random_range(0..PrimeField::default().modulus() as i64),
        FieldChoice::Q => rng.random_range(-2..=2),
    }
}

fn build(field: FieldChoice, rows: usize, cols: usize, entries: &[i64]) -> FieldMatrix {
    let grid: Vec<Vec<i64>> = entries.chunks(cols.max(1)).take(rows).map(<[i64]>::to_vec).collect();
    let grid = if cols == 0 { vec![Vec::new(); rows] } else { grid };
    match field {
        FieldChoice::Fp => Matrix::from_i64_rows(PrimeField::default(), &grid).expect("rectangular").into(),
        FieldChoice::Q => Matrix::from_i64_rows(Rationals, &grid).expect("rectangular").into(),
    }
}

/// Independent entries, uniform over `GF(65521)` or over `{-2, ..., 2}`.
pub fn random_uniform_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: FieldChoice) -> FieldMatrix {
    let entries: Vec<i64> = (0..rows * cols).map(|_| random_entry(rng, field)).collect();
    build(field, rows, cols, &entries)
}

/// A `rows × cols` matrix drawn uniformly, sparsely (about 40% nonzero),
/// or as a product `U V` of random factors of a random inner rank.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, field: FieldChoice) -> FieldMatrix {
    let mode = [MatrixMode::Uniform, MatrixMode::Sparse, MatrixMode::LowRank][rng.random_range(0..3)];
    match mode {
        MatrixMode::Uniform => random_uniform_matrix(rng, rows, cols, field),
        MatrixMode::Sparse => {
            let entries: Vec<i64> = (0..rows * cols)
                .map(|_| if rng.random_bool(0.4) { random_entry(rng, field) } else { 0 })
                .collect();
            build(field, rows, cols, &entries)
        }
        MatrixMode::LowRank => {
            let inner = rng.random_range(1..=rows.min(cols).max(1));
            let u: Vec<i64> = (0..rows * inner).map(|_| random_entry(rng, field)).collect();
            let v: Vec<i64> = (0..inner * cols).map(|_| random_entry(rng, field)).collect();
            build(field, rows, inner, &u).mul(&build(field, inner, cols, &v)).expect("inner dimensions agree")
        }
    }
}

/// Matrix with `1..=max_rows` rows and `1..=max_cols` columns together with
/// its realizable bimatroid.
pub fn random_matrix_bimatroid<R: Rng + ?Sized>(
    rng: &mut R,
    max_rows: usize,
    max_cols: usize,
    field: FieldChoice,
) -> Result<(FieldMatrix, Bimatroid)> {
    let rows = rng.random_range(1..=max_rows.max(1));
    let cols = rng.random_range(1..=max_cols.max(1));
    let a = random_matrix(rng, rows, cols, field);
    let b = construct::from_matrix(&a)?;
    Ok((a, b))
}

/// A relation on `1..=max_rows × 1..=max_cols` with a random density.
pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, max_rows: usize, max_cols: usize) -> (Vec<(usize, usize)>, usize, usize) {
    let m = rng.random_range(1..=max_rows.max(1));
    let n = rng.random_range(1..=max_cols.max(1));
    let density = [0.3, 0.5, 0.7][rng.random_range(0..3)];
    let pairs = (0..m).flat_map(|e| (0..n).map(move |f| (e, f))).filter(|_| rng.random_bool(density)).collect();
    (pairs, m, n)
}

/// Relation bimatroid on exactly `m × n` with labels `prefix_rows`,
/// `prefix_cols`.
pub fn random_relation_bimatroid_on<R: Rng + ?Sized>(
    rng: &mut R,
    m: usize,
    rows: &str,
    n: usize,
    cols: &str,
) -> Result<Bimatroid> {
    let density = [0.3, 0.5, 0.7][rng.random_range(0..3)];
    let pairs: Vec<_> = (0..m).flat_map(|e| (0..n).map(move |f| (e, f))).filter(|_| rng.random_bool(density)).collect();
    construct::from_relation(&pairs, default_labels(rows, m), default_labels(cols, n))
}

fn prime_matrix(field: &PrimeField, rows: usize, cols: usize, entries: Vec<PrimeFieldElement>) -> Matrix<PrimeField> {
    Matrix::new(*field, rows, cols, entries).expect("entry count matches")
}

/// A realizable morphism over `GF(65521)`: `|F| <= max_source`,
/// `|F'| <= min(max_target, |F|)` and `φ` surjective.
///
/// A surjective linear map `Φ: K^d → K^{d'}` is drawn first. Each target
/// element `g` gets a vector `w_g ∈ K^d` and is realized by `Φ w_g`; each
/// source element `f` is realized by `w_{φ(f)}` plus a random kernel
/// vector, so that `Φ v_f = v'_{φ(f)}`.
pub fn random_realizable_morphism<R: Rng + ?Sized>(
    rng: &mut R,
    max_source: usize,
    max_target: usize,
) -> Result<MatroidMorphism> {
    let field = PrimeField::default();
    let p = field.modulus() as i64;
    let small = rng.random_bool(0.5);
    let draw = |rng: &mut R| field.elem(if small { rng.random_range(0..3) } else { rng.random_range(0..p) });

    let n = rng.random_range(1..=max_source.max(1));
    let n2 = rng.random_range(1..=max_target.max(1).min(n));
    let d = rng.random_range(1..=4usize);
    let d2 = rng.random_range(1..=d.min(3));

    let phi_lin = loop {
        let m = prime_matrix(&field, d2, d, (0..d2 * d).map(|_| draw(rng)).collect());
        if m.rank() == d2 {
            break m;
        }
    };
    let kernel = phi_lin.nullspace();

    let mut images: Vec<usize> = (0..n).map(|i| if i < n2 { i } else { rng.random_range(0..n2) }).collect();
    images.shuffle(rng);

    let w: Vec<Vec<PrimeFieldElement>> = (0..n2).map(|_| (0..d).map(|_| draw(rng)).collect()).collect();
    let w_matrix = prime_matrix(&field, n2, d, w.iter().flatten().copied().collect()).transpose();
    let target_vectors = phi_lin.mul(&w_matrix)?;

    let mut source = Matrix::zeros(field, d, n);
    for (f, &g) in images.iter().enumerate() {
        let coeffs: Vec<PrimeFieldElement> = kernel.iter().map(|_| draw(rng)).collect();
        for row in 0..d {
            let mut v = w[g][row];
            for (c, k) in coeffs.iter().zip(&kernel) {
                v = field.add(&v, &field.mul(c, &k[row]));
            }
            source.set(row, f, v);
        }
    }

    let m = Matroid::from_matrix_columns_on(&source.into(), default_labels("f", n))?;
    let m2 = Matroid::from_matrix_columns_on(&target_vectors.into(), default_labels("g", n2))?;
    let map = SetMap::new(m.ground().to_vec(), m2.ground().to_vec(), images)?;
    MatroidMorphism::new(m, m2, map)
}

/// Column matroid of a random matrix with `1..=max_rows` rows and
/// `1..=max_cols` columns.
pub fn random_realizable_matroid<R: Rng + ?Sized>(
    rng: &mut R,
    max_rows: usize,
    max_cols: usize,
    field: FieldChoice,
) -> Result<Matroid> {
    let rows = rng.random_range(1..=max_rows.max(1));
    let cols = rng.random_range(1..=max_cols.max(1));
    let a = random_matrix(rng, rows, cols, field);
    Matroid::from_matrix_columns_on(&a, default_labels("f", cols))
}

/// Small named matroids, none with more than seven elements.
pub fn catalog_matroids() -> Vec<(String, Matroid)> {
    let u = |r, n| Matroid::uniform(r, n).expect("r <= n");
    let mut out: Vec<(String, Matroid)> = [(0, 2), (1, 1), (1, 3), (2, 3), (2, 4), (3, 3), (3, 5), (2, 6)]
        .into_iter()
        .map(|(r, n)| (format!("U{r},{n}"), u(r, n)))
        .collect();
    // a loop, a parallel pair and a coloop
    out.push((
        "loop+parallel+coloop".into(),
        Matroid::new(default_labels("x", 4), [0b1010, 0b1100]).expect("valid bases"),
    ));
    // graphic matroid of K4 on edges 01 02 03 12 13 23
    let edges = [(0usize, 1usize), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let rows: Vec<Vec<i64>> = (0..4)
        .map(|v| edges.iter().map(|&(a, b)| if v == a { 1 } else if v == b { -1 } else { 0 }).collect())
        .collect();
    let incidence: FieldMatrix = Matrix::from_i64_rows(Rationals, &rows).expect("rectangular").into();
    out.push(("M(K4)".into(), Matroid::from_matrix_columns_on(&incidence, default_labels("x", 6)).expect("6 elements")));
    out.push(("Fano".into(), fano()));
    out
}

/// Named fixture bimatroids: identities, zero and all-ones matrices, an
/// upper triangular matrix and bonds of `U_{2,3}` and the Fano matroid.
pub fn catalog_bimatroids() -> Vec<(String, Bimatroid)> {
    let q = |rows: &[Vec<i64>]| -> FieldMatrix { Matrix::from_i64_rows(Rationals, rows).expect("rectangular").into() };
    let from = |a: FieldMatrix| construct::from_matrix(&a).expect("small matrix");
    let mut out = vec![
        ("identity-1".to_string(), construct::identity(default_labels("e", 1)).expect("small")),
        ("identity-3".to_string(), construct::identity(default_labels("e", 3)).expect("small")),
        ("zero-1x1".to_string(), from(Matrix::zeros(Rationals, 1, 1).into())),
        ("zero-2x3".to_string(), from(Matrix::zeros(Rationals, 2, 3).into())),
        ("ones-2x2".to_string(), from(q(&[vec![1, 1], vec![1, 1]]))),
        ("ones-3x4".to_string(), from(q(&[vec![1; 4], vec![1; 4], vec![1; 4]]))),
        ("upper-2x2".to_string(), from(q(&[vec![1, 1], vec![0, 1]]))),
    ];
    let u23 = Matroid::uniform(2, 3).expect("r <= n");
    out.push(("bond-U2,3".into(), construct::bond(&u23, 0b011).expect("basis")));
    let f = fano();
    let basis = *f.bases().iter().next().expect("nonempty");
    out.push(("bond-Fano".into(), construct::bond(&f, basis).expect("basis")));
    out
}
