//! Named catalog of canonical problems with their expected behavior.
//!
//! Every entry carries structured expectations; [`verify`] checks them under
//! default options, so the catalog doubles as a golden test suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{
    classify, classify_2d, estimate_rg, is_in_cone, rank_at, ClassifyOptions, Kind, DEFAULT_EPS_PD, DEFAULT_RANK_TOL,
    DEFAULT_SEED,
};
use crate::document::ProblemDocument;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::qop::{random_unit, Functional, QopProblem, QuadraticOperator};
use crate::rank1::{check_condition, solve_rank1, Rank1Problem};
use crate::solver::{
    default_box, en_membership, nk_iterate, planar_problem, solve_all, NkOptions, Outcome, SolveReport,
};

/// Multi-start count used for gallery solves.
pub const GALLERY_STARTS: usize = 256;

/// Largest projector order accepted by [`projector_problem`].
pub const MAX_PROJECTOR_ORDER: usize = 8;

/// Number of random certified rank-one entries in the catalog.
pub const RANK1_RANDOM_ENTRIES: usize = 5;

/// The object an entry is about.
#[derive(Debug, Clone, PartialEq)]
pub enum GalleryProblem {
    /// Classification-only entry.
    Operator(QuadraticOperator),
    Equation(QopProblem),
    Rank1(Rank1Problem),
}

impl GalleryProblem {
    pub fn operator(&self) -> QuadraticOperator {
        match self {
            GalleryProblem::Operator(q) => q.clone(),
            GalleryProblem::Equation(p) => p.q().clone(),
            GalleryProblem::Rank1(r) => QuadraticOperator::diag_squares(r.dim()),
        }
    }

    /// The full equation, when the entry has one.
    pub fn equation(&self) -> Option<QopProblem> {
        match self {
            GalleryProblem::Operator(_) => None,
            GalleryProblem::Equation(p) => Some(p.clone()),
            GalleryProblem::Rank1(r) => Some(r.to_qop()),
        }
    }

    pub fn dim(&self) -> usize {
        self.operator().dim()
    }
}

/// Closed-form description of `K'_Q` used to cross-check sampled membership.
#[derive(Debug, Clone, Copy)]
pub struct ConeRule {
    pub description: &'static str,
    pub contains: fn(&[f64]) -> bool,
}

/// Expected outcomes; `None` or empty fields are not checked.
#[derive(Debug, Clone, Default)]
pub struct Expectations {
    pub kind: Option<Kind>,
    /// Planar discriminant.
    pub delta: Option<f64>,
    /// Direction the classification witness must be parallel to.
    pub witness_direction: Option<Vec<f64>>,
    pub cone: Option<ConeRule>,
    /// Rank of the operator as reported by the cone-boundary estimate.
    pub rank: Option<usize>,
    pub homogeneous: Option<bool>,
    /// `(f, rg_f Q)` pairs.
    pub rank_at: Vec<(Vec<f64>, usize)>,
    /// Exact set of stable roots.
    pub stable_roots: Option<Vec<Vec<f64>>>,
    pub min_stable: Option<usize>,
    /// `(start, limit)` pairs for single Newton runs.
    pub basins: Vec<(Vec<f64>, Vec<f64>)>,
    /// Points that must pass the sampled membership test.
    pub en_members: Vec<Vec<f64>>,
    /// No root of any kind is found.
    pub no_roots: bool,
    /// Componentwise largest root of a rank-one problem.
    pub sup_root: Option<Vec<f64>>,
    pub notes: Vec<&'static str>,
}

/// A catalog entry.
#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub id: String,
    pub problem: GalleryProblem,
    pub expected: Expectations,
    pub provenance: &'static str,
}

/// Outcome of one expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

const CLASSIFICATION_IDS: [&str; 7] = [
    "discriminant-elliptic",
    "discriminant-parabolic",
    "discriminant-hyperbolic",
    "stein-ulam",
    "example-on-rn",
    "spherical-plus-ray",
    "wedge-intersection",
];

const EQUATION_IDS: [&str; 10] = [
    "example-a",
    "example-b",
    "example-15-unsolvable",
    "example-i",
    "example-ii",
    "example-iii",
    "example-iv",
    "projector-1",
    "projector-2",
    "projector-3",
];

const RANK_IDS: [&str; 4] = [
    "rank2-homogeneous",
    "rank2-nonhomogeneous",
    "rank-n-minus-1-3",
    "rank-n-minus-1-4",
];

/// All catalog ids in a fixed order.
pub fn list_entries() -> Vec<String> {
    let mut ids: Vec<String> = CLASSIFICATION_IDS
        .iter()
        .chain(EQUATION_IDS.iter())
        .chain(RANK_IDS.iter())
        .map(|s| s.to_string())
        .collect();
    ids.push("rank1-symmetric".into());
    ids.extend((0..RANK1_RANDOM_ENTRIES).map(|i| format!("rank1-random-{i}")));
    ids
}

fn op(mats: &[&[f64]]) -> QuadraticOperator {
    let n = (mats[0].len() as f64).sqrt() as usize;
    QuadraticOperator::new(mats.iter().map(|m| Matrix::from_row_slice(n, n, m)).collect())
        .expect("catalog operators are valid")
}

fn rank_n_minus_1(n: usize) -> QuadraticOperator {
    let mut mats = vec![Matrix::identity(n, n)];
    for j in 1..n {
        let mut a = Matrix::zeros(n, n);
        a[(0, j)] = 1.0;
        a[(j, 0)] = 1.0;
        mats.push(a);
    }
    QuadraticOperator::new(mats).expect("valid")
}

fn cone_example_on_rn(l: &[f64]) -> bool {
    l[0] > 0.0 && l[1] > 0.0 && l[2] * l[2] < (l[0] + l[1]) / (1.0 / l[0] + 1.0 / l[1])
}

fn cone_rank2_homogeneous(l: &[f64]) -> bool {
    l[0] > 0.0 && l[1] > 0.0 && l[2] * l[2] < l[0] * l[1]
}

fn cone_rank2_nonhomogeneous(l: &[f64]) -> bool {
    l[0] > 0.0 && l[1] > 0.0 && l[2] * l[2] < l[0] * (l[0] + l[1])
}

fn cone_lorentz(l: &[f64]) -> bool {
    l[0] > 0.0 && l[0] * l[0] > l[1..].iter().map(|v| v * v).sum::<f64>()
}

fn cone_spherical_plus_ray(l: &[f64]) -> bool {
    l[0] > 0.0 && l[2] > 0.0 && l[3] > 0.0 && l[1] * l[1] < l[0] * l[2]
}

fn cone_wedge(l: &[f64]) -> bool {
    let s = l[0] + l[1];
    l[0] > 0.0 && l[1] > 0.0 && l[2] * l[2] < l[0] * s && l[3] * l[3] < l[1] * s
}

fn square_vertices() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]
}

/// Symmetric `k×k` matrix from coordinates: diagonal first, then the strict
/// upper triangle row by row.
pub fn projector_decode(k: usize, x: &Vector) -> Result<Matrix> {
    crate::error::check_dim(k * (k + 1) / 2, x.len())?;
    let mut m = Matrix::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = x[i];
    }
    let mut c = k;
    for i in 0..k {
        for j in i + 1..k {
            m[(i, j)] = x[c];
            m[(j, i)] = x[c];
            c += 1;
        }
    }
    Ok(m)
}

/// Inverse of [`projector_decode`]; reads the upper triangle.
pub fn projector_encode(m: &Matrix) -> Vector {
    let k = m.nrows();
    let mut out = Vec::with_capacity(k * (k + 1) / 2);
    out.extend((0..k).map(|i| m[(i, i)]));
    for i in 0..k {
        for j in i + 1..k {
            out.push(m[(i, j)]);
        }
    }
    Vector::from_vec(out)
}

fn projector_index(k: usize) -> Matrix {
    let mut idx = Matrix::zeros(k, k);
    for i in 0..k {
        idx[(i, i)] = i as f64;
    }
    let mut c = k;
    for i in 0..k {
        for j in i + 1..k {
            idx[(i, j)] = c as f64;
            idx[(j, i)] = c as f64;
            c += 1;
        }
    }
    idx
}

/// `X² = X` over symmetric `k×k` matrices, in `k(k+1)/2` coordinates.
pub fn projector_problem(k: usize) -> Result<QopProblem> {
    if !(1..=MAX_PROJECTOR_ORDER).contains(&k) {
        return Err(Error::OutOfRange {
            what: "projector order",
            value: k as i64,
        });
    }
    let d = k * (k + 1) / 2;
    let idx = projector_index(k);
    let coord = |i: usize, j: usize| idx[(i, j)] as usize;
    let mut mats = vec![Matrix::zeros(d, d); d];
    for p in 0..k {
        for q in p..k {
            let m = coord(p, q);
            for r in 0..k {
                mats[m][(coord(p, r), coord(r, q))] += 1.0;
            }
        }
    }
    QopProblem::new(QuadraticOperator::new(mats)?, -Matrix::identity(d, d), Vector::zeros(d))
}

/// Random rank-one problem satisfying the column-sign condition and
/// `m² + 4β > 0`, with `n ∈ {2, 3}`.
pub fn random_certified_rank1(seed: u64) -> Rank1Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=3);
    let signs: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
    let coef = Matrix::from_fn(n, n, |_, j| signs[j] * rng.random_range(0.2..1.5));
    let m: f64 = (0..n)
        .map(|j| coef.column(j).iter().fold(f64::INFINITY, |a, v| a.min(v.abs())))
        .sum();
    let lo = -m * m / 8.0;
    let rhs = Vector::from_fn(n, |_, _| rng.random_range(lo..1.0));
    let p = Rank1Problem::new(coef, rhs).expect("square data");
    debug_assert!(check_condition(&p).holds);
    p
}

/// Seed of the `i`-th random rank-one entry.
pub fn rank1_entry_seed(i: usize) -> u64 {
    DEFAULT_SEED + 1000 + i as u64
}

/// Builds the entry for `id`.
pub fn make_entry(id: &str) -> Result<GalleryEntry> {
    let mut ex = Expectations::default();
    let (problem, provenance) = match id {
        "discriminant-elliptic" => {
            ex.kind = Some(Kind::Elliptic);
            ex.delta = Some(1.0);
            (
                GalleryProblem::Operator(QuadraticOperator::diag_squares(2)),
                "planar classification, item (a)",
            )
        }
        "discriminant-parabolic" => {
            ex.kind = Some(Kind::Parabolic);
            ex.delta = Some(0.0);
            let q = op(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 0.5, 0.5, 0.0]]);
            (GalleryProblem::Operator(q), "planar classification, item (b)")
        }
        "discriminant-hyperbolic" => {
            ex.kind = Some(Kind::Hyperbolic);
            ex.delta = Some(-1.0);
            let q = op(&[&[1.0, 0.0, 0.0, -1.0], &[0.0, 0.5, 0.5, 0.0]]);
            (GalleryProblem::Operator(q), "planar classification, item (c)")
        }
        "stein-ulam" => {
            ex.kind = Some(Kind::Parabolic);
            ex.witness_direction = Some(vec![1.0, 1.0, 1.0]);
            let q = op(&[
                &[1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0],
                &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0],
            ]);
            (GalleryProblem::Operator(q), "Stein-Ulam operator")
        }
        "example-on-rn" => {
            ex.kind = Some(Kind::Elliptic);
            ex.cone = Some(ConeRule {
                description: "l1 > 0, l2 > 0, l3^2 < (l1 + l2) / (1/l1 + 1/l2)",
                contains: cone_example_on_rn,
            });
            ex.rank_at = vec![(vec![1.0, 1.0, 1.0], 2), (vec![1.0, 1.0, 0.5], 3)];
            let q = op(&[
                &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
                &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
                &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.0],
            ]);
            (GalleryProblem::Operator(q), "operator on R^n with explicit cone, n = 3")
        }
        "spherical-plus-ray" => {
            ex.kind = Some(Kind::Elliptic);
            ex.cone = Some(ConeRule {
                description: "l1 > 0, l3 > 0, l4 > 0, l2^2 < l1 l3",
                contains: cone_spherical_plus_ray,
            });
            let mut a = [
                Matrix::zeros(4, 4),
                Matrix::zeros(4, 4),
                Matrix::zeros(4, 4),
                Matrix::zeros(4, 4),
            ];
            a[0][(0, 0)] = 1.0;
            a[0][(1, 1)] = 1.0;
            a[1][(0, 2)] = 1.0;
            a[1][(2, 0)] = 1.0;
            a[2][(1, 1)] = 1.0;
            a[2][(2, 2)] = 1.0;
            a[3][(1, 1)] = 1.0;
            a[3][(3, 3)] = 1.0;
            let q = QuadraticOperator::new(a.to_vec())?;
            (
                GalleryProblem::Operator(q),
                "lower-rank cone: spherical cone plus a ray",
            )
        }
        "wedge-intersection" => {
            ex.kind = Some(Kind::Elliptic);
            ex.cone = Some(ConeRule {
                description: "l1 > 0, l2 > 0, l3^2 < l1 (l1 + l2), l4^2 < l2 (l1 + l2)",
                contains: cone_wedge,
            });
            ex.rank = Some(2);
            let mut a = [
                Matrix::zeros(4, 4),
                Matrix::zeros(4, 4),
                Matrix::zeros(4, 4),
                Matrix::zeros(4, 4),
            ];
            for i in 0..3 {
                a[0][(i, i)] = 1.0;
                a[1][(i + 1, i + 1)] = 1.0;
            }
            a[2][(0, 2)] = 1.0;
            a[2][(2, 0)] = 1.0;
            a[3][(1, 3)] = 1.0;
            a[3][(3, 1)] = 1.0;
            let q = QuadraticOperator::new(a.to_vec())?;
            (
                GalleryProblem::Operator(q),
                "lower-rank cone: intersection of two wedges",
            )
        }
        "example-a" => {
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(square_vertices());
            ex.en_members = vec![vec![0.5, 0.5]];
            let p = planar_problem([[1.0, 0.0, 0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0, -1.0, 0.0]]);
            (GalleryProblem::Equation(p), "stable solutions example (a), unit square")
        }
        "example-b" => {
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
            let p = planar_problem([[1.0, 0.0, 0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 1.0, -1.0, 0.0, 0.0]]);
            (
                GalleryProblem::Equation(p),
                "stable solutions example (b), two parabolas",
            )
        }
        "example-15-unsolvable" => {
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![]);
            ex.no_roots = true;
            ex.en_members = vec![vec![0.0, 0.0, 0.0]];
            ex.notes = vec![
                "x2^2 = 2 gives x2 = +-sqrt(2); x2 = sqrt(2) forces x3^2 = 1 - sqrt(2) < 0 and x2 = -sqrt(2) forces x1^2 = -sqrt(2) < 0",
                "the origin passes every sampled ellipsoid test although the system has no solution",
            ];
            let lin = Matrix::from_row_slice(3, 3, &[0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
            let p = QopProblem::new(
                QuadraticOperator::diag_squares(3),
                lin,
                Vector::from_row_slice(&[0.0, -2.0, -1.0]),
            )?;
            (
                GalleryProblem::Equation(p),
                "nonempty ellipsoid intersection without solutions",
            )
        }
        "example-i" => {
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![vec![-1.0, -1.0], vec![-1.0, 1.0], vec![1.0, -1.0], vec![1.0, 1.0]]);
            ex.basins = vec![
                (vec![2.0, 3.0], vec![1.0, 1.0]),
                (vec![-2.0, 3.0], vec![-1.0, 1.0]),
                (vec![-2.0, -3.0], vec![-1.0, -1.0]),
                (vec![2.0, -3.0], vec![1.0, -1.0]),
            ];
            let p = planar_problem([[1.0, 0.0, 0.0, 0.0, 0.0, -1.0], [0.0, 0.0, 1.0, 0.0, 0.0, -1.0]]);
            (GalleryProblem::Equation(p), "Newton-Kantorovich example (i)")
        }
        "example-ii" => {
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
            ex.basins = vec![(vec![2.0, 2.0], vec![1.0, 1.0]), (vec![-0.4, -0.4], vec![0.0, 0.0])];
            let p = planar_problem([[1.0, 0.0, 0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 1.0, -1.0, 0.0, 0.0]]);
            (GalleryProblem::Equation(p), "Newton-Kantorovich example (ii)")
        }
        "example-iii" => {
            let s3 = 3.0_f64.sqrt();
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![vec![-s3, 3.0], vec![-1.0, 1.0], vec![1.0, 1.0], vec![s3, 3.0]]);
            ex.basins = vec![
                (vec![2.0, 4.0], vec![s3, 3.0]),
                (vec![-2.0, 4.0], vec![-s3, 3.0]),
                (vec![0.9, 0.5], vec![1.0, 1.0]),
                (vec![-0.9, 0.5], vec![-1.0, 1.0]),
            ];
            let p = planar_problem([[1.0, 0.0, 0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 1.0, 0.0, -4.0, 3.0]]);
            (GalleryProblem::Equation(p), "Newton-Kantorovich example (iii)")
        }
        "example-iv" => {
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![vec![-1.0, 1.0], vec![1.0, 1.0]]);
            ex.basins = vec![(vec![2.0, 2.0], vec![1.0, 1.0]), (vec![-2.0, 2.0], vec![-1.0, 1.0])];
            let p = planar_problem([[1.0, 0.0, 0.0, 0.0, -1.0, 0.0], [0.0, 0.0, 1.0, 0.0, 0.0, -1.0]]);
            (GalleryProblem::Equation(p), "Newton-Kantorovich example (iv)")
        }
        "projector-1" | "projector-2" | "projector-3" => {
            let k: usize = id[id.len() - 1..].parse().expect("digit suffix");
            let d = k * (k + 1) / 2;
            let mut identity = vec![0.0; d];
            identity[..k].fill(1.0);
            ex.kind = Some(Kind::Elliptic);
            ex.stable_roots = Some(vec![vec![0.0; d], identity]);
            if k == 2 {
                ex.notes = vec!["rank-one projectors (a, +-sqrt(a(1-a)), 1-a) solve the equation but are not stable"];
            }
            (
                GalleryProblem::Equation(projector_problem(k)?),
                "symmetric idempotent matrices X^2 = X",
            )
        }
        "rank2-homogeneous" => {
            ex.kind = Some(Kind::Elliptic);
            ex.rank = Some(2);
            ex.homogeneous = Some(true);
            ex.rank_at = vec![(vec![1.0, 1.0, 1.0], 2)];
            ex.cone = Some(ConeRule {
                description: "l1 > 0, l2 > 0, l3^2 < l1 l2",
                contains: cone_rank2_homogeneous,
            });
            let q = op(&[
                &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
                &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            ]);
            (GalleryProblem::Operator(q), "homogeneous operator of rank 2")
        }
        "rank2-nonhomogeneous" => {
            ex.kind = Some(Kind::Elliptic);
            ex.rank = Some(2);
            ex.homogeneous = Some(false);
            ex.rank_at = vec![(vec![1.0, 0.0, 1.0], 1)];
            ex.cone = Some(ConeRule {
                description: "l1 > 0, l2 > 0, l3^2 < l1 (l1 + l2)",
                contains: cone_rank2_nonhomogeneous,
            });
            let q = op(&[
                &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
                &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
                &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            ]);
            (GalleryProblem::Operator(q), "non-homogeneous operator of rank 2")
        }
        "rank-n-minus-1-3" | "rank-n-minus-1-4" => {
            let n: usize = id[id.len() - 1..].parse().expect("digit suffix");
            ex.kind = Some(Kind::Elliptic);
            ex.rank = Some(n - 1);
            ex.homogeneous = Some(true);
            ex.cone = Some(ConeRule {
                description: "l1 > 0, l1^2 > l2^2 + ... + ln^2",
                contains: cone_lorentz,
            });
            (
                GalleryProblem::Operator(rank_n_minus_1(n)),
                "homogeneous operator of rank n - 1",
            )
        }
        "rank1-symmetric" => {
            let s = 1.0 + 1.5_f64.sqrt();
            let t = 1.0 - 1.5_f64.sqrt();
            let h = 0.5_f64.sqrt();
            ex.kind = Some(Kind::Elliptic);
            ex.sup_root = Some(vec![s, s]);
            ex.stable_roots = Some(vec![vec![-h, h], vec![t, t], vec![h, -h], vec![s, s]]);
            ex.min_stable = Some(2);
            let p = Rank1Problem::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]], &[0.5, 0.5])?;
            (GalleryProblem::Rank1(p), "rank-one equation with two stable solutions")
        }
        _ => {
            let idx = id
                .strip_prefix("rank1-random-")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| i < RANK1_RANDOM_ENTRIES)
                .ok_or_else(|| Error::UnknownId(id.to_string()))?;
            ex.kind = Some(Kind::Elliptic);
            ex.min_stable = Some(2);
            let p = random_certified_rank1(rank1_entry_seed(idx));
            (
                GalleryProblem::Rank1(p),
                "random rank-one equation meeting the two-solution condition",
            )
        }
    };
    Ok(GalleryEntry {
        id: id.to_string(),
        problem,
        expected: ex,
        provenance,
    })
}

/// Problem document for `id`; classification-only entries export a
/// homogeneous document.
pub fn export(id: &str) -> Result<ProblemDocument> {
    let entry = make_entry(id)?;
    let doc = match &entry.problem {
        GalleryProblem::Operator(q) => ProblemDocument::from_operator(q),
        GalleryProblem::Equation(p) => ProblemDocument::from_qop(p),
        GalleryProblem::Rank1(r) => ProblemDocument::from_rank1(r),
    };
    Ok(doc.with_id(id))
}

/// Roots of an entry's equation from [`solve_all`], plus the supremum root
/// for rank-one data.
pub fn solve_entry(entry: &GalleryEntry) -> Option<SolveReport> {
    let opts = NkOptions::default();
    match &entry.problem {
        GalleryProblem::Operator(_) => None,
        GalleryProblem::Rank1(r) => Some(solve_rank1(r, GALLERY_STARTS, &opts).report),
        GalleryProblem::Equation(p) => solve_all(p, GALLERY_STARTS, &default_box(p), &opts).ok(),
    }
}

fn same_point_sets(found: &[Vector], expected: &[Vec<f64>], tol: f64) -> bool {
    found.len() == expected.len()
        && expected.iter().all(|e| {
            let e = Vector::from_row_slice(e);
            found.iter().any(|x| (x - &e).norm() <= tol)
        })
}

fn fmt_points(pts: &[Vector]) -> String {
    let items: Vec<String> = pts
        .iter()
        .map(|p| {
            let c: Vec<String> = p.iter().map(|v| format!("{v:.6}")).collect();
            format!("({})", c.join(", "))
        })
        .collect();
    format!("[{}]", items.join(", "))
}

/// Checks every expectation of `entry` under default options.
pub fn verify(entry: &GalleryEntry) -> Vec<Check> {
    let mut checks = Vec::new();
    let ex = &entry.expected;
    let q = entry.problem.operator();
    let opts = ClassifyOptions::default();
    let cls = classify(&q, &opts);

    if let Some(kind) = ex.kind {
        checks.push(Check::new(
            "kind",
            cls.kind == kind,
            format!("{} (margin {:.3e})", cls.kind, cls.margin),
        ));
    }
    if let Some(delta) = ex.delta {
        let res = classify_2d(&q, &opts);
        let (ok, detail) = match res {
            Ok(pc) => (
                (pc.delta - delta).abs() <= 1e-12 && pc.agrees_with_search,
                format!("delta {}", pc.delta),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push(Check::new("delta", ok, detail));
    }
    if let Some(dir) = &ex.witness_direction {
        let d = Vector::from_row_slice(dir).normalize();
        let (ok, detail) = match &cls.witness {
            Some(w) => {
                let w = w.to_vector().normalize();
                let cos = w.dot(&d);
                (cos >= 1.0 - 1e-6, format!("cos angle {cos:.9}"))
            }
            None => (false, "no witness".into()),
        };
        checks.push(Check::new("witness direction", ok, detail));
    }
    if let Some(rule) = &ex.cone {
        let (agree, total, bad) = cone_agreement(&q, rule, 200, DEFAULT_SEED);
        checks.push(Check::new(
            "cone rule",
            bad == 0,
            format!(
                "{agree}/{total} agree, {bad} outside the guard band; {}",
                rule.description
            ),
        ));
    }
    if ex.rank.is_some() || ex.homogeneous.is_some() {
        match estimate_rg(&q, 64, DEFAULT_RANK_TOL, DEFAULT_SEED) {
            Ok(est) => {
                if let Some(r) = ex.rank {
                    checks.push(Check::new("rank", est.rank == r, est.summary()));
                }
                if let Some(h) = ex.homogeneous {
                    checks.push(Check::new(
                        "homogeneous",
                        est.consistent_homogeneous == h,
                        est.summary(),
                    ));
                }
            }
            Err(e) => checks.push(Check::new("rank", false, e.to_string())),
        }
    }
    for (f, r) in &ex.rank_at {
        let got = rank_at(&q, &Functional::new(f.clone()), DEFAULT_RANK_TOL);
        checks.push(Check::new(
            format!("rank at {f:?}"),
            got.as_ref().ok() == Some(r),
            format!("{got:?}"),
        ));
    }

    let Some(p) = entry.problem.equation() else {
        return checks;
    };
    let report = solve_entry(entry);
    if let Some(rep) = &report {
        let stable: Vec<Vector> = rep.stable_roots().map(|r| r.x.clone()).collect();
        if let Some(exp) = &ex.stable_roots {
            checks.push(Check::new(
                "stable roots",
                same_point_sets(&stable, exp, 1e-8),
                fmt_points(&stable),
            ));
        }
        if let Some(min) = ex.min_stable {
            checks.push(Check::new(
                "stable count",
                stable.len() >= min,
                format!("{} stable roots", stable.len()),
            ));
        }
        if ex.no_roots {
            checks.push(Check::new(
                "no roots",
                rep.roots.is_empty(),
                format!("{} roots", rep.roots.len()),
            ));
        }
        if cls.kind == Kind::Elliptic {
            checks.push(Check::new(
                "parity",
                rep.even_count_ok,
                format!("{} stable roots", stable.len()),
            ));
        }
    }
    let nk = NkOptions::default();
    for (start, limit) in &ex.basins {
        let x0 = Vector::from_row_slice(start);
        let target = Vector::from_row_slice(limit);
        let (ok, detail) = match nk_iterate(&p, &x0, &nk) {
            Ok(t) => (
                t.outcome == Outcome::Converged && (t.last() - &target).norm() <= 1e-8,
                format!("{:?} at {}", t.outcome, fmt_points(&[t.last().clone()])),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push(Check::new(format!("basin from {start:?}"), ok, detail));
    }
    for x in &ex.en_members {
        let got = en_membership(&p, &Vector::from_row_slice(x), 32);
        checks.push(Check::new(
            format!("ellipsoid membership of {x:?}"),
            matches!(got, Ok(true)),
            format!("{got:?}"),
        ));
    }
    if let (Some(sup), GalleryProblem::Rank1(r)) = (&ex.sup_root, &entry.problem) {
        let got = crate::rank1::solve_sup(r, &nk);
        let (ok, detail) = match got {
            Ok(s) => (
                (&s.root.x - Vector::from_row_slice(sup)).norm() <= 1e-10,
                fmt_points(&[s.root.x]),
            ),
            Err(e) => (false, e.to_string()),
        };
        checks.push(Check::new("supremum root", ok, detail));
    }
    checks
}

/// Compares sampled cone membership with a closed-form rule.
///
/// Returns `(agreements, samples, disagreements outside a 10·eps_pd guard
/// band around the boundary)`.
pub fn cone_agreement(q: &QuadraticOperator, rule: &ConeRule, samples: usize, seed: u64) -> (usize, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = q.max_abs_entry();
    let mut agree = 0;
    let mut bad = 0;
    for _ in 0..samples {
        let f = random_unit(q.dim(), &mut rng);
        let (inside, margin) =
            is_in_cone(q, &Functional::from_vector(&f), DEFAULT_EPS_PD * scale).expect("nonzero unit functional");
        if inside == (rule.contains)(f.as_slice()) {
            agree += 1;
        } else if margin.abs() > 10.0 * DEFAULT_EPS_PD * scale {
            bad += 1;
        }
    }
    (agree, samples, bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete() {
        let ids = list_entries();
        for id in [
            "discriminant-elliptic",
            "stein-ulam",
            "example-15-unsolvable",
            "projector-3",
            "rank1-random-4",
        ] {
            assert!(ids.iter().any(|s| s == id), "{id}");
        }
        assert_eq!(ids.len(), 27);
        for id in &ids {
            assert_eq!(&make_entry(id).unwrap().id, id);
        }
        assert!(matches!(make_entry("nope"), Err(Error::UnknownId(_))));
        assert!(matches!(make_entry("rank1-random-5"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn export_roundtrip() {
        for id in ["stein-ulam", "example-a", "rank1-symmetric"] {
            let doc = export(id).unwrap();
            let (back, _) = ProblemDocument::read(&doc.to_json()).unwrap();
            assert_eq!(back.id.as_deref(), Some(id));
        }
        let (_, p) = ProblemDocument::read(&export("example-a").unwrap().to_json()).unwrap();
        assert_eq!(
            p,
            crate::document::Problem::Full(make_entry("example-a").unwrap().problem.equation().unwrap())
        );
    }

    #[test]
    fn projector_encoding_roundtrip() {
        let m = Matrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 5.0, 3.0, 5.0, 6.0]);
        let x = projector_encode(&m);
        assert_eq!(x.as_slice(), &[1.0, 4.0, 6.0, 2.0, 3.0, 5.0]);
        assert_eq!(projector_decode(3, &x).unwrap(), m);
    }

    #[test]
    fn projector_operator_squares_matrices() {
        let p = projector_problem(3).unwrap();
        let m = Matrix::from_row_slice(3, 3, &[1.0, -2.0, 0.5, -2.0, 3.0, 1.0, 0.5, 1.0, -1.0]);
        let q = p.q().eval(&projector_encode(&m)).unwrap();
        assert!((q - projector_encode(&(&m * &m))).norm() < 1e-12);
        assert!(matches!(projector_problem(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(projector_problem(9), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn scalar_projector() {
        let p = projector_problem(1).unwrap();
        assert_eq!(p.q().mats()[0][(0, 0)], 1.0);
        assert_eq!(p.lin()[(0, 0)], -1.0);
    }

    #[test]
    fn random_rank1_entries_are_certified() {
        for i in 0..20 {
            assert!(check_condition(&random_certified_rank1(i)).holds);
        }
    }

    #[test]
    fn classification_entries_pass() {
        for id in CLASSIFICATION_IDS.iter().chain(RANK_IDS.iter()) {
            let entry = make_entry(id).unwrap();
            for c in verify(&entry) {
                assert!(c.passed, "{id}: {} failed: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn planar_equation_entries_pass() {
        for id in [
            "example-a",
            "example-b",
            "example-i",
            "example-ii",
            "example-iii",
            "example-iv",
            "rank1-symmetric",
        ] {
            let entry = make_entry(id).unwrap();
            for c in verify(&entry) {
                assert!(c.passed, "{id}: {} failed: {}", c.name, c.detail);
            }
        }
    }
}
