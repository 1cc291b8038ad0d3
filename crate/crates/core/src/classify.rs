//! Elliptic / parabolic / hyperbolic classification of quadratic operators.
//!
//! An operator is elliptic when some combination `Σ μ_k A_k` is positive
//! definite. The search maximizes the concave function
//! `μ ↦ λ_min(Σ μ_k A_k)` over the unit sphere: projected subgradient ascent
//! from several restarts, followed by a log-barrier Newton polish that
//! resolves the nonsmooth maxima sitting on the parabolic frontier.
//!
//! All thresholds apply to the operator rescaled to unit max-abs entry.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{cond, lex_cmp, min_eig, null_space, orthogonal_complement, sym_eigen, Matrix, Vector};
use crate::qop::{random_unit, Functional, QuadraticOperator};

pub const DEFAULT_EPS_PD: f64 = 1e-8;
pub const DEFAULT_RANK_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Operator type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Kind::Elliptic => "Elliptic",
            Kind::Parabolic => "Parabolic",
            Kind::Hyperbolic => "Hyperbolic",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOptions {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub eps_pd: f64,
    /// Run the barrier polish after the subgradient ascent.
    pub polish: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            iterations: 500,
            seed: DEFAULT_SEED,
            eps_pd: DEFAULT_EPS_PD,
            polish: true,
        }
    }
}

/// Result of [`classify`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: Kind,
    /// Unit-norm maximizer; absent for hyperbolic verdicts.
    pub witness: Option<Functional>,
    /// `λ_min(Σ witness_k A_k)` on the original operator; for an elliptic
    /// verdict this is a certified `α` with `f(Q(x)) ≥ α‖x‖²`.
    pub margin: f64,
    pub restarts_used: usize,
    /// Max-abs entry used to rescale the operator; thresholds compare
    /// `margin / scale` with `eps_pd`.
    pub scale: f64,
    /// Hyperbolic verdicts rest on a search, not a certificate.
    pub heuristic: bool,
}

/// `λ_min(Σ f_k A_k)`.
pub fn min_eig_weighted(q: &QuadraticOperator, f: &Functional) -> Result<f64> {
    check_dim(q.dim(), f.dim())?;
    if f.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    Ok(min_eig(&q.weighted(&f.to_vector())?).0)
}

/// Whether `f ∈ K'_Q`, with the smallest eigenvalue as margin.
pub fn is_in_cone(q: &QuadraticOperator, f: &Functional, eps_pd: f64) -> Result<(bool, f64)> {
    let m = min_eig_weighted(q, f)?;
    Ok((m > eps_pd, m))
}

#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    mu: Vector,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        match self.value.total_cmp(&other.value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => lex_cmp(&self.mu, &other.mu) == Ordering::Less,
        }
    }
}

fn weighted(mats: &[Matrix], mu: &Vector) -> Matrix {
    let n = mats[0].nrows();
    let mut m = Matrix::zeros(n, n);
    for (a, &w) in mats.iter().zip(mu.iter()) {
        if w != 0.0 {
            m += a * w;
        }
    }
    m
}

fn candidate_at(mats: &[Matrix], mu: &Vector) -> Option<Candidate> {
    let norm = mu.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return None;
    }
    let mu = mu / norm;
    let value = min_eig(&weighted(mats, &mu)).0;
    Some(Candidate { value, mu })
}

fn ascend(mats: &[Matrix], start: Vector, iterations: usize) -> Candidate {
    let mut mu = start;
    let mut best = candidate_at(mats, &mu).expect("unit start");
    for k in 0..iterations {
        let (lam, v) = min_eig(&weighted(mats, &mu));
        if lam > best.value {
            best = Candidate {
                value: lam,
                mu: mu.clone(),
            };
        }
        let g = Vector::from_iterator(mats.len(), mats.iter().map(|a| v.dot(&(a * &v))));
        let tangent = &g - &mu * g.dot(&mu);
        if tangent.norm() < 1e-15 {
            break;
        }
        let next = &mu + tangent * (1.0 / (1.0 + k as f64));
        mu = &next / next.norm();
    }
    let (lam, _) = min_eig(&weighted(mats, &mu));
    if lam > best.value {
        best = Candidate { value: lam, mu };
    }
    best
}

fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Affine pencil `M(w) = m0 + Σ w_i dirs_i`.
struct Pencil {
    m0: Matrix,
    dirs: Vec<Matrix>,
}

impl Pencil {
    fn at(&self, w: &Vector) -> Matrix {
        let mut m = self.m0.clone();
        for (d, &wi) in self.dirs.iter().zip(w.iter()) {
            m += d * wi;
        }
        m
    }
}

fn log_det_pd(s: &Matrix) -> Option<f64> {
    let chol = s.clone().cholesky()?;
    let l = chol.l_dirty();
    let mut acc = 0.0;
    for i in 0..s.nrows() {
        let v = l[(i, i)];
        if !(v > 0.0) {
            return None;
        }
        acc += v.ln();
    }
    Some(2.0 * acc)
}

/// Maximizes `λ_min(M(w))` by following the central path of
/// `t + ν·log det(M(w) − tI)` as `ν → 0`.
fn barrier_maximize(p: &Pencil, w0: Vector) -> Vector {
    let d = p.m0.nrows();
    let r = p.dirs.len();
    let ident = Matrix::identity(d, d);
    let mut w = w0;
    let (lam0, _) = min_eig(&p.at(&w));
    let mut t = lam0 - 1.0;
    let mut nu = 1.0;
    while nu > 1e-13 {
        for _ in 0..80 {
            let s = p.at(&w) - &ident * t;
            let Some(chol) = s.clone().cholesky() else { break };
            let s_inv = chol.inverse();
            let prods: Vec<Matrix> = p.dirs.iter().map(|di| &s_inv * di).collect();
            let s_inv2 = &s_inv * &s_inv;
            let mut g = Vector::zeros(r + 1);
            let mut h = Matrix::zeros(r + 1, r + 1);
            g[r] = 1.0 - nu * s_inv.trace();
            h[(r, r)] = nu * s_inv2.trace();
            for i in 0..r {
                g[i] = nu * prods[i].trace();
                let cross = nu * (&s_inv * &prods[i]).trace();
                h[(i, r)] = -cross;
                h[(r, i)] = -cross;
                for j in i..r {
                    let v = nu * (&prods[i] * &prods[j]).trace();
                    h[(i, j)] = v;
                    h[(j, i)] = v;
                }
            }
            // `h` is the negated Hessian, positive definite on the interior.
            let step = match h.clone().cholesky() {
                Some(c) => c.solve(&g),
                None => match h.clone().lu().solve(&g) {
                    Some(x) => x,
                    None => break,
                },
            };
            let decrement = g.dot(&step);
            if !(decrement > 1e-13 * nu) {
                break;
            }
            let phi0 = t + nu * log_det_pd(&s).unwrap_or(f64::NEG_INFINITY);
            let mut alpha = 1.0;
            let mut moved = false;
            while alpha > 1e-12 {
                let wn = &w + step.rows(0, r) * alpha;
                let tn = t + step[r] * alpha;
                let sn = p.at(&wn) - &ident * tn;
                if let Some(ld) = log_det_pd(&sn) {
                    let phi = tn + nu * ld;
                    if phi >= phi0 + 0.25 * alpha * decrement - 1e-15 * (1.0 + phi0.abs()) {
                        w = wn;
                        t = tn;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved {
                break;
            }
        }
        nu *= 0.1;
    }
    w
}

/// Extra candidates: a kernel combination of the matrices (giving `λ_min = 0`
/// exactly) and the barrier-polished maximizer on the complementary span.
fn polish_candidates(mats: &[Matrix], warm: &Vector) -> Vec<Candidate> {
    let m = mats.len();
    let d = mats[0].nrows();
    let mut g = Matrix::zeros(d * d, m);
    for (k, a) in mats.iter().enumerate() {
        g.column_mut(k).copy_from_slice(a.as_slice());
    }
    let kernel = null_space(&g, 1e-12);
    let mut out = Vec::new();
    if kernel.ncols() > 0 {
        if let Some(c) = candidate_at(mats, &kernel.column(0).into_owned()) {
            out.push(c);
        }
    }
    let range = if kernel.ncols() == 0 {
        Matrix::identity(m, m)
    } else {
        let mut cols: Vec<Vector> = Vec::new();
        let comp = complement_of_columns(&kernel);
        for c in comp.column_iter() {
            cols.push(c.into_owned());
        }
        if cols.is_empty() {
            return out;
        }
        Matrix::from_columns(&cols)
    };
    let r = range.ncols();
    let basis: Vec<Matrix> = range.column_iter().map(|c| weighted(mats, &c.into_owned())).collect();
    let tau = Vector::from_iterator(r, basis.iter().map(|b| b.trace()));
    let tau_norm = tau.norm();
    if tau_norm < 1e-12 {
        // Every combination in the span is traceless, hence indefinite or zero.
        return out;
    }
    let c0 = &tau / (tau_norm * tau_norm);
    let comp = orthogonal_complement(&tau);
    let combine = |c: &Vector| {
        let mut acc = Matrix::zeros(d, d);
        for (b, &ci) in basis.iter().zip(c.iter()) {
            acc += b * ci;
        }
        acc
    };
    let pencil = Pencil {
        m0: combine(&c0),
        dirs: comp.column_iter().map(|col| combine(&col.into_owned())).collect(),
    };
    let mut w0 = Vector::zeros(comp.ncols());
    let c_warm = range.transpose() * warm;
    let tr = tau.dot(&c_warm);
    if tr > 1e-12 {
        let c = c_warm / tr;
        w0 = comp.transpose() * (c - &c0);
    }
    let w = barrier_maximize(&pencil, w0);
    let c = &c0 + &comp * w;
    if let Some(cand) = candidate_at(mats, &(&range * c)) {
        out.push(cand);
    }
    out
}

fn complement_of_columns(k: &Matrix) -> Matrix {
    // Null space of kᵀ is the orthogonal complement of its column span.
    null_space(&k.transpose(), 1e-12)
}

/// Classifies `q` by maximizing the smallest eigenvalue of `Σ μ_k A_k` over
/// the unit sphere.
pub fn classify(q: &QuadraticOperator, opts: &ClassifyOptions) -> Classification {
    let n = q.dim();
    let scale = q.max_abs_entry();
    if scale == 0.0 {
        let mut w = vec![0.0; n];
        w[0] = 1.0;
        return Classification {
            kind: Kind::Parabolic,
            witness: Some(Functional::new(w)),
            margin: 0.0,
            restarts_used: 0,
            scale: 0.0,
            heuristic: false,
        };
    }
    let mats: Vec<Matrix> = q.mats().iter().map(|m| m / scale).collect();
    let restarts = opts.restarts.max(1);
    let runs: Vec<Candidate> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let start = if i == 0 {
                Vector::from_element(n, 1.0 / (n as f64).sqrt())
            } else {
                random_unit(n, &mut restart_rng(opts.seed, i))
            };
            ascend(&mats, start, opts.iterations)
        })
        .collect();
    let mut best = runs[0].clone();
    for c in &runs[1..] {
        if c.better_than(&best) {
            best = c.clone();
        }
    }
    if opts.polish {
        for c in polish_candidates(&mats, &best.mu.clone()) {
            if c.better_than(&best) {
                best = c;
            }
        }
    }
    let kind = if best.value > opts.eps_pd {
        Kind::Elliptic
    } else if best.value >= -opts.eps_pd {
        Kind::Parabolic
    } else {
        Kind::Hyperbolic
    };
    let witness = Functional::from_vector(&best.mu);
    let margin = min_eig(&q.weighted(&best.mu).expect("dimension is consistent")).0;
    Classification {
        kind,
        witness: (kind != Kind::Hyperbolic).then_some(witness),
        margin,
        restarts_used: restarts,
        scale,
        heuristic: kind == Kind::Hyperbolic,
    }
}

/// Classification of a planar operator by the sign of its discriminant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarClassification {
    pub classification: Classification,
    pub delta: f64,
    /// Whether the eigenvalue search reached the same verdict.
    pub agrees_with_search: bool,
}

/// Discriminant `Δ = (a₁c₂−a₂c₁)² − 4(a₁b₂−a₂b₁)(b₁c₂−b₂c₁)` for
/// `Q_k(x) = a_k x₁² + 2b_k x₁x₂ + c_k x₂²`.
pub fn discriminant_2d(q: &QuadraticOperator) -> Result<f64> {
    if q.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: q.dim(),
        });
    }
    let [(a1, b1, c1), (a2, b2, c2)] = planar_coefficients(q);
    Ok((a1 * c2 - a2 * c1).powi(2) - 4.0 * (a1 * b2 - a2 * b1) * (b1 * c2 - b2 * c1))
}

fn planar_coefficients(q: &QuadraticOperator) -> [(f64, f64, f64); 2] {
    let m = q.mats();
    let row = |a: &Matrix| (a[(0, 0)], a[(0, 1)], a[(1, 1)]);
    [row(&m[0]), row(&m[1])]
}

/// Planar classification by the discriminant, cross-checked by [`classify`].
pub fn classify_2d(q: &QuadraticOperator, opts: &ClassifyOptions) -> Result<PlanarClassification> {
    if q.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: q.dim(),
        });
    }
    let scale = q.max_abs_entry();
    if scale == 0.0 {
        return Err(Error::DegenerateProportional);
    }
    let scaled = q.scaled(1.0 / scale);
    let [(a1, b1, c1), (a2, b2, c2)] = planar_coefficients(&scaled);
    let cross = [a1 * b2 - a2 * b1, a1 * c2 - a2 * c1, b1 * c2 - b2 * c1];
    if cross.iter().all(|v| v.abs() <= 1e-12) {
        return Err(Error::DegenerateProportional);
    }
    let delta = discriminant_2d(&scaled)?;
    let kind = if delta > opts.eps_pd {
        Kind::Elliptic
    } else if delta >= -opts.eps_pd {
        Kind::Parabolic
    } else {
        Kind::Hyperbolic
    };
    let search = classify(q, opts);
    let agrees = search.kind == kind;
    let mut classification = search;
    classification.kind = kind;
    if kind == Kind::Hyperbolic {
        classification.witness = None;
    } else if classification.witness.is_none() {
        classification.witness = Some(Functional::new(vec![1.0, 0.0]));
    }
    Ok(PlanarClassification {
        classification,
        delta: delta * scale.powi(4),
        agrees_with_search: agrees,
    })
}

/// Numerical rank of `Σ f_k A_k`.
pub fn rank_at(q: &QuadraticOperator, f: &Functional, rank_tol: f64) -> Result<usize> {
    check_dim(q.dim(), f.dim())?;
    if f.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    Ok(matrix_rank(&q.weighted(&f.to_vector())?, rank_tol))
}

fn matrix_rank(m: &Matrix, rank_tol: f64) -> usize {
    let (vals, _) = sym_eigen(m);
    let top = vals.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if top == 0.0 {
        return 0;
    }
    vals.iter().filter(|v| v.abs() > rank_tol * top).count()
}

/// Boundary functionals found by sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeSample {
    /// Unit-norm functionals.
    pub functionals: Vec<Functional>,
    /// `λ_min(Σ f_k A_k)` for each functional.
    pub margins: Vec<f64>,
    pub boundary_flags: Vec<bool>,
    /// Rank of the weighted form at each functional.
    pub ranks: Vec<usize>,
    /// Whether the functional was confirmed to span an extreme ray.
    pub extremal: Vec<bool>,
}

/// Lower estimate of `rg Q` from sampled extreme rays of the closed cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEstimate {
    /// Maximum rank over sampled extreme rays; a lower bound on `rg Q`.
    pub rank: usize,
    pub sample: ConeSample,
    /// All sampled extreme rays share the same rank.
    pub consistent_homogeneous: bool,
}

impl RankEstimate {
    pub fn summary(&self) -> String {
        let n = self.sample.extremal.iter().filter(|&&e| e).count();
        if self.consistent_homogeneous {
            format!("consistent with homogeneous rank {} on {} samples", self.rank, n)
        } else {
            format!(
                "rank lower bound {} on {} samples; ranks differ across samples",
                self.rank, n
            )
        }
    }
}

/// Samples extreme rays of the closed cone `{μ : Σ μ_k A_k ⪰ 0}` and
/// reports the largest rank seen.
///
/// Each sample bisects from the interior witness toward a random direction
/// outside the cone, then descends through faces of the boundary until the
/// face is one-dimensional.
pub fn estimate_rg(q: &QuadraticOperator, samples: usize, rank_tol: f64, seed: u64) -> Result<RankEstimate> {
    let opts = ClassifyOptions {
        seed,
        ..ClassifyOptions::default()
    };
    let cls = classify(q, &opts);
    if cls.kind != Kind::Elliptic {
        return Err(Error::NotElliptic { margin: cls.margin });
    }
    let n = q.dim();
    let scale = cls.scale;
    let mats: Vec<Matrix> = q.mats().iter().map(|m| m / scale).collect();
    let witness = cls.witness.expect("elliptic verdict has a witness").to_vector();
    let lifted = lifting_map(&mats);
    let line_space = null_space(&lifted, 1e-12);

    let mut sample = ConeSample {
        functionals: Vec::new(),
        margins: Vec::new(),
        boundary_flags: Vec::new(),
        ranks: Vec::new(),
        extremal: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut d = random_unit(n, &mut rng);
        if min_eig(&weighted(&mats, &d)).0 > 0.0 {
            d = -d;
            if min_eig(&weighted(&mats, &d)).0 > 0.0 {
                continue;
            }
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            let p = &witness + (&d - &witness) * mid;
            if min_eig(&weighted(&mats, &p)).0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let start = &witness + (&d - &witness) * lo;
        let (mu, extremal) = descend_faces(&mats, start, &line_space, rank_tol, &mut rng);
        let mu = &mu / mu.norm();
        let f = Functional::from_vector(&mu);
        let margin = min_eig_weighted(q, &f)?;
        sample.ranks.push(matrix_rank(&weighted(&mats, &mu), rank_tol));
        sample
            .boundary_flags
            .push(margin.abs() <= DEFAULT_EPS_PD.max(1e-10) * scale.max(1.0));
        sample.margins.push(margin);
        sample.functionals.push(f);
        sample.extremal.push(extremal);
    }
    let extremal_ranks: Vec<usize> = sample
        .ranks
        .iter()
        .zip(&sample.extremal)
        .filter(|(_, &e)| e)
        .map(|(&r, _)| r)
        .collect();
    let rank = extremal_ranks.iter().copied().max().unwrap_or(0);
    let consistent_homogeneous = !extremal_ranks.is_empty() && extremal_ranks.iter().all(|&r| r == rank);
    Ok(RankEstimate {
        rank,
        sample,
        consistent_homogeneous,
    })
}

/// Columns are `vec(A_k)`.
fn lifting_map(mats: &[Matrix]) -> Matrix {
    let d = mats[0].nrows();
    let mut g = Matrix::zeros(d * d, mats.len());
    for (k, a) in mats.iter().enumerate() {
        g.column_mut(k).copy_from_slice(a.as_slice());
    }
    g
}

fn descend_faces<R: Rng>(
    mats: &[Matrix],
    mut mu: Vector,
    line_space: &Matrix,
    rank_tol: f64,
    rng: &mut R,
) -> (Vector, bool) {
    let n = mats[0].nrows();
    let m = mats.len();
    for _ in 0..=m {
        let mu_m = weighted(mats, &mu);
        let (vals, vecs) = sym_eigen(&mu_m);
        let top = vals.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let zero: Vec<usize> = (0..n).filter(|&i| vals[i].abs() <= rank_tol * top).collect();
        if zero.is_empty() {
            return (mu, false);
        }
        let keep: Vec<usize> = (0..n).filter(|i| !zero.contains(i)).collect();
        let u = Matrix::from_columns(&zero.iter().map(|&i| vecs.column(i).into_owned()).collect::<Vec<_>>());
        // Directions d with M(d)·U = 0 span the face containing μ.
        let k = u.ncols();
        let mut cons = Matrix::zeros(n * k + line_space.ncols(), m);
        for (j, a) in mats.iter().enumerate() {
            let au = a * &u;
            cons.view_mut((0, j), (n * k, 1)).copy_from_slice(au.as_slice());
        }
        for (r, c) in line_space.column_iter().enumerate() {
            for j in 0..m {
                cons[(n * k + r, j)] = c[j];
            }
        }
        let face = null_space(&cons, 1e-9);
        if face.ncols() <= 1 || keep.is_empty() {
            return (mu, face.ncols() == 1);
        }
        // Random direction in the face, orthogonal to μ.
        let coeffs = random_unit(face.ncols(), rng);
        let mut dir = &face * coeffs;
        let mu_unit = &mu / mu.norm();
        dir -= &mu_unit * dir.dot(&mu_unit);
        let dn = dir.norm();
        if dn < 1e-12 {
            continue;
        }
        dir /= dn;
        let w = Matrix::from_columns(&keep.iter().map(|&i| vecs.column(i).into_owned()).collect::<Vec<_>>());
        let r0 = w.transpose() * &mu_m * &w;
        let r0 = (&r0 + r0.transpose()) * 0.5;
        let dm = w.transpose() * weighted(mats, &dir) * &w;
        let dm = (&dm + dm.transpose()) * 0.5;
        let Some(chol) = r0.clone().cholesky() else {
            return (mu, false);
        };
        let l_inv = chol.l().try_inverse().expect("cholesky factor is invertible");
        let g = &l_inv * &dm * l_inv.transpose();
        let (gv, _) = sym_eigen(&((&g + g.transpose()) * 0.5));
        // First hitting time of a singular R0 + s·D along ±dir.
        let rho_plus = -gv[0];
        let rho_minus = gv[gv.len() - 1];
        let (sign, rho) = if rho_plus >= rho_minus {
            (1.0, rho_plus)
        } else {
            (-1.0, rho_minus)
        };
        if rho <= 1e-14 {
            return (mu, false);
        }
        mu += dir * (sign / rho);
    }
    (mu, false)
}

/// Functionals drawn inside `K'_Q` around a witness: `w + s·d` for random unit
/// `d`, with `s` halved until strictly inside.
pub fn sample_cone_interior(
    q: &QuadraticOperator,
    witness: &Functional,
    count: usize,
    eps_pd: f64,
    seed: u64,
) -> Result<Vec<Functional>> {
    let w = witness.normalized()?.to_vector();
    check_dim(q.dim(), w.len())?;
    let scale = q.max_abs_entry().max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = random_unit(q.dim(), &mut rng);
        let mut s = 1.0;
        let mut found = false;
        for _ in 0..60 {
            let cand = &w + &d * s;
            if min_eig(&q.weighted(&cand)?).0 / scale > eps_pd {
                out.push(Functional::from_vector(&(&cand / cand.norm())));
                found = true;
                break;
            }
            s *= 0.5;
        }
        if !found {
            return Err(Error::NotInCone {
                margin: min_eig_weighted(q, witness)?,
            });
        }
    }
    Ok(out)
}

/// Elliptic operator whose closed cone `K'_Q` is generated by `basis`.
///
/// With `w_i` the rows of `Z⁻¹` (columns of `Z` being the basis vectors), the
/// operator is `Q(x) = Σ_i x_i² w_i`, so `f(Q(x)) = Σ_i ⟨f, w_i⟩ x_i²` is
/// positive definite exactly when every coordinate of `f` in the basis is
/// positive.
pub fn diag_eqo_for_cone(basis: &[Vector]) -> Result<QuadraticOperator> {
    let n = basis.len();
    if n == 0 {
        return Err(Error::InvalidInput("basis is empty".into()));
    }
    for b in basis {
        check_dim(n, b.len())?;
    }
    let z = Matrix::from_columns(basis);
    let c = cond(&z);
    if !(c < 1e8) {
        return Err(Error::SingularBasis { cond: c });
    }
    let w = z.try_inverse().ok_or(Error::SingularBasis { cond: f64::INFINITY })?;
    let mats = (0..n)
        .map(|k| Matrix::from_diagonal(&w.column(k).into_owned()))
        .collect();
    QuadraticOperator::new(mats)
}
