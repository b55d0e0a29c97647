//! Multiplier Hamiltonians, metric operators, ladder operators, their
//! factorization and intertwining identities, the adjoint pairing, and the
//! formal orthonormal frame — all realized at finite truncation.
//!
//! Every operator here is a truncated series `sum_n w_n <right_n, f> left_n`
//! (possibly with a shifted left index). A truncated series cannot certify
//! convergence, so each application also returns [`TailDiagnostics`]:
//! partial results are snapshotted at the dyadic checkpoints N/4, N/2, N and
//! classified by how the Cauchy increments behave. Divergence is data, not
//! an error.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{family_combination, BiorthPair, SequenceFamily};
use crate::seqspace::{AmbientVector, CoeffVector, ScalarSequence, C64};

/// Default relative tolerance for declaring a truncated series settled.
pub const DEFAULT_SETTLE_TOL: f64 = 1e-9;

/// Contraction factor: increments shrinking at least this fast per dyadic
/// checkpoint extrapolate to a Cauchy sequence.
const CONTRACTION_FACTOR: f64 = 0.75;

/// Increments not dropping below this fraction of the previous increment
/// mean the partial results are still moving at full strength.
const GROWTH_FACTOR: f64 = 0.95;

/// Classification of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Convergence {
    Converged,
    Growing,
    Inconclusive,
}

impl std::fmt::Display for Convergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convergence::Converged => write!(f, "CONVERGED"),
            Convergence::Growing => write!(f, "GROWING"),
            Convergence::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// Stabilization record for one truncated series application.
///
/// `CONVERGED` means either the last Cauchy increment is below
/// `settle_tol * (1 + |v_N|)` (so the partial norms at N/2 and N agree to
/// that tolerance too), or the increments contract dyadically, which
/// extrapolates to a finite limit. `GROWING` means the increments are not
/// shrinking at this truncation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TailDiagnostics {
    /// Index checkpoints (about N/4, N/2, N).
    pub checkpoints: [usize; 3],
    /// Norms of the partial results at the checkpoints.
    pub partial_norms: [f64; 3],
    /// Cauchy increments `|v_{N/2} - v_{N/4}|` and `|v_N - v_{N/2}|`.
    pub increments: [f64; 2],
    pub classification: Convergence,
    pub settle_tol: f64,
}

impl TailDiagnostics {
    fn classify(checkpoints: [usize; 3], norms: [f64; 3], incr: [f64; 2], tol: f64) -> Self {
        let settled = incr[1] <= tol * (1.0 + norms[2]);
        let contracting = incr[1] <= CONTRACTION_FACTOR * incr[0];
        let classification = if settled || contracting {
            Convergence::Converged
        } else if incr[1] >= GROWTH_FACTOR * incr[0] {
            Convergence::Growing
        } else {
            Convergence::Inconclusive
        };
        TailDiagnostics {
            checkpoints,
            partial_norms: norms,
            increments: incr,
            classification,
            settle_tol: tol,
        }
    }
}

/// Truncated series `sum_n weight(p) <right_n, f> left_{n + shift}`, where
/// `p = n - base + 1` is the 1-indexed position. Terms whose shifted left
/// index leaves `[base, truncation]` are dropped.
fn apply_series<V: AmbientVector>(
    left: &SequenceFamily<V>,
    right: &SequenceFamily<V>,
    weight: &dyn Fn(usize) -> C64,
    shift: i64,
    f: &V,
    truncation: usize,
    settle_tol: f64,
) -> Result<(V, TailDiagnostics)> {
    let base = right.base_index();
    assert!(truncation >= base, "truncation below base index");
    let mut acc = left.member(left.base_index())?.scaled(C64::new(0.0, 0.0));
    let q_mark = truncation / 4;
    let h_mark = truncation / 2;
    let mut snap_q: Option<V> = None;
    let mut snap_h: Option<V> = None;
    for n in base..=truncation {
        let li = n as i64 + shift;
        if li >= base as i64 && li <= truncation as i64 {
            let w = weight(n - base + 1);
            let coef = w * right.member(n)?.inner(f);
            if coef != C64::new(0.0, 0.0) {
                acc = acc.try_add(&left.member(li as usize)?.scaled(coef))?;
            }
        }
        if n == q_mark {
            snap_q = Some(acc.clone());
        }
        if n == h_mark {
            snap_h = Some(acc.clone());
        }
    }
    let snap_q = snap_q.unwrap_or_else(|| acc.scaled(C64::new(0.0, 0.0)));
    let snap_h = snap_h.unwrap_or_else(|| acc.scaled(C64::new(0.0, 0.0)));
    let norms = [snap_q.norm(), snap_h.norm(), acc.norm()];
    let incr = [snap_h.distance(&snap_q), acc.distance(&snap_h)];
    let diag = TailDiagnostics::classify([q_mark, h_mark, truncation], norms, incr, settle_tol);
    Ok((acc, diag))
}

// ---------------------------------------------------------------------------
// Multiplier Hamiltonians
// ---------------------------------------------------------------------------

/// `H f = sum_n alpha_n <right_n, f> left_n` at truncation N. On the
/// biorthogonal partner members the sum collapses: applying the (x,y)
/// variant to `x_k` (k <= N) gives `alpha_k x_k`.
#[derive(Clone, Debug)]
pub struct MultiplierOperator<V> {
    left: SequenceFamily<V>,
    right: SequenceFamily<V>,
    alpha: ScalarSequence,
    truncation: usize,
    settle_tol: f64,
}

impl<V: AmbientVector> MultiplierOperator<V> {
    /// `H_{x,y}: f -> sum alpha_n <y_n, f> x_n`.
    pub fn h_xy(pair: &BiorthPair<V>, alpha: ScalarSequence, truncation: usize) -> Self {
        MultiplierOperator {
            left: pair.x.clone(),
            right: pair.y.clone(),
            alpha,
            truncation,
            settle_tol: DEFAULT_SETTLE_TOL,
        }
    }

    /// `H_{y,x}: g -> sum alpha_n <x_n, g> y_n`.
    pub fn h_yx(pair: &BiorthPair<V>, alpha: ScalarSequence, truncation: usize) -> Self {
        MultiplierOperator {
            left: pair.y.clone(),
            right: pair.x.clone(),
            alpha,
            truncation,
            settle_tol: DEFAULT_SETTLE_TOL,
        }
    }

    pub fn with_settle_tol(mut self, tol: f64) -> Self {
        self.settle_tol = tol;
        self
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Weight attached to member index `n`.
    pub fn alpha_at(&self, n: usize) -> C64 {
        self.alpha.value(n - self.left.base_index() + 1)
    }

    pub fn apply(&self, f: &V) -> Result<(V, TailDiagnostics)> {
        let alpha = self.alpha.clone();
        apply_series(
            &self.left,
            &self.right,
            &move |p| alpha.value(p),
            0,
            f,
            self.truncation,
            self.settle_tol,
        )
    }
}

// ---------------------------------------------------------------------------
// Metric operators
// ---------------------------------------------------------------------------

fn positive_weight(w: C64, label: &str, position: usize) -> Result<f64> {
    if w.im != 0.0 || w.re <= 0.0 {
        return Err(Error::InvalidSequence {
            reason: format!("metric weight {label}[{position}] = {w} is not strictly positive"),
        });
    }
    Ok(w.re)
}

/// `S f = sum_n w_n <fam_n, f> fam_n` with strictly positive weights.
/// Maps the biorthogonal partner member k to `w_k fam_k`.
#[derive(Clone, Debug)]
pub struct MetricOperator<V> {
    family: SequenceFamily<V>,
    weights: ScalarSequence,
    truncation: usize,
    settle_tol: f64,
}

impl<V: AmbientVector> MetricOperator<V> {
    /// `S_x^beta` built on the x-family of the pair.
    pub fn s_x(pair: &BiorthPair<V>, weights: ScalarSequence, truncation: usize) -> Result<Self> {
        Self::on_family(pair.x.clone(), weights, truncation)
    }

    /// `S_y^gamma` built on the y-family of the pair.
    pub fn s_y(pair: &BiorthPair<V>, weights: ScalarSequence, truncation: usize) -> Result<Self> {
        Self::on_family(pair.y.clone(), weights, truncation)
    }

    fn on_family(
        family: SequenceFamily<V>,
        weights: ScalarSequence,
        truncation: usize,
    ) -> Result<Self> {
        for p in 1..=truncation.saturating_sub(family.base_index()) + 1 {
            positive_weight(weights.value(p), weights.label(), p)?;
        }
        Ok(MetricOperator {
            family,
            weights,
            truncation,
            settle_tol: DEFAULT_SETTLE_TOL,
        })
    }

    pub fn with_settle_tol(mut self, tol: f64) -> Self {
        self.settle_tol = tol;
        self
    }

    pub fn weight_at(&self, n: usize) -> f64 {
        self.weights.value(n - self.family.base_index() + 1).re
    }

    pub fn apply(&self, f: &V) -> Result<(V, TailDiagnostics)> {
        let weights = self.weights.clone();
        apply_series(
            &self.family,
            &self.family,
            &move |p| weights.value(p),
            0,
            f,
            self.truncation,
            self.settle_tol,
        )
    }
}

/// Matrix of a metric operator compressed to the given basis vectors:
/// `M[i][j] = sum_n w_n <b_i, fam_n> <fam_n, b_j>`. Hermitian positive
/// semidefinite by construction; returned as a real symmetric matrix (the
/// concrete families are real).
pub fn metric_matrix<V: AmbientVector>(
    family: &SequenceFamily<V>,
    weights: &ScalarSequence,
    truncation: usize,
    basis: &[V],
) -> Result<DMatrix<f64>> {
    let base = family.base_index();
    let d = basis.len();
    let mut m = DMatrix::<f64>::zeros(d, d);
    for n in base..=truncation {
        let w = positive_weight(weights.value(n - base + 1), weights.label(), n - base + 1)?;
        let fam = family.member(n)?;
        let overlaps: Vec<C64> = basis.iter().map(|b| b.inner(&fam)).collect();
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] += w * (overlaps[i] * overlaps[j].conj()).re;
            }
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Ladder operators
// ---------------------------------------------------------------------------

/// Ladder direction: lowering shifts members down one index, raising up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderDirection {
    Lower,
    Raise,
}

fn validate_ladder_alpha(alpha: &ScalarSequence, truncation: usize) -> Result<Vec<f64>> {
    let mut vals = Vec::with_capacity(truncation + 1);
    let mut prev = 0.0;
    for p in 1..=truncation + 1 {
        let a = alpha.value(p);
        if a.im != 0.0 || a.re < 0.0 {
            return Err(Error::InvalidSequence {
                reason: format!(
                    "ladder sequence {}[{p}] = {a} must be real >= 0",
                    alpha.label()
                ),
            });
        }
        if p == 1 && a.re != 0.0 {
            return Err(Error::InvalidSequence {
                reason: format!("ladder sequence {} must start at 0", alpha.label()),
            });
        }
        if a.re < prev {
            return Err(Error::InvalidSequence {
                reason: format!(
                    "ladder sequence {} is not nondecreasing at {p}",
                    alpha.label()
                ),
            });
        }
        prev = a.re;
        vals.push(a.re);
    }
    Ok(vals)
}

/// Lowering operator `A f = sum_{n >= 2} sqrt(alpha_n) <right_n, f> left_{n-1}`
/// and raising operator `B f = sum_n sqrt(alpha_{n+1}) <right_n, f> left_{n+1}`
/// (positions relative to the family base), under `0 = alpha_1 <= alpha_2 <= ...`.
#[derive(Clone, Debug)]
pub struct LadderOperator<V> {
    direction: LadderDirection,
    left: SequenceFamily<V>,
    right: SequenceFamily<V>,
    sqrt_alpha: Vec<f64>,
    truncation: usize,
    settle_tol: f64,
}

impl<V: AmbientVector> LadderOperator<V> {
    /// `A_{x,y}`: lowers along the x-family, pairs against the y-family.
    pub fn a_xy(pair: &BiorthPair<V>, alpha: &ScalarSequence, truncation: usize) -> Result<Self> {
        Self::build(
            LadderDirection::Lower,
            pair.x.clone(),
            pair.y.clone(),
            alpha,
            truncation,
        )
    }

    /// `B_{x,y}`: raises along the x-family, pairs against the y-family.
    pub fn b_xy(pair: &BiorthPair<V>, alpha: &ScalarSequence, truncation: usize) -> Result<Self> {
        Self::build(
            LadderDirection::Raise,
            pair.x.clone(),
            pair.y.clone(),
            alpha,
            truncation,
        )
    }

    /// `A_{y,x}`: the mirror lowering operator.
    pub fn a_yx(pair: &BiorthPair<V>, alpha: &ScalarSequence, truncation: usize) -> Result<Self> {
        Self::build(
            LadderDirection::Lower,
            pair.y.clone(),
            pair.x.clone(),
            alpha,
            truncation,
        )
    }

    /// `B_{y,x}`: the mirror raising operator.
    pub fn b_yx(pair: &BiorthPair<V>, alpha: &ScalarSequence, truncation: usize) -> Result<Self> {
        Self::build(
            LadderDirection::Raise,
            pair.y.clone(),
            pair.x.clone(),
            alpha,
            truncation,
        )
    }

    fn build(
        direction: LadderDirection,
        left: SequenceFamily<V>,
        right: SequenceFamily<V>,
        alpha: &ScalarSequence,
        truncation: usize,
    ) -> Result<Self> {
        let vals = validate_ladder_alpha(alpha, truncation)?;
        Ok(LadderOperator {
            direction,
            left,
            right,
            sqrt_alpha: vals.into_iter().map(f64::sqrt).collect(),
            truncation,
            settle_tol: DEFAULT_SETTLE_TOL,
        })
    }

    pub fn apply(&self, f: &V) -> Result<(V, TailDiagnostics)> {
        let (shift, offset) = match self.direction {
            LadderDirection::Lower => (-1_i64, 0_usize),
            LadderDirection::Raise => (1, 1),
        };
        let sqrt_alpha = self.sqrt_alpha.clone();
        apply_series(
            &self.left,
            &self.right,
            &move |p| C64::new(sqrt_alpha[p - 1 + offset], 0.0),
            shift,
            f,
            self.truncation,
            self.settle_tol,
        )
    }
}

// ---------------------------------------------------------------------------
// Identity residuals
// ---------------------------------------------------------------------------

/// `|B_{x,y} A_{x,y} f - H_{x,y} f|` for a finite x-combination `f`.
/// The two sides coincide on the span of the x-family; indices at the
/// truncation edge are refused because the raise step would leave the
/// representable range for representation reasons, not mathematical ones.
pub fn factorization_residual<V: AmbientVector>(
    pair: &BiorthPair<V>,
    alpha: &ScalarSequence,
    combo: &[(usize, C64)],
    truncation: usize,
) -> Result<f64> {
    let top = combo.iter().map(|&(k, _)| k).max().unwrap_or(0);
    if top + 1 > truncation {
        return Err(Error::TruncationEdge {
            index: top,
            truncation,
        });
    }
    let f = family_combination(&pair.x, combo)?;
    let lower = LadderOperator::a_xy(pair, alpha, truncation)?;
    let raise = LadderOperator::b_xy(pair, alpha, truncation)?;
    let hamiltonian = MultiplierOperator::h_xy(pair, alpha.clone(), truncation);
    let (af, _) = lower.apply(&f)?;
    let (baf, _) = raise.apply(&af)?;
    let (hf, _) = hamiltonian.apply(&f)?;
    Ok(baf.distance(&hf))
}

/// Residuals and scales of the two intertwining identities at member index
/// `n` (refusing the truncation edge), under the pairing `gamma = 1/beta`:
/// `(H_{x,y} S_x^beta - S_x^beta H_{y,x}) y_n = 0` and
/// `(H_{y,x} S_y^gamma - S_y^gamma H_{x,y}) x_n = 0`.
#[derive(Clone, Copy, Debug)]
pub struct IntertwiningResidual {
    pub on_y: f64,
    pub scale_y: f64,
    pub on_x: f64,
    pub scale_x: f64,
}

pub fn intertwining_residual<V: AmbientVector>(
    pair: &BiorthPair<V>,
    alpha: &ScalarSequence,
    beta: &ScalarSequence,
    n: usize,
    truncation: usize,
) -> Result<IntertwiningResidual> {
    if n + 1 > truncation {
        return Err(Error::TruncationEdge {
            index: n,
            truncation,
        });
    }
    let beta_inner = beta.clone();
    let gamma = ScalarSequence::new(format!("inv({})", beta.label()), move |p| {
        let b = beta_inner.value(p);
        C64::new(1.0, 0.0) / b
    });
    let s_x = MetricOperator::s_x(pair, beta.clone(), truncation)?;
    let s_y = MetricOperator::s_y(pair, gamma, truncation)?;
    let h_xy = MultiplierOperator::h_xy(pair, alpha.clone(), truncation);
    let h_yx = MultiplierOperator::h_yx(pair, alpha.clone(), truncation);

    let y_n = pair.y.member(n)?;
    let lhs_y = h_xy.apply(&s_x.apply(&y_n)?.0)?.0;
    let rhs_y = s_x.apply(&h_yx.apply(&y_n)?.0)?.0;
    let x_n = pair.x.member(n)?;
    let lhs_x = h_yx.apply(&s_y.apply(&x_n)?.0)?.0;
    let rhs_x = s_y.apply(&h_xy.apply(&x_n)?.0)?.0;

    Ok(IntertwiningResidual {
        on_y: lhs_y.distance(&rhs_y),
        scale_y: 1.0 + lhs_y.norm(),
        on_x: lhs_x.distance(&rhs_x),
        scale_x: 1.0 + lhs_x.norm(),
    })
}

/// `|<f, H_{x,y} h> - <H_{y,x} f, h>|`. Vanishes identically at truncation
/// for real alpha; complex alpha breaks it.
pub fn adjoint_pairing_residual<V: AmbientVector>(
    pair: &BiorthPair<V>,
    alpha: &ScalarSequence,
    f: &V,
    h: &V,
    truncation: usize,
) -> Result<f64> {
    let h_xy = MultiplierOperator::h_xy(pair, alpha.clone(), truncation);
    let h_yx = MultiplierOperator::h_yx(pair, alpha.clone(), truncation);
    let lhs = f.inner(&h_xy.apply(h)?.0);
    let rhs = h_yx.apply(f)?.0.inner(h);
    Ok((lhs - rhs).norm())
}

// ---------------------------------------------------------------------------
// Formal frame
// ---------------------------------------------------------------------------

/// The formally orthonormal vectors `ê_n = beta_n^{-1/2} (S_x^beta)^{1/2} y_n`
/// and the conjugated Hamiltonian `h_{x,y} = (S_y^gamma)^{1/2} H_{x,y}
/// (S_x^beta)^{1/2}`, realized as exact matrix identities on `C^{N+1}`.
#[derive(Clone, Debug)]
pub struct FormalFrame {
    pub truncation: usize,
    /// `ê_n` for n = 1..=N+1 (the full square model).
    pub e_hat: Vec<CoeffVector>,
    /// `max_{m,n <= N-1} |<ê_m, ê_n> - delta_mn|`
    pub orthonormality_residual: f64,
    /// `max_{n <= N-1} |h_{x,y} ê_n - alpha_n ê_n|`
    pub eigen_residual: f64,
    /// Agreement of the two construction formulas:
    /// `max_{n <= N-1} |ê_n - gamma_n^{-1/2} (S_y^gamma)^{1/2} x_n|`
    pub consistency_residual: f64,
}

/// Positive-semidefinite square root by spectral decomposition with
/// eigenvalue clamping at zero; hard failure only when the matrix is
/// indefinite beyond rounding.
fn psd_sqrt(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let dim = a.nrows();
    let sym = (a + a.transpose()).scale(0.5);
    let eigen = sym
        .try_symmetric_eigen(f64::EPSILON, 50_000)
        .ok_or(Error::EigenFailure { dim })?;
    let max = eigen.eigenvalues.iter().cloned().fold(0.0_f64, f64::max);
    let min = eigen
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    if min < -1e-8 * max.max(1.0) {
        return Err(Error::IndefiniteMatrix {
            min_eigenvalue: min,
            scale: max,
        });
    }
    let q = &eigen.eigenvectors;
    let sqrt_vals =
        DMatrix::from_diagonal(
            &eigen
                .eigenvalues
                .map(|l| if l > 0.0 { l.sqrt() } else { 0.0 }),
        );
    Ok(q * sqrt_vals * q.transpose())
}

/// Build the frame on `C^{N+1}`: all N+1 members of each family, with the
/// last y-member orthogonally projected onto the span (the dropped
/// component is orthogonal to every x-member, so biorthogonality is intact
/// and `S_x^beta S_y^gamma = 1` holds as an exact matrix identity).
pub fn formal_frame(
    pair: &BiorthPair<CoeffVector>,
    alpha: &ScalarSequence,
    beta: &ScalarSequence,
    truncation: usize,
) -> Result<FormalFrame> {
    assert!(truncation >= 2);
    let dim = truncation + 1;
    let mut betas = Vec::with_capacity(dim);
    for p in 1..=dim {
        betas.push(positive_weight(beta.value(p), beta.label(), p)?);
    }
    let alphas: Vec<C64> = (1..=dim).map(|p| alpha.value(p)).collect();

    let col = |v: &CoeffVector| -> Vec<f64> { (1..=dim).map(|k| v.coeff(k).re).collect() };
    let x_cols: Vec<Vec<f64>> = (1..=dim)
        .map(|n| pair.x.member(n).map(|v| col(&v)))
        .collect::<Result<_>>()?;
    let y_cols: Vec<Vec<f64>> = (1..=dim)
        .map(|n| pair.y.member(n).map(|v| col(&v)))
        .collect::<Result<_>>()?;

    let rank1_sum = |cols: &[Vec<f64>], w: &dyn Fn(usize) -> f64| -> DMatrix<f64> {
        let mut m = DMatrix::<f64>::zeros(dim, dim);
        for (idx, c) in cols.iter().enumerate() {
            let wn = w(idx);
            for i in 0..dim {
                for j in 0..dim {
                    m[(i, j)] += wn * c[i] * c[j];
                }
            }
        }
        m
    };
    let s_x = rank1_sum(&x_cols, &|idx| betas[idx]);
    let s_y = rank1_sum(&y_cols, &|idx| 1.0 / betas[idx]);
    let r_x = psd_sqrt(&s_x)?;
    let r_y = psd_sqrt(&s_y)?;

    let matvec = |m: &DMatrix<f64>, v: &[f64]| -> Vec<f64> {
        (0..dim)
            .map(|i| (0..dim).map(|j| m[(i, j)] * v[j]).sum())
            .collect()
    };
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(p, q)| p * q).sum() };

    let e_hat: Vec<Vec<f64>> = (0..dim)
        .map(|idx| {
            let scaled = matvec(&r_x, &y_cols[idx]);
            let inv_sqrt_beta = 1.0 / betas[idx].sqrt();
            scaled.iter().map(|v| v * inv_sqrt_beta).collect()
        })
        .collect();
    let e_hat_alt: Vec<Vec<f64>> = (0..dim)
        .map(|idx| {
            let scaled = matvec(&r_y, &x_cols[idx]);
            let sqrt_beta = betas[idx].sqrt();
            scaled.iter().map(|v| v * sqrt_beta).collect()
        })
        .collect();

    // h ê_n = R_y ( sum_k alpha_k x_k (y_k . (R_x ê_n)) ), complex through
    // alpha; the square roots and family columns are real.
    let h_apply = |v: &[f64]| -> (Vec<f64>, Vec<f64>) {
        let w = matvec(&r_x, v);
        let mut hre = vec![0.0; dim];
        let mut him = vec![0.0; dim];
        for k in 0..dim {
            let overlap = dot(&y_cols[k], &w);
            let a = alphas[k] * overlap;
            for i in 0..dim {
                hre[i] += a.re * x_cols[k][i];
                him[i] += a.im * x_cols[k][i];
            }
        }
        (matvec(&r_y, &hre), matvec(&r_y, &him))
    };

    let probe = truncation - 1; // interior indices 1..=N-1
    let mut ortho = 0.0_f64;
    let mut eigen = 0.0_f64;
    let mut consistency = 0.0_f64;
    for m in 0..probe {
        for n in 0..probe {
            let delta = if m == n { 1.0 } else { 0.0 };
            ortho = ortho.max((dot(&e_hat[m], &e_hat[n]) - delta).abs());
        }
    }
    for n in 0..probe {
        let (hre, him) = h_apply(&e_hat[n]);
        let a = alphas[n];
        let mut res_sq = 0.0;
        for i in 0..dim {
            let dre = hre[i] - a.re * e_hat[n][i];
            let dim_ = him[i] - a.im * e_hat[n][i];
            res_sq += dre * dre + dim_ * dim_;
        }
        eigen = eigen.max(res_sq.sqrt());
        let diff_sq: f64 = e_hat[n]
            .iter()
            .zip(&e_hat_alt[n])
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        consistency = consistency.max(diff_sq.sqrt());
    }

    Ok(FormalFrame {
        truncation,
        e_hat: e_hat
            .into_iter()
            .map(|v| CoeffVector::from_reals(&v))
            .collect(),
        orthonormality_residual: ortho,
        eigen_residual: eigen,
        consistency_residual: consistency,
    })
}
