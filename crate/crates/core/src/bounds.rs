//! Continuity bounds, gentle measurement, and data-processing checks in a
//! form that can be evaluated on concrete states.
//!
//! Throughout, `ε` is the full trace norm `‖ρ − σ‖₁`. For `ε > 1` the binary
//! entropy term is evaluated at 1 and the linear term is kept as is.

use serde::Serialize;

use crate::channels::{LABEL_B, LABEL_E};
use crate::entropics::{channel_output_ensemble, verify_identities, CQEnsemble, LABEL_A};
use crate::error::{Error, Result};
use crate::qlinalg::{
    eigvals_hermitian, h2, matrix_sqrt_psd, spectrum_entropy, trace_norm, ComplexMatrix, DensityOperator,
    PureStateVector, EIGEN_CLAMP,
};
use crate::random::{
    random_density, random_distribution, random_effect, random_isometry, random_pure_state, seeded_rng, trial_seed,
    SweepRng,
};

pub const SATISFY_TOL: f64 = 1e-12;
/// Tolerance for the data-processing and subadditivity inequalities.
pub const DPI_TOL: f64 = 1e-9;
/// Label of the environment factor that is dephased by [`dpi_check`].
pub const LABEL_E_PRIME: &str = "E'";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    pub slack: f64,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self::with_tol(lhs, rhs, SATISFY_TOL)
    }

    fn with_tol(lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            lhs,
            rhs,
            satisfied: lhs <= rhs + tol,
            slack: rhs - lhs,
        }
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "epsilon",
            value: eps,
            range: "[0, inf)",
        })
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::DimMismatch("dimension 0".into()));
    }
    Ok(())
}

/// `ε·log₂d + H₂(min(ε, 1))`.
pub fn fannes_bound(eps: f64, dim_a: usize) -> Result<f64> {
    check_epsilon(eps)?;
    check_dim(dim_a)?;
    Ok(eps * (dim_a as f64).log2() + h2(eps.min(1.0)))
}

/// `4ε·log₂d + 2H₂(min(ε, 1))`.
pub fn alicki_fannes_bound(eps: f64, dim_a: usize) -> Result<f64> {
    check_epsilon(eps)?;
    check_dim(dim_a)?;
    Ok(4.0 * eps * (dim_a as f64).log2() + 2.0 * h2(eps.min(1.0)))
}

/// `5ε·log₂d + 3H₂(min(ε, 1))`.
pub fn mi_continuity_bound(eps: f64, dim_a: usize) -> Result<f64> {
    check_epsilon(eps)?;
    check_dim(dim_a)?;
    Ok(5.0 * eps * (dim_a as f64).log2() + 3.0 * h2(eps.min(1.0)))
}

fn same_shape(rho: &DensityOperator, sigma: &DensityOperator) -> Result<()> {
    if rho.dims() != sigma.dims() {
        return Err(Error::DimMismatch(format!(
            "states with dimensions {:?} and {:?}",
            rho.dims(),
            sigma.dims()
        )));
    }
    Ok(())
}

fn distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    trace_norm(&(rho.matrix() - sigma.matrix()))
}

/// Entropies `(H(A), H(B), H(AB))` of a two-factor state; factor 0 is A.
fn bipartite_entropies(rho: &DensityOperator) -> Result<(f64, f64, f64)> {
    let labels = rho.labels();
    if labels.len() != 2 {
        return Err(Error::DimMismatch(format!(
            "expected a bipartite state, got {} factors",
            labels.len()
        )));
    }
    let h_a = spectrum_entropy(rho.partial_trace(&[&labels[0]])?.matrix())?;
    let h_b = spectrum_entropy(rho.partial_trace(&[&labels[1]])?.matrix())?;
    let h_ab = spectrum_entropy(rho.matrix())?;
    Ok((h_a, h_b, h_ab))
}

/// Compares `|H(ρ) − H(σ)|` against [`fannes_bound`].
pub fn check_fannes(rho: &DensityOperator, sigma: &DensityOperator) -> Result<BoundReport> {
    same_shape(rho, sigma)?;
    let eps = distance(rho, sigma)?;
    let lhs = (spectrum_entropy(rho.matrix())? - spectrum_entropy(sigma.matrix())?).abs();
    Ok(BoundReport::new(lhs, fannes_bound(eps, rho.dim())?))
}

/// Compares `|I(A⟩B)_ρ − I(A⟩B)_σ|` against [`alicki_fannes_bound`] with `d = |A|`.
pub fn check_af(rho: &DensityOperator, sigma: &DensityOperator) -> Result<BoundReport> {
    same_shape(rho, sigma)?;
    let eps = distance(rho, sigma)?;
    let (_, rb, rab) = bipartite_entropies(rho)?;
    let (_, sb, sab) = bipartite_entropies(sigma)?;
    let lhs = ((rb - rab) - (sb - sab)).abs();
    Ok(BoundReport::new(lhs, alicki_fannes_bound(eps, rho.dims()[0])?))
}

/// Compares `|I(A;B)_ρ − I(A;B)_σ|` against [`mi_continuity_bound`] with `d = |A|`.
pub fn check_mi(rho: &DensityOperator, sigma: &DensityOperator) -> Result<BoundReport> {
    same_shape(rho, sigma)?;
    let eps = distance(rho, sigma)?;
    let (ra, rb, rab) = bipartite_entropies(rho)?;
    let (sa, sb, sab) = bipartite_entropies(sigma)?;
    let lhs = ((ra + rb - rab) - (sa + sb - sab)).abs();
    Ok(BoundReport::new(lhs, mi_continuity_bound(eps, rho.dims()[0])?))
}

fn validate_effect(x: &ComplexMatrix) -> Result<()> {
    if !x.is_square() {
        return Err(Error::NotValidPovmElement(format!("{}x{} matrix", x.rows(), x.cols())));
    }
    let values = eigvals_hermitian(x).map_err(|e| Error::NotValidPovmElement(e.to_string()))?;
    let max = values.first().copied().unwrap_or(0.0);
    let min = values.last().copied().unwrap_or(0.0);
    if min < -EIGEN_CLAMP || max > 1.0 + EIGEN_CLAMP {
        return Err(Error::NotValidPovmElement(format!(
            "eigenvalues span [{min}, {max}], outside [0, 1]"
        )));
    }
    Ok(())
}

/// `Σ p_x‖ρ_x − √X ρ_x √X‖₁` against `√(8ε)` where `Tr{ρ̄X} = 1 − ε`.
pub fn gentle_measurement_check(ens: &[(f64, ComplexMatrix)], x: &ComplexMatrix) -> Result<BoundReport> {
    validate_effect(x)?;
    if ens.is_empty() {
        return Err(Error::EmptyInput("ensemble"));
    }
    let sqrt_x = matrix_sqrt_psd(x)?;
    let mut lhs = 0.0;
    let mut avg_overlap = 0.0;
    for (p, rho) in ens {
        if rho.rows() != x.rows() || !rho.is_square() {
            return Err(Error::DimMismatch(format!(
                "state of size {}x{} for a {}-dimensional effect",
                rho.rows(),
                rho.cols(),
                x.rows()
            )));
        }
        let disturbed = &(&sqrt_x * rho) * &sqrt_x;
        lhs += p * trace_norm(&(rho - &disturbed).hermitize())?;
        avg_overlap += p * (rho * x).trace().re;
    }
    let eps = (1.0 - avg_overlap).clamp(0.0, 1.0);
    Ok(BoundReport::new(lhs, (8.0 * eps).sqrt()))
}

/// `(I(X;B), I(AX;B), I(A⟩BX))` for an ensemble of pure states that carry `A` and `B` factors.
fn cq_quantities(blocks: &[(f64, PureStateVector)]) -> Result<[f64; 3]> {
    let mut avg_b: Option<ComplexMatrix> = None;
    let (mut h_b, mut h_ab, mut h_a) = (0.0, 0.0, 0.0);
    for (p, psi) in blocks {
        let rb = psi.reduced(&[LABEL_B])?;
        h_b += p * spectrum_entropy(rb.matrix())?;
        h_a += p * spectrum_entropy(psi.reduced(&[LABEL_A])?.matrix())?;
        h_ab += p * spectrum_entropy(psi.reduced(&[LABEL_A, LABEL_B])?.matrix())?;
        let term = rb.matrix().scale(*p);
        avg_b = Some(match avg_b {
            Some(acc) => &acc + &term,
            None => term,
        });
    }
    let avg_b = avg_b.ok_or(Error::EmptyInput("ensemble"))?;
    let i_xb = spectrum_entropy(&avg_b.hermitize())? - h_b;
    let i_ab_x = h_a + h_b - h_ab;
    Ok([i_xb, i_xb + i_ab_x, h_b - h_ab])
}

/// The three data-processing comparisons made by [`dpi_check`]; `lhs` is before
/// dephasing `E'`, `rhs` after.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DpiReport {
    pub holevo: BoundReport,
    pub mutual_ax_b: BoundReport,
    pub coherent: BoundReport,
}

impl DpiReport {
    pub fn satisfied(&self) -> bool {
        self.holevo.satisfied && self.mutual_ax_b.satisfied && self.coherent.satisfied
    }

    pub fn worst_slack(&self) -> f64 {
        self.holevo.slack.min(self.mutual_ax_b.slack).min(self.coherent.slack)
    }
}

/// Dephases the `E'` factor of each encoder block into a classical register `Y`
/// and checks that `I(X;B)`, `I(AX;B)` and `I(A⟩BX)` do not decrease when `Y`
/// is adjoined to `X`.
///
/// Blocks are pure states with factors `A`, `B` and `E'`; any further factors
/// (for example `E`) are treated as part of the environment.
pub fn dpi_check(blocks: &[(f64, PureStateVector)]) -> Result<DpiReport> {
    let first = &blocks.first().ok_or(Error::EmptyInput("ensemble"))?.1;
    let dim_y = match first.subsystems().dim_of(LABEL_E_PRIME) {
        Ok(d) => d,
        Err(Error::UnknownLabel(_)) => return Err(Error::NoEnvironmentSplit),
        Err(e) => return Err(e),
    };
    let before = cq_quantities(blocks)?;
    let mut refined = Vec::with_capacity(blocks.len() * dim_y);
    for (p, psi) in blocks {
        if psi.dims() != first.dims() || psi.labels() != first.labels() {
            return Err(Error::DimMismatch("encoder blocks differ in shape".into()));
        }
        for y in 0..dim_y {
            if let (w, Some(cond)) = psi.project_out(LABEL_E_PRIME, y)? {
                refined.push((p * w, cond));
            }
        }
    }
    let after = cq_quantities(&refined)?;
    let r = |i: usize| BoundReport::with_tol(before[i], after[i], DPI_TOL);
    Ok(DpiReport {
        holevo: r(0),
        mutual_ax_b: r(1),
        coherent: r(2),
    })
}

/// `I(A;B) <= I(A;BC)` for a state with factors labelled `A`, `B`, `C`.
pub fn ssa_check(rho: &DensityOperator) -> Result<BoundReport> {
    let ent = |keep: &[&str]| -> Result<f64> { spectrum_entropy(rho.partial_trace(keep)?.matrix()) };
    let h_a = ent(&["A"])?;
    let i_ab = h_a + ent(&["B"])? - ent(&["A", "B"])?;
    let i_abc = h_a + ent(&["B", "C"])? - spectrum_entropy(rho.partial_trace(&["A", "B", "C"])?.matrix())?;
    Ok(BoundReport::with_tol(i_ab, i_abc, DPI_TOL))
}

/// Outcome of a seeded random sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub suite: &'static str,
    pub trials: usize,
    pub violations: usize,
    /// Smallest `rhs − lhs` seen (for identity sweeps, the negated largest residual).
    pub worst_slack: f64,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Bound families exposed by [`run_sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Fannes,
    AlickiFannes,
    MutualInfo,
    Gentle,
    Dpi,
    Ssa,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Identities,
        Suite::Fannes,
        Suite::AlickiFannes,
        Suite::MutualInfo,
        Suite::Gentle,
        Suite::Dpi,
        Suite::Ssa,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Fannes => "fannes",
            Suite::AlickiFannes => "af",
            Suite::MutualInfo => "mi",
            Suite::Gentle => "gentle",
            Suite::Dpi => "dpi",
            Suite::Ssa => "ssa",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{name}`")))
    }
}

/// Tolerance for identity residuals in the `identities` sweep.
pub const IDENTITY_TOL: f64 = 1e-9;

fn trial(suite: Suite, rng: &mut SweepRng, index: usize) -> Result<(bool, f64)> {
    // alternate qubit and qutrit trials
    let d = if index.is_multiple_of(2) { 2 } else { 3 };
    let report = match suite {
        Suite::Identities => {
            let ens = CQEnsemble::random(rng, 3, 2, 2);
            let v = random_isometry(rng, 2, 2, d);
            let r = verify_identities(&channel_output_ensemble(&ens, &v)?)?;
            return Ok((r.max_residual <= IDENTITY_TOL, -r.max_residual));
        }
        Suite::Fannes => {
            let rho = random_density(rng, &[d], &["A"]);
            let sigma = random_density(rng, &[d], &["A"]);
            check_fannes(&rho, &sigma)?
        }
        Suite::AlickiFannes => {
            let rho = random_density(rng, &[2, 2], &["A", "B"]);
            let sigma = random_density(rng, &[2, 2], &["A", "B"]);
            check_af(&rho, &sigma)?
        }
        Suite::MutualInfo => {
            let rho = random_density(rng, &[2, 2], &["A", "B"]);
            let sigma = random_density(rng, &[2, 2], &["A", "B"]);
            check_mi(&rho, &sigma)?
        }
        Suite::Gentle => {
            let probs = random_distribution(rng, 3);
            let ens: Vec<(f64, ComplexMatrix)> = probs
                .into_iter()
                .map(|p| (p, random_density(rng, &[d], &["S"]).matrix().clone()))
                .collect();
            gentle_measurement_check(&ens, &random_effect(rng, d))?
        }
        Suite::Dpi => {
            let probs = random_distribution(rng, 2);
            let blocks: Vec<(f64, PureStateVector)> = probs
                .into_iter()
                .map(|p| {
                    (
                        p,
                        random_pure_state(rng, &[2, 2, 2, d], &[LABEL_A, LABEL_B, LABEL_E_PRIME, LABEL_E]),
                    )
                })
                .collect();
            let r = dpi_check(&blocks)?;
            return Ok((r.satisfied(), r.worst_slack()));
        }
        Suite::Ssa => ssa_check(&random_density(rng, &[2, 2, d], &["A", "B", "C"]))?,
    };
    Ok((report.satisfied, report.slack))
}

/// Runs `trials` independent trials of `suite`; trial `i` uses seed `trial_seed(master, i)`.
pub fn run_sweep(suite: Suite, trials: usize, master_seed: u64) -> Result<SweepSummary> {
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for i in 0..trials {
        let mut rng = seeded_rng(trial_seed(master_seed, i as u64));
        let (ok, slack) = trial(suite, &mut rng, i)?;
        if !ok {
            violations += 1;
        }
        worst = worst.min(slack);
    }
    Ok(SweepSummary {
        suite: suite.name(),
        trials,
        violations,
        worst_slack: worst,
    })
}
