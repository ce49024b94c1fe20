//! Classical-quantum ensembles, the one-shot state σ^{XABE}, and the
//! conditional entropic quantities that define the capacity region.
//!
//! σ^{XABE} is kept block diagonal: one pure state ψ_x on A⊗B⊗E per classical
//! letter x. Every quantity is assembled from block entropies, e.g.
//! `H(XB) = H(p) + Σ_x p(x) H(B)_x`, and `H(AB)_x = H(E)_x` by purity.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{IsometricExtension, LABEL_B, LABEL_E};
use crate::error::{Error, Result};
use crate::qlinalg::{shannon_entropy, spectrum_entropy, ComplexMatrix, PureStateVector};
use crate::random::random_amplitudes;

pub const LABEL_A: &str = "A";
pub const LABEL_A_PRIME: &str = "A'";

/// Tolerance on the normalization of p(x).
pub const PROB_TOL: f64 = 1e-12;

fn check_distribution(probs: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    for p in probs {
        if p.is_nan() || p < 0.0 {
            return Err(Error::InvalidState(format!("probability {p} is negative")));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::InvalidState(format!("probabilities sum to {sum}")));
    }
    Ok(())
}

/// Ensemble {p(x), φ_x^{AA'}} of pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct CQEnsemble {
    entries: Vec<(f64, PureStateVector)>,
    dim_a: usize,
    dim_aprime: usize,
}

impl CQEnsemble {
    /// Validates the distribution and shapes, relabels each state to `A, A'`,
    /// and drops zero-probability letters.
    pub fn new(entries: Vec<(f64, PureStateVector)>) -> Result<Self> {
        check_distribution(entries.iter().map(|(p, _)| *p))?;
        let (dim_a, dim_aprime) = match entries.first() {
            Some((_, psi)) if psi.dims().len() == 2 => (psi.dims()[0], psi.dims()[1]),
            Some(_) => return Err(Error::DimMismatch("ensemble states must have two factors".into())),
            None => return Err(Error::EmptyInput("ensemble")),
        };
        let mut kept = Vec::with_capacity(entries.len());
        for (p, psi) in entries {
            if psi.dims() != [dim_a, dim_aprime] {
                return Err(Error::DimMismatch(format!(
                    "ensemble member of dims {:?}, expected [{dim_a}, {dim_aprime}]",
                    psi.dims()
                )));
            }
            if p == 0.0 {
                continue;
            }
            let relabelled = PureStateVector::new(
                psi.amplitudes().to_vec(),
                &[dim_a, dim_aprime],
                &[LABEL_A, LABEL_A_PRIME],
            )?;
            kept.push((p, relabelled));
        }
        Ok(Self {
            entries: kept,
            dim_a,
            dim_aprime,
        })
    }

    /// The two-letter ensemble with p(0) = p(1) = ½ and
    /// |ψ₀⟩ = √μ|00⟩ + √(1-μ)|11⟩, |ψ₁⟩ = √(1-μ)|00⟩ + √μ|11⟩ on `A A'`.
    pub fn mu_ensemble(mu: f64) -> Result<Self> {
        crate::error::check_probability("mu", mu)?;
        let state = |a: f64, b: f64| {
            let z = Complex64::new(0.0, 0.0);
            PureStateVector::new(
                vec![Complex64::new(a.sqrt(), 0.0), z, z, Complex64::new(b.sqrt(), 0.0)],
                &[2, 2],
                &[LABEL_A, LABEL_A_PRIME],
            )
        };
        Self::new(vec![(0.5, state(mu, 1.0 - mu)?), (0.5, state(1.0 - mu, mu)?)])
    }

    /// Single letter holding a maximally entangled state of dimension `d`.
    pub fn maximally_entangled(d: usize) -> Self {
        let phi = PureStateVector::maximally_entangled(d, LABEL_A, LABEL_A_PRIME);
        Self::new(vec![(1.0, phi)]).expect("valid ensemble")
    }

    /// Random ensemble with `letters` entries and Gaussian pure states.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, letters: usize, dim_a: usize, dim_aprime: usize) -> Self {
        let probs = crate::random::random_distribution(rng, letters);
        let entries = probs
            .into_iter()
            .map(|p| {
                let psi = PureStateVector::new(
                    random_amplitudes(rng, dim_a * dim_aprime),
                    &[dim_a, dim_aprime],
                    &[LABEL_A, LABEL_A_PRIME],
                )
                .expect("normalized");
                (p, psi)
            })
            .collect();
        Self::new(entries).expect("valid random ensemble")
    }

    pub fn entries(&self) -> &[(f64, PureStateVector)] {
        &self.entries
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_aprime(&self) -> usize {
        self.dim_aprime
    }

    /// Sufficient alphabet size `min(|A'|, |B|)² + 1`.
    pub fn cardinality_hint(&self, out_dim: usize) -> usize {
        let m = self.dim_aprime.min(out_dim);
        m * m + 1
    }

    pub fn exceeds_cardinality_hint(&self, out_dim: usize) -> bool {
        self.entries.len() > self.cardinality_hint(out_dim)
    }

    /// k-fold product ensemble on `A^k A'^k`, letters indexed lexicographically.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange {
                name: "k",
                value: 0.0,
                range: "k >= 1",
            });
        }
        let mut acc: Vec<(f64, Vec<Complex64>)> = self
            .entries
            .iter()
            .map(|(p, psi)| (*p, psi.amplitudes().to_vec()))
            .collect();
        let (mut da, mut dp) = (self.dim_a, self.dim_aprime);
        for _ in 1..k {
            let mut next = Vec::with_capacity(acc.len() * self.entries.len());
            for (p, left) in &acc {
                for (q, psi) in &self.entries {
                    let right = psi.amplitudes();
                    let (na, np) = (da * self.dim_a, dp * self.dim_aprime);
                    let mut amps = vec![Complex64::new(0.0, 0.0); na * np];
                    for a1 in 0..da {
                        for p1 in 0..dp {
                            let l = left[a1 * dp + p1];
                            for a2 in 0..self.dim_a {
                                for p2 in 0..self.dim_aprime {
                                    let r = right[a2 * self.dim_aprime + p2];
                                    let ai = a1 * self.dim_a + a2;
                                    let pi = p1 * self.dim_aprime + p2;
                                    amps[ai * np + pi] = l * r;
                                }
                            }
                        }
                    }
                    next.push((p * q, amps));
                }
            }
            acc = next;
            da *= self.dim_a;
            dp *= self.dim_aprime;
        }
        let total: f64 = acc.iter().map(|(p, _)| p).sum();
        let entries = acc
            .into_iter()
            .map(|(p, amps)| {
                PureStateVector::normalized(amps, &[da, dp], &[LABEL_A, LABEL_A_PRIME]).map(|s| (p / total, s))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// Block-diagonal one-shot state σ^{XABE} = Σ_x p(x)|x⟩⟨x| ⊗ ψ_x^{ABE}.
#[derive(Debug, Clone, PartialEq)]
pub struct CQEJointState {
    blocks: Vec<(f64, PureStateVector)>,
    dim_a: usize,
    dim_b: usize,
    dim_e: usize,
}

impl CQEJointState {
    /// Blocks must be pure states labelled `A, B, E` with common dimensions.
    pub fn new(blocks: Vec<(f64, PureStateVector)>) -> Result<Self> {
        check_distribution(blocks.iter().map(|(p, _)| *p))?;
        let first = &blocks.first().ok_or(Error::EmptyInput("joint state"))?.1;
        let labels = [LABEL_A, LABEL_B, LABEL_E];
        let dims = [
            first.subsystems().dim_of(LABEL_A)?,
            first.subsystems().dim_of(LABEL_B)?,
            first.subsystems().dim_of(LABEL_E)?,
        ];
        let mut kept = Vec::with_capacity(blocks.len());
        for (p, psi) in blocks {
            if psi.labels() != labels || psi.dims() != dims {
                return Err(Error::DimMismatch(format!(
                    "block with labels {:?} dims {:?}, expected {labels:?} {dims:?}",
                    psi.labels(),
                    psi.dims()
                )));
            }
            if (psi.norm_sqr() - 1.0).abs() > crate::qlinalg::TRACE_TOL {
                return Err(Error::InvalidState("block is not normalized".into()));
            }
            if p > 0.0 {
                kept.push((p, psi));
            }
        }
        Ok(Self {
            blocks: kept,
            dim_a: dims[0],
            dim_b: dims[1],
            dim_e: dims[2],
        })
    }

    pub fn blocks(&self) -> &[(f64, PureStateVector)] {
        &self.blocks
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.blocks.iter().map(|(p, _)| *p).collect()
    }

    /// Average Bob state Σ_x p(x) ρ_x^B.
    pub fn average_b(&self) -> Result<ComplexMatrix> {
        let mut avg = ComplexMatrix::zeros(self.dim_b, self.dim_b);
        for (p, psi) in &self.blocks {
            avg = &avg + &psi.reduced(&[LABEL_B])?.matrix().scale(*p);
        }
        Ok(avg.hermitize())
    }

    fn block_entropies(&self) -> Result<Vec<BlockEntropies>> {
        self.blocks
            .iter()
            .map(|(p, psi)| {
                Ok(BlockEntropies {
                    p: *p,
                    a: spectrum_entropy(psi.reduced(&[LABEL_A])?.matrix())?,
                    b: spectrum_entropy(psi.reduced(&[LABEL_B])?.matrix())?,
                    e: spectrum_entropy(psi.reduced(&[LABEL_E])?.matrix())?,
                })
            })
            .collect()
    }
}

struct BlockEntropies {
    p: f64,
    a: f64,
    b: f64,
    e: f64,
}

fn weighted(blocks: &[BlockEntropies], f: impl Fn(&BlockEntropies) -> f64) -> f64 {
    blocks.iter().map(|b| b.p * f(b)).sum()
}

/// Runs every block of `ens` through the isometry, yielding σ^{XABE}.
pub fn channel_output_ensemble(ens: &CQEnsemble, v: &IsometricExtension) -> Result<CQEJointState> {
    if ens.dim_aprime() != v.in_dim() {
        return Err(Error::DimMismatch(format!(
            "ensemble A' has dimension {}, channel input {}",
            ens.dim_aprime(),
            v.in_dim()
        )));
    }
    let blocks = ens
        .entries()
        .iter()
        .map(|(p, phi)| v.apply(phi, LABEL_A_PRIME).map(|psi| (*p, psi)))
        .collect::<Result<Vec<_>>>()?;
    CQEJointState::new(blocks)
}

/// All entropic constants of σ^{XABE}, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Entropics {
    /// H(A|X)
    pub h_a_given_x: f64,
    /// I(X;B)
    pub i_x_b: f64,
    /// I(A;B|X)
    pub i_a_b_given_x: f64,
    /// I(A;E|X)
    pub i_a_e_given_x: f64,
    /// I(A⟩BX)
    pub i_coh: f64,
    /// I(AX;B), chain-rule route I(A;B|X) + I(X;B)
    pub i_ax_b: f64,
}

impl Entropics {
    pub fn of(sigma: &CQEJointState) -> Result<Self> {
        let blocks = sigma.block_entropies()?;
        let h_b_bar = spectrum_entropy(&sigma.average_b()?)?;
        let h_a_given_x = weighted(&blocks, |b| b.a);
        let i_x_b = h_b_bar - weighted(&blocks, |b| b.b);
        let i_a_b_given_x = weighted(&blocks, |b| b.a + b.b - b.e);
        let i_a_e_given_x = weighted(&blocks, |b| b.a + b.e - b.b);
        let i_coh = weighted(&blocks, |b| b.b - b.e);
        Ok(Self {
            h_a_given_x,
            i_x_b,
            i_a_b_given_x,
            i_a_e_given_x,
            i_coh,
            i_ax_b: i_a_b_given_x + i_x_b,
        })
    }
}

pub fn cond_entropy_a_given_x(sigma: &CQEJointState) -> Result<f64> {
    Ok(weighted(&sigma.block_entropies()?, |b| b.a))
}

/// Holevo information I(X;B) = H(B̄) − Σ p(x) H(ρ_x^B).
pub fn holevo_x_b(sigma: &CQEJointState) -> Result<f64> {
    let blocks = sigma.block_entropies()?;
    Ok(spectrum_entropy(&sigma.average_b()?)? - weighted(&blocks, |b| b.b))
}

pub fn cond_mutual_a_b_given_x(sigma: &CQEJointState) -> Result<f64> {
    Ok(weighted(&sigma.block_entropies()?, |b| b.a + b.b - b.e))
}

pub fn cond_mutual_a_e_given_x(sigma: &CQEJointState) -> Result<f64> {
    Ok(weighted(&sigma.block_entropies()?, |b| b.a + b.e - b.b))
}

/// I(A⟩BX) = Σ p(x) (H(B)_x − H(AB)_x).
pub fn coherent_a_given_bx(sigma: &CQEJointState) -> Result<f64> {
    Ok(weighted(&sigma.block_entropies()?, |b| b.b - b.e))
}

/// I(AX;B) from the entropies of the classical-quantum state itself:
/// H(B) + H(AX) − H(AXB), with H(AB)_x taken from the AB marginal.
pub fn mutual_ax_b(sigma: &CQEJointState) -> Result<f64> {
    let h_p = shannon_entropy(&sigma.probabilities());
    let mut h_ax = h_p;
    let mut h_axb = h_p;
    for (p, psi) in sigma.blocks() {
        h_ax += p * spectrum_entropy(psi.reduced(&[LABEL_A])?.matrix())?;
        h_axb += p * spectrum_entropy(psi.reduced(&[LABEL_A, LABEL_B])?.matrix())?;
    }
    Ok(spectrum_entropy(&sigma.average_b()?)? + h_ax - h_axb)
}

/// Residuals of the standard identities relating the conditional quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    /// H(A|X) = ½I(A;B|X) + ½I(A;E|X)
    pub entropy_identity: f64,
    /// I(A⟩BX) = ½I(A;B|X) − ½I(A;E|X)
    pub coherent_identity: f64,
    /// H(A|X) + I(A⟩BX) = I(A;B|X)
    pub entropy_coherent_mutual: f64,
    /// I(AX;B) = I(A;B|X) + I(X;B), direct route vs chain rule
    pub chain_rule: f64,
    pub max_residual: f64,
}

pub fn verify_identities(sigma: &CQEJointState) -> Result<IdentityReport> {
    let q = Entropics::of(sigma)?;
    let entropy_identity = (q.h_a_given_x - 0.5 * q.i_a_b_given_x - 0.5 * q.i_a_e_given_x).abs();
    let coherent_identity = (q.i_coh - 0.5 * q.i_a_b_given_x + 0.5 * q.i_a_e_given_x).abs();
    let entropy_coherent_mutual = (q.h_a_given_x + q.i_coh - q.i_a_b_given_x).abs();
    let chain_rule = (mutual_ax_b(sigma)? - q.i_a_b_given_x - q.i_x_b).abs();
    let max_residual = entropy_identity
        .max(coherent_identity)
        .max(entropy_coherent_mutual)
        .max(chain_rule);
    Ok(IdentityReport {
        entropy_identity,
        coherent_identity,
        entropy_coherent_mutual,
        chain_rule,
        max_residual,
    })
}

/// Ensemble spec file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub entries: Vec<EnsembleEntrySpec>,
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    #[serde(rename = "dim_Aprime")]
    pub dim_aprime: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleEntrySpec {
    pub p: f64,
    /// Amplitudes on A⊗A' in row-major order (`a * dim_Aprime + a'`).
    pub amps: Vec<[f64; 2]>,
}

impl EnsembleSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<CQEnsemble> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let amps = e.amps.iter().map(|&[a, b]| Complex64::new(a, b)).collect();
                PureStateVector::new(amps, &[self.dim_a, self.dim_aprime], &[LABEL_A, LABEL_A_PRIME])
                    .map(|psi| (e.p, psi))
            })
            .collect::<Result<Vec<_>>>()?;
        CQEnsemble::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{dephasing, erasure_isometry, identity_channel, Channel};
    use crate::qlinalg::binary_entropy;
    use crate::random::seeded_rng;

    fn h2(x: f64) -> f64 {
        binary_entropy(x).unwrap()
    }

    #[test]
    fn single_letter_identity_channel() {
        let ens = CQEnsemble::maximally_entangled(2);
        let sigma = channel_output_ensemble(&ens, &identity_channel(2).isometric_extension()).unwrap();
        assert_eq!(sigma.blocks().len(), 1);
        let q = Entropics::of(&sigma).unwrap();
        assert!((q.i_coh - 1.0).abs() < 1e-12);
        assert!(q.i_x_b.abs() < 1e-12);
        assert!((q.i_ax_b - 2.0).abs() < 1e-12);
        assert!((q.h_a_given_x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_blocks_give_zero() {
        let psi = PureStateVector::basis(0, &[2, 2], &[LABEL_A, LABEL_A_PRIME]).unwrap();
        let ens = CQEnsemble::new(vec![(1.0, psi)]).unwrap();
        let sigma = channel_output_ensemble(&ens, &dephasing(0.3).unwrap().isometric_extension()).unwrap();
        assert!(cond_entropy_a_given_x(&sigma).unwrap().abs() < 1e-12);
        assert!(cond_mutual_a_b_given_x(&sigma).unwrap().abs() < 1e-12);
        assert!(holevo_x_b(&sigma).unwrap().abs() < 1e-12);
        assert!(mutual_ax_b(&sigma).unwrap().abs() < 1e-12);
        assert!(verify_identities(&sigma).unwrap().max_residual < 1e-12);
    }

    #[test]
    fn uniform_two_block_with_maximal_entanglement() {
        let phi = PureStateVector::maximally_entangled(2, LABEL_A, LABEL_A_PRIME);
        let ens = CQEnsemble::new(vec![(0.5, phi.clone()), (0.5, phi)]).unwrap();
        let sigma = channel_output_ensemble(&ens, &identity_channel(2).isometric_extension()).unwrap();
        assert!((cond_entropy_a_given_x(&sigma).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn erasure_mu_ensemble_matches_closed_forms() {
        let (eps, mu) = (0.25, 0.3);
        let ens = CQEnsemble::mu_ensemble(mu).unwrap();
        let sigma = channel_output_ensemble(&ens, &erasure_isometry(eps, 2).unwrap()).unwrap();
        let q = Entropics::of(&sigma).unwrap();
        assert!((q.h_a_given_x - h2(mu)).abs() < 1e-12);
        assert!((q.i_x_b - (1.0 - eps) * (1.0 - h2(mu))).abs() < 1e-12);
        assert!((0.5 * q.i_a_b_given_x - (1.0 - eps) * h2(mu)).abs() < 1e-12);
        assert!((0.5 * q.i_a_e_given_x - eps * h2(mu)).abs() < 1e-12);
        assert!((q.i_coh - (1.0 - 2.0 * eps) * h2(mu)).abs() < 1e-12);
        assert!((mutual_ax_b(&sigma).unwrap() - (1.0 + h2(mu)) * (1.0 - eps)).abs() < 1e-12);
        assert!(verify_identities(&sigma).unwrap().max_residual < 1e-9);
    }

    #[test]
    fn dephasing_half_mu_values() {
        let ens = CQEnsemble::mu_ensemble(0.5).unwrap();
        let sigma = channel_output_ensemble(&ens, &dephasing(0.2).unwrap().isometric_extension()).unwrap();
        assert!(holevo_x_b(&sigma).unwrap().abs() < 1e-12);
        let expect = 2.0 - h2(0.9);
        assert!((mutual_ax_b(&sigma).unwrap() - expect).abs() < 1e-12);
        assert!((mutual_ax_b(&sigma).unwrap() - 1.531_004_406_410_719).abs() < 1e-9);
    }

    #[test]
    fn depolarizing_kills_information() {
        let ens = CQEnsemble::maximally_entangled(2);
        let sigma = channel_output_ensemble(&ens, &Channel::depolarizing(2).unwrap().isometry).unwrap();
        assert!((coherent_a_given_bx(&sigma).unwrap() + 1.0).abs() < 1e-12);
        assert!(mutual_ax_b(&sigma).unwrap().abs() < 1e-12);
    }

    #[test]
    fn zero_probability_letters_are_pruned() {
        let phi = PureStateVector::maximally_entangled(2, LABEL_A, LABEL_A_PRIME);
        let ens = CQEnsemble::new(vec![(1.0, phi.clone()), (0.0, phi)]).unwrap();
        assert_eq!(ens.entries().len(), 1);
        assert_eq!(CQEnsemble::mu_ensemble(0.0).unwrap().entries().len(), 2);
    }

    #[test]
    fn rejects_bad_ensembles() {
        let phi = PureStateVector::maximally_entangled(2, LABEL_A, LABEL_A_PRIME);
        assert!(CQEnsemble::new(vec![(0.7, phi.clone())]).is_err());
        assert!(CQEnsemble::new(vec![(1.5, phi.clone()), (-0.5, phi)]).is_err());
        assert!(CQEnsemble::new(vec![]).is_err());
        let ens = CQEnsemble::maximally_entangled(3);
        let v = dephasing(0.1).unwrap().isometric_extension();
        assert!(matches!(channel_output_ensemble(&ens, &v), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn block_duplication_leaves_quantities_unchanged() {
        let mut rng = seeded_rng(77);
        let v = dephasing(0.35).unwrap().isometric_extension();
        for _ in 0..20 {
            let ens = CQEnsemble::random(&mut rng, 3, 2, 2);
            let mut split = Vec::new();
            for (i, (p, psi)) in ens.entries().iter().enumerate() {
                if i == 0 {
                    split.push((p * 0.3, psi.clone()));
                    split.push((p * 0.7, psi.clone()));
                } else {
                    split.push((*p, psi.clone()));
                }
            }
            let dup = CQEnsemble::new(split).unwrap();
            let a = Entropics::of(&channel_output_ensemble(&ens, &v).unwrap()).unwrap();
            let b = Entropics::of(&channel_output_ensemble(&dup, &v).unwrap()).unwrap();
            for (x, y) in [
                (a.h_a_given_x, b.h_a_given_x),
                (a.i_x_b, b.i_x_b),
                (a.i_a_b_given_x, b.i_a_b_given_x),
                (a.i_a_e_given_x, b.i_a_e_given_x),
                (a.i_coh, b.i_coh),
                (a.i_ax_b, b.i_ax_b),
            ] {
                assert!((x - y).abs() < 1e-12, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn cardinality_hint() {
        let ens = CQEnsemble::mu_ensemble(0.2).unwrap();
        assert_eq!(ens.cardinality_hint(2), 5);
        assert!(!ens.exceeds_cardinality_hint(2));
        let mut rng = seeded_rng(1);
        assert!(CQEnsemble::random(&mut rng, 6, 2, 2).exceeds_cardinality_hint(2));
    }

    #[test]
    fn tensor_power_of_ensemble() {
        let ens = CQEnsemble::mu_ensemble(0.3).unwrap();
        let sq = ens.tensor_power(2).unwrap();
        assert_eq!(sq.entries().len(), 4);
        assert_eq!((sq.dim_a(), sq.dim_aprime()), (4, 4));
        assert!(sq.entries().iter().all(|(p, _)| (p - 0.25).abs() < 1e-15));
    }

    #[test]
    fn ensemble_spec_file() {
        let text = r#"{"entries":[{"p":0.5,"amps":[[1,0],[0,0],[0,0],[0,0]]},
                                  {"p":0.5,"amps":[[0,0],[0,0],[0,0],[1,0]]}],
                       "dim_A":2,"dim_Aprime":2}"#;
        let ens = EnsembleSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(ens.entries().len(), 2);
        let bad = r#"{"entries":[{"p":1.0,"amps":[[1,0],[1,0],[0,0],[0,0]]}],"dim_A":2,"dim_Aprime":2}"#;
        assert!(EnsembleSpec::from_json(bad).unwrap().build().is_err());
        assert!(EnsembleSpec::from_json("{}").is_err());
    }
}
