//! Channel models: Kraus sets, isometric extensions `A' -> BE`, and the
//! built-in dephasing, erasure and completely depolarizing channels.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_probability, Error, Result};
use crate::qlinalg::{ComplexMatrix, DensityOperator, PureStateVector};

/// Tolerance for trace preservation and isometry checks.
pub const TP_TOL: f64 = 1e-9;

pub const LABEL_B: &str = "B";
pub const LABEL_E: &str = "E";

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Result of checking `Σ K†K = I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TpReport {
    pub max_deviation: f64,
    pub passed: bool,
}

/// CPTP map `ρ -> Σ_k K_k ρ K_k†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Builds a channel and rejects Kraus sets that are not trace preserving.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let ch = Self::new_unchecked(kraus)?;
        let report = ch.validate_tp();
        if !report.passed {
            return Err(Error::NotTracePreserving(report.max_deviation));
        }
        Ok(ch)
    }

    /// Shape checks only; use [`KrausChannel::validate_tp`] to inspect the result.
    pub fn new_unchecked(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyInput("Kraus set"))?;
        let (out_dim, in_dim) = (first.rows(), first.cols());
        if let Some(k) = kraus.iter().find(|k| k.rows() != out_dim || k.cols() != in_dim) {
            return Err(Error::DimMismatch(format!(
                "Kraus operators of shape {}x{} and {}x{}",
                out_dim,
                in_dim,
                k.rows(),
                k.cols()
            )));
        }
        Ok(Self { in_dim, out_dim, kraus })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn validate_tp(&self) -> TpReport {
        let mut sum = ComplexMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            sum = &sum + &(&k.adjoint() * k);
        }
        let max_deviation = sum.max_abs_diff(&ComplexMatrix::identity(self.in_dim));
        TpReport {
            max_deviation,
            passed: max_deviation <= TP_TOL,
        }
    }

    /// Channel output, labelled `B`.
    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimMismatch(format!(
                "input of dimension {} for a channel on dimension {}",
                rho.dim(),
                self.in_dim
            )));
        }
        let mut out = ComplexMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out = &out + &(&(k * rho.matrix()) * &k.adjoint());
        }
        DensityOperator::new(out.hermitize(), &[self.out_dim], &[LABEL_B])
    }

    /// `V|ψ⟩ = Σ_k K_k|ψ⟩ ⊗ |k⟩_E`; the environment basis follows Kraus order.
    pub fn isometric_extension(&self) -> IsometricExtension {
        let env_dim = self.kraus.len();
        let matrix = ComplexMatrix::from_fn(self.out_dim * env_dim, self.in_dim, |row, col| {
            self.kraus[row % env_dim][(row / env_dim, col)]
        });
        IsometricExtension {
            matrix,
            in_dim: self.in_dim,
            out_dim: self.out_dim,
            env_dim,
        }
    }

    /// `N^{⊗k}` as an explicit Kraus set of size `|K|^k`.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange {
                name: "k",
                value: 0.0,
                range: "k >= 1",
            });
        }
        let mut ops = self.kraus.clone();
        for _ in 1..k {
            ops = ops
                .iter()
                .flat_map(|a| self.kraus.iter().map(move |b| a.kron(b)))
                .collect();
        }
        Self::new_unchecked(ops)
    }
}

/// Free-function form of [`KrausChannel::validate_tp`].
pub fn validate_tp(ch: &KrausChannel) -> TpReport {
    ch.validate_tp()
}

/// Isometry `A' -> B ⊗ E`; rows are indexed `b * env_dim + e`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometricExtension {
    matrix: ComplexMatrix,
    in_dim: usize,
    out_dim: usize,
    env_dim: usize,
}

impl IsometricExtension {
    pub fn new(matrix: ComplexMatrix, out_dim: usize, env_dim: usize) -> Result<Self> {
        if matrix.rows() != out_dim * env_dim {
            return Err(Error::DimMismatch(format!(
                "{} rows for output {out_dim} x environment {env_dim}",
                matrix.rows()
            )));
        }
        let in_dim = matrix.cols();
        let dev = (&matrix.adjoint() * &matrix).max_abs_diff(&ComplexMatrix::identity(in_dim));
        if dev > TP_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self {
            matrix,
            in_dim,
            out_dim,
            env_dim,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn env_dim(&self) -> usize {
        self.env_dim
    }

    /// Applies the isometry to factor `target` of `psi`, which is replaced by `B` and `E`.
    pub fn apply(&self, psi: &PureStateVector, target: &str) -> Result<PureStateVector> {
        let d = psi.subsystems().dim_of(target)?;
        if d != self.in_dim {
            return Err(Error::DimMismatch(format!(
                "`{target}` has dimension {d}, isometry expects {}",
                self.in_dim
            )));
        }
        psi.apply_local(&self.matrix, target, &[self.out_dim, self.env_dim], &[LABEL_B, LABEL_E])
    }

    /// `V ρ V†` on `B ⊗ E` for a single-system input.
    pub fn apply_density(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        if rho.dim() != self.in_dim {
            return Err(Error::DimMismatch(format!(
                "input of dimension {} for an isometry on dimension {}",
                rho.dim(),
                self.in_dim
            )));
        }
        let m = (&(&self.matrix * rho.matrix()) * &self.matrix.adjoint()).hermitize();
        DensityOperator::new(m, &[self.out_dim, self.env_dim], &[LABEL_B, LABEL_E])
    }

    /// `Tr_E(V ρ V†)`.
    pub fn channel_output(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        self.apply_density(rho)?.partial_trace(&[LABEL_B])
    }

    /// `Tr_B(V ρ V†)`, the complementary channel output.
    pub fn complementary_output(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        self.apply_density(rho)?.partial_trace(&[LABEL_E])
    }
}

/// Free-function form of [`IsometricExtension::apply`] acting on factor `target`.
pub fn apply_isometry(v: &IsometricExtension, psi: &PureStateVector, target: &str) -> Result<PureStateVector> {
    v.apply(psi, target)
}

pub fn pauli_x() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = re(1.0);
    m[(1, 0)] = re(1.0);
    m
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diag(&[1.0, -1.0])
}

pub fn identity_channel(d: usize) -> KrausChannel {
    KrausChannel::new(vec![ComplexMatrix::identity(d)]).expect("identity is trace preserving")
}

/// Phase-flip channel `ρ -> (1-q)ρ + q ZρZ`.
pub fn z_flip(q: f64) -> Result<KrausChannel> {
    check_probability("q", q)?;
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale((1.0 - q).sqrt()),
        pauli_z().scale(q.sqrt()),
    ])
}

/// Qubit dephasing channel with dephasing parameter `p`:
/// `ρ -> (1-p)ρ + p Δ(ρ)`, where `Δ` removes the off-diagonal terms.
/// Its Kraus set is `{√(1-p/2) I, √(p/2) Z}`, so off-diagonals shrink by `1-p`
/// and `p = 1` is complete dephasing. This is the parameterization in which the
/// single-letter curves use `g(p, μ)`.
pub fn dephasing(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    z_flip(p / 2.0)
}

/// Completely depolarizing channel `ρ -> I/d`. Qubits use `{I, X, Y, Z}/2`,
/// larger dimensions the `d²` Weyl operators scaled by `1/d`.
pub fn depolarizing_complete(d: usize) -> Result<KrausChannel> {
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    if d == 2 {
        return KrausChannel::new(
            [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()]
                .iter()
                .map(|m| m.scale(0.5))
                .collect(),
        );
    }
    let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64);
    let mut ops = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            // X^a Z^b |j> = ω^{bj} |j + a>
            let op = ComplexMatrix::from_fn(d, d, |row, col| {
                if row == (col + a) % d {
                    omega((b * col) % d) / d as f64
                } else {
                    re(0.0)
                }
            });
            ops.push(op);
        }
    }
    KrausChannel::new(ops)
}

/// Kraus form of the erasure channel on dimension `d`, output dimension `d + 1`
/// with the erasure flag at index `d`.
pub fn erasure_kraus(epsilon: f64, d: usize) -> Result<KrausChannel> {
    check_probability("epsilon", epsilon)?;
    if d == 0 {
        return Err(Error::OutOfRange {
            name: "d",
            value: 0.0,
            range: "d >= 1",
        });
    }
    let keep = (1.0 - epsilon).sqrt();
    let lose = epsilon.sqrt();
    let mut ops = vec![ComplexMatrix::from_fn(d + 1, d, |i, j| {
        if i == j {
            re(keep)
        } else {
            re(0.0)
        }
    })];
    for j in 0..d {
        let mut k = ComplexMatrix::zeros(d + 1, d);
        k[(d, j)] = re(lose);
        ops.push(k);
    }
    KrausChannel::new(ops)
}

/// Direct isometry `V|ψ⟩ = √(1-ε)|ψ⟩_B|e⟩_E + √ε|e⟩_B|ψ⟩_E` with `B`, `E` of
/// dimension `d + 1` and the flag `|e⟩ = |d⟩`.
pub fn erasure_isometry(epsilon: f64, d: usize) -> Result<IsometricExtension> {
    check_probability("epsilon", epsilon)?;
    if d == 0 {
        return Err(Error::OutOfRange {
            name: "d",
            value: 0.0,
            range: "d >= 1",
        });
    }
    let side = d + 1;
    let mut v = ComplexMatrix::zeros(side * side, d);
    for i in 0..d {
        v[(i * side + d, i)] += re((1.0 - epsilon).sqrt());
        v[(d * side + i, i)] += re(epsilon.sqrt());
    }
    IsometricExtension::new(v, side, side)
}

/// A channel with both representations; `isometry` is what the entropic
/// pipeline uses (for erasure it is the direct construction).
#[derive(Debug, Clone)]
pub struct Channel {
    pub name: String,
    pub kraus: KrausChannel,
    pub isometry: IsometricExtension,
}

impl Channel {
    pub fn from_kraus(name: impl Into<String>, kraus: KrausChannel) -> Self {
        let isometry = kraus.isometric_extension();
        Self {
            name: name.into(),
            kraus,
            isometry,
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus("identity", identity_channel(d))
    }

    pub fn dephasing(p: f64) -> Result<Self> {
        Ok(Self::from_kraus(format!("dephasing:{p}"), dephasing(p)?))
    }

    pub fn z_flip(q: f64) -> Result<Self> {
        Ok(Self::from_kraus(format!("zflip:{q}"), z_flip(q)?))
    }

    pub fn depolarizing(d: usize) -> Result<Self> {
        Ok(Self::from_kraus(format!("depolarizing:{d}"), depolarizing_complete(d)?))
    }

    pub fn erasure(epsilon: f64, d: usize) -> Result<Self> {
        Ok(Self {
            name: format!("erasure:{epsilon}"),
            kraus: erasure_kraus(epsilon, d)?,
            isometry: erasure_isometry(epsilon, d)?,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.kraus.in_dim()
    }

    pub fn out_dim(&self) -> usize {
        self.kraus.out_dim()
    }

    /// `k`-fold tensor power built from the Kraus form.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        Ok(Self::from_kraus(
            format!("{}^{k}", self.name),
            self.kraus.tensor_power(k)?,
        ))
    }
}

/// Channel spec file contents. See the README for the schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Kraus operators as `ops[k][row][col] = [re, im]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ops: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

impl ChannelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<Channel> {
        let need = |v: Option<f64>, field: &str| {
            v.ok_or_else(|| Error::Parse(format!("`{}` channel requires `{field}`", self.kind)))
        };
        match self.kind.as_str() {
            "dephasing" => Channel::dephasing(need(self.p, "p")?),
            "zflip" => Channel::z_flip(need(self.p, "p")?),
            "erasure" => Channel::erasure(need(self.epsilon, "epsilon")?, self.d.unwrap_or(2)),
            "depolarizing" => Channel::depolarizing(self.d.unwrap_or(2)),
            "identity" => Ok(Channel::identity(self.d.unwrap_or(2))),
            "kraus" => {
                let ops = self
                    .ops
                    .as_ref()
                    .ok_or_else(|| Error::Parse("`kraus` channel requires `ops`".into()))?;
                let mats = ops.iter().map(|op| parse_matrix(op)).collect::<Result<Vec<_>>>()?;
                Ok(Channel::from_kraus("kraus", KrausChannel::new(mats)?))
            }
            other => Err(Error::Parse(format!("unknown channel kind `{other}`"))),
        }
    }
}

pub(crate) fn parse_matrix(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    let data = rows
        .iter()
        .flat_map(|r| r.iter().map(|&[a, b]| Complex64::new(a, b)))
        .collect();
    ComplexMatrix::from_vec(n_rows, n_cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::von_neumann_entropy;
    use crate::random::{random_density, seeded_rng};

    fn plus() -> DensityOperator {
        let h = 1.0 / 2f64.sqrt();
        PureStateVector::new(vec![re(h), re(h)], &[2], &["A'"])
            .unwrap()
            .to_density()
    }

    fn sorted_eigs(rho: &DensityOperator) -> Vec<f64> {
        crate::qlinalg::eigvals_hermitian(rho.matrix()).unwrap()
    }

    #[test]
    fn dephasing_fixes_maximally_mixed() {
        let out = dephasing(0.3)
            .unwrap()
            .apply(&DensityOperator::maximally_mixed(2, "A'"))
            .unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn z_flip_on_plus_state() {
        // K0 = √0.8 I, K1 = √0.2 Z
        let out = z_flip(0.2).unwrap().apply(&plus()).unwrap();
        let e = sorted_eigs(&out);
        assert!((e[0] - 0.8).abs() < 1e-12 && (e[1] - 0.2).abs() < 1e-12);
        let h = von_neumann_entropy(&out).unwrap();
        assert!((h - crate::qlinalg::binary_entropy(0.2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn dephasing_is_z_flip_at_half_parameter() {
        let out = dephasing(0.2).unwrap().apply(&plus()).unwrap();
        let e = sorted_eigs(&out);
        assert!((e[0] - 0.9).abs() < 1e-12 && (e[1] - 0.1).abs() < 1e-12);
        assert_eq!(dephasing(0.2).unwrap(), z_flip(0.1).unwrap());
    }

    #[test]
    fn dephasing_endpoints() {
        let id = dephasing(0.0).unwrap().apply(&plus()).unwrap();
        assert!(id.matrix().max_abs_diff(plus().matrix()) < 1e-15);
        // complete dephasing kills coherences
        let full = dephasing(1.0).unwrap().apply(&plus()).unwrap();
        assert!(full.matrix()[(0, 1)].norm() < 1e-15);
        // phase flip with certainty is unitary conjugation by Z
        let zz = z_flip(1.0).unwrap().apply(&plus()).unwrap();
        assert!((zz.matrix()[(0, 1)] - re(-0.5)).norm() < 1e-15);
        assert!(von_neumann_entropy(&zz).unwrap().abs() < 1e-12);
        assert!(dephasing(1.2).is_err());
    }

    #[test]
    fn depolarizing_outputs_maximally_mixed() {
        let mut rng = seeded_rng(3);
        for d in [2usize, 3, 4] {
            let ch = depolarizing_complete(d).unwrap();
            let rho = random_density(&mut rng, &[d], &["A'"]);
            let out = ch.apply(&rho).unwrap();
            let mixed = ComplexMatrix::identity(d).scale(1.0 / d as f64);
            assert!(out.matrix().max_abs_diff(&mixed) < 1e-12);
        }
        assert!(depolarizing_complete(1).is_err());
    }

    #[test]
    fn validate_tp_reports() {
        let r = dephasing(0.3).unwrap().validate_tp();
        assert!(r.passed && r.max_deviation < 1e-12);
        let id = KrausChannel::new_unchecked(vec![ComplexMatrix::identity(2)]).unwrap();
        assert!(validate_tp(&id).passed);
        let half = KrausChannel::new_unchecked(vec![ComplexMatrix::identity(2).scale(0.5)]).unwrap();
        let r = half.validate_tp();
        assert!(!r.passed);
        assert!((r.max_deviation - 0.75).abs() < 1e-15);
        assert!(matches!(
            KrausChannel::new(vec![ComplexMatrix::identity(2).scale(0.5)]),
            Err(Error::NotTracePreserving(_))
        ));
    }

    #[test]
    fn environment_dimensions() {
        assert_eq!(dephasing(0.2).unwrap().isometric_extension().env_dim(), 2);
        assert_eq!(erasure_kraus(0.3, 2).unwrap().isometric_extension().env_dim(), 3);
        assert_eq!(erasure_isometry(0.3, 2).unwrap().env_dim(), 3);
    }

    #[test]
    fn identity_isometry_has_constant_environment() {
        let v = identity_channel(2).isometric_extension();
        assert_eq!(v.env_dim(), 1);
        let mut rng = seeded_rng(5);
        let rho = random_density(&mut rng, &[2], &["A'"]);
        let e = v.complementary_output(&rho).unwrap();
        assert!((e.matrix()[(0, 0)] - re(1.0)).norm() < 1e-12);
        assert!(v.channel_output(&rho).unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn erasure_extremes() {
        let mut rng = seeded_rng(8);
        let rho = random_density(&mut rng, &[2], &["A'"]);
        let v0 = erasure_isometry(0.0, 2).unwrap();
        let b = v0.channel_output(&rho).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((b.matrix()[(i, j)] - rho.matrix()[(i, j)]).norm() < 1e-12);
            }
        }
        assert!(
            von_neumann_entropy(&v0.complementary_output(&rho).unwrap())
                .unwrap()
                .abs()
                < 1e-9
        );
        let v1 = erasure_isometry(1.0, 2).unwrap();
        let b1 = v1.channel_output(&rho).unwrap();
        assert!((b1.matrix()[(2, 2)] - re(1.0)).norm() < 1e-12);
        let e1 = v1.complementary_output(&rho).unwrap();
        assert!((e1.matrix()[(0, 1)] - rho.matrix()[(0, 1)]).norm() < 1e-12);
        let gram = &v1.matrix().adjoint() * v1.matrix();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
        assert!(erasure_isometry(-0.1, 2).is_err());
    }

    #[test]
    fn isometry_reproduces_kraus_action() {
        let mut rng = seeded_rng(21);
        let channels = [
            dephasing(0.2).unwrap(),
            z_flip(0.37).unwrap(),
            depolarizing_complete(2).unwrap(),
            depolarizing_complete(3).unwrap(),
            erasure_kraus(0.25, 2).unwrap(),
            identity_channel(2),
        ];
        for ch in &channels {
            let v = ch.isometric_extension();
            for _ in 0..100 {
                let rho = random_density(&mut rng, &[ch.in_dim()], &["A'"]);
                let via_kraus = ch.apply(&rho).unwrap();
                let via_iso = v.channel_output(&rho).unwrap();
                assert!(via_kraus.matrix().max_abs_diff(via_iso.matrix()) < 1e-9);
                v.complementary_output(&rho).unwrap().validate().unwrap();
            }
        }
    }

    #[test]
    fn erasure_direct_isometry_matches_kraus_form() {
        let mut rng = seeded_rng(22);
        for eps in [0.0, 0.1, 0.25, 0.5, 0.9, 1.0] {
            let ch = erasure_kraus(eps, 2).unwrap();
            let v = erasure_isometry(eps, 2).unwrap();
            for _ in 0..100 {
                let rho = random_density(&mut rng, &[2], &["A'"]);
                let a = ch.apply(&rho).unwrap();
                let b = v.channel_output(&rho).unwrap();
                assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-9);
            }
        }
    }

    #[test]
    fn erasure_self_complementarity() {
        let mut rng = seeded_rng(23);
        for eps in [0.1, 0.25, 0.4] {
            let v = erasure_isometry(eps, 2).unwrap();
            let w = erasure_isometry(1.0 - eps, 2).unwrap();
            for _ in 0..20 {
                let rho = random_density(&mut rng, &[2], &["A'"]);
                let hb = von_neumann_entropy(&v.channel_output(&rho).unwrap()).unwrap();
                let he = von_neumann_entropy(&w.complementary_output(&rho).unwrap()).unwrap();
                assert!((hb - he).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn apply_isometry_to_entangled_input() {
        let phi = PureStateVector::maximally_entangled(2, "A", "A'");
        let out = apply_isometry(&identity_channel(2).isometric_extension(), &phi, "A'").unwrap();
        assert_eq!(out.dims(), &[2, 2, 1]);
        let ab = out.reduced(&["A", "B"]).unwrap();
        let bell = PureStateVector::maximally_entangled(2, "A", "B").to_density();
        assert!(ab.matrix().max_abs_diff(bell.matrix()) < 1e-15);

        let out = apply_isometry(&dephasing(0.2).unwrap().isometric_extension(), &phi, "A'").unwrap();
        let a = out.reduced(&["A"]).unwrap();
        assert!(a.matrix().max_abs_diff(phi.reduced(&["A"]).unwrap().matrix()) < 1e-12);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        let he = von_neumann_entropy(&out.reduced(&["E"]).unwrap()).unwrap();
        assert!((he - crate::qlinalg::binary_entropy(0.9).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn apply_isometry_without_reference() {
        let psi = PureStateVector::basis(1, &[2], &["A'"]).unwrap();
        let v = dephasing(0.4).unwrap().isometric_extension();
        let out = v.apply(&psi, "A'").unwrap();
        let direct = v.apply_density(&psi.to_density()).unwrap();
        assert!(out.to_density().matrix().max_abs_diff(direct.matrix()) < 1e-14);
        assert!(v.apply(&psi, "X").is_err());
        let qutrit = PureStateVector::basis(0, &[3], &["A'"]).unwrap();
        assert!(matches!(v.apply(&qutrit, "A'"), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let rho = DensityOperator::maximally_mixed(3, "A'");
        assert!(matches!(
            dephasing(0.1).unwrap().apply(&rho),
            Err(Error::DimMismatch(_))
        ));
    }

    #[test]
    fn tensor_power_is_product_channel() {
        let ch = dephasing(0.2).unwrap();
        let sq = ch.tensor_power(2).unwrap();
        assert_eq!((sq.in_dim(), sq.out_dim(), sq.kraus().len()), (4, 4, 4));
        assert!(sq.validate_tp().passed);
        let mut rng = seeded_rng(31);
        let a = random_density(&mut rng, &[2], &["A'"]);
        let b = random_density(&mut rng, &[2], &["B'"]);
        let joint = DensityOperator::single(a.tensor(&b).unwrap().matrix().clone(), "A'").unwrap();
        let out = sq.apply(&joint).unwrap();
        let expect = ch.apply(&a).unwrap().matrix().kron(ch.apply(&b).unwrap().matrix());
        assert!(out.matrix().max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn channel_spec_files() {
        let ch = ChannelSpec::from_json(r#"{"kind":"dephasing","p":0.2}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(ch.kraus, dephasing(0.2).unwrap());
        let er = ChannelSpec::from_json(r#"{"kind":"erasure","epsilon":0.25,"d":2}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(er.isometry.env_dim(), 3);
        let k = ChannelSpec::from_json(r#"{"kind":"kraus","ops":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(k.kraus.kraus().len(), 1);
        let non_tp = ChannelSpec::from_json(r#"{"kind":"kraus","ops":[[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]}"#)
            .unwrap()
            .build();
        assert!(matches!(non_tp, Err(Error::NotTracePreserving(_))));
        assert!(ChannelSpec::from_json(r#"{"kind":"dephasing"}"#)
            .unwrap()
            .build()
            .is_err());
        assert!(ChannelSpec::from_json(r#"{"kind":"warp"}"#).unwrap().build().is_err());
        assert!(ChannelSpec::from_json(r#"{"kind":"dephasing","q":1}"#).is_err());
    }
}
