use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Tolerance on unit trace and unit norm.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues down to `-EIGEN_CLAMP` are treated as roundoff and clamped to zero.
pub const EIGEN_CLAMP: f64 = 1e-9;

/// Ordered list of labelled tensor factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystems {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl Subsystems {
    pub fn new<S: AsRef<str>>(dims: &[usize], labels: &[S]) -> Result<Self> {
        if dims.len() != labels.len() {
            return Err(Error::DimMismatch(format!(
                "{} dims for {} labels",
                dims.len(),
                labels.len()
            )));
        }
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidState(format!("duplicate subsystem label `{l}`")));
            }
        }
        if dims.contains(&0) {
            return Err(Error::DimMismatch("subsystem of dimension 0".into()));
        }
        Ok(Self {
            dims: dims.to_vec(),
            labels,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        self.position(label).map(|i| self.dims[i])
    }

    fn concat(&self, other: &Self) -> Result<Self> {
        let dims: Vec<usize> = self.dims.iter().chain(&other.dims).copied().collect();
        let labels: Vec<&String> = self.labels.iter().chain(&other.labels).collect();
        Self::new(&dims, &labels)
    }

    /// Groups full basis indices by their traced-out multi-index. Each group lists
    /// `(full_index, kept_index)` pairs; kept factors keep their original order.
    fn trace_groups(&self, keep: &[bool]) -> (Self, Vec<Vec<(usize, usize)>>) {
        let kept_dims: Vec<usize> = self
            .dims
            .iter()
            .zip(keep)
            .filter_map(|(&d, &k)| k.then_some(d))
            .collect();
        let kept_labels: Vec<String> = self
            .labels
            .iter()
            .zip(keep)
            .filter(|&(_, &k)| k)
            .map(|(l, _)| l.clone())
            .collect();
        let traced_total: usize = self
            .dims
            .iter()
            .zip(keep)
            .filter_map(|(&d, &k)| (!k).then_some(d))
            .product();
        let mut groups = vec![Vec::new(); traced_total];
        let n = self.total_dim();
        let mut digits = vec![0usize; self.dims.len()];
        for full in 0..n {
            let (mut ki, mut ti) = (0usize, 0usize);
            for (f, &d) in self.dims.iter().enumerate() {
                if keep[f] {
                    ki = ki * d + digits[f];
                } else {
                    ti = ti * d + digits[f];
                }
            }
            groups[ti].push((full, ki));
            for f in (0..digits.len()).rev() {
                digits[f] += 1;
                if digits[f] < self.dims[f] {
                    break;
                }
                digits[f] = 0;
            }
        }
        let reduced = Self {
            dims: kept_dims,
            labels: kept_labels,
        };
        (reduced, groups)
    }

    fn keep_mask<S: AsRef<str>>(&self, keep: &[S]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.dims.len()];
        for k in keep {
            mask[self.position(k.as_ref())?] = true;
        }
        Ok(mask)
    }
}

/// Density operator on a labelled tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    systems: Subsystems,
}

impl DensityOperator {
    /// Validates squareness, Hermiticity, unit trace and positivity.
    pub fn new<S: AsRef<str>>(matrix: ComplexMatrix, dims: &[usize], labels: &[S]) -> Result<Self> {
        let systems = Subsystems::new(dims, labels)?;
        let rho = Self::from_parts(matrix, systems)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Single-system state labelled `label`.
    pub fn single(matrix: ComplexMatrix, label: &str) -> Result<Self> {
        let d = matrix.rows();
        Self::new(matrix, &[d], &[label])
    }

    /// Shape-checked construction without the spectral checks.
    pub(crate) fn from_parts(matrix: ComplexMatrix, systems: Subsystems) -> Result<Self> {
        matrix.ensure_square()?;
        if matrix.rows() != systems.total_dim() {
            return Err(Error::DimMismatch(format!(
                "matrix side {} but subsystem dims multiply to {}",
                matrix.rows(),
                systems.total_dim()
            )));
        }
        Ok(Self { matrix, systems })
    }

    pub fn maximally_mixed(d: usize, label: &str) -> Self {
        let m = ComplexMatrix::identity(d).scale(1.0 / d as f64);
        Self::single(m, label).expect("maximally mixed state is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let dev = self.matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = super::eigen::eigvals_hermitian(&self.matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -EIGEN_CLAMP {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        self.systems.dims()
    }

    pub fn labels(&self) -> &[String] {
        self.systems.labels()
    }

    pub fn subsystems(&self) -> &Subsystems {
        &self.systems
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `self ⊗ other`; labels concatenate and must stay distinct.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let systems = self.systems.concat(&other.systems)?;
        Self::from_parts(self.matrix.kron(&other.matrix), systems)
    }

    /// Reduced state on the subsystems named in `keep`, in their original order.
    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        let mask = self.systems.keep_mask(keep)?;
        let (reduced, groups) = self.systems.trace_groups(&mask);
        let d = reduced.total_dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for group in &groups {
            for &(fi, ki) in group {
                for &(fj, kj) in group {
                    out[(ki, kj)] += self.matrix[(fi, fj)];
                }
            }
        }
        Self::from_parts(out, reduced)
    }

    /// Conjugation `U ρ U†` by a square operator on the full space.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = u.matmul(&self.matrix)?.matmul(&u.adjoint())?;
        Self::from_parts(m, self.systems.clone())
    }

    /// Renames subsystems; the number of labels must match.
    pub fn relabel<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let systems = Subsystems::new(self.dims(), labels)?;
        Self::from_parts(self.matrix.clone(), systems)
    }
}

/// Normalized pure state on a labelled tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateVector {
    amplitudes: Vec<Complex64>,
    systems: Subsystems,
}

impl PureStateVector {
    pub fn new<S: AsRef<str>>(amplitudes: Vec<Complex64>, dims: &[usize], labels: &[S]) -> Result<Self> {
        let systems = Subsystems::new(dims, labels)?;
        let psi = Self::from_parts(amplitudes, systems)?;
        let norm = psi.norm_sqr();
        if (norm - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(psi)
    }

    /// Scales `amplitudes` to unit norm before validating.
    pub fn normalized<S: AsRef<str>>(amplitudes: Vec<Complex64>, dims: &[usize], labels: &[S]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect(), dims, labels)
    }

    pub(crate) fn from_parts(amplitudes: Vec<Complex64>, systems: Subsystems) -> Result<Self> {
        if amplitudes.len() != systems.total_dim() {
            return Err(Error::DimMismatch(format!(
                "{} amplitudes but subsystem dims multiply to {}",
                amplitudes.len(),
                systems.total_dim()
            )));
        }
        Ok(Self { amplitudes, systems })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis<S: AsRef<str>>(index: usize, dims: &[usize], labels: &[S]) -> Result<Self> {
        let systems = Subsystems::new(dims, labels)?;
        let n = systems.total_dim();
        if index >= n {
            return Err(Error::DimMismatch(format!("basis index {index} >= {n}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::from_parts(amps, systems)
    }

    /// Maximally entangled state Σ|ii⟩/√d on two factors.
    pub fn maximally_entangled(d: usize, first: &str, second: &str) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
        let a = 1.0 / (d as f64).sqrt();
        for i in 0..d {
            amps[i * d + i] = Complex64::new(a, 0.0);
        }
        Self::new(amps, &[d, d], &[first, second]).expect("maximally entangled state is valid")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        self.systems.dims()
    }

    pub fn labels(&self) -> &[String] {
        self.systems.labels()
    }

    pub fn subsystems(&self) -> &Subsystems {
        &self.systems
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            systems: self.systems.clone(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let systems = self.systems.concat(&other.systems)?;
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self::from_parts(amps, systems)
    }

    /// Reduced density operator on `keep`, computed directly from the amplitudes.
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityOperator> {
        let mask = self.systems.keep_mask(keep)?;
        let (reduced, groups) = self.systems.trace_groups(&mask);
        let d = reduced.total_dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for group in &groups {
            for &(fi, ki) in group {
                let a = self.amplitudes[fi];
                for &(fj, kj) in group {
                    out[(ki, kj)] += a * self.amplitudes[fj].conj();
                }
            }
        }
        DensityOperator::from_parts(out, reduced)
    }

    /// Applies `op` to the factor `target`, replacing it by factors `new_labels`
    /// whose dimensions multiply to `op.rows()` (row index ordered like a Kronecker product).
    pub fn apply_local<S: AsRef<str>>(
        &self,
        op: &ComplexMatrix,
        target: &str,
        new_dims: &[usize],
        new_labels: &[S],
    ) -> Result<Self> {
        let pos = self.systems.position(target)?;
        let d_in = self.systems.dims()[pos];
        if op.cols() != d_in {
            return Err(Error::DimMismatch(format!(
                "operator has {} columns but `{target}` has dimension {d_in}",
                op.cols()
            )));
        }
        if new_dims.iter().product::<usize>() != op.rows() {
            return Err(Error::DimMismatch(format!(
                "output dims {new_dims:?} do not multiply to {}",
                op.rows()
            )));
        }
        let dims = self.systems.dims();
        let left: usize = dims[..pos].iter().product();
        let right: usize = dims[pos + 1..].iter().product();
        let d_out = op.rows();
        let mut amps = vec![Complex64::new(0.0, 0.0); left * d_out * right];
        for l in 0..left {
            for i in 0..d_in {
                for r in 0..right {
                    let a = self.amplitudes[(l * d_in + i) * right + r];
                    if a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for o in 0..d_out {
                        amps[(l * d_out + o) * right + r] += op[(o, i)] * a;
                    }
                }
            }
        }
        let mut all_dims: Vec<usize> = dims[..pos].to_vec();
        all_dims.extend_from_slice(new_dims);
        all_dims.extend_from_slice(&dims[pos + 1..]);
        let mut labels: Vec<String> = self.systems.labels()[..pos].to_vec();
        labels.extend(new_labels.iter().map(|l| l.as_ref().to_string()));
        labels.extend_from_slice(&self.systems.labels()[pos + 1..]);
        Self::from_parts(amps, Subsystems::new(&all_dims, &labels)?)
    }

    /// Projects factor `label` onto basis vector `index` without renormalizing and
    /// removes that factor. Returns the unnormalized conditional vector.
    pub(crate) fn project_out(&self, label: &str, index: usize) -> Result<(f64, Option<Self>)> {
        let pos = self.systems.position(label)?;
        let dims = self.systems.dims();
        let d = dims[pos];
        let left: usize = dims[..pos].iter().product();
        let right: usize = dims[pos + 1..].iter().product();
        let mut amps = Vec::with_capacity(left * right);
        for l in 0..left {
            for r in 0..right {
                amps.push(self.amplitudes[(l * d + index) * right + r]);
            }
        }
        let weight: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if weight == 0.0 {
            return Ok((0.0, None));
        }
        let scale = weight.sqrt();
        let mut new_dims = dims.to_vec();
        new_dims.remove(pos);
        let mut labels = self.systems.labels().to_vec();
        labels.remove(pos);
        let psi = Self::from_parts(
            amps.into_iter().map(|z| z / scale).collect(),
            Subsystems::new(&new_dims, &labels)?,
        )?;
        Ok((weight, Some(psi)))
    }
}

/// Reduced state; free-function form of [`DensityOperator::partial_trace`].
pub fn partial_trace<S: AsRef<str>>(rho: &DensityOperator, keep: &[S]) -> Result<DensityOperator> {
    rho.partial_trace(keep)
}
