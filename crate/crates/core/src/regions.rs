//! One-shot CQE polytopes, unit-protocol arithmetic and child protocols.
//!
//! For a state σ the one-shot region is the set of `(C, Q, E) >= 0` with
//!
//! ```text
//! C + 2Q <= I(AX;B)
//!      Q <= I(A>BX) + E
//!  C + Q <= I(X;B) + I(A>BX) + E
//! ```
//!
//! The region is unbounded in `+E`, so vertex enumeration takes an explicit cap.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::channels::Channel;
use crate::entropics::{channel_output_ensemble, CQEJointState, CQEnsemble, Entropics};
use crate::error::{Error, Result};

/// Slack for arithmetic feasibility tests.
pub const ARITH_TOL: f64 = 1e-12;
/// Slack for quantities that come out of an eigensolver.
pub const ENTROPIC_TOL: f64 = 1e-9;
/// Vertices closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-7;
/// Step of the time-sharing λ grid.
pub const TIMESHARE_STEP: f64 = 0.01;

/// `(C, Q, E)`: classical bits, qubits and consumed ebits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct RateTriple {
    pub c: f64,
    pub q: f64,
    pub e: f64,
}

impl RateTriple {
    pub const ORIGIN: Self = Self { c: 0.0, q: 0.0, e: 0.0 };

    pub const fn new(c: f64, q: f64, e: f64) -> Self {
        Self { c, q, e }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c, self.q, self.e]
    }

    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.c >= -tol && self.q >= -tol && self.e >= -tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.c - other.c)
            .abs()
            .max((self.q - other.q).abs())
            .max((self.e - other.e).abs())
    }
}

impl Add for RateTriple {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.c + rhs.c, self.q + rhs.q, self.e + rhs.e)
    }
}

impl Sub for RateTriple {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.c - rhs.c, self.q - rhs.q, self.e - rhs.e)
    }
}

impl Mul<RateTriple> for f64 {
    type Output = RateTriple;

    fn mul(self, rhs: RateTriple) -> RateTriple {
        RateTriple::new(self * rhs.c, self * rhs.q, self * rhs.e)
    }
}

impl fmt::Display for RateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c, self.q, self.e)
    }
}

/// Halfspace `normal · (C, Q, E) <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Halfspace {
    pub normal: [f64; 3],
    pub rhs: f64,
}

impl Halfspace {
    pub const fn new(normal: [f64; 3], rhs: f64) -> Self {
        Self { normal, rhs }
    }

    pub fn value(&self, t: &RateTriple) -> f64 {
        self.normal[0] * t.c + self.normal[1] * t.q + self.normal[2] * t.e
    }

    /// Positive when `t` violates the halfspace.
    pub fn violation(&self, t: &RateTriple) -> f64 {
        self.value(t) - self.rhs
    }

    pub fn is_tight(&self, t: &RateTriple, tol: f64) -> bool {
        self.violation(t).abs() <= tol
    }
}

/// The three entropic constants that fix a one-shot polytope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneShotRegion {
    /// I(AX;B)
    pub i_axb: f64,
    /// I(X;B)
    pub i_xb: f64,
    /// I(A⟩BX)
    pub i_coh: f64,
}

impl OneShotRegion {
    /// Checks `I(AX;B) >= I(X;B) >= 0` and `I(AX;B) >= I(X;B) + I(A⟩BX)` up to 1e-9.
    pub fn new(i_axb: f64, i_xb: f64, i_coh: f64) -> Result<Self> {
        if ![i_axb, i_xb, i_coh].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidRegion("non-finite constant".into()));
        }
        if i_xb < -ENTROPIC_TOL {
            return Err(Error::InvalidRegion(format!("I(X;B) = {i_xb} < 0")));
        }
        if i_axb < i_xb - ENTROPIC_TOL {
            return Err(Error::InvalidRegion(format!("I(AX;B) = {i_axb} < I(X;B) = {i_xb}")));
        }
        if i_axb < i_xb + i_coh - ENTROPIC_TOL {
            return Err(Error::InvalidRegion(format!(
                "I(AX;B) = {i_axb} < I(X;B) + I(A>BX) = {}",
                i_xb + i_coh
            )));
        }
        Ok(Self { i_axb, i_xb, i_coh })
    }

    pub fn from_entropics(q: &Entropics) -> Result<Self> {
        Self::new(q.i_ax_b, q.i_x_b, q.i_coh)
    }

    /// The three entropic halfspaces (nonnegativity excluded).
    pub fn halfspaces(&self) -> [Halfspace; 3] {
        [
            Halfspace::new([1.0, 2.0, 0.0], self.i_axb),
            Halfspace::new([0.0, 1.0, -1.0], self.i_coh),
            Halfspace::new([1.0, 1.0, -1.0], self.i_xb + self.i_coh),
        ]
    }

    /// All bounding planes of the region capped at `e <= e_max`.
    pub fn bounding_planes(&self, e_max: f64) -> Vec<Halfspace> {
        let mut planes = vec![
            Halfspace::new([-1.0, 0.0, 0.0], 0.0),
            Halfspace::new([0.0, -1.0, 0.0], 0.0),
            Halfspace::new([0.0, 0.0, -1.0], 0.0),
        ];
        planes.extend(self.halfspaces());
        planes.push(Halfspace::new([0.0, 0.0, 1.0], e_max));
        planes
    }

    /// Membership with arithmetic slack 1e-12.
    pub fn contains(&self, t: &RateTriple) -> bool {
        self.contains_within(t, ARITH_TOL)
    }

    pub fn contains_within(&self, t: &RateTriple, tol: f64) -> bool {
        t.is_nonnegative(tol) && self.halfspaces().iter().all(|h| h.violation(t) <= tol)
    }

    /// Vertices of the region intersected with `e <= e_max`, sorted lexicographically.
    pub fn corner_points(&self, e_max: f64) -> Result<Vec<RateTriple>> {
        if e_max.is_nan() || e_max < 0.0 {
            return Err(Error::OutOfRange {
                name: "e_max",
                value: e_max,
                range: "e_max >= 0",
            });
        }
        Ok(polytope_vertices(&self.bounding_planes(e_max)))
    }

    /// Divides every constant by `k` (per-channel-use rates of a k-letter region).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            i_axb: self.i_axb * factor,
            i_xb: self.i_xb * factor,
            i_coh: self.i_coh * factor,
        }
    }
}

/// Vertices of `{x : n_i · x <= b_i}` by brute force over plane triples.
/// Singular triples are skipped; feasibility slack 1e-9, duplicates within 1e-7 merged.
pub fn polytope_vertices(planes: &[Halfspace]) -> Vec<RateTriple> {
    let mut vertices: Vec<RateTriple> = Vec::new();
    let n = planes.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let Some(x) = solve3(&planes[i], &planes[j], &planes[k]) else {
                    continue;
                };
                let t = RateTriple::new(clean(x[0]), clean(x[1]), clean(x[2]));
                if planes.iter().all(|h| h.violation(&t) <= ENTROPIC_TOL)
                    && !vertices.iter().any(|v| v.max_abs_diff(&t) <= DEDUP_TOL)
                {
                    vertices.push(t);
                }
            }
        }
    }
    vertices.sort_by(|a, b| a.c.total_cmp(&b.c).then(a.q.total_cmp(&b.q)).then(a.e.total_cmp(&b.e)));
    vertices
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Gaussian elimination with partial pivoting; `None` when singular.
fn solve3(a: &Halfspace, b: &Halfspace, c: &Halfspace) -> Option<[f64; 3]> {
    let mut m = [
        [a.normal[0], a.normal[1], a.normal[2], a.rhs],
        [b.normal[0], b.normal[1], b.normal[2], b.rhs],
        [c.normal[0], c.normal[1], c.normal[2], c.rhs],
    ];
    for col in 0..3 {
        let pivot = (col..3).max_by(|&r, &s| m[r][col].abs().total_cmp(&m[s][col].abs()))?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                let pivot_row = m[col];
                for (k, v) in m[row].iter_mut().enumerate().skip(col) {
                    *v -= f * pivot_row[k];
                }
            }
        }
    }
    Some([m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]])
}

/// Region of σ from its entropic constants.
pub fn region_from_state(sigma: &CQEJointState) -> Result<OneShotRegion> {
    OneShotRegion::from_entropics(&Entropics::of(sigma)?)
}

/// Region of `channel` for `ensemble`.
pub fn region_for(channel: &Channel, ensemble: &CQEnsemble) -> Result<OneShotRegion> {
    region_from_state(&channel_output_ensemble(ensemble, &channel.isometry)?)
}

/// `(1/k)` times the one-shot region of `N^{⊗k}` for the product ensemble.
/// Only `k ∈ {1, 2}` is supported.
pub fn regularized_region(channel: &Channel, ensemble: &CQEnsemble, k: usize) -> Result<OneShotRegion> {
    if !(1..=2).contains(&k) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k as f64,
            range: "{1, 2}",
        });
    }
    if k == 1 {
        return region_for(channel, ensemble);
    }
    let power = channel.tensor_power(k)?;
    let ens = ensemble.tensor_power(k)?;
    Ok(region_for(&power, &ens)?.scaled(1.0 / k as f64))
}

/// The classically-enhanced father point (I(X;B), ½I(A;B|X), ½I(A;E|X)).
pub fn cef_point(sigma: &CQEJointState) -> Result<RateTriple> {
    Ok(cef_from_entropics(&Entropics::of(sigma)?))
}

pub fn cef_from_entropics(q: &Entropics) -> RateTriple {
    RateTriple::new(q.i_x_b, 0.5 * q.i_a_b_given_x, 0.5 * q.i_a_e_given_x)
}

/// Noiseless unit protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UnitProtocol {
    /// 2 cbits + 1 ebit -> 1 qubit
    Teleportation,
    /// 1 qubit + 1 ebit -> 2 cbits
    SuperdenseCoding,
    /// 1 qubit -> 1 ebit
    EntanglementDistribution,
}

impl UnitProtocol {
    /// Change of `(C, Q, E)` per unit rate; E counts consumption.
    pub const fn delta(self) -> RateTriple {
        match self {
            Self::Teleportation => RateTriple::new(-2.0, 1.0, 1.0),
            Self::SuperdenseCoding => RateTriple::new(2.0, -1.0, 1.0),
            Self::EntanglementDistribution => RateTriple::new(0.0, -1.0, -1.0),
        }
    }

    pub const fn short_name(self) -> &'static str {
        match self {
            Self::Teleportation => "TP",
            Self::SuperdenseCoding => "SD",
            Self::EntanglementDistribution => "ED",
        }
    }
}

/// `t + rate · u.delta`; the rate must be nonnegative.
pub fn apply_unit(t: RateTriple, u: UnitProtocol, rate: f64) -> Result<RateTriple> {
    if rate.is_nan() || rate < 0.0 {
        return Err(Error::NegativeRate(rate));
    }
    Ok(shift(t, u, rate))
}

fn shift(t: RateTriple, u: UnitProtocol, rate: f64) -> RateTriple {
    t + rate * u.delta()
}

/// Protocols obtained from CEF by unit-protocol arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ChildProtocol {
    Cef,
    Ceq,
    Eac,
    CefSdEd,
    CefTp,
    Eaq,
    Lsd,
}

impl ChildProtocol {
    pub const ALL: [Self; 7] = [
        Self::Cef,
        Self::Ceq,
        Self::Eac,
        Self::CefSdEd,
        Self::CefTp,
        Self::Eaq,
        Self::Lsd,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Self::Cef => "CEF",
            Self::Ceq => "CEQ",
            Self::Eac => "EAC",
            Self::CefSdEd => "CEF-SD-ED",
            Self::CefTp => "CEF-TP",
            Self::Eaq => "EAQ",
            Self::Lsd => "LSD",
        }
    }
}

/// Child protocol rate triples in [`ChildProtocol::ALL`] order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Children {
    pub points: Vec<(ChildProtocol, RateTriple)>,
}

impl Children {
    pub fn get(&self, which: ChildProtocol) -> RateTriple {
        self.points
            .iter()
            .find(|(c, _)| *c == which)
            .map(|(_, t)| *t)
            .expect("every child is derived")
    }
}

/// Derives every child protocol of CEF for σ.
pub fn derive_children(sigma: &CQEJointState) -> Result<Children> {
    Ok(children_from_entropics(&Entropics::of(sigma)?))
}

/// Rates may be negative here (e.g. SD at ½I(A⟩BX) when the coherent
/// information is negative); the resulting triples are then not achievable.
pub fn children_from_entropics(q: &Entropics) -> Children {
    use UnitProtocol::*;
    let cef = cef_from_entropics(q);
    let ceq = shift(cef, EntanglementDistribution, 0.5 * q.i_a_e_given_x);
    let eac = shift(cef, SuperdenseCoding, 0.5 * q.i_a_b_given_x);
    let cef_sd_ed = shift(
        shift(cef, EntanglementDistribution, 0.5 * q.h_a_given_x),
        SuperdenseCoding,
        0.5 * q.i_coh,
    );
    let cef_tp = shift(cef, Teleportation, 0.5 * q.i_x_b);
    let eaq = shift(cef_tp, EntanglementDistribution, 0.5 * q.i_x_b);
    let lsd = shift(eaq, EntanglementDistribution, 0.5 * q.i_a_e_given_x);
    Children {
        points: vec![
            (ChildProtocol::Cef, cef),
            (ChildProtocol::Ceq, ceq),
            (ChildProtocol::Eac, eac),
            (ChildProtocol::CefSdEd, cef_sd_ed),
            (ChildProtocol::CefTp, cef_tp),
            (ChildProtocol::Eaq, eaq),
            (ChildProtocol::Lsd, lsd),
        ],
    }
}

/// Whether `t` lies in the union of `regions`, optionally closed under
/// pairwise time-sharing.
///
/// With `timeshare`, `t` is also accepted when `t = λu + (1-λ)v` for `u` in one
/// region and `v` a vertex of another (or the same) region, searched over
/// `λ ∈ {0, 0.01, …, 1}`. This is an inner approximation of the convex hull.
pub fn union_membership(regions: &[OneShotRegion], t: &RateTriple, timeshare: bool) -> Result<bool> {
    if regions.is_empty() {
        return Err(Error::EmptyInput("region list"));
    }
    if regions.iter().any(|r| r.contains(t)) {
        return Ok(true);
    }
    if !timeshare || !t.is_nonnegative(ARITH_TOL) {
        return Ok(false);
    }
    let steps = (1.0 / TIMESHARE_STEP).round() as usize;
    for k in 1..steps {
        let lambda = k as f64 * TIMESHARE_STEP;
        // v carries weight 1-λ, so its entanglement can be at most t.e / (1-λ).
        let e_cap = t.e.max(0.0) / (1.0 - lambda);
        for v_region in regions {
            for v in v_region.corner_points(e_cap)? {
                let u = (1.0 / lambda) * (*t - (1.0 - lambda) * v);
                if regions.iter().any(|r| r.contains(&u)) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}
