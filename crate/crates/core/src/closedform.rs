//! Closed-form single-letter results for the erasure, dephasing and
//! completely depolarizing channels, plus the time-sharing comparator.
//!
//! Dephasing curves are parameterized by `μ ∈ [0, ½]` (the μ-ensemble) and the
//! dephasing parameter `p` of [`crate::channels::dephasing`].

use serde::Serialize;

use crate::error::{check_probability, Error, Result};
use crate::qlinalg::h2;
use crate::regions::{Halfspace, RateTriple};

fn check_mu(mu: f64) -> Result<()> {
    if (0.0..=0.5).contains(&mu) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "mu",
            value: mu,
            range: "[0, 1/2]",
        })
    }
}

fn check_nonneg(name: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value: x,
            range: "[0, inf)",
        })
    }
}

/// `g(p, μ) = ½ + ½√(1 − 16·(p/2)(1 − p/2)·μ(1 − μ))`.
pub fn g(p: f64, mu: f64) -> Result<f64> {
    check_probability("p", p)?;
    check_mu(mu)?;
    let mut radicand = 1.0 - 16.0 * (p / 2.0) * (1.0 - p / 2.0) * mu * (1.0 - mu);
    if (-1e-12..0.0).contains(&radicand) {
        radicand = 0.0;
    }
    Ok(0.5 + 0.5 * radicand.sqrt())
}

/// Which dephasing trade-off curve a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    /// Classically-enhanced quantum communication (C, Q) plane.
    #[serde(rename = "DS")]
    Ds,
    /// Classically-enhanced father.
    #[serde(rename = "CEF")]
    Cef,
    /// Entanglement-assisted classical communication (C, E) plane.
    #[serde(rename = "SHOR_CE")]
    ShorCe,
}

impl CurveKind {
    pub const fn name(self) -> &'static str {
        match self {
            Self::Ds => "DS",
            Self::Cef => "CEF",
            Self::ShorCe => "SHOR_CE",
        }
    }

    pub fn evaluate(self, p: f64, mu: f64) -> Result<RateTriple> {
        match self {
            Self::Ds => ds_curve(p, mu),
            Self::Cef => cef_curve(p, mu),
            Self::ShorCe => shor_ce_curve(p, mu),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub mu: f64,
    pub triple: RateTriple,
    pub curve: CurveKind,
}

/// Samples `curve` at each μ in `mus`.
pub fn sample_curve(curve: CurveKind, p: f64, mus: &[f64]) -> Result<Vec<CurvePoint>> {
    mus.iter()
        .map(|&mu| {
            Ok(CurvePoint {
                mu,
                triple: curve.evaluate(p, mu)?,
                curve,
            })
        })
        .collect()
}

/// `(1 − H₂(μ), H₂(μ) − H₂(g), 0)`.
pub fn ds_curve(p: f64, mu: f64) -> Result<RateTriple> {
    let gv = g(p, mu)?;
    Ok(RateTriple::new(1.0 - h2(mu), h2(mu) - h2(gv), 0.0))
}

/// `(1 − H₂(μ), H₂(μ) − ½H₂(g), ½H₂(g))`.
pub fn cef_curve(p: f64, mu: f64) -> Result<RateTriple> {
    let gv = g(p, mu)?;
    Ok(RateTriple::new(1.0 - h2(mu), h2(mu) - 0.5 * h2(gv), 0.5 * h2(gv)))
}

/// `(1 + H₂(μ) − H₂(g), 0, H₂(μ))`.
pub fn shor_ce_curve(p: f64, mu: f64) -> Result<RateTriple> {
    let gv = g(p, mu)?;
    Ok(RateTriple::new(1.0 + h2(mu) - h2(gv), 0.0, h2(mu)))
}

/// `(C_CQ(μ), Q_CQ(μ) + e, e)`.
pub fn ds_surface(p: f64, mu: f64, e: f64) -> Result<RateTriple> {
    check_nonneg("e", e)?;
    let ds = ds_curve(p, mu)?;
    Ok(RateTriple::new(ds.c, ds.q + e, e))
}

/// `(C_CE(μ) − 2e, e, E_CE(μ) − e)`.
pub fn shor_surface(p: f64, mu: f64, e: f64) -> Result<RateTriple> {
    check_nonneg("e", e)?;
    let ce = shor_ce_curve(p, mu)?;
    Ok(RateTriple::new(ce.c - 2.0 * e, e, ce.e - e))
}

/// The `e` at which the two bounding surfaces meet for a given μ: the shared
/// point needs `Q_CQ + e = e'` and `e = E_CE − e'`, which gives `e = ½H₂(g)` on
/// the first surface (and `e' = Q_CQ + ½H₂(g)` on the second).
pub fn surface_intersection(p: f64, mu: f64) -> Result<(RateTriple, RateTriple)> {
    let gv = g(p, mu)?;
    let e_ds = 0.5 * h2(gv);
    let e_shor = ds_curve(p, mu)?.q + e_ds;
    Ok((ds_surface(p, mu, e_ds)?, shor_surface(p, mu, e_shor)?))
}

/// Sum-rate bound `C + 2Q <= 2 − H₂(g(p, ½))`.
pub fn solid_plane_bound(p: f64) -> Result<f64> {
    Ok(2.0 - h2(g(p, 0.5)?))
}

/// The three erasure halfspaces. For `ε = 1` the middle bound is replaced by
/// its `(1 − ε)`-scaled form, which together with the others leaves only `C = Q = 0`.
pub fn erasure_region(epsilon: f64) -> Result<[Halfspace; 3]> {
    check_probability("epsilon", epsilon)?;
    let keep = 1.0 - epsilon;
    let second = if keep > 0.0 {
        Halfspace::new([(1.0 - 2.0 * epsilon) / keep, 1.0, -1.0], 1.0 - 2.0 * epsilon)
    } else {
        Halfspace::new([1.0 - 2.0 * epsilon, keep, -keep], keep * (1.0 - 2.0 * epsilon))
    };
    Ok([
        Halfspace::new([1.0, 2.0, 0.0], 2.0 * keep),
        second,
        Halfspace::new([1.0, 1.0 + epsilon, -keep], keep),
    ])
}

/// Optimal erasure-channel rate triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErasureTable {
    pub eac: RateTriple,
    pub lsd: RateTriple,
    pub hsw: RateTriple,
    pub eaq: RateTriple,
    /// Set when `ε > ½` and the LSD rate `1 − 2ε` was clamped to zero.
    pub lsd_clamped: bool,
}

pub fn erasure_table(epsilon: f64) -> Result<ErasureTable> {
    check_probability("epsilon", epsilon)?;
    let keep = 1.0 - epsilon;
    let lsd_rate = 1.0 - 2.0 * epsilon;
    Ok(ErasureTable {
        eac: RateTriple::new(2.0 * keep, 0.0, 1.0),
        lsd: RateTriple::new(0.0, lsd_rate.max(0.0), 0.0),
        hsw: RateTriple::new(keep, 0.0, 0.0),
        eaq: RateTriple::new(0.0, keep, epsilon),
        lsd_clamped: lsd_rate < 0.0,
    })
}

/// Entropic quantities of the μ-ensemble through the erasure channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErasureEntropics {
    /// I(X;B)
    pub i_x_b: f64,
    /// I(A⟩BX)
    pub i_coh: f64,
    /// ½I(A;B|X)
    pub half_i_a_b_given_x: f64,
    /// ½I(A;E|X) = εH₂(μ)
    pub half_i_a_e_given_x: f64,
    /// I(AX;B)
    pub i_ax_b: f64,
}

pub fn erasure_entropics(epsilon: f64, mu: f64) -> Result<ErasureEntropics> {
    check_probability("epsilon", epsilon)?;
    check_mu(mu)?;
    let hm = h2(mu);
    let keep = 1.0 - epsilon;
    Ok(ErasureEntropics {
        i_x_b: keep * (1.0 - hm),
        i_coh: (1.0 - 2.0 * epsilon) * hm,
        half_i_a_b_given_x: keep * hm,
        half_i_a_e_given_x: epsilon * hm,
        i_ax_b: (1.0 + hm) * keep,
    })
}

/// CEF point of the μ-ensemble through the erasure channel.
pub fn erasure_cef_curve(epsilon: f64, mu: f64) -> Result<RateTriple> {
    let q = erasure_entropics(epsilon, mu)?;
    Ok(RateTriple::new(q.i_x_b, q.half_i_a_b_given_x, q.half_i_a_e_given_x))
}

/// Halfspaces of the completely depolarizing channel's region.
pub fn depolarizing_region() -> [Halfspace; 3] {
    [
        Halfspace::new([1.0, 2.0, 0.0], 0.0),
        Halfspace::new([0.0, 1.0, -1.0], 0.0),
        Halfspace::new([1.0, 1.0, -1.0], 0.0),
    ]
}

/// I(A;B) = 2(1 − ε)H₂(p) for a qubit input with spectrum (p, 1 − p) through the erasure channel.
pub fn eac_erasure_mutual_info(p_spec: f64, epsilon: f64) -> Result<f64> {
    check_probability("p_spec", p_spec)?;
    check_probability("epsilon", epsilon)?;
    Ok(2.0 * (1.0 - epsilon) * h2(p_spec))
}

/// Grid point in `{0, 1/steps, …, 1}` maximizing [`eac_erasure_mutual_info`]; first maximum wins.
pub fn eac_erasure_argmax(epsilon: f64, steps: usize) -> Result<f64> {
    if steps == 0 {
        return Err(Error::EmptyInput("grid"));
    }
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in 0..=steps {
        let x = k as f64 / steps as f64;
        let v = eac_erasure_mutual_info(x, epsilon)?;
        if v > best.0 {
            best = (v, x);
        }
    }
    Ok(best.1)
}

/// `(1 − λ)a + λb`.
pub fn timeshare_line(a: RateTriple, b: RateTriple, lambda: f64) -> Result<RateTriple> {
    check_probability("lambda", lambda)?;
    Ok((1.0 - lambda) * a + lambda * b)
}

/// One row of the CEF-versus-time-sharing comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeshareComparison {
    pub mu: f64,
    pub lambda: f64,
    pub cef: RateTriple,
    pub timeshare: RateTriple,
    /// Q_CEF − Q_TS
    pub delta_q: f64,
    /// E_TS − E_CEF
    pub delta_e: f64,
}

fn compare(mu: f64, cef: RateTriple, hsw: RateTriple, eaq: RateTriple) -> TimeshareComparison {
    // (1 − λ)·C_HSW = C_CEF
    let lambda = if hsw.c > 0.0 { 1.0 - cef.c / hsw.c } else { 1.0 };
    let ts = (1.0 - lambda) * hsw + lambda * eaq;
    TimeshareComparison {
        mu,
        lambda,
        cef,
        timeshare: ts,
        delta_q: cef.q - ts.q,
        delta_e: ts.e - cef.e,
    }
}

/// Compares the dephasing CEF point at μ with the HSW–EAQ time-sharing point
/// that has the same classical rate.
pub fn cef_vs_timeshare(p: f64, mu: f64) -> Result<TimeshareComparison> {
    let cef = cef_curve(p, mu)?;
    let hsw = cef_curve(p, 0.0)?;
    let eaq = cef_curve(p, 0.5)?;
    Ok(compare(mu, cef, hsw, eaq))
}

/// Same comparison for the erasure channel with the [`erasure_table`] endpoints.
pub fn erasure_cef_vs_timeshare(epsilon: f64, mu: f64) -> Result<TimeshareComparison> {
    let cef = erasure_cef_curve(epsilon, mu)?;
    let table = erasure_table(epsilon)?;
    Ok(compare(mu, cef, table.hsw, table.eaq))
}

/// Time-sharing an EAC code `(C₁, 0, E₁)` with a quantum code `(0, Q₂, 0)` at
/// entanglement budget `e = λE₁`: `(λC₁, (1 − λ)Q₂, e)`.
pub fn timeshare_eac_quantum(eac: RateTriple, quantum: RateTriple, e: f64) -> Result<RateTriple> {
    if eac.e <= 0.0 {
        return Err(Error::OutOfRange {
            name: "E1",
            value: eac.e,
            range: "(0, inf)",
        });
    }
    let lambda = e / eac.e;
    check_probability("lambda", lambda)?;
    Ok(RateTriple::new(lambda * eac.c, (1.0 - lambda) * quantum.q, e))
}

/// Time-sharing an EAQ code `(0, Q₁, E₁)` with an EAC code `(C₂, 0, E₂)` at
/// budget `e = λE₁ + (1 − λ)E₂`: `((1 − λ)C₂, λQ₁, e)`.
pub fn timeshare_eaq_eac(eaq: RateTriple, eac: RateTriple, e: f64) -> Result<RateTriple> {
    let span = eaq.e - eac.e;
    if span == 0.0 {
        return Err(Error::OutOfRange {
            name: "E1 - E2",
            value: 0.0,
            range: "nonzero",
        });
    }
    let lambda = (e - eac.e) / span;
    check_probability("lambda", lambda)?;
    Ok(RateTriple::new((1.0 - lambda) * eac.c, lambda * eaq.q, e))
}
