use cqe_core::bounds::{run_sweep, Suite};
use cqe_core::closedform::{
    cef_vs_timeshare, erasure_cef_vs_timeshare, sample_curve, solid_plane_bound, CurveKind, TimeshareComparison,
};
use cqe_core::entropics::{channel_output_ensemble, Entropics};
use cqe_core::regions::{children_from_entropics, OneShotRegion};
use cqe_core::Error;

use crate::input::{parse_ensemble, parse_grid, ChannelArg};
use crate::output::{Cell, Emission};

pub fn region(channel: &str, ensemble: &str, e_max: f64) -> Result<Emission, Error> {
    let ch = ChannelArg::parse(channel)?.build()?;
    let ens = parse_ensemble(ensemble)?;
    if ens.exceeds_cardinality_hint(ch.out_dim()) {
        eprintln!(
            "warning: ensemble has {} letters, more than the cardinality hint {}",
            ens.entries().len(),
            ens.cardinality_hint(ch.out_dim())
        );
    }
    let sigma = channel_output_ensemble(&ens, &ch.isometry)?;
    let q = Entropics::of(&sigma)?;
    let region = OneShotRegion::from_entropics(&q)?;
    let vertices = region.corner_points(e_max)?;

    let mut out = Emission::new("region", vec!["kind", "name", "C", "Q", "E"]);
    out.meta("channel", ch.name.as_str());
    out.meta("ensemble", ensemble);
    out.meta("e_max", e_max);
    out.meta("i_axb", region.i_axb);
    out.meta("i_xb", region.i_xb);
    out.meta("i_coh", region.i_coh);
    for (i, v) in vertices.iter().enumerate() {
        out.row(vec![
            "vertex".into(),
            format!("v{i}").into(),
            v.c.into(),
            v.q.into(),
            v.e.into(),
        ]);
    }
    for (which, t) in children_from_entropics(&q).points {
        out.row(vec![
            "child".into(),
            which.name().into(),
            t.c.into(),
            t.q.into(),
            t.e.into(),
        ]);
    }
    Ok(out)
}

pub fn curve(kind: CurveKind, p: f64, grid: &str) -> Result<Emission, Error> {
    let mus = parse_grid(grid)?;
    let points = sample_curve(kind, p, &mus)?;
    let mut out = Emission::new("curve", vec!["mu", "C", "Q", "E"]);
    out.meta("curve", kind.name());
    out.meta("p", p);
    out.meta("solid_plane_bound", solid_plane_bound(p)?);
    for pt in points {
        out.row(vec![
            pt.mu.into(),
            pt.triple.c.into(),
            pt.triple.q.into(),
            pt.triple.e.into(),
        ]);
    }
    Ok(out)
}

pub fn compare(p: Option<f64>, channel: Option<&str>, grid: &str) -> Result<Emission, Error> {
    let mus = parse_grid(grid)?;
    let compare_at: Box<dyn Fn(f64) -> Result<TimeshareComparison, Error>> = match (p, channel) {
        (Some(p), None) => Box::new(move |mu| cef_vs_timeshare(p, mu)),
        (None, Some(arg)) => match ChannelArg::parse(arg)? {
            ChannelArg::Dephasing(p) => Box::new(move |mu| cef_vs_timeshare(p, mu)),
            ChannelArg::Erasure { epsilon, d: 2 } => Box::new(move |mu| erasure_cef_vs_timeshare(epsilon, mu)),
            _ => {
                return Err(Error::Parse(
                    "compare supports dephasing:p and qubit erasure:epsilon".into(),
                ))
            }
        },
        _ => return Err(Error::Parse("give exactly one of --p and --channel".into())),
    };
    let mut out = Emission::new("compare", vec!["mu", "C", "Q_cef", "E_cef", "Q_ts", "E_ts", "dQ", "dE"]);
    match (p, channel) {
        (Some(p), _) => out.meta("channel", format!("dephasing:{p}")),
        (_, Some(c)) => out.meta("channel", c),
        _ => {}
    }
    for mu in mus {
        let r = compare_at(mu)?;
        out.row(vec![
            mu.into(),
            r.cef.c.into(),
            r.cef.q.into(),
            r.cef.e.into(),
            r.timeshare.q.into(),
            r.timeshare.e.into(),
            r.delta_q.into(),
            r.delta_e.into(),
        ]);
    }
    Ok(out)
}

/// Returns the emission and whether every suite passed.
pub fn check(suites: &[String], trials: usize, seed: u64) -> Result<(Emission, bool), Error> {
    let selected: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites
            .iter()
            .flat_map(|s| s.split(','))
            .map(Suite::parse)
            .collect::<Result<_, _>>()?
    };
    let mut out = Emission::new("check", vec!["suite", "trials", "violations", "worst_slack", "status"]);
    out.meta("seed", seed.to_string());
    let mut all_ok = true;
    for suite in selected {
        let s = run_sweep(suite, trials, seed)?;
        all_ok &= s.passed();
        let worst = if trials == 0 { Cell::Empty } else { s.worst_slack.into() };
        out.row(vec![
            s.suite.into(),
            s.trials.into(),
            s.violations.into(),
            worst,
            if s.passed() { "pass" } else { "FAIL" }.into(),
        ]);
    }
    Ok((out, all_ok))
}
