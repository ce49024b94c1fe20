//! Channel, ensemble and grid arguments.

use std::path::Path;

use cqe_core::channels::{Channel, ChannelSpec};
use cqe_core::entropics::{CQEnsemble, EnsembleSpec};
use cqe_core::Error;

fn read_file(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}")))
}

fn parse_f64(what: &str, s: &str) -> Result<f64, Error> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("{what}: `{s}` is not a number")))
}

fn parse_usize(what: &str, s: &str) -> Result<usize, Error> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("{what}: `{s}` is not a nonnegative integer")))
}

fn is_file_arg(arg: &str) -> bool {
    arg.ends_with(".json") || Path::new(arg).is_file()
}

/// A built-in channel named by `kind[:param[:dim]]`, or a JSON spec file.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelArg {
    Dephasing(f64),
    ZFlip(f64),
    Erasure { epsilon: f64, d: usize },
    Depolarizing(usize),
    Identity(usize),
    File(String),
}

impl ChannelArg {
    pub fn parse(arg: &str) -> Result<Self, Error> {
        if is_file_arg(arg) {
            return Ok(Self::File(arg.to_string()));
        }
        let parts: Vec<&str> = arg.split(':').collect();
        let dim = |i: usize| parts.get(i).map_or(Ok(2), |s| parse_usize("dimension", s));
        let param = |name: &str| {
            parts
                .get(1)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "channel `{}` needs a parameter, e.g. {}:0.2",
                        parts[0], parts[0]
                    ))
                })
                .and_then(|s| parse_f64(name, s))
        };
        let max_parts = match parts[0] {
            "dephasing" | "zflip" => 2,
            "erasure" => 3,
            "depolarizing" | "identity" => 2,
            other => return Err(Error::Parse(format!("unknown channel `{other}`"))),
        };
        if parts.len() > max_parts {
            return Err(Error::Parse(format!("too many fields in channel `{arg}`")));
        }
        Ok(match parts[0] {
            "dephasing" => Self::Dephasing(param("p")?),
            "zflip" => Self::ZFlip(param("q")?),
            "erasure" => Self::Erasure {
                epsilon: param("epsilon")?,
                d: dim(2)?,
            },
            "depolarizing" => Self::Depolarizing(dim(1)?),
            _ => Self::Identity(dim(1)?),
        })
    }

    pub fn build(&self) -> Result<Channel, Error> {
        match self {
            Self::Dephasing(p) => Channel::dephasing(*p),
            Self::ZFlip(q) => Channel::z_flip(*q),
            Self::Erasure { epsilon, d } => Channel::erasure(*epsilon, *d),
            Self::Depolarizing(d) => Channel::depolarizing(*d),
            Self::Identity(d) => Ok(Channel::identity(*d)),
            Self::File(path) => ChannelSpec::from_json(&read_file(path)?)?.build(),
        }
    }
}

/// `mu:X` for the μ-ensemble, otherwise a JSON spec file.
pub fn parse_ensemble(arg: &str) -> Result<CQEnsemble, Error> {
    if let Some(mu) = arg.strip_prefix("mu:").or_else(|| arg.strip_prefix("mu-ensemble:")) {
        return CQEnsemble::mu_ensemble(parse_f64("mu", mu)?);
    }
    if is_file_arg(arg) {
        return EnsembleSpec::from_json(&read_file(arg)?)?.build();
    }
    Err(Error::Parse(format!(
        "unknown ensemble `{arg}` (use mu:X or a JSON file)"
    )))
}

/// `start:stop:count` with `count >= 2`; both endpoints are included exactly.
pub fn parse_grid(arg: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = arg.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(Error::Parse(format!("grid `{arg}` is not start:stop:count")));
    };
    let (start, stop) = (parse_f64("grid start", start)?, parse_f64("grid stop", stop)?);
    let count = parse_usize("grid count", count)?;
    if count < 2 {
        return Err(Error::Parse(format!("grid count must be at least 2, got {count}")));
    }
    if !(start.is_finite() && stop.is_finite()) || start > stop {
        return Err(Error::Parse(format!("grid bounds `{arg}` are not increasing")));
    }
    let last = count - 1;
    Ok((0..count)
        .map(|i| {
            if i == last {
                stop
            } else {
                start + (stop - start) * i as f64 / last as f64
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_names() {
        assert_eq!(ChannelArg::parse("dephasing:0.2").unwrap(), ChannelArg::Dephasing(0.2));
        assert_eq!(
            ChannelArg::parse("erasure:0.25").unwrap(),
            ChannelArg::Erasure { epsilon: 0.25, d: 2 }
        );
        assert_eq!(
            ChannelArg::parse("erasure:0.25:3").unwrap(),
            ChannelArg::Erasure { epsilon: 0.25, d: 3 }
        );
        assert_eq!(ChannelArg::parse("depolarizing").unwrap(), ChannelArg::Depolarizing(2));
        assert_eq!(ChannelArg::parse("identity:4").unwrap(), ChannelArg::Identity(4));
        assert_eq!(
            ChannelArg::parse("spec.json").unwrap(),
            ChannelArg::File("spec.json".into())
        );
    }

    #[test]
    fn bad_channels() {
        for bad in [
            "amplitude:0.1",
            "dephasing",
            "dephasing:x",
            "dephasing:0.1:2",
            "identity:-1",
        ] {
            assert!(matches!(ChannelArg::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
        assert!(ChannelArg::parse("dephasing:1.5").unwrap().build().is_err());
    }

    #[test]
    fn ensembles() {
        assert_eq!(parse_ensemble("mu:0.5").unwrap().entries().len(), 2);
        assert!(parse_ensemble("mu:2").is_err());
        assert!(matches!(parse_ensemble("uniform"), Err(Error::Parse(_))));
    }

    #[test]
    fn grids() {
        let g = parse_grid("0:0.5:11").unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!((g[0], g[10]), (0.0, 0.5));
        assert!((g[3] - 0.15).abs() < 1e-15);
        assert!(parse_grid("0:1:1").is_err());
        assert!(parse_grid("1:0:5").is_err());
        assert!(parse_grid("0:1").is_err());
    }
}
