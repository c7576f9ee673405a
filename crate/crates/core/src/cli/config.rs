//! Sweep settings: built-in defaults, then a `key = value` config file, then
//! command-line flags, each layer overriding the one before.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::dynamics::Method;
use crate::model::{ModelParams, RateConvention};

use super::CliError;

pub const DEFAULT_SCAN_POINTS: usize = 2001;
pub const DEFAULT_PHASE_POINTS: usize = 4001;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    C,
    Lhs,
    Vhs,
    F,
    Lb,
    Vb,
    Phi,
}

impl Quantity {
    pub const ALL: [Quantity; 7] = [
        Quantity::C,
        Quantity::Lhs,
        Quantity::Vhs,
        Quantity::F,
        Quantity::Lb,
        Quantity::Vb,
        Quantity::Phi,
    ];

    /// Everything except the geometric phase, which needs a dense grid.
    pub fn default_set() -> Vec<Quantity> {
        Self::ALL[..6].to_vec()
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "C" => Ok(Quantity::C),
            "LHS" | "L_HS" => Ok(Quantity::Lhs),
            "VHS" | "V_HS" => Ok(Quantity::Vhs),
            "F" | "F_SEP" => Ok(Quantity::F),
            "LB" | "L_B" => Ok(Quantity::Lb),
            "VB" | "V_B" => Ok(Quantity::Vb),
            "PHI" | "PHI_G" => Ok(Quantity::Phi),
            other => Err(format!(
                "unknown quantity '{other}' (expected C, LHS, VHS, F, LB, VB, PHI)"
            )),
        }
    }
}

pub fn parse_method(s: &str) -> Result<Method, String> {
    match s.trim() {
        "analytic" => Ok(Method::Analytic),
        "closed" => Ok(Method::ClosedForm),
        "rk4" => Ok(Method::Rk4),
        other => Err(format!(
            "unknown method '{other}' (expected analytic, closed, rk4)"
        )),
    }
}

pub fn parse_convention(s: &str) -> Result<RateConvention, String> {
    match s.trim() {
        "paper" => Ok(RateConvention::PaperConsistent),
        "literal" => Ok(RateConvention::LiteralEq6),
        other => Err(format!(
            "unknown convention '{other}' (expected paper, literal)"
        )),
    }
}

/// One layer of settings; `None` leaves the value to the layer below.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub j: Option<f64>,
    pub gamma: Option<f64>,
    pub b: Option<f64>,
    pub alpha: Option<f64>,
    pub alphas: Option<Vec<f64>>,
    pub eta_max: Option<f64>,
    pub n_points: Option<usize>,
    pub method: Option<Method>,
    pub convention: Option<RateConvention>,
    pub seed: Option<u64>,
    pub quantities: Option<Vec<Quantity>>,
}

impl Overrides {
    /// `self` on top of `below`.
    pub fn over(self, below: Overrides) -> Overrides {
        // a single alpha given at this layer replaces any list from below
        let alphas = match (self.alphas, self.alpha) {
            (Some(list), _) => Some(list),
            (None, Some(a)) => Some(vec![a]),
            (None, None) => below.alphas.or(below.alpha.map(|a| vec![a])),
        };
        Overrides {
            j: self.j.or(below.j),
            gamma: self.gamma.or(below.gamma),
            b: self.b.or(below.b),
            alpha: None,
            alphas,
            eta_max: self.eta_max.or(below.eta_max),
            n_points: self.n_points.or(below.n_points),
            method: self.method.or(below.method),
            convention: self.convention.or(below.convention),
            seed: self.seed.or(below.seed),
            quantities: self.quantities.or(below.quantities),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub params_base: ModelParams,
    pub alphas: Vec<f64>,
    pub eta_max: f64,
    pub n_points: usize,
    pub quantities: Vec<Quantity>,
    pub method: Method,
    pub seed: u64,
}

impl SweepSpec {
    /// Fills the gaps in `o` from the defaults and validates the result.
    pub fn resolve(o: Overrides, default_points: usize) -> Result<SweepSpec, CliError> {
        let d = ModelParams::default();
        let alphas = o
            .alphas
            .or(o.alpha.map(|a| vec![a]))
            .unwrap_or(vec![d.noise_alpha]);
        if alphas.is_empty() {
            return Err(CliError::Usage("alphas must not be empty".into()));
        }
        if let Some(a) = alphas.iter().find(|a| !a.is_finite() || **a < 0.0) {
            return Err(CliError::Usage(format!(
                "alpha must be finite and >= 0, got {a}"
            )));
        }
        let n_points = o.n_points.unwrap_or(default_points);
        if n_points < 2 {
            return Err(CliError::Usage(format!(
                "need at least 2 grid points, got {n_points}"
            )));
        }
        let eta_max = o.eta_max.unwrap_or(2.0 * std::f64::consts::PI);
        if !eta_max.is_finite() {
            return Err(CliError::Usage("eta-max must be finite".into()));
        }
        let params_base = ModelParams::new(
            o.j.unwrap_or(d.coupling_j),
            o.gamma.unwrap_or(d.anisotropy_gamma),
            o.b.unwrap_or(d.field_b),
            alphas[0],
        )
        .map_err(|e| CliError::Usage(e.to_string()))?
        .with_convention(o.convention.unwrap_or_default());
        let mut quantities = o.quantities.unwrap_or_else(Quantity::default_set);
        quantities.sort();
        quantities.dedup();
        Ok(SweepSpec {
            params_base,
            alphas,
            eta_max,
            n_points,
            quantities,
            method: o.method.unwrap_or_default(),
            seed: o.seed.unwrap_or(DEFAULT_SEED),
        })
    }

    pub fn params_for(&self, alpha: f64) -> ModelParams {
        self.params_base.with_alpha(alpha)
    }

    pub fn wants(&self, q: Quantity) -> bool {
        self.quantities.contains(&q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn number<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError {
        line,
        message: format!("malformed number for '{key}': '{}'", value.trim()),
    })
}

/// Parses the `key = value` format. `#` starts a comment; blank lines are
/// ignored.
pub fn parse_config(text: &str) -> Result<Overrides, ConfigError> {
    let mut o = Overrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError {
            line,
            message: format!("expected 'key = value', got '{content}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |message: String| ConfigError { line, message };
        match key {
            "J" => o.j = Some(number(line, key, value)?),
            "gamma" => o.gamma = Some(number(line, key, value)?),
            "B" => o.b = Some(number(line, key, value)?),
            "alpha" => o.alpha = Some(number(line, key, value)?),
            "alphas" => {
                o.alphas = Some(
                    value
                        .split(',')
                        .map(|v| number(line, key, v))
                        .collect::<Result<Vec<f64>, _>>()?,
                )
            }
            "eta_max" => o.eta_max = Some(number(line, key, value)?),
            "n_points" => o.n_points = Some(number(line, key, value)?),
            "seed" => o.seed = Some(number(line, key, value)?),
            "method" => o.method = Some(parse_method(value).map_err(bad)?),
            "convention" => o.convention = Some(parse_convention(value).map_err(bad)?),
            "quantities" => {
                o.quantities = Some(
                    value
                        .split(',')
                        .map(str::parse)
                        .collect::<Result<Vec<Quantity>, _>>()
                        .map_err(bad)?,
                )
            }
            other => return Err(bad(format!("unknown key '{other}'"))),
        }
    }
    Ok(o)
}

pub fn load_config(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let o = parse_config(
            "# sweep\nJ = 0.3\ngamma=1\nB = 0.5  # field\nalphas = 0,0.01,0.1\neta_max = 3\n\
             n_points = 11\nmethod = rk4\nconvention = literal\nseed = 5\nquantities = C,LHS,PHI\n",
        )
        .unwrap();
        assert_eq!(o.j, Some(0.3));
        assert_eq!(o.alphas, Some(vec![0.0, 0.01, 0.1]));
        assert_eq!(o.method, Some(Method::Rk4));
        assert_eq!(o.convention, Some(RateConvention::LiteralEq6));
        assert_eq!(
            o.quantities,
            Some(vec![Quantity::C, Quantity::Lhs, Quantity::Phi])
        );
        assert_eq!(o.n_points, Some(11));
    }

    #[test]
    fn flags_override_file() {
        let file = parse_config("J = 0.3\nalphas = 0,0.1\n").unwrap();
        let flags = Overrides {
            j: Some(0.5),
            ..Default::default()
        };
        let s = SweepSpec::resolve(flags.over(file), DEFAULT_SCAN_POINTS).unwrap();
        assert_eq!(s.params_base.coupling_j, 0.5);
        assert_eq!(s.alphas, vec![0.0, 0.1]);

        let flags = Overrides {
            alpha: Some(0.2),
            ..Default::default()
        };
        let s = SweepSpec::resolve(flags.over(parse_config("alphas = 0,0.1").unwrap()), 5).unwrap();
        assert_eq!(s.alphas, vec![0.2]);
        assert_eq!(s.n_points, 5);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_config("J = 0.3\n\nfoo = 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("foo"));
        let e = parse_config("J = 0.3\ngamma = x1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_config("alphas = 0,,1").is_err());
        assert!(parse_config("method = euler").is_err());
    }

    #[test]
    fn resolve_validates() {
        let bad_points = Overrides {
            n_points: Some(1),
            ..Default::default()
        };
        assert!(SweepSpec::resolve(bad_points, 10).is_err());
        let negative = Overrides {
            alphas: Some(vec![0.1, -0.1]),
            ..Default::default()
        };
        assert!(SweepSpec::resolve(negative, 10).is_err());
        let empty = Overrides {
            alphas: Some(vec![]),
            ..Default::default()
        };
        assert!(SweepSpec::resolve(empty, 10).is_err());
        let s = SweepSpec::resolve(Overrides::default(), 10).unwrap();
        assert_eq!(s.quantities, Quantity::default_set());
        assert_eq!(s.alphas, vec![0.1]);
    }
}
