//! Run configuration and its flat key-value file format.
//!
//! The format is one `key = value` pair per line, `#` comments, no
//! sections. Every key mirrors a [`RunConfig`] field and the serializer
//! emits floats with Rust's shortest round-trip formatting, so
//! parse(serialize(config)) reproduces the configuration bit for bit.

use std::collections::BTreeMap;

use lambda_cavity::model::{CoherentModeSpec, FockGrid, NonlinearitySpec, SystemParams};
use lambda_cavity::squeezing::DistributionMode;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown preset '{name}'; available presets: {catalog}")]
    UnknownPreset { name: String, catalog: String },
    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config key '{0}' is missing")]
    MissingKey(&'static str),
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] lambda_cavity::ModelError),
}

/// Which columns a sweep emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputSelection {
    pub dem: bool,
    pub squeezing: bool,
    pub norm: bool,
}

/// Everything a sweep needs; round-trips losslessly through the config
/// file format. Runs are seedless: the same configuration always produces
/// byte-identical output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub modes: [CoherentModeSpec; 2],
    pub grid: FockGrid,
    pub tau_max: f64,
    pub dtau_entropy: f64,
    pub dtau_squeezing: f64,
    pub dist_mode: DistributionMode,
    pub outputs: OutputSelection,
    pub oracle_check: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate()?;
        for (what, v) in [
            ("tau_max", self.tau_max),
            ("dtau", self.dtau_entropy),
            ("dtau_squeezing", self.dtau_squeezing),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::Invalid(format!(
                    "{what} must be positive and finite, got {v}"
                )));
            }
        }
        if !(self.grid.tail_tol > 0.0 && self.grid.tail_tol <= 1.0) {
            return Err(ConfigError::Invalid(format!(
                "tail_tol must lie in (0, 1], got {}",
                self.grid.tail_tol
            )));
        }
        // κ and V_B evaluate the weights at n+1, so tables must reach one
        // past the truncation
        let specs = [
            ("f1", &self.params.f_spec[0], self.grid.n_max[0]),
            ("f2", &self.params.f_spec[1], self.grid.n_max[1]),
            ("g1", &self.params.g_spec[0], self.grid.n_max[0]),
            ("g2", &self.params.g_spec[1], self.grid.n_max[1]),
        ];
        for (name, spec, n_max) in specs {
            if let NonlinearitySpec::Tabulated(table) = spec {
                if table.len() < n_max + 2 {
                    return Err(ConfigError::Invalid(format!(
                        "{name}: tabulated weights must cover 0..={} for n_max = {n_max}, \
                         got {} entries",
                        n_max + 1,
                        table.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

fn spec_to_str(spec: &NonlinearitySpec) -> String {
    match spec {
        NonlinearitySpec::Constant => "const".into(),
        NonlinearitySpec::SqrtN => "sqrt_n".into(),
        NonlinearitySpec::InverseSqrtN => "inverse_sqrt_n".into(),
        NonlinearitySpec::Tabulated(t) => {
            let vals: Vec<String> = t.iter().map(|v| format!("{v}")).collect();
            format!("tab:{}", vals.join(","))
        }
    }
}

fn spec_from_str(s: &str) -> Result<NonlinearitySpec, String> {
    match s {
        "const" => Ok(NonlinearitySpec::Constant),
        "sqrt_n" => Ok(NonlinearitySpec::SqrtN),
        "inverse_sqrt_n" => Ok(NonlinearitySpec::InverseSqrtN),
        _ => {
            if let Some(list) = s.strip_prefix("tab:") {
                let vals = list
                    .split(',')
                    .map(|v| v.trim().parse::<f64>().map_err(|e| e.to_string()))
                    .collect::<Result<Vec<f64>, String>>()?;
                Ok(NonlinearitySpec::Tabulated(vals))
            } else {
                Err(format!(
                    "expected const | sqrt_n | inverse_sqrt_n | tab:<w0>,<w1>,..., got '{s}'"
                ))
            }
        }
    }
}

pub fn dist_mode_to_str(mode: DistributionMode) -> &'static str {
    match mode {
        DistributionMode::Literal => "literal",
        DistributionMode::Traced => "traced",
        DistributionMode::Schrodinger => "schrodinger",
    }
}

pub fn parse_dist_mode(s: &str) -> Result<DistributionMode, String> {
    match s {
        "literal" => Ok(DistributionMode::Literal),
        "traced" => Ok(DistributionMode::Traced),
        "schrodinger" => Ok(DistributionMode::Schrodinger),
        _ => Err(format!("expected literal | traced | schrodinger, got '{s}'")),
    }
}

impl RunConfig {
    /// Serializes to the flat config format; `parse` inverts this exactly.
    pub fn to_config_string(&self) -> String {
        let mut out = String::from("# lambda-cavity run configuration\n");
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        kv("lambda1", format!("{}", self.params.lambda[0]));
        kv("lambda2", format!("{}", self.params.lambda[1]));
        kv("chi", format!("{}", self.params.chi));
        kv("f1", spec_to_str(&self.params.f_spec[0]));
        kv("f2", spec_to_str(&self.params.f_spec[1]));
        kv("g1", spec_to_str(&self.params.g_spec[0]));
        kv("g2", spec_to_str(&self.params.g_spec[1]));
        if let Some((d2, d3)) = self.params.delta_override {
            kv("delta2", format!("{d2}"));
            kv("delta3", format!("{d3}"));
        }
        if let Some(w) = self.params.omega {
            kv("omega1", format!("{}", w[0]));
            kv("omega2", format!("{}", w[1]));
            kv("omega3", format!("{}", w[2]));
        }
        if let Some(m) = self.params.mode_omega {
            kv("mode_omega1", format!("{}", m[0]));
            kv("mode_omega2", format!("{}", m[1]));
        }
        kv("alpha1_re", format!("{}", self.modes[0].alpha.re));
        kv("alpha1_im", format!("{}", self.modes[0].alpha.im));
        kv("alpha2_re", format!("{}", self.modes[1].alpha.re));
        kv("alpha2_im", format!("{}", self.modes[1].alpha.im));
        kv("n_max1", format!("{}", self.grid.n_max[0]));
        kv("n_max2", format!("{}", self.grid.n_max[1]));
        kv("tail_tol", format!("{}", self.grid.tail_tol));
        kv("tau_max", format!("{}", self.tau_max));
        kv("dtau", format!("{}", self.dtau_entropy));
        kv("dtau_squeezing", format!("{}", self.dtau_squeezing));
        kv("dist_mode", dist_mode_to_str(self.dist_mode).into());
        kv("emit_dem", format!("{}", self.outputs.dem));
        kv("emit_squeezing", format!("{}", self.outputs.squeezing));
        kv("emit_norm", format!("{}", self.outputs.norm));
        kv("oracle_check", format!("{}", self.oracle_check));
        out
    }

    /// Parses the flat config format. Unknown and duplicate keys are
    /// rejected so typos fail loudly instead of silently running defaults.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        const KNOWN: &[&str] = &[
            "lambda1", "lambda2", "chi", "f1", "f2", "g1", "g2",
            "delta2", "delta3",
            "omega1", "omega2", "omega3", "mode_omega1", "mode_omega2",
            "alpha1_re", "alpha1_im", "alpha2_re", "alpha2_im",
            "n_max1", "n_max2", "tail_tol",
            "tau_max", "dtau", "dtau_squeezing", "dist_mode",
            "emit_dem", "emit_squeezing", "emit_norm", "oracle_check",
        ];
        let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or(ConfigError::Parse {
                line,
                msg: format!("expected 'key = value', got '{stripped}'"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let known = *KNOWN.iter().find(|k| **k == key).ok_or(ConfigError::Parse {
                line,
                msg: format!("unknown key '{key}'"),
            })?;
            if map.insert(known, (line, value)).is_some() {
                return Err(ConfigError::Parse { line, msg: format!("duplicate key '{key}'") });
            }
        }

        let get = |k: &'static str| map.get(k).copied();
        let required = |k: &'static str| get(k).ok_or(ConfigError::MissingKey(k));
        let parse_f64 = |k: &'static str| -> Result<f64, ConfigError> {
            let (line, v) = required(k)?;
            v.parse::<f64>().map_err(|e| ConfigError::Parse { line, msg: format!("{k}: {e}") })
        };
        let parse_opt_f64 = |k: &'static str| -> Result<Option<f64>, ConfigError> {
            get(k)
                .map(|(line, v)| {
                    v.parse::<f64>()
                        .map_err(|e| ConfigError::Parse { line, msg: format!("{k}: {e}") })
                })
                .transpose()
        };
        let parse_usize = |k: &'static str| -> Result<usize, ConfigError> {
            let (line, v) = required(k)?;
            v.parse::<usize>().map_err(|e| ConfigError::Parse { line, msg: format!("{k}: {e}") })
        };
        let parse_bool = |k: &'static str| -> Result<bool, ConfigError> {
            let (line, v) = required(k)?;
            match v {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(ConfigError::Parse { line, msg: format!("{k}: expected true/false") }),
            }
        };
        let parse_spec = |k: &'static str| -> Result<NonlinearitySpec, ConfigError> {
            let (line, v) = required(k)?;
            spec_from_str(v).map_err(|msg| ConfigError::Parse { line, msg })
        };

        let delta2 = parse_opt_f64("delta2")?;
        let delta3 = parse_opt_f64("delta3")?;
        let delta_override = match (delta2, delta3) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => {
                return Err(ConfigError::Invalid(
                    "delta2 and delta3 must be given together".into(),
                ))
            }
        };
        let omega = match (parse_opt_f64("omega1")?, parse_opt_f64("omega2")?, parse_opt_f64("omega3")?) {
            (Some(a), Some(b), Some(c)) => Some([a, b, c]),
            (None, None, None) => None,
            _ => {
                return Err(ConfigError::Invalid(
                    "omega1, omega2, omega3 must be given together".into(),
                ))
            }
        };
        let mode_omega = match (parse_opt_f64("mode_omega1")?, parse_opt_f64("mode_omega2")?) {
            (Some(a), Some(b)) => Some([a, b]),
            (None, None) => None,
            _ => {
                return Err(ConfigError::Invalid(
                    "mode_omega1 and mode_omega2 must be given together".into(),
                ))
            }
        };

        let params = SystemParams {
            omega,
            mode_omega,
            lambda: [parse_f64("lambda1")?, parse_f64("lambda2")?],
            chi: parse_f64("chi")?,
            f_spec: [parse_spec("f1")?, parse_spec("f2")?],
            g_spec: [parse_spec("g1")?, parse_spec("g2")?],
            delta_override,
        };
        let modes = [
            CoherentModeSpec::new(C64::new(parse_f64("alpha1_re")?, parse_f64("alpha1_im")?)),
            CoherentModeSpec::new(C64::new(parse_f64("alpha2_re")?, parse_f64("alpha2_im")?)),
        ];
        let grid = FockGrid::new(parse_usize("n_max1")?, parse_usize("n_max2")?, parse_f64("tail_tol")?);
        let dist_mode = {
            let (line, v) = required("dist_mode")?;
            parse_dist_mode(v).map_err(|msg| ConfigError::Parse { line, msg })?
        };

        let cfg = RunConfig {
            params,
            modes,
            grid,
            tau_max: parse_f64("tau_max")?,
            dtau_entropy: parse_f64("dtau")?,
            dtau_squeezing: parse_f64("dtau_squeezing")?,
            dist_mode,
            outputs: OutputSelection {
                dem: parse_bool("emit_dem")?,
                squeezing: parse_bool("emit_squeezing")?,
                norm: parse_bool("emit_norm")?,
            },
            oracle_check: parse_bool("oracle_check")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
