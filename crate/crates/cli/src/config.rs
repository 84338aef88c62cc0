//! Run configuration: defaults, `key = value` files and flag overrides.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nanoshell_core::geometry::{
    LatticeGeometry, DEFAULT_BOND_LENGTH, DEFAULT_HALF_THICKNESS, DEFAULT_SLENDERNESS,
};
use nanoshell_core::torsion::{SweepTemplate, DEFAULT_LOAD};
use nanoshell_core::ElasticModuli;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    Gpa,
    Tpa,
}

impl Units {
    fn factor(self) -> f64 {
        match self {
            Units::Gpa => 1.0,
            Units::Tpa => 1000.0,
        }
    }
}

impl FromStr for Units {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "gpa" => Ok(Units::Gpa),
            "tpa" => Ok(Units::Tpa),
            other => Err(format!("unknown units '{other}' (expected gpa or tpa)")),
        }
    }
}

/// Inclusive range of the second chiral index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MRange {
    pub start: u32,
    pub end: u32,
}

impl MRange {
    pub fn single(&self) -> Option<u32> {
        (self.start == self.end).then_some(self.start)
    }

    pub fn values(&self) -> Vec<u32> {
        (self.start..=self.end).collect()
    }
}

impl FromStr for MRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| {
            v.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{s}' is not an integer or an inclusive range a..b"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Self { start, end })
    }
}

impl std::fmt::Display for MRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.single() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}..{}", self.start, self.end),
        }
    }
}

/// Effective settings of one invocation. Moduli are stored in `units`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub e1: f64,
    pub e2: f64,
    pub g: f64,
    pub nu12: f64,
    pub nu21: f64,
    pub units: Units,
    pub isotropic: bool,
    pub bond_length: f64,
    pub eps: f64,
    pub slenderness: f64,
    pub t: f64,
    pub n: Option<u32>,
    pub m: Option<MRange>,
    pub grid_points: usize,
    pub field_points: usize,
    pub residual_tol: f64,
    pub oracle_tol: f64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub fields: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let m = ElasticModuli::default();
        Self {
            e1: m.e1(),
            e2: m.e2(),
            g: m.g(),
            nu12: m.nu12(),
            nu21: m.nu21(),
            units: Units::Gpa,
            isotropic: false,
            bond_length: DEFAULT_BOND_LENGTH,
            eps: DEFAULT_HALF_THICKNESS,
            slenderness: DEFAULT_SLENDERNESS,
            t: DEFAULT_LOAD,
            n: None,
            m: None,
            grid_points: 2001,
            field_points: 101,
            residual_tol: 1e-8,
            oracle_tol: 1e-6,
            out: None,
            svg: None,
            fields: None,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse '{value}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Config(format!(
            "{key}: expected true or false, got '{value}'"
        ))),
    }
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .unwrap_or(v)
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let value = unquote(value.trim());
        match key {
            "e1" => self.e1 = parse_value(key, value)?,
            "e2" => self.e2 = parse_value(key, value)?,
            "g" => self.g = parse_value(key, value)?,
            "nu12" => self.nu12 = parse_value(key, value)?,
            "nu21" => self.nu21 = parse_value(key, value)?,
            "units" => {
                self.units = value
                    .parse()
                    .map_err(|e: String| CliError::Config(format!("units: {e}")))?
            }
            "isotropic" => self.isotropic = parse_bool(key, value)?,
            "bond_length" => self.bond_length = parse_value(key, value)?,
            "eps" => self.eps = parse_value(key, value)?,
            "slenderness" => self.slenderness = parse_value(key, value)?,
            "t" => self.t = parse_value(key, value)?,
            "n" => self.n = Some(parse_value(key, value)?),
            "m" => {
                self.m = Some(
                    value
                        .parse()
                        .map_err(|e: String| CliError::Config(format!("m: {e}")))?,
                )
            }
            "grid_points" => self.grid_points = parse_value(key, value)?,
            "field_points" => self.field_points = parse_value(key, value)?,
            "residual_tol" => self.residual_tol = parse_value(key, value)?,
            "oracle_tol" => self.oracle_tol = parse_value(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "svg" => self.svg = Some(PathBuf::from(value)),
            "fields" => self.fields = Some(PathBuf::from(value)),
            other => return Err(CliError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Parses a flat `key = value` text with `#` comments.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("{origin}:{}: expected 'key = value'", lineno + 1))
            })?;
            self.set(key.trim(), value).map_err(|e| match e {
                CliError::Config(msg) => {
                    CliError::Config(format!("{origin}:{}: {msg}", lineno + 1))
                }
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text, &path.display().to_string())
    }

    /// Moduli in GPa after unit conversion and the isotropic override.
    pub fn moduli(&self) -> Result<ElasticModuli, CliError> {
        let k = self.units.factor();
        let result = if self.isotropic {
            ElasticModuli::isotropic(self.e1 * k, self.nu21)
        } else {
            ElasticModuli::new(self.e1 * k, self.e2 * k, self.g * k, self.nu12, self.nu21)
        };
        result.map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("bond_length", self.bond_length),
            ("eps", self.eps),
            ("slenderness", self.slenderness),
            ("residual_tol", self.residual_tol),
            ("oracle_tol", self.oracle_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !self.t.is_finite() {
            return Err(CliError::Config(format!(
                "t must be finite, got {}",
                self.t
            )));
        }
        if self.field_points < 2 {
            return Err(CliError::Config("field_points must be at least 2".into()));
        }
        let n = self
            .n
            .ok_or_else(|| CliError::Config("n is required (--n)".into()))?;
        if n == 0 {
            return Err(CliError::Config("n must be at least 1".into()));
        }
        let m = self
            .m
            .ok_or_else(|| CliError::Config("m is required (--m)".into()))?;
        if m.end > n {
            return Err(CliError::Config(format!("m range {m} exceeds n = {n}")));
        }
        self.moduli()?;
        Ok(())
    }

    pub fn template(&self) -> Result<SweepTemplate, CliError> {
        Ok(SweepTemplate {
            moduli: self.moduli()?,
            lattice: LatticeGeometry::new(self.bond_length)
                .map_err(|e| CliError::Config(e.to_string()))?,
            eps: self.eps,
            slenderness: self.slenderness,
            t: self.t,
        })
    }

    /// Config text that re-ingests to the same run (moduli written in GPa).
    pub fn dump(&self) -> String {
        let k = self.units.factor();
        let mut s = String::from("# nanoshell run configuration\n");
        let mut line = |key: &str, v: String| {
            let _ = writeln!(s, "{key} = {v}");
        };
        line("e1", format!("{:?}", self.e1 * k));
        line("e2", format!("{:?}", self.e2 * k));
        line("g", format!("{:?}", self.g * k));
        line("nu12", format!("{:?}", self.nu12));
        line("nu21", format!("{:?}", self.nu21));
        line("units", "gpa".into());
        line("isotropic", self.isotropic.to_string());
        line("bond_length", format!("{:?}", self.bond_length));
        line("eps", format!("{:?}", self.eps));
        line("slenderness", format!("{:?}", self.slenderness));
        line("t", format!("{:?}", self.t));
        if let Some(n) = self.n {
            line("n", n.to_string());
        }
        if let Some(m) = self.m {
            line("m", m.to_string());
        }
        line("grid_points", self.grid_points.to_string());
        line("field_points", self.field_points.to_string());
        line("residual_tol", format!("{:?}", self.residual_tol));
        line("oracle_tol", format!("{:?}", self.oracle_tol));
        for (key, path) in [
            ("out", &self.out),
            ("svg", &self.svg),
            ("fields", &self.fields),
        ] {
            if let Some(p) = path {
                line(key, format!("\"{}\"", p.display()));
            }
        }
        s
    }
}
