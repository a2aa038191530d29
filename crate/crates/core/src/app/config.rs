//! Run configuration: defaults, an optional TOML file, and flag overrides.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::app::reference::table_setup;
use crate::error::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "MCBDQM_OUT";

pub const DEFAULT_GRIDS: [usize; 5] = [4, 8, 16, 32, 64];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Solve,
    Converge,
    TableCheck,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "solve" => Ok(Mode::Solve),
            "converge" => Ok(Mode::Converge),
            "table-check" => Ok(Mode::TableCheck),
            other => Err(Error::Config(format!(
                "unknown mode '{other}' (solve, converge, table-check)"
            ))),
        }
    }
}

/// Every setting optional; used both for the config file and for flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PartialConfig {
    pub problem: Option<String>,
    pub re: Option<f64>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub snapshots: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub mode: Option<Mode>,
    pub grids: Option<Vec<usize>>,
    pub table: Option<u8>,
    pub dump_weights: Option<bool>,
}

impl PartialConfig {
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))
    }

    /// Values set in `over` win.
    pub fn overlay(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            problem: over.problem.or(self.problem),
            re: over.re.or(self.re),
            nx: over.nx.or(self.nx),
            ny: over.ny.or(self.ny),
            dt: over.dt.or(self.dt),
            t_end: over.t_end.or(self.t_end),
            snapshots: over.snapshots.or(self.snapshots),
            out: over.out.or(self.out),
            mode: over.mode.or(self.mode),
            grids: over.grids.or(self.grids),
            table: over.table.or(self.table),
            dump_weights: over.dump_weights.or(self.dump_weights),
        }
    }
}

/// A validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub problem: String,
    pub re: f64,
    /// Interval counts; the grid has `nx + 1` by `ny + 1` nodes.
    pub nx: usize,
    pub ny: usize,
    pub dt: f64,
    pub t_end: f64,
    pub snapshots: Vec<f64>,
    pub out: PathBuf,
    pub grids: Vec<usize>,
    pub table: Option<u8>,
    pub dump_weights: bool,
}

fn default_re(problem: &str) -> f64 {
    match problem {
        "sincos" => 50.0,
        _ => 100.0,
    }
}

fn default_t_end(mode: Mode, problem: &str) -> f64 {
    match (mode, problem) {
        (Mode::Converge, _) => 1.0,
        (_, "sincos") => 0.625,
        _ => 0.5,
    }
}

impl RunConfig {
    /// Fills defaults and checks mode-specific requirements.
    pub fn resolve(p: PartialConfig) -> Result<Self> {
        let mode = p.mode.unwrap_or(Mode::Solve);
        let table = p.table;
        let table_problem = match (mode, table) {
            (Mode::TableCheck, None) => {
                return Err(Error::Config(
                    "table-check needs --table (2, 3 or 6)".into(),
                ))
            }
            (Mode::TableCheck, Some(id)) => Some(table_setup(id).ok_or_else(|| {
                Error::Config(format!("no reference table {id} (use 2, 3 or 6)"))
            })?),
            _ => None,
        };
        let problem = match table_problem {
            Some((name, _)) => name.to_string(),
            None => p.problem.unwrap_or_else(|| "fletcher".into()),
        };
        if !matches!(problem.as_str(), "fletcher" | "sincos") {
            return Err(Error::Config(format!(
                "unknown problem '{problem}' (expected 'fletcher' or 'sincos')"
            )));
        }
        if mode == Mode::Converge && problem != "fletcher" {
            return Err(Error::Config(format!(
                "converge needs a problem with an exact solution, not '{problem}'"
            )));
        }
        let re =
            p.re.or(table_problem.map(|(_, re)| re))
                .unwrap_or_else(|| default_re(&problem));
        let cfg = RunConfig {
            mode,
            re,
            nx: p.nx.unwrap_or(20),
            ny: p.ny.or(p.nx).unwrap_or(20),
            dt: p.dt.unwrap_or(1e-4),
            t_end: p.t_end.unwrap_or_else(|| default_t_end(mode, &problem)),
            snapshots: p.snapshots.unwrap_or_default(),
            out: p
                .out
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("out")),
            grids: p.grids.unwrap_or_else(|| DEFAULT_GRIDS.to_vec()),
            table,
            dump_weights: p.dump_weights.unwrap_or(false),
            problem,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        positive("re", self.re)?;
        positive("dt", self.dt)?;
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::Config(format!(
                "t-end must be non-negative, got {}",
                self.t_end
            )));
        }
        if self.nx < 3 || self.ny < 3 {
            return Err(Error::Config("nx and ny need at least 3 intervals".into()));
        }
        if self.mode == Mode::Converge {
            if self.grids.is_empty() || self.grids.iter().any(|&g| g < 3) {
                return Err(Error::Config("grids must list interval counts >= 3".into()));
            }
            if self.grids.windows(2).any(|w| w[1] != 2 * w[0]) {
                return Err(Error::Config(format!(
                    "grids {:?} must double at every step",
                    self.grids
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(PartialConfig {
            out: Some("o".into()),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(c.mode, Mode::Solve);
        assert_eq!(c.problem, "fletcher");
        assert_eq!(
            (c.re, c.nx, c.ny, c.dt, c.t_end),
            (100.0, 20, 20, 1e-4, 0.5)
        );
        assert_eq!(c.grids, DEFAULT_GRIDS.to_vec());
    }

    #[test]
    fn sincos_defaults() {
        let c = RunConfig::resolve(PartialConfig {
            problem: Some("sincos".into()),
            ..Default::default()
        })
        .unwrap();
        assert_eq!((c.re, c.t_end), (50.0, 0.625));
    }

    #[test]
    fn flags_override_file() {
        let file: PartialConfig = toml::from_str(
            "problem = \"sincos\"\nre = 100.0\nnx = 10\nmode = \"table-check\"\ntable = 6\n",
        )
        .unwrap();
        let flags = PartialConfig {
            re: Some(250.0),
            ..Default::default()
        };
        let c = RunConfig::resolve(file.overlay(flags)).unwrap();
        assert_eq!(c.re, 250.0);
        assert_eq!(c.nx, 10);
        assert_eq!(c.ny, 10);
        assert_eq!(c.mode, Mode::TableCheck);
    }

    #[test]
    fn unknown_file_keys_rejected() {
        assert!(toml::from_str::<PartialConfig>("reynolds = 3.0").is_err());
    }

    #[test]
    fn invalid_configs() {
        let bad = |p: PartialConfig| RunConfig::resolve(p).is_err();
        assert!(bad(PartialConfig {
            re: Some(0.0),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            dt: Some(-1.0),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            nx: Some(2),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            problem: Some("x".into()),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            mode: Some(Mode::Converge),
            problem: Some("sincos".into()),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            mode: Some(Mode::Converge),
            grids: Some(vec![4, 10]),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            mode: Some(Mode::TableCheck),
            ..Default::default()
        }));
        assert!(bad(PartialConfig {
            mode: Some(Mode::TableCheck),
            table: Some(4),
            ..Default::default()
        }));
    }

    #[test]
    fn table_check_picks_problem() {
        let c = RunConfig::resolve(PartialConfig {
            mode: Some(Mode::TableCheck),
            table: Some(6),
            ..Default::default()
        })
        .unwrap();
        assert_eq!((c.problem.as_str(), c.re), ("sincos", 50.0));
        assert_eq!("table-check".parse::<Mode>().unwrap(), Mode::TableCheck);
        assert!("x".parse::<Mode>().is_err());
    }
}
