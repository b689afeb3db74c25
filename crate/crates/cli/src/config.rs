//! Run configuration: JSON document with CLI-flag overrides. A single
//! seed drives every random draw in a run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use pzlab_core::points::ResidueSpec;
use pzlab_core::synth;
use pzlab_core::zeros::ZeroTable;

use crate::errors::{input, CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scales: Vec<f64>,
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub sigma: f64,
    pub bootstrap_n: usize,
    pub seed: u64,
    pub zeros_path: Option<PathBuf>,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scales: synth::paper_scales(),
            modulus: 16,
            residues: vec![1, 5, 9, 13],
            sigma: 0.8,
            bootstrap_n: 1000,
            seed: 0,
            zeros_path: None,
            output_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let raw = std::fs::read_to_string(path)
            .map_err(|e| input(format!("config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&raw)
            .map_err(|e| input(format!("config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        for w in self.scales.windows(2) {
            if !(w[0] < w[1]) {
                return Err(input("config scales must be ascending"));
            }
        }
        if self.bootstrap_n < 100 {
            return Err(input("config bootstrap_n must be >= 100"));
        }
        if !(self.sigma > 0.0) {
            return Err(input("config sigma must be positive"));
        }
        Ok(())
    }

    pub fn residue_spec(&self) -> CliResult<ResidueSpec> {
        ResidueSpec::new(self.modulus, self.residues.iter().copied())
            .map_err(|e| input(format!("residue spec: {e}")))
    }

    /// Load the configured zero table, or the vendored canonical table.
    pub fn zero_table(&self) -> CliResult<ZeroTable> {
        match &self.zeros_path {
            Some(p) => ZeroTable::parse_file(p).map_err(|e| match e {
                pzlab_core::Error::Io(io) => input(format!("zeros {}: {io}", p.display())),
                other => input(format!("zeros {}: {other}", p.display())),
            }),
            None => Ok(ZeroTable::canonical().clone()),
        }
    }
}

/// Flag overrides shared by the commands that consume a RunConfig.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ConfigOverrides {
    /// JSON configuration file; flags below override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Odlyzko-format zeros file (default: vendored first-2600 table).
    #[arg(long, global = true)]
    pub zeros: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Master seed for all resampling streams.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Bootstrap resample count.
    #[arg(long, global = true)]
    pub bootstrap: Option<usize>,
    /// Gaussian blur width for the zero potential.
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// Residue modulus.
    #[arg(long = "mod", global = true)]
    pub modulus: Option<u64>,
    /// Comma-separated residue list, e.g. 1,5,9,13.
    #[arg(long, global = true, value_delimiter = ',')]
    pub residues: Option<Vec<u64>>,
    /// Comma-separated scale list, e.g. 100,200,500.
    #[arg(long, global = true, value_delimiter = ',')]
    pub scales: Option<Vec<f64>>,
    /// Omit the timestamp comment from SVG outputs.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

impl ConfigOverrides {
    pub fn resolve(&self) -> CliResult<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(z) = &self.zeros {
            cfg.zeros_path = Some(z.clone());
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(b) = self.bootstrap {
            cfg.bootstrap_n = b;
        }
        if let Some(s) = self.sigma {
            cfg.sigma = s;
        }
        if let Some(m) = self.modulus {
            cfg.modulus = m;
        }
        if let Some(r) = &self.residues {
            cfg.residues = r.clone();
        }
        if let Some(s) = &self.scales {
            cfg.scales = s.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

pub fn ensure_out_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config_file() {
        let dir = std::env::temp_dir().join("pzlab_cfg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.json");
        std::fs::write(
            &path,
            r#"{"scales": [100.0, 200.0], "sigma": 0.5, "seed": 7, "bootstrap_n": 150}"#,
        )
        .unwrap();
        let overrides = ConfigOverrides {
            config: Some(path),
            sigma: Some(1.25),
            scales: Some(vec![300.0, 400.0, 500.0]),
            ..Default::default()
        };
        let cfg = overrides.resolve().unwrap();
        assert_eq!(cfg.sigma, 1.25);
        assert_eq!(cfg.scales, vec![300.0, 400.0, 500.0]);
        // untouched fields keep the file's values
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.bootstrap_n, 150);
    }

    #[test]
    fn descending_scales_rejected() {
        let overrides = ConfigOverrides {
            scales: Some(vec![500.0, 300.0]),
            ..Default::default()
        };
        assert!(overrides.resolve().is_err());
    }
}
