//! Run configuration: built-in defaults, then RWC_LAB_THREADS, then an
//! optional JSON file, then command-line flags.

use std::path::{Path, PathBuf};

use rwclab::mainterm::ResidueContours;
use rwclab::moments::GridResolution;
use rwclab::quad::ContourSpec;
use serde::Deserialize;

use crate::report::Format;

pub const THREADS_ENV: &str = "RWC_LAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub voronoi_tau: f64,
    pub voronoi_shifted: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { voronoi_tau: 1e-6, voronoi_shifted: 1e-4 }
    }
}

/// Contents of a --config file. Every key is optional.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "T")]
    pub t: Option<Vec<f64>>,
    #[serde(rename = "Y")]
    pub y: Option<f64>,
    pub k: Option<u32>,
    pub resolution: Option<GridResolution>,
    pub kernel_contour: Option<ContourSpec>,
    pub residue_contours: Option<ResidueContours>,
    pub tolerances: Option<Tolerances>,
    pub eps: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub parallelism: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Settings shared by every subcommand after merging all sources.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub file: FileConfig,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub parallelism: usize,
    pub resolution: GridResolution,
    pub kernel_contour: ContourSpec,
    pub residue_contours: ResidueContours,
    pub tolerances: Tolerances,
}

fn env_threads() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .map(Some)
            .ok_or_else(|| format!("{THREADS_ENV}={v:?} is not a positive integer")),
        Err(_) => Ok(None),
    }
}

impl RunConfig {
    pub fn resolve(
        file: Option<&Path>,
        out: Option<PathBuf>,
        format: Option<Format>,
        parallelism: Option<usize>,
    ) -> Result<Self, String> {
        let file = match file {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let default_threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        let parallelism = parallelism.or(file.parallelism).or(env_threads()?).unwrap_or(default_threads);
        if parallelism == 0 {
            return Err("parallelism must be at least 1".into());
        }
        let cfg = RunConfig {
            out: out.or_else(|| file.out.clone()),
            format: format.or(file.format),
            parallelism,
            resolution: file.resolution.unwrap_or_default(),
            kernel_contour: file.kernel_contour.unwrap_or(rwclab::mainterm::KERNEL_CONTOUR),
            residue_contours: file.residue_contours.unwrap_or_default(),
            tolerances: file.tolerances.unwrap_or_default(),
            file,
        };
        cfg.kernel_contour.validate().map_err(|e| e.to_string())?;
        cfg.residue_contours.s1.validate().map_err(|e| e.to_string())?;
        cfg.residue_contours.s2.validate().map_err(|e| e.to_string())?;
        let t = &cfg.tolerances;
        if !(t.voronoi_tau > 0.0 && t.voronoi_shifted > 0.0) {
            return Err("tolerances must be positive".into());
        }
        Ok(cfg)
    }

    pub fn par(&self) -> rwclab::Parallelism {
        rwclab::Parallelism::from_threads(self.parallelism)
    }
}
