//! Scan configuration files.
//!
//! One `key = value` per line:
//!
//! ```text
//! a.min = 0.0
//! a.max = 1.0
//! a.steps = 12
//! q.min = 0.1        # max defaults to min, steps to 1
//! test.vconvex = true
//! test.kq = false
//! radius = 0.99
//! samples = 1024
//! ```
//!
//! Recognised top-level keys besides the ranges and `test.*` flags:
//! `radius`, `samples`, `kq_radii`, `kq_angles`, `kq_r_max`, `bn_terms`, `cap`.

use qheine_core::scanner::{GridSpec, Range, TestFlags};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeConfig {
    min: f64,
    max: Option<f64>,
    steps: Option<usize>,
}

impl From<RangeConfig> for Range {
    fn from(r: RangeConfig) -> Self {
        Range::new(r.min, r.max.unwrap_or(r.min), r.steps.unwrap_or(1))
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TestConfig {
    vconvex: Option<bool>,
    kq: Option<bool>,
    bn: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanConfig {
    a: RangeConfig,
    b: RangeConfig,
    c: RangeConfig,
    q: RangeConfig,
    #[serde(default)]
    test: TestConfig,
    radius: Option<f64>,
    samples: Option<usize>,
    kq_radii: Option<usize>,
    kq_angles: Option<usize>,
    kq_r_max: Option<f64>,
    bn_terms: Option<usize>,
    cap: Option<usize>,
}

/// Parses a config file into a grid, leaving validation to the scanner.
pub fn parse_grid(text: &str) -> Result<GridSpec, String> {
    let cfg: ScanConfig = toml::from_str(text).map_err(|e| e.message().to_string())?;
    let d = GridSpec::default();
    Ok(GridSpec {
        a: cfg.a.into(),
        b: cfg.b.into(),
        c: cfg.c.into(),
        q: cfg.q.into(),
        tests: TestFlags {
            vconvex: cfg.test.vconvex.unwrap_or(d.tests.vconvex),
            kq: cfg.test.kq.unwrap_or(d.tests.kq),
            bn: cfg.test.bn.unwrap_or(d.tests.bn),
        },
        radius: cfg.radius.unwrap_or(d.radius),
        samples: cfg.samples.unwrap_or(d.samples),
        kq_radii: cfg.kq_radii.unwrap_or(d.kq_radii),
        kq_angles: cfg.kq_angles.unwrap_or(d.kq_angles),
        kq_r_max: cfg.kq_r_max.unwrap_or(d.kq_r_max),
        bn_terms: cfg.bn_terms.unwrap_or(d.bn_terms),
        cap: cfg.cap.unwrap_or(d.cap),
    })
}
