//! User-defined surfaces in TOML.
//!
//! ```toml
//! name = "hemisphere-plus-gaussian"
//! genus = 0
//! ends = 1
//! core = "analytic:6.283185307179586"   # or "polar-cap"
//! chi = 1                                # optional, checked against genus/ends
//! h1_hint = 0.0                          # optional
//!
//! [[end]]
//! g = "exp(t^2)"
//! t_min = 0.0
//! ```
//!
//! An analytic core meets each end at that end's `t_min`.

use std::path::Path;

use serde::Deserialize;

use crate::dsl::parse_metric;
use crate::error::InputError;
use crate::model::{euler_char, CoreDescriptor, EndChart, SurfaceModel, Topology};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default)]
    pub genus: u32,
    pub ends: u32,
    pub core: String,
    pub chi: Option<i64>,
    pub h1_hint: Option<f64>,
    #[serde(rename = "end", default)]
    pub end_tables: Vec<EndConfig>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndConfig {
    pub g: String,
    #[serde(default)]
    pub t_min: f64,
}

fn default_name() -> String {
    "config".into()
}

fn parse_core(spec: &str, ends: &[EndConfig]) -> Result<CoreDescriptor, InputError> {
    let spec = spec.trim();
    if spec == "polar-cap" {
        return Ok(CoreDescriptor::PolarCap);
    }
    let Some(value) = spec.strip_prefix("analytic:") else {
        return Err(InputError::Config(format!(
            "core must be `polar-cap` or `analytic:<value>`, got `{spec}`"
        )));
    };
    let v: f64 = value.trim().parse().map_err(|_| {
        InputError::Config(format!("analytic core value `{value}` is not a number"))
    })?;
    Ok(CoreDescriptor::analytic(
        v,
        ends.iter().map(|e| e.t_min).collect(),
    ))
}

impl SurfaceConfig {
    pub fn from_toml(text: &str) -> Result<Self, InputError> {
        toml::from_str(text).map_err(|e| InputError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn into_model(self) -> Result<SurfaceModel, InputError> {
        if self.end_tables.len() != self.ends as usize {
            return Err(InputError::Config(format!(
                "ends = {} but {} [[end]] tables given",
                self.ends,
                self.end_tables.len()
            )));
        }
        let topology = Topology::new(self.genus, self.ends);
        let chi = euler_char(&topology);
        if let Some(declared) = self.chi {
            if declared != chi {
                return Err(InputError::Config(format!(
                    "declared chi = {declared} but genus {} with {} ends gives chi = {chi}",
                    self.genus, self.ends
                )));
            }
        }
        let core = parse_core(&self.core, &self.end_tables)?;
        let mut charts = Vec::with_capacity(self.end_tables.len());
        for e in &self.end_tables {
            charts.push(EndChart::from_expr(parse_metric(&e.g)?, e.t_min));
        }
        let mut model = SurfaceModel::new(self.name, topology, charts, core);
        model.hypothesis_hint = self.h1_hint;
        Ok(model)
    }
}

pub fn load_model(path: &Path) -> Result<SurfaceModel, InputError> {
    SurfaceConfig::load(path)?.into_model()
}
