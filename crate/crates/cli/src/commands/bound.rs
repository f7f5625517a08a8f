use nonrecip_core::bounds::{check_bound_interaction, check_bound_self, BoundChannel, BoundReport, KyMax};
use nonrecip_core::plate::PlateScene;
use nonrecip_core::spectral::{spectral_grid, QuadratureConfig};
use serde::Deserialize;
use serde_json::Value;

use crate::config::{parse, ValueGrid};
use crate::dataset::{Cell, Dataset};
use crate::error::CliError;

const DEFAULT_POINTS: usize = 400;

/// Lowest default frequency relative to the thermal cutoff.
const DEFAULT_SPAN: f64 = 1e-4;

fn default_channels() -> Vec<BoundChannel> {
    vec![BoundChannel::SelfForce, BoundChannel::Interaction]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundConfig {
    scene: PlateScene,
    #[serde(default)]
    ky_max: KyMax,
    #[serde(default = "default_channels")]
    channels: Vec<BoundChannel>,
    /// Frequencies, rad/s; defaults to a log grid refined at the resonances.
    #[serde(default)]
    omega: Option<ValueGrid>,
}

fn channel_label(channel: BoundChannel) -> &'static str {
    match channel {
        BoundChannel::SelfForce => "self_force",
        BoundChannel::Interaction => "interaction",
    }
}

pub fn run(value: Value, cfg: &QuadratureConfig) -> Result<Dataset, CliError> {
    let config: BoundConfig = parse(value)?;
    let scene = config.scene;
    let [t1, t2, _] = scene.temperatures();
    let grid = match &config.omega {
        Some(g) => {
            let w = g.values("omega")?;
            if let Some(i) = w.iter().position(|&x| x <= 0.0) {
                return Err(CliError::config(format!("omega[{i}]"), "frequencies must be positive"));
            }
            w
        }
        None => {
            let hi = cfg.omega_max(t1.max(t2).max(1.0));
            spectral_grid(DEFAULT_SPAN * hi, hi, DEFAULT_POINTS, &scene.resonances())
        }
    };
    let reports: Vec<BoundReport> = config
        .channels
        .iter()
        .map(|channel| match channel {
            BoundChannel::SelfForce => check_bound_self(&scene, t2, config.ky_max, grid.clone(), cfg),
            BoundChannel::Interaction => check_bound_interaction(&scene, t1, config.ky_max, grid.clone(), cfg),
        })
        .collect::<Result<_, _>>()?;

    let mut data = Dataset::new([
        "channel",
        "omega [rad/s]",
        "lhs [J/rad]",
        "rhs [J/rad]",
        "margin [J/rad]",
        "violated [bool]",
    ]);
    for report in &reports {
        let violations = report.violation_count();
        if violations > 0 {
            eprintln!(
                "warning: {} channel violates the bound at {violations} frequencies",
                channel_label(report.channel)
            );
        }
        for i in 0..report.omega_grid.len() {
            data.push(vec![
                Cell::from(channel_label(report.channel)),
                report.omega_grid[i].into(),
                report.lhs[i].into(),
                report.rhs[i].into(),
                report.margin[i].into(),
                report.violated[i].into(),
            ]);
        }
    }
    Ok(data)
}
