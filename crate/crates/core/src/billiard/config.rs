//! TOML configuration for billiard runs.
//!
//! ```toml
//! horizon = 30.0
//! domain = [-12.0, -8.0, 12.0, 8.0]   # x_min, y_min, x_max, y_max
//!
//! [wormhole]
//! mouth_a = [0.0, 2.5]
//! mouth_b = [0.0, -2.5]
//! radius = 1.0
//! dt = 5.0
//! frame_map = "identity"   # "mirror", { rotation = 0.5, mirror = true }, { matrix = [[1, 0], [0, 1]] }
//!
//! [ball]
//! position = [-8.0, 0.0]
//! velocity = [1.0, 0.0]
//! radius = 0.25
//! mass = 1.0
//!
//! [solver]
//! grid = 12
//! ```

use serde::Deserialize;

use super::{BallState, BilliardConfig, BilliardError, Domain, FrameMap, SolverOptions, Vec2, WormholeSpec};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FrameMapConfig {
    Named(String),
    Rotation {
        rotation: f64,
        #[serde(default)]
        mirror: bool,
    },
    Matrix {
        matrix: [[f64; 2]; 2],
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WormholeConfig {
    mouth_a: [f64; 2],
    mouth_b: [f64; 2],
    radius: f64,
    dt: f64,
    #[serde(default)]
    frame_map: Option<FrameMapConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BallConfig {
    position: [f64; 2],
    velocity: [f64; 2],
    radius: f64,
    mass: f64,
    #[serde(default)]
    time: f64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverConfig {
    grid: Option<usize>,
    basin_threshold: Option<f64>,
    tolerance: Option<f64>,
    dedup_radius: Option<f64>,
    max_events: Option<usize>,
    max_iterations: Option<usize>,
    speed_range: Option<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    wormhole: WormholeConfig,
    ball: BallConfig,
    domain: [f64; 4],
    horizon: f64,
    #[serde(default)]
    solver: SolverConfig,
}

/// A parsed and validated billiard configuration with its solver options.
#[derive(Debug, Clone, PartialEq)]
pub struct BilliardFile {
    pub config: BilliardConfig<f64>,
    pub solver: SolverOptions<f64>,
}

fn frame_map(f: Option<FrameMapConfig>) -> Result<FrameMap<f64>, BilliardError> {
    Ok(match f {
        None => FrameMap::identity(),
        Some(FrameMapConfig::Named(n)) => match n.as_str() {
            "identity" => FrameMap::identity(),
            "mirror" => FrameMap::mirrored(0.0),
            other => return Err(BilliardError::Config(format!("unknown frame_map `{other}`"))),
        },
        Some(FrameMapConfig::Rotation { rotation, mirror: false }) => FrameMap::rotation(rotation),
        Some(FrameMapConfig::Rotation { rotation, mirror: true }) => FrameMap::mirrored(rotation),
        Some(FrameMapConfig::Matrix { matrix }) => FrameMap { m: matrix },
    })
}

pub fn parse_billiard(text: &str) -> Result<BilliardFile, BilliardError> {
    let f: FileConfig = toml::from_str(text).map_err(|e| BilliardError::Config(e.to_string().trim_end().to_owned()))?;
    let [x0, y0, x1, y1] = f.domain;
    if !(x0 < x1 && y0 < y1) {
        return Err(BilliardError::Config("domain must be [x_min, y_min, x_max, y_max]".into()));
    }
    let config = BilliardConfig {
        wormhole: WormholeSpec {
            mouth_a: f.wormhole.mouth_a.into(),
            mouth_b: f.wormhole.mouth_b.into(),
            radius: f.wormhole.radius,
            time_shift: f.wormhole.dt,
            frame_map: frame_map(f.wormhole.frame_map)?,
        },
        initial_ball: BallState {
            position: f.ball.position.into(),
            velocity: f.ball.velocity.into(),
            radius: f.ball.radius,
            mass: f.ball.mass,
            birth_time: f.ball.time,
        },
        horizon: f.horizon,
        domain: Domain { min: Vec2::new(x0, y0), max: Vec2::new(x1, y1) },
    };
    config.validate()?;
    let d = SolverOptions::default();
    let s = f.solver;
    let solver = SolverOptions {
        grid: s.grid.unwrap_or(d.grid),
        basin_threshold: s.basin_threshold.unwrap_or(d.basin_threshold),
        tolerance: s.tolerance.unwrap_or(d.tolerance),
        dedup_radius: s.dedup_radius.unwrap_or(d.dedup_radius),
        max_events: s.max_events.unwrap_or(d.max_events),
        max_iterations: s.max_iterations.unwrap_or(d.max_iterations),
        speed_range: s.speed_range.map_or(d.speed_range, |r| (r[0], r[1])),
    };
    solver.validate()?;
    Ok(BilliardFile { config, solver })
}
