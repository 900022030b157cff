//! Monte-Carlo estimates of the measures by direct simulation of the
//! noise-driven disagreement dynamics.
//!
//! Each trajectory owns a ChaCha stream keyed by `(seed, trajectory)`, and
//! per-trajectory averages are reduced in index order, so results do not
//! depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::ConsensusSystem;
use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::measures::{OutputGraph, OutputKind, SocType};
use crate::spectral::graph_spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub burn_in: f64,
    pub trajectories: usize,
    pub seed: u64,
    /// Scales the Brownian increments; `0.0` gives the unforced system.
    pub noise: f64,
}

impl SimConfig {
    /// `dt = min(1e-3, 0.05 / ω)`, `T = 200`, burn-in 20, 64 trajectories,
    /// where `ω` is the largest modal rate of the system.
    pub fn for_system(system: &ConsensusSystem) -> Result<Self> {
        let rate = max_modal_rate(system)?;
        let dt = if rate > 0.0 { (0.05 / rate).min(1e-3) } else { 1e-3 };
        Ok(Self { dt, horizon: 200.0, burn_in: 20.0, trajectories: 64, seed: 0, noise: 1.0 })
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSimConfig(msg.to_string()));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt must be positive");
        }
        if !(self.burn_in >= 0.0 && self.burn_in < self.horizon && self.horizon.is_finite()) {
            return bad("need 0 <= burn_in < horizon");
        }
        if self.horizon - self.burn_in < self.dt {
            return bad("averaging window shorter than one step");
        }
        if self.trajectories < 2 {
            return bad("need at least two trajectories");
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return bad("noise intensity must be nonnegative");
        }
        Ok(())
    }
}

/// Largest `|s|` over the modes `s + λ` (first order) or
/// `s² + c s + λ` (second order, `c = β` or `βλ`).
pub fn max_modal_rate(system: &ConsensusSystem) -> Result<f64> {
    let g = system.coupling();
    if g.n() == 1 {
        return Ok(0.0);
    }
    let spectrum = graph_spectrum(g)?;
    let lambdas = spectrum.nonzero_modes().map(|k| spectrum.eigenvalues()[k]);
    Ok(match system {
        ConsensusSystem::Foc { .. } => spectrum.lambda_max(),
        ConsensusSystem::Soc(s) => lambdas
            .map(|lambda| {
                let c = match s.soc_type {
                    SocType::Type1 => s.beta,
                    SocType::Type2 => s.beta * lambda,
                };
                let disc = c * c - 4.0 * lambda;
                if disc < 0.0 {
                    lambda.sqrt()
                } else {
                    (c + disc.sqrt()) / 2.0
                }
            })
            .fold(0.0, f64::max),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub closed_form: f64,
    pub trajectories: usize,
    pub dt: f64,
}

impl MonteCarloEstimate {
    /// Whether the closed form lies within `k` standard errors.
    pub fn within(&self, k: f64) -> bool {
        (self.estimate - self.closed_form).abs() <= k * self.stderr
    }
}

/// Quadratic form `zᵀ L_Q z`, specialised for the centering output.
enum Energy {
    Zero,
    Centering,
    Dense(Vec<(usize, usize, f64)>),
}

impl Energy {
    fn new(q: &OutputGraph) -> Self {
        if q.kind() == OutputKind::Centering {
            return Energy::Centering;
        }
        let l = q.laplacian();
        let entries: Vec<_> = (0..l.nrows())
            .flat_map(|i| (0..l.ncols()).map(move |j| (i, j)))
            .filter(|&(i, j)| l[(i, j)] != 0.0)
            .map(|(i, j)| (i, j, l[(i, j)]))
            .collect();
        if entries.is_empty() {
            Energy::Zero
        } else {
            Energy::Dense(entries)
        }
    }

    fn eval(&self, z: &[f64]) -> f64 {
        match self {
            Energy::Zero => 0.0,
            Energy::Centering => {
                let mean = z.iter().sum::<f64>() / z.len() as f64;
                z.iter().map(|v| (v - mean) * (v - mean)).sum()
            }
            Energy::Dense(entries) => entries.iter().map(|&(i, j, w)| z[i] * w * z[j]).sum(),
        }
    }
}

fn laplacian_apply(edges: &[Edge], x: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for e in edges {
        let d = e.w * (x[e.i] - x[e.j]);
        out[e.i] += d;
        out[e.j] -= d;
    }
}

/// Centered Gaussian increment `M_n ξ √dt · noise`.
fn projected_noise(rng: &mut ChaCha8Rng, scale: f64, out: &mut [f64]) {
    for v in out.iter_mut() {
        *v = StandardNormal.sample(rng);
    }
    let mean = out.iter().sum::<f64>() / out.len() as f64;
    for v in out.iter_mut() {
        *v = (*v - mean) * scale;
    }
}

/// Time average of `yᵀy` after burn-in with `y = L_Q^{1/2} z`, evaluated as
/// `zᵀ L_Q z`.
fn trajectory(system: &ConsensusSystem, cfg: &SimConfig, index: usize) -> f64 {
    let g = system.coupling();
    let n = g.n();
    let edges = g.edges();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let steps = (cfg.horizon / cfg.dt).round() as usize;
    let burn = (cfg.burn_in / cfg.dt).round() as usize;
    let scale = cfg.noise * cfg.dt.sqrt();
    let dt = cfg.dt;
    let mut x = vec![0.0; n];
    let mut lx = vec![0.0; n];
    let mut xi = vec![0.0; n];
    let mut total = 0.0;
    match system {
        ConsensusSystem::Foc { output, .. } => {
            let energy = Energy::new(output);
            for step in 0..steps {
                laplacian_apply(edges, &x, &mut lx);
                projected_noise(&mut rng, scale, &mut xi);
                for k in 0..n {
                    x[k] += -lx[k] * dt + xi[k];
                }
                if step >= burn {
                    total += energy.eval(&x);
                }
            }
        }
        ConsensusSystem::Soc(s) => {
            let (ex, ev) = (Energy::new(&s.q_x), Energy::new(&s.q_v));
            let mut v = vec![0.0; n];
            let mut lv = vec![0.0; n];
            for step in 0..steps {
                laplacian_apply(edges, &x, &mut lx);
                match s.soc_type {
                    SocType::Type1 => lv.copy_from_slice(&v),
                    SocType::Type2 => laplacian_apply(edges, &v, &mut lv),
                }
                projected_noise(&mut rng, scale, &mut xi);
                // semi-implicit Euler-Maruyama: velocity first, then position
                for k in 0..n {
                    v[k] += -(lx[k] + s.beta * lv[k]) * dt + xi[k];
                    x[k] += v[k] * dt;
                }
                if step >= burn {
                    total += ex.eval(&x) + ev.eval(&v);
                }
            }
        }
    }
    total / steps.saturating_sub(burn).max(1) as f64
}

pub fn monte_carlo_measure(system: &ConsensusSystem, cfg: &SimConfig) -> Result<MonteCarloEstimate> {
    cfg.validate()?;
    let closed_form = system.closed_form()?;
    let rate = max_modal_rate(system)?;
    if rate > 0.0 {
        let limit = 0.1 / rate;
        if cfg.dt > limit {
            return Err(Error::UnstableStep { dt: cfg.dt, limit });
        }
    }
    let averages: Vec<f64> = (0..cfg.trajectories)
        .into_par_iter()
        .map(|k| trajectory(system, cfg, k))
        .collect();
    let count = averages.len() as f64;
    let estimate = averages.iter().sum::<f64>() / count;
    let variance = averages.iter().map(|a| (a - estimate).powi(2)).sum::<f64>() / (count - 1.0);
    Ok(MonteCarloEstimate {
        estimate,
        stderr: (variance / count).sqrt(),
        closed_form,
        trajectories: cfg.trajectories,
        dt: cfg.dt,
    })
}
