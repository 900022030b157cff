//! Measures from the steady-state Gramian of the disagreement dynamics.
//!
//! The consensus direction is projected out with an explicit orthonormal
//! (Helmert) basis of `1⊥`, so nothing here depends on the Laplacian
//! eigendecomposition used by the closed forms.

use nalgebra::DMatrix;

use super::ConsensusSystem;
use crate::error::{Error, Result};
use crate::graph::is_connected;
use crate::measures::SocType;
use crate::spectral::LaplacianMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovSolution {
    pub gramian: DMatrix<f64>,
    /// `‖A P + P Aᵀ + Q‖_F`.
    pub residual: f64,
}

/// Solves `A P + P Aᵀ + Q = 0` for symmetric `P` through the dense linear
/// system on the upper triangle of `P`.
pub fn solve_lyapunov(a: &DMatrix<f64>, q: &DMatrix<f64>) -> Result<LyapunovSolution> {
    let k = a.nrows();
    if a.ncols() != k || q.nrows() != k || q.ncols() != k {
        return Err(Error::DimensionMismatch { expected: k, got: q.nrows() });
    }
    let idx = |i: usize, j: usize| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * k - i * (i + 1) / 2 + j
    };
    let size = k * (k + 1) / 2;
    let mut m = DMatrix::<f64>::zeros(size, size);
    let mut rhs = nalgebra::DVector::<f64>::zeros(size);
    for i in 0..k {
        for j in i..k {
            let r = idx(i, j);
            rhs[r] = -q[(i, j)];
            for l in 0..k {
                let ail = a[(i, l)];
                if ail != 0.0 {
                    m[(r, idx(l, j))] += ail;
                }
                let ajl = a[(j, l)];
                if ajl != 0.0 {
                    m[(r, idx(i, l))] += ajl;
                }
            }
        }
    }
    let x = m.lu().solve(&rhs).ok_or(Error::SingularSystem)?;
    let gramian = DMatrix::from_fn(k, k, |i, j| x[idx(i, j)]);
    let residual = (a * &gramian + &gramian * a.transpose() + q).norm();
    let tolerance = 1e-8 * gramian.norm().max(1.0);
    if residual.is_nan() || residual > tolerance {
        return Err(Error::LyapunovResidualTooLarge { residual, tolerance });
    }
    Ok(LyapunovSolution { gramian, residual })
}

/// Orthonormal basis of the complement of the all-ones vector (`n × (n-1)`).
pub fn helmert_basis(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n.saturating_sub(1), |row, col| {
        let k = (col + 1) as f64;
        let scale = 1.0 / (k * (k + 1.0)).sqrt();
        match row.cmp(&(col + 1)) {
            std::cmp::Ordering::Less => scale,
            std::cmp::Ordering::Equal => -k * scale,
            std::cmp::Ordering::Greater => 0.0,
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovMeasure {
    pub position: f64,
    pub velocity: f64,
    pub total: f64,
    pub solution: LyapunovSolution,
    basis: DMatrix<f64>,
}

impl LyapunovMeasure {
    /// Position-block Gramian mapped back to node coordinates, `V P_xx Vᵀ`.
    pub fn pullback(&self) -> DMatrix<f64> {
        let k = self.basis.ncols();
        let pxx = self.solution.gramian.view((0, 0), (k, k));
        &self.basis * pxx * self.basis.transpose()
    }
}

pub fn lyapunov_measure(system: &ConsensusSystem) -> Result<LyapunovMeasure> {
    let g = system.coupling();
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let v = helmert_basis(n);
    if n == 1 {
        let solution = LyapunovSolution { gramian: DMatrix::zeros(0, 0), residual: 0.0 };
        return Ok(LyapunovMeasure { position: 0.0, velocity: 0.0, total: 0.0, solution, basis: v });
    }
    let k = n - 1;
    let l = LaplacianMatrix::from_graph(g);
    let lr = v.transpose() * l.matrix() * &v;
    let reduce = |q: &DMatrix<f64>| v.transpose() * q * &v;
    match system {
        ConsensusSystem::Foc { output, .. } => {
            if output.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: output.n() });
            }
            let solution = solve_lyapunov(&(-&lr), &DMatrix::identity(k, k))?;
            let position = (reduce(output.laplacian()) * &solution.gramian).trace();
            Ok(LyapunovMeasure { position, velocity: 0.0, total: position, solution, basis: v })
        }
        ConsensusSystem::Soc(s) => {
            let damping = match s.soc_type {
                SocType::Type1 => DMatrix::identity(k, k) * s.beta,
                SocType::Type2 => &lr * s.beta,
            };
            let mut a = DMatrix::zeros(2 * k, 2 * k);
            a.view_mut((0, k), (k, k)).copy_from(&DMatrix::identity(k, k));
            a.view_mut((k, 0), (k, k)).copy_from(&(-&lr));
            a.view_mut((k, k), (k, k)).copy_from(&(-damping));
            let mut q = DMatrix::zeros(2 * k, 2 * k);
            q.view_mut((k, k), (k, k)).fill_with_identity();
            let solution = solve_lyapunov(&a, &q)?;
            let pxx = solution.gramian.view((0, 0), (k, k)).into_owned();
            let pvv = solution.gramian.view((k, k), (k, k)).into_owned();
            let position = (reduce(s.q_x.laplacian()) * pxx).trace();
            let velocity = (reduce(s.q_v.laplacian()) * pvv).trace();
            Ok(LyapunovMeasure { position, velocity, total: position + velocity, solution, basis: v })
        }
    }
}
