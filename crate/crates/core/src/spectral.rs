//! Laplacian eigendecomposition, Moore–Penrose pseudo-inverse, spectral zeta
//! values and effective resistances.
//!
//! Everything downstream is assembled from a single ascending
//! [`LaplacianSpectrum`], so the pseudo-inverse is exactly symmetric and the
//! zero-eigenvalue threshold is applied consistently.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_connected, WeightedGraph};

/// A validated graph Laplacian `L = D - A`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    entries: DMatrix<f64>,
}

impl LaplacianMatrix {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let n = g.n();
        let mut entries = DMatrix::zeros(n, n);
        for e in g.edges() {
            entries[(e.i, e.j)] -= e.w;
            entries[(e.j, e.i)] -= e.w;
            entries[(e.i, e.i)] += e.w;
            entries[(e.j, e.j)] += e.w;
        }
        Self { entries }
    }

    /// Accepts an arbitrary square matrix after checking symmetry, zero row
    /// sums and non-positive off-diagonals to `1e-12 ‖L‖_F`.
    pub fn from_matrix(entries: DMatrix<f64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotLaplacian("matrix is not square".into()));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NotLaplacian("non-finite entry".into()));
        }
        let n = entries.nrows();
        let tol = 1e-12 * entries.norm().max(f64::MIN_POSITIVE);
        for i in 0..n {
            let row_sum: f64 = entries.row(i).iter().sum();
            if row_sum.abs() > tol {
                return Err(Error::NotLaplacian(format!("row {i} sums to {row_sum:e}")));
            }
            for j in 0..n {
                if (entries[(i, j)] - entries[(j, i)]).abs() > tol {
                    return Err(Error::NotLaplacian(format!("asymmetric at ({i}, {j})")));
                }
                if i != j && entries[(i, j)] > tol {
                    return Err(Error::NotLaplacian(format!("positive off-diagonal at ({i}, {j})")));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `‖L‖_F` from edge weights and degrees: `(2 Σ w_e² + Σ d_i²)^{1/2}`.
    pub fn frobenius_norm(&self) -> f64 {
        let n = self.n();
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..n {
            diag += self.entries[(i, i)].powi(2);
            for j in i + 1..n {
                off += self.entries[(i, j)].powi(2);
            }
        }
        (2.0 * off + diag).sqrt()
    }
}

/// Ascending eigenvalues with paired orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct LaplacianSpectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    zero_tolerance: f64,
}

pub fn decompose(l: &LaplacianMatrix) -> Result<LaplacianSpectrum> {
    let n = l.n();
    if n == 0 {
        return Err(Error::NotLaplacian("empty matrix".into()));
    }
    let eig = SymmetricEigen::try_new(l.matrix().clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigensolveFailure("no convergence".into()))?;
    if eig.eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigensolveFailure("non-finite eigenvalue".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    let lambda_max = eigenvalues[n - 1];
    let zero_tolerance = 64.0 * n as f64 * f64::EPSILON * lambda_max.max(1.0);
    Ok(LaplacianSpectrum { eigenvalues, eigenvectors, zero_tolerance })
}

/// Decomposes the Laplacian of a connected graph, requiring breadth-first and
/// spectral connectivity to agree.
pub fn graph_spectrum(g: &WeightedGraph) -> Result<LaplacianSpectrum> {
    let spectrum = decompose(&LaplacianMatrix::from_graph(g))?;
    let zero_modes = spectrum.zero_modes();
    match (is_connected(g), zero_modes) {
        (true, 1) => Ok(spectrum),
        (false, z) if z > 1 => Err(Error::Disconnected),
        (bfs, zero_modes) => Err(Error::ConnectivityMismatch { bfs, zero_modes }),
    }
}

impl LaplacianSpectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[self.n() - 1]
    }

    /// Number of eigenvalues within `[-τ, τ]`.
    pub fn zero_modes(&self) -> usize {
        self.eigenvalues.iter().filter(|l| l.abs() <= self.zero_tolerance).count()
    }

    /// Indices of the eigenvalues above `τ`.
    pub fn nonzero_modes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&k| self.eigenvalues[k] > self.zero_tolerance)
    }

    fn require_connected(&self) -> Result<()> {
        if self.zero_modes() == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// `Σ_{λ > τ} f(λ) u uᵀ`.
    fn spectral_sum(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let n = self.n();
        let mut out = DMatrix::zeros(n, n);
        for k in self.nonzero_modes() {
            let u = self.eigenvectors.column(k);
            out.ger(f(self.eigenvalues[k]), &u, &u, 1.0);
        }
        // exact symmetry
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (out[(i, j)] + out[(j, i)]);
                out[(i, j)] = avg;
                out[(j, i)] = avg;
            }
        }
        out
    }

    /// `L† = Σ_{λ > τ} λ⁻¹ u uᵀ`.
    pub fn pseudo_inverse(&self) -> Result<DMatrix<f64>> {
        self.require_connected()?;
        Ok(self.spectral_sum(|l| 1.0 / l))
    }

    /// `(L†)²`.
    pub fn pseudo_inverse_squared(&self) -> Result<DMatrix<f64>> {
        self.require_connected()?;
        Ok(self.spectral_sum(|l| 1.0 / (l * l)))
    }

    /// Symmetric square root `L^{1/2}`.
    pub fn sqrt(&self) -> DMatrix<f64> {
        self.spectral_sum(f64::sqrt)
    }

    /// `ζ(p) = Σ_{i ≥ 2} λ_i^{-p}`.
    pub fn zeta(&self, p: u32) -> Result<f64> {
        if p == 0 {
            return Err(Error::InvalidN { n: 0, reason: "zeta order must be positive".into() });
        }
        self.require_connected()?;
        Ok(self.nonzero_modes().map(|k| self.eigenvalues[k].powi(-(p as i32))).sum())
    }

    /// `Σ_{λ > τ} λ^{-p} uᵀ M u`: the trace `Tr(M (L†)^p)` without forming `L†`.
    pub fn weighted_trace(&self, m: &DMatrix<f64>, p: u32) -> Result<f64> {
        self.require_connected()?;
        if m.nrows() != self.n() || m.ncols() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: m.nrows() });
        }
        Ok(self
            .nonzero_modes()
            .map(|k| {
                let u = self.eigenvectors.column(k);
                u.dot(&(m * u)) * self.eigenvalues[k].powi(-(p as i32))
            })
            .sum())
    }

    pub fn effective_resistance(&self) -> Result<ResistanceMatrix> {
        let pinv = self.pseudo_inverse()?;
        Ok(ResistanceMatrix::from_pseudo_inverse(&pinv))
    }
}

/// Effective resistances `r_ij = l†_ii + l†_jj - 2 l†_ij`.
#[derive(Debug, Clone, Serialize)]
pub struct ResistanceMatrix {
    #[serde(serialize_with = "serialize_rows")]
    entries: DMatrix<f64>,
    total: f64,
}

impl ResistanceMatrix {
    pub fn from_pseudo_inverse(pinv: &DMatrix<f64>) -> Self {
        let n = pinv.nrows();
        let entries = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                0.0
            } else {
                (pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)]).max(0.0)
            }
        });
        let total = 0.5 * entries.sum();
        Self { entries, total }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `r_total = ½ 𝟙ᵀ R 𝟙`.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// `Σ_{e ∈ E} w_e r_e`, equal to `n - 1` on a connected graph.
    pub fn foster_sum(&self, g: &WeightedGraph) -> f64 {
        g.edges().iter().map(|e| e.w * self.get(e.i, e.j)).sum()
    }
}

/// Row-major nested arrays for debugging dumps.
pub fn serialize_rows<S: serde::Serializer>(
    m: &DMatrix<f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for r in 0..m.nrows() {
        let row: Vec<f64> = m.row(r).iter().copied().collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

/// Centering matrix `M_n = I - J/n`.
pub fn centering(n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64)
}
