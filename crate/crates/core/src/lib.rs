//! Steady-state disturbance-propagation measures of first- and second-order
//! linear consensus networks, the fundamental limits and sparsity tradeoffs
//! that bound them, and independent oracles (Lyapunov, Monte-Carlo,
//! exhaustive enumeration) that check both.
//!
//! ```
//! use coherence::graph::Family;
//! use coherence::measures::foc_centering;
//!
//! let p5 = Family::Path.build(&[5]).unwrap();
//! let rho = foc_centering(&p5).unwrap();
//! assert!((rho - 2.0).abs() < 1e-12);
//! ```

pub mod applications;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod measures;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{is_connected, WeightedGraph};
