//! Error type shared across the crate.

use std::path::PathBuf;
use thiserror::Error;

/// Errors produced by scenario handling, kernels and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// A scenario file failed validation. The message names every violated
    /// invariant, one per line.
    #[error("invalid scenario:\n{0}")]
    Validation(String),

    /// A file could not be parsed against its documented schema.
    #[error("parse error: {0}")]
    Parse(String),

    /// Mode index (0,0) is excluded from the index set.
    #[error("mode index (0,0) is excluded")]
    ZeroModeIndex,

    /// Invalid multiplicity branch for the given index pair.
    #[error("multiplicity index s={s} is invalid for mode ({n1},{n2})")]
    InvalidMultiplicity { n1: u32, n2: u32, s: u8 },

    /// |k^2 - lambda_n| fell below the cutoff guard; amplitude formulas
    /// divide by beta_n.
    #[error("mode ({n1},{n2}) is at cutoff: |k^2 - lambda| = {gap:.3e} below guard")]
    AtCutoff { n1: u32, n2: u32, gap: f64 },

    /// Two enumerated eigenvalues coincide within the distinctness guard.
    #[error("eigenvalues of ({0},{1}) and ({2},{3}) coincide within 1e-12 relative; (L1/L2)^2 looks rational")]
    DegenerateEigenvalues(u32, u32, u32, u32),

    /// Requested more modes than are available.
    #[error("requested {requested} modes but only {available} are available")]
    ModeBudget { requested: usize, available: usize },

    /// Green's function evaluated at coincident points.
    #[error("Green's function requested at coincident points")]
    CoincidentPoints,

    /// Empty mode set passed to a modal sum.
    #[error("empty mode set")]
    EmptyModeSet,

    /// A point lies outside the waveguide or on an excluded plane.
    #[error("evaluation point outside domain: {0}")]
    OutOfDomain(String),

    /// Operand shapes do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Matrix assembly would exceed the configured memory budget.
    #[error("sensing matrix needs {required} bytes but the budget is {budget}; decimate receivers or coarsen the grid")]
    MemoryBudget { required: u64, budget: u64 },

    /// A reflector rasterized to zero voxels of the target grid.
    #[error("reflector support rasterizes to zero voxels")]
    EmptyRasterization,

    /// An iteration diverged.
    #[error("numerical divergence: {0}")]
    Divergence(String),

    /// Operation needs a nonzero image but got all zeros.
    #[error("image is identically zero")]
    ZeroImage,

    /// Slice plane misses the imaging grid.
    #[error("slice plane {axis}={value} lies outside the imaging window")]
    PlaneOutsideGrid { axis: &'static str, value: f64 },

    /// A cached file no longer matches the hash recorded for it.
    #[error("stale cache: {0} does not match its recorded content hash")]
    StaleCache(PathBuf),

    /// A pipeline stage is missing one of its inputs.
    #[error("missing input: {0}")]
    MissingInput(String),

    /// Malformed binary file.
    #[error("bad file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of the numerics (divergence, non-convergence),
    /// as opposed to bad input. The CLI maps these to exit code 2.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Divergence(_))
    }
}
