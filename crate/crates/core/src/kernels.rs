//! Trigonometric tables shared by the modal-sum kernels.
//!
//! Every hot loop (reference-field sweeps, data synthesis, RTM, sensing
//! matrix assembly) evaluates eigenfunctions on tensor grids. The axis
//! factors `sin(pi n x / L)` / `cos(pi n x / L)` are precomputed once per
//! (mode, axis coordinate) so the inner loops reduce to multiply-adds.

use crate::modes::ModeEntry;

/// Per-axis trig tables, layout `[mode * len + coord]`.
pub(crate) struct AxisTables {
    pub sin: Vec<f64>,
    pub cos: Vec<f64>,
    pub len: usize,
}

impl AxisTables {
    /// Tables along cross-range axis 0 (`kn1`) or 1 (`kn2`).
    pub fn build(modes: &[ModeEntry], coords: &[f64], axis: usize) -> Self {
        let len = coords.len();
        let mut sin = vec![0.0; modes.len() * len];
        let mut cos = vec![0.0; modes.len() * len];
        for (m, entry) in modes.iter().enumerate() {
            let kn = if axis == 0 { entry.kn1 } else { entry.kn2 };
            for (i, &x) in coords.iter().enumerate() {
                let (s, c) = (kn * x).sin_cos();
                sin[m * len + i] = s;
                cos[m * len + i] = c;
            }
        }
        Self { sin, cos, len }
    }

    #[inline]
    pub fn at(&self, mode: usize, i: usize) -> (f64, f64) {
        let idx = mode * self.len + i;
        (self.sin[idx], self.cos[idx])
    }
}

/// The three per-mode eigenfunction products needed on a cross-range point:
/// `(c1*s2, s1*c2, s1*s2)`. For simple modes the first two slots carry the
/// single surviving sine so the caller can use one code path; see
/// [`crate::modes::ModeEntry::eval_tabulated`] for the branch layout.
#[inline]
pub(crate) fn cross_products(s1: f64, c1: f64, s2: f64, c2: f64) -> (f64, f64, f64) {
    (c1 * s2, s1 * c2, s1 * s2)
}
