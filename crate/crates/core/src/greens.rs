//! Modal vector Green's functions and the dyadic Green's tensor.
//!
//! Column `j` of the tensor is `G_j + k^{-2} grad div G_j` where the vector
//! functions `G_j` are modal sums with axial kernel
//!
//! ```text
//! h_sigma(x3, y3) = [ e^{i b |x3-y3|} + sigma e^{-i b (x3+y3)} ] / (2 i b)
//! ```
//!
//! with `sigma = -1` for the transverse branches (s = 1, 2) and `+1` for the
//! longitudinal branch (s = 3). The second, image-like term enforces the end
//! wall; the infinite-waveguide variant deletes it. `grad div` is applied
//! per mode in closed form:
//!
//! ```text
//! grad div (g Phi1) = 0
//! grad div (g Phi2) = -lam g Phi2 - lam g' Phi3
//! grad div (g Phi3) =      g' Phi2 +     g'' Phi3
//! ```
//!
//! so no numerical differentiation enters the tensor anywhere.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{czero33, CMat3, CVec3, Vec3, C_I, C_ZERO};
use crate::modes::ModeEntry;
use crate::reference::Variant;

/// Axial kernel and its first two range derivatives (with respect to `x3`).
/// No kink guard: callers keep `x3 != y3`.
#[inline]
pub(crate) fn axial_kernel(
    beta: Complex64,
    x3: f64,
    y3: f64,
    sigma: f64,
    variant: Variant,
) -> (Complex64, Complex64, Complex64) {
    let two_i_beta = 2.0 * C_I * beta;
    let d = x3 - y3;
    let sgn = if d >= 0.0 { 1.0 } else { -1.0 };
    let e_abs = (C_I * beta * d.abs()).exp();
    let (h, dh) = match variant {
        Variant::Terminating => {
            let e_img = (-C_I * beta * (x3 + y3)).exp();
            (
                (e_abs + sigma * e_img) / two_i_beta,
                (sgn * e_abs - sigma * e_img) / 2.0,
            )
        }
        Variant::Infinite => (e_abs / two_i_beta, sgn * e_abs / 2.0),
    };
    (h, dh, -beta * beta * h)
}

#[inline]
fn sigma_of(s: u8) -> f64 {
    if s == 3 {
        1.0
    } else {
        -1.0
    }
}

/// Modal Green's machinery over a fixed mode set.
///
/// The mode set decides the flavor: the propagating prefix gives the
/// far-field tensor used at the array, a set enumerated up to an evanescent
/// cutoff gives the full tensor for interior interactions.
pub struct GreensEvaluator<'a> {
    pub modes: &'a [ModeEntry],
    pub k: f64,
    pub variant: Variant,
}

impl<'a> GreensEvaluator<'a> {
    pub fn new(modes: &'a [ModeEntry], k: f64, variant: Variant) -> Self {
        Self { modes, k, variant }
    }

    fn check_points(&self, x: &Vec3, y: &Vec3) -> Result<()> {
        if self.modes.is_empty() {
            return Err(Error::EmptyModeSet);
        }
        if x == y {
            return Err(Error::CoincidentPoints);
        }
        Ok(())
    }

    /// Axial kernel of mode `entry`, branch `s`, and its first and second
    /// range derivatives. Errors on the kink line `x3 = y3`.
    pub fn axial_profile_derivatives(
        &self,
        entry: &ModeEntry,
        s: u8,
        x3: f64,
        y3: f64,
    ) -> Result<(Complex64, Complex64, Complex64)> {
        if x3 == y3 {
            return Err(Error::CoincidentPoints);
        }
        if s == 0 || s > entry.multiplicity {
            return Err(Error::InvalidMultiplicity { n1: entry.n1, n2: entry.n2, s });
        }
        Ok(axial_kernel(entry.beta, x3, y3, sigma_of(s), self.variant))
    }

    /// Vector Green's function `G_j(x, y)`: the raw modal sum, without the
    /// `grad div` completion. Kept close to the defining series so it can
    /// cross-check the closed-form tensor by finite differences.
    pub fn vector_green(&self, j: usize, x: Vec3, y: Vec3) -> Result<CVec3> {
        assert!(j < 3, "column index must be 0, 1 or 2");
        self.check_points(&x, &y)?;
        let mut out = [C_ZERO; 3];
        for entry in self.modes {
            for s in 1..=entry.multiplicity {
                let phi_y = entry.eval(s, [y[0], y[1]]);
                let w = phi_y[j];
                if w == 0.0 {
                    continue;
                }
                let (h, _, _) = axial_kernel(entry.beta, x[2], y[2], sigma_of(s), self.variant);
                let phi_x = entry.eval(s, [x[0], x[1]]);
                let c = w / entry.norms2[(s - 1) as usize];
                for r in 0..3 {
                    out[r] += c * h * phi_x[r];
                }
            }
        }
        Ok(out)
    }

    /// Dyadic tensor `G(x, y)`, rows indexed by the field component at `x`,
    /// columns by the dipole direction at `y`.
    pub fn dyadic(&self, x: Vec3, y: Vec3) -> Result<CMat3> {
        self.check_points(&x, &y)?;
        let mut out = czero33();
        let k2 = self.k * self.k;
        for entry in self.modes {
            let phi1_x = entry.eval(1, [x[0], x[1]]);
            let phi1_y = entry.eval(1, [y[0], y[1]]);
            let (h_m, dh_m, _) = axial_kernel(entry.beta, x[2], y[2], -1.0, self.variant);
            let c1 = 1.0 / entry.norms2[0];
            for r in 0..3 {
                for j in 0..3 {
                    out[r][j] += c1 * h_m * phi1_x[r] * phi1_y[j];
                }
            }
            if entry.multiplicity != 3 {
                continue;
            }
            let (h_p, dh_p, _) = axial_kernel(entry.beta, x[2], y[2], 1.0, self.variant);
            let phi2_x = entry.eval(2, [x[0], x[1]]);
            let phi3_x = entry.eval(3, [x[0], x[1]]);
            let phi2_y = entry.eval(2, [y[0], y[1]]);
            let phi3_y = entry.eval(3, [y[0], y[1]]);
            let beta2 = entry.beta * entry.beta;
            let lam = entry.lambda;
            let c2 = 1.0 / entry.norms2[1];
            let c3 = 1.0 / entry.norms2[2];
            // s=2 source: (b^2/k^2) h Phi2(x) - (lam/k^2) h' Phi3(x)
            let a22 = beta2 / k2 * h_m * c2;
            let a32 = -(lam / k2) * dh_m * c2;
            // s=3 source: (1/k^2) h' Phi2(x) + (lam/k^2) h Phi3(x)
            let a23 = dh_p / k2 * c3;
            let a33 = lam / k2 * h_p * c3;
            for r in 0..3 {
                for j in 0..3 {
                    out[r][j] += (a22 * phi2_x[r] + a32 * phi3_x[r]) * phi2_y[j]
                        + (a23 * phi2_x[r] + a33 * phi3_x[r]) * phi3_y[j];
                }
            }
        }
        Ok(out)
    }
}
