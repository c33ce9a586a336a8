//! Transverse eigenmodes of the rectangular cross-section.
//!
//! The cross-section `(0,L1)x(0,L2)` carries a countable family of vectorial
//! Laplacian eigenfunctions indexed by pairs `n = (n1,n2)` with
//! `n1^2 + n2^2 != 0` and a multiplicity index `s`:
//!
//! * `lambda_n = (pi n1 / L1)^2 + (pi n2 / L2)^2`
//! * multiplicity `m_n = 1` when `n1*n2 = 0`, else `3`
//! * `s = 1`: divergence-free transverse field (TE),
//!   `s = 2`: curl-free transverse field,
//!   `s = 3`: longitudinal field.
//!
//! A mode propagates along the axis with wavenumber
//! `beta_n = sqrt(k^2 - lambda_n)` when `lambda_n < k^2` and decays with
//! `beta_n = i sqrt(lambda_n - k^2)` otherwise.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{Vec3, XPoint};
use crate::scenario::WaveguideGeometry;

/// Relative guard around the cutoff `lambda_n = k^2`. Amplitude and Green
/// formulas divide by `beta_n`, so modes inside the guard are rejected.
pub const CUTOFF_REL_TOL: f64 = 1e-9;

/// Relative guard for coinciding eigenvalues during enumeration.
pub const DISTINCT_REL_TOL: f64 = 1e-12;

/// Multiplicity of the eigenvalue at index pair `(n1, n2)`.
pub fn multiplicity(n1: u32, n2: u32) -> Result<u8> {
    if n1 == 0 && n2 == 0 {
        return Err(Error::ZeroModeIndex);
    }
    Ok(if n1 == 0 || n2 == 0 { 1 } else { 3 })
}

/// Eigenvalue `lambda_n` of the vectorial Laplacian.
pub fn eigenvalue(n1: u32, n2: u32, geom: &WaveguideGeometry) -> Result<f64> {
    if n1 == 0 && n2 == 0 {
        return Err(Error::ZeroModeIndex);
    }
    let a = PI * n1 as f64 / geom.l1;
    let b = PI * n2 as f64 / geom.l2;
    Ok(a * a + b * b)
}

/// Axial wavenumber `beta_n` for the default cutoff guard.
pub fn axial_wavenumber(k: f64, lambda: f64) -> Result<Complex64> {
    axial_wavenumber_with(k, lambda, CUTOFF_REL_TOL)
}

/// Axial wavenumber with an explicit relative cutoff guard.
///
/// Returns a positive real `beta` for propagating modes and a positive
/// imaginary `beta` for evanescent ones. `|k^2 - lambda| < rel_tol * k^2`
/// is an error: the mode sits at cutoff and `1/beta` blows up.
pub fn axial_wavenumber_with(k: f64, lambda: f64, rel_tol: f64) -> Result<Complex64> {
    let k2 = k * k;
    let gap = k2 - lambda;
    if gap.abs() < rel_tol * k2 {
        return Err(Error::AtCutoff { n1: 0, n2: 0, gap: gap.abs() });
    }
    if gap > 0.0 {
        Ok(Complex64::new(gap.sqrt(), 0.0))
    } else {
        Ok(Complex64::new(0.0, (-gap).sqrt()))
    }
}

/// Eigenfunction `Phi_n^(s)` evaluated at a cross-range point.
///
/// The four closed forms: for `n1*n2 = 0` only `s = 1` exists and the field
/// is a single sine along the nonzero index; for `n1*n2 != 0` the three
/// branches are the TE transverse, curl-free transverse and longitudinal
/// fields built from products of `sin`/`cos` along each axis.
pub fn eigenfunction(n1: u32, n2: u32, s: u8, x: XPoint, geom: &WaveguideGeometry) -> Result<Vec3> {
    let m = multiplicity(n1, n2)?;
    if s == 0 || s > m {
        return Err(Error::InvalidMultiplicity { n1, n2, s });
    }
    if x[0] < 0.0 || x[0] > geom.l1 || x[1] < 0.0 || x[1] > geom.l2 {
        return Err(Error::OutOfDomain(format!(
            "({}, {}) outside the closed cross-section",
            x[0], x[1]
        )));
    }
    let kn1 = PI * n1 as f64 / geom.l1;
    let kn2 = PI * n2 as f64 / geom.l2;
    let (s1, c1) = (kn1 * x[0]).sin_cos();
    let (s2, c2) = (kn2 * x[1]).sin_cos();
    Ok(eval_branch(n1, n2, s, kn1, kn2, s1, c1, s2, c2))
}

#[inline]
#[allow(clippy::too_many_arguments)]
fn eval_branch(n1: u32, n2: u32, s: u8, kn1: f64, kn2: f64, s1: f64, c1: f64, s2: f64, c2: f64) -> Vec3 {
    if n1 == 0 || n2 == 0 {
        // Simple eigenvalue; the surviving sine points across the zero index.
        return if n2 == 0 { [0.0, s1, 0.0] } else { [s2, 0.0, 0.0] };
    }
    match s {
        1 => [kn2 * c1 * s2, -kn1 * s1 * c2, 0.0],
        2 => [kn1 * c1 * s2, kn2 * s1 * c2, 0.0],
        _ => [0.0, 0.0, s1 * s2],
    }
}

/// Closed-form squared L2 norm of `Phi_n^(s)` over the cross-section.
pub fn norm_squared(n1: u32, n2: u32, s: u8, geom: &WaveguideGeometry) -> Result<f64> {
    let m = multiplicity(n1, n2)?;
    if s == 0 || s > m {
        return Err(Error::InvalidMultiplicity { n1, n2, s });
    }
    let area = geom.l1 * geom.l2;
    if n1 == 0 || n2 == 0 {
        return Ok(area / 2.0);
    }
    Ok(match s {
        1 | 2 => eigenvalue(n1, n2, geom)? * area / 4.0,
        _ => area / 4.0,
    })
}

/// One transverse eigenmode: index pair, eigenvalue, axial wavenumber,
/// multiplicity and per-branch squared norms. The `kn*` fields cache
/// `pi n / L` for the evaluation kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeEntry {
    pub n1: u32,
    pub n2: u32,
    pub lambda: f64,
    pub beta: Complex64,
    pub multiplicity: u8,
    /// `norms2[s-1]`; zero where the branch does not exist.
    pub norms2: [f64; 3],
    pub kn1: f64,
    pub kn2: f64,
}

impl ModeEntry {
    pub fn build(n1: u32, n2: u32, k: f64, geom: &WaveguideGeometry) -> Result<Self> {
        let m = multiplicity(n1, n2)?;
        let lambda = eigenvalue(n1, n2, geom)?;
        let beta = axial_wavenumber(k, lambda).map_err(|e| match e {
            Error::AtCutoff { gap, .. } => Error::AtCutoff { n1, n2, gap },
            other => other,
        })?;
        let mut norms2 = [0.0; 3];
        for s in 1..=m {
            norms2[(s - 1) as usize] = norm_squared(n1, n2, s, geom)?;
        }
        Ok(Self {
            n1,
            n2,
            lambda,
            beta,
            multiplicity: m,
            norms2,
            kn1: PI * n1 as f64 / geom.l1,
            kn2: PI * n2 as f64 / geom.l2,
        })
    }

    /// True when `beta` is real (`lambda_n < k^2`).
    pub fn is_propagating(&self) -> bool {
        self.beta.im == 0.0
    }

    /// Eigenfunction branch without bounds checks, for use in kernels that
    /// already pre-validated indices and points.
    #[inline]
    pub fn eval(&self, s: u8, x: XPoint) -> Vec3 {
        let (s1, c1) = (self.kn1 * x[0]).sin_cos();
        let (s2, c2) = (self.kn2 * x[1]).sin_cos();
        eval_branch(self.n1, self.n2, s, self.kn1, self.kn2, s1, c1, s2, c2)
    }

    /// Eigenfunction branch from precomputed axis trig values.
    #[inline]
    pub fn eval_tabulated(&self, s: u8, s1: f64, c1: f64, s2: f64, c2: f64) -> Vec3 {
        eval_branch(self.n1, self.n2, s, self.kn1, self.kn2, s1, c1, s2, c2)
    }
}

fn check_distinct(sorted: &[ModeEntry]) -> Result<()> {
    for w in sorted.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let scale = a.lambda.abs().max(b.lambda.abs());
        if (b.lambda - a.lambda).abs() <= DISTINCT_REL_TOL * scale {
            return Err(Error::DegenerateEigenvalues(a.n1, a.n2, b.n1, b.n2));
        }
    }
    Ok(())
}

fn enumerate_below(geom: &WaveguideGeometry, k: f64, lambda_max: f64) -> Result<Vec<ModeEntry>> {
    let n1_max = (lambda_max.sqrt() * geom.l1 / PI).floor() as u32 + 1;
    let n2_max = (lambda_max.sqrt() * geom.l2 / PI).floor() as u32 + 1;
    let mut entries = Vec::new();
    for n1 in 0..=n1_max {
        for n2 in 0..=n2_max {
            if n1 == 0 && n2 == 0 {
                continue;
            }
            let lambda = eigenvalue(n1, n2, geom)?;
            if lambda < lambda_max {
                entries.push(ModeEntry::build(n1, n2, k, geom)?);
            }
        }
    }
    entries.sort_by(|a, b| {
        a.lambda
            .partial_cmp(&b.lambda)
            .unwrap()
            .then((a.n1, a.n2).cmp(&(b.n1, b.n2)))
    });
    check_distinct(&entries)?;
    Ok(entries)
}

/// All propagating index pairs (`lambda_n < k^2`), sorted by ascending
/// eigenvalue with a lexicographic `(n1,n2)` tie-break. Aborts if two
/// enumerated eigenvalues coincide within [`DISTINCT_REL_TOL`] or a mode
/// sits inside the cutoff guard.
pub fn enumerate_propagating(geom: &WaveguideGeometry, k: f64) -> Result<Vec<ModeEntry>> {
    enumerate_below(geom, k, k * k)
}

/// Propagating plus evanescent modes with `lambda_n < lambda_max`.
/// Used by the Born-series solver; `lambda_max = evanescent_cutoff * k^2`.
pub fn enumerate_with_evanescent(
    geom: &WaveguideGeometry,
    k: f64,
    lambda_max: f64,
) -> Result<Vec<ModeEntry>> {
    enumerate_below(geom, k, lambda_max)
}

/// First `m` entries of the ascending-eigenvalue ordering. These are the
/// fastest modes (largest real `beta`), the ones that arrive within a finite
/// measurement window. All multiplicity branches of a selected pair stay.
pub fn select_first_arriving(entries: &[ModeEntry], m: usize) -> Result<&[ModeEntry]> {
    if m > entries.len() {
        return Err(Error::ModeBudget { requested: m, available: entries.len() });
    }
    Ok(&entries[..m])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geom(l1: f64, l2: f64) -> WaveguideGeometry {
        WaveguideGeometry { l1, l2, terminating: true }
    }

    const G5: WaveguideGeometry = WaveguideGeometry { l1: 13.9, l2: 14.2, terminating: true };

    #[test]
    fn eigenvalue_closed_forms() {
        let g = geom(1.0, 1.0);
        assert_relative_eq!(eigenvalue(1, 0, &g).unwrap(), PI * PI, max_relative = 1e-15);
        assert_relative_eq!(eigenvalue(1, 1, &g).unwrap(), 2.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(
            eigenvalue(1, 0, &G5).unwrap(),
            (PI / 13.9) * (PI / 13.9),
            max_relative = 1e-15
        );
        assert!((eigenvalue(1, 0, &G5).unwrap() - 0.05108226).abs() < 1e-7);
    }

    #[test]
    fn zero_index_rejected() {
        assert!(matches!(eigenvalue(0, 0, &G5), Err(Error::ZeroModeIndex)));
        assert!(matches!(multiplicity(0, 0), Err(Error::ZeroModeIndex)));
    }

    #[test]
    fn axial_wavenumber_branches() {
        let k = 2.0 * PI;
        let b = axial_wavenumber(k, PI * PI).unwrap();
        assert_relative_eq!(b.re, PI * 3.0_f64.sqrt(), max_relative = 1e-15);
        assert_eq!(b.im, 0.0);
        assert!((b.re - 5.4414).abs() < 1e-4);

        let b = axial_wavenumber(k, 5.0 * PI * PI).unwrap();
        assert_eq!(b.re, 0.0);
        assert_relative_eq!(b.im, PI, max_relative = 1e-15);

        assert!(matches!(
            axial_wavenumber(k, 4.0 * PI * PI),
            Err(Error::AtCutoff { .. })
        ));
    }

    #[test]
    fn eigenfunction_values() {
        // (1,0): single sine along x1 polarizing e2.
        let g = G5;
        let v = eigenfunction(1, 0, 1, [6.95, 3.0], &g).unwrap();
        assert_relative_eq!(v[1], (PI * 6.95 / 13.9).sin(), max_relative = 1e-15);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[2], 0.0);

        // Longitudinal branch vanishes on every wall.
        let g1 = geom(1.0, 1.0);
        for p in [[0.0, 0.3], [1.0, 0.7], [0.4, 0.0], [0.9, 1.0]] {
            let v = eigenfunction(1, 1, 3, p, &g1).unwrap();
            assert!(v.iter().all(|c| c.abs() < 1e-15), "{v:?}");
        }

        // cos(pi/2) kills the first component of the TE branch at x1 = L1/2.
        let v = eigenfunction(1, 1, 1, [0.5, 0.25], &g1).unwrap();
        assert!(v[0].abs() < 1e-15);
        assert_relative_eq!(v[1], -PI * (2.0_f64.sqrt() / 2.0), max_relative = 1e-12);
    }

    #[test]
    fn eigenfunction_invalid_s() {
        assert!(matches!(
            eigenfunction(1, 0, 2, [1.0, 1.0], &G5),
            Err(Error::InvalidMultiplicity { .. })
        ));
        assert!(matches!(
            eigenfunction(1, 1, 4, [1.0, 1.0], &G5),
            Err(Error::InvalidMultiplicity { .. })
        ));
    }

    #[test]
    fn norm_closed_forms() {
        assert_relative_eq!(norm_squared(1, 0, 1, &G5).unwrap(), 13.9 * 14.2 / 2.0);
        assert_relative_eq!(norm_squared(1, 1, 3, &G5).unwrap(), 49.345, max_relative = 1e-12);
        let n11 = norm_squared(1, 1, 1, &G5).unwrap();
        assert_relative_eq!(n11, eigenvalue(1, 1, &G5).unwrap() * 49.345, max_relative = 1e-12);
        assert!((n11 - 4.9359).abs() < 1e-3);
    }

    #[test]
    fn enumeration_section5_geometry() {
        let k = 2.0 * PI;
        let modes = enumerate_propagating(&G5, k).unwrap();
        // The strict lambda_n < k^2 index-pair count; the figure quoted with
        // the degenerate (0,0) origin included is one larger.
        assert_eq!(modes.len(), 647);
        assert!(modes.iter().any(|m| (m.n1, m.n2) == (27, 0)));
        assert!(!modes.iter().any(|m| (m.n1, m.n2) == (28, 0)));
        // Sorted ascending, all propagating.
        for w in modes.windows(2) {
            assert!(w[0].lambda < w[1].lambda);
        }
        assert!(modes.iter().all(|m| m.is_propagating()));
    }

    #[test]
    fn enumeration_below_first_cutoff() {
        // k^2 below both first eigenvalues: no propagating modes.
        let k = 0.1;
        let modes = enumerate_propagating(&G5, k).unwrap();
        assert!(modes.is_empty());
    }

    #[test]
    fn first_arriving_selection() {
        let k = 2.0 * PI;
        let modes = enumerate_propagating(&G5, k).unwrap();
        let one = select_first_arriving(&modes, 1).unwrap();
        assert_eq!(one.len(), 1);
        let lam_min = modes.iter().map(|m| m.lambda).fold(f64::INFINITY, f64::min);
        assert_eq!(one[0].lambda, lam_min);

        let m350 = select_first_arriving(&modes, 350).unwrap();
        assert_eq!(m350.len(), 350);
        let lam_351 = modes[350].lambda;
        assert!(m350.iter().all(|m| m.lambda < lam_351));

        assert!(matches!(
            select_first_arriving(&modes, 649),
            Err(Error::ModeBudget { .. })
        ));
    }

    #[test]
    fn degenerate_eigenvalues_detected() {
        // A square cross-section makes lambda_(1,2) == lambda_(2,1).
        let g = geom(1.0, 1.0);
        assert!(matches!(
            enumerate_propagating(&g, 3.0 * PI),
            Err(Error::DegenerateEigenvalues(..))
        ));
    }

    #[test]
    fn evanescent_enumeration_extends() {
        let k = 2.0 * PI;
        let prop = enumerate_propagating(&G5, k).unwrap();
        let all = enumerate_with_evanescent(&G5, k, 4.0 * k * k).unwrap();
        assert!(all.len() > prop.len());
        assert!(all.iter().filter(|m| !m.is_propagating()).all(|m| m.beta.im > 0.0));
    }
}
