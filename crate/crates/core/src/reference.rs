//! The unperturbed field of the point-dipole source.
//!
//! With the source plane at `x3 = -L` the field decomposes over the
//! eigenmodes with closed-form amplitudes. Per retained pair `n` the axial
//! coefficient functions are, in the terminating waveguide,
//!
//! ```text
//! g1(x3) = c1 * (e^{i b (L - x3)} - e^{i b (L + x3)})            TE
//! g2(x3) = (t2 + t3) * (e^{i b (L - x3)} - e^{i b (L + x3)})     TM transverse
//! g3(x3) = (i lam / b) (t2 + t3) (e^{i b (L + x3)} + e^{i b (L - x3)})
//! ```
//!
//! for `x3 in (-L, 0)`, with
//!
//! ```text
//! c1 = k <Phi1, J> / (2 b |Phi1|^2)
//! t2 = b <Phi2, J> / (2 k |Phi2|^2)
//! t3 = i k <Phi3, J> / (2 lam |Phi3|^2)
//! ```
//!
//! and outgoing forms for `x3 < -L`. The exponent combinations above keep
//! every exponential decaying when evanescent modes are enabled. The
//! infinite-waveguide variant keeps only the waves radiated directly by the
//! source: the `e^{i b (L - x3)}` parts between source and wall drop out
//! together with the wall-reflected contribution to the outgoing field.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{czero3, CVec3, Vec3, C_I};
use crate::kernels::AxisTables;
use crate::modes::ModeEntry;
use crate::scenario::{ImagingGrid, Scenario, SourceSpec, WaveguideGeometry};

/// Which waveguide the field lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// End wall at `x3 = 0`.
    Terminating,
    /// No end wall; purely outgoing waves on both sides of the source.
    Infinite,
}

impl Variant {
    pub fn of(geom: &WaveguideGeometry) -> Self {
        if geom.terminating {
            Variant::Terminating
        } else {
            Variant::Infinite
        }
    }
}

/// Projection `<Phi_n^(s), J>` of the point-dipole current onto a mode.
/// Delta sifting reduces the inner product to `Phi_n^(s)(x_s) . p`.
pub fn source_projection(
    n1: u32,
    n2: u32,
    s: u8,
    source: &SourceSpec,
    geom: &WaveguideGeometry,
) -> Result<f64> {
    let phi = crate::modes::eigenfunction(n1, n2, s, source.position, geom)?;
    Ok(phi[0] * source.polarization[0]
        + phi[1] * source.polarization[1]
        + phi[2] * source.polarization[2])
}

/// Per-mode amplitude coefficients. The raw `a/b` amplitudes of the mode
/// decomposition are exposed as methods; evaluation paths use the
/// coefficients directly in overflow-safe exponent combinations.
#[derive(Debug, Clone, Copy)]
pub struct AmpEntry {
    /// `c1`, TE jump coefficient.
    pub te: Complex64,
    /// `t2`, TM transverse jump coefficient.
    pub tm2: Complex64,
    /// `t3`, TM longitudinal jump coefficient.
    pub tm3: Complex64,
    beta: Complex64,
    standoff: f64,
}

impl AmpEntry {
    fn phase_up(&self) -> Complex64 {
        // e^{i b L}; decays for evanescent modes.
        (C_I * self.beta * self.standoff).exp()
    }

    fn phase_down(&self) -> Complex64 {
        // e^{-i b L}; grows for evanescent modes, callers beware.
        (-C_I * self.beta * self.standoff).exp()
    }

    /// `a+` amplitude of `e^{i beta x3}` between source and wall; s = 1 or 2.
    pub fn a_plus(&self, s: u8, variant: Variant) -> Complex64 {
        let _ = variant; // the direct outgoing wave is variant-independent
        match s {
            1 => -self.te * self.phase_up(),
            2 => -(self.tm2 + self.tm3) * self.phase_up(),
            _ => panic!("a_plus is defined for s in {{1,2}}"),
        }
    }

    /// `b+` amplitude of `e^{-i beta x3}` between source and wall.
    pub fn b_plus(&self, s: u8, variant: Variant) -> Complex64 {
        match variant {
            Variant::Terminating => -self.a_plus(s, variant),
            Variant::Infinite => Complex64::new(0.0, 0.0),
        }
    }

    /// `b-` amplitude of the outgoing wave `e^{-i beta x3}` for `x3 < -L`.
    pub fn b_minus(&self, s: u8, variant: Variant) -> Complex64 {
        let up = self.phase_up();
        let down = self.phase_down();
        match (s, variant) {
            (1, Variant::Terminating) => self.te * (up - down),
            (1, Variant::Infinite) => -self.te * down,
            (2, Variant::Terminating) => self.tm2 * (up - down) + self.tm3 * (up + down),
            (2, Variant::Infinite) => (-self.tm2 + self.tm3) * down,
            _ => panic!("b_minus is defined for s in {{1,2}}"),
        }
    }
}

/// Amplitudes for each entry of a mode slice, in the same order.
#[derive(Debug, Clone)]
pub struct ModeAmplitudes {
    pub entries: Vec<AmpEntry>,
    pub variant: Variant,
}

/// Closed-form mode amplitudes for the given source. Every retained mode
/// must be away from cutoff (enforced at enumeration).
pub fn compute_amplitudes(
    source: &SourceSpec,
    k: f64,
    modes: &[ModeEntry],
    geom: &WaveguideGeometry,
    variant: Variant,
) -> Result<ModeAmplitudes> {
    let mut entries = Vec::with_capacity(modes.len());
    for m in modes {
        if m.beta.norm() == 0.0 {
            return Err(Error::AtCutoff { n1: m.n1, n2: m.n2, gap: 0.0 });
        }
        let p1 = source_projection(m.n1, m.n2, 1, source, geom)?;
        let te = Complex64::new(k * p1, 0.0) / (2.0 * m.beta * m.norms2[0]);
        let (tm2, tm3) = if m.multiplicity == 3 {
            let p2 = source_projection(m.n1, m.n2, 2, source, geom)?;
            let p3 = source_projection(m.n1, m.n2, 3, source, geom)?;
            (
                m.beta * p2 / (2.0 * k * m.norms2[1]),
                C_I * k * p3 / (2.0 * m.lambda * m.norms2[2]),
            )
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        };
        entries.push(AmpEntry { te, tm2, tm3, beta: m.beta, standoff: source.standoff });
    }
    Ok(ModeAmplitudes { entries, variant })
}

/// Axial coefficients `(g1, g2, g3)` of one mode at range coordinate `x3`.
/// All exponentials carry non-negative decay for evanescent modes.
#[inline]
pub(crate) fn axial_coefficients(
    amp: &AmpEntry,
    lambda: f64,
    x3: f64,
    variant: Variant,
) -> (Complex64, Complex64, Complex64) {
    let beta = amp.beta;
    let l = amp.standoff;
    let i_lam_over_beta = C_I * lambda / beta;
    if x3 >= -l {
        // Between source and end wall.
        let e_up = (C_I * beta * (l + x3)).exp(); // direct, outgoing toward wall
        match variant {
            Variant::Terminating => {
                let e_back = (C_I * beta * (l - x3)).exp(); // wall reflection
                let te = amp.te * (e_back - e_up);
                let tm = amp.tm2 + amp.tm3;
                let g2 = tm * (e_back - e_up);
                let g3 = i_lam_over_beta * tm * (e_up + e_back);
                (te, g2, g3)
            }
            Variant::Infinite => {
                let tm = amp.tm2 + amp.tm3;
                (-amp.te * e_up, -tm * e_up, i_lam_over_beta * tm * e_up)
            }
        }
    } else {
        // Outgoing side, away from the wall.
        let e_direct = (C_I * beta * (-l - x3)).exp();
        match variant {
            Variant::Terminating => {
                let e_refl = (C_I * beta * (l - x3)).exp();
                let g1 = amp.te * (e_refl - e_direct);
                let g2 = (amp.tm2 + amp.tm3) * e_refl + (-amp.tm2 + amp.tm3) * e_direct;
                let g3 = i_lam_over_beta * g2;
                (g1, g2, g3)
            }
            Variant::Infinite => {
                let g2 = (-amp.tm2 + amp.tm3) * e_direct;
                (-amp.te * e_direct, g2, i_lam_over_beta * g2)
            }
        }
    }
}

/// The reference field: retained modes, their amplitudes, and evaluation.
pub struct ReferenceField<'a> {
    pub modes: &'a [ModeEntry],
    pub amps: ModeAmplitudes,
    pub geom: WaveguideGeometry,
    pub k: f64,
}

impl<'a> ReferenceField<'a> {
    /// Build the field for the scenario's retained (first-arriving) modes.
    pub fn new(scenario: &Scenario, modes: &'a [ModeEntry], variant: Variant) -> Result<Self> {
        let amps = compute_amplitudes(&scenario.source, scenario.k, modes, &scenario.geometry, variant)?;
        Ok(Self { modes, amps, geom: scenario.geometry, k: scenario.k })
    }

    pub fn variant(&self) -> Variant {
        self.amps.variant
    }

    /// Field at a point of the waveguide. The source plane `x3 = -L` is
    /// excluded (the derivative jumps there), as is anything outside the
    /// closed cross-section or above the end wall.
    pub fn eval(&self, x: Vec3) -> Result<CVec3> {
        let l = self.amps.entries.first().map_or(0.0, |a| a.standoff);
        if (x[2] + l).abs() <= 1e-12 * l.max(1.0) {
            return Err(Error::OutOfDomain("x3 = -L is the source plane".into()));
        }
        if x[2] > 0.0 {
            return Err(Error::OutOfDomain("x3 must be <= 0".into()));
        }
        if x[0] < 0.0 || x[0] > self.geom.l1 || x[1] < 0.0 || x[1] > self.geom.l2 {
            return Err(Error::OutOfDomain("cross-range point outside the section".into()));
        }
        let mut field = czero3();
        for (entry, amp) in self.modes.iter().zip(&self.amps.entries) {
            let (g1, g2, g3) = axial_coefficients(amp, entry.lambda, x[2], self.amps.variant);
            let phi1 = entry.eval(1, [x[0], x[1]]);
            for c in 0..3 {
                field[c] += g1 * phi1[c];
            }
            if entry.multiplicity == 3 {
                let phi2 = entry.eval(2, [x[0], x[1]]);
                let phi3 = entry.eval(3, [x[0], x[1]]);
                for c in 0..3 {
                    field[c] += g2 * phi2[c] + g3 * phi3[c];
                }
            }
        }
        Ok(field)
    }

    /// Field on every voxel center of a grid, voxel-major, using per-axis
    /// trig tables and per-layer axial coefficients.
    pub fn eval_on_grid(&self, grid: &ImagingGrid) -> Vec<CVec3> {
        let x1s = grid.axis_coords(0);
        let x2s = grid.axis_coords(1);
        let x3s = grid.axis_coords(2);
        let t1 = AxisTables::build(self.modes, &x1s, 0);
        let t2 = AxisTables::build(self.modes, &x2s, 1);
        let nm = self.modes.len();
        // Axial coefficients per (layer, mode).
        let mut g: Vec<(Complex64, Complex64, Complex64)> =
            vec![(czero(), czero(), czero()); x3s.len() * nm];
        for (iz, &x3) in x3s.iter().enumerate() {
            for (m, (entry, amp)) in self.modes.iter().zip(&self.amps.entries).enumerate() {
                g[iz * nm + m] = axial_coefficients(amp, entry.lambda, x3, self.amps.variant);
            }
        }
        let n = grid.n;
        let mut out = vec![czero3(); grid.len()];
        out.par_chunks_mut(n[1] * n[2])
            .enumerate()
            .for_each(|(i1, slab)| {
                for i2 in 0..n[1] {
                    for i3 in 0..n[2] {
                        let mut acc = czero3();
                        for (m, entry) in self.modes.iter().enumerate() {
                            let (s1, c1) = t1.at(m, i1);
                            let (s2, c2) = t2.at(m, i2);
                            let (g1, g2, g3) = g[i3 * nm + m];
                            accumulate_mode(&mut acc, entry, s1, c1, s2, c2, g1, g2, g3);
                        }
                        slab[i2 * n[2] + i3] = acc;
                    }
                }
            });
        out
    }
}

#[inline]
fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Add one mode's contribution `g1 Phi1 + g2 Phi2 + g3 Phi3` to `acc`.
#[inline]
#[allow(clippy::too_many_arguments)]
pub(crate) fn accumulate_mode(
    acc: &mut CVec3,
    entry: &ModeEntry,
    s1: f64,
    c1: f64,
    s2: f64,
    c2: f64,
    g1: Complex64,
    g2: Complex64,
    g3: Complex64,
) {
    if entry.multiplicity == 1 {
        if entry.n2 == 0 {
            acc[1] += g1 * s1;
        } else {
            acc[0] += g1 * s2;
        }
        return;
    }
    let c1s2 = c1 * s2;
    let s1c2 = s1 * c2;
    // Phi1 = (kn2 c1 s2, -kn1 s1 c2, 0); Phi2 = (kn1 c1 s2, kn2 s1 c2, 0).
    acc[0] += (g1 * entry.kn2 + g2 * entry.kn1) * c1s2;
    acc[1] += (g2 * entry.kn2 - g1 * entry.kn1) * s1c2;
    acc[2] += g3 * (s1 * s2);
}
