//! Experiment description: waveguide geometry, source, receiver array,
//! mode budget, imaging window, reflector presets.
//!
//! All lengths are in units of the wavelength, so `k = 2*pi` and the
//! amplitude prefactor `omega*mu_o` reduces to `k`. Scenario files are a
//! single JSON schema; see [`Scenario::from_json`].

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{Box3, Vec3, XPoint};
use crate::modes;

/// Rectangular cross-section `(0,L1)x(0,L2)`, semi-infinite in range and
/// closed by a perfectly conducting end wall at `x3 = 0` when `terminating`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveguideGeometry {
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "L2")]
    pub l2: f64,
    pub terminating: bool,
}

impl WaveguideGeometry {
    pub fn contains_cross(&self, x: XPoint) -> bool {
        x[0] > 0.0 && x[0] < self.l1 && x[1] > 0.0 && x[1] < self.l2
    }
}

/// Point-dipole current source in the plane `x3 = -L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceSpec {
    /// Cross-range position of the dipole.
    pub position: XPoint,
    /// Polarization vector `p`; the current density is `p delta(x - x_s)`.
    pub polarization: Vec3,
    /// Standoff of the source/array plane from the end wall.
    #[serde(rename = "L")]
    pub standoff: f64,
}

/// Receiver aperture: a rectangle inside the cross-section, sampled
/// uniformly, measuring the listed field components.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArraySpec {
    pub center: XPoint,
    /// Side lengths of the aperture rectangle.
    pub size: [f64; 2],
    /// Receiver spacing along both axes.
    pub spacing: f64,
    /// Measured components, subset of {1,2,3}, ascending.
    pub components: Vec<u8>,
}

/// Mode selection: how many of the first-arriving index pairs to retain and
/// how deep to enumerate evanescent modes (`lambda_max = cutoff * k^2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModesSpec {
    pub budget: usize,
    pub evanescent_cutoff: f64,
}

/// Imaging window and voxel pitches. The same pitches define the
/// data-generation grid; inversion grids may override them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImagingSpec {
    pub window_min: Vec3,
    pub window_max: Vec3,
    pub pitch_cross: f64,
    pub pitch_range: f64,
}

/// Ground-truth reflector variants used to synthesize data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReflectorSpec {
    /// Isotropic point supported on one voxel of the data-generation grid.
    Point { center: Vec3, value: f64 },
    /// Rectangular shell `R \ R_o` with a constant isotropic value.
    Shell { outer: Box3, inner: Box3, value: f64 },
    /// Point with a diagonal anisotropic potential.
    AnisotropicPoint { center: Vec3, values: Vec3 },
}

impl ReflectorSpec {
    /// Representative center used for slice planes.
    pub fn center(&self) -> Vec3 {
        match self {
            ReflectorSpec::Point { center, .. } => *center,
            ReflectorSpec::AnisotropicPoint { center, .. } => *center,
            ReflectorSpec::Shell { outer, .. } => outer.center(),
        }
    }

    /// True when the potential has three independent diagonal entries.
    pub fn is_anisotropic(&self) -> bool {
        matches!(self, ReflectorSpec::AnisotropicPoint { .. })
    }
}

/// Full experiment description. Immutable after validation; share it freely
/// across parallel workers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub geometry: WaveguideGeometry,
    pub k: f64,
    pub source: SourceSpec,
    pub array: ArraySpec,
    pub modes: ModesSpec,
    pub imaging: ImagingSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reflector: Option<ReflectorSpec>,
}

impl Scenario {
    /// Parse a scenario from JSON and enforce every invariant.
    pub fn from_json(text: &str) -> Result<Self> {
        let sc: Scenario =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let violations = sc.violations();
        if violations.is_empty() {
            Ok(sc)
        } else {
            Err(Error::Validation(violations.join("\n")))
        }
    }

    /// Load and validate a scenario file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Canonical JSON form; byte-stable across runs.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// SHA-256 over the canonical JSON form.
    pub fn content_hash(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(self.to_json().as_bytes());
        h.finalize().into()
    }

    pub fn content_hash_hex(&self) -> String {
        self.content_hash().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Imaging window as a box.
    pub fn imaging_window(&self) -> Box3 {
        Box3::new(self.imaging.window_min, self.imaging.window_max)
    }

    /// Every violated invariant, one message each; empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let g = &self.geometry;
        if !(g.l1 > 0.0 && g.l1.is_finite()) {
            v.push(format!("geometry.L1 must be positive, got {}", g.l1));
        }
        if !(g.l2 > 0.0 && g.l2.is_finite()) {
            v.push(format!("geometry.L2 must be positive, got {}", g.l2));
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            v.push(format!("k must be positive, got {}", self.k));
        }

        let s = &self.source;
        if !g.contains_cross(s.position) {
            v.push(format!(
                "source.position ({}, {}) must lie strictly inside the cross-section",
                s.position[0], s.position[1]
            ));
        }
        if s.polarization.iter().all(|c| *c == 0.0) {
            v.push("source.polarization must be nonzero".into());
        }
        if s.polarization.iter().any(|c| !c.is_finite()) {
            v.push("source.polarization must be finite".into());
        }
        if !(s.standoff > 0.0 && s.standoff.is_finite()) {
            v.push(format!("source.L must be positive, got {}", s.standoff));
        }

        let a = &self.array;
        if !(a.spacing > 0.0 && a.spacing.is_finite()) {
            v.push(format!("array.spacing must be positive, got {}", a.spacing));
        }
        for (i, l) in [g.l1, g.l2].into_iter().enumerate() {
            if !(a.size[i] > 0.0 && a.size[i].is_finite()) {
                v.push(format!("array.size[{i}] must be positive, got {}", a.size[i]));
            } else {
                let lo = a.center[i] - a.size[i] / 2.0;
                let hi = a.center[i] + a.size[i] / 2.0;
                if lo < -1e-12 || hi > l + 1e-12 {
                    v.push(format!(
                        "array aperture [{lo}, {hi}] exceeds the cross-section along axis {}",
                        i + 1
                    ));
                }
            }
        }
        if a.components.is_empty() {
            v.push("array.components must be nonempty".into());
        }
        if a.components.iter().any(|q| !(1..=3).contains(q)) {
            v.push("array.components entries must be in {1,2,3}".into());
        }
        if a.components.windows(2).any(|w| w[0] >= w[1]) {
            v.push("array.components must be strictly ascending".into());
        }

        if self.modes.budget == 0 {
            v.push("modes.budget must be at least 1".into());
        }
        if !(self.modes.evanescent_cutoff > 1.0) {
            v.push(format!(
                "modes.evanescent_cutoff must exceed 1, got {}",
                self.modes.evanescent_cutoff
            ));
        }
        if v.is_empty() {
            // Geometry and k are sane; the budget can be checked against the
            // actual propagating count.
            match modes::enumerate_propagating(g, self.k) {
                Ok(list) => {
                    if self.modes.budget > list.len() {
                        v.push(format!(
                            "modes.budget {} exceeds the {} propagating index pairs",
                            self.modes.budget,
                            list.len()
                        ));
                    }
                }
                Err(e) => v.push(format!("mode enumeration failed: {e}")),
            }
        }

        let im = &self.imaging;
        for i in 0..3 {
            if !(im.window_min[i] < im.window_max[i]) {
                v.push(format!(
                    "imaging window must satisfy min < max along axis {}",
                    i + 1
                ));
            }
        }
        if !(im.pitch_cross > 0.0 && im.pitch_cross.is_finite()) {
            v.push("imaging.pitch_cross must be positive".into());
        }
        if !(im.pitch_range > 0.0 && im.pitch_range.is_finite()) {
            v.push("imaging.pitch_range must be positive".into());
        }
        if im.window_min[0] <= 0.0 || im.window_max[0] >= g.l1 || im.window_min[1] <= 0.0 || im.window_max[1] >= g.l2 {
            v.push("imaging window must lie strictly inside the cross-section".into());
        }
        if im.window_min[2] <= -self.source.standoff {
            v.push("imaging window must lie strictly above the array plane x3 = -L".into());
        }
        if im.window_max[2] >= 0.0 {
            v.push("imaging window must lie strictly below the end wall x3 = 0".into());
        }

        if let Some(r) = &self.reflector {
            let window = self.imaging_window();
            match r {
                ReflectorSpec::Point { center, value } => {
                    if !window.contains(center) {
                        v.push("reflector.center must lie inside the imaging window".into());
                    }
                    if !value.is_finite() {
                        v.push("reflector.value must be finite".into());
                    }
                }
                ReflectorSpec::AnisotropicPoint { center, values } => {
                    if !window.contains(center) {
                        v.push("reflector.center must lie inside the imaging window".into());
                    }
                    if values.iter().any(|x| !x.is_finite()) {
                        v.push("reflector.values must be finite".into());
                    }
                }
                ReflectorSpec::Shell { outer, inner, value } => {
                    if !outer.is_proper() || !inner.is_proper() {
                        v.push("shell boxes must satisfy min < max".into());
                    }
                    if !(window.contains(&outer.min) && window.contains(&outer.max)) {
                        v.push("shell outer box must lie inside the imaging window".into());
                    }
                    let inner_covers_outer = (0..3).all(|i| {
                        inner.min[i] <= outer.min[i] && inner.max[i] >= outer.max[i]
                    });
                    if inner_covers_outer {
                        v.push("shell R \\ R_o is empty".into());
                    }
                    if !value.is_finite() {
                        v.push("reflector.value must be finite".into());
                    }
                }
            }
        }
        v
    }
}

/// Uniform receiver positions inside the aperture.
///
/// Construction rule, in order:
/// 1. spacing larger than an aperture side is an error;
/// 2. the aperture is clamped to the interior box of the cross-section with
///    margin `spacing/2`, so receivers never sample the eigenfunction zero
///    lines on the walls (an empty clamp is an error);
/// 3. per axis, `n = floor(side/spacing) + 1` positions at the given spacing,
///    centered within the clamped aperture.
///
/// Ordering is row-major: `x1` outer, `x2` inner.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceiverGrid {
    pub points: Vec<XPoint>,
    pub n: [usize; 2],
    pub spacing: f64,
}

pub fn build_receiver_grid(array: &ArraySpec, geom: &WaveguideGeometry) -> Result<ReceiverGrid> {
    let s = array.spacing;
    if !(s > 0.0) {
        return Err(Error::Validation("receiver spacing must be positive".into()));
    }
    if s > array.size[0] || s > array.size[1] {
        return Err(Error::Validation(format!(
            "receiver spacing {s} exceeds the aperture sides {}x{}",
            array.size[0], array.size[1]
        )));
    }
    let mut axes: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
    for (i, l) in [geom.l1, geom.l2].into_iter().enumerate() {
        let lo = (array.center[i] - array.size[i] / 2.0).max(s / 2.0);
        let hi = (array.center[i] + array.size[i] / 2.0).min(l - s / 2.0);
        if lo > hi {
            return Err(Error::Validation(format!(
                "aperture clamped to the interior margin is empty along axis {}",
                i + 1
            )));
        }
        let side = hi - lo;
        let count = (side / s + 1e-9).floor() as usize + 1;
        let margin = (side - (count - 1) as f64 * s) / 2.0;
        axes[i] = (0..count).map(|j| lo + margin + j as f64 * s).collect();
    }
    let n = [axes[0].len(), axes[1].len()];
    let mut points = Vec::with_capacity(n[0] * n[1]);
    for &x1 in &axes[0] {
        for &x2 in &axes[1] {
            points.push([x1, x2]);
        }
    }
    Ok(ReceiverGrid { points, n, spacing: s })
}

impl ReceiverGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Keep every `r`-th receiver along each axis, starting at index 0.
    pub fn decimate(&self, r: usize) -> ReceiverGrid {
        assert!(r >= 1, "decimation factor must be at least 1");
        let keep1: Vec<usize> = (0..self.n[0]).step_by(r).collect();
        let keep2: Vec<usize> = (0..self.n[1]).step_by(r).collect();
        let mut points = Vec::with_capacity(keep1.len() * keep2.len());
        for &i in &keep1 {
            for &j in &keep2 {
                points.push(self.points[i * self.n[1] + j]);
            }
        }
        ReceiverGrid {
            points,
            n: [keep1.len(), keep2.len()],
            spacing: self.spacing * r as f64,
        }
    }
}

/// Voxel lattice over an axis-aligned window.
///
/// The pitches are kept exact; the voxel block is centered in the window, so
/// the covered span `n * pitch` may deviate from the window extent by less
/// than one pitch. Voxel centers along an axis are
/// `center + (i - (n-1)/2) * pitch`. Linear index: `(i1*n2 + i2)*n3 + i3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImagingGrid {
    pub center: Vec3,
    pub pitch: Vec3,
    pub n: [usize; 3],
}

impl ImagingGrid {
    /// Grid of the scenario's imaging spec at its native pitches.
    pub fn from_spec(spec: &ImagingSpec) -> Self {
        Self::with_pitches(spec, spec.pitch_cross, spec.pitch_range)
    }

    /// Grid over the same window with overridden pitches (inversion grids).
    pub fn with_pitches(spec: &ImagingSpec, pitch_cross: f64, pitch_range: f64) -> Self {
        let pitch = [pitch_cross, pitch_cross, pitch_range];
        let mut n = [0usize; 3];
        let mut center = [0.0; 3];
        for i in 0..3 {
            let extent = spec.window_max[i] - spec.window_min[i];
            n[i] = ((extent / pitch[i]).round() as usize).max(1);
            center[i] = 0.5 * (spec.window_min[i] + spec.window_max[i]);
        }
        Self { center, pitch, n }
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn lin(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n[1] + i[1]) * self.n[2] + i[2]
    }

    #[inline]
    pub fn unlin(&self, lin: usize) -> [usize; 3] {
        let i3 = lin % self.n[2];
        let r = lin / self.n[2];
        [r / self.n[1], r % self.n[1], i3]
    }

    /// Coordinate of voxel center `i` along `axis`.
    #[inline]
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.center[axis] + (i as f64 - (self.n[axis] as f64 - 1.0) / 2.0) * self.pitch[axis]
    }

    pub fn voxel_center(&self, i: [usize; 3]) -> Vec3 {
        [self.coord(0, i[0]), self.coord(1, i[1]), self.coord(2, i[2])]
    }

    /// Voxel whose cell contains `p`, if any.
    pub fn voxel_of(&self, p: &Vec3) -> Option<[usize; 3]> {
        let mut idx = [0usize; 3];
        for a in 0..3 {
            let first = self.coord(a, 0);
            let f = (p[a] - first) / self.pitch[a] + 0.5;
            if f < 0.0 {
                return None;
            }
            let i = f.floor() as usize;
            if i >= self.n[a] {
                return None;
            }
            idx[a] = i;
        }
        Some(idx)
    }

    /// Midpoint-quadrature voxel volume.
    pub fn voxel_volume(&self) -> f64 {
        self.pitch[0] * self.pitch[1] * self.pitch[2]
    }

    /// Axis coordinates as a vector.
    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        (0..self.n[axis]).map(|i| self.coord(axis, i)).collect()
    }
}

/// The three reference experiment presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    Point,
    Shell,
    Anisotropic,
}

impl std::str::FromStr for PresetKind {
    type Err = Error;
    fn from_str(v: &str) -> Result<Self> {
        match v {
            "point" => Ok(PresetKind::Point),
            "shell" => Ok(PresetKind::Shell),
            "anisotropic" => Ok(PresetKind::Anisotropic),
            other => Err(Error::Parse(format!("unknown preset '{other}'"))),
        }
    }
}

const CROSS_PITCH: f64 = 1.0 / 18.0;
const RANGE_PITCH: f64 = 1.0 / 6.0;

fn preset_window(center: Vec3) -> (Vec3, Vec3) {
    // 55 cross-range voxels and 37 range voxels, odd counts so the window
    // center is exactly the middle voxel center.
    let half = [27.5 * CROSS_PITCH, 27.5 * CROSS_PITCH, 18.5 * RANGE_PITCH];
    (
        [center[0] - half[0], center[1] - half[1], center[2] - half[2]],
        [center[0] + half[0], center[1] + half[1], center[2] + half[2]],
    )
}

/// Reference configuration: cross-section 13.9 x 14.2, array standoff 41.8,
/// source at the waveguide axis, 75% aperture sampled at spacing 1/18,
/// second field component measured, 350 first-arriving mode pairs.
pub fn preset(kind: PresetKind) -> (Scenario, ReflectorSpec) {
    let geometry = WaveguideGeometry { l1: 13.9, l2: 14.2, terminating: true };
    let (reflector, polarization, window_center) = match kind {
        PresetKind::Point => (
            ReflectorSpec::Point { center: [6.95, 4.73, -10.44], value: 1.0 },
            [0.0, 1.0, 0.0],
            [6.95, 4.73, -10.44],
        ),
        PresetKind::Shell => (
            ReflectorSpec::Shell {
                outer: Box3::new([6.38, 6.51, -13.09], [7.54, 7.69, -9.19]),
                inner: Box3::new([6.09, 6.22, -12.22], [7.25, 7.40, -8.32]),
                value: 8.0,
            },
            [0.0, 1.0, 0.0],
            [6.96, 7.10, -11.14],
        ),
        PresetKind::Anisotropic => (
            ReflectorSpec::AnisotropicPoint { center: [6.95, 4.73, -10.44], values: [3.0, 1.0, 5.0] },
            [1.0, 1.0, 1.0],
            [6.95, 4.73, -10.44],
        ),
    };
    let (window_min, window_max) = preset_window(window_center);
    let scenario = Scenario {
        geometry,
        k: 2.0 * PI,
        source: SourceSpec { position: [6.95, 7.1], polarization, standoff: 41.8 },
        array: ArraySpec {
            center: [6.95, 7.1],
            size: [10.5, 10.65],
            spacing: CROSS_PITCH,
            components: vec![2],
        },
        modes: ModesSpec { budget: 350, evanescent_cutoff: 9.0 },
        imaging: ImagingSpec { window_min, window_max, pitch_cross: CROSS_PITCH, pitch_range: RANGE_PITCH },
        reflector: Some(reflector.clone()),
    };
    debug_assert!(scenario.violations().is_empty());
    (scenario, reflector)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_point_matches_reference_values() {
        let (sc, refl) = preset(PresetKind::Point);
        assert_eq!(sc.geometry.l1, 13.9);
        assert_eq!(sc.geometry.l2, 14.2);
        assert_eq!(sc.source.standoff, 41.8);
        assert!((sc.array.spacing - 1.0 / 18.0).abs() < 1e-15);
        match refl {
            ReflectorSpec::Point { center, .. } => assert_eq!(center, [6.95, 4.73, -10.44]),
            _ => panic!("expected point reflector"),
        }
        assert!(sc.violations().is_empty());
    }

    #[test]
    fn preset_shell_and_anisotropic_values() {
        let (_, shell) = preset(PresetKind::Shell);
        match shell {
            ReflectorSpec::Shell { value, outer, inner } => {
                assert_eq!(value, 8.0);
                assert_eq!(outer.min, [6.38, 6.51, -13.09]);
                assert_eq!(inner.max, [7.25, 7.40, -8.32]);
            }
            _ => panic!("expected shell"),
        }
        let (sc, aniso) = preset(PresetKind::Anisotropic);
        match aniso {
            ReflectorSpec::AnisotropicPoint { values, .. } => assert_eq!(values, [3.0, 1.0, 5.0]),
            _ => panic!("expected anisotropic point"),
        }
        assert_eq!(sc.source.polarization, [1.0, 1.0, 1.0]);
    }

    #[test]
    fn json_roundtrip_is_equivalent_and_stable() {
        let (sc, _) = preset(PresetKind::Shell);
        let text = sc.to_json();
        let back = Scenario::from_json(&text).unwrap();
        assert_eq!(back, sc);
        // Byte-stable serialization.
        assert_eq!(back.to_json(), text);
        assert_eq!(sc.content_hash_hex(), back.content_hash_hex());
    }

    #[test]
    fn validation_catches_window_past_end_wall() {
        let (mut sc, _) = preset(PresetKind::Point);
        sc.imaging.window_max[2] = 0.5;
        sc.reflector = None;
        let v = sc.violations();
        assert!(v.iter().any(|m| m.contains("end wall")), "{v:?}");
    }

    #[test]
    fn validation_catches_empty_components() {
        let (mut sc, _) = preset(PresetKind::Point);
        sc.array.components.clear();
        assert!(sc.violations().iter().any(|m| m.contains("components")));
    }

    #[test]
    fn validation_catches_budget_overflow() {
        let (mut sc, _) = preset(PresetKind::Point);
        sc.modes.budget = 100_000;
        assert!(sc.violations().iter().any(|m| m.contains("budget")));
    }

    #[test]
    fn receiver_grid_75_percent_aperture() {
        let (sc, _) = preset(PresetKind::Point);
        let mut array = sc.array.clone();
        array.spacing = 0.5;
        let grid = build_receiver_grid(&array, &sc.geometry).unwrap();
        assert_eq!(grid.n, [22, 22]);
        // All points inside the aperture and strictly inside the section.
        for p in &grid.points {
            assert!(p[0] >= 1.7 - 1e-12 && p[0] <= 12.2 + 1e-12);
            assert!(p[1] >= 1.775 - 1e-12 && p[1] <= 12.425 + 1e-12);
            assert!(sc.geometry.contains_cross(*p));
        }
        // Row-major ordering by x1 then x2.
        assert!(grid.points[0][0] < grid.points[22][0]);
        assert_eq!(grid.points[0][0], grid.points[1][0]);
    }

    #[test]
    fn receiver_grid_full_aperture_degenerate_spacing_clamps() {
        let (sc, _) = preset(PresetKind::Point);
        let array = ArraySpec {
            center: [13.9 / 2.0, 14.2 / 2.0],
            size: [13.9, 14.2],
            spacing: 13.9,
            components: vec![2],
        };
        let grid = build_receiver_grid(&array, &sc.geometry).unwrap();
        // The interior clamp leaves a single admissible position per axis.
        assert_eq!(grid.n, [1, 1]);
        assert!(sc.geometry.contains_cross(grid.points[0]));
    }

    #[test]
    fn receiver_grid_spacing_exceeding_aperture_errors() {
        let (sc, _) = preset(PresetKind::Point);
        let mut array = sc.array.clone();
        array.spacing = 20.0;
        assert!(build_receiver_grid(&array, &sc.geometry).is_err());
    }

    #[test]
    fn receiver_decimation_matches_direct_spacing_counts() {
        let (sc, _) = preset(PresetKind::Point);
        let fine = build_receiver_grid(&sc.array, &sc.geometry).unwrap();
        assert_eq!(fine.n, [190, 192]);
        let dec = fine.decimate(9);
        assert_eq!(dec.n, [22, 22]);
        assert!((dec.spacing - 0.5).abs() < 1e-12);
    }

    #[test]
    fn imaging_grid_centers_and_indexing() {
        let (sc, refl) = preset(PresetKind::Point);
        let grid = ImagingGrid::from_spec(&sc.imaging);
        assert_eq!(grid.n, [55, 55, 37]);
        // Odd counts center the true reflector exactly on a voxel.
        let c = refl.center();
        let mid = [27, 27, 18];
        let vc = grid.voxel_center(mid);
        for a in 0..3 {
            assert!((vc[a] - c[a]).abs() < 1e-12);
        }
        assert_eq!(grid.voxel_of(&c), Some(mid));
        assert_eq!(grid.unlin(grid.lin(mid)), mid);
        assert_eq!(grid.voxel_of(&[0.0, 0.0, -1.0]), None);
    }

    #[test]
    fn l1_grid_pitch_override() {
        let (sc, refl) = preset(PresetKind::Point);
        let grid = ImagingGrid::with_pitches(&sc.imaging, 0.29, 0.87);
        assert_eq!(grid.n, [11, 11, 7]);
        // Truth still falls on the middle voxel.
        assert_eq!(grid.voxel_of(&refl.center()), Some([5, 5, 3]));
    }
}
