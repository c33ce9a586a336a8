//! Electromagnetic scattering and imaging in a terminating rectangular
//! waveguide.
//!
//! The crate simulates scattering from localized dielectric reflectors
//! between a remote sensor array and the conducting end wall of a
//! semi-infinite rectangular waveguide, and reconstructs the reflectors from
//! array data. The pieces:
//!
//! * [`scenario`] — experiment description, presets, receiver/imaging grids;
//! * [`modes`] — vectorial-Laplacian eigenmodes of the cross-section;
//! * [`reference`] — the unperturbed field of the point-dipole source;
//! * [`greens`] — modal vector Green's functions and the dyadic tensor;
//! * [`forward`] — Born sensing matrix, data synthesis, Born series;
//! * [`imaging`] — reverse-time-migration and l1-regularized inversion;
//! * [`formats`] — binary/CSV/PGM file formats shared with the CLI.
//!
//! Lengths are expressed in units of the wavelength, so `k = 2*pi`.

pub mod error;
pub mod formats;
pub mod forward;
pub mod geom;
pub mod greens;
pub mod imaging;
mod kernels;
pub mod modes;
pub mod reference;
pub mod scenario;

pub use error::{Error, Result};
pub use geom::{Box3, CMat3, CVec3, Vec3, XPoint};
pub use modes::ModeEntry;
pub use scenario::{
    build_receiver_grid, preset, ArraySpec, ImagingGrid, ImagingSpec, ModesSpec, PresetKind,
    ReceiverGrid, ReflectorSpec, Scenario, SourceSpec, WaveguideGeometry,
};
