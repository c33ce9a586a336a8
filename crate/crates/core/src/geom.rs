//! Small geometric helpers shared by the kernels.
//!
//! Coordinates follow the waveguide convention: `x = (x1, x2)` is the
//! cross-range position in the rectangular cross-section and `x3 <= 0` is the
//! range coordinate, with the end wall at `x3 = 0`.

use num_complex::Complex64;

/// Real 3-vector.
pub type Vec3 = [f64; 3];
/// Complex 3-vector (stack allocated; the kernels call these in tight loops).
pub type CVec3 = [Complex64; 3];
/// Complex 3x3 tensor, row major: `m[row][col]`.
pub type CMat3 = [[Complex64; 3]; 3];

/// Cross-range point `(x1, x2)`.
pub type XPoint = [f64; 2];

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn czero3() -> CVec3 {
    [C_ZERO; 3]
}

#[inline]
pub fn czero33() -> CMat3 {
    [[C_ZERO; 3]; 3]
}

#[inline]
pub fn dot_rc(a: &Vec3, b: &CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn dot_cc(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm3(a: &Vec3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

#[inline]
pub fn cnorm3(a: &CVec3) -> f64 {
    (a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()).sqrt()
}

/// Frobenius norm of a complex 3x3 tensor.
pub fn cmat_norm(m: &CMat3) -> f64 {
    let mut s = 0.0;
    for row in m {
        for v in row {
            s += v.norm_sqr();
        }
    }
    s.sqrt()
}

/// Transpose of a complex 3x3 tensor.
pub fn cmat_transpose(m: &CMat3) -> CMat3 {
    let mut t = czero33();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = *v;
        }
    }
    t
}

/// Matrix-vector product for stack tensors.
pub fn cmat_mul_vec(m: &CMat3, v: &CVec3) -> CVec3 {
    let mut out = czero3();
    for (i, row) in m.iter().enumerate() {
        out[i] = dot_cc(row, v);
    }
    out
}

/// Axis-aligned box in the 3D waveguide coordinates.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Box3 {
    pub min: Vec3,
    pub max: Vec3,
}

impl Box3 {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        (0..3).all(|i| p[i] >= self.min[i] && p[i] <= self.max[i])
    }

    pub fn contains_strict(&self, p: &Vec3) -> bool {
        (0..3).all(|i| p[i] > self.min[i] && p[i] < self.max[i])
    }

    pub fn center(&self) -> Vec3 {
        [
            0.5 * (self.min[0] + self.max[0]),
            0.5 * (self.min[1] + self.max[1]),
            0.5 * (self.min[2] + self.max[2]),
        ]
    }

    pub fn is_proper(&self) -> bool {
        (0..3).all(|i| self.min[i] < self.max[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_contains() {
        let b = Box3::new([0.0, 0.0, -2.0], [1.0, 1.0, -1.0]);
        assert!(b.contains(&[0.5, 0.5, -1.5]));
        assert!(b.contains(&[0.0, 0.0, -2.0]));
        assert!(!b.contains_strict(&[0.0, 0.0, -2.0]));
        assert!(!b.contains(&[0.5, 0.5, -0.5]));
    }

    #[test]
    fn transpose_roundtrip() {
        let mut m = czero33();
        m[0][1] = Complex64::new(1.0, 2.0);
        m[2][0] = Complex64::new(-3.0, 0.5);
        let t = cmat_transpose(&m);
        assert_eq!(t[1][0], m[0][1]);
        assert_eq!(t[0][2], m[2][0]);
        assert_eq!(cmat_transpose(&t), m);
    }
}
