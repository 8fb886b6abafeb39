//! Quaternion and rigid-motion algebra, cylindrical LiDAR projection, and
//! pinhole camera projection.
//!
//! Quaternions use the Hamilton convention, stored as (w, x, y, z). All
//! geometry runs in double precision; these are pure value types, safe to
//! use from any thread.

use crate::error::{Error, Result};

/// Unit quaternion (after normalizing operations), (w, x, y, z) storage,
/// Hamilton product convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Rotation of `angle` radians about a (not necessarily unit) axis.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n == 0.0 {
            return Quaternion::IDENTITY;
        }
        let (s, c) = ((angle / 2.0).sin(), (angle / 2.0).cos());
        Quaternion::new(c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n)
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(&self) -> Quaternion {
        let n = self.norm();
        Quaternion::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn conjugate(&self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Inverse; equals the conjugate for unit quaternions.
    pub fn inverse(&self) -> Quaternion {
        let n2 = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z;
        let c = self.conjugate();
        Quaternion::new(c.w / n2, c.x / n2, c.y / n2, c.z / n2)
    }

    /// Rotation angle in radians, in [0, pi]. Stable near the identity.
    pub fn angle(&self) -> f64 {
        let v = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        2.0 * v.atan2(self.w.abs())
    }

    /// Distance absorbing the double cover: min(|q1-q2|, |q1+q2|).
    pub fn sign_aligned_distance(&self, other: &Quaternion) -> f64 {
        let d = |s: f64| {
            let dw = self.w - s * other.w;
            let dx = self.x - s * other.x;
            let dy = self.y - s * other.y;
            let dz = self.z - s * other.z;
            (dw * dw + dx * dx + dy * dy + dz * dz).sqrt()
        };
        d(1.0).min(d(-1.0))
    }

    /// 3x3 rotation matrix for a unit quaternion.
    pub fn to_matrix(&self) -> [[f64; 3]; 3] {
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        [
            [
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                1.0 - 2.0 * (x * x + y * y),
            ],
        ]
    }

    /// Quaternion from a rotation matrix using Shepperd's branch selection
    /// (largest of trace and diagonal entries), stable near trace
    /// degeneracies such as 180-degree rotations.
    pub fn from_matrix(m: &[[f64; 3]; 3]) -> Quaternion {
        let trace = m[0][0] + m[1][1] + m[2][2];
        let q = if trace >= m[0][0] && trace >= m[1][1] && trace >= m[2][2] {
            let s = (trace + 1.0).sqrt() * 2.0;
            Quaternion::new(
                0.25 * s,
                (m[2][1] - m[1][2]) / s,
                (m[0][2] - m[2][0]) / s,
                (m[1][0] - m[0][1]) / s,
            )
        } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
            let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
            Quaternion::new(
                (m[2][1] - m[1][2]) / s,
                0.25 * s,
                (m[0][1] + m[1][0]) / s,
                (m[0][2] + m[2][0]) / s,
            )
        } else if m[1][1] >= m[2][2] {
            let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
            Quaternion::new(
                (m[0][2] - m[2][0]) / s,
                (m[0][1] + m[1][0]) / s,
                0.25 * s,
                (m[1][2] + m[2][1]) / s,
            )
        } else {
            let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
            Quaternion::new(
                (m[1][0] - m[0][1]) / s,
                (m[0][2] + m[2][0]) / s,
                (m[1][2] + m[2][1]) / s,
                0.25 * s,
            )
        };
        q.normalized()
    }
}

/// Hamilton product a (x) b. Inputs need not be unit.
pub fn quat_mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

/// Rotate `v` by the unit quaternion `q`: the vector part of q (x) (0,v) (x) q^-1.
///
/// Evaluated through the rotation matrix so that the identity quaternion is
/// an exact no-op.
pub fn quat_rotate(q: &Quaternion, v: [f64; 3]) -> [f64; 3] {
    let m = q.to_matrix();
    mat3_mul_vec(&m, v)
}

fn mat3_mul_vec(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Rigid motion: unit rotation plus translation in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Quaternion,
    pub translation: [f64; 3],
}

impl RigidMotion {
    pub const IDENTITY: RigidMotion = RigidMotion {
        rotation: Quaternion::IDENTITY,
        translation: [0.0; 3],
    };

    pub fn new(rotation: Quaternion, translation: [f64; 3]) -> Self {
        RigidMotion {
            rotation,
            translation,
        }
    }

    /// Apply to a point: R p + t.
    pub fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        let r = quat_rotate(&self.rotation, p);
        [
            r[0] + self.translation[0],
            r[1] + self.translation[1],
            r[2] + self.translation[2],
        ]
    }

    pub fn inverse(&self) -> RigidMotion {
        let ri = self.rotation.conjugate();
        let t = quat_rotate(&ri, self.translation);
        RigidMotion::new(ri, [-t[0], -t[1], -t[2]])
    }

    /// 4x4 homogeneous matrix.
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let r = self.rotation.to_matrix();
        let t = self.translation;
        [
            [r[0][0], r[0][1], r[0][2], t[0]],
            [r[1][0], r[1][1], r[1][2], t[1]],
            [r[2][0], r[2][1], r[2][2], t[2]],
            [0.0, 0.0, 0.0, 1.0],
        ]
    }

    /// Recover a motion from a homogeneous matrix. Rejects matrices whose
    /// rotation block deviates from orthonormality by more than 1e-3
    /// (a corrupted pose file, typically).
    pub fn from_matrix(m: &[[f64; 4]; 4]) -> Result<RigidMotion> {
        let r = [
            [m[0][0], m[0][1], m[0][2]],
            [m[1][0], m[1][1], m[1][2]],
            [m[2][0], m[2][1], m[2][2]],
        ];
        // max |R^T R - I|
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let dot = r[0][i] * r[0][j] + r[1][i] * r[1][j] + r[2][i] * r[2][j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        if worst > 1e-3 {
            return Err(Error::format(format!(
                "rotation block deviates from orthonormality by {worst:.3e} (limit 1e-3)"
            )));
        }
        Ok(RigidMotion::new(
            Quaternion::from_matrix(&r),
            [m[0][3], m[1][3], m[2][3]],
        ))
    }
}

/// Compose a residual motion onto a prior:
/// q = dq (x) q_prior, t = R(dq) t_prior + dt. Output rotation renormalized.
///
/// Equals the homogeneous matrix product T(delta) * T(prior).
pub fn compose_residual(delta: &RigidMotion, prior: &RigidMotion) -> RigidMotion {
    let rotation = quat_mul(&delta.rotation, &prior.rotation).normalized();
    let rt = quat_rotate(&delta.rotation, prior.translation);
    RigidMotion::new(
        rotation,
        [
            rt[0] + delta.translation[0],
            rt[1] + delta.translation[1],
            rt[2] + delta.translation[2],
        ],
    )
}

/// Cylindrical projection geometry: radians per bin and grid extent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylindricalParams {
    /// Radians of azimuth per horizontal bin.
    pub delta_theta: f64,
    /// Radians of elevation per vertical bin.
    pub delta_phi: f64,
    /// Vertical bin count.
    pub height: usize,
    /// Horizontal bin count.
    pub width: usize,
}

impl CylindricalParams {
    pub fn new(delta_theta: f64, delta_phi: f64, height: usize, width: usize) -> Result<Self> {
        if delta_theta <= 0.0 || delta_phi <= 0.0 {
            return Err(Error::Config(
                "cylindrical bin resolutions must be positive".into(),
            ));
        }
        if height == 0 || width == 0 {
            return Err(Error::Config("cylindrical grid must be at least 1x1".into()));
        }
        Ok(CylindricalParams {
            delta_theta,
            delta_phi,
            height,
            width,
        })
    }
}

/// Continuous cylindrical coordinates of a point:
/// u = atan2(y, x) / delta_theta, v = asin(z / |p|) / delta_phi.
///
/// Binning to integer cells is the caller's job.
pub fn cylindrical_project(p: [f64; 3], params: &CylindricalParams) -> Result<(f64, f64)> {
    let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if r == 0.0 {
        return Err(Error::format(
            "cannot project a zero-length point onto the cylinder",
        ));
    }
    let u = p[1].atan2(p[0]) / params.delta_theta;
    let v = (p[2] / r).asin() / params.delta_phi;
    Ok((u, v))
}

/// Pinhole camera: intrinsics plus the LiDAR-to-camera extrinsic.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraModel {
    /// 3x3 intrinsic matrix, row-major, pixels.
    pub intrinsics: [[f64; 3]; 3],
    /// Maps LiDAR-frame points into the camera frame.
    pub extrinsic: RigidMotion,
    pub image_width: usize,
    pub image_height: usize,
}

impl CameraModel {
    pub fn new(
        intrinsics: [[f64; 3]; 3],
        extrinsic: RigidMotion,
        image_width: usize,
        image_height: usize,
    ) -> Result<Self> {
        if intrinsics[0][0] <= 0.0 || intrinsics[1][1] <= 0.0 {
            return Err(Error::Config("camera focal entries must be positive".into()));
        }
        if intrinsics[2][0] != 0.0 || intrinsics[2][1] != 0.0 {
            return Err(Error::Config(
                "camera intrinsics bottom-left block must be zero".into(),
            ));
        }
        Ok(CameraModel {
            intrinsics,
            extrinsic,
            image_width,
            image_height,
        })
    }
}

/// Result of projecting a LiDAR-frame point through a camera.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub px: f64,
    pub py: f64,
    /// Camera-frame depth in meters.
    pub depth: f64,
    /// True iff depth > 0 and (px, py) lies inside the image rectangle.
    pub in_view: bool,
}

/// Project a LiDAR-frame point: extrinsic, then intrinsics, then the
/// homogeneous division. Out-of-view is a normal result.
pub fn camera_project(p: [f64; 3], cam: &CameraModel) -> Projection {
    let c = cam.extrinsic.apply(p);
    let depth = c[2];
    if depth <= 0.0 {
        return Projection {
            px: 0.0,
            py: 0.0,
            depth,
            in_view: false,
        };
    }
    let k = &cam.intrinsics;
    let hx = k[0][0] * c[0] + k[0][1] * c[1] + k[0][2] * c[2];
    let hy = k[1][0] * c[0] + k[1][1] * c[1] + k[1][2] * c[2];
    let hz = k[2][2] * c[2];
    let px = hx / hz;
    let py = hy / hz;
    let in_view =
        px >= 0.0 && px <= (cam.image_width - 1) as f64 && py >= 0.0 && py <= (cam.image_height - 1) as f64;
    Projection {
        px,
        py,
        depth,
        in_view,
    }
}

/// 4x4 homogeneous matrix product, the oracle form of motion composition.
pub fn mat4_mul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}
