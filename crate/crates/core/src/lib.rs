//! Visual-LiDAR odometry with sparse query fusion and temporal memory banks.
//!
//! The pipeline pairs consecutive LiDAR scans and camera images, lifts the
//! scan into a cylindrical pseudo-image, fuses sparse LiDAR queries with
//! image features through deformable sampling and cross-attention, regresses
//! an inter-frame motion coarse-to-fine over a feature pyramid, and refines
//! both the initialization and the final estimate with FIFO memory banks of
//! historical features and poses. Training optimizes a collective average
//! loss over temporal sub-clips with learnable loss scales.
//!
//! Everything learned is built from a small set of differentiable primitives
//! on an f64 tape ([`tape`]), so reverse-mode gradients can be verified
//! end-to-end against central finite differences ([`training::grad_check`]).

pub mod config;
pub mod dataio;
pub mod encoders;
pub mod error;
pub mod eval;
pub mod fusion;
pub mod geom;
pub mod nn;
pub mod params;
pub mod pipeline;
pub mod pose;
pub mod synth;
pub mod tape;
pub mod temporal;
pub mod tensor;
pub mod training;

pub use config::Config;
pub use error::{Error, Result};
pub use geom::{CameraModel, CylindricalParams, Quaternion, RigidMotion};
pub use params::ModelParams;
pub use tensor::Tensor;
