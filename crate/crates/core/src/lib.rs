//! Rotation-aware numeric kernels and small CNNs, built for CPU training at
//! desk scale.
//!
//! The centerpiece is global polar pooling ([`gp_pool`]): a max-pooling
//! operator over a polar tiling of a feature map, so that rotating the input
//! image turns into a circular translation along the angular axis of the
//! output. On top of it sit rotation-estimation networks ([`models`]), a
//! rotation-restricted differentiable warp ([`warp`]), and the rotational
//! rectification composition that un-rotates features for a downstream
//! classifier that only ever saw upright inputs.
//!
//! All numeric code is generic over the element type via [`Scalar`]:
//! `f32` for training, `f64` for gradient checking. Concrete aliases
//! ([`Tensor32`], [`Tensor64`]) are exported at the crate root.

pub mod dataset;
pub mod error;
pub mod gp_pool;
pub mod layers;
pub mod models;
pub mod scalar;
pub mod tensor;
pub mod trainer;
pub mod warp;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tensor::{Shape4, Tensor};

/// Training-precision tensor.
pub type Tensor32 = Tensor<f32>;
/// Gradient-check-precision tensor.
pub type Tensor64 = Tensor<f64>;
