pub mod check;
pub mod curvature;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod parabolic;
pub mod rootsystem;
pub mod scalar;
pub mod verify;
pub mod realization;
