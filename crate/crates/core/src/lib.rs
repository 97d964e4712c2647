pub mod error;
pub mod gleason;
pub mod linalg;
pub mod quantum;
pub mod scalar;
pub mod spectral;
pub mod trace;
