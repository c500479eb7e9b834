pub mod error;
pub mod exact;
pub mod families;
pub mod json;
pub mod linalg;
pub mod normalizer;
pub mod optim;
pub mod pair;
pub mod quaternion;
pub mod tol;
pub mod ws;

pub use error::{Error, Result};
pub use normalizer::{membership, normalizer_algebra, MembershipResult, NormalizerData};
pub use pair::{MetricPair, NilpotentAlgebra};
pub use tol::Tolerances;
