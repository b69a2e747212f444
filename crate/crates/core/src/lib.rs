pub mod arith;
pub mod error;
pub mod weierstrass;
pub mod topology;
pub mod oracle;
pub mod transforms;
pub mod search;
pub mod sampling;
