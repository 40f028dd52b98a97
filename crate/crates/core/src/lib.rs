pub mod error;
pub mod exact;
pub mod linalg;
pub mod mat;
pub mod subspace;
pub mod maps;
pub mod abelian;
pub mod gradings;
pub mod parallel;
pub mod catalog;
pub mod displayed;
pub mod realforms;
pub mod report;
