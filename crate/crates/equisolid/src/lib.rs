pub mod cyclo;
pub mod error;
pub mod linalg;
pub mod matgroup;
pub mod picard;
pub mod report;
pub mod catalog;
pub mod classifier;
pub mod links;
pub mod spec_format;
pub mod toric;
pub mod surfaces;
