pub mod cohomology;
pub mod error;
pub mod field;
pub mod graded;
pub mod instance;
pub mod lefschetz;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod report;
