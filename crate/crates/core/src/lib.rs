pub mod assignment;
pub mod bpp;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod frontend;
pub mod ground;
pub mod heuristics;
pub mod oracle;
pub mod solver;
