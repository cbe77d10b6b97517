//! File formats, benchmarking, map rendering and the command-line front end
//! for the stable districting solvers in `districts-core`.

pub mod bench;
pub mod cli;
pub mod io;
pub mod render;
