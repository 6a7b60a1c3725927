pub mod cli;
pub mod cmap;
pub mod curves;
pub mod export;
pub mod expr;
pub mod frame;
pub mod mesh;
pub mod service;
pub mod solids;
pub mod stitch;
pub mod surfaces;
