pub mod cli;
pub mod diagram_io;
pub mod dimers_trees;
pub mod error;
pub mod morse;
pub mod planar_map;
pub mod tait_overlay;
