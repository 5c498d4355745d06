pub mod kernel;
pub mod treeops;
pub mod models;
pub mod presentation;
pub mod duality;
pub mod dgcalc;
pub mod infinity;
pub mod algebraside;
pub mod specfile;
pub mod verify;
pub mod cli;
