pub mod markov;
pub mod affine;
pub mod polytope;
pub mod atf;
pub mod packing;
pub mod momentmap;
pub mod document;
pub mod render;
pub mod cli;
