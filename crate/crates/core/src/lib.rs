pub mod cli;
pub mod harness;
pub mod poly;
pub mod special;
