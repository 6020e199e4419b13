pub mod cli;
pub mod group;
pub mod lgroup;
pub mod lo_space;
pub mod orderings;
