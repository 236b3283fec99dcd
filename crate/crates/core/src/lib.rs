pub mod cli;
pub mod construction;
pub mod count;
pub mod dot;
pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod search;
pub mod tree;
pub mod verifier;
