pub mod algebra;
pub mod group;
pub mod homspace;
pub mod ledger;
pub mod ndr;
pub mod persistence;
pub mod rng;
