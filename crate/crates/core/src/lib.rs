//! Polyhedral realizations of crystal bases.

pub mod cartan;
pub mod crystal;
pub mod error;
pub mod iota;
pub mod linforms;
pub mod oracle;
pub mod realization;
pub mod scalar;
pub mod special;

pub use cartan::{CartanData, Family, Weight};
pub use error::{Error, Result};
pub use iota::IotaSequence;
pub use linforms::{ClosureBounds, FormSet, LinForm, Operator};
pub use realization::inequality_system;
pub use scalar::Coeff;

pub type Form = LinForm<i64>;
pub type BigForm = LinForm<num_bigint::BigInt>;
pub type Forms = FormSet<i64>;
pub type BigForms = FormSet<num_bigint::BigInt>;
