//! Theta lifts of discrete series between unitary groups `U(p,q)` and
//! `U(r,s)`: nonvanishing, explicit lifts, packet bookkeeping, the sign
//! characters of the transfer and the joint-harmonics K-type correspondence.

pub mod error;
pub mod half;
pub mod hc;
pub mod ktypes;
pub mod lifting;
pub mod nonvanishing;
pub mod packets;
pub mod sign;
pub mod suites;
pub mod transfer;

/// Half-integers with 64-bit storage; every algorithm in the crate uses this.
pub type Half = half::HalfInt<i64>;

pub use error::{Error, Result};
pub use hc::{
    conjugate_dual, make_regular_deformation, split_abgd, HcParam, LiftContext, Signature,
};
pub use ktypes::{correspond_ktype, split_mu, KType};
pub use lifting::{lift, lift_down, lift_up, AqBlock, AqLambdaData, LiftResult};
pub use nonvanishing::{invariants, li_sufficient, occurs, NvInvariants, Occurrence};
pub use packets::{
    eta_from_pi, pi_from_eta, sigma_from_eta_prime, ACharacter, AParameter, LParameter,
};
pub use sign::Sign;
pub use transfer::{build_a_parameter, transfer_eta, verify_globalization};
