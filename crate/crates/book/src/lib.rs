//! Compiles every chapter of the guide in `book/src` as module documentation
//! so that `cargo test -p binharm-book` runs its listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/harmonic-sums.md")]
pub mod harmonic_sums {}

#[doc = include_str!("../../../book/src/partial-fractions.md")]
pub mod partial_fractions {}

#[doc = include_str!("../../../book/src/identities.md")]
pub mod identities {}

#[doc = include_str!("../../../book/src/p-adic-gamma.md")]
pub mod p_adic_gamma {}

#[doc = include_str!("../../../book/src/supercongruence.md")]
pub mod supercongruence {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
