//! Exact counts of y-friable integers and the approximations that surround
//! them: the Dickman function, de Bruijn's Λ, the Hildebrand–Tenenbaum saddle
//! point, and the G-corrected main term.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::excessive_precision,
    clippy::needless_range_loop
)]

pub mod approx;
pub mod error;
pub mod gfactor;
pub mod par;
pub mod primes;
pub mod quad;
pub mod saddle;
pub mod specialfns;
pub mod tolerances;
pub mod zeros;

pub use error::{Error, Result};
pub use par::Execution;
