#![allow(
    clippy::excessive_precision,
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::too_many_arguments
)]

pub mod asymptotics;
pub mod error;
pub mod jet;
pub mod newton;
pub mod phase;
pub mod pieces;
pub mod quad;
pub mod specfun;
