//! A small laboratory for algorithmic probability at desk scale.
//!
//! The crate simulates monotone Turing machines under explicit step
//! budgets, enumerates every machine behind a self-delimiting index
//! code, and computes budgeted lower approximations of the induced
//! output distributions in exact dyadic arithmetic. On top of that it
//! checks, bit for bit, the identities that make a dispatcher machine
//! universal: the split-sum decomposition of its distribution, its
//! dominance over every enumerated machine, and the prefix-code
//! bookkeeping behind synthesizing a dispatcher for any dyadic weight
//! mixture. It also constructs a distribution that provably fails to
//! be such a mixture, to show the dominance constant is not free.
//!
//! Everything is exact: values are dyadic rationals with bignum
//! mantissas, and every reported identity either holds exactly or the
//! check fails. See the `examples/` directory for runnable tours of
//! each capability.

pub mod bits;
pub mod cli;
pub mod dyadic;
pub mod enumeration;
pub mod format;
pub mod gap;
pub mod kraft;
pub mod mixture;
pub mod oracle;
pub mod samples;
pub mod semimeasure;
pub mod tm;
