pub mod arith;
pub mod error;
pub mod padic;
pub mod quadform;
pub mod sequences;
pub mod sums;
pub mod suite;
pub mod symbolic;

pub use error::{Error, Result};
pub use padic::{
    a_prime, binom_rational, canonical_residue, congruent_mod, fermat_quotient, padic_arith,
    reduce_rational, ArithOp, PadicValue, PrimeContext, RationalArg, DEFAULT_PRECISION,
};
pub use symbolic::{IntPoly, IntRatFunc};
