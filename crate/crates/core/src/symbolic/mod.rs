//! Polynomials and rational functions in two variables, and the
//! certificates checked with them.

pub mod certificates;
pub mod poly;
pub mod ratfunc;

pub use certificates::{
    certificate, certificates, numeric_probe, shift_quotient, verify_certificate, Certificate,
    CertificateReport, HyperTerm, Identity, IntPoly, IntRatFunc, Verdict,
};
pub use poly::{Coeff, MultiPoly};
pub use ratfunc::RatFunc;
