//! Exact arithmetic foundations: rationals, sparse multivariate
//! polynomials, rational functions, quadratic field extensions, fixed-point
//! complex numerics, Sturm root counting, and resultants.

pub mod complexfp;
pub mod poly;
pub mod quadext;
pub mod ratfunc;
pub mod resultant;
pub mod sturm;

pub use complexfp::{check_precision, BigComplex, BigFloat, DEFAULT_PRECISION, MIN_PRECISION};
pub use poly::{rat, ratio, MultiPoly, Rational};
pub use quadext::{CoeffField, QuadExt, QuadModulus, RingElem};
pub use ratfunc::RatFunc;
pub use resultant::{linear_resultant, sylvester_resultant};
pub use sturm::RealPoly;
