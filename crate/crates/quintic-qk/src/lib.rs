//! Exact computation of genus-zero quantum K-theory and Gromov-Witten
//! invariants of the quintic threefold.
//!
//! Everything here is exact: arbitrary-precision rationals, polynomials and
//! rational functions of `q` over the rationals, cyclotomic field arithmetic,
//! and truncated power series in the Novikov variable `Q`. No floating point
//! anywhere.
//!
//! The two pipelines are
//! - [`gw`]: the cohomological side. Expands the hypergeometric series of the
//!   quintic, reconstructs the small J-function by the mirror map, and reads
//!   off Gromov-Witten numbers `GW_d`; Gopakumar-Vafa integers `GV_d` follow
//!   by Moebius inversion.
//! - [`qk`]: the K-theoretic side. Expands Givental's q-hypergeometric
//!   series and runs the degree-by-degree reconstruction that produces the
//!   small J-function in quantum K-theory modulo `Q^{D+1}`.
//!
//! [`verify`] ties them together: it builds the conjectured closed form of
//! the K-theoretic J-function from the `GV_d` and checks it against the
//! reconstruction as an identity of rational functions, along with the
//! structural and coefficient-level theorems (pole support, pole order
//! bounds, and the principal-part formulas at roots of unity).

pub mod cache;
pub mod cyclo;
pub mod gw;
pub mod kring;
pub mod number;
pub mod poly;
pub mod qk;
pub mod qrat;
pub mod series;
pub mod verify;

pub use cyclo::CycloNum;
pub use gw::GwTable;
pub use kring::{Field, KElem, Ring};
pub use number::{Int, Rat};
pub use poly::Poly;
pub use qk::ReconState;
pub use qrat::QRat;
pub use series::NovSeries;
