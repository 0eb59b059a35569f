//! Exact computer algebra for Rankin-Cohen brackets.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactcore`]: rationals, truncated q-series, sparse multivariate
//!   polynomials and exact linear algebra.
//! - [`forms`]: level-one Eisenstein series, the discriminant and graded forms.
//! - [`nearlyholo`]: nearly-holomorphic forms as polynomials in the formal
//!   variable `Y = 1/(4πy)`, the Shimura raising operator, Rankin-Cohen
//!   brackets and Zagier's canonical recursion.
//! - [`rep`]: the π-free sl₂ discrete-series model and its tensor spaces.
//! - [`starprod`]: Cohen-Manin-Zagier coefficients, formal star products and
//!   associativity residuals.
//! - [`coeffsolve`]: re-derivation of the deformation coefficients by exact
//!   linear algebra.
//! - [`uniq`]: the uniqueness machinery (determinant certificates, the `P₃`
//!   polynomial, isobaric factorisation and the factorisation check for
//!   Rankin-Cohen products).

pub mod coeffsolve;
pub mod error;
pub mod exactcore;
pub mod forms;
pub mod nearlyholo;
pub mod rep;
pub mod starprod;
pub mod uniq;

pub use error::{Error, Result};
pub use exactcore::{MPoly, QSeries, Rat};
pub use forms::{GradedForm, ModularForm};
pub use nearlyholo::NearlyHoloForm;
pub use starprod::{HbarSeries, StarCoefficients};

