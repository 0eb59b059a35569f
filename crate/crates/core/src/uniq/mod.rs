//! Uniqueness machinery: determinant certificates, the lowest-order
//! identities in `q`, the polynomial `P₃`, isobaric factorisation and the
//! factorisation check for Rankin-Cohen products.

pub mod fine;
pub mod isobaric;
pub mod p3;
pub mod rcuniq;

pub use fine::{bracket_shift_residual, fine_det3, fine_det3_certificate, fine_det3_poly, lowest_q_identity, lowest_q_poly};
pub use isobaric::{form_to_isobaric, isobaric_gcd, IsobaricPoly};
pub use p3::{p3_build, p3_substitute_and_certify, P3Data, P3Report};
pub use rcuniq::{rc_uniqueness_check, uniqueness_search, SearchReport, UniquenessResult};
