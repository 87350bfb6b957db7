//! Integer-valued polynomials in the binomial basis with modular
//! coefficients ("polyfracts"), the maps they induce between finite
//! commutative groups, and a decision procedure for which maps arise.
//!
//! ```
//! use polyfract::uni::UniPolyfract;
//! let p = UniPolyfract::from_i64(9, &[1, -1, 1, 0, -3]);
//! let values: Vec<_> = (0..6).map(|x| p.eval_i64(x).value().clone()).collect();
//! assert_eq!(values, [1, 0, 0, 1, 0, 0].map(Into::into));
//! ```

pub mod calculus;
pub mod classify;
pub mod error;
pub mod exactnum;
pub mod groups;
pub mod lagrange;
pub mod multi;
pub mod uni;

pub use error::{Error, Result};
pub use exactnum::{Rational, Residue};
pub use multi::{MultiPolyfract, RationalPolyMulti};
pub use uni::{RationalPolyUni, UniPolyfract};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polyfracts.md")]
    mod polyfracts {}
    #[doc = include_str!("../../../book/src/finite_maps.md")]
    mod finite_maps {}
    #[doc = include_str!("../../../book/src/lagrange.md")]
    mod lagrange {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
}
