//! Exact arithmetic for the local field K = F_q((x)) in characteristic 2
//! and the invariants of its quadratic and biquadratic extensions.
//!
//! The crate computes, with no floating point anywhere:
//!
//! * canonical representatives of the cosets of K modulo the image of the
//!   map ℘(z) = z² + z, together with constructive membership witnesses
//!   ([`wpquot`]);
//! * the symbol [a, b) and the quadratic characters of K^× ([`wpquot`]);
//! * break classification of planes of cosets, Hasse-Herbrand conversion,
//!   lower ramification filtrations, conductors and canonical formal
//!   degrees ([`ramify`]);
//! * the label-level structure of the tempered dual: packets, the
//!   commutative triangle of bijections, component shapes and census/DOT
//!   output ([`packets`]).
//!
//! Series arithmetic lives in [`laurent`], residue-field arithmetic in
//! [`gf2f`], and the input grammar in [`parse`].
//!
//! Every type is an immutable value and every operation a pure function;
//! contexts are `Copy` and series cheaply cloneable, so enumerations can be
//! sharded across threads with no coordination.
//!
//! ```
//! use artin2::{FieldCtx, LaurentSeries};
//! use artin2::wpquot::{as_symbol, reduce_mod_wp};
//!
//! let k = FieldCtx::new(2)?; // F_4((x))
//! // x^3 is in wp(K); g*x^-2 folds to sqrt(g)*x^-1 with sqrt(g) = g+1
//! let a = reduce_mod_wp(&k, &LaurentSeries::parse(&k, "g*x^-2 + x^3")?)?;
//! assert_eq!(a.to_string(), "x^-1 + g*x^-1");
//! // [a, 1+x) = Tr(res(a/(1+x))) = Tr(1+g) = 1, so chi_a(1+x) = -1
//! let sym = as_symbol(&k, &a, &LaurentSeries::parse(&k, "1 + x")?)?;
//! assert!(sym);
//! # Ok::<(), artin2::Error>(())
//! ```

pub mod error;
pub mod gf2f;
pub mod laurent;
pub mod packets;
pub mod parse;
pub mod ramify;
pub mod wpquot;

pub use error::{Error, Result};
pub use gf2f::{FieldCtx, FqElem};
pub use laurent::{LaurentSeries, DEFAULT_PRECISION};
pub use ramify::{BreakData, PlaneDescriptor, RamFiltration};
pub use wpquot::{QuadChar, WpCoset};
