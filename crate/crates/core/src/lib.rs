//! Cyclotomic cosets modulo `q^m - 1` and the codes built from them.
//!
//! * [`gf`]: finite-field arithmetic, polynomials and matrices.
//! * [`cosets`]: q-cyclotomic cosets and their structural properties.
//! * [`cyclic`]: cyclic and BCH codes from defining sets.
//! * [`css`]: CSS quantum code families.
//! * [`conv`]: unit-memory convolutional code families.
//! * [`oracle`]: exhaustive checks used as ground truth.
//! * [`tables`], [`verify`], [`report`], [`config`]: the table generator,
//!   verification sweeps and their serializable output.
//!
//! ```
//! use cyclocode::css::family_good2;
//!
//! let p = family_good2(8, 7).unwrap();
//! assert_eq!(p.bracket(), "[[63, 41, d >= 7]]_8");
//! ```

pub mod config;
pub mod conv;
pub mod cosets;
pub mod css;
pub mod cyclic;
pub mod gf;
pub mod oracle;
pub mod report;
pub mod tables;
pub mod verify;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/fields.md")]
pub mod book_fields {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cosets.md")]
pub mod book_cosets {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cyclic.md")]
pub mod book_cyclic {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/css.md")]
pub mod book_css {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/convolutional.md")]
pub mod book_convolutional {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
pub mod book_verification {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod book_cli {}
