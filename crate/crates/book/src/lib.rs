//! The guide in `book/src`, compiled so that every snippet runs as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/crossed-modules.md")]
pub mod crossed_modules {}

#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod cohomology {}

#[doc = include_str!("../../../book/src/extensions.md")]
pub mod extensions {}

#[doc = include_str!("../../../book/src/bouquets.md")]
pub mod bouquets {}

#[doc = include_str!("../../../book/src/bitorsors.md")]
pub mod bitorsors {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/notation.md")]
pub mod notation {}
