//! Text and JSON formats, plotting and a randomized self-test for
//! [`staircase_core`].

mod error;
pub mod json;
pub mod render;
pub mod selftest;
pub mod text;

pub use error::{Error, Result};
pub use json::{from_json, to_json, Json};
pub use render::{default_viewport, render, RenderFormat, RenderOptions};
pub use selftest::{run_selftest, SelftestConfig, SelftestReport};
pub use text::{
    format_factorization, format_generators, format_monomial, parse_factorization, parse_ideal,
    parse_monomial_ideal, Parsed,
};
