//! Presentations `⟨A | a^k b = c^m⟩`: parsing, compilation to closed-form
//! action tables, and validation.

mod compile;
mod parse;
mod table;
mod validate;

pub use compile::{compile, expand};
pub use parse::{parse_presentation, Presentation};
pub use table::{ActionTable, PairAction, RawPresentation, Relation, ResidueRule};
pub use validate::{validate, validate_with, Diagnostic, Diagnostics, Severity};

use crate::error::Result;

/// Parses a file and compiles it if it is raw.
pub fn load_table(text: &str) -> Result<ActionTable> {
    match parse_presentation(text)? {
        Presentation::Raw(raw) => compile(&raw),
        Presentation::Compiled(table) => Ok(table),
    }
}
