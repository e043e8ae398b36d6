//! Textual concrete syntax (`.req` files) and the CSV tabular view.

mod csv_table;
mod lexer;
mod parser;
mod serialize;

pub use csv_table::{export_requirements_csv, import_requirements_csv, CSV_HEADER};
pub use parser::{parse, ParseResult};
pub use serialize::{quote, serialize, HEADER};
