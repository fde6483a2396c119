//! Surface syntax: parsing, evaluation, documents and the command line.

pub mod cli;
pub mod eval;
pub mod parser;
pub mod serial;


pub use cli::run;
pub use eval::{evaluate, render_result, EvalReport};
pub use parser::{parse, Expr};
pub use serial::{deserialize, from_document, serialize, to_document, Document};
