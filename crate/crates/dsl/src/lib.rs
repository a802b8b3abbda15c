//! A declaration-and-assertion language for exact plane geometry.
//!
//! ```text
//! field K = Q(i: -1, r2: 2, q2: r2)
//! let eps = (1 + i)*r2/2
//! curve F = x^4 + y^4 + z^4
//! lines LF = factors(x^4 + y^4, y^4 + z^4, z^4 + x^4)
//! assert tvector(LF) == [48, 0, 3]
//! ```

pub mod ast;
pub mod error;
pub mod eval;
pub mod lexer;
pub mod parser;
pub mod value;

pub use ast::ScenarioAst;
pub use error::{DslError, DslResult, Span};
pub use eval::{evaluate, parse_field_spec, run_source, CheckOutcome, Evaluator, ScenarioResult, Status};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_expr, parse_source};
pub use value::Value;
