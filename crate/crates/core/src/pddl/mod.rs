//! Reader and printer for the numeric PDDL fragment: STRIPS with typing,
//! negative preconditions, object equality and numeric fluents.

mod parser;
mod printer;
mod sexpr;

use std::fmt;
use std::path::Path;

pub use parser::{parse_domain, parse_domain_from, parse_problem, parse_problem_from, SUPPORTED_REQUIREMENTS};
pub use printer::{
    write_atom, write_constraint, write_domain, write_expr, write_ground_constraint, write_ground_literal,
    write_problem,
};
pub use sexpr::{is_number, read, SExpr};

use crate::model::Task;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub span: Span,
    pub message: String,
}

impl ParseError {
    pub fn new(file: &str, span: Span, message: impl Into<String>) -> Self {
        ParseError { file: file.to_string(), span, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.file, self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn read_file(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })
}

/// Parses a domain file and a problem file into a task.
pub fn load_task(domain: &Path, problem: &Path) -> Result<Task, LoadError> {
    let dom_text = read_file(domain)?;
    let prob_text = read_file(problem)?;
    let dom = parse_domain_from(&dom_text, &domain.display().to_string())?;
    Ok(parse_problem_from(&prob_text, &problem.display().to_string(), dom)?)
}
