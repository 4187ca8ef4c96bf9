use std::fmt;

use arclab_core::arc_complex::ArcComplexError;
use arclab_core::fatgraph::FatgraphError;
use arclab_core::geom::GeomError;
use arclab_core::operad::OperadError;
use arclab_core::rna::RnaError;
use arclab_core::solver::SolverError;
use arclab_core::triangulation::TriangulationError;
use serde_json::{json, Value};

use crate::json::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Validation,
    NoConvergence,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::Validation => 3,
            ErrorKind::NoConvergence => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::Validation => "validation",
            ErrorKind::NoConvergence => "no-convergence",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    pub details: Option<Value>,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Usage, message: msg.into(), details: None }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Validation, message: msg.into(), details: None }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({
            "kind": self.kind.name(),
            "code": self.kind.exit_code(),
            "message": self.message,
        });
        if let Some(d) = &self.details {
            err["details"] = d.clone();
        }
        json!({ "schema": SCHEMA, "error": err })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.name(), self.message)
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match &e {
            SolverError::NoConvergence { iters, energy, constraint, trace, .. } => Self {
                kind: ErrorKind::NoConvergence,
                message: e.to_string(),
                details: Some(json!({
                    "iters": iters,
                    "energy": crate::json::float(*energy),
                    "constraintResidual": crate::json::float(*constraint),
                    "traceLength": trace.len(),
                })),
            },
            SolverError::Triangulation(t) => t.clone().into(),
            _ => Self::validation(e.to_string()),
        }
    }
}

impl From<TriangulationError> for CliError {
    fn from(e: TriangulationError) -> Self {
        match e {
            TriangulationError::IterationLimit { .. } => {
                Self { kind: ErrorKind::NoConvergence, message: e.to_string(), details: None }
            }
            _ => Self::validation(e.to_string()),
        }
    }
}

impl From<FatgraphError> for CliError {
    fn from(e: FatgraphError) -> Self {
        match e {
            FatgraphError::Solver(s) => s.into(),
            _ => Self::validation(e.to_string()),
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::validation(e.to_string())
            }
        })*
    };
}

validation_from!(ArcComplexError, GeomError, OperadError, RnaError, serde_json::Error);
