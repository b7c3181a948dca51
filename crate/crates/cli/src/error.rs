use std::path::PathBuf;

use kshift_core::genfun::GenfunError;
use kshift_core::identities::IdentityError;
use kshift_core::shapes::ShapeError;
use kshift_core::tableaux::TableauError;
use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Input { path: PathBuf, source: std::io::Error },
    #[error("resource error: {0}")]
    Resource(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Genfun(#[from] GenfunError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
}

fn genfun_code(e: &GenfunError) -> i32 {
    match e {
        GenfunError::Cache(_) | GenfunError::TooManyVariables { .. } => EXIT_RESOURCE,
        GenfunError::NotDivisible { .. }
        | GenfunError::Inconsistent(_)
        | GenfunError::BadConstant(_)
        | GenfunError::SingularPoint => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Shape(_) | CliError::Tableau(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Genfun(e) | CliError::Identity(IdentityError::Genfun(e)) => genfun_code(e),
            CliError::Identity(_) => EXIT_USAGE,
        }
    }
}
