//! Reading and writing category and functor files.
//!
//! An input argument is either a path or `builtin:<name>`. Category paths
//! inside a functor file are resolved against the directory of that file.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::category::{FiniteCategory, RawCategory, ValidationReport};
use crate::constructions::{builtin_example, Builtin, ConstructionError};
use crate::covering::{CategoryFunctor, FunctorReport, RawFunctor};

pub const BUILTIN_PREFIX: &str = "builtin:";

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: malformed JSON at line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: invalid category")]
    InvalidCategory { path: String, report: ValidationReport },
    #[error("{path}: invalid functor")]
    InvalidFunctor { path: String, report: FunctorReport },
    #[error("{0}")]
    Builtin(#[from] ConstructionError),
    #[error("`{name}` is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        found: &'static str,
        expected: &'static str,
    },
}

impl InputError {
    /// One line per finding, for report diagnostics.
    pub fn diagnostics(&self) -> Vec<String> {
        match self {
            InputError::InvalidCategory { path, report } => {
                report.issues.iter().map(|i| format!("{path}: {i}")).collect()
            }
            InputError::InvalidFunctor { path, report } => {
                report.issues.iter().map(|i| format!("{path}: {i}")).collect()
            }
            other => vec![other.to_string()],
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &str, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn builtin(spec: &str) -> Option<Result<Builtin, InputError>> {
    spec.strip_prefix(BUILTIN_PREFIX)
        .map(|name| builtin_example(name).map_err(InputError::from))
}

fn load_category_at(spec: &str, base: Option<&Path>) -> Result<FiniteCategory, InputError> {
    if let Some(b) = builtin(spec) {
        return match b? {
            Builtin::Category(c) => Ok(c),
            Builtin::Functor(_) => Err(InputError::WrongKind {
                name: spec.to_string(),
                found: "functor",
                expected: "category",
            }),
        };
    }
    let path = match base {
        Some(dir) => dir.join(spec),
        None => PathBuf::from(spec),
    };
    let shown = path.display().to_string();
    let raw: RawCategory = parse(&shown, &read(&path)?)?;
    FiniteCategory::validate(&raw).map_err(|report| InputError::InvalidCategory { path: shown, report })
}

/// Loads and validates a category file or builtin category.
pub fn load_category(spec: &str) -> Result<FiniteCategory, InputError> {
    load_category_at(spec, None)
}

/// Loads a functor file or builtin functor, with both of its categories.
pub fn load_functor(spec: &str) -> Result<CategoryFunctor, InputError> {
    if let Some(b) = builtin(spec) {
        return match b? {
            Builtin::Functor(f) => Ok(f),
            Builtin::Category(_) => Err(InputError::WrongKind {
                name: spec.to_string(),
                found: "category",
                expected: "functor",
            }),
        };
    }
    let path = Path::new(spec);
    let raw: RawFunctor = parse(spec, &read(path)?)?;
    let dir = path.parent().unwrap_or(Path::new(""));
    let source = load_category_at(&raw.source, Some(dir))?;
    let target = load_category_at(&raw.target, Some(dir))?;
    CategoryFunctor::validate(source, target, &raw.object_map, &raw.morphism_map).map_err(|report| {
        InputError::InvalidFunctor {
            path: spec.to_string(),
            report,
        }
    })
}

fn write(path: &Path, json: String) -> std::io::Result<()> {
    fs::write(path, json + "\n")
}

pub fn category_file_contents(cat: &FiniteCategory) -> String {
    serde_json::to_string_pretty(&cat.to_raw()).expect("raw category serializes")
}

pub fn write_category(path: &Path, cat: &FiniteCategory) -> std::io::Result<()> {
    write(path, category_file_contents(cat))
}

/// Writes `<stem>.source.json`, `<stem>.target.json` and the functor file itself.
///
/// Returns the paths written, functor file first.
pub fn write_functor(path: &Path, functor: &CategoryFunctor) -> std::io::Result<Vec<PathBuf>> {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("functor");
    let source_name = format!("{stem}.source.json");
    let target_name = format!("{stem}.target.json");
    let dir = path.parent().unwrap_or(Path::new(""));
    let source_path = dir.join(&source_name);
    let target_path = dir.join(&target_name);
    write_category(&source_path, functor.source())?;
    write_category(&target_path, functor.target())?;
    let raw = functor.to_raw(&source_name, &target_name);
    write(
        path,
        serde_json::to_string_pretty(&raw).expect("raw functor serializes"),
    )?;
    Ok(vec![path.to_path_buf(), source_path, target_path])
}
