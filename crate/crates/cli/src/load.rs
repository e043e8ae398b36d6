use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use reqforge_core::dsl::parse;
use reqforge_core::{validate, Diagnostic, Model, Severity, ValidationOptions};

/// Files named on the command line, with directories replaced by their
/// `.req` files in lexicographic order.
pub fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for path in paths {
        let meta = fs::metadata(path).with_context(|| format!("cannot read {}", path.display()))?;
        if meta.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(path)
                .with_context(|| format!("cannot list {}", path.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()
                .with_context(|| format!("cannot list {}", path.display()))?;
            entries.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "req"));
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    if files.is_empty() {
        bail!("no .req files found");
    }
    Ok(files)
}

pub struct SourceFile {
    pub path: PathBuf,
    /// `None` when the file has syntax errors.
    pub model: Option<Model>,
}

pub struct Loaded {
    pub files: Vec<SourceFile>,
    /// Merged model; only meaningful when every file parsed.
    pub model: Model,
    pub diagnostics: Vec<Diagnostic>,
}

impl Loaded {
    pub fn errors(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.is_error()).count()
    }

    pub fn warnings(&self) -> usize {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Warning)
            .count()
    }

    /// Whether the model may be analysed: no errors, and no warnings when
    /// they are treated as errors.
    pub fn passes(&self, strict_warnings: bool) -> bool {
        self.errors() == 0 && !(strict_warnings && self.warnings() > 0)
    }
}

pub fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Parses every file, merges the models in order and validates the result.
/// Validation is skipped when a file has syntax errors.
pub fn load(paths: &[PathBuf], options: ValidationOptions) -> Result<Loaded> {
    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    for path in expand(paths)? {
        let text = fs::read_to_string(&path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let result = parse(&text, &display(&path));
        diagnostics.extend(result.diagnostics);
        files.push(SourceFile {
            path,
            model: result.model,
        });
    }
    let mut model = Model::default();
    let parsed = files.iter().all(|f| f.model.is_some());
    if parsed {
        for file in &files {
            model.merge(file.model.clone().unwrap());
        }
        diagnostics.extend(validate(&model, options));
    }
    reqforge_core::diagnostic::sort_diagnostics(&mut diagnostics);
    Ok(Loaded {
        files,
        model,
        diagnostics,
    })
}
