use std::env;
use std::io::{self, IsTerminal, Write};

use anyhow::Result;
use reqforge_core::{Diagnostic, Severity};
use serde::Serialize;

use crate::args::{ColorChoice, Format};

pub struct Output {
    pub format: Format,
    color_stdout: bool,
    color_stderr: bool,
}

/// Diagnostics summary, also the JSON shape of `validate`.
#[derive(Serialize)]
pub struct DiagnosticReport<'a> {
    pub diagnostics: &'a [Diagnostic],
    pub errors: usize,
    pub warnings: usize,
}

impl Output {
    pub fn new(format: Format, color: ColorChoice) -> Self {
        let disabled = env::var_os("REQFORGE_NO_COLOR").is_some();
        let pick = |tty: bool| {
            !disabled
                && match color {
                    ColorChoice::Always => true,
                    ColorChoice::Never => false,
                    ColorChoice::Auto => tty,
                }
        };
        Output {
            format,
            color_stdout: pick(io::stdout().is_terminal()),
            color_stderr: pick(io::stderr().is_terminal()),
        }
    }

    pub fn json(&self) -> bool {
        self.format == Format::Json
    }

    pub fn print_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut out = io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, value)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn print_text(&self, text: &str) -> Result<()> {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        Ok(())
    }

    fn diagnostic_line(d: &Diagnostic, color: bool) -> String {
        let line = d.to_string();
        if !color {
            return line;
        }
        let (word, paint) = match d.severity {
            Severity::Error => ("error", "\x1b[31m"),
            Severity::Warning => ("warning", "\x1b[33m"),
        };
        line.replacen(
            &format!("{} {word}:", d.code),
            &format!("{} {paint}{word}\x1b[0m:", d.code),
            1,
        )
    }

    /// Diagnostics as the main output of a command.
    pub fn diagnostics_to_stdout(&self, diagnostics: &[Diagnostic]) -> Result<()> {
        let mut out = io::stdout().lock();
        for d in diagnostics {
            writeln!(out, "{}", Self::diagnostic_line(d, self.color_stdout))?;
        }
        Ok(())
    }

    /// Diagnostics accompanying another command's output.
    pub fn diagnostics_to_stderr(&self, diagnostics: &[Diagnostic]) {
        let mut err = io::stderr().lock();
        for d in diagnostics {
            let _ = writeln!(err, "{}", Self::diagnostic_line(d, self.color_stderr));
        }
    }

}

impl<'a> DiagnosticReport<'a> {
    pub fn new(diagnostics: &'a [Diagnostic]) -> Self {
        DiagnosticReport {
            diagnostics,
            errors: diagnostics.iter().filter(|d| d.is_error()).count(),
            warnings: diagnostics
                .iter()
                .filter(|d| d.severity == Severity::Warning)
                .count(),
        }
    }
}
