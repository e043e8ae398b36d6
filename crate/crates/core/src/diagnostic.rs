//! Findings reported by the parser, validator and importers.

use std::fmt;

use serde::Serialize;

use crate::model::{Identifier, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Stable diagnostic codes. Each code belongs to exactly one rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Code {
    /// Identifier declared more than once.
    #[serde(rename = "E001")]
    DuplicateIdentifier,
    /// Identifier text does not follow the identifier grammar.
    #[serde(rename = "E002")]
    InvalidIdentifier,
    /// Reference to an identifier that is not declared.
    #[serde(rename = "E003")]
    UnresolvedReference,
    /// Reference resolves to an element of the wrong kind.
    #[serde(rename = "E004")]
    WrongReferenceKind,
    #[serde(rename = "E005")]
    EmptyDefinition,
    #[serde(rename = "E006")]
    DuplicateTrace,
    #[serde(rename = "E007")]
    DuplicateSatisfy,
    #[serde(rename = "E008")]
    ContainmentCycle,
    /// Component listed as a part of more than one parent.
    #[serde(rename = "E009")]
    MultipleParents,
    /// Trace does not go from a lower level to a strictly higher one.
    #[serde(rename = "E010")]
    TraceLevelOrder,
    #[serde(rename = "E011")]
    TraceCycle,
    #[serde(rename = "E020")]
    InvalidEnumLiteral,
    /// Unexpected token or malformed construct.
    #[serde(rename = "E021")]
    Syntax,
    #[serde(rename = "E022")]
    UnknownKeyword,
    #[serde(rename = "E023")]
    MissingProperty,
    #[serde(rename = "E024")]
    DuplicateProperty,
    /// Character or string literal the lexer cannot read.
    #[serde(rename = "E025")]
    Lexical,
    #[serde(rename = "E030")]
    CsvHeader,
    #[serde(rename = "E031")]
    CsvInvalidCell,
    /// Imported requirement id already used outside the target container.
    #[serde(rename = "E032")]
    CsvIdCollision,
    #[serde(rename = "E033")]
    UnknownContainer,
    /// Malformed CSV record (unbalanced quotes, wrong field count).
    #[serde(rename = "E034")]
    CsvRecord,
    #[serde(rename = "E040")]
    UnknownComponent,
    #[serde(rename = "E041")]
    UnknownPackage,
    /// Container or package without children.
    #[serde(rename = "W001")]
    EmptyGroup,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::DuplicateIdentifier => "E001",
            Code::InvalidIdentifier => "E002",
            Code::UnresolvedReference => "E003",
            Code::WrongReferenceKind => "E004",
            Code::EmptyDefinition => "E005",
            Code::DuplicateTrace => "E006",
            Code::DuplicateSatisfy => "E007",
            Code::ContainmentCycle => "E008",
            Code::MultipleParents => "E009",
            Code::TraceLevelOrder => "E010",
            Code::TraceCycle => "E011",
            Code::InvalidEnumLiteral => "E020",
            Code::Syntax => "E021",
            Code::UnknownKeyword => "E022",
            Code::MissingProperty => "E023",
            Code::DuplicateProperty => "E024",
            Code::Lexical => "E025",
            Code::CsvHeader => "E030",
            Code::CsvInvalidCell => "E031",
            Code::CsvIdCollision => "E032",
            Code::UnknownContainer => "E033",
            Code::CsvRecord => "E034",
            Code::UnknownComponent => "E040",
            Code::UnknownPackage => "E041",
            Code::EmptyGroup => "W001",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::EmptyGroup => Severity::Warning,
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub subject: Option<Identifier>,
    pub location: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            message: message.into(),
            subject: None,
            location: None,
        }
    }

    pub fn with_subject(mut self, subject: impl Into<Identifier>) -> Self {
        self.subject = Some(subject.into());
        self
    }

    pub fn at(mut self, location: Option<SourceSpan>) -> Self {
        self.location = location;
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    fn sort_key(&self) -> (Option<(&str, u32, u32)>, Code, &str) {
        (
            self.location
                .as_ref()
                .map(|l| (l.file.as_str(), l.line, l.column)),
            self.code,
            self.message.as_str(),
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(location) = &self.location {
            write!(f, "{location} ")?;
        }
        write!(f, "{} {}: {}", self.code, self.severity, self.message)
    }
}

/// Sorts by file, line, column, then code. Diagnostics without a location
/// come first.
pub fn sort_diagnostics(diagnostics: &mut [Diagnostic]) {
    diagnostics.sort_by(|a, b| {
        let (la, ca, ma) = a.sort_key();
        let (lb, cb, mb) = b.sort_key();
        la.map(|(f, l, _)| (f, l))
            .cmp(&lb.map(|(f, l, _)| (f, l)))
            .then(ca.cmp(&cb))
            .then(la.cmp(&lb))
            .then(ma.cmp(mb))
    });
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_unique() {
        let all = [
            Code::DuplicateIdentifier,
            Code::InvalidIdentifier,
            Code::UnresolvedReference,
            Code::WrongReferenceKind,
            Code::EmptyDefinition,
            Code::DuplicateTrace,
            Code::DuplicateSatisfy,
            Code::ContainmentCycle,
            Code::MultipleParents,
            Code::TraceLevelOrder,
            Code::TraceCycle,
            Code::InvalidEnumLiteral,
            Code::Syntax,
            Code::UnknownKeyword,
            Code::MissingProperty,
            Code::DuplicateProperty,
            Code::Lexical,
            Code::CsvHeader,
            Code::CsvInvalidCell,
            Code::CsvIdCollision,
            Code::UnknownContainer,
            Code::CsvRecord,
            Code::UnknownComponent,
            Code::UnknownPackage,
            Code::EmptyGroup,
        ];
        let mut seen = std::collections::HashSet::new();
        for code in all {
            assert!(seen.insert(code.as_str()), "{code}");
            let json = serde_json::to_string(&code).unwrap();
            assert_eq!(json, format!("\"{}\"", code.as_str()));
        }
    }

    #[test]
    fn sorted_by_file_line_then_code() {
        let mut d = vec![
            Diagnostic::new(Code::TraceLevelOrder, "b").at(Some(SourceSpan::new("a.req", 3, 1))),
            Diagnostic::new(Code::DuplicateIdentifier, "a").at(Some(SourceSpan::new("a.req", 3, 9))),
            Diagnostic::new(Code::Syntax, "c").at(Some(SourceSpan::new("a.req", 1, 4))),
            Diagnostic::new(Code::Syntax, "d").at(Some(SourceSpan::new("0.req", 9, 1))),
        ];
        sort_diagnostics(&mut d);
        let order: Vec<_> = d.iter().map(|d| d.message.as_str()).collect();
        assert_eq!(order, ["d", "c", "a", "b"]);
    }

    #[test]
    fn display_format() {
        let d = Diagnostic::new(Code::DuplicateIdentifier, "duplicate identifier `R-1`")
            .at(Some(SourceSpan::new("m.req", 4, 3)));
        assert_eq!(d.to_string(), "m.req:4:3 E001 error: duplicate identifier `R-1`");
    }
}
