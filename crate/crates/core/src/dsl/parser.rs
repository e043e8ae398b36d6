//! Recursive-descent parser for `.req` files.
//!
//! Properties (`key: value`) and link statements must fit on one line.
//! Errors inside a block skip the offending line (and any block it opens);
//! errors at the top level skip ahead to the next top-level keyword.

use std::collections::HashSet;

use crate::diagnostic::{has_errors, sort_diagnostics, Code, Diagnostic};
use crate::dsl::lexer::{tokenize, Token, TokenKind};
use crate::model::{
    is_identifier, normalize_comments, Component, Criticality, Identifier, Interface, Level,
    Model, Node, Package, Release, Requirement, RequirementsContainer, SatisfyLink, SourceSpan,
    Status, TraceLink,
};

/// Outcome of parsing or importing. `model` is present iff no diagnostic
/// has error severity.
#[derive(Debug, Clone)]
pub struct ParseResult {
    pub model: Option<Model>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub(crate) fn from_parts(model: Model, mut diagnostics: Vec<Diagnostic>) -> Self {
        sort_diagnostics(&mut diagnostics);
        let model = (!has_errors(&diagnostics)).then_some(model);
        ParseResult { model, diagnostics }
    }

    pub fn is_ok(&self) -> bool {
        self.model.is_some()
    }
}

const TOP_LEVEL: &[&str] = &[
    "model",
    "case_study",
    "framework",
    "tool",
    "package",
    "trace",
    "satisfy",
];

pub fn parse(text: &str, file_name: &str) -> ParseResult {
    let mut diagnostics = Vec::new();
    let tokens = tokenize(text, file_name, &mut diagnostics);
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
        file: file_name,
        diagnostics,
        model: Model::default(),
        saw_model_decl: false,
    };
    parser.file_items();
    ParseResult::from_parts(parser.model, parser.diagnostics)
}

/// Marker for an error that has already been reported.
struct Reported;

type PResult<T> = Result<T, Reported>;

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    /// Brace nesting, maintained by `bump`.
    depth: i32,
    file: &'a str,
    diagnostics: Vec<Diagnostic>,
    model: Model,
    saw_model_decl: bool,
}

enum Value {
    Str(String),
    Word(String, SourceSpan),
    List(Vec<Identifier>),
}

impl<'a> Parser<'a> {
    // --- token plumbing -------------------------------------------------

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_word(&self) -> Option<&str> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Word(w),
                ..
            }) => Some(w),
            _ => None,
        }
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned()?;
        self.pos += 1;
        match token.kind {
            TokenKind::LBrace => self.depth += 1,
            TokenKind::RBrace => self.depth -= 1,
            _ => {}
        }
        Some(token)
    }

    fn span_of(&self, token: &Token) -> SourceSpan {
        SourceSpan::new(self.file, token.line, token.column)
    }

    /// Location of the current token, or just past the last one at EOF.
    fn here(&self) -> SourceSpan {
        match self.peek().or_else(|| self.tokens.last()) {
            Some(t) => self.span_of(t),
            None => SourceSpan::new(self.file, 1, 1),
        }
    }

    fn report(&mut self, code: Code, span: SourceSpan, message: impl Into<String>) -> Reported {
        self.diagnostics
            .push(Diagnostic::new(code, message).at(Some(span)));
        Reported
    }

    fn unexpected(&mut self, expected: &str) -> Reported {
        let span = self.here();
        let found = match self.peek() {
            Some(t) => t.kind.describe(),
            None => "end of file".to_string(),
        };
        self.report(Code::Syntax, span, format!("expected {expected}, found {found}"))
    }

    fn on_line(&self, line: u32) -> bool {
        self.peek().is_some_and(|t| t.line == line)
    }

    fn is_top_level_start(&self) -> bool {
        self.peek_word().is_some_and(|w| TOP_LEVEL.contains(&w))
    }

    /// A top-level keyword in the first column, used to detect a missing `}`.
    fn is_flush_top_level(&self) -> bool {
        self.is_top_level_start() && self.peek().is_some_and(|t| t.column == 1)
    }

    fn expect(&mut self, kind: TokenKind, line: u32) -> PResult<Token> {
        match self.peek() {
            Some(t) if t.kind == kind && t.line == line => Ok(self.bump().unwrap()),
            _ => Err(self.unexpected(&kind.describe())),
        }
    }

    fn identifier(&mut self, line: u32, what: &str) -> PResult<(Identifier, SourceSpan)> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Word(w),
                line: l,
                ..
            }) if *l == line => {
                let w = w.clone();
                let token = self.bump().unwrap();
                let span = self.span_of(&token);
                if !is_identifier(&w) {
                    self.report(
                        Code::InvalidIdentifier,
                        span.clone(),
                        format!("invalid identifier `{w}`"),
                    );
                }
                Ok((Identifier::new(w), span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn optional_string(&mut self, line: u32) -> Option<String> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Str(s),
                line: l,
                ..
            }) if *l == line => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => None,
        }
    }

    fn at_block_open(&self, line: u32) -> bool {
        matches!(self.peek(), Some(Token { kind: TokenKind::LBrace, line: l, .. }) if *l == line)
    }

    // --- recovery -------------------------------------------------------

    fn recover_top_level(&mut self, start: usize) {
        if self.pos == start {
            self.bump();
        }
        while self.peek().is_some() {
            if self.depth <= 0 && self.is_top_level_start() {
                break;
            }
            self.bump();
        }
    }

    /// Skips the rest of the current line and any block opened on it.
    fn skip_entry(&mut self, line: u32, base_depth: i32) {
        while self.on_line(line) {
            self.bump();
        }
        while self.depth > base_depth && self.peek().is_some() {
            self.bump();
        }
    }

    // --- grammar --------------------------------------------------------

    fn file_items(&mut self) {
        while let Some(token) = self.peek().cloned() {
            let start = self.pos;
            self.depth = 0;
            let result = match &token.kind {
                TokenKind::Word(w) => match w.as_str() {
                    "model" => self.model_decl(),
                    "case_study" | "framework" | "tool" => self.container(),
                    "package" => self.package(),
                    "trace" | "satisfy" => self.link(),
                    other => {
                        let span = self.span_of(&token);
                        Err(self.report(
                            Code::UnknownKeyword,
                            span,
                            format!("unknown keyword `{other}`"),
                        ))
                    }
                },
                _ => Err(self.unexpected("a top-level declaration")),
            };
            if result.is_err() {
                self.recover_top_level(start);
            }
        }
    }

    fn model_decl(&mut self) -> PResult<()> {
        let keyword = self.bump().unwrap();
        let name = match self.optional_string(keyword.line) {
            Some(name) => name,
            None => return Err(self.unexpected("model name string")),
        };
        if self.saw_model_decl {
            let span = self.span_of(&keyword);
            self.report(Code::DuplicateProperty, span, "duplicate model declaration");
        } else {
            self.saw_model_decl = true;
            self.model.name = name;
        }
        self.end_of_line(keyword.line)
    }

    /// Reports trailing tokens on a line that should be finished.
    fn end_of_line(&mut self, line: u32) -> PResult<()> {
        if self.on_line(line) {
            let err = self.unexpected("end of line");
            while self.on_line(line) {
                self.bump();
            }
            return Err(err);
        }
        Ok(())
    }

    fn link(&mut self) -> PResult<()> {
        let keyword = self.bump().unwrap();
        let line = keyword.line;
        let span = self.span_of(&keyword);
        let (source, _) = self.identifier(line, "source identifier")?;
        self.expect(TokenKind::Arrow, line)?;
        let (target, _) = self.identifier(line, "target identifier")?;
        self.end_of_line(line)?;
        match &keyword.kind {
            TokenKind::Word(w) if w == "trace" => self.model.traces.push(TraceLink {
                source,
                target,
                span: Some(span),
            }),
            _ => self.model.satisfies.push(SatisfyLink {
                source,
                target,
                span: Some(span),
            }),
        }
        Ok(())
    }

    fn container(&mut self) -> PResult<()> {
        let level_token = self.bump().unwrap();
        let line = level_token.line;
        let span = self.span_of(&level_token);
        let level: Level = match &level_token.kind {
            TokenKind::Word(w) => w.parse().expect("dispatched on level keyword"),
            _ => unreachable!(),
        };
        if self.peek_word() != Some("container") || !self.on_line(line) {
            return Err(self.unexpected("`container`"));
        }
        self.bump();
        let (id, _) = self.identifier(line, "container identifier")?;
        let name = self.optional_string(line).unwrap_or_else(|| id.to_string());
        self.expect(TokenKind::LBrace, line)?;

        let mut container = RequirementsContainer::new(id, name, level);
        container.span = Some(span);
        let mut seen = HashSet::new();
        self.block_body(|p, key, key_token| match key {
            "owner" => {
                let value = p.property(key_token, &mut seen, ValueKind::Str)?;
                if let Some(Value::Str(s)) = value {
                    container.owner = Some(s);
                }
                Ok(true)
            }
            "requirement" => {
                let requirement = p.requirement()?;
                container.requirements.push(requirement);
                Ok(true)
            }
            _ => Ok(false),
        })?;
        self.model.containers.push(container);
        Ok(())
    }

    /// Parses `{ entries }` after the opening brace was consumed. `entry`
    /// returns `Ok(false)` for keys it does not know.
    fn block_body<F>(&mut self, mut entry: F) -> PResult<()>
    where
        F: FnMut(&mut Self, &str, &Token) -> PResult<bool>,
    {
        let base_depth = self.depth - 1;
        loop {
            let Some(token) = self.peek().cloned() else {
                let span = self.here();
                return Err(self.report(Code::Syntax, span, "expected `}`, found end of file"));
            };
            match &token.kind {
                TokenKind::RBrace => {
                    self.bump();
                    return Ok(());
                }
                TokenKind::Word(_) if self.is_flush_top_level() => {
                    let span = self.span_of(&token);
                    self.report(Code::Syntax, span, "expected `}` before next declaration");
                    return Ok(());
                }
                TokenKind::Word(w) => {
                    let key = w.clone();
                    let entry_depth = self.depth;
                    match entry(self, &key, &token) {
                        Ok(true) => {}
                        Ok(false) => {
                            let span = self.span_of(&token);
                            self.report(
                                Code::UnknownKeyword,
                                span,
                                format!("unknown keyword `{key}`"),
                            );
                            self.skip_entry(token.line, entry_depth);
                        }
                        Err(Reported) => self.skip_entry(token.line, entry_depth),
                    }
                    if self.depth <= base_depth {
                        // A skipped entry consumed our closing brace.
                        return Ok(());
                    }
                }
                _ => {
                    self.unexpected("a property or declaration");
                    self.skip_entry(token.line, self.depth);
                    if self.depth <= base_depth {
                        return Ok(());
                    }
                }
            }
        }
    }

    /// Parses `key: value` where the key token is current. Returns `None`
    /// when the value was rejected but the line is otherwise well formed.
    fn property(
        &mut self,
        key_token: &Token,
        seen: &mut HashSet<String>,
        kind: ValueKind,
    ) -> PResult<Option<Value>> {
        let line = key_token.line;
        let key = match &key_token.kind {
            TokenKind::Word(w) => w.clone(),
            _ => unreachable!(),
        };
        self.bump();
        self.expect(TokenKind::Colon, line)?;
        let value = match kind {
            ValueKind::Str => match self.optional_string(line) {
                Some(s) => Value::Str(s),
                None => return Err(self.unexpected("string")),
            },
            ValueKind::Word => match self.peek() {
                Some(Token {
                    kind: TokenKind::Word(w),
                    line: l,
                    ..
                }) if *l == line => {
                    let w = w.clone();
                    let token = self.bump().unwrap();
                    Value::Word(w, self.span_of(&token))
                }
                _ => return Err(self.unexpected("value")),
            },
            ValueKind::List => {
                let mut ids = vec![self.identifier(line, "identifier")?.0];
                while matches!(self.peek(), Some(Token { kind: TokenKind::Comma, line: l, .. }) if *l == line)
                {
                    self.bump();
                    ids.push(self.identifier(line, "identifier")?.0);
                }
                Value::List(ids)
            }
        };
        self.end_of_line(line)?;
        if !seen.insert(key.clone()) {
            let span = self.span_of(key_token);
            self.report(
                Code::DuplicateProperty,
                span,
                format!("duplicate property `{key}`"),
            );
            return Ok(None);
        }
        Ok(Some(value))
    }

    fn enum_value<T>(&mut self, value: Option<Value>) -> Option<T>
    where
        T: std::str::FromStr<Err = crate::model::UnknownLiteral>,
    {
        match value {
            Some(Value::Word(w, span)) => match w.parse::<T>() {
                Ok(v) => Some(v),
                Err(e) => {
                    self.report(Code::InvalidEnumLiteral, span, e.to_string());
                    None
                }
            },
            _ => None,
        }
    }

    fn requirement(&mut self) -> PResult<Requirement> {
        let keyword = self.bump().unwrap();
        let line = keyword.line;
        let span = self.span_of(&keyword);
        let (id, _) = self.identifier(line, "requirement identifier")?;
        self.expect(TokenKind::LBrace, line)?;

        let mut definition = None;
        let mut criticality = None;
        let mut release = None;
        let mut status = None;
        let mut comments = None;
        // Keys whose value was present but invalid: not reported as missing.
        let mut present = HashSet::new();
        let mut seen = HashSet::new();
        self.block_body(|p, key, key_token| {
            if !matches!(
                key,
                "definition" | "comments" | "criticality" | "release" | "status"
            ) {
                return Ok(false);
            }
            present.insert(key.to_string());
            match key {
                "definition" | "comments" => {
                    if let Some(Value::Str(s)) = p.property(key_token, &mut seen, ValueKind::Str)? {
                        if key == "definition" {
                            definition = Some(s);
                        } else {
                            comments = Some(s);
                        }
                    }
                }
                "criticality" => {
                    let v = p.property(key_token, &mut seen, ValueKind::Word)?;
                    criticality = criticality.or(p.enum_value::<Criticality>(v));
                }
                "release" => {
                    let v = p.property(key_token, &mut seen, ValueKind::Word)?;
                    release = release.or(p.enum_value::<Release>(v));
                }
                "status" => {
                    let v = p.property(key_token, &mut seen, ValueKind::Word)?;
                    status = status.or(p.enum_value::<Status>(v));
                }
                _ => unreachable!(),
            }
            Ok(true)
        })?;

        let missing: Vec<_> = ["definition", "criticality", "release", "status"]
            .into_iter()
            .filter(|k| !present.contains(*k))
            .collect();
        if !missing.is_empty() {
            self.report(
                Code::MissingProperty,
                span.clone(),
                format!("requirement `{id}` is missing {}", missing.join(", ")),
            );
        }
        Ok(Requirement {
            id,
            definition: definition.unwrap_or_default(),
            criticality: criticality.unwrap_or(Criticality::Medium),
            release: release.unwrap_or(Release::Final),
            status: status.unwrap_or(Status::Planned),
            comments: comments.and_then(normalize_comments),
            span: Some(span),
        })
    }

    fn package(&mut self) -> PResult<()> {
        let keyword = self.bump().unwrap();
        let line = keyword.line;
        let (id, _) = self.identifier(line, "package identifier")?;
        let name = self.optional_string(line).unwrap_or_else(|| id.to_string());
        self.expect(TokenKind::LBrace, line)?;
        let mut package = Package::new(id, name);
        package.span = Some(self.span_of(&keyword));

        self.block_body(|p, key, _| {
            match key {
                "interface" => {
                    let (id, name, description, span) = p.described_element()?;
                    package.interfaces.push(Interface {
                        id,
                        name,
                        description,
                        span: Some(span),
                    });
                }
                "node" => {
                    let (id, name, description, span) = p.described_element()?;
                    package.nodes.push(Node {
                        id,
                        name,
                        description,
                        span: Some(span),
                    });
                }
                "component" => {
                    p.component(&mut package.components)?;
                }
                _ => return Ok(false),
            }
            Ok(true)
        })?;
        self.model.packages.push(package);
        Ok(())
    }

    /// `interface|node ID ["name"] [{ description: "..." }]`
    fn described_element(&mut self) -> PResult<(Identifier, String, Option<String>, SourceSpan)> {
        let keyword = self.bump().unwrap();
        let line = keyword.line;
        let span = self.span_of(&keyword);
        let (id, _) = self.identifier(line, "identifier")?;
        let name = self.optional_string(line).unwrap_or_else(|| id.to_string());
        let mut description = None;
        if self.at_block_open(line) {
            self.bump();
            let mut seen = HashSet::new();
            self.block_body(|p, key, key_token| {
                if key != "description" {
                    return Ok(false);
                }
                if let Some(Value::Str(s)) = p.property(key_token, &mut seen, ValueKind::Str)? {
                    description = Some(s);
                }
                Ok(true)
            })?;
        } else {
            self.end_of_line(line)?;
        }
        Ok((id, name, description, span))
    }

    /// Parses a component and its nested sub-components, appending them to
    /// `components` in pre-order. Returns the component's identifier.
    fn component(&mut self, components: &mut Vec<Component>) -> PResult<Identifier> {
        let keyword = self.bump().unwrap();
        let line = keyword.line;
        let (id, _) = self.identifier(line, "component identifier")?;
        let name = self.optional_string(line).unwrap_or_else(|| id.to_string());
        let mut component = Component::new(id.clone(), name);
        component.span = Some(self.span_of(&keyword));
        let slot = components.len();
        components.push(component);

        if self.at_block_open(line) {
            self.bump();
            let mut seen = HashSet::new();
            let mut owner = None;
            let mut parts = Vec::new();
            let mut provided = Vec::new();
            let mut consumed = Vec::new();
            let mut deployed_on = Vec::new();
            self.block_body(|p, key, key_token| {
                match key {
                    "owner" => {
                        if let Some(Value::Str(s)) =
                            p.property(key_token, &mut seen, ValueKind::Str)?
                        {
                            owner = Some(s);
                        }
                    }
                    "parts" | "provides" | "consumes" | "deployed_on" => {
                        if let Some(Value::List(ids)) =
                            p.property(key_token, &mut seen, ValueKind::List)?
                        {
                            let target = match key {
                                "parts" => &mut parts,
                                "provides" => &mut provided,
                                "consumes" => &mut consumed,
                                _ => &mut deployed_on,
                            };
                            target.extend(ids);
                        }
                    }
                    "component" => {
                        let child = p.component(components)?;
                        parts.push(child);
                    }
                    _ => return Ok(false),
                }
                Ok(true)
            })?;
            let component = &mut components[slot];
            component.owner = owner;
            component.sub_components = parts;
            component.provided = provided;
            component.consumed = consumed;
            component.deployed_on = deployed_on;
        } else {
            self.end_of_line(line)?;
        }
        Ok(id)
    }
}

#[derive(Clone, Copy)]
enum ValueKind {
    Str,
    Word,
    List,
}
