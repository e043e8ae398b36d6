use crate::diagnostic::{Code, Diagnostic};
use crate::model::SourceSpan;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// Keyword, identifier or enum literal.
    Word(String),
    /// Quoted string with escapes already decoded.
    Str(String),
    LBrace,
    RBrace,
    Colon,
    Comma,
    Arrow,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Word(w) => format!("`{w}`"),
            TokenKind::Str(_) => "string".to_string(),
            TokenKind::LBrace => "`{`".to_string(),
            TokenKind::RBrace => "`}`".to_string(),
            TokenKind::Colon => "`:`".to_string(),
            TokenKind::Comma => "`,`".to_string(),
            TokenKind::Arrow => "`->`".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: u32,
    pub column: u32,
}

pub(crate) fn tokenize(text: &str, file: &str, diagnostics: &mut Vec<Diagnostic>) -> Vec<Token> {
    let mut lexer = Lexer {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        file,
        tokens: Vec::new(),
        diagnostics,
    };
    lexer.run();
    lexer.tokens
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
    file: &'a str,
    tokens: Vec<Token>,
    diagnostics: &'a mut Vec<Diagnostic>,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

impl Lexer<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn advance(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&mut self, line: u32, column: u32, message: String) {
        self.diagnostics.push(
            Diagnostic::new(Code::Lexical, message)
                .at(Some(SourceSpan::new(self.file, line, column))),
        );
    }

    fn push(&mut self, kind: TokenKind, line: u32, column: u32) {
        self.tokens.push(Token { kind, line, column });
    }

    fn run(&mut self) {
        while let Some(c) = self.peek() {
            let (line, column) = (self.line, self.column);
            match c {
                ' ' | '\t' | '\r' | '\n' | '\u{feff}' => {
                    self.advance();
                }
                '/' if self.peek_at(1) == Some('/') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.advance();
                    }
                }
                '{' => {
                    self.advance();
                    self.push(TokenKind::LBrace, line, column);
                }
                '}' => {
                    self.advance();
                    self.push(TokenKind::RBrace, line, column);
                }
                ':' => {
                    self.advance();
                    self.push(TokenKind::Colon, line, column);
                }
                ',' => {
                    self.advance();
                    self.push(TokenKind::Comma, line, column);
                }
                '-' if self.peek_at(1) == Some('>') => {
                    self.advance();
                    self.advance();
                    self.push(TokenKind::Arrow, line, column);
                }
                '"' => self.string(line, column),
                c if c.is_ascii_alphanumeric() || c == '_' => self.word(line, column),
                other => {
                    self.advance();
                    self.error(line, column, format!("unexpected character {other:?}"));
                }
            }
        }
    }

    fn word(&mut self, line: u32, column: u32) {
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if !is_word_char(c) || (c == '-' && self.peek_at(1) == Some('>')) {
                break;
            }
            word.push(c);
            self.advance();
        }
        self.push(TokenKind::Word(word), line, column);
    }

    fn string(&mut self, line: u32, column: u32) {
        self.advance();
        let mut value = String::new();
        let mut ok = true;
        loop {
            let (esc_line, esc_column) = (self.line, self.column);
            match self.peek() {
                None | Some('\n') => {
                    self.error(line, column, "unterminated string literal".to_string());
                    return;
                }
                Some('"') => {
                    self.advance();
                    break;
                }
                Some('\\') => {
                    self.advance();
                    match self.advance() {
                        Some('"') => value.push('"'),
                        Some('\\') => value.push('\\'),
                        Some('n') => value.push('\n'),
                        Some('r') => value.push('\r'),
                        Some('t') => value.push('\t'),
                        Some('u') => match self.unicode_escape() {
                            Some(c) => value.push(c),
                            None => {
                                ok = false;
                                self.error(
                                    esc_line,
                                    esc_column,
                                    "invalid unicode escape, expected \\u{hex}".to_string(),
                                );
                            }
                        },
                        Some('\n') | None => {
                            self.error(line, column, "unterminated string literal".to_string());
                            return;
                        }
                        Some(other) => {
                            ok = false;
                            self.error(esc_line, esc_column, format!("unknown escape `\\{other}`"));
                        }
                    }
                }
                Some(c) => {
                    value.push(c);
                    self.advance();
                }
            }
        }
        if ok {
            self.push(TokenKind::Str(value), line, column);
        }
    }

    fn unicode_escape(&mut self) -> Option<char> {
        if self.peek() != Some('{') {
            return None;
        }
        self.advance();
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c == '}' {
                self.advance();
                return u32::from_str_radix(&digits, 16).ok().and_then(char::from_u32);
            }
            if !c.is_ascii_hexdigit() || digits.len() >= 6 {
                return None;
            }
            digits.push(c);
            self.advance();
        }
        None
    }
}
