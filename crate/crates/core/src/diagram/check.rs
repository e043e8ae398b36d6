//! Minimal checker for the DOT subset emitted by this crate.
//!
//! Accepts `digraph ID { stmts }` with node, edge, attribute, `key=value`
//! and nested `subgraph` statements. Besides syntax it verifies that node
//! ids are declared once and that edges only join declared nodes.

use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotSummary {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub subgraphs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Equals,
    Arrow,
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '=' => {
                chars.next();
                out.push(match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    _ => Tok::Equals,
                });
            }
            '-' => {
                chars.next();
                if chars.next() != Some('>') {
                    return Err("expected `->`".into());
                }
                out.push(Tok::Arrow);
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e) => {
                                s.push('\\');
                                s.push(e);
                            }
                            None => return Err("unterminated escape".into()),
                        },
                        Some(c) => s.push(c),
                    }
                }
                out.push(Tok::Id(s));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Id(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct Checker {
    toks: Vec<Tok>,
    pos: usize,
    summary: DotSummary,
    declared: HashSet<String>,
}

impl Checker {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), String> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            other => Err(format!("expected {tok:?}, found {other:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(s)) => Ok(s),
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    fn attr_list(&mut self) -> Result<(), String> {
        self.expect(Tok::LBracket)?;
        loop {
            match self.peek() {
                Some(Tok::RBracket) => {
                    self.next();
                    return Ok(());
                }
                Some(Tok::Id(_)) => {
                    self.id()?;
                    self.expect(Tok::Equals)?;
                    self.id()?;
                    if self.peek() == Some(&Tok::Comma) || self.peek() == Some(&Tok::Semi) {
                        self.next();
                    }
                }
                other => return Err(format!("bad attribute list at {other:?}")),
            }
        }
    }

    fn stmts(&mut self) -> Result<(), String> {
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.next();
                    return Ok(());
                }
                None => return Err("unexpected end of graph".into()),
                _ => self.stmt()?,
            }
        }
    }

    fn stmt(&mut self) -> Result<(), String> {
        let first = self.id()?;
        match (first.as_str(), self.peek()) {
            ("graph" | "node" | "edge", Some(Tok::LBracket)) => self.attr_list()?,
            ("subgraph", _) => {
                self.id()?;
                self.expect(Tok::LBrace)?;
                self.summary.subgraphs += 1;
                return self.stmts();
            }
            (_, Some(Tok::Equals)) => {
                self.next();
                self.id()?;
            }
            (_, Some(Tok::Arrow)) => {
                self.next();
                let to = self.id()?;
                if self.peek() == Some(&Tok::LBracket) {
                    self.attr_list()?;
                }
                self.summary.edges.push((first, to));
            }
            _ => {
                if !self.declared.insert(first.clone()) {
                    return Err(format!("node `{first}` declared twice"));
                }
                if self.peek() == Some(&Tok::LBracket) {
                    self.attr_list()?;
                }
                self.summary.nodes.push(first);
            }
        }
        self.expect(Tok::Semi)
    }
}

pub fn check_dot(text: &str) -> Result<DotSummary, String> {
    let toks = lex(text)?;
    let mut checker = Checker {
        toks,
        pos: 0,
        summary: DotSummary {
            name: String::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
            subgraphs: 0,
        },
        declared: HashSet::new(),
    };
    match checker.next() {
        Some(Tok::Id(k)) if k == "digraph" => {}
        other => return Err(format!("expected `digraph`, found {other:?}")),
    }
    checker.summary.name = checker.id()?;
    checker.expect(Tok::LBrace)?;
    checker.stmts()?;
    if checker.pos != checker.toks.len() {
        return Err("trailing tokens after graph".into());
    }
    for (from, to) in &checker.summary.edges {
        for end in [from, to] {
            if !checker.declared.contains(end) {
                return Err(format!("edge endpoint `{end}` is not a declared node"));
            }
        }
    }
    Ok(checker.summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_simple_graph() {
        let s = check_dot("digraph \"g\" {\n  a [label=\"A\", shape=note];\n  subgraph \"cluster_x\" {\n    label=\"x\";\n    b;\n  }\n  a -> b [style=dashed];\n}\n").unwrap();
        assert_eq!(s.nodes, ["a", "b"]);
        assert_eq!(s.edges, [("a".to_string(), "b".to_string())]);
        assert_eq!(s.subgraphs, 1);
    }

    #[test]
    fn rejects_undeclared_endpoint() {
        assert!(check_dot("digraph g { a; a -> b; }").is_err());
    }

    #[test]
    fn rejects_duplicate_nodes_and_bad_syntax() {
        assert!(check_dot("digraph g { a; a; }").is_err());
        assert!(check_dot("digraph g { a }").is_err());
        assert!(check_dot("digraph g { a; ").is_err());
        assert!(check_dot("graph g { }").is_err());
    }
}
