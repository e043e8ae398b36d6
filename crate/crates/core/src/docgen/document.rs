/// A generated document: a title and a tree of sections.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    /// Rendered as a first-level heading when non-empty.
    pub title: String,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    /// 1 for chapters.
    pub level: u8,
    pub heading: String,
    pub blocks: Vec<Block>,
    pub children: Vec<Section>,
}

impl Section {
    pub fn new(level: u8, heading: impl Into<String>) -> Self {
        Section {
            level,
            heading: heading.into(),
            blocks: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn with_block(mut self, block: Block) -> Self {
        self.blocks.push(block);
        self
    }

    pub fn push(&mut self, block: Block) {
        self.blocks.push(block);
    }

    /// Appends a subsection one level below this one.
    pub fn child(&mut self, heading: impl Into<String>) -> &mut Section {
        self.children.push(Section::new(self.level + 1, heading));
        self.children.last_mut().unwrap()
    }

    pub fn find(&self, heading: &str) -> Option<&Section> {
        self.children.iter().find(|s| s.heading == heading)
    }

    pub fn tables(&self) -> impl Iterator<Item = &Table> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Table(t) => Some(t),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Paragraph(String),
    Table(Table),
    /// Reference to a diagram file, relative to the document.
    Diagram { caption: String, path: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    /// Values of the first column.
    pub fn keys(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter_map(|r| r.first().map(String::as_str))
            .collect()
    }
}

impl Document {
    /// Every section in document order.
    pub fn walk(&self) -> Vec<&Section> {
        fn visit<'d>(s: &'d Section, out: &mut Vec<&'d Section>) {
            out.push(s);
            for c in &s.children {
                visit(c, out);
            }
        }
        let mut out = Vec::new();
        for s in &self.sections {
            visit(s, &mut out);
        }
        out
    }

    pub fn chapter(&self, heading: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.heading == heading)
    }

    /// Checks heading nesting and table shapes.
    pub fn check(&self) -> Result<(), String> {
        fn visit(s: &Section, parent: u8) -> Result<(), String> {
            if s.level == 0 || s.level > parent + 1 {
                return Err(format!(
                    "section `{}` at level {} under level {parent}",
                    s.heading, s.level
                ));
            }
            if s.level > 6 {
                return Err(format!("section `{}` nested too deep", s.heading));
            }
            for block in &s.blocks {
                if let Block::Table(t) = block {
                    if let Some(r) = t.rows.iter().find(|r| r.len() != t.headers.len()) {
                        return Err(format!(
                            "table in `{}` has a row of {} cells for {} columns",
                            s.heading,
                            r.len(),
                            t.headers.len()
                        ));
                    }
                }
            }
            s.children.iter().try_for_each(|c| visit(c, s.level))
        }
        self.sections.iter().try_for_each(|s| visit(s, 0))
    }
}
