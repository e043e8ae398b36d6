use crate::docgen::document::{Block, Document, Section, Table};

/// CommonMark rendering: `#` headings, pipe tables, blocks separated by one
/// blank line, trailing newline.
pub fn render_markdown(doc: &Document) -> String {
    let mut chunks: Vec<String> = Vec::new();
    if !doc.title.is_empty() {
        chunks.push(format!("# {}", inline(&doc.title)));
    }
    for section in &doc.sections {
        render_section(section, &mut chunks);
    }
    if chunks.is_empty() {
        return String::new();
    }
    let mut out = chunks.join("\n\n");
    out.push('\n');
    out
}

fn render_section(section: &Section, chunks: &mut Vec<String>) {
    let hashes = "#".repeat(section.level.clamp(1, 6) as usize);
    chunks.push(format!("{hashes} {}", inline(&section.heading)));
    for block in &section.blocks {
        chunks.push(match block {
            Block::Paragraph(text) => text.trim_end().to_string(),
            Block::Table(table) => render_table(table),
            Block::Diagram { caption, path } => {
                format!("Diagram: [{}]({})", inline(caption), path.replace(' ', "%20"))
            }
        });
    }
    for child in &section.children {
        render_section(child, chunks);
    }
}

/// Collapses line breaks so text stays on one line.
fn inline(text: &str) -> String {
    text.split(['\n', '\r'])
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cell(text: &str) -> String {
    inline(text).replace('|', "\\|")
}

fn render_table(table: &Table) -> String {
    let line = |cells: &[String]| {
        let body: Vec<String> = cells.iter().map(|c| cell(c)).collect();
        format!("| {} |", body.join(" | "))
    };
    let mut lines = vec![
        line(&table.headers),
        format!("|{}", " --- |".repeat(table.headers.len())),
    ];
    lines.extend(table.rows.iter().map(|r| line(r)));
    lines.join("\n")
}
