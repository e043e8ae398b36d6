//! Prints the SRS or roadmap document of a `.req` file as Markdown.
//!
//! Usage: `cargo run --example render_srs -- <file.req> [srs|roadmap]`

use std::{env, fs, process};

use reqforge_core::docgen::{generate_roadmap_doc, generate_srs, render_markdown};
use reqforge_core::dsl::parse;

fn main() {
    let mut args = env::args().skip(1);
    let Some(path) = args.next() else {
        eprintln!("usage: render_srs <file.req> [srs|roadmap]");
        process::exit(2);
    };
    let text = fs::read_to_string(&path).unwrap_or_else(|e| {
        eprintln!("{path}: {e}");
        process::exit(2);
    });
    let result = parse(&text, &path);
    let Some(model) = result.model else {
        for d in &result.diagnostics {
            eprintln!("{d}");
        }
        process::exit(1);
    };
    let doc = match args.next().as_deref() {
        None | Some("srs") => generate_srs(&model),
        Some("roadmap") => generate_roadmap_doc(&model),
        Some(other) => {
            eprintln!("unknown document `{other}`");
            process::exit(2);
        }
    };
    print!("{}", render_markdown(&doc));
}
