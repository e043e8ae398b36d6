use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use reqforge_core::analysis::{gap_analysis, matrix_from_closure, trace_closure, Strictness};
use reqforge_core::diagram::{
    component_diagram, deployment_diagram, diagram_file_name, requirement_diagram, DiagramKind,
    DEPLOYMENT_ROOT,
};
use reqforge_core::docgen::{generate_roadmap_doc, generate_srs, render_markdown};
use reqforge_core::dsl::{import_requirements_csv, parse, serialize};
use reqforge_core::{stats, Level, ValidationOptions};
use serde::Serialize;

use crate::args::{Cli, Command, Target};
use crate::fsutil::write_atomic;
use crate::load::{display, expand, load, Loaded};
use crate::output::{DiagnosticReport, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Validation errors, uncovered requirements or non-canonical files.
    Failure,
}

struct Ctx {
    out: Output,
    options: ValidationOptions,
    strict_warnings: bool,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let ctx = Ctx {
        out: Output::new(cli.format, cli.color),
        options: ValidationOptions {
            relaxed_levels: cli.relaxed_levels,
        },
        strict_warnings: cli.strict_warnings,
    };
    match cli.command {
        Command::Validate { paths } => validate_cmd(&ctx, &paths),
        Command::Check { paths, strict } => check_cmd(&ctx, &paths, strict),
        Command::Gen {
            paths,
            out,
            targets,
        } => gen_cmd(&ctx, &paths, &out, &targets),
        Command::Stats { paths } => stats_cmd(&ctx, &paths),
        Command::Matrix { paths, from, to } => matrix_cmd(&ctx, &paths, from, to),
        Command::ImportCsv {
            csv,
            container,
            paths,
            in_place,
        } => import_cmd(&ctx, &csv, &container, &paths, in_place),
        Command::Fmt { paths, check } => fmt_cmd(&ctx, &paths, check),
    }
}

/// Loads and validates. On failure the diagnostics are reported and `None`
/// is returned; on success warnings go to stderr.
fn load_valid(ctx: &Ctx, paths: &[PathBuf]) -> Result<Option<Loaded>> {
    let loaded = load(paths, ctx.options)?;
    if !loaded.passes(ctx.strict_warnings) {
        if ctx.out.json() {
            ctx.out.print_json(&DiagnosticReport::new(&loaded.diagnostics))?;
        } else {
            ctx.out.diagnostics_to_stderr(&loaded.diagnostics);
        }
        return Ok(None);
    }
    ctx.out.diagnostics_to_stderr(&loaded.diagnostics);
    Ok(Some(loaded))
}

fn validate_cmd(ctx: &Ctx, paths: &[PathBuf]) -> Result<Outcome> {
    let loaded = load(paths, ctx.options)?;
    if ctx.out.json() {
        ctx.out.print_json(&DiagnosticReport::new(&loaded.diagnostics))?;
    } else {
        ctx.out.diagnostics_to_stdout(&loaded.diagnostics)?;
    }
    Ok(if loaded.passes(ctx.strict_warnings) {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

fn check_cmd(ctx: &Ctx, paths: &[PathBuf], strict: bool) -> Result<Outcome> {
    let Some(loaded) = load_valid(ctx, paths)? else {
        return Ok(Outcome::Failure);
    };
    let strictness = if strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let closure = trace_closure(&loaded.model);
    let report = gap_analysis(&loaded.model, &closure, strictness);
    if ctx.out.json() {
        ctx.out.print_json(&report)?;
    } else {
        let mut text = String::new();
        for id in &report.covered {
            let _ = writeln!(text, "{id} covered");
        }
        for entry in &report.entries {
            let _ = writeln!(text, "{} uncovered {}", entry.case_study_req, entry.reason.as_str());
        }
        let _ = writeln!(
            text,
            "{} covered, {} uncovered ({})",
            report.covered_count,
            report.uncovered_count,
            if strict { "strict" } else { "lenient" }
        );
        ctx.out.print_text(&text)?;
    }
    Ok(if report.is_fully_covered() {
        Outcome::Success
    } else {
        Outcome::Failure
    })
}

/// Every generated file, relative to the output directory, with contents.
fn render_outputs(loaded: &Loaded, targets: &[Target]) -> Result<Vec<(PathBuf, String)>> {
    let wants = |t: Target| targets.contains(&t) || targets.contains(&Target::All);
    let model = &loaded.model;
    let mut files = Vec::new();
    if wants(Target::Srs) {
        files.push((PathBuf::from("srs.md"), render_markdown(&generate_srs(model))));
    }
    if wants(Target::Roadmap) {
        files.push((
            PathBuf::from("roadmap.md"),
            render_markdown(&generate_roadmap_doc(model)),
        ));
    }
    if wants(Target::Diagrams) {
        let dir = Path::new("diagrams");
        let closure = trace_closure(model);
        for (component, _) in model.components() {
            let graph = requirement_diagram(model, &closure, component.id.as_str())
                .map_err(|d| anyhow!("{d}"))?;
            files.push((
                dir.join(diagram_file_name(DiagramKind::Requirements, component.id.as_str())),
                graph.to_dot(),
            ));
        }
        for package in &model.packages {
            let graph = component_diagram(model, package.id.as_str()).map_err(|d| anyhow!("{d}"))?;
            files.push((
                dir.join(diagram_file_name(DiagramKind::Components, package.id.as_str())),
                graph.to_dot(),
            ));
        }
        files.push((
            dir.join(diagram_file_name(DiagramKind::Deployment, DEPLOYMENT_ROOT)),
            deployment_diagram(model).to_dot(),
        ));
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(files)
}

#[derive(Serialize)]
struct GenReport {
    out: String,
    files: Vec<String>,
}

fn gen_cmd(ctx: &Ctx, paths: &[PathBuf], out: &Path, targets: &[Target]) -> Result<Outcome> {
    let Some(loaded) = load_valid(ctx, paths)? else {
        return Ok(Outcome::Failure);
    };
    let files = render_outputs(&loaded, targets)?;
    for (rel, contents) in &files {
        write_atomic(&out.join(rel), contents.as_bytes())?;
    }
    let names: Vec<String> = files
        .iter()
        .map(|(rel, _)| rel.to_string_lossy().replace('\\', "/"))
        .collect();
    if ctx.out.json() {
        ctx.out.print_json(&GenReport {
            out: display(out),
            files: names,
        })?;
    } else {
        let text: String = names.iter().map(|n| format!("wrote {n}\n")).collect();
        ctx.out.print_text(&text)?;
    }
    Ok(Outcome::Success)
}

fn stats_cmd(ctx: &Ctx, paths: &[PathBuf]) -> Result<Outcome> {
    let Some(loaded) = load_valid(ctx, paths)? else {
        return Ok(Outcome::Failure);
    };
    let s = stats(&loaded.model);
    if ctx.out.json() {
        ctx.out.print_json(&s)?;
        return Ok(Outcome::Success);
    }
    let mut text = String::new();
    let _ = writeln!(text, "requirements: {}", s.requirement_count);
    let _ = writeln!(text, "architecture elements: {}", s.architecture_element_count);
    let _ = writeln!(text, "total elements: {}", s.total_element_count);
    for c in &s.containers {
        let _ = writeln!(
            text,
            "container {} ({}): {} requirements",
            c.id, c.level, c.requirements
        );
    }
    for p in &s.packages {
        let _ = writeln!(
            text,
            "package {}: {} components, {} interfaces, {} nodes, {} elements",
            p.id, p.components, p.interfaces, p.nodes, p.elements
        );
    }
    ctx.out.print_text(&text)?;
    Ok(Outcome::Success)
}

fn matrix_cmd(ctx: &Ctx, paths: &[PathBuf], from: Level, to: Level) -> Result<Outcome> {
    let Some(loaded) = load_valid(ctx, paths)? else {
        return Ok(Outcome::Failure);
    };
    let closure = trace_closure(&loaded.model);
    let matrix = matrix_from_closure(&loaded.model, &closure, from, to);
    if ctx.out.json() {
        ctx.out.print_json(&matrix)?;
        return Ok(Outcome::Success);
    }
    let corner = format!("{from} \\ {to}");
    let first = matrix
        .rows
        .iter()
        .map(|r| r.as_str().len())
        .chain([corner.len()])
        .max()
        .unwrap_or(0);
    let mut text = format!("{corner:<first$}");
    for col in &matrix.cols {
        let _ = write!(text, "  {col}");
    }
    text.push('\n');
    for (row, cells) in matrix.rows.iter().zip(&matrix.cells) {
        let _ = write!(text, "{:<first$}", row.as_str());
        for (col, &cell) in matrix.cols.iter().zip(cells) {
            let mark = if cell { "x" } else { "." };
            let _ = write!(text, "  {mark:<width$}", width = col.as_str().len());
        }
        text.truncate(text.trim_end().len());
        text.push('\n');
    }
    ctx.out.print_text(&text)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct ImportReport<'a> {
    container: &'a str,
    requirements: usize,
    written: Option<String>,
    model: Option<String>,
    diagnostics: &'a [reqforge_core::Diagnostic],
}

fn import_cmd(
    ctx: &Ctx,
    csv_path: &Path,
    container: &str,
    paths: &[PathBuf],
    in_place: bool,
) -> Result<Outcome> {
    let csv_text = fs::read_to_string(csv_path)
        .with_context(|| format!("cannot read {}", csv_path.display()))?;
    let Some(loaded) = load_valid(ctx, paths)? else {
        return Ok(Outcome::Failure);
    };
    let result = import_requirements_csv(
        &csv_text,
        &display(csv_path),
        container,
        &loaded.model,
        ctx.options,
    );
    let failed = result.model.is_none()
        || (ctx.strict_warnings && !result.diagnostics.is_empty());
    if failed {
        if ctx.out.json() {
            ctx.out.print_json(&DiagnosticReport::new(&result.diagnostics))?;
        } else {
            ctx.out.diagnostics_to_stderr(&result.diagnostics);
        }
        return Ok(Outcome::Failure);
    }
    ctx.out.diagnostics_to_stderr(&result.diagnostics);
    let updated = result.model.unwrap();
    let imported = updated
        .container(container)
        .expect("import succeeded, so the container exists");

    let (written, model_text) = if in_place {
        let file = loaded
            .files
            .iter()
            .find(|f| f.model.as_ref().is_some_and(|m| m.container(container).is_some()))
            .expect("the container comes from one of the files");
        let mut own = file.model.clone().unwrap();
        let slot = own
            .containers
            .iter_mut()
            .find(|c| c.id.as_str() == container)
            .unwrap();
        *slot = imported.clone();
        write_atomic(&file.path, serialize(&own).as_bytes())?;
        (Some(display(&file.path)), None)
    } else {
        (None, Some(serialize(&updated)))
    };

    if ctx.out.json() {
        ctx.out.print_json(&ImportReport {
            container,
            requirements: imported.requirements.len(),
            written,
            model: model_text,
            diagnostics: &result.diagnostics,
        })?;
    } else if let Some(path) = written {
        ctx.out.print_text(&format!(
            "updated {path}: container {container} has {} requirements\n",
            imported.requirements.len()
        ))?;
    } else {
        ctx.out.print_text(&model_text.unwrap())?;
    }
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct FmtReport {
    check: bool,
    files: usize,
    changed: Vec<String>,
}

fn fmt_cmd(ctx: &Ctx, paths: &[PathBuf], check: bool) -> Result<Outcome> {
    let mut diagnostics = Vec::new();
    let mut rewrites = Vec::new();
    let files = expand(paths)?;
    for path in &files {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let result = parse(&text, &display(path));
        match result.model {
            Some(model) => {
                let canonical = serialize(&model);
                if canonical != text {
                    rewrites.push((path.clone(), canonical));
                }
            }
            None => diagnostics.extend(result.diagnostics),
        }
    }
    if !diagnostics.is_empty() {
        if ctx.out.json() {
            ctx.out.print_json(&DiagnosticReport::new(&diagnostics))?;
        } else {
            ctx.out.diagnostics_to_stderr(&diagnostics);
        }
        return Ok(Outcome::Failure);
    }
    if !check {
        for (path, canonical) in &rewrites {
            write_atomic(path, canonical.as_bytes())?;
        }
    }
    let changed: Vec<String> = rewrites.iter().map(|(p, _)| display(p)).collect();
    if ctx.out.json() {
        ctx.out.print_json(&FmtReport {
            check,
            files: files.len(),
            changed: changed.clone(),
        })?;
    } else {
        let verb = if check { "would reformat" } else { "formatted" };
        let text: String = changed.iter().map(|c| format!("{verb} {c}\n")).collect();
        ctx.out.print_text(&text)?;
    }
    Ok(if check && !changed.is_empty() {
        Outcome::Failure
    } else {
        Outcome::Success
    })
}
