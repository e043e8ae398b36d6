//! Tabular requirements view: CSV import and export of one container.
//!
//! Dialect: comma separated, `"`-quoting with doubled quotes, UTF-8 without
//! BOM, LF line ends, mandatory header row.

use std::collections::HashMap;

use crate::diagnostic::{Code, Diagnostic};
use crate::dsl::parser::ParseResult;
use crate::model::{
    normalize_comments, Criticality, Identifier, Model, Release, Requirement, SourceSpan, Status,
    UnknownLiteral,
};
use crate::validate::{validate, ValidationOptions};

pub const CSV_HEADER: [&str; 6] = [
    "id",
    "definition",
    "criticality",
    "release",
    "status",
    "comments",
];

pub fn export_requirements_csv(model: &Model, container_id: &str) -> Result<String, Diagnostic> {
    let container = model.container(container_id).ok_or_else(|| unknown_container(container_id))?;
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let write_err = |e: csv::Error| Diagnostic::new(Code::CsvRecord, e.to_string());
    writer.write_record(CSV_HEADER).map_err(write_err)?;
    for r in &container.requirements {
        writer
            .write_record([
                r.id.as_str(),
                r.definition.as_str(),
                r.criticality.as_str(),
                r.release.as_str(),
                r.status.as_str(),
                r.comments.as_deref().unwrap_or(""),
            ])
            .map_err(write_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Diagnostic::new(Code::CsvRecord, e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writer only emits the utf-8 it was given"))
}

fn unknown_container(id: &str) -> Diagnostic {
    Diagnostic::new(
        Code::UnknownContainer,
        format!("no requirements container `{id}`"),
    )
    .with_subject(id)
}

/// Merges CSV rows into a container of `model`.
///
/// Rows whose id matches a requirement of the container replace it in
/// place; other rows are appended. The resulting model is revalidated and
/// its diagnostics are part of the result.
pub fn import_requirements_csv(
    csv_text: &str,
    source_name: &str,
    target_container_id: &str,
    model: &Model,
    options: ValidationOptions,
) -> ParseResult {
    let Some(target) = model
        .containers
        .iter()
        .position(|c| c.id.as_str() == target_container_id)
    else {
        return ParseResult::from_parts(model.clone(), vec![unknown_container(target_container_id)]);
    };

    let mut diagnostics = Vec::new();
    let rows = read_rows(csv_text, source_name, model, target, &mut diagnostics);

    let mut updated = model.clone();
    let container = &mut updated.containers[target];
    let mut positions: HashMap<Identifier, usize> = container
        .requirements
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id.clone(), i))
        .collect();
    for requirement in rows {
        match positions.get(&requirement.id) {
            Some(&i) => container.requirements[i] = requirement,
            None => {
                positions.insert(requirement.id.clone(), container.requirements.len());
                container.requirements.push(requirement);
            }
        }
    }

    if diagnostics.is_empty() {
        diagnostics.extend(validate(&updated, options));
    }
    ParseResult::from_parts(updated, diagnostics)
}

fn read_rows(
    csv_text: &str,
    source_name: &str,
    model: &Model,
    target: usize,
    diagnostics: &mut Vec<Diagnostic>,
) -> Vec<Requirement> {
    let at = |line: u64, column: usize| Some(SourceSpan::new(source_name, line as u32, column as u32));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(csv_text.as_bytes());

    let mut records = reader.records();
    match records.next() {
        Some(Ok(header)) if header.iter().eq(CSV_HEADER) => {}
        Some(Ok(header)) => {
            let found: Vec<_> = header.iter().collect();
            diagnostics.push(
                Diagnostic::new(
                    Code::CsvHeader,
                    format!(
                        "row 1: header must be `{}`, found `{}`",
                        CSV_HEADER.join(","),
                        found.join(",")
                    ),
                )
                .at(at(1, 1)),
            );
            return Vec::new();
        }
        Some(Err(e)) => {
            diagnostics.push(Diagnostic::new(Code::CsvHeader, format!("row 1: {e}")).at(at(1, 1)));
            return Vec::new();
        }
        None => {
            diagnostics.push(
                Diagnostic::new(Code::CsvHeader, "missing header row").at(at(1, 1)),
            );
            return Vec::new();
        }
    }

    let owner_of: HashMap<&str, &str> = model
        .elements()
        .map(|e| (e.id().as_str(), e.kind().as_str()))
        .collect();
    let target_ids: std::collections::HashSet<&str> = model.containers[target]
        .requirements
        .iter()
        .map(|r| r.id.as_str())
        .collect();

    let mut rows = Vec::new();
    for (index, record) in records.enumerate() {
        let row = index + 2;
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map_or(row as u64, |p| p.line());
                diagnostics.push(
                    Diagnostic::new(Code::CsvRecord, format!("row {row}: {e}")).at(at(line, 1)),
                );
                continue;
            }
        };
        let line = record.position().map_or(row as u64, |p| p.line());
        if record.len() != CSV_HEADER.len() {
            diagnostics.push(
                Diagnostic::new(
                    Code::CsvRecord,
                    format!(
                        "row {row}: expected {} fields, found {}",
                        CSV_HEADER.len(),
                        record.len()
                    ),
                )
                .at(at(line, 1)),
            );
            continue;
        }
        let id = Identifier::new(&record[0]);
        let mut cell_error = |column: usize, err: UnknownLiteral| {
            diagnostics.push(
                Diagnostic::new(Code::CsvInvalidCell, format!("row {row}: {err}"))
                    .with_subject(id.clone())
                    .at(at(line, column + 1)),
            );
        };
        let criticality = record[2].parse::<Criticality>().map_err(|e| cell_error(2, e));
        let release = record[3].parse::<Release>().map_err(|e| cell_error(3, e));
        let status = record[4].parse::<Status>().map_err(|e| cell_error(4, e));
        let (Ok(criticality), Ok(release), Ok(status)) = (criticality, release, status) else {
            continue;
        };

        if !target_ids.contains(id.as_str()) {
            if let Some(kind) = owner_of.get(id.as_str()) {
                diagnostics.push(
                    Diagnostic::new(
                        Code::CsvIdCollision,
                        format!("row {row}: id `{id}` is already used by a {kind} outside the target container"),
                    )
                    .with_subject(id.clone())
                    .at(at(line, 1)),
                );
                continue;
            }
        }

        rows.push(Requirement {
            id,
            definition: record[1].to_string(),
            criticality,
            release,
            status,
            comments: normalize_comments(record[5].to_string()),
            span: Some(SourceSpan::new(source_name, line as u32, 1)),
        });
    }
    rows
}
