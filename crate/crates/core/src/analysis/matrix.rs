use serde::Serialize;

use crate::analysis::closure::TraceClosure;
use crate::model::{Identifier, Level, Model};

/// Reachability between the requirements of two levels. Rows and columns
/// are sorted by identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceabilityMatrix {
    pub from_level: Level,
    pub to_level: Level,
    pub rows: Vec<Identifier>,
    pub cols: Vec<Identifier>,
    pub cells: Vec<Vec<bool>>,
}

impl TraceabilityMatrix {
    pub fn cell(&self, row: &str, col: &str) -> Option<bool> {
        let r = self.rows.iter().position(|id| id.as_str() == row)?;
        let c = self.cols.iter().position(|id| id.as_str() == col)?;
        Some(self.cells[r][c])
    }
}

fn ids_at_level(model: &Model, level: Level) -> Vec<Identifier> {
    let mut ids: Vec<_> = model
        .requirements()
        .filter(|(_, c)| c.kind == level)
        .map(|(r, _)| r.id.clone())
        .collect();
    ids.sort();
    ids.dedup();
    ids
}

pub fn matrix(model: &Model, from_level: Level, to_level: Level) -> TraceabilityMatrix {
    matrix_from_closure(model, &crate::analysis::trace_closure(model), from_level, to_level)
}

pub fn matrix_from_closure(
    model: &Model,
    closure: &TraceClosure,
    from_level: Level,
    to_level: Level,
) -> TraceabilityMatrix {
    let rows = ids_at_level(model, from_level);
    let cols = ids_at_level(model, to_level);
    let cells = rows
        .iter()
        .map(|r| cols.iter().map(|c| closure.contains(r.as_str(), c.as_str())).collect())
        .collect();
    TraceabilityMatrix {
        from_level,
        to_level,
        rows,
        cols,
        cells,
    }
}
