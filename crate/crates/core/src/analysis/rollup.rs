use serde::Serialize;

use crate::model::{Identifier, Level, Model, Status};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StatusCounts {
    pub planned: usize,
    pub in_progress: usize,
    pub done: usize,
    pub postponed: usize,
    pub cancelled: usize,
}

impl StatusCounts {
    pub fn add(&mut self, status: Status) {
        *self.slot(status) += 1;
    }

    fn slot(&mut self, status: Status) -> &mut usize {
        match status {
            Status::Planned => &mut self.planned,
            Status::InProgress => &mut self.in_progress,
            Status::Done => &mut self.done,
            Status::Postponed => &mut self.postponed,
            Status::Cancelled => &mut self.cancelled,
        }
    }

    pub fn get(&self, status: Status) -> usize {
        match status {
            Status::Planned => self.planned,
            Status::InProgress => self.in_progress,
            Status::Done => self.done,
            Status::Postponed => self.postponed,
            Status::Cancelled => self.cancelled,
        }
    }

    pub fn total(&self) -> usize {
        self.planned + self.in_progress + self.done + self.postponed + self.cancelled
    }

    /// `done / (total - cancelled)`, or 0 when nothing is left to do.
    pub fn completion(&self) -> f64 {
        let denominator = self.total() - self.cancelled;
        if denominator == 0 {
            0.0
        } else {
            self.done as f64 / denominator as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupRollup {
    /// Container id; absent for level rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub container: Option<Identifier>,
    pub level: Level,
    pub counts: StatusCounts,
    pub total: usize,
    pub completion: f64,
}

impl GroupRollup {
    fn new(container: Option<Identifier>, level: Level, counts: StatusCounts) -> Self {
        GroupRollup {
            container,
            level,
            counts,
            total: counts.total(),
            completion: counts.completion(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatusRollup {
    pub containers: Vec<GroupRollup>,
    /// Always three rows: tool, framework, case_study.
    pub levels: Vec<GroupRollup>,
}

pub fn status_rollup(model: &Model) -> StatusRollup {
    let mut per_level = [StatusCounts::default(); 3];
    let containers = model
        .containers
        .iter()
        .map(|c| {
            let mut counts = StatusCounts::default();
            for r in &c.requirements {
                counts.add(r.status);
                per_level[level_slot(c.kind)].add(r.status);
            }
            GroupRollup::new(Some(c.id.clone()), c.kind, counts)
        })
        .collect();
    let levels = Level::ALL
        .iter()
        .map(|&level| GroupRollup::new(None, level, per_level[level_slot(level)]))
        .collect();
    StatusRollup { containers, levels }
}

fn level_slot(level: Level) -> usize {
    match level {
        Level::Tool => 0,
        Level::Framework => 1,
        Level::CaseStudy => 2,
    }
}
