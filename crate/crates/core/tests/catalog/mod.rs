//! Invariant-breaking edits of the fixtures, each paired with the single
//! diagnostic code it must produce.
#![allow(dead_code)]

pub enum Edit {
    Append(&'static str),
    /// Replaces the first occurrence.
    Replace(&'static str, &'static str),
}

pub struct Mutation {
    pub name: &'static str,
    pub fixture: &'static str,
    pub edit: Edit,
    pub code: &'static str,
    pub relaxed_levels: bool,
}

impl Mutation {
    pub fn apply(&self, text: &str) -> String {
        match self.edit {
            Edit::Append(extra) => format!("{text}{extra}"),
            Edit::Replace(from, to) => {
                assert!(text.contains(from), "{}: `{from}` not found", self.name);
                text.replacen(from, to, 1)
            }
        }
    }
}

const fn m(name: &'static str, fixture: &'static str, edit: Edit, code: &'static str) -> Mutation {
    Mutation {
        name,
        fixture,
        edit,
        code,
        relaxed_levels: false,
    }
}

pub const CATALOG: &[Mutation] = &[
    m(
        "identifier declared twice",
        "fig3.req",
        Edit::Append("package EXTRA \"Extra\" {\n  node NOK-02 \"Clash\"\n}\n"),
        "E001",
    ),
    m(
        "malformed identifier",
        "fig3.req",
        Edit::Append("package EXTRA \"Extra\" {\n  node BAD--ID \"Bad\"\n}\n"),
        "E002",
    ),
    m(
        "trace to a missing requirement",
        "fig3.req",
        Edit::Append("trace MODELIO-030 -> NOK-99\n"),
        "E003",
    ),
    m(
        "satisfy from an interface",
        "fig3.req",
        Edit::Append("satisfy XMI-EXPORT -> MODELIO-030\n"),
        "E004",
    ),
    m(
        "empty definition",
        "fig3.req",
        Edit::Replace("\"Model-based design of telecom network functions\"", "\"\""),
        "E005",
    ),
    m(
        "trace declared twice",
        "fig3.req",
        Edit::Append("trace MODELIO-030 -> SYS-020201\n"),
        "E006",
    ),
    m(
        "satisfy declared twice",
        "fig3.req",
        Edit::Append("satisfy MODELIO-SOFT -> MODELIO-030\n"),
        "E007",
    ),
    m(
        "component containing itself",
        "toolchain.req",
        Edit::Replace(
            "component TRACE-STORE \"Trace store\"",
            "component TRACE-STORE \"Trace store\" {\n        parts: EDITOR-TOOL\n      }",
        ),
        "E008",
    ),
    m(
        "component with two parents",
        "toolchain.req",
        Edit::Replace("consumes: TRACE-API\n      provides: DOC-API", "consumes: TRACE-API\n      provides: DOC-API\n      parts: TRACE-STORE"),
        "E009",
    ),
    m(
        "trace from case study down to tool",
        "fig3.req",
        Edit::Append("trace NOK-02 -> MODELIO-030\n"),
        "E010",
    ),
    Mutation {
        name: "trace cycle between framework requirements",
        fixture: "toolchain.req",
        edit: Edit::Append("trace FW-01 -> FW-02\ntrace FW-02 -> FW-01\n"),
        code: "E011",
        relaxed_levels: true,
    },
    m(
        "unknown criticality",
        "fig3.req",
        Edit::Replace("criticality: high", "criticality: urgent"),
        "E020",
    ),
    m(
        "trace without arrow",
        "fig3.req",
        Edit::Replace("trace SYS-020201 -> NOK-02", "trace SYS-020201 NOK-02"),
        "E021",
    ),
    m(
        "unknown top-level keyword",
        "fig3.req",
        Edit::Append("milestone M1 \"First\"\n"),
        "E022",
    ),
    m(
        "missing status",
        "fig3.req",
        Edit::Replace("    status: planned\n", ""),
        "E023",
    ),
    m(
        "property given twice",
        "fig3.req",
        Edit::Replace("criticality: high", "criticality: high\n    criticality: low"),
        "E024",
    ),
    m(
        "bad string escape",
        "fig3.req",
        Edit::Replace("\"Eclipse RCP\"", "\"Eclipse\\q RCP\""),
        "E025",
    ),
];
