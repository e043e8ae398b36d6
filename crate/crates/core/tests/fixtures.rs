mod common;

use std::fs;

use reqforge_core::dsl::parse;
use reqforge_core::{stats, validate, Code, Model, Severity, ValidationOptions};

#[test]
fn every_fixture_parses_and_validates_without_errors() {
    let mut multi = Model::default();
    for path in common::corpus() {
        let text = fs::read_to_string(&path).unwrap();
        let result = parse(&text, &path.display().to_string());
        assert!(result.is_ok(), "{}: {:?}", path.display(), result.diagnostics);
        let model = result.model.unwrap();
        if path.parent().unwrap().ends_with("multi") {
            multi.merge(model);
            continue;
        }
        let diags = validate(&model, ValidationOptions::default());
        assert!(
            diags.iter().all(|d| d.severity == Severity::Warning),
            "{}: {diags:?}",
            path.display()
        );
    }
    assert_eq!(multi.name, "Split model");
    assert_eq!(validate(&multi, ValidationOptions::default()), []);
}

#[test]
fn empty_groups_only_warn() {
    let model = common::load("empty_groups.req");
    let codes: Vec<_> = validate(&model, ValidationOptions::default())
        .iter()
        .map(|d| d.code)
        .collect();
    assert_eq!(codes, [Code::EmptyGroup, Code::EmptyGroup]);
}

#[test]
fn fig3_fixture_contents() {
    let m = common::load("fig3.req");
    assert_eq!(m.name, "MegaM@Rt2");
    let modelio = m.container("MODELIO").unwrap();
    assert_eq!(modelio.name, "Modelio (SOFT)");
    assert_eq!(modelio.requirements.len(), 1);
    assert_eq!(modelio.requirements[0].id.as_str(), "MODELIO-030");
    let index = m.index();
    assert!(index.requirement("SYS-020201").is_some());
    assert!(index.requirement("NOK-02").is_some());
    let (c, _) = index.component("MODELIO-SOFT").unwrap();
    assert_eq!(c.name, "Modelio (SOFT)");
    let s = stats(&m);
    assert_eq!(s.requirement_count, 3);
    assert_eq!(s.architecture_element_count, 5);
}

#[test]
fn toolchain_nests_components() {
    let m = common::load("toolchain.req");
    let s = stats(&m);
    assert_eq!(s.requirement_count, 13);
    // 2 packages, 6 components, 3 interfaces, 3 nodes
    assert_eq!(s.architecture_element_count, 14);
    let (editor, _) = m.index().component("EDITOR-TOOL").unwrap();
    let parts: Vec<_> = editor.sub_components.iter().map(|i| i.as_str()).collect();
    assert_eq!(parts, ["EDITOR-CORE", "DOC-GEN"]);
}
