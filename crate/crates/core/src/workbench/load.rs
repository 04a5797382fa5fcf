//! Resolving an [`InstanceFile`] into checked values.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abgrp::{AbGroup, Cospan, Hom, Span, Square};
use crate::builtin::BUILTIN_JSON;
use crate::cellular::CellularStructure;
use crate::independence::{IndependenceNotion, IndependentSequence};

use super::format::{rows_to_matrix, GroupData, GroupRef, InstanceFile, StructureData, VERSION};

/// The file name that loads the builtin instance.
pub const BUILTIN_ALIAS: &str = "@builtin";

/// One violated invariant. `entity` is `<section>.<name>` (or `file`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub entity: String,
    pub invariant: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl Diagnostic {
    pub fn new(entity: impl Into<String>, invariant: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            entity: entity.into(),
            invariant: invariant.to_string(),
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}: {}", self.entity, self.invariant, self.message)?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " (line {l}, column {c})")?;
        }
        Ok(())
    }
}

/// A validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub groups: BTreeMap<String, AbGroup>,
    pub homs: BTreeMap<String, Hom>,
    pub spans: BTreeMap<String, Span>,
    pub cospans: BTreeMap<String, Cospan>,
    pub squares: BTreeMap<String, Square>,
    pub sequences: BTreeMap<String, IndependentSequence>,
    /// Torsion-free when the file has none.
    pub structure: CellularStructure,
    /// Cellular squares when the file has none.
    pub notion: IndependenceNotion,
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, Diagnostic> {
    serde_json::from_str(text).map_err(|e| Diagnostic {
        entity: "file".into(),
        invariant: "parse".into(),
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    })
}

/// Reads and parses `path`; [`BUILTIN_ALIAS`] gives the builtin instance.
pub fn read_instance(path: &str) -> Result<InstanceFile, Diagnostic> {
    if path == BUILTIN_ALIAS {
        return parse_instance(BUILTIN_JSON);
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::new("file", "readable", format!("{path}: {e}")))?;
    parse_instance(&text)
}

/// Reads, parses and validates.
pub fn load(path: &str) -> Result<Instance, Vec<Diagnostic>> {
    let file = read_instance(path).map_err(|d| vec![d])?;
    Instance::from_file(file)
}

fn build_group(data: &GroupData) -> Result<AbGroup, String> {
    // with no generators there are no rows to carry the relation count
    let rels = if data.gens == 0 && data.rels.is_empty() {
        crate::linalg::IntMatrix::zeros(0, 0)
    } else {
        rows_to_matrix(&data.rels, data.gens, None)?
    };
    AbGroup::new(data.gens, rels).map_err(|e| e.to_string())
}

impl Instance {
    /// Resolves every entity, collecting all diagnostics.
    pub fn from_file(file: InstanceFile) -> Result<Instance, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        if file.version != VERSION {
            diags.push(Diagnostic::new(
                "file",
                "version",
                format!("expected {VERSION:?}, found {:?}", file.version),
            ));
        }

        let mut groups = BTreeMap::new();
        for (name, data) in &file.groups {
            match build_group(data) {
                Ok(g) => {
                    groups.insert(name.clone(), g);
                }
                Err(e) => diags.push(Diagnostic::new(format!("groups.{name}"), "presentation", e)),
            }
        }

        let mut homs = BTreeMap::new();
        for (name, data) in &file.homs {
            let entity = format!("homs.{name}");
            let mut endpoint = |which: &str, g: &str| {
                let r = groups.get(g).cloned();
                if r.is_none() && file.groups.contains_key(g) {
                    // already reported as a bad presentation
                } else if r.is_none() {
                    diags.push(Diagnostic::new(
                        entity.clone(),
                        "reference",
                        format!("{which} group {g:?} is not defined"),
                    ));
                }
                r
            };
            let (Some(src), Some(dst)) = (endpoint("source", &data.src), endpoint("target", &data.dst)) else {
                continue;
            };
            let mat = match rows_to_matrix(&data.mat, dst.n_gens(), Some(src.n_gens())) {
                Ok(m) => m,
                Err(e) => {
                    diags.push(Diagnostic::new(
                        entity,
                        "shape",
                        format!("matrix must be {}x{}: {e}", dst.n_gens(), src.n_gens()),
                    ));
                    continue;
                }
            };
            match Hom::new(src, dst, mat) {
                Ok(h) => {
                    homs.insert(name.clone(), h);
                }
                Err(e) => diags.push(Diagnostic::new(
                    entity,
                    "well-defined",
                    format!("{} → {}: {e}", data.src, data.dst),
                )),
            }
        }

        let hom_ref = |entity: &str, name: &str, diags: &mut Vec<Diagnostic>| -> Option<Hom> {
            match homs.get(name) {
                Some(h) => Some(h.clone()),
                None => {
                    if !file.homs.contains_key(name) {
                        diags.push(Diagnostic::new(entity, "reference", format!("hom {name:?} is not defined")));
                    }
                    None
                }
            }
        };

        let mut spans = BTreeMap::new();
        for (name, data) in &file.spans {
            let entity = format!("spans.{name}");
            let (Some(f), Some(g)) = (hom_ref(&entity, &data.f, &mut diags), hom_ref(&entity, &data.g, &mut diags)) else {
                continue;
            };
            match Span::new(f, g) {
                Ok(s) => {
                    spans.insert(name.clone(), s);
                }
                Err(_) => diags.push(Diagnostic::new(entity, "endpoints", "f and g must share a source")),
            }
        }

        let mut cospans = BTreeMap::new();
        for (name, data) in &file.cospans {
            let entity = format!("cospans.{name}");
            let (Some(u), Some(v)) = (hom_ref(&entity, &data.u, &mut diags), hom_ref(&entity, &data.v, &mut diags)) else {
                continue;
            };
            match Cospan::new(u, v) {
                Ok(c) => {
                    cospans.insert(name.clone(), c);
                }
                Err(_) => diags.push(Diagnostic::new(entity, "endpoints", "u and v must share a target")),
            }
        }

        let mut squares = BTreeMap::new();
        for (name, data) in &file.squares {
            let entity = format!("squares.{name}");
            let edges = [&data.f, &data.g, &data.u, &data.v].map(|n| hom_ref(&entity, n, &mut diags));
            let [Some(f), Some(g), Some(u), Some(v)] = edges else {
                continue;
            };
            let sq = match Square::new_unchecked(f, g, u, v) {
                Ok(sq) => sq,
                Err(_) => {
                    diags.push(Diagnostic::new(
                        entity,
                        "endpoints",
                        "expected f: A→B, g: A→C, u: C→D, v: B→D",
                    ));
                    continue;
                }
            };
            match sq.commutes() {
                Ok(true) => {
                    squares.insert(name.clone(), sq);
                }
                _ => diags.push(Diagnostic::new(
                    entity,
                    "commutes",
                    format!("u∘g ≠ v∘f ({} ∘ {} vs {} ∘ {})", data.u, data.g, data.v, data.f),
                )),
            }
        }

        let mut sequences = BTreeMap::new();
        for (name, data) in &file.sequences {
            let entity = format!("sequences.{name}");
            let before = diags.len();
            let base = hom_ref(&entity, &data.base, &mut diags);
            let mut objects = Vec::new();
            for g in &data.objects {
                match groups.get(g) {
                    Some(x) => objects.push(x.clone()),
                    None => diags.push(Diagnostic::new(&entity, "reference", format!("group {g:?} is not defined"))),
                }
            }
            let arrows: Vec<Option<Hom>> = data.arrows.iter().map(|h| hom_ref(&entity, h, &mut diags)).collect();
            let mut transitions = BTreeMap::new();
            for (key, h) in &data.transitions {
                let parsed = key
                    .split_once(',')
                    .and_then(|(i, j)| Some((i.trim().parse::<usize>().ok()?, j.trim().parse::<usize>().ok()?)));
                match parsed {
                    Some(ij) => {
                        if let Some(h) = hom_ref(&entity, h, &mut diags) {
                            transitions.insert(ij, h);
                        }
                    }
                    None => diags.push(Diagnostic::new(
                        &entity,
                        "transition-key",
                        format!("{key:?} is not of the form \"i,j\""),
                    )),
                }
            }
            if diags.len() == before {
                sequences.insert(
                    name.clone(),
                    IndependentSequence {
                        base: base.expect("resolved"),
                        objects,
                        arrows: arrows.into_iter().map(|a| a.expect("resolved")).collect(),
                        transitions,
                    },
                );
            }
        }

        let structure = match &file.structure {
            None | Some(StructureData::TorsionFree) => CellularStructure::torsion_free(),
            Some(StructureData::All) => CellularStructure::all_groups(),
            Some(StructureData::Perp { targets }) => {
                let mut ts = Vec::new();
                for (k, t) in targets.iter().enumerate() {
                    match t {
                        GroupRef::Name(n) => match groups.get(n) {
                            Some(g) => ts.push(g.clone()),
                            None => diags.push(Diagnostic::new(
                                "structure",
                                "reference",
                                format!("target group {n:?} is not defined"),
                            )),
                        },
                        GroupRef::Inline(data) => match build_group(data) {
                            Ok(g) => ts.push(g),
                            Err(e) => diags.push(Diagnostic::new("structure", "presentation", format!("target {k}: {e}"))),
                        },
                    }
                }
                CellularStructure::perp_of(ts)
            }
        };
        let notion_name = file.notion.as_deref().unwrap_or("cellular");
        let notion = match IndependenceNotion::from_name(notion_name, structure.clone()) {
            Some(n) => n,
            None => {
                diags.push(Diagnostic::new(
                    "notion",
                    "known-notion",
                    format!("{notion_name:?} is not one of cellular, indiscrete, pullback"),
                ));
                IndependenceNotion::CellularSquares(structure.clone())
            }
        };

        if !diags.is_empty() {
            return Err(diags);
        }
        Ok(Instance {
            file,
            groups,
            homs,
            spans,
            cospans,
            squares,
            sequences,
            structure,
            notion,
        })
    }

    pub fn group(&self, name: &str) -> Option<&AbGroup> {
        self.groups.get(name)
    }

    /// Replaces the structure and/or the notion. `structure` is
    /// `torsion-free`, `all` or `perp:<group>[,<group>...]` with groups
    /// named in the file.
    pub fn with_overrides(mut self, structure: Option<&str>, notion: Option<&str>) -> Result<Instance, Diagnostic> {
        if let Some(s) = structure {
            self.structure = match s {
                "torsion-free" => CellularStructure::torsion_free(),
                "all" => CellularStructure::all_groups(),
                _ => {
                    let names = s.strip_prefix("perp:").ok_or_else(|| {
                        Diagnostic::new("structure", "known-structure", format!("{s:?}: expected torsion-free, all or perp:<groups>"))
                    })?;
                    let mut ts = Vec::new();
                    for n in names.split(',') {
                        let g = self.groups.get(n.trim()).ok_or_else(|| {
                            Diagnostic::new("structure", "reference", format!("target group {n:?} is not defined"))
                        })?;
                        ts.push(g.clone());
                    }
                    CellularStructure::perp_of(ts)
                }
            };
        }
        let kind = notion.unwrap_or(self.notion.kind_name());
        self.notion = IndependenceNotion::from_name(kind, self.structure.clone()).ok_or_else(|| {
            Diagnostic::new("notion", "known-notion", format!("{kind:?} is not one of cellular, indiscrete, pullback"))
        })?;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diags(text: &str) -> Vec<Diagnostic> {
        let file = parse_instance(text).map_err(|d| vec![d]);
        match file.and_then(Instance::from_file) {
            Ok(_) => Vec::new(),
            Err(d) => d,
        }
    }

    #[test]
    fn builtin_is_valid() {
        let inst = load(BUILTIN_ALIAS).unwrap();
        assert!(inst.squares.contains_key("reg_pullback"));
        assert_eq!(inst.notion.kind_name(), "cellular");
    }

    #[test]
    fn ill_defined_hom_is_rejected() {
        let d = diags(
            r#"{"version":"cellwork/1",
                "groups":{"Z2":{"gens":1,"rels":[["2"]]},"Z3":{"gens":1,"rels":[[3]]}},
                "homs":{"bad":{"src":"Z2","dst":"Z3","mat":[["1"]]}}}"#,
        );
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].entity, "homs.bad");
        assert_eq!(d[0].invariant, "well-defined");
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let d = diags(
            r#"{"version":"cellwork/1",
                "groups":{"Z":{"gens":1,"rels":[[]]}},
                "homs":{"one":{"src":"Z","dst":"Z","mat":[["1"]]},"two":{"src":"Z","dst":"Z","mat":[["2"]]}},
                "squares":{"sq":{"f":"one","g":"one","u":"one","v":"two"}}}"#,
        );
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].entity, "squares.sq");
        assert_eq!(d[0].invariant, "commutes");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let d = diags("{\n  \"version\": \"cellwork/1\",\n  \"groups\": {,}\n}");
        assert_eq!(d[0].invariant, "parse");
        assert_eq!(d[0].line, Some(3));
        assert!(d[0].column.is_some());
    }

    #[test]
    fn unresolved_references_and_shapes() {
        let d = diags(
            r#"{"version":"cellwork/1",
                "groups":{"Z":{"gens":1,"rels":[[]]}},
                "homs":{"h":{"src":"Z","dst":"Q","mat":[["1"]]},"k":{"src":"Z","dst":"Z","mat":[["1","2"]]}},
                "spans":{"s":{"f":"missing","g":"k"}},
                "notion":"stable"}"#,
        );
        let got: Vec<(&str, &str)> = d.iter().map(|x| (x.entity.as_str(), x.invariant.as_str())).collect();
        assert!(got.contains(&("homs.h", "reference")));
        assert!(got.contains(&("homs.k", "shape")));
        assert!(got.contains(&("spans.s", "reference")));
        assert!(got.contains(&("notion", "known-notion")));
    }

    #[test]
    fn overrides() {
        let inst = load(BUILTIN_ALIAS).unwrap();
        let o = inst.clone().with_overrides(Some("perp:Z2"), Some("indiscrete")).unwrap();
        assert_eq!(o.structure.name(), "perp(Z/2)");
        assert_eq!(o.notion.kind_name(), "indiscrete");
        assert_eq!(o.notion.structure(), &o.structure);
        assert!(inst.clone().with_overrides(Some("perp:Q"), None).is_err());
        assert!(inst.with_overrides(None, Some("stable")).is_err());
    }

    #[test]
    fn wrong_version() {
        let d = diags(r#"{"version":"cellwork/2"}"#);
        assert_eq!(d[0].invariant, "version");
    }
}
