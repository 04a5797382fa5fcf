//! The `cellwork/1` instance file: named groups, homs and diagrams.
//!
//! Matrices are arrays of rows; entries are decimal strings so that big
//! integers round-trip exactly (plain JSON integers are accepted on input).
//! Group relation matrices have one row per generator.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abgrp::{AbGroup, Cospan, Hom, Span, Square};
use crate::cellular::{CellularStructure, ClassSpec};
use crate::independence::{IndependenceNotion, IndependentSequence};
use crate::linalg::IntMatrix;

pub const VERSION: &str = "cellwork/1";

/// An integer stored as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Num, E> {
                BigInt::from_str(v.trim())
                    .map(Num)
                    .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(v.into()))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(v.into()))
            }
        }
        d.deserialize_any(V)
    }
}

pub type Rows = Vec<Vec<Num>>;

pub fn matrix_to_rows(m: &IntMatrix) -> Rows {
    (0..m.rows())
        .map(|i| m.row(i).into_iter().map(Num).collect())
        .collect()
}

/// Rebuilds a matrix with the given shape; `Err` describes the mismatch.
pub fn rows_to_matrix(rows: &Rows, n_rows: usize, n_cols: Option<usize>) -> Result<IntMatrix, String> {
    if rows.len() != n_rows {
        return Err(format!("expected {n_rows} rows, found {}", rows.len()));
    }
    let width = n_cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    let mut data = Vec::with_capacity(n_rows * width);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(format!("row {i} has {} entries, expected {width}", r.len()));
        }
        data.extend(r.iter().map(|x| x.0.clone()));
    }
    IntMatrix::new(n_rows, width, data).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupData {
    pub gens: usize,
    #[serde(default)]
    pub rels: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomData {
    pub src: String,
    pub dst: String,
    pub mat: Rows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanData {
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CospanData {
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareData {
    pub f: String,
    pub g: String,
    pub u: String,
    pub v: String,
}

/// An independent sequence: `objects[i]` is `N_i`, `arrows[i - 1]` is
/// `f_i: M → N_i`, and `transitions["i,j"]` is `g_{i,j}: N_i → N_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceData {
    pub base: String,
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
    pub transitions: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupData),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StructureData {
    TorsionFree,
    Perp { targets: Vec<GroupRef> },
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupData>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: BTreeMap<String, HomData>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub spans: BTreeMap<String, SpanData>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cospans: BTreeMap<String, CospanData>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub squares: BTreeMap<String, SquareData>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sequences: BTreeMap<String, SequenceData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notion: Option<String>,
}

impl Default for InstanceFile {
    fn default() -> Self {
        InstanceFile {
            version: VERSION.to_string(),
            groups: BTreeMap::new(),
            homs: BTreeMap::new(),
            spans: BTreeMap::new(),
            cospans: BTreeMap::new(),
            squares: BTreeMap::new(),
            sequences: BTreeMap::new(),
            structure: None,
            notion: None,
        }
    }
}

impl InstanceFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// `{"free_rank": r, "torsion": [d1, ...]}` with the factors as strings.
pub fn canon_json(g: &AbGroup) -> serde_json::Value {
    let (r, t) = g.canon();
    serde_json::json!({
        "free_rank": r,
        "torsion": t.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn group_data(g: &AbGroup) -> GroupData {
    GroupData {
        gens: g.n_gens(),
        rels: matrix_to_rows(g.rels()),
    }
}

/// Builds an [`InstanceFile`] from in-memory values, naming groups and homs
/// as they are first seen. Equal presentations share one group entry.
#[derive(Clone, Debug, Default)]
pub struct InstanceBuilder {
    file: InstanceFile,
    groups: Vec<(AbGroup, String)>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(taken: impl Fn(&str) -> bool, hint: &str) -> String {
        if !taken(hint) {
            return hint.to_string();
        }
        (1..)
            .map(|k| format!("{hint}_{k}"))
            .find(|n| !taken(n))
            .expect("unbounded")
    }

    pub fn group(&mut self, hint: &str, g: &AbGroup) -> String {
        if let Some((_, name)) = self.groups.iter().find(|(h, _)| h == g) {
            return name.clone();
        }
        let name = Self::fresh(|n| self.file.groups.contains_key(n), hint);
        self.file.groups.insert(name.clone(), group_data(g));
        self.groups.push((g.clone(), name.clone()));
        name
    }

    pub fn hom(&mut self, hint: &str, h: &Hom) -> String {
        let src = self.group(&format!("{hint}_src"), h.src());
        let dst = self.group(&format!("{hint}_dst"), h.dst());
        let data = HomData {
            src,
            dst,
            mat: matrix_to_rows(h.mat()),
        };
        if let Some((name, _)) = self.file.homs.iter().find(|(_, d)| **d == data) {
            return name.clone();
        }
        let name = Self::fresh(|n| self.file.homs.contains_key(n), hint);
        self.file.homs.insert(name.clone(), data);
        name
    }

    pub fn span(&mut self, name: &str, s: &Span) -> &mut Self {
        let data = SpanData {
            f: self.hom(&format!("{name}_f"), &s.f),
            g: self.hom(&format!("{name}_g"), &s.g),
        };
        self.file.spans.insert(name.to_string(), data);
        self
    }

    pub fn cospan(&mut self, name: &str, c: &Cospan) -> &mut Self {
        let data = CospanData {
            u: self.hom(&format!("{name}_u"), &c.u),
            v: self.hom(&format!("{name}_v"), &c.v),
        };
        self.file.cospans.insert(name.to_string(), data);
        self
    }

    pub fn square(&mut self, name: &str, sq: &Square) -> &mut Self {
        let data = SquareData {
            f: self.hom(&format!("{name}_f"), &sq.f),
            g: self.hom(&format!("{name}_g"), &sq.g),
            u: self.hom(&format!("{name}_u"), &sq.u),
            v: self.hom(&format!("{name}_v"), &sq.v),
        };
        self.file.squares.insert(name.to_string(), data);
        self
    }

    pub fn sequence(&mut self, name: &str, seq: &IndependentSequence) -> &mut Self {
        let base = self.hom(&format!("{name}_base"), &seq.base);
        let objects = seq
            .objects
            .iter()
            .enumerate()
            .map(|(i, g)| self.group(&format!("{name}_N{i}"), g))
            .collect();
        let arrows = seq
            .arrows
            .iter()
            .enumerate()
            .map(|(i, h)| self.hom(&format!("{name}_f{}", i + 1), h))
            .collect();
        let transitions = seq
            .transitions
            .iter()
            .map(|(&(i, j), h)| (format!("{i},{j}"), self.hom(&format!("{name}_g{i}{j}"), h)))
            .collect();
        self.file.sequences.insert(
            name.to_string(),
            SequenceData {
                base,
                objects,
                arrows,
                transitions,
            },
        );
        self
    }

    pub fn structure(&mut self, cs: &CellularStructure) -> &mut Self {
        self.file.structure = Some(structure_data(cs));
        self
    }

    pub fn notion(&mut self, notion: &IndependenceNotion) -> &mut Self {
        self.file.notion = Some(notion.kind_name().to_string());
        self.file.structure = Some(structure_data(notion.structure()));
        self
    }

    pub fn build(&self) -> InstanceFile {
        self.file.clone()
    }
}

pub fn structure_data(cs: &CellularStructure) -> StructureData {
    match &cs.class_spec {
        ClassSpec::TorsionFree => StructureData::TorsionFree,
        ClassSpec::AllGroups => StructureData::All,
        ClassSpec::PerpOf(ts) => StructureData::Perp {
            targets: ts.iter().map(|g| GroupRef::Inline(group_data(g))).collect(),
        },
    }
}

/// A one-square instance under `cs`, the usual shape of a witness.
pub fn square_instance(name: &str, sq: &Square, cs: &CellularStructure) -> InstanceFile {
    let mut b = InstanceBuilder::new();
    b.square(name, sq).structure(cs);
    b.build()
}

/// Named homs under `cs`.
pub fn homs_instance(homs: &[(&str, &Hom)], cs: &CellularStructure) -> InstanceFile {
    let mut b = InstanceBuilder::new();
    for (name, h) in homs {
        b.hom(name, h);
    }
    b.structure(cs);
    b.build()
}
