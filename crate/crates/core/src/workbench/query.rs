//! `cellwork query`: one operation on named entities, one JSON document out.

use serde::Serialize;
use serde_json::{json, Value};

use crate::abgrp::{cokernel, kernel, pullback, pushout, AbGroup, Hom, Square};
use crate::cellular::{ext1, in_class, is_cellular_object, is_cellular_square, CellularError};
use crate::independence::{
    amalgamate, build_independent_sequence, check_merge, is_independent, uniqueness_probe,
    unify_amalgams, verify_independent_sequence, IndependenceNotion,
};
use crate::linalg::{smith_normal_form, IntMatrix};

use super::format::{canon_json, matrix_to_rows, InstanceBuilder};
use super::load::Instance;

/// Query names with their arguments.
pub const QUERIES: &[(&str, &str)] = &[
    ("snf", "<group|hom>"),
    ("canon", "<group>"),
    ("ext1", "<group> <group>"),
    ("coker", "<hom>"),
    ("kernel", "<hom>"),
    ("pushout", "<span>"),
    ("pullback", "<cospan> | <hom u> <hom v>"),
    ("in-m", "<hom>"),
    ("cellular-square", "<square>"),
    ("cellular-object", "<group>"),
    ("independent", "<square>"),
    ("amalgamate", "<span>"),
    ("unify", "<square> <square>"),
    ("probe", "<square> <square> [bound]"),
    ("indep-seq", "build <hom> <length> | verify <sequence>"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryError {
    pub kind: &'static str,
    pub message: String,
}

impl QueryError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        QueryError {
            kind,
            message: message.into(),
        }
    }
}

impl From<CellularError> for QueryError {
    fn from(e: CellularError) -> Self {
        QueryError::new("precondition", e.to_string())
    }
}

impl From<crate::abgrp::AbError> for QueryError {
    fn from(e: crate::abgrp::AbError) -> Self {
        QueryError::new("precondition", e.to_string())
    }
}

fn usage(query: &str) -> QueryError {
    let args = QUERIES
        .iter()
        .find(|(q, _)| *q == query)
        .map_or("", |(_, a)| a);
    QueryError::new("usage", format!("usage: {query} {args}"))
}

fn lookup<'a, T>(section: &str, map: &'a std::collections::BTreeMap<String, T>, name: &str) -> Result<&'a T, QueryError> {
    map.get(name)
        .ok_or_else(|| QueryError::new("unknown-entity", format!("no {section} named {name:?}")))
}

fn strs(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn group_json(g: &AbGroup) -> Value {
    let mut v = canon_json(g);
    v["describe"] = json!(g.describe());
    v
}

fn hom_summary(h: &Hom) -> Value {
    json!({
        "mono": h.is_mono(),
        "epi": h.is_epi(),
        "cokernel": group_json(&cokernel(h).0),
        "mat": matrix_to_rows(h.mat()),
    })
}

fn snf_json(m: &IntMatrix) -> Value {
    let r = smith_normal_form(m);
    json!({
        "shape": [m.rows(), m.cols()],
        "diagonal": strs(&r.diagonal()),
        "rank": r.rank(),
        "u": matrix_to_rows(&r.u),
        "v": matrix_to_rows(&r.v),
    })
}

/// Runs `args = [query, arg...]` against `inst`.
pub fn run_query(inst: &Instance, args: &[String]) -> Result<Value, QueryError> {
    let Some((q, rest)) = args.split_first() else {
        return Err(QueryError::new("usage", "missing query name"));
    };
    let rest: Vec<&str> = rest.iter().map(String::as_str).collect();
    let cs = &inst.structure;
    let notion = &inst.notion;
    let out = match (q.as_str(), rest.as_slice()) {
        ("snf", [name]) => {
            let (kind, m) = match (inst.groups.get(*name), inst.homs.get(*name)) {
                (Some(g), _) => ("group relations", g.rels().clone()),
                (None, Some(h)) => ("hom matrix", h.mat().clone()),
                _ => return Err(QueryError::new("unknown-entity", format!("no group or hom named {name:?}"))),
            };
            let mut v = snf_json(&m);
            v["of"] = json!(kind);
            v
        }
        ("canon", [g]) => {
            let g = lookup("group", &inst.groups, g)?;
            let c = g.canonical();
            let mut v = group_json(g);
            v["order"] = json!(g.order().map(|o| o.to_string()));
            v["to_canon"] = json!(matrix_to_rows(&c.to_canon));
            v["from_canon"] = json!(matrix_to_rows(&c.from_canon));
            v
        }
        ("ext1", [a, n]) => {
            let e = ext1(lookup("group", &inst.groups, a)?, lookup("group", &inst.groups, n)?);
            json!({ "ext1": group_json(&e) })
        }
        ("coker", [h]) => {
            let h = lookup("hom", &inst.homs, h)?;
            let (q, proj) = cokernel(h);
            let mut b = InstanceBuilder::new();
            b.hom("projection", &proj);
            json!({ "cokernel": group_json(&q), "instance": b.build() })
        }
        ("kernel", [h]) => {
            let h = lookup("hom", &inst.homs, h)?;
            let (k, inc) = kernel(h)?;
            let mut b = InstanceBuilder::new();
            b.hom("inclusion", &inc);
            json!({ "kernel": group_json(&k), "instance": b.build() })
        }
        ("pushout", [s]) => {
            let span = lookup("span", &inst.spans, s)?;
            let po = pushout(span);
            let mut b = InstanceBuilder::new();
            b.square("pushout", &po.square());
            json!({
                "pushout": group_json(&po.p),
                "isomorphic_to_b": po.p.isomorphic(span.f.dst()),
                "isomorphic_to_c": po.p.isomorphic(span.g.dst()),
                "instance": b.build(),
            })
        }
        ("pullback", [c]) => {
            let cospan = lookup("cospan", &inst.cospans, c)?;
            pullback_json(&cospan.u, &cospan.v)?
        }
        ("pullback", [u, v]) => pullback_json(lookup("hom", &inst.homs, u)?, lookup("hom", &inst.homs, v)?)?,
        ("in-m", [h]) => {
            let h = lookup("hom", &inst.homs, h)?;
            let q = cokernel(h).0;
            json!({
                "structure": cs.name(),
                "in_m": cs.in_m(h),
                "mono": h.is_mono(),
                "cokernel": group_json(&q),
                "cokernel_in_class": in_class(&q, &cs.class_spec),
            })
        }
        ("cellular-square", [s]) => {
            let sq = lookup("square", &inst.squares, s)?;
            let v = is_cellular_square(sq, cs)?;
            let mut b = InstanceBuilder::new();
            b.square(s, sq).hom("mediating", &v.mediating);
            b.structure(cs);
            json!({
                "structure": cs.name(),
                "is_cellular": v.is_cellular,
                "pushout": group_json(&v.pushout.p),
                "mediating": hom_summary(&v.mediating),
                "instance": b.build(),
            })
        }
        ("cellular-object", [g]) => {
            let g = lookup("group", &inst.groups, g)?;
            json!({ "structure": cs.name(), "group": group_json(g), "is_cellular_object": is_cellular_object(g, cs) })
        }
        ("independent", [s]) => {
            let sq = lookup("square", &inst.squares, s)?;
            json!({ "notion": notion.kind_name(), "structure": cs.name(), "independent": is_independent(notion, sq)? })
        }
        ("amalgamate", [s]) => {
            let span = lookup("span", &inst.spans, s)?;
            let sq = amalgamate(span, cs)?;
            let mut b = InstanceBuilder::new();
            b.square("amalgam", &sq).structure(cs);
            json!({ "corner": group_json(sq.d()), "instance": b.build() })
        }
        ("unify", [s1, s2]) => {
            let sq1 = lookup("square", &inst.squares, s1)?;
            let sq2 = lookup("square", &inst.squares, s2)?;
            let u = unify_amalgams(sq1, sq2, cs)?;
            let cellular = IndependenceNotion::CellularSquares(cs.clone());
            let violated = check_merge(&cellular, sq1, sq2, &u.d1, &u.d2)?;
            let mut b = InstanceBuilder::new();
            b.square(s1, sq1).square(s2, sq2);
            b.hom("d1", &u.d1);
            b.hom("d2", &u.d2);
            b.hom("t1", &u.t1);
            b.hom("t2", &u.t2);
            b.structure(cs);
            json!({
                "e": group_json(&u.e),
                "contracts_hold": violated.is_none(),
                "violated": violated,
                "instance": b.build(),
            })
        }
        ("probe", [s1, s2, more @ ..]) if more.len() <= 1 => {
            let sq1 = lookup("square", &inst.squares, s1)?;
            let sq2 = lookup("square", &inst.squares, s2)?;
            let bound = match more.first() {
                Some(b) => b
                    .parse()
                    .map_err(|_| QueryError::new("usage", format!("bound must be a count, got {b:?}")))?,
                None => 3,
            };
            serde_json::to_value(uniqueness_probe(notion, sq1, sq2, bound)?).expect("plain data")
        }
        ("indep-seq", ["build", h, len]) => {
            let f = lookup("hom", &inst.homs, h)?;
            let len: usize = len
                .parse()
                .map_err(|_| QueryError::new("usage", format!("length must be a count, got {len:?}")))?;
            let seq = build_independent_sequence(f, len, notion)?;
            let mut b = InstanceBuilder::new();
            b.sequence("seq", &seq).notion(notion);
            json!({
                "length": seq.length(),
                "objects": seq.objects.iter().map(group_json).collect::<Vec<_>>(),
                "instance": b.build(),
            })
        }
        ("indep-seq", ["verify", s]) => {
            let seq = lookup("sequence", &inst.sequences, s)?;
            serde_json::to_value(verify_independent_sequence(seq, notion)).expect("plain data")
        }
        (name, _) if QUERIES.iter().any(|(q, _)| *q == name) => return Err(usage(name)),
        (name, _) => {
            let known: Vec<&str> = QUERIES.iter().map(|(q, _)| *q).collect();
            return Err(QueryError::new(
                "unknown-query",
                format!("{name:?} is not one of {}", known.join(", ")),
            ));
        }
    };
    Ok(out)
}

fn pullback_json(u: &Hom, v: &Hom) -> Result<Value, QueryError> {
    let pb = pullback(u, v)?;
    let sq: Square = pb.square();
    let mut b = InstanceBuilder::new();
    b.square("pullback", &sq);
    Ok(json!({ "pullback": group_json(&pb.q), "instance": b.build() }))
}
