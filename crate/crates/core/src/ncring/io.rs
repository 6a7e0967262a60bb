//! The JSON formula file format.
//!
//! ```json
//! {
//!   "group": "C4",
//!   "vars": [
//!     {"id": 0, "subgroup": ["e","s2"]}
//!   ],
//!   "terms": [
//!     {"c": "1", "w": [["e",0],["s",0]]}
//!   ]
//! }
//! ```
//!
//! Terms are written in canonical order, one per line, so writing a file
//! that was just read reproduces it byte for byte.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Deserialize;

use crate::group::{build_group, GroupSpec};
use crate::Int;

use super::{NCPoly, RingContext, RingError, Sym, Word};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileVar {
    id: usize,
    subgroup: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    c: String,
    w: Vec<(String, usize)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaFile {
    group: String,
    vars: Vec<FileVar>,
    terms: Vec<FileTerm>,
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Serializes a polynomial. The group must come from the catalog.
pub fn to_json(p: &NCPoly) -> Result<String, RingError> {
    let ctx = p.ctx();
    let grp = ctx.group();
    let spec = grp
        .spec()
        .ok_or_else(|| RingError::Format(format!("group {} has no catalog spec", grp.label())))?;
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"group\": {},", json_str(&spec.to_string())).unwrap();
    writeln!(out, "  \"vars\": [").unwrap();
    for v in 0..ctx.num_vars() {
        let names: Vec<String> = ctx
            .var_subgroup(v)
            .members()
            .iter()
            .map(|&m| json_str(grp.name(m)))
            .collect();
        let sep = if v + 1 < ctx.num_vars() { "," } else { "" };
        writeln!(
            out,
            "    {{\"id\": {v}, \"subgroup\": [{}]}}{sep}",
            names.join(",")
        )
        .unwrap();
    }
    writeln!(out, "  ],").unwrap();
    writeln!(out, "  \"terms\": [").unwrap();
    for (i, (w, c)) in p.terms().iter().enumerate() {
        let syms: Vec<String> = w
            .syms()
            .iter()
            .map(|s| format!("[{},{}]", json_str(grp.name(s.elem())), s.var()))
            .collect();
        let sep = if i + 1 < p.len() { "," } else { "" };
        writeln!(
            out,
            "    {{\"c\": \"{c}\", \"w\": [{}]}}{sep}",
            syms.join(",")
        )
        .unwrap();
    }
    writeln!(out, "  ]").unwrap();
    writeln!(out, "}}").unwrap();
    Ok(out)
}

pub fn from_json(text: &str) -> Result<NCPoly, RingError> {
    let file: FormulaFile =
        serde_json::from_str(text).map_err(|e| RingError::Format(e.to_string()))?;
    let spec: GroupSpec = file
        .group
        .parse()
        .map_err(|e: crate::group::GroupError| RingError::Format(e.to_string()))?;
    let grp = Arc::new(build_group(&spec).map_err(|e| RingError::Format(e.to_string()))?);
    let lookup = |name: &str| {
        grp.element_by_name(name)
            .ok_or_else(|| RingError::UnknownElement(name.to_string()))
    };
    let mut subgroups = Vec::with_capacity(file.vars.len());
    for (i, v) in file.vars.iter().enumerate() {
        if v.id != i {
            return Err(RingError::Format(format!(
                "variable ids must be 0..n in order, found {}",
                v.id
            )));
        }
        let members = v
            .subgroup
            .iter()
            .map(|n| lookup(n))
            .collect::<Result<Vec<_>, _>>()?;
        let h = grp
            .subgroup_from_members(&members)
            .map_err(|e| RingError::Format(e.to_string()))?;
        subgroups.push(h);
    }
    let ctx = RingContext::new(grp.clone(), subgroups)?;
    let mut terms = Vec::with_capacity(file.terms.len());
    for t in &file.terms {
        let c: Int =
            t.c.parse()
                .map_err(|e: crate::int::ParseIntError| RingError::Format(e.to_string()))?;
        if c.is_zero() {
            return Err(RingError::Format("zero coefficient".into()));
        }
        let mut w = Word::empty();
        for (name, var) in &t.w {
            if *var >= ctx.num_vars() {
                return Err(RingError::UnknownVariable(*var));
            }
            w.push(Sym::new(lookup(name)?, *var));
        }
        terms.push((c, w));
    }
    NCPoly::from_terms(&ctx, terms)
}
