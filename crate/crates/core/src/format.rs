//! Text formats for root data and Ext scenarios.
//!
//! Both are `key = value` files in TOML syntax, except that several
//! assignments may share a line when separated by `;`.

use crate::error::{Error, Result};
use crate::ext::{Pairing, Relation, Scenario};
use crate::grading::SigmaDescriptor;
use crate::root_datum::{DatumSource, DatumSpec, Lattice, RootDatum};
use crate::subset::Subset;
use serde::Deserialize;
use std::collections::BTreeMap;

/// Splits top-level `;` into newlines, leaving strings, brackets and comments alone.
fn split_statements(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut depth = 0i32;
    let mut quote: Option<char> = None;
    let mut comment = false;
    for c in text.chars() {
        if comment {
            if c == '\n' {
                comment = false;
            }
            out.push(c);
            continue;
        }
        match quote {
            Some(q) => {
                if c == q {
                    quote = None;
                }
                out.push(c);
            }
            None => match c {
                '"' | '\'' => {
                    quote = Some(c);
                    out.push(c);
                }
                '#' => {
                    comment = true;
                    out.push(c);
                }
                '[' | '{' => {
                    depth += 1;
                    out.push(c);
                }
                ']' | '}' => {
                    depth -= 1;
                    out.push(c);
                }
                ';' if depth <= 0 => out.push('\n'),
                '\n' => {
                    quote = None;
                    out.push(c);
                }
                _ => out.push(c),
            },
        }
    }
    out
}

fn parse_toml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    toml::from_str(&split_statements(text)).map_err(|e| Error::Parse(e.message().to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    name: Option<String>,
    rank: Option<usize>,
    simple_roots: Option<Vec<Vec<i64>>>,
    simple_coroots: Option<Vec<Vec<i64>>>,
    multiplicity: Option<Vec<u32>>,
    labels: Option<Vec<String>>,
    split: Option<bool>,
    #[serde(rename = "type")]
    cartan_type: Option<String>,
    lattice: Option<String>,
}

pub fn parse_datum_spec(text: &str) -> Result<DatumSpec> {
    let raw: RawDatum = parse_toml(text)?;
    let source = match (raw.cartan_type, raw.simple_roots, raw.simple_coroots) {
        (Some(t), None, None) => {
            if raw.rank.is_some() {
                return Err(Error::Parse("rank cannot be combined with a preset type".into()));
            }
            let lattice: Lattice = raw.lattice.as_deref().unwrap_or("simply_connected").parse()?;
            DatumSource::Preset { cartan_type: t.parse()?, lattice }
        }
        (None, Some(simple_roots), Some(simple_coroots)) => {
            if raw.lattice.is_some() {
                return Err(Error::Parse("lattice requires a preset type".into()));
            }
            let rank = raw
                .rank
                .or_else(|| simple_roots.first().map(Vec::len))
                .ok_or_else(|| Error::Parse("rank missing".into()))?;
            DatumSource::Explicit { rank, simple_roots, simple_coroots }
        }
        (Some(_), _, _) => return Err(Error::Parse("type cannot be combined with explicit roots".into())),
        _ => return Err(Error::Parse("need either type or both simple_roots and simple_coroots".into())),
    };
    Ok(DatumSpec { name: raw.name, source, multiplicity: raw.multiplicity, labels: raw.labels, split: raw.split })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSubset {
    Text(String),
    List(Vec<String>),
}

impl RawSubset {
    fn resolve(&self, datum: &RootDatum) -> Result<Subset> {
        match self {
            RawSubset::Text(t) => datum.parse_subset(t),
            RawSubset::List(v) => {
                v.iter().try_fold(Subset::EMPTY, |s, l| Ok(s.union(Subset::singleton(datum.label_index(l)?))))
            }
        }
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSigma {
    name: Option<String>,
    #[serde(default)]
    supersingular: bool,
    #[serde(default)]
    supercuspidal: bool,
    #[serde(default)]
    right_cuspidal: bool,
    #[serde(default)]
    left_cuspidal: bool,
}

impl RawSigma {
    fn build(&self, default_name: &str) -> SigmaDescriptor {
        SigmaDescriptor::new(
            self.name.as_deref().unwrap_or(default_name),
            self.supersingular,
            self.right_cuspidal || self.supercuspidal,
            self.left_cuspidal || self.supercuspidal,
        )
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(rename = "I")]
    i: RawSubset,
    #[serde(rename = "J")]
    j: RawSubset,
    #[serde(default = "one")]
    e: u32,
    #[serde(default)]
    p_is_2: bool,
    #[serde(default)]
    sigma: RawSigma,
    #[serde(default)]
    sigma_prime: RawSigma,
    #[serde(default)]
    rel_twist: BTreeMap<String, Relation>,
    #[serde(default)]
    rel_id: Relation,
    #[serde(default)]
    pairings: BTreeMap<String, Pairing>,
    #[serde(default)]
    conjecture_assumed: bool,
    emerton_conjecture_assumed: Option<bool>,
}

fn one() -> u32 {
    1
}

fn keyed<V: Copy>(datum: &RootDatum, m: &BTreeMap<String, V>) -> Result<BTreeMap<usize, V>> {
    m.iter().map(|(k, &v)| Ok((datum.label_index(k)?, v))).collect()
}

pub fn parse_scenario(text: &str, datum: &RootDatum) -> Result<Scenario> {
    let raw: RawScenario = parse_toml(text)?;
    Ok(Scenario {
        i: raw.i.resolve(datum)?,
        j: raw.j.resolve(datum)?,
        e: raw.e,
        p_is_2: raw.p_is_2,
        sigma: raw.sigma.build("sigma"),
        sigma_prime: raw.sigma_prime.build("sigma'"),
        pairings: keyed(datum, &raw.pairings)?,
        rel_twist: keyed(datum, &raw.rel_twist)?,
        rel_id: raw.rel_id,
        conjecture_assumed: raw.conjecture_assumed,
        emerton_conjecture_assumed: raw.emerton_conjecture_assumed,
    })
}
