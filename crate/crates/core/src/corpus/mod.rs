//! Group catalogs: the JSON entry format, the bundled catalog, and batch
//! scans that evaluate every check over a catalog.

mod csv_io;
mod scan;

use std::collections::HashMap;

use serde::Deserialize;
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::families::{direct_product_capped, make_family_capped, FamilyKind, FamilySpec};
use crate::group::Group;
use crate::perm::Permutation;

pub use csv_io::{parse_csv, write_csv, CsvRow, CSV_HEADER};
pub use scan::{
    scan, verify_theorems, CheckTally, ScanOptions, ScanReport, ScanRow, ScanSummary,
    TheoremSummary, Violation,
};

const BUNDLED: &str = include_str!("catalog.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Family(FamilySpec),
    /// Generators as 0-based image arrays.
    PermGens(Vec<Vec<usize>>),
    Cayley(Vec<Vec<usize>>),
    /// Direct product of earlier entries, by name.
    Product(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawEntry")]
pub struct CatalogEntry {
    pub name: String,
    pub recipe: Recipe,
    pub notes: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    kind: Option<FamilyKind>,
    params: Option<Vec<u64>>,
    perm_gens: Option<Vec<Vec<usize>>>,
    cayley: Option<Vec<Vec<usize>>>,
    product: Option<Vec<String>>,
    notes: Option<String>,
}

impl TryFrom<RawEntry> for CatalogEntry {
    type Error = String;

    fn try_from(raw: RawEntry) -> std::result::Result<Self, String> {
        let mut recipes = Vec::new();
        match (raw.kind, raw.params) {
            (Some(kind), params) => {
                recipes.push(Recipe::Family(FamilySpec::new(kind, &params.unwrap_or_default())))
            }
            (None, Some(_)) => return Err(format!("entry {:?}: \"params\" without \"kind\"", raw.name)),
            (None, None) => {}
        }
        if let Some(g) = raw.perm_gens {
            recipes.push(Recipe::PermGens(g));
        }
        if let Some(t) = raw.cayley {
            recipes.push(Recipe::Cayley(t));
        }
        if let Some(p) = raw.product {
            recipes.push(Recipe::Product(p));
        }
        if recipes.len() != 1 {
            return Err(format!(
                "entry {:?} needs exactly one of kind, perm_gens, cayley, product",
                raw.name
            ));
        }
        Ok(CatalogEntry {
            name: raw.name,
            recipe: recipes.pop().unwrap(),
            notes: raw.notes,
        })
    }
}

impl CatalogEntry {
    pub fn family(name: impl Into<String>, spec: FamilySpec) -> Self {
        CatalogEntry {
            name: name.into(),
            recipe: Recipe::Family(spec),
            notes: None,
        }
    }
}

/// Parses a JSON array of entries, in document order.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    // errors raised after an entry is read carry no position: use the entry start
    let parse_error = |e: serde_json::Error, line0: usize, col0: usize| Error::Parse {
        line: line0 + e.line().max(1) - 1,
        column: match e.line() {
            0 => col0,
            1 => col0 + e.column() - 1,
            _ => e.column(),
        },
        message: e.to_string(),
    };
    let raw: Vec<&RawValue> = serde_json::from_str(text).map_err(|e| parse_error(e, 1, 1))?;
    let mut entries = Vec::with_capacity(raw.len());
    for r in raw {
        let offset = r.get().as_ptr() as usize - text.as_ptr() as usize;
        let before = &text[..offset];
        let line0 = before.matches('\n').count() + 1;
        let col0 = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        entries.push(serde_json::from_str::<CatalogEntry>(r.get()).map_err(|e| parse_error(e, line0, col0))?);
    }
    let mut seen = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        if seen.insert(e.name.as_str(), i).is_some() {
            return Err(Error::DuplicateName(e.name.clone()));
        }
        if let Recipe::Product(parts) = &e.recipe {
            if parts.is_empty() {
                return Err(Error::InvalidArgs(format!("product {:?} has no factors", e.name)));
            }
            for p in parts {
                if seen.get(p.as_str()).is_none_or(|&j| j >= i) {
                    return Err(Error::UnknownEntry(p.clone()));
                }
            }
        }
    }
    Ok(entries)
}

pub fn bundled_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUNDLED).expect("bundled catalog is well formed")
}

/// A constructed entry, with its direct factors when it is a product.
#[derive(Debug, Clone)]
pub struct BuiltEntry {
    pub group: Group,
    pub factors: Option<Vec<Group>>,
}

/// Constructs every entry in order. A failed entry also fails any product
/// that uses it.
pub fn build_entries(entries: &[CatalogEntry], cap: usize) -> Vec<Result<BuiltEntry>> {
    let mut built: Vec<Result<BuiltEntry>> = Vec::with_capacity(entries.len());
    let mut by_name: HashMap<&str, usize> = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        let result = match &e.recipe {
            Recipe::Family(spec) => make_family_capped(spec, cap).map(|g| {
                let factors = (spec.kind == FamilyKind::Product).then(|| {
                    spec.params
                        .iter()
                        .map(|&n| make_family_capped(&FamilySpec::new(FamilyKind::Cyclic, &[n]), cap))
                        .collect::<Result<Vec<_>>>()
                });
                (g, factors)
            }),
            Recipe::PermGens(gens) => gens
                .iter()
                .map(|g| Permutation::from_usize(g))
                .collect::<Result<Vec<_>>>()
                .and_then(|ps| Group::from_permutation_generators_capped(&ps, e.name.clone(), cap))
                .map(|g| (g, None)),
            Recipe::Cayley(t) => {
                if t.len() > cap {
                    Err(Error::CapExceeded { order: t.len(), cap })
                } else {
                    Group::from_cayley_table(t, None, e.name.clone()).map(|g| (g, None))
                }
            }
            Recipe::Product(parts) => product_of(parts, &by_name, &built, cap).map(|(g, fs)| (g, Some(Ok(fs)))),
        };
        let entry = result.and_then(|(g, factors)| {
            Ok(BuiltEntry {
                group: g.with_name(e.name.clone()),
                factors: factors.transpose()?,
            })
        });
        by_name.insert(e.name.as_str(), i);
        built.push(entry);
    }
    built
}

fn product_of(
    parts: &[String],
    by_name: &HashMap<&str, usize>,
    built: &[Result<BuiltEntry>],
    cap: usize,
) -> Result<(Group, Vec<Group>)> {
    let mut factors = Vec::with_capacity(parts.len());
    for p in parts {
        let idx = by_name.get(p.as_str()).ok_or_else(|| Error::UnknownEntry(p.clone()))?;
        match &built[*idx] {
            Ok(b) => factors.push(b.group.clone()),
            Err(e) => return Err(Error::InvalidArgs(format!("factor {p:?} failed: {e}"))),
        }
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = direct_product_capped(&acc, f, cap)?;
    }
    Ok((acc, factors))
}
