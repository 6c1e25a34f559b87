//! Optional config file: user-supplied branching systems, finite groups,
//! and catalog entries, in a sectioned key = value format whose values use
//! the same text encodings as the engine.
//!
//! ```text
//! [system my-group]
//! states = A, B
//! w = q - 1 | q^2
//! v = 1 | q
//! row = q - 1 | 0
//! row = 1 | q^2 - 1
//!
//! [group my-finite-group]
//! order = 8
//! degrees = 1, 1, 1, 1, 2
//! commutator_order = 2
//! generators = (1 2 3 4), (1 3)
//!
//! [class MyG]
//! class = (q^3 - q)
//! commutator_quotient = 1
//! derived_subgroup = q^3 - q
//! guard = 2,1
//! ```

use std::collections::BTreeMap;

use motivic_core::catalog::{GroupClassEntry, Guard};
use motivic_core::commuting::BranchingSystem;
use motivic_core::frobenius::FiniteGroupData;
use motivic_core::oracle::Permutation;
use motivic_core::text::{parse_motclass, parse_poly};
use motivic_core::Error;

#[derive(Default)]
pub struct Config {
    pub systems: BTreeMap<String, BranchingSystem>,
    pub groups: BTreeMap<String, FiniteGroupData>,
    pub classes: BTreeMap<String, GroupClassEntry>,
}

pub fn parse_config(text: &str) -> Result<Config, Error> {
    let mut config = Config::default();
    let mut section: Option<(String, String)> = None;
    let mut body: Vec<(String, String)> = Vec::new();

    let flush = |section: &Option<(String, String)>,
                 body: &mut Vec<(String, String)>,
                 config: &mut Config|
     -> Result<(), Error> {
        if let Some((kind, name)) = section {
            match kind.as_str() {
                "system" => {
                    config
                        .systems
                        .insert(name.clone(), build_system(name, body)?);
                }
                "group" => {
                    config.groups.insert(name.clone(), build_group(name, body)?);
                }
                "class" => {
                    config
                        .classes
                        .insert(name.clone(), build_class(name, body)?);
                }
                other => {
                    return Err(Error::Parse(format!("unknown section kind '{other}'")));
                }
            }
        }
        body.clear();
        Ok(())
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let header = header.strip_suffix(']').ok_or_else(|| {
                Error::Parse(format!("line {}: unclosed section header", lineno + 1))
            })?;
            flush(&section, &mut body, &mut config)?;
            let mut parts = header.trim().splitn(2, char::is_whitespace);
            let kind = parts.next().unwrap_or_default().to_string();
            let name = parts
                .next()
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .ok_or_else(|| Error::Parse(format!("line {}: section needs a name", lineno + 1)))?
                .to_string();
            section = Some((kind, name));
        } else if let Some((key, value)) = line.split_once('=') {
            if section.is_none() {
                return Err(Error::Parse(format!(
                    "line {}: key outside of a section",
                    lineno + 1
                )));
            }
            body.push((key.trim().to_string(), value.trim().to_string()));
        } else {
            return Err(Error::Parse(format!(
                "line {}: expected key = value",
                lineno + 1
            )));
        }
    }
    flush(&section, &mut body, &mut config)?;
    Ok(config)
}

fn get<'a>(body: &'a [(String, String)], key: &str) -> Option<&'a str> {
    body.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn build_system(name: &str, body: &[(String, String)]) -> Result<BranchingSystem, Error> {
    let states: Vec<String> = get(body, "states")
        .ok_or_else(|| Error::Parse(format!("system {name}: missing states")))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let parse_row = |value: &str| -> Result<Vec<_>, Error> {
        value.split('|').map(|p| parse_poly(p.trim())).collect()
    };
    let weights = parse_row(
        get(body, "w").ok_or_else(|| Error::Parse(format!("system {name}: missing w")))?,
    )?;
    let closing = parse_row(
        get(body, "v").ok_or_else(|| Error::Parse(format!("system {name}: missing v")))?,
    )?;
    let matrix: Vec<Vec<_>> = body
        .iter()
        .filter(|(k, _)| k == "row")
        .map(|(_, v)| parse_row(v))
        .collect::<Result<_, _>>()?;
    let system = BranchingSystem {
        states,
        matrix,
        weights,
        closing,
    };
    system.validate()?;
    Ok(system)
}

fn build_group(name: &str, body: &[(String, String)]) -> Result<FiniteGroupData, Error> {
    let order: u64 = get(body, "order")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("group {name}: bad or missing order")))?;
    let degrees: Vec<u64> = get(body, "degrees")
        .ok_or_else(|| Error::Parse(format!("group {name}: missing degrees")))?
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("group {name}: bad degree")))
        })
        .collect::<Result<_, _>>()?;
    let commutator_order: u64 = get(body, "commutator_order")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("group {name}: bad or missing commutator_order")))?;
    let mut data = FiniteGroupData::new(name, order, degrees, commutator_order);
    if let Some(generators) = get(body, "generators") {
        let gens: Vec<Permutation> = split_permutations(generators)
            .into_iter()
            .map(|s| Permutation::parse_cycles(&s))
            .collect::<Result<_, _>>()?;
        data = data.with_generators(gens);
    }
    data.validate()?;
    Ok(data)
}

/// Splits `(1 2 3)(4 5), (1 3)` at top-level commas.
fn split_permutations(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth -= 1;
                current.push(c);
            }
            ',' if depth == 0 => {
                if !current.trim().is_empty() {
                    out.push(current.trim().to_string());
                }
                current.clear();
            }
            _ => current.push(c),
        }
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

fn build_class(name: &str, body: &[(String, String)]) -> Result<GroupClassEntry, Error> {
    let class = parse_motclass(
        get(body, "class").ok_or_else(|| Error::Parse(format!("class {name}: missing class")))?,
    )?;
    let commutator_quotient_class = parse_motclass(
        get(body, "commutator_quotient")
            .ok_or_else(|| Error::Parse(format!("class {name}: missing commutator_quotient")))?,
    )?;
    let derived_subgroup_class = parse_motclass(
        get(body, "derived_subgroup")
            .ok_or_else(|| Error::Parse(format!("class {name}: missing derived_subgroup")))?,
    )?;
    let specialization_guard = match get(body, "guard") {
        None | Some("none") => None,
        Some(v) => {
            let (m, r) = v.split_once(',').ok_or_else(|| {
                Error::Parse(format!("class {name}: guard must be modulus,residue"))
            })?;
            Some(Guard {
                modulus: m
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse("bad guard modulus".into()))?,
                residue: r
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse("bad guard residue".into()))?,
            })
        }
    };
    let dim = class.dimension()?;
    let entry = GroupClassEntry {
        name: name.to_string(),
        rank_param: None,
        class,
        dim,
        commutator_quotient_class,
        derived_subgroup_class,
        specialization_guard,
    };
    entry.validate()?;
    Ok(entry)
}
