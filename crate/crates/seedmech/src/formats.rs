//! JSON instance files.
//!
//! Three shapes are accepted, told apart by the `"model"` key:
//! `"tabular"` (the default when the key is absent), `"or_single_step"`
//! and `"disk_coverage"`. Rationals are `"num/den"` strings; OR weights and
//! probabilities may also be linear in `eps` when `"epsilon"` is given.
//! Errors carry the JSON line and column for syntax and type problems, and
//! a field path such as `edges[2].p` for value problems.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use seedmech_core::coverage::{Cell, CoverageInstance};
use seedmech_core::instance::Instance;
use seedmech_core::or_model::{OrModel, SeedCredit, SpreadGraph};
use seedmech_core::profile::{AllocationProfile, ElementSet, ProfileDomain};
use seedmech_core::rational::{parse_eps_expr, parse_rational};
use seedmech_core::tabular::TabularModel;
use seedmech_core::Rational;

use crate::error::{CliError, CliResult};

/// A loaded instance and the profile domain it is defined on.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub domain: ProfileDomain,
}

#[derive(Deserialize)]
struct ModelTag {
    #[serde(default)]
    model: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TabularFile {
    #[serde(default)]
    #[allow(dead_code)]
    model: Option<String>,
    players: usize,
    ground: Vec<String>,
    #[serde(default)]
    domain: Option<String>,
    entries: Vec<TabularEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TabularEntry {
    profile: Vec<Vec<String>>,
    utilities: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrFile {
    #[allow(dead_code)]
    model: String,
    players: usize,
    #[serde(default)]
    epsilon: Option<String>,
    nodes: Vec<OrNodeRow>,
    edges: Vec<OrEdgeRow>,
    /// Seed candidates; every node when absent.
    #[serde(default)]
    candidates: Option<Vec<String>>,
    #[serde(default)]
    seed_credit: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrNodeRow {
    id: String,
    weight: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrEdgeRow {
    from: String,
    to: String,
    p: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverageFile {
    #[allow(dead_code)]
    model: String,
    players: usize,
    #[serde(default)]
    player_weights: Option<Vec<String>>,
    disks: Vec<String>,
    cells: Vec<CellRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellRow {
    value: String,
    disks: Vec<String>,
}

fn typed<'de, T: Deserialize<'de>>(source: &str, text: &'de str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let at = if path.is_empty() || path == "." { String::new() } else { format!(" at field {path}") };
        CliError::instance(source, format!("line {} column {}{at}: {inner}", inner.line(), inner.column()))
    })
}

fn rational(source: &str, field: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| CliError::instance(source, format!("field {field}: {e}")))
}

fn expr(source: &str, field: &str, s: &str, eps: Option<&Rational>) -> CliResult<Rational> {
    match eps {
        Some(eps) => parse_eps_expr(s, eps).map_err(|e| CliError::instance(source, format!("field {field}: {e}"))),
        None => rational(source, field, s),
    }
}

fn field_err(source: &str, field: String, err: impl std::fmt::Display) -> CliError {
    CliError::instance(source, format!("field {field}: {err}"))
}

fn index_of(source: &str, field: String, ids: &BTreeMap<&str, usize>, id: &str) -> CliResult<usize> {
    ids.get(id).copied().ok_or_else(|| field_err(source, field, format!("unknown id {id:?}")))
}

pub fn parse_domain(s: &str) -> Option<ProfileDomain> {
    match s {
        "all" => Some(ProfileDomain::All),
        "disjoint" => Some(ProfileDomain::Disjoint),
        _ => None,
    }
}

pub fn parse_seed_credit(s: &str) -> Option<SeedCredit> {
    match s {
        "owner" => Some(SeedCredit::Owner),
        "edges-only" | "edges_only" => Some(SeedCredit::EdgesOnly),
        _ => None,
    }
}

fn load_tabular(source: &str, text: &str) -> CliResult<LoadedInstance> {
    let file: TabularFile = typed(source, text)?;
    let domain = match file.domain.as_deref() {
        None => ProfileDomain::All,
        Some(d) => parse_domain(d).ok_or_else(|| field_err(source, "domain".into(), format!("expected \"all\" or \"disjoint\", got {d:?}")))?,
    };
    let ids: BTreeMap<&str, usize> = file.ground.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if ids.len() != file.ground.len() {
        return Err(field_err(source, "ground".into(), "duplicate element id"));
    }
    let mut model = TabularModel::new(file.players, file.ground.clone());
    for (k, entry) in file.entries.iter().enumerate() {
        if entry.profile.len() != file.players {
            return Err(field_err(source, format!("entries[{k}].profile"), format!("expected {} sets", file.players)));
        }
        let mut sets = Vec::with_capacity(file.players);
        for (i, s) in entry.profile.iter().enumerate() {
            let mut set = ElementSet::new();
            for (j, id) in s.iter().enumerate() {
                set.insert(index_of(source, format!("entries[{k}].profile[{i}][{j}]"), &ids, id)?);
            }
            sets.push(set);
        }
        let profile = AllocationProfile::new(sets, file.ground.len()).map_err(|e| field_err(source, format!("entries[{k}].profile"), e))?;
        let utilities = entry
            .utilities
            .iter()
            .enumerate()
            .map(|(i, u)| rational(source, &format!("entries[{k}].utilities[{i}]"), u))
            .collect::<CliResult<Vec<_>>>()?;
        model.insert(profile, utilities).map_err(|e| field_err(source, format!("entries[{k}]"), e))?;
    }
    model.check_complete(domain).map_err(|e| field_err(source, "entries".into(), e))?;
    Ok(LoadedInstance { instance: model.into(), domain })
}

fn load_or(source: &str, text: &str) -> CliResult<LoadedInstance> {
    let file: OrFile = typed(source, text)?;
    let eps = file.epsilon.as_deref().map(|e| rational(source, "epsilon", e)).transpose()?;
    let mut g = SpreadGraph::new();
    for (k, n) in file.nodes.iter().enumerate() {
        let w = expr(source, &format!("nodes[{k}].weight"), &n.weight, eps.as_ref())?;
        g.add_node(&n.id, w).map_err(|e| field_err(source, format!("nodes[{k}]"), e))?;
    }
    for (k, e) in file.edges.iter().enumerate() {
        let p = expr(source, &format!("edges[{k}].p"), &e.p, eps.as_ref())?;
        g.add_edge(&e.from, &e.to, p).map_err(|err| field_err(source, format!("edges[{k}]"), err))?;
    }
    let credit = match file.seed_credit.as_deref() {
        None => SeedCredit::Owner,
        Some(c) => parse_seed_credit(c)
            .ok_or_else(|| field_err(source, "seed_credit".into(), format!("expected \"owner\" or \"edges-only\", got {c:?}")))?,
    };
    let candidates = match &file.candidates {
        None => (0..g.node_count()).collect(),
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(k, id)| g.node_index(id).map_err(|e| field_err(source, format!("candidates[{k}]"), e)))
            .collect::<CliResult<Vec<_>>>()?,
    };
    let model = OrModel::with_candidates(g, file.players, candidates, credit).map_err(|e| CliError::instance(source, e.to_string()))?;
    Ok(LoadedInstance { instance: model.into(), domain: ProfileDomain::All })
}

fn load_coverage(source: &str, text: &str) -> CliResult<LoadedInstance> {
    let file: CoverageFile = typed(source, text)?;
    let ids: BTreeMap<&str, usize> = file.disks.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if ids.len() != file.disks.len() {
        return Err(field_err(source, "disks".into(), "duplicate disk id"));
    }
    let mut cells = Vec::with_capacity(file.cells.len());
    for (k, c) in file.cells.iter().enumerate() {
        let value = rational(source, &format!("cells[{k}].value"), &c.value)?;
        let mut disks = ElementSet::new();
        for (j, d) in c.disks.iter().enumerate() {
            disks.insert(index_of(source, format!("cells[{k}].disks[{j}]"), &ids, d)?);
        }
        cells.push(Cell { value, disks });
    }
    let weights = match &file.player_weights {
        None => vec![Rational::from_integer(1.into()); file.players],
        Some(w) => {
            if w.len() != file.players {
                return Err(field_err(source, "player_weights".into(), format!("expected {} weights", file.players)));
            }
            w.iter()
                .enumerate()
                .map(|(i, s)| rational(source, &format!("player_weights[{i}]"), s))
                .collect::<CliResult<Vec<_>>>()?
        }
    };
    let model = CoverageInstance::new(file.disks.clone(), cells, weights).map_err(|e| CliError::instance(source, e.to_string()))?;
    Ok(LoadedInstance { instance: model.into(), domain: ProfileDomain::All })
}

/// Parses an instance document; `source` names it in error messages.
pub fn parse_instance(source: &str, text: &str) -> CliResult<LoadedInstance> {
    let tag: ModelTag = typed(source, text)?;
    match tag.model.as_deref() {
        None | Some("tabular") => load_tabular(source, text),
        Some("or_single_step") => load_or(source, text),
        Some("disk_coverage") => load_coverage(source, text),
        Some(other) => Err(field_err(
            source,
            "model".into(),
            format!("unknown model {other:?} (expected tabular, or_single_step or disk_coverage)"),
        )),
    }
}

pub fn load_instance(path: &Path) -> CliResult<LoadedInstance> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    parse_instance(&path.display().to_string(), &text)
}
