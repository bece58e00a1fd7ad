//! Model files: a `G`-equivariant crossed module as JSON, or a builtin
//! fixture name.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use xcohom::group::{builtin_group, FiniteGroup, GroupAction, GroupHom};
use xcohom::xmod::{fixture, CrossedModule, EquivariantCrossedModule};

use crate::CliError;

/// A group in a model file: a builtin name or a Cayley table.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupInput {
    Named(String),
    Table {
        order: usize,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        name: Option<String>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelJson {
    #[serde(rename = "M")]
    pub m: GroupInput,
    #[serde(rename = "L")]
    pub l: GroupInput,
    pub boundary: Vec<usize>,
    pub l_action: Vec<Vec<usize>>,
    #[serde(rename = "G")]
    pub g: GroupInput,
    #[serde(rename = "g_on_M")]
    pub g_on_m: Vec<Vec<usize>>,
    #[serde(rename = "g_on_L")]
    pub g_on_l: Vec<Vec<usize>>,
    #[serde(rename = "Pi", default)]
    pub pi: Option<GroupInput>,
    #[serde(default)]
    pub name: Option<String>,
}

/// A validated model with its digest.
pub struct Model {
    pub name: String,
    pub exm: EquivariantCrossedModule,
    pub pi: Option<FiniteGroup>,
    pub digest: String,
}

#[derive(Serialize)]
struct CanonicalGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
}

/// The model with names and labels dropped; its JSON is what the digest
/// hashes.
#[derive(Serialize)]
pub struct Canonical {
    #[serde(rename = "M")]
    m: CanonicalGroup,
    #[serde(rename = "L")]
    l: CanonicalGroup,
    boundary: Vec<usize>,
    l_action: Vec<Vec<usize>>,
    #[serde(rename = "G")]
    g: CanonicalGroup,
    #[serde(rename = "g_on_M")]
    g_on_m: Vec<Vec<usize>>,
    #[serde(rename = "g_on_L")]
    g_on_l: Vec<Vec<usize>>,
}

fn canonical_group(g: &FiniteGroup) -> CanonicalGroup {
    CanonicalGroup {
        order: g.order(),
        mul: g.cayley_table(),
    }
}

pub fn canonical(exm: &EquivariantCrossedModule) -> Canonical {
    let xm = exm.base();
    Canonical {
        m: canonical_group(xm.m()),
        l: canonical_group(xm.l()),
        boundary: xm.boundary().table().to_vec(),
        l_action: xm.l_action().to_rows(),
        g: canonical_group(exm.g()),
        g_on_m: exm.g_on_m().to_rows(),
        g_on_l: exm.g_on_l().to_rows(),
    }
}

pub fn digest(exm: &EquivariantCrossedModule) -> String {
    let json = serde_json::to_string(&canonical(exm)).expect("canonical model serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

pub fn group_by_name(name: &str) -> Result<FiniteGroup, CliError> {
    builtin_group(name).ok_or_else(|| CliError::Parse(format!("unknown group {name:?}")))
}

fn build_group(input: &GroupInput) -> Result<FiniteGroup, CliError> {
    match input {
        GroupInput::Named(name) => group_by_name(name),
        GroupInput::Table { order, mul, name } => {
            if mul.len() != *order {
                return Err(CliError::Parse(format!(
                    "group table has {} rows, order is {order}",
                    mul.len()
                )));
            }
            let g = FiniteGroup::from_table(mul.clone()).map_err(CliError::library)?;
            Ok(match name {
                Some(n) => g.with_name(n.clone()),
                None => g,
            })
        }
    }
}

pub fn from_json(model: &ModelJson, fallback_name: &str) -> Result<Model, CliError> {
    let (m, l, g) = (build_group(&model.m)?, build_group(&model.l)?, build_group(&model.g)?);
    let boundary = GroupHom::new(&m, &l, model.boundary.clone()).map_err(CliError::library)?;
    let l_action = GroupAction::on_group(&l, &m, model.l_action.clone()).map_err(CliError::library)?;
    let base = CrossedModule::new(m.clone(), l.clone(), boundary, l_action).map_err(CliError::library)?;
    let g_on_m = GroupAction::on_group(&g, &m, model.g_on_m.clone()).map_err(CliError::library)?;
    let g_on_l = GroupAction::on_group(&g, &l, model.g_on_l.clone()).map_err(CliError::library)?;
    let name = model.name.clone().unwrap_or_else(|| fallback_name.to_string());
    let exm = EquivariantCrossedModule::new(base, g, g_on_m, g_on_l)
        .map_err(CliError::library)?
        .with_name(name.clone());
    let pi = model.pi.as_ref().map(build_group).transpose()?;
    Ok(Model {
        digest: digest(&exm),
        name,
        exm,
        pi,
    })
}

pub fn load_fixture(name: &str) -> Result<Model, CliError> {
    let exm = fixture(name).ok_or_else(|| CliError::Parse(format!("unknown fixture {name:?}")))?;
    Ok(Model {
        name: name.to_string(),
        digest: digest(&exm),
        exm,
        pi: None,
    })
}

/// A fixture name, or a path to a JSON model.
pub fn load_model(source: &str) -> Result<Model, CliError> {
    if fixture(source).is_some() {
        return load_fixture(source);
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {source}: {e}")))?;
    let json: ModelJson = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("model");
    from_json(&json, stem)
}
