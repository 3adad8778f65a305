//! JSON document form of an automaton.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AutomatonSpec, Preset, State, StateId, IDENTITY_NAME};
use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub alphabet_size: usize,
    pub states: Vec<StateDoc>,
    pub genset: Vec<String>,
    /// Generator name to inverse name. Involutions may be omitted.
    #[serde(default)]
    pub inverses: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub name: String,
    pub root_perm: PermDoc,
    pub sections: Vec<String>,
}

/// Either an image list `[1, 0]` or cycle notation `"(0 1)"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermDoc {
    Images(Vec<u32>),
    Cycles(String),
}

impl AutomatonDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse("document", e.to_string()))
    }

    pub fn to_spec(&self) -> Result<AutomatonSpec> {
        let d = self.alphabet_size;
        let preset = self.preset.as_deref().map(Preset::from_name).transpose()?;
        let mut names: Vec<&str> = vec![IDENTITY_NAME];
        for (i, st) in self.states.iter().enumerate() {
            if st.name != IDENTITY_NAME {
                names.push(&st.name);
            } else if i != 0 {
                return Err(Error::parse(
                    format!("states[{i}].name"),
                    "identity state must be listed first",
                ));
            }
        }
        let lookup = |field: String, name: &str| -> Result<StateId> {
            names.iter().position(|n| *n == name).ok_or_else(|| {
                Error::Validation(format!("{field} references undeclared state `{name}`"))
            })
        };

        let mut states = vec![State {
            name: IDENTITY_NAME.to_string(),
            root_perm: Perm::identity(d),
            sections: vec![0; d],
        }];
        for (i, st) in self.states.iter().enumerate() {
            let root_perm = match &st.root_perm {
                PermDoc::Images(v) => Perm::from_images(v.clone()).filter(|p| p.len() == d),
                PermDoc::Cycles(c) => Perm::from_cycles(c, d),
            }
            .ok_or_else(|| {
                Error::parse(
                    format!("states[{i}].root_perm"),
                    format!("not a permutation of {d} letters"),
                )
            })?;
            if st.sections.len() != d {
                return Err(Error::parse(
                    format!("states[{i}].sections"),
                    format!("expected {d} entries, got {}", st.sections.len()),
                ));
            }
            let sections = st
                .sections
                .iter()
                .enumerate()
                .map(|(x, n)| lookup(format!("states[{i}].sections[{x}]"), n))
                .collect::<Result<Vec<_>>>()?;
            let parsed = State {
                name: st.name.clone(),
                root_perm,
                sections,
            };
            if st.name == IDENTITY_NAME {
                if parsed != states[0] {
                    return Err(Error::Validation(
                        "identity state must have trivial root permutation and identity sections"
                            .into(),
                    ));
                }
            } else {
                states.push(parsed);
            }
        }

        let genset = self
            .genset
            .iter()
            .enumerate()
            .map(|(i, n)| lookup(format!("genset[{i}]"), n))
            .collect::<Result<Vec<_>>>()?;
        let mut inverse: Vec<StateId> = (0..states.len()).collect();
        for (k, v) in &self.inverses {
            let s = lookup(format!("inverses.{k}"), k)?;
            let t = lookup(format!("inverses.{k}"), v)?;
            inverse[s] = t;
            inverse[t] = s;
        }
        let spec = AutomatonSpec::new(d, states, genset, inverse, preset)?;
        if let Some(p) = preset {
            if spec != AutomatonSpec::preset(p) {
                return Err(Error::Validation(format!(
                    "document claims preset `{}` but its data differs",
                    p.name()
                )));
            }
        }
        Ok(spec)
    }
}

impl AutomatonSpec {
    pub fn to_doc(&self) -> AutomatonDoc {
        let states = self
            .states
            .iter()
            .skip(1)
            .map(|st| StateDoc {
                name: st.name.clone(),
                root_perm: PermDoc::Cycles(st.root_perm.to_string()),
                sections: st
                    .sections
                    .iter()
                    .map(|&s| self.states[s].name.clone())
                    .collect(),
            })
            .collect();
        let inverses = self
            .genset
            .iter()
            .filter(|&&g| self.inverse[g] != g)
            .map(|&g| (self.state_name(g).to_string(), self.state_name(self.inverse[g]).to_string()))
            .collect();
        AutomatonDoc {
            alphabet_size: self.alphabet_size,
            states,
            genset: self.genset.iter().map(|&g| self.state_name(g).to_string()).collect(),
            inverses,
            preset: self.preset.map(|p| p.name().to_string()),
        }
    }
}

/// Parses an automaton document; a bare preset name is also accepted.
pub fn parse_automaton(text: &str) -> Result<AutomatonSpec> {
    let trimmed = text.trim();
    if !trimmed.starts_with('{') {
        return AutomatonSpec::preset_by_name(trimmed);
    }
    AutomatonDoc::from_json(trimmed)?.to_spec()
}
