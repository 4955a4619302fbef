//! JSON group-spec files.
//!
//! ```json
//! {"schema": 1, "name": "G3_1_2", "rank": 2, "variables": ["u1", "u2"],
//!  "invariants": ["u1^3*u2^3", "u1^3 + u2^3"], "degrees": [6, 3]}
//! ```

use std::path::Path;

use saito_core::algebra::Vars;
use saito_core::group::GroupSpec;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    #[serde(default)]
    pub schema: Option<u32>,
    #[serde(default)]
    pub name: Option<String>,
    pub rank: usize,
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub invariants: Vec<String>,
    #[serde(default)]
    pub degrees: Option<Vec<u32>>,
}

impl GroupSpecFile {
    pub fn to_group(&self) -> Result<GroupSpec> {
        if let Some(s) = self.schema {
            if s != 1 {
                return Err(Error::Spec(format!("unsupported schema version {s}")));
            }
        }
        if self.rank == 0 {
            return Err(Error::Spec("rank must be positive".into()));
        }
        if self.invariants.len() != self.rank {
            return Err(Error::Spec(format!("{} invariants given for rank {}", self.invariants.len(), self.rank)));
        }
        let vars = match &self.variables {
            Some(v) if v.len() != self.rank => {
                return Err(Error::Spec(format!("{} variables given for rank {}", v.len(), self.rank)));
            }
            Some(v) => Vars::new(v)?,
            None => Vars::indexed("u", self.rank)?,
        };
        let invariants = self
            .invariants
            .iter()
            .enumerate()
            .map(|(a, src)| {
                parse_poly(src, &vars).map_err(|source| Error::Parse { context: format!("invariant x{}", a + 1), source })
            })
            .collect::<Result<Vec<_>>>()?;
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        Ok(GroupSpec::custom(&name, vars, invariants, self.degrees.clone())?)
    }
}

/// Loads a group spec from inline JSON text.
pub fn load_group_spec_str(json: &str) -> Result<GroupSpec> {
    let file: GroupSpecFile = serde_json::from_str(json)?;
    file.to_group()
}

pub fn load_group_spec(path: &Path) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    load_group_spec_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use saito_core::Error as CoreError;

    #[test]
    fn cyclic_and_gm1n() {
        let g = load_group_spec_str(r#"{"rank": 1, "invariants": ["u1^5"]}"#).unwrap();
        assert_eq!(g.degrees, vec![5]);
        let g = load_group_spec_str(r#"{"schema": 1, "rank": 2, "invariants": ["u1^3*u2^3", "u1^3+u2^3"]}"#).unwrap();
        assert_eq!(g.degrees, vec![6, 3]);
    }

    #[test]
    fn rejections() {
        let dep = load_group_spec_str(r#"{"rank": 2, "invariants": ["u1^2", "u1^2"]}"#).unwrap_err();
        assert!(matches!(dep, Error::Core(CoreError::InvalidGroup(ref m)) if m.contains("dependent")), "{dep}");
        let inhom = load_group_spec_str(r#"{"rank": 1, "invariants": ["u1^2 + u1"]}"#).unwrap_err();
        assert!(matches!(inhom, Error::Core(CoreError::NotHomogeneous(_))));
        let mismatch = load_group_spec_str(r#"{"rank": 1, "invariants": ["u1^2"], "degrees": [3]}"#).unwrap_err();
        assert!(mismatch.to_string().contains("declared degrees"));
        assert!(matches!(load_group_spec_str(r#"{"rank": 2, "invariants": ["u1"]}"#), Err(Error::Spec(_))));
        assert!(matches!(load_group_spec_str(r#"{"rank": 1, "invariants": ["u1 u1"]}"#), Err(Error::Parse { .. })));
        assert!(matches!(load_group_spec_str("{"), Err(Error::Json(_))));
    }
}
