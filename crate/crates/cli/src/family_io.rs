//! The family file: `{"n": …, "groups": [[…], …] | null, "members": […]}`.
//! Members are written as sorted element arrays in canonical order; on input
//! MSB-first bitstrings of length `n` are accepted too.

use std::path::Path;

use rpforge_core::{GroupPartition, Subset, SubsetFamily};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub n: usize,
    pub groups: Option<Vec<Vec<usize>>>,
    pub members: Vec<Member>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Member {
    Elements(Vec<usize>),
    Bits(String),
}

impl FamilyDocument {
    pub fn new(family: &SubsetFamily, partition: Option<&GroupPartition>) -> Self {
        FamilyDocument {
            n: family.n(),
            groups: partition.map(|p| p.groups().iter().map(|g| g.to_vec()).collect()),
            members: family.members().iter().map(|a| Member::Elements(a.to_vec())).collect(),
        }
    }

    /// Validates the document and rebuilds the family and partition.
    pub fn decode(&self) -> std::result::Result<(SubsetFamily, Option<GroupPartition>), String> {
        let n = self.n;
        let subset = |elements: &[usize]| -> std::result::Result<Subset, String> {
            if elements.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("elements {elements:?} are not strictly increasing"));
            }
            match Subset::from_elements(elements.iter().copied()) {
                Some(s) if !s.is_empty() && s.max_element() <= n => Ok(s),
                _ => Err(format!("{elements:?} is not a nonempty subset of 1..={n}")),
            }
        };
        let members = self
            .members
            .iter()
            .map(|m| match m {
                Member::Elements(e) => subset(e),
                Member::Bits(b) if b.len() == n => {
                    Subset::from_bitstring(b).ok_or_else(|| format!("bad bitstring {b:?}"))
                }
                Member::Bits(b) => Err(format!("bitstring {b:?} has length {}, expected {n}", b.len())),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let family = SubsetFamily::new(n, members).map_err(|e| e.to_string())?;
        let partition = match &self.groups {
            None => None,
            Some(groups) => {
                let groups = groups
                    .iter()
                    .map(|g| subset(g))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Some(GroupPartition::new(n, groups).map_err(|e| e.to_string())?)
            }
        };
        Ok((family, partition))
    }
}

pub fn read_family(path: &Path) -> Result<(SubsetFamily, Option<GroupPartition>)> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    let malformed = |reason: String| CliError::FamilyFormat {
        path: path.to_path_buf(),
        reason,
    };
    let doc: FamilyDocument = serde_json::from_str(&text).map_err(|e| malformed(e.to_string()))?;
    doc.decode().map_err(malformed)
}
