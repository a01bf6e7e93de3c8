//! JSON shapes for groups, tuples and reports. Permutations travel as
//! 1-based cycle strings and rationals as `"p/q"`.

use serde::{Deserialize, Serialize};

use crate::actions::{ratio_string, ActionElementReport};
use crate::covers::{validate_tuple, GenusReport, MonodromyTuple};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::SubgroupClass;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupJson {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        if self.degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if self.generators.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        PermGroup::from_cycle_strings(self.degree, &gens)
    }
}

/// A tuple file. Without a `group`, the group generated by the branches is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleJson {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    pub branches: Vec<String>,
}

impl TupleJson {
    pub fn from_tuple(t: &MonodromyTuple) -> Self {
        TupleJson {
            degree: t.group().degree(),
            group: Some(GroupJson::from_group(t.group())),
            branches: t.branches().iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn to_tuple(&self) -> Result<MonodromyTuple> {
        let branches = self
            .branches
            .iter()
            .map(|s| Permutation::parse_cycles(s, self.degree))
            .collect::<Result<Vec<_>>>()?;
        let group = match &self.group {
            Some(g) => {
                if g.degree != self.degree {
                    return Err(Error::DegreeMismatch {
                        left: self.degree,
                        right: g.degree,
                    });
                }
                g.to_group()?
            }
            None if branches.is_empty() => PermGroup::trivial(self.degree),
            None => PermGroup::from_generators(branches.clone())?,
        };
        validate_tuple(&group, branches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReportJson {
    pub size: usize,
    pub element: String,
    pub fix: usize,
    pub fpr: String,
    pub orbits: usize,
    pub ind: usize,
}

impl From<&ActionElementReport> for ActionReportJson {
    fn from(r: &ActionElementReport) -> Self {
        ActionReportJson {
            size: r.size,
            element: r.element.to_string(),
            fix: r.fixed_points,
            fpr: ratio_string(&r.fpr),
            orbits: r.orbit_count,
            ind: r.ind,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReportJson {
    pub index: u64,
    pub branch_indices: Vec<usize>,
    pub genus: u64,
    pub rho: String,
}

impl From<&GenusReport> for GenusReportJson {
    fn from(r: &GenusReport) -> Self {
        GenusReportJson {
            index: r.subgroup_index,
            branch_indices: r.branch_indices.clone(),
            genus: r.genus,
            rho: ratio_string(&r.rho),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub order: u64,
    pub index: u64,
    pub transitive: bool,
    pub maximal_in: Vec<String>,
    pub class_size: u64,
    pub name: String,
    pub generators: Vec<String>,
}

impl SubgroupJson {
    /// `parent` names the lattice's group, e.g. `"S_5"`; the even part of an
    /// `S_n` lattice is named `A_n`.
    pub fn from_class(class: &SubgroupClass, parent: &str) -> Self {
        let mut maximal_in = Vec::new();
        if class.maximal_in.parent {
            maximal_in.push(parent.to_string());
        }
        if class.maximal_in.even_part {
            maximal_in.push(parent.replacen("S_", "A_", 1));
        }
        SubgroupJson {
            order: class.order,
            index: class.index_in_parent,
            transitive: class.is_transitive,
            maximal_in,
            class_size: class.class_size,
            name: class.name_hint.clone(),
            generators: class
                .representative
                .generators()
                .iter()
                .map(|p| p.to_string())
                .collect(),
        }
    }
}

/// Parses JSON, folding syntax errors into [`Error::Input`].
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}
