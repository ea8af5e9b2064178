use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// On-disk group description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { order: usize, table: Vec<Vec<usize>> },
    Permutations { permgens: Vec<Vec<Vec<usize>>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Table { order, table } => {
                if table.len() != *order {
                    return Err(Error::NotAGroup(format!(
                        "declared order {order} but the table has {} rows",
                        table.len()
                    )));
                }
                FiniteGroup::from_table(table.clone())
            }
            GroupSpec::Permutations { permgens } => FiniteGroup::from_permutations(permgens),
        }
    }

    pub fn of(g: &FiniteGroup) -> Self {
        GroupSpec::Table { order: g.order(), table: g.rows() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_forms() {
        let t: GroupSpec = serde_json::from_str(r#"{"order": 2, "table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(t.build().unwrap().order(), 2);
        let p: GroupSpec = serde_json::from_str(r#"{"permgens": [[[0,1,2]], [[0,1]]]}"#).unwrap();
        assert_eq!(p.build().unwrap().order(), 6);
    }
}
