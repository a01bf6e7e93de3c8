use serde::Serialize;

use crate::actions::{coset_action, ratio_string, Rational};
use crate::error::Result;
use crate::group::PermGroup;
use crate::lattice::{check_small_degree, maximal_transitive_subgroups, MaximalMode};

/// One row of the `ρ(S_n, H)` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub n: usize,
    pub name: String,
    pub order: u64,
    pub index: u64,
    pub min_index: usize,
    pub rho: Rational,
    /// `ρ − 2/(2n + 1)`.
    pub margin: Rational,
    pub mode: MaximalMode,
}

#[derive(Serialize)]
struct RowJson<'a> {
    n: usize,
    name: &'a str,
    order: u64,
    index: u64,
    ind: usize,
    rho: String,
    margin: String,
    maximal_in: &'a str,
}

impl Table1Row {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RowJson {
            n: self.n,
            name: &self.name,
            order: self.order,
            index: self.index,
            ind: self.min_index,
            rho: ratio_string(&self.rho),
            margin: ratio_string(&self.margin),
            maximal_in: match self.mode {
                MaximalMode::InAn => "A_n",
                MaximalMode::InSnNotAn => "S_n",
            },
        })
        .expect("plain struct")
    }
}

/// For each `n`, every transitive `H ⊂ S_n` maximal in `A_n`, or maximal in
/// `S_n` but not `A_n`, with `[S_n:H]`, `ind(S_n, S_n/H)` and
/// `ρ(S_n, H) = ind / [S_n:H]`. Rows sorted by `n`, then `|H|`.
pub fn table1(n_values: &[usize]) -> Result<Vec<Table1Row>> {
    for &n in n_values {
        check_small_degree(n)?;
    }
    let mut rows = Vec::new();
    for &n in n_values {
        let sn = PermGroup::symmetric(n);
        for mode in [MaximalMode::InAn, MaximalMode::InSnNotAn] {
            for class in maximal_transitive_subgroups(n, mode)? {
                let action = coset_action(&sn, &class.representative)?;
                let index = action.size() as u64;
                let min_index = action.min_index()?.value;
                let rho = Rational::new(min_index as i64, index as i64);
                rows.push(Table1Row {
                    n,
                    name: class.name_hint.clone(),
                    order: class.order,
                    index,
                    min_index,
                    rho,
                    margin: rho - Rational::new(2, 2 * n as i64 + 1),
                    mode,
                });
            }
        }
    }
    rows.sort_by_key(|r| (r.n, r.order));
    Ok(rows)
}
