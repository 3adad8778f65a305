//! Gaussian elimination over GF(p) on the vertex–edge incidence system.
//!
//! Independent of the tree solver: decides whether `c` is a boundary on a
//! closed finite graph and produces a witness.

use std::collections::HashMap;

use crate::chain::{Chain0, Chain1};
use crate::error::{Error, Result};
use crate::graph::ToyGraph;

/// Working row: sparse entries plus the augmented right-hand side.
#[derive(Clone, Debug, Default)]
struct Row {
    entries: HashMap<usize, u32>,
    rhs: u32,
}

/// A retired pivot row, solved for `column` during back-substitution.
struct Pivot {
    column: usize,
    value: u32,
    others: Vec<(usize, u32)>,
    rhs: u32,
}

/// Solves `∂ψ = c` exactly, treating every vertex as constrained.
/// Returns `None` when `c` is not a boundary. Requires prime `p`.
///
/// Columns are eliminated in edge order. Each column lives in at most two
/// active rows; the shorter one becomes the pivot and is subtracted from the
/// other, which bounds fill-in on incidence matrices.
pub fn oracle_solve_finite(graph: &ToyGraph, c: &Chain0) -> Result<Option<Chain1>> {
    let p = c.modulus();
    if !p.is_prime() {
        return Err(Error::CompositeModulus(p.get()));
    }
    let n = graph.vertex_count();
    if c.len() != n {
        return Err(Error::ChainShape { expected: n, got: c.len() });
    }

    let mut rows: Vec<Row> = (0..n)
        .map(|v| Row {
            entries: HashMap::new(),
            rhs: c.get(v),
        })
        .collect();
    // Active rows holding each column.
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); graph.edge_count()];
    for (i, e) in graph.edges().iter().enumerate() {
        if e.tail == e.head {
            continue;
        }
        rows[e.head].entries.insert(i, 1);
        rows[e.tail].entries.insert(i, p.neg(1));
        holders[i] = vec![e.tail, e.head];
    }

    let mut pivots: Vec<Pivot> = Vec::new();
    for col in 0..graph.edge_count() {
        let mut live = std::mem::take(&mut holders[col]);
        live.sort_unstable();
        live.dedup();
        live.retain(|&r| rows[r].entries.contains_key(&col));
        let Some(&first) = live.first() else { continue };
        let pivot_row = live
            .iter()
            .copied()
            .min_by_key(|&r| (rows[r].entries.len(), r))
            .unwrap_or(first);
        let pivot = std::mem::take(&mut rows[pivot_row]);
        let value = pivot.entries[&col];
        let inv = p.inv(value).expect("nonzero mod prime");
        for &target in live.iter().filter(|&&r| r != pivot_row) {
            let factor = p.mul(rows[target].entries[&col], inv);
            let row = &mut rows[target];
            for (&k, &v) in &pivot.entries {
                let updated = p.sub(row.entries.get(&k).copied().unwrap_or(0), p.mul(factor, v));
                if updated == 0 {
                    row.entries.remove(&k);
                } else if row.entries.insert(k, updated).is_none() {
                    holders[k].push(target);
                }
            }
            row.rhs = p.sub(row.rhs, p.mul(factor, pivot.rhs));
        }
        let mut others: Vec<(usize, u32)> = pivot
            .entries
            .into_iter()
            .filter(|&(k, _)| k != col)
            .collect();
        others.sort_unstable();
        pivots.push(Pivot {
            column: col,
            value,
            others,
            rhs: pivot.rhs,
        });
    }

    if rows.iter().any(|r| r.rhs != 0) {
        return Ok(None);
    }

    // Later pivots never mention earlier pivot columns.
    let mut psi = Chain1::zeros(graph.edge_count(), p);
    for piv in pivots.iter().rev() {
        let acc = piv
            .others
            .iter()
            .fold(piv.rhs, |acc, &(k, v)| p.sub(acc, p.mul(v, psi.get(k))));
        let inv = p.inv(piv.value).expect("nonzero mod prime");
        psi.set(piv.column, p.mul(acc, inv) as i64);
    }
    Ok(Some(psi))
}
