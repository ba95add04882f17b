//! Exact Smith normal form over the integers, used to extract the abelian
//! group structure of finitely presented modules. Classic elimination with
//! smallest-pivot selection; no probabilistic shortcuts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Diagonal of the Smith normal form (nonzero entries, divisibility chain
/// d_1 | d_2 | ...), plus the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub cols: usize,
}

impl SnfResult {
    /// Invariant factors > 1 (the diagonal is normalized positive).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| **d > BigInt::from(1)).cloned().collect()
    }

    /// Free rank of the cokernel Z^cols / rows.
    pub fn free_rank(&self) -> usize {
        self.cols - self.rank
    }
}

/// Smith normal form of a rows x cols integer matrix.
pub fn smith_normal_form(mut mat: Vec<Vec<BigInt>>, cols: usize) -> SnfResult {
    let rows = mat.len();
    debug_assert!(mat.iter().all(|r| r.len() == cols));
    let mut t = 0;
    let mut diagonal = Vec::new();

    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if mat[r][c].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((r, c)),
                    Some((pr, pc)) => {
                        if mat[r][c].abs() < mat[pr][pc].abs() {
                            pivot = Some((r, c));
                        }
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        mat.swap(t, pr);
        for row in mat.iter_mut() {
            row.swap(t, pc);
        }
        if mat[t][t].is_negative() {
            for c in t..cols {
                mat[t][c] = -mat[t][c].clone();
            }
        }

        // clear the pivot column and row; restart when a remainder survives
        let mut clean = true;
        for r in t + 1..rows {
            if mat[r][t].is_zero() {
                continue;
            }
            let q = mat[r][t].div_floor(&mat[t][t]);
            for c in t..cols {
                let s = &q * &mat[t][c];
                mat[r][c] -= s;
            }
            if !mat[r][t].is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            if mat[t][c].is_zero() {
                continue;
            }
            let q = mat[t][c].div_floor(&mat[t][t]);
            for row in mat.iter_mut().skip(t) {
                let s = &q * &row[t];
                row[c] -= s;
            }
            if !mat[t][c].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // ensure the pivot divides the trailing submatrix
        let mut offender = None;
        'scan: for r in t + 1..rows {
            for c in t + 1..cols {
                if !mat[r][c].mod_floor(&mat[t][t]).is_zero() {
                    offender = Some(r);
                    break 'scan;
                }
            }
        }
        if let Some(r) = offender {
            for c in t..cols {
                let add = mat[r][c].clone();
                mat[t][c] += add;
            }
            continue;
        }

        diagonal.push(mat[t][t].clone());
        t += 1;
    }

    let rank = diagonal.len();
    SnfResult { diagonal, rank, cols }
}
