//! Integer normal form of sparse `0/±1`-heavy matrices.
//!
//! Unit entries are eliminated first on a sparse `i64` copy (each removes one
//! invariant factor equal to 1 and changes nothing else). What remains is
//! diagonalized densely over `BigInt`, always pivoting on the entry of
//! smallest absolute value (first in row-major order), and the diagonal is
//! then normalized into invariant factors.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank and the invariant factors greater than 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// `rows[r]` lists the nonzero `(column, value)` entries of row `r`.
pub fn normal_form(rows: &[Vec<(usize, i64)>], ncols: usize) -> NormalForm {
    match eliminate_units(rows, ncols) {
        Some((units, rest)) => finish(units, rest),
        None => {
            let dense = rows
                .iter()
                .map(|r| {
                    let mut v = vec![BigInt::zero(); ncols];
                    for &(c, x) in r {
                        v[c] += x;
                    }
                    v
                })
                .collect();
            finish(0, dense)
        }
    }
}

fn finish(units: usize, dense: Vec<Vec<BigInt>>) -> NormalForm {
    let diag = diagonalize(dense);
    let factors = invariant_factors(diag);
    NormalForm { rank: units + factors.len(), torsion: factors.into_iter().filter(|d| !d.is_one()).collect() }
}

/// Sparse unit elimination. Returns the number of unit pivots and the
/// remaining matrix (dense, over the columns still in use), or `None` if an
/// intermediate entry overflowed.
fn eliminate_units(rows: &[Vec<(usize, i64)>], ncols: usize) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut m: Vec<Option<BTreeMap<usize, i64>>> = rows
        .iter()
        .map(|r| {
            let mut row = BTreeMap::new();
            for &(c, v) in r {
                *row.entry(c).or_insert(0) += v;
            }
            row.retain(|_, v| *v != 0);
            Some(row)
        })
        .collect();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in m.iter().enumerate() {
        for &c in row.as_ref().expect("all rows present").keys() {
            cols[c].insert(r);
        }
    }

    let mut units = 0;
    loop {
        let mut progressed = false;
        for r in 0..m.len() {
            let Some((c, v)) =
                m[r].as_ref().and_then(|row| row.iter().find(|(_, v)| v.abs() == 1).map(|(c, v)| (*c, *v)))
            else {
                continue;
            };
            let pivot = m[r].take().expect("checked above");
            for &c2 in pivot.keys() {
                cols[c2].remove(&r);
            }
            let others: Vec<usize> = cols[c].iter().copied().collect();
            for r2 in others {
                let row2 = m[r2].as_mut().expect("indexed rows are present");
                let factor = row2[&c].checked_mul(v)?;
                for (&c2, &pv) in &pivot {
                    let e = row2.entry(c2).or_insert(0);
                    *e = e.checked_sub(factor.checked_mul(pv)?)?;
                    if *e == 0 {
                        row2.remove(&c2);
                        cols[c2].remove(&r2);
                    } else {
                        cols[c2].insert(r2);
                    }
                }
            }
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    let live_cols: Vec<usize> = (0..ncols).filter(|&c| !cols[c].is_empty()).collect();
    let pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rest = m
        .into_iter()
        .flatten()
        .filter(|row| !row.is_empty())
        .map(|row| {
            let mut v = vec![BigInt::zero(); live_cols.len()];
            for (c, x) in row {
                v[pos[&c]] = BigInt::from(x);
            }
            v
        })
        .collect();
    Some((units, rest))
}

/// Nonzero diagonal entries after reducing `a` to diagonal form.
fn diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = smallest(&a, t..nr, t..nc) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..nc].iter_mut().zip(&top[t][t..nc]) {
                        *x -= &q * y;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
            // A remainder is smaller than the pivot: move it into place.
            let col = (t..nr).filter(|&i| !a[i][t].is_zero()).map(|i| (i, t));
            let row = (t..nc).filter(|&j| !a[t][j].is_zero()).map(|j| (t, j));
            let (pi, pj) =
                col.chain(row).min_by(|x, y| a[x.0][x.1].abs().cmp(&a[y.0][y.1].abs())).expect("pivot present");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn smallest(a: &[Vec<BigInt>], rows: Range<usize>, cols: Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Turn a diagonal `d_1, …, d_r` into invariant factors `e_1 | e_2 | …` by
/// repeatedly replacing pairs with their gcd and lcm.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}
