//! Smith normal form over the integers.
//!
//! Unit pivots are eliminated first on a sparse column representation
//! (boundary matrices are mostly cleared this way); whatever is left is
//! reduced densely. Arithmetic runs on checked `i64` and restarts on
//! `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed};
use rustc_hash::FxHashSet;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let columns = (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter_map(|r| {
                        let v = self.get(r, c);
                        (v != 0).then_some((r, v))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            columns,
        }
    }
}

/// Column-sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m.set(r, c, v);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Nonzero invariant factors, positive, each dividing the next.
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|f| !f.is_one())
    }
}

trait Entry: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl<T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul> Entry for T {}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    smith_normal_form_sparse(&m.to_sparse())
}

pub fn smith_normal_form_sparse(m: &SparseMatrix) -> SmithForm {
    let factors = match reduce::<i64>(m) {
        Some(f) => f.into_iter().map(BigInt::from).collect(),
        None => reduce::<BigInt>(m).expect("big integers do not overflow"),
    };
    SmithForm {
        rank: factors.len(),
        factors,
    }
}

fn reduce<T: Entry + From<i64>>(m: &SparseMatrix) -> Option<Vec<T>> {
    let mut columns: Vec<Vec<(usize, T)>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, T::from(v))).collect())
        .collect();
    let mut units = eliminate_unit_pivots(m.rows, &mut columns)?;
    let rest = dense_smith(m.rows, columns)?;
    units.extend(rest);
    Some(units)
}

/// Repeatedly pivots on ±1 entries, removing the pivot row and column.
/// Returns one factor of 1 per pivot and leaves the surviving columns in
/// place (pivot columns are emptied).
fn eliminate_unit_pivots<T: Entry>(rows: usize, columns: &mut [Vec<(usize, T)>]) -> Option<Vec<T>> {
    let mut row_cols: Vec<FxHashSet<usize>> = vec![FxHashSet::default(); rows];
    for (c, col) in columns.iter().enumerate() {
        for (r, _) in col {
            row_cols[*r].insert(c);
        }
    }
    let mut factors = Vec::new();
    let mut work: Vec<usize> = (0..columns.len()).rev().collect();
    let mut queued = vec![true; columns.len()];
    while let Some(c) = work.pop() {
        queued[c] = false;
        // unit entry whose row is sparsest
        let Some((pr, pv)) = columns[c]
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .min_by_key(|(r, _)| row_cols[*r].len())
            .cloned()
        else {
            continue;
        };
        let pivot_col = std::mem::take(&mut columns[c]);
        for (r, _) in &pivot_col {
            row_cols[*r].remove(&c);
        }
        let others: Vec<usize> = row_cols[pr].iter().copied().collect();
        for o in others {
            let coeff = columns[o]
                .iter()
                .find(|(r, _)| *r == pr)
                .map(|(_, v)| v.clone())
                .expect("row index consistent");
            // col_o -= (coeff / pv) * pivot_col, exact since pv = ±1
            let factor = coeff.checked_mul(&pv)?;
            let merged = axpy(&columns[o], &pivot_col, &factor)?;
            for (r, _) in &columns[o] {
                row_cols[*r].remove(&o);
            }
            for (r, _) in &merged {
                row_cols[*r].insert(o);
            }
            columns[o] = merged;
            if !queued[o] {
                queued[o] = true;
                work.push(o);
            }
        }
        debug_assert!(row_cols[pr].is_empty());
        factors.push(T::one());
    }
    Some(factors)
}

/// `a - factor * b` on sorted sparse columns, dropping zeros.
fn axpy<T: Entry>(a: &[(usize, T)], b: &[(usize, T)], factor: &T) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = T::zero().checked_sub(&b[j].1.checked_mul(factor)?)?;
            out.push((b[j].0, v));
            j += 1;
        } else {
            let v = a[i].1.checked_sub(&b[j].1.checked_mul(factor)?)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn dense_smith<T: Entry>(rows: usize, columns: Vec<Vec<(usize, T)>>) -> Option<Vec<T>> {
    let live_cols: Vec<Vec<(usize, T)>> = columns.into_iter().filter(|c| !c.is_empty()).collect();
    if live_cols.is_empty() {
        return Some(Vec::new());
    }
    let mut live_rows: Vec<usize> = live_cols.iter().flatten().map(|(r, _)| *r).collect();
    live_rows.sort_unstable();
    live_rows.dedup();
    let mut row_pos = vec![usize::MAX; rows];
    for (i, &r) in live_rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let (m, n) = (live_rows.len(), live_cols.len());
    let mut a: Vec<Vec<T>> = vec![vec![T::zero(); n]; m];
    for (c, col) in live_cols.into_iter().enumerate() {
        for (r, v) in col {
            a[row_pos[r]][c] = v;
        }
    }

    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((i, j)) = min_nonzero(&a, t..m, t..n) else {
            break;
        };
        a.swap(t, i);
        swap_cols(&mut a, t, j);
        loop {
            let pivot = a[t][t].clone();
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&pivot);
                    row_sub(&mut a, i, t, &q, t)?;
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&pivot);
                    col_sub(&mut a, j, t, &q, t)?;
                }
            }
            let leftover = (t + 1..m)
                .map(|i| (i, t))
                .chain((t + 1..n).map(|j| (t, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            if let Some((i, j)) = leftover {
                if i != t {
                    a.swap(t, i);
                } else {
                    swap_cols(&mut a, t, j);
                }
                continue;
            }
            let pivot = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    // row t += row i; the column-t entry of row i is zero
                    for j in t + 1..n {
                        a[t][j] = a[t][j].checked_add(&a[i][j])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    Some(diag)
}

fn min_nonzero<T: Entry>(
    a: &[Vec<T>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = a[i][j].abs();
            if !v.is_zero() && best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                let one = v.is_one();
                best = Some((i, j, v));
                if one {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn swap_cols<T>(a: &mut [Vec<T>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

/// row_dst -= q * row_src over columns `from..`
fn row_sub<T: Entry>(a: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
    for j in from..a[dst].len() {
        if !a[src][j].is_zero() {
            let v = a[dst][j].checked_sub(&a[src][j].checked_mul(q)?)?;
            a[dst][j] = v;
        }
    }
    Some(())
}

/// col_dst -= q * col_src over rows `from..`
fn col_sub<T: Entry>(a: &mut [Vec<T>], dst: usize, src: usize, q: &T, from: usize) -> Option<()> {
    for row in a.iter_mut().skip(from) {
        if !row[src].is_zero() {
            let v = row[dst].checked_sub(&row[src].checked_mul(q)?)?;
            row[dst] = v;
        }
    }
    Some(())
}
