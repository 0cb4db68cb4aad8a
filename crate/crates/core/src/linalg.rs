//! Gauss–Jordan kernels over exact scalars.
//!
//! Vectors are plain `Vec<Scalar>`; every routine takes the field explicitly so
//! empty inputs still know their zero.

use crate::field::{FieldDescriptor, Scalar};

/// Incrementally maintained reduced row-echelon basis.
///
/// Rows are kept sorted by pivot column, pivots are 1 and every pivot column is
/// zero outside its own row, so two builders spanning the same space end up with
/// identical rows regardless of insertion order.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    field: FieldDescriptor,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(field: FieldDescriptor, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn from_rref(field: FieldDescriptor, width: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|c| !c.is_zero()).expect("rref rows are nonzero"))
            .collect();
        Echelon { field, width, rows, pivots }
    }

    #[cfg(test)]
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    #[cfg(test)]
    pub(crate) fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Residual of `v` after eliminating every pivot column.
    pub(crate) fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span. Returns true when the rank grew.
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        if self.is_full() {
            return false;
        }
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    pub(crate) fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }
}

/// Coefficients `c` with `Σ c_j · generators[j] = target`, if any exist.
/// Free coefficients are set to zero.
pub(crate) fn solve_combination(
    field: FieldDescriptor,
    generators: &[Vec<Scalar>],
    target: &[Scalar],
) -> Option<Vec<Scalar>> {
    let m = generators.len();
    let d = target.len();
    // Augmented system: one row per coordinate, one column per generator, then the target.
    let mut rows: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut row: Vec<Scalar> = generators.iter().map(|g| g[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = gauss_jordan(&mut rows, m + 1);
    if pivots.contains(&m) {
        return None;
    }
    let mut coeffs = vec![field.zero(); m];
    for (row, &p) in rows.iter().zip(&pivots) {
        coeffs[p] = row[m].clone();
    }
    Some(coeffs)
}

/// Basis of `{v : rows · v = 0}`.
pub(crate) fn nullspace(field: FieldDescriptor, rows: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    let mut rows = rows.to_vec();
    let pivots = gauss_jordan(&mut rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); width];
            v[f] = field.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if !row[f].is_zero() {
                    v[p] = -&row[f];
                }
            }
            v
        })
        .collect()
}

/// In-place Gauss–Jordan on the first `width` columns. Zero rows are dropped.
/// Returns the pivot column of each remaining row.
fn gauss_jordan(rows: &mut Vec<Vec<Scalar>>, width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}
