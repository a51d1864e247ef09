//! Exact dense linear algebra over the rationals or GF(p).
//!
//! Everything here works on row vectors of [`Scalar`]s. Matrices are
//! `Vec<Vec<Scalar>>`, row-major. Elimination is plain Gauss-Jordan with
//! exact arithmetic; no pivoting heuristics are needed.

use crate::scalar::{FieldTag, Scalar};

/// Reduced row echelon form in place, scanning columns left to right.
/// Zero rows are removed. Returns the pivot columns in ascending order.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..ncols).collect();
    rref_in_column_order(rows, &order)
        .into_iter()
        .map(|(col, _)| col)
        .collect()
}

/// Reduced row echelon form in place, trying pivot columns in the given
/// order. After the call, row `k` is the pivot row of the `k`-th pivot found
/// and zero rows are removed. Returns `(column, row)` pairs in scan order.
pub fn rref_in_column_order(
    rows: &mut Vec<Vec<Scalar>>,
    order: &[usize],
) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for &col in order {
        let Some(pr) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, pr);
        if !rows[next][col].is_one() {
            let inv = rows[next][col]
                .inverse()
                .expect("pivot entry is nonzero");
            for v in rows[next].iter_mut() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = &*v - &(&factor * pv);
            }
        }
        pivots.push((col, next));
        next += 1;
    }
    rows.truncate(next);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of the right kernel of the matrix: one vector per free column, in
/// ascending free-column order, with a `1` at that column. `ncols` must be
/// passed explicitly so an empty matrix still has a well-defined kernel.
pub fn kernel(field: FieldTag, ncols: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut work: Vec<Vec<Scalar>> = rows.to_vec();
    let pivots = rref(&mut work);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivots {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut vec = vec![field.zero(); ncols];
        vec[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            vec[pc] = (-&work[r][free]).clone();
        }
        basis.push(vec);
    }
    basis
}

/// A linear subspace of a fixed coordinate space, stored as the reduced row
/// echelon basis (rows ordered by pivot column). Two `Subspace`s are equal
/// exactly when they describe the same subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldTag,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(field: FieldTag, ncols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        for row in &rows {
            assert_eq!(row.len(), ncols, "subspace row has wrong length");
        }
        let mut rows = rows;
        let pivots = rref(&mut rows);
        Subspace {
            field,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn zero(field: FieldTag, ncols: usize) -> Self {
        Subspace {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldTag, ncols: usize) -> Self {
        let rows = (0..ncols)
            .map(|i| {
                let mut row = vec![field.zero(); ncols];
                row[i] = field.one();
                row
            })
            .collect();
        Subspace {
            field,
            ncols,
            rows,
            pivots: (0..ncols).collect(),
        }
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Residual of `v` after eliminating against the basis; zero iff `v` is
    /// in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols, "vector has wrong length");
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for (o, b) in out.iter_mut().zip(row) {
                *o = &*o - &(&factor * b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ncols, other.ncols, "subspaces live in different spaces");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.field, self.ncols, rows)
    }

    /// Zassenhaus: row-reduce `[u|u]` and `[w|0]` blocks; rows whose left
    /// half vanishes carry the intersection in their right half.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ncols, other.ncols, "subspaces live in different spaces");
        let n = self.ncols;
        let zero = self.field.zero();
        let mut work: Vec<Vec<Scalar>> = Vec::new();
        for u in &self.rows {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            work.push(row);
        }
        for w in &other.rows {
            let mut row = w.clone();
            row.extend(std::iter::repeat_n(zero.clone(), n));
            work.push(row);
        }
        rref(&mut work);
        let inter_rows: Vec<Vec<Scalar>> = work
            .into_iter()
            .filter(|row| row[..n].iter().all(Scalar::is_zero))
            .map(|row| row[n..].to_vec())
            .collect();
        Subspace::from_rows(self.field, n, inter_rows)
    }

    /// Intersection with the coordinate subspace spanned by the selected
    /// positions: the part of `self` supported entirely on `keep`.
    pub fn restrict_to_coords(&self, keep: &[bool]) -> Subspace {
        assert_eq!(keep.len(), self.ncols, "coordinate mask has wrong length");
        let coord_rows: Vec<Vec<Scalar>> = keep
            .iter()
            .enumerate()
            .filter(|(_, &k)| k)
            .map(|(i, _)| {
                let mut row = vec![self.field.zero(); self.ncols];
                row[i] = self.field.one();
                row
            })
            .collect();
        let coords = Subspace::from_rows(self.field, self.ncols, coord_rows);
        self.intersection(&coords)
    }
}
