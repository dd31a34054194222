//! Linear algebra over GF(2) on packed bit-vectors: row reduction, kernels,
//! linear solves, and row-space membership. Deterministic pivoting (lowest
//! column first) so every derived basis is reproducible bit-for-bit.

use crate::bits::BitVec;

/// A row space held in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    cols: usize,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace {
            rows: Vec::new(),
            pivots: Vec::new(),
            cols,
        }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut s = Self::new(cols);
        for r in rows {
            s.insert(r);
        }
        s
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(pivot) => {
                // Back-substitute into existing rows to keep RREF.
                for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
                    if row.get(pivot) {
                        row.xor_assign(&r);
                    }
                }
                let at = self.pivots.partition_point(|&p| p < pivot);
                self.rows.insert(at, r);
                self.pivots.insert(at, pivot);
                true
            }
        }
    }

    /// Reduce `v` modulo the row space.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }
}

/// Solve `A x = b` where the i-th equation is `dot(rows[i], x) = rhs[i]`.
/// Returns one solution (free variables set to zero), or None if
/// inconsistent.
pub fn solve(rows: &[BitVec], rhs: &BitVec, cols: usize) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    // Augmented elimination: carry the rhs bit alongside each row.
    let mut mat: Vec<(BitVec, bool)> = rows
        .iter()
        .zip((0..rhs.len()).map(|i| rhs.get(i)))
        .map(|(r, b)| (r.clone(), b))
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(sel) = (rank..mat.len()).find(|&r| mat[r].0.get(col)) else {
            continue;
        };
        mat.swap(rank, sel);
        let (pivot_row, pivot_rhs) = mat[rank].clone();
        for (r, (row, b)) in mat.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
                *b ^= pivot_rhs;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // Inconsistent if a zero row has rhs 1.
    if mat[rank..].iter().any(|(row, b)| *b && row.is_zero()) {
        return None;
    }
    let mut x = BitVec::zeros(cols);
    for (col, p) in pivot_of_col.iter().enumerate() {
        if let Some(r) = p {
            if mat[*r].1 {
                x.set(col, true);
            }
        }
    }
    Some(x)
}

/// Basis of the kernel `{x : A x = 0}` of the matrix with the given rows.
pub fn kernel(rows: &[BitVec], cols: usize) -> Vec<BitVec> {
    let space = RowSpace::from_rows(cols, rows);
    let pivots = &space.pivots;
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = BitVec::zeros(cols);
        v.set(free, true);
        for (row, &p) in space.rows.iter().zip(pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

pub fn rank<'a>(rows: impl IntoIterator<Item = &'a BitVec>, cols: usize) -> usize {
    RowSpace::from_rows(cols, rows).rank()
}
