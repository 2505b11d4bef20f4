//! Dense linear algebra over a field: echelon forms, ranks, kernels.

use crate::field::Field;

/// A dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self, field: &F) -> Self {
        let mut t = Self::zeros(field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), &field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(self.get(r, c)).expect("nonzero pivot");
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if field.is_zero(&f) {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, field: &F) -> usize {
        self.clone().rref(field).len()
    }

    /// Basis of `{v : self * v = 0}`, as column vectors.
    pub fn kernel(&self, field: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Useful for "is this vector in the span so far" questions where vectors
/// arrive one at a time.
#[derive(Clone, Debug)]
pub struct RowSpace<F: Field> {
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, field: &F, v: &mut [F::Elem]) {
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
    }

    pub fn contains(&self, field: &F, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    /// Insert `v`; returns true if the rank grew.
    pub fn insert(&mut self, field: &F, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        let Some(p) = w.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = field.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&w) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn kernel_of_rank_one() {
        let f = PrimeField::default();
        let m = DenseMatrix::from_rows(&f, 3, vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(&f), 1);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in k {
            for i in 0..2 {
                let s = (0..3).fold(0, |acc, j| f.add(&acc, &f.mul(m.get(i, j), &v[j])));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn row_space_membership() {
        let f = PrimeField::default();
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&f, &[1, 1, 0]));
        assert!(rs.insert(&f, &[0, 1, 1]));
        assert!(!rs.insert(&f, &[1, 2, 1]));
        assert!(rs.contains(&f, &[2, 0, 99]));
        assert!(!rs.contains(&f, &[0, 0, 1]));
    }
}
