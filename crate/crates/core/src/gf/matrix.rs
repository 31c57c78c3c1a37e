use super::{Elem, Field, GfError};

/// Dense row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(k: usize) -> Matrix {
        let mut m = Matrix::zeros(k, k);
        for i in 0..k {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Pads with zero rows at the bottom up to `rows` rows.
    pub fn pad_rows(&self, rows: usize) -> Matrix {
        assert!(rows >= self.rows);
        let mut data = self.data.clone();
        data.resize(rows * self.cols, 0);
        Matrix {
            rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(self.cols, idx.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let rows = (0..self.rows)
            .map(|r| idx.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        Matrix::from_rows(idx.len(), rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn all_in_subfield(&self, field: &Field, q: u64) -> bool {
        self.data.iter().all(|&x| field.in_subfield(x, q))
    }

    /// `v * self^T`, i.e. the syndrome of `v` against the rows of `self`.
    pub fn syndrome(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(field, self.row(r), v)).collect()
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(self.get(r, c));
            self.scale_row(field, r, inv);
            for i in 0..self.rows {
                if i != r {
                    let f = self.get(i, c);
                    if f != 0 {
                        self.axpy_row(field, i, r, field.neg(f));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{ v : self * v^T = 0 }` as the rows of a matrix.
    pub fn null_space(&self, field: &Field) -> Matrix {
        let mut a = self.clone();
        let pivots = a.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Matrix::zeros(0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(a.get(r, free));
            }
            basis.push_row(&v);
        }
        basis
    }

    /// Indices of the first maximal linearly independent subset of rows,
    /// scanning top to bottom.
    pub fn independent_rows(&self, field: &Field) -> Vec<usize> {
        let mut echelon = Echelon::new(self.cols);
        (0..self.rows)
            .filter(|&r| echelon.insert(field, self.row(r)))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, field: &Field, r: usize, s: Elem) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = field.mul(*x, s);
        }
    }

    /// row[dst] += s * row[src]
    fn axpy_row(&mut self, field: &Field, dst: usize, src: usize, s: Elem) {
        for c in 0..self.cols {
            let v = field.add(self.get(dst, c), field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }
}

pub(crate) fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Incrementally built row echelon basis. Each stored row is normalized to a
/// leading one at its pivot column.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Echelon {
        Echelon {
            cols,
            rows: Vec::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and returns the residue.
    pub(crate) fn reduce(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f != 0 {
                let nf = field.neg(f);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(nf, y));
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub(crate) fn insert(&mut self, field: &Field, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(field, v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(v[pivot]);
        for x in &mut v {
            *x = field.mul(*x, inv);
        }
        self.rows.push((pivot, v));
        true
    }

    /// Removes the most recently inserted row.
    pub(crate) fn pop(&mut self) {
        self.rows.pop();
    }
}

/// Row rank by Gaussian elimination.
pub fn rank(field: &Field, m: &Matrix) -> usize {
    let mut a = m.clone();
    a.rref(field).len()
}

/// An ordered basis of GF(q^m) over GF(q), with the inverse of its trace
/// Gram matrix so coordinates can be read off by traces.
#[derive(Debug, Clone)]
pub struct Basis {
    q: u64,
    elements: Vec<Elem>,
    /// `gram_inv * (Tr(x b_1), ..., Tr(x b_m))^T` gives the coordinates of `x`.
    gram_inv: Matrix,
}

impl Basis {
    pub fn new(field: &Field, q: u64, elements: Vec<Elem>) -> Result<Basis, GfError> {
        let m = field.subfield_index(q)? as usize;
        if elements.len() != m {
            return Err(GfError::Dimension(format!(
                "a basis of GF({}) over GF({q}) needs {m} elements, got {}",
                field.order(),
                elements.len()
            )));
        }
        let mut aug = Matrix::zeros(m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                aug.set(i, j, field.trace(field.mul(elements[i], elements[j]), q));
            }
            aug.set(i, m + i, 1);
        }
        let pivots = aug.rref(field);
        if pivots.len() < m || pivots[m - 1] >= m {
            return Err(GfError::DependentBasis { q });
        }
        let gram_inv = Matrix::from_rows(m, (0..m).map(|r| aug.row(r)[m..].to_vec()).collect());
        Ok(Basis {
            q,
            elements,
            gram_inv,
        })
    }

    /// The polynomial basis `1, alpha, ..., alpha^(m-1)`.
    pub fn polynomial(field: &Field, q: u64) -> Result<Basis, GfError> {
        let m = field.subfield_index(q)?;
        Basis::new(field, q, (0..m).map(|i| field.exp(i as i64)).collect())
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `x` over GF(q); `x = sum_j c_j b_j`.
    pub fn coordinates(&self, field: &Field, x: Elem) -> Vec<Elem> {
        let traces: Vec<Elem> = self
            .elements
            .iter()
            .map(|&b| field.trace(field.mul(x, b), self.q))
            .collect();
        (0..self.dim())
            .map(|j| dot(field, self.gram_inv.row(j), &traces))
            .collect()
    }
}

/// Expands a matrix over GF(q^m) into one over GF(q): each row becomes `m`
/// rows, row `j` holding the `j`-th basis coordinate of every entry.
pub fn expand_matrix(field: &Field, m: &Matrix, basis: &Basis) -> Matrix {
    let dim = basis.dim();
    let mut out = Matrix::zeros(m.rows() * dim, m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            for (j, x) in basis.coordinates(field, m.get(r, c)).into_iter().enumerate() {
                out.set(r * dim + j, c, x);
            }
        }
    }
    out
}
