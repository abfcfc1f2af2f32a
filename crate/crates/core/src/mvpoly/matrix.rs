use std::fmt;

use crate::error::{Error, Result};
use crate::gfq::{same_field, Gf};

/// Dense matrix over `F_q`, row-major. Text form: `1,1,0;0,1,0;0,0,1`.
#[derive(Clone)]
pub struct MatrixGF {
    field: Gf,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PartialEq for MatrixGF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && same_field(&self.field, &other.field)
    }
}

impl Eq for MatrixGF {}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixGF({self})")
    }
}

impl fmt::Display for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| self.row(r).iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl MatrixGF {
    pub fn zeros(field: &Gf, rows: usize, cols: usize) -> MatrixGF {
        MatrixGF { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Gf, n: usize) -> MatrixGF {
        let mut m = MatrixGF::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Gf, rows: &[Vec<u32>]) -> Result<MatrixGF> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        if rows.iter().flatten().any(|&c| c >= field.q()) {
            return Err(Error::OutOfRange("entry is not a field code".into()));
        }
        Ok(MatrixGF { field: field.clone(), rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn parse(s: &str, field: &Gf) -> Result<MatrixGF> {
        let rows = s
            .trim()
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad entry `{c}`"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixGF::from_rows(field, &rows)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.cols != other.rows || !same_field(&self.field, &other.field) {
            return Err(Error::Dimension("incompatible matrix product".into()));
        }
        let f = &self.field;
        let mut out = MatrixGF::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut t = MatrixGF::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (MatrixGF, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            let pivot_row: Vec<u32> = m.row(r)[c..].to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let base = i * m.cols + c;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv != 0 {
                        m.data[base + k] = f.sub(m.data[base + k], f.mul(factor, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn row_space_contains(&self, v: &[u32]) -> bool {
        let mut rs = RowSpace::new(&self.field, self.cols);
        for r in 0..self.rows {
            rs.insert(self.row(r).to_vec());
        }
        rs.contains(v)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Incrementally built row space with membership queries.
#[derive(Clone)]
pub struct RowSpace {
    field: Gf,
    width: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl RowSpace {
    pub fn new(field: &Gf, width: usize) -> RowSpace {
        RowSpace { field: field.clone(), width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    /// Adds `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&c| c != 0) else { return false };
        let inv = self.field.inv(v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }
}
