//! Dense exact linear algebra over a tower.

use crate::field::{FieldElement, TowerRef};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(t: &TowerRef, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::zero(t); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * self.get(r, j));
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

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c + 1..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
                m.set(i, c, FieldElement::zero(m.get(r, c).tower()));
            }
            r += 1;
        }
        r
    }

    /// A basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self, t: &TowerRef) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![FieldElement::zero(t); m.cols];
                v[f] = FieldElement::one(t);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Determinant by Gaussian elimination; square matrices only.
    pub fn det(&self, t: &TowerRef) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = FieldElement::one(t);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return FieldElement::zero(t);
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c + 1..n {
                    if m.get(c, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn mul_vec(&self, v: &[FieldElement], t: &TowerRef) -> Vec<FieldElement> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::zero(t), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Tower;

    fn m(t: &TowerRef, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_int(t, x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let q = Tower::rationals();
        let a = m(&q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel(&q);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0], &q).iter().all(FieldElement::is_zero));
    }

    #[test]
    fn determinant() {
        let q = Tower::rationals();
        let a = m(&q, &[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        // 0*(1-0) - 2*(3-0) + 1*(3-1) = -4
        assert_eq!(a.det(&q), FieldElement::from_int(&q, -4));
        let s = m(&q, &[&[1, 2], &[2, 4]]);
        assert!(s.det(&q).is_zero());
    }
}
