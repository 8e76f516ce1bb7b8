//! Small exact linear algebra over the rationals: reduced row echelon
//! forms, null spaces, determinants, and canonical subspaces. Everything
//! here is exact; no floating point.

use crate::rational::{int, Rational};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> QMat {
        QMat {
            rows,
            cols,
            data: vec![int(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = int(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> QMat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = int(0);
                for j in 0..self.cols {
                    acc += &self[(i, j)] * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut acc = int(0);
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Exact determinant by fraction-preserving Gaussian elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = int(1);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return int(0),
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &p;
                for c in col..n {
                    let sub = &factor * &m[(col, c)];
                    m[(r, c)] -= sub;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            m.swap_rows(pivot, row);
            let p = m[(row, col)].clone();
            for c in col..m.cols {
                m[(row, c)] = &m[(row, c)] / &p;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let sub = &factor * &m[(row, c)];
                    m[(r, c)] -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![int(0); self.cols];
            v[f] = int(1);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r[(prow, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `A x = b` exactly, if consistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len());
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![int(0); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r[(prow, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// A linear subspace held in canonical form: reduced echelon basis rows
/// with leading coefficient one. Equality of subspaces is structural
/// equality of the canonical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn from_vectors(ambient: usize, vectors: &[Vec<Rational>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: Vec::new(),
            };
        }
        let m = QMat::from_rows(vectors.to_vec());
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![int(0); ambient];
                v[i] = int(1);
                v
            })
            .collect();
        Subspace {
            ambient,
            basis: rows,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        QMat::from_rows(rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.clone());
        Subspace::from_vectors(self.ambient, &rows)
    }

    /// Standard basis vectors at the non-pivot coordinates: a complement.
    pub fn standard_complement(&self) -> Vec<Vec<Rational>> {
        let pivot_cols: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|v| v.is_one()).expect("rref row"))
            .collect();
        (0..self.ambient)
            .filter(|c| !pivot_cols.contains(c))
            .map(|c| {
                let mut v = vec![int(0); self.ambient];
                v[c] = int(1);
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let m = QMat::from_rows(vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])]);
        assert_eq!(m.rank(), 2);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r[(0, 0)], int(1));
        assert_eq!(r[(0, 1)], int(0));
    }

    #[test]
    fn determinant_exact() {
        let m = QMat::from_rows(vec![
            vec![int(0), int(0), int(-2)],
            vec![int(0), int(2), int(0)],
            vec![int(-2), int(0), int(0)],
        ]);
        assert_eq!(m.det(), int(-8));
        let m = QMat::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]]);
        assert_eq!(m.det(), rat(1, 60));
    }

    #[test]
    fn nullspace_solves() {
        let m = QMat::from_rows(vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for b in &ns {
            assert!(m.mul_vec(b).iter().all(|x| x.is_zero()));
        }
        let b = v(&[3, 1]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let inconsistent = QMat::from_rows(vec![v(&[1, 0]), v(&[1, 0])]);
        assert!(inconsistent.solve(&v(&[1, 2])).is_none());
    }

    #[test]
    fn subspace_canonical_equality() {
        let s1 = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let s2 = Subspace::from_vectors(3, &[v(&[2, 2, 0]), v(&[1, 2, 1])]);
        assert_eq!(s1, s2);
        assert!(s1.contains(&v(&[1, 0, -1])));
        assert!(!s1.contains(&v(&[0, 0, 1])));
        assert_eq!(s1.dim(), 2);
    }

    #[test]
    fn complement_of_pivot_columns() {
        let s = Subspace::from_vectors(4, &[v(&[0, 0, 1, 0])]);
        let comp = s.standard_complement();
        assert_eq!(comp.len(), 3);
        assert_eq!(comp[0], v(&[1, 0, 0, 0]));
        assert_eq!(comp[1], v(&[0, 1, 0, 0]));
        assert_eq!(comp[2], v(&[0, 0, 0, 1]));
    }
}
