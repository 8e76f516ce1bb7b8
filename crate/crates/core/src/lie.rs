//! Abstract finite-dimensional Lie algebras over the rationals: structure
//! constants extracted from concrete vector fields, center, derived series,
//! Killing form, Levi decomposition checks, and the quotient by the center.
//! All linear algebra is exact.

use crate::expr::normal::{as_monomial_coeffs, Monomial};
use crate::expr::ExprError;
use crate::jets::{lie_bracket, VectorField};
use crate::linalg::{QMat, Subspace};
use crate::rational::{int, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("structure constants are not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0},{1},{2})")]
    JacobiFails(usize, usize, usize),
    #[error("bracket [{i},{j}] is not in the span of the given fields; remainder {remainder}")]
    NotClosed {
        i: usize,
        j: usize,
        remainder: String,
    },
    #[error("dimension mismatch: expected {0} coefficients")]
    Dimension(usize),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Element written in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub coeffs: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(coeffs: Vec<Rational>) -> AlgebraElement {
        AlgebraElement { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> AlgebraElement {
        AlgebraElement {
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn basis_vector(dim: usize, i: usize) -> AlgebraElement {
        let mut coeffs = vec![int(0); dim];
        coeffs[i] = int(1);
        AlgebraElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Finite-dimensional Lie algebra given by exact structure constants
/// `[e_i, e_j] = sum_k c[i][j][k] e_k`. The constructor checks antisymmetry
/// and the Jacobi identity exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    pub fn new(
        labels: Vec<String>,
        c: Vec<Vec<Vec<Rational>>>,
    ) -> Result<LieAlgebra, LieError> {
        let dim = labels.len();
        if c.len() != dim || c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(LieError::Dimension(dim));
        }
        let algebra = LieAlgebra { dim, labels, c };
        algebra.check_antisymmetry()?;
        algebra.check_jacobi()?;
        Ok(algebra)
    }

    fn check_antisymmetry(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(LieError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    let a = self.bracket_vec(
                        &self.bracket_basis(i, j),
                        &basis_vec(self.dim, k),
                    );
                    let b = self.bracket_vec(
                        &self.bracket_basis(j, k),
                        &basis_vec(self.dim, i),
                    );
                    let c = self.bracket_vec(
                        &self.bracket_basis(k, i),
                        &basis_vec(self.dim, j),
                    );
                    for idx in 0..self.dim {
                        let sum = &a[idx] + &b[idx] + &c[idx];
                        if !sum.is_zero() {
                            return Err(LieError::JacobiFails(i, j, k));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.c[i][j].clone()
    }

    pub fn bracket_vec(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![int(0); self.dim];
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let scale = &a[i] * &b[j];
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &scale * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.bracket_vec(&a.coeffs, &b.coeffs))
    }

    /// Matrix of `ad(v)` acting on coefficient vectors (columns are the
    /// images of the basis).
    pub fn ad(&self, v: &[Rational]) -> QMat {
        let mut m = QMat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket_vec(v, &basis_vec(self.dim, j));
            for k in 0..self.dim {
                m[(k, j)] = col[k].clone();
            }
        }
        m
    }

    /// Exact structure constants from concrete vector fields; errors with
    /// the offending pair and unexpandable remainder if the span does not
    /// close under brackets.
    pub fn from_vector_fields(fields: &[VectorField]) -> Result<LieAlgebra, LieError> {
        let dim = fields.len();
        // Feature basis: every Laurent monomial appearing in any component,
        // tagged with its component slot.
        let mut features: Vec<Vec<BTreeMap<Monomial, Rational>>> = Vec::with_capacity(dim);
        for f in fields {
            features.push(vec![
                as_monomial_coeffs(&f.xi1)?,
                as_monomial_coeffs(&f.xi2)?,
                as_monomial_coeffs(&f.phi)?,
            ]);
        }
        let mut keys: Vec<(usize, Monomial)> = Vec::new();
        let collect = |maps: &[BTreeMap<Monomial, Rational>], keys: &mut Vec<(usize, Monomial)>| {
            for (slot, map) in maps.iter().enumerate() {
                for m in map.keys() {
                    let key = (slot, m.clone());
                    if !keys.contains(&key) {
                        keys.push(key);
                    }
                }
            }
        };
        for f in &features {
            collect(f, &mut keys);
        }

        let mut bracket_features: Vec<Vec<Vec<BTreeMap<Monomial, Rational>>>> =
            vec![Vec::new(); dim];
        for i in 0..dim {
            for j in 0..dim {
                let b = lie_bracket(&fields[i], &fields[j])?;
                let maps = vec![
                    as_monomial_coeffs(&b.xi1)?,
                    as_monomial_coeffs(&b.xi2)?,
                    as_monomial_coeffs(&b.phi)?,
                ];
                collect(&maps, &mut keys);
                bracket_features[i].push(maps);
            }
        }

        let to_vec = |maps: &[BTreeMap<Monomial, Rational>]| -> Vec<Rational> {
            keys.iter()
                .map(|(slot, m)| maps[*slot].get(m).cloned().unwrap_or_else(|| int(0)))
                .collect()
        };
        let mut a = QMat::zeros(keys.len(), dim);
        for (col, f) in features.iter().enumerate() {
            let v = to_vec(f);
            for (row, value) in v.into_iter().enumerate() {
                a[(row, col)] = value;
            }
        }

        let mut c = vec![vec![vec![int(0); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let target = to_vec(&bracket_features[i][j]);
                match a.solve(&target) {
                    Some(coeffs) => {
                        c[i][j] = coeffs;
                    }
                    None => {
                        let b = lie_bracket(&fields[i], &fields[j])?;
                        return Err(LieError::NotClosed {
                            i,
                            j,
                            remainder: b.to_string(),
                        });
                    }
                }
            }
        }
        let labels = fields.iter().map(|f| f.label.clone()).collect();
        LieAlgebra::new(labels, c)
    }

    /// Null space of the combined adjoint action.
    pub fn center(&self) -> Subspace {
        let mut rows = Vec::with_capacity(self.dim * self.dim);
        // v central iff sum_i v_i c[i][j][k] = 0 for all j, k
        for j in 0..self.dim {
            for k in 0..self.dim {
                rows.push((0..self.dim).map(|i| self.c[i][j][k].clone()).collect());
            }
        }
        let m = QMat::from_rows(rows);
        Subspace::from_vectors(self.dim, &m.nullspace())
    }

    /// Derived subalgebra of a subspace: span of pairwise brackets.
    pub fn derived_of(&self, s: &Subspace) -> Subspace {
        let basis = s.basis();
        let mut gens = Vec::new();
        for (i, a) in basis.iter().enumerate() {
            for b in basis.iter().skip(i + 1) {
                gens.push(self.bracket_vec(a, b));
            }
        }
        Subspace::from_vectors(self.dim, &gens)
    }

    /// `g ⊇ g' ⊇ g'' ⊇ ...` until stabilization. The stabilized term is
    /// recorded once when nonzero (witnessing non-solvability); the zero
    /// terminal is recorded without repetition.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim)];
        loop {
            let last = series.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let next = self.derived_of(last);
            let stabilized = next == *last;
            series.push(next);
            if stabilized {
                break;
            }
            if series.last().unwrap().dim() == 0 {
                break;
            }
        }
        series
    }

    pub fn is_solvable_subspace(&self, s: &Subspace) -> bool {
        let mut current = s.clone();
        loop {
            if current.dim() == 0 {
                return true;
            }
            let next = self.derived_of(&current);
            if next == current {
                return false;
            }
            current = next;
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        for i in 0..self.dim {
            for b in s.basis() {
                let v = self.bracket_vec(&basis_vec(self.dim, i), b);
                if !s.contains(&v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.derived_of(s).is_subspace_of(s)
    }

    /// `K(e_i, e_j) = tr(ad e_i · ad e_j)`, exact.
    pub fn killing_form(&self) -> QMat {
        let ads: Vec<QMat> = (0..self.dim)
            .map(|i| self.ad(&basis_vec(self.dim, i)))
            .collect();
        let mut k = QMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let t = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    /// Killing form restricted to a subspace basis (Gram matrix).
    pub fn killing_on(&self, basis: &[Vec<Rational>]) -> QMat {
        let k = self.killing_form();
        let n = basis.len();
        let mut out = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = int(0);
                for (r, vr) in basis[i].iter().enumerate() {
                    if vr.is_zero() {
                        continue;
                    }
                    for (c, vc) in basis[j].iter().enumerate() {
                        if vc.is_zero() {
                            continue;
                        }
                        acc += vr * vc * &k[(r, c)];
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn killing_pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let k = self.killing_form();
        let mut acc = int(0);
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !b[j].is_zero() {
                    acc += &a[i] * &b[j] * &k[(i, j)];
                }
            }
        }
        acc
    }

    /// Killing-orthogonal complement of the derived algebra: the radical,
    /// by Cartan's criterion.
    pub fn killing_radical(&self) -> Subspace {
        let derived = self.derived_of(&Subspace::full(self.dim));
        let k = self.killing_form();
        let rows: Vec<Vec<Rational>> = derived
            .basis()
            .iter()
            .map(|w| {
                (0..self.dim)
                    .map(|i| {
                        let mut acc = int(0);
                        for (j, wj) in w.iter().enumerate() {
                            if !wj.is_zero() {
                                acc += wj * &k[(i, j)];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return Subspace::full(self.dim);
        }
        let m = QMat::from_rows(rows);
        Subspace::from_vectors(self.dim, &m.nullspace())
    }

    /// Levi decomposition checks for a candidate `g = r ⋉ s`.
    pub fn verify_levi(&self, r: &Subspace, s: &Subspace) -> LeviReport {
        let direct_sum =
            r.dim() + s.dim() == self.dim && r.sum(s).dim() == self.dim;
        let r_ideal = self.is_ideal(r);
        let r_solvable = self.is_solvable_subspace(r) || r.dim() == 0;
        let s_subalgebra = self.is_subalgebra(s);
        let s_killing_det = self.restricted_killing_det(s);
        let s_killing_nondegenerate = !s_killing_det.is_zero() || s.dim() == 0;
        let r_is_radical = *r == self.killing_radical();
        LeviReport {
            direct_sum,
            r_ideal,
            r_solvable,
            s_subalgebra,
            s_killing_det,
            s_killing_nondegenerate,
            r_is_radical,
        }
    }

    /// Determinant of the Killing form of `s` computed intrinsically, i.e.
    /// from the bracket restricted to `s` (requires `s` to be a
    /// subalgebra; returns 0 otherwise).
    pub fn restricted_killing_det(&self, s: &Subspace) -> Rational {
        if s.dim() == 0 {
            return int(1);
        }
        if !self.is_subalgebra(s) {
            return int(0);
        }
        match self.subalgebra(s) {
            Ok(sub) => sub.killing_form().det(),
            Err(_) => int(0),
        }
    }

    /// The abstract algebra carried by a bracket-closed subspace.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LieAlgebra, LieError> {
        let basis = s.basis();
        let n = basis.len();
        let mut a = QMat::zeros(self.dim, n);
        for (col, v) in basis.iter().enumerate() {
            for row in 0..self.dim {
                a[(row, col)] = v[row].clone();
            }
        }
        let mut c = vec![vec![vec![int(0); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let b = self.bracket_vec(&basis[i], &basis[j]);
                let coeffs = a.solve(&b).ok_or(LieError::NotClosed {
                    i,
                    j,
                    remainder: "bracket leaves the subspace".into(),
                })?;
                c[i][j] = coeffs;
            }
        }
        let labels = (1..=n).map(|i| format!("s{i}")).collect();
        LieAlgebra::new(labels, c)
    }

    /// Quotient by the center, on the standard complement of the center's
    /// pivot coordinates. Returns the quotient algebra and the projection
    /// of the original basis.
    pub fn quotient_by_center(&self) -> (LieAlgebra, CenterProjection) {
        let z = self.center();
        let complement = z.standard_complement();
        let n = complement.len();
        // columns: complement basis then center basis
        let mut a = QMat::zeros(self.dim, self.dim);
        for (col, v) in complement.iter().chain(z.basis().iter()).enumerate() {
            for row in 0..self.dim {
                a[(row, col)] = v[row].clone();
            }
        }
        let project = |v: &[Rational]| -> Vec<Rational> {
            let coords = a.solve(v).expect("complement plus center spans");
            coords[..n].to_vec()
        };
        let mut c = vec![vec![vec![int(0); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let b = self.bracket_vec(&complement[i], &complement[j]);
                c[i][j] = project(&b);
            }
        }
        let labels: Vec<String> = (1..=n).map(|i| format!("Y{i}")).collect();
        let quotient = LieAlgebra::new(labels, c).expect("quotient inherits the identities");
        let basis_images = (0..self.dim)
            .map(|i| project(&basis_vec(self.dim, i)))
            .collect();
        (
            quotient,
            CenterProjection {
                complement,
                basis_images,
            },
        )
    }
}

/// Projection data for a quotient by the center.
#[derive(Clone, Debug)]
pub struct CenterProjection {
    /// Representatives of the quotient basis inside the original algebra.
    pub complement: Vec<Vec<Rational>>,
    /// Images of the original basis vectors in quotient coordinates.
    pub basis_images: Vec<Vec<Rational>>,
}

/// Itemized outcome of the Levi checks.
#[derive(Clone, Debug)]
pub struct LeviReport {
    pub direct_sum: bool,
    pub r_ideal: bool,
    pub r_solvable: bool,
    pub s_subalgebra: bool,
    pub s_killing_det: Rational,
    pub s_killing_nondegenerate: bool,
    pub r_is_radical: bool,
}

impl LeviReport {
    pub fn pass(&self) -> bool {
        self.direct_sum
            && self.r_ideal
            && self.r_solvable
            && self.s_subalgebra
            && self.s_killing_nondegenerate
            && self.r_is_radical
    }
}

pub(crate) fn basis_vec(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![int(0); dim];
    v[i] = int(1);
    v
}
