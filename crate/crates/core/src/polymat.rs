//! Matrices over `F[z]`: maximal minors, column Hermite reduction, right
//! inverses, parity checks and strong equivalence.

use std::sync::Arc;

use crate::automorphism::permutations;
use crate::error::{Error, Result};
use crate::field::{poly_gcd, Fe, Field, Poly};
use crate::linalg;

#[derive(Clone, Debug)]
pub struct PolyMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    e: Vec<Vec<Poly>>,
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.e == other.e && *self.field == *other.field
    }
}

impl Eq for PolyMatrix {}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl PolyMatrix {
    pub fn new(field: Arc<Field>, e: Vec<Vec<Poly>>) -> Result<Self> {
        let rows = e.len();
        let cols = e.first().map_or(0, |r| r.len());
        if let Some(r) = e.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch { expected: cols, got: r.len() });
        }
        Ok(PolyMatrix { field, rows, cols, e })
    }

    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        PolyMatrix { field, rows, cols, e: vec![vec![Poly::zero(); cols]; rows] }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.e[i][i] = Poly::one();
        }
        m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.e
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.e[i][j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.e[i]
    }

    pub fn mul(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != o.rows {
            return Err(Error::LengthMismatch { expected: self.cols, got: o.rows });
        }
        let f = &*self.field;
        let mut e = vec![vec![Poly::zero(); o.cols]; self.rows];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                for m in 0..self.cols {
                    if !self.e[i][m].is_zero() && !o.e[m][j].is_zero() {
                        *out = out.add(&self.e[i][m].mul(&o.e[m][j], f), f);
                    }
                }
            }
        }
        Ok(PolyMatrix { field: self.field.clone(), rows: self.rows, cols: o.cols, e })
    }

    /// Row vector times matrix, `u * M`.
    pub fn vec_mul(&self, u: &[Poly]) -> Result<Vec<Poly>> {
        if u.len() != self.rows {
            return Err(Error::LengthMismatch { expected: self.rows, got: u.len() });
        }
        let f = &*self.field;
        Ok((0..self.cols)
            .map(|j| u.iter().zip(&self.e).fold(Poly::zero(), |acc, (ui, row)| acc.add(&ui.mul(&row[j], f), f)))
            .collect())
    }

    pub fn transpose(&self) -> PolyMatrix {
        let e = (0..self.cols).map(|j| (0..self.rows).map(|i| self.e[i][j].clone()).collect()).collect();
        PolyMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, e }
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let e = self.e.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        PolyMatrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), e }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|r| r.iter().all(|p| p.is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, got: self.cols });
        }
        let f = &*self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one());
        }
        let mut m = self.e.clone();
        let mut prev = Poly::one();
        let mut negate = false;
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Poly::zero());
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k], f).sub(&m[i][k].mul(&m[k][j], f), f);
                    m[i][j] = num.div_rem(&prev, f)?.0;
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { d.neg(f) } else { d })
    }

    /// All `k x k` minors for `k = rows`, in lexicographic column order.
    pub fn maximal_minors(&self) -> Result<Vec<Poly>> {
        combinations(self.cols, self.rows).iter().map(|c| self.select_columns(c).det()).collect()
    }

    pub fn has_full_row_rank(&self) -> Result<bool> {
        if self.rows > self.cols {
            return Ok(false);
        }
        Ok(self.maximal_minors()?.iter().any(|m| !m.is_zero()))
    }

    /// Maximum degree of the `k x k` minors.
    pub fn complexity(&self) -> Result<usize> {
        self.maximal_minors()?.iter().filter_map(|m| m.degree()).max().ok_or(Error::RankDeficient)
    }

    /// Row degrees; zero rows count as degree 0.
    pub fn row_degrees(&self) -> Vec<usize> {
        self.e.iter().map(|r| r.iter().filter_map(|p| p.degree()).max().unwrap_or(0)).collect()
    }

    pub fn is_right_invertible(&self) -> Result<bool> {
        let minors = self.maximal_minors()?;
        if minors.iter().all(|m| m.is_zero()) {
            return Err(Error::RankDeficient);
        }
        let mut g = Poly::zero();
        for m in &minors {
            if !m.is_zero() {
                g = if g.is_zero() { m.monic(&self.field) } else { poly_gcd(&g, m, &self.field)? };
            }
        }
        Ok(g == Poly::one())
    }

    pub fn is_minimal(&self) -> Result<bool> {
        Ok(self.row_degrees().iter().sum::<usize>() == self.complexity()?)
    }

    /// Row degrees in ascending order; requires minimality.
    pub fn forney_indices(&self) -> Result<Vec<usize>> {
        if !self.is_minimal()? {
            return Err(Error::NotMinimal);
        }
        let mut d = self.row_degrees();
        d.sort_unstable();
        Ok(d)
    }

    fn swap_cols(m: &mut [Vec<Poly>], a: usize, b: usize) {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
    }

    /// col_j -= q * col_i
    fn col_axpy(m: &mut [Vec<Poly>], j: usize, i: usize, q: &Poly, f: &Field) {
        for r in m.iter_mut() {
            if !r[i].is_zero() {
                let t = r[i].mul(q, f);
                r[j] = r[j].sub(&t, f);
            }
        }
    }

    /// Unimodular `U` with `G U = [L | 0]`, `L` lower triangular; returns `(U, L)`.
    pub fn column_hermite(&self) -> Result<(PolyMatrix, PolyMatrix)> {
        let f = &*self.field;
        let (k, n) = (self.rows, self.cols);
        if k > n {
            return Err(Error::RankDeficient);
        }
        let mut a = self.e.clone();
        let mut u = PolyMatrix::identity(self.field.clone(), n).e;
        for i in 0..k {
            loop {
                let pivot = (i..n).filter(|&j| !a[i][j].is_zero()).min_by_key(|&j| a[i][j].degree());
                let Some(p) = pivot else {
                    return Err(Error::RankDeficient);
                };
                Self::swap_cols(&mut a, i, p);
                Self::swap_cols(&mut u, i, p);
                let mut done = true;
                for j in i + 1..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let q = a[i][j].div_rem(&a[i][i], f)?.0;
                    Self::col_axpy(&mut a, j, i, &q, f);
                    Self::col_axpy(&mut u, j, i, &q, f);
                    if !a[i][j].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
        }
        let l = a.iter().map(|r| r[..k].to_vec()).collect();
        Ok((
            PolyMatrix { field: self.field.clone(), rows: n, cols: n, e: u },
            PolyMatrix { field: self.field.clone(), rows: k, cols: k, e: l },
        ))
    }

    /// A polynomial `G~` with `G G~ = I_k`.
    pub fn right_inverse(&self) -> Result<PolyMatrix> {
        let f = &*self.field;
        let (u, l) = self.column_hermite()?;
        let k = self.rows;
        let mut diag_inv = Vec::with_capacity(k);
        for i in 0..k {
            if l.e[i][i].degree() != Some(0) {
                return Err(Error::NotRightInvertible);
            }
            diag_inv.push(f.inv(l.e[i][i].leading())?);
        }
        // forward substitution for L X = I
        let mut x = vec![vec![Poly::zero(); k]; k];
        for j in 0..k {
            for i in 0..k {
                let mut acc = if i == j { Poly::one() } else { Poly::zero() };
                for m in 0..i {
                    acc = acc.sub(&l.e[i][m].mul(&x[m][j], f), f);
                }
                x[i][j] = acc.scale(diag_inv[i], f);
            }
        }
        let x = PolyMatrix { field: self.field.clone(), rows: k, cols: k, e: x };
        let first: Vec<usize> = (0..k).collect();
        u.select_columns(&first).mul(&x)
    }

    /// `H` of size `n x (n-k)` with `G H = 0`, taken from a unimodular completion.
    pub fn parity_check(&self) -> Result<PolyMatrix> {
        if !self.is_right_invertible()? {
            return Err(Error::NotRightInvertible);
        }
        let (u, _) = self.column_hermite()?;
        let rest: Vec<usize> = (self.rows..self.cols).collect();
        Ok(u.select_columns(&rest))
    }

    /// Message `u` with `u G = w`, if `w` lies in the row module.
    pub fn membership(&self, w: &[Poly]) -> Result<Option<Vec<Poly>>> {
        let inv = self.right_inverse()?;
        let u = inv.vec_mul(w)?;
        Ok((self.vec_mul(&u)? == w).then_some(u))
    }

    /// Total Hamming weight of all coefficients.
    pub fn weight(&self) -> usize {
        self.e.iter().flatten().map(|p| p.weight()).sum()
    }

    pub fn format_entries(&self) -> Vec<Vec<String>> {
        self.e.iter().map(|r| r.iter().map(|p| p.format("z", &self.field)).collect()).collect()
    }
}

/// Total Hamming weight of a vector over `F[z]`.
pub fn weight(v: &[Poly]) -> usize {
    v.iter().map(|p| p.weight()).sum()
}

/// Witness for `im G = im(G' P D)`: `perm[j] = pi(j)` (1-based) says column `j` of `G`
/// corresponds to column `pi(j)` of `G'`, scaled by `scale[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub perm: Vec<usize>,
    pub scale: Vec<Fe>,
}

/// Search limits for [`strong_equivalence`].
#[derive(Clone, Copy, Debug)]
pub struct EquivalenceCaps {
    pub max_n: usize,
    pub max_q: u32,
}

impl Default for EquivalenceCaps {
    fn default() -> Self {
        EquivalenceCaps { max_n: 8, max_q: 9 }
    }
}

/// Applies a column permutation and scaling: column `j` of the result is
/// `scale[j] * m[:, perm[j]-1]`.
pub fn permute_scale(m: &PolyMatrix, eq: &Equivalence) -> PolyMatrix {
    let f = &*m.field;
    let e = m.e.iter().map(|r| eq.perm.iter().zip(&eq.scale).map(|(&p, &d)| r[p - 1].scale(d, f)).collect()).collect();
    PolyMatrix { field: m.field.clone(), rows: m.rows, cols: m.cols, e }
}

/// Decides whether two right-invertible generator matrices define strongly
/// equivalent codes. For each column permutation the admissible scalings form
/// the nullspace of a linear system over `F`, searched for a vector without zeros.
pub fn strong_equivalence(g: &PolyMatrix, other: &PolyMatrix, caps: EquivalenceCaps) -> Result<Option<Equivalence>> {
    if g.rows != other.rows || g.cols != other.cols {
        return Err(Error::LengthMismatch { expected: g.cols, got: other.cols });
    }
    let f = &*g.field;
    let n = g.cols;
    if n > caps.max_n || f.size() > caps.max_q {
        return Err(Error::SearchSpaceTooLarge { n, q: f.size() });
    }
    if !other.is_right_invertible()? {
        return Err(Error::NotRightInvertible);
    }
    let h = g.parity_check()?;
    let idx: Vec<usize> = (0..n).collect();
    for perm in permutations(&idx) {
        // unknown d_j: sum_j d_j other[:, perm[j]] h[j, :] = 0
        let mut blocks: Vec<Vec<Poly>> = Vec::with_capacity(n);
        for (j, &pj) in perm.iter().enumerate() {
            let mut b = Vec::new();
            for r in 0..other.rows {
                for c in 0..h.cols {
                    b.push(other.e[r][pj].mul(&h.e[j][c], f));
                }
            }
            blocks.push(b);
        }
        let entries = blocks[0].len();
        let max_len = blocks.iter().flatten().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let mut system = Vec::new();
        for e in 0..entries {
            for t in 0..max_len {
                let row: Vec<Fe> = blocks.iter().map(|b| b[e].coeff(t)).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    system.push(row);
                }
            }
        }
        let basis = linalg::nullspace(f, &system, n);
        if basis.is_empty() {
            continue;
        }
        if let Some(d) = nonzero_combination(f, &basis, n) {
            let eq = Equivalence { perm: perm.iter().map(|p| p + 1).collect(), scale: d };
            return Ok(Some(eq));
        }
    }
    Ok(None)
}

fn nonzero_combination(f: &Field, basis: &[Vec<Fe>], n: usize) -> Option<Vec<Fe>> {
    let ones = vec![Fe::ONE; n];
    let mut probe = basis.to_vec();
    probe.push(ones.clone());
    if linalg::rank(f, &probe) == basis.len() {
        return Some(ones);
    }
    let q = f.size() as u64;
    let m = basis.len() as u32;
    let total = q.checked_pow(m).unwrap_or(u64::MAX).min(1 << 22);
    for mut code in 1..total {
        let mut v = vec![Fe::ZERO; n];
        for b in basis {
            let c = Fe((code % q) as u32);
            code /= q;
            if c.is_zero() {
                continue;
            }
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = f.add(*vi, f.mul(c, bi));
            }
        }
        if v.iter().all(|c| !c.is_zero()) {
            let inv = f.inv(v[0]).unwrap();
            return Some(v.into_iter().map(|c| f.mul(c, inv)).collect());
        }
    }
    None
}
