//! Convolutional codes in `F[z]^n` and their link to `A[z; sigma]`.

use crate::error::{Error, Result};
use crate::field::{Fe, Poly};
use crate::polymat::PolyMatrix;
use crate::skew::{SkewPoly, SkewRing};

/// `p`: sends `(v_0, ..., v_{n-1})` to `sum_t z^t (sum_j v_{j,t} x^j)`.
pub fn p_map(skew: &SkewRing, v: &[Poly]) -> Result<SkewPoly> {
    let ring = skew.ring();
    let n = ring.n();
    if v.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: v.len() });
    }
    let len = v.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut c = Vec::with_capacity(len);
    for t in 0..len {
        let coeffs: Vec<Fe> = v.iter().map(|p| p.coeff(t)).collect();
        c.push(ring.from_coeffs(coeffs)?);
    }
    skew.from_coeffs(c)
}

/// `v`, the inverse of [`p_map`].
pub fn v_map(skew: &SkewRing, f: &SkewPoly) -> Vec<Poly> {
    let n = skew.ring().n();
    (0..n).map(|j| Poly::new(f.coeffs().iter().map(|a| a.coeff(j)).collect())).collect()
}

/// Stacks the rows `v(x^i g^(l))`, `i < kappa_l`, for each `l` in the support, in
/// increasing `l`.
pub fn generator_matrix_from_reduced(skew: &SkewRing, g: &SkewPoly) -> Result<PolyMatrix> {
    skew.check(g)?;
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !skew.is_reduced(g) {
        return Err(Error::NotReduced);
    }
    let ring = skew.ring();
    let mut rows = Vec::new();
    for l in skew.support(g) {
        let gl = skew.component(g, l)?;
        for i in 0..ring.kappa(l)? {
            rows.push(v_map(skew, &skew.left_scale(&ring.x_pow(i), &gl)));
        }
    }
    PolyMatrix::new(skew.field().clone(), rows)
}

/// A convolutional code given by a minimal right-invertible generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCode {
    generator: PolyMatrix,
    delta: usize,
    forney: Vec<usize>,
    support: Vec<usize>,
    reduced_generator: Option<SkewPoly>,
}

impl ConvCode {
    pub fn from_matrix(g: PolyMatrix) -> Result<Self> {
        if !g.is_right_invertible()? {
            return Err(Error::NotRightInvertible);
        }
        let delta = g.complexity()?;
        let forney = g.forney_indices()?;
        Ok(ConvCode { generator: g, delta, forney, support: Vec::new(), reduced_generator: None })
    }

    /// The code `v(<g>)` of a reduced `g`; fails unless the matrix is right invertible.
    pub fn from_reduced(skew: &SkewRing, g: &SkewPoly) -> Result<Self> {
        let m = generator_matrix_from_reduced(skew, g)?;
        let mut code = ConvCode::from_matrix(m)?;
        code.support = skew.support(g);
        code.reduced_generator = Some(g.clone());
        Ok(code)
    }

    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// `(n, k, delta)`
    pub fn params(&self) -> (usize, usize, usize) {
        (self.n(), self.k(), self.delta)
    }

    /// Forney indices in ascending order.
    pub fn forney(&self) -> &[usize] {
        &self.forney
    }

    /// Largest Forney index (memory).
    pub fn memory(&self) -> usize {
        self.forney.last().copied().unwrap_or(0)
    }

    /// 1-based component indices; empty when built from a bare matrix.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn reduced_generator(&self) -> Option<&SkewPoly> {
        self.reduced_generator.as_ref()
    }

    pub fn contains(&self, w: &[Poly]) -> Result<bool> {
        Ok(self.generator.membership(w)?.is_some())
    }

    pub fn encode(&self, u: &[Poly]) -> Result<Vec<Poly>> {
        self.generator.vec_mul(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn binary7() -> SkewRing {
        parse::skew_ring("GF(2)", 7, "x^5").unwrap()
    }

    const G: &str = "1+x^2+x^3+x^4+z*(x+x^2+x^3+x^5)+z^2*(1+x+x^4+x^6)";

    #[test]
    fn maps_are_inverse() {
        let s = binary7();
        let g = parse::skew_poly(&s, G).unwrap();
        let v = v_map(&s, &g);
        assert_eq!(v[0], parse::zpoly(s.field(), "1+z^2").unwrap());
        assert_eq!(p_map(&s, &v).unwrap(), g);
        assert_eq!(p_map(&s, &v[..3]), Err(Error::LengthMismatch { expected: 7, got: 3 }));
    }

    #[test]
    fn binary_code() {
        let s = binary7();
        let g = parse::skew_poly(&s, G).unwrap();
        let code = ConvCode::from_reduced(&s, &g).unwrap();
        assert_eq!(code.params(), (7, 3, 6));
        assert_eq!(code.forney(), &[2, 2, 2]);
        assert_eq!(code.support(), &[3]);
        let row = code.generator().row(0).to_vec();
        for shift in [s.ring().x_pow(1), s.ring().one()] {
            let f = s.left_scale(&shift, &p_map(&s, &row).unwrap());
            assert!(code.contains(&v_map(&s, &f)).unwrap());
        }
        let zf = s.mul(&s.z(), &p_map(&s, &row).unwrap());
        assert!(code.contains(&v_map(&s, &zf)).unwrap());
    }

    #[test]
    fn f4_first_code() {
        let s = parse::skew_ring("GF(4)", 3, "x^2").unwrap();
        let g = parse::skew_poly(&s, "e2 + z*e3").unwrap();
        let v = v_map(&s, &g);
        let want: Vec<Poly> =
            ["z+1", "a*z+a^2", "a^2*z+a"].iter().map(|t| parse::zpoly(s.field(), t).unwrap()).collect();
        assert_eq!(v, want);
        let code = ConvCode::from_reduced(&s, &g).unwrap();
        assert_eq!(code.params(), (3, 1, 1));
    }

    #[test]
    fn idempotent_is_block_code() {
        let s = binary7();
        let g = parse::skew_poly(&s, "e2").unwrap();
        let code = ConvCode::from_reduced(&s, &g).unwrap();
        assert_eq!(code.params(), (7, 3, 0));
        assert_eq!(code.forney(), &[0, 0, 0]);
        assert_eq!(generator_matrix_from_reduced(&s, &s.zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn non_reduced_rejected() {
        let s = parse::skew_ring("GF(4)", 3, "x^2").unwrap();
        let g = parse::skew_poly(&s, "e2 + z*e2 + e3").unwrap();
        assert_eq!(s.is_reduced(&g), false);
        assert_eq!(generator_matrix_from_reduced(&s, &g), Err(Error::NotReduced));
    }
}
