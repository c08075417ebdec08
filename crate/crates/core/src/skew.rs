//! The skew-polynomial ring `A[z; sigma]` with `a z = z sigma(a)`.
//!
//! Elements are written with right coefficients, `f = sum_j z^j f_j`.

use std::sync::Arc;

use crate::automorphism::Automorphism;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg;
use crate::ring::{Ring, RingElem};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    c: Vec<RingElem>,
}

impl SkewPoly {
    pub fn coeffs(&self) -> &[RingElem] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// z-degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Whether this lies in `A`, i.e. has z-degree at most 0.
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
}

/// A monomial `z^mu eps_k`, with `k` 1-based. Ordered by degree, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub z_degree: usize,
    pub index: usize,
}

/// Result of a greedy elementary-unit decomposition: `eliminators` are applied
/// left to right (`e_t ... e_1 u = 1`) and `u = factors[0] * factors[1] * ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub eliminators: Vec<SkewPoly>,
    pub factors: Vec<SkewPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRing {
    sigma: Automorphism,
}

impl SkewRing {
    pub fn new(sigma: Automorphism) -> Self {
        SkewRing { sigma }
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.sigma.ring()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.ring().field()
    }

    fn trim(mut c: Vec<RingElem>) -> SkewPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        SkewPoly { c }
    }

    pub fn from_coeffs(&self, c: Vec<RingElem>) -> Result<SkewPoly> {
        for x in &c {
            self.ring().check(x).map_err(|_| Error::MixedAlgebras)?;
        }
        Ok(Self::trim(c))
    }

    pub fn check(&self, f: &SkewPoly) -> Result<()> {
        for x in &f.c {
            self.ring().check(x).map_err(|_| Error::MixedAlgebras)?;
        }
        Ok(())
    }

    pub fn zero(&self) -> SkewPoly {
        SkewPoly::default()
    }

    pub fn one(&self) -> SkewPoly {
        self.constant(self.ring().one())
    }

    pub fn constant(&self, a: RingElem) -> SkewPoly {
        Self::trim(vec![a])
    }

    /// `z^j a`
    pub fn monomial(&self, j: usize, a: RingElem) -> SkewPoly {
        let mut c = vec![self.ring().zero(); j];
        c.push(a);
        Self::trim(c)
    }

    pub fn z(&self) -> SkewPoly {
        self.monomial(1, self.ring().one())
    }

    pub fn coeff(&self, f: &SkewPoly, j: usize) -> RingElem {
        f.c.get(j).cloned().unwrap_or_else(|| self.ring().zero())
    }

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let len = f.c.len().max(g.c.len());
        Self::trim((0..len).map(|j| self.ring().add(&self.coeff(f, j), &self.coeff(g, j))).collect())
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        let len = f.c.len().max(g.c.len());
        Self::trim((0..len).map(|j| self.ring().sub(&self.coeff(f, j), &self.coeff(g, j))).collect())
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly { c: f.c.iter().map(|x| self.ring().neg(x)).collect() }
    }

    /// `f * g = sum_t z^t sum_{j+l=t} sigma^l(f_j) g_l`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return self.zero();
        }
        let ring = self.ring();
        let mut out = vec![ring.zero(); f.c.len() + g.c.len() - 1];
        for (j, fj) in f.c.iter().enumerate() {
            if fj.is_zero() {
                continue;
            }
            let mut twisted = fj.clone();
            for (l, gl) in g.c.iter().enumerate() {
                if !gl.is_zero() {
                    out[j + l] = ring.add(&out[j + l], &ring.mul(&twisted, gl));
                }
                if l + 1 < g.c.len() {
                    twisted = self.sigma.apply(&twisted, 1);
                }
            }
        }
        Self::trim(out)
    }

    pub fn try_mul(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    /// Left multiplication by a constant, `a * f`.
    pub fn left_scale(&self, a: &RingElem, f: &SkewPoly) -> SkewPoly {
        self.mul(&self.constant(a.clone()), f)
    }

    /// The `k`-th component `eps_k * f`.
    pub fn component(&self, f: &SkewPoly, k: usize) -> Result<SkewPoly> {
        let k0 = self.ring().index(k)?;
        Ok(self.component0(f, k0))
    }

    pub(crate) fn component0(&self, f: &SkewPoly, k: usize) -> SkewPoly {
        let ring = self.ring();
        Self::trim(
            f.c.iter()
                .enumerate()
                .map(|(j, fj)| ring.mul(&ring.idempotents()[self.sigma.perm_pow0(k, j)], fj))
                .collect(),
        )
    }

    /// 1-based indices with nonzero component.
    pub fn support(&self, f: &SkewPoly) -> Vec<usize> {
        (0..self.ring().r()).filter(|&k| !self.component0(f, k).is_zero()).map(|k| k + 1).collect()
    }

    /// Nonzero terms `(nu, j)` (0-based `j`) of `f`, i.e. `eps_j f_nu != 0`.
    fn terms(&self, f: &SkewPoly) -> Vec<(usize, usize)> {
        let ring = self.ring();
        let mut out = Vec::new();
        for (nu, fnu) in f.c.iter().enumerate() {
            for (j, e) in ring.idempotents().iter().enumerate() {
                if !ring.mul(e, fnu).is_zero() {
                    out.push((nu, j));
                }
            }
        }
        out
    }

    /// Largest monomial `z^mu eps_k` occurring in `f`, with its coefficient `eps_k f_mu`.
    pub fn leading_monomial(&self, f: &SkewPoly) -> Result<(Monomial, RingElem)> {
        let ring = self.ring();
        let mu = f.degree().ok_or(Error::ZeroPolynomial)?;
        let fmu = &f.c[mu];
        for (k, e) in ring.idempotents().iter().enumerate().rev() {
            let c = ring.mul(e, fmu);
            if !c.is_zero() {
                return Ok((Monomial { z_degree: mu, index: k + 1 }, c));
            }
        }
        unreachable!("trimmed polynomial has a nonzero top coefficient")
    }

    /// No term of a component is right divisible by the leading monomial of
    /// another component. `z^nu eps_j` is right divisible by `z^mu eps_i`
    /// exactly when `j = i` and `nu >= mu`.
    pub fn is_reduced(&self, f: &SkewPoly) -> bool {
        let comps: Vec<(SkewPoly, Monomial)> = (0..self.ring().r())
            .map(|k| self.component0(f, k))
            .filter(|c| !c.is_zero())
            .map(|c| {
                let lm = self.leading_monomial(&c).unwrap().0;
                (c, lm)
            })
            .collect();
        for (a, (ca, _)) in comps.iter().enumerate() {
            let terms = self.terms(ca);
            for (b, (_, lm)) in comps.iter().enumerate() {
                if a == b {
                    continue;
                }
                if terms.iter().any(|&(nu, j)| j + 1 == lm.index && nu >= lm.z_degree) {
                    return false;
                }
            }
        }
        true
    }

    /// `u_{d,a,l} = 1 + z^d a eps_l`.
    pub fn elementary_unit(&self, d: usize, a: &RingElem, l: usize) -> Result<SkewPoly> {
        let ring = self.ring();
        let e = ring.idempotent(l)?;
        let term = self.monomial(d, ring.mul(a, e));
        Ok(self.add(&self.one(), &term))
    }

    /// Whether `u_{d,a,l}` is a unit.
    pub fn is_elementary_unit(&self, d: usize, a: &RingElem, l: usize) -> Result<bool> {
        let ring = self.ring();
        let al = ring.component(a, l)?;
        if d == 0 {
            return Ok(al != ring.neg(ring.idempotent(l)?));
        }
        Ok(al.is_zero() || !d.is_multiple_of(self.sigma.l_order(l)?))
    }

    /// `u_a(i) = 1 + z a sigma^i(eps_l)`; requires `sigma(eps_l) != eps_l`.
    pub fn simple_unit(&self, a: &RingElem, i: usize, l: usize) -> Result<SkewPoly> {
        let ring = self.ring();
        if self.sigma.l_order(l)? == 1 {
            return Err(Error::FixedIdempotent(l));
        }
        let e = self.sigma.apply(ring.idempotent(l)?, i);
        Ok(self.add(&self.one(), &self.monomial(1, ring.mul(a, &e))))
    }

    /// `u_{a_1}(1) * ... * u_{a_d}(d)` for units `a_i` of `A`.
    pub fn unit_product(&self, l: usize, scalars: &[RingElem]) -> Result<SkewPoly> {
        let ring = self.ring();
        ring.index(l)?;
        if scalars.is_empty() {
            return Ok(self.one());
        }
        if self.sigma.l_order(l)? == 1 {
            return Err(Error::FixedIdempotent(l));
        }
        let mut u = self.one();
        for (i, a) in scalars.iter().enumerate() {
            ring.check(a)?;
            if !ring.is_unit(a)? {
                return Err(Error::NonUnitScalar(i + 1));
            }
            u = self.mul(&u, &self.simple_unit(a, i + 1, l)?);
        }
        Ok(u)
    }

    /// Default cap on the z-degree of a candidate inverse.
    pub fn default_degree_cap(&self, f: &SkewPoly) -> usize {
        4 * (f.degree().unwrap_or(0) + 1) + self.ring().n()
    }

    /// Sound certificates that `f` is not a unit.
    fn provably_not_unit(&self, f: &SkewPoly) -> bool {
        let ring = self.ring();
        if f.is_zero() || !ring.is_unit(&f.c[0]).unwrap_or(false) {
            return true;
        }
        // eps_k is central when sigma fixes it, and that block is a domain
        (0..ring.r()).filter(|&k| self.sigma.perm0()[k] == k).any(|k| self.component0(f, k).degree().unwrap_or(0) > 0)
    }

    fn solve_right_inverse(&self, f: &SkewPoly, deg: usize) -> Option<SkewPoly> {
        let ring = self.ring();
        let field = &**ring.field();
        let n = ring.n();
        let df = f.degree().unwrap();
        // twisted[l][j] = sigma^l(f_j)
        let mut twisted = Vec::with_capacity(deg + 1);
        let mut cur = f.c.clone();
        for _ in 0..=deg {
            twisted.push(cur.clone());
            cur = cur.iter().map(|a| self.sigma.apply(a, 1)).collect();
        }
        let rows = (df + deg + 1) * n;
        let cols = (deg + 1) * n;
        let mut m = vec![vec![Fe::ZERO; cols]; rows];
        for (l, tw) in twisted.iter().enumerate() {
            for (j, c) in tw.iter().enumerate() {
                let t = j + l;
                for mcol in 0..n {
                    for i in 0..n {
                        let v = c.coeff((i + n - mcol) % n);
                        if !v.is_zero() {
                            m[t * n + i][l * n + mcol] = v;
                        }
                    }
                }
            }
        }
        let mut b = vec![Fe::ZERO; rows];
        b[0] = Fe::ONE;
        let y = linalg::solve(field, &m, &b)?;
        let coeffs: Vec<RingElem> = y.chunks(n).map(|ch| ring.from_coeffs(ch.to_vec()).unwrap()).collect();
        Some(Self::trim(coeffs))
    }

    /// Two-sided inverse, searching inverse degrees up to `cap`.
    pub fn unit_inverse_with_cap(&self, f: &SkewPoly, cap: usize) -> Result<SkewPoly> {
        self.check(f)?;
        if self.provably_not_unit(f) {
            return Err(Error::NotAUnit);
        }
        let one = self.one();
        let mut deg = 0;
        loop {
            if let Some(g) = self.solve_right_inverse(f, deg) {
                if self.mul(&g, f) == one {
                    return Ok(g);
                }
            }
            if deg >= cap {
                return Err(Error::DegreeCapExceeded(cap));
            }
            deg = if deg == 0 { 1 } else { (2 * deg).min(cap) };
        }
    }

    pub fn unit_inverse(&self, f: &SkewPoly) -> Result<SkewPoly> {
        self.unit_inverse_with_cap(f, self.default_degree_cap(f))
    }

    /// `Ok(false)` for proven non-units; `DegreeCapExceeded` when undecided.
    pub fn is_unit(&self, f: &SkewPoly) -> Result<bool> {
        match self.unit_inverse(f) {
            Ok(_) => Ok(true),
            Err(Error::NotAUnit) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Inverse of `c` inside the field `eps_i A`, for `c = eps_i c`.
    fn local_inverse(&self, c: &RingElem, i: usize) -> RingElem {
        let ring = self.ring();
        let e = &ring.idempotents()[i];
        let lifted = ring.add(c, &ring.sub(&ring.one(), e));
        ring.mul(&ring.inv(&lifted).expect("nonzero in a field component"), e)
    }

    /// Writes a unit as a product of elementary units by greedy leading-term elimination.
    pub fn decompose_into_elementary(&self, u: &SkewPoly) -> Result<Decomposition> {
        self.check(u)?;
        let ring = self.ring().clone();
        let r = ring.r();
        let mut cur = u.clone();
        let mut eliminators = Vec::new();
        let max_steps = 10_000;
        for _ in 0..max_steps {
            if cur.is_constant() {
                break;
            }
            let comps: Vec<SkewPoly> = (0..r).map(|k| self.component0(&cur, k)).collect();
            let lms: Vec<Option<Monomial>> = comps.iter().map(|c| self.leading_monomial(c).ok().map(|x| x.0)).collect();
            let mut best: Option<(usize, usize, usize, usize)> = None; // (nu, i, k, l)
            for (k, ck) in comps.iter().enumerate() {
                for (nu, i) in self.terms(ck) {
                    for (l, lm) in lms.iter().enumerate() {
                        let Some(lm) = lm else { continue };
                        if l == k || lm.index != i + 1 || nu < lm.z_degree {
                            continue;
                        }
                        if best.is_none_or(|b| (nu, i) > (b.0, b.1)) {
                            best = Some((nu, i, k, l));
                        }
                    }
                }
            }
            let Some((nu, i, _k, l)) = best else {
                return Err(Error::DecompositionNotFound);
            };
            let mu = lms[l].unwrap().z_degree;
            let e_i = &ring.idempotents()[i];
            let c = ring.mul(e_i, &cur.c[nu]);
            let cl = ring.mul(e_i, &cur.c[mu]);
            let s = nu - mu;
            let b = self.sigma.apply_inverse(&ring.mul(&c, &self.local_inverse(&cl, i)), mu);
            let e = self.elementary_unit(s, &ring.neg(&b), l + 1)?;
            if !self.is_elementary_unit(s, &ring.neg(&b), l + 1)? {
                return Err(Error::DecompositionNotFound);
            }
            cur = self.mul(&e, &cur);
            eliminators.push(e);
        }
        if !cur.is_constant() || cur.is_zero() {
            return Err(Error::DecompositionNotFound);
        }
        let c = cur.c[0].clone();
        let cinv = ring.inv(&c).map_err(|_| Error::DecompositionNotFound)?;
        let mut factors: Vec<SkewPoly> = eliminators
            .iter()
            .map(|e| {
                // (1 + z^s a eps_l)^-1 = 1 - z^s a eps_l
                let t = self.sub(e, &self.one());
                self.sub(&self.one(), &t)
            })
            .collect();
        for l in 0..r {
            let e = &ring.idempotents()[l];
            let cl = ring.mul(&c, e);
            if &cl == e {
                continue;
            }
            let fwd = ring.sub(&c, &ring.one());
            let back = ring.sub(&cinv, &ring.one());
            eliminators.push(self.elementary_unit(0, &back, l + 1)?);
            factors.push(self.elementary_unit(0, &fwd, l + 1)?);
        }
        Ok(Decomposition { eliminators, factors })
    }

    pub fn format(&self, f: &SkewPoly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let ring = self.ring();
        let mut terms = Vec::new();
        for (j, c) in f.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = ring.format(c);
            terms.push(match j {
                0 => body,
                1 => format!("z*({body})"),
                _ => format!("z^{j}*({body})"),
            });
        }
        terms.join(" + ")
    }
}
