//! The quotient ring `A = F[x]/(x^n - 1)` together with its CRT decomposition
//! into the fields `K_k = F[x]/(pi_k)` and the primitive idempotents.
//!
//! Component indices are 1-based in the public API.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{factor_xn_minus_1, Fe, Field, Poly};

/// An element of `A`, stored as its `n` coefficients with respect to `1, x, ..., x^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    c: Vec<Fe>,
}

impl RingElem {
    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.c[i]
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    /// Hamming weight of the coefficient vector.
    pub fn weight(&self) -> usize {
        self.c.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.c.clone())
    }
}

#[derive(Debug, Clone)]
pub struct Ring {
    field: Arc<Field>,
    n: usize,
    modulus: Poly,
    factors: Vec<Poly>,
    classes: Vec<Vec<usize>>,
    idempotents: Vec<RingElem>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(field: Arc<Field>, n: usize) -> Result<Self> {
        let factors = factor_xn_minus_1(&field, n)?;
        let modulus = Poly::xn_minus_one(n, &field);
        let f = &*field;
        let mut idempotents = Vec::with_capacity(factors.len());
        for pi in &factors {
            let cofactor = modulus.div_rem(pi, f)?.0;
            let inv = cofactor.inv_mod(pi, f)?;
            let e = cofactor.mul(&inv, f).rem(&modulus, f)?;
            let mut c = e.coeffs().to_vec();
            c.resize(n, Fe::ZERO);
            idempotents.push(RingElem { c });
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (k, pi) in factors.iter().enumerate() {
            match classes.last_mut() {
                Some(last) if factors[last[0]].degree() == pi.degree() => last.push(k),
                _ => classes.push(vec![k]),
            }
        }
        Ok(Ring { field, n, modulus, factors, classes, idempotents })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of prime factors `r`.
    pub fn r(&self) -> usize {
        self.factors.len()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    /// `pi_k` for `1 <= k <= r`.
    pub fn factor(&self, k: usize) -> Result<&Poly> {
        Ok(&self.factors[self.index(k)?])
    }

    /// `kappa_k = deg pi_k`.
    pub fn kappa(&self, k: usize) -> Result<usize> {
        Ok(self.kappa0(self.index(k)?))
    }

    pub(crate) fn kappa0(&self, k: usize) -> usize {
        self.factors[k].degree().unwrap()
    }

    /// The degree classes `R^(1), ..., R^(s)` as 1-based index sets.
    pub fn degree_classes(&self) -> Vec<Vec<usize>> {
        self.classes.iter().map(|c| c.iter().map(|k| k + 1).collect()).collect()
    }

    pub(crate) fn classes0(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn idempotent(&self, k: usize) -> Result<&RingElem> {
        Ok(&self.idempotents[self.index(k)?])
    }

    pub fn idempotents(&self) -> &[RingElem] {
        &self.idempotents
    }

    /// Converts a 1-based index into a 0-based one.
    pub(crate) fn index(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.r() {
            return Err(Error::IndexOutOfRange { index: k, max: self.r() });
        }
        Ok(k - 1)
    }

    pub fn check(&self, a: &RingElem) -> Result<()> {
        if a.c.len() != self.n || a.c.iter().any(|&c| !self.field.contains(c)) {
            return Err(Error::MixedContexts);
        }
        Ok(())
    }

    pub fn zero(&self) -> RingElem {
        RingElem { c: vec![Fe::ZERO; self.n] }
    }

    pub fn one(&self) -> RingElem {
        self.constant(Fe::ONE)
    }

    pub fn constant(&self, a: Fe) -> RingElem {
        let mut c = vec![Fe::ZERO; self.n];
        c[0] = a;
        RingElem { c }
    }

    /// `x^i`, reduced mod `x^n - 1`.
    pub fn x_pow(&self, i: usize) -> RingElem {
        let mut c = vec![Fe::ZERO; self.n];
        c[i % self.n] = Fe::ONE;
        RingElem { c }
    }

    pub fn from_coeffs(&self, mut c: Vec<Fe>) -> Result<RingElem> {
        if c.len() > self.n {
            return self.from_poly(&Poly::new(c));
        }
        c.resize(self.n, Fe::ZERO);
        let e = RingElem { c };
        self.check(&e)?;
        Ok(e)
    }

    /// Reduces a polynomial in `x` modulo `x^n - 1`.
    pub fn from_poly(&self, p: &Poly) -> Result<RingElem> {
        let mut c = vec![Fe::ZERO; self.n];
        for (i, &v) in p.coeffs().iter().enumerate() {
            if !self.field.contains(v) {
                return Err(Error::MixedFields);
            }
            c[i % self.n] = self.field.add(c[i % self.n], v);
        }
        Ok(RingElem { c })
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = &*self.field;
        RingElem { c: a.c.iter().zip(&b.c).map(|(&x, &y)| f.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = &*self.field;
        RingElem { c: a.c.iter().zip(&b.c).map(|(&x, &y)| f.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        let f = &*self.field;
        RingElem { c: a.c.iter().map(|&x| f.neg(x)).collect() }
    }

    pub fn scale(&self, a: &RingElem, s: Fe) -> RingElem {
        let f = &*self.field;
        RingElem { c: a.c.iter().map(|&x| f.mul(x, s)).collect() }
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        let f = &*self.field;
        let n = self.n;
        let mut c = vec![Fe::ZERO; n];
        for (i, &x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = (i + j) % n;
                c[t] = f.add(c[t], f.mul(x, y));
            }
        }
        RingElem { c }
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplication by `x^s`, i.e. a cyclic shift of the coefficients.
    pub fn shift(&self, a: &RingElem, s: usize) -> RingElem {
        let n = self.n;
        let mut c = vec![Fe::ZERO; n];
        for (i, &v) in a.c.iter().enumerate() {
            c[(i + s) % n] = v;
        }
        RingElem { c }
    }

    /// Checked variants raising `MixedContexts` on foreign operands.
    pub fn try_add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// `psi(a) = (a mod pi_1, ..., a mod pi_r)`.
    pub fn crt_forward(&self, a: &RingElem) -> Result<Vec<Poly>> {
        self.check(a)?;
        let p = a.to_poly();
        self.factors.iter().map(|pi| p.rem(pi, &self.field)).collect()
    }

    /// `psi^-1`, accepting unreduced residues.
    pub fn crt_backward(&self, parts: &[Poly]) -> Result<RingElem> {
        if parts.len() != self.r() {
            return Err(Error::LengthMismatch { expected: self.r(), got: parts.len() });
        }
        let mut acc = self.zero();
        for (k, (e, part)) in self.idempotents.iter().zip(parts).enumerate() {
            if part.is_zero() {
                continue;
            }
            let p = self.from_poly(&part.rem(&self.factors[k], &self.field)?)?;
            acc = self.add(&acc, &self.mul(e, &p));
        }
        Ok(acc)
    }

    /// The `k`-th component `eps_k * a`.
    pub fn component(&self, a: &RingElem, k: usize) -> Result<RingElem> {
        self.check(a)?;
        Ok(self.mul(&self.idempotents[self.index(k)?], a))
    }

    /// 1-based indices `l` with `eps_l * a != 0`.
    pub fn support(&self, a: &RingElem) -> Result<Vec<usize>> {
        let parts = self.crt_forward(a)?;
        Ok(parts.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(k, _)| k + 1).collect())
    }

    pub fn is_unit(&self, a: &RingElem) -> Result<bool> {
        Ok(self.crt_forward(a)?.iter().all(|p| !p.is_zero()))
    }

    pub fn inv(&self, a: &RingElem) -> Result<RingElem> {
        let parts = self.crt_forward(a)?;
        let inv: Result<Vec<Poly>> = parts
            .iter()
            .zip(&self.factors)
            .map(|(p, pi)| if p.is_zero() { Err(Error::NotAUnit) } else { p.inv_mod(pi, &self.field) })
            .collect();
        self.crt_backward(&inv?)
    }

    /// Returns a unit `u` and the support `T` with `u * a = sum_{l in T} eps_l`.
    pub fn normalize_to_idempotent_sum(&self, a: &RingElem) -> Result<(RingElem, Vec<usize>)> {
        let parts = self.crt_forward(a)?;
        if parts.iter().all(|p| p.is_zero()) {
            return Err(Error::ZeroInput);
        }
        let mut support = Vec::new();
        let mut u = Vec::with_capacity(parts.len());
        for (k, (p, pi)) in parts.iter().zip(&self.factors).enumerate() {
            if p.is_zero() {
                u.push(Poly::one());
            } else {
                support.push(k + 1);
                u.push(p.inv_mod(pi, &self.field)?);
            }
        }
        Ok((self.crt_backward(&u)?, support))
    }

    pub fn format(&self, a: &RingElem) -> String {
        a.to_poly().format("x", &self.field)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[x]/(x^{}-1)", self.field, self.n)
    }
}
