//! Finite fields `F_q = F_p[y]/(mu(y))` and dense univariate polynomials over them.
//!
//! Elements are stored as the integer encoding `sum c_i p^i` of their coefficient
//! vector over the prime field, so `Fe(0)` is zero and `Fe(1)` is one in every
//! field. Multiplication goes through discrete-log tables built once when the
//! field is constructed.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest field size supported by the table-driven arithmetic.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// A raw field element. Only meaningful together with the [`Field`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    deg: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: Fe,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.deg == other.deg && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense arithmetic over the prime field, used only while building tables.
fn prime_poly_rem(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let lead_inv = prime_inv(m[dm], p);
    while a.len() > dm {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let c = top * lead_inv % p;
        let shift = a.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
        }
    }
    a
}

fn prime_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn decode(mut v: u32, p: u32, deg: usize) -> Vec<u32> {
    let mut out = vec![0; deg];
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Checks irreducibility of a monic polynomial over `F_p` by trial division
/// against every monic polynomial of degree at most half its degree.
fn prime_poly_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d <= 1 {
        return true;
    }
    for e in 1..=d / 2 {
        let count = (p as u64).pow(e as u32);
        for lower in 0..count {
            let mut divisor = decode(lower as u32, p, e);
            divisor.push(1);
            let r = prime_poly_rem(m.to_vec(), &divisor, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^deg}` from a monic modulus given low-to-high over `F_p`.
    pub fn new(p: u32, deg: usize, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if deg == 0 {
            return Err(Error::BadField("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(deg as u32).filter(|&q| q <= MAX_FIELD_SIZE as u64);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(Error::BadField(format!("F_{p}^{deg} is too large"))),
        };
        if modulus.len() != deg + 1 || modulus[deg] != 1 {
            return Err(Error::BadField(format!("modulus must be monic of degree {deg}")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadField("modulus coefficients must be reduced mod p".into()));
        }
        if !prime_poly_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus(p));
        }

        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = decode(a, p, deg);
            let db = decode(b, p, deg);
            let mut prod = vec![0u32; 2 * deg - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = prime_poly_rem(prod, modulus, p);
            let mut r = r;
            r.resize(deg, 0);
            encode(&r, p)
        };

        let mut generator = None;
        for g in 1..q {
            let mut x = g;
            let mut order = 1u32;
            while x != 1 {
                x = slow_mul(x, g);
                order += 1;
                if order > q {
                    break;
                }
            }
            if order == q - 1 {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = x;
            exp[i + q as usize - 1] = x;
            log[x as usize] = i as u32;
            x = slow_mul(x, g);
        }

        Ok(Field { p, deg, q, modulus: modulus.to_vec(), exp, log, generator: Fe(g) })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(p, 1, &[0, 1])
    }

    /// `F_{p^deg}` with the first irreducible modulus (in encoding order) whose
    /// root generates the multiplicative group.
    pub fn with_default_modulus(p: u32, deg: usize) -> Result<Self> {
        if deg == 1 {
            return Field::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        let count = (p as u64).checked_pow(deg as u32).unwrap_or(u64::MAX);
        if count > MAX_FIELD_SIZE as u64 {
            return Err(Error::BadField(format!("F_{p}^{deg} is too large")));
        }
        for lower in 0..count as u32 {
            let mut m = decode(lower, p, deg);
            m.push(1);
            if !prime_poly_irreducible(&m, p) {
                continue;
            }
            let f = Field::new(p, deg, &m)?;
            // root y has encoding p
            if f.order(Fe(p)) == f.q - 1 {
                return Ok(f);
            }
        }
        Err(Error::BadField(format!("no primitive modulus of degree {deg} over F_{p}")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.q
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    /// Element from its coefficient vector over `F_p` (low-to-high).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.deg || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadField("coefficient vector out of range".into()));
        }
        Ok(Fe(encode(coeffs, self.p)))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        decode(a.0, self.p, self.deg)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.deg == 1 {
            return Fe((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.deg {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        if self.deg == 1 {
            return Fe((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.deg {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a.0 as usize];
        Ok(Fe(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents require `a != 0`.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                Ordering::Greater => Ok(Fe::ZERO),
                Ordering::Equal => Ok(Fe::ONE),
                Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let ord = (self.q - 1) as i64;
        let l = (self.log[a.0 as usize] as i64 * e.rem_euclid(ord)).rem_euclid(ord);
        Ok(Fe(self.exp[l as usize]))
    }

    /// Power of the generator, `a^k`.
    pub fn gen_pow(&self, k: i64) -> Fe {
        let ord = (self.q - 1) as i64;
        Fe(self.exp[k.rem_euclid(ord) as usize])
    }

    /// Discrete logarithm to the base of the generator.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn order(&self, a: Fe) -> u32 {
        if a.0 == 0 {
            return 0;
        }
        let l = self.log[a.0 as usize];
        (self.q - 1) / gcd_u32(self.q - 1, l)
    }

    /// Total order on elements used for deterministic tie-breaking:
    /// numerals first for prime fields, otherwise `0 < 1 < a < a^2 < ...`.
    pub fn sort_key(&self, a: Fe) -> u32 {
        if self.deg == 1 || a.0 == 0 {
            a.0
        } else {
            1 + self.log[a.0 as usize]
        }
    }

    pub fn format(&self, a: Fe) -> String {
        if self.deg == 1 || a.0 <= 1 {
            return a.0.to_string();
        }
        match self.log[a.0 as usize] {
            1 => "a".to_string(),
            k => format!("a^{k}"),
        }
    }

    /// Parses `0`, `1`, integers (prime subfield), `a`, `a^k` and `-a^k`.
    pub fn parse_element(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('-') {
            return Ok(self.neg(self.parse_element(rest)?));
        }
        if let Ok(k) = s.parse::<i64>() {
            return Ok(self.from_int(k));
        }
        if s == "a" {
            return Ok(self.generator);
        }
        if let Some(exp) = s.strip_prefix("a^") {
            let k: i64 = exp.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            return Ok(self.gen_pow(k));
        }
        Err(Error::Parse(format!("bad field element {s:?}")))
    }

    /// Canonical literal such as `GF(4):y^2+y+1` (modulus omitted for prime fields).
    pub fn literal(&self) -> String {
        if self.deg == 1 {
            return format!("GF({})", self.q);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        format!("GF({}):{}", self.q, terms.join("+"))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

pub(crate) fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A field element bound to its field; arithmetic is checked.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Fe,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl FieldElement {
    pub fn new(field: &Arc<Field>, value: Fe) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::MixedFields);
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn wrap(&self, value: Fe) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(self.wrap(self.field.pow(self.value, e)?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// Dense univariate polynomial over `F_q`, coefficients low-to-high, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Fe, k: usize) -> Self {
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `t^n - 1`
    pub fn xn_minus_one(n: usize, f: &Field) -> Self {
        let mut v = vec![Fe::ZERO; n + 1];
        v[0] = f.neg(Fe::ONE);
        v[n] = Fe::ONE;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe, f: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    pub fn div_rem(&self, d: &Poly, f: &Field) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.sub(r[i - dd + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(quot), Poly::new(r)))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Result<Poly> {
        Ok(self.div_rem(d, f)?.1)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv, f)
    }

    pub fn eval(&self, x: Fe, f: &Field) -> Fe {
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u64, m: &Poly, f: &Field) -> Result<Poly> {
        let mut base = self.rem(m, f)?;
        let mut acc = Poly::one().rem(m, f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
            base = base.mul(&base, f).rem(m, f)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Poly, b: &Poly, f: &Field) -> Result<(Poly, Poly, Poly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1, f)?;
            let s = s0.sub(&qt.mul(&s1, f), f);
            let t = t0.sub(&qt.mul(&t1, f), f);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = f.inv(r0.leading())?;
        Ok((r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f)))
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod(&self, m: &Poly, f: &Field) -> Result<Poly> {
        let (g, s, _) = Poly::ext_gcd(self, m, f)?;
        if g != Poly::one() {
            return Err(Error::NotAUnit);
        }
        s.rem(m, f)
    }

    /// Renders with the given variable name, e.g. `1+a^2*z^3`.
    pub fn format(&self, var: &str, f: &Field) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(if i == 0 {
                f.format(c)
            } else if c == Fe::ONE {
                mono
            } else {
                format!("{}*{}", f.format(c), mono)
            });
        }
        terms.join("+")
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &Poly, b: &Poly, f: &Field) -> Result<Poly> {
    Ok(Poly::ext_gcd(a, b, f)?.0)
}

/// Rabin's irreducibility test.
pub fn is_irreducible(p: &Poly, f: &Field) -> bool {
    let d = match p.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let m = p.monic(f);
    let x = Poly::monomial(Fe::ONE, 1);
    let q = f.size() as u64;
    // frob[k] = x^(q^k) mod m
    let mut frob = vec![x.rem(&m, f).unwrap()];
    for _ in 0..d {
        let next = frob.last().unwrap().pow_mod(q, &m, f).unwrap();
        frob.push(next);
    }
    if frob[d] != frob[0] {
        return false;
    }
    let mut k = d;
    let mut primes = Vec::new();
    let mut r = 2;
    while r * r <= k {
        if k % r == 0 {
            primes.push(r);
            while k % r == 0 {
                k /= r;
            }
        }
        r += 1;
    }
    if k > 1 {
        primes.push(k);
    }
    primes.iter().all(|&r| {
        let h = frob[d / r].sub(&x, f);
        poly_gcd(&h, &m, f).unwrap() == Poly::one()
    })
}

/// Order on polynomials used to index the factors of `x^n - 1`: by degree, then
/// coefficient by coefficient from the highest power down under [`Field::sort_key`].
pub fn factor_order(a: &Poly, b: &Poly, f: &Field) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
        for i in (0..a.coeffs.len()).rev() {
            let o = f.sort_key(a.coeffs[i]).cmp(&f.sort_key(b.coeffs[i]));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

fn distinct_degree(f_in: &Poly, f: &Field) -> Vec<(Poly, usize)> {
    let mut rest = f_in.monic(f);
    let x = Poly::monomial(Fe::ONE, 1);
    let q = f.size() as u64;
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest, f).unwrap();
        let g = poly_gcd(&h.sub(&x, f), &rest, f).unwrap();
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g, f).unwrap().0;
            h = h.rem(&rest, f).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        out.push((rest, dr));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, f: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let dg = g.degree().unwrap();
    if dg == d {
        out.push(g.monic(f));
        return;
    }
    let q = f.size() as u64;
    loop {
        let a = Poly::new((0..dg).map(|_| Fe(rng.gen_range(0..f.size()))).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if f.characteristic() == 2 {
            // trace map a + a^2 + ... + a^(2^(m d - 1))
            let steps = f.degree() * d;
            let mut t = a.rem(g, f).unwrap();
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul(&t, f).rem(g, f).unwrap();
                acc = acc.add(&t, f);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(g, f).unwrap();
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q, g, f).unwrap();
                norm = norm.mul(&t, f).rem(g, f).unwrap();
            }
            norm.pow_mod((q - 1) / 2, g, f).unwrap().sub(&Poly::one(), f)
        };
        if b.is_zero() {
            continue;
        }
        let h = poly_gcd(&b, g, f).unwrap();
        let dh = h.degree().unwrap();
        if dh > 0 && dh < dg {
            let other = g.div_rem(&h, f).unwrap().0;
            equal_degree(&h, d, f, rng, out);
            equal_degree(&other, d, f, rng, out);
            return;
        }
    }
}

/// Factors a squarefree polynomial into monic irreducibles (unsorted).
pub fn factor_squarefree(p: &Poly, f: &Field) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(p, f) {
        equal_degree(&g, d, f, &mut rng, &mut out);
    }
    out
}

/// The ordered prime factorization `x^n - 1 = pi_1 ... pi_r` over `F_q`.
pub fn factor_xn_minus_1(f: &Field, n: usize) -> Result<Vec<Poly>> {
    if n == 0 || n.is_multiple_of(f.characteristic() as usize) {
        return Err(Error::LengthNotCoprime { n, q: f.size() });
    }
    let mut factors = factor_squarefree(&Poly::xn_minus_one(n, f), f);
    factors.sort_by(|a, b| factor_order(a, b, f));
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        Field::new(2, 2, &[1, 1, 1]).unwrap()
    }

    fn f8() -> Field {
        Field::new(2, 3, &[1, 1, 0, 1]).unwrap()
    }

    fn parse(f: &Field, s: &[&str]) -> Poly {
        Poly::new(s.iter().map(|c| f.parse_element(c).unwrap()).collect())
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, &[0, 1]), Err(Error::NonPrimeCharacteristic(4)));
        assert_eq!(Field::new(2, 2, &[1, 0, 1]), Err(Error::ReducibleModulus(2)));
        assert!(Field::new(2, 2, &[1, 1]).is_err());
    }

    #[test]
    fn generator_is_root_of_modulus() {
        let f = f4();
        let a = f.generator();
        assert_eq!(a, Fe(2));
        // a^2 + a + 1 = 0
        let v = f.add(f.add(f.mul(a, a), a), Fe::ONE);
        assert!(v.is_zero());
        let f = f8();
        let a = f.generator();
        assert_eq!(f.mul(a, f.mul(a, a)), f.add(a, Fe::ONE));
    }

    #[test]
    fn small_identities() {
        let f = f4();
        let a = f.gen_pow(1);
        let a2 = f.gen_pow(2);
        assert_eq!(f.mul(a, a2), Fe::ONE);
        assert_eq!(f.add(a, a2), Fe::ONE);
        assert_eq!(f.pow(a, -1).unwrap(), a2);
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.pow(Fe::ZERO, -2), Err(Error::DivisionByZero));
    }

    #[test]
    fn exhaustive_field_axioms() {
        let fields = vec![
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
            Field::prime(7).unwrap(),
            f4(),
            f8(),
            Field::new(3, 2, &[2, 2, 1]).unwrap(),
            Field::with_default_modulus(2, 4).unwrap(),
            Field::with_default_modulus(5, 2).unwrap(),
            Field::with_default_modulus(2, 5).unwrap(),
            Field::with_default_modulus(2, 6).unwrap(),
        ];
        for f in &fields {
            assert!(f.size() <= 64);
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
                    assert_eq!(f.pow(a, f.size() as i64 - 1).unwrap(), Fe::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn element_literals_round_trip() {
        let f = f8();
        for a in f.elements() {
            assert_eq!(f.parse_element(&f.format(a)).unwrap(), a);
        }
        assert_eq!(f.format(f.gen_pow(3)), "a^3");
        assert!(f.parse_element("b").is_err());
    }

    #[test]
    fn gcd_examples() {
        let f = f4();
        let one = Fe::ONE;
        let m1 = f.neg(one);
        // x^2 - 1 and x - 1
        let a = Poly::new(vec![m1, Fe::ZERO, one]);
        let b = Poly::new(vec![m1, one]);
        assert_eq!(poly_gcd(&a, &b, &f).unwrap(), b);
        assert_eq!(poly_gcd(&a, &Poly::one(), &f).unwrap(), Poly::one());
        let f2 = Field::prime(2).unwrap();
        let p2 = parse(&f2, &["1", "1", "0", "1"]);
        let p3 = parse(&f2, &["1", "0", "1", "1"]);
        assert_eq!(poly_gcd(&p2, &p3, &f2).unwrap(), Poly::one());
        assert_eq!(poly_gcd(&Poly::zero(), &Poly::zero(), &f2), Err(Error::BothZero));
    }

    #[test]
    fn factorization_examples() {
        let f2 = Field::prime(2).unwrap();
        let got = factor_xn_minus_1(&f2, 7).unwrap();
        let want = vec![parse(&f2, &["1", "1"]), parse(&f2, &["1", "1", "0", "1"]), parse(&f2, &["1", "0", "1", "1"])];
        assert_eq!(got, want);

        let f = f4();
        let got = factor_xn_minus_1(&f, 3).unwrap();
        let want = vec![parse(&f, &["1", "1"]), parse(&f, &["a", "1"]), parse(&f, &["a^2", "1"])];
        assert_eq!(got, want);

        let got = factor_xn_minus_1(&f, 5).unwrap();
        let want = vec![parse(&f, &["1", "1"]), parse(&f, &["1", "a", "1"]), parse(&f, &["1", "a^2", "1"])];
        assert_eq!(got, want);

        assert_eq!(factor_xn_minus_1(&f2, 2), Err(Error::LengthNotCoprime { n: 2, q: 2 }));
    }

    #[test]
    fn factorization_reconstructs_product() {
        let fields = vec![Field::prime(2).unwrap(), Field::prime(3).unwrap(), f4(), f8(), Field::prime(5).unwrap()];
        for f in &fields {
            for n in 1..=40 {
                if n % f.characteristic() as usize == 0 {
                    continue;
                }
                let fs = factor_xn_minus_1(f, n).unwrap();
                let prod = fs.iter().fold(Poly::one(), |acc, p| acc.mul(p, f));
                assert_eq!(prod, Poly::xn_minus_one(n, f), "n={n} over {f}");
                for (i, p) in fs.iter().enumerate() {
                    assert!(is_irreducible(p, f));
                    assert_eq!(p.leading(), Fe::ONE);
                    for other in &fs[i + 1..] {
                        assert_ne!(p, other);
                    }
                }
            }
        }
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        let f = Field::prime(3).unwrap();
        for deg in 1..=4usize {
            for lower in 0..3u32.pow(deg as u32) {
                let mut c = decode(lower, 3, deg);
                c.push(1);
                let p = Poly::new(c.iter().map(|&v| Fe(v)).collect());
                assert_eq!(is_irreducible(&p, &f), prime_poly_irreducible(&c, 3), "{c:?}");
            }
        }
    }
}
