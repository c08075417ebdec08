//! Literal syntax for fields, elements, ring elements, skew polynomials,
//! polynomials in `z`, automorphisms and permutations.
//!
//! All expression literals share one grammar: sums and differences of products
//! of powers, with implicit multiplication (`2y`, `a x`, `z(1+x)`). Variables are
//! `a` (field generator), `x`, `y`, `z` and `e<k>` (primitive idempotent `k`).

use std::sync::Arc;

use crate::automorphism::{find_automorphism_for_permutation, perm_from_cycles, Automorphism};
use crate::error::{Error, Result};
use crate::field::{is_prime, Fe, Field, Poly};
use crate::ring::{Ring, RingElem};
use crate::skew::{SkewPoly, SkewRing};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse().map_err(|_| Error::Parse(format!("number {text} too large")))?;
                out.push(Tok::Num(v));
            }
            'e' if i + 1 < chars.len() && chars[i + 1].is_ascii_digit() => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() => {
                out.push(Tok::Ident(c.to_string()));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

/// A commutative or noncommutative target for expression evaluation.
trait Algebra {
    type E: Clone;
    fn num(&self, k: i64) -> Result<Self::E>;
    fn var(&self, name: &str) -> Result<Self::E>;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;

    fn pow(&self, a: &Self::E, e: i64) -> Result<Self::E> {
        if e < 0 {
            return Err(Error::Parse("negative exponent".into()));
        }
        let mut acc = self.num(1)?;
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }
}

struct Parser<'a, A: Algebra> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a A,
    src: &'a str,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<A::E> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                neg = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = self.alg.neg(&acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(&acc, &self.alg.neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::E> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.alg.mul(&acc, &f);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<A::E> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let sign = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            -1
        } else {
            1
        };
        match self.peek().cloned() {
            Some(Tok::Num(e)) => {
                self.pos += 1;
                self.alg.pow(&base, sign * e)
            }
            _ => Err(self.err("expected exponent")),
        }
    }

    fn atom(&mut self) -> Result<A::E> {
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                self.alg.num(k)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.alg.var(&name)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                let a = self.power()?;
                Ok(self.alg.neg(&a))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

fn evaluate<A: Algebra>(alg: &A, src: &str) -> Result<A::E> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, alg, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

fn unknown(name: &str) -> Error {
    Error::Parse(format!("unknown variable {name:?}"))
}

struct PrimePolys {
    p: i64,
}

impl Algebra for PrimePolys {
    type E = Vec<i64>;
    fn num(&self, k: i64) -> Result<Vec<i64>> {
        Ok(vec![k.rem_euclid(self.p)])
    }
    fn var(&self, name: &str) -> Result<Vec<i64>> {
        match name {
            "y" => Ok(vec![0, 1]),
            _ => Err(unknown(name)),
        }
    }
    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let n = a.len().max(b.len());
        (0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).rem_euclid(self.p)).collect()
    }
    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|c| (-c).rem_euclid(self.p)).collect()
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y).rem_euclid(self.p);
            }
        }
        out
    }
}

struct FieldAlg<'a>(&'a Field);

impl Algebra for FieldAlg<'_> {
    type E = Fe;
    fn num(&self, k: i64) -> Result<Fe> {
        Ok(self.0.from_int(k))
    }
    fn var(&self, name: &str) -> Result<Fe> {
        match name {
            "a" => Ok(self.0.generator()),
            _ => Err(unknown(name)),
        }
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        self.0.add(*a, *b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        self.0.neg(*a)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        self.0.mul(*a, *b)
    }
    fn pow(&self, a: &Fe, e: i64) -> Result<Fe> {
        self.0.pow(*a, e).map_err(|_| Error::Parse("zero to a negative power".into()))
    }
}

struct ZPolys<'a>(&'a Field);

impl Algebra for ZPolys<'_> {
    type E = Poly;
    fn num(&self, k: i64) -> Result<Poly> {
        Ok(Poly::constant(self.0.from_int(k)))
    }
    fn var(&self, name: &str) -> Result<Poly> {
        match name {
            "a" => Ok(Poly::constant(self.0.generator())),
            "z" => Ok(Poly::monomial(Fe::ONE, 1)),
            _ => Err(unknown(name)),
        }
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.0)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg(self.0)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, self.0)
    }
    fn pow(&self, a: &Poly, e: i64) -> Result<Poly> {
        if e < 0 {
            if a.degree() == Some(0) {
                let c = self.0.pow(a.leading(), e).map_err(|_| Error::Parse("bad power".into()))?;
                return Ok(Poly::constant(c));
            }
            return Err(Error::Parse("negative exponent".into()));
        }
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(a, self.0);
        }
        Ok(acc)
    }
}

fn idempotent_var(ring: &Ring, name: &str) -> Result<Option<RingElem>> {
    if let Some(k) = name.strip_prefix('e') {
        let k: usize = k.parse().map_err(|_| unknown(name))?;
        let e = ring.idempotent(k).map_err(|_| Error::Parse(format!("no idempotent {name}")))?;
        return Ok(Some(e.clone()));
    }
    Ok(None)
}

struct RingAlg<'a>(&'a Ring);

impl Algebra for RingAlg<'_> {
    type E = RingElem;
    fn num(&self, k: i64) -> Result<RingElem> {
        Ok(self.0.constant(self.0.field().from_int(k)))
    }
    fn var(&self, name: &str) -> Result<RingElem> {
        match name {
            "a" => Ok(self.0.constant(self.0.field().generator())),
            "x" => Ok(self.0.x_pow(1)),
            _ => idempotent_var(self.0, name)?.ok_or_else(|| unknown(name)),
        }
    }
    fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.0.add(a, b)
    }
    fn neg(&self, a: &RingElem) -> RingElem {
        self.0.neg(a)
    }
    fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.0.mul(a, b)
    }
}

struct SkewAlg<'a>(&'a SkewRing);

impl Algebra for SkewAlg<'_> {
    type E = SkewPoly;
    fn num(&self, k: i64) -> Result<SkewPoly> {
        Ok(self.0.constant(RingAlg(self.0.ring()).num(k)?))
    }
    fn var(&self, name: &str) -> Result<SkewPoly> {
        match name {
            "z" => Ok(self.0.z()),
            _ => Ok(self.0.constant(RingAlg(self.0.ring()).var(name)?)),
        }
    }
    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.0.add(a, b)
    }
    fn neg(&self, a: &SkewPoly) -> SkewPoly {
        self.0.neg(a)
    }
    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        self.0.mul(a, b)
    }
}

/// Parses `GF(q)` or `GF(q):<monic polynomial in y over F_p>`.
pub fn field(lit: &str) -> Result<Field> {
    let lit = lit.trim();
    let (head, modulus) = match lit.split_once(':') {
        Some((h, m)) => (h.trim(), Some(m.trim())),
        None => (lit, None),
    };
    let inner = head
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected GF(q), got {head:?}")))?;
    let q: u32 = inner.trim().parse().map_err(|_| Error::Parse(format!("bad field size {inner:?}")))?;
    if q < 2 {
        return Err(Error::BadField(format!("no field of size {q}")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut deg = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        deg += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::BadField(format!("{q} is not a prime power")));
    }
    match modulus {
        None => Field::with_default_modulus(p, deg),
        Some(m) => {
            let c = evaluate(&PrimePolys { p: p as i64 }, m)?;
            let mut c: Vec<u32> = c.into_iter().map(|v| v as u32).collect();
            while c.last() == Some(&0) {
                c.pop();
            }
            if c.len() != deg + 1 {
                return Err(Error::BadField(format!("modulus {m:?} must have degree {deg}")));
            }
            Field::new(p, deg, &c)
        }
    }
}

/// A field element expression such as `a^2`, `1+a` or `3`.
pub fn element(f: &Field, s: &str) -> Result<Fe> {
    evaluate(&FieldAlg(f), s)
}

/// A polynomial in `z` over the field, e.g. `1+a^2*z^3`.
pub fn zpoly(f: &Field, s: &str) -> Result<Poly> {
    evaluate(&ZPolys(f), s)
}

/// An element of `A`, e.g. `1+x^2+a*x^3` or `e2*(1+x)`.
pub fn ring_elem(ring: &Ring, s: &str) -> Result<RingElem> {
    evaluate(&RingAlg(ring), s)
}

/// An element of `A[z; sigma]`, e.g. `1+x + z*(x^2) + z^2*e3*x`.
pub fn skew_poly(skew: &SkewRing, s: &str) -> Result<SkewPoly> {
    evaluate(&SkewAlg(skew), s)
}

/// Cycle notation `(1,2)(3,4,5)`; `()` and the empty string mean the identity.
pub fn cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let body = rest[..body_end].strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let body = body.trim();
        if !body.is_empty() {
            let c: Result<Vec<usize>> = body
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                .collect();
            out.push(c?);
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(out)
}

/// `sigma:<image of x>`, a bare image such as `x^5`, `perm:(1)(2,3)` or `id`.
pub fn sigma(ring: &Arc<Ring>, lit: &str) -> Result<Automorphism> {
    let lit = lit.trim();
    if lit == "id" || lit == "identity" {
        return Ok(Automorphism::identity(ring));
    }
    if let Some(p) = lit.strip_prefix("perm:") {
        let perm = perm_from_cycles(&cycles(p)?, ring.r())?;
        return find_automorphism_for_permutation(ring, &perm);
    }
    let image = lit.strip_prefix("sigma:").unwrap_or(lit);
    Automorphism::from_image(ring, ring_elem(ring, image)?)
}

/// Builds `A[z; sigma]` from the three literals of a descriptor.
pub fn skew_ring(field_lit: &str, n: usize, sigma_lit: &str) -> Result<SkewRing> {
    let f = Arc::new(field(field_lit)?);
    let ring = Arc::new(Ring::new(f, n)?);
    Ok(SkewRing::new(sigma(&ring, sigma_lit)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_literals() {
        let f4 = field("GF(4)").unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(field("GF(4):y^2+y+1").unwrap(), f4);
        assert_eq!(field("GF(8)").unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(field("GF(9):y^2+2y+2").unwrap().size(), 9);
        assert!(matches!(field("GF(6)"), Err(Error::BadField(_))));
        assert!(matches!(field("GF(4):y^2+1"), Err(Error::ReducibleModulus(2))));
        assert!(matches!(field("F4"), Err(Error::Parse(_))));
        for lit in ["GF(2)", "GF(4):y^2+y+1", "GF(8):y^3+y+1", "GF(9):y^2+2*y+2"] {
            assert_eq!(field(lit).unwrap().literal(), lit);
        }
    }

    #[test]
    fn expressions() {
        let f = field("GF(4)").unwrap();
        assert_eq!(element(&f, "a^2").unwrap(), f.gen_pow(2));
        assert_eq!(element(&f, "1+a").unwrap(), f.gen_pow(2));
        assert_eq!(element(&f, "a^-1").unwrap(), f.gen_pow(2));
        let z = zpoly(&f, "a^2*z + 1 + z^3").unwrap();
        assert_eq!(z.format("z", &f), "1+a^2*z+z^3");
        assert!(matches!(zpoly(&f, "1 + w"), Err(Error::Parse(_))));
        assert!(matches!(zpoly(&f, "(1 + z"), Err(Error::Parse(_))));
        assert!(matches!(zpoly(&f, ""), Err(Error::Parse(_))));
    }

    #[test]
    fn ring_and_skew_literals() {
        let s = skew_ring("GF(2)", 7, "sigma:x^5").unwrap();
        let r = s.ring().clone();
        let a = ring_elem(&r, "1+x^2+x^3+x^4").unwrap();
        assert_eq!(r.format(&a), "1+x^2+x^3+x^4");
        assert_eq!(ring_elem(&r, "x^7").unwrap(), r.one());
        assert_eq!(&ring_elem(&r, "e2").unwrap(), r.idempotent(2).unwrap());
        let lit = "1+x^2+x^3+x^4 + z*(x+x^2+x^3+x^5) + z^2*(1+x+x^4+x^6)";
        let g = skew_poly(&s, lit).unwrap();
        assert_eq!(s.format(&g), lit);
        // x z = z x^5
        assert_eq!(skew_poly(&s, "x z").unwrap(), skew_poly(&s, "z x^5").unwrap());
    }

    #[test]
    fn sigma_literals() {
        let s = skew_ring("GF(2)", 7, "perm:(1)(2,3)").unwrap();
        assert_eq!(s.sigma().perm(), vec![1, 3, 2]);
        assert!(skew_ring("GF(2)", 7, "id").unwrap().sigma().is_identity());
        assert!(matches!(skew_ring("GF(2)", 7, "x^7"), Err(Error::NotAnAutomorphism(_))));
        assert_eq!(cycles("(1,2)(3,4,5)(6)").unwrap(), vec![vec![1, 2], vec![3, 4, 5], vec![6]]);
        assert_eq!(cycles("()").unwrap(), Vec::<Vec<usize>>::new());
        assert!(cycles("(1,2").is_err());
    }
}
