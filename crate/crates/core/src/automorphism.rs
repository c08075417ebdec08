//! `F`-algebra automorphisms of `A`, the permutation they induce on the primitive
//! idempotents, and the constructive enumeration of the whole group.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, Poly};
use crate::linalg;
use crate::ring::{Ring, RingElem};

#[derive(Clone, Debug)]
pub struct Automorphism {
    ring: Arc<Ring>,
    image: RingElem,
    // rows: sigma(x^i)
    matrix: Vec<RingElem>,
    perm: Vec<usize>,
    order: usize,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && *self.ring == *other.ring
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    /// Validates `sigma(x) = a`: needs `a^n = 1` and `1, a, ..., a^(n-1)` independent.
    pub fn from_image(ring: &Arc<Ring>, a: RingElem) -> Result<Self> {
        ring.check(&a)?;
        let n = ring.n();
        let mut matrix = Vec::with_capacity(n);
        let mut p = ring.one();
        for _ in 0..n {
            matrix.push(p.clone());
            p = ring.mul(&p, &a);
        }
        if p != ring.one() {
            return Err(Error::NotAnAutomorphism(format!("({})^{n} != 1", ring.format(&a))));
        }
        let rows: Vec<Vec<Fe>> = matrix.iter().map(|r| r.coeffs().to_vec()).collect();
        if linalg::rank(ring.field(), &rows) < n {
            return Err(Error::NotAnAutomorphism(format!("powers of {} are linearly dependent", ring.format(&a))));
        }
        let mut sig = Automorphism { ring: ring.clone(), image: a, matrix, perm: Vec::new(), order: 1 };
        let mut perm = Vec::with_capacity(ring.r());
        for e in ring.idempotents() {
            let img = sig.apply_once(e);
            let l = ring
                .idempotents()
                .iter()
                .position(|x| *x == img)
                .ok_or_else(|| Error::NotAnAutomorphism("idempotents are not permuted".into()))?;
            perm.push(l);
        }
        sig.perm = perm;
        let x = ring.x_pow(1);
        let mut cur = sig.image.clone();
        let mut order = 1;
        while cur != x {
            cur = sig.apply_once(&cur);
            order += 1;
        }
        sig.order = order;
        Ok(sig)
    }

    pub fn identity(ring: &Arc<Ring>) -> Self {
        Automorphism::from_image(ring, ring.x_pow(1)).expect("x always defines the identity")
    }

    /// `sigma(x) = x^s` for `s` coprime to `n`.
    pub fn power_map(ring: &Arc<Ring>, s: usize) -> Result<Self> {
        Automorphism::from_image(ring, ring.x_pow(s))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn image(&self) -> &RingElem {
        &self.image
    }

    /// Order of `sigma` in the automorphism group.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    fn apply_once(&self, a: &RingElem) -> RingElem {
        let mut out = self.ring.zero();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = self.ring.add(&out, &self.ring.scale(&self.matrix[i], c));
            }
        }
        out
    }

    /// `sigma^power(a)`.
    pub fn apply(&self, a: &RingElem, power: usize) -> RingElem {
        let mut out = a.clone();
        for _ in 0..power % self.order {
            out = self.apply_once(&out);
        }
        out
    }

    /// `sigma^(-power)(a)`.
    pub fn apply_inverse(&self, a: &RingElem, power: usize) -> RingElem {
        let p = power % self.order;
        self.apply(a, (self.order - p) % self.order)
    }

    /// The permutation `Pi_sigma` as a 1-based array: `perm()[k-1] = l` iff `sigma(eps_k) = eps_l`.
    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|l| l + 1).collect()
    }

    pub(crate) fn perm0(&self) -> &[usize] {
        &self.perm
    }

    /// `Pi_sigma^s(k)` on 0-based indices.
    pub(crate) fn perm_pow0(&self, k: usize, s: usize) -> usize {
        let mut k = k;
        for _ in 0..s % self.cycle_len0(k) {
            k = self.perm[k];
        }
        k
    }

    pub(crate) fn cycle_len0(&self, k: usize) -> usize {
        let mut len = 1;
        let mut j = self.perm[k];
        while j != k {
            j = self.perm[j];
            len += 1;
        }
        len
    }

    /// The `sigma`-equivalence classes, i.e. the cycles of `Pi_sigma`, each starting
    /// at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.perm).into_iter().map(|c| c.into_iter().map(|k| k + 1).collect()).collect()
    }

    /// `o_l(sigma)`.
    pub fn l_order(&self, l: usize) -> Result<usize> {
        Ok(self.cycle_len0(self.ring.index(l)?))
    }

    /// Whether `k` and `l` lie in the same cycle.
    pub fn equivalent(&self, k: usize, l: usize) -> Result<bool> {
        let (k, l) = (self.ring.index(k)?, self.ring.index(l)?);
        Ok((0..self.cycle_len0(k)).any(|s| self.perm_pow0(k, s) == l))
    }

    /// Cycle notation such as `(1)(2,3)`.
    pub fn perm_string(&self) -> String {
        format_cycles(&self.cycles())
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}", self.ring.format(&self.image))
    }
}

pub(crate) fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            c.push(j);
            j = perm[j];
        }
        out.push(c);
    }
    out
}

pub fn format_cycles(cycles: &[Vec<usize>]) -> String {
    cycles.iter().map(|c| format!("({})", c.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))).collect()
}

/// The partition of `{1, ..., r}` into sigma-equivalence classes.
pub fn sigma_equiv_classes(sig: &Automorphism) -> Vec<Vec<usize>> {
    sig.cycles()
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, ring: &Ring) -> Poly {
    a.mul(b, ring.field()).rem(m, ring.field()).unwrap()
}

fn all_residues(ring: &Ring, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = ring.field().size() as u64;
    let count = q.pow(deg as u32);
    (0..count).map(move |mut v| {
        let mut c = Vec::with_capacity(deg);
        for _ in 0..deg {
            c.push(Fe((v % q) as u32));
            v /= q;
        }
        Poly::new(c)
    })
}

/// First root (in residue enumeration order) of `pi_k` inside `K_l`.
fn root_in(ring: &Ring, k: usize, l: usize) -> Poly {
    let pk = &ring.factors()[k];
    let pl = &ring.factors()[l];
    all_residues(ring, ring.kappa0(l))
        .find(|b| {
            let val = pk
                .coeffs()
                .iter()
                .rev()
                .fold(Poly::zero(), |acc, &c| mul_mod(&acc, b, pl, ring).add(&Poly::constant(c), ring.field()));
            val.is_zero()
        })
        .expect("pi_k splits in the isomorphic field K_l")
}

fn frobenius(ring: &Ring, b: &Poly, j: usize, m: &Poly) -> Poly {
    let q = ring.field().size() as u64;
    let mut out = b.clone();
    for _ in 0..j {
        out = out.pow_mod(q, m, ring.field()).unwrap();
    }
    out
}

fn class_permutations(ring: &Ring) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0usize; ring.r()]];
    for class in ring.classes0() {
        let mut next = Vec::new();
        for base in &out {
            for p in permutations(class) {
                let mut perm = base.clone();
                for (&k, &l) in class.iter().zip(&p) {
                    perm[k] = l;
                }
                next.push(perm);
            }
        }
        out = next;
    }
    out
}

/// All orderings of `items` in lexicographic order.
pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn build(ring: &Arc<Ring>, perm: &[usize], exps: &[usize]) -> Result<Automorphism> {
    let mut parts = vec![Poly::zero(); ring.r()];
    for (k, &l) in perm.iter().enumerate() {
        let beta = root_in(ring, k, l);
        parts[l] = frobenius(ring, &beta, exps[k], &ring.factors()[l]);
    }
    let image = ring.crt_backward(&parts)?;
    Automorphism::from_image(ring, image)
}

fn exponent_vectors(ring: &Ring) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..ring.r() {
        let kappa = ring.kappa0(k);
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..kappa).map(move |j| {
                    let mut w = v.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

/// The full group `Aut_F(A)`: every class-preserving permutation of the components
/// combined with every choice of Frobenius power on each component.
pub fn enumerate_automorphisms(ring: &Arc<Ring>) -> Vec<Automorphism> {
    let exps = exponent_vectors(ring);
    let mut out = Vec::new();
    for perm in class_permutations(ring) {
        for e in &exps {
            out.push(build(ring, &perm, e).expect("constructed map is an automorphism"));
        }
    }
    out
}

/// Closed-form group order `prod_t kappa_t^{r_t} r_t!`.
pub fn automorphism_count(ring: &Ring) -> u128 {
    ring.classes0()
        .iter()
        .map(|c| {
            let kappa = ring.kappa0(c[0]) as u128;
            let fact: u128 = (1..=c.len() as u128).product();
            kappa.pow(c.len() as u32) * fact
        })
        .product()
}

/// An automorphism inducing the given permutation (1-based, `target[k-1] = Pi(k)`),
/// choosing the lexicographically smallest Frobenius exponents.
pub fn find_automorphism_for_permutation(ring: &Arc<Ring>, target: &[usize]) -> Result<Automorphism> {
    let r = ring.r();
    if target.len() != r {
        return Err(Error::LengthMismatch { expected: r, got: target.len() });
    }
    let mut perm = Vec::with_capacity(r);
    for &l in target {
        perm.push(ring.index(l)?);
    }
    let mut seen = vec![false; r];
    for &l in &perm {
        if std::mem::replace(&mut seen[l], true) {
            return Err(Error::BadParameters("target is not a permutation".into()));
        }
    }
    if perm.iter().enumerate().any(|(k, &l)| ring.kappa0(k) != ring.kappa0(l)) {
        return Err(Error::ClassViolation);
    }
    build(ring, &perm, &vec![0; r])
}

/// Converts cycle notation (1-based) into a permutation array of length `r`.
pub fn perm_from_cycles(cycles: &[Vec<usize>], r: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (1..=r).collect();
    let mut seen = vec![false; r + 1];
    for c in cycles {
        for (i, &k) in c.iter().enumerate() {
            if k == 0 || k > r {
                return Err(Error::IndexOutOfRange { index: k, max: r });
            }
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::BadParameters(format!("index {k} appears twice")));
            }
            perm[k - 1] = c[(i + 1) % c.len()];
        }
    }
    Ok(perm)
}
