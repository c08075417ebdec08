//! Constructions of sigma-cyclic codes: minimal codes, complements, idempotent
//! generators and orthogonal sums.

use crate::code::ConvCode;
use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};
use crate::skew::{SkewPoly, SkewRing};

/// `1, a, a^2, ..., a^(q-2), a, a^2, ...` as constants of `A`, where `a` is the
/// field generator.
pub fn default_scalars(ring: &Ring, d: usize) -> Vec<RingElem> {
    let f = ring.field();
    let period = f.size() as i64 - 2;
    (0..d)
        .map(|i| {
            let e = if i == 0 || period <= 0 { 0 } else { (i as i64 - 1) % period + 1 };
            ring.constant(f.gen_pow(e))
        })
        .collect()
}

/// Data for a code generated by `eps_l * u_{a_1}(1) * ... * u_{a_d}(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCodeRecipe {
    pub l: usize,
    pub d: usize,
    pub scalars: Vec<RingElem>,
}

impl MinimalCodeRecipe {
    pub fn new(ring: &Ring, l: usize, d: usize) -> Self {
        MinimalCodeRecipe { l, d, scalars: default_scalars(ring, d) }
    }

    pub fn with_scalars(l: usize, scalars: Vec<RingElem>) -> Self {
        MinimalCodeRecipe { l, d: scalars.len(), scalars }
    }

    /// The reduced generator `eps_l * u`.
    pub fn generator(&self, skew: &SkewRing) -> Result<SkewPoly> {
        let ring = skew.ring();
        if self.scalars.len() != self.d {
            return Err(Error::LengthMismatch { expected: self.d, got: self.scalars.len() });
        }
        if self.d > 0 && skew.sigma().l_order(self.l)? == 1 {
            return Err(Error::FixedIdempotent(self.l));
        }
        let u = skew.unit_product(self.l, &self.scalars)?;
        Ok(skew.left_scale(ring.idempotent(self.l)?, &u))
    }
}

pub fn build_minimal_code(skew: &SkewRing, recipe: &MinimalCodeRecipe) -> Result<ConvCode> {
    ConvCode::from_reduced(skew, &recipe.generator(skew)?)
}

fn check_unit_match(skew: &SkewRing, g: &SkewPoly, u: &SkewPoly) -> Result<Vec<usize>> {
    skew.check(g)?;
    skew.check(u)?;
    if !skew.is_unit(u)? {
        return Err(Error::NotAUnit);
    }
    let support = skew.support(g);
    for &l in &support {
        if skew.component(u, l)? != skew.component(g, l)? {
            return Err(Error::ComponentMismatch);
        }
    }
    Ok(support)
}

/// `g' = sum of u^(l)` over `l` outside the support of `g`.
pub fn direct_complement(skew: &SkewRing, g: &SkewPoly, u: &SkewPoly) -> Result<SkewPoly> {
    let support = check_unit_match(skew, g, u)?;
    let mut out = skew.zero();
    for l in 1..=skew.ring().r() {
        if !support.contains(&l) {
            out = skew.add(&out, &skew.component(u, l)?);
        }
    }
    Ok(out)
}

/// `u^-1 g`, an idempotent generating the same left ideal as `g`.
pub fn idempotent_generator(skew: &SkewRing, g: &SkewPoly, u: &SkewPoly) -> Result<SkewPoly> {
    check_unit_match(skew, g, u)?;
    Ok(skew.mul(&skew.unit_inverse(u)?, g))
}

fn check_disjoint_cycles(skew: &SkewRing, ls: &[usize]) -> Result<()> {
    for (i, &a) in ls.iter().enumerate() {
        for &b in &ls[i + 1..] {
            if skew.sigma().equivalent(a, b)? {
                return Err(Error::OverlappingCycles(a, b));
            }
        }
    }
    Ok(())
}

/// Sum of minimal codes whose supports lie on pairwise different cycles of the
/// permutation induced by sigma.
pub fn orthogonal_sum(skew: &SkewRing, codes: &[ConvCode]) -> Result<ConvCode> {
    let mut ls = Vec::with_capacity(codes.len());
    let mut g = skew.zero();
    for c in codes {
        let (Some(gi), [l]) = (c.reduced_generator(), c.support()) else {
            return Err(Error::BadParameters("summands need a single-component generator".into()));
        };
        skew.check(gi)?;
        ls.push(*l);
        g = skew.add(&g, gi);
    }
    if ls.is_empty() {
        return Err(Error::BadParameters("empty sum".into()));
    }
    check_disjoint_cycles(skew, &ls)?;
    ConvCode::from_reduced(skew, &g)
}

/// A unit `w` with `deg_z w^(l_i) = d_i` for each target `(l_i, d_i)`.
pub fn build_unit_for_profile(skew: &SkewRing, targets: &[(usize, usize)]) -> Result<SkewPoly> {
    let ring = skew.ring();
    let ls: Vec<usize> = targets.iter().map(|t| t.0).collect();
    for &l in &ls {
        ring.index(l)?;
    }
    check_disjoint_cycles(skew, &ls)?;
    let mut w = skew.zero();
    let mut covered = vec![false; ring.r()];
    for &(l, d) in targets {
        if d > 0 && skew.sigma().l_order(l)? == 1 {
            return Err(Error::FixedIdempotent(l));
        }
        let u = skew.unit_product(l, &default_scalars(ring, d))?;
        for j in 1..=ring.r() {
            if skew.sigma().equivalent(l, j)? {
                covered[j - 1] = true;
                w = skew.add(&w, &skew.component(&u, j)?);
            }
        }
    }
    for (j, c) in covered.iter().enumerate() {
        if !c {
            w = skew.add(&w, &skew.constant(ring.idempotents()[j].clone()));
        }
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub reason: Option<String>,
}

/// Necessary conditions on the component degrees `d_1, ..., d_c` along a cycle of
/// length `o`.
pub fn degree_profile_feasible(o: usize, profile: &[usize]) -> Feasibility {
    let c = profile.len();
    let no = |r: String| Feasibility { feasible: false, reason: Some(r) };
    if c == 0 || c > o {
        return no(format!("profile length {c} outside 1..={o}"));
    }
    let mut seen = vec![None; o];
    for (i, &d) in profile.iter().enumerate() {
        let r = (i + 1 + d) % o;
        if let Some(j) = seen[r] {
            return no(format!("positions {} and {} collide modulo {o}", j + 1, i + 1));
        }
        seen[r] = Some(i);
    }
    if c == o && profile.iter().all(|&d| d == profile[0]) {
        return no("all degrees equal on a full cycle".into());
    }
    Feasibility { feasible: true, reason: None }
}
