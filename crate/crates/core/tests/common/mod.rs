//! Independent reference implementations used as test oracles. They rely only
//! on scalar field arithmetic and recompute everything from the definitions.
#![allow(dead_code)]

use skewcode::automorphism::Automorphism;
use skewcode::field::{Fe, Field};
use skewcode::ring::{Ring, RingElem};
use skewcode::skew::{SkewPoly, SkewRing};

pub type Vector = Vec<Fe>;

pub fn elements(f: &Field) -> Vec<Fe> {
    f.elements().collect()
}

/// Product in `F[x]/(x^n - 1)` by schoolbook convolution.
pub fn cyclic_mul(f: &Field, a: &[Fe], b: &[Fe]) -> Vector {
    let n = a.len();
    let mut out = vec![f.zero(); n];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let k = (i + j) % n;
            out[k] = f.add(out[k], f.mul(ai, bj));
        }
    }
    out
}

pub fn cyclic_pow(f: &Field, a: &[Fe], e: usize) -> Vector {
    let mut out = vec![f.zero(); a.len()];
    out[0] = f.one();
    for _ in 0..e {
        out = cyclic_mul(f, &out, a);
    }
    out
}

pub fn add(f: &Field, a: &[Fe], b: &[Fe]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

/// All vectors of `F^n` in counting order.
pub fn all_vectors(f: &Field, n: usize) -> Vec<Vector> {
    let els = elements(f);
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| els.iter().map(move |&e| [v.clone(), vec![e]].concat())).collect();
    }
    out
}

/// Polynomial remainder over `F`, coefficients low to high.
pub fn poly_rem(f: &Field, a: &[Fe], m: &[Fe]) -> Vector {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).unwrap();
    while r.len() > dm {
        let c = f.mul(*r.last().unwrap(), lead_inv);
        let shift = r.len() - 1 - dm;
        if !c.is_zero() {
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
            }
        }
        r.pop();
    }
    r
}

/// Monic irreducible factors of `x^n - 1` found by trial division, as
/// coefficient vectors; assumes `x^n - 1` is squarefree.
pub fn trial_division_factors(f: &Field, n: usize) -> Vec<Vector> {
    let mut rest = vec![f.zero(); n + 1];
    rest[0] = f.neg(f.one());
    rest[n] = f.one();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.len() > 1 {
        for tail in all_vectors(f, d) {
            let mut cand = tail.clone();
            cand.push(f.one());
            if rest.len() <= d {
                break;
            }
            if poly_rem(f, &rest, &cand).iter().all(|c| c.is_zero()) {
                rest = poly_div_exact(f, &rest, &cand);
                out.push(cand);
            }
        }
        d += 1;
    }
    out
}

fn poly_div_exact(f: &Field, a: &[Fe], m: &[Fe]) -> Vector {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![f.zero(); a.len() - dm];
    for s in (0..q.len()).rev() {
        let c = f.div(r[s + dm], m[dm]).unwrap();
        q[s] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[s + i] = f.sub(r[s + i], f.mul(c, mi));
        }
    }
    q
}

fn rank(f: &Field, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).unwrap();
        let pivot: Vector = m[r].iter().map(|&v| f.mul(v, inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Images `a` of `x` that define automorphisms: `a^n = 1` and `1, a, ..., a^(n-1)`
/// linearly independent.
pub fn brute_force_automorphism_images(f: &Field, n: usize) -> Vec<Vector> {
    let mut one = vec![f.zero(); n];
    one[0] = f.one();
    all_vectors(f, n)
        .into_iter()
        .filter(|a| {
            if cyclic_pow(f, a, n) != one {
                return false;
            }
            let powers: Vec<Vector> = (0..n).map(|i| cyclic_pow(f, a, i)).collect();
            rank(f, &powers) == n
        })
        .collect()
}

/// `a(sigma(x))` by substitution.
pub fn substitute(f: &Field, a: &[Fe], image: &[Fe]) -> Vector {
    let mut out = vec![f.zero(); a.len()];
    for (i, &c) in a.iter().enumerate() {
        if !c.is_zero() {
            let p = cyclic_pow(f, image, i);
            out = add(f, &out, &p.iter().map(|&v| f.mul(c, v)).collect::<Vector>());
        }
    }
    out
}

pub fn sigma_pow(f: &Field, a: &[Fe], image: &[Fe], k: usize) -> Vector {
    (0..k).fold(a.to_vec(), |acc, _| substitute(f, &acc, image))
}

/// Skew product from `z^j a * z^l b = z^(j+l) sigma^l(a) b` on coefficient lists.
pub fn skew_mul(f: &Field, image: &[Fe], a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = image.len();
    let mut out = vec![vec![f.zero(); n]; a.len() + b.len() - 1];
    for (j, aj) in a.iter().enumerate() {
        for (l, bl) in b.iter().enumerate() {
            let t = cyclic_mul(f, &sigma_pow(f, aj, image, l), bl);
            out[j + l] = add(f, &out[j + l], &t);
        }
    }
    while out.last().is_some_and(|v| v.iter().all(|c| c.is_zero())) {
        out.pop();
    }
    out
}

pub fn to_lists(s: &SkewPoly) -> Vec<Vector> {
    s.coeffs().iter().map(|c| c.coeffs().to_vec()).collect()
}

pub fn from_lists(skew: &SkewRing, c: &[Vector]) -> SkewPoly {
    let ring = skew.ring();
    skew.from_coeffs(c.iter().map(|v| ring.from_coeffs(v.clone()).unwrap()).collect()).unwrap()
}

pub fn image_of(sigma: &Automorphism) -> Vector {
    let n = sigma.ring().n();
    let mut v = sigma.image().coeffs().to_vec();
    v.resize(n, Fe::ZERO);
    v
}

pub fn elem(ring: &Ring, v: &[Fe]) -> RingElem {
    ring.from_coeffs(v.to_vec()).unwrap()
}

/// Minimum weight of `u G` over all nonzero messages of degree `<= d`, by plain
/// enumeration. `g[i][j]` lists coefficients of entry `(i, j)`.
pub fn naive_distance(f: &Field, g: &[Vec<Vector>], d: usize) -> usize {
    let k = g.len();
    let mut best = usize::MAX;
    for msg in all_vectors(f, k * (d + 1)) {
        if msg.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut w = 0;
        for j in 0..g[0].len() {
            let len = d + 1 + g.iter().map(|r| r[j].len()).max().unwrap_or(0);
            let mut out = vec![f.zero(); len];
            for i in 0..k {
                for t in 0..=d {
                    let m = msg[i * (d + 1) + t];
                    for (s, &c) in g[i][j].iter().enumerate() {
                        out[t + s] = f.add(out[t + s], f.mul(m, c));
                    }
                }
            }
            w += out.iter().filter(|c| !c.is_zero()).count();
        }
        best = best.min(w);
    }
    best
}
