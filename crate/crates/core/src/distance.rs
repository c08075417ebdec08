//! Free distance and the Singleton and Griesmer bounds.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field, Poly};
use crate::polymat::PolyMatrix;

pub use crate::polymat::weight;

pub const DEFAULT_STATE_CAP: u128 = 1 << 16;
pub const DEFAULT_NODE_CAP: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attains {
    Singleton,
    Griesmer,
    Below,
}

impl std::fmt::Display for Attains {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Attains::Singleton => "singleton",
            Attains::Griesmer => "griesmer",
            Attains::Below => "below",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub distance: usize,
    pub witness: Vec<Poly>,
    pub singleton: usize,
    pub griesmer: usize,
    pub attains: Attains,
}

/// Coefficient blocks `g[i][s]` (n-vector of the `z^s` coefficients of row `i`).
fn row_blocks(g: &PolyMatrix) -> Vec<Vec<Vec<Fe>>> {
    let degs = g.row_degrees();
    (0..g.rows()).map(|i| (0..=degs[i]).map(|s| g.row(i).iter().map(|p| p.coeff(s)).collect()).collect()).collect()
}

fn decode_digits(mut x: u64, q: u64, len: usize) -> Vec<Fe> {
    (0..len)
        .map(|_| {
            let d = Fe((x % q) as u32);
            x /= q;
            d
        })
        .collect()
}

fn encode_digits(d: &[Fe], q: u64) -> u64 {
    d.iter().rev().fold(0, |acc, x| acc * q + x.value() as u64)
}

fn hamming(v: &[Fe]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

fn axpy(f: &Field, acc: &mut [Fe], a: Fe, x: &[Fe]) {
    if a.is_zero() {
        return;
    }
    for (o, &xi) in acc.iter_mut().zip(x) {
        *o = f.add(*o, f.mul(a, xi));
    }
}

/// Inputs `u_0, ..., u_T` (k-vectors) to the message polynomials.
fn messages(blocks: &[Vec<Fe>], k: usize) -> Vec<Poly> {
    (0..k).map(|i| Poly::new(blocks.iter().map(|b| b[i]).collect())).collect()
}

/// Exact free distance via a shortest-path search on the controller-form state
/// graph of a minimal, right-invertible `G`.
pub fn free_distance(g: &PolyMatrix, state_cap: u128) -> Result<DistanceReport> {
    if !g.is_right_invertible()? {
        return Err(Error::NotRightInvertible);
    }
    if !g.is_minimal()? {
        return Err(Error::NotMinimal);
    }
    let f = &**g.field();
    let (k, n) = (g.rows(), g.cols());
    let nu = g.row_degrees();
    let delta: usize = nu.iter().sum();
    let q = f.size() as u64;
    let states = (q as u128).checked_pow(delta as u32).unwrap_or(u128::MAX);
    if states > state_cap {
        return Err(Error::StateCapExceeded { states, cap: state_cap });
    }
    let states = states as usize;
    let inputs = q.pow(k as u32);
    let blocks = row_blocks(g);
    let offsets: Vec<usize> = nu
        .iter()
        .scan(0, |acc, &v| {
            let o = *acc;
            *acc += v;
            Some(o)
        })
        .collect();

    // output contribution of a state (memory cells times g[i][s], s >= 1)
    let mut state_out = vec![vec![Fe::ZERO; n]; states];
    for (s, out) in state_out.iter_mut().enumerate() {
        let cells = decode_digits(s as u64, q, delta);
        for i in 0..k {
            for j in 0..nu[i] {
                axpy(f, out, cells[offsets[i] + j], &blocks[i][j + 1]);
            }
        }
    }
    let mut input_out = vec![vec![Fe::ZERO; n]; inputs as usize];
    for (b, out) in input_out.iter_mut().enumerate() {
        let u = decode_digits(b as u64, q, k);
        for i in 0..k {
            axpy(f, out, u[i], &blocks[i][0]);
        }
    }
    let next_state = |s: usize, b: u64| -> usize {
        let cells = decode_digits(s as u64, q, delta);
        let u = decode_digits(b, q, k);
        let mut nc = vec![Fe::ZERO; delta];
        for i in 0..k {
            if nu[i] == 0 {
                continue;
            }
            nc[offsets[i]] = u[i];
            nc[offsets[i] + 1..offsets[i] + nu[i]].copy_from_slice(&cells[offsets[i]..offsets[i] + nu[i] - 1]);
        }
        encode_digits(&nc, q) as usize
    };
    let edge_weight = |s: usize, b: u64| -> usize {
        state_out[s].iter().zip(&input_out[b as usize]).filter(|(a, c)| f.add(**a, **c) != Fe::ZERO).count()
    };

    let mut dist = vec![usize::MAX; states];
    let mut pred: Vec<Option<(Option<usize>, u64)>> = vec![None; states];
    let mut heap = BinaryHeap::new();
    for b in 1..inputs {
        let t = next_state(0, b);
        let w = edge_weight(0, b);
        if w < dist[t] {
            dist[t] = w;
            pred[t] = Some((None, b));
        }
    }
    for (s, &d) in dist.iter().enumerate() {
        if d != usize::MAX {
            heap.push(Reverse((d, s)));
        }
    }
    let mut settled = vec![false; states];
    while let Some(Reverse((d, s))) = heap.pop() {
        if settled[s] || d > dist[s] {
            continue;
        }
        settled[s] = true;
        if s == 0 {
            break;
        }
        for b in 0..inputs {
            let t = next_state(s, b);
            let nd = d + edge_weight(s, b);
            if nd < dist[t] {
                dist[t] = nd;
                pred[t] = Some((Some(s), b));
                heap.push(Reverse((nd, t)));
            }
        }
    }
    if !settled[0] {
        return Err(Error::NotRightInvertible);
    }
    let distance = dist[0];
    let mut path = Vec::new();
    let mut cur = 0usize;
    loop {
        let (p, b) = pred[cur].expect("settled node has a predecessor");
        path.push(decode_digits(b, q, k));
        match p {
            Some(s) => cur = s,
            None => break,
        }
    }
    path.reverse();
    let witness = g.vec_mul(&messages(&path, k))?;
    if weight(&witness) != distance {
        return Err(Error::BadParameters("witness weight mismatch".into()));
    }
    let singleton = singleton_bound(n, k, delta)?;
    let griesmer = griesmer_bound(n, k, delta, nu.iter().copied().max().unwrap_or(0), f.size())?;
    let attains = if distance == singleton {
        Attains::Singleton
    } else if distance == griesmer {
        Attains::Griesmer
    } else {
        Attains::Below
    };
    Ok(DistanceReport { distance, witness, singleton, griesmer, attains })
}

struct Search<'a> {
    f: &'a Field,
    blocks: Vec<Vec<Vec<Fe>>>,
    k: usize,
    n: usize,
    q: u64,
    max_deg: usize,
    memory: usize,
    best: usize,
    nodes: u64,
    cap: u64,
    u: Vec<Vec<Fe>>,
}

impl Search<'_> {
    fn output(&self, t: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.n];
        for (s, ut) in self.u.iter().enumerate().rev().take(self.memory + 1) {
            if s > t || t - s > self.memory {
                continue;
            }
            for i in 0..self.k {
                if let Some(row) = self.blocks[i].get(t - s) {
                    axpy(self.f, &mut v, ut[i], row);
                }
            }
        }
        v
    }

    fn tail_weight(&self) -> usize {
        let last = self.u.len() - 1;
        (last + 1..=last + self.memory).map(|t| hamming(&self.output(t))).sum()
    }

    fn go(&mut self, acc: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::EnumerationCapExceeded(self.cap));
        }
        let t = self.u.len() - 1;
        let w = acc + hamming(&self.output(t));
        if w >= self.best {
            return Ok(());
        }
        let total = w + self.tail_weight();
        if total < self.best {
            self.best = total;
        }
        if t == self.max_deg {
            return Ok(());
        }
        for b in 0..self.q.pow(self.k as u32) {
            self.u.push(decode_digits(b, self.q, self.k));
            let r = self.go(w);
            self.u.pop();
            r?;
        }
        Ok(())
    }
}

/// Minimum weight of `u G` over nonzero `u` with `deg u <= max_deg`, by
/// branch-and-bound over message blocks. `node_cap` bounds the visited nodes.
pub fn free_distance_bruteforce(g: &PolyMatrix, max_deg: usize, node_cap: u64) -> Result<usize> {
    let f = &**g.field();
    let k = g.rows();
    let q = f.size() as u64;
    let blocks = row_blocks(g);
    let memory = g.row_degrees().into_iter().max().unwrap_or(0);
    let mut best = (0..k).map(|i| weight(g.row(i))).filter(|&w| w > 0).min().unwrap_or(usize::MAX);
    if best == usize::MAX {
        best = usize::MAX - 1;
    }
    let mut s = Search { f, blocks, k, n: g.cols(), q, max_deg, memory, best, nodes: 0, cap: node_cap, u: Vec::new() };
    for b in 1..q.pow(k as u32) {
        let u0 = decode_digits(b, q, k);
        if u0.iter().find(|c| !c.is_zero()) != Some(&Fe::ONE) {
            continue;
        }
        s.u.push(u0);
        let r = s.go(0);
        s.u.pop();
        r?;
    }
    Ok(s.best)
}

/// `(n-k)(floor(delta/k)+1) + delta + 1`
pub fn singleton_bound(n: usize, k: usize, delta: usize) -> Result<usize> {
    if k == 0 || n <= k {
        return Err(Error::BadParameters(format!("need 1 <= k < n, got n={n}, k={k}")));
    }
    Ok((n - k) * (delta / k + 1) + delta + 1)
}

fn griesmer_ok(n: usize, k: usize, delta: usize, m: usize, q: u128, d: usize) -> bool {
    let mut stabilized = false;
    for i in 0.. {
        let top = (k * (m + i)) as i64 - delta as i64 - 1;
        let mut sum = 0u128;
        let mut pow = 1u128;
        for _ in 0..=top {
            sum += (d as u128).div_ceil(pow);
            pow = pow.saturating_mul(q);
        }
        if sum > (n * (m + i)) as u128 {
            return false;
        }
        if stabilized {
            return true;
        }
        // past here each step adds k ones on the left and n on the right
        stabilized = top >= 0 && pow / q >= d as u128;
    }
    unreachable!()
}

/// Largest `d <= S(n,k,delta)` satisfying the field-size-aware inequalities for all
/// `i >= 0`, where `m` is the largest Forney index.
pub fn griesmer_bound(n: usize, k: usize, delta: usize, m: usize, q: u32) -> Result<usize> {
    let s = singleton_bound(n, k, delta)?;
    if m > delta || k * m < delta {
        return Err(Error::BadParameters(format!("memory {m} inconsistent with k={k}, delta={delta}")));
    }
    Ok((1..=s).rev().find(|&d| griesmer_ok(n, k, delta, m, q as u128, d)).unwrap_or(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;
    use std::sync::Arc;

    fn mat(field: &Arc<Field>, rows: &[&[&str]]) -> PolyMatrix {
        let e = rows.iter().map(|r| r.iter().map(|s| parse::zpoly(field, s).unwrap()).collect()).collect();
        PolyMatrix::new(field.clone(), e).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(singleton_bound(7, 1, 2).unwrap(), 21);
        assert_eq!(singleton_bound(3, 1, 1).unwrap(), 6);
        assert_eq!(singleton_bound(7, 4, 0).unwrap(), 4);
        assert!(singleton_bound(3, 3, 0).is_err());
        assert_eq!(griesmer_bound(3, 1, 6, 6, 4).unwrap(), 19);
        assert_eq!(griesmer_bound(7, 3, 6, 2, 2).unwrap(), 12);
        assert_eq!(griesmer_bound(7, 2, 4, 2, 8).unwrap(), 18);
        assert!(griesmer_bound(7, 2, 4, 1, 8).is_err());
    }

    #[test]
    fn weights() {
        let f = Arc::new(Field::prime(2).unwrap());
        assert_eq!(weight(&[]), 0);
        let v: Vec<Poly> = ["1+z", "0", "z^2"].iter().map(|s| parse::zpoly(&f, s).unwrap()).collect();
        assert_eq!(weight(&v), 3);
    }

    #[test]
    fn repetition_codes() {
        let f = Arc::new(Field::prime(2).unwrap());
        let g = mat(&f, &[&["1", "1", "1"]]);
        let r = free_distance(&g, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.distance, 3);
        assert_eq!(free_distance_bruteforce(&g, 2, DEFAULT_NODE_CAP).unwrap(), 3);
        // the (2,1,2) code with generators 1+z+z^2, 1+z^2 has free distance 5
        let g = mat(&f, &[&["1+z+z^2", "1+z^2"]]);
        let r = free_distance(&g, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(r.distance, 5);
        assert_eq!(weight(&r.witness), 5);
        assert_eq!(r.attains, Attains::Griesmer);
        assert_eq!(free_distance_bruteforce(&g, 6, DEFAULT_NODE_CAP).unwrap(), 5);
    }

    #[test]
    fn preconditions() {
        let f = Arc::new(Field::prime(2).unwrap());
        let g = mat(&f, &[&["1+z", "1+z^2"]]);
        assert_eq!(free_distance(&g, DEFAULT_STATE_CAP), Err(Error::NotRightInvertible));
        let g = mat(&f, &[&["1", "z"], &["1", "1+z"]]);
        assert_eq!(free_distance(&g, DEFAULT_STATE_CAP).map(|r| r.distance), Err(Error::NotMinimal));
        let g = mat(&f, &[&["1+z^20", "1"]]);
        assert_eq!(
            free_distance(&g, DEFAULT_STATE_CAP),
            Err(Error::StateCapExceeded { states: 1 << 20, cap: 1 << 16 })
        );
        assert_eq!(free_distance_bruteforce(&g, 30, 10), Err(Error::EnumerationCapExceeded(10)));
    }
}
