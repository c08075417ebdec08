//! Dense linear algebra over `F_q`.

use crate::field::{Fe, Field};

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(f: &Field, m: &mut [Vec<Fe>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = f.inv(m[row][col]).unwrap();
        for v in m[row].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let c = r[col];
            for (v, &pv) in r.iter_mut().zip(&pivot_row).skip(col) {
                *v = f.sub(*v, f.mul(c, pv));
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub(crate) fn rank(f: &Field, m: &[Vec<Fe>]) -> usize {
    let mut m = m.to_vec();
    rref(f, &mut m).len()
}

/// Solves `M y = b`, returning one solution if the system is consistent.
pub(crate) fn solve(f: &Field, m: &[Vec<Fe>], b: &[Fe]) -> Option<Vec<Fe>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Fe>> = m
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut r = r.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut y = vec![Fe::ZERO; cols];
    for (i, &p) in pivots.iter().enumerate() {
        y[p] = aug[i][cols];
    }
    Some(y)
}

/// A basis of the right nullspace `{y : M y = 0}`.
pub(crate) fn nullspace(f: &Field, m: &[Vec<Fe>], cols: usize) -> Vec<Vec<Fe>> {
    let mut r = m.to_vec();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut y = vec![Fe::ZERO; cols];
            y[fc] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                y[p] = f.neg(r[i][fc]);
            }
            y
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_nullspace() {
        let f = Field::prime(5).unwrap();
        let e = |v: u32| Fe(v);
        let m = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(2)]];
        let b = vec![e(1), e(0)];
        let y = solve(&f, &m, &b).unwrap();
        for (row, &bi) in m.iter().zip(&b) {
            let s = row.iter().zip(&y).fold(Fe::ZERO, |acc, (&a, &x)| f.add(acc, f.mul(a, x)));
            assert_eq!(s, bi);
        }
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(rank(&f, &m), 2);
        let inconsistent = vec![vec![e(1), e(1)], vec![e(2), e(2)]];
        assert!(solve(&f, &inconsistent, &[e(1), e(1)]).is_none());
    }
}
