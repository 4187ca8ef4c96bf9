//! Integer chain complexes and their homology via Smith normal form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        assert!(i < self.rows, "row out of range");
        let col = &mut self.cols[j];
        match col.iter_mut().find(|(r, _)| *r == i) {
            Some(e) => e.1 += v,
            None => col.push((i, v)),
        }
        col.retain(|(_, x)| *x != 0);
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].iter().find(|(r, _)| *r == i).map_or(0, |e| e.1)
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `self · other`, or `None` on overflow.
    pub fn mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols(), other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols());
        for (j, col) in other.cols.iter().enumerate() {
            let mut acc: alloc::collections::BTreeMap<usize, i64> = alloc::collections::BTreeMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            out.cols[j] = acc.into_iter().filter(|(_, v)| *v != 0).collect();
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Invariant factors (positive, each dividing the next) of an integer matrix.
/// Their number is the rank.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut units = 0usize;
    let rest = eliminate_units(m, &mut units);
    let mut diag = dense_diagonal(rest);
    normalize_divisibility(&mut diag);
    let mut out = vec![BigInt::one(); units];
    out.extend(diag);
    out
}

/// Sparse elimination on unit pivots (Schur complement). Each pivot
/// contributes an invariant factor 1. Returns what is left as a dense matrix.
fn eliminate_units(m: &IntMatrix, units: &mut usize) -> Vec<Vec<BigInt>> {
    use alloc::collections::{BTreeMap, BTreeSet};
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            rows[i].insert(j, v);
            col_rows[j].insert(i);
        }
    }
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (&j, &v) in row {
                if v == 1 || v == -1 {
                    let cost = (row.len() - 1) * (col_rows[j].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, j, cost));
                    }
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        let p = rows[r][&c];
        let pivot_row: Vec<(usize, i64)> = rows[r].iter().map(|(a, b)| (*a, *b)).collect();
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
        // compute all updates before mutating so overflow leaves the state intact
        let mut updates = Vec::with_capacity(targets.len());
        let mut overflow = false;
        'outer: for &i in &targets {
            let f = rows[i][&c] * p;
            let mut upd = Vec::with_capacity(pivot_row.len());
            for &(j, v) in &pivot_row {
                let old = rows[i].get(&j).copied().unwrap_or(0);
                match f.checked_mul(v).and_then(|x| old.checked_sub(x)) {
                    Some(n) => upd.push((j, n)),
                    None => {
                        overflow = true;
                        break 'outer;
                    }
                }
            }
            updates.push((i, upd));
        }
        if overflow {
            break;
        }
        for (i, upd) in updates {
            for (j, n) in upd {
                if n == 0 {
                    rows[i].remove(&j);
                    col_rows[j].remove(&i);
                } else {
                    rows[i].insert(j, n);
                    col_rows[j].insert(i);
                }
            }
        }
        for (j, _) in pivot_row {
            col_rows[j].remove(&r);
        }
        rows[r].clear();
        *units += 1;
    }
    let live_cols: Vec<usize> = (0..col_rows.len()).filter(|&j| !col_rows[j].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    rows.iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in r {
                dense[col_pos[j]] = BigInt::from(*v);
            }
            dense
        })
        .collect()
}

/// Diagonalizes a dense matrix by unimodular row and column operations and
/// returns the nonzero diagonal entries (absolute values).
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        a.iter_mut().for_each(|row| row.swap(t, bj));
        loop {
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
            }
            // move a smaller remainder into the pivot, if any
            let mut next: Option<(usize, usize)> = None;
            for i in t + 1..m {
                if !a[i][t].is_zero() && next.is_none_or(|(x, y)| a[i][t].abs() < a[x][y].abs()) {
                    next = Some((i, t));
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() && next.is_none_or(|(x, y)| a[t][j].abs() < a[x][y].abs()) {
                    next = Some((t, j));
                }
            }
            match next {
                None => break,
                Some((i, j)) if j == t => a.swap(t, i),
                Some((_, j)) => a.iter_mut().for_each(|row| row.swap(t, j)),
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Rewrites a diagonal into invariant-factor form (each divides the next).
fn normalize_divisibility(d: &mut Vec<BigInt>) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

/// A chain complex of free abelian groups `C_k`, `k ≥ min_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    pub min_degree: i64,
    /// `ranks[k]` is the rank of `C_{min_degree + k}`.
    pub ranks: Vec<usize>,
    /// `boundaries[k]` is `∂ : C_{min_degree + k} → C_{min_degree + k − 1}`;
    /// `boundaries[0]` maps to the zero group.
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(min_degree: i64, ranks: Vec<usize>) -> Self {
        let boundaries = (0..ranks.len()).map(|k| IntMatrix::zeros(if k == 0 { 0 } else { ranks[k - 1] }, ranks[k])).collect();
        Self { min_degree, ranks, boundaries }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, r)| if (self.min_degree + k as i64).rem_euclid(2) == 0 { *r as i64 } else { -(*r as i64) })
            .sum()
    }

    /// True iff `∂ ∘ ∂ = 0` in every degree.
    pub fn is_chain_complex(&self) -> bool {
        (2..self.boundaries.len()).all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_some_and(|m| m.is_zero()))
    }

    pub fn homology(&self) -> Homology {
        let facs: Vec<Vec<BigInt>> = self.boundaries.iter().map(invariant_factors).collect();
        let groups = (0..self.ranks.len())
            .map(|k| {
                let rank_here = facs[k].len();
                let (rank_next, torsion) = match facs.get(k + 1) {
                    Some(f) => (f.len(), f.iter().filter(|d| !d.is_one()).cloned().collect()),
                    None => (0, Vec::new()),
                };
                HomologyGroup { rank: self.ranks[k] - rank_here - rank_next, torsion }
            })
            .collect();
        Homology { min_degree: self.min_degree, groups }
    }
}

/// `Z^rank ⊕ ⊕ Z/t` for each torsion coefficient `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub min_degree: i64,
    pub groups: Vec<HomologyGroup>,
}

impl Homology {
    pub fn group(&self, degree: i64) -> Option<&HomologyGroup> {
        usize::try_from(degree - self.min_degree).ok().and_then(|k| self.groups.get(k))
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.group(degree).map_or(0, |g| g.rank)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Homology of the `d`-sphere: `Z` in degree `d` and (away from degree 0
    /// for unreduced homology) nothing else. For reduced homology pass the
    /// complex built with the augmentation.
    pub fn is_reduced_sphere(&self, d: i64) -> bool {
        self.group(d).is_some_and(HomologyGroup::is_z)
            && self.groups.iter().enumerate().all(|(k, g)| self.min_degree + k as i64 == d || g.is_zero())
    }

    /// Unreduced homology of `S^d` for `d ≥ 1`: `Z` in degrees 0 and `d`.
    pub fn is_unreduced_sphere(&self, d: i64) -> bool {
        d >= 1
            && self.groups.iter().enumerate().all(|(k, g)| {
                let deg = self.min_degree + k as i64;
                if deg == 0 || deg == d {
                    g.is_z()
                } else {
                    g.is_zero()
                }
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if *v != 0 {
                    m.add(i, j, *v);
                }
            }
        }
        m
    }

    #[test]
    fn invariant_factors_of_small_matrices() {
        let m = dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let f = invariant_factors(&m);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let m = dense(&[&[1, 2], &[3, 4]]);
        assert_eq!(invariant_factors(&m), vec![BigInt::one(), BigInt::from(2)]);
        assert!(invariant_factors(&IntMatrix::zeros(3, 2)).is_empty());
    }

    #[test]
    fn torsion_is_detected() {
        // C_1 = Z -> C_0 = 0, C_2 = Z -> C_1 by 2: H_1 = Z/2
        let mut c = ChainComplex::new(0, vec![0, 1, 1]);
        c.boundaries[2].add(0, 0, 2);
        let h = c.homology();
        assert_eq!(h.groups[1], HomologyGroup { rank: 0, torsion: vec![BigInt::from(2)] });
        assert!(!h.is_torsion_free());
    }
}
