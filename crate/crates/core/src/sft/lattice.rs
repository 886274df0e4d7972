use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite-index subgroup of Z^d in Hermite normal form.
///
/// The generators are the columns of an upper-triangular matrix `h` with
/// positive diagonal and `0 <= h[i][j] < h[i][i]` for `j > i`. Every
/// subgroup has exactly one such basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Sublattice {
    rows: Vec<Vec<i64>>,
}

impl Sublattice {
    /// Accept a matrix that is already in canonical form.
    pub fn from_hnf(rows: Vec<Vec<i64>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::invalid("lattice basis must be a nonempty square matrix"));
        }
        for i in 0..d {
            if rows[i][i] <= 0 {
                return Err(Error::invalid("lattice diagonal entries must be positive"));
            }
            for j in 0..d {
                let v = rows[i][j];
                if j < i && v != 0 {
                    return Err(Error::invalid("lattice basis must be upper triangular"));
                }
                if j > i && !(0..rows[i][i]).contains(&v) {
                    return Err(Error::invalid("off-diagonal entries must lie in [0, diagonal)"));
                }
            }
        }
        Ok(Sublattice { rows })
    }

    /// Canonical form of the subgroup generated by `gens` (each of length d).
    pub fn from_generators(d: usize, gens: &[Vec<i64>]) -> Result<Self> {
        if gens.iter().any(|g| g.len() != d) {
            return Err(Error::invalid("generator dimension mismatch"));
        }
        // Column-style HNF by integer row reduction on the transposed system,
        // processing coordinates from last to first.
        let mut cols: Vec<Vec<i64>> = gens.to_vec();
        let mut basis: Vec<Vec<i64>> = vec![vec![0; d]; d];
        for axis in (0..d).rev() {
            // gcd-combine every generator's `axis` entry into one pivot.
            let mut pivot: Option<Vec<i64>> = None;
            let mut rest = Vec::new();
            for c in cols.drain(..) {
                if c[axis] == 0 {
                    rest.push(c);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(c),
                    Some(mut p) => {
                        let mut c = c;
                        while c[axis] != 0 {
                            let q = p[axis].div_euclid(c[axis]);
                            for k in 0..d {
                                p[k] -= q * c[k];
                            }
                            std::mem::swap(&mut p, &mut c);
                        }
                        rest.push(c);
                        pivot = Some(p);
                    }
                }
            }
            let mut p = pivot.ok_or_else(|| Error::invalid("generators do not span a finite-index subgroup"))?;
            if p[axis] < 0 {
                p.iter_mut().for_each(|x| *x = -*x);
            }
            basis[axis] = p;
            cols = rest;
        }
        let mut rows = vec![vec![0i64; d]; d];
        for (j, col) in basis.iter().enumerate() {
            for i in 0..d {
                rows[i][j] = col[i];
            }
        }
        // Reduce entries above each diagonal, column by column.
        for j in 0..d {
            for i in (0..j).rev() {
                let q = rows[i][j].div_euclid(rows[i][i]);
                if q != 0 {
                    for k in 0..=i {
                        rows[k][j] -= q * rows[k][i];
                    }
                }
            }
        }
        Sublattice::from_hnf(rows)
    }

    /// `k * Z^d`.
    pub fn scaled(d: usize, k: i64) -> Result<Self> {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| if i == j { k } else { 0 }).collect())
            .collect();
        Sublattice::from_hnf(rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.rows[i][i]).collect()
    }

    pub fn index(&self) -> u64 {
        self.diagonal().iter().map(|&x| x as u64).product()
    }

    /// Generator `j` (column `j` of the basis).
    pub fn generator(&self, j: usize) -> Vec<i64> {
        (0..self.dim()).map(|i| self.rows[i][j]).collect()
    }

    pub fn generators(&self) -> Vec<Vec<i64>> {
        (0..self.dim()).map(|j| self.generator(j)).collect()
    }

    /// Representative of `v + L` in the box `0 <= x_i < h[i][i]`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for i in (0..self.dim()).rev() {
            let q = v[i].div_euclid(self.rows[i][i]);
            if q != 0 {
                for k in 0..=i {
                    v[k] -= q * self.rows[k][i];
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Position of a reduced vector in the fundamental domain, axis 0 fastest.
    pub fn cell_index(&self, reduced: &[i64]) -> usize {
        let mut idx = 0usize;
        for i in (0..self.dim()).rev() {
            idx = idx * self.rows[i][i] as usize + reduced[i] as usize;
        }
        idx
    }

    pub fn index_of(&self, v: &[i64]) -> usize {
        self.cell_index(&self.reduce(v))
    }

    /// Inverse of [`Sublattice::cell_index`].
    pub fn cell(&self, mut idx: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.dim()];
        for (i, x) in v.iter_mut().enumerate() {
            let a = self.rows[i][i] as usize;
            *x = (idx % a) as i64;
            idx /= a;
        }
        v
    }

    /// Fundamental-domain cells in index order.
    pub fn cells(&self) -> Vec<Vec<i64>> {
        (0..self.index() as usize).map(|i| self.cell(i)).collect()
    }
}

impl std::fmt::Display for Sublattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

fn factorizations_into(k: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for a in crate::numtheory::divisors(k) {
        for mut rest in factorizations_into(k / a, parts - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Every sublattice of Z^d with index `k`, each exactly once, in
/// lexicographic order of their canonical bases.
pub fn sublattices_of_index(d: usize, k: u64) -> Result<Vec<Sublattice>> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if k == 0 {
        return Err(Error::invalid("index must be positive"));
    }
    let mut out = Vec::new();
    for diag in factorizations_into(k, d) {
        // free positions: (i, j) with j > i, each ranging over [0, diag[i])
        let slots: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        let total: u64 = slots.iter().map(|&(i, _)| diag[i]).product();
        for mut code in 0..total {
            let mut rows = vec![vec![0i64; d]; d];
            for i in 0..d {
                rows[i][i] = diag[i] as i64;
            }
            for &(i, j) in &slots {
                rows[i][j] = (code % diag[i]) as i64;
                code /= diag[i];
            }
            out.push(Sublattice { rows });
        }
    }
    out.sort();
    Ok(out)
}

/// Every sublattice with index at most `max_index`, ordered by index then basis.
pub fn sublattices_up_to(d: usize, max_index: u64) -> Result<Vec<Sublattice>> {
    let mut out = Vec::new();
    for k in 1..=max_index {
        out.extend(sublattices_of_index(d, k)?);
    }
    Ok(out)
}
