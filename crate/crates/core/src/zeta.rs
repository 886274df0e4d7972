//! Vertex-shift presentations of one-dimensional SFTs and their zeta functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::interpolate;
use crate::sft::{SftSpec, Symbol};

/// Nonnegative integer matrix presenting a vertex shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    matrix: IntMatrix,
    /// Block word carried by each vertex (empty for the one-vertex full shift).
    labels: Vec<Vec<Symbol>>,
}

impl TransferMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.size() == 0 {
            return Err(Error::invalid("transfer matrix must be nonempty"));
        }
        if matrix.rows().iter().flatten().any(|x| x.is_negative()) {
            return Err(Error::invalid("transfer matrix entries must be nonnegative"));
        }
        let labels = vec![Vec::new(); matrix.size()];
        Ok(TransferMatrix { matrix, labels })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        TransferMatrix::new(IntMatrix::from_i64(rows)?)
    }

    /// Parse rows separated by `;` or newlines, entries by spaces or commas.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> = text
            .split([';', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map_err(|_| Error::parse(format!("bad matrix entry `{t}`"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        TransferMatrix::from_i64(&rows)
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[Vec<Symbol>] {
        &self.labels
    }

    /// `tr(A^n)`, the number of period-`n` points of the vertex shift.
    pub fn trace_power(&self, n: u64) -> BigInt {
        self.matrix.pow(n).trace()
    }

    pub fn traces(&self, k: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(k);
        let mut p = self.matrix.clone();
        for _ in 0..k {
            out.push(p.trace());
            p = p.mul(&self.matrix);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self.matrix.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        json!({ "size": self.size(), "entries": rows })
    }
}

fn word_allowed(x: &SftSpec, word: &[Symbol]) -> bool {
    let len = word.len() as i64;
    x.forbidden().iter().all(|p| {
        let e = p.extent(0);
        if e >= len {
            return true;
        }
        (0..len - e).all(|s| !p.cells().iter().all(|(v, sym)| word[(s + v[0]) as usize] == *sym))
    })
}

/// Higher-block recoding: vertices are the allowed words of length equal to
/// the window, edges the allowed words one longer. Vertices on no cycle are
/// pruned, which leaves every trace unchanged.
pub fn to_transfer_matrix(x: &SftSpec, limits: &Limits) -> Result<TransferMatrix> {
    if x.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: x.dim() });
    }
    let a = x.alphabet_size();
    let w = x.window() as usize;
    if w == 0 {
        let m = IntMatrix::from_rows(vec![vec![BigInt::from(a)]])?;
        return Ok(TransferMatrix { matrix: m, labels: vec![Vec::new()] });
    }
    let total = (a as u64).checked_pow(w as u32).filter(|&t| t <= limits.max_nodes);
    let total = total.ok_or_else(|| Error::budget("higher-block vertex set", limits.max_nodes))?;
    let mut vertices: Vec<Vec<Symbol>> = Vec::new();
    for idx in 0..total {
        let mut word = Vec::with_capacity(w);
        let mut r = idx;
        for _ in 0..w {
            word.push((r % a as u64) as Symbol);
            r /= a as u64;
        }
        word.reverse();
        if word_allowed(x, &word) {
            vertices.push(word);
        }
    }
    let pos = |word: &[Symbol]| vertices.binary_search_by(|v| v.as_slice().cmp(word)).ok();
    let n = vertices.len();
    let mut adj = vec![vec![false; n]; n];
    for (i, u) in vertices.iter().enumerate() {
        for s in 0..a as Symbol {
            let mut ext = u.clone();
            ext.push(s);
            if !word_allowed(x, &ext) {
                continue;
            }
            if let Some(j) = pos(&ext[1..]) {
                adj[i][j] = true;
            }
        }
    }
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            let out = (0..n).any(|j| alive[j] && adj[i][j]);
            let inn = (0..n).any(|j| alive[j] && adj[j][i]);
            if !out || !inn {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    if keep.is_empty() {
        let m = IntMatrix::from_rows(vec![vec![BigInt::zero()]])?;
        return Ok(TransferMatrix { matrix: m, labels: vec![Vec::new()] });
    }
    let rows = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| if adj[i][j] { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    Ok(TransferMatrix {
        matrix: IntMatrix::from_rows(rows)?,
        labels: keep.iter().map(|&i| vertices[i].clone()).collect(),
    })
}

/// Coefficients `c_0..c_K` of `exp(Σ tr(A^n) t^n / n)`, via the Newton
/// identity `n c_n = Σ_{k=1}^n tr(A^k) c_{n-k}`.
pub fn zeta_series(a: &TransferMatrix, k: usize) -> Result<Vec<BigInt>> {
    if k == 0 {
        return Err(Error::invalid("truncation order must be at least 1"));
    }
    let traces = a.traces(k);
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=k {
        let s: BigInt = (1..=n).map(|j| &traces[j - 1] * &c[n - j]).sum();
        let (q, r) = s.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::Internal(format!("zeta coefficient {n} is not an integer")));
        }
        c.push(q);
    }
    Ok(c)
}

/// `det(I - tA)` as a polynomial in `t`, by exact determinants at integer
/// points and interpolation. Independent of the trace route above.
pub fn inverse_zeta_polynomial(a: &TransferMatrix) -> Vec<BigInt> {
    let n = a.size();
    let ts: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let vals: Vec<BigInt> = ts
        .iter()
        .map(|t| {
            let m = IntMatrix::identity(n).add(&a.matrix().scale(&-t));
            m.det()
        })
        .collect();
    interpolate(&ts, &vals).iter().map(BigRational::to_integer).collect()
}

/// Power series of `1 / det(I - tA)` up to `t^k`.
pub fn zeta_series_by_determinant(a: &TransferMatrix, k: usize) -> Vec<BigInt> {
    let q = inverse_zeta_polynomial(a);
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=k {
        let s: BigInt = (1..q.len().min(n + 1)).map(|j| &q[j] * &c[n - j]).sum();
        c.push(-s);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::{chessboard, count_fixed_points, full_shift, golden_mean, Sublattice};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn recodings() {
        let l = Limits::default();
        let g = to_transfer_matrix(&golden_mean(), &l).unwrap();
        assert_eq!(g.matrix(), &IntMatrix::from_i64(&[vec![1, 1], vec![1, 0]]).unwrap());
        assert_eq!(g.traces(5), ints(&[1, 3, 4, 7, 11]));
        let c = to_transfer_matrix(&chessboard(1).unwrap(), &l).unwrap();
        assert_eq!(c.traces(4), ints(&[0, 6, 6, 18]));
        let f = to_transfer_matrix(&full_shift(2, 1).unwrap(), &l).unwrap();
        assert_eq!(f.traces(4), ints(&[2, 4, 8, 16]));
        assert!(to_transfer_matrix(&chessboard(2).unwrap(), &l).is_err());
    }

    #[test]
    fn traces_match_torus_counts() {
        let l = Limits::default();
        let wide = SftSpec::parse("dimension 1\nalphabet 0 1\n(0)=1\n(2)=1\n\n(0)=0\n(1)=0\n(2)=0\n").unwrap();
        for x in [golden_mean(), chessboard(1).unwrap(), wide] {
            let t = to_transfer_matrix(&x, &l).unwrap();
            for n in 1..=10u64 {
                let direct = count_fixed_points(&x, &Sublattice::scaled(1, n as i64).unwrap(), &l).unwrap();
                assert_eq!(t.trace_power(n), BigInt::from(direct), "period {n}");
            }
        }
    }

    #[test]
    fn zeta_routes_agree() {
        let g = TransferMatrix::from_i64(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(zeta_series(&g, 5).unwrap(), ints(&[1, 1, 2, 3, 5, 8]));
        let two = TransferMatrix::from_i64(&[vec![2]]).unwrap();
        assert_eq!(zeta_series(&two, 4).unwrap(), ints(&[1, 2, 4, 8, 16]));
        let m = TransferMatrix::from_i64(&[vec![0, 2, 1], vec![1, 1, 0], vec![3, 0, 1]]).unwrap();
        assert_eq!(zeta_series(&m, 12).unwrap(), zeta_series_by_determinant(&m, 12));
        assert!(zeta_series(&g, 0).is_err());
    }
}
