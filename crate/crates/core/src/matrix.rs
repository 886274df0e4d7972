//! Dense integer matrices with exact determinant and characteristic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    a: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square"));
        }
        Ok(IntMatrix { n, a: rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let a = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        IntMatrix { n, a }
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, a: vec![vec![BigInt::zero(); n]; n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.a
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i][j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !other.a[k][j].is_zero() {
                        out.a[i][j] += &self.a[i][k] * &other.a[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        let a = self
            .a
            .iter()
            .zip(&other.a)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect();
        IntMatrix { n: self.n, a }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let a = self.a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
        IntMatrix { n: self.n, a }
    }

    pub fn pow(&self, mut e: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.a[i][i].clone()).sum()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.a.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v.div_floor(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// `det(xI - A)` by the Faddeev–LeVerrier recurrence (divisions are exact).
    pub fn charpoly(&self) -> IntPoly {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMatrix::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next.a[i][i] += &coeffs[n - k + 1];
            }
            m = next;
            let t = self.mul(&m).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
            coeffs[n - k] = -q;
        }
        IntPoly::new(coeffs)
    }

    /// True iff the digraph of nonzero entries is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    let e = if forward { &self.a[u][v] } else { &self.a[v][u] };
                    if !e.is_zero() && !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_charpoly() {
        let m = IntMatrix::from_i64(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(m.det(), BigInt::from(2));
        // (x-2)(x+1)^2 = x^3 - 3x - 2
        assert_eq!(m.charpoly(), IntPoly::from_i64(&[-2, -3, 0, 1]));
        let g = IntMatrix::from_i64(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.charpoly(), IntPoly::from_i64(&[-1, -1, 1]));
        let p = IntMatrix::from_i64(&[vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 4]]).unwrap();
        assert_eq!(p.det(), BigInt::from(-21));
    }

    #[test]
    fn powers_and_irreducibility() {
        let g = IntMatrix::from_i64(&[vec![1, 1], vec![1, 0]]).unwrap();
        let traces: Vec<BigInt> = (1..=5).map(|n| g.pow(n).trace()).collect();
        assert_eq!(traces, [1, 3, 4, 7, 11].map(BigInt::from).to_vec());
        assert!(g.is_irreducible());
        assert!(!IntMatrix::from_i64(&[vec![1, 1], vec![0, 1]]).unwrap().is_irreducible());
    }
}
