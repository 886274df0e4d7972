//! Integer polynomials: exact arithmetic, Sturm-sequence real root isolation,
//! Schur–Cohn root counting in disks, resultants and factorization over Q.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Polynomial with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPoly { c: trim(coeffs) }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// `x - a`
    pub fn linear_root(a: &BigInt) -> Self {
        IntPoly::new(vec![-a.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + rat(a))
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.c.iter().map(|a| a * k).collect())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a.clone() } else { a.clone() })
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly::new(self.c.iter().map(|a| a / &g).collect())
    }

    /// Scale a rational polynomial by a positive constant into a primitive
    /// integer polynomial (signs preserved).
    pub fn from_rational_positive(c: &[BigRational]) -> IntPoly {
        let den = c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let ints: Vec<BigInt> = c.iter().map(|a| (a * rat(&den)).to_integer()).collect();
        let p = IntPoly::new(ints);
        let g = p.content();
        if g.is_zero() {
            return p;
        }
        IntPoly::new(p.c.iter().map(|a| a / &g).collect())
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.c.iter().map(rat).collect()
    }

    /// Remainder of division over Q.
    pub fn rem_rational(&self, d: &IntPoly) -> Vec<BigRational> {
        rat_rem(&self.to_rational(), &d.to_rational())
    }

    /// Exact quotient over Z, if `d` divides `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = rat_divrem(&self.to_rational(), &d.to_rational());
        if !r.is_empty() || q.iter().any(|a| !a.is_integer()) {
            return None;
        }
        Some(IntPoly::new(q.iter().map(|a| a.to_integer()).collect()))
    }

    /// Primitive gcd over Q.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.to_rational();
        let mut b = o.to_rational();
        while !b.is_empty() {
            let r = rat_rem(&a, &b);
            a = b;
            b = r;
        }
        IntPoly::from_rational_positive(&a).primitive()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g).map(|p| p.primitive()).unwrap_or_else(|| self.primitive())
    }

    /// Sturm sequence of the square-free part.
    pub fn sturm_sequence(&self) -> Vec<IntPoly> {
        let p = self.squarefree_part();
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem_rational(&seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: Vec<BigRational> = r.into_iter().map(|a| -a).collect();
            seq.push(IntPoly::from_rational_positive(&neg));
        }
        seq
    }

    /// Cauchy bound: every complex root has modulus strictly below it.
    pub fn root_bound(&self) -> BigRational {
        let lead = rat(&self.lead()).abs();
        let m = self.c[..self.c.len().saturating_sub(1)]
            .iter()
            .map(|a| rat(a).abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Isolating intervals for every distinct real root, ascending.
    pub fn real_roots(&self) -> Vec<RootInterval> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let sf = self.squarefree_part();
        if sf.degree() == 1 {
            let r = BigRational::new(-sf.coeff(0), sf.coeff(1));
            return vec![RootInterval::exact(r)];
        }
        let sturm = Sturm::new(self);
        let b = self.root_bound();
        let mut out = Vec::new();
        sturm.isolate(-b.clone(), b, &mut out);
        out
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        Sturm::new(self).count(lo, hi)
    }

    /// Floating-point approximations of all complex roots (Durand–Kerner).
    /// Presentation only; nothing exact depends on these.
    pub fn approx_roots(&self) -> Vec<(f64, f64)> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = self.lead().to_f64().unwrap_or(1.0);
        let a: Vec<f64> = self.c.iter().map(|x| x.to_f64().unwrap_or(0.0) / lead).collect();
        let cmul = |x: (f64, f64), y: (f64, f64)| (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0);
        let cdiv = |x: (f64, f64), y: (f64, f64)| {
            let d = y.0 * y.0 + y.1 * y.1;
            ((x.0 * y.0 + x.1 * y.1) / d, (x.1 * y.0 - x.0 * y.1) / d)
        };
        let eval = |z: (f64, f64)| a.iter().rev().fold((0.0, 0.0), |acc, &c| {
            let m = cmul(acc, z);
            (m.0 + c, m.1)
        });
        let r = self.root_bound().to_f64().unwrap_or(2.0).max(1.0);
        let mut z: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                (0.5 * r * t.cos(), 0.5 * r * t.sin())
            })
            .collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = (1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den = cmul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    }
                }
                let step = cdiv(eval(z[i]), den);
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                delta = delta.max(step.0.abs() + step.1.abs());
            }
            if delta < 1e-15 {
                break;
            }
        }
        z
    }

    /// Parse expressions such as `x^2 - x - 1`, `2*x^3+x`, `x - 2`.
    pub fn parse(text: &str) -> Result<IntPoly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse("empty polynomial"));
        }
        let bad = || Error::parse(format!("cannot parse polynomial `{text}`"));
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, exp) = match body.find('x') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() { BigInt::one() } else { head.parse::<BigInt>().map_err(|_| bad())? };
                    let tail = &body[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += if neg { -coef } else { coef };
        }
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = !mag.is_one() || i == 0;
            if show_coef {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &f * c;
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    rat_divrem(a, b).1
}

/// An interval isolating one real root of a square-free polynomial.
///
/// Either `lo == hi` and the root is that rational, or the root lies in the
/// open interval `(lo, hi)` and the polynomial is nonzero at both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn exact(x: BigRational) -> Self {
        RootInterval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Halve the interval once, keeping the root of `p` (square-free).
    pub fn bisect(&mut self, p: &IntPoly) {
        if self.is_exact() {
            return;
        }
        let m = self.midpoint();
        let sm = p.sign_at(&m);
        if sm == Ordering::Equal {
            *self = RootInterval::exact(m);
        } else if sm == p.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Bisect until the width is at most `width`.
    pub fn refine_to(&mut self, p: &IntPoly, width: &BigRational) {
        while !self.is_exact() && &self.width() > width {
            self.bisect(p);
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        if self.is_exact() {
            &self.lo == x
        } else {
            &self.lo < x && x < &self.hi
        }
    }
}

struct Sturm {
    seq: Vec<IntPoly>,
}

impl Sturm {
    fn new(p: &IntPoly) -> Self {
        Sturm { seq: p.sturm_sequence() }
    }

    fn changes(&self, x: &BigRational) -> usize {
        let signs: Vec<Ordering> = self
            .seq
            .iter()
            .map(|q| q.sign_at(x))
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.changes(lo).saturating_sub(self.changes(hi))
    }

    fn isolate(&self, lo: BigRational, hi: BigRational, out: &mut Vec<RootInterval>) {
        let n = self.count(&lo, &hi);
        if n == 0 {
            return;
        }
        let p = &self.seq[0];
        if n == 1 {
            if p.sign_at(&hi) == Ordering::Equal {
                out.push(RootInterval::exact(hi));
            } else {
                out.push(RootInterval { lo, hi });
            }
            return;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        self.isolate(lo, mid.clone(), out);
        self.isolate(mid, hi, out);
    }
}

/// Number of roots (with multiplicity) strictly inside `|z| < r`, by the
/// Schur–Cohn recursion on `p(r z)`. `None` when the recursion degenerates
/// (a root on the circle or a root pair symmetric about it); callers retry
/// with a nearby radius.
pub fn roots_inside_circle(p: &IntPoly, r: &BigRational) -> Option<usize> {
    let n = p.degree();
    if n == 0 {
        return Some(0);
    }
    // f(z) = p(r z)
    let mut pow = BigRational::one();
    let mut f: Vec<BigRational> = Vec::with_capacity(n + 1);
    for a in p.coeffs() {
        f.push(rat(a) * &pow);
        pow *= r;
    }
    let mut inside = 0usize;
    let mut product_sign = 1i32;
    for k in 0..n {
        // f has formal degree n - k
        let m = n - k;
        let a0 = f[0].clone();
        let am = f[m].clone();
        // T f = a0 f - am f*, f*_i = f_{m-i}
        let t: Vec<BigRational> = (0..=m).map(|i| &a0 * &f[i] - &am * &f[m - i]).collect();
        let delta = t[0].clone();
        if delta.is_zero() {
            return None;
        }
        product_sign *= if delta.is_positive() { 1 } else { -1 };
        if product_sign < 0 {
            inside += 1;
        }
        // t_0 .. t_{m-1} are the coefficients of (T f)(z) / 1; t_m = 0 by construction
        f = t[..m].to_vec();
    }
    Some(inside)
}

/// Irreducible factorization over Q: primitive factors with positive leading
/// coefficient and their multiplicities (constant content dropped).
pub fn factor(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    use algebraics::polynomial::Polynomial;
    if p.degree() == 0 {
        return Vec::new();
    }
    let poly: Polynomial<BigInt> = p.primitive().coeffs().to_vec().into();
    let factors = poly.factor();
    let mut out: Vec<(IntPoly, usize)> = factors
        .polynomial_factors
        .into_iter()
        .map(|f| (IntPoly::new(f.polynomial.into_coefficients()).primitive(), f.power))
        .collect();
    out.sort();
    out
}

/// True iff `p` has degree ≥ 1 and no nontrivial factorization over Q.
pub fn is_irreducible(p: &IntPoly) -> bool {
    let f = factor(p);
    f.len() == 1 && f[0].1 == 1
}

/// Resultant of two polynomials given with formal degrees (Sylvester determinant).
fn resultant_formal(a: &[BigInt], da: usize, b: &[BigInt], db: usize) -> BigInt {
    let n = da + db;
    if n == 0 {
        return BigInt::one();
    }
    let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
    let mut rows = Vec::with_capacity(n);
    for i in 0..db {
        let mut row = vec![BigInt::zero(); n];
        for k in 0..=da {
            row[i + k] = get(a, da - k);
        }
        rows.push(row);
    }
    for i in 0..da {
        let mut row = vec![BigInt::zero(); n];
        for k in 0..=db {
            row[i + k] = get(b, db - k);
        }
        rows.push(row);
    }
    IntMatrix::from_rows(rows).expect("square Sylvester matrix").det()
}

pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    resultant_formal(a.coeffs(), a.degree(), b.coeffs(), b.degree())
}

/// Newton interpolation through integer points, returned as rational coefficients.
pub(crate) fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(rat).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / rat(&(&xs[i] - &xs[i - j]));
        }
    }
    // expand Newton form from the top
    let mut poly: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly = poly * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * rat(&xs[i]);
        }
        next[0] += &dd[i];
        poly = next;
    }
    trim(poly)
}

/// A polynomial whose roots are all products `a_i * b_j` of roots of `p`
/// and `q`, namely `Res_y(p(y), y^m q(x / y))` with `m = deg q`.
pub fn product_polynomial(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let n = p.degree();
    let m = q.degree();
    let total = n * m;
    let xs: Vec<BigInt> = (0..=total as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x0| {
            // y^m q(x0 / y) = Σ q_k x0^k y^(m-k)
            let mut b = vec![BigInt::zero(); m + 1];
            let mut xp = BigInt::one();
            for k in 0..=m {
                b[m - k] = q.coeff(k) * &xp;
                xp *= x0;
            }
            resultant_formal(p.coeffs(), n, &b, m)
        })
        .collect();
    let coeffs = interpolate(&xs, &ys);
    debug_assert!(coeffs.iter().all(|c| c.is_integer()));
    IntPoly::new(coeffs.iter().map(|c| c.to_integer()).collect()).primitive()
}

/// A polynomial whose roots are the `k`-th powers of the roots of `p`
/// (`Res_y(p(y), x - y^k)`).
pub fn power_polynomial(p: &IntPoly, k: usize) -> IntPoly {
    let n = p.degree();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|x0| {
            let mut b = vec![BigInt::zero(); k + 1];
            b[0] = x0.clone();
            b[k] = -BigInt::one();
            resultant_formal(p.coeffs(), n, &b, k)
        })
        .collect();
    let coeffs = interpolate(&xs, &ys);
    IntPoly::new(coeffs.iter().map(|c| c.to_integer()).collect()).primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parse_and_display() {
        let p = IntPoly::parse("x^2 - x - 1").unwrap();
        assert_eq!(p, IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(p.to_string(), "x^2 - x - 1");
        assert_eq!(IntPoly::parse("2*x^3+x").unwrap(), IntPoly::from_i64(&[0, 1, 0, 2]));
        assert_eq!(IntPoly::parse("-x+2").unwrap().to_string(), "-x + 2");
        assert_eq!(IntPoly::parse("x^4-1").unwrap(), IntPoly::from_i64(&[-1, 0, 0, 0, 1]));
        assert!(IntPoly::parse("x^^2").is_err());
        assert!(IntPoly::parse("").is_err());
    }

    #[test]
    fn sturm_isolation() {
        // (x-2)(x+1)^2
        let p = IntPoly::from_i64(&[-2, -3, 0, 1]);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&q(-1, 1)) || roots[0].lo < q(-1, 1) && q(-1, 1) < roots[0].hi);
        let golden = IntPoly::from_i64(&[-1, -1, 1]);
        let mut r = golden.real_roots().pop().unwrap();
        r.refine_to(&golden, &q(1, 1_000_000_000));
        assert!((r.to_f64() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert_eq!(golden.count_real_roots(&q(0, 1), &q(2, 1)), 1);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = IntPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), IntPoly::from_i64(&[1, 1]));
        assert_eq!(b.squarefree_part(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&IntPoly::from_i64(&[0, 2])), None);
    }

    #[test]
    fn factorization() {
        let p = IntPoly::parse("x^4 - 1").unwrap();
        let f = factor(&p);
        assert_eq!(f.len(), 3);
        assert!(is_irreducible(&IntPoly::parse("x^2 - x - 1").unwrap()));
        assert!(!is_irreducible(&IntPoly::parse("x^2 - 1").unwrap()));
    }

    #[test]
    fn products_and_powers() {
        let phi = IntPoly::parse("x^2 - x - 1").unwrap();
        let prod = product_polynomial(&phi, &phi);
        // roots φ², φψ = -1 (twice), ψ²
        let expected = IntPoly::parse("x^2 - 3x + 1").unwrap().mul(&IntPoly::parse("x + 1").unwrap().pow(2));
        assert_eq!(prod, expected);
        assert_eq!(power_polynomial(&phi, 2), IntPoly::parse("x^2 - 3x + 1").unwrap());
        let two = IntPoly::parse("x - 2").unwrap();
        let three = IntPoly::parse("x - 3").unwrap();
        assert_eq!(product_polynomial(&two, &three), IntPoly::parse("x - 6").unwrap());
        assert_eq!(resultant(&two, &three), BigInt::from(-1));
    }

    fn numeric_inside(p: &IntPoly, r: f64) -> usize {
        p.approx_roots().iter().filter(|(a, b)| (a * a + b * b).sqrt() < r).count()
    }

    #[test]
    fn schur_cohn_matches_numeric_roots() {
        let cases = [
            "x^2 - x - 1",
            "x^3 - 3x - 2",
            "x^2 - 2",
            "x^3 - x - 1",
            "x^4 - 4x^3 + 2x + 7",
            "2x^5 - 3x^2 + x - 9",
            "x^6 - x^5 + 3x^3 - 2x + 1",
        ];
        let radii = [q(1, 3), q(1, 1), q(3, 2), q(7, 4), q(5, 2), q(41, 10)];
        let mut decided = 0;
        for s in cases {
            let p = IntPoly::parse(s).unwrap();
            for r in &radii {
                let rf = r.to_f64().unwrap();
                if let Some(k) = roots_inside_circle(&p, r) {
                    assert_eq!(k, numeric_inside(&p, rf), "{s} r={r}");
                    decided += 1;
                }
            }
        }
        assert!(decided >= 35);
    }
}
