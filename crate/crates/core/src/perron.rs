//! Perron numbers: certified dominant roots, products and bounded
//! factorization search inside `Z[λ]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{factor, is_irreducible, power_polynomial, product_polynomial, roots_inside_circle, IntPoly, RootInterval};
use crate::zeta::TransferMatrix;

const MAX_REFINEMENTS: usize = 400;

/// Width every constructed interval is refined to, for readable approximations.
fn default_width() -> BigRational {
    q(1, 1 << 40)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ri(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// A real algebraic integer given by its minimal polynomial and an interval
/// isolating it among the real roots of that polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerronNumber {
    min_poly: IntPoly,
    interval: RootInterval,
}

impl PerronNumber {
    pub fn integer(m: u64) -> Self {
        let m = BigInt::from(m);
        PerronNumber {
            min_poly: IntPoly::linear_root(&m),
            interval: RootInterval::exact(ri(&m)),
        }
    }

    /// The largest real root of a monic irreducible polynomial, certified Perron.
    pub fn from_poly(p: &IntPoly) -> Result<Self> {
        let mut x = dominant_real_root(p)?;
        if !is_perron(p, Some(&x.interval))? {
            return Err(Error::invalid(format!("largest real root of {p} is not a Perron number")));
        }
        x.refine(&default_width());
        Ok(x)
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn interval(&self) -> &RootInterval {
        &self.interval
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn approx(&self) -> f64 {
        self.interval.to_f64()
    }

    pub fn refine(&mut self, width: &BigRational) {
        self.interval.refine_to(&self.min_poly, width);
    }

    pub fn bisect(&mut self) {
        self.interval.bisect(&self.min_poly);
    }

    /// Closed bounds `[lo, hi]` containing the number.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        (self.interval.lo.clone(), self.interval.hi.clone())
    }

    pub fn is_one(&self) -> bool {
        self.min_poly == IntPoly::from_i64(&[-1, 1])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "min_poly": self.min_poly.to_string(),
            "interval": [self.interval.lo.to_string(), self.interval.hi.to_string()],
            "approx": self.approx(),
        })
    }
}

impl std::fmt::Display for PerronNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.degree() == 1 {
            write!(f, "{}", self.interval.lo)
        } else {
            write!(f, "root({}) ≈ {:.6}", self.min_poly, self.approx())
        }
    }
}

/// Largest real root of `p`, isolated on `p` itself.
fn dominant_real_root(p: &IntPoly) -> Result<PerronNumber> {
    let sf = p.squarefree_part();
    let top = sf
        .real_roots()
        .pop()
        .ok_or_else(|| Error::invalid(format!("{p} has no real root")))?;
    Ok(PerronNumber { min_poly: sf, interval: top })
}

/// Certified dominant eigenvalue of an irreducible nonnegative matrix,
/// isolated to the requested width on its minimal polynomial.
pub fn perron_root(a: &TransferMatrix, width: &BigRational) -> Result<PerronNumber> {
    if !a.matrix().is_irreducible() {
        return Err(Error::ReducibleMatrix);
    }
    let chi = a.matrix().charpoly();
    let mut top = dominant_real_root(&chi)?;
    if (top.interval.is_exact() && top.interval.lo.is_zero()) || !top.interval.hi.is_positive() {
        return Err(Error::invalid("spectral radius is zero"));
    }
    let factors: Vec<IntPoly> = factor(&chi).into_iter().map(|(f, _)| f).collect();
    for _ in 0..MAX_REFINEMENTS {
        let hits: Vec<&IntPoly> = factors.iter().filter(|f| root_in(f, &top.interval)).collect();
        if hits.len() == 1 {
            let f = hits[0].clone();
            let mut interval = isolate_on(&f, &top.interval)?;
            interval.refine_to(&f, width);
            return Ok(PerronNumber { min_poly: f, interval });
        }
        top.bisect();
    }
    Err(Error::Internal("could not separate the Perron factor".into()))
}

fn root_in(f: &IntPoly, iv: &RootInterval) -> bool {
    if iv.is_exact() {
        f.eval(&iv.lo).is_zero()
    } else {
        f.count_real_roots(&iv.lo, &iv.hi) > 0 || f.eval(&iv.lo).is_zero()
    }
}

/// Re-express an interval known to contain exactly one root of `f` as a
/// `RootInterval` for `f`.
fn isolate_on(f: &IntPoly, iv: &RootInterval) -> Result<RootInterval> {
    if iv.is_exact() {
        return Ok(iv.clone());
    }
    let candidates: Vec<RootInterval> = f
        .real_roots()
        .into_iter()
        .filter(|r| r.hi >= iv.lo && r.lo <= iv.hi)
        .collect();
    let mut candidates = candidates;
    for _ in 0..MAX_REFINEMENTS {
        let inside: Vec<&RootInterval> = candidates
            .iter()
            .filter(|r| if r.is_exact() { iv.lo < r.lo && r.lo < iv.hi } else { r.hi > iv.lo && r.lo < iv.hi })
            .collect();
        if inside.len() == 1 && (inside[0].is_exact() || (inside[0].lo >= iv.lo && inside[0].hi <= iv.hi)) {
            return Ok(inside[0].clone());
        }
        for r in candidates.iter_mut() {
            r.bisect(f);
        }
    }
    Err(Error::Internal("root isolation did not converge".into()))
}

/// Number of roots with `|z| < r`, nudging the radius downward or upward
/// when the Schur–Cohn recursion degenerates exactly on the circle.
fn inside_count(p: &IntPoly, r: &BigRational, upward: bool, scale: &BigRational) -> usize {
    let mut radius = r.clone();
    let mut step = scale / BigRational::from_integer(BigInt::from(1000));
    loop {
        if let Some(k) = roots_inside_circle(p, &radius) {
            return k;
        }
        if upward {
            radius += &step;
        } else {
            radius -= &step;
        }
        step /= BigRational::from_integer(BigInt::from(3));
    }
}

/// Decide whether the selected root of the monic irreducible `p` is a Perron
/// number: real, at least 1, and strictly larger in modulus than every other
/// root. The selector defaults to the largest real root.
pub fn is_perron(p: &IntPoly, selector: Option<&RootInterval>) -> Result<bool> {
    if p.degree() == 0 {
        return Err(Error::invalid("constant polynomial has no roots"));
    }
    if !p.is_monic() {
        return Err(Error::invalid(format!("{p} is not monic")));
    }
    if !is_irreducible(p) {
        return Err(Error::Reducible(p.to_string()));
    }
    let mut top = dominant_real_root(p)?;
    if let Some(sel) = selector {
        if !selects_top(p, sel)? {
            return Ok(false);
        }
    }
    if p.degree() == 1 {
        return Ok(top.interval.lo >= BigRational::one());
    }
    if !top.interval.hi.is_positive() {
        return Ok(false);
    }
    // A conjugate of the same modulus forces λ² to be a repeated root of
    // the polynomial of pairwise products.
    if p.reflect() == *p || p.reflect() == p.scale(&-BigInt::one()) {
        return Ok(false);
    }
    let squares = power_polynomial(p, 2);
    let mut sq = PerronNumber { min_poly: squares.clone(), interval: top.interval.clone() };
    let sq_factor = square_factor(&squares, &mut top, &mut sq)?;
    let pairs = product_polynomial(p, p);
    let mut rest = pairs.div_exact(&sq_factor).ok_or_else(|| Error::Internal("square factor must divide".into()))?;
    let mut mult = 1;
    while let Some(r) = rest.div_exact(&sq_factor) {
        mult += 1;
        rest = r;
    }
    if mult >= 2 {
        return Ok(false);
    }
    let n = p.degree();
    for _ in 0..MAX_REFINEMENTS {
        let (lo, hi) = top.bounds();
        let w = top.interval.width().max(q(1, 1 << 20));
        if lo.is_positive() && inside_count(p, &lo, false, &w) == n - 1 {
            return Ok(true);
        }
        if inside_count(p, &hi, true, &w) < n {
            return Ok(false);
        }
        top.bisect();
    }
    Err(Error::Internal("dominance test did not terminate".into()))
}

/// Whether `sel`, an isolating interval for a root of `p`, picks the
/// largest real root.
fn selects_top(p: &IntPoly, sel: &RootInterval) -> Result<bool> {
    let bound = p.root_bound();
    if sel.is_exact() {
        if !p.eval(&sel.lo).is_zero() {
            return Err(Error::invalid("selector is not a root of the polynomial"));
        }
        return Ok(p.count_real_roots(&sel.lo, &bound) == 0);
    }
    if p.count_real_roots(&sel.lo, &sel.hi) != 1 || p.eval(&sel.hi).is_zero() {
        return Err(Error::invalid("selector does not isolate a single root"));
    }
    Ok(p.count_real_roots(&sel.hi, &bound) == 0)
}

/// Irreducible factor of `squares` vanishing at λ², where λ lies in `top`.
fn square_factor(squares: &IntPoly, top: &mut PerronNumber, _scratch: &mut PerronNumber) -> Result<IntPoly> {
    let factors: Vec<IntPoly> = factor(squares).into_iter().map(|(f, _)| f).collect();
    for _ in 0..MAX_REFINEMENTS {
        let (lo, hi) = top.bounds();
        let lo2 = if lo.is_positive() { &lo * &lo } else { BigRational::zero() };
        let hi2 = &hi * &hi;
        let iv = if top.interval.is_exact() { RootInterval::exact(hi2) } else { RootInterval { lo: lo2, hi: hi2 } };
        let hits: Vec<&IntPoly> = factors
            .iter()
            .filter(|f| root_in(f, &iv) || f.eval(&iv.hi).is_zero())
            .collect();
        if hits.len() == 1 {
            return Ok(hits[0].clone());
        }
        top.bisect();
    }
    Err(Error::Internal("could not locate the factor of λ²".into()))
}

/// Product of two Perron numbers, with minimal polynomial taken from the
/// factor of the product polynomial that vanishes at λμ.
pub fn perron_multiply(a: &PerronNumber, b: &PerronNumber) -> Result<PerronNumber> {
    if a.is_one() {
        return Ok(b.clone());
    }
    if b.is_one() {
        return Ok(a.clone());
    }
    let r = product_polynomial(&a.min_poly, &b.min_poly);
    let factors: Vec<IntPoly> = factor(&r).into_iter().map(|(f, _)| f).collect();
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..MAX_REFINEMENTS {
        let (alo, ahi) = a.bounds();
        let (blo, bhi) = b.bounds();
        let iv = if a.interval.is_exact() && b.interval.is_exact() {
            RootInterval::exact(&alo * &blo)
        } else {
            RootInterval { lo: &alo * &blo, hi: &ahi * &bhi }
        };
        let hits: Vec<&IntPoly> = factors.iter().filter(|f| closed_hit(f, &iv)).collect();
        if hits.len() == 1 {
            let f = hits[0];
            let hits_in_f = if iv.is_exact() { 1 } else { closed_count(f, &iv) };
            if hits_in_f == 1 {
                let mut out = PerronNumber { min_poly: f.clone(), interval: closed_isolate(f, &iv) };
                out.refine(&default_width());
                return Ok(out);
            }
        }
        a.bisect();
        b.bisect();
    }
    Err(Error::Internal("product root did not separate".into()))
}

fn closed_count(f: &IntPoly, iv: &RootInterval) -> usize {
    let at_lo = usize::from(f.eval(&iv.lo).is_zero());
    f.count_real_roots(&iv.lo, &iv.hi) + at_lo
}

fn closed_hit(f: &IntPoly, iv: &RootInterval) -> bool {
    if iv.is_exact() {
        f.eval(&iv.lo).is_zero()
    } else {
        closed_count(f, iv) > 0
    }
}

/// The unique root of `f` in the closed interval, as an isolating interval.
fn closed_isolate(f: &IntPoly, iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    for end in [&iv.lo, &iv.hi] {
        if f.eval(end).is_zero() {
            return RootInterval::exact(end.clone());
        }
    }
    iv.clone()
}

/// Search limits for factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBounds {
    pub max_degree: usize,
    pub max_height: i64,
}

impl Default for FactorBounds {
    fn default() -> Self {
        FactorBounds { max_degree: 4, max_height: 50 }
    }
}

/// Outcome of `perron_factorizations`; every verdict holds only within `bounds`.
#[derive(Debug, Clone)]
pub struct Factorizations {
    pub target: PerronNumber,
    /// Each factorization is a multiset of irreducible-within-bounds factors,
    /// sorted by value.
    pub factorizations: Vec<Vec<PerronNumber>>,
    pub irreducible: bool,
    pub bounds: FactorBounds,
}

impl Factorizations {
    pub fn to_json(&self) -> Value {
        let facts: Vec<Value> = self
            .factorizations
            .iter()
            .map(|f| Value::Array(f.iter().map(|x| x.to_json()).collect()))
            .collect();
        json!({
            "target": self.target.to_json(),
            "factorizations": facts,
            "irreducible_within_bounds": self.irreducible,
            "scope": "within bounds",
            "max_degree": self.bounds.max_degree,
            "max_height": self.bounds.max_height,
        })
    }

    /// Factorizations as sorted lists of minimal polynomials.
    pub fn signatures(&self) -> Vec<Vec<String>> {
        self.factorizations.iter().map(|f| f.iter().map(|x| x.min_poly.to_string()).collect()).collect()
    }
}

/// Arithmetic in `Q(λ)` with basis `1, λ, …, λ^{n-1}`.
struct Field {
    p: IntPoly,
    n: usize,
    lambda: PerronNumber,
}

type Elem = Vec<BigRational>;

impl Field {
    fn reduce(&self, mut v: Vec<BigRational>) -> Elem {
        let n = self.n;
        let pc: Vec<BigRational> = self.p.coeffs().iter().map(ri).collect();
        while v.len() > n {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = v.len() - n;
            for (i, c) in pc[..n].iter().enumerate() {
                v[k + i] -= &top * c;
            }
        }
        v.resize(n, BigRational::zero());
        v
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = vec![BigRational::zero(); 2 * self.n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// Matrix of multiplication by `a`, columns are images of basis vectors.
    fn mult_matrix(&self, a: &Elem) -> Vec<Vec<BigRational>> {
        let n = self.n;
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[j] = BigRational::one();
            let col = self.mul(a, &e);
            for i in 0..n {
                m[i][j] = col[i].clone();
            }
        }
        m
    }

    fn inverse(&self, a: &Elem) -> Option<Elem> {
        let m = self.mult_matrix(a);
        let mut e = vec![BigRational::zero(); self.n];
        e[0] = BigRational::one();
        solve(m, e)
    }

    fn lambda(&self) -> Elem {
        let mut v = vec![BigRational::zero(); self.n];
        if self.n == 1 {
            v[0] = -ri(&self.p.coeff(0));
        } else {
            v[1] = BigRational::one();
        }
        v
    }

    /// Closed bounds of the real value of `a` from the bounds of λ.
    fn bounds(&self, a: &Elem, lam: &PerronNumber) -> (BigRational, BigRational) {
        let (lo, hi) = lam.bounds();
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        let mut s_lo = BigRational::zero();
        let mut s_hi = BigRational::zero();
        for c in a {
            // λ > 0 so powers are monotone
            let (x, y) = (c * &plo, c * &phi);
            if x <= y {
                s_lo += x;
                s_hi += y;
            } else {
                s_lo += y;
                s_hi += x;
            }
            plo *= &lo;
            phi *= &hi;
        }
        (s_lo, s_hi)
    }

    fn approx(&self, a: &Elem) -> f64 {
        let l = self.lambda.approx();
        a.iter().rev().fold(0.0, |acc, c| acc * l + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn solve(mut m: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        b.swap(col, piv);
        let d = m[col][col].clone();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &d;
                for c in col..n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &m[i][i]).collect())
}

/// Characteristic polynomial of a rational matrix (Faddeev–LeVerrier).
fn rat_charpoly(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let mul = |x: &[Vec<BigRational>], y: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let am = mul(a, &m);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    c
}

/// Integer characteristic polynomial of `a`, or `None` if `a` is not integral.
fn integral_charpoly(field: &Field, a: &Elem) -> Option<IntPoly> {
    let c = rat_charpoly(&field.mult_matrix(a));
    if c.iter().all(|x| x.is_integer()) {
        Some(IntPoly::new(c.iter().map(|x| x.to_integer()).collect()))
    } else {
        None
    }
}

struct Candidate {
    alpha: Elem,
    alpha_num: PerronNumber,
    beta: Elem,
    beta_num: PerronNumber,
}

/// Certify that the real value of `a` is the Perron root of its minimal
/// polynomial and return it as a `PerronNumber`.
fn certify_element(field: &Field, a: &Elem, max_degree: usize) -> Result<Option<PerronNumber>> {
    let chi = match integral_charpoly(field, a) {
        Some(c) => c,
        None => return Ok(None),
    };
    let m = chi.squarefree_part();
    if m.degree() > max_degree || !m.is_monic() || m == IntPoly::from_i64(&[-1, 1]) {
        return Ok(None);
    }
    if !is_irreducible(&m) {
        return Ok(None);
    }
    let mut lam = field.lambda.clone();
    for _ in 0..MAX_REFINEMENTS {
        let (lo, hi) = field.bounds(a, &lam);
        let iv = if lo == hi { RootInterval::exact(lo) } else { RootInterval { lo, hi } };
        if iv.is_exact() || closed_count(&m, &iv) == 1 {
            let sel = closed_isolate(&m, &iv);
            if !selects_top(&m, &sel)? || !is_perron(&m, Some(&sel))? {
                return Ok(None);
            }
            let mut out = PerronNumber { min_poly: m, interval: sel };
            out.refine(&default_width());
            return Ok(Some(out));
        }
        lam.bisect();
    }
    Err(Error::Internal("could not match element to its Perron root".into()))
}

fn norm(field: &Field, a: &Elem) -> Option<BigInt> {
    integral_charpoly(field, a).map(|c| {
        let c0 = c.coeff(0);
        if field.n % 2 == 1 { -c0 } else { c0 }
    })
}

/// All `α` in `Z[λ]` of height ≤ H with `1 < α < t`, `α` and `t/α` Perron.
fn proper_divisors(field: &Field, t: &Elem, t_num: &PerronNumber, bounds: &FactorBounds) -> Result<Vec<Candidate>> {
    let n = field.n;
    let h = bounds.max_height;
    let t_val = t_num.approx();
    let t_norm = norm(field, t).ok_or_else(|| Error::Internal("target not integral".into()))?;
    let mut out = Vec::new();
    let mut coeffs = vec![-h; n];
    let tol = 1e-9 * t_val.max(1.0);
    loop {
        let alpha: Elem = coeffs.iter().map(|&c| q(c, 1)).collect();
        let v = field.approx(&alpha);
        if v > 1.0 - tol && v < t_val + tol {
            if let Some(na) = norm(field, &alpha) {
                if !na.is_zero() && (&t_norm % &na).is_zero() {
                    if let Some(alpha_num) = certify_element(field, &alpha, bounds.max_degree)? {
                        if let Some(inv) = field.inverse(&alpha) {
                            let beta = field.mul(t, &inv);
                            if let Some(beta_num) = certify_element(field, &beta, bounds.max_degree)? {
                                out.push(Candidate { alpha, alpha_num, beta, beta_num });
                            }
                        }
                    }
                }
            }
        }
        // odometer over the coefficient box
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            if coeffs[i] < h {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -h;
            i += 1;
        }
    }
}

fn key(x: &PerronNumber) -> String {
    x.min_poly.to_string()
}

fn factor_rec(
    field: &Field,
    t: &Elem,
    t_num: &PerronNumber,
    bounds: &FactorBounds,
    memo: &mut BTreeMap<String, Vec<Vec<PerronNumber>>>,
) -> Result<Vec<Vec<PerronNumber>>> {
    if let Some(r) = memo.get(&key(t_num)) {
        return Ok(r.clone());
    }
    let divs = proper_divisors(field, t, t_num, bounds)?;
    let mut found: BTreeMap<Vec<String>, Vec<PerronNumber>> = BTreeMap::new();
    if divs.is_empty() {
        found.insert(vec![key(t_num)], vec![t_num.clone()]);
    }
    for d in divs {
        let fa = factor_rec(field, &d.alpha, &d.alpha_num, bounds, memo)?;
        let fb = factor_rec(field, &d.beta, &d.beta_num, bounds, memo)?;
        for x in &fa {
            for y in &fb {
                let mut all: Vec<PerronNumber> = x.iter().chain(y.iter()).cloned().collect();
                all.sort_by(|u, v| u.approx().total_cmp(&v.approx()).then_with(|| key(u).cmp(&key(v))));
                found.insert(all.iter().map(key).collect(), all);
            }
        }
    }
    let result: Vec<Vec<PerronNumber>> = found.into_values().collect();
    memo.insert(key(t_num), result.clone());
    Ok(result)
}

/// Factorizations of `λ` into irreducible Perron numbers lying in `Z[λ]`
/// (rational integers included), searched exhaustively over coefficient
/// vectors of height at most `max_height`.
pub fn perron_factorizations(lambda: &PerronNumber, bounds: FactorBounds) -> Result<Factorizations> {
    let p = lambda.min_poly.clone();
    if !p.is_monic() {
        return Err(Error::invalid("minimal polynomial must be monic"));
    }
    let n = p.degree();
    let field = Field { p, n, lambda: lambda.clone() };
    let t = field.lambda();
    let mut memo = BTreeMap::new();
    let facts = factor_rec(&field, &t, lambda, &bounds, &mut memo)?;
    let nontrivial: Vec<Vec<PerronNumber>> = facts.into_iter().filter(|f| f.len() > 1).collect();
    Ok(Factorizations {
        target: lambda.clone(),
        irreducible: nontrivial.is_empty(),
        factorizations: nontrivial,
        bounds,
    })
}
