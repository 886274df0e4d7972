//! Finite rotations and cyclic shift actions: orbit censuses, decomposition
//! of `F_p[x]/(x^n − 1)` and direct factorizations of prime-order rotations.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::budget::{Limits, NodeCounter};
use crate::error::{Error, Result};
use crate::numtheory::{divisors, is_prime_u64, lcm_u64, mobius};

/// A finite set with a bijection on it, elements encoded as `0..size`.
pub trait FiniteSystem: Sync {
    fn size(&self) -> u64;
    fn apply(&self, x: u64) -> u64;
}

/// Multiset of orbit lengths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrbitCensus {
    pub entries: BTreeMap<u64, u64>,
}

impl OrbitCensus {
    pub fn new(entries: BTreeMap<u64, u64>) -> Self {
        let entries = entries.into_iter().filter(|&(_, c)| c > 0).collect();
        OrbitCensus { entries }
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        OrbitCensus::new(pairs.iter().copied().collect())
    }

    /// Number of points carried: `Σ length · count`.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(l, c)| l * c).sum()
    }

    /// Points fixed by the `m`-th iterate.
    pub fn fix(&self, m: u64) -> u64 {
        self.entries.iter().filter(|(l, _)| m % *l == 0).map(|(l, c)| l * c).sum()
    }

    /// Least common multiple of the orbit lengths.
    pub fn period(&self) -> u64 {
        self.entries.keys().fold(1, |a, &l| lcm_u64(a, l))
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = self.entries.iter().map(|(l, c)| (l.to_string(), json!(c))).collect();
        Value::Object(m)
    }
}

impl std::fmt::Display for OrbitCensus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(l, c)| format!("{l}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Exact orbit partition by iteration. Each element's orbit length is found
/// independently, so the work splits across workers with no shared state.
pub fn orbit_census(sys: &impl FiniteSystem, limits: &Limits) -> Result<OrbitCensus> {
    let n = sys.size();
    if n > limits.max_nodes {
        return Err(Error::budget("orbit census carrier", limits.max_nodes));
    }
    let counter = NodeCounter::new(limits.max_nodes.saturating_mul(64), "orbit census iteration");
    let lengths: Vec<Result<u64>> = limits.install(|| {
        (0..n)
            .into_par_iter()
            .map(|x| {
                let mut y = sys.apply(x);
                let mut len = 1u64;
                while y != x {
                    y = sys.apply(y);
                    len += 1;
                    if len > n {
                        return Err(Error::invalid("map is not a bijection"));
                    }
                }
                counter.charge(len)?;
                Ok(len)
            })
            .collect()
    });
    let mut by_len: BTreeMap<u64, u64> = BTreeMap::new();
    for l in lengths {
        *by_len.entry(l?).or_default() += 1;
    }
    Ok(OrbitCensus::new(by_len.into_iter().map(|(l, c)| (l, c / l)).collect()))
}

/// Census of the product action from fixed-point counts and Möbius inversion.
pub fn census_product(a: &OrbitCensus, b: &OrbitCensus) -> Result<OrbitCensus> {
    let period = lcm_u64(a.period(), b.period());
    let fix = |m: u64| a.fix(m) as i128 * b.fix(m) as i128;
    let mut out = BTreeMap::new();
    for l in divisors(period) {
        let s: i128 = divisors(l).into_iter().map(|d| mobius(l / d) as i128 * fix(d)).sum();
        if s < 0 || s % l as i128 != 0 {
            return Err(Error::Internal(format!("Möbius sum at length {l} is not a multiple of {l}")));
        }
        out.insert(l, (s / l as i128) as u64);
    }
    Ok(OrbitCensus::new(out))
}

/// `Z/m_1 × … × Z/m_r` with `x ↦ σ^k(x) + step`, where `σ^k` rotates the
/// coordinates by `k` places (`k = 0` gives a plain group rotation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRotation {
    pub moduli: Vec<u64>,
    pub step: Vec<u64>,
    pub coordinate_shift: usize,
}

impl FiniteRotation {
    pub fn new(moduli: Vec<u64>, step: Vec<u64>, coordinate_shift: usize) -> Result<Self> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::invalid("group needs at least one factor, each of positive order"));
        }
        if step.len() != moduli.len() {
            return Err(Error::DimensionMismatch { expected: moduli.len(), found: step.len() });
        }
        if coordinate_shift % moduli.len() != 0 && moduli.iter().any(|&m| m != moduli[0]) {
            return Err(Error::invalid("rotating coordinates needs all factors of the same order"));
        }
        let step = step.iter().zip(&moduli).map(|(s, m)| s % m).collect();
        Ok(FiniteRotation { moduli, step, coordinate_shift })
    }

    /// Parse `Z5^4`, `Z2xZ3xZ5`, `Z2^2 x Z3`.
    pub fn parse_group(text: &str) -> Result<Vec<u64>> {
        let bad = || Error::parse(format!("bad group `{text}` (expected e.g. Z5^4 or Z2xZ3)"));
        let mut out = Vec::new();
        for part in text.split(['x', '*', '×']).map(str::trim).filter(|s| !s.is_empty()) {
            let body = part.strip_prefix('Z').ok_or_else(bad)?;
            let (m, e) = match body.split_once('^') {
                Some((m, e)) => (m.parse::<u64>().map_err(|_| bad())?, e.parse::<usize>().map_err(|_| bad())?),
                None => (body.parse::<u64>().map_err(|_| bad())?, 1),
            };
            out.extend(std::iter::repeat_n(m, e));
        }
        if out.is_empty() {
            return Err(bad());
        }
        Ok(out)
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn decode(&self, mut x: u64) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = x % m;
                x /= m;
                d
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> u64 {
        v.iter().zip(&self.moduli).rev().fold(0, |acc, (d, m)| acc * m + d)
    }
}

impl FiniteSystem for FiniteRotation {
    fn size(&self) -> u64 {
        self.order()
    }

    fn apply(&self, x: u64) -> u64 {
        let v = self.decode(x);
        let r = v.len();
        let w: Vec<u64> = (0..r)
            .map(|i| (v[(i + self.coordinate_shift) % r] + self.step[i]) % self.moduli[i])
            .collect();
        self.encode(&w)
    }
}

/// Polynomials over `F_p`, lowest degree first, no trailing zeros.
pub type FpPoly = Vec<u64>;

fn fp_trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let b = fp_trim(b.to_vec());
    let mut r = fp_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() * inv % p;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p * p - f * c % p) % p;
        }
        q[shift] = f;
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

pub fn fp_to_string(f: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Monic factors of `f` over `F_p` with multiplicities, by trial division
/// with monic polynomials of increasing degree.
pub fn fp_factor(f: &[u64], p: u64) -> Vec<(FpPoly, u32)> {
    let mut rest = fp_trim(f.to_vec());
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    let mut deg = 1usize;
    while rest.len() > 1 && 2 * deg < rest.len() {
        let count = p.pow(deg as u32);
        let mut found = false;
        for code in 0..count {
            let mut g: FpPoly = (0..deg).map(|i| code / p.pow(i as u32) % p).collect();
            g.push(1);
            let mut e = 0;
            loop {
                let (q, r) = fp_divrem(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((g, e));
                found = true;
            }
        }
        if !found {
            deg += 1;
        }
    }
    if rest.len() > 1 {
        let inv = fp_inv(*rest.last().unwrap(), p);
        let monic: FpPoly = rest.iter().map(|c| c * inv % p).collect();
        match out.iter_mut().find(|(g, _)| *g == monic) {
            Some(entry) => entry.1 += 1,
            None => out.push((monic, 1)),
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    out
}

/// `F_p[x]/(f)` with multiplication by `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicModule {
    pub p: u64,
    pub modulus: FpPoly,
}

impl CyclicModule {
    pub fn new(p: u64, modulus: FpPoly) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        let modulus = fp_trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus[0] == 0 {
            return Err(Error::invalid("modulus must be monic of positive degree with nonzero constant term"));
        }
        Ok(CyclicModule { p, modulus })
    }

    /// The summand `F_p[x]/(f)` of the full module `F_p[x]/(x^n − 1)`.
    pub fn summand(p: u64, n: u64, f: FpPoly) -> Result<Self> {
        let m = CyclicModule::new(p, f)?;
        let (_, r) = fp_divrem(&x_n_minus_1(p, n), &m.modulus, p);
        if !r.is_empty() {
            return Err(Error::invalid(format!("{} does not divide x^{n} - 1 over F_{p}", fp_to_string(&m.modulus))));
        }
        Ok(m)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p, "modulus": fp_to_string(&self.modulus), "order": self.size() })
    }
}

impl FiniteSystem for CyclicModule {
    fn size(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    fn apply(&self, x: u64) -> u64 {
        let p = self.p;
        let d = self.degree();
        let mut v: Vec<u64> = (0..d).map(|i| x / p.pow(i as u32) % p).collect();
        let top = v.pop().unwrap_or(0);
        v.insert(0, 0);
        // reduce top·x^d using x^d = −(m_0 + … + m_{d−1} x^{d−1})
        for (i, c) in v.iter_mut().enumerate() {
            *c = (*c + p * p - top * self.modulus[i] % p) % p;
        }
        v.iter().rev().fold(0, |acc, &c| acc * p + c)
    }
}

fn x_n_minus_1(p: u64, n: u64) -> FpPoly {
    let mut f = vec![0u64; n as usize + 1];
    f[0] = p - 1;
    f[n as usize] = 1;
    f
}

/// Splitting of `F_p[x]/(x^n − 1)` into primary summands.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub p: u64,
    pub n: u64,
    pub factors: Vec<(FpPoly, u32)>,
    pub summands: Vec<(CyclicModule, OrbitCensus)>,
    pub full: OrbitCensus,
    /// Fixed counts of the summands multiply to the full module's at every period.
    pub reassembles: bool,
}

impl Decomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "n": self.n,
            "factors": self.factors.iter().map(|(g, e)| json!({ "factor": fp_to_string(g), "multiplicity": e })).collect::<Vec<_>>(),
            "summands": self.summands.iter().map(|(m, c)| json!({ "module": m.to_json(), "census": c.to_json() })).collect::<Vec<_>>(),
            "full_census": self.full.to_json(),
            "reassembles": self.reassembles,
        })
    }
}

/// Censuses of the given pairwise-coprime summands and of the full module.
pub fn decompose_with(p: u64, n: u64, parts: Vec<FpPoly>, limits: &Limits) -> Result<Decomposition> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let full_mod = CyclicModule::new(p, x_n_minus_1(p, n))?;
    let full = orbit_census(&full_mod, limits)?;
    let mut product = fp_trim(vec![1]);
    let mut summands = Vec::new();
    for f in parts {
        let m = CyclicModule::summand(p, n, f)?;
        product = fp_mul(&product, &m.modulus, p);
        let c = orbit_census(&m, limits)?;
        summands.push((m, c));
    }
    if product != x_n_minus_1(p, n) {
        return Err(Error::invalid(format!("the parts multiply to {}, not x^{n} - 1", fp_to_string(&product))));
    }
    let mut acc = OrbitCensus::from_pairs(&[(1, 1)]);
    for (_, c) in &summands {
        acc = census_product(&acc, c)?;
    }
    let reassembles = (1..=full.period()).all(|m| summands.iter().map(|(_, c)| c.fix(m)).product::<u64>() == full.fix(m)) && acc == full;
    Ok(Decomposition { p, n, factors: fp_factor(&x_n_minus_1(p, n), p), summands, full, reassembles })
}

/// Primary decomposition: one summand `F_p[x]/(g^e)` per irreducible factor.
pub fn module_decompose(p: u64, n: u64, limits: &Limits) -> Result<Decomposition> {
    if !is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let parts = fp_factor(&x_n_minus_1(p, n), p)
        .into_iter()
        .map(|(g, e)| (0..e).fold(vec![1u64], |acc, _| fp_mul(&acc, &g, p)))
        .collect();
    decompose_with(p, n, parts, limits)
}

/// One direct factorization of `(Π_{p∈P} Z/p, +1)`: a partition of the primes.
pub type RotationFactorization = Vec<Vec<u64>>;

/// All set partitions of the prime set, each verified by the census product.
pub fn rotation_factorizations(primes: &[u64], limits: &Limits) -> Result<Vec<RotationFactorization>> {
    if primes.is_empty() {
        return Err(Error::invalid("prime set must be nonempty"));
    }
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    if ps.len() != primes.len() || ps.iter().any(|&p| !is_prime_u64(p)) {
        return Err(Error::invalid("expected distinct primes"));
    }
    let rot = |blk: &[u64]| FiniteRotation::new(blk.to_vec(), vec![1; blk.len()], 0);
    let whole = orbit_census(&rot(&ps)?, limits)?;
    let mut out = Vec::new();
    for part in set_partitions(&ps) {
        let mut acc = OrbitCensus::from_pairs(&[(1, 1)]);
        for blk in &part {
            acc = census_product(&acc, &orbit_census(&rot(blk)?, limits)?)?;
        }
        if acc != whole {
            return Err(Error::Internal("census product of blocks differs from the whole rotation".into()));
        }
        out.push(part);
    }
    Ok(out)
}

fn set_partitions(items: &[u64]) -> Vec<Vec<Vec<u64>>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for mut part in set_partitions(&items[1..]) {
        for i in 0..part.len() {
            let mut p = part.clone();
            p[i].insert(0, first);
            out.push(p);
        }
        part.insert(0, vec![first]);
        out.push(part);
    }
    for p in out.iter_mut() {
        p.sort();
    }
    out.sort();
    out
}

/// Finite truncations `Π_{p ≤ P} Z/p` of the odometer: the number of
/// irreducible blocks in the finest factorization grows without bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdometerRow {
    pub bound: u64,
    pub primes: Vec<u64>,
    pub order: BigUint,
    pub finest_blocks: usize,
    pub factorizations: BigUint,
}

pub fn odometer_truncations(max_bound: u64) -> Vec<OdometerRow> {
    let mut rows = Vec::new();
    let mut primes = Vec::new();
    for b in 2..=max_bound {
        if is_prime_u64(b) {
            primes.push(b);
            rows.push(OdometerRow {
                bound: b,
                primes: primes.clone(),
                order: primes.iter().map(|&p| BigUint::from(p)).product(),
                finest_blocks: primes.len(),
                factorizations: crate::numtheory::bell(primes.len()),
            });
        }
    }
    rows
}
