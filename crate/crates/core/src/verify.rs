//! Invariant suites behind `shiftlab verify`, one per module.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::budget::Limits;
use crate::chessboard::{self as cb, Grid, Symmetry};
use crate::counts::CountSequence;
use crate::dyck::{self, DyckWord, Letter, Side};
use crate::error::{Error, Result};
use crate::factorize::count_sequence_factorizations;
use crate::perron::{self, PerronNumber};
use crate::poly::IntPoly;
use crate::rotations::{self as rot, FiniteRotation, OrbitCensus};
use crate::sft::{self, Mode, Sublattice, TorusConfiguration};
use crate::zeta;

pub const SUITES: [&str; 6] = ["sft", "zeta", "perron", "chessboard", "dyck", "rotations"];

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: f64,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                format!("{tag} {:<11} {:<40} {:>9.1} ms  {}", c.suite, c.name, c.millis, c.detail)
            })
            .collect();
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push(format!("{} checks, {failed} failed", self.checks.len()));
        out.join("\n")
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail, "elapsed_ms": c.millis }))
            .collect();
        json!({ "passed": self.passed(), "checks": checks })
    }
}

struct Runner<'a> {
    suite: &'static str,
    limits: &'a Limits,
    out: &'a mut Vec<Check>,
}

impl Runner<'_> {
    /// Run one invariant. Budget errors propagate; any other error is a failure.
    fn check(&mut self, name: &'static str, f: impl FnOnce(&Limits) -> Result<(bool, String)>) -> Result<()> {
        let t = Instant::now();
        let (passed, detail) = match f(self.limits) {
            Ok(r) => r,
            Err(e) if e.is_budget() => return Err(e),
            Err(e) => (false, e.to_string()),
        };
        self.out.push(Check { suite: self.suite, name, passed, detail, millis: t.elapsed().as_secs_f64() * 1000.0 });
        Ok(())
    }
}

/// Run `all` or one named suite.
pub fn run_suite(name: &str, limits: &Limits) -> Result<VerifyReport> {
    let names: Vec<&'static str> = match name {
        "all" => SUITES.to_vec(),
        _ => vec![*SUITES
            .iter()
            .find(|s| **s == name)
            .ok_or_else(|| Error::invalid(format!("unknown suite `{name}` (expected all or one of {})", SUITES.join(", "))))?],
    };
    let mut checks = Vec::new();
    for s in names {
        let mut r = Runner { suite: s, limits, out: &mut checks };
        match s {
            "sft" => sft_suite(&mut r)?,
            "zeta" => zeta_suite(&mut r)?,
            "perron" => perron_suite(&mut r)?,
            "chessboard" => chessboard_suite(&mut r)?,
            "dyck" => dyck_suite(&mut r)?,
            _ => rotations_suite(&mut r)?,
        }
    }
    Ok(VerifyReport { checks })
}

fn sft_suite(r: &mut Runner) -> Result<()> {
    r.check("product multiplicativity", |l| {
        let pairs = [
            (sft::full_shift(2, 2)?, sft::chessboard(2)?),
            (sft::chessboard(1)?, sft::golden_mean()),
            (sft::golden_mean(), sft::full_shift(3, 1)?),
        ];
        let mut n = 0;
        for (x, y) in &pairs {
            let p = sft::product_sft(x, y)?;
            for lat in sft::sublattices_up_to(x.dim(), 4)? {
                let lhs = sft::count_fixed_points(&p, &lat, l)?;
                let rhs = sft::count_fixed_points(x, &lat, l)? * sft::count_fixed_points(y, &lat, l)?;
                if lhs != rhs {
                    return Ok((false, format!("{:?}: {lhs} != {rhs}", lat.rows())));
                }
                n += 1;
            }
        }
        Ok((true, format!("{n} sublattices")))
    })?;
    r.check("full-shift law", |l| {
        let mut n = 0;
        for d in 1..=2 {
            for m in [1usize, 2, 3] {
                let x = sft::full_shift(m, d)?;
                for lat in sft::sublattices_up_to(d, 6)? {
                    if sft::count_fixed_points(&x, &lat, l)? != BigUint::from(m).pow(lat.index() as u32) {
                        return Ok((false, format!("full({m},{d}) on {:?}", lat.rows())));
                    }
                    n += 1;
                }
            }
        }
        Ok((true, format!("{n} cases")))
    })?;
    r.check("orbit-realizability", |l| {
        for x in [sft::full_shift(2, 1)?, sft::golden_mean(), sft::chessboard(1)?] {
            let c = sft::periodic_count_sequence(&x, 10, l)?;
            if !c.is_orbit_realizable()? {
                return Ok((false, "a Möbius sum failed".into()));
            }
        }
        Ok((true, "periods 1..=10 on three systems".into()))
    })?;
    r.check("entropy estimates nonincreasing", |l| {
        let mut vals = Vec::new();
        for n in 1..=3 {
            vals.push(sft::entropy_box_estimate(&sft::chessboard(2)?, n, l)?);
        }
        let ok = vals.windows(2).all(|w| w[1] <= w[0] + 1e-12) && vals.iter().all(|&v| v >= 0.0);
        Ok((ok, format!("{vals:.6?}")))
    })?;
    r.check("enumerate/count agreement", |l| {
        let x = sft::chessboard(2)?;
        for lat in sft::sublattices_up_to(2, 6)? {
            let fp = sft::fixed_points(&x, &lat, Mode::Enumerate, l)?;
            let listed = fp.configurations.as_ref().map(Vec::len).unwrap_or(0);
            if BigUint::from(listed) != fp.count || fp.configurations.iter().flatten().any(|c| !c.is_valid(&x)) {
                return Ok((false, format!("{:?}", lat.rows())));
            }
        }
        Ok((true, "chessboard(2), index <= 6".into()))
    })
}

fn zeta_suite(r: &mut Runner) -> Result<()> {
    let corpus = || -> Result<Vec<sft::SftSpec>> {
        let mut v = vec![sft::full_shift(2, 1)?, sft::golden_mean(), sft::chessboard(1)?];
        v.push(sft::product_sft(&sft::golden_mean(), &sft::chessboard(1)?)?);
        Ok(v)
    };
    r.check("traces equal fixed points", |l| {
        for x in corpus()? {
            let a = zeta::to_transfer_matrix(&x, l)?;
            let seq = sft::periodic_count_sequence(&x, 10, l)?;
            for (n, c) in seq.periods()? {
                if a.trace_power(n) != num_bigint::BigInt::from(c) {
                    return Ok((false, format!("period {n}")));
                }
            }
        }
        Ok((true, "n <= 10 on four systems".into()))
    })?;
    r.check("Newton identity and determinant", |l| {
        for x in corpus()? {
            let a = zeta::to_transfer_matrix(&x, l)?;
            let s = zeta::zeta_series(&a, 12)?;
            if s != zeta::zeta_series_by_determinant(&a, 12) || s.iter().any(|c| c.sign() == num_bigint::Sign::Minus) {
                return Ok((false, "series mismatch".into()));
            }
        }
        Ok((true, "K = 12".into()))
    })
}

fn perron_suite(r: &mut Runner) -> Result<()> {
    r.check("integers are Perron, x^2-2 is not", |_| {
        for m in 1..=12 {
            if !perron::is_perron(&IntPoly::from_i64(&[-m, 1]), None)? {
                return Ok((false, format!("x - {m}")));
            }
        }
        Ok((!perron::is_perron(&IntPoly::parse("x^2 - 2")?, None)?, "m <= 12".into()))
    })?;
    r.check("multiplication commutative and associative", |_| {
        let nums: Vec<PerronNumber> = ["x^2 - x - 1", "x - 2", "x^2 - 2*x - 1"]
            .iter()
            .map(|p| PerronNumber::from_poly(&IntPoly::parse(p)?))
            .collect::<Result<_>>()?;
        let same = |a: &PerronNumber, b: &PerronNumber| {
            let ((al, ah), (bl, bh)) = (a.bounds(), b.bounds());
            a.min_poly() == b.min_poly() && al <= bh && bl <= ah
        };
        for a in &nums {
            for b in &nums {
                if !same(&perron::perron_multiply(a, b)?, &perron::perron_multiply(b, a)?) {
                    return Ok((false, format!("{a} * {b}")));
                }
                for c in &nums {
                    let l = perron::perron_multiply(&perron::perron_multiply(a, b)?, c)?;
                    let rr = perron::perron_multiply(a, &perron::perron_multiply(b, c)?)?;
                    if !same(&l, &rr) {
                        return Ok((false, format!("({a} * {b}) * {c}")));
                    }
                }
            }
        }
        Ok((true, "3 numbers".into()))
    })?;
    r.check("factor pairs checked independently", |l| {
        let c = CountSequence::from_fn(6, |n| BigUint::from(6u32).pow(n as u32));
        let res = count_sequence_factorizations(&c, 6, l)?;
        for p in &res.pairs {
            for (i, (a, b)) in p.a.iter().zip(&p.b).enumerate() {
                if a * b != BigUint::from(6u32).pow(i as u32 + 1) {
                    return Ok((false, "product identity".into()));
                }
            }
            for side in [&p.a, &p.b] {
                if !CountSequence::from_periods(side.iter().cloned()).is_orbit_realizable()? {
                    return Ok((false, "Möbius constraint".into()));
                }
            }
        }
        Ok((true, format!("{} pairs of 6^n", res.pairs.len())))
    })
}

/// All proper colorings of a box, by depth-first search in cell order.
pub fn proper_box_colorings(shape: &[usize]) -> Vec<Grid> {
    let total: usize = shape.iter().product();
    let d = shape.len();
    let strides: Vec<usize> = (0..d).map(|i| shape[i + 1..].iter().product()).collect();
    let mut out = Vec::new();
    let mut vals = vec![0i64; total];
    fn go(i: usize, total: usize, shape: &[usize], strides: &[usize], vals: &mut Vec<i64>, out: &mut Vec<Grid>) {
        if i == total {
            out.push(Grid::new(shape.to_vec(), vec![0; shape.len()], vals.clone()).expect("shape matches"));
            return;
        }
        for c in 0..3 {
            let ok = (0..shape.len()).all(|a| (i / strides[a]) % shape[a] == 0 || vals[i - strides[a]] != c);
            if ok {
                vals[i] = c;
                go(i + 1, total, shape, strides, vals, out);
            }
        }
    }
    go(0, total, shape, &strides, &mut vals, &mut out);
    out
}

/// A random proper coloring of the torus `Z^d / (side Z)^d`, by randomized
/// backtracking.
pub fn random_torus_coloring(d: usize, side: usize, rng: &mut impl Rng) -> Result<TorusConfiguration> {
    let lattice = Sublattice::scaled(d, side as i64)?;
    let cells = lattice.cells();
    let n = cells.len();
    let neighbors: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| {
            (0..d)
                .flat_map(|a| [-1i64, 1].map(|s| {
                    let mut v = c.clone();
                    v[a] += s;
                    lattice.index_of(&v)
                }))
                .collect()
        })
        .collect();
    let mut vals: Vec<Option<u8>> = vec![None; n];
    let order: Vec<Vec<u8>> = (0..n)
        .map(|_| {
            let mut o = vec![0u8, 1, 2];
            o.shuffle(rng);
            o
        })
        .collect();
    fn go(i: usize, nb: &[Vec<usize>], order: &[Vec<u8>], vals: &mut Vec<Option<u8>>) -> bool {
        if i == vals.len() {
            return true;
        }
        for &c in &order[i] {
            if nb[i].iter().all(|&j| vals[j] != Some(c)) {
                vals[i] = Some(c);
                if go(i + 1, nb, order, vals) {
                    return true;
                }
            }
        }
        vals[i] = None;
        false
    }
    if !go(0, &neighbors, &order, &mut vals) {
        return Err(Error::Internal("no proper torus coloring found".into()));
    }
    TorusConfiguration::new(lattice, vals.into_iter().map(|v| v.expect("filled").into()).collect())
}

fn chessboard_suite(r: &mut Runner) -> Result<()> {
    r.check("lift round trip and base shift (4x4 box)", |_| {
        let all = proper_box_colorings(&[4, 4]);
        for c in &all {
            let h = cb::lift_height(c, c.values[0])?;
            let h3 = cb::lift_height(c, c.values[0] + 3)?;
            let round = h.values.iter().zip(&c.values).all(|(a, b)| a.rem_euclid(3) == *b);
            let shift = h.values.iter().zip(&h3.values).all(|(a, b)| b - a == 3);
            if !round || !shift {
                return Ok((false, c.to_text()));
            }
        }
        Ok((true, format!("{} colorings", all.len())))
    })?;
    r.check("cocycle identity (100 triples, 6x6)", |_| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_torus_coloring(2, 6, &mut rng)?;
            let n: Vec<i64> = (0..2).map(|_| rng.gen_range(-8..=8)).collect();
            let m: Vec<i64> = (0..2).map(|_| rng.gen_range(-8..=8)).collect();
            let nm: Vec<i64> = n.iter().zip(&m).map(|(a, b)| a + b).collect();
            let lhs = cb::height_cocycle(&x, &nm)?;
            let rhs = cb::height_cocycle(&x, &m)? + cb::height_cocycle(&x.shifted(&m), &n)?;
            if lhs != rhs || cb::height_cocycle(&x, &[0, 0])? != 0 {
                return Ok((false, format!("n={n:?} m={m:?}")));
            }
        }
        Ok((true, "seed 7".into()))
    })?;
    r.check("coboundaries vanish on periods", |_| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let x = random_torus_coloring(2, 6, &mut rng)?;
            let f = |y: &TorusConfiguration| 3 * y.at(&[0, 0]) as i64 + y.at(&[1, 0]) as i64 - 2 * y.at(&[0, 1]) as i64;
            for v in x.lattice.generators() {
                if f(&x.shifted(&v)) - f(&x) != 0 {
                    return Ok((false, format!("generator {v:?}")));
                }
            }
        }
        Ok((true, "20 colorings".into()))
    })?;
    r.check("exactly 3 max-slope points", |l| {
        let lattices = [
            Sublattice::scaled(1, 3)?,
            Sublattice::scaled(2, 3)?,
            Sublattice::from_generators(2, &[vec![3, 0], vec![1, 2]])?,
            Sublattice::from_generators(2, &[vec![6, 0], vec![0, 3]])?,
        ];
        for lat in &lattices {
            let pts = cb::max_slope_points(lat, l)?;
            let expected: Vec<u8> = (0..3).collect();
            let offsets: Vec<u8> = pts.iter().map(|p| p.at(&vec![0; lat.dim()]) as u8).collect();
            if pts.len() != 3 || offsets != expected {
                return Ok((false, format!("{:?}: {} points", lat.rows(), pts.len())));
            }
        }
        Ok((true, format!("{} lattices", lattices.len())))
    })?;
    r.check("periodic extension of every 3x3 pattern", |l| {
        let all = proper_box_colorings(&[3, 3]);
        let mut worst = 0;
        for p in &all {
            let e = cb::periodic_extension(p, None, l)?;
            let agrees = p.values.iter().enumerate().all(|(i, &v)| e.torus.at(&p.coord(i)) as i64 == v);
            if !agrees || !cb::is_proper_torus(&e.torus) || e.period > 12 {
                return Ok((false, p.to_text()));
            }
            worst = worst.max(e.period);
        }
        Ok((true, format!("{} patterns, largest period {worst}", all.len())))
    })?;
    r.check("gluing yields proper colorings", |_| {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let t = random_torus_coloring(3, 6, &mut rng)?;
            let x = Grid::from_fn(vec![5, 5, 7], vec![-2, -2, -3], |c| t.at(c) as i64);
            let (y, z) = cb::glue(&x, 0)?;
            if !cb::is_proper(&y) || !cb::increments_along_last_axis(&z) {
                return Ok((false, "bad glue".into()));
            }
        }
        Ok((true, "10 slabs 5x5x7".into()))
    })?;
    r.check("automorphism slope signs", |l| {
        let expect = [("identity", 1), ("rot1", 1), ("rot2", 1), ("neg", -1), ("negrot1", -1), ("negrot2", -1)];
        for (name, s) in expect {
            if cb::aut_slope_sign(&Symmetry::named(name, vec![1, 0])?, 2, l)? != s {
                return Ok((false, name.into()));
            }
        }
        Ok((true, "six symmetries".into()))
    })
}

fn word_from_code(n: u32, k: usize, mut code: u64) -> DyckWord {
    let base = 2 * n as u64;
    let letters = (0..k)
        .map(|_| {
            let s = (code % base) as u32;
            code /= base;
            if s < n {
                Letter::Alpha(s + 1)
            } else {
                Letter::Beta(s - n + 1)
            }
        })
        .collect();
    DyckWord::new(n, letters).expect("letters in range")
}

/// All words of length `k` over `N` bracket pairs.
pub fn all_words(n: u32, k: usize) -> impl Iterator<Item = DyckWord> {
    (0..(2 * n as u64).pow(k as u32)).map(move |code| word_from_code(n, k, code))
}

/// Total measure of all length-`k` cylinders: the values of `mu_cylinder`
/// are tallied in parallel, then summed exactly.
pub fn cylinder_mass(n: u32, k: usize, side: Side, limits: &Limits) -> BigRational {
    let base = 2 * n as u64;
    let total = base.pow(k as u32);
    let tally: HashMap<BigRational, u64> = limits.install(|| {
        (0..total)
            .into_par_iter()
            .fold(HashMap::new, |mut acc: HashMap<BigRational, u64>, code| {
                *acc.entry(dyck::mu_cylinder(&word_from_code(n, k, code), side)).or_default() += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (key, c) in b {
                    *a.entry(key).or_default() += c;
                }
                a
            })
    });
    tally.into_iter().fold(BigRational::zero(), |acc, (m, c)| acc + m * BigRational::from_integer(c.into()))
}

fn dyck_suite(r: &mut Runner) -> Result<()> {
    r.check("oracle equals closed form (N<=3, n<=8)", |l| {
        for n in 2..=3u32 {
            for p in 1..=8u64 {
                let oracle = dyck::periodic_count_oracle(n, p, l)?;
                for (j, c) in &oracle {
                    if *c != dyck::periodic_count_closed_form(n, p, *j)? || oracle.get(&-j) != Some(c) {
                        return Ok((false, format!("N={n} n={p} j={j}")));
                    }
                }
            }
        }
        Ok((true, "with j/-j symmetry".into()))
    })?;
    r.check("cylinder measures sum to 1 (k<=8)", |l| {
        for n in 2..=3u32 {
            for k in 1..=8 {
                for side in [Side::Plus, Side::Minus] {
                    let s = cylinder_mass(n, k, side, l);
                    if !s.is_one() {
                        return Ok((false, format!("N={n} k={k} {side:?}: {s}")));
                    }
                }
            }
        }
        Ok((true, "N <= 3, both sides".into()))
    })?;
    r.check("reduction is a monoid morphism", |_| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rand_word = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(0..8);
            let letters = (0..len)
                .map(|_| if rng.gen_bool(0.5) { Letter::Alpha(rng.gen_range(1..=3)) } else { Letter::Beta(rng.gen_range(1..=3)) })
                .collect();
            DyckWord::new(3, letters).expect("in range")
        };
        for _ in 0..2000 {
            let (u, v) = (rand_word(&mut rng), rand_word(&mut rng));
            let whole = dyck::reduce(&u.concat(&v));
            let parts = match (dyck::reduce(&u).to_word(3), dyck::reduce(&v).to_word(3)) {
                (Some(a), Some(b)) => dyck::reduce(&a.concat(&b)),
                _ => dyck::ReducedForm::Zero,
            };
            if whole != parts {
                return Ok((false, format!("{u} · {v}")));
            }
        }
        Ok((true, "2000 random pairs".into()))
    })?;
    r.check("local entropies of periodic words", |_| {
        let mut tested = 0;
        for n in 2..=3u32 {
            for k in 1..=6usize {
                for w in all_words(n, k).filter(dyck::is_periodic_admissible) {
                    let h = dyck::local_entropy(&w)?;
                    let diff = &h.plus_coeff - &h.minus_coeff;
                    if diff != -h.slope.clone() || !h.min_is_log_n_plus_one() {
                        return Ok((false, w.to_string()));
                    }
                    tested += 1;
                }
            }
        }
        Ok((true, format!("{tested} words")))
    })
}

fn rotations_suite(r: &mut Runner) -> Result<()> {
    r.check("5-symbol shift over Z/4 census", |l| {
        let c = rot::orbit_census(&FiniteRotation::new(vec![5; 4], vec![0; 4], 1)?, l)?;
        Ok((c == OrbitCensus::from_pairs(&[(1, 5), (2, 10), (4, 150)]), c.to_string()))
    })?;
    r.check("summands reassemble", |l| {
        for (p, n) in [(5, 4), (2, 4), (3, 6), (7, 3)] {
            if !rot::module_decompose(p, n, l)?.reassembles {
                return Ok((false, format!("p={p} n={n}")));
            }
        }
        let coarse = rot::decompose_with(5, 4, vec![vec![4, 0, 1], vec![1, 0, 1]], l)?;
        Ok((coarse.reassembles, "primary splits and (x^2-1)(x^2+1) over F_5".into()))
    })?;
    r.check("factorization counts are Bell numbers", |l| {
        for primes in [vec![2u64], vec![2, 3], vec![2, 3, 5], vec![2, 3, 5, 7]] {
            let got = rot::rotation_factorizations(&primes, l)?.len();
            if BigUint::from(got) != crate::numtheory::bell(primes.len()) {
                return Ok((false, format!("{primes:?}")));
            }
        }
        Ok((true, "up to 4 primes".into()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_suite_passes() {
        let rep = run_suite("rotations", &Limits::default()).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        assert!(run_suite("nope", &Limits::default()).is_err());
    }

    #[test]
    fn box_colorings_counted() {
        // proper colorings of a path of 3 cells and of the 2x2 grid (a 4-cycle)
        assert_eq!(proper_box_colorings(&[3]).len(), 12);
        assert_eq!(proper_box_colorings(&[2, 2]).len(), 18);
    }
}
