//! Acceptance criteria 1–10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails when a criterion's outcome differs from `EXPECTED_FAIL`:
//! a criterion listed there is computed faithfully and reported as FAIL, and
//! if it ever starts passing the run fails so the list gets updated.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shiftlab::chessboard as cb;
use shiftlab::dyck::{self, DyckWord, Letter, Side};
use shiftlab::factorize::count_sequence_factorizations;
use shiftlab::perron::{self, FactorBounds, PerronNumber};
use shiftlab::poly::IntPoly;
use shiftlab::rotations::{self as rot, FiniteRotation, OrbitCensus};
use shiftlab::sft::{self, Mode, Sublattice};
use shiftlab::verify::{cylinder_mass, proper_box_colorings, random_torus_coloring};
use shiftlab::{zeta, CountSequence, Limits};

/// Criterion 5 asks for only trivial splittings of 2^n at horizon 8; the
/// Möbius constraints admit 34 nontrivial ones. See the decisions ledger.
const EXPECTED_FAIL: &[u32] = &[5];

type Outcome = Result<Vec<String>, String>;

fn pow(b: u64, e: u64) -> BigUint {
    BigUint::from(b).pow(e as u32)
}

/// Independent oracle: scan a long power of `w` with a stack and reject on
/// any mismatched pair.
fn admissible_by_scan(w: &[Letter]) -> bool {
    let reps = 2 * w.len() + 2;
    let mut stack: Vec<u32> = Vec::new();
    for l in w.iter().cycle().take(reps * w.len()) {
        match *l {
            Letter::Alpha(i) => stack.push(i),
            Letter::Beta(j) => {
                if let Some(i) = stack.pop() {
                    if i != j {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn words(n: u32, k: usize) -> impl Iterator<Item = Vec<Letter>> {
    let base = 2 * n as u64;
    (0..base.pow(k as u32)).map(move |mut code| {
        (0..k)
            .map(|_| {
                let s = (code % base) as u32;
                code /= base;
                if s < n {
                    Letter::Alpha(s + 1)
                } else {
                    Letter::Beta(s - n + 1)
                }
            })
            .collect()
    })
}

fn excess(w: &[Letter]) -> i64 {
    w.iter().map(|l| if matches!(l, Letter::Alpha(_)) { 1 } else { -1 }).sum()
}

fn c1(l: &Limits) -> Outcome {
    let mut cases = 0;
    for n in [2u32, 3] {
        for p in 1..=8u64 {
            let oracle = dyck::periodic_count_oracle(n, p, l).map_err(|e| e.to_string())?;
            for j in (-(p as i64)..=p as i64).step_by(2) {
                let cf = dyck::periodic_count_closed_form(n, p, j).map_err(|e| e.to_string())?;
                let o = oracle.get(&j).cloned().unwrap_or_default();
                if o != cf {
                    return Err(format!("N={n} n={p} j={j}: oracle {o} vs closed form {cf}"));
                }
                cases += 1;
            }
            if oracle.get(&(p as i64)) != Some(&pow(n as u64, p)) {
                return Err(format!("|D_{n}^({p},{p})| != {n}^{p}"));
            }
        }
        // test-side oracle, independent of the library's reduction
        for p in 1..=6usize {
            let mut by_j: BTreeMap<i64, u64> = BTreeMap::new();
            for w in words(n, p).filter(|w| admissible_by_scan(w)) {
                *by_j.entry(excess(&w)).or_default() += 1;
            }
            for (j, c) in by_j {
                let cf = dyck::periodic_count_closed_form(n, p as u64, j).map_err(|e| e.to_string())?;
                if BigUint::from(c) != cf {
                    return Err(format!("scan oracle N={n} n={p} j={j}: {c} vs {cf}"));
                }
            }
        }
    }
    Ok(vec![format!("{cases} (N,n,j) cases agree; scan oracle agrees for n <= 6")])
}

fn c2(_: &Limits) -> Outcome {
    let rows = dyck::growth_rate_table(2, 14);
    let target = 3f64.ln();
    let gap = |n: usize| (rows[n - 1].rate - target).abs();
    let (g6, g14) = (gap(6), gap(14));
    let ok = g14 < 0.20 && g14 < g6;
    let line = format!("|rate - log 3| = {g6:.4} at n=6, {g14:.4} at n=14 (|D_2^(14)| = {})", rows[13].count);
    if ok {
        Ok(vec![line])
    } else {
        Err(line)
    }
}

fn c3(l: &Limits) -> Outcome {
    for n in [2u32, 3] {
        for k in 1..=8 {
            for side in [Side::Plus, Side::Minus] {
                let s = cylinder_mass(n, k, side, l);
                if !s.is_one() {
                    return Err(format!("N={n} k={k} {side:?}: total {s}"));
                }
            }
        }
    }
    let mut checked = 0u64;
    for n in [2u32, 3] {
        // entropies are log(N+1) + c·log N, so the minimum needs c = 0
        let zero = BigRational::from_integer(BigInt::from(0));
        for k in 1..=8usize {
            for letters in words(n, k) {
                let w = DyckWord::new(n, letters).expect("in range");
                if !dyck::is_periodic_admissible(&w) {
                    continue;
                }
                let h = dyck::local_entropy(&w).map_err(|e| e.to_string())?;
                let min = if h.plus_coeff < h.minus_coeff { &h.plus_coeff } else { &h.minus_coeff };
                if *min != zero {
                    return Err(format!("min(h+, h-) != log(N+1) for {w}"));
                }
                let expect = (n as f64 + 1.0).ln();
                if (h.h_plus().min(h.h_minus()) - expect).abs() > 1e-12 {
                    return Err(format!("numeric min for {w}"));
                }
                checked += 1;
            }
        }
    }
    Ok(vec![format!("cylinder sums exactly 1 for N <= 3, k <= 8, both sides; min(h+,h-) = log(N+1) on {checked} periodic words")])
}

fn c4(l: &Limits) -> Outcome {
    let mut cases = 0;
    for n in [2usize, 3] {
        let x = sft::full_shift(n, 2).map_err(|e| e.to_string())?;
        for lat in sft::sublattices_up_to(2, 6).map_err(|e| e.to_string())? {
            let fp = sft::fixed_points(&x, &lat, Mode::Enumerate, l).map_err(|e| e.to_string())?;
            let cfgs = fp.configurations.unwrap_or_default();
            let distinct: BTreeSet<_> = cfgs.iter().map(|c| c.values.clone()).collect();
            let want = pow(n as u64, lat.index());
            if fp.count != want || BigUint::from(distinct.len()) != want {
                return Err(format!("full({n},2) on {:?}: {} (expected {want})", lat.rows(), fp.count));
            }
            if sft::count_fixed_points(&x, &lat, l).map_err(|e| e.to_string())? != want {
                return Err(format!("count mode on {:?}", lat.rows()));
            }
            cases += 1;
        }
    }
    Ok(vec![format!("{cases} (n, L) cases equal n^index in count and enumerate modes")])
}

fn c5(l: &Limits) -> Outcome {
    let two = CountSequence::from_fn(8, |n| pow(2, n));
    let res = count_sequence_factorizations(&two, 8, l).map_err(|e| e.to_string())?;
    let six = CountSequence::from_fn(8, |n| pow(6, n));
    let res6 = count_sequence_factorizations(&six, 8, l).map_err(|e| e.to_string())?;
    let p2: Vec<BigUint> = (1..=8).map(|n| pow(2, n)).collect();
    let p3: Vec<BigUint> = (1..=8).map(|n| pow(3, n)).collect();
    let has_23 = res6.pairs.iter().any(|p| p.a == p2 && p.b == p3);
    let part2 = format!("6^n: (2^n, 3^n) returned = {has_23}");
    if !res.only_trivial() {
        let ex = res.nontrivial().next().expect("nontrivial pair");
        let show = |v: &[BigUint]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        return Err(format!(
            "2^n: {} nontrivial pairs survive, e.g. a=({}) b=({}); {part2}",
            res.nontrivial().count(),
            show(&ex.a),
            show(&ex.b)
        ));
    }
    if !has_23 {
        return Err(part2);
    }
    Ok(vec!["2^n: only trivial pairs".into(), part2])
}

fn brute_torus(side: usize) -> Vec<Vec<u8>> {
    let n = side * side;
    let mut out = Vec::new();
    for code in 0..3u32.pow(n as u32) {
        let v: Vec<u8> = (0..n).map(|i| (code / 3u32.pow(i as u32) % 3) as u8).collect();
        let at = |r: usize, c: usize| v[(r % side) * side + (c % side)];
        let proper = (0..side).all(|r| (0..side).all(|c| at(r, c) != at(r + 1, c) && at(r, c) != at(r, c + 1)));
        if proper {
            out.push(v);
        }
    }
    out
}

fn c6(l: &Limits) -> Outcome {
    let mut lines = Vec::new();
    // 4x4 box: brute force over 3^16 assignments
    let mut brute = 0u64;
    for code in 0..3u64.pow(16) {
        let v: Vec<u64> = (0..16).map(|i| code / 3u64.pow(i) % 3).collect();
        let ok = (0..4).all(|r| (0..4).all(|c| (c == 3 || v[r * 4 + c] != v[r * 4 + c + 1]) && (r == 3 || v[r * 4 + c] != v[r * 4 + c + 4])));
        brute += u64::from(ok);
    }
    let all = proper_box_colorings(&[4, 4]);
    if all.len() as u64 != brute {
        return Err(format!("4x4 box colorings: {} listed, {brute} by brute force", all.len()));
    }
    for c in &all {
        let h = cb::lift_height(c, c.values[0]).map_err(|e| e.to_string())?;
        if h.values.iter().zip(&c.values).any(|(a, b)| a.rem_euclid(3) != *b) {
            return Err(format!("round trip fails on\n{}", c.to_text()));
        }
    }
    lines.push(format!("lift round trip on all {brute} proper colorings of the 4x4 box"));

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let x = random_torus_coloring(2, 6, &mut rng).map_err(|e| e.to_string())?;
        let n: Vec<i64> = (0..2).map(|_| rng.gen_range(-9..=9)).collect();
        let m: Vec<i64> = (0..2).map(|_| rng.gen_range(-9..=9)).collect();
        let nm: Vec<i64> = n.iter().zip(&m).map(|(a, b)| a + b).collect();
        let lhs = cb::height_cocycle(&x, &nm).map_err(|e| e.to_string())?;
        let rhs = cb::height_cocycle(&x, &m).map_err(|e| e.to_string())?
            + cb::height_cocycle(&x.shifted(&m), &n).map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("cocycle identity fails: n={n:?} m={m:?}"));
        }
    }
    lines.push("cocycle identity exact on 100 sampled triples (6x6 tori)".into());

    let chess = sft::chessboard(2).map_err(|e| e.to_string())?;
    let two = Sublattice::scaled(2, 2).map_err(|e| e.to_string())?;
    let count = sft::count_fixed_points(&chess, &two, l).map_err(|e| e.to_string())?;
    let oracle = brute_torus(2).len();
    if count != BigUint::from(18u32) || oracle != 18 {
        return Err(format!("2x2 torus: library {count}, brute force {oracle}"));
    }
    lines.push("2x2 torus: 18 proper colorings (library and brute force)".into());

    // max slope: increments along each axis over one period must total +3
    let inc = |a: u8, b: u8| if (b + 3 - a) % 3 == 1 { 1i64 } else { -1 };
    let brute_max: Vec<Vec<u8>> = brute_torus(3)
        .into_iter()
        .filter(|v| {
            let row = (0..3).map(|c| inc(v[c], v[(c + 1) % 3])).sum::<i64>();
            let col = (0..3).map(|r| inc(v[r * 3], v[((r + 1) % 3) * 3])).sum::<i64>();
            row == 3 && col == 3
        })
        .collect();
    let pts = cb::max_slope_points(&Sublattice::scaled(2, 3).map_err(|e| e.to_string())?, l).map_err(|e| e.to_string())?;
    if pts.len() != 3 || brute_max.len() != 3 {
        return Err(format!("3x3 torus max-slope points: library {}, brute force {}", pts.len(), brute_max.len()));
    }
    lines.push("exactly 3 max-slope points on the 3x3 torus (library and brute force)".into());
    Ok(lines)
}

fn c7(l: &Limits) -> Outcome {
    let golden = zeta::to_transfer_matrix(&sft::golden_mean(), l).map_err(|e| e.to_string())?;
    let want: Vec<BigInt> = [1, 1, 2, 3, 5, 8].iter().map(|&v| BigInt::from(v)).collect();
    let z5 = zeta::zeta_series(&golden, 5).map_err(|e| e.to_string())?;
    let z6 = zeta::zeta_series(&golden, 6).map_err(|e| e.to_string())?;
    if z5 != want || z6[..6] != want[..] || z6[6] != BigInt::from(13) {
        return Err(format!("zeta coefficients {z6:?}"));
    }
    let m = zeta::TransferMatrix::parse("1 1; 1 0").map_err(|e| e.to_string())?;
    let width = BigRational::new(BigInt::one(), BigInt::from(10).pow(9));
    let phi = perron::perron_root(&m, &width).map_err(|e| e.to_string())?;
    let (lo, hi) = phi.bounds();
    // (1+√5)/2 lies in [lo, hi] iff 2lo-1 <= √5 <= 2hi-1, with both sides positive
    let two = BigRational::from_integer(BigInt::from(2));
    let five = BigRational::from_integer(BigInt::from(5));
    let (a, b) = (&two * &lo - BigRational::one(), &two * &hi - BigRational::one());
    let contains = &a * &a <= five && five <= &b * &b;
    if &hi - &lo > width || !contains || phi.min_poly().to_string() != "x^2 - x - 1" {
        return Err(format!("Perron root interval [{lo}, {hi}]"));
    }
    if perron::is_perron(&IntPoly::parse("x^2 - 2").map_err(|e| e.to_string())?, None).map_err(|e| e.to_string())? {
        return Err("is_perron(x^2 - 2) returned true".into());
    }
    let f = perron::perron_factorizations(&PerronNumber::integer(6), FactorBounds::default()).map_err(|e| e.to_string())?;
    if f.signatures() != vec![vec!["x - 2".to_string(), "x - 3".to_string()]] {
        return Err(format!("factorizations of 6: {:?}", f.signatures()));
    }
    Ok(vec![
        "zeta 1,1,2,3,5,8 (next 13)".into(),
        format!("phi in [{:.12}, {:.12}], width {:.2e}", lo.to_f64().unwrap_or(0.0), hi.to_f64().unwrap_or(0.0), (&hi - &lo).to_f64().unwrap_or(0.0)),
        "is_perron(x^2-2) = false; factorizations(6) = {2·3}".into(),
    ])
}

fn c8(l: &Limits) -> Outcome {
    let shift = FiniteRotation::new(vec![5; 4], vec![0; 4], 1).map_err(|e| e.to_string())?;
    let c = rot::orbit_census(&shift, l).map_err(|e| e.to_string())?;
    let want = OrbitCensus::from_pairs(&[(1, 5), (2, 10), (4, 150)]);
    if c != want {
        return Err(format!("census {c}"));
    }
    let d = rot::decompose_with(5, 4, vec![vec![4, 0, 1], vec![1, 0, 1]], l).map_err(|e| e.to_string())?;
    let mut acc = OrbitCensus::from_pairs(&[(1, 1)]);
    for (_, s) in &d.summands {
        acc = rot::census_product(&acc, s).map_err(|e| e.to_string())?;
    }
    if acc != want {
        return Err(format!("census product {acc}"));
    }
    let m = &d.summands[1].1;
    let out = shiftlab::cli::run(["shiftlab", "rotations", "decompose", "--p", "5", "--n", "4"]);
    let noted = out.code == 0 && out.json.contains("flagged") && out.json.contains("{1: 1, 4: 6}");
    if !noted {
        return Err("flagged note missing from the decompose report".into());
    }
    Ok(vec![
        format!("census {c}; summands {} x {m} reassemble", d.summands[0].1),
        format!("flagged note: M-summand census is {m}, not 1 fixed point + 10 orbits of length 4"),
    ])
}

fn c9(l: &Limits) -> Outcome {
    let mut lines = Vec::new();
    for (n, k) in [(2u32, 3u32), (3, 2)] {
        let cert = dyck::dyck_prime_certificate(n, k, l).map_err(|e| e.to_string())?;
        for (i, c) in cert.top_counts.iter().enumerate() {
            let p = (n as u64).pow(i as u32);
            if *c != pow(n as u64, p) {
                return Err(format!("|D_{n}^({p},1)| = {c}"));
            }
        }
        if !cert.holds {
            return Err(format!("certificate ({n},{k}) does not hold"));
        }
        lines.push(format!("N={n}, k_max={k}: holds over {} candidates", cert.candidates.len()));
    }
    Ok(lines)
}

fn strip_timing(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("report is JSON");
    if let Some(o) = v.as_object_mut() {
        o.remove("timing");
        // echoes argv, which includes the worker count
        o.remove("command");
    }
    v.to_string()
}

fn c10(_: &Limits) -> Outcome {
    let (one, eight) = (Limits::default().with_jobs(1), Limits::default().with_jobs(8));
    let e = |x: shiftlab::Error| x.to_string();
    let chess = sft::chessboard(2).map_err(e)?;
    for lat in sft::sublattices_up_to(2, 6).map_err(e)? {
        let a = sft::fixed_points(&chess, &lat, Mode::Enumerate, &one).map_err(e)?;
        let b = sft::fixed_points(&chess, &lat, Mode::Enumerate, &eight).map_err(e)?;
        if a != b {
            return Err(format!("fixed points on {:?}", lat.rows()));
        }
    }
    let six = CountSequence::from_fn(6, |n| pow(6, n));
    if count_sequence_factorizations(&six, 6, &one).map_err(e)?.pairs != count_sequence_factorizations(&six, 6, &eight).map_err(e)?.pairs {
        return Err("count-sequence factorizations".into());
    }
    if dyck::periodic_count_oracle(3, 6, &one).map_err(e)? != dyck::periodic_count_oracle(3, 6, &eight).map_err(e)? {
        return Err("Dyck oracle".into());
    }
    let lat = Sublattice::from_generators(2, &[vec![3, 0], vec![1, 2]]).map_err(e)?;
    if cb::max_slope_points(&lat, &one).map_err(e)? != cb::max_slope_points(&lat, &eight).map_err(e)? {
        return Err("max-slope points".into());
    }
    let r = FiniteRotation::new(vec![5; 4], vec![0; 4], 1).map_err(e)?;
    if rot::orbit_census(&r, &one).map_err(e)? != rot::orbit_census(&r, &eight).map_err(e)? {
        return Err("orbit census".into());
    }
    if rot::rotation_factorizations(&[2, 3, 5, 7], &one).map_err(e)? != rot::rotation_factorizations(&[2, 3, 5, 7], &eight).map_err(e)? {
        return Err("rotation factorizations".into());
    }
    let c1 = dyck::dyck_prime_certificate(2, 3, &one).map_err(e)?.to_json();
    let c8 = dyck::dyck_prime_certificate(2, 3, &eight).map_err(e)?.to_json();
    if c1 != c8 {
        return Err("Dyck certificate".into());
    }
    let argvs: [&[&str]; 5] = [
        &["count", "--system", "chessboard(2)", "--index", "6", "--enumerate"],
        &["certify-prime", "--system", "full(6,1)", "--horizon", "5"],
        &["dyck", "count", "--n-brackets", "3", "--period", "6", "--oracle"],
        &["chessboard", "maxslope", "--dim", "2"],
        &["rotations", "factorize", "--primes", "2,3,5"],
    ];
    for argv in argvs {
        let run = |jobs: &str| {
            let mut a = vec!["shiftlab", "--jobs", jobs];
            a.extend_from_slice(argv);
            let out = shiftlab::cli::run(a);
            (out.code, strip_timing(&out.json))
        };
        let (x, y) = (run("1"), run("8"));
        if x.0 != 0 || x.1 != y.1 {
            return Err(format!("CLI report differs for {argv:?}"));
        }
    }
    Ok(vec!["library enumerations and CLI reports identical with 1 and 8 workers".into()])
}

fn main() {
    let limits = Limits::default();
    let criteria: [(u32, &str, fn(&Limits) -> Outcome); 10] = [
        (1, "Dyck oracle equals closed form", c1),
        (2, "Dyck growth approaches log 3", c2),
        (3, "cylinder measures and local entropies", c3),
        (4, "full-shift sublattice law", c4),
        (5, "2-shift direct-prime certificate", c5),
        (6, "chessboard heights", c6),
        (7, "zeta and Perron", c7),
        (8, "rotation censuses", c8),
        (9, "Dyck primeness congruences", c9),
        (10, "determinism under parallelism", c10),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let t = Instant::now();
        let res = f(&limits);
        let secs = t.elapsed().as_secs_f64();
        let expected_fail = EXPECTED_FAIL.contains(&id);
        match &res {
            Ok(lines) => {
                println!("criterion {id:>2}: PASS  {name} ({secs:.1} s)");
                for l in lines {
                    println!("              {l}");
                }
            }
            Err(why) => {
                let tag = if expected_fail { " (known, see ledger)" } else { "" };
                println!("criterion {id:>2}: FAIL  {name} ({secs:.1} s){tag}");
                println!("              {why}");
            }
        }
        if res.is_ok() == expected_fail {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
