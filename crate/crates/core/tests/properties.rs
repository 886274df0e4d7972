//! Algebraic invariants checked on generated inputs.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftlab::chessboard as cb;
use shiftlab::dyck::{self, DyckWord, Letter, ReducedForm};
use shiftlab::factorize::count_sequence_factorizations;
use shiftlab::perron::{self, PerronNumber};
use shiftlab::poly::IntPoly;
use shiftlab::rotations::{self as rot, FiniteRotation};
use shiftlab::sft::{self, Sublattice};
use shiftlab::verify::{proper_box_colorings, random_torus_coloring};
use shiftlab::{CountSequence, Limits};

fn lim() -> Limits {
    Limits::default()
}

fn letters(n: u32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((any::<bool>(), 1..=n), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(open, i)| if open { Letter::Alpha(i) } else { Letter::Beta(i) }).collect())
}

fn lattice2() -> impl Strategy<Value = Sublattice> {
    (1i64..=3, 0i64..3, 1i64..=3).prop_map(|(a, b, c)| Sublattice::from_hnf(vec![vec![a, b % a], vec![0, c]]).unwrap())
}

fn small_sft() -> impl Strategy<Value = sft::SftSpec> {
    prop_oneof![
        (1usize..=3).prop_map(|n| sft::full_shift(n, 2).unwrap()),
        Just(sft::chessboard(2).unwrap()),
    ]
}

fn times(r: &ReducedForm, s: &ReducedForm, n: u32) -> ReducedForm {
    match (r.to_word(n), s.to_word(n)) {
        (Some(a), Some(b)) => dyck::reduce(&a.concat(&b)),
        _ => ReducedForm::Zero,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_multiply_fixed_point_counts(x in small_sft(), y in small_sft(), l in lattice2()) {
        let p = sft::product_sft(&x, &y).unwrap();
        let lhs = sft::count_fixed_points(&p, &l, &lim()).unwrap();
        let rhs = sft::count_fixed_points(&x, &l, &lim()).unwrap() * sft::count_fixed_points(&y, &l, &lim()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_sequences_are_realizable(a in 0u64..3, b in 0u64..3, c in 0u64..3, d in 0u64..3) {
        // periodic points of a 2x2 edge shift are traces of matrix powers
        let m = [[a, b], [c, d]];
        let mut pw = [[1u64, 0], [0, 1]];
        let mut counts = Vec::new();
        for _ in 0..8 {
            pw = [
                [pw[0][0] * m[0][0] + pw[0][1] * m[1][0], pw[0][0] * m[0][1] + pw[0][1] * m[1][1]],
                [pw[1][0] * m[0][0] + pw[1][1] * m[1][0], pw[1][0] * m[0][1] + pw[1][1] * m[1][1]],
            ];
            counts.push(BigUint::from(pw[0][0] + pw[1][1]));
        }
        prop_assert!(CountSequence::from_periods(counts).is_orbit_realizable().unwrap());
    }

    #[test]
    fn reduction_is_a_monoid_morphism(u in letters(3, 10), v in letters(3, 10)) {
        let (u, v) = (DyckWord::new(3, u).unwrap(), DyckWord::new(3, v).unwrap());
        let whole = dyck::reduce(&u.concat(&v));
        prop_assert_eq!(whole, times(&dyck::reduce(&u), &dyck::reduce(&v), 3));
    }

    #[test]
    fn closed_form_is_symmetric_in_excess(n in 1u32..=4, p in 1u64..=12, k in 0u64..=12) {
        let j = p as i64 - 2 * (k % (p + 1)) as i64;
        prop_assert_eq!(
            dyck::periodic_count_closed_form(n, p, j).unwrap(),
            dyck::periodic_count_closed_form(n, p, -j).unwrap()
        );
    }

    #[test]
    fn lift_reduces_to_coloring_and_shifts_with_base(idx in 0usize..246, t in -3i64..=3) {
        let all = proper_box_colorings(&[3, 3]);
        let c = &all[idx % all.len()];
        let h = cb::lift_height(c, c.values[0]).unwrap();
        prop_assert!(h.values.iter().zip(&c.values).all(|(a, b)| a.rem_euclid(3) == *b));
        let shifted = cb::lift_height(c, c.values[0] + 3 * t).unwrap();
        prop_assert!(shifted.values.iter().zip(&h.values).all(|(a, b)| *a == b + 3 * t));
    }

    #[test]
    fn cocycle_identity(seed in any::<u64>(), d in 1usize..=3, n in prop::collection::vec(-6i64..=6, 3), m in prop::collection::vec(-6i64..=6, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_torus_coloring(d, 4, &mut rng).unwrap();
        let (n, m) = (&n[..d], &m[..d]);
        let nm: Vec<i64> = n.iter().zip(m).map(|(a, b)| a + b).collect();
        let lhs = cb::height_cocycle(&x, &nm).unwrap();
        let rhs = cb::height_cocycle(&x, m).unwrap() + cb::height_cocycle(&x.shifted(m), n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn census_of_product_rotation(a in 1u64..=8, b in 1u64..=8, s in 0u64..8, t in 0u64..8) {
        let ra = FiniteRotation::new(vec![a], vec![s % a], 0).unwrap();
        let rb = FiniteRotation::new(vec![b], vec![t % b], 0).unwrap();
        let rab = FiniteRotation::new(vec![a, b], vec![s % a, t % b], 0).unwrap();
        let direct = rot::orbit_census(&rab, &lim()).unwrap();
        let combined = rot::census_product(&rot::orbit_census(&ra, &lim()).unwrap(), &rot::orbit_census(&rb, &lim()).unwrap()).unwrap();
        prop_assert_eq!(direct, combined);
    }

    #[test]
    fn perron_multiply_commutes(c1 in 1i64..=3, k1 in 1i64..=3, c2 in 1i64..=3, k2 in 1i64..=3) {
        // the positive root of x^2 - c x - k dominates; skip rational roots
        let square = |c: i64, k: i64| {
            let disc = c * c + 4 * k;
            let r = (disc as f64).sqrt().round() as i64;
            r * r == disc
        };
        prop_assume!(!square(c1, k1) && !square(c2, k2));
        let quad = |c: i64, k: i64| PerronNumber::from_poly(&IntPoly::new(vec![(-k).into(), (-c).into(), 1.into()])).unwrap();
        let (p, q) = (quad(c1, k1), quad(c2, k2));
        let pq = perron::perron_multiply(&p, &q).unwrap();
        let qp = perron::perron_multiply(&q, &p).unwrap();
        prop_assert_eq!(pq.min_poly(), qp.min_poly());
        prop_assert!((pq.approx() - p.approx() * q.approx()).abs() < 1e-9);
        let z = PerronNumber::integer(3);
        let (zp, pz) = (perron::perron_multiply(&z, &p).unwrap(), perron::perron_multiply(&p, &z).unwrap());
        prop_assert_eq!(zp.min_poly(), pz.min_poly());
    }

    #[test]
    fn factor_pairs_are_valid(a in 1u64..=3, b in 1u64..=3) {
        let c = CountSequence::from_fn(5, |n| BigUint::from(a * b).pow(n as u32));
        let res = count_sequence_factorizations(&c, 5, &lim()).unwrap();
        prop_assert!(res.pairs.iter().any(|p| p.is_trivial()));
        for p in &res.pairs {
            for i in 0..res.counts.len() {
                prop_assert_eq!(&p.a[i] * &p.b[i], res.counts[i].clone());
            }
            prop_assert!(CountSequence::from_periods(p.a.clone()).is_orbit_realizable().unwrap());
            prop_assert!(CountSequence::from_periods(p.b.clone()).is_orbit_realizable().unwrap());
        }
    }
}
