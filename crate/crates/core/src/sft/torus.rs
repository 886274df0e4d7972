//! Exact counting and enumeration of the points fixed by a sublattice.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::lattice::Sublattice;
use super::spec::{SftSpec, Symbol};
use crate::budget::{Limits, NodeCounter};
use crate::error::{Error, Result};

/// A configuration on the fundamental domain of a sublattice, i.e. an
/// L-periodic point of the full shift.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusConfiguration {
    pub lattice: Sublattice,
    /// One symbol per fundamental-domain cell, in [`Sublattice::cell_index`] order.
    pub values: Vec<Symbol>,
}

impl TorusConfiguration {
    pub fn new(lattice: Sublattice, values: Vec<Symbol>) -> Result<Self> {
        if values.len() as u64 != lattice.index() {
            return Err(Error::invalid(format!(
                "configuration has {} cells, lattice index is {}",
                values.len(),
                lattice.index()
            )));
        }
        Ok(TorusConfiguration { lattice, values })
    }

    /// Symbol at an arbitrary point of Z^d.
    pub fn at(&self, v: &[i64]) -> Symbol {
        self.values[self.lattice.index_of(v)]
    }

    /// The configuration `n -> x_{n + shift}`.
    pub fn shifted(&self, shift: &[i64]) -> TorusConfiguration {
        let values = self
            .lattice
            .cells()
            .iter()
            .map(|c| {
                let v: Vec<i64> = c.iter().zip(shift).map(|(a, b)| a + b).collect();
                self.at(&v)
            })
            .collect();
        TorusConfiguration { lattice: self.lattice.clone(), values }
    }

    /// True iff no forbidden pattern of `spec` occurs (with wraparound).
    pub fn is_valid(&self, spec: &SftSpec) -> bool {
        let cells = self.lattice.cells();
        spec.forbidden().iter().all(|p| {
            cells.iter().all(|t| {
                !p.cells().iter().all(|(v, s)| {
                    let w: Vec<i64> = t.iter().zip(v).map(|(a, b)| a + b).collect();
                    self.at(&w) == *s
                })
            })
        })
    }
}

/// Whether [`fixed_points`] should also materialize the configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Count,
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoints {
    pub count: BigUint,
    pub configurations: Option<Vec<TorusConfiguration>>,
}

/// One placed forbidden pattern: it occurs iff every listed cell carries its
/// symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Placement {
    cells: Vec<(usize, Symbol)>,
}

/// Forbidden patterns compiled against one torus.
struct Compiled {
    alphabet: usize,
    /// Constrained cells in fill order.
    order: Vec<usize>,
    /// Free cells (touched by no placement).
    free: Vec<usize>,
    /// `checks[k]`: placements completed when `order[k]` is assigned.
    checks: Vec<Vec<Placement>>,
    size: usize,
}

fn compile(spec: &SftSpec, lattice: &Sublattice) -> Compiled {
    let size = lattice.index() as usize;
    let cells = lattice.cells();
    let mut placements = BTreeSet::new();
    for p in spec.forbidden() {
        'place: for t in &cells {
            let mut pc: Vec<(usize, Symbol)> = Vec::with_capacity(p.len());
            for (v, s) in p.cells() {
                let w: Vec<i64> = t.iter().zip(v).map(|(a, b)| a + b).collect();
                let idx = lattice.index_of(&w);
                match pc.iter().find(|(i, _)| *i == idx) {
                    Some(&(_, s2)) if s2 != *s => continue 'place, // can never occur
                    Some(_) => {}
                    None => pc.push((idx, *s)),
                }
            }
            pc.sort();
            placements.insert(Placement { cells: pc });
        }
    }
    // Column-major fill: cell index order, axis 0 fastest.
    let mut used = vec![false; size];
    for pl in &placements {
        for &(i, _) in &pl.cells {
            used[i] = true;
        }
    }
    let order: Vec<usize> = (0..size).filter(|&i| used[i]).collect();
    let free: Vec<usize> = (0..size).filter(|&i| !used[i]).collect();
    let mut pos = vec![usize::MAX; size];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let mut checks = vec![Vec::new(); order.len()];
    for pl in placements {
        let last = pl.cells.iter().map(|&(i, _)| pos[i]).max().expect("nonempty placement");
        checks[last].push(pl);
    }
    Compiled { alphabet: spec.alphabet_size(), order, free, checks, size }
}

impl Compiled {
    fn ok_at(&self, k: usize, values: &[Symbol]) -> bool {
        self.checks[k]
            .iter()
            .all(|pl| !pl.cells.iter().all(|&(i, s)| values[i] == s))
    }

    /// Depth-first search below depth `k`; calls `leaf` on each complete
    /// assignment of the constrained cells.
    fn search(
        &self,
        k: usize,
        values: &mut [Symbol],
        nodes: &NodeCounter,
        leaf: &mut dyn FnMut(&[Symbol]) -> Result<()>,
    ) -> Result<()> {
        if k == self.order.len() {
            return leaf(values);
        }
        let cell = self.order[k];
        nodes.charge(self.alphabet as u64)?;
        for s in 0..self.alphabet as Symbol {
            values[cell] = s;
            if self.ok_at(k, values) {
                self.search(k + 1, values, nodes, leaf)?;
            }
        }
        Ok(())
    }

    /// Valid assignments of the first `depth` constrained cells, in DFS order.
    fn prefixes(&self, depth: usize, nodes: &NodeCounter) -> Result<Vec<Vec<Symbol>>> {
        let mut frontier = vec![vec![0 as Symbol; self.size]];
        for k in 0..depth {
            let cell = self.order[k];
            let mut next = Vec::new();
            nodes.charge((self.alphabet * frontier.len()) as u64)?;
            for v in frontier {
                for s in 0..self.alphabet as Symbol {
                    let mut w = v.clone();
                    w[cell] = s;
                    if self.ok_at(k, &w) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        Ok(frontier)
    }
}

fn prefix_depth(c: &Compiled, jobs: usize) -> usize {
    if jobs <= 1 {
        return 0;
    }
    let mut depth = 0;
    let mut width = 1usize;
    while depth < c.order.len() && width < 16 * jobs {
        width = width.saturating_mul(c.alphabet);
        depth += 1;
    }
    depth
}

/// Count (and optionally list) the configurations of `spec` fixed by `lattice`.
///
/// Cells no placement touches contribute a factor |A| each and are skipped
/// by the search. The node limit in `limits` bounds both the search and,
/// in enumerate mode, the number of configurations listed.
pub fn fixed_points(spec: &SftSpec, lattice: &Sublattice, mode: Mode, limits: &Limits) -> Result<FixedPoints> {
    if spec.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), found: lattice.dim() });
    }
    let c = compile(spec, lattice);
    let nodes = NodeCounter::new(limits.max_nodes, "torus fixed-point search");
    let free_factor = BigUint::from(c.alphabet).pow(c.free.len() as u32);
    let depth = prefix_depth(&c, limits.jobs);
    let prefixes = c.prefixes(depth, &nodes)?;

    match mode {
        Mode::Count => {
            let per_prefix: Vec<Result<u64>> = limits.install(|| {
                prefixes
                    .into_par_iter()
                    .map(|mut v| {
                        let mut n = 0u64;
                        c.search(depth, &mut v, &nodes, &mut |_| {
                            n += 1;
                            Ok(())
                        })?;
                        Ok(n)
                    })
                    .collect()
            });
            let mut leaves = BigUint::zero();
            for r in per_prefix {
                leaves += r?;
            }
            Ok(FixedPoints { count: leaves * free_factor, configurations: None })
        }
        Mode::Enumerate => {
            let free_total = c.alphabet.checked_pow(c.free.len() as u32);
            let per_prefix: Vec<Result<Vec<Vec<Symbol>>>> = limits.install(|| {
                prefixes
                    .into_par_iter()
                    .map(|mut v| {
                        let mut out = Vec::new();
                        c.search(depth, &mut v, &nodes, &mut |vals| {
                            let total = free_total.ok_or_else(|| Error::budget("free-cell expansion", limits.max_nodes))?;
                            nodes.charge(total as u64)?;
                            let mut w = vals.to_vec();
                            for mut code in 0..total {
                                for &cell in &c.free {
                                    w[cell] = (code % c.alphabet) as Symbol;
                                    code /= c.alphabet;
                                }
                                out.push(w.clone());
                            }
                            Ok(())
                        })?;
                        Ok(out)
                    })
                    .collect()
            });
            let mut configs = Vec::new();
            for r in per_prefix {
                configs.extend(r?.into_iter().map(|values| TorusConfiguration { lattice: lattice.clone(), values }));
            }
            let count = BigUint::from(configs.len());
            Ok(FixedPoints { count, configurations: Some(configs) })
        }
    }
}

/// Shorthand for the count alone.
pub fn count_fixed_points(spec: &SftSpec, lattice: &Sublattice, limits: &Limits) -> Result<BigUint> {
    Ok(fixed_points(spec, lattice, Mode::Count, limits)?.count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::spec::{chessboard, full_shift, golden_mean, product_sft};
    use num_traits::One;

    fn lim() -> Limits {
        Limits::default()
    }

    /// Oracle: test every assignment of the torus directly.
    fn brute(spec: &SftSpec, l: &Sublattice) -> u64 {
        let k = l.index() as u32;
        let a = spec.alphabet_size() as u64;
        let mut n = 0;
        for mut code in 0..a.pow(k) {
            let values: Vec<Symbol> = (0..k).map(|_| { let s = (code % a) as Symbol; code /= a; s }).collect();
            if TorusConfiguration::new(l.clone(), values).unwrap().is_valid(spec) {
                n += 1;
            }
        }
        n
    }

    #[test]
    fn chessboard_two_by_two_torus() {
        let l = Sublattice::scaled(2, 2).unwrap();
        let c = chessboard(2).unwrap();
        assert_eq!(brute(&c, &l), 18);
        assert_eq!(count_fixed_points(&c, &l, &lim()).unwrap(), BigUint::from(18u32));
    }

    #[test]
    fn one_dimensional_sequences() {
        let g = golden_mean();
        let got: Vec<BigUint> = (1..=5)
            .map(|n| count_fixed_points(&g, &Sublattice::scaled(1, n).unwrap(), &lim()).unwrap())
            .collect();
        let want: Vec<BigUint> = [1u32, 3, 4, 7, 11].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(got, want);
        let c = chessboard(1).unwrap();
        let got: Vec<BigUint> = (1..=4)
            .map(|n| count_fixed_points(&c, &Sublattice::scaled(1, n).unwrap(), &lim()).unwrap())
            .collect();
        let want: Vec<BigUint> = [0u32, 6, 6, 18].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn matches_brute_force_on_skew_lattices() {
        let c = chessboard(2).unwrap();
        for k in 1..=6 {
            for l in crate::sft::lattice::sublattices_of_index(2, k).unwrap() {
                assert_eq!(count_fixed_points(&c, &l, &lim()).unwrap(), BigUint::from(brute(&c, &l)), "{l}");
            }
        }
    }

    #[test]
    fn product_of_chessboards() {
        let c = chessboard(1).unwrap();
        let p = product_sft(&c, &c).unwrap();
        let l = Sublattice::scaled(1, 3).unwrap();
        assert_eq!(count_fixed_points(&p, &l, &lim()).unwrap(), BigUint::from(36u32));
    }

    #[test]
    fn full_shift_and_trivial() {
        let f = full_shift(3, 2).unwrap();
        for l in crate::sft::lattice::sublattices_of_index(2, 4).unwrap() {
            assert_eq!(count_fixed_points(&f, &l, &lim()).unwrap(), BigUint::from(81u32));
        }
        let t = full_shift(1, 3).unwrap();
        let l = Sublattice::from_hnf(vec![vec![2, 1, 0], vec![0, 1, 0], vec![0, 0, 3]]).unwrap();
        assert_eq!(count_fixed_points(&t, &l, &lim()).unwrap(), BigUint::one());
    }

    #[test]
    fn enumerate_agrees_with_count_and_jobs() {
        let c = chessboard(2).unwrap();
        let l = Sublattice::from_hnf(vec![vec![3, 1], vec![0, 2]]).unwrap();
        let a = fixed_points(&c, &l, Mode::Enumerate, &lim()).unwrap();
        let b = fixed_points(&c, &l, Mode::Enumerate, &lim().with_jobs(8)).unwrap();
        assert_eq!(a, b);
        let n = count_fixed_points(&c, &l, &lim().with_jobs(4)).unwrap();
        assert_eq!(a.count, n);
        for x in a.configurations.unwrap() {
            assert!(x.is_valid(&c));
        }
        let f = full_shift(2, 1).unwrap();
        let e = fixed_points(&f, &Sublattice::scaled(1, 3).unwrap(), Mode::Enumerate, &lim()).unwrap();
        assert_eq!(e.configurations.unwrap().len(), 8);
    }

    #[test]
    fn budget_is_reported() {
        let c = chessboard(2).unwrap();
        let l = Sublattice::scaled(2, 6).unwrap();
        let err = count_fixed_points(&c, &l, &lim().with_max_nodes(100)).unwrap_err();
        assert!(err.is_budget());
    }
}
