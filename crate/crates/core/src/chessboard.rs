//! The 3-colored chessboard: proper colorings of Z^d, their height lifts,
//! the height cocycle, gluing, max-slope points and periodic extension.

use std::collections::VecDeque;

use serde_json::{json, Value};

use crate::budget::{Limits, NodeCounter};
use crate::error::{Error, Result};
use crate::sft::{chessboard, fixed_points, Mode, Sublattice, Symbol, TorusConfiguration};

/// Integer values on a box `origin + [0, shape)`, last axis fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    pub shape: Vec<usize>,
    pub origin: Vec<i64>,
    pub values: Vec<i64>,
}

impl Grid {
    pub fn new(shape: Vec<usize>, origin: Vec<i64>, values: Vec<i64>) -> Result<Self> {
        if shape.is_empty() || shape.len() != origin.len() {
            return Err(Error::invalid("grid shape and origin must have the same positive dimension"));
        }
        if shape.iter().product::<usize>() != values.len() || shape.contains(&0) {
            return Err(Error::invalid("grid values do not fill the shape"));
        }
        Ok(Grid { shape, origin, values })
    }

    /// Fill a box from a function of the absolute coordinates.
    pub fn from_fn(shape: Vec<usize>, origin: Vec<i64>, f: impl Fn(&[i64]) -> i64) -> Self {
        let size = shape.iter().product();
        let mut g = Grid { shape, origin, values: vec![0; size] };
        for i in 0..size {
            let c = g.coord(i);
            g.values[i] = f(&c);
        }
        g
    }

    /// The centered box `[-k, k]^d`.
    pub fn centered(d: usize, k: usize, f: impl Fn(&[i64]) -> i64) -> Self {
        Grid::from_fn(vec![2 * k + 1; d], vec![-(k as i64); d], f)
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn coord(&self, mut idx: usize) -> Vec<i64> {
        let mut c = vec![0i64; self.dim()];
        for a in (0..self.dim()).rev() {
            c[a] = self.origin[a] + (idx % self.shape[a]) as i64;
            idx /= self.shape[a];
        }
        c
    }

    pub fn index(&self, c: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for a in 0..self.dim() {
            let r = c[a] - self.origin[a];
            if r < 0 || r >= self.shape[a] as i64 {
                return None;
            }
            idx = idx * self.shape[a] + r as usize;
        }
        Some(idx)
    }

    pub fn get(&self, c: &[i64]) -> Option<i64> {
        self.index(c).map(|i| self.values[i])
    }

    /// Neighbor pairs `(i, j)` with `j = i + e_axis`.
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let c = self.coord(i);
            for a in 0..self.dim() {
                let mut n = c.clone();
                n[a] += 1;
                if let Some(j) = self.index(&n) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Digit or integer grid text: for d = 2 one line per axis-0 index; for
    /// d = 3 blank-line separated blocks per axis-0 index.
    pub fn to_text(&self) -> String {
        let wide = self.values.iter().any(|v| !(0..=9).contains(v));
        let row_len = *self.shape.last().unwrap();
        let rows: Vec<String> = self
            .values
            .chunks(row_len)
            .map(|r| {
                if wide {
                    r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                } else {
                    r.iter().map(|v| v.to_string()).collect()
                }
            })
            .collect();
        if self.dim() == 3 {
            rows.chunks(self.shape[1]).map(|b| b.join("\n")).collect::<Vec<_>>().join("\n\n")
        } else {
            rows.join("\n")
        }
    }

    /// Parse the text form. Rows of single digits or space-separated integers;
    /// blank lines separate axis-0 blocks of a 3-dimensional grid. A single
    /// row is read as a one-dimensional grid.
    pub fn parse(text: &str, origin: Option<Vec<i64>>) -> Result<Self> {
        let blocks: Vec<Vec<Vec<i64>>> = text
            .split("\n\n")
            .map(|b| {
                b.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(parse_row)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|b| !b.is_empty())
            .collect();
        if blocks.is_empty() {
            return Err(Error::parse("empty grid"));
        }
        let width = blocks[0][0].len();
        if blocks.iter().flatten().any(|r| r.len() != width) {
            return Err(Error::parse("grid rows have different lengths"));
        }
        let (shape, values): (Vec<usize>, Vec<i64>) = if blocks.len() > 1 {
            let h = blocks[0].len();
            if blocks.iter().any(|b| b.len() != h) {
                return Err(Error::parse("grid blocks have different heights"));
            }
            (vec![blocks.len(), h, width], blocks.into_iter().flatten().flatten().collect())
        } else if blocks[0].len() == 1 {
            (vec![width], blocks.into_iter().flatten().flatten().collect())
        } else {
            (vec![blocks[0].len(), width], blocks.into_iter().flatten().flatten().collect())
        };
        let origin = origin.unwrap_or_else(|| vec![0; shape.len()]);
        Grid::new(shape, origin, values)
    }

    pub fn to_json(&self) -> Value {
        json!({ "shape": self.shape, "origin": self.origin, "grid": self.to_text() })
    }
}

fn parse_row(line: &str) -> Result<Vec<i64>> {
    let bad = || Error::parse(format!("bad grid row `{line}`"));
    if line.contains(char::is_whitespace) || line.contains('-') {
        line.split_whitespace().map(|t| t.parse::<i64>().map_err(|_| bad())).collect()
    } else {
        line.chars().map(|c| c.to_digit(10).map(i64::from).ok_or_else(bad)).collect()
    }
}

/// First pair of adjacent cells with equal colors, or a value outside {0,1,2}.
fn first_conflict(c: &Grid) -> Option<Error> {
    if let Some(i) = c.values.iter().position(|v| !(0..3).contains(v)) {
        return Some(Error::invalid(format!("color {} at {:?} is not in {{0,1,2}}", c.values[i], c.coord(i))));
    }
    c.edges().into_iter().find(|&(i, j)| c.values[i] == c.values[j]).map(|(i, j)| Error::ImproperColoring {
        a: c.coord(i),
        b: c.coord(j),
        color: c.values[i] as u8,
    })
}

pub fn is_proper(c: &Grid) -> bool {
    first_conflict(c).is_none()
}

pub fn is_proper_torus(x: &TorusConfiguration) -> bool {
    chessboard(x.lattice.dim()).map(|s| x.is_valid(&s)).unwrap_or(false)
}

/// Height step across an edge from color `a` to color `b`.
fn step(a: i64, b: i64) -> i64 {
    if (b - a).rem_euclid(3) == 1 {
        1
    } else {
        -1
    }
}

/// Integer lift `h` with `h ≡ c (mod 3)` and `|h(n+e_i) − h(n)| = 1`,
/// anchored at the lexicographically smallest cell with value `base`.
pub fn lift_height(c: &Grid, base: i64) -> Result<Grid> {
    if let Some(e) = first_conflict(c) {
        return Err(e);
    }
    if (base - c.values[0]).rem_euclid(3) != 0 {
        return Err(Error::invalid(format!(
            "base {base} is not congruent to the anchor color {} mod 3",
            c.values[0]
        )));
    }
    let mut h: Vec<Option<i64>> = vec![None; c.len()];
    h[0] = Some(base);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ci = c.coord(i);
        let hi = h[i].unwrap();
        for a in 0..c.dim() {
            for s in [-1i64, 1] {
                let mut n = ci.clone();
                n[a] += s;
                if let Some(j) = c.index(&n) {
                    if h[j].is_none() {
                        h[j] = Some(hi + step(c.values[i], c.values[j]));
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let values: Vec<i64> = h.into_iter().map(|x| x.expect("box is connected")).collect();
    let out = Grid { shape: c.shape.clone(), origin: c.origin.clone(), values };
    // every unit loop closes: each edge step agrees with the tree lift
    for (i, j) in c.edges() {
        if out.values[j] - out.values[i] != step(c.values[i], c.values[j]) {
            return Err(Error::Internal("height loop sum is nonzero".into()));
        }
    }
    Ok(out)
}

fn check_torus(x: &TorusConfiguration) -> Result<()> {
    if x.values.iter().any(|&v| v > 2) || !is_proper_torus(x) {
        return Err(Error::invalid("torus configuration is not a proper 3-coloring"));
    }
    Ok(())
}

/// `Ht(x, n) = ĥ(n) − ĥ(0)` for the periodic coloring `x`, summed along the
/// monotone lattice path that moves along axis 0 first.
pub fn height_cocycle(x: &TorusConfiguration, n: &[i64]) -> Result<i64> {
    check_torus(x)?;
    let d = x.lattice.dim();
    if n.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: n.len() });
    }
    Ok(cocycle_unchecked(x, n))
}

fn cocycle_unchecked(x: &TorusConfiguration, n: &[i64]) -> i64 {
    let mut pos = vec![0i64; n.len()];
    let mut total = 0;
    for a in 0..n.len() {
        let s = n[a].signum();
        for _ in 0..n[a].abs() {
            let from = x.at(&pos) as i64;
            pos[a] += s;
            total += step(from, x.at(&pos) as i64);
        }
    }
    total
}

/// The cocycle evaluated on each generator of the period lattice. A periodic
/// coloring lifts to a periodic height field only when all slopes vanish.
pub fn torus_slopes(x: &TorusConfiguration) -> Result<Vec<i64>> {
    check_torus(x)?;
    Ok(x.lattice.generators().iter().map(|g| cocycle_unchecked(x, g)).collect())
}

/// Cut-and-paste along the last axis at absolute level `cut`. `z` continues
/// the level-`cut` slice with increments of +1 along the last axis; `y`
/// agrees with `x` at or above the cut and with `z` at or below it.
pub fn glue(x: &Grid, cut: i64) -> Result<(Grid, Grid)> {
    if let Some(e) = first_conflict(x) {
        return Err(e);
    }
    let d = x.dim();
    let last = d - 1;
    if cut < x.origin[last] || cut >= x.origin[last] + x.shape[last] as i64 {
        return Err(Error::invalid(format!("cut level {cut} lies outside the slab")));
    }
    let z = Grid::from_fn(x.shape.clone(), x.origin.clone(), |c| {
        let mut at_cut = c.to_vec();
        at_cut[last] = cut;
        (x.get(&at_cut).unwrap() + c[last] - cut).rem_euclid(3)
    });
    let y = Grid::from_fn(x.shape.clone(), x.origin.clone(), |c| {
        if c[last] >= cut {
            x.get(c).unwrap()
        } else {
            z.get(c).unwrap()
        }
    });
    Ok((y, z))
}

/// `x_{n+e_d} = x_n + 1 (mod 3)` everywhere in the grid.
pub fn increments_along_last_axis(z: &Grid) -> bool {
    let last = z.dim() - 1;
    (0..z.len()).all(|i| {
        let mut n = z.coord(i);
        n[last] += 1;
        z.get(&n).is_none_or(|v| (v - z.values[i]).rem_euclid(3) == 1)
    })
}

/// All `L`-periodic proper colorings whose height grows by `Σ v_i` along
/// every `v ∈ L`. Requires every generator of `L` to have coordinate sum
/// divisible by 3, which is exactly when the colorings `(Σ n_i + c) mod 3`
/// are `L`-periodic.
pub fn max_slope_points(lattice: &Sublattice, limits: &Limits) -> Result<Vec<TorusConfiguration>> {
    let gens = lattice.generators();
    if let Some(g) = gens.iter().find(|g| g.iter().sum::<i64>().rem_euclid(3) != 0) {
        return Err(Error::invalid(format!(
            "generator {g:?} has coordinate sum not divisible by 3; no coloring can reach maximal slope"
        )));
    }
    let spec = chessboard(lattice.dim())?;
    let all = fixed_points(&spec, lattice, Mode::Enumerate, limits)?;
    Ok(all
        .configurations
        .unwrap_or_default()
        .into_iter()
        .filter(|x| gens.iter().all(|g| cocycle_unchecked(x, g) == g.iter().sum::<i64>()))
        .collect())
}

/// How a periodic extension was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMethod {
    Lipschitz,
    Search,
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub period: usize,
    pub method: ExtensionMethod,
    pub torus: TorusConfiguration,
}

impl Extension {
    pub fn to_json(&self) -> Value {
        let d = self.torus.lattice.dim();
        let grid = Grid::from_fn(vec![self.period; d], vec![0; d], |c| self.torus.at(c) as i64);
        json!({
            "period": self.period,
            "method": match self.method { ExtensionMethod::Lipschitz => "lipschitz", ExtensionMethod::Search => "search" },
            "fundamental_domain": grid.to_text(),
        })
    }
}

fn l1(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Smallest even period for which the Lipschitz construction fits.
fn lipschitz_plan(h: &Grid) -> (i64, i64, usize) {
    let lo = *h.values.iter().min().unwrap();
    let hi = *h.values.iter().max().unwrap();
    let a = (lo + hi).div_euclid(2);
    let reach = (hi - a).max(a - lo) + 1;
    let side = h.shape.iter().max().copied().unwrap() as i64 + 2 * reach;
    let period = (side + side % 2) as usize;
    (a, reach, period)
}

/// A `K Z^d`-periodic proper coloring agreeing with `p` on its box.
///
/// First tries the clamp `H = max(Lo, min(F, U))` where `Lo`, `U` are the
/// smallest and largest 1-Lipschitz extensions of the lifted heights and `F`
/// is a flat two-valued height; `H` equals `F` away from the box, so it tiles
/// with any even period large enough. Otherwise (odd or small `K`) it falls
/// back to an exhaustive backtracking search on the torus.
pub fn periodic_extension(p: &Grid, period: Option<usize>, limits: &Limits) -> Result<Extension> {
    let h = lift_height(p, p.values[0])?;
    let d = p.dim();
    let (a, reach, needed) = lipschitz_plan(&h);
    let k = period.unwrap_or(needed);
    if k == 0 || p.shape.iter().any(|&s| s > k) {
        return Err(Error::invalid(format!("period {k} is smaller than the pattern box")));
    }
    let lattice = Sublattice::scaled(d, k as i64)?;
    if k % 2 == 0 && k >= needed {
        let parity0 = (h.values[0] - p.origin.iter().sum::<i64>()).rem_euclid(2);
        let window_lo: Vec<i64> = p.origin.iter().map(|o| o - reach).collect();
        let cells = h.len();
        let coords: Vec<Vec<i64>> = (0..cells).map(|i| h.coord(i)).collect();
        let values: Vec<Symbol> = lattice
            .cells()
            .iter()
            .map(|c| {
                let n: Vec<i64> = c.iter().zip(&window_lo).map(|(x, w)| w + (x - w).rem_euclid(k as i64)).collect();
                let lo = (0..cells).map(|i| h.values[i] - l1(&n, &coords[i])).max().unwrap();
                let up = (0..cells).map(|i| h.values[i] + l1(&n, &coords[i])).min().unwrap();
                let flat = if (a - n.iter().sum::<i64>() - parity0).rem_euclid(2) == 0 { a } else { a + 1 };
                lo.max(flat.min(up)).rem_euclid(3) as Symbol
            })
            .collect();
        let torus = TorusConfiguration::new(lattice.clone(), values)?;
        if is_proper_torus(&torus) && agrees(&torus, p) {
            return Ok(Extension { period: k, method: ExtensionMethod::Lipschitz, torus });
        }
    }
    match search_extension(p, &lattice, limits)? {
        Some(torus) => Ok(Extension { period: k, method: ExtensionMethod::Search, torus }),
        None => Err(Error::invalid(format!(
            "no {k}-periodic proper coloring extends the pattern (exhaustive search)"
        ))),
    }
}

fn agrees(x: &TorusConfiguration, p: &Grid) -> bool {
    (0..p.len()).all(|i| x.at(&p.coord(i)) as i64 == p.values[i])
}

/// Backtracking over the torus cells with the pattern cells forced.
fn search_extension(p: &Grid, lattice: &Sublattice, limits: &Limits) -> Result<Option<TorusConfiguration>> {
    let n = lattice.index() as usize;
    let d = lattice.dim();
    let mut forced: Vec<Option<Symbol>> = vec![None; n];
    for i in 0..p.len() {
        let idx = lattice.index_of(&p.coord(i));
        let v = p.values[i] as Symbol;
        if forced[idx].is_some_and(|f| f != v) {
            return Ok(None);
        }
        forced[idx] = Some(v);
    }
    let cells = lattice.cells();
    let neighbors: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| {
            let mut out = Vec::new();
            for a in 0..d {
                for s in [-1i64, 1] {
                    let mut m = c.clone();
                    m[a] += s;
                    out.push(lattice.index_of(&m));
                }
            }
            out
        })
        .collect();
    let counter = NodeCounter::new(limits.max_nodes, "periodic extension search");
    let mut values: Vec<Option<Symbol>> = vec![None; n];
    fn go(
        i: usize,
        values: &mut Vec<Option<Symbol>>,
        forced: &[Option<Symbol>],
        neighbors: &[Vec<usize>],
        counter: &NodeCounter,
    ) -> Result<bool> {
        if i == values.len() {
            return Ok(true);
        }
        let choices: Vec<Symbol> = match forced[i] {
            Some(f) => vec![f],
            None => vec![0, 1, 2],
        };
        for c in choices {
            counter.charge(1)?;
            if neighbors[i].iter().any(|&j| j == i || values[j] == Some(c) || forced[j] == Some(c)) {
                continue;
            }
            values[i] = Some(c);
            if go(i + 1, values, forced, neighbors, counter)? {
                return Ok(true);
            }
            values[i] = None;
        }
        Ok(false)
    }
    if go(0, &mut values, &forced, &neighbors, &counter)? {
        let vals = values.into_iter().map(|v| v.unwrap()).collect();
        Ok(Some(TorusConfiguration::new(lattice.clone(), vals)?))
    } else {
        Ok(None)
    }
}

/// A symmetry of the chessboard: a color permutation followed by a shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    /// `perm[c]` is the image of color `c`.
    pub perm: [u8; 3],
    pub shift: Vec<i64>,
}

impl Symmetry {
    pub fn new(perm: [u8; 3], shift: Vec<i64>) -> Result<Self> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p > 2 || seen[p as usize] {
                return Err(Error::invalid(format!("{perm:?} is not a permutation of the colors")));
            }
            seen[p as usize] = true;
        }
        Ok(Symmetry { perm, shift })
    }

    /// Named maps: identity, rot1, rot2, neg, negrot1, negrot2 (negation
    /// applied after the rotation).
    pub fn named(name: &str, shift: Vec<i64>) -> Result<Self> {
        let affine = |s: i64, r: i64| {
            let mut p = [0u8; 3];
            for c in 0..3 {
                p[c as usize] = (s * (c + r)).rem_euclid(3) as u8;
            }
            p
        };
        let perm = match name {
            "identity" => affine(1, 0),
            "rot1" => affine(1, 1),
            "rot2" => affine(1, 2),
            "neg" => affine(-1, 0),
            "negrot1" => affine(-1, 1),
            "negrot2" => affine(-1, 2),
            _ => return Err(Error::parse(format!("unknown symmetry `{name}`"))),
        };
        Symmetry::new(perm, shift)
    }

    pub fn apply(&self, x: &TorusConfiguration) -> TorusConfiguration {
        let mut y = x.shifted(&self.shift);
        for v in y.values.iter_mut() {
            *v = self.perm[*v as usize] as Symbol;
        }
        y
    }
}

/// The sign `u_ψ` with `Ht(ψx, v) = u_ψ Ht(x, v)` on max-slope points.
pub fn aut_slope_sign(psi: &Symmetry, d: usize, limits: &Limits) -> Result<i32> {
    if psi.shift.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: psi.shift.len() });
    }
    let lattice = Sublattice::scaled(d, 3)?;
    let points = max_slope_points(&lattice, limits)?;
    let mut sign: Option<i32> = None;
    for x in &points {
        let y = psi.apply(x);
        if !is_proper_torus(&y) {
            return Err(Error::invalid("symmetry does not preserve proper colorings"));
        }
        for g in lattice.generators() {
            let (a, b) = (cocycle_unchecked(x, &g), cocycle_unchecked(&y, &g));
            let s = if a == b {
                1
            } else if a == -b {
                -1
            } else {
                return Err(Error::Internal("slope ratio is not ±1".into()));
            };
            if sign.is_some_and(|t| t != s) {
                return Err(Error::Internal("slope sign is not constant".into()));
            }
            sign = Some(s);
        }
    }
    sign.ok_or_else(|| Error::Internal("no max-slope points".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(d: usize, k: usize) -> Grid {
        Grid::centered(d, k, |c| c.iter().sum::<i64>().rem_euclid(3))
    }

    #[test]
    fn properness() {
        assert!(!is_proper(&Grid::new(vec![2], vec![0], vec![1, 1]).unwrap()));
        assert!(is_proper(&slope(2, 3)));
        assert!(is_proper(&slope(3, 1)));
    }

    #[test]
    fn lifting() {
        let corner = Grid::from_fn(vec![4, 4], vec![0, 0], |c| (c[0] + c[1]) % 3);
        let h = lift_height(&corner, 0).unwrap();
        assert!((0..h.len()).all(|i| h.values[i] == h.coord(i).iter().sum::<i64>()));
        // centered box: the anchor (-2,-2) has color 2, base -4 gives h(n) = n1 + n2
        let h = lift_height(&slope(2, 2), -4).unwrap();
        assert!((0..h.len()).all(|i| h.values[i] == h.coord(i).iter().sum::<i64>()));
        let c = Grid::new(vec![4], vec![0], vec![0, 1, 0, 1]).unwrap();
        assert_eq!(lift_height(&c, 0).unwrap().values, vec![0, 1, 0, 1]);
        let a = lift_height(&slope(2, 2), 2).unwrap();
        let b = lift_height(&slope(2, 2), 5).unwrap();
        assert!(a.values.iter().zip(&b.values).all(|(x, y)| y - x == 3));
        assert!(lift_height(&slope(2, 2), 0).is_err());
        assert!(matches!(
            lift_height(&Grid::new(vec![2], vec![0], vec![2, 2]).unwrap(), 2),
            Err(Error::ImproperColoring { .. })
        ));
    }

    #[test]
    fn cocycle_on_slope_coloring() {
        let l = Sublattice::scaled(2, 3).unwrap();
        let x = TorusConfiguration::new(l.clone(), l.cells().iter().map(|c| (c.iter().sum::<i64>().rem_euclid(3)) as u32).collect()).unwrap();
        for k in -4..5 {
            assert_eq!(height_cocycle(&x, &[k, k]).unwrap(), 2 * k);
        }
        assert_eq!(height_cocycle(&x, &[0, 0]).unwrap(), 0);
        assert_eq!(torus_slopes(&x).unwrap(), vec![3, 3]);
    }

    #[test]
    fn gluing() {
        let x = slope(2, 2);
        let (y, z) = glue(&x, 0).unwrap();
        assert_eq!(y, x);
        assert!(increments_along_last_axis(&z));
        let bent = Grid::centered(2, 2, |c| (c[0].abs() + c[1]).rem_euclid(3));
        assert!(is_proper(&bent));
        let (y, z) = glue(&bent, 1).unwrap();
        assert!(is_proper(&y) && is_proper(&z) && increments_along_last_axis(&z));
        let slab = Grid::from_fn(vec![5, 5, 7], vec![-2, -2, -3], |c| (c[0].abs() + (c[1] - 1).abs() - c[2]).rem_euclid(3));
        let (y, _) = glue(&slab, 0).unwrap();
        assert!(is_proper(&slab) && is_proper(&y));
        assert!(glue(&x, 7).is_err());
    }

    #[test]
    fn max_slope() {
        let l = Limits::default();
        assert_eq!(max_slope_points(&Sublattice::scaled(2, 3).unwrap(), &l).unwrap().len(), 3);
        assert_eq!(max_slope_points(&Sublattice::scaled(1, 3).unwrap(), &l).unwrap().len(), 3);
        let skew = Sublattice::from_hnf(vec![vec![3, 1], vec![0, 3]]).unwrap();
        assert!(max_slope_points(&skew, &l).is_err());
        let ok = Sublattice::from_generators(2, &[vec![1, 2], vec![3, 0]]).unwrap();
        assert_eq!(max_slope_points(&ok, &l).unwrap().len(), 3);
    }

    #[test]
    fn extension() {
        let l = Limits::default();
        let s = slope(2, 1);
        let e = periodic_extension(&s, None, &l).unwrap();
        assert!(is_proper_torus(&e.torus) && agrees(&e.torus, &s));
        let e6 = periodic_extension(&s, Some(6), &l).unwrap();
        assert!(agrees(&e6.torus, &s));
        let e3 = periodic_extension(&s, Some(3), &l).unwrap();
        assert_eq!(e3.method, ExtensionMethod::Search);
        assert!(agrees(&e3.torus, &s));
    }

    #[test]
    fn symmetries() {
        let l = Limits::default();
        assert_eq!(aut_slope_sign(&Symmetry::named("identity", vec![0, 0]).unwrap(), 2, &l).unwrap(), 1);
        assert_eq!(aut_slope_sign(&Symmetry::named("neg", vec![1, 0]).unwrap(), 2, &l).unwrap(), -1);
        assert_eq!(aut_slope_sign(&Symmetry::named("rot1", vec![0, 2]).unwrap(), 2, &l).unwrap(), 1);
        assert!(Symmetry::new([0, 0, 1], vec![0]).is_err());
    }

    #[test]
    fn grid_text_roundtrip() {
        let g = slope(2, 1);
        let p = Grid::parse(&g.to_text(), Some(g.origin.clone())).unwrap();
        assert_eq!(p, g);
        let g3 = slope(3, 1);
        assert_eq!(Grid::parse(&g3.to_text(), Some(g3.origin.clone())).unwrap(), g3);
    }
}
