//! Entropy estimates from pattern counts on cubes.
//!
//! Locally admissible patterns on the cube of side `2n+1` are counted with a
//! layer-by-layer transfer along the last axis: the state is the content of
//! the last `w` layers, `w` being the largest pattern extent along that axis.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::spec::{SftSpec, Symbol};
use crate::budget::{Limits, NodeCounter};
use crate::error::{Error, Result};
use crate::numtheory::ln_big;

/// Pattern placements inside a window, each as `(cell, symbol)` lists.
type Placements = Vec<Vec<(usize, Symbol)>>;

struct BoxGeometry {
    side: usize,
    dim: usize,
    layer: usize, // cells per layer = side^(dim-1)
}

impl BoxGeometry {
    fn coords(&self, mut idx: usize, height: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.dim];
        for (a, x) in v.iter_mut().enumerate() {
            let extent = if a + 1 == self.dim { height } else { self.side };
            *x = (idx % extent) as i64;
            idx /= extent;
        }
        v
    }

    fn index(&self, v: &[i64], height: usize) -> Option<usize> {
        let mut idx = 0usize;
        for a in (0..self.dim).rev() {
            let extent = if a + 1 == self.dim { height } else { self.side };
            if v[a] < 0 || v[a] as usize >= extent {
                return None;
            }
            idx = idx * extent + v[a] as usize;
        }
        Some(idx)
    }

    /// Placements fully inside a window of `height` layers that touch its top layer.
    fn placements(&self, spec: &SftSpec, height: usize) -> Placements {
        let total = self.layer * height;
        let mut out = Vec::new();
        for p in spec.forbidden() {
            for t in 0..total {
                let base = self.coords(t, height);
                let mut cells = Vec::with_capacity(p.len());
                let mut top = false;
                let mut inside = true;
                for (v, s) in p.cells() {
                    let w: Vec<i64> = base.iter().zip(v).map(|(a, b)| a + b).collect();
                    match self.index(&w, height) {
                        Some(i) => {
                            top |= w[self.dim - 1] as usize == height - 1;
                            cells.push((i, *s));
                        }
                        None => {
                            inside = false;
                            break;
                        }
                    }
                }
                if inside && top {
                    out.push(cells);
                }
            }
        }
        out
    }
}

fn admissible(window: &[Symbol], placements: &Placements) -> bool {
    placements.iter().all(|pl| !pl.iter().all(|&(i, s)| window[i] == s))
}

/// Layer contents valid on their own, by backtracking over one layer.
fn single_layers(spec: &SftSpec, g: &BoxGeometry, nodes: &NodeCounter) -> Result<Vec<Vec<Symbol>>> {
    // One-layer placements, grouped by the last cell they touch.
    let one = g.placements(spec, 1);
    let mut by_last: Vec<Placements> = vec![Vec::new(); g.layer];
    for pl in one {
        let last = pl.iter().map(|&(i, _)| i).max().unwrap();
        by_last[last].push(pl);
    }
    let a = spec.alphabet_size() as Symbol;
    let mut out = Vec::new();
    let mut cur = vec![0 as Symbol; g.layer];
    fn rec(
        k: usize,
        cur: &mut Vec<Symbol>,
        a: Symbol,
        by_last: &[Placements],
        out: &mut Vec<Vec<Symbol>>,
        nodes: &NodeCounter,
    ) -> Result<()> {
        if k == cur.len() {
            out.push(cur.clone());
            return nodes.charge(1);
        }
        nodes.charge(a as u64)?;
        for s in 0..a {
            cur[k] = s;
            if admissible(cur, &by_last[k]) {
                rec(k + 1, cur, a, by_last, out, nodes)?;
            }
        }
        Ok(())
    }
    rec(0, &mut cur, a, &by_last, &mut out, nodes)?;
    Ok(out)
}

/// Number of locally admissible patterns on the cube `[-n, n]^d`.
pub fn box_pattern_count(x: &SftSpec, n: u64, limits: &Limits) -> Result<BigUint> {
    let side = 2 * n as usize + 1;
    let dim = x.dim();
    let layer = side.checked_pow(dim as u32 - 1).ok_or_else(|| Error::budget("box layer size", limits.max_nodes))?;
    let g = BoxGeometry { side, dim, layer };
    let nodes = NodeCounter::new(limits.max_nodes, "box pattern count");
    let layers = single_layers(x, &g, &nodes)?;
    if layers.is_empty() {
        return Ok(BigUint::zero());
    }
    let w = x
        .forbidden()
        .iter()
        .map(|p| p.extent(dim - 1) as usize)
        .max()
        .unwrap_or(0)
        .min(side - 1);
    if w == 0 {
        return Ok(BigUint::from(layers.len()).pow(side as u32));
    }
    // placements touching the newest layer, for every window height 2..=w+1
    let windows: Vec<Placements> = (0..=w + 1).map(|h| if h >= 2 { g.placements(x, h) } else { Vec::new() }).collect();

    // state: indices of the last min(len, w) layers
    let mut states: HashMap<Vec<usize>, BigUint> = (0..layers.len()).map(|i| (vec![i], BigUint::from(1u32))).collect();
    let mut window = vec![0 as Symbol; g.layer * (w + 1)];
    for _ in 1..side {
        let mut next: HashMap<Vec<usize>, BigUint> = HashMap::new();
        let mut keys: Vec<_> = states.keys().cloned().collect();
        keys.sort();
        nodes.charge((keys.len() * layers.len()) as u64)?;
        for key in keys {
            let count = &states[&key];
            let h = key.len() + 1;
            for (j, l) in key.iter().enumerate() {
                window[j * g.layer..(j + 1) * g.layer].copy_from_slice(&layers[*l]);
            }
            for (li, new_layer) in layers.iter().enumerate() {
                window[(h - 1) * g.layer..h * g.layer].copy_from_slice(new_layer);
                if admissible(&window[..h * g.layer], &windows[h]) {
                    let mut nk = key.clone();
                    nk.push(li);
                    if nk.len() > w {
                        nk.remove(0);
                    }
                    *next.entry(nk).or_insert_with(BigUint::zero) += count;
                }
            }
        }
        states = next;
    }
    Ok(states.values().sum())
}

/// `log |patterns on [-n, n]^d| / (2n+1)^d`.
pub fn entropy_box_estimate(x: &SftSpec, n: u64, limits: &Limits) -> Result<f64> {
    let count = box_pattern_count(x, n, limits)?;
    if count.is_zero() {
        return Ok(0.0);
    }
    let volume = ((2 * n + 1) as f64).powi(x.dim() as i32);
    Ok(ln_big(&count) / volume)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::spec::{chessboard, full_shift, golden_mean};

    #[test]
    fn full_shift_is_exactly_log_n() {
        for d in 1..=2 {
            for n in 0..=2 {
                let e = entropy_box_estimate(&full_shift(2, d).unwrap(), n, &Limits::default()).unwrap();
                assert!((e - 2f64.ln()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_dimensional_window_counts() {
        let c = chessboard(1).unwrap();
        let count = box_pattern_count(&c, 4, &Limits::default()).unwrap();
        assert_eq!(count, BigUint::from(3u32 * 256));
        let e = entropy_box_estimate(&c, 4, &Limits::default()).unwrap();
        assert!((e - (768f64).ln() / 9.0).abs() < 1e-12);
        assert!((e - 0.7382).abs() < 1e-4);
        // golden mean windows of length 2n+1 are Fibonacci numbers
        let g: Vec<BigUint> = (0..4).map(|n| box_pattern_count(&golden_mean(), n, &Limits::default()).unwrap()).collect();
        let want: Vec<BigUint> = [2u32, 5, 13, 34].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(g, want);
    }

    /// Oracle: brute force proper colorings of a small grid.
    #[test]
    fn chessboard_square_matches_brute_force() {
        let side = 3usize;
        let mut n = 0u64;
        for mut code in 0..3u64.pow(9) {
            let v: Vec<u64> = (0..9).map(|_| { let s = code % 3; code /= 3; s }).collect();
            let ok = (0..side).all(|r| (0..side).all(|c| {
                (c + 1 == side || v[r * side + c] != v[r * side + c + 1])
                    && (r + 1 == side || v[r * side + c] != v[(r + 1) * side + c])
            }));
            n += ok as u64;
        }
        assert_eq!(box_pattern_count(&chessboard(2).unwrap(), 1, &Limits::default()).unwrap(), BigUint::from(n));
    }

    #[test]
    fn chessboard_estimates_decrease() {
        let c = chessboard(2).unwrap();
        let e: Vec<f64> = (2..=4).map(|n| entropy_box_estimate(&c, n, &Limits::default()).unwrap()).collect();
        assert!(e[0] >= e[1] && e[1] >= e[2], "{e:?}");
        assert!(e[2] > 0.0);
    }
}
