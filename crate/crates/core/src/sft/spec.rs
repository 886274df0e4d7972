use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Index of a symbol in an alphabet.
pub type Symbol = u32;

/// A finite pattern: a map from integer vectors to symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    cells: Vec<(Vec<i64>, Symbol)>,
}

impl Pattern {
    /// Build a pattern; cells are sorted and must have distinct positions of
    /// equal dimension.
    pub fn new(mut cells: Vec<(Vec<i64>, Symbol)>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::invalid("pattern support must be nonempty"));
        }
        let d = cells[0].0.len();
        if d == 0 || cells.iter().any(|(v, _)| v.len() != d) {
            return Err(Error::invalid("pattern vectors must share a positive dimension"));
        }
        cells.sort();
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("pattern assigns a cell twice"));
        }
        Ok(Pattern { cells })
    }

    pub fn dim(&self) -> usize {
        self.cells[0].0.len()
    }

    pub fn cells(&self) -> &[(Vec<i64>, Symbol)] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// max - min of the support along `axis`.
    pub fn extent(&self, axis: usize) -> i64 {
        let lo = self.cells.iter().map(|(v, _)| v[axis]).min().unwrap_or(0);
        let hi = self.cells.iter().map(|(v, _)| v[axis]).max().unwrap_or(0);
        hi - lo
    }

    /// Largest extent over all axes.
    pub fn diameter(&self) -> i64 {
        (0..self.dim()).map(|a| self.extent(a)).max().unwrap_or(0)
    }

    /// Translate so the componentwise minimum of the support is the origin.
    pub fn normalized(&self) -> Pattern {
        let d = self.dim();
        let mins: Vec<i64> = (0..d)
            .map(|a| self.cells.iter().map(|(v, _)| v[a]).min().unwrap())
            .collect();
        let mut cells: Vec<_> = self
            .cells
            .iter()
            .map(|(v, s)| (v.iter().zip(&mins).map(|(x, m)| x - m).collect(), *s))
            .collect();
        cells.sort();
        Pattern { cells }
    }
}

/// A Z^d shift of finite type: alphabet plus forbidden patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    dim: usize,
    alphabet: Vec<String>,
    forbidden: Vec<Pattern>,
}

impl SftSpec {
    pub fn new(dim: usize, alphabet: Vec<String>, forbidden: Vec<Pattern>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if alphabet.is_empty() {
            return Err(Error::invalid("alphabet must be nonempty"));
        }
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != alphabet.len() {
            return Err(Error::invalid("alphabet symbols must be distinct"));
        }
        for p in &forbidden {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if p.cells().iter().any(|&(_, s)| s as usize >= alphabet.len()) {
                return Err(Error::invalid("pattern uses a symbol outside the alphabet"));
            }
        }
        let forbidden: BTreeSet<Pattern> = forbidden.iter().map(Pattern::normalized).collect();
        Ok(SftSpec { dim, alphabet, forbidden: forbidden.into_iter().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn forbidden(&self) -> &[Pattern] {
        &self.forbidden
    }

    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        self.alphabet.iter().position(|a| a == name).map(|i| i as Symbol)
    }

    /// Largest forbidden-pattern diameter (0 for the full shift).
    pub fn window(&self) -> i64 {
        self.forbidden.iter().map(Pattern::diameter).max().unwrap_or(0)
    }

    /// Parse the text format:
    ///
    /// ```text
    /// dimension 1
    /// alphabet 0 1
    /// (0)=1
    /// (1)=1
    /// ```
    ///
    /// Patterns are separated by blank lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .skip_while(|(_, l)| l.is_empty());
        let (_, dim_line) = lines.next().ok_or_else(|| Error::parse("missing dimension line"))?;
        let dim_tok = dim_line.strip_prefix("dimension").unwrap_or(dim_line).trim();
        let dim: usize = dim_tok
            .parse()
            .map_err(|_| Error::parse(format!("bad dimension line `{dim_line}`")))?;
        let (_, alpha_line) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| Error::parse("missing alphabet line"))?;
        let alphabet: Vec<String> = alpha_line
            .strip_prefix("alphabet")
            .unwrap_or(alpha_line)
            .split_whitespace()
            .map(str::to_string)
            .collect();

        let mut patterns = Vec::new();
        let mut block: Vec<(Vec<i64>, Symbol)> = Vec::new();
        let mut flush = |block: &mut Vec<(Vec<i64>, Symbol)>| -> Result<()> {
            if !block.is_empty() {
                patterns.push(Pattern::new(std::mem::take(block))?);
            }
            Ok(())
        };
        for (lineno, line) in lines {
            if line.is_empty() {
                flush(&mut block)?;
                continue;
            }
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("line {}: expected `(v)=symbol`", lineno + 1)))?;
            let inner = lhs
                .trim()
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::parse(format!("line {}: vector must be parenthesized", lineno + 1)))?;
            let v: Vec<i64> = inner
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(format!("line {}: bad integer vector", lineno + 1)))?;
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            let name = rhs.trim();
            let sym = alphabet
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| Error::parse(format!("line {}: unknown symbol `{name}`", lineno + 1)))?;
            block.push((v, sym as Symbol));
        }
        flush(&mut block)?;
        SftSpec::new(dim, alphabet, patterns)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dimension {}\nalphabet {}\n", self.dim, self.alphabet.join(" "));
        for p in &self.forbidden {
            out.push('\n');
            for (v, s) in p.cells() {
                let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "({})={}", coords.join(","), self.alphabet[*s as usize]);
            }
        }
        out
    }
}

fn numeric_alphabet(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// The full shift on `n` symbols over Z^d.
pub fn full_shift(n: usize, d: usize) -> Result<SftSpec> {
    if n == 0 {
        return Err(Error::invalid("full shift needs at least one symbol"));
    }
    SftSpec::new(d, numeric_alphabet(n), Vec::new())
}

/// Binary sequences without two adjacent 1s.
pub fn golden_mean() -> SftSpec {
    let p = Pattern::new(vec![(vec![0], 1), (vec![1], 1)]).expect("static pattern");
    SftSpec::new(1, numeric_alphabet(2), vec![p]).expect("static spec")
}

/// Proper 3-colorings of the Z^d grid graph.
pub fn chessboard(d: usize) -> Result<SftSpec> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let mut pats = Vec::new();
    for axis in 0..d {
        let mut e = vec![0i64; d];
        e[axis] = 1;
        for c in 0..3 {
            pats.push(Pattern::new(vec![(vec![0; d], c), (e.clone(), c)])?);
        }
    }
    SftSpec::new(d, numeric_alphabet(3), pats)
}

/// Upper bound on the number of lifted patterns `product_sft` will create.
pub const MAX_PRODUCT_PATTERNS: usize = 2_000_000;

/// Direct product: alphabet A_X × A_Y, each factor's constraints lifted to
/// its own coordinate. Product symbol `(a,b)` has index `a * |A_Y| + b`.
pub fn product_sft(x: &SftSpec, y: &SftSpec) -> Result<SftSpec> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch { expected: x.dim, found: y.dim });
    }
    let nx = x.alphabet_size();
    let ny = y.alphabet_size();
    let alphabet: Vec<String> = x
        .alphabet
        .iter()
        .flat_map(|a| y.alphabet.iter().map(move |b| format!("({a},{b})")))
        .collect();

    let mut out = Vec::new();
    let mut lift = |p: &Pattern, first: bool| -> Result<()> {
        let other = if first { ny } else { nx };
        let k = p.len() as u32;
        let total = (other as u128).pow(k);
        if total + out.len() as u128 > MAX_PRODUCT_PATTERNS as u128 {
            return Err(Error::budget("product pattern expansion", MAX_PRODUCT_PATTERNS as u64));
        }
        for mut code in 0..total as u64 {
            let cells = p
                .cells()
                .iter()
                .map(|(v, s)| {
                    let t = (code % other as u64) as u32;
                    code /= other as u64;
                    let sym = if first { s * ny as u32 + t } else { t * ny as u32 + s };
                    (v.clone(), sym)
                })
                .collect();
            out.push(Pattern::new(cells)?);
        }
        Ok(())
    };
    for p in &x.forbidden {
        lift(p, true)?;
    }
    for p in &y.forbidden {
        lift(p, false)?;
    }
    SftSpec::new(x.dim, alphabet, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let g = golden_mean();
        let text = g.to_text();
        assert_eq!(SftSpec::parse(&text).unwrap(), g);
        let c = chessboard(2).unwrap();
        assert_eq!(SftSpec::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn parse_accepts_bare_dimension_and_comments() {
        let text = "# golden mean\n2\n0 1\n(0,0)=1\n(1,0)=1\n\n(0,0)=1\n(0,1)=1\n";
        let s = SftSpec::parse(text).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.forbidden().len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(SftSpec::parse(""), Err(Error::Parse(_))));
        assert!(SftSpec::parse("1\n0 1\n(0)=2\n").is_err());
        assert!(matches!(
            SftSpec::parse("2\n0 1\n(0)=1\n"),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(SftSpec::parse("1\n0 1\n0=1\n").is_err());
    }

    #[test]
    fn product_shapes() {
        let p = product_sft(&full_shift(2, 1).unwrap(), &full_shift(3, 1).unwrap()).unwrap();
        assert_eq!(p.alphabet_size(), 6);
        assert!(p.forbidden().is_empty());
        let q = product_sft(&golden_mean(), &full_shift(3, 1).unwrap()).unwrap();
        assert_eq!(q.forbidden().len(), 9);
        assert!(matches!(
            product_sft(&golden_mean(), &chessboard(2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn chessboard_patterns() {
        let c = chessboard(3).unwrap();
        assert_eq!(c.forbidden().len(), 9);
        assert_eq!(c.window(), 1);
        assert_eq!(full_shift(4, 2).unwrap().window(), 0);
    }
}
