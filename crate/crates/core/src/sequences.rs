//! Binary words of length M+N, their admissibility, the statistic lambda,
//! cyclic periodicity, and the translation to marker words over {0, •, ×}.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid character {0:?} in word")]
    InvalidChar(char),
    #[error("invalid run-length syntax: {0}")]
    BadRunLength(String),
    #[error("word length {got} does not match grid length {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("word is not admissible")]
    Inadmissible,
    #[error("marker pair is not admissible (not the image of an admissible binary word)")]
    InadmissiblePair,
}

/// The pair of periods (M, N) with its derived constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    m: usize,
    n: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Grid {
    /// New grid with periods `M, N >= 1`.
    pub fn new(m: usize, n: usize) -> Self {
        assert!(m >= 1 && n >= 1, "grid periods must be positive");
        Grid { m, n }
    }

    /// The period M.
    pub fn m(&self) -> usize {
        self.m
    }

    /// The period N.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Word length M + N.
    #[allow(clippy::len_without_is_empty)] // never empty: M, N >= 1
    pub fn len(&self) -> usize {
        self.m + self.n
    }

    /// d = gcd(M, N).
    pub fn d(&self) -> usize {
        gcd(self.m, self.n)
    }

    /// The coprime pair (m, n) = (M/d, N/d).
    pub fn coprime(&self) -> (usize, usize) {
        let d = self.d();
        (self.m / d, self.n / d)
    }

    /// delta(N, M) = (NM - N - M + gcd(M, N)) / 2, the maximum of dinv.
    pub fn delta(&self) -> i64 {
        let (m, n) = (self.m as i64, self.n as i64);
        (n * m - n - m + self.d() as i64) / 2
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// A binary word u in {0,1}^{M+N}, indexed from 0, carrying its grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryWord {
    grid: Grid,
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn new(grid: Grid, bits: Vec<bool>) -> Result<Self, WordError> {
        if bits.len() != grid.len() {
            return Err(WordError::LengthMismatch {
                got: bits.len(),
                want: grid.len(),
            });
        }
        Ok(BinaryWord { grid, bits })
    }

    /// Parse a literal word like `010101` or a run-length form like
    /// `0^4 1^2` (whitespace optional).
    pub fn parse(grid: Grid, s: &str) -> Result<Self, WordError> {
        let bits = parse_run_length(s, |c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })?;
        BinaryWord::new(grid, bits)
    }

    pub fn zeros(grid: Grid) -> Self {
        BinaryWord {
            bits: vec![false; grid.len()],
            grid,
        }
    }

    pub fn ones(grid: Grid) -> Self {
        BinaryWord {
            bits: vec![true; grid.len()],
            grid,
        }
    }

    /// `0^{M+N-k} 1^k`.
    pub fn zeros_then_ones(grid: Grid, k: usize) -> Self {
        assert!(k <= grid.len());
        let mut bits = vec![false; grid.len() - k];
        bits.extend(std::iter::repeat_n(true, k));
        BinaryWord { grid, bits }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    #[allow(clippy::len_without_is_empty)] // length is always M + N >= 2
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.iter().filter(|&&b| !b).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// Admissibility: u is the restriction of some (M,N)-invariant subset.
    ///
    /// Checked by local dominance: for every index i in range,
    /// `u_i <= u_{i+N}` and `u_i <= u_{i+M}`.  Necessity follows from the
    /// closure of invariant subsets under +N and +M; sufficiency by
    /// extending the word with all integers >= M+N.
    pub fn is_admissible(&self) -> bool {
        let len = self.len();
        for step in [self.grid.n, self.grid.m] {
            for i in 0..len.saturating_sub(step) {
                if self.bits[i] && !self.bits[i + step] {
                    return false;
                }
            }
        }
        true
    }

    /// lambda(u) = sum_{i=0}^{M-1} (u_{i+N} - u_i); equals the count of
    /// N-generators in [N, N+M-1].  The M-form and N-form always agree.
    pub fn lambda(&self) -> i64 {
        let (m, n) = (self.grid.m, self.grid.n);
        let form = |window: usize, step: usize| -> i64 {
            (0..window)
                .map(|i| self.bits[i + step] as i64 - self.bits[i] as i64)
                .sum()
        };
        let by_n = form(m, n);
        let by_m = form(n, m);
        assert_eq!(by_n, by_m, "lambda M-form and N-form must agree");
        by_n
    }

    /// Smallest p >= 1 dividing M+N such that the periodic extension of u
    /// has period p.
    pub fn minimal_period(&self) -> usize {
        let len = self.len();
        for p in 1..=len {
            if !len.is_multiple_of(p) {
                continue;
            }
            if (0..len).all(|i| self.bits[i] == self.bits[(i + p) % len]) {
                return p;
            }
        }
        unreachable!("every word is (M+N)-periodic");
    }

    /// Cyclic rotation (u_1, ..., u_{M+N-1}, u_0).
    pub fn rotate(&self) -> Self {
        self.rotate_set_last(self.bits[0])
    }

    /// Drop u_0, append the given last bit: (u_1, ..., u_{M+N-1}, b).
    pub fn rotate_set_last(&self, b: bool) -> Self {
        let mut bits = Vec::with_capacity(self.bits.len());
        bits.extend_from_slice(&self.bits[1..]);
        bits.push(b);
        BinaryWord {
            grid: self.grid,
            bits,
        }
    }

    /// The marker pair (v, w) encoding u: `v_i` records position N+i
    /// against position i (gap / old element / new N-generator), `w_i`
    /// records position M+i against position i.
    pub fn to_markers(&self) -> Result<(MarkerWord, MarkerWord), WordError> {
        if !self.is_admissible() {
            return Err(WordError::Inadmissible);
        }
        let (m, n) = (self.grid.m, self.grid.n);
        let code = |hi: bool, lo: bool| -> Marker {
            if !hi {
                Marker::Gap
            } else if lo {
                Marker::Bullet
            } else {
                Marker::Cross
            }
        };
        let v: Vec<Marker> = (0..m)
            .map(|i| code(self.bits[n + i], self.bits[i]))
            .collect();
        let w: Vec<Marker> = (0..n)
            .map(|i| code(self.bits[m + i], self.bits[i]))
            .collect();
        let v = MarkerWord::new(v);
        let w = MarkerWord::new(w);
        debug_assert_eq!(v.count_crosses() as i64, self.lambda());
        debug_assert_eq!(w.count_crosses(), v.count_crosses());
        Ok((v, w))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One symbol of a marker word: gap `0`, bullet `•` (printed `b`),
/// or cross `×` (printed `x`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    Gap,
    Bullet,
    Cross,
}

/// A word over {0, •, ×}.  Printed with the alphabet `0bx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MarkerWord {
    symbols: Vec<Marker>,
}

impl MarkerWord {
    pub fn new(symbols: Vec<Marker>) -> Self {
        MarkerWord { symbols }
    }

    pub fn empty() -> Self {
        MarkerWord::default()
    }

    /// Parse `0bx` alphabet words, literal or run-length (`0^2x`).
    pub fn parse(s: &str) -> Result<Self, WordError> {
        let symbols = parse_run_length(s, |c| match c {
            '0' => Some(Marker::Gap),
            'b' | '•' => Some(Marker::Bullet),
            'x' | '×' => Some(Marker::Cross),
            _ => None,
        })?;
        Ok(MarkerWord { symbols })
    }

    /// `0^{len-k} x^k`.
    pub fn zeros_then_crosses(len: usize, k: usize) -> Self {
        assert!(k <= len);
        let mut symbols = vec![Marker::Gap; len - k];
        symbols.extend(std::iter::repeat_n(Marker::Cross, k));
        MarkerWord { symbols }
    }

    pub fn all_bullets(len: usize) -> Self {
        MarkerWord {
            symbols: vec![Marker::Bullet; len],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Marker] {
        &self.symbols
    }

    pub fn head(&self) -> Option<Marker> {
        self.symbols.first().copied()
    }

    /// |v| = number of × entries.
    pub fn count_crosses(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == Marker::Cross).count()
    }

    pub fn is_all(&self, s: Marker) -> bool {
        self.symbols.iter().all(|&x| x == s)
    }

    /// Drop the head, append the given symbol.
    pub fn rotate_set_last(&self, s: Marker) -> Self {
        let mut symbols = Vec::with_capacity(self.symbols.len());
        symbols.extend_from_slice(&self.symbols[1..]);
        symbols.push(s);
        MarkerWord { symbols }
    }

    /// Drop the head only (used by the R-recursion relations that shorten
    /// one word).
    pub fn tail(&self) -> Self {
        MarkerWord {
            symbols: self.symbols[1..].to_vec(),
        }
    }

    /// Drop the head, append nothing or a symbol.
    pub fn tail_push(&self, s: Option<Marker>) -> Self {
        let mut symbols = self.symbols[1..].to_vec();
        if let Some(s) = s {
            symbols.push(s);
        }
        MarkerWord { symbols }
    }

    /// phi: forget all bullets, keeping the order of the other symbols.
    pub fn phi(&self) -> MarkerWord {
        MarkerWord {
            symbols: self
                .symbols
                .iter()
                .copied()
                .filter(|&s| s != Marker::Bullet)
                .collect(),
        }
    }
}

impl fmt::Display for MarkerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("∅");
        }
        for &s in &self.symbols {
            f.write_str(match s {
                Marker::Gap => "0",
                Marker::Bullet => "b",
                Marker::Cross => "x",
            })?;
        }
        Ok(())
    }
}

/// Invert the marker encoding: reconstruct the admissible binary word with
/// `b(u) = (v, w)`.  Fails if the pair is not in the image of `to_markers`
/// on admissible words.
pub fn from_markers(v: &MarkerWord, w: &MarkerWord, grid: Grid) -> Result<BinaryWord, WordError> {
    if v.len() != grid.m() || w.len() != grid.n() {
        return Err(WordError::LengthMismatch {
            got: v.len() + w.len(),
            want: grid.len(),
        });
    }
    let bits: Vec<bool> = v
        .symbols()
        .iter()
        .map(|&s| s == Marker::Bullet)
        .chain(w.symbols().iter().map(|&s| s != Marker::Gap))
        .collect();
    let u = BinaryWord::new(grid, bits)?;
    if !u.is_admissible() {
        return Err(WordError::InadmissiblePair);
    }
    let (v2, w2) = u.to_markers()?;
    if &v2 != v || &w2 != w {
        return Err(WordError::InadmissiblePair);
    }
    Ok(u)
}

/// True if (v, w) is the marker encoding of some admissible binary word.
pub fn pair_is_admissible(v: &MarkerWord, w: &MarkerWord, grid: Grid) -> bool {
    from_markers(v, w, grid).is_ok()
}

fn parse_run_length<T: Copy>(
    s: &str,
    sym: impl Fn(char) -> Option<T>,
) -> Result<Vec<T>, WordError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        let Some(v) = sym(c) else {
            return Err(WordError::InvalidChar(c));
        };
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            while let Some(d) = chars.peek().copied() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let count: usize = digits
                .parse()
                .map_err(|_| WordError::BadRunLength(s.to_string()))?;
            out.extend(std::iter::repeat_n(v, count));
        } else {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(m: usize, n: usize) -> Grid {
        Grid::new(m, n)
    }

    fn word(m: usize, n: usize, s: &str) -> BinaryWord {
        BinaryWord::parse(grid(m, n), s).unwrap()
    }

    #[test]
    fn grid_constants() {
        let g = grid(4, 6);
        assert_eq!(g.d(), 2);
        assert_eq!(g.coprime(), (2, 3));
        assert_eq!(g.delta(), 8);
        assert_eq!(grid(2, 2).delta(), 1);
        assert_eq!(grid(3, 3).delta(), 3);
        assert_eq!(grid(1, 1).delta(), 0);
        // 2*delta + N + M = NM + d
        for (m, n) in [(2, 2), (3, 5), (4, 6), (6, 9)] {
            let g = grid(m, n);
            assert_eq!(2 * g.delta() + (m + n) as i64, (m * n + g.d()) as i64);
        }
    }

    #[test]
    fn parsing_forms() {
        assert_eq!(word(4, 6, "0^8 1^2").to_string(), "0000000011");
        assert_eq!(word(4, 6, "0^8 11").to_string(), "0000000011");
        assert_eq!(word(2, 2, "0101").to_string(), "0101");
        assert!(BinaryWord::parse(grid(2, 2), "01012").is_err());
        assert!(BinaryWord::parse(grid(2, 2), "010").is_err());
        assert_eq!(MarkerWord::parse("0bx").unwrap().to_string(), "0bx");
        assert_eq!(MarkerWord::parse("0^2x").unwrap().to_string(), "00x");
    }

    #[test]
    fn admissibility_examples() {
        assert!(word(2, 2, "0101").is_admissible());
        assert!(!word(2, 2, "0100").is_admissible());
        assert!(word(3, 3, "011011").is_admissible());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(word(2, 2, "1011").lambda(), 1);
        assert_eq!(word(2, 2, "1010").lambda(), 0);
        assert_eq!(word(3, 3, "100111").lambda(), 2);
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(word(2, 2, "0101").minimal_period(), 2);
        assert_eq!(word(3, 3, "001001").minimal_period(), 3);
        assert_eq!(word(2, 2, "0001").minimal_period(), 4);
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(word(2, 2, "0001").rotate_set_last(true), word(2, 2, "0011"));
        assert_eq!(word(2, 2, "0010").rotate_set_last(true), word(2, 2, "0101"));
        assert_eq!(word(2, 2, "1011").rotate(), word(2, 2, "0111"));
    }

    #[test]
    fn marker_examples() {
        let (v, w) = word(3, 3, "011011").to_markers().unwrap();
        assert_eq!((v.to_string(), w.to_string()), ("0bb".into(), "0bb".into()));
        let (v, w) = word(3, 3, "001011").to_markers().unwrap();
        assert_eq!((v.to_string(), w.to_string()), ("0xb".into(), "0xb".into()));
        let (v, w) = word(3, 3, "000000").to_markers().unwrap();
        assert_eq!((v.to_string(), w.to_string()), ("000".into(), "000".into()));
        assert!(word(2, 2, "0100").to_markers().is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(MarkerWord::parse("0bb").unwrap().phi().to_string(), "0");
        assert_eq!(MarkerWord::parse("0xb").unwrap().phi().to_string(), "0x");
        assert_eq!(MarkerWord::parse("xxx").unwrap().phi().to_string(), "xxx");
    }

    #[test]
    fn from_markers_inverts_to_markers() {
        for (m, n) in [(2, 2), (3, 3), (2, 3), (1, 4)] {
            let g = grid(m, n);
            for raw in 0..(1u32 << g.len()) {
                let bits: Vec<bool> = (0..g.len()).map(|i| raw >> i & 1 == 1).collect();
                let u = BinaryWord::new(g, bits).unwrap();
                if !u.is_admissible() {
                    continue;
                }
                let (v, w) = u.to_markers().unwrap();
                assert_eq!(from_markers(&v, &w, g).unwrap(), u);
            }
        }
        // inconsistent pair: (x, b) cannot arise from any admissible word
        let v = MarkerWord::parse("x").unwrap();
        let w = MarkerWord::parse("b").unwrap();
        assert!(from_markers(&v, &w, grid(1, 1)).is_err());
    }

    #[test]
    fn to_markers_injective_on_admissible() {
        use std::collections::HashSet;
        for (m, n) in [(2, 2), (3, 3), (3, 4)] {
            let g = grid(m, n);
            let mut seen = HashSet::new();
            for raw in 0..(1u32 << g.len()) {
                let bits: Vec<bool> = (0..g.len()).map(|i| raw >> i & 1 == 1).collect();
                let u = BinaryWord::new(g, bits).unwrap();
                if u.is_admissible() {
                    assert!(seen.insert(u.to_markers().unwrap()));
                }
            }
        }
    }

    #[test]
    fn lambda_zero_iff_period_divides_gcd_small() {
        for (m, n) in [(2, 2), (2, 4), (3, 3), (1, 3)] {
            let g = grid(m, n);
            for raw in 0..(1u32 << g.len()) {
                let bits: Vec<bool> = (0..g.len()).map(|i| raw >> i & 1 == 1).collect();
                let u = BinaryWord::new(g, bits).unwrap();
                if !u.is_admissible() {
                    continue;
                }
                let lz = u.lambda() == 0;
                let pd = g.d().is_multiple_of(u.minimal_period());
                assert_eq!(lz, pd, "word {u} on {g}");
            }
        }
    }
}
