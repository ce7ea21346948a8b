//! Words in three involutions modelling loops on the once-punctured torus.
//!
//! An ideal triangulation of the once-punctured torus has three arcs and two
//! triangles τ, τ′; a loop is recorded by the arcs it crosses. Letters are the
//! arc labels 1, 2, 3. The arrow lattice of the Markoff quiver is indexed
//! α12, α23, α31, α′12, α′23, α′31.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curves::{ArrowChain, CrossingWord, Step};
use crate::error::{Error, Result};
use crate::surface::{TriangleId, TriangulatedSurface};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct TorusWord(pub Vec<u8>);

impl TorusWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| !(1..=3).contains(*l)) {
            return Err(Error::InvalidWord(format!("letter {l} not in 1..3")));
        }
        Ok(TorusWord(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced() && (self.0.len() < 2 || self.0[0] != self.0[self.0.len() - 1])
    }

    /// Rotation by an even offset.
    pub fn rotate(&self, by: usize) -> Result<Self> {
        if !by.is_multiple_of(2) {
            return Err(Error::InvalidWord("odd rotation".into()));
        }
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = by % v.len();
            v.rotate_left(k);
        }
        Ok(TorusWord(v))
    }

    fn require_even(&self) -> Result<()> {
        if !self.0.len().is_multiple_of(2) {
            return Err(Error::InvalidWord(format!("odd length {}", self.0.len())));
        }
        Ok(())
    }
}

impl fmt::Display for TorusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for TorusWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(|| Error::InvalidWord(format!("bad letter {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        TorusWord::new(letters)
    }
}

/// Cancels adjacent equal letters (each letter is an involution).
pub fn reduce(word: &TorusWord) -> TorusWord {
    let mut out: Vec<u8> = Vec::with_capacity(word.0.len());
    for &l in &word.0 {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    TorusWord(out)
}

/// Reduces, then cancels across the seam using even rotations.
pub fn cyclic_reduce(word: &TorusWord) -> Result<TorusWord> {
    word.require_even()?;
    let mut w = reduce(word).0;
    // A reduced even word with equal ends has length ≥ 4; rotating by two
    // brings the last letter next to the second one.
    while w.len() >= 2 && w[0] == w[w.len() - 1] {
        if w.len() == 2 {
            return Ok(TorusWord(Vec::new()));
        }
        w.rotate_left(2);
        w = reduce(&TorusWord(w)).0;
    }
    Ok(TorusWord(w))
}

/// Integer coefficients on α12, α23, α31, α′12, α′23, α′31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MarkoffChain(pub [i64; 6]);

impl MarkoffChain {
    /// Adds `coeff · α_{kl}` (primed if `primed`), using α_{kl} = −α_{lk}.
    fn add(&mut self, primed: bool, k: u8, l: u8, coeff: i64) {
        let base = if primed { 3 } else { 0 };
        let (idx, sign) = match (k, l) {
            (1, 2) => (0, 1),
            (2, 3) => (1, 1),
            (3, 1) => (2, 1),
            (2, 1) => (0, -1),
            (3, 2) => (1, -1),
            (1, 3) => (2, -1),
            _ => unreachable!("equal letters in a reduced word"),
        };
        self.0[base + idx] += sign * coeff;
    }

    pub fn to_arrow_chain(self) -> ArrowChain {
        ArrowChain(self.0.to_vec())
    }
}

/// A degree-1 map on the Markoff quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkoffDegree([i64; 6]);

impl MarkoffDegree {
    pub fn new(values: [i64; 6]) -> Result<Self> {
        if values[..3].iter().sum::<i64>() != 1 || values[3..].iter().sum::<i64>() != 1 {
            return Err(Error::InvalidParameters("each 3-cycle must have total degree 1".into()));
        }
        Ok(MarkoffDegree(values))
    }

    pub fn values(&self) -> [i64; 6] {
        self.0
    }

    pub fn pair(&self, chain: &MarkoffChain) -> i64 {
        self.0.iter().zip(chain.0).map(|(d, c)| d * c).sum()
    }
}

fn require_loop(word: &TorusWord) -> Result<()> {
    word.require_even()?;
    if !word.is_reduced() {
        return Err(Error::InvalidWord(format!("{word} is not reduced")));
    }
    Ok(())
}

pub fn chain_a(word: &TorusWord) -> Result<MarkoffChain> {
    require_loop(word)?;
    let l = &word.0;
    let mut c = MarkoffChain::default();
    for k in (0..l.len()).step_by(2) {
        c.add(false, l[k], l[k + 1], 1);
        if k + 2 < l.len() {
            c.add(true, l[k + 1], l[k + 2], 1);
        }
    }
    Ok(c)
}

pub fn chain_a_cyc(word: &TorusWord) -> Result<MarkoffChain> {
    require_loop(word)?;
    if !word.is_cyclically_reduced() {
        return Err(Error::InvalidWord(format!("{word} is not cyclically reduced")));
    }
    let mut c = chain_a(word)?;
    if let (Some(&first), Some(&last)) = (word.0.first(), word.0.last()) {
        c.add(true, last, first, 1);
    }
    Ok(c)
}

pub fn degree_word(word: &TorusWord, d: &MarkoffDegree) -> Result<i64> {
    if word.is_empty() {
        return Err(Error::InvalidWord("empty word".into()));
    }
    Ok(d.pair(&chain_a_cyc(word)?))
}

fn letter_vector(l: u8) -> (i64, i64) {
    match l {
        1 => (0, 0),
        2 => (0, 1),
        _ => (1, 1),
    }
}

/// Homology class in the basis a = i2i3, b = i1i2.
pub fn abelianize(word: &TorusWord) -> Result<(i64, i64)> {
    require_loop(word)?;
    let mut lam = 0;
    let mut mu = 0;
    for pair in word.0.chunks(2) {
        let (x, y) = (letter_vector(pair[0]), letter_vector(pair[1]));
        lam += y.0 - x.0;
        mu += y.1 - x.1;
    }
    Ok((lam, mu))
}

/// The cyclically reduced form of (i2i3)^λ (i1i2)^μ.
pub fn normal_form_word(lambda: i64, mu: i64) -> Result<TorusWord> {
    if (lambda, mu) == (0, 0) {
        return Err(Error::InvalidParameters("(0, 0) has no normal-form loop".into()));
    }
    let mut w = Vec::new();
    let mut power = |pair: [u8; 2], k: i64| {
        let p = if k >= 0 { pair } else { [pair[1], pair[0]] };
        for _ in 0..k.unsigned_abs() {
            w.extend_from_slice(&p);
        }
    };
    power([2, 3], lambda);
    power([1, 2], mu);
    cyclic_reduce(&TorusWord(w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    M33,
    M42,
    M51,
    M60,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::M33, Move::M42, Move::M51, Move::M60];

    /// Left-hand pattern in role indices (1 = i1, 2 = i2, 3 = i3).
    fn pattern(self) -> &'static [u8] {
        match self {
            Move::M33 => &[1, 2, 1, 3, 1],
            Move::M42 => &[1, 2, 1, 3, 2, 3],
            Move::M51 => &[1, 2, 1, 3, 2, 1, 2],
            Move::M60 => &[2, 1, 3, 2, 1, 3],
        }
    }

    fn replacement(self) -> &'static [u8] {
        match self {
            Move::M33 => &[1, 3, 1, 2, 1],
            Move::M42 => &[1, 3, 1, 3],
            Move::M51 => &[1, 3, 2],
            Move::M60 => &[],
        }
    }
}

/// Assignment of letters to the roles i1, i2, i3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Roles(pub [u8; 3]);

impl Roles {
    pub fn all() -> [Roles; 6] {
        [
            Roles([1, 2, 3]),
            Roles([1, 3, 2]),
            Roles([2, 1, 3]),
            Roles([2, 3, 1]),
            Roles([3, 1, 2]),
            Roles([3, 2, 1]),
        ]
    }

    fn spell(&self, roles: &[u8]) -> Vec<u8> {
        roles.iter().map(|r| self.0[*r as usize - 1]).collect()
    }
}

/// True if the move's pattern occurs at `position` (for M60, the start of the
/// six-letter core, which must be flanked by i1 on both sides).
pub fn matches_at(word: &TorusWord, mv: Move, roles: Roles, position: usize) -> bool {
    let pat = roles.spell(mv.pattern());
    let w = &word.0;
    if position + pat.len() > w.len() || w[position..position + pat.len()] != pat[..] {
        return false;
    }
    if mv == Move::M60 {
        let i1 = roles.0[0];
        return position >= 1 && position + 6 < w.len() && w[position - 1] == i1 && w[position + 6] == i1;
    }
    true
}

/// Length of the longest v with w = w1 · v · core · v⁻¹ · w2.
fn maximal_v(w: &[u8], core: usize) -> usize {
    let mut t = 0;
    while t < core && core + 6 + t < w.len() && w[core - 1 - t] == w[core + 6 + t] {
        t += 1;
    }
    t
}

/// Rewrites `word` by `mv` at `position` and reduces the result.
pub fn apply_move(word: &TorusWord, mv: Move, roles: Roles, position: usize) -> Result<TorusWord> {
    apply_move_with(word, mv, roles, position, None)
}

/// As [`apply_move`]; for M60 an explicit length of v may be given and must be maximal.
pub fn apply_move_with(
    word: &TorusWord,
    mv: Move,
    roles: Roles,
    position: usize,
    v_len: Option<usize>,
) -> Result<TorusWord> {
    if !word.is_reduced() {
        return Err(Error::InvalidWord(format!("{word} is not reduced")));
    }
    if !matches_at(word, mv, roles, position) {
        return Err(Error::PatternMismatch(format!("{mv:?} does not match {word} at {position}")));
    }
    let w = &word.0;
    let mut out = Vec::with_capacity(w.len());
    if mv == Move::M60 {
        let max = maximal_v(w, position);
        if let Some(k) = v_len {
            if k != max {
                return Err(Error::PatternMismatch(format!("v of length {k} is not maximal ({max})")));
            }
        }
        out.extend_from_slice(&w[..position - max]);
        out.extend_from_slice(&w[position + 6 + max..]);
    } else {
        let n = mv.pattern().len();
        out.extend_from_slice(&w[..position]);
        out.extend(roles.spell(mv.replacement()));
        out.extend_from_slice(&w[position + n..]);
    }
    Ok(reduce(&TorusWord(out)))
}

/// All (roles, position) at which `mv` applies to `word`.
pub fn occurrences(word: &TorusWord, mv: Move) -> Vec<(Roles, usize)> {
    let mut out = Vec::new();
    for roles in Roles::all() {
        for pos in 0..word.len() {
            if matches_at(word, mv, roles, pos) {
                out.push((roles, pos));
            }
        }
    }
    out
}

/// The crossing word of a cyclically reduced loop on the Markoff surface.
///
/// Pairs (l_{2k−1}, l_{2k}) are crossed in τ, pairs (l_{2k}, l_{2k+1}) and the
/// closing pair in τ′.
pub fn to_crossing_word(surface: &TriangulatedSurface, word: &TorusWord) -> Result<CrossingWord> {
    require_loop(word)?;
    if !word.is_cyclically_reduced() {
        return Err(Error::InvalidWord(format!("{word} is not cyclically reduced")));
    }
    let l = &word.0;
    let n = l.len();
    let side = |x: u8| x as usize - 1;
    let steps = (0..n)
        .map(|k| Step {
            triangle: TriangleId(k % 2),
            entry: side(l[k]),
            exit: side(l[(k + 1) % n]),
        })
        .collect();
    CrossingWord::new(surface, steps)
}
