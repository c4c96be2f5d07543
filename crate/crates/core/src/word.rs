//! Words over the X and Y alphabets.
//!
//! X letters are bytes: `0` is x₀ and `1 + g` is x_g for the group index `g`.
//! Y letters pair a weight `n ≥ 1` with a group index.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::hash::Hash;

use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::group::GroupSpec;

/// Monomials of a graded algebra with concatenation product.
pub trait Monomial: Clone + Eq + Hash + Ord {
    fn one() -> Self;
    fn concat(&self, other: &Self) -> Self;
    fn degree(&self) -> usize;
    fn is_one(&self) -> bool;
}

pub const X0: u8 = 0;

#[inline]
pub fn xg(g: u8) -> u8 {
    g + 1
}

/// Public view of an X letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XLetter {
    Zero,
    Group(u8),
}

impl XLetter {
    pub fn code(self) -> u8 {
        match self {
            XLetter::Zero => X0,
            XLetter::Group(g) => xg(g),
        }
    }

    pub fn from_code(c: u8) -> Self {
        if c == X0 {
            XLetter::Zero
        } else {
            XLetter::Group(c - 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct XWord(pub SmallVec<[u8; 16]>);

impl XWord {
    pub fn empty() -> Self {
        XWord(SmallVec::new())
    }

    pub fn from_codes(codes: &[u8]) -> Self {
        XWord(SmallVec::from_slice(codes))
    }

    pub fn letter(c: u8) -> Self {
        XWord(smallvec::smallvec![c])
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

    /// (number of x₀, number of group letters).
    pub fn bidegree(&self) -> (usize, usize) {
        let z = self.0.iter().filter(|&&c| c == X0).count();
        (z, self.0.len() - z)
    }

    pub fn ends_with_x0(&self) -> bool {
        self.0.last() == Some(&X0)
    }

    pub fn render(&self, g: &GroupSpec) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self.0.iter().map(|&c| render_xletter(c, g)).collect();
        parts.join(" ")
    }

    /// Inverse of [`XWord::render`]. Also accepts `xg0` style for every group
    /// letter and `x1` for the identity letter.
    pub fn parse(s: &str, g: &GroupSpec) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(XWord::empty());
        }
        let mut w = XWord::empty();
        for tok in s.split_whitespace() {
            w.0.push(parse_xletter(tok, g)?);
        }
        Ok(w)
    }
}

pub fn render_xletter(c: u8, g: &GroupSpec) -> String {
    match c {
        X0 => "x0".into(),
        1 => "x1".into(),
        _ => format!("xg{}", g.label(c - 1)),
    }
}

pub fn parse_xletter(tok: &str, g: &GroupSpec) -> Result<u8> {
    match tok {
        "x0" => Ok(X0),
        "x1" => Ok(xg(0)),
        _ => match tok.strip_prefix("xg") {
            Some(r) => Ok(xg(g.parse_label(r)?)),
            None => Err(AlgebraError::Parse(format!("unknown X letter {tok:?}"))),
        },
    }
}

impl Ord for XWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for XWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for XWord {
    fn one() -> Self {
        XWord::empty()
    }
    fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        XWord(v)
    }
    fn degree(&self) -> usize {
        self.0.len()
    }
    fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YLetter {
    pub n: u8,
    pub g: u8,
}

impl YLetter {
    pub fn new(n: u8, g: u8) -> Self {
        debug_assert!(n >= 1);
        YLetter { n, g }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct YWord(pub SmallVec<[YLetter; 8]>);

impl YWord {
    pub fn empty() -> Self {
        YWord(SmallVec::new())
    }

    pub fn from_letters(l: &[YLetter]) -> Self {
        YWord(SmallVec::from_slice(l))
    }

    pub fn letters(&self) -> &[YLetter] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn render(&self, g: &GroupSpec) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for l in &self.0 {
            let _ = write!(s, "y({},{})", l.n, g.label(l.g));
        }
        s
    }

    pub fn parse(s: &str, g: &GroupSpec) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraError::Parse(format!("bad Y word {s:?}"));
        if s == "1" || s.is_empty() {
            return Ok(YWord::empty());
        }
        let mut w = YWord::empty();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            rest = rest.strip_prefix("y(").ok_or_else(bad)?;
            let close = rest.find(')').ok_or_else(bad)?;
            let (inner, tail) = rest.split_at(close);
            let (n, gl) = inner.split_once(',').ok_or_else(bad)?;
            let n: u8 = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            w.0.push(YLetter::new(n, g.parse_label(gl)?));
            rest = &tail[1..];
        }
        Ok(w)
    }
}

impl Ord for YWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for YWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for YWord {
    fn one() -> Self {
        YWord::empty()
    }
    fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        YWord(v)
    }
    fn degree(&self) -> usize {
        self.0.iter().map(|l| l.n as usize).sum()
    }
    fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

/// Elementary tensors multiply componentwise.
impl<W: Monomial> Monomial for (W, W) {
    fn one() -> Self {
        (W::one(), W::one())
    }
    fn concat(&self, other: &Self) -> Self {
        (self.0.concat(&other.0), self.1.concat(&other.1))
    }
    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }
    fn is_one(&self) -> bool {
        self.0.is_one() && self.1.is_one()
    }
}

/// All X words of length `n` in canonical order.
pub fn x_words(n: usize, g: &GroupSpec) -> Vec<XWord> {
    let k = g.order() as u8 + 1;
    let mut out = vec![XWord::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * k as usize);
        for w in &out {
            for c in 0..k {
                let mut v = w.clone();
                v.0.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// All Y words of degree exactly `n` in canonical order.
pub fn y_words(n: usize, g: &GroupSpec) -> Vec<YWord> {
    let mut by_deg: Vec<Vec<YWord>> = vec![vec![YWord::empty()]];
    for d in 1..=n {
        let mut cur = Vec::new();
        for first in 1..=d {
            for gi in g.elements() {
                let l = YLetter::new(first as u8, gi);
                for tail in &by_deg[d - first] {
                    let mut w = YWord::empty();
                    w.0.push(l);
                    w.0.extend_from_slice(&tail.0);
                    cur.push(w);
                }
            }
        }
        by_deg.push(cur);
    }
    let mut out = by_deg.pop().unwrap();
    out.sort();
    out
}

/// Number of Y words of degree `n`: |Γ|(|Γ|+1)^{n-1}, saturating.
pub fn y_word_count(n: usize, g: &GroupSpec) -> u128 {
    if n == 0 {
        return 1;
    }
    let k = g.order() as u128;
    (0..n - 1).fold(k, |acc, _| acc.saturating_mul(k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_render_roundtrip() {
        let g = GroupSpec::cyclic(3).unwrap();
        let w = XWord::from_codes(&[0, xg(1), 0, xg(0)]);
        assert_eq!(w.render(&g), "x0 xg1 x0 x1");
        assert_eq!(XWord::parse("x0 xg1 x0 x1", &g).unwrap(), w);
        assert_eq!(XWord::parse("xg0", &g).unwrap(), XWord::letter(xg(0)));
        assert!(XWord::parse("xg3", &g).is_err());
        assert_eq!(w.bidegree(), (2, 2));
    }

    #[test]
    fn y_render_roundtrip() {
        let g = GroupSpec::cyclic(2).unwrap();
        let w = YWord::from_letters(&[YLetter::new(2, 0), YLetter::new(1, 1)]);
        assert_eq!(w.render(&g), "y(2,0)y(1,1)");
        assert_eq!(YWord::parse("y(2,0)y(1,1)", &g).unwrap(), w);
        assert_eq!(w.degree(), 3);
    }

    #[test]
    fn word_counts() {
        let g = GroupSpec::cyclic(2).unwrap();
        assert_eq!(x_words(3, &g).len(), 27);
        for n in 1..6 {
            assert_eq!(y_words(n, &g).len() as u128, y_word_count(n, &g));
        }
        let t = GroupSpec::trivial();
        // compositions of n
        assert_eq!(y_words(5, &t).len(), 16);
    }
}
