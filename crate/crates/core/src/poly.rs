//! Sparse polynomials with exact rational coefficients over a monomial type.

use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::group::GroupSpec;
use crate::rational::Rational;
use crate::word::{Monomial, XWord, YWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<M: Monomial> {
    terms: FxHashMap<M, Rational>,
}

pub type XPoly = Poly<XWord>;
pub type YPoly = Poly<YWord>;
pub type XTensor2 = Poly<(XWord, XWord)>;
pub type YTensor2 = Poly<(YWord, YWord)>;

impl<M: Monomial> Default for Poly<M> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial> Poly<M> {
    pub fn zero() -> Self {
        Poly { terms: FxHashMap::default() }
    }

    pub fn one() -> Self {
        Self::monomial(M::one(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(M::one(), c)
    }

    pub fn monomial(m: M, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn word(m: M) -> Self {
        Self::monomial(m, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (M, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn with_capacity(n: usize) -> Self {
        Poly { terms: FxHashMap::with_capacity_and_hasher(n, Default::default()) }
    }

    pub fn add_term(&mut self, m: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += &c;
                if v.is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_term_ref(&mut self, m: &M, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(m) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(m);
            }
        } else {
            self.terms.insert(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn coeff(&self, m: &M) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&M::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&M, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(&M, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn component(&self, deg: usize) -> Self {
        self.filter(|m| m.degree() == deg)
    }

    pub fn truncate(&self, max_deg: usize) -> Self {
        self.filter(|m| m.degree() <= max_deg)
    }

    pub fn filter(&self, keep: impl Fn(&M) -> bool) -> Self {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Product keeping only monomials of degree ≤ `max_deg`.
    pub fn mul_trunc(&self, other: &Self, max_deg: usize) -> Self {
        let mut rhs: Vec<(usize, &M, &Rational)> =
            other.terms.iter().map(|(b, cb)| (b.degree(), b, cb)).filter(|t| t.0 <= max_deg).collect();
        rhs.sort_unstable_by_key(|t| t.0);
        let mut out = Self::with_capacity(self.len().saturating_mul(rhs.len()).min(1 << 16));
        for (a, ca) in &self.terms {
            let da = a.degree();
            if da > max_deg {
                continue;
            }
            let room = max_deg - da;
            for &(db, b, cb) in &rhs {
                if db > room {
                    break;
                }
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear(&self, mut f: impl FnMut(&M) -> Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Applies a linear map into another monomial type.
    pub fn map_into<N: Monomial>(&self, mut f: impl FnMut(&M) -> Poly<N>) -> Poly<N> {
        let mut out = Poly::<N>::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    pub fn pow_trunc(&self, e: u32, max_deg: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_trunc(self, max_deg);
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<M: Monomial> Poly<(M, M)> {
    /// `a ⊗ b`.
    pub fn tensor(a: &Poly<M>, b: &Poly<M>) -> Self {
        let mut out = Self::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_term((x.clone(), y.clone()), cx * cy);
            }
        }
        out
    }
}

impl<M: Monomial> Add for &Poly<M> {
    type Output = Poly<M>;
    fn add(self, rhs: &Poly<M>) -> Poly<M> {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term_ref(m, c);
        }
        out
    }
}

impl<M: Monomial> Sub for &Poly<M> {
    type Output = Poly<M>;
    fn sub(self, rhs: &Poly<M>) -> Poly<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<M: Monomial> Neg for &Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<M: Monomial> Mul for &Poly<M> {
    type Output = Poly<M>;
    fn mul(self, rhs: &Poly<M>) -> Poly<M> {
        self.mul_trunc(rhs, usize::MAX)
    }
}

macro_rules! owned_poly_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<M: Monomial> $tr<Poly<M>> for Poly<M> {
            type Output = Poly<M>;
            fn $f(self, rhs: Poly<M>) -> Poly<M> { (&self).$f(&rhs) }
        }
        impl<M: Monomial> $tr<&Poly<M>> for Poly<M> {
            type Output = Poly<M>;
            fn $f(self, rhs: &Poly<M>) -> Poly<M> { (&self).$f(rhs) }
        }
        impl<M: Monomial> $tr<Poly<M>> for &Poly<M> {
            type Output = Poly<M>;
            fn $f(self, rhs: Poly<M>) -> Poly<M> { self.$f(&rhs) }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

impl<M: Monomial> Neg for Poly<M> {
    type Output = Poly<M>;
    fn neg(self) -> Poly<M> {
        -&self
    }
}

/// Word rendering against a group, shared by X, Y and tensor monomials.
pub trait RenderMonomial: Monomial {
    fn render(&self, g: &GroupSpec) -> String;
}

impl RenderMonomial for XWord {
    fn render(&self, g: &GroupSpec) -> String {
        XWord::render(self, g)
    }
}

impl RenderMonomial for YWord {
    fn render(&self, g: &GroupSpec) -> String {
        YWord::render(self, g)
    }
}

impl<W: RenderMonomial> RenderMonomial for (W, W) {
    fn render(&self, g: &GroupSpec) -> String {
        format!("{} ⊗ {}", self.0.render(g), self.1.render(g))
    }
}

impl<M: RenderMonomial> Poly<M> {
    /// `word: coeff, word: coeff` in canonical order, or `0`.
    pub fn to_text(&self, g: &GroupSpec) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.sorted_terms().into_iter().map(|(m, c)| format!("{}: {}", m.render(g), c)).collect();
        parts.join(", ")
    }

    /// JSON object `{word: "num/den"}` with keys in canonical order.
    pub fn to_json(&self, g: &GroupSpec) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (m, c) in self.sorted_terms() {
            map.insert(m.render(g), serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map)
    }
}

impl XPoly {
    pub fn letter(c: u8) -> Self {
        Self::word(XWord::letter(c))
    }

    pub fn from_json(v: &serde_json::Value, g: &GroupSpec) -> crate::error::Result<Self> {
        parse_json_terms(v, |k| XWord::parse(k, g))
    }
}

impl YPoly {
    pub fn from_json(v: &serde_json::Value, g: &GroupSpec) -> crate::error::Result<Self> {
        parse_json_terms(v, |k| YWord::parse(k, g))
    }
}

fn parse_json_terms<M: Monomial>(
    v: &serde_json::Value,
    parse: impl Fn(&str) -> crate::error::Result<M>,
) -> crate::error::Result<Poly<M>> {
    use crate::error::AlgebraError;
    let obj = v.as_object().ok_or_else(|| AlgebraError::Parse("expected a JSON object".into()))?;
    let mut p = Poly::zero();
    for (k, c) in obj {
        let c = c.as_str().ok_or_else(|| AlgebraError::Parse(format!("coefficient of {k} is not a string")))?;
        let c: Rational = c.parse().map_err(|e| AlgebraError::Parse(format!("{e}")))?;
        p.add_term(parse(k)?, c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{xg, X0};

    fn x(c: u8) -> XPoly {
        XPoly::letter(c)
    }

    #[test]
    fn bracket_times_letter() {
        let x1 = xg(0);
        let br = x(X0).commutator(&x(x1));
        let got = &br * &x(x1);
        let want = XPoly::from_terms([
            (XWord::from_codes(&[X0, x1, x1]), Rational::one()),
            (XWord::from_codes(&[x1, X0, x1]), -Rational::one()),
        ]);
        assert_eq!(got, want);
        assert_eq!(&br * &XPoly::one(), br);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &x(X0) - &x(X0);
        assert!(p.is_zero());
        assert_eq!(p.coeff(&XWord::letter(X0)), Rational::zero());
    }

    #[test]
    fn text_and_json() {
        let g = GroupSpec::trivial();
        let p = &x(X0).scale(&Rational::new(-1, 2)) + &x(xg(0));
        assert_eq!(p.to_text(&g), "x0: -1/2, x1: 1");
        let j = p.to_json(&g);
        assert_eq!(j.to_string(), r#"{"x0":"-1/2","x1":"1"}"#);
        assert_eq!(XPoly::from_json(&j, &g).unwrap(), p);
        assert_eq!(XPoly::zero().to_text(&g), "0");
    }
}
