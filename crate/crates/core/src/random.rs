//! Seeded random Lie elements, words and group-like series.
//!
//! Lie elements are sparse combinations of Lyndon basis elements with small
//! nonzero integer coordinates, so every draw is reproducible from the seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::Result;
use crate::group::GroupSpec;
use crate::poly::XPoly;
use crate::rational::Rational;
use crate::word::XWord;
use crate::xalg::{exp_concat, lyndon_basis};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct LieSampler {
    g: GroupSpec,
    bases: Vec<Vec<XPoly>>,
}

impl LieSampler {
    /// Precomputes Lyndon bases in degrees `1..=max_degree`.
    pub fn new(g: &GroupSpec, max_degree: usize) -> Result<Self> {
        let mut bases = vec![Vec::new()];
        for n in 1..=max_degree {
            bases.push(lyndon_basis(n, g)?.into_iter().map(|b| b.poly).collect());
        }
        Ok(LieSampler { g: g.clone(), bases })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.g
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &[XPoly] {
        &self.bases[n]
    }

    /// A nonzero Lie element of degree exactly `n` with at most three basis terms.
    pub fn homogeneous(&self, rng: &mut SeededRng, n: usize) -> XPoly {
        let basis = &self.bases[n];
        loop {
            let mut out = XPoly::zero();
            for _ in 0..rng.gen_range(1..=3usize) {
                let b = basis.choose(rng).expect("nonempty basis");
                out.add_scaled(b, &small_nonzero(rng));
            }
            if !out.is_zero() {
                return out;
            }
        }
    }

    /// A nonzero Lie element with components in a random nonempty set of degrees ≤ `max`.
    pub fn mixed(&self, rng: &mut SeededRng, max: usize) -> XPoly {
        let max = max.min(self.max_degree());
        loop {
            let mut out = XPoly::zero();
            for n in 1..=max {
                if rng.gen_bool(0.5) {
                    out = &out + &self.homogeneous(rng, n);
                }
            }
            if !out.is_zero() {
                return out;
            }
        }
    }

    /// exp of a mixed Lie element, modulo degree > `trunc`.
    pub fn group_like(&self, rng: &mut SeededRng, trunc: usize) -> XPoly {
        let psi = self.mixed(rng, trunc);
        exp_concat(&psi, trunc).expect("zero constant term")
    }
}

/// A coefficient in {−2, −1, 1, 2}.
pub fn small_nonzero(rng: &mut SeededRng) -> Rational {
    let v = [-2, -1, 1, 2][rng.gen_range(0..4)];
    Rational::from_int(v)
}

/// A small rational with numerator in −3..=3 and denominator in 1..=3.
pub fn small_rational(rng: &mut SeededRng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

/// A random word of length `len` over the alphabet of `g`.
pub fn random_word(rng: &mut SeededRng, g: &GroupSpec, len: usize) -> XWord {
    let k = g.order() as u8 + 1;
    XWord((0..len).map(|_| rng.gen_range(0..k)).collect())
}

/// A sum of up to four random words of length ≤ `max_len`.
pub fn random_poly(rng: &mut SeededRng, g: &GroupSpec, max_len: usize) -> XPoly {
    let mut out = XPoly::zero();
    for _ in 0..rng.gen_range(1..=4usize) {
        let len = rng.gen_range(0..=max_len);
        out.add_term(random_word(rng, g, len), small_nonzero(rng));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xalg::is_lie_element;

    #[test]
    fn draws_are_lie_and_reproducible() {
        let g = GroupSpec::cyclic(2).unwrap();
        let s = LieSampler::new(&g, 4).unwrap();
        let (mut a, mut b) = (seeded(9), seeded(9));
        for _ in 0..10 {
            let x = s.mixed(&mut a, 4);
            assert!(is_lie_element(&x).unwrap());
            assert_eq!(x, s.mixed(&mut b, 4));
        }
        let h = s.homogeneous(&mut a, 3);
        assert!(h.is_homogeneous() && h.min_degree() == Some(3));
    }
}
