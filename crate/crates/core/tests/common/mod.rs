//! Test-only oracles written without the library's coproduct code.
#![allow(dead_code)]

use dshuffle::linalg::rank;
use dshuffle::solver::LieCoordinates;
use dshuffle::word::{y_words, Monomial};
use dshuffle::yalg::{harmonic_coproduct, star_additive};
use dshuffle::{GroupSpec, Rational, YLetter, YPoly, YWord};

/// The quasi-shuffle product with overlap y(a,α)·y(b,β) ↦ y(a+b, αβ), by the
/// first-letter recursion.
pub fn quasi_shuffle(g: &GroupSpec, u: &[YLetter], v: &[YLetter]) -> YPoly {
    if u.is_empty() {
        return YPoly::word(YWord::from_letters(v));
    }
    if v.is_empty() {
        return YPoly::word(YWord::from_letters(u));
    }
    let (a, ur) = (u[0], &u[1..]);
    let (b, vr) = (v[0], &v[1..]);
    let prefix = |l: YLetter, p: YPoly| p.map_linear(|w| YPoly::word(YWord::from_letters(&[l]).concat(w)));
    let mut out = prefix(a, quasi_shuffle(g, ur, v));
    out = &out + &prefix(b, quasi_shuffle(g, u, vr));
    let ab = YLetter::new(a.n + b.n, g.mul(a.g, b.g));
    &out + &prefix(ab, quasi_shuffle(g, ur, vr))
}

/// All Y words of degree 1..=n.
pub fn nonempty_words(n: usize, g: &GroupSpec) -> Vec<YWord> {
    (1..=n).flat_map(|k| y_words(k, g)).collect()
}

/// dim dmr₀[n] for the trivial group, computed as the dimension of
/// {ψ ∈ Lib[n] : (ψ|x₀) = (ψ|x₁) = 0, (ψ*|y₂) = 0 if n = 2, (ψ*|u⋆v) = 0 for all nonempty u, v}.
/// Primitivity is read off the orthogonality to quasi-shuffle products.
pub fn dmr0_dim_by_orthogonality(n: usize) -> usize {
    let g = GroupSpec::trivial();
    let coords = LieCoordinates::new(n, &g).unwrap();
    let dim = coords.dim();
    let lie: Vec<_> = coords.basis.iter().map(|b| b.poly.clone()).collect();
    let stars: Vec<YPoly> = lie.iter().map(|p| star_additive(&g, p)).collect();

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    if n == 1 {
        for code in [0u8, 1] {
            let w = dshuffle::XWord::letter(code);
            rows.push(lie.iter().map(|p| p.coeff(&w)).collect());
        }
    }
    if n == 2 {
        let y2 = YWord::from_letters(&[YLetter::new(2, 0)]);
        rows.push(stars.iter().map(|s| s.coeff(&y2)).collect());
    }
    for k in 1..n {
        for u in y_words(k, &g) {
            for v in y_words(n - k, &g) {
                let prod = quasi_shuffle(&g, u.letters(), v.letters());
                rows.push(
                    stars
                        .iter()
                        .map(|s| prod.iter().map(|(w, c)| c * &s.coeff(w)).sum())
                        .collect(),
                );
            }
        }
    }
    dim - rank(&rows, dim)
}

/// (Δ*(w)|u⊗v) = (u⋆v|w) for every pair of words, empty ones included.
pub fn check_duality(g: &GroupSpec, max: usize) -> Result<usize, String> {
    let mut checked = 0;
    for d in 1..=max {
        let targets = y_words(d, g);
        let coproducts: Vec<_> = targets.iter().map(|w| harmonic_coproduct(g, &YPoly::word(w.clone()))).collect();
        for cp in &coproducts {
            if !(cp.is_homogeneous() && cp.min_degree() == Some(d)) {
                return Err(format!("Δ* is not graded in degree {d}"));
            }
        }
        for k in 0..=d {
            let lefts = if k == 0 { vec![YWord::one()] } else { y_words(k, g) };
            let rights = if k == d { vec![YWord::one()] } else { y_words(d - k, g) };
            for u in &lefts {
                for v in &rights {
                    let prod = quasi_shuffle(g, u.letters(), v.letters());
                    for (w, cp) in targets.iter().zip(&coproducts) {
                        let lhs = cp.coeff(&(u.clone(), v.clone()));
                        let rhs = prod.coeff(w);
                        if lhs != rhs {
                            return Err(format!(
                                "w={} u={} v={}: Δ* gives {lhs}, quasi-shuffle gives {rhs}",
                                w.render(g),
                                u.render(g),
                                v.render(g)
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

