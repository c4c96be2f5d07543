//! ℚ⟨Y⟩ and the maps between ℚ⟨X⟩ and ℚ⟨Y⟩.

use crate::error::{AlgebraError, Result};
use crate::group::GroupSpec;
use crate::poly::{XPoly, YPoly, YTensor2};
use crate::rational::Rational;
use crate::word::{xg, Monomial, XWord, YLetter, YWord, X0};
use crate::xalg::exp_series;

/// y_{n,σ} ↦ x₀^{n−1}x_σ on a word.
pub fn embed_word(w: &YWord) -> XWord {
    let mut out = XWord::empty();
    for l in w.letters() {
        for _ in 1..l.n {
            out.0.push(X0);
        }
        out.0.push(xg(l.g));
    }
    out
}

pub fn embed_y(u: &YPoly) -> XPoly {
    XPoly::from_terms(u.iter().map(|(w, c)| (embed_word(w), c.clone())))
}

/// Reads a word not ending in x₀ as a Y word; `None` if it ends in x₀.
pub fn y_word_of(w: &XWord) -> Option<YWord> {
    if w.ends_with_x0() {
        return None;
    }
    let mut out = YWord::empty();
    let mut run = 1u8;
    for &c in w.letters() {
        if c == X0 {
            run += 1;
        } else {
            out.0.push(YLetter::new(run, c - 1));
            run = 1;
        }
    }
    Some(out)
}

/// πY: kills words ending in x₀.
pub fn pi_y(f: &XPoly) -> YPoly {
    let mut out = YPoly::zero();
    for (w, c) in f.iter() {
        if let Some(y) = y_word_of(w) {
            out.add_term(y, c.clone());
        }
    }
    out
}

fn y11_power(n: usize) -> YWord {
    YWord(std::iter::repeat_n(YLetter::new(1, 0), n).collect())
}

/// x₀^{n−1}x₁ ↦ ((−1)^{n−1}/n)·y_{1,1}ⁿ, everything else ↦ 0.
pub fn corr(f: &XPoly) -> YPoly {
    let mut out = YPoly::zero();
    for (w, c) in f.iter() {
        if let Some(n) = x0_power_x1(w) {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out.add_term(y11_power(n), c * &Rational::new(sign, n as i64));
        }
    }
    out
}

/// `Some(n)` iff `w = x₀^{n−1}x₁` with x₁ the identity letter.
pub fn x0_power_x1(w: &XWord) -> Option<usize> {
    let l = w.letters();
    match l.split_last() {
        Some((&last, init)) if last == xg(0) && init.iter().all(|&c| c == X0) => Some(l.len()),
        _ => None,
    }
}

/// The word x₀^{n−1}x₁.
pub fn x0_power_x1_word(n: usize) -> XWord {
    let mut w = XWord(std::iter::repeat_n(X0, n - 1).collect());
    w.0.push(xg(0));
    w
}

pub fn q_word(g: &GroupSpec, w: &YWord) -> YWord {
    let mut prev = 0u8;
    YWord(
        w.letters()
            .iter()
            .map(|l| {
                let out = YLetter::new(l.n, g.mul(l.g, g.inv(prev)));
                prev = l.g;
                out
            })
            .collect(),
    )
}

pub fn p_word(g: &GroupSpec, w: &YWord) -> YWord {
    let mut acc = 0u8;
    YWord(
        w.letters()
            .iter()
            .map(|l| {
                acc = g.mul(acc, l.g);
                YLetter::new(l.n, acc)
            })
            .collect(),
    )
}

/// q: the i-th group label becomes σᵢσᵢ₋₁⁻¹.
pub fn q_twist(g: &GroupSpec, u: &YPoly) -> YPoly {
    YPoly::from_terms(u.iter().map(|(w, c)| (q_word(g, w), c.clone())))
}

/// p: the i-th group label becomes σ₁⋯σᵢ. Inverse to q.
pub fn p_twist(g: &GroupSpec, u: &YPoly) -> YPoly {
    YPoly::from_terms(u.iter().map(|(w, c)| (p_word(g, w), c.clone())))
}

/// Group letters become running products; x₀ untouched.
pub fn p_tilde(g: &GroupSpec, f: &XPoly) -> XPoly {
    XPoly::from_terms(f.iter().map(|(w, c)| {
        let mut acc = 0u8;
        let img = XWord(
            w.letters()
                .iter()
                .map(|&l| {
                    if l == X0 {
                        X0
                    } else {
                        acc = g.mul(acc, l - 1);
                        xg(acc)
                    }
                })
                .collect(),
        );
        (img, c.clone())
    }))
}

/// The derivation with ∂₀(x₀) = 1 and ∂₀(x_σ) = 0.
pub fn partial0(f: &XPoly) -> XPoly {
    let mut out = XPoly::zero();
    for (w, c) in f.iter() {
        let l = w.letters();
        for (i, &ch) in l.iter().enumerate() {
            if ch == X0 {
                let mut v = XWord::empty();
                v.0.extend_from_slice(&l[..i]);
                v.0.extend_from_slice(&l[i + 1..]);
                out.add_term(v, c.clone());
            }
        }
    }
    out
}

/// Σ_i ((−1)^i/i!)·∂₀^i(f)·x₀^i.
pub fn sec_tilde(f: &XPoly) -> XPoly {
    let mut out = f.clone();
    let mut d = f.clone();
    let mut i = 0u32;
    loop {
        d = partial0(&d);
        i += 1;
        if d.is_zero() {
            break;
        }
        let tail = XWord(std::iter::repeat_n(X0, i as usize).collect());
        let sign = if i.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let coeff = &sign * &Rational::inv_factorial(i);
        for (w, c) in d.iter() {
            out.add_term(w.concat(&tail), c * &coeff);
        }
    }
    out
}

/// sec = s̃ec ∘ embed; a section of πY landing in Ker ∂₀.
pub fn sec(u: &YPoly) -> XPoly {
    sec_tilde(&embed_y(u))
}

/// ψ* = q(πY(ψ)) + corr(ψ).
pub fn star_additive(g: &GroupSpec, psi: &XPoly) -> YPoly {
    &q_twist(g, &pi_y(psi)) + &corr(psi)
}

/// Calls `emit(left, right)` for every term of Δ*(w) (all coefficients are 1)
/// whose left factor has at most `max_left_depth` letters.
pub fn harmonic_word_terms(
    g: &GroupSpec,
    w: &YWord,
    max_left_depth: usize,
    emit: &mut impl FnMut(&YWord, &YWord),
) {
    let mut l = YWord::empty();
    let mut r = YWord::empty();
    rec(g, w.letters(), max_left_depth, &mut l, &mut r, emit);

    fn rec(
        g: &GroupSpec,
        rest: &[YLetter],
        budget: usize,
        l: &mut YWord,
        r: &mut YWord,
        emit: &mut impl FnMut(&YWord, &YWord),
    ) {
        let Some((&y, tail)) = rest.split_first() else {
            emit(l, r);
            return;
        };
        r.0.push(y);
        rec(g, tail, budget, l, r, emit);
        r.0.pop();
        if budget == 0 {
            return;
        }
        l.0.push(y);
        rec(g, tail, budget - 1, l, r, emit);
        l.0.pop();
        for n1 in 1..y.n {
            for s1 in g.elements() {
                let s2 = g.mul(g.inv(s1), y.g);
                l.0.push(YLetter::new(n1, s1));
                r.0.push(YLetter::new(y.n - n1, s2));
                rec(g, tail, budget - 1, l, r, emit);
                r.0.pop();
                l.0.pop();
            }
        }
    }
}

/// Δ* restricted to terms whose left factor has at most `max_left_depth` letters.
pub fn harmonic_coproduct_filtered(g: &GroupSpec, u: &YPoly, max_left_depth: usize) -> YTensor2 {
    let mut out = YTensor2::zero();
    for (w, c) in u.iter() {
        harmonic_word_terms(g, w, max_left_depth, &mut |l, r| out.add_term((l.clone(), r.clone()), c.clone()));
    }
    out
}

/// The harmonic coproduct Δ*.
pub fn harmonic_coproduct(g: &GroupSpec, u: &YPoly) -> YTensor2 {
    harmonic_coproduct_filtered(g, u, usize::MAX)
}

/// Δ*(u) − u⊗1 − 1⊗u.
pub fn primitivity_defect(g: &GroupSpec, u: &YPoly) -> YTensor2 {
    let mut d = harmonic_coproduct(g, u);
    for (w, c) in u.iter() {
        d.add_term((w.clone(), YWord::empty()), -c);
        d.add_term((YWord::empty(), w.clone()), -c);
    }
    d
}

pub fn is_delta_star_primitive(g: &GroupSpec, u: &YPoly) -> Result<bool> {
    let c = u.constant_term();
    if !c.is_zero() {
        return Err(AlgebraError::ConstantTerm { expected: "0".into(), got: c.to_string() });
    }
    Ok(primitivity_defect(g, u).is_zero())
}

/// G_⋆ = exp(Σ_{n≥2} ((−1)^{n−1}/n)(πY(G)|y_{n,1})·y_{1,1}ⁿ)·q(πY(G)), modulo degree > `trunc`.
pub fn star_multiplicative(g: &GroupSpec, series: &XPoly, trunc: usize) -> Result<YPoly> {
    let c = series.constant_term();
    if !c.is_one() {
        return Err(AlgebraError::ConstantTerm { expected: "1".into(), got: c.to_string() });
    }
    let piy = pi_y(&series.truncate(trunc));
    let mut exponent = YPoly::zero();
    for n in 2..=trunc {
        let coef = piy.coeff(&YWord::from_letters(&[YLetter::new(n as u8, 0)]));
        if !coef.is_zero() {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            exponent.add_term(y11_power(n), &coef * &Rational::new(sign, n as i64));
        }
    }
    let e = exp_series(&exponent, trunc)?;
    Ok(e.mul_trunc(&q_twist(g, &piy), trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(c: u8) -> XPoly {
        XPoly::letter(c)
    }
    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }
    fn yw(l: &[(u8, u8)]) -> YWord {
        YWord(l.iter().map(|&(n, g)| YLetter::new(n, g)).collect())
    }
    fn yp(terms: &[(&[(u8, u8)], Rational)]) -> YPoly {
        YPoly::from_terms(terms.iter().map(|(w, c)| (yw(w), c.clone())))
    }

    #[test]
    fn embedding_and_projection() {
        let w = yw(&[(1, 1), (2, 2)]);
        assert_eq!(embed_word(&w), XWord::from_codes(&[xg(1), X0, xg(2)]));
        assert_eq!(embed_y(&YPoly::one()), XPoly::one());
        assert_eq!(pi_y(&XPoly::word(XWord::from_codes(&[X0, xg(0)]))), yp(&[(&[(2, 0)], r(1, 1))]));
        assert!(pi_y(&XPoly::word(XWord::from_codes(&[xg(0), X0]))).is_zero());
        assert_eq!(pi_y(&XPoly::one()), YPoly::one());
    }

    #[test]
    fn corrector() {
        assert_eq!(corr(&x(xg(0))), yp(&[(&[(1, 0)], r(1, 1))]));
        assert_eq!(corr(&XPoly::word(XWord::from_codes(&[X0, xg(0)]))), yp(&[(&[(1, 0), (1, 0)], r(-1, 2))]));
        assert!(corr(&XPoly::one()).is_zero());
        assert!(corr(&x(xg(1))).is_zero());
    }

    #[test]
    fn twists() {
        let g = GroupSpec::cyclic(5).unwrap();
        let w = yp(&[(&[(1, 2), (1, 4)], r(1, 1))]);
        // q(y_{1,σ}y_{1,τ}) = y_{1,σ}y_{1,τσ⁻¹}
        assert_eq!(q_twist(&g, &w), yp(&[(&[(1, 2), (1, 2)], r(1, 1))]));
        let v = yp(&[(&[(3, 2), (1, 4)], r(1, 1))]);
        assert_eq!(p_twist(&g, &v), yp(&[(&[(3, 2), (1, 1)], r(1, 1))]));
        assert_eq!(p_twist(&g, &q_twist(&g, &v)), v);
        assert_eq!(p_twist(&g, &YPoly::one()), YPoly::one());
        let z2 = GroupSpec::cyclic(2).unwrap();
        let mm = XPoly::word(XWord::from_codes(&[xg(1), xg(1)]));
        assert_eq!(p_tilde(&z2, &mm), XPoly::word(XWord::from_codes(&[xg(1), xg(0)])));
    }

    #[test]
    fn sections() {
        assert_eq!(partial0(&x(X0)), XPoly::one());
        assert_eq!(partial0(&XPoly::word(XWord::from_codes(&[X0, xg(0)]))), x(xg(0)));
        assert!(partial0(&x(xg(0))).is_zero());
        assert!(sec_tilde(&x(X0)).is_zero());
        assert_eq!(sec_tilde(&x(xg(0))), x(xg(0)));
        let br = x(X0).commutator(&x(xg(0)));
        assert_eq!(sec(&yp(&[(&[(2, 0)], r(1, 1))])), br);
        assert_eq!(sec(&YPoly::one()), XPoly::one());
    }

    #[test]
    fn star_of_simple_elements() {
        let t = GroupSpec::trivial();
        let br = x(X0).commutator(&x(xg(0)));
        let want = yp(&[(&[(2, 0)], r(1, 1)), (&[(1, 0), (1, 0)], r(-1, 2))]);
        assert_eq!(star_additive(&t, &br), want);
        assert_eq!(star_additive(&t, &x(xg(0))), yp(&[(&[(1, 0)], r(2, 1))]));
    }

    #[test]
    fn coproduct_values() {
        let t = GroupSpec::trivial();
        let y2 = yp(&[(&[(2, 0)], r(1, 1))]);
        let e = YWord::empty();
        let want = YTensor2::from_terms([
            ((yw(&[(2, 0)]), e.clone()), r(1, 1)),
            ((e.clone(), yw(&[(2, 0)])), r(1, 1)),
            ((yw(&[(1, 0)]), yw(&[(1, 0)])), r(1, 1)),
        ]);
        assert_eq!(harmonic_coproduct(&t, &y2), want);
        let psi = star_additive(&t, &x(X0).commutator(&x(xg(0))));
        assert!(is_delta_star_primitive(&t, &psi).unwrap());
        let not = yp(&[(&[(1, 0), (2, 0)], r(1, 1)), (&[(1, 0), (1, 0), (1, 0)], r(-1, 2))]);
        assert!(!is_delta_star_primitive(&t, &not).unwrap());
        let z3 = GroupSpec::cyclic(3).unwrap();
        for a in z3.elements() {
            assert!(is_delta_star_primitive(&z3, &yp(&[(&[(1, a)], r(1, 1))])).unwrap());
        }
    }

    #[test]
    fn filtered_coproduct_is_a_restriction() {
        let g = GroupSpec::cyclic(2).unwrap();
        let u = yp(&[(&[(2, 1), (1, 0), (3, 1)], r(3, 2)), (&[(1, 1), (2, 0)], r(-1, 1))]);
        let full = harmonic_coproduct(&g, &u);
        for k in 0..4 {
            let f = harmonic_coproduct_filtered(&g, &u, k);
            assert_eq!(f, full.filter(|(l, _)| l.depth() <= k));
        }
    }

    #[test]
    fn multiplicative_star() {
        let t = GroupSpec::trivial();
        assert_eq!(star_multiplicative(&t, &XPoly::one(), 4).unwrap(), YPoly::one());
        let e = crate::xalg::exp_concat(&x(X0).scale(&r(3, 1)), 4).unwrap();
        assert_eq!(star_multiplicative(&t, &e, 4).unwrap(), YPoly::one());
        let g = &XPoly::one() + &XPoly::word(XWord::from_codes(&[X0, xg(0)]));
        let y2 = yp(&[(&[(2, 0)], r(1, 1))]);
        let corrector = exp_series(&yp(&[(&[(1, 0), (1, 0)], r(-1, 2))]), 4).unwrap();
        let want = corrector.mul_trunc(&(&YPoly::one() + &y2), 4);
        assert_eq!(star_multiplicative(&t, &g, 4).unwrap(), want);
        assert!(star_multiplicative(&t, &y2_as_x(), 4).is_err());
    }

    fn y2_as_x() -> XPoly {
        XPoly::word(XWord::from_codes(&[X0, xg(0)]))
    }
}
