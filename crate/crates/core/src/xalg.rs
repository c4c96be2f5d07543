//! Operations on ℚ⟨X⟩: group action, shuffle coproduct, Lie bases,
//! distribution morphisms and the concatenation exponential.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::group::{GroupElement, GroupMorphism, GroupSpec};
use crate::poly::{XPoly, XTensor2};
use crate::rational::Rational;
use crate::word::{xg, Monomial, XWord, X0};

/// Errors if `f` uses a letter outside the alphabet of `g`.
pub fn check_alphabet(f: &XPoly, g: &GroupSpec) -> Result<()> {
    let max = g.order() as u8;
    for (w, _) in f.iter() {
        if let Some(&c) = w.letters().iter().find(|&&c| c > max) {
            return Err(AlgebraError::GroupMismatch(format!(
                "letter code {c} is outside the alphabet of {g}"
            )));
        }
    }
    Ok(())
}

/// t_σ on a single word, σ given as a group index.
pub fn act_word(g: &GroupSpec, sigma: u8, w: &XWord) -> XWord {
    XWord(w.letters().iter().map(|&c| if c == X0 { X0 } else { xg(g.mul(sigma, c - 1)) }).collect())
}

/// t_σ by index; callers are responsible for alphabet validity.
pub fn act(g: &GroupSpec, sigma: u8, f: &XPoly) -> XPoly {
    if sigma == 0 {
        return f.clone();
    }
    XPoly::from_terms(f.iter().map(|(w, c)| (act_word(g, sigma, w), c.clone())))
}

/// t_σ(f): x₀ ↦ x₀, x_γ ↦ x_{σγ}.
pub fn gamma_act(g: &GroupSpec, sigma: &GroupElement, f: &XPoly) -> Result<XPoly> {
    let s = g.index(sigma)?;
    check_alphabet(f, g)?;
    Ok(act(g, s, f))
}

/// Δ on a word: the sum over all 2ⁿ ways of splitting it into two subsequences.
pub fn delta_word(w: &XWord, out: &mut XTensor2, c: &Rational, skip_trivial: bool) {
    let n = w.len();
    assert!(n < 31, "word too long for the shuffle coproduct");
    let (lo, hi) = if skip_trivial { (1u32, (1u32 << n) - 1) } else { (0, 1u32 << n) };
    for mask in lo..hi {
        let mut l = XWord::empty();
        let mut r = XWord::empty();
        for (i, &c) in w.letters().iter().enumerate() {
            if mask >> i & 1 == 1 {
                l.0.push(c);
            } else {
                r.0.push(c);
            }
        }
        out.add_term((l, r), c.clone());
    }
}

/// The shuffle coproduct, with every letter primitive.
pub fn delta_shuffle(f: &XPoly) -> XTensor2 {
    let mut out = XTensor2::zero();
    for (w, c) in f.iter() {
        delta_word(w, &mut out, c, false);
    }
    out
}

/// Friedrichs' criterion: f is Lie iff Δf = f⊗1 + 1⊗f.
pub fn is_lie_element(f: &XPoly) -> Result<bool> {
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(AlgebraError::ConstantTerm { expected: "0".into(), got: c.to_string() });
    }
    let mut rest = XTensor2::zero();
    for (w, c) in f.iter() {
        delta_word(w, &mut rest, c, true);
    }
    Ok(rest.is_zero())
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt's formula for the dimension of the degree-n part of a free Lie algebra on `k` letters.
pub fn witt_dimension(n: usize, k: usize) -> u128 {
    assert!(n >= 1);
    let mut total: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d) as i128 * (k as i128).pow((n / d) as u32);
        }
    }
    (total / n as i128) as u128
}

/// Lyndon words of length exactly `n` over letters `0..k`, in lexicographic order (Duval).
pub fn lyndon_words(n: usize, k: u8) -> Vec<XWord> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(XWord::from_codes(&w));
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).all(|i| {
        let rot = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rot)
    })
}

/// Standard bracketing of a Lyndon word: b(w) = [b(u), b(v)] with v the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &XWord, memo: &mut FxHashMap<XWord, XPoly>) -> XPoly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let letters = w.letters();
    let p = if letters.len() == 1 {
        XPoly::letter(letters[0])
    } else {
        let split = (1..letters.len()).find(|&i| is_lyndon(&letters[i..])).expect("Lyndon suffix");
        let u = XWord::from_codes(&letters[..split]);
        let v = XWord::from_codes(&letters[split..]);
        let bu = standard_bracketing(&u, memo);
        let bv = standard_bracketing(&v, memo);
        bu.commutator(&bv)
    };
    memo.insert(w.clone(), p.clone());
    p
}

/// A Lie basis element together with the Lyndon word that indexes it.
#[derive(Clone, Debug)]
pub struct LieBasisElement {
    pub lyndon: XWord,
    pub poly: XPoly,
}

/// Standard-bracketed Lyndon words of length `n`; a basis of Lib(X)[n].
pub fn lyndon_basis(n: usize, g: &GroupSpec) -> Result<Vec<LieBasisElement>> {
    if n == 0 {
        return Err(AlgebraError::InvalidDegree(n));
    }
    let mut memo = FxHashMap::default();
    Ok(lyndon_words(n, g.order() as u8 + 1)
        .into_iter()
        .map(|w| {
            let poly = standard_bracketing(&w, &mut memo);
            LieBasisElement { lyndon: w, poly }
        })
        .collect())
}

/// φ_*: x₀ ↦ |Ker φ|·x₀, x_γ ↦ x_{φ(γ)}.
pub fn phi_push(phi: &GroupMorphism, f: &XPoly) -> Result<XPoly> {
    check_alphabet(f, &phi.source)?;
    let d = Rational::from_int(phi.kernel_size() as i64);
    let mut out = XPoly::zero();
    for (w, c) in f.iter() {
        let mut img = XWord::empty();
        let mut zeros = 0u32;
        for &l in w.letters() {
            if l == X0 {
                zeros += 1;
                img.0.push(X0);
            } else {
                img.0.push(xg(phi.apply(l - 1)));
            }
        }
        out.add_term(img, c * &d.pow(zeros));
    }
    Ok(out)
}

/// φ*: x₀ ↦ x₀, x_{γ′} ↦ Σ_{φ(γ)=γ′} x_γ.
pub fn phi_pull(phi: &GroupMorphism, f: &XPoly) -> Result<XPoly> {
    check_alphabet(f, &phi.target)?;
    let fibers: Vec<SmallVec<[u8; 8]>> =
        phi.target.elements().map(|t| phi.fiber(t).map(xg).collect()).collect();
    let mut out = XPoly::zero();
    for (w, c) in f.iter() {
        let mut partial = vec![XWord::empty()];
        for &l in w.letters() {
            let choices: SmallVec<[u8; 8]> =
                if l == X0 { smallvec::smallvec![X0] } else { fibers[(l - 1) as usize].clone() };
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for p in &partial {
                for &ch in &choices {
                    let mut q = p.clone();
                    q.0.push(ch);
                    next.push(q);
                }
            }
            partial = next;
        }
        for p in partial {
            out.add_term(p, c.clone());
        }
    }
    Ok(out)
}

/// exp(f) for the concatenation product, modulo degree > `trunc`.
pub fn exp_concat(f: &XPoly, trunc: usize) -> Result<XPoly> {
    exp_series(f, trunc)
}

/// log(g) for the concatenation product, modulo degree > `trunc`.
pub fn log_concat(g: &XPoly, trunc: usize) -> Result<XPoly> {
    log_series(g, trunc)
}

pub(crate) fn exp_series<M: Monomial>(f: &crate::poly::Poly<M>, trunc: usize) -> Result<crate::poly::Poly<M>> {
    let c = f.constant_term();
    if !c.is_zero() {
        return Err(AlgebraError::ConstantTerm { expected: "0".into(), got: c.to_string() });
    }
    let f = f.truncate(trunc);
    let mut out = crate::poly::Poly::one();
    let mut pow = crate::poly::Poly::one();
    for k in 1..=trunc as i64 {
        pow = pow.mul_trunc(&f, trunc).scale(&Rational::new(1, k));
        if pow.is_zero() {
            break;
        }
        out = &out + &pow;
    }
    Ok(out)
}

pub(crate) fn log_series<M: Monomial>(g: &crate::poly::Poly<M>, trunc: usize) -> Result<crate::poly::Poly<M>> {
    let c = g.constant_term();
    if !c.is_one() {
        return Err(AlgebraError::ConstantTerm { expected: "1".into(), got: c.to_string() });
    }
    let h = &g.truncate(trunc) - &crate::poly::Poly::one();
    let mut out = crate::poly::Poly::zero();
    let mut pow = crate::poly::Poly::one();
    for k in 1..=trunc as i64 {
        pow = pow.mul_trunc(&h, trunc);
        if pow.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.add_scaled(&pow, &Rational::new(sign, k));
    }
    Ok(out)
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

    #[test]
    fn action_moves_group_letters() {
        let g = GroupSpec::cyclic(2).unwrap();
        let minus = GroupElement::new(vec![1]);
        let w = XPoly::word(XWord::from_codes(&[X0, xg(0), xg(1)]));
        let got = gamma_act(&g, &minus, &w).unwrap();
        assert_eq!(got, XPoly::word(XWord::from_codes(&[X0, xg(1), xg(0)])));
        assert_eq!(gamma_act(&g, &minus, &x(X0)).unwrap(), x(X0));
        assert!(gamma_act(&g, &GroupElement::new(vec![2]), &w).is_err());
        assert!(gamma_act(&g, &minus, &x(xg(5))).is_err());
    }

    #[test]
    fn shuffle_coproduct_of_two_letters() {
        let w = XWord::from_codes(&[X0, xg(0)]);
        let d = delta_shuffle(&XPoly::word(w.clone()));
        let e = XWord::empty();
        let want = XTensor2::from_terms([
            ((w.clone(), e.clone()), Rational::one()),
            ((XWord::letter(X0), XWord::letter(xg(0))), Rational::one()),
            ((XWord::letter(xg(0)), XWord::letter(X0)), Rational::one()),
            ((e.clone(), w), Rational::one()),
        ]);
        assert_eq!(d, want);
        assert_eq!(delta_shuffle(&XPoly::one()), XTensor2::word((e.clone(), e)));
    }

    #[test]
    fn lie_membership() {
        let br = x(X0).commutator(&x(xg(0)));
        assert!(is_lie_element(&br).unwrap());
        assert!(!is_lie_element(&XPoly::word(XWord::from_codes(&[X0, xg(0)]))).unwrap());
        assert!(is_lie_element(&(&x(X0) + &x(xg(0)))).unwrap());
        assert!(is_lie_element(&XPoly::one()).is_err());
    }

    #[test]
    fn lyndon_basis_matches_witt() {
        for order in 1..=3u32 {
            let g = GroupSpec::cyclic(order).unwrap();
            for n in 1..=6 {
                let b = lyndon_basis(n, &g).unwrap();
                assert_eq!(b.len() as u128, witt_dimension(n, order as usize + 1), "n={n} |G|={order}");
                for e in &b {
                    assert!(is_lie_element(&e.poly).unwrap());
                    // leading word of a standard bracketing is the Lyndon word itself
                    assert_eq!(e.poly.coeff(&e.lyndon), Rational::one());
                }
            }
        }
        let t = GroupSpec::trivial();
        let b2 = lyndon_basis(2, &t).unwrap();
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0].poly, x(X0).commutator(&x(xg(0))));
        assert!(lyndon_basis(0, &t).is_err());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_dimension(2, 2), 1);
        assert_eq!(witt_dimension(8, 2), 30);
        assert_eq!(witt_dimension(6, 3), 116);
    }

    #[test]
    fn push_and_pull_to_trivial() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let t = GroupSpec::trivial();
        let phi = GroupMorphism::from_generator_images(&z2, &t, &[GroupElement::new(vec![0])]).unwrap();
        assert_eq!(phi_push(&phi, &x(X0)).unwrap(), x(X0).scale(&r(2, 1)));
        assert_eq!(phi_push(&phi, &x(xg(1))).unwrap(), x(xg(0)));
        assert_eq!(phi_pull(&phi, &x(xg(0))).unwrap(), &x(xg(0)) + &x(xg(1)));
        assert_eq!(phi_pull(&phi, &XPoly::one()).unwrap(), XPoly::one());
        let id = GroupMorphism::identity(&z2);
        let f = &x(X0).commutator(&x(xg(1))) + &x(xg(0));
        assert_eq!(phi_push(&id, &f).unwrap(), f);
        assert_eq!(phi_pull(&id, &f).unwrap(), f);
    }

    #[test]
    fn concat_exp_log() {
        let x1 = x(xg(0));
        let e = exp_concat(&x1, 2).unwrap();
        let want = &(&XPoly::one() + &x1) + &XPoly::word(XWord::from_codes(&[xg(0), xg(0)])).scale(&r(1, 2));
        assert_eq!(e, want);
        assert_eq!(exp_concat(&XPoly::zero(), 5).unwrap(), XPoly::one());
        let f = &x(X0) + &x(X0).commutator(&x1);
        assert_eq!(log_concat(&exp_concat(&f, 6).unwrap(), 6).unwrap(), f);
        assert!(log_concat(&x1, 3).is_err());
    }
}
