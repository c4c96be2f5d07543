//! The twisted derivations d_ψ, the operators s_ψ, the Ihara bracket,
//! the induced action on ℚ⟨Y⟩ and the correction morphism θ.

use crate::error::{AlgebraError, Result};
use crate::group::GroupSpec;
use crate::poly::{XPoly, YPoly};
use crate::rational::Rational;
use crate::word::{xg, XWord, X0};
use crate::xalg::{act, is_lie_element};
use crate::yalg::{embed_y, p_twist, pi_y, q_twist, x0_power_x1_word};

/// t_σ(ψ) for every σ, indexed by group element.
fn twisted_copies(g: &GroupSpec, psi: &XPoly) -> Vec<XPoly> {
    g.elements().map(|s| act(g, s, psi)).collect()
}

fn d_with_copies(copies: &[XPoly], f: &XPoly, trunc: usize) -> XPoly {
    let mut out = XPoly::zero();
    for (w, c) in f.iter() {
        let l = w.letters();
        for (i, &ch) in l.iter().enumerate() {
            if ch == X0 {
                continue;
            }
            let t = &copies[(ch - 1) as usize];
            let (pre, post) = (&l[..i], &l[i + 1..]);
            for (tw, tc) in t.iter() {
                if l.len() - 1 + tw.len() > trunc {
                    continue;
                }
                // a·(x_σ T − T x_σ)·b
                let mut left = XWord::empty();
                left.0.extend_from_slice(pre);
                left.0.push(ch);
                left.0.extend_from_slice(tw.letters());
                left.0.extend_from_slice(post);
                let mut right = XWord::empty();
                right.0.extend_from_slice(pre);
                right.0.extend_from_slice(tw.letters());
                right.0.push(ch);
                right.0.extend_from_slice(post);
                let coeff = c * tc;
                out.add_term(right, -&coeff);
                out.add_term(left, coeff);
            }
        }
    }
    out
}

/// The derivation with d_ψ(x₀) = 0 and d_ψ(x_σ) = [x_σ, t_σ(ψ)].
pub fn d_psi(g: &GroupSpec, psi: &XPoly, f: &XPoly) -> XPoly {
    d_with_copies(&twisted_copies(g, psi), f, usize::MAX)
}

/// s_ψ(v) = ψ·v + d_ψ(v).
pub fn s_psi(g: &GroupSpec, psi: &XPoly, f: &XPoly) -> XPoly {
    s_psi_trunc(g, psi, f, usize::MAX)
}

/// s_ψ(v) modulo degree > `trunc`.
pub fn s_psi_trunc(g: &GroupSpec, psi: &XPoly, f: &XPoly, trunc: usize) -> XPoly {
    let copies = twisted_copies(g, psi);
    let mut out = d_with_copies(&copies, f, trunc);
    out = &out + &psi.mul_trunc(f, trunc);
    out
}

/// Repeated application of one s_ψ, reusing the twisted copies of ψ.
pub struct SOperator {
    psi: XPoly,
    copies: Vec<XPoly>,
}

impl SOperator {
    pub fn new(g: &GroupSpec, psi: &XPoly) -> Self {
        SOperator { psi: psi.clone(), copies: twisted_copies(g, psi) }
    }

    pub fn apply(&self, f: &XPoly, trunc: usize) -> XPoly {
        &d_with_copies(&self.copies, f, trunc) + &self.psi.mul_trunc(f, trunc)
    }
}

fn require_no_constant(f: &XPoly) -> Result<()> {
    let c = f.constant_term();
    if c.is_zero() {
        Ok(())
    } else {
        Err(AlgebraError::ConstantTerm { expected: "0".into(), got: c.to_string() })
    }
}

/// ⟨ψ₁,ψ₂⟩ = s_{ψ₁}(ψ₂) − s_{ψ₂}(ψ₁).
pub fn ihara_bracket(g: &GroupSpec, a: &XPoly, b: &XPoly) -> Result<XPoly> {
    require_no_constant(a)?;
    require_no_constant(b)?;
    Ok(&s_psi(g, a, b) - &s_psi(g, b, a))
}

/// s^Y_φ(u) = q ∘ πY ∘ s_φ(embed(p(u))).
pub fn s_psi_y(g: &GroupSpec, phi: &XPoly, u: &YPoly) -> Result<YPoly> {
    require_no_constant(phi)?;
    Ok(s_psi_y_unchecked(&SOperator::new(g, phi), g, u))
}

pub(crate) fn s_psi_y_unchecked(op: &SOperator, g: &GroupSpec, u: &YPoly) -> YPoly {
    let lifted = embed_y(&p_twist(g, u));
    q_twist(g, &pi_y(&op.apply(&lifted, usize::MAX)))
}

/// θ(ψ) = ψ + Σ_n ((−1)^{n−1}/n)(ψ|x₀^{n−1}x₁)·x₁ⁿ − (ψ|x₀)·x₀, without checking that ψ is Lie.
pub fn theta(psi: &XPoly) -> XPoly {
    let mut out = psi.clone();
    for (w, c) in psi.iter() {
        if let Some(n) = crate::yalg::x0_power_x1(w) {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let x1n = XWord(std::iter::repeat_n(xg(0), n).collect());
            out.add_term(x1n, c * &Rational::new(sign, n as i64));
        }
    }
    out.add_term(XWord::letter(X0), -psi.coeff(&XWord::letter(X0)));
    out
}

/// θ(ψ), refusing input that is not Lie. The error carries no value; call
/// [`theta`] to evaluate the formula anyway.
pub fn theta_checked(psi: &XPoly) -> Result<XPoly> {
    if !is_lie_element(psi)? {
        return Err(AlgebraError::NotLie);
    }
    Ok(theta(psi))
}

/// f⁰ₙ(ψ) = (ψ|x₀^{n−1}x₁).
pub fn char_f0(n: usize, psi: &XPoly) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    psi.coeff(&x0_power_x1_word(n))
}

/// g⁰₁(ψ) = (ψ|x₀); g⁰ₙ = 0 for n > 1.
pub fn char_g0(n: usize, psi: &XPoly) -> Rational {
    if n == 1 {
        psi.coeff(&XWord::letter(X0))
    } else {
        Rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{YLetter, YWord};

    fn x(c: u8) -> XPoly {
        XPoly::letter(c)
    }
    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }
    fn xw(c: &[u8]) -> XPoly {
        XPoly::word(XWord::from_codes(c))
    }

    #[test]
    fn derivation_values() {
        let t = GroupSpec::trivial();
        let x1 = xg(0);
        assert_eq!(d_psi(&t, &x(X0), &x(x1)), x(x1).commutator(&x(X0)));
        let br = x(X0).commutator(&x(x1));
        assert!(d_psi(&t, &br, &x(X0)).is_zero());
        assert!(d_psi(&t, &x(x1), &xw(&[X0, x1, x1, X0])).is_zero());
    }

    #[test]
    fn s_values() {
        let t = GroupSpec::trivial();
        let br = x(X0).commutator(&x(xg(0)));
        assert_eq!(s_psi(&t, &br, &XPoly::one()), br);
        assert_eq!(s_psi(&t, &x(X0), &x(xg(0))), xw(&[xg(0), X0]));
        let z2 = GroupSpec::cyclic(2).unwrap();
        for gi in z2.elements() {
            for a in z2.elements() {
                let got = s_psi(&z2, &x(xg(gi)), &x(xg(a)));
                let want = &(&x(xg(gi)) * &x(xg(a))) + &x(xg(a)).commutator(&x(xg(z2.mul(a, gi))));
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn bracket_centrality_and_closure() {
        let t = GroupSpec::trivial();
        let x1 = xg(0);
        let br = x(X0).commutator(&x(x1));
        let br3 = x(X0).commutator(&br);
        assert!(ihara_bracket(&t, &x(X0), &br3).unwrap().is_zero());
        assert!(ihara_bracket(&t, &xw(&[x1, x1, x1]), &br3).unwrap().is_zero());
        let v = ihara_bracket(&t, &br, &br3).unwrap();
        assert!(v.is_homogeneous() && v.min_degree() == Some(5));
        assert!(is_lie_element(&v).unwrap());
        assert!(ihara_bracket(&t, &XPoly::one(), &br).is_err());
    }

    #[test]
    fn theta_values() {
        let x1 = xg(0);
        assert!(theta(&x(X0)).is_zero());
        assert_eq!(theta(&x(x1)), x(x1).scale(&r(2, 1)));
        assert_eq!(theta(&x(xg(2))), x(xg(2)));
        let br = x(X0).commutator(&x(x1));
        assert_eq!(theta(&br), &br - &xw(&[x1, x1]).scale(&r(1, 2)));
        assert!(theta_checked(&xw(&[X0, x1])).is_err());
    }

    #[test]
    fn y_action_on_a_letter() {
        let t = GroupSpec::trivial();
        let br = x(X0).commutator(&x(xg(0)));
        let y = |l: &[u8]| YWord(l.iter().map(|&n| YLetter::new(n, 0)).collect());
        let got = s_psi_y(&t, &theta(&br), &YPoly::word(y(&[1]))).unwrap();
        let want = YPoly::from_terms([(y(&[1, 2]), r(1, 1)), (y(&[1, 1, 1]), r(-1, 2))]);
        assert_eq!(got, want);
        let phi = &br + &x(xg(0));
        assert_eq!(s_psi_y(&t, &phi, &YPoly::one()).unwrap(), q_twist(&t, &pi_y(&phi)));
    }

    #[test]
    fn characters() {
        let br = x(X0).commutator(&x(xg(0)));
        assert_eq!(char_f0(2, &br), Rational::one());
        assert_eq!(char_g0(1, &x(X0)), Rational::one());
        assert_eq!(char_g0(2, &x(X0)), Rational::zero());
    }
}
