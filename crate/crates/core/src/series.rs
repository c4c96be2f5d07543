//! The truncated group level: series modulo degree > D with the twisted
//! Magnus product G ⊛ H = G·aut_G(H), its exponential and logarithm, the
//! corrected morphism Θ, the induced actions on X- and Y-series, and the
//! membership and stabilizer checks.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::group::GroupSpec;
use crate::ihara::SOperator;
use crate::poly::{Poly, RenderMonomial, XPoly, XTensor2, YPoly, YTensor2};
use crate::rational::Rational;
use crate::word::{xg, y_words, Monomial, XWord, YWord, X0};
use crate::xalg::{act, delta_shuffle, exp_series, log_series};
use crate::yalg::{embed_y, harmonic_coproduct, p_twist, pi_y, q_twist, star_multiplicative, x0_power_x1_word};

/// A polynomial read modulo monomials of degree > `trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated<M: Monomial> {
    poly: Poly<M>,
    trunc: usize,
}

pub type TruncSeries = Truncated<XWord>;
pub type YTruncSeries = Truncated<YWord>;

impl<M: Monomial> Truncated<M> {
    pub fn new(poly: Poly<M>, trunc: usize) -> Result<Self> {
        if trunc == 0 {
            return Err(AlgebraError::InvalidDegree(0));
        }
        Ok(Truncated { poly: poly.truncate(trunc), trunc })
    }

    pub fn one(trunc: usize) -> Result<Self> {
        Self::new(Poly::one(), trunc)
    }

    pub fn poly(&self) -> &Poly<M> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<M> {
        self.poly
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, m: &M) -> Rational {
        self.poly.coeff(m)
    }

    pub fn is_one(&self) -> bool {
        self.poly == Poly::one()
    }

    fn same_trunc(&self, other: &Self) -> Result<usize> {
        if self.trunc != other.trunc {
            return Err(AlgebraError::TruncMismatch(self.trunc, other.trunc));
        }
        Ok(self.trunc)
    }

    fn wrap(&self, poly: Poly<M>) -> Self {
        Truncated { poly: poly.truncate(self.trunc), trunc: self.trunc }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_trunc(other)?;
        Ok(self.wrap(&self.poly + &other.poly))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_trunc(other)?;
        Ok(self.wrap(&self.poly - &other.poly))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.wrap(self.poly.scale(c))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.same_trunc(other)?;
        Ok(self.wrap(self.poly.mul_trunc(&other.poly, d)))
    }

    /// Concatenation exponential; needs a zero constant term.
    pub fn exp(&self) -> Result<Self> {
        Ok(self.wrap(exp_series(&self.poly, self.trunc)?))
    }

    /// Concatenation logarithm; needs constant term 1.
    pub fn log(&self) -> Result<Self> {
        Ok(self.wrap(log_series(&self.poly, self.trunc)?))
    }

    /// Concatenation inverse; needs constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        require_unit(&self.poly)?;
        Ok(self.wrap(concat_inverse(&self.poly, self.trunc)))
    }
}

impl<M: RenderMonomial> Truncated<M> {
    /// `{"trunc": D, "terms": {word: "coeff"}}`.
    pub fn to_json(&self, g: &GroupSpec) -> serde_json::Value {
        serde_json::json!({ "trunc": self.trunc, "terms": self.poly.to_json(g) })
    }

    pub fn to_text(&self, g: &GroupSpec) -> String {
        format!("{} + O({})", self.poly.to_text(g), self.trunc + 1)
    }
}

fn require_unit<M: Monomial>(p: &Poly<M>) -> Result<()> {
    let c = p.constant_term();
    if c.is_one() {
        Ok(())
    } else {
        Err(AlgebraError::ConstantTerm { expected: "1".into(), got: c.to_string() })
    }
}

fn require_no_constant<M: Monomial>(p: &Poly<M>) -> Result<()> {
    let c = p.constant_term();
    if c.is_zero() {
        Ok(())
    } else {
        Err(AlgebraError::ConstantTerm { expected: "0".into(), got: c.to_string() })
    }
}

/// (1 − h)⁻¹ = Σ hᵏ for G = 1 − h.
fn concat_inverse<M: Monomial>(p: &Poly<M>, trunc: usize) -> Poly<M> {
    let h = &Poly::one() - &p.truncate(trunc);
    let mut out = Poly::one();
    let mut pow = Poly::one();
    for _ in 0..trunc {
        pow = pow.mul_trunc(&h, trunc);
        if pow.is_zero() {
            break;
        }
        out = &out + &pow;
    }
    out
}

/// `a ⊗ b` keeping only pairs of total degree ≤ `trunc`.
pub fn tensor_trunc<M: Monomial>(a: &Poly<M>, b: &Poly<M>, trunc: usize) -> Poly<(M, M)> {
    let mut bs: Vec<(&M, &Rational)> = b.iter().collect();
    bs.sort_by_key(|(m, _)| m.degree());
    let mut out = Poly::zero();
    for (x, cx) in a.iter() {
        let dx = x.degree();
        for (y, cy) in &bs {
            if dx + y.degree() > trunc {
                break;
            }
            out.add_term((x.clone(), (*y).clone()), cx * *cy);
        }
    }
    out
}

/// The algebra endomorphism x₀ ↦ x₀, x_σ ↦ t_σ(G)⁻¹·x_σ·t_σ(G), letter images precomputed.
struct Aut {
    images: Vec<XPoly>,
    trunc: usize,
}

impl Aut {
    fn new(g: &GroupSpec, big_g: &XPoly, trunc: usize) -> Self {
        let mut images = vec![XPoly::letter(X0)];
        for s in g.elements() {
            let t = act(g, s, big_g).truncate(trunc);
            let tinv = concat_inverse(&t, trunc);
            let img = tinv.mul_trunc(&XPoly::letter(xg(s)), trunc).mul_trunc(&t, trunc);
            images.push(img);
        }
        Aut { images, trunc }
    }

    fn apply(&self, f: &XPoly) -> XPoly {
        let terms: Vec<(&[u8], Rational)> = f.iter().map(|(w, c)| (w.letters(), c.clone())).collect();
        self.apply_rec(terms, self.trunc)
    }

    // Splits by first letter: aut(x·f) = aut(x)·aut(f), with the tail needed
    // only to degree `trunc − 1` since every image starts in degree 1.
    fn apply_rec(&self, terms: Vec<(&[u8], Rational)>, trunc: usize) -> XPoly {
        let mut out = XPoly::zero();
        let mut buckets: Vec<Vec<(&[u8], Rational)>> = vec![Vec::new(); self.images.len()];
        for (w, c) in terms {
            match w.split_first() {
                None => out.add_term(XWord::empty(), c),
                Some((&first, rest)) if w.len() <= trunc => buckets[first as usize].push((rest, c)),
                Some(_) => {}
            }
        }
        for (code, bucket) in buckets.into_iter().enumerate() {
            if bucket.is_empty() {
                continue;
            }
            let tail = self.apply_rec(bucket, trunc - 1);
            out = &out + &self.images[code].mul_trunc(&tail, trunc);
        }
        out
    }
}

/// aut_G(f).
pub fn aut(g: &GroupSpec, big_g: &TruncSeries, f: &TruncSeries) -> Result<TruncSeries> {
    let d = big_g.same_trunc(f)?;
    require_unit(&big_g.poly)?;
    Ok(f.wrap(Aut::new(g, &big_g.poly, d).apply(&f.poly)))
}

/// G ⊛ H = G·aut_G(H). H may have any constant term (module action).
pub fn star_product(g: &GroupSpec, big_g: &TruncSeries, h: &TruncSeries) -> Result<TruncSeries> {
    let moved = aut(g, big_g, h)?;
    big_g.mul(&moved)
}

/// The ⊛-inverse, degree by degree: (G ⊛ H)ⱼ = Hⱼ + terms in H₍<ⱼ₎ only,
/// so each degree is read off a product truncated at that degree.
pub fn star_inverse(g: &GroupSpec, big_g: &TruncSeries) -> Result<TruncSeries> {
    require_unit(&big_g.poly)?;
    let mut h = XPoly::one();
    for j in 1..=big_g.trunc {
        let gj = big_g.poly.truncate(j);
        let prod = gj.mul_trunc(&Aut::new(g, &gj, j).apply(&h), j);
        h.add_scaled(&prod.component(j), &-Rational::one());
    }
    Ok(big_g.wrap(h))
}

fn exp_star_poly(g: &GroupSpec, psi: &XPoly, trunc: usize) -> XPoly {
    let op = SOperator::new(g, psi);
    let mut out = XPoly::one();
    let mut term = XPoly::one();
    for k in 1..=trunc as i64 {
        term = op.apply(&term, trunc).scale(&Rational::new(1, k));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    out
}

/// exp_⊛(ψ) = Σ s_ψᵏ(1)/k!, the one-parameter subgroup with tangent ψ.
pub fn exp_star(g: &GroupSpec, psi: &TruncSeries) -> Result<TruncSeries> {
    require_no_constant(&psi.poly)?;
    Ok(psi.wrap(exp_star_poly(g, &psi.poly, psi.trunc)))
}

/// Inverse of [`exp_star`]: exp_⊛(ψ)ⱼ = ψⱼ + terms in ψ₍<ⱼ₎ only.
pub fn log_star(g: &GroupSpec, big_g: &TruncSeries) -> Result<TruncSeries> {
    require_unit(&big_g.poly)?;
    let mut psi = XPoly::zero();
    for j in 1..=big_g.trunc {
        let e = exp_star_poly(g, &psi, j).component(j);
        psi = &psi + &(&big_g.poly.component(j) - &e);
    }
    Ok(big_g.wrap(psi))
}

/// log_⊛(exp_⊛(ψ₁) ⊛ exp_⊛(ψ₂)).
pub fn cbh_star(g: &GroupSpec, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.same_trunc(b)?;
    let prod = star_product(g, &exp_star(g, a)?, &exp_star(g, b)?)?;
    log_star(g, &prod)
}

/// Δ(G) − G⊗G modulo total degree > D, for the shuffle coproduct.
pub fn grouplike_defect(big_g: &TruncSeries) -> XTensor2 {
    &delta_shuffle(&big_g.poly) - &tensor_trunc(&big_g.poly, &big_g.poly, big_g.trunc)
}

/// Δ*(K) − K⊗K modulo total degree > D.
pub fn harmonic_grouplike_defect(g: &GroupSpec, k: &YTruncSeries) -> YTensor2 {
    &harmonic_coproduct(g, &k.poly) - &tensor_trunc(&k.poly, &k.poly, k.trunc)
}

pub fn is_group_like(big_g: &TruncSeries) -> bool {
    big_g.poly.constant_term().is_one() && grouplike_defect(big_g).is_zero()
}

/// Θ(G) = exp(Σ ((−1)ⁿ⁻¹/n)(G|x₀ⁿ⁻¹x₁)·x₁ⁿ)·G·exp(−(G|x₀)·x₀), for group-like G.
pub fn theta_group(big_g: &TruncSeries) -> Result<TruncSeries> {
    require_unit(&big_g.poly)?;
    if !grouplike_defect(big_g).is_zero() {
        return Err(AlgebraError::NotGroupLike);
    }
    Ok(theta_group_unchecked(big_g))
}

fn theta_group_unchecked(big_g: &TruncSeries) -> TruncSeries {
    let d = big_g.trunc;
    let mut left = XPoly::zero();
    for n in 1..=d {
        let c = big_g.coeff(&x0_power_x1_word(n));
        if !c.is_zero() {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            left.add_term(XWord(std::iter::repeat_n(xg(0), n).collect()), &c * &Rational::new(sign, n as i64));
        }
    }
    let right = XPoly::letter(X0).scale(&-big_g.coeff(&XWord::letter(X0)));
    let left = exp_series(&left, d).expect("no constant term");
    let right = exp_series(&right, d).expect("no constant term");
    big_g.wrap(left.mul_trunc(&big_g.poly, d).mul_trunc(&right, d))
}

/// S_G(H) = G ⊛ H.
pub fn s_action(g: &GroupSpec, big_g: &TruncSeries, h: &TruncSeries) -> Result<TruncSeries> {
    star_product(g, big_g, h)
}

/// S^Y_G(K) = q(πY(G ⊛ embed(p(K)))).
pub fn s_action_y(g: &GroupSpec, big_g: &TruncSeries, k: &YTruncSeries) -> Result<YTruncSeries> {
    if big_g.trunc != k.trunc {
        return Err(AlgebraError::TruncMismatch(big_g.trunc, k.trunc));
    }
    require_unit(&big_g.poly)?;
    let a = Aut::new(g, &big_g.poly, big_g.trunc);
    Ok(y_action_with(g, &a, &big_g.poly, k))
}

fn y_action_with(g: &GroupSpec, a: &Aut, big_g: &XPoly, k: &YTruncSeries) -> YTruncSeries {
    let lifted = embed_y(&p_twist(g, &k.poly));
    let moved = big_g.mul_trunc(&a.apply(&lifted), a.trunc);
    Truncated { poly: q_twist(g, &pi_y(&moved)).truncate(a.trunc), trunc: a.trunc }
}

/// G_⋆ for a series.
pub fn star_multiplicative_series(g: &GroupSpec, big_g: &TruncSeries) -> Result<YTruncSeries> {
    YTruncSeries::new(star_multiplicative(g, &big_g.poly, big_g.trunc)?, big_g.trunc)
}

/// One failed check with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub source: String,
    pub expected: String,
    pub got: String,
}

/// Failed conditions among those defining DMR₀, modulo degree > D.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Dmr0Report {
    pub failures: Vec<Failure>,
}

impl Dmr0Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn first_tensor_failure<M: RenderMonomial>(
    source: &str,
    defect: &Poly<(M, M)>,
    rhs: &Poly<(M, M)>,
    g: &GroupSpec,
) -> Option<Failure> {
    let (m, c) = defect.sorted_terms().into_iter().next()?;
    let expected = rhs.coeff(m);
    Some(Failure {
        source: format!("{source} at {}", m.render(g)),
        expected: expected.to_string(),
        got: (&expected + c).to_string(),
    })
}

pub fn dmr0_membership(g: &GroupSpec, big_g: &TruncSeries) -> Dmr0Report {
    let mut report = Dmr0Report::default();
    let mut want = |source: String, got: Rational, expected: Rational| {
        if got != expected {
            report.failures.push(Failure { source, expected: expected.to_string(), got: got.to_string() });
        }
    };
    let d = big_g.trunc;
    let c = |codes: &[u8]| big_g.coeff(&XWord::from_codes(codes));
    want("(G|1)".into(), big_g.poly.constant_term(), Rational::one());
    want("(G|x0)".into(), c(&[X0]), Rational::zero());
    want("(G|x1)".into(), c(&[xg(0)]), Rational::zero());
    if d >= 2 {
        want("(G|x0 x1)".into(), c(&[X0, xg(0)]), Rational::zero());
    }
    for s in g.elements() {
        let si = g.inv(s);
        if s < si {
            let (a, b) = (XWord::letter(xg(s)).render(g), XWord::letter(xg(si)).render(g));
            want(format!("(G|{a} - {b})"), &c(&[xg(s)]) - &c(&[xg(si)]), Rational::zero());
        }
    }
    if !big_g.poly.constant_term().is_one() {
        return report;
    }
    let rhs = tensor_trunc(&big_g.poly, &big_g.poly, d);
    let defect = &delta_shuffle(&big_g.poly) - &rhs;
    report.failures.extend(first_tensor_failure("Δ(G) = G⊗G", &defect, &rhs, g));
    let star = star_multiplicative_series(g, big_g).expect("unit constant term");
    let rhs = tensor_trunc(&star.poly, &star.poly, d);
    let defect = &harmonic_coproduct(g, &star.poly) - &rhs;
    report.failures.extend(first_tensor_failure("Δ*(G⋆) = G⋆⊗G⋆", &defect, &rhs, g));
    report
}

/// G = e^{βx₁}·core·e^{αx₀} with α = (G|x₀), β = (G|x₁).
#[derive(Clone, Debug)]
pub struct TildeFactor {
    pub beta: Rational,
    pub core: TruncSeries,
    pub alpha: Rational,
    pub core_membership: Dmr0Report,
}

impl TildeFactor {
    /// G lies in the extended group iff the core lies in DMR₀.
    pub fn is_member(&self) -> bool {
        self.core_membership.passed()
    }
}

pub fn tilde_dmr0_factor(g: &GroupSpec, big_g: &TruncSeries) -> Result<TildeFactor> {
    require_unit(&big_g.poly)?;
    let d = big_g.trunc;
    let alpha = big_g.coeff(&XWord::letter(X0));
    let beta = big_g.coeff(&XWord::letter(xg(0)));
    let left = exp_series(&XPoly::letter(xg(0)).scale(&-&beta), d)?;
    let right = exp_series(&XPoly::letter(X0).scale(&-&alpha), d)?;
    let core = big_g.wrap(left.mul_trunc(&big_g.poly, d).mul_trunc(&right, d));
    let core_membership = dmr0_membership(g, &core);
    Ok(TildeFactor { beta, core, alpha, core_membership })
}

/// Words where (S⊗S)∘Δ* and Δ*∘S disagree, S = S^Y_{Θ(g)}, with the difference.
#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub trunc: usize,
    pub max_source: usize,
    pub defects: Vec<(YWord, YTensor2)>,
}

impl StabilizerReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn on(&self, w: &YWord) -> Option<&YTensor2> {
        self.defects.iter().find(|(s, _)| s == w).map(|(_, d)| d)
    }
}

/// Compares (S⊗S)(Δ*(w)) with Δ*(S(w)) on every Y word of degree ≤ `max_source`
/// (the empty word included), modulo total degree > D.
pub fn stabilizer_check(g: &GroupSpec, big_g: &TruncSeries, max_source: usize) -> Result<StabilizerReport> {
    let th = theta_group(big_g)?;
    let d = th.trunc;
    let a = Aut::new(g, &th.poly, d);
    let mut images: rustc_hash::FxHashMap<YWord, YPoly> = rustc_hash::FxHashMap::default();
    let mut sources = vec![YWord::empty()];
    for m in 1..=max_source.min(d) {
        sources.extend(y_words(m, g));
    }
    for w in &sources {
        let k = Truncated { poly: YPoly::word(w.clone()), trunc: d };
        images.insert(w.clone(), y_action_with(g, &a, &th.poly, &k).poly);
    }
    let mut defects = Vec::new();
    for w in &sources {
        let mut diff = YTensor2::zero();
        crate::yalg::harmonic_word_terms(g, w, usize::MAX, &mut |l, r| {
            diff = &diff + &tensor_trunc(&images[l], &images[r], d);
        });
        diff = &diff - &harmonic_coproduct(g, &images[w]);
        if !diff.is_zero() {
            defects.push((w.clone(), diff));
        }
    }
    Ok(StabilizerReport { trunc: d, max_source, defects })
}
