//! Degreewise computation of the double shuffle spaces and the stabilizer
//! sandwich dmr₀[n] ⊆ stab[n] ⊆ K_M.
//!
//! Every space lives in Lyndon coordinates of Lib(X)[n]. Linear conditions are
//! collected in two stages: a cheap stage that only keeps tensor components
//! whose left factor is a single letter, and an exact stage that imposes the
//! full condition on the (small) survivor space. The first stage only ever
//! removes vectors that violate the condition, so the final space is exact.

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::group::{GroupElement, GroupMorphism, GroupSpec};
use crate::ihara::{s_psi_y_unchecked, theta, SOperator};
use crate::linalg::{SparseRow, Subspace};
use crate::poly::{XPoly, YPoly, YTensor2};
use crate::rational::Rational;
use crate::word::{xg, y_word_count, y_words, XWord, YLetter, YWord, X0};
use crate::xalg::{lyndon_basis, phi_pull, phi_push, LieBasisElement};
use crate::yalg::{harmonic_word_terms, star_additive};

pub const DEFAULT_BASIS_CAP: u128 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceBound {
    /// Try source degrees up to n + 3.
    Auto,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub source_bound: SourceBound,
    /// Largest admissible number of Y words in any degree the computation touches.
    pub basis_cap: u128,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { source_bound: SourceBound::Auto, basis_cap: DEFAULT_BASIS_CAP }
    }
}

impl SolverConfig {
    pub fn max_source_degree(&self, n: usize) -> usize {
        match self.source_bound {
            SourceBound::Auto => n + 3,
            SourceBound::Fixed(m) => m,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub gamma: GroupSpec,
    pub degree: usize,
    pub dim_lib: usize,
    pub dim_dmr: usize,
    pub dim_dmr0: usize,
    pub dim_stab_upper: usize,
    pub source_bound_used: usize,
    pub certified: bool,
}

/// The Lyndon basis of Lib(X)[n] with coordinate labels.
#[derive(Clone, Debug)]
pub struct LieCoordinates {
    pub degree: usize,
    pub basis: Vec<LieBasisElement>,
    pub labels: Vec<String>,
}

impl LieCoordinates {
    pub fn new(n: usize, g: &GroupSpec) -> Result<Self> {
        let basis = lyndon_basis(n, g)?;
        let labels = basis.iter().map(|b| b.lyndon.render(g)).collect();
        Ok(LieCoordinates { degree: n, basis, labels })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Σ vᵢ·bᵢ.
    pub fn element(&self, v: &[Rational]) -> XPoly {
        let mut out = XPoly::zero();
        for (c, b) in v.iter().zip(&self.basis) {
            out.add_scaled(&b.poly, c);
        }
        out
    }

    pub fn elements(&self, s: &Subspace) -> Vec<XPoly> {
        s.basis().iter().map(|v| self.element(v)).collect()
    }

    /// Coordinates of a Lie element of degree n, read off its Lyndon-word coefficients
    /// by triangularity of the standard bracketing.
    pub fn coordinates(&self, f: &XPoly) -> Result<Vec<Rational>> {
        let mut rest = f.clone();
        let mut out = vec![Rational::zero(); self.dim()];
        // Standard bracketings are unitriangular with respect to the
        // lexicographic order on Lyndon words: b(w) = w + larger words.
        for (i, b) in self.basis.iter().enumerate() {
            let c = rest.coeff(&b.lyndon);
            if !c.is_zero() {
                rest.add_scaled(&b.poly, &-&c);
                out[i] = c;
            }
        }
        if rest.is_zero() {
            Ok(out)
        } else {
            Err(AlgebraError::NotLie)
        }
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.labels.clone())
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.labels.clone())
    }
}

/// Accumulates linear conditions on a family of unknown generators.
struct RowBuilder<K> {
    rows: FxHashMap<K, SparseRow>,
}

impl<K: std::hash::Hash + Eq> RowBuilder<K> {
    fn new() -> Self {
        RowBuilder { rows: FxHashMap::default() }
    }

    fn add(&mut self, key: K, col: usize, c: Rational) {
        if !c.is_zero() {
            self.rows.entry(key).or_default().push((col, c));
        }
    }

    fn finish(self) -> Vec<SparseRow> {
        self.rows.into_values().collect()
    }
}

/// Restricts `space` (coordinates over `coords`) to the kernel of the
/// conditions produced by `conditions` on each generator.
///
/// `conditions(ψ, exact)` returns keyed values that must all vanish; with
/// `exact == false` it may return any subset of the conditions.
fn impose<K, F>(coords: &LieCoordinates, space: &Subspace, mut conditions: F) -> Subspace
where
    K: std::hash::Hash + Eq,
    F: FnMut(&XPoly, bool) -> Vec<(K, Rational)>,
{
    let mut current = space.clone();
    for exact in [false, true] {
        if current.is_zero() {
            break;
        }
        let gens: Vec<&Vec<Rational>> = current.basis().iter().collect();
        let mut rb = RowBuilder::new();
        for (j, v) in gens.iter().enumerate() {
            let psi = coords.element(v);
            for (k, c) in conditions(&psi, exact) {
                rb.add(k, j, c);
            }
        }
        let rows = rb.finish();
        let local_labels: Vec<String> = (0..gens.len()).map(|j| format!("g{j}")).collect();
        let local = Subspace::kernel(local_labels, &rows);
        let vecs = local
            .basis()
            .iter()
            .map(|al| {
                let mut v = vec![Rational::zero(); coords.dim()];
                for (a, gvec) in al.iter().zip(&gens) {
                    if !a.is_zero() {
                        for (x, y) in v.iter_mut().zip(gvec.iter()) {
                            *x += &(a * y);
                        }
                    }
                }
                v
            })
            .collect();
        current = Subspace::from_spanning(coords.labels.clone(), vecs);
    }
    current
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        Err(AlgebraError::InvalidDegree(0))
    } else {
        Ok(())
    }
}

fn check_cap(g: &GroupSpec, degree: usize, cap: u128) -> Result<()> {
    let count = y_word_count(degree, g);
    if count > cap {
        Err(AlgebraError::Resource(format!(
            "{count} Y words in degree {degree} for {g} exceed the basis cap {cap}"
        )))
    } else {
        Ok(())
    }
}

/// Components of Δ*(u) − u⊗1 − 1⊗u, optionally only those with a single-letter left factor.
fn primitivity_terms(g: &GroupSpec, u: &YPoly, exact: bool) -> YTensor2 {
    let depth = if exact { usize::MAX } else { 1 };
    let mut out = YTensor2::zero();
    for (w, c) in u.iter() {
        harmonic_word_terms(g, w, depth, &mut |l, r| {
            if !l.is_empty() && !r.is_empty() {
                out.add_term((l.clone(), r.clone()), c.clone());
            }
        });
    }
    out
}

fn dmr_with(coords: &LieCoordinates, g: &GroupSpec) -> Subspace {
    let x0 = XWord::letter(X0);
    let x1 = XWord::letter(xg(0));
    #[derive(Hash, PartialEq, Eq)]
    enum Key {
        Coeff(u8),
        Prim(YWord, YWord),
    }
    impose(coords, &coords.full_space(), |psi, exact| {
        let mut out = Vec::new();
        if !exact {
            out.push((Key::Coeff(0), psi.coeff(&x0)));
            out.push((Key::Coeff(1), psi.coeff(&x1)));
        }
        let star = star_additive(g, psi);
        for ((l, r), c) in primitivity_terms(g, &star, exact).iter() {
            out.push((Key::Prim(l.clone(), r.clone()), c.clone()));
        }
        out
    })
}

/// dmr[n]: Lie elements with (ψ|x₀) = (ψ|x₁) = 0 and Δ*-primitive ψ*.
pub fn dmr_space(n: usize, g: &GroupSpec) -> Result<Subspace> {
    check_degree(n)?;
    let coords = LieCoordinates::new(n, g)?;
    Ok(dmr_with(&coords, g))
}

/// The single-letter parity conditions on ψ* that cut dmr₀ out of dmr,
/// as pairs (n, σ) meaning (ψ*|y_{n,σ}) + (−1)ⁿ(ψ*|y_{n,σ⁻¹}) = 0.
fn parity_conditions(g: &GroupSpec) -> Vec<(u8, u8)> {
    if g.order() >= 3 {
        g.elements().map(|s| (1, s)).collect()
    } else {
        vec![(2, 0)]
    }
}

fn dmr0_with(coords: &LieCoordinates, dmr: &Subspace, g: &GroupSpec) -> Subspace {
    let n = coords.degree;
    if n == 1 {
        return dmr0_degree_one(coords, g);
    }
    let conds: Vec<(u8, u8)> = parity_conditions(g).into_iter().filter(|&(k, _)| k as usize == n).collect();
    if conds.is_empty() {
        return dmr.clone();
    }
    impose(coords, dmr, |psi, _| {
        let star = star_additive(g, psi);
        conds
            .iter()
            .map(|&(k, s)| {
                let a = star.coeff(&YWord::from_letters(&[YLetter::new(k, s)]));
                let b = star.coeff(&YWord::from_letters(&[YLetter::new(k, g.inv(s))]));
                let v = if k % 2 == 0 { &a + &b } else { &a - &b };
                ((k, s), v)
            })
            .collect()
    })
}

/// span{x_g + x_{g⁻¹} : g ≠ 1} in degree-1 coordinates (x₀ first, then the group letters).
fn dmr0_degree_one(coords: &LieCoordinates, g: &GroupSpec) -> Subspace {
    let vecs = g
        .elements()
        .filter(|&e| e != 0)
        .map(|e| {
            let mut v = vec![Rational::zero(); coords.dim()];
            v[xg(e) as usize] += &Rational::one();
            v[xg(g.inv(e)) as usize] += &Rational::one();
            v
        })
        .collect();
    Subspace::from_spanning(coords.labels.clone(), vecs)
}

/// dmr₀[n]: dmr[n] cut by the parity conditions; in degree 1 the explicit span of x_g + x_{g⁻¹}.
pub fn dmr0_space(n: usize, g: &GroupSpec) -> Result<Subspace> {
    check_degree(n)?;
    let coords = LieCoordinates::new(n, g)?;
    if n == 1 {
        return Ok(dmr0_degree_one(&coords, g));
    }
    let dmr = dmr_with(&coords, g);
    Ok(dmr0_with(&coords, &dmr, g))
}

/// dmr₀[n] from its defining conditions, without the degree-1 special case.
pub fn dmr0_space_from_conditions(n: usize, g: &GroupSpec) -> Result<Subspace> {
    check_degree(n)?;
    let coords = LieCoordinates::new(n, g)?;
    let dmr = dmr_with(&coords, g);
    let conds: Vec<(u8, u8)> = parity_conditions(g).into_iter().filter(|&(k, _)| k as usize == n).collect();
    if conds.is_empty() {
        return Ok(dmr);
    }
    Ok(impose(&coords, &dmr, |psi, _| {
        let star = star_additive(g, psi);
        conds
            .iter()
            .map(|&(k, s)| {
                let a = star.coeff(&YWord::from_letters(&[YLetter::new(k, s)]));
                let b = star.coeff(&YWord::from_letters(&[YLetter::new(k, g.inv(s))]));
                ((k, s), if k % 2 == 0 { &a + &b } else { &a - &b })
            })
            .collect()
    }))
}

/// Values of the coderivation defect of s^Y_{θ(ψ)} on a list of source words.
#[derive(Clone, Debug)]
pub struct StabDefect {
    pub sources: Vec<YWord>,
    pub values: Vec<YTensor2>,
}

impl StabDefect {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn on(&self, w: &YWord) -> Option<&YTensor2> {
        self.sources.iter().position(|s| s == w).map(|i| &self.values[i])
    }
}

/// Evaluates D(w) = (s⊗1 + 1⊗s)Δ*(w) − Δ*(s(w)) for s = s^Y_{θ(ψ)}.
pub(crate) struct DefectEvaluator<'a> {
    g: &'a GroupSpec,
    op: SOperator,
    cache: FxHashMap<YWord, YPoly>,
}

impl<'a> DefectEvaluator<'a> {
    pub(crate) fn new(g: &'a GroupSpec, psi: &XPoly) -> Self {
        Self::for_operator(g, &theta(psi))
    }

    /// Uses s^Y_φ itself, without passing through θ.
    pub(crate) fn for_operator(g: &'a GroupSpec, phi: &XPoly) -> Self {
        DefectEvaluator { g, op: SOperator::new(g, phi), cache: FxHashMap::default() }
    }

    fn s(&mut self, w: &YWord) -> YPoly {
        if let Some(v) = self.cache.get(w) {
            return v.clone();
        }
        let v = s_psi_y_unchecked(&self.op, self.g, &YPoly::word(w.clone()));
        self.cache.insert(w.clone(), v.clone());
        v
    }

    /// With `left_depth = k`, only components whose left factor has at most k letters.
    pub(crate) fn defect(&mut self, w: &YWord, left_depth: usize) -> YTensor2 {
        let mut pieces: Vec<(YWord, YWord)> = Vec::new();
        harmonic_word_terms(self.g, w, usize::MAX, &mut |l, r| pieces.push((l.clone(), r.clone())));
        let mut out = YTensor2::zero();
        for (a, b) in &pieces {
            for (sa, c) in self.s(a).iter() {
                if sa.depth() <= left_depth {
                    out.add_term((sa.clone(), b.clone()), c.clone());
                }
            }
            if a.depth() <= left_depth {
                for (sb, c) in self.s(b).iter() {
                    out.add_term((a.clone(), sb.clone()), c.clone());
                }
            }
        }
        let sw = self.s(w);
        for (v, c) in sw.iter() {
            let neg = -c;
            harmonic_word_terms(self.g, v, left_depth, &mut |l, r| out.add_term((l.clone(), r.clone()), neg.clone()));
        }
        out
    }
}

/// (s⊗1 + 1⊗s)Δ*(w) − Δ*(s(w)) for s = s^Y_φ.
pub fn coderivation_defect(g: &GroupSpec, phi: &XPoly, w: &YWord) -> Result<YTensor2> {
    if !phi.constant_term().is_zero() {
        return Err(AlgebraError::ConstantTerm { expected: "0".into(), got: phi.constant_term().to_string() });
    }
    Ok(DefectEvaluator::for_operator(g, phi).defect(w, usize::MAX))
}

/// The defect of ψ on every Y word of degree `m`.
pub fn stab_defect(g: &GroupSpec, psi: &XPoly, m: usize) -> Result<StabDefect> {
    if !psi.is_zero() && !psi.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    if !psi.constant_term().is_zero() {
        return Err(AlgebraError::ConstantTerm { expected: "0".into(), got: psi.constant_term().to_string() });
    }
    let sources = y_words(m, g);
    let mut ev = DefectEvaluator::new(g, psi);
    let values = sources.iter().map(|w| ev.defect(w, usize::MAX)).collect();
    Ok(StabDefect { sources, values })
}

/// K_m ∩ `space` where the defect must vanish on all words of degree `m`.
fn impose_defect(coords: &LieCoordinates, space: &Subspace, g: &GroupSpec, m: usize) -> Subspace {
    let sources = y_words(m, g);
    impose(coords, space, |psi, exact| {
        let depth = if exact { usize::MAX } else { 1 };
        let mut ev = DefectEvaluator::new(g, psi);
        let mut out = Vec::new();
        for (i, w) in sources.iter().enumerate() {
            for ((l, r), c) in ev.defect(w, depth).iter() {
                out.push(((i, l.clone(), r.clone()), c.clone()));
            }
        }
        out
    })
}

/// K_M = {ψ ∈ Lib[n] : the defect vanishes on all Y words of degree 1..=M}.
pub fn stab_space_upper(n: usize, g: &GroupSpec, max_source: usize, cfg: &SolverConfig) -> Result<Subspace> {
    check_degree(n)?;
    if max_source == 0 {
        return Err(AlgebraError::InvalidDegree(0));
    }
    check_cap(g, n + max_source, cfg.basis_cap)?;
    let coords = LieCoordinates::new(n, g)?;
    let mut k = coords.full_space();
    for m in 1..=max_source {
        k = impose_defect(&coords, &k, g, m);
    }
    Ok(k)
}

/// The lower end of the sandwich: dmr₀[n], plus ℚx₀ ⊕ ℚx₁ in degree 1.
fn lower_bound(coords: &LieCoordinates, dmr0: &Subspace) -> Subspace {
    if coords.degree != 1 {
        return dmr0.clone();
    }
    let mut e0 = vec![Rational::zero(); coords.dim()];
    e0[X0 as usize] = Rational::one();
    let mut e1 = vec![Rational::zero(); coords.dim()];
    e1[xg(0) as usize] = Rational::one();
    dmr0.sum(&Subspace::from_spanning(coords.labels.clone(), vec![e0, e1]))
}

/// Certifies stab[n] = dmr₀[n] (⊕ ℚx₀ ⊕ ℚx₁ when n = 1) by shrinking K_M
/// until it meets the lower bound.
pub fn verify_main_theorem(n: usize, g: &GroupSpec, cfg: &SolverConfig) -> Result<DegreeReport> {
    check_degree(n)?;
    check_cap(g, n, cfg.basis_cap)?;
    let coords = LieCoordinates::new(n, g)?;
    let dmr = dmr_with(&coords, g);
    let dmr0 = dmr0_with(&coords, &dmr, g);
    let lower = lower_bound(&coords, &dmr0);
    let cap = cfg.max_source_degree(n);
    let mut k = coords.full_space();
    let mut used = 0;
    let mut certified = false;
    for m in 1..=cap {
        if y_word_count(n + m, g) > cfg.basis_cap {
            if m == 1 {
                check_cap(g, n + m, cfg.basis_cap)?;
            }
            break;
        }
        k = impose_defect(&coords, &k, g, m);
        used = m;
        if !k.contains_subspace(&lower) {
            return Err(AlgebraError::Unsupported(format!(
                "lower bound escaped K_{m} in degree {n} for {g}; this indicates an arithmetic fault"
            )));
        }
        if k.dim() == lower.dim() {
            certified = true;
            break;
        }
    }
    Ok(DegreeReport {
        gamma: g.clone(),
        degree: n,
        dim_lib: coords.dim(),
        dim_dmr: dmr.dim(),
        dim_dmr0: dmr0.dim(),
        dim_stab_upper: k.dim(),
        source_bound_used: used,
        certified,
    })
}

/// Reports for degrees 1..=n_max.
pub fn dimension_table(g: &GroupSpec, n_max: usize, cfg: &SolverConfig) -> Result<Vec<DegreeReport>> {
    check_degree(n_max)?;
    (1..=n_max).map(|n| verify_main_theorem(n, g, cfg)).collect()
}

/// Lib(X_Γ)_dist[n] for cyclic Γ: the common kernel over d | |Γ| of
/// x ↦ p^d_*(x) − i_d^*(x) − ℓ̃_d(x)·x₀.
pub fn dist_subspace(n: usize, g: &GroupSpec) -> Result<Subspace> {
    check_degree(n)?;
    if !g.is_cyclic_spec() {
        return Err(AlgebraError::Unsupported(format!("distribution relations need a cyclic group, got {g}")));
    }
    let big_n = g.factors()[0];
    let coords = LieCoordinates::new(n, g)?;
    let mut maps = Vec::new();
    for d in (1..=big_n).filter(|d| big_n.is_multiple_of(*d)) {
        let sub = GroupSpec::cyclic(big_n / d)?;
        let p = GroupMorphism::from_generator_images(g, &sub, &[GroupElement::new(vec![1 % (big_n / d)])])?;
        let i = GroupMorphism::from_generator_images(&sub, g, &[GroupElement::new(vec![d % big_n])])?;
        // σ^{|Γ|/d} = 1, as group indices (residues) of ℤ/|Γ|.
        let ell: Vec<u8> = g.elements().filter(|&s| g.pow(s, (big_n / d) as u64) == 0).collect();
        maps.push((d, p, i, ell));
    }
    let mut rb = RowBuilder::new();
    for (col, b) in coords.basis.iter().enumerate() {
        for (d, p, i, ell) in &maps {
            let mut v = &phi_push(p, &b.poly)? - &phi_pull(i, &b.poly)?;
            if n == 1 {
                let l: Rational = ell.iter().map(|&s| b.poly.coeff(&XWord::letter(xg(s)))).sum();
                v.add_term(XWord::letter(X0), -l);
            }
            for (w, c) in v.iter() {
                rb.add((*d, w.clone()), col, c.clone());
            }
        }
    }
    Ok(Subspace::kernel(coords.labels.clone(), &rb.finish()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yalg::is_delta_star_primitive;

    fn x(c: u8) -> XPoly {
        XPoly::letter(c)
    }
    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn dmr_degree_two_trivial() {
        let t = GroupSpec::trivial();
        let s = dmr_space(2, &t).unwrap();
        assert_eq!(s.dim(), 1);
        let coords = LieCoordinates::new(2, &t).unwrap();
        assert_eq!(coords.elements(&s)[0], x(X0).commutator(&x(xg(0))));
        assert!(dmr_space(1, &t).unwrap().is_zero());
        assert!(dmr0_space(2, &t).unwrap().is_zero());
        assert!(dmr_space(0, &t).is_err());
    }

    #[test]
    fn dmr_degree_two_z2() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let (p, m) = (xg(0), xg(1));
        let psi1 = x(X0).commutator(&x(p));
        let psi2 = x(X0).commutator(&x(m));
        let psi3 = x(p).commutator(&x(m));
        let want = &(&psi1.scale(&r(2, 1)) - &psi2) + &psi3;
        let coords = LieCoordinates::new(2, &z2).unwrap();
        let s = dmr_space(2, &z2).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&coords.coordinates(&want).unwrap()));
    }

    #[test]
    fn dmr_elements_are_primitive() {
        let z3 = GroupSpec::cyclic(3).unwrap();
        for n in 2..=3 {
            let coords = LieCoordinates::new(n, &z3).unwrap();
            let s = dmr_space(n, &z3).unwrap();
            for e in coords.elements(&s) {
                assert!(crate::xalg::is_lie_element(&e).unwrap());
                assert!(is_delta_star_primitive(&z3, &star_additive(&z3, &e)).unwrap());
            }
        }
    }

    #[test]
    fn degree_one_special_case_matches_conditions() {
        for order in 1..=6 {
            let g = GroupSpec::cyclic(order).unwrap();
            let a = dmr0_space(1, &g).unwrap();
            let b = dmr0_space_from_conditions(1, &g).unwrap();
            assert_eq!(a, b, "order {order}");
            assert_eq!(a.dim(), (order as usize) / 2);
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let coords = LieCoordinates::new(3, &z2).unwrap();
        for (i, b) in coords.basis.iter().enumerate() {
            let v = coords.coordinates(&b.poly).unwrap();
            for (j, c) in v.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert!(i == j || c.is_zero());
            }
        }
        assert!(coords.coordinates(&XPoly::word(XWord::from_codes(&[X0, X0, xg(0)]))).is_err());
    }

    #[test]
    fn defect_of_degree_one_letter() {
        // (Δ*∘s − (s⊗1 + 1⊗s)∘Δ*)(y_{1,α}) = sym(y_{1,g}⊗y_{1,αg⁻¹}) − sym(y_{1,g⁻¹}⊗y_{1,αg}),
        // the negative of the defect as defined here.
        let g = GroupSpec::cyclic(5).unwrap();
        let y = |s: u8| YWord::from_letters(&[YLetter::new(1, s)]);
        let sym = |a: u8, b: u8| {
            &YTensor2::word((y(a), y(b))) + &YTensor2::word((y(b), y(a)))
        };
        for gi in 1..5u8 {
            let d = stab_defect(&g, &x(xg(gi)), 1).unwrap();
            for al in g.elements() {
                let want = &sym(gi, g.mul(al, g.inv(gi))) - &sym(g.inv(gi), g.mul(al, gi));
                assert_eq!(&-d.on(&y(al)).unwrap(), &want, "g={gi} alpha={al}");
            }
        }
        assert!(stab_defect(&g, &x(X0), 2).unwrap().is_zero());
    }

    #[test]
    fn defect_of_bracket_trivial_group() {
        // vanishes on y₁ but not on y₂
        let t = GroupSpec::trivial();
        let br = x(X0).commutator(&x(xg(0)));
        let d1 = stab_defect(&t, &br, 1).unwrap();
        assert!(d1.is_zero());
        let d2 = stab_defect(&t, &br, 2).unwrap();
        let y2 = YWord::from_letters(&[YLetter::new(2, 0)]);
        let on_y2 = d2.on(&y2).unwrap();
        assert!(!on_y2.is_zero());
        assert_eq!(on_y2.coeff(&(y2.clone(), y2.clone())), r(-4, 1));
        assert!(stab_defect(&t, &(&br + &x(X0)), 1).is_err());
    }

    #[test]
    fn filtered_defect_is_a_restriction() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let psi = x(X0).commutator(&x(xg(1)));
        let mut ev = DefectEvaluator::new(&z2, &psi);
        for w in y_words(2, &z2) {
            let full = ev.defect(&w, usize::MAX);
            assert_eq!(ev.defect(&w, 1), full.filter(|(l, _)| l.depth() <= 1));
        }
    }

    #[test]
    fn certification_small_degrees() {
        let cfg = SolverConfig::default();
        let t = GroupSpec::trivial();
        let r1 = verify_main_theorem(1, &t, &cfg).unwrap();
        assert!(r1.certified);
        assert_eq!((r1.dim_lib, r1.dim_dmr0, r1.dim_stab_upper), (2, 0, 2));
        let r2 = verify_main_theorem(2, &t, &cfg).unwrap();
        assert!(r2.certified);
        assert_eq!((r2.dim_dmr, r2.dim_dmr0, r2.dim_stab_upper, r2.source_bound_used), (1, 0, 0, 2));
        let z2 = GroupSpec::cyclic(2).unwrap();
        let r = verify_main_theorem(2, &z2, &cfg).unwrap();
        assert!(r.certified);
        assert_eq!((r.dim_lib, r.dim_dmr, r.dim_dmr0, r.dim_stab_upper, r.source_bound_used), (3, 1, 0, 0, 1));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"gamma":"cyclic:2","degree":2,"dim_lib":3,"dim_dmr":1,"dim_dmr0":0,"dim_stab_upper":0,"source_bound_used":1,"certified":true}"#
        );
    }

    #[test]
    fn monotone_in_source_bound() {
        let z2 = GroupSpec::cyclic(2).unwrap();
        let cfg = SolverConfig::default();
        let k1 = stab_space_upper(3, &z2, 1, &cfg).unwrap();
        let k2 = stab_space_upper(3, &z2, 2, &cfg).unwrap();
        assert!(k1.contains_subspace(&k2));
        assert!(k2.contains_subspace(&dmr0_space(3, &z2).unwrap()));
    }

    #[test]
    fn resource_cap_is_enforced() {
        let z3 = GroupSpec::cyclic(3).unwrap();
        let cfg = SolverConfig { source_bound: SourceBound::Auto, basis_cap: 10 };
        assert!(matches!(verify_main_theorem(3, &z3, &cfg), Err(AlgebraError::Resource(_))));
    }

    #[test]
    fn distribution_spaces() {
        let t = GroupSpec::trivial();
        assert_eq!(dist_subspace(3, &t).unwrap().dim(), 2);
        assert_eq!(dist_subspace(1, &t).unwrap().dim(), 1);
        let z2 = GroupSpec::cyclic(2).unwrap();
        let d1 = dist_subspace(1, &z2).unwrap();
        // d = 1 forces c₊ + c₋ = 0; d = 2 forces a = c₊ and c₋ = 0
        assert_eq!(d1.dim(), 0);
        assert!(dist_subspace(2, &GroupSpec::new(vec![2, 2]).unwrap()).is_err());
    }
}
