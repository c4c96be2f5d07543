//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are addressed internally by a dense index in mixed radix (first
//! factor most significant), so index order is lexicographic residue order and
//! index 0 is the identity.

use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;

/// Largest group order accepted. Letters are stored as bytes.
pub const MAX_ORDER: usize = 254;

#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct GroupElement {
    pub residues: Vec<u32>,
}

impl GroupElement {
    pub fn new(residues: Vec<u32>) -> Self {
        GroupElement { residues }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// Γ ≅ ℤ/N₁ × … × ℤ/N_k with precomputed multiplication and inverse tables.
#[derive(Clone)]
pub struct GroupSpec {
    factors: Vec<u32>,
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}
impl Eq for GroupSpec {}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({})", self)
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self, AlgebraError> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(AlgebraError::InvalidGroup(format!("{factors:?}")));
        }
        let order = factors.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n as usize));
        let order = match order {
            Some(o) if o <= MAX_ORDER => o,
            _ => {
                return Err(AlgebraError::InvalidGroup(format!(
                    "order of {factors:?} exceeds {MAX_ORDER}"
                )))
            }
        };
        let mut g = GroupSpec { factors, order, mul: vec![0; order * order], inv: vec![0; order] };
        for a in 0..order {
            let ra = g.residues_of(a as u8);
            for b in 0..order {
                let rb = g.residues_of(b as u8);
                let sum: Vec<u32> =
                    ra.iter().zip(&rb).zip(&g.factors).map(|((x, y), n)| (x + y) % n).collect();
                g.mul[a * order + b] = g.index_of_residues(&sum);
            }
            let neg: Vec<u32> = ra.iter().zip(&g.factors).map(|(x, n)| (n - x) % n).collect();
            g.inv[a] = g.index_of_residues(&neg);
        }
        Ok(g)
    }

    pub fn cyclic(n: u32) -> Result<Self, AlgebraError> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self::new(vec![1]).expect("trivial group")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic_spec(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn identity(&self) -> u8 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// `a^k` (written multiplicatively).
    pub fn pow(&self, a: u8, k: u64) -> u8 {
        let mut acc = 0u8;
        for _ in 0..k % self.order as u64 {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.order as u16).map(|i| i as u8)
    }

    pub fn residues_of(&self, idx: u8) -> Vec<u32> {
        let mut rest = idx as u32;
        let mut out = vec![0; self.factors.len()];
        for (slot, &n) in out.iter_mut().zip(&self.factors).rev() {
            *slot = rest % n;
            rest /= n;
        }
        out
    }

    fn index_of_residues(&self, r: &[u32]) -> u8 {
        r.iter().zip(&self.factors).fold(0u32, |acc, (x, n)| acc * n + x) as u8
    }

    pub fn element(&self, idx: u8) -> GroupElement {
        GroupElement::new(self.residues_of(idx))
    }

    pub fn index(&self, g: &GroupElement) -> Result<u8, AlgebraError> {
        if g.residues.len() != self.factors.len()
            || g.residues.iter().zip(&self.factors).any(|(r, n)| r >= n)
        {
            return Err(AlgebraError::GroupMismatch(format!("{g} is not an element of {self}")));
        }
        Ok(self.index_of_residues(&g.residues))
    }

    /// Residue rendering used in letters: `1`, `1.2`.
    pub fn label(&self, idx: u8) -> String {
        self.element(idx).to_string()
    }

    pub fn parse_label(&self, s: &str) -> Result<u8, AlgebraError> {
        let residues: Result<Vec<u32>, _> = s.split('.').map(|p| p.trim().parse::<u32>()).collect();
        let residues =
            residues.map_err(|_| AlgebraError::Parse(format!("bad group element {s:?}")))?;
        self.index(&GroupElement::new(residues))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.len() == 1 {
            write!(f, "cyclic:{}", self.factors[0])
        } else {
            let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
            write!(f, "product:{}", parts.join("x"))
        }
    }
}

impl FromStr for GroupSpec {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(format!("bad group description {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let factors: Vec<u32> = match kind {
            "cyclic" => vec![rest.trim().parse().map_err(|_| bad())?],
            "product" => rest
                .split('x')
                .map(|p| p.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?,
            _ => return Err(bad()),
        };
        GroupSpec::new(factors)
    }
}

impl serde::Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A homomorphism Γ → Γ′ given by the images of the standard generators.
#[derive(Clone, Debug)]
pub struct GroupMorphism {
    pub source: GroupSpec,
    pub target: GroupSpec,
    table: Vec<u8>,
}

impl GroupMorphism {
    /// Generator `i` of the source is the unit vector in factor `i`.
    pub fn from_generator_images(
        source: &GroupSpec,
        target: &GroupSpec,
        images: &[GroupElement],
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.factors.len() {
            return Err(AlgebraError::InvalidMorphism(format!(
                "expected {} generator images, got {}",
                source.factors.len(),
                images.len()
            )));
        }
        let imgs: Vec<u8> = images.iter().map(|g| target.index(g)).collect::<Result<_, _>>()?;
        for (i, (&img, &n)) in imgs.iter().zip(&source.factors).enumerate() {
            if target.pow(img, n as u64) != 0 {
                return Err(AlgebraError::InvalidMorphism(format!(
                    "image of generator {i} has order not dividing {n}"
                )));
            }
        }
        let table = source
            .elements()
            .map(|g| {
                let r = source.residues_of(g);
                r.iter().zip(&imgs).fold(0u8, |acc, (&k, &img)| target.mul(acc, target.pow(img, k as u64)))
            })
            .collect();
        Ok(GroupMorphism { source: source.clone(), target: target.clone(), table })
    }

    pub fn identity(g: &GroupSpec) -> Self {
        GroupMorphism { source: g.clone(), target: g.clone(), table: g.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, g: u8) -> u8 {
        self.table[g as usize]
    }

    pub fn kernel_size(&self) -> usize {
        self.table.iter().filter(|&&t| t == 0).count()
    }

    pub fn fiber(&self, t: u8) -> impl Iterator<Item = u8> + '_ {
        self.source.elements().filter(move |&g| self.apply(g) == t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_follow_residue_arithmetic() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        let a = g.index(&GroupElement::new(vec![1, 2])).unwrap();
        let b = g.index(&GroupElement::new(vec![1, 2])).unwrap();
        assert_eq!(g.element(g.mul(a, b)).residues, vec![0, 1]);
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        assert_eq!(g.label(a), "1.2");
        assert_eq!(g.parse_label("1.2").unwrap(), a);
    }

    #[test]
    fn parse_and_render() {
        let g: GroupSpec = "product:2x3".parse().unwrap();
        assert_eq!(g.to_string(), "product:2x3");
        assert_eq!("cyclic:5".parse::<GroupSpec>().unwrap().order(), 5);
        assert!("cyclic:0".parse::<GroupSpec>().is_err());
        assert!("dihedral:4".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn morphism_validity() {
        let z4 = GroupSpec::cyclic(4).unwrap();
        let z2 = GroupSpec::cyclic(2).unwrap();
        let ok = GroupMorphism::from_generator_images(&z4, &z2, &[GroupElement::new(vec![1])]).unwrap();
        assert_eq!(ok.kernel_size(), 2);
        assert!(GroupMorphism::from_generator_images(&z2, &z4, &[GroupElement::new(vec![1])]).is_err());
        assert!(GroupMorphism::from_generator_images(&z2, &z4, &[GroupElement::new(vec![2])]).is_ok());
    }
}
