//! Finite model of the kernel group `K = T(n)·⟨ι⟩`.
//!
//! Elements are pairs `(t, ε)` acting on the torus as `x ↦ εx + t`, with
//! `t` an n-torsion translation class and `ε ∈ {+1, −1}`; `ε = −1` carries
//! the inversion involution. The pair is a normal form: `|K| = 2n^4`, the
//! translations form a normal subgroup, and every element outside it is an
//! involution.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("malformed element `{input}`: {reason}")]
    MalformedElement { input: String, reason: String },
}

/// The sign component: `Minus` marks the inversion-type coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        matches!(self, Sign::Minus)
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A class in `(Z/n)^4`, stored as canonical residues in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionElement {
    coords: [u64; 4],
    modulus: u64,
}

impl TorsionElement {
    pub fn new(coords: [u64; 4], modulus: u64) -> Result<Self, GroupError> {
        if modulus == 0 {
            return Err(GroupError::ZeroModulus);
        }
        Ok(TorsionElement {
            coords: coords.map(|c| c % modulus),
            modulus,
        })
    }

    pub fn zero(modulus: u64) -> Result<Self, GroupError> {
        Self::new([0; 4], modulus)
    }

    pub fn coords(&self) -> [u64; 4] {
        self.coords
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coords == [0; 4]
    }

    pub fn add(&self, other: &TorsionElement) -> Result<TorsionElement, GroupError> {
        let n = self.same_modulus(other)?;
        let mut coords = [0u64; 4];
        for (out, (a, b)) in coords
            .iter_mut()
            .zip(self.coords.iter().zip(other.coords.iter()))
        {
            *out = (a + b) % n;
        }
        Ok(TorsionElement { coords, modulus: n })
    }

    pub fn neg(&self) -> TorsionElement {
        let n = self.modulus;
        TorsionElement {
            coords: self.coords.map(|c| (n - c) % n),
            modulus: n,
        }
    }

    /// Order of the class in `(Z/n)^4`.
    pub fn order(&self) -> u64 {
        arith::torsion_order(self)
    }

    /// The divisor `d = n / order`.
    pub fn codegree(&self) -> u64 {
        arith::torsion_codegree(self)
    }

    fn same_modulus(&self, other: &TorsionElement) -> Result<u64, GroupError> {
        if self.modulus != other.modulus {
            return Err(GroupError::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(self.modulus)
    }
}

impl fmt::Display for TorsionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4] = self.coords;
        write!(f, "{a1},{a2},{a3},{a4}")
    }
}

impl Serialize for TorsionElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// One element of `K` in normal form `(translation, sign)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AutElement {
    translation: TorsionElement,
    sign: Sign,
}

impl AutElement {
    pub fn new(translation: TorsionElement, sign: Sign) -> Self {
        AutElement { translation, sign }
    }

    pub fn identity(modulus: u64) -> Result<Self, GroupError> {
        Ok(AutElement::new(TorsionElement::zero(modulus)?, Sign::Plus))
    }

    /// The inversion-type element with trivial translation part.
    pub fn inversion(modulus: u64) -> Result<Self, GroupError> {
        Ok(AutElement::new(TorsionElement::zero(modulus)?, Sign::Minus))
    }

    pub fn translation(&self) -> &TorsionElement {
        &self.translation
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn modulus(&self) -> u64 {
        self.translation.modulus()
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && self.translation.is_zero()
    }

    pub fn is_pure_translation(&self) -> bool {
        self.sign == Sign::Plus
    }

    /// Composition of the affine maps `x ↦ εx + t`:
    /// `(t, ε)∘(t', ε') = (t + εt', εε')`.
    pub fn compose(&self, other: &AutElement) -> Result<AutElement, GroupError> {
        let carried = match self.sign {
            Sign::Plus => other.translation.clone(),
            Sign::Minus => other.translation.neg(),
        };
        Ok(AutElement {
            translation: self.translation.add(&carried)?,
            sign: self.sign * other.sign,
        })
    }

    /// `(t, ε)^{-1} = (−εt, ε)`; inversion-type elements are self-inverse.
    pub fn inverse(&self) -> AutElement {
        match self.sign {
            Sign::Plus => AutElement {
                translation: self.translation.neg(),
                sign: Sign::Plus,
            },
            Sign::Minus => self.clone(),
        }
    }

    /// Least `k >= 1` with `g^k = id`: the torsion order for pure
    /// translations, 2 for everything else.
    pub fn order(&self) -> u64 {
        match self.sign {
            Sign::Plus => self.translation.order(),
            Sign::Minus => 2,
        }
    }

    /// Parses the textual syntax `a1,a2,a3,a4` with optional `,iota`
    /// suffix, e.g. `1,0,2,0,iota`. Coordinates are reduced mod `modulus`.
    pub fn parse(input: &str, modulus: u64) -> Result<AutElement, GroupError> {
        let malformed = |reason: &str| GroupError::MalformedElement {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = input.split(',').map(str::trim).collect();
        let (coord_parts, sign) = match parts.len() {
            4 => (&parts[..4], Sign::Plus),
            5 if parts[4] == "iota" => (&parts[..4], Sign::Minus),
            5 => return Err(malformed("fifth field must be `iota`")),
            _ => return Err(malformed("expected `a1,a2,a3,a4` or `a1,a2,a3,a4,iota`")),
        };
        let mut coords = [0u64; 4];
        for (slot, text) in coords.iter_mut().zip(coord_parts) {
            *slot = text
                .parse::<u64>()
                .map_err(|_| malformed(&format!("`{text}` is not a nonnegative integer")))?;
        }
        Ok(AutElement::new(TorsionElement::new(coords, modulus)?, sign))
    }
}

impl fmt::Display for AutElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.translation)?;
        if self.sign.is_minus() {
            write!(f, ",iota")?;
        }
        Ok(())
    }
}

impl Serialize for AutElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Iterates `(Z/n)^4` in lexicographic coordinate order.
struct CoordIter {
    modulus: u64,
    next: Option<[u64; 4]>,
}

impl CoordIter {
    fn new(modulus: u64) -> Self {
        CoordIter {
            modulus,
            next: Some([0; 4]),
        }
    }
}

impl Iterator for CoordIter {
    type Item = [u64; 4];

    fn next(&mut self) -> Option<[u64; 4]> {
        let current = self.next?;
        let mut bumped = current;
        self.next = None;
        for slot in bumped.iter_mut().rev() {
            *slot += 1;
            if *slot < self.modulus {
                self.next = Some(bumped);
                break;
            }
            *slot = 0;
        }
        Some(current)
    }
}

/// All `2n^4` elements of `K`, each exactly once: the translation block in
/// lexicographic coordinate order, then the inversion-type block in the
/// same order.
pub fn enumerate_kernel_group(
    modulus: u64,
) -> Result<impl Iterator<Item = AutElement>, GroupError> {
    if modulus == 0 {
        return Err(GroupError::ZeroModulus);
    }
    Ok([Sign::Plus, Sign::Minus].into_iter().flat_map(move |sign| {
        CoordIter::new(modulus).map(move |coords| {
            AutElement::new(
                TorsionElement {
                    coords,
                    modulus,
                },
                sign,
            )
        })
    }))
}

/// Iterates the nonzero classes of `(Z/n)^4` in lexicographic order.
pub fn enumerate_nonzero_torsion(
    modulus: u64,
) -> Result<impl Iterator<Item = TorsionElement>, GroupError> {
    if modulus == 0 {
        return Err(GroupError::ZeroModulus);
    }
    Ok(CoordIter::new(modulus)
        .map(move |coords| TorsionElement { coords, modulus })
        .filter(|t| !t.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn t(coords: [u64; 4], n: u64) -> TorsionElement {
        TorsionElement::new(coords, n).unwrap()
    }

    fn aut(coords: [u64; 4], sign: Sign, n: u64) -> AutElement {
        AutElement::new(t(coords, n), sign)
    }

    #[test]
    fn coordinates_are_canonical_residues() {
        assert_eq!(t([7, 4, 3, 12], 4).coords(), [3, 0, 3, 0]);
        assert_eq!(TorsionElement::new([1; 4], 0), Err(GroupError::ZeroModulus));
    }

    #[test]
    fn compose_identity_law() {
        let id = AutElement::identity(7).unwrap();
        for g in [aut([1, 2, 3, 4], Sign::Plus, 7), aut([5, 0, 6, 1], Sign::Minus, 7)] {
            assert_eq!(id.compose(&g).unwrap(), g);
            assert_eq!(g.compose(&id).unwrap(), g);
        }
    }

    #[test]
    fn inversion_type_elements_are_involutions() {
        let id = AutElement::identity(6).unwrap();
        for a1 in 0..6 {
            for a2 in 0..6 {
                let g = aut([a1, a2, 5, 2], Sign::Minus, 6);
                assert_eq!(g.compose(&g).unwrap(), id);
                assert_eq!(g.order(), 2);
                assert_eq!(g.inverse(), g);
            }
        }
    }

    #[test]
    fn compose_example_mod_4() {
        // (1,0,0,0),iota composed with (0,1,0,0): slot 2 picks up -1 = 3 mod 4
        let g = aut([1, 0, 0, 0], Sign::Minus, 4);
        let h = aut([0, 1, 0, 0], Sign::Plus, 4);
        assert_eq!(g.compose(&h).unwrap(), aut([1, 3, 0, 0], Sign::Minus, 4));
    }

    #[test]
    fn compose_rejects_modulus_mismatch() {
        let g = aut([1, 0, 0, 0], Sign::Plus, 4);
        let h = aut([1, 0, 0, 0], Sign::Plus, 5);
        assert_eq!(
            g.compose(&h),
            Err(GroupError::ModulusMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn inverse_examples() {
        let id = AutElement::identity(5).unwrap();
        assert_eq!(id.inverse(), id);
        let g = aut([2, 0, 0, 0], Sign::Plus, 5);
        assert_eq!(g.inverse(), aut([3, 0, 0, 0], Sign::Plus, 5));
        assert_eq!(g.inverse().compose(&g).unwrap(), id);
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(AutElement::identity(6).unwrap().order(), 1);
        assert_eq!(aut([1, 0, 0, 0], Sign::Plus, 6).order(), 6);
        assert_eq!(aut([0, 0, 0, 0], Sign::Minus, 6).order(), 2);
    }

    #[test]
    fn element_order_matches_iterated_composition() {
        let id = AutElement::identity(4).unwrap();
        for g in enumerate_kernel_group(4).unwrap() {
            let mut power = g.clone();
            let mut k = 1;
            while power != id {
                power = power.compose(&g).unwrap();
                k += 1;
                assert!(k <= 8, "order should divide 2n");
            }
            assert_eq!(g.order(), k, "g = {g}");
        }
    }

    #[test]
    fn enumeration_counts_and_block_layout() {
        let one: Vec<_> = enumerate_kernel_group(1).unwrap().collect();
        assert_eq!(one.len(), 2);
        assert!(one[0].is_identity());
        assert_eq!(one[1], aut([0, 0, 0, 0], Sign::Minus, 1));

        assert_eq!(enumerate_kernel_group(2).unwrap().count(), 32);
        assert_eq!(enumerate_kernel_group(3).unwrap().count(), 162);

        let all: Vec<_> = enumerate_kernel_group(2).unwrap().collect();
        // translation block first, lexicographic within each block
        assert!(all[..16].iter().all(AutElement::is_pure_translation));
        assert!(all[16..].iter().all(|g| g.sign().is_minus()));
        assert_eq!(all[1], aut([0, 0, 0, 1], Sign::Plus, 2));
        let unique: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), 32);
    }

    #[test]
    fn translation_subgroup_is_normal_exhaustively() {
        for n in 1..=4u64 {
            let translations: Vec<_> = enumerate_kernel_group(n)
                .unwrap()
                .filter(AutElement::is_pure_translation)
                .collect();
            assert_eq!(translations.len() as u64, n.pow(4));
            for g in enumerate_kernel_group(n).unwrap() {
                for t in &translations {
                    let conj = g
                        .compose(t)
                        .unwrap()
                        .compose(&g.inverse())
                        .unwrap();
                    assert!(conj.is_pure_translation());
                }
            }
        }
    }

    #[test]
    fn is_pure_translation_examples() {
        assert!(AutElement::identity(3).unwrap().is_pure_translation());
        assert!(!AutElement::inversion(3).unwrap().is_pure_translation());
        assert!(aut([1, 2, 0, 0], Sign::Plus, 3).is_pure_translation());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let g = AutElement::parse("1,0,2,0,iota", 4).unwrap();
        assert_eq!(g, aut([1, 0, 2, 0], Sign::Minus, 4));
        assert_eq!(g.to_string(), "1,0,2,0,iota");
        let h = AutElement::parse(" 3 , 1 , 0 , 2 ", 4).unwrap();
        assert_eq!(h.to_string(), "3,1,0,2");

        assert!(AutElement::parse("1,2,3", 4).is_err());
        assert!(AutElement::parse("1,2,3,4,flip", 4).is_err());
        assert!(AutElement::parse("1,2,x,4", 4).is_err());
        assert!(AutElement::parse("-1,2,3,4", 4).is_err());
    }
}
