//! Finite Boolean algebras as fields of atom subsets.

use crate::ba::BaError;

/// The finite Boolean algebra with `atoms` atoms; elements are
/// bitmasks over the atoms, so the lattice laws hold by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteBa {
    atoms: usize,
}

impl FiniteBa {
    pub fn new(atoms: usize) -> Result<Self, BaError> {
        if atoms == 0 || atoms > 32 {
            return Err(BaError::InvalidElement(format!(
                "atom count {atoms} out of supported range 1..=32"
            )));
        }
        Ok(FiniteBa { atoms })
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        (1u64 << self.atoms) - 1
    }

    pub fn contains(&self, mask: u64) -> bool {
        mask <= self.one()
    }

    pub fn check(&self, mask: u64) -> Result<u64, BaError> {
        if self.contains(mask) {
            Ok(mask)
        } else {
            Err(BaError::InvalidElement(format!(
                "mask {mask:#b} out of range for {} atoms",
                self.atoms
            )))
        }
    }

    pub fn meet(&self, a: u64, b: u64) -> u64 {
        a & b
    }

    pub fn join(&self, a: u64, b: u64) -> u64 {
        a | b
    }

    pub fn complement(&self, a: u64) -> u64 {
        !a & self.one()
    }

    pub fn leq(&self, a: u64, b: u64) -> bool {
        a & b == a
    }

    pub fn lt(&self, a: u64, b: u64) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn atom_masks(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.atoms).map(|i| 1u64 << i)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        0..=self.one()
    }

    pub fn size(&self) -> u64 {
        1u64 << self.atoms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_basics() {
        let b = FiniteBa::new(3).unwrap();
        assert_eq!(b.one(), 0b111);
        assert_eq!(b.complement(0b101), 0b010);
        assert!(b.leq(0b001, 0b011));
        assert!(!b.leq(0b100, 0b011));
        assert_eq!(b.elements().count(), 8);
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(FiniteBa::new(0).is_err());
        assert!(FiniteBa::new(33).is_err());
    }
}
