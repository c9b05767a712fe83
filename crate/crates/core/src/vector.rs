//! Coordinate vectors over F_p.

use std::fmt;

use crate::error::{Error, Result};
use crate::fp;

/// A vector over F_p with a fixed coordinate length.
///
/// Every coordinate is a residue in `[0, p)` and `p` is validated prime at
/// construction. The length is the ambient dimension of whichever space the
/// vector lives in (the base space M or the wedge space built on it).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u64,
    coords: Vec<u64>,
}

impl FpVector {
    pub fn new(p: u64, coords: Vec<u64>) -> Result<Self> {
        fp::validate_prime(p)?;
        let coords = coords.into_iter().map(|c| c % p).collect();
        Ok(Self { p, coords })
    }

    pub fn zero(p: u64, len: usize) -> Result<Self> {
        Self::new(p, vec![0; len])
    }

    /// The standard basis vector e_i.
    pub fn unit(p: u64, len: usize, i: usize) -> Result<Self> {
        if i >= len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: i,
            });
        }
        let mut coords = vec![0; len];
        coords[i] = 1;
        Self::new(p, coords)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> u64 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Checks that `other` shares this vector's modulus and length.
    pub fn check_compatible(&self, other: &FpVector) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| fp::add(a, b, self.p))
            .collect();
        FpVector { p: self.p, coords }
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        assert_eq!(self.p, other.p, "modulus mismatch");
        assert_eq!(self.len(), other.len(), "length mismatch");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| fp::sub(a, b, self.p))
            .collect();
        FpVector { p: self.p, coords }
    }

    pub fn scale(&self, c: u64) -> FpVector {
        let coords = self
            .coords
            .iter()
            .map(|&a| fp::mul(a, c, self.p))
            .collect();
        FpVector { p: self.p, coords }
    }

    /// Parses the comma-separated literal form, e.g. `1,0,1`.
    pub fn parse(text: &str, p: u64, expected_len: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty vector literal".into()));
        }
        let mut coords = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let c: u64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue `{tok}` in vector literal")))?;
            if c >= p {
                return Err(Error::Parse(format!("residue {c} out of range for p={p}")));
            }
            coords.push(c);
        }
        if coords.len() != expected_len {
            return Err(Error::DimensionMismatch {
                expected: expected_len,
                got: coords.len(),
            });
        }
        Self::new(p, coords)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_reduces_mod_p() {
        let v = FpVector::new(3, vec![4, 5, 6]).unwrap();
        assert_eq!(v.coords(), &[1, 2, 0]);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            FpVector::new(4, vec![0, 1]).unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn arithmetic() {
        let u = FpVector::new(2, vec![1, 1, 0]).unwrap();
        let v = FpVector::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(u.add(&v).coords(), &[1, 0, 1]);
        assert_eq!(u.sub(&v).coords(), &[1, 0, 1]);
        assert!(u.sub(&u).is_zero());
        assert_eq!(u.scale(0).coords(), &[0, 0, 0]);
    }

    #[test]
    fn literal_round_trip() {
        let v = FpVector::parse("1,0,2", 3, 3).unwrap();
        assert_eq!(v.to_string(), "1,0,2");
        assert!(FpVector::parse("1,0,3", 3, 3).is_err());
        assert!(FpVector::parse("1,0", 3, 3).is_err());
        assert!(FpVector::parse("x,0,0", 3, 3).is_err());
    }

    #[test]
    fn compatibility_checks() {
        let u = FpVector::new(2, vec![1, 0]).unwrap();
        let v = FpVector::new(3, vec![1, 0]).unwrap();
        let w = FpVector::new(2, vec![1, 0, 0]).unwrap();
        assert!(matches!(
            u.check_compatible(&v),
            Err(Error::ModulusMismatch { .. })
        ));
        assert!(matches!(
            u.check_compatible(&w),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
