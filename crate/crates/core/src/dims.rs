use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tol;

/// Local dimensions of an n-partite system.
///
/// Subsystems are numbered from 0. The flat (row-major) index puts
/// subsystem 0 in the most significant position, so the flat index of
/// `|a_0 a_1 ... a_{n-1}>` reads like the ket from left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dims {
    local: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Dims {
    /// Builds dims under the default size cap.
    pub fn new(local: Vec<usize>) -> Result<Self> {
        Self::with_cap(local, tol::DEFAULT_MAX_TOTAL)
    }

    pub fn with_cap(local: Vec<usize>, cap: usize) -> Result<Self> {
        if local.is_empty() || local.iter().any(|&d| d < 2) {
            return Err(Error::InvalidDims(local));
        }
        let mut strides = alloc::vec![0; local.len()];
        let mut total: usize = 1;
        for (s, &d) in local.iter().enumerate().rev() {
            strides[s] = total;
            total = match total.checked_mul(d) {
                Some(t) if t <= cap => t,
                _ => {
                    return Err(Error::TooLarge {
                        total: local.iter().fold(1usize, |a, &d| a.saturating_mul(d)),
                        cap,
                    })
                }
            };
        }
        Ok(Dims {
            local,
            strides,
            total,
        })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Self::new(alloc::vec![2; n]).expect("qubit register within cap")
    }

    pub fn n(&self) -> usize {
        self.local.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn local(&self) -> &[usize] {
        &self.local
    }

    pub fn dim(&self, site: usize) -> usize {
        self.local[site]
    }

    pub fn stride(&self, site: usize) -> usize {
        self.strides[site]
    }

    /// Coordinate of `site` inside the flat index.
    #[inline]
    pub fn coord(&self, flat: usize, site: usize) -> usize {
        (flat / self.strides[site]) % self.local[site]
    }

    pub fn check_site(&self, site: usize) -> Result<()> {
        if site < self.n() {
            Ok(())
        } else {
            Err(Error::SubsystemOutOfRange { site, n: self.n() })
        }
    }

    pub fn flat(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: coords.len(),
            });
        }
        let mut flat = 0;
        for (site, (&a, &d)) in coords.iter().zip(&self.local).enumerate() {
            if a >= d {
                return Err(Error::CoordinateOutOfRange { site, value: a, dim: d });
            }
            flat += a * self.strides[site];
        }
        Ok(flat)
    }

    pub fn coords(&self, flat: usize) -> Result<Vec<usize>> {
        if flat >= self.total {
            return Err(Error::FlatOutOfRange {
                index: flat,
                total: self.total,
            });
        }
        Ok((0..self.n()).map(|s| self.coord(flat, s)).collect())
    }

    pub fn index(&self, flat: usize) -> Result<MultiIndex> {
        Ok(MultiIndex {
            coords: self.coords(flat)?,
            flat,
        })
    }

    pub fn index_of(&self, coords: &[usize]) -> Result<MultiIndex> {
        Ok(MultiIndex {
            flat: self.flat(coords)?,
            coords: coords.to_vec(),
        })
    }

    /// Dims of the listed subsystems, in the given order.
    pub fn restrict(&self, sites: &[usize]) -> Result<Dims> {
        for &s in sites {
            self.check_site(s)?;
        }
        Dims::new(sites.iter().map(|&s| self.local[s]).collect())
    }

    /// Flat-index offsets contributed by every joint configuration of
    /// `sites`, enumerated row-major over those sites.
    ///
    /// Because the flat index is a sum of per-site terms, any full index
    /// splits as `offsets(A)[i] + offsets(B)[j]` for complementary A, B.
    pub fn offsets(&self, sites: &[usize]) -> Vec<usize> {
        let mut out = alloc::vec![0usize];
        for &s in sites {
            let d = self.local[s];
            let st = self.strides[s];
            let mut next = Vec::with_capacity(out.len() * d);
            for &o in &out {
                for a in 0..d {
                    next.push(o + a * st);
                }
            }
            out = next;
        }
        out
    }

    /// Sites not contained in `sites`, ascending.
    pub fn complement(&self, sites: &[usize]) -> Vec<usize> {
        (0..self.n()).filter(|s| !sites.contains(s)).collect()
    }
}

/// A basis label `|a_0 ... a_{n-1}>` together with its flat index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub coords: Vec<usize>,
    pub flat: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn row_major_with_first_site_most_significant() {
        let d = Dims::new(vec![2, 3, 2]).unwrap();
        assert_eq!(d.total(), 12);
        assert_eq!(d.flat(&[1, 0, 0]).unwrap(), 6);
        assert_eq!(d.flat(&[0, 2, 1]).unwrap(), 5);
        assert_eq!(d.coords(11).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn rejects_bad_dims() {
        assert!(matches!(Dims::new(vec![]), Err(Error::InvalidDims(_))));
        assert!(matches!(Dims::new(vec![2, 1]), Err(Error::InvalidDims(_))));
        assert!(matches!(
            Dims::new(vec![2; 13]),
            Err(Error::TooLarge { total: 8192, cap: 4096 })
        ));
        assert!(Dims::with_cap(vec![2; 13], 1 << 13).is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        let d = Dims::new(vec![2, 3]).unwrap();
        assert!(d.flat(&[0, 3]).is_err());
        assert!(d.flat(&[0]).is_err());
        assert!(d.coords(6).is_err());
    }

    #[test]
    fn offsets_split_flat_index() {
        let d = Dims::new(vec![2, 3, 2]).unwrap();
        let a = d.offsets(&[0, 2]);
        let b = d.offsets(&[1]);
        let mut all: Vec<usize> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn coords_flat_round_trip(local in prop::collection::vec(2usize..6, 1..5)) {
            let d = Dims::new(local).unwrap();
            for flat in 0..d.total() {
                let c = d.coords(flat).unwrap();
                prop_assert_eq!(d.flat(&c).unwrap(), flat);
            }
        }
    }
}
