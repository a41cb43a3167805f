//! Finite chain complexes of based vector spaces.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_of_images, LinearMap, SVec, Subquotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `d_m : C_m -> C_{m-1}`
    Homological,
    /// `d^m : C^m -> C^{m+1}`
    Cohomological,
}

#[derive(Clone, Debug)]
pub struct ChainComplex<F> {
    lo: i64,
    direction: Direction,
    dims: Vec<usize>,
    /// `maps[k]` leaves `C_{lo+k}`; maps that leave the range must be zero.
    maps: Vec<LinearMap<F>>,
}

/// Homology at one index.
#[derive(Clone, Debug)]
pub struct Homology<F> {
    pub index: i64,
    pub cycles: Vec<SVec<F>>,
    pub boundaries: Vec<SVec<F>>,
    pub classes: Subquotient<F>,
}

impl<F: Field> Homology<F> {
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    pub fn representatives(&self) -> &[SVec<F>] {
        self.classes.representatives()
    }
}

impl<F: Field> ChainComplex<F> {
    /// `maps[k]` is the differential leaving index `lo + k`. Composites are
    /// checked to vanish.
    pub fn new(lo: i64, direction: Direction, maps: Vec<LinearMap<F>>) -> Result<Self> {
        let dims: Vec<usize> = maps.iter().map(LinearMap::src_dim).collect();
        let step: i64 = match direction {
            Direction::Homological => -1,
            Direction::Cohomological => 1,
        };
        for (k, d) in maps.iter().enumerate() {
            let target = k as i64 + step;
            let expected = if (0..dims.len() as i64).contains(&target) {
                dims[target as usize]
            } else {
                0
            };
            if d.dst_dim() != expected && !(expected == 0 && d.is_zero()) {
                return Err(Error::Invalid(format!(
                    "differential at {} has target dimension {}, expected {}",
                    lo + k as i64,
                    d.dst_dim(),
                    expected
                )));
            }
            if (0..dims.len() as i64).contains(&target) {
                let next = &maps[target as usize];
                if !next.compose(d).is_zero() {
                    return Err(Error::NonzeroComposite(lo + k as i64));
                }
            }
        }
        Ok(ChainComplex {
            lo,
            direction,
            dims,
            maps,
        })
    }

    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.lo + self.dims.len() as i64 - 1)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn dim(&self, index: i64) -> usize {
        self.slot(index).map_or(0, |k| self.dims[k])
    }

    fn slot(&self, index: i64) -> Option<usize> {
        let k = index - self.lo;
        (0..self.dims.len() as i64)
            .contains(&k)
            .then_some(k as usize)
    }

    pub fn differential(&self, index: i64) -> Option<&LinearMap<F>> {
        self.slot(index).map(|k| &self.maps[k])
    }

    pub fn homology(&self, index: i64) -> Result<Homology<F>> {
        let (lo, hi) = self.range();
        let Some(k) = self.slot(index) else {
            return Err(Error::OutOfRange { index, lo, hi });
        };
        let out = &self.maps[k];
        let cycles = if out.dst_dim() == 0 {
            (0..self.dims[k]).map(SVec::unit).collect()
        } else {
            kernel_of_images(out.cols())
        };
        let incoming = match self.direction {
            Direction::Homological => index + 1,
            Direction::Cohomological => index - 1,
        };
        let boundaries: Vec<SVec<F>> = self
            .differential(incoming)
            .map_or(Vec::new(), |d| d.cols().to_vec());
        let classes = Subquotient::new(&cycles, &boundaries);
        Ok(Homology {
            index,
            cycles,
            boundaries,
            classes,
        })
    }

    /// Dimensions of all homology groups, lowest index first.
    pub fn betti(&self) -> Vec<usize> {
        let (lo, hi) = self.range();
        (lo..=hi)
            .map(|m| self.homology(m).expect("in range").dim())
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.betti().iter().all(|&b| b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};

    #[test]
    fn zero_map_between_lines() {
        let c: ChainComplex<Q> = ChainComplex::new(
            0,
            Direction::Homological,
            vec![LinearMap::zero(1, 0), LinearMap::zero(1, 1)],
        )
        .unwrap();
        assert_eq!(c.betti(), [1, 1]);
    }

    #[test]
    fn identity_is_exact() {
        let c: ChainComplex<Q> = ChainComplex::new(
            0,
            Direction::Homological,
            vec![LinearMap::zero(1, 0), LinearMap::identity(1)],
        )
        .unwrap();
        assert_eq!(c.betti(), [0, 0]);
        assert!(c.is_exact());
    }

    #[test]
    fn nonzero_composite_rejected() {
        let err = ChainComplex::<Q>::new(
            0,
            Direction::Cohomological,
            vec![
                LinearMap::identity(1),
                LinearMap::identity(1),
                LinearMap::zero(1, 0),
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonzeroComposite(0));
    }

    #[test]
    fn out_of_range_homology() {
        let c: ChainComplex<Q> =
            ChainComplex::new(2, Direction::Homological, vec![LinearMap::zero(1, 0)]).unwrap();
        assert_eq!(
            c.homology(3).unwrap_err(),
            Error::OutOfRange {
                index: 3,
                lo: 2,
                hi: 2
            }
        );
    }

    /// Koszul complex of (x, y) over Q[x,y], restricted to total degree `deg`.
    fn koszul_in_degree(deg: u32) -> ChainComplex<Q> {
        // K_0 = R_deg, K_1 = R_{deg-1} e1 ⊕ R_{deg-1} e2, K_2 = R_{deg-2} e12
        let mons = |d: i64| -> Vec<(u32, u32)> {
            if d < 0 {
                vec![]
            } else {
                (0..=d as u32).map(|a| (a, d as u32 - a)).collect()
            }
        };
        let d = deg as i64;
        let (m0, m1, m2) = (mons(d), mons(d - 1), mons(d - 2));
        let idx = |ms: &Vec<(u32, u32)>, m: (u32, u32)| ms.iter().position(|&x| x == m).unwrap();
        // d(e1) = x, d(e2) = y
        let d1 = LinearMap::new(
            2 * m1.len(),
            m0.len(),
            (0..2 * m1.len())
                .map(|c| {
                    let (a, b) = m1[c % m1.len()];
                    let target = if c < m1.len() { (a + 1, b) } else { (a, b + 1) };
                    SVec::unit(idx(&m0, target))
                })
                .collect(),
        );
        // d(e12) = x e2 - y e1
        let d2 = LinearMap::new(
            m2.len(),
            2 * m1.len(),
            m2.iter()
                .map(|&(a, b)| {
                    SVec::from_terms([
                        (m1.len() + idx(&m1, (a + 1, b)), q(1)),
                        (idx(&m1, (a, b + 1)), q(-1)),
                    ])
                })
                .collect(),
        );
        ChainComplex::new(
            0,
            Direction::Homological,
            vec![LinearMap::zero(m0.len(), 0), d1, d2],
        )
        .unwrap()
    }

    #[test]
    fn koszul_complex_of_regular_sequence() {
        for deg in 0..=3 {
            let c = koszul_in_degree(deg);
            let h1 = c.homology(1).unwrap().dim();
            let h2 = c.homology(2).unwrap().dim();
            assert_eq!((h1, h2), (0, 0), "degree {deg}");
            assert_eq!(c.homology(0).unwrap().dim(), usize::from(deg == 0));
        }
    }
}
