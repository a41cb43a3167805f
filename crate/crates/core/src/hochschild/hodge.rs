//! Hodge decomposition `HH_m = ⊕_i HH_m^(i)` via Eulerian idempotents.

use super::eulerian::EulerianIdempotents;
use super::{ChainBasis, HochschildComplex};
use crate::basis_algebra::BasisAlgebra;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{rank_of, LinearMap};

/// Cached chain data of one weight piece in degrees `0..=top`.
pub struct WeightPiece<F> {
    pub weight: u32,
    pub bases: Vec<ChainBasis>,
    /// `b[m]: C_m -> C_{m-1}` (`b[0]` is zero).
    pub b: Vec<LinearMap<F>>,
    /// `e[m][i]` for `0 <= i <= m`.
    pub e: Vec<Vec<LinearMap<F>>>,
}

impl<F: Field> WeightPiece<F> {
    pub fn new(hc: &HochschildComplex<'_, F>, w: u32, with_idempotents: bool) -> Result<Self> {
        let top = hc.top();
        let bases = (0..=top)
            .map(|m| hc.chain_basis(m, w))
            .collect::<Result<Vec<_>>>()?;
        let b = (0..=top)
            .map(|m| {
                if m == 0 {
                    LinearMap::zero(bases[0].len(), 0)
                } else {
                    hc.boundary_between(m, &bases[m], &bases[m - 1])
                }
            })
            .collect();
        let e = if with_idempotents {
            (0..=top)
                .map(|m| EulerianIdempotents::get(m).matrices(&bases[m]))
                .collect()
        } else {
            Vec::new()
        };
        Ok(WeightPiece {
            weight: w,
            bases,
            b,
            e,
        })
    }

    /// `e_m^(i)`, or zero when `i` lies outside `0..=m`.
    pub fn idempotent(&self, m: usize, i: i64) -> LinearMap<F> {
        let n = self.bases[m].len();
        if i < 0 || i as usize > m {
            LinearMap::zero(n, n)
        } else {
            self.e[m][i as usize].clone()
        }
    }

    /// `dim HH_m^(i)` in this weight, for `m < top`.
    pub fn hodge_dim(&self, m: usize, i: i64) -> usize {
        let e_m = self.idempotent(m, i);
        let e_next = self.idempotent(m + 1, i);
        let r = e_m.rank();
        let out = rank_of(e_m.cols().iter().map(|c| self.b[m].apply(c)));
        let inc = rank_of(e_next.cols().iter().map(|c| self.b[m + 1].apply(c)));
        r - out - inc
    }
}

/// `dims[w][m][i]` with `0 <= i <= m <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDims {
    pub by_weight: Vec<Vec<Vec<usize>>>,
    pub top: usize,
}

impl HodgeDims {
    pub fn dim(&self, m: usize, i: usize) -> usize {
        if i > m {
            return 0;
        }
        self.by_weight.iter().map(|d| d[m][i]).sum()
    }

    pub fn total(&self, m: usize) -> usize {
        (0..=m).map(|i| self.dim(m, i)).sum()
    }

    pub fn weight_dim(&self, w: usize, m: usize, i: usize) -> usize {
        if i > m {
            0
        } else {
            self.by_weight.get(w).map_or(0, |d| d[m][i])
        }
    }
}

/// Hodge pieces of `HH_0..HH_n`.
pub fn hodge_decompose<F: Field>(algebra: &BasisAlgebra<F>, n: usize) -> Result<HodgeDims> {
    let hc = HochschildComplex::new(algebra, n + 1);
    let mut by_weight = Vec::new();
    for w in hc.weights() {
        let piece = WeightPiece::new(&hc, w, true)?;
        by_weight.push(
            (0..=n)
                .map(|m| (0..=m).map(|i| piece.hodge_dim(m, i as i64)).collect())
                .collect(),
        );
    }
    Ok(HodgeDims { by_weight, top: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::hochschild_homology;
    use crate::hochschild::tests::algebra;

    #[test]
    fn degree_one_is_all_first_piece() {
        for src in ["ring Q[x]/(x^2)", "ring Q[x,y]/(x^2, x*y, y^2)"] {
            let a = algebra(src);
            let h = hodge_decompose(&a, 1).unwrap();
            let hh = hochschild_homology(&a, 1).unwrap();
            assert_eq!(h.dim(1, 0), 0);
            assert_eq!(h.dim(1, 1), hh.total(1));
            assert_eq!(h.dim(0, 0), hh.total(0));
        }
    }

    #[test]
    fn dual_numbers_degree_two() {
        let a = algebra("ring Q[x]/(x^2)");
        let h = hodge_decompose(&a, 2).unwrap();
        assert_eq!(h.dim(2, 2), 0);
        assert_eq!(h.dim(2, 1), 1);
    }

    #[test]
    fn pieces_sum_to_total() {
        for src in ["ring Q[x]/(x^3)", "ring Q[x,y]/(x^2, x*y, y^2)"] {
            let a = algebra(src);
            let h = hodge_decompose(&a, 3).unwrap();
            let hh = hochschild_homology(&a, 3).unwrap();
            for m in 0..=3 {
                assert_eq!(h.total(m), hh.total(m), "{src} m = {m}");
            }
        }
    }
}
