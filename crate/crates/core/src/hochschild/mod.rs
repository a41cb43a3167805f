//! Hochschild and cyclic homology of algebras given by structure constants.
//!
//! Chains are split by total weight; the boundary and Connes' operator both
//! preserve it, so each weight piece is a finite subcomplex. By default the
//! normalized complex `A ⊗ Ā^{⊗m}` is used.

pub mod bigrading;
pub mod cyclic;
pub mod eulerian;
pub mod hodge;
pub mod relative;

use std::collections::HashMap;

use crate::basis_algebra::BasisAlgebra;
use crate::chain::{ChainComplex, Direction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{LinearMap, SVec};

/// Default cap on the dimension of a single chain space.
pub const DEFAULT_BUDGET: usize = 400_000;

/// Basis of one chain space: tuples `(a_0, …, a_m)` of algebra basis indices.
#[derive(Clone, Debug, Default)]
pub struct ChainBasis {
    pub tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ChainBasis {
    fn from_tuples(tuples: Vec<Vec<usize>>) -> Self {
        let index = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        ChainBasis { tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }
}

/// The Hochschild complex of `algebra` in simplicial degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct HochschildComplex<'a, F> {
    algebra: &'a BasisAlgebra<F>,
    top: usize,
    normalized: bool,
    budget: usize,
    by_weight: Vec<Vec<usize>>,
    min_bar_weight: u32,
}

impl<'a, F: Field> HochschildComplex<'a, F> {
    pub fn new(algebra: &'a BasisAlgebra<F>, top: usize) -> Self {
        let maxw = algebra.max_weight() as usize;
        let mut by_weight = vec![Vec::new(); maxw + 1];
        for i in 0..algebra.dim() {
            by_weight[algebra.weight(i) as usize].push(i);
        }
        let min_bar_weight = (1..algebra.dim())
            .map(|i| algebra.weight(i))
            .min()
            .unwrap_or(0);
        HochschildComplex {
            algebra,
            top,
            normalized: true,
            budget: DEFAULT_BUDGET,
            by_weight,
            min_bar_weight,
        }
    }

    /// The full (unnormalized) bar complex `A^{⊗(m+1)}`.
    pub fn unnormalized(mut self) -> Self {
        self.normalized = false;
        self.min_bar_weight = 0;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn algebra(&self) -> &BasisAlgebra<F> {
        self.algebra
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Weights whose subcomplexes are exact models (all of them for a finite
    /// algebra; those within the bound for a truncated one).
    pub fn weights(&self) -> Vec<u32> {
        let maxw = self.algebra.max_weight();
        let reach = match self.algebra.bound() {
            Some(b) => b,
            None => maxw * (self.top as u32 + 2),
        };
        (0..=reach).collect()
    }

    /// Chain basis in degree `m` and total weight `w`.
    pub fn chain_basis(&self, m: usize, w: u32) -> Result<ChainBasis> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        self.enumerate(m + 1, w, &mut cur, &mut out)?;
        Ok(ChainBasis::from_tuples(out))
    }

    fn enumerate(
        &self,
        len: usize,
        left: u32,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        if cur.len() == len {
            if left == 0 {
                if out.len() >= self.budget {
                    return Err(Error::Budget {
                        needed: out.len() + 1,
                        budget: self.budget,
                    });
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let need_after = (len - cur.len() - 1) as u32 * self.min_bar_weight;
        for (wt, elems) in self.by_weight.iter().enumerate() {
            let wt = wt as u32;
            if wt + need_after > left {
                break;
            }
            for &e in elems {
                if self.normalized && !cur.is_empty() && e == 0 {
                    continue;
                }
                cur.push(e);
                self.enumerate(len, left - wt, cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }

    /// Expands the tuple with positions `k` and `k+1` merged (or, for
    /// `k == m`, with `a_m a_0` in front) into `target`.
    fn merge_into(
        &self,
        t: &[usize],
        k: usize,
        sign: &F,
        target: &ChainBasis,
        terms: &mut Vec<(usize, F)>,
    ) {
        let m = t.len() - 1;
        let (prod, rest): (&SVec<F>, Vec<usize>) = if k < m {
            let mut rest = t.to_vec();
            rest.remove(k + 1);
            (self.algebra.mul_basis(t[k], t[k + 1]), rest)
        } else {
            (self.algebra.mul_basis(t[m], t[0]), t[..m].to_vec())
        };
        let slot = if k < m { k } else { 0 };
        for (p, c) in prod.entries() {
            if self.normalized && slot > 0 && *p == 0 {
                continue;
            }
            let mut nt = rest.clone();
            nt[slot] = *p;
            let idx = target.position(&nt).expect("boundary preserves weight");
            terms.push((idx, c.mul(sign)));
        }
    }

    /// Hochschild boundary `b: C_m -> C_{m-1}` on the weight-`w` piece.
    pub fn boundary_between(&self, m: usize, src: &ChainBasis, dst: &ChainBasis) -> LinearMap<F> {
        if m == 0 {
            return LinearMap::zero(src.len(), 0);
        }
        let cols = src
            .tuples
            .iter()
            .map(|t| {
                let mut terms = Vec::new();
                for k in 0..=m {
                    let sign = if k % 2 == 0 { F::one() } else { F::one().neg() };
                    self.merge_into(t, k, &sign, dst, &mut terms);
                }
                SVec::from_terms(terms)
            })
            .collect();
        LinearMap::new(src.len(), dst.len(), cols)
    }

    pub fn boundary(&self, m: usize, w: u32) -> Result<LinearMap<F>> {
        let src = self.chain_basis(m, w)?;
        if m == 0 {
            return Ok(LinearMap::zero(src.len(), 0));
        }
        let dst = self.chain_basis(m - 1, w)?;
        Ok(self.boundary_between(m, &src, &dst))
    }

    /// Connes' operator `B: C_m -> C_{m+1}` (normalized complex only).
    pub fn connes_between(&self, m: usize, src: &ChainBasis, dst: &ChainBasis) -> LinearMap<F> {
        assert!(
            self.normalized,
            "Connes' operator is implemented on normalized chains"
        );
        let cols = src
            .tuples
            .iter()
            .map(|t| {
                let mut terms = Vec::new();
                if t[0] != 0 {
                    for k in 0..=m {
                        let sign = if (m * k).is_multiple_of(2) {
                            F::one()
                        } else {
                            F::one().neg()
                        };
                        let mut nt = Vec::with_capacity(m + 2);
                        nt.push(0);
                        nt.extend_from_slice(&t[k..]);
                        nt.extend_from_slice(&t[..k]);
                        let idx = dst.position(&nt).expect("B preserves weight");
                        terms.push((idx, sign));
                    }
                }
                SVec::from_terms(terms)
            })
            .collect();
        LinearMap::new(src.len(), dst.len(), cols)
    }

    /// The weight-`w` subcomplex `C_0 <- C_1 <- … <- C_top`.
    pub fn complex(&self, w: u32) -> Result<ChainComplex<F>> {
        let bases = (0..=self.top)
            .map(|m| self.chain_basis(m, w))
            .collect::<Result<Vec<_>>>()?;
        let maps = (0..=self.top)
            .map(|m| {
                if m == 0 {
                    LinearMap::zero(bases[0].len(), 0)
                } else {
                    self.boundary_between(m, &bases[m], &bases[m - 1])
                }
            })
            .collect();
        ChainComplex::new(0, Direction::Homological, maps)
    }

    /// `HH_m` dimensions for `m = 0..top-1`, in weight `w`. The top degree
    /// is left out since it lacks incoming boundaries.
    pub fn homology_dims(&self, w: u32) -> Result<Vec<usize>> {
        let c = self.complex(w)?;
        Ok((0..self.top as i64)
            .map(|m| c.homology(m).expect("in range").dim())
            .collect())
    }
}

/// Per-weight Hochschild homology dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildDims {
    /// `dims[w][m]`
    pub by_weight: Vec<Vec<usize>>,
    /// Highest degree computed.
    pub top: usize,
}

impl HochschildDims {
    pub fn total(&self, m: usize) -> usize {
        self.by_weight.iter().map(|d| d[m]).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.top).map(|m| self.total(m)).collect()
    }
}

/// Dimensions of `HH_0..HH_n` for every exact weight piece.
pub fn hochschild_homology<F: Field>(
    algebra: &BasisAlgebra<F>,
    n: usize,
) -> Result<HochschildDims> {
    let hc = HochschildComplex::new(algebra, n + 1);
    let by_weight = hc
        .weights()
        .into_iter()
        .map(|w| hc.homology_dims(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(HochschildDims { by_weight, top: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinitelyPresentedAlgebra;
    use crate::field::Q;

    pub(crate) fn algebra(src: &str) -> BasisAlgebra<Q> {
        FinitelyPresentedAlgebra::parse(src)
            .unwrap()
            .basis_algebra(None)
            .unwrap()
    }

    #[test]
    fn ground_field() {
        let a = algebra("ring Q[x]/(x)");
        assert_eq!(hochschild_homology(&a, 3).unwrap().totals(), [1, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers() {
        let a = algebra("ring Q[x]/(x^2)");
        assert_eq!(
            hochschild_homology(&a, 4).unwrap().totals(),
            [2, 1, 1, 1, 1]
        );
    }

    #[test]
    fn etale_algebra() {
        let a = algebra("ring Q[x]/(x^2 - 1)");
        assert_eq!(hochschild_homology(&a, 3).unwrap().totals(), [2, 0, 0, 0]);
    }

    #[test]
    fn normalized_agrees_with_full_bar_complex() {
        for src in [
            "ring Q[x]/(x^2)",
            "ring Q[x]/(x^3)",
            "ring Q[x,y]/(x^2, x*y, y^2)",
            "ring Q[x]/(x^2 - 1)",
        ] {
            let a = algebra(src);
            let norm = hochschild_homology(&a, 3).unwrap().totals();
            let full = HochschildComplex::new(&a, 4).unnormalized();
            let mut totals = vec![0; 4];
            for w in full.weights() {
                for (m, d) in full.homology_dims(w).unwrap().into_iter().enumerate() {
                    totals[m] += d;
                }
            }
            assert_eq!(norm, totals, "{src}");
        }
    }

    #[test]
    fn hypersurface_formula_for_truncated_polynomials() {
        // A = Q[x]/(x^k): HH_odd = A/(f'), HH_even>0 = ann(f'), both of dim k-1
        for k in 2..=4 {
            let a = algebra(&format!("ring Q[x]/(x^{k})"));
            let dims = hochschild_homology(&a, 4).unwrap().totals();
            assert_eq!(dims, [k, k - 1, k - 1, k - 1, k - 1]);
        }
    }

    #[test]
    fn boundary_squares_to_zero_on_fat_point() {
        let a = algebra("ring Q[x,y]/(x^2, x*y, y^2)");
        let hc = HochschildComplex::new(&a, 4);
        for w in hc.weights() {
            assert!(hc.complex(w).is_ok());
        }
    }

    #[test]
    fn budget_guard() {
        let a = algebra("ring Q[x,y]/(x^2, x*y, y^2)");
        let hc = HochschildComplex::new(&a, 6).unnormalized().with_budget(10);
        assert!(matches!(hc.complex(0), Err(Error::Budget { .. })));
    }
}
