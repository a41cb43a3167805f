//! Polynomial extensions: the weight decomposition of `HH(A[t])` and
//! `HC(A[t])`, its iterates, and base change to `Q(u)`.
//!
//! With `T = tQ[t]` and `Ω = Ω¹_{Q[t]}` (both one-dimensional in each
//! positive weight, `t^{j-1} dt` having weight `j`):
//!
//! ```text
//! NHH_n^(i) = HH_n^(i) ⊗ T  ⊕  HH_{n-1}^(i-1) ⊗ Ω
//! NHC_n^(i) = HH_n^(i) ⊗ T
//! N^p HC_n^(i) = ⊕_j HH_{n-j}^(i-j) ⊗ ∧^j Q^{p-1} ⊗ T^{⊗(p-j)} ⊗ Ω^{⊗j}
//! ```

use super::cyclic::{cyclic_hodge, cyclic_homology};
use super::hochschild_homology;
use super::hodge::{hodge_decompose, HodgeDims};
use crate::basis_algebra::{multi_extension, BasisAlgebra, PolyExtension};
use crate::error::{Error, Result};
use crate::field::{binomial, RatFunc, Q};
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradingRow {
    pub n: usize,
    pub i: usize,
    pub weight: u32,
    pub direct: usize,
    pub predicted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradingReport {
    pub nhh: Vec<BigradingRow>,
    pub nhc: Vec<BigradingRow>,
}

impl BigradingReport {
    pub fn mismatches(&self) -> Vec<&BigradingRow> {
        self.nhh
            .iter()
            .chain(&self.nhc)
            .filter(|r| r.direct != r.predicted)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.mismatches().is_empty()
    }
}

fn require_finite(a: &BasisAlgebra<Q>) -> Result<()> {
    if a.bound().is_some() {
        return Err(Error::Unsupported(
            "polynomial extensions need a finite-dimensional algebra".into(),
        ));
    }
    Ok(())
}

fn hodge_at(h: &HodgeDims, n: i64, i: i64) -> usize {
    if n < 0 || i < 0 {
        0
    } else {
        h.dim(n as usize, i as usize)
    }
}

/// Compares the weight-`j` pieces (`1 <= j <= weight_max`) of the Hodge
/// pieces of `HH(A[t])` and `HC(A[t])` with the prediction from `HH(A)`.
pub fn weighted_polynomial_extension(
    a: &BasisAlgebra<Q>,
    n_max: usize,
    weight_max: u32,
) -> Result<BigradingReport> {
    require_finite(a)?;
    let base = hodge_decompose(a, n_max)?;
    let ext = PolyExtension::new(a, weight_max);
    let hh = hodge_decompose(&ext.algebra, n_max)?;
    let hc = cyclic_hodge(&ext.algebra, n_max)?;
    let mut report = BigradingReport {
        nhh: Vec::new(),
        nhc: Vec::new(),
    };
    for j in 1..=weight_max {
        for (n, hc_n) in hc[j as usize].iter().enumerate().take(n_max + 1) {
            for (i, &hc_ni) in hc_n.iter().enumerate().take(n + 1) {
                let (ni, ii) = (n as i64, i as i64);
                report.nhh.push(BigradingRow {
                    n,
                    i,
                    weight: j,
                    direct: hh.weight_dim(j as usize, n, i),
                    predicted: hodge_at(&base, ni, ii) + hodge_at(&base, ni - 1, ii - 1),
                });
                report.nhc.push(BigradingRow {
                    n,
                    i,
                    weight: j,
                    direct: hc_ni,
                    predicted: hodge_at(&base, ni, ii),
                });
            }
        }
    }
    Ok(report)
}

/// `dim N^p HC_n^(i)` in any multi-weight with all coordinates positive,
/// by iterating the `NHH` rule `p - 1` times.
pub fn iterated_nhc(base: &HodgeDims, p: usize, n: usize, i: usize) -> usize {
    fn nq_hh(base: &HodgeDims, q: usize, n: i64, i: i64) -> usize {
        if q == 0 {
            return hodge_at(base, n, i);
        }
        nq_hh(base, q - 1, n, i) + nq_hh(base, q - 1, n - 1, i - 1)
    }
    assert!(p >= 1);
    nq_hh(base, p - 1, n as i64, i as i64)
}

/// The same dimension from the closed formula with `∧^j Q^{p-1}`.
pub fn closed_form_nhc(base: &HodgeDims, p: usize, n: usize, i: usize) -> usize {
    (0..p)
        .map(|j| {
            let mult = binomial(p as u64 - 1, j as u64)
                .to_usize()
                .expect("small binomial");
            mult * hodge_at(base, n as i64 - j as i64, i as i64 - j as i64)
        })
        .sum()
}

/// `(p, n, i)` triples where the iterated and closed forms disagree.
pub fn check_iterated(base: &HodgeDims, p_max: usize) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for p in 1..=p_max {
        for n in 0..=base.top {
            for i in 0..=n {
                if iterated_nhc(base, p, n, i) != closed_form_nhc(base, p, n, i) {
                    bad.push((p, n, i));
                }
            }
        }
    }
    bad
}

/// `(n, direct, predicted)` for `N²HC_n` in bidegree `(1, 1)`, computed
/// directly as `HC_n(A[t1,t2])_2 - 2 HC_n(A[t])_2`.
pub fn n2hc_direct(a: &BasisAlgebra<Q>, n_max: usize) -> Result<Vec<(usize, usize, usize)>> {
    require_finite(a)?;
    let base = hochschild_homology(a, n_max)?;
    let two = cyclic_homology(&multi_extension(a, 2, 2), n_max)?;
    let one = cyclic_homology(&PolyExtension::new(a, 2).algebra, n_max)?;
    Ok((0..=n_max)
        .map(|n| {
            let direct = two.hc[2][n] - 2 * one.hc[2][n];
            let predicted = base.total(n) + if n >= 1 { base.total(n - 1) } else { 0 };
            (n, direct, predicted)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethRow {
    pub n: usize,
    /// `dim_Q HH_n(A)`
    pub over_q: usize,
    /// `dim_F HH_n(A_F / F)` from the bar complex over `F = Q(u)`.
    pub over_f: usize,
    /// `dim_F HH_n(A_F / Q)` via `HH(A_F/F) ⊗_F Ω_{F/Q}`.
    pub over_f_absolute: usize,
    /// Stable weight-piece dimension of `HH_n(A[u])` (weights 1 and 2).
    pub stable_direct: [usize; 2],
    /// `HH_n(A) + HH_{n-1}(A)`
    pub predicted: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub rows: Vec<KunnethRow>,
}

impl KunnethReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| {
            r.over_f == r.over_q
                && r.over_f_absolute == r.predicted
                && r.stable_direct.iter().all(|&d| d == r.predicted)
        })
    }
}

/// `HH_n(A ⊗ Q(u) / Q) ≅ HH_n(A) ⊗ Q(u) ⊕ HH_{n-1}(A) ⊗ Q(u) du`, checked
/// by two independent routes.
pub fn kunneth_base_change(a: &BasisAlgebra<Q>, n_max: usize) -> Result<KunnethReport> {
    require_finite(a)?;
    let over_q = hochschild_homology(a, n_max)?;
    let af: BasisAlgebra<RatFunc> = a.extend_scalars();
    let over_f = hochschild_homology(&af, n_max)?;
    let ext = PolyExtension::new(a, 2);
    let direct = hochschild_homology(&ext.algebra, n_max)?;
    let rows = (0..=n_max)
        .map(|n| {
            let prev = |d: &super::HochschildDims| if n >= 1 { d.total(n - 1) } else { 0 };
            KunnethRow {
                n,
                over_q: over_q.total(n),
                over_f: over_f.total(n),
                over_f_absolute: over_f.total(n) + prev(&over_f),
                stable_direct: [direct.by_weight[1][n], direct.by_weight[2][n]],
                predicted: over_q.total(n) + prev(&over_q),
            }
        })
        .collect();
    Ok(KunnethReport { rows })
}

/// Hodge-graded base change: `dim HH_n^(i)(A_F/Q) = HH_n^(i)(A_F/F) + HH_{n-1}^(i-1)(A_F/F)`,
/// with the second summand carrying `du`. Returns `dims[n][i]`.
pub fn hodge_over_rational_functions(a: &BasisAlgebra<Q>, n_max: usize) -> Result<Vec<Vec<usize>>> {
    require_finite(a)?;
    let af: BasisAlgebra<RatFunc> = a.extend_scalars();
    let h = hodge_decompose(&af, n_max)?;
    Ok((0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    hodge_at(&h, n as i64, i as i64) + hodge_at(&h, n as i64 - 1, i as i64 - 1)
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::tests::algebra;

    #[test]
    fn ground_field_extension() {
        let a = algebra("ring Q[x]/(x)");
        let r = weighted_polynomial_extension(&a, 1, 3).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches());
        let nhh1: Vec<usize> = r
            .nhh
            .iter()
            .filter(|row| row.n == 1 && row.i == 1)
            .map(|row| row.direct)
            .collect();
        assert_eq!(nhh1, [1, 1, 1]);
        let nhc: Vec<(usize, usize)> = r
            .nhc
            .iter()
            .filter(|row| row.weight == 2)
            .map(|row| (row.n, row.direct))
            .collect();
        assert_eq!(nhc, [(0, 1), (1, 0), (1, 0)]);
    }

    #[test]
    fn dual_numbers_extension() {
        let a = algebra("ring Q[x]/(x^2)");
        let r = weighted_polynomial_extension(&a, 2, 3).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches());
    }

    #[test]
    fn iterated_formula() {
        let a = algebra("ring Q[x]/(x^2)");
        let base = hodge_decompose(&a, 3).unwrap();
        assert!(check_iterated(&base, 3).is_empty());
        // p = 2: HH_n^(i) + HH_{n-1}^(i-1)
        assert_eq!(closed_form_nhc(&base, 2, 1, 1), 1 + 2);
    }

    #[test]
    fn second_iterate_direct() {
        let a = algebra("ring Q[x]/(x^2)");
        for (n, direct, predicted) in n2hc_direct(&a, 1).unwrap() {
            assert_eq!(direct, predicted, "n = {n}");
        }
    }

    #[test]
    fn kunneth_for_ground_field_and_dual_numbers() {
        let q = kunneth_base_change(&algebra("ring Q[x]/(x)"), 1).unwrap();
        assert!(q.passed());
        assert_eq!(
            q.rows.iter().map(|r| r.over_f_absolute).collect::<Vec<_>>(),
            [1, 1]
        );
        let d = kunneth_base_change(&algebra("ring Q[x]/(x^2)"), 3).unwrap();
        assert!(d.passed(), "{:?}", d.rows);
        assert_eq!(
            d.rows.iter().map(|r| r.over_f_absolute).collect::<Vec<_>>(),
            [2, 3, 2, 2]
        );
    }
}
