//! Cyclic homology from the normalized `(b, B)` bicomplex, the SBI sequence,
//! and Hodge pieces `HC^(i)` (column `k` carries `e^(i-k)`).

use super::hodge::WeightPiece;
use super::HochschildComplex;
use crate::basis_algebra::BasisAlgebra;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{kernel_of_images, rank_of, LinearMap, SVec, Subquotient};

/// Total complex of one weight piece. `Tot_n = ⊕_k C_{n-2k}`, column `k`.
pub struct MixedPiece<F> {
    pub piece: WeightPiece<F>,
    /// `connes[m]: C_m -> C_{m+1}` for `m < top`.
    pub connes: Vec<LinearMap<F>>,
    /// `offsets[n][k]`: start of column `k` inside `Tot_n`.
    offsets: Vec<Vec<usize>>,
    tot_dims: Vec<usize>,
    /// `d[n]: Tot_n -> Tot_{n-1}`.
    d: Vec<LinearMap<F>>,
    top: usize,
}

/// One failed identity in the SBI check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbiFailure {
    pub weight: u32,
    pub spot: String,
}

impl<F: Field> MixedPiece<F> {
    pub fn new(hc: &HochschildComplex<'_, F>, w: u32, with_idempotents: bool) -> Result<Self> {
        let piece = WeightPiece::new(hc, w, with_idempotents)?;
        let top = hc.top();
        let connes: Vec<LinearMap<F>> = (0..top)
            .map(|m| hc.connes_between(m, &piece.bases[m], &piece.bases[m + 1]))
            .collect();
        let mut offsets = Vec::new();
        let mut tot_dims = Vec::new();
        for n in 0..=top {
            let mut off = Vec::new();
            let mut acc = 0;
            for k in 0..=n / 2 {
                off.push(acc);
                acc += piece.bases[n - 2 * k].len();
            }
            offsets.push(off);
            tot_dims.push(acc);
        }
        let mut mp = MixedPiece {
            piece,
            connes,
            offsets,
            tot_dims,
            d: Vec::new(),
            top,
        };
        mp.d = (0..=top).map(|n| mp.total_differential(n)).collect();
        Ok(mp)
    }

    fn total_differential(&self, n: usize) -> LinearMap<F> {
        if n == 0 {
            return LinearMap::zero(self.tot_dims[0], 0);
        }
        let mut cols = Vec::with_capacity(self.tot_dims[n]);
        for k in 0..=n / 2 {
            let m = n - 2 * k;
            for j in 0..self.piece.bases[m].len() {
                let mut v = SVec::zero();
                if m >= 1 {
                    let col = self.piece.b[m].col(j);
                    v = v.add(&col.reindex(|r| Some(self.offsets[n - 1][k] + r)));
                }
                if k >= 1 {
                    let col = self.connes[m].col(j);
                    v = v.add(&col.reindex(|r| Some(self.offsets[n - 1][k - 1] + r)));
                }
                cols.push(v);
            }
        }
        LinearMap::new(self.tot_dims[n], self.tot_dims[n - 1], cols)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn tot_dim(&self, n: usize) -> usize {
        self.tot_dims[n]
    }

    /// `d: Tot_n -> Tot_{n-1}`.
    pub fn total_d(&self, n: usize) -> &LinearMap<F> {
        &self.d[n]
    }

    /// `HC_n^(i)` as a subquotient of `Tot_n`. Needs idempotents.
    pub fn hc_hodge(&self, n: usize, i: i64) -> Subquotient<F> {
        let p = self.hodge_projection(n, i);
        let q = self.hodge_projection(n + 1, i);
        let cycles = kernel_of_images(
            &p.cols()
                .iter()
                .map(|c| self.d[n].apply(c))
                .collect::<Vec<_>>(),
        );
        let cycles: Vec<SVec<F>> = cycles
            .iter()
            .map(|c| crate::linalg::combine(c, p.cols()))
            .collect();
        let boundaries: Vec<SVec<F>> = q.cols().iter().map(|c| self.d[n + 1].apply(c)).collect();
        Subquotient::new(&cycles, &boundaries)
    }

    /// Matrix `Tot_n(self) -> Tot_n(target)` of a map given on chain tuples,
    /// applied column by column. Tuples missing from the target basis
    /// (degenerate ones) are dropped.
    pub fn tuple_map(
        &self,
        n: usize,
        target: &MixedPiece<F>,
        f: impl Fn(&[usize]) -> Vec<(Vec<usize>, F)>,
    ) -> LinearMap<F> {
        let mut cols = Vec::with_capacity(self.tot_dims[n]);
        for k in 0..=n / 2 {
            let m = n - 2 * k;
            for t in &self.piece.bases[m].tuples {
                let terms = f(t).into_iter().filter_map(|(u, c)| {
                    target.piece.bases[m]
                        .position(&u)
                        .map(|pos| (target.offsets[n][k] + pos, c))
                });
                cols.push(SVec::from_terms(terms));
            }
        }
        LinearMap::new(self.tot_dims[n], target.tot_dims[n], cols)
    }

    /// Degrees with complete data: `n + 1 <= top`.
    pub fn certified(&self, n: usize) -> bool {
        n < self.top
    }

    pub fn hh(&self, n: usize) -> Subquotient<F> {
        let cycles = cycles_of(&self.piece.b[n], self.piece.bases[n].len());
        Subquotient::new(&cycles, self.piece.b[n + 1].cols())
    }

    pub fn hc(&self, n: usize) -> Subquotient<F> {
        let cycles = cycles_of(&self.d[n], self.tot_dims[n]);
        Subquotient::new(&cycles, self.d[n + 1].cols())
    }

    /// Projection onto the `HC^(i)` subcomplex in total degree `n`.
    fn hodge_projection(&self, n: usize, i: i64) -> LinearMap<F> {
        let mut cols = Vec::with_capacity(self.tot_dims[n]);
        for k in 0..=n / 2 {
            let m = n - 2 * k;
            let e = self.piece.idempotent(m, i - k as i64);
            for j in 0..self.piece.bases[m].len() {
                cols.push(e.col(j).reindex(|r| Some(self.offsets[n][k] + r)));
            }
        }
        LinearMap::new(self.tot_dims[n], self.tot_dims[n], cols)
    }

    /// `dim HC_n^(i)`, for `n < top`. Needs idempotents.
    pub fn hc_hodge_dim(&self, n: usize, i: i64) -> usize {
        let p = self.hodge_projection(n, i);
        let q = self.hodge_projection(n + 1, i);
        let r = p.rank();
        let out = rank_of(p.cols().iter().map(|c| self.d[n].apply(c)));
        let inc = rank_of(q.cols().iter().map(|c| self.d[n + 1].apply(c)));
        r - out - inc
    }

    /// `I: C_n -> Tot_n` (column 0).
    fn i_chain(&self, v: &SVec<F>) -> SVec<F> {
        v.clone()
    }

    /// `S: Tot_n -> Tot_{n-2}` (drop column 0, shift the rest).
    fn s_chain(&self, n: usize, v: &SVec<F>) -> SVec<F> {
        let shift = self.piece.bases[n].len();
        v.reindex(|r| r.checked_sub(shift))
    }

    /// `B: Tot_{n-1} -> C_n` (Connes' operator on column 0).
    fn b_chain(&self, n: usize, v: &SVec<F>) -> SVec<F> {
        let len = self.piece.bases[n - 1].len();
        let head = v.reindex(|r| (r < len).then_some(r));
        self.connes[n - 1].apply(&head)
    }

    /// Matrices of `I_n: HH_n -> HC_n`, `S_n: HC_n -> HC_{n-2}` and
    /// `B_n: HC_{n-1} -> HH_n` on homology, for `n < top`.
    pub fn sbi_maps(&self, n: usize) -> (LinearMap<F>, Option<LinearMap<F>>, Option<LinearMap<F>>) {
        let hh = self.hh(n);
        let hc = self.hc(n);
        let i = induce(|v| self.i_chain(v), &hh, &hc);
        let s = (n >= 2).then(|| induce(|v| self.s_chain(n, v), &hc, &self.hc(n - 2)));
        let b = (n >= 1).then(|| induce(|v| self.b_chain(n, v), &self.hc(n - 1), &hh));
        (i, s, b)
    }

    /// Exactness of `HC_{n-1} -B-> HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1}`
    /// at the three middle spots, for every certified `n`.
    pub fn check_sbi(&self) -> Vec<SbiFailure> {
        let mut failures = Vec::new();
        let w = self.piece.weight;
        let mut fail = |spot: String| failures.push(SbiFailure { weight: w, spot });
        for n in 0..self.top {
            let (i, s, b) = self.sbi_maps(n);
            let hh_dim = i.src_dim();
            let hc_dim = i.dst_dim();
            let rb = b.as_ref().map_or(0, LinearMap::rank);
            if let Some(b) = &b {
                if !i.compose(b).is_zero() {
                    fail(format!("I∘B at HH_{n}"));
                }
            }
            if rb + i.rank() != hh_dim {
                fail(format!("exactness at HH_{n}"));
            }
            let rs = s.as_ref().map_or(0, LinearMap::rank);
            if let Some(s) = &s {
                if !s.compose(&i).is_zero() {
                    fail(format!("S∘I at HC_{n}"));
                }
            }
            if i.rank() + rs != hc_dim {
                fail(format!("exactness at HC_{n}"));
            }
            if n >= 2 {
                let (_, _, b_prev) = self.sbi_maps(n - 1);
                let b_prev = b_prev.expect("n - 1 >= 1");
                let s = s.as_ref().expect("n >= 2");
                if !b_prev.compose(s).is_zero() {
                    fail(format!("B∘S at HC_{}", n - 2));
                }
                if rs + b_prev.rank() != s.dst_dim() {
                    fail(format!("exactness at HC_{}", n - 2));
                }
            } else if n == 1 {
                // HC_{-1} = 0, so B_0 from HC_{-1} is zero and the spot HC_{n-2}
                // is trivially exact
            }
        }
        failures
    }

    /// Whether `S: HC_n -> HC_{n-2}` vanishes for every certified `n`.
    pub fn s_vanishes(&self) -> bool {
        (2..self.top).all(|n| self.sbi_maps(n).1.is_none_or(|s| s.is_zero()))
    }
}

fn cycles_of<F: Field>(d: &LinearMap<F>, dim: usize) -> Vec<SVec<F>> {
    if d.dst_dim() == 0 {
        (0..dim).map(SVec::unit).collect()
    } else {
        kernel_of_images(d.cols())
    }
}

fn induce<F: Field>(
    f: impl Fn(&SVec<F>) -> SVec<F>,
    src: &Subquotient<F>,
    dst: &Subquotient<F>,
) -> LinearMap<F> {
    crate::linalg::induced_map(f, src, dst).expect("chain map sends cycles to cycles")
}

/// Per-weight cyclic homology with SBI data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicDims {
    /// `hc[w][n]` for `n <= top`.
    pub hc: Vec<Vec<usize>>,
    pub hh: Vec<Vec<usize>>,
    pub top: usize,
    pub sbi_failures: Vec<SbiFailure>,
    /// Weights `w >= 1` on which `S` fails to vanish.
    pub s_nonzero_weights: Vec<u32>,
}

impl CyclicDims {
    pub fn hc_total(&self, n: usize) -> usize {
        self.hc.iter().map(|d| d[n]).sum()
    }

    pub fn hh_total(&self, n: usize) -> usize {
        self.hh.iter().map(|d| d[n]).sum()
    }
}

/// `HC_0..HC_n` and `HH_0..HH_n` per weight, with the SBI sequence checked.
pub fn cyclic_homology<F: Field>(algebra: &BasisAlgebra<F>, n: usize) -> Result<CyclicDims> {
    let hc = HochschildComplex::new(algebra, n + 1);
    let graded = algebra.is_connected();
    let mut out = CyclicDims {
        hc: Vec::new(),
        hh: Vec::new(),
        top: n,
        sbi_failures: Vec::new(),
        s_nonzero_weights: Vec::new(),
    };
    for w in hc.weights() {
        let mp = MixedPiece::new(&hc, w, false)?;
        out.hc.push((0..=n).map(|k| mp.hc(k).dim()).collect());
        out.hh.push((0..=n).map(|k| mp.hh(k).dim()).collect());
        out.sbi_failures.extend(mp.check_sbi());
        if graded && w >= 1 && !mp.s_vanishes() {
            out.s_nonzero_weights.push(w);
        }
    }
    Ok(out)
}

/// `dims[w][n][i]` of `HC_n^(i)`.
pub fn cyclic_hodge<F: Field>(algebra: &BasisAlgebra<F>, n: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let hc = HochschildComplex::new(algebra, n + 1);
    hc.weights()
        .into_iter()
        .map(|w| {
            let mp = MixedPiece::new(&hc, w, true)?;
            Ok((0..=n)
                .map(|k| (0..=k).map(|i| mp.hc_hodge_dim(k, i as i64)).collect())
                .collect())
        })
        .collect()
}
