//! Typical pieces `TK_n^(i)` of NK-groups for Artinian algebras and
//! numerical-semigroup rings, `N^p K` bookkeeping, and Bass-question verdicts.
//!
//! Assembly, with `Ω^p_cdh` as in [`crate::differentials::omega_cdh`]:
//!
//! ```text
//! TK_n^(i)   = HH_{n-1}^(i-1)                    0 < i < n
//! TK_n^(n)   = ker(Ω^{n-1} -> Ω^{n-1}_cdh)
//! TK_n^(n+1) = coker(Ω^n -> Ω^n_cdh)
//! TK_n^(i)   = 0                                 i >= n + 2
//! ```
//!
//! `NK_n^(i) = TK_n^(i) ⊗ tQ[t]`, so `NK_n` has dimension `Σ_i dim TK_n^(i)`
//! in every positive t-weight.

use serde::{Deserialize, Serialize};

use crate::algebra::FinitelyPresentedAlgebra;
use crate::basis_algebra::BasisAlgebra;
use crate::differentials::{kaehler, omega_cdh, quotient_comparison, CdhForms};
use crate::error::{Error, Result};
use crate::field::{binomial, RatFunc, Q};
use crate::hochschild::bigrading::hodge_over_rational_functions;
use crate::hochschild::hodge::{hodge_decompose, HodgeDims};
use crate::hochschild::relative::relative_hh;
use crate::semigroup::NumericalSemigroup;
use crate::witt_cartier::{CartierModule, RModule};
use num_traits::ToPrimitive;

/// Which case of the assembly produced an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `HH_{n-1}^(i-1)`
    Hochschild,
    /// kernel or cokernel of `Ω^p -> Ω^p_cdh`
    ExactSequence,
    /// higher cdh cohomology, zero on the supported classes
    CdhVanishing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingClass {
    Artinian,
    Curve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDim {
    pub weight: u32,
    pub dim: usize,
}

/// One entry `TK_n^(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypicalPiece {
    pub n: i64,
    pub i: i64,
    pub dim: usize,
    /// Nonzero pieces in the grading of the ring, when it is graded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_weight: Option<Vec<WeightDim>>,
    /// Weight up to which the entry is exact; `None` when exact outright.
    #[serde(default)]
    pub certified_to: Option<u32>,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowTotal {
    pub n: i64,
    pub dim: usize,
    #[serde(default)]
    pub certified_to: Option<u32>,
}

/// `(n, i) -> TK_n^(i)` over a range of `n`, with `i` from 1 to `max(n + 2, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NKTable {
    pub ring: String,
    pub class: RingClass,
    pub n_min: i64,
    pub n_max: i64,
    #[serde(default)]
    pub weight_bound: Option<u32>,
    pub entries: Vec<TypicalPiece>,
    /// `Σ_i dim TK_n^(i)`.
    pub totals: Vec<RowTotal>,
    /// `E_n = Ω^n_cdh / Ω^n` (higher cdh terms vanish here).
    pub e_n: Vec<RowTotal>,
}

fn weakest(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

impl NKTable {
    pub fn get(&self, n: i64, i: i64) -> Option<&TypicalPiece> {
        self.entries.iter().find(|e| e.n == n && e.i == i)
    }

    /// `dim TK_n^(i)`; zero for `i <= 0` and for `i` beyond the stored columns.
    pub fn dim(&self, n: i64, i: i64) -> usize {
        self.get(n, i).map_or(0, |e| e.dim)
    }

    pub fn covers(&self, n: i64) -> bool {
        (self.n_min..=self.n_max).contains(&n)
    }

    pub fn total(&self, n: i64) -> Result<usize> {
        self.row(n).map(|r| r.dim)
    }

    pub fn row(&self, n: i64) -> Result<&RowTotal> {
        self.totals
            .iter()
            .find(|r| r.n == n)
            .ok_or(Error::MissingEntry(n))
    }

    /// `dim NK_n` in t-weights `1..=j_max`.
    pub fn nk_weight_dims(&self, n: i64, j_max: u32) -> Result<Vec<usize>> {
        let d = self.total(n)?;
        Ok(vec![d; j_max as usize])
    }

    /// Highest column index shown.
    pub fn max_i(&self) -> i64 {
        self.entries.iter().map(|e| e.i).max().unwrap_or(1)
    }

    /// `NK_n^(i)` as a Cartier module, `TK_n^(i) ⊗ tQ[t]` in weights `1..=bound`.
    pub fn cartier_module(&self, n: i64, i: i64, bound: u32) -> CartierModule<Q> {
        CartierModule::tensor(&RModule::trivial(self.dim(n, i)), bound)
    }

    fn finish(&mut self) {
        self.totals = (self.n_min..=self.n_max)
            .map(|n| {
                let row: Vec<&TypicalPiece> = self.entries.iter().filter(|e| e.n == n).collect();
                let certified_to = row.iter().fold(None, |acc, e| {
                    if e.dim > 0 || e.certified_to.is_some() {
                        weakest(acc, e.certified_to)
                    } else {
                        acc
                    }
                });
                RowTotal {
                    n,
                    dim: row.iter().map(|e| e.dim).sum(),
                    certified_to,
                }
            })
            .collect();
        self.e_n = (self.n_min..=self.n_max)
            .map(|n| match self.get(n, n + 1) {
                Some(e) => RowTotal {
                    n,
                    dim: e.dim,
                    certified_to: e.certified_to,
                },
                None => RowTotal {
                    n,
                    dim: 0,
                    certified_to: None,
                },
            })
            .collect();
    }
}

fn columns(n: i64) -> std::ops::RangeInclusive<i64> {
    1..=(n + 2).max(1)
}

fn per_weight(dims: impl IntoIterator<Item = (u32, usize)>) -> Vec<WeightDim> {
    dims.into_iter()
        .filter(|(_, d)| *d > 0)
        .map(|(weight, dim)| WeightDim { weight, dim })
        .collect()
}

fn hodge_entry(
    h: &HodgeDims,
    n: i64,
    i: i64,
    graded: bool,
    certified_to: Option<u32>,
) -> TypicalPiece {
    let (m, k) = ((n - 1) as usize, (i - 1) as usize);
    let dim = h.dim(m, k);
    let pw = graded
        .then(|| per_weight((0..h.by_weight.len()).map(|w| (w as u32, h.weight_dim(w, m, k)))));
    TypicalPiece {
        n,
        i,
        dim,
        per_weight: pw,
        certified_to,
        branch: Branch::Hochschild,
        witnesses: Vec::new(),
    }
}

fn vanishing(n: i64, i: i64) -> TypicalPiece {
    TypicalPiece {
        n,
        i,
        dim: 0,
        per_weight: None,
        certified_to: None,
        branch: Branch::CdhVanishing,
        witnesses: Vec::new(),
    }
}

/// Kernel (`kernel = true`) or cokernel of `Ω^p -> Ω^p_cdh`, with witnesses.
fn sequence_entry(
    forms: &CdhForms,
    n: i64,
    i: i64,
    kernel: bool,
    graded: bool,
    certified_to: Option<u32>,
) -> TypicalPiece {
    let mut dims = Vec::new();
    let mut witnesses = Vec::new();
    for w in forms.weights() {
        if kernel {
            let piece = forms.source.piece(w);
            let ker = forms.kernel(w);
            for v in ker.iter().take(4) {
                witnesses.push(forms.source.render_class(&piece, v));
            }
            dims.push((w, ker.len()));
        } else {
            dims.push((w, forms.target_dim(w) - forms.comparison(w).rank()));
        }
    }
    let dim = dims.iter().map(|(_, d)| d).sum();
    witnesses.truncate(8);
    TypicalPiece {
        n,
        i,
        dim,
        per_weight: graded.then(|| per_weight(dims)),
        certified_to,
        branch: Branch::ExactSequence,
        witnesses,
    }
}

fn forms_up_to(
    a: &FinitelyPresentedAlgebra<Q>,
    top_p: usize,
    bound: Option<u32>,
) -> Result<Vec<CdhForms>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..=top_p)
            .into_par_iter()
            .map(|p| omega_cdh(a, p, bound))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..=top_p).map(|p| omega_cdh(a, p, bound)).collect()
    }
}

fn degree_needed(n_max: i64) -> usize {
    (n_max - 1).max(0) as usize
}

/// The table of an Artinian algebra, exact in every entry.
pub fn tk_table_artinian(
    a: &FinitelyPresentedAlgebra<Q>,
    n_min: i64,
    n_max: i64,
) -> Result<NKTable> {
    if !a.is_zero_dimensional() {
        return Err(Error::Unsupported(
            "expected an Artinian (zero-dimensional) algebra".into(),
        ));
    }
    let graded = a.weights().is_some();
    let basis = a.basis_algebra(None)?;
    let hodge = hodge_decompose(&basis, degree_needed(n_max))?;
    let forms = forms_up_to(a, n_max.max(0) as usize, None)?;
    let mut table = NKTable {
        ring: describe(a),
        class: RingClass::Artinian,
        n_min,
        n_max,
        weight_bound: None,
        entries: Vec::new(),
        totals: Vec::new(),
        e_n: Vec::new(),
    };
    for n in n_min..=n_max {
        for i in columns(n) {
            let e = if i < n {
                hodge_entry(&hodge, n, i, graded, None)
            } else if i == n {
                sequence_entry(&forms[(n - 1) as usize], n, i, true, graded, None)
            } else if i == n + 1 {
                sequence_entry(&forms[n as usize], n, i, false, graded, None)
            } else {
                vanishing(n, i)
            };
            table.entries.push(e);
        }
    }
    table.finish();
    Ok(table)
}

/// The table of a numerical-semigroup ring truncated at `bound`. Negative
/// rows vanish exactly; other entries are exact in weights `<= bound`.
pub fn tk_table_curve(
    semigroup: &NumericalSemigroup,
    ring: Option<&FinitelyPresentedAlgebra<Q>>,
    n_min: i64,
    n_max: i64,
    bound: u32,
) -> Result<NKTable> {
    let presentation = match ring {
        Some(r) => r.clone(),
        None => semigroup.presentation()?,
    };
    let basis = semigroup.basis_algebra(bound);
    let hodge = hodge_decompose(&basis, degree_needed(n_max))?;
    let forms = forms_up_to(&presentation, n_max.max(0) as usize, Some(bound))?;
    let frobenius = semigroup.frobenius();
    let max_gen = semigroup.generators().iter().copied().max().unwrap_or(1) as i64;
    // past these weights the cokernels are provably zero
    let coker_exact = |p: usize| match p {
        0 => frobenius <= bound as i64,
        1 => frobenius + max_gen <= bound as i64,
        _ => true,
    };
    let mut table = NKTable {
        ring: describe(&presentation),
        class: RingClass::Curve,
        n_min,
        n_max,
        weight_bound: Some(bound),
        entries: Vec::new(),
        totals: Vec::new(),
        e_n: Vec::new(),
    };
    for n in n_min..=n_max {
        for i in columns(n) {
            let e = if n < 0 || i >= n + 2 {
                vanishing(n, i)
            } else if i < n {
                hodge_entry(&hodge, n, i, true, Some(bound))
            } else if i == n {
                // R -> Q[t] is injective in every weight
                let certified = (n > 1).then_some(bound);
                sequence_entry(&forms[(n - 1) as usize], n, i, true, true, certified)
            } else {
                let p = n as usize;
                let mut e = sequence_entry(
                    &forms[p],
                    n,
                    i,
                    false,
                    true,
                    (!coker_exact(p)).then_some(bound),
                );
                // the missing monomials of Q[t] or Q[t]dt
                e.witnesses = e
                    .per_weight
                    .iter()
                    .flatten()
                    .take(8)
                    .map(|pw| match p {
                        0 => format!("t^{}", pw.weight),
                        _ => format!("t^{} dt", pw.weight - 1),
                    })
                    .collect();
                e
            };
            table.entries.push(e);
        }
    }
    table.finish();
    Ok(table)
}

/// Dispatch on the ring class.
pub fn tk_table(
    a: &FinitelyPresentedAlgebra<Q>,
    n_min: i64,
    n_max: i64,
    bound: Option<u32>,
) -> Result<NKTable> {
    if a.is_zero_dimensional() {
        return tk_table_artinian(a, n_min, n_max);
    }
    match NumericalSemigroup::recognize(a) {
        Some(s) => tk_table_curve(&s, Some(a), n_min, n_max, bound.ok_or(Error::MissingBound)?),
        None => Err(Error::Unsupported(
            "supported classes are Artinian Q-algebras and numerical-semigroup rings (weights = semigroup generators)".into(),
        )),
    }
}

fn describe(a: &FinitelyPresentedAlgebra<Q>) -> String {
    let gens: Vec<String> = a.generators().iter().map(|g| a.render(g)).collect();
    let mut s = format!("Q[{}]", a.vars().join(","));
    if !gens.is_empty() {
        s.push_str(&format!("/({})", gens.join(", ")));
    }
    if let Some(w) = a.weights() {
        let ws: Vec<String> = a
            .vars()
            .iter()
            .zip(w)
            .map(|(v, w)| format!("{v}={w}"))
            .collect();
        s.push_str(&format!(" weights {}", ws.join(" ")));
    }
    s
}

/// `N^p K_n` per total t-weight, from `NK_{n-j}` weight series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpDims {
    pub p: usize,
    pub n: i64,
    /// Weights `1..=len`.
    pub per_weight: Vec<usize>,
    /// `summands[j][w - 1]`: contribution of `NK_{n-j} ⊗ ∧^j Q^{p-1} ⊗ …`.
    pub summands: Vec<Vec<usize>>,
    #[serde(default)]
    pub certified_to: Option<u32>,
}

impl NpDims {
    pub fn is_zero(&self) -> bool {
        self.per_weight.iter().all(|&d| d == 0)
    }
}

fn binom(n: i64, k: i64) -> usize {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    binomial(n as u64, k as u64)
        .to_usize()
        .expect("small binomial")
}

/// `N^p K_n = ⊕_{j<p} NK_{n-j} ⊗ ∧^j Q^{p-1} ⊗ (tQ[t])^{⊗(p-1-j)} ⊗ (Ω¹_{Q[t]})^{⊗j}`
/// with `nk(q)` the weight series of `NK_q` in weights `1..=j_max`. Each
/// `tQ[t]` or `Ω¹` factor is one-dimensional in every weight `>= 1`.
pub fn np_from_series(
    nk: impl Fn(i64) -> Result<Vec<usize>>,
    p: usize,
    n: i64,
    j_max: u32,
) -> Result<NpDims> {
    if p == 0 {
        return Err(Error::Invalid("p must be at least 1".into()));
    }
    let len = j_max as usize;
    let mut summands = Vec::new();
    for j in 0..p {
        let series = nk(n - j as i64)?;
        let mult = binom(p as i64 - 1, j as i64);
        let extra = p - 1;
        let dims: Vec<usize> = (1..=len as i64)
            .map(|w| {
                (1..=w)
                    .map(|w1| {
                        let d = series.get(w1 as usize - 1).copied().unwrap_or(0);
                        let rest = w - w1;
                        // compositions of `rest` into `extra` positive parts
                        let ways = if extra == 0 {
                            usize::from(rest == 0)
                        } else {
                            binom(rest - 1, extra as i64 - 1)
                        };
                        d * ways
                    })
                    .sum::<usize>()
                    * mult
            })
            .collect();
        summands.push(dims);
    }
    let per_weight = (0..len)
        .map(|w| summands.iter().map(|s| s[w]).sum())
        .collect();
    Ok(NpDims {
        p,
        n,
        per_weight,
        summands,
        certified_to: None,
    })
}

pub fn np_decomposition(table: &NKTable, p: usize, n: i64, j_max: u32) -> Result<NpDims> {
    let mut out = np_from_series(|q| table.nk_weight_dims(q, j_max), p, n, j_max)?;
    for j in 0..p as i64 {
        out.certified_to = weakest(out.certified_to, table.row(n - j)?.certified_to);
    }
    Ok(out)
}

/// The Bass-question verdict for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BassReport {
    pub ring: String,
    pub n: i64,
    pub nk_n: usize,
    pub nk_prev: usize,
    pub nk_n_zero: bool,
    pub nk_prev_zero: bool,
    /// `N²K_n` in t-weights `1..=len`.
    pub n2k_weights: Vec<usize>,
    pub n2k_zero: bool,
    /// `NK_q = 0` for every computed `q <= n`.
    pub k_regular: bool,
    /// `N²K_n = 0` iff `NK_n = NK_{n-1} = 0`.
    pub biconditional_holds: bool,
    #[serde(default)]
    pub certified_to: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn bass_report(table: &NKTable, n: i64) -> Result<BassReport> {
    let nk_n = table.total(n)?;
    let nk_prev = table.total(n - 1)?;
    let np = np_decomposition(table, 2, n, 6)?;
    let n2k_zero = np.is_zero();
    let mut warnings = Vec::new();
    let floor = match table.class {
        RingClass::Artinian => 0,
        RingClass::Curve => -1,
    };
    if table.n_min > floor {
        warnings.push(format!(
            "rows below n = {} not computed; regularity checked on {}..={n}",
            table.n_min, table.n_min
        ));
    }
    let k_regular = (table.n_min..=n).all(|q| table.total(q).is_ok_and(|d| d == 0));
    let certified_to = weakest(table.row(n)?.certified_to, table.row(n - 1)?.certified_to);
    if let Some(b) = certified_to {
        warnings.push(format!("dimensions exact in weights <= {b}"));
    }
    Ok(BassReport {
        ring: table.ring.clone(),
        n,
        nk_n,
        nk_prev,
        nk_n_zero: nk_n == 0,
        nk_prev_zero: nk_prev == 0,
        n2k_weights: np.per_weight,
        n2k_zero,
        k_regular,
        biconditional_holds: n2k_zero == (nk_n == 0 && nk_prev == 0),
        certified_to,
        warnings,
    })
}

impl BassReport {
    pub fn render(&self) -> String {
        let z = |b: bool| if b { "=0" } else { "≠0" };
        let mut s = format!(
            "ring: {}\nNK_{n}{} (dim {} per t-weight), NK_{}{} (dim {} per t-weight), N²K_{n}{}: {}\n",
            self.ring,
            z(self.nk_n_zero),
            self.nk_n,
            self.n - 1,
            z(self.nk_prev_zero),
            self.nk_prev,
            z(self.n2k_zero),
            if self.biconditional_holds { "consistent" } else { "INCONSISTENT" },
            n = self.n,
        );
        s.push_str(&format!(
            "N²K_{} weight dims 1..{}: {:?}\n",
            self.n,
            self.n2k_weights.len(),
            self.n2k_weights
        ));
        if self.k_regular {
            s.push_str(&format!("K_{}-regular on the computed range\n", self.n));
        } else {
            s.push_str(&format!(
                "not K_{}-regular: some NK_q ≠ 0 with q <= {}\n",
                self.n, self.n
            ));
        }
        for w in &self.warnings {
            s.push_str(&format!("note: {w}\n"));
        }
        s
    }
}

/// `dim H^m F_HH = Σ_i dim TK_{1-m}^(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCohomology {
    /// `(m, dim, certified_to)`
    pub dims: Vec<(i64, usize, Option<u32>)>,
    /// For Artinian rings: `(m, dim H^m F_HH, dim HH_{-m})` for `m <= -1`.
    pub hh_checks: Vec<(i64, usize, usize)>,
}

impl FiberCohomology {
    pub fn passed(&self) -> bool {
        self.hh_checks.iter().all(|(_, a, b)| a == b)
    }
}

pub fn fiber_cohomology(table: &NKTable, hh: Option<&HodgeDims>) -> FiberCohomology {
    let dims = table
        .totals
        .iter()
        .map(|r| (1 - r.n, r.dim, r.certified_to))
        .collect();
    let mut hh_checks = Vec::new();
    if let (RingClass::Artinian, Some(h)) = (table.class, hh) {
        for r in &table.totals {
            let m = r.n - 1;
            if m >= 1 && (m as usize) <= h.top {
                hh_checks.push((-m, r.dim, h.total(m as usize)));
            }
        }
    }
    FiberCohomology { dims, hh_checks }
}

/// `Σ_i dim TK_n^(i)` against `dim HH_{n-1}(A, nil A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPathRow {
    pub n: i64,
    pub assembled: usize,
    pub relative_hh: usize,
}

pub fn two_path_check(a: &FinitelyPresentedAlgebra<Q>, n_max: i64) -> Result<Vec<TwoPathRow>> {
    let table = tk_table_artinian(a, 0, n_max)?;
    let basis = a.basis_algebra(None)?;
    let nil = a.nilradical_zero_dim()?;
    let rel = relative_hh(&basis, &nil.span, degree_needed(n_max))?;
    Ok((0..=n_max)
        .map(|n| TwoPathRow {
            n,
            assembled: table.total(n).unwrap_or(0),
            relative_hh: if n >= 1 { rel[(n - 1) as usize] } else { 0 },
        })
        .collect())
}

/// `TK_n^(i)(A ⊗ Q(u))` computed from inputs over `F = Q(u)` (Ω and HH over
/// `F`, shifted by `du`) next to `TK_n^(i)(A) + TK_{n-1}^(i-1)(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeRow {
    pub n: i64,
    pub i: i64,
    pub over_f: usize,
    pub predicted: usize,
}

pub fn tk_base_change(a: &FinitelyPresentedAlgebra<Q>, n_max: i64) -> Result<Vec<BaseChangeRow>> {
    let table = tk_table_artinian(a, 0, n_max)?;
    let basis: BasisAlgebra<Q> = a.basis_algebra(None)?;
    let hodge_f = hodge_over_rational_functions(&basis, degree_needed(n_max))?;
    let af: FinitelyPresentedAlgebra<RatFunc> = a.extend_scalars()?;
    let red: FinitelyPresentedAlgebra<RatFunc> =
        a.nilradical_zero_dim()?.reduced.extend_scalars()?;
    // kernel and cokernel of Ω^p(A_F/F) -> Ω^p(red_F/F)
    let mut ker = Vec::new();
    let mut coker = Vec::new();
    for p in 0..=n_max.max(0) as usize {
        let src = kaehler(&af, p, None)?;
        let dst = kaehler(&red, p, None)?;
        let (mut k, mut c) = (0, 0);
        for w in src.module.weights() {
            let (sp, dp) = (src.piece(w), dst.piece(w));
            let map = quotient_comparison(&src, &dst, &sp, &dp);
            let r = map.rank();
            k += sp.dim() - r;
            c += dp.dim() - r;
        }
        ker.push(k);
        coker.push(c);
    }
    // over Q: Ω^p_{A_F} = Ω^p_{A_F/F} ⊕ Ω^{p-1}_{A_F/F} du
    let shifted = |v: &Vec<usize>, p: i64| -> usize {
        let at = |q: i64| {
            if q >= 0 {
                v.get(q as usize).copied().unwrap_or(0)
            } else {
                0
            }
        };
        at(p) + at(p - 1)
    };
    let hh = |m: i64, k: i64| -> usize {
        if m < 0 || k < 0 || k > m {
            0
        } else {
            hodge_f[m as usize][k as usize]
        }
    };
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for i in columns(n) {
            let over_f = if i < n {
                hh(n - 1, i - 1)
            } else if i == n {
                shifted(&ker, n - 1)
            } else if i == n + 1 {
                shifted(&coker, n)
            } else {
                0
            };
            let predicted = table.dim(n, i) + if i >= 2 { table.dim(n - 1, i - 1) } else { 0 };
            rows.push(BaseChangeRow {
                n,
                i,
                over_f,
                predicted,
            });
        }
    }
    Ok(rows)
}


#[cfg(test)]
mod curve_tests {
    use super::*;

    #[test]
    fn gap_counts_and_negative_rows() {
        for (gens, gaps) in [(&[2u64, 3][..], 1), (&[3, 4, 5], 2), (&[2, 5], 2)] {
            let s = NumericalSemigroup::new(gens).unwrap();
            let t = tk_table_curve(&s, None, -3, 2, 12).unwrap();
            assert_eq!(t.dim(0, 1), gaps, "{gens:?}");
            assert_eq!(t.dim(0, 1), s.genus());
            for n in -3..0 {
                assert_eq!(t.total(n).unwrap(), 0);
                assert_eq!(t.row(n).unwrap().certified_to, None);
            }
            for e in &t.entries {
                assert!(e.i >= 1);
                if e.i >= e.n + 2 {
                    assert_eq!((e.dim, e.branch), (0, Branch::CdhVanishing));
                }
            }
        }
    }

    #[test]
    fn three_four_five_torsion() {
        let s = NumericalSemigroup::new(&[3, 4, 5]).unwrap();
        let t = tk_table_curve(&s, None, 0, 2, 12).unwrap();
        // weight w: #{i : w - a_i ∈ S} minus the rank of the exponent
        // differences of y²-xz, x³-yz, z²-x²y allowed in weight w, minus the
        // image in Q[t]dt
        let tors = t.get(2, 2).unwrap();
        let weights: Vec<u32> = tors
            .per_weight
            .as_ref()
            .unwrap()
            .iter()
            .map(|p| p.weight)
            .collect();
        assert_eq!(weights, [7, 8, 9, 10, 11]);
        assert_eq!(tors.dim, 5);
        // Q[t]dt / Ω¹: t dt and t² dt are missed
        assert_eq!(t.dim(1, 2), 2);
        assert_eq!(t.get(1, 2).unwrap().certified_to, None);
    }
}
