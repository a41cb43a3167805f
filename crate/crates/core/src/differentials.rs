//! Kähler differentials, the de Rham differential, torsion, and the
//! comparison with cdh-sheafified forms on Artinian algebras and
//! numerical-semigroup curves.

use std::collections::HashMap;

use crate::algebra::FinitelyPresentedAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::linalg::{kernel_of_images, rank_of, Echelon, LinearMap, SVec, Subquotient};
use crate::poly::{Monomial, Polynomial};
use crate::semigroup::NumericalSemigroup;

/// Weight of a monomial in the algebra's grading (0 when ungraded).
fn grading<F: Field>(a: &FinitelyPresentedAlgebra<F>, m: &Monomial) -> u32 {
    a.weights().map_or(0, |w| m.weighted_degree(w))
}

/// A finitely presented module `R^g / (relations)`, split into weight pieces.
#[derive(Clone, Debug)]
pub struct PresentedModule<F> {
    base: FinitelyPresentedAlgebra<F>,
    gen_labels: Vec<String>,
    gen_weights: Vec<u32>,
    relations: Vec<Vec<Polynomial<F>>>,
    bound: Option<u32>,
    standard: Vec<Monomial>,
    std_index: HashMap<Monomial, usize>,
}

/// One weight piece of a [`PresentedModule`] as a quotient of its ambient
/// free part, with basis pairs `(standard monomial, generator)`.
#[derive(Clone, Debug)]
pub struct ModulePiece<F> {
    pub weight: u32,
    pub basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    pub relations: Vec<SVec<F>>,
    pub quotient: Subquotient<F>,
}

impl<F: Field> ModulePiece<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, mono: usize, gen: usize) -> Option<usize> {
        self.index.get(&(mono, gen)).copied()
    }

    /// Class coordinates of an ambient vector.
    pub fn class_of(&self, v: &SVec<F>) -> SVec<F> {
        self.quotient
            .coordinates(v)
            .expect("ambient vectors lie in the span")
    }

    pub fn representatives(&self) -> &[SVec<F>] {
        self.quotient.representatives()
    }
}

impl<F: Field> PresentedModule<F> {
    /// `bound` is required when the base algebra is infinite-dimensional.
    pub fn new(
        base: &FinitelyPresentedAlgebra<F>,
        gen_labels: Vec<String>,
        gen_weights: Vec<u32>,
        relations: Vec<Vec<Polynomial<F>>>,
        bound: Option<u32>,
    ) -> Result<Self> {
        if !base.is_zero_dimensional() && bound.is_none() {
            return Err(Error::MissingBound);
        }
        let bound = if base.is_zero_dimensional() {
            None
        } else {
            bound
        };
        let standard = base.standard_monomials(bound)?;
        let std_index = standard
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let relations = relations
            .into_iter()
            .map(|r| r.iter().map(|p| base.normal_form(p)).collect())
            .collect();
        Ok(PresentedModule {
            base: base.clone(),
            gen_labels,
            gen_weights,
            relations,
            bound,
            standard,
            std_index,
        })
    }

    pub fn base(&self) -> &FinitelyPresentedAlgebra<F> {
        &self.base
    }

    pub fn ngens(&self) -> usize {
        self.gen_labels.len()
    }

    pub fn gen_labels(&self) -> &[String] {
        &self.gen_labels
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn relations(&self) -> &[Vec<Polynomial<F>>] {
        &self.relations
    }

    pub fn standard(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn is_graded(&self) -> bool {
        self.base.weights().is_some()
    }

    /// Weights that can carry nonzero pieces (just `0` when ungraded).
    pub fn weights(&self) -> Vec<u32> {
        if !self.is_graded() {
            return vec![0];
        }
        let top = match self.bound {
            Some(b) => b,
            None => {
                let ms = self
                    .standard
                    .iter()
                    .map(|m| grading(&self.base, m))
                    .max()
                    .unwrap_or(0);
                ms + self.gen_weights.iter().copied().max().unwrap_or(0)
            }
        };
        (0..=top).collect()
    }

    fn in_piece(&self, mono: usize, gen: usize, w: u32) -> bool {
        !self.is_graded() || grading(&self.base, &self.standard[mono]) + self.gen_weights[gen] == w
    }

    /// Ambient vector of a module element given per generator, in piece `w`.
    pub fn ambient(&self, piece: &ModulePiece<F>, element: &[Polynomial<F>]) -> SVec<F> {
        let mut terms = Vec::new();
        for (g, p) in element.iter().enumerate() {
            for (m, c) in self.base.normal_form(p).terms() {
                if let Some(&mi) = self.std_index.get(m) {
                    if let Some(pos) = piece.position(mi, g) {
                        terms.push((pos, c.clone()));
                    }
                }
            }
        }
        SVec::from_terms(terms)
    }

    pub fn piece(&self, w: u32) -> ModulePiece<F> {
        let mut basis = Vec::new();
        for g in 0..self.ngens() {
            for mono in 0..self.standard.len() {
                if self.in_piece(mono, g, w) {
                    basis.push((mono, g));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> =
            basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut piece = ModulePiece {
            weight: w,
            basis,
            index,
            relations: Vec::new(),
            quotient: Subquotient::new(&[], &[]),
        };
        let mut rels = Vec::new();
        for rel in &self.relations {
            let rw = self.relation_weight(rel);
            for s in &self.standard {
                if self.is_graded() && rw.is_none_or(|rw| rw + grading(&self.base, s) != w) {
                    continue;
                }
                let scaled: Vec<Polynomial<F>> =
                    rel.iter().map(|p| p.mul_term(&F::one(), s)).collect();
                let v = self.ambient(&piece, &scaled);
                if !v.is_zero() {
                    rels.push(v);
                }
            }
        }
        let all: Vec<SVec<F>> = (0..piece.basis.len()).map(SVec::unit).collect();
        piece.quotient = Subquotient::new(&all, &rels);
        piece.relations = rels;
        piece
    }

    fn relation_weight(&self, rel: &[Polynomial<F>]) -> Option<u32> {
        let w = self.base.weights()?;
        rel.iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .and_then(|(g, p)| p.weighted_degree(w).map(|d| d + self.gen_weights[g]))
    }

    pub fn dims(&self) -> Vec<(u32, usize)> {
        self.weights()
            .into_iter()
            .map(|w| (w, self.piece(w).dim()))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.dims().iter().map(|(_, d)| d).sum()
    }

    /// Matrix of multiplication by `s` from piece `src` to piece `dst`, on
    /// class coordinates.
    pub fn multiplication(
        &self,
        s: &Polynomial<F>,
        src: &ModulePiece<F>,
        dst: &ModulePiece<F>,
    ) -> LinearMap<F> {
        let cols = src
            .representatives()
            .iter()
            .map(|rep| {
                let mut element = vec![Polynomial::zero(self.base.nvars()); self.ngens()];
                for (k, c) in rep.entries() {
                    let (mono, g) = src.basis[*k];
                    element[g] = element[g].add(&s.mul_term(c, &self.standard[mono]));
                }
                dst.class_of(&self.ambient(dst, &element))
            })
            .collect();
        LinearMap::new(src.dim(), dst.dim(), cols)
    }
}

/// Increasing subsets of `0..n` of size `p`.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// `dx_i ∧ dx_J` as `(sign, sorted subset)`, or `None` when `i ∈ J`.
pub fn wedge_in(i: usize, j: &[usize]) -> Option<(i64, Vec<usize>)> {
    if j.contains(&i) {
        return None;
    }
    let before = j.iter().filter(|&&k| k < i).count();
    let mut s = j.to_vec();
    s.insert(before, i);
    Some((if before % 2 == 0 { 1 } else { -1 }, s))
}

/// `Ω^p` of a presented algebra: generators `dx_J`, relations `df ∧ dx_K`.
#[derive(Clone, Debug)]
pub struct DifferentialModule<F> {
    pub p: usize,
    pub subsets: Vec<Vec<usize>>,
    pub module: PresentedModule<F>,
}

pub fn kaehler<F: Field>(
    a: &FinitelyPresentedAlgebra<F>,
    p: usize,
    bound: Option<u32>,
) -> Result<DifferentialModule<F>> {
    let n = a.nvars();
    let subs = subsets(n, p);
    let pos: HashMap<Vec<usize>, usize> = subs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let labels = subs
        .iter()
        .map(|s| {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.iter()
                    .map(|&i| format!("d{}", a.vars()[i]))
                    .collect::<Vec<_>>()
                    .join("∧")
            }
        })
        .collect();
    let gen_weights = subs
        .iter()
        .map(|s| a.weights().map_or(0, |w| s.iter().map(|&i| w[i]).sum()))
        .collect();
    let mut relations = Vec::new();
    if p >= 1 {
        for f in a.generators() {
            for k in subsets(n, p - 1) {
                let mut rel = vec![Polynomial::zero(n); subs.len()];
                for i in 0..n {
                    if let Some((sign, s)) = wedge_in(i, &k) {
                        let g = pos[&s];
                        rel[g] = rel[g].add(&f.derivative(i).scale(&F::from_int(sign)));
                    }
                }
                if rel.iter().any(|r| !r.is_zero()) {
                    relations.push(rel);
                }
            }
        }
    }
    let module = PresentedModule::new(a, labels, gen_weights, relations, bound)?;
    Ok(DifferentialModule {
        p,
        subsets: subs,
        module,
    })
}

impl<F: Field> DifferentialModule<F> {
    pub fn piece(&self, w: u32) -> ModulePiece<F> {
        self.module.piece(w)
    }

    pub fn dims(&self) -> Vec<(u32, usize)> {
        self.module.dims()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Human-readable form of a class given in class coordinates.
    pub fn render_class(&self, piece: &ModulePiece<F>, coords: &SVec<F>) -> String {
        let ambient = crate::linalg::combine(coords, piece.representatives());
        let base = self.module.base();
        let mut per_gen = vec![Polynomial::zero(base.nvars()); self.module.ngens()];
        for (k, c) in ambient.entries() {
            let (mono, g) = piece.basis[*k];
            per_gen[g] = per_gen[g].add(&Polynomial::term(
                c.clone(),
                self.module.standard()[mono].clone(),
            ));
        }
        let terms: Vec<String> = per_gen
            .iter()
            .zip(self.module.gen_labels())
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, label)| {
                let coeff = base.render(p);
                match (label.as_str(), coeff.as_str()) {
                    ("1", _) => coeff,
                    (_, "1") => label.clone(),
                    _ if p.len() > 1 => format!("({coeff})*{label}"),
                    _ => format!("{coeff}*{label}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// `d(m dx_J) = Σ_i ∂_i m dx_i ∧ dx_J` applied to an ambient vector.
    fn d_element(&self, src: &ModulePiece<F>, v: &SVec<F>) -> Vec<Polynomial<F>> {
        let base = self.module.base();
        let n = base.nvars();
        let next = subsets(n, self.p + 1);
        let pos: HashMap<Vec<usize>, usize> = next
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut out = vec![Polynomial::zero(n); next.len()];
        for (k, c) in v.entries() {
            let (mono, g) = src.basis[*k];
            let m = Polynomial::term(c.clone(), self.module.standard()[mono].clone());
            for i in 0..n {
                if let Some((sign, s)) = wedge_in(i, &self.subsets[g]) {
                    let slot = pos[&s];
                    out[slot] = out[slot].add(&m.derivative(i).scale(&F::from_int(sign)));
                }
            }
        }
        out
    }
}

/// The de Rham differential `Ω^p_w -> Ω^{p+1}_w` on class coordinates.
pub fn de_rham_map<F: Field>(
    omega_p: &DifferentialModule<F>,
    omega_next: &DifferentialModule<F>,
    w: u32,
) -> LinearMap<F> {
    assert_eq!(omega_p.p + 1, omega_next.p);
    let src = omega_p.piece(w);
    let dst = omega_next.piece(w);
    de_rham_between(omega_p, omega_next, &src, &dst)
}

pub fn de_rham_between<F: Field>(
    omega_p: &DifferentialModule<F>,
    omega_next: &DifferentialModule<F>,
    src: &ModulePiece<F>,
    dst: &ModulePiece<F>,
) -> LinearMap<F> {
    let cols = src
        .representatives()
        .iter()
        .map(|rep| dst.class_of(&omega_next.module.ambient(dst, &omega_p.d_element(src, rep))))
        .collect();
    LinearMap::new(src.dim(), dst.dim(), cols)
}

/// `Ω^p_A -> Ω^p_B` for a quotient `B` of `A` on the same variables.
pub fn quotient_comparison<F: Field>(
    source: &DifferentialModule<F>,
    target: &DifferentialModule<F>,
    src: &ModulePiece<F>,
    dst: &ModulePiece<F>,
) -> LinearMap<F> {
    let module = &source.module;
    let cols = src
        .representatives()
        .iter()
        .map(|rep| {
            let mut element = vec![Polynomial::zero(module.base().nvars()); module.ngens()];
            for (k, c) in rep.entries() {
                let (mono, g) = src.basis[*k];
                element[g] = element[g].add(&Polynomial::term(
                    c.clone(),
                    module.standard()[mono].clone(),
                ));
            }
            dst.class_of(&target.module.ambient(dst, &element))
        })
        .collect();
    LinearMap::new(src.dim(), dst.dim(), cols)
}

/// Whether the algebra is reduced, where this can be decided: Seidenberg's
/// criterion for zero-dimensional ideals, recognized semigroup rings, and
/// squarefree monomial ideals.
pub fn is_reduced(a: &FinitelyPresentedAlgebra<Q>) -> Result<bool> {
    if a.is_zero_dimensional() {
        return a.is_reduced_zero_dim();
    }
    if NumericalSemigroup::recognize(a).is_some() {
        return Ok(true);
    }
    let polys = a.groebner().polys();
    if polys.iter().all(|p| p.len() == 1) {
        return Ok(polys
            .iter()
            .all(|p| p.terms().all(|(m, _)| m.0.iter().all(|&e| e <= 1))));
    }
    Err(Error::Unsupported(
        "reducedness cannot be certified for this presentation".into(),
    ))
}

/// Default test element: the sum of the variables of least weight (all
/// variables when ungraded).
pub fn default_nonzerodivisor(a: &FinitelyPresentedAlgebra<Q>) -> Polynomial<Q> {
    let n = a.nvars();
    let chosen: Vec<usize> = match a.weights() {
        Some(w) => {
            let lo = w.iter().copied().min().unwrap_or(0);
            (0..n).filter(|&i| w[i] == lo).collect()
        }
        None => (0..n).collect(),
    };
    chosen.into_iter().fold(Polynomial::zero(n), |acc, i| {
        acc.add(&Polynomial::var(n, i))
    })
}

/// Torsion of a module with respect to powers of one element.
#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub element: String,
    /// `(weight, dimension)` for nonzero pieces.
    pub per_weight: Vec<(u32, usize)>,
    /// Weights where `(0 : s^k)` did not stabilize inside the truncation.
    pub unresolved: Vec<u32>,
    /// Class-coordinate bases of the torsion, per weight.
    pub bases: Vec<(u32, Vec<SVec<Q>>)>,
}

impl TorsionReport {
    pub fn dim(&self) -> usize {
        self.per_weight.iter().map(|(_, d)| d).sum()
    }

    /// Largest weight below which every piece stabilized.
    pub fn horizon(&self, top: u32) -> u32 {
        self.unresolved.first().map_or(top, |w| w.saturating_sub(1))
    }

    pub fn certified(&self) -> bool {
        self.unresolved.is_empty()
    }
}

fn check_nonzerodivisor(
    a: &FinitelyPresentedAlgebra<Q>,
    s: &Polynomial<Q>,
    bound: Option<u32>,
) -> Result<u32> {
    let ws = match a.weights() {
        Some(w) => s
            .weighted_degree(w)
            .ok_or_else(|| Error::NotHomogeneous(a.render(s)))?,
        None => 0,
    };
    let ring = kaehler(a, 0, bound)?;
    for w in ring.module.weights() {
        if ring.module.is_graded() && ring.module.bound().is_some_and(|b| w + ws > b) {
            break;
        }
        let src = ring.piece(w);
        let dst = ring.piece(w + ws);
        if ring.module.multiplication(s, &src, &dst).rank() < src.dim() {
            return Err(Error::Zerodivisor(w));
        }
    }
    Ok(ws)
}

/// `∪_k (0 :_M s^k)`, per weight, for a module over a reduced algebra.
pub fn torsion_submodule(
    m: &PresentedModule<Q>,
    s: Option<&Polynomial<Q>>,
) -> Result<TorsionReport> {
    let a = m.base();
    if !is_reduced(a)? {
        return Err(Error::NotReduced);
    }
    let s = s.cloned().unwrap_or_else(|| default_nonzerodivisor(a));
    let ws = check_nonzerodivisor(a, &s, m.bound())?;
    let weights = m.weights();
    let top = *weights.last().expect("nonempty");
    let pieces: HashMap<u32, ModulePiece<Q>> = weights.iter().map(|&w| (w, m.piece(w))).collect();
    let mut report = TorsionReport {
        element: a.render(&s),
        per_weight: Vec::new(),
        unresolved: Vec::new(),
        bases: Vec::new(),
    };
    for &w in &weights {
        let src = &pieces[&w];
        if src.dim() == 0 {
            continue;
        }
        // iterate s: M_w -> M_{w+ws} -> ...
        let mut images: Vec<SVec<Q>> = (0..src.dim()).map(SVec::unit).collect();
        let mut at = w;
        let mut prev_kernel = usize::MAX;
        let mut kernel = Vec::new();
        let mut stable = false;
        loop {
            if m.is_graded() && at + ws > top && ws > 0 {
                break;
            }
            let step = m.multiplication(&s, &pieces[&at], &pieces[&(at + ws)]);
            images = images.iter().map(|v| step.apply(v)).collect();
            at += ws;
            kernel = kernel_of_images(&images);
            if kernel.len() == prev_kernel {
                stable = true;
                break;
            }
            prev_kernel = kernel.len();
            if ws == 0 && prev_kernel == src.dim() {
                stable = true;
                break;
            }
        }
        if !stable {
            report.unresolved.push(w);
        }
        if !kernel.is_empty() {
            report.per_weight.push((w, kernel.len()));
            report.bases.push((w, kernel));
        }
    }
    Ok(report)
}

/// Which effective model of cdh forms applies.
#[derive(Clone, Debug)]
pub enum CdhModel {
    /// `Ω^p_cdh = Ω^p` of the reduced quotient.
    Artinian {
        reduced: FinitelyPresentedAlgebra<Q>,
    },
    /// `Ω^0_cdh = Q[t]`, `Ω^1_cdh = Q[t] dt`, zero above; `x_i ↦ t^{a_i}`.
    Curve { semigroup: NumericalSemigroup },
}

/// `Ω^p_R -> Ω^p_cdh(R)` on a supported ring.
#[derive(Clone, Debug)]
pub struct CdhForms {
    pub p: usize,
    pub model: CdhModel,
    pub source: DifferentialModule<Q>,
    target: Option<DifferentialModule<Q>>,
}

pub fn omega_cdh(
    a: &FinitelyPresentedAlgebra<Q>,
    p: usize,
    bound: Option<u32>,
) -> Result<CdhForms> {
    let source = kaehler(a, p, bound)?;
    if a.is_zero_dimensional() {
        let reduced = a.nilradical_zero_dim()?.reduced;
        let target = Some(kaehler(&reduced, p, None)?);
        return Ok(CdhForms {
            p,
            model: CdhModel::Artinian { reduced },
            source,
            target,
        });
    }
    match NumericalSemigroup::recognize(a) {
        Some(semigroup) => Ok(CdhForms {
            p,
            model: CdhModel::Curve { semigroup },
            source,
            target: None,
        }),
        None => Err(Error::Unsupported(
            "cdh forms are available for Artinian algebras and numerical-semigroup rings only"
                .into(),
        )),
    }
}

impl CdhForms {
    pub fn weights(&self) -> Vec<u32> {
        self.source.module.weights()
    }

    pub fn target_dim(&self, w: u32) -> usize {
        match (&self.model, &self.target) {
            (CdhModel::Artinian { .. }, Some(t)) => t.piece(w).dim(),
            (CdhModel::Curve { .. }, _) => match self.p {
                0 => 1,
                1 => usize::from(w >= 1),
                _ => 0,
            },
            _ => unreachable!("Artinian model carries a target"),
        }
    }

    /// Comparison map on class coordinates, weight `w`.
    pub fn comparison(&self, w: u32) -> LinearMap<Q> {
        let src = self.source.piece(w);
        self.comparison_from(&src, w)
    }

    fn comparison_from(&self, src: &ModulePiece<Q>, w: u32) -> LinearMap<Q> {
        match (&self.model, &self.target) {
            (CdhModel::Artinian { .. }, Some(t)) => {
                quotient_comparison(&self.source, t, src, &t.piece(w))
            }
            (CdhModel::Curve { semigroup }, _) => {
                let tdim = self.target_dim(w);
                let cols = src
                    .representatives()
                    .iter()
                    .map(|rep| {
                        if tdim == 0 {
                            return SVec::zero();
                        }
                        let mut acc = Q::zero();
                        for (k, c) in rep.entries() {
                            let (_, g) = src.basis[*k];
                            let factor = match self.p {
                                0 => Q::one(),
                                _ => Q::from_int(
                                    semigroup.generators()[self.source.subsets[g][0]] as i64,
                                ),
                            };
                            acc = Field::add(&acc, &Field::mul(c, &factor));
                        }
                        SVec::from_terms([(0, acc)])
                    })
                    .collect();
                LinearMap::new(src.dim(), tdim, cols)
            }
            _ => unreachable!(),
        }
    }

    /// Kernel of the comparison (class coordinates) in weight `w`.
    pub fn kernel(&self, w: u32) -> Vec<SVec<Q>> {
        self.comparison(w).kernel()
    }

    pub fn kernel_dims(&self) -> Vec<(u32, usize)> {
        self.weights()
            .into_iter()
            .map(|w| (w, self.kernel(w).len()))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    pub fn cokernel_dims(&self) -> Vec<(u32, usize)> {
        self.weights()
            .into_iter()
            .map(|w| (w, self.target_dim(w) - self.comparison(w).rank()))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    /// The de Rham differential on the cdh side, `Ω^p_cdh -> Ω^{p+1}_cdh`.
    pub fn cdh_differential(&self, next: &CdhForms, w: u32) -> LinearMap<Q> {
        match (&self.model, &self.target, &next.target) {
            (CdhModel::Artinian { .. }, Some(t), Some(tn)) => de_rham_map(t, tn, w),
            (CdhModel::Curve { .. }, _, _) => {
                let (src, dst) = (self.target_dim(w), next.target_dim(w));
                let cols = (0..src)
                    .map(|_| {
                        if dst == 1 && self.p == 0 {
                            SVec::from_terms([(0, Q::from_int(w as i64))])
                        } else {
                            SVec::zero()
                        }
                    })
                    .collect();
                LinearMap::new(src, dst, cols)
            }
            _ => unreachable!(),
        }
    }
}

/// Homology dims of one sequence in one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceHomology {
    pub weight: u32,
    /// Dimension of each term, left to right.
    pub terms: Vec<usize>,
    /// Homology at each term.
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamReport {
    /// `0 -> nil -> tors Ω¹ -> tors Ω² -> …`
    pub torsion_sequence: Vec<SequenceHomology>,
    /// `0 -> Ω⁰_cdh/Ω⁰ -> Ω¹_cdh/Ω¹ -> …`
    pub cokernel_sequence: Vec<SequenceHomology>,
    /// `d ∘ d = 0` on every computed piece.
    pub d_squared_zero: bool,
}

impl DeRhamReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero
            && self
                .torsion_sequence
                .iter()
                .chain(&self.cokernel_sequence)
                .all(|s| s.homology.iter().all(|&h| h == 0))
    }
}

fn sequence_homology(weight: u32, dims: Vec<usize>, maps: &[LinearMap<Q>]) -> SequenceHomology {
    let ranks: Vec<usize> = maps.iter().map(LinearMap::rank).collect();
    let homology = (0..dims.len())
        .map(|k| {
            let out = ranks.get(k).copied().unwrap_or(0);
            let inc = if k == 0 { 0 } else { ranks[k - 1] };
            dims[k] - out - inc
        })
        .collect();
    SequenceHomology {
        weight,
        terms: dims,
        homology,
    }
}

/// Exactness of the torsion and cokernel de Rham sequences of a graded ring.
pub fn de_rham_exactness_suite(
    a: &FinitelyPresentedAlgebra<Q>,
    bound: Option<u32>,
) -> Result<DeRhamReport> {
    if a.weights().is_none() {
        return Err(Error::Unsupported(
            "the de Rham sequences need a graded algebra".into(),
        ));
    }
    let top = a.nvars();
    let forms = (0..=top + 1)
        .map(|p| omega_cdh(a, p, bound))
        .collect::<Result<Vec<_>>>()?;
    let mut report = DeRhamReport {
        torsion_sequence: Vec::new(),
        cokernel_sequence: Vec::new(),
        d_squared_zero: true,
    };
    for w in forms[0].weights() {
        let pieces: Vec<ModulePiece<Q>> = forms.iter().map(|f| f.source.piece(w)).collect();
        let d: Vec<LinearMap<Q>> = (0..=top)
            .map(|p| {
                de_rham_between(
                    &forms[p].source,
                    &forms[p + 1].source,
                    &pieces[p],
                    &pieces[p + 1],
                )
            })
            .collect();
        for p in 0..top {
            if !d[p + 1].compose(&d[p]).is_zero() {
                report.d_squared_zero = false;
            }
        }
        // kernels of the comparison maps and d restricted to them
        let kernels: Vec<Vec<SVec<Q>>> = (0..=top)
            .map(|p| forms[p].comparison_from(&pieces[p], w).kernel())
            .collect();
        let mut maps = Vec::new();
        for p in 0..top {
            let mut solver = Echelon::new();
            for (k, v) in kernels[p + 1].iter().enumerate() {
                solver.insert(v.clone(), SVec::unit(k));
            }
            let cols = kernels[p]
                .iter()
                .map(|v| {
                    let (res, coords) = solver.reduce(&d[p].apply(v));
                    assert!(res.is_zero(), "d preserves the comparison kernels");
                    coords
                })
                .collect();
            maps.push(LinearMap::new(kernels[p].len(), kernels[p + 1].len(), cols));
        }
        report.torsion_sequence.push(sequence_homology(
            w,
            kernels.iter().map(Vec::len).collect(),
            &maps,
        ));
        // cokernels of the comparison maps with the induced differential
        let quotients: Vec<Subquotient<Q>> = (0..=top)
            .map(|p| {
                let all: Vec<SVec<Q>> = (0..forms[p].target_dim(w)).map(SVec::unit).collect();
                let image = forms[p].comparison_from(&pieces[p], w);
                Subquotient::new(&all, image.cols())
            })
            .collect();
        let coker_maps: Vec<LinearMap<Q>> = (0..top)
            .map(|p| {
                let dc = forms[p].cdh_differential(&forms[p + 1], w);
                crate::linalg::induced_map(|v| dc.apply(v), &quotients[p], &quotients[p + 1])
                    .expect("cdh differential is compatible")
            })
            .collect();
        report.cokernel_sequence.push(sequence_homology(
            w,
            quotients.iter().map(Subquotient::dim).collect(),
            &coker_maps,
        ));
    }
    Ok(report)
}

/// Rank of a family of vectors; re-exported for callers assembling tables.
pub fn span_dim(vs: Vec<SVec<Q>>) -> usize {
    rank_of(vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn alg(src: &str) -> FinitelyPresentedAlgebra<Q> {
        FinitelyPresentedAlgebra::parse(src).unwrap()
    }

    #[test]
    fn dual_numbers_one_forms() {
        let a = alg("ring Q[x]/(x^2)");
        let om = kaehler(&a, 1, None).unwrap();
        assert_eq!(om.module.relations().len(), 1);
        assert_eq!(a.render(&om.module.relations()[0][0]), "2*x");
        assert_eq!(om.dim(), 1);
    }

    #[test]
    fn polynomial_ring_forms_are_free() {
        let a = alg("ring Q[x,y] weights x=1 y=1");
        for (p, rank) in [(0, 1), (1, 2), (2, 1), (3, 0)] {
            let om = kaehler(&a, p, Some(4)).unwrap();
            // rank * dim(Q[x,y]_{<= 4 - p})
            let free: usize = (0..=4u32)
                .map(|w| {
                    if w >= p as u32 {
                        (w - p as u32 + 1) as usize
                    } else {
                        0
                    }
                })
                .sum();
            assert_eq!(om.dim(), rank * free, "p = {p}");
        }
    }

    #[test]
    fn cusp_one_forms_per_weight() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let om = kaehler(&a, 1, Some(7)).unwrap();
        let dims: Vec<usize> = om.dims().iter().map(|(_, d)| *d).collect();
        assert_eq!(dims, [0, 0, 1, 1, 1, 2, 1, 2]);
    }

    #[test]
    fn de_rham_basics() {
        let a = alg("ring Q[x] weights x=1");
        let o0 = kaehler(&a, 0, Some(3)).unwrap();
        let o1 = kaehler(&a, 1, Some(3)).unwrap();
        // d(x^2) = 2x dx in weight 2
        let d = de_rham_map(&o0, &o1, 2);
        assert_eq!(d.to_dense_rows(), vec![vec![q(2)]]);
        let dual = alg("ring Q[x]/(x^2) weights x=1");
        let o1 = kaehler(&dual, 1, None).unwrap();
        let o2 = kaehler(&dual, 2, None).unwrap();
        assert_eq!(o2.dim(), 0);
        assert!(de_rham_map(&o1, &o2, 1).is_zero());
    }

    #[test]
    fn leibniz_on_generators() {
        // d(x * m) = m dx + x dm for standard monomials m of the cusp
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let o0 = kaehler(&a, 0, Some(9)).unwrap();
        let o1 = kaehler(&a, 1, Some(9)).unwrap();
        for w in 0..=7 {
            let src = o0.piece(w);
            let dst = o1.piece(w + 2);
            for (k, _) in src.basis.iter().enumerate() {
                let m = Polynomial::term(Q::one(), o0.module.standard()[src.basis[k].0].clone());
                let xm = Polynomial::var(2, 0).mul(&m);
                let lhs = o0.d_element(
                    &o0.piece(w + 2),
                    &o0.module.ambient(&o0.piece(w + 2), &[xm]),
                );
                let dm = o0.d_element(&src, &SVec::unit(k));
                let rhs: Vec<Polynomial<Q>> = vec![
                    m.add(&Polynomial::var(2, 0).mul(&dm[0])),
                    Polynomial::var(2, 0).mul(&dm[1]),
                ];
                let l = dst.class_of(&o1.module.ambient(&dst, &lhs));
                let r = dst.class_of(&o1.module.ambient(&dst, &rhs));
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn d_squared_vanishes_on_cusp() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let om: Vec<_> = (0..=2).map(|p| kaehler(&a, p, Some(7)).unwrap()).collect();
        for w in 0..=7 {
            let d0 = de_rham_map(&om[0], &om[1], w);
            let d1 = de_rham_map(&om[1], &om[2], w);
            assert!(d1.compose(&d0).is_zero());
        }
    }

    #[test]
    fn smooth_line_has_no_torsion() {
        let a = alg("ring Q[x] weights x=1");
        let om = kaehler(&a, 1, Some(8)).unwrap();
        assert_eq!(torsion_submodule(&om.module, None).unwrap().dim(), 0);
    }

    #[test]
    fn cusp_torsion() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let om = kaehler(&a, 1, Some(12)).unwrap();
        let t = torsion_submodule(&om.module, None).unwrap();
        assert_eq!(t.element, "x");
        assert_eq!(t.per_weight, [(5, 1), (7, 1)]);
        assert!(t.horizon(12) >= 7);
    }

    #[test]
    fn cross_torsion() {
        let a = alg("ring Q[x,y]/(x*y) weights x=1 y=1");
        let om = kaehler(&a, 1, Some(8)).unwrap();
        let t = torsion_submodule(&om.module, None).unwrap();
        assert_eq!(t.element, "x + y");
        assert_eq!(t.per_weight, [(2, 1)]);
    }

    #[test]
    fn torsion_rejects_nonreduced_and_zerodivisors() {
        let dual = alg("ring Q[x]/(x^2) weights x=1");
        let om = kaehler(&dual, 1, None).unwrap();
        assert!(matches!(
            torsion_submodule(&om.module, None),
            Err(Error::NotReduced)
        ));
        let cross = alg("ring Q[x,y]/(x*y) weights x=1 y=1");
        let om = kaehler(&cross, 1, Some(6)).unwrap();
        let x = Polynomial::var(2, 0);
        assert!(matches!(
            torsion_submodule(&om.module, Some(&x)),
            Err(Error::Zerodivisor(_))
        ));
    }

    #[test]
    fn cdh_forms_of_dual_numbers() {
        let a = alg("ring Q[x]/(x^2) weights x=1");
        let c0 = omega_cdh(&a, 0, None).unwrap();
        assert_eq!(c0.kernel_dims(), [(1, 1)]);
        assert!(c0.cokernel_dims().is_empty());
        let c1 = omega_cdh(&a, 1, None).unwrap();
        assert_eq!(c1.kernel_dims(), [(1, 1)]);
    }

    #[test]
    fn cdh_forms_of_cusp() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let c0 = omega_cdh(&a, 0, Some(10)).unwrap();
        assert_eq!(c0.cokernel_dims(), [(1, 1)]);
        assert!(c0.kernel_dims().is_empty());
        let c1 = omega_cdh(&a, 1, Some(10)).unwrap();
        assert_eq!(c1.cokernel_dims(), [(1, 1)]);
        assert_eq!(c1.kernel_dims(), [(5, 1), (7, 1)]);
        let c2 = omega_cdh(&a, 2, Some(10)).unwrap();
        assert_eq!(c2.target_dim(5), 0);
        assert_eq!(c2.kernel_dims(), [(5, 1), (7, 1)]);
    }

    #[test]
    fn unsupported_cdh_class() {
        let a = alg("ring Q[x,y]/(x*y) weights x=1 y=1");
        assert!(matches!(
            omega_cdh(&a, 0, Some(4)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn torsion_agrees_with_cdh_kernel_on_cusp() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let c1 = omega_cdh(&a, 1, Some(12)).unwrap();
        let t = torsion_submodule(&c1.source.module, None).unwrap();
        assert_eq!(t.per_weight, c1.kernel_dims());
        for (w, basis) in &t.bases {
            let cmp = c1.comparison(*w);
            assert!(basis.iter().all(|v| cmp.apply(v).is_zero()));
        }
    }

    #[test]
    fn de_rham_sequences_exact() {
        for (src, bound) in [
            ("ring Q[x]/(x^2) weights x=1", None),
            ("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3", Some(10)),
            ("ring Q[x] weights x=1", Some(6)),
        ] {
            let r = de_rham_exactness_suite(&alg(src), bound).unwrap();
            assert!(r.passed(), "{src}: {r:?}");
        }
    }

    #[test]
    fn de_rham_suite_needs_grading() {
        assert!(de_rham_exactness_suite(&alg("ring Q[x]/(x^2)"), None).is_err());
    }
}
