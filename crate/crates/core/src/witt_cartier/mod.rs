//! Cartier operators `[r]`, `V_m`, `F_m` on weight-truncated models of
//! `M ⊗ tQ[t]`, Witt vectors by ghost components, and typical pieces.

pub mod nhc;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::basis_algebra::BasisAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_of_images, LinearMap, SVec};

/// The one-dimensional algebra spanned by its unit.
pub fn ground_algebra<F: Field>() -> BasisAlgebra<F> {
    BasisAlgebra::from_fn(vec!["1".into()], vec![0], None, |_, _| SVec::unit(0))
}

/// A finite-dimensional module over a basis algebra, one matrix per basis element.
#[derive(Clone, Debug)]
pub struct RModule<F> {
    base: BasisAlgebra<F>,
    dim: usize,
    action: Vec<LinearMap<F>>,
}

impl<F: Field> RModule<F> {
    /// Checks that the unit acts as the identity and that the action is
    /// multiplicative on basis elements.
    pub fn new(base: &BasisAlgebra<F>, dim: usize, action: Vec<LinearMap<F>>) -> Result<Self> {
        if action.len() != base.dim()
            || action
                .iter()
                .any(|a| a.src_dim() != dim || a.dst_dim() != dim)
        {
            return Err(Error::Invalid(
                "action matrices do not match the module".into(),
            ));
        }
        let m = RModule {
            base: base.clone(),
            dim,
            action,
        };
        if m.action[0]
            .first_difference(&LinearMap::identity(dim))
            .is_some()
        {
            return Err(Error::Invalid(
                "the unit does not act as the identity".into(),
            ));
        }
        for i in 0..base.dim() {
            for j in 0..base.dim() {
                let lhs = m.action[i].compose(&m.action[j]);
                if lhs.first_difference(&m.act(base.mul_basis(i, j))).is_some() {
                    return Err(Error::Invalid(format!(
                        "action is not multiplicative on ({i}, {j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    /// `R` acting on itself.
    pub fn regular(base: &BasisAlgebra<F>) -> Self {
        let d = base.dim();
        let action = (0..d)
            .map(|i| LinearMap::new(d, d, (0..d).map(|j| base.mul_basis(i, j).clone()).collect()))
            .collect();
        RModule {
            base: base.clone(),
            dim: d,
            action,
        }
    }

    /// `Q^dim` over the ground algebra.
    pub fn trivial(dim: usize) -> Self {
        RModule {
            base: ground_algebra(),
            dim,
            action: vec![LinearMap::identity(dim)],
        }
    }

    pub fn base(&self) -> &BasisAlgebra<F> {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of an algebra element.
    pub fn act(&self, r: &SVec<F>) -> LinearMap<F> {
        r.entries()
            .iter()
            .fold(LinearMap::zero(self.dim, self.dim), |acc, (i, c)| {
                acc.add(&self.action[*i].scale(c))
            })
    }
}

/// Operator data of a Cartier module. `verschiebung(m, w)` maps weight `w`
/// to `m w`; `frobenius(m, w)` maps weight `w` (divisible by `m`) to `w / m`.
pub trait CartierOperators<F>: Send + Sync {
    fn homothety(&self, r: &SVec<F>, w: u32) -> Result<LinearMap<F>>;
    fn verschiebung(&self, m: u32, w: u32) -> Result<LinearMap<F>>;
    fn frobenius(&self, m: u32, w: u32) -> Result<LinearMap<F>>;
}

struct TensorOps<F> {
    module: RModule<F>,
}

impl<F: Field> CartierOperators<F> for TensorOps<F> {
    fn homothety(&self, r: &SVec<F>, w: u32) -> Result<LinearMap<F>> {
        Ok(self.module.act(&self.module.base.pow(r, w)))
    }

    fn verschiebung(&self, _m: u32, _w: u32) -> Result<LinearMap<F>> {
        Ok(LinearMap::identity(self.module.dim))
    }

    fn frobenius(&self, m: u32, _w: u32) -> Result<LinearMap<F>> {
        Ok(LinearMap::identity(self.module.dim).scale(&F::from_int(m as i64)))
    }
}

/// A weight-truncated module with weights `1..=bound` and Cartier operators.
#[derive(Clone)]
pub struct CartierModule<F> {
    name: String,
    bound: u32,
    base: BasisAlgebra<F>,
    dims: Vec<usize>,
    /// `action[w - 1][b]`: basis element `b` of the base acting on `M_w`.
    action: Vec<Vec<LinearMap<F>>>,
    ops: Arc<dyn CartierOperators<F>>,
}

impl<F: Field> fmt::Debug for CartierModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CartierModule")
            .field("name", &self.name)
            .field("bound", &self.bound)
            .field("dims", &self.dims)
            .finish()
    }
}

impl<F: Field> CartierModule<F> {
    /// `M ⊗ tQ[t]` truncated at weight `bound`.
    pub fn tensor(module: &RModule<F>, bound: u32) -> Self {
        CartierModule {
            name: format!("M ⊗ tQ[t], dim M = {}", module.dim),
            bound,
            base: module.base.clone(),
            dims: vec![module.dim; bound as usize],
            action: vec![module.action.clone(); bound as usize],
            ops: Arc::new(TensorOps {
                module: module.clone(),
            }),
        }
    }

    /// The `tQ[t]` model.
    pub fn polynomial_model(bound: u32) -> Self {
        let mut m = Self::tensor(&RModule::trivial(1), bound);
        m.name = "tQ[t]".into();
        m
    }

    /// A module given by explicit operator data over `base`.
    pub fn from_parts(
        name: impl Into<String>,
        base: &BasisAlgebra<F>,
        dims: Vec<usize>,
        action: Vec<Vec<LinearMap<F>>>,
        ops: Arc<dyn CartierOperators<F>>,
    ) -> Self {
        CartierModule {
            name: name.into(),
            bound: dims.len() as u32,
            base: base.clone(),
            dims,
            action,
            ops,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn base(&self) -> &BasisAlgebra<F> {
        &self.base
    }

    pub fn dim(&self, w: u32) -> usize {
        if w == 0 || w > self.bound {
            0
        } else {
            self.dims[w as usize - 1]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The base algebra element `r` acting on `M_w`.
    pub fn scalar_action(&self, r: &SVec<F>, w: u32) -> LinearMap<F> {
        let d = self.dim(w);
        r.entries()
            .iter()
            .fold(LinearMap::zero(d, d), |acc, (i, c)| {
                acc.add(&self.action[w as usize - 1][*i].scale(c))
            })
    }

    fn check_weight(&self, w: u32) -> Result<()> {
        if w > self.bound {
            Err(Error::WeightOverflow {
                weight: w,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    /// Apply an operator. Results beyond the truncation are errors.
    pub fn act(&self, op: &CartierOp<F>, x: &Element<F>) -> Result<Element<F>> {
        let mut out = Element::zero();
        for (&w, v) in &x.parts {
            self.check_weight(w)?;
            match op {
                CartierOp::Homothety(r) => out.add_part(w, self.ops.homothety(r, w)?.apply(v)),
                CartierOp::Verschiebung(m) => {
                    if *m == 0 {
                        return Err(Error::Invalid("V_0 is undefined".into()));
                    }
                    self.check_weight(m * w)?;
                    out.add_part(m * w, self.ops.verschiebung(*m, w)?.apply(v));
                }
                CartierOp::Frobenius(m) => {
                    if *m == 0 {
                        return Err(Error::Invalid("F_0 is undefined".into()));
                    }
                    if w % m == 0 {
                        out.add_part(w / m, self.ops.frobenius(*m, w)?.apply(v));
                    }
                }
                CartierOp::Witt(r) => {
                    let g = r.ghost.get(w as usize - 1).ok_or(Error::WeightOverflow {
                        weight: w,
                        bound: r.ghost.len() as u32,
                    })?;
                    out.add_part(w, self.scalar_action(g, w).apply(v));
                }
            }
        }
        Ok(out)
    }

    /// Apply a word of operators, rightmost first.
    pub fn act_word(&self, word: &[CartierOp<F>], x: &Element<F>) -> Result<Element<F>> {
        word.iter()
            .rev()
            .try_fold(x.clone(), |acc, op| self.act(op, &acc))
    }

    /// Elements used when checking homothety identities: the base basis and
    /// the scalars 2 and 3.
    pub fn sample_elements(&self) -> Vec<(String, SVec<F>)> {
        let mut out: Vec<(String, SVec<F>)> = self
            .base
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), SVec::unit(i)))
            .collect();
        out.push(("2".into(), SVec::unit(0).scale(&F::from_int(2))));
        out.push(("3".into(), SVec::unit(0).scale(&F::from_int(3))));
        if self.base.dim() > 1 {
            let label = format!("1 + {}", self.base.labels()[1]);
            out.push((label, SVec::unit(0).add(&SVec::unit(1))));
        }
        out
    }
}

/// A finite sum of homogeneous components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<F> {
    parts: BTreeMap<u32, SVec<F>>,
}

impl<F: Field> Element<F> {
    pub fn zero() -> Self {
        Element {
            parts: BTreeMap::new(),
        }
    }

    pub fn homogeneous(w: u32, v: SVec<F>) -> Self {
        let mut e = Self::zero();
        e.add_part(w, v);
        e
    }

    fn add_part(&mut self, w: u32, v: SVec<F>) {
        let sum = self.parts.get(&w).map_or(v.clone(), |old| old.add(&v));
        if sum.is_zero() {
            self.parts.remove(&w);
        } else {
            self.parts.insert(w, sum);
        }
    }

    pub fn parts(&self) -> &BTreeMap<u32, SVec<F>> {
        &self.parts
    }

    pub fn part(&self, w: u32) -> SVec<F> {
        self.parts.get(&w).cloned().unwrap_or_else(SVec::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, v) in &other.parts {
            out.add_part(w, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (&w, v) in &self.parts {
            out.add_part(w, v.scale(c));
        }
        out
    }
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(w, v)| {
                let coords: Vec<String> = v
                    .entries()
                    .iter()
                    .map(|(i, c)| format!("{c}·e{i}"))
                    .collect();
                format!("({})⊗t^{w}", coords.join(" + "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A big Witt vector in characteristic 0, stored by ghost components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector<F> {
    pub ghost: Vec<SVec<F>>,
}

impl<F: Field> WittVector<F> {
    pub fn from_ghost(ghost: Vec<SVec<F>>) -> Self {
        WittVector { ghost }
    }

    /// Every ghost component equal to `r`.
    pub fn constant(r: &SVec<F>, len: usize) -> Self {
        WittVector {
            ghost: vec![r.clone(); len],
        }
    }

    /// The Teichmüller vector `(r, r², r³, …)`, which acts as `[r]`.
    pub fn teichmuller(base: &BasisAlgebra<F>, r: &SVec<F>, len: usize) -> Self {
        WittVector {
            ghost: (1..=len as u32).map(|k| base.pow(r, k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        WittVector {
            ghost: self
                .ghost
                .iter()
                .zip(&other.ghost)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, base: &BasisAlgebra<F>, other: &Self) -> Self {
        WittVector {
            ghost: self
                .ghost
                .iter()
                .zip(&other.ghost)
                .map(|(a, b)| base.mul(a, b))
                .collect(),
        }
    }
}

/// An operator acting on a [`CartierModule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartierOp<F> {
    Homothety(SVec<F>),
    Verschiebung(u32),
    Frobenius(u32),
    Witt(WittVector<F>),
}

/// Simultaneous eigenspace `{x : [r]x = r x}` per weight.
#[derive(Clone, Debug)]
pub struct TypicalPiece<F> {
    pub by_weight: Vec<(u32, Vec<SVec<F>>)>,
    /// `dim M_w` equals the total typical dimension for every weight.
    pub tensor_identity: bool,
}

impl<F: Field> TypicalPiece<F> {
    pub fn dim(&self) -> usize {
        self.by_weight.iter().map(|(_, b)| b.len()).sum()
    }

    pub fn dim_at(&self, w: u32) -> usize {
        self.by_weight
            .iter()
            .find(|(v, _)| *v == w)
            .map_or(0, |(_, b)| b.len())
    }
}

/// Typical piece with respect to the scalar `2` and the supplied elements.
pub fn typical_piece<F: Field>(
    module: &CartierModule<F>,
    elements: &[SVec<F>],
) -> Result<TypicalPiece<F>> {
    let mut rs = vec![SVec::unit(0).scale(&F::from_int(2))];
    rs.extend(elements.iter().cloned());
    let mut by_weight = Vec::new();
    for w in 1..=module.bound {
        let d = module.dim(w);
        let diffs = rs
            .iter()
            .map(|r| Ok(module.ops.homothety(r, w)?.sub(&module.scalar_action(r, w))))
            .collect::<Result<Vec<_>>>()?;
        let stacked: Vec<SVec<F>> = (0..d)
            .map(|j| {
                let terms = diffs.iter().enumerate().flat_map(|(k, m)| {
                    m.col(j)
                        .entries()
                        .iter()
                        .map(move |(r, c)| (k * d + r, c.clone()))
                });
                SVec::from_terms(terms.collect::<Vec<_>>())
            })
            .collect();
        let basis = kernel_of_images(&stacked);
        if !basis.is_empty() {
            by_weight.push((w, basis));
        }
    }
    let mut piece = TypicalPiece {
        by_weight,
        tensor_identity: false,
    };
    let total = piece.dim();
    piece.tensor_identity = (1..=module.bound).all(|w| module.dim(w) == total);
    Ok(piece)
}

/// A failed identity, evaluated on a basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<F> {
    pub input: Element<F>,
    pub left: Element<F>,
    pub right: Element<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck<F> {
    pub identity: String,
    /// Basis vectors on which both sides were evaluated.
    pub evaluations: usize,
    pub witness: Option<Witness<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport<F> {
    pub module: String,
    pub checks: Vec<RelationCheck<F>>,
}

impl<F: Field> RelationReport<F> {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck<F>> {
        self.checks.iter().filter(|c| c.witness.is_some())
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Evaluate `lhs` and `rhs` on every basis vector where neither overflows.
fn compare<F: Field>(
    module: &CartierModule<F>,
    identity: String,
    lhs: &[CartierOp<F>],
    rhs: &[CartierOp<F>],
) -> Result<RelationCheck<F>> {
    let mut check = RelationCheck {
        identity,
        evaluations: 0,
        witness: None,
    };
    for w in 1..=module.bound {
        for j in 0..module.dim(w) {
            let x = Element::homogeneous(w, SVec::unit(j));
            let (l, r) = match (module.act_word(lhs, &x), module.act_word(rhs, &x)) {
                (Ok(l), Ok(r)) => (l, r),
                (Err(Error::WeightOverflow { .. }), _) | (_, Err(Error::WeightOverflow { .. })) => {
                    continue
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            check.evaluations += 1;
            if l != r && check.witness.is_none() {
                check.witness = Some(Witness {
                    input: x,
                    left: l,
                    right: r,
                });
            }
        }
    }
    Ok(check)
}

/// The operator identities for all `m, m' <= m_max`, as exact matrix
/// identities inside the truncation.
pub fn check_relations<F: Field>(
    module: &CartierModule<F>,
    m_max: u32,
) -> Result<RelationReport<F>> {
    use CartierOp::{Frobenius as Fr, Homothety as H, Verschiebung as V};
    let mut checks = Vec::new();
    // multiplication by an integer is the Witt vector with constant ghost components
    let bound = module.bound as usize;
    let scalar = |c: i64| {
        CartierOp::Witt(WittVector::constant(
            &SVec::unit(0).scale(&F::from_int(c)),
            bound,
        ))
    };
    for m in 1..=m_max {
        checks.push(compare(
            module,
            format!("F_{m} V_{m} = {m}"),
            &[Fr(m), V(m)],
            &[scalar(m as i64)],
        )?);
        for k in 1..=m_max {
            checks.push(compare(
                module,
                format!("V_{m} V_{k} = V_{}", m * k),
                &[V(m), V(k)],
                &[V(m * k)],
            )?);
            checks.push(compare(
                module,
                format!("F_{m} F_{k} = F_{}", m * k),
                &[Fr(m), Fr(k)],
                &[Fr(m * k)],
            )?);
            if gcd(m, k) == 1 {
                checks.push(compare(
                    module,
                    format!("F_{m} V_{k} = V_{k} F_{m}"),
                    &[Fr(m), V(k)],
                    &[V(k), Fr(m)],
                )?);
            }
        }
    }
    let samples = module.sample_elements();
    for (ln, r) in &samples {
        for (sn, s) in &samples {
            let rs = module.base.mul(r, s);
            checks.push(compare(
                module,
                format!("[{ln}][{sn}] = [({ln})({sn})]"),
                &[H(r.clone()), H(s.clone())],
                &[H(rs)],
            )?);
        }
        for m in 1..=m_max {
            let rm = module.base.pow(r, m);
            checks.push(compare(
                module,
                format!("[{ln}] V_{m} = V_{m} [({ln})^{m}]"),
                &[H(r.clone()), V(m)],
                &[V(m), H(rm.clone())],
            )?);
            checks.push(compare(
                module,
                format!("F_{m} [{ln}] = [({ln})^{m}] F_{m}"),
                &[Fr(m), H(r.clone())],
                &[H(rm), Fr(m)],
            )?);
        }
    }
    Ok(RelationReport {
        module: module.name.clone(),
        checks,
    })
}
