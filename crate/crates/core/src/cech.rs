//! Exactness of `0 -> A -> B -> B ⊗_A B` for a graded finite overring `B`,
//! one degree at a time. `B` may have weight-zero generators (idempotents),
//! so it is handled through its own Gröbner basis rather than as a
//! [`FinitelyPresentedAlgebra`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::FinitelyPresentedAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::linalg::{LinearMap, SVec};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::semigroup::NumericalSemigroup;

/// Largest exponent tried for a weight-zero variable before declaring the
/// weight-zero part infinite.
const WEIGHT_ZERO_CAP: u32 = 64;

/// `Q[y]/J` graded by non-negative weights, with finite-dimensional pieces.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    vars: Vec<String>,
    weights: Vec<u32>,
    gb: GroebnerBasis<Q>,
}

impl GradedQuotient {
    pub fn new(vars: Vec<String>, weights: Vec<u32>, relations: &[Polynomial<Q>]) -> Result<Self> {
        let n = vars.len();
        if weights.len() != n {
            return Err(Error::VariableCount {
                expected: n,
                found: weights.len(),
            });
        }
        let order = MonomialOrder::WeightedDegRevLex(weights.clone());
        if let Some(g) = relations.iter().find(|g| !g.is_homogeneous(&weights)) {
            return Err(Error::NotHomogeneous(g.render(&vars, &order)));
        }
        let gens: Vec<_> = relations.iter().filter(|g| !g.is_zero()).cloned().collect();
        let gb = if gens.is_empty() {
            groebner_basis(&[Polynomial::zero(n)], &order)?
        } else {
            groebner_basis(&gens, &order)?
        };
        Ok(GradedQuotient { vars, weights, gb })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn groebner(&self) -> &GroebnerBasis<Q> {
        &self.gb
    }

    /// Standard monomials of weight exactly `d`.
    pub fn piece(&self, d: u32) -> Result<Vec<Monomial>> {
        if self.gb.is_unit() {
            return Ok(Vec::new());
        }
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        self.rec(0, d, &mut exps, &mut out)?;
        out.sort_by(|a, b| self.gb.order().cmp(b, a));
        Ok(out)
    }

    fn rec(&self, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) -> Result<()> {
        if i == self.nvars() {
            if left == 0 {
                let m = Monomial(exps.clone());
                if self.gb.is_standard(&m) {
                    out.push(m);
                }
            }
            return Ok(());
        }
        let w = self.weights[i];
        let mut e = 0;
        loop {
            if w > 0 && e * w > left {
                break;
            }
            exps[i] = e;
            if w == 0 {
                // standard monomials are closed under division: stop at the
                // first exponent whose pure power is already a leading term
                let mut pure = vec![0; self.nvars()];
                pure[i] = e;
                if !self.gb.is_standard(&Monomial(pure)) {
                    break;
                }
                if e > WEIGHT_ZERO_CAP {
                    exps[i] = 0;
                    return Err(Error::Unsupported(format!(
                        "weight-zero variable {} has no pure-power relation",
                        self.vars[i]
                    )));
                }
            }
            self.rec(i + 1, left - e * w, exps, out)?;
            e += 1;
        }
        exps[i] = 0;
        Ok(())
    }

    fn coords(&self, p: &Polynomial<Q>, index: &HashMap<Monomial, usize>) -> SVec<Q> {
        SVec::from_terms(
            self.gb
                .normal_form(p)
                .terms()
                .map(|(m, c)| (index[m], c.clone())),
        )
    }

    pub fn render(&self, p: &Polynomial<Q>) -> String {
        self.gb.normal_form(p).render(&self.vars, self.gb.order())
    }
}

fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// `A ⊂ B` with `B` presented over `Q` and the generators of `A` sent to
/// `images` in `B`.
#[derive(Clone, Debug)]
pub struct Overring {
    pub a: FinitelyPresentedAlgebra<Q>,
    pub b: GradedQuotient,
    pub images: Vec<Polynomial<Q>>,
}

impl Overring {
    pub fn new(
        a: FinitelyPresentedAlgebra<Q>,
        b: GradedQuotient,
        images: Vec<Polynomial<Q>>,
    ) -> Result<Self> {
        let aw = a
            .weights()
            .ok_or_else(|| Error::Invalid("the subring must be graded".into()))?
            .to_vec();
        if images.len() != a.nvars() {
            return Err(Error::VariableCount {
                expected: a.nvars(),
                found: images.len(),
            });
        }
        for (i, f) in images.iter().enumerate() {
            let nf = b.gb.normal_form(f);
            if !nf.is_zero() && nf.weighted_degree(b.weights()) != Some(aw[i]) {
                return Err(Error::Invalid(format!(
                    "image of {} is not homogeneous of weight {}",
                    a.vars()[i],
                    aw[i]
                )));
            }
        }
        for g in a.generators() {
            if !b
                .gb
                .normal_form(&g.substitute(&images, b.nvars()))
                .is_zero()
            {
                return Err(Error::Invalid(format!(
                    "relation {} does not hold in the overring",
                    a.render(g)
                )));
            }
        }
        let o = Overring { a, b, images };
        o.check_module_finite()?;
        Ok(o)
    }

    /// `B` is finite over `A` iff `B / A_+ B` is finite-dimensional.
    fn check_module_finite(&self) -> Result<()> {
        let mut rel: Vec<_> = self.b.gb.polys().to_vec();
        rel.extend(self.images.iter().cloned());
        let fibre = GradedQuotient::new(self.b.vars.clone(), self.b.weights.clone(), &rel)?;
        if fibre.gb.is_zero_dimensional() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "the overring is not module-finite over the subring".into(),
            ))
        }
    }

    /// `Q[t] ⊃ Q[t^{a_1}, …, t^{a_k}]`.
    pub fn semigroup_normalization(s: &NumericalSemigroup) -> Result<Self> {
        let a = s.presentation()?;
        let b = GradedQuotient::new(vec!["t".into()], vec![1], &[])?;
        let t = Polynomial::<Q>::var(1, 0);
        let images = s.generators().iter().map(|&g| t.pow(g as u32)).collect();
        Overring::new(a, b, images)
    }

    /// `Q[x,y]/(xy) ⊂ Q[x] × Q[y]`, the second factor cut out by the
    /// idempotent `e` of weight zero.
    pub fn coordinate_cross() -> Result<Self> {
        let a = FinitelyPresentedAlgebra::parse("ring Q[x,y]/(x*y) weights x=1 y=1")?;
        // variables e, x, y
        let v = |i| Polynomial::<Q>::var(3, i);
        let (e, x, y) = (v(0), v(1), v(2));
        let rel = [e.mul(&e).sub(&e), e.mul(&x).sub(&x), e.mul(&y), x.mul(&y)];
        let b = GradedQuotient::new(
            vec!["e".into(), "x".into(), "y".into()],
            vec![0, 1, 1],
            &rel,
        )?;
        Overring::new(a, b, vec![x, y])
    }

    /// `B ⊗_A B` in doubled variables `y, y'`.
    pub fn tensor_square(&self) -> Result<GradedQuotient> {
        let m = self.b.nvars();
        let left: Vec<usize> = (0..m).collect();
        let right: Vec<usize> = (m..2 * m).collect();
        let mut rel = Vec::new();
        for g in self.b.gb.polys() {
            rel.push(g.relabel(&left, 2 * m));
            rel.push(g.relabel(&right, 2 * m));
        }
        for f in &self.images {
            rel.push(f.relabel(&left, 2 * m).sub(&f.relabel(&right, 2 * m)));
        }
        let mut vars = self.b.vars.clone();
        vars.extend(self.b.vars.iter().map(|v| format!("{v}'")));
        let mut weights = self.b.weights.clone();
        weights.extend(self.b.weights.iter().copied());
        GradedQuotient::new(vars, weights, &rel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CechStatus {
    Exact,
    /// `A_d -> B_d` is not injective.
    FailsAtZero,
    /// The equalizer of `B_d ⇉ (B ⊗_A B)_d` is bigger than `A_d`.
    FailsAtOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CechDegree {
    pub degree: u32,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_tensor: usize,
    pub image_rank: usize,
    pub equalizer_dim: usize,
    pub status: CechStatus,
    /// Elements of `B_d` not in `A`: their image `b⊗1 - 1⊗b`, or equalizer
    /// elements outside `A` when exactness fails.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CechReport {
    pub degrees: Vec<CechDegree>,
}

impl CechReport {
    pub fn exact(&self) -> bool {
        self.degrees.iter().all(|d| d.status == CechStatus::Exact)
    }

    /// Whether the equalizer equals the image of `A` in every degree.
    pub fn equalizer_is_a(&self) -> bool {
        self.degrees.iter().all(|d| d.equalizer_dim == d.image_rank)
    }
}

pub fn cech_exactness(o: &Overring, degree_bound: u32) -> Result<CechReport> {
    let t = o.tensor_square()?;
    let m = o.b.nvars();
    let left: Vec<usize> = (0..m).collect();
    let right: Vec<usize> = (m..2 * m).collect();
    let a_std = o.a.standard_monomials(Some(degree_bound))?;
    let mut degrees = Vec::new();
    for d in 0..=degree_bound {
        let a_basis: Vec<&Monomial> = a_std
            .iter()
            .filter(|mm| o.a.monomial_weight(mm) == d)
            .collect();
        let b_basis = o.b.piece(d)?;
        let t_basis = t.piece(d)?;
        let (b_index, t_index) = (index_of(&b_basis), index_of(&t_basis));
        let incl = LinearMap::new(
            a_basis.len(),
            b_basis.len(),
            a_basis
                .iter()
                .map(|mm| {
                    o.b.coords(
                        &Polynomial::term(<Q as Field>::one(), (*mm).clone())
                            .substitute(&o.images, m),
                        &b_index,
                    )
                })
                .collect(),
        );
        let diff_of = |p: &Polynomial<Q>| p.relabel(&left, 2 * m).sub(&p.relabel(&right, 2 * m));
        let delta = LinearMap::new(
            b_basis.len(),
            t_basis.len(),
            b_basis
                .iter()
                .map(|mm| {
                    t.coords(
                        &diff_of(&Polynomial::term(<Q as Field>::one(), mm.clone())),
                        &t_index,
                    )
                })
                .collect(),
        );
        debug_assert!(delta.compose(&incl).is_zero());
        let image_rank = incl.rank();
        let equalizer = delta.kernel();
        let status = if image_rank < a_basis.len() {
            CechStatus::FailsAtZero
        } else if equalizer.len() > image_rank {
            CechStatus::FailsAtOne
        } else {
            CechStatus::Exact
        };
        let to_poly = |v: &SVec<Q>| {
            Polynomial::from_terms(
                m,
                v.entries()
                    .iter()
                    .map(|(i, c)| (b_basis[*i].clone(), c.clone())),
            )
        };
        let mut witnesses = Vec::new();
        if status == CechStatus::FailsAtOne {
            for v in &equalizer {
                witnesses.push(o.b.render(&to_poly(v)));
            }
        } else {
            // monomials of B_d outside A, with b⊗1 - 1⊗b
            let mut span = crate::linalg::Echelon::new();
            for c in incl.cols() {
                span.insert_untagged(c.clone());
            }
            for (j, mm) in b_basis.iter().enumerate() {
                if witnesses.len() >= 3 {
                    break;
                }
                if !span.contains(&SVec::unit(j)) {
                    let p = Polynomial::term(<Q as Field>::one(), mm.clone());
                    witnesses.push(format!(
                        "{} ⊗ 1 - 1 ⊗ {} = {}",
                        o.b.render(&p),
                        o.b.render(&p),
                        t.render(&diff_of(&p))
                    ));
                }
            }
        }
        degrees.push(CechDegree {
            degree: d,
            dim_a: a_basis.len(),
            dim_b: b_basis.len(),
            dim_tensor: t_basis.len(),
            image_rank,
            equalizer_dim: equalizer.len(),
            status,
            witnesses,
        });
    }
    Ok(CechReport { degrees })
}
