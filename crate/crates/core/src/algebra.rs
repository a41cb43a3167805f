//! Quotient algebras `F[x_1..x_n]/I` with Gröbner-basis normal forms.

use std::collections::HashMap;

use crate::basis_algebra::BasisAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, UniPoly, Q};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::linalg::{Echelon, Insertion, SVec};
use crate::parse::RingSpec;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Debug)]
pub struct FinitelyPresentedAlgebra<F> {
    vars: Vec<String>,
    generators: Vec<Polynomial<F>>,
    gb: GroebnerBasis<F>,
    weights: Option<Vec<u32>>,
    standard: Option<Vec<Monomial>>,
}

impl<F: Field> FinitelyPresentedAlgebra<F> {
    /// Uses degree-reverse-lex, or its weighted variant when weights are given.
    pub fn new(
        vars: Vec<String>,
        generators: Vec<Polynomial<F>>,
        weights: Option<Vec<u32>>,
    ) -> Result<Self> {
        let order = match &weights {
            Some(w) => MonomialOrder::WeightedRevLex(w.clone()),
            None => MonomialOrder::DegRevLex,
        };
        Self::with_order(vars, generators, weights, order)
    }

    pub fn with_order(
        vars: Vec<String>,
        generators: Vec<Polynomial<F>>,
        weights: Option<Vec<u32>>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let n = vars.len();
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::VariableCount {
                    expected: n,
                    found: g.nvars(),
                });
            }
        }
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(Error::VariableCount {
                    expected: n,
                    found: w.len(),
                });
            }
            if w.contains(&0) {
                return Err(Error::Invalid("weights must be positive".into()));
            }
            if let Some(g) = generators.iter().find(|g| !g.is_homogeneous(w)) {
                return Err(Error::NotHomogeneous(g.render(&vars, &order)));
            }
        }
        let generators: Vec<_> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let gb = if generators.is_empty() {
            groebner_basis(&[Polynomial::zero(n)], &order)?
        } else {
            groebner_basis(&generators, &order)?
        };
        let mut alg = FinitelyPresentedAlgebra {
            vars,
            generators,
            gb,
            weights,
            standard: None,
        };
        if alg.gb.is_zero_dimensional() {
            alg.standard = Some(alg.enumerate_finite());
        }
        Ok(alg)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn groebner(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn order(&self) -> &MonomialOrder {
        self.gb.order()
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.standard.is_some()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_unit()
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        self.gb.normal_form(p)
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        Polynomial::var(self.nvars(), i)
    }

    pub fn render(&self, p: &Polynomial<F>) -> String {
        p.render(&self.vars, self.order())
    }

    /// Weight of a monomial: weighted degree if graded, total degree otherwise.
    pub fn monomial_weight(&self, m: &Monomial) -> u32 {
        match &self.weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree(),
        }
    }

    fn sort_basis(&self, basis: &mut [Monomial]) {
        let order = self.order().clone();
        basis.sort_by(|a, b| {
            self.monomial_weight(a)
                .cmp(&self.monomial_weight(b))
                .then_with(|| order.cmp(a, b))
        });
    }

    fn enumerate_finite(&self) -> Vec<Monomial> {
        if self.gb.is_unit() {
            return Vec::new();
        }
        let n = self.nvars();
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![Monomial::one(n)];
        while let Some(m) = frontier.pop() {
            if !self.gb.is_standard(&m) || !seen.insert(m.clone()) {
                continue;
            }
            for i in 0..n {
                frontier.push(m.mul(&Monomial::var(n, i)));
            }
        }
        let mut basis: Vec<Monomial> = seen.into_iter().collect();
        self.sort_basis(&mut basis);
        basis
    }

    /// Standard monomials, sorted by weight and then by the monomial order.
    /// Zero-dimensional algebras need no bound; graded algebras are truncated
    /// at weight `bound`.
    pub fn standard_monomials(&self, bound: Option<u32>) -> Result<Vec<Monomial>> {
        if let Some(s) = &self.standard {
            return Ok(match (bound, &self.weights) {
                (Some(b), Some(_)) => s
                    .iter()
                    .filter(|m| self.monomial_weight(m) <= b)
                    .cloned()
                    .collect(),
                _ => s.clone(),
            });
        }
        let (Some(w), Some(b)) = (&self.weights, bound) else {
            return Err(Error::NotZeroDimensional);
        };
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, w: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                out.push(Monomial(exps.clone()));
                return;
            }
            let mut e = 0;
            while e * w[i] <= left {
                exps[i] = e;
                rec(i + 1, left - e * w[i], w, exps, out);
                e += 1;
            }
            exps[i] = 0;
        }
        rec(0, b, w, &mut exps, &mut out);
        let mut basis: Vec<Monomial> = out.into_iter().filter(|m| self.gb.is_standard(m)).collect();
        if self.gb.is_unit() {
            basis.clear();
        }
        self.sort_basis(&mut basis);
        Ok(basis)
    }

    /// Vector-space dimension, when finite.
    pub fn dimension(&self) -> Option<usize> {
        self.standard.as_ref().map(Vec::len)
    }

    /// Structure-constant model on the standard monomials (truncated at
    /// `bound` for graded algebras of positive dimension).
    pub fn basis_algebra(&self, bound: Option<u32>) -> Result<BasisAlgebra<F>> {
        let basis = self.standard_monomials(bound)?;
        if basis.is_empty() {
            return Err(Error::Invalid(
                "the zero ring has no unit basis element".into(),
            ));
        }
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let labels = basis.iter().map(|m| m.render(&self.vars)).collect();
        let weights = match &self.weights {
            Some(w) => basis.iter().map(|m| m.weighted_degree(w)).collect(),
            None => vec![0; basis.len()],
        };
        let truncate = if self.is_zero_dimensional() {
            None
        } else {
            bound
        };
        let n = self.nvars();
        Ok(BasisAlgebra::from_fn(labels, weights, truncate, |i, j| {
            let p = self.normal_form(&Polynomial::term(F::one(), basis[i].mul(&basis[j])));
            coordinates_in(&p, &index, n)
        }))
    }

    /// Coordinates of the normal form of `p` in the standard basis of
    /// `basis_algebra(bound)`. Terms outside the truncation are dropped.
    pub fn coordinates(&self, p: &Polynomial<F>, bound: Option<u32>) -> Result<SVec<F>> {
        let basis = self.standard_monomials(bound)?;
        let index: HashMap<Monomial, usize> =
            basis.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(coordinates_in(&self.normal_form(p), &index, self.nvars()))
    }

    /// Polynomial represented by a coordinate vector.
    pub fn from_coordinates(&self, v: &SVec<F>, bound: Option<u32>) -> Result<Polynomial<F>> {
        let basis = self.standard_monomials(bound)?;
        Ok(Polynomial::from_terms(
            self.nvars(),
            v.entries()
                .iter()
                .map(|(i, c)| (basis[*i].clone(), c.clone())),
        ))
    }

    /// A new presentation with extra relations.
    pub fn quotient(&self, extra: &[Polynomial<F>]) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::with_order(
            self.vars.clone(),
            gens,
            self.weights.clone(),
            self.order().clone(),
        )
    }

    /// Span of the ideal generated by `gens` inside the finite basis, as an
    /// echelon basis of coordinate vectors.
    pub fn ideal_span(&self, gens: &[Polynomial<F>], bound: Option<u32>) -> Result<Vec<SVec<F>>> {
        let basis = self.standard_monomials(bound)?;
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut e = Echelon::new();
        let mut out = Vec::new();
        for g in gens {
            for m in &basis {
                let v = coordinates_in(
                    &self.normal_form(&g.mul_term(&F::one(), m)),
                    &index,
                    self.nvars(),
                );
                if e.insert_untagged(v.clone()) {
                    out.push(v);
                }
            }
        }
        Ok(out)
    }
}

fn coordinates_in<F: Field>(
    p: &Polynomial<F>,
    index: &HashMap<Monomial, usize>,
    _n: usize,
) -> SVec<F> {
    SVec::from_terms(
        p.terms()
            .filter_map(|(m, c)| index.get(m).map(|&i| (i, c.clone()))),
    )
}

/// The nilradical of a zero-dimensional algebra and the reduced quotient.
#[derive(Clone, Debug)]
pub struct Nilradical<F> {
    /// Generators `sqf(μ_i)(x_i)` that are nonzero in the algebra.
    pub generators: Vec<Polynomial<F>>,
    /// Basis of the nilradical as a subspace of the algebra.
    pub span: Vec<SVec<F>>,
    pub reduced: FinitelyPresentedAlgebra<F>,
    /// Smallest `N` with `nil^N = 0`.
    pub nilpotency: usize,
}

impl FinitelyPresentedAlgebra<Q> {
    pub fn from_spec(spec: &RingSpec) -> Result<Self> {
        Self::new(
            spec.vars.clone(),
            spec.generators.clone(),
            spec.weights.clone(),
        )
    }

    pub fn parse(src: &str) -> Result<Self> {
        Self::from_spec(&crate::parse::parse_ring(src)?)
    }

    /// Minimal polynomial of the variable `i` over Q (the generator of the
    /// eliminant `I ∩ Q[x_i]`).
    pub fn eliminant(&self, i: usize) -> Result<UniPoly> {
        let a = self.basis_algebra(None)?;
        let x = self.coordinates(&self.var(i), None)?;
        Ok(a.minimal_polynomial(&x))
    }

    /// Whether every variable has a squarefree eliminant; for zero-dimensional
    /// ideals in characteristic zero this is equivalent to being radical.
    pub fn is_reduced_zero_dim(&self) -> Result<bool> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        for i in 0..self.nvars() {
            if !self.eliminant(i)?.is_squarefree() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn nilradical_zero_dim(&self) -> Result<Nilradical<Q>> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        let mut generators = Vec::new();
        for i in 0..self.nvars() {
            let sqf = self.eliminant(i)?.squarefree_part();
            let g = self.normal_form(&eval_univariate(&sqf, &self.var(i)));
            if !g.is_zero() {
                generators.push(g);
            }
        }
        let reduced = self.quotient(&generators)?;
        if !reduced.is_reduced_zero_dim()? {
            return Err(Error::NotReduced);
        }
        let span = self.ideal_span(&generators, None)?;
        let a = self.basis_algebra(None)?;
        let dim = a.dim();
        let mut power = span.clone();
        let mut nilpotency = 1;
        while !power.is_empty() {
            if nilpotency > dim {
                return Err(Error::NotNilpotent);
            }
            let mut e = Echelon::new();
            let mut next = Vec::new();
            for p in &power {
                for s in &span {
                    let v = a.mul(p, s);
                    if let Insertion::Independent = e.insert(v.clone(), SVec::zero()) {
                        next.push(v);
                    }
                }
            }
            power = next;
            nilpotency += 1;
        }
        if span.is_empty() {
            nilpotency = 0;
        }
        Ok(Nilradical {
            generators,
            span,
            reduced,
            nilpotency,
        })
    }

    pub fn extend_scalars<G: Field>(&self) -> Result<FinitelyPresentedAlgebra<G>> {
        let convert = |p: &Polynomial<Q>| {
            Polynomial::from_terms(
                p.nvars(),
                p.terms().map(|(m, c)| (m.clone(), G::from_rational(c))),
            )
        };
        FinitelyPresentedAlgebra::with_order(
            self.vars.clone(),
            self.generators.iter().map(convert).collect(),
            self.weights.clone(),
            self.order().clone(),
        )
    }
}

/// `f(p)` for a univariate `f` over Q.
pub fn eval_univariate<F: Field>(f: &UniPoly, p: &Polynomial<F>) -> Polynomial<F> {
    let n = p.nvars();
    let mut acc = Polynomial::zero(n);
    for c in f.coeffs().iter().rev() {
        acc = acc
            .mul(p)
            .add(&Polynomial::constant(n, F::from_rational(c)));
    }
    acc
}

impl BasisAlgebra<Q> {
    /// Minimal polynomial of an element, by a Krylov sequence `1, a, a², …`.
    pub fn minimal_polynomial(&self, a: &SVec<Q>) -> UniPoly {
        let mut e = Echelon::new();
        let mut power = self.one();
        let mut k = 0;
        loop {
            if let Insertion::Dependent(rel) = e.insert(power.clone(), SVec::unit(k)) {
                return UniPoly::new(rel.to_dense(k + 1)).monic();
            }
            power = self.mul(&power, a);
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn alg(src: &str) -> FinitelyPresentedAlgebra<Q> {
        FinitelyPresentedAlgebra::parse(src).unwrap()
    }

    fn labels(a: &FinitelyPresentedAlgebra<Q>, bound: Option<u32>) -> Vec<String> {
        a.standard_monomials(bound)
            .unwrap()
            .iter()
            .map(|m| m.render(a.vars()))
            .collect()
    }

    #[test]
    fn dual_number_basis() {
        let a = alg("ring Q[x]/(x^2)");
        assert_eq!(labels(&a, None), ["1", "x"]);
        assert_eq!(a.dimension(), Some(2));
    }

    #[test]
    fn cusp_truncated_basis() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        assert!(!a.is_zero_dimensional());
        // weighted revlex makes x^3 the leading term of the relation
        assert_eq!(
            labels(&a, Some(7)),
            ["1", "x", "y", "x^2", "x*y", "y^2", "x^2*y"]
        );
        let ws: Vec<u32> = a
            .standard_monomials(Some(7))
            .unwrap()
            .iter()
            .map(|m| a.monomial_weight(m))
            .collect();
        assert_eq!(ws, [0, 2, 3, 4, 5, 6, 7]);
        assert_eq!(a.standard_monomials(None), Err(Error::NotZeroDimensional));
    }

    #[test]
    fn fat_point_basis() {
        let a = alg("ring Q[x,y]/(x^2, x*y, y^2)");
        assert_eq!(labels(&a, None), ["1", "y", "x"]);
        assert_eq!(a.dimension(), Some(3));
    }

    #[test]
    fn basis_dimension_matches_multiplication_algebra_rank() {
        for src in [
            "ring Q[x]/(x^3)",
            "ring Q[x,y]/(x^2, y^3)",
            "ring Q[x,y]/(x^2 - y, y^2 - 1)",
        ] {
            let a = alg(src);
            let b = a.basis_algebra(None).unwrap();
            // the left-regular representation is faithful: multiplication
            // matrices of the basis elements are linearly independent
            let mats: Vec<SVec<Q>> = (0..b.dim())
                .map(|i| {
                    let mut terms = Vec::new();
                    for j in 0..b.dim() {
                        for (k, c) in b.mul_basis(i, j).entries() {
                            terms.push((j * b.dim() + k, c.clone()));
                        }
                    }
                    SVec::from_terms(terms)
                })
                .collect();
            assert_eq!(crate::linalg::rank_of(mats), a.dimension().unwrap());
        }
    }

    #[test]
    fn nilradical_of_dual_numbers() {
        let a = alg("ring Q[x]/(x^2)");
        let nil = a.nilradical_zero_dim().unwrap();
        assert_eq!(nil.generators.len(), 1);
        assert_eq!(a.render(&nil.generators[0]), "x");
        assert_eq!(nil.reduced.dimension(), Some(1));
        assert_eq!(nil.nilpotency, 2);
    }

    #[test]
    fn nilradical_of_etale_algebra_is_zero() {
        let a = alg("ring Q[x]/(x^2 - 1)");
        let nil = a.nilradical_zero_dim().unwrap();
        assert!(nil.generators.is_empty());
        assert_eq!(nil.reduced.dimension(), Some(2));
        assert_eq!(nil.nilpotency, 0);
        assert!(a.is_reduced_zero_dim().unwrap());
    }

    #[test]
    fn nilradical_of_monomial_fat_point() {
        let a = alg("ring Q[x,y]/(x^2, y^3)");
        let nil = a.nilradical_zero_dim().unwrap();
        let rendered: Vec<String> = nil.generators.iter().map(|g| a.render(g)).collect();
        assert_eq!(rendered, ["x", "y"]);
        assert_eq!(nil.span.len(), 5);
        assert_eq!(nil.nilpotency, 4);
    }

    #[test]
    fn nilradical_mixed_case() {
        // Q[x]/((x-1)^2 (x+1)) has nil spanned by (x-1)(x+1)
        let a = alg("ring Q[x]/((x-1)^2*(x+1))");
        let nil = a.nilradical_zero_dim().unwrap();
        assert_eq!(nil.span.len(), 1);
        assert_eq!(nil.reduced.dimension(), Some(2));
    }

    #[test]
    fn positive_dimensional_nilradical_rejected() {
        let a = alg("ring Q[x,y]/(x*y)");
        assert!(matches!(
            a.nilradical_zero_dim(),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let err =
            FinitelyPresentedAlgebra::parse("ring Q[x,y]/(y^2 - x^2) weights x=2 y=3").unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous(_)));
    }

    #[test]
    fn minimal_polynomial_krylov() {
        let a = alg("ring Q[x]/(x^3 - 2x)");
        let m = a.eliminant(0).unwrap();
        assert_eq!(m.coeffs(), &[q(0), q(-2), q(0), q(1)]);
    }

    #[test]
    fn truncated_products_drop_overflow() {
        let a = alg("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3");
        let b = a.basis_algebra(Some(5)).unwrap();
        // y * y has weight 6 > 5
        assert!(b.mul_basis(2, 2).is_zero());
        // x * y = xy
        assert_eq!(b.mul_basis(1, 2), &SVec::unit(4));
    }
}
