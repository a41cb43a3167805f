//! Buchberger's algorithm with the normal selection strategy and the
//! product and chain criteria.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// A reduced Gröbner basis: monic, auto-reduced, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F> {
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<Polynomial<F>>,
    leads: Vec<Monomial>,
}

/// Full reduction of `p` modulo `basis` (leading monomials precomputed).
fn reduce_full<F: Field>(
    p: &Polynomial<F>,
    basis: &[Polynomial<F>],
    leads: &[Monomial],
    order: &MonomialOrder,
) -> Polynomial<F> {
    let mut p = p.clone();
    let mut rem = Polynomial::zero(p.nvars());
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|l| l.divides(&m)) {
            Some(k) => {
                let g = &basis[k];
                let lc = g
                    .leading_term(order)
                    .expect("nonzero basis element")
                    .1
                    .clone();
                let factor = c.div(&lc);
                p = p.sub(&g.mul_term(&factor, &leads[k].quotient_of(&m)));
            }
            None => {
                let t = Polynomial::term(c, m);
                p = p.sub(&t);
                rem = rem.add(&t);
            }
        }
    }
    rem
}

fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: &MonomialOrder,
) -> Polynomial<F> {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let l = mf.lcm(mg);
    f.mul_term(&cf.inv(), &mf.quotient_of(&l))
        .sub(&g.mul_term(&cg.inv(), &mg.quotient_of(&l)))
}

/// Computes the reduced Gröbner basis of the ideal generated by `generators`.
pub fn groebner_basis<F: Field>(
    generators: &[Polynomial<F>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>> {
    let nvars = generators.first().map_or(0, Polynomial::nvars);
    for g in generators {
        if g.nvars() != nvars {
            return Err(Error::VariableCount {
                expected: nvars,
                found: g.nvars(),
            });
        }
    }
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in generators {
        let r = reduce_full(g, &basis, &leads, order);
        if !r.is_zero() {
            let r = r.make_monic(order);
            leads.push(r.leading_monomial(order).expect("nonzero").clone());
            basis.push(r);
        }
    }
    // Pairs still to be processed, as (i, j) with i < j.
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while !pending.is_empty() {
        // normal strategy: smallest lcm first
        let &(i, j) = pending
            .iter()
            .min_by(|a, b| {
                order
                    .cmp(&leads[a.0].lcm(&leads[a.1]), &leads[b.0].lcm(&leads[b.1]))
                    .then(a.cmp(b))
            })
            .expect("nonempty");
        pending.remove(&(i, j));
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let l = leads[i].lcm(&leads[j]);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce_full(&s, &basis, &leads, order);
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic(order);
        let n = basis.len();
        leads.push(r.leading_monomial(order).expect("nonzero").clone());
        basis.push(r);
        for k in 0..n {
            pending.insert((k, n));
        }
    }
    Ok(GroebnerBasis::reduce_basis(nvars, order.clone(), basis))
}

impl<F: Field> GroebnerBasis<F> {
    fn reduce_basis(nvars: usize, order: MonomialOrder, basis: Vec<Polynomial<F>>) -> Self {
        // drop elements whose leading monomial is divisible by another's
        let leads: Vec<Monomial> = basis
            .iter()
            .map(|p| p.leading_monomial(&order).expect("nonzero").clone())
            .collect();
        let mut keep: Vec<usize> = Vec::new();
        for i in 0..basis.len() {
            let redundant = (0..basis.len())
                .any(|j| j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i));
            if !redundant {
                keep.push(i);
            }
        }
        let minimal: Vec<Polynomial<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
        let mut reduced = Vec::with_capacity(minimal.len());
        for (k, p) in minimal.iter().enumerate() {
            let lead = p
                .leading_term(&order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .expect("nonzero");
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, q)| q.clone())
                .collect();
            let other_leads: Vec<Monomial> = others
                .iter()
                .map(|q| q.leading_monomial(&order).expect("nonzero").clone())
                .collect();
            let tail = p.sub(&Polynomial::term(lead.1.clone(), lead.0.clone()));
            let tail = reduce_full(&tail, &others, &other_leads, &order);
            reduced.push(
                Polynomial::term(lead.1, lead.0)
                    .add(&tail)
                    .make_monic(&order),
            );
        }
        reduced.sort_by(|a, b| {
            order.cmp(
                a.leading_monomial(&order).expect("nonzero"),
                b.leading_monomial(&order).expect("nonzero"),
            )
        });
        let leads = reduced
            .iter()
            .map(|p| p.leading_monomial(&order).expect("nonzero").clone())
            .collect();
        GroebnerBasis {
            nvars,
            order,
            polys: reduced,
            leads,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// Whether the basis is the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.leads.iter().any(Monomial::is_one)
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        reduce_full(p, &self.polys, &self.leads, &self.order)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether a monomial is standard (not divisible by any leading monomial).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    /// Zero-dimensional iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        self.is_unit()
            || (0..self.nvars).all(|i| self.leads.iter().any(|l| l.pure_power_of() == Some(i)))
    }

    /// Whether this basis is the reduced basis of the same ideal as `other` (same order).
    pub fn same_ideal(&self, other: &GroebnerBasis<F>) -> bool {
        self.order == other.order && self.polys == other.polys
    }
}
