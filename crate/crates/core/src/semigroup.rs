//! Numerical semigroups and their semigroup rings `Q[t^{a_1}, …, t^{a_k}]`.

use serde::{Deserialize, Serialize};

use crate::algebra::FinitelyPresentedAlgebra;
use crate::basis_algebra::BasisAlgebra;
use crate::error::{Error, Result};
use crate::field::{gcd_all, Field, Q};
use crate::groebner::groebner_basis;
use crate::linalg::SVec;
use crate::poly::{MonomialOrder, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gaps: Vec<u64>,
}

const VAR_NAMES: [&str; 6] = ["x", "y", "z", "w", "v", "s"];

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSemigroup("no generators".into()));
        }
        if generators.contains(&0) {
            return Err(Error::InvalidSemigroup(
                "generators must be positive".into(),
            ));
        }
        if gcd_all(generators) != 1 {
            return Err(Error::InvalidSemigroup(format!(
                "gcd of {generators:?} is not 1"
            )));
        }
        let lo = *generators.iter().min().expect("nonempty");
        let hi = *generators.iter().max().expect("nonempty");
        // every integer >= (lo - 1)(hi - 1) lies in the semigroup
        let limit = ((lo - 1) * (hi - 1)) as usize + 1;
        let mut member = vec![false; limit + 1];
        member[0] = true;
        for n in 1..=limit {
            member[n] = generators
                .iter()
                .any(|&a| a as usize <= n && member[n - a as usize]);
        }
        let gaps = (0..=limit)
            .filter(|&n| !member[n])
            .map(|n| n as u64)
            .collect();
        Ok(NumericalSemigroup {
            generators: generators.to_vec(),
            gaps,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Largest gap, or -1 for the whole of N.
    pub fn frobenius(&self) -> i64 {
        self.gaps.last().map_or(-1, |&g| g as i64)
    }

    pub fn conductor(&self) -> u64 {
        (self.frobenius() + 1) as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        self.gaps.binary_search(&n).is_err()
    }

    /// Generators not expressible through the others.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let mut gens: Vec<u64> = self.generators.clone();
        gens.sort_unstable();
        gens.dedup();
        let mut minimal: Vec<u64> = Vec::new();
        for &a in &gens {
            let mut reach = vec![false; a as usize + 1];
            reach[0] = true;
            for n in 1..=a as usize {
                reach[n] = minimal
                    .iter()
                    .any(|&m| m as usize <= n && reach[n - m as usize]);
            }
            if !reach[a as usize] {
                minimal.push(a);
            }
        }
        minimal
    }

    pub fn elements_up_to(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&n| self.contains(n as u64)).collect()
    }

    pub fn var_names(&self) -> Vec<String> {
        let k = self.generators.len();
        if k <= VAR_NAMES.len() {
            VAR_NAMES[..k].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=k).map(|i| format!("x{i}")).collect()
        }
    }

    /// Presentation `Q[x_1..x_k]/I` with `x_i ↦ t^{a_i}`, weights `a_i`. The
    /// toric ideal `I` comes from eliminating `t` from `x_i - t^{a_i}`.
    pub fn presentation(&self) -> Result<FinitelyPresentedAlgebra<Q>> {
        let weights: Vec<u32> = self.generators.iter().map(|&a| a as u32).collect();
        let toric = toric_ideal(&weights)?;
        FinitelyPresentedAlgebra::new(self.var_names(), toric, Some(weights))
    }

    /// The semigroup ring truncated at `bound`, on the basis `t^s`.
    pub fn basis_algebra(&self, bound: u32) -> BasisAlgebra<Q> {
        let elems = self.elements_up_to(bound);
        let pos: std::collections::HashMap<u32, usize> =
            elems.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let labels = elems
            .iter()
            .map(|&s| if s == 0 { "1".into() } else { format!("t^{s}") })
            .collect();
        BasisAlgebra::from_fn(labels, elems.clone(), Some(bound), |i, j| {
            match pos.get(&(elems[i] + elems[j])) {
                Some(&p) => SVec::unit(p),
                None => SVec::zero(),
            }
        })
    }

    /// Recognizes a graded presentation as a semigroup ring: the weights must
    /// have gcd 1 and the ideal must equal the toric ideal of the weights.
    pub fn recognize(a: &FinitelyPresentedAlgebra<Q>) -> Option<Self> {
        let w = a.weights()?;
        let gens: Vec<u64> = w.iter().map(|&x| x as u64).collect();
        let sg = NumericalSemigroup::new(&gens).ok()?;
        let toric = toric_ideal(w).ok()?;
        let order = a.order().clone();
        let gb = if toric.is_empty() {
            groebner_basis(&[Polynomial::zero(w.len())], &order).ok()?
        } else {
            groebner_basis(&toric, &order).ok()?
        };
        gb.same_ideal(a.groebner()).then_some(sg)
    }
}

/// Generators of the kernel of `Q[x_1..x_k] -> Q[t]`, `x_i ↦ t^{w_i}`.
pub fn toric_ideal(weights: &[u32]) -> Result<Vec<Polynomial<Q>>> {
    let k = weights.len();
    let n = k + 1;
    let t = Polynomial::<Q>::var(n, 0);
    let gens: Vec<Polynomial<Q>> = (0..k)
        .map(|i| Polynomial::var(n, i + 1).sub(&t.pow(weights[i])))
        .collect();
    let mut all_weights = vec![1];
    all_weights.extend_from_slice(weights);
    let gb = groebner_basis(
        &gens,
        &MonomialOrder::Block {
            split: 1,
            weights: all_weights,
        },
    )?;
    let map: Vec<usize> = (0..n).map(|i| i.saturating_sub(1)).collect();
    Ok(gb
        .polys()
        .iter()
        .filter(|p| p.terms().all(|(m, _)| m.0[0] == 0))
        .map(|p| p.relabel(&map, k))
        .collect())
}

/// `φ(p)` as a coefficient of `t^{deg}` where `x_i ↦ t^{a_i}`.
pub fn evaluate_monomial_image(p: &Polynomial<Q>, weights: &[u32]) -> Vec<(u32, Q)> {
    let mut out: std::collections::BTreeMap<u32, Q> = std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.weighted_degree(weights);
        let entry = out.entry(e).or_insert_with(<Q as Field>::zero);
        *entry = Field::add(entry, c);
    }
    out.into_iter()
        .filter(|(_, c)| !Field::is_zero(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps_of_small_semigroups() {
        let cusp = NumericalSemigroup::new(&[2, 3]).unwrap();
        assert_eq!(cusp.gaps(), &[1]);
        assert_eq!(cusp.frobenius(), 1);
        assert_eq!(cusp.conductor(), 2);
        assert_eq!(NumericalSemigroup::new(&[3, 4, 5]).unwrap().gaps(), &[1, 2]);
        assert_eq!(NumericalSemigroup::new(&[2, 5]).unwrap().gaps(), &[1, 3]);
        let line = NumericalSemigroup::new(&[1]).unwrap();
        assert!(line.gaps().is_empty());
        assert_eq!(line.frobenius(), -1);
    }

    #[test]
    fn invalid_semigroups() {
        assert!(matches!(
            NumericalSemigroup::new(&[2, 4]),
            Err(Error::InvalidSemigroup(_))
        ));
        assert!(NumericalSemigroup::new(&[]).is_err());
    }

    #[test]
    fn minimal_generators_drop_redundant() {
        assert_eq!(
            NumericalSemigroup::new(&[2, 3, 4, 5])
                .unwrap()
                .minimal_generators(),
            [2, 3]
        );
    }

    #[test]
    fn cusp_presentation() {
        let cusp = NumericalSemigroup::new(&[2, 3])
            .unwrap()
            .presentation()
            .unwrap();
        assert_eq!(cusp.generators().len(), 1);
        let parsed =
            FinitelyPresentedAlgebra::parse("ring Q[x,y]/(y^2 - x^3) weights x=2 y=3").unwrap();
        assert!(cusp.groebner().same_ideal(parsed.groebner()));
        assert_eq!(
            NumericalSemigroup::recognize(&parsed),
            Some(NumericalSemigroup::new(&[2, 3]).unwrap())
        );
    }

    #[test]
    fn three_generator_presentation() {
        let r = NumericalSemigroup::new(&[3, 4, 5])
            .unwrap()
            .presentation()
            .unwrap();
        // x^3 - y z, y^2 - x z, z^2 - x^2 y
        assert_eq!(r.generators().len(), 3);
        let dims: Vec<usize> = (0..=8)
            .map(|w| r.standard_monomials(Some(w)).unwrap().len())
            .collect();
        // one monomial per element of <3,4,5> up to the bound
        assert_eq!(dims, [1, 1, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn non_semigroup_rings_not_recognized() {
        let cross = FinitelyPresentedAlgebra::parse("ring Q[x,y]/(x*y) weights x=1 y=1").unwrap();
        assert_eq!(NumericalSemigroup::recognize(&cross), None);
        let line = FinitelyPresentedAlgebra::parse("ring Q[t] weights t=1").unwrap();
        assert_eq!(
            NumericalSemigroup::recognize(&line).map(|s| s.generators().to_vec()),
            Some(vec![1])
        );
    }

    #[test]
    fn truncated_ring_basis() {
        let b = NumericalSemigroup::new(&[2, 3]).unwrap().basis_algebra(7);
        assert_eq!(b.weights(), &[0, 2, 3, 4, 5, 6, 7]);
        assert!(b.mul_basis(3, 4).is_zero());
        assert_eq!(b.mul_basis(1, 2), &SVec::unit(4));
    }
}
