//! Commutative algebras given by a vector-space basis and structure constants.
//!
//! Basis element 0 is always the unit. Each basis element carries a weight;
//! when the algebra is a weight truncation of an infinite-dimensional graded
//! algebra, products whose weight exceeds the bound are dropped, which is
//! exact on every weight-restricted computation at or below the bound.

use crate::field::{Field, Q};
use crate::linalg::SVec;

#[derive(Clone, Debug)]
pub struct BasisAlgebra<F> {
    labels: Vec<String>,
    weights: Vec<u32>,
    table: Vec<Vec<SVec<F>>>,
    bound: Option<u32>,
}

impl<F: Field> BasisAlgebra<F> {
    /// Builds an algebra from labels, weights and a product function on basis
    /// indices. `product(i, j)` must be symmetric, weight-additive, and index 0
    /// must be the unit.
    pub fn from_fn(
        labels: Vec<String>,
        weights: Vec<u32>,
        bound: Option<u32>,
        product: impl Fn(usize, usize) -> SVec<F>,
    ) -> Self {
        assert_eq!(labels.len(), weights.len());
        assert!(!labels.is_empty(), "algebra needs a unit");
        let n = labels.len();
        let mut table = vec![vec![SVec::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let within = bound.is_none_or(|b| weights[i] + weights[j] <= b);
                let p = if within { product(i, j) } else { SVec::zero() };
                table[j][i] = p.clone();
                table[i][j] = p;
            }
        }
        BasisAlgebra {
            labels,
            weights,
            table,
            bound,
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Whether the grading is connected: the unit is the only weight-0 element.
    pub fn is_connected(&self) -> bool {
        self.weights.iter().skip(1).all(|&w| w > 0) && self.weights[0] == 0
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SVec<F> {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &SVec<F>, b: &SVec<F>) -> SVec<F> {
        let mut terms = Vec::new();
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                let c = x.mul(y);
                for (k, z) in self.table[*i][*j].entries() {
                    terms.push((*k, z.mul(&c)));
                }
            }
        }
        SVec::from_terms(terms)
    }

    pub fn one(&self) -> SVec<F> {
        SVec::unit(0)
    }

    pub fn pow(&self, a: &SVec<F>, e: u32) -> SVec<F> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn indices_of_weight(&self, w: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.weights[i] == w).collect()
    }

    /// Weight of a homogeneous element; `None` for zero or inhomogeneous input.
    pub fn weight_of(&self, a: &SVec<F>) -> Option<u32> {
        let mut ws = a.entries().iter().map(|(i, _)| self.weights[*i]);
        let w = ws.next()?;
        ws.all(|v| v == w).then_some(w)
    }

    /// Re-expresses the algebra in a new basis. `basis[0]` must be the unit;
    /// each new basis vector must be homogeneous.
    pub fn change_basis(&self, basis: &[SVec<F>], labels: Vec<String>) -> Self {
        use crate::linalg::Echelon;
        assert_eq!(basis.len(), self.dim());
        assert_eq!(basis[0], self.one(), "first basis vector must be the unit");
        let mut solver = Echelon::new();
        for (k, b) in basis.iter().enumerate() {
            let independent = solver.insert_untagged_with(b.clone(), SVec::unit(k));
            assert!(independent, "change of basis must be invertible");
        }
        let weights: Vec<u32> = basis
            .iter()
            .map(|b| self.weight_of(b).expect("homogeneous basis vector"))
            .collect();
        let coords = |v: &SVec<F>| {
            let (res, acc) = solver.reduce(v);
            assert!(res.is_zero());
            acc
        };
        BasisAlgebra::from_fn(labels, weights, self.bound, |i, j| {
            coords(&self.mul(&basis[i], &basis[j]))
        })
    }
}

impl BasisAlgebra<Q> {
    /// Scalar extension along `Q -> G`.
    pub fn extend_scalars<G: Field>(&self) -> BasisAlgebra<G> {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        SVec::from_terms(v.entries().iter().map(|(i, c)| (*i, G::from_rational(c))))
                    })
                    .collect()
            })
            .collect();
        BasisAlgebra {
            labels: self.labels.clone(),
            weights: self.weights.clone(),
            table,
            bound: self.bound,
        }
    }
}

/// Index bookkeeping for `A[t]` truncated at t-degree `t_bound`: basis
/// `a_k t^e` sits at index `e * dim(A) + k` and has weight `e`.
#[derive(Clone, Debug)]
pub struct PolyExtension<F> {
    pub base: BasisAlgebra<F>,
    pub t_bound: u32,
    pub algebra: BasisAlgebra<F>,
}

impl<F: Field> PolyExtension<F> {
    pub fn new(base: &BasisAlgebra<F>, t_bound: u32) -> Self {
        let d = base.dim();
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for e in 0..=t_bound {
            for k in 0..d {
                let a = &base.labels()[k];
                labels.push(match (e, a.as_str()) {
                    (0, _) => a.clone(),
                    (_, "1") => {
                        if e == 1 {
                            "t".into()
                        } else {
                            format!("t^{e}")
                        }
                    }
                    (1, _) => format!("{a}*t"),
                    _ => format!("{a}*t^{e}"),
                });
                weights.push(e);
            }
        }
        let algebra = BasisAlgebra::from_fn(labels, weights, Some(t_bound), |i, j| {
            let (ei, ki) = (i / d, i % d);
            let (ej, kj) = (j / d, j % d);
            let e = ei + ej;
            base.mul_basis(ki, kj).reindex(|k| Some(e * d + k))
        });
        PolyExtension {
            base: base.clone(),
            t_bound,
            algebra,
        }
    }

    pub fn index(&self, k: usize, e: u32) -> usize {
        e as usize * self.base.dim() + k
    }

    /// `(base index, t-exponent)` of a basis index.
    pub fn split(&self, i: usize) -> (usize, u32) {
        (i % self.base.dim(), (i / self.base.dim()) as u32)
    }
}

/// `A[t_1..t_k]` truncated at total t-degree `bound`, graded by total
/// t-degree. Basis `a_i t^e` in the order (monomial, base index).
pub fn multi_extension<F: Field>(base: &BasisAlgebra<F>, k: usize, bound: u32) -> BasisAlgebra<F> {
    let mut monos: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..k {
        monos = monos
            .into_iter()
            .flat_map(|m| {
                let used: u32 = m.iter().sum();
                (0..=bound - used).map(move |e| {
                    let mut n = m.clone();
                    n.push(e);
                    n
                })
            })
            .collect();
    }
    monos.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    let pos: std::collections::HashMap<Vec<u32>, usize> = monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let d = base.dim();
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for m in &monos {
        let tpart: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("t{}", i + 1)
                } else {
                    format!("t{}^{e}", i + 1)
                }
            })
            .collect();
        for a in base.labels() {
            labels.push(match (a.as_str(), tpart.is_empty()) {
                (_, true) => a.clone(),
                ("1", false) => tpart.join("*"),
                _ => format!("{a}*{}", tpart.join("*")),
            });
            weights.push(m.iter().sum());
        }
    }
    BasisAlgebra::from_fn(labels, weights, Some(bound), |i, j| {
        let (mi, mj) = (&monos[i / d], &monos[j / d]);
        let sum: Vec<u32> = mi.iter().zip(mj).map(|(a, b)| a + b).collect();
        match pos.get(&sum) {
            Some(&p) => base.mul_basis(i % d, j % d).reindex(|r| Some(p * d + r)),
            None => SVec::zero(),
        }
    })
}
