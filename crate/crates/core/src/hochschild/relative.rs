//! Relative Hochschild homology `HH_*(A, I)` for a nilpotent ideal `I`,
//! computed as the homology of `ker(C(A) -> C(A/I))`.

use super::HochschildComplex;
use crate::basis_algebra::BasisAlgebra;
use crate::chain::{ChainComplex, Direction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, LinearMap, SVec};

/// An algebra rewritten in a basis `1, c_1..c_r, i_1..i_s` with the `i_k`
/// spanning `I`.
pub struct AdaptedAlgebra<F> {
    pub algebra: BasisAlgebra<F>,
    /// First index of the ideal part.
    pub ideal_start: usize,
}

fn is_nilpotent<F: Field>(a: &BasisAlgebra<F>, ideal: &[SVec<F>]) -> bool {
    let mut power: Vec<SVec<F>> = ideal.to_vec();
    for _ in 0..=a.dim() {
        if power.is_empty() {
            return true;
        }
        let mut e = Echelon::new();
        let mut next = Vec::new();
        for p in &power {
            for s in ideal {
                let v = a.mul(p, s);
                if e.insert_untagged(v.clone()) {
                    next.push(v);
                }
            }
        }
        power = next;
    }
    power.is_empty()
}

/// Splits `ideal` into homogeneous pieces when possible, so that the
/// adapted basis keeps the weight grading. Falls back to `None`.
fn homogeneous_basis<F: Field>(a: &BasisAlgebra<F>, ideal: &[SVec<F>]) -> Option<Vec<SVec<F>>> {
    let mut out = Vec::new();
    for w in 0..=a.max_weight() {
        let idx = a.indices_of_weight(w);
        let mut e = Echelon::new();
        for v in ideal {
            let part = v.reindex(|r| idx.contains(&r).then_some(r));
            if !part.is_zero() && e.insert_untagged(part.clone()) {
                out.push(part);
            }
        }
    }
    (out.len() == ideal.len()).then_some(out)
}

impl<F: Field> AdaptedAlgebra<F> {
    pub fn new(a: &BasisAlgebra<F>, ideal: &[SVec<F>]) -> Result<Self> {
        if !is_nilpotent(a, ideal) {
            return Err(Error::NotNilpotent);
        }
        let mut e = Echelon::new();
        e.insert_untagged(a.one());
        let mut ideal_basis = Vec::new();
        for v in ideal {
            if e.insert_untagged(v.clone()) {
                ideal_basis.push(v.clone());
            }
        }
        let (source, ideal_basis) = match homogeneous_basis(a, &ideal_basis) {
            Some(h) => (a.clone(), h),
            None => {
                let flat =
                    BasisAlgebra::from_fn(a.labels().to_vec(), vec![0; a.dim()], None, |i, j| {
                        a.mul_basis(i, j).clone()
                    });
                (flat, ideal_basis)
            }
        };
        let pivots = e.pivot_set();
        let complement: Vec<usize> = (1..a.dim()).filter(|j| !pivots.contains(j)).collect();
        let mut basis = vec![source.one()];
        let mut labels = vec!["1".to_string()];
        for &j in &complement {
            basis.push(SVec::unit(j));
            labels.push(source.labels()[j].clone());
        }
        for (k, v) in ideal_basis.iter().enumerate() {
            basis.push(v.clone());
            labels.push(format!("i{k}"));
        }
        let ideal_start = 1 + complement.len();
        Ok(AdaptedAlgebra {
            algebra: source.change_basis(&basis, labels),
            ideal_start,
        })
    }
}

/// `dim HH_m(A, I)` for `m = 0..=n`.
pub fn relative_hh<F: Field>(
    a: &BasisAlgebra<F>,
    ideal: &[SVec<F>],
    n: usize,
) -> Result<Vec<usize>> {
    let adapted = AdaptedAlgebra::new(a, ideal)?;
    let start = adapted.ideal_start;
    let hc = HochschildComplex::new(&adapted.algebra, n + 1);
    let mut dims = vec![0; n + 1];
    for w in hc.weights() {
        let full = (0..=n + 1)
            .map(|m| hc.chain_basis(m, w))
            .collect::<Result<Vec<_>>>()?;
        let keep: Vec<Vec<usize>> = full
            .iter()
            .map(|b| {
                (0..b.len())
                    .filter(|&k| b.tuples[k].iter().any(|&x| x >= start))
                    .collect()
            })
            .collect();
        let mut maps = Vec::new();
        for m in 0..=n + 1 {
            if m == 0 {
                maps.push(LinearMap::zero(keep[0].len(), 0));
                continue;
            }
            let b = hc.boundary_between(m, &full[m], &full[m - 1]);
            let mut position = vec![usize::MAX; full[m - 1].len()];
            for (p, &k) in keep[m - 1].iter().enumerate() {
                position[k] = p;
            }
            let cols = keep[m]
                .iter()
                .map(|&k| {
                    b.col(k).reindex(|r| {
                        assert_ne!(position[r], usize::MAX, "kernel complex is a subcomplex");
                        Some(position[r])
                    })
                })
                .collect();
            maps.push(LinearMap::new(keep[m].len(), keep[m - 1].len(), cols));
        }
        let c = ChainComplex::new(0, Direction::Homological, maps)?;
        for (m, d) in dims.iter_mut().enumerate() {
            *d += c.homology(m as i64)?.dim();
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinitelyPresentedAlgebra;
    use crate::field::Q;

    fn with_nil(src: &str) -> (BasisAlgebra<Q>, Vec<SVec<Q>>) {
        let a = FinitelyPresentedAlgebra::parse(src).unwrap();
        let nil = a.nilradical_zero_dim().unwrap();
        (a.basis_algebra(None).unwrap(), nil.span)
    }

    #[test]
    fn zero_ideal() {
        let (a, _) = with_nil("ring Q[x]/(x^2)");
        assert_eq!(relative_hh(&a, &[], 3).unwrap(), [0, 0, 0, 0]);
    }

    #[test]
    fn dual_numbers_relative_to_nilradical() {
        let (a, nil) = with_nil("ring Q[x]/(x^2)");
        assert_eq!(relative_hh(&a, &nil, 3).unwrap(), [1, 1, 1, 1]);
    }

    #[test]
    fn cube_relative_to_nilradical() {
        let (a, nil) = with_nil("ring Q[x]/(x^3)");
        let dims = relative_hh(&a, &nil, 2).unwrap();
        assert_eq!(dims[0], 2);
        // HH_m(Q) = 0 for m > 0, so HH_m(A, I) = HH_m(A) = 2
        assert_eq!(dims, [2, 2, 2]);
    }

    #[test]
    fn graded_and_flat_bases_agree() {
        let graded =
            FinitelyPresentedAlgebra::parse("ring Q[x,y]/(x^2, y^2) weights x=1 y=2").unwrap();
        let a = graded.basis_algebra(None).unwrap();
        let nil = graded.nilradical_zero_dim().unwrap().span;
        let flat = FinitelyPresentedAlgebra::parse("ring Q[x,y]/(x^2, y^2)").unwrap();
        let b = flat.basis_algebra(None).unwrap();
        let nil_b = flat.nilradical_zero_dim().unwrap().span;
        assert_eq!(
            relative_hh(&a, &nil, 2).unwrap(),
            relative_hh(&b, &nil_b, 2).unwrap()
        );
    }

    #[test]
    fn non_nilpotent_ideal_rejected() {
        let (a, _) = with_nil("ring Q[x]/(x^2 - 1)");
        let ideal = vec![SVec::unit(1)];
        assert!(matches!(
            relative_hh(&a, &ideal, 1),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn inhomogeneous_nilradical_position() {
        // nil is spanned by x^2 - 1, whose leading coordinate is the unit's
        let (a, nil) = with_nil("ring Q[x]/((x-1)^2*(x+1))");
        let dims = relative_hh(&a, &nil, 2).unwrap();
        assert_eq!(dims, [1, 1, 1]);
    }
}
