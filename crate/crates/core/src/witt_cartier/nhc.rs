//! `NHC_n(A) = ker(HC_n(A[t]) -> HC_n(A))` as a Cartier module: `[r]` from
//! `t ↦ rt`, `V_m` from `t ↦ t^m`, `F_m` from the trace of `A[t]` over
//! `A[t^m]`.

use std::sync::Arc;

use super::{ground_algebra, CartierModule, CartierOperators};
use crate::basis_algebra::{BasisAlgebra, PolyExtension};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::hochschild::cyclic::MixedPiece;
use crate::hochschild::HochschildComplex;
use crate::linalg::{induced_map, LinearMap, SVec, Subquotient};

struct NhcOps {
    ext: PolyExtension<Q>,
    n: usize,
    /// `pieces[w - 1]` and `spaces[w - 1]` for `w = 1..=bound`.
    pieces: Vec<MixedPiece<Q>>,
    spaces: Vec<Subquotient<Q>>,
}

impl NhcOps {
    fn induced(
        &self,
        src: u32,
        dst: u32,
        f: impl Fn(&[usize]) -> Vec<(Vec<usize>, Q)>,
    ) -> Result<LinearMap<Q>> {
        let (s, d) = (src as usize - 1, dst as usize - 1);
        let chain = self.pieces[s].tuple_map(self.n, &self.pieces[d], f);
        induced_map(|v| chain.apply(v), &self.spaces[s], &self.spaces[d])
            .ok_or_else(|| Error::Invalid("operator does not preserve the Hodge piece".into()))
    }
}

impl CartierOperators<Q> for NhcOps {
    fn homothety(&self, r: &SVec<Q>, w: u32) -> Result<LinearMap<Q>> {
        let c = r.get(0);
        self.induced(w, w, |t| {
            let factor = t
                .iter()
                .map(|&i| Field::pow(&c, self.ext.split(i).1))
                .fold(<Q as Field>::one(), |a, b| Field::mul(&a, &b));
            vec![(t.to_vec(), factor)]
        })
    }

    fn verschiebung(&self, m: u32, w: u32) -> Result<LinearMap<Q>> {
        self.induced(w, m * w, |t| {
            let u = t.iter().map(|&i| {
                let (k, e) = self.ext.split(i);
                self.ext.index(k, m * e)
            });
            vec![(u.collect(), <Q as Field>::one())]
        })
    }

    fn frobenius(&self, m: u32, w: u32) -> Result<LinearMap<Q>> {
        // ρ(a t^e) sends t^c to a s^q t^r with c + e = q m + r, so each
        // trace term is fixed by its starting index
        self.induced(w, w / m, |t| {
            let factors: Vec<(usize, u32)> = t.iter().map(|&i| self.ext.split(i)).collect();
            (0..m)
                .filter_map(|start| {
                    let mut col = start;
                    let mut out = vec![0; factors.len()];
                    for (slot, &(k, e)) in factors.iter().enumerate().rev() {
                        out[slot] = self.ext.index(k, (col + e) / m);
                        col = (col + e) % m;
                    }
                    (col == start).then_some((out, <Q as Field>::one()))
                })
                .collect()
        })
    }
}

/// The Cartier module `NHC_n^(i)(A)` (or all of `NHC_n` when `hodge` is
/// `None`) in weights `1..=bound`, for a finite-dimensional `A`.
pub fn nhc_model(
    a: &BasisAlgebra<Q>,
    n: usize,
    hodge: Option<usize>,
    bound: u32,
) -> Result<CartierModule<Q>> {
    if a.bound().is_some() {
        return Err(Error::Invalid(
            "the model needs a finite-dimensional algebra".into(),
        ));
    }
    let flat = BasisAlgebra::from_fn(a.labels().to_vec(), vec![0; a.dim()], None, |i, j| {
        a.mul_basis(i, j).clone()
    });
    let ext = PolyExtension::new(&flat, bound);
    let hc = HochschildComplex::new(&ext.algebra, n + 1);
    let mut pieces = Vec::new();
    let mut spaces = Vec::new();
    for w in 1..=bound {
        let mp = MixedPiece::new(&hc, w, hodge.is_some())?;
        spaces.push(match hodge {
            Some(i) => mp.hc_hodge(n, i as i64),
            None => mp.hc(n),
        });
        pieces.push(mp);
    }
    let dims: Vec<usize> = spaces.iter().map(Subquotient::dim).collect();
    let action = dims.iter().map(|&d| vec![LinearMap::identity(d)]).collect();
    let name = match hodge {
        Some(i) => format!("NHC_{n}^({i})"),
        None => format!("NHC_{n}"),
    };
    let ops = NhcOps {
        ext,
        n,
        pieces,
        spaces,
    };
    Ok(CartierModule::from_parts(
        name,
        &ground_algebra(),
        dims,
        action,
        Arc::new(ops),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FinitelyPresentedAlgebra;
    use crate::hochschild::hodge::hodge_decompose;
    use crate::witt_cartier::{check_relations, typical_piece};

    fn alg(src: &str) -> BasisAlgebra<Q> {
        FinitelyPresentedAlgebra::parse(src)
            .unwrap()
            .basis_algebra(None)
            .unwrap()
    }

    #[test]
    fn ground_field_model_is_tq_t() {
        let m = nhc_model(&alg("ring Q[x]/(x)"), 0, None, 4).unwrap();
        assert_eq!(m.dims(), [1, 1, 1, 1]);
        assert!(check_relations(&m, 2).unwrap().passed());
    }

    #[test]
    fn dual_numbers_model_relations() {
        let a = alg("ring Q[x]/(x^2)");
        for n in 0..=1 {
            let m = nhc_model(&a, n, None, 4).unwrap();
            let r = check_relations(&m, 2).unwrap();
            assert!(r.passed(), "n = {n}: {:?}", r.failures().next());
        }
    }

    #[test]
    fn typical_piece_matches_hodge_pieces() {
        let a = alg("ring Q[x]/(x^2)");
        let hd = hodge_decompose(&a, 2).unwrap();
        for n in 0..=1 {
            for i in 0..=n {
                let m = nhc_model(&a, n, Some(i), 3).unwrap();
                let tp = typical_piece(&m, &[]).unwrap();
                assert_eq!(tp.dim(), hd.dim(n, i), "n = {n}, i = {i}");
                assert!(tp.tensor_identity);
                assert!(check_relations(&m, 2).unwrap().passed(), "n = {n}, i = {i}");
            }
        }
    }
}
