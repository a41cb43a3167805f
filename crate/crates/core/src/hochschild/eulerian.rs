//! Eulerian idempotents `e_n^(i)` in `Q[S_n]`, from the generating identity
//! `Σ_i e_n^(i) x^i = Σ_σ binom(x - d(σ) + n - 1, n) sgn(σ) σ`, where `d(σ)`
//! counts descents.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::ChainBasis;
use crate::field::{factorial, Field, Q};
use crate::linalg::{LinearMap, SVec};

/// A permutation of `0..n`, stored as its list of images.
pub type Perm = Vec<usize>;

#[derive(Clone, Debug)]
pub struct EulerianIdempotents {
    n: usize,
    perms: Vec<Perm>,
    /// `coeffs[p][i]`: coefficient of `perms[p]` in `e^(i)`, `0 <= i <= n`.
    coeffs: Vec<Vec<Q>>,
}

pub fn permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (0..n).collect();
    heap_permute(n, &mut cur, &mut out);
    out.sort();
    out
}

fn heap_permute(k: usize, cur: &mut Perm, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k - 1 {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
    heap_permute(k - 1, cur, out);
}

pub fn descents(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(σ ∘ τ)(k) = σ(τ(k))`
pub fn compose(s: &[usize], t: &[usize]) -> Perm {
    t.iter().map(|&k| s[k]).collect()
}

/// Coefficients of `binom(x - d + n - 1, n)` as a polynomial in `x`.
fn binomial_poly(n: usize, d: usize) -> Vec<Q> {
    let mut poly = vec![Q::one()];
    for j in 0..n {
        // multiply by (x + j - d)
        let c = Q::from_integer((j as i64 - d as i64).into());
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (k, a) in poly.iter().enumerate() {
            next[k + 1] += a;
            next[k] += a * &c;
        }
        poly = next;
    }
    let nf = Q::from_integer(factorial(n as u64));
    poly.into_iter().map(|a| a / &nf).collect()
}

impl EulerianIdempotents {
    pub fn compute(n: usize) -> Self {
        let perms = permutations(n);
        let coeffs = perms
            .iter()
            .map(|p| {
                let mut c = binomial_poly(n, descents(p));
                c.resize(n + 1, Q::zero());
                if sign(p) < 0 {
                    c.iter_mut().for_each(|a| *a = -a.clone());
                }
                c
            })
            .collect();
        EulerianIdempotents { n, perms, coeffs }
    }

    /// Shared cached instance.
    pub fn get(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<EulerianIdempotents>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(e) = cache.lock().expect("cache lock").get(&n) {
            return e.clone();
        }
        let e = Arc::new(Self::compute(n));
        cache
            .lock()
            .expect("cache lock")
            .entry(n)
            .or_insert(e)
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `e^(i)` as an element of `Q[S_n]`.
    pub fn element(&self, i: usize) -> HashMap<Perm, Q> {
        self.perms
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c[i].is_zero())
            .map(|(p, c)| (p.clone(), c[i].clone()))
            .collect()
    }

    /// `e^(i)` applied to a chain tuple `(a_0, a_1, …, a_n)`: the permutation
    /// moves `a_{k+1}` to bar slot `σ(k)`. Returns one vector per `i`.
    pub fn apply<F: Field>(&self, t: &[usize], basis: &ChainBasis) -> Vec<SVec<F>> {
        assert_eq!(t.len(), self.n + 1);
        let mut terms: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.n + 1];
        let mut moved = t.to_vec();
        for (p, c) in self.perms.iter().zip(&self.coeffs) {
            for (k, &s) in p.iter().enumerate() {
                moved[s + 1] = t[k + 1];
            }
            let idx = basis
                .position(&moved)
                .expect("permutations preserve the chain basis");
            for (i, a) in c.iter().enumerate() {
                if !a.is_zero() {
                    terms[i].push((idx, F::from_rational(a)));
                }
            }
        }
        terms.into_iter().map(SVec::from_terms).collect()
    }

    /// Matrices of all `e^(i)` on a chain space of degree `n`.
    pub fn matrices<F: Field>(&self, basis: &ChainBasis) -> Vec<LinearMap<F>> {
        let mut cols: Vec<Vec<SVec<F>>> = vec![Vec::with_capacity(basis.len()); self.n + 1];
        for t in &basis.tuples {
            for (i, v) in self.apply(t, basis).into_iter().enumerate() {
                cols[i].push(v);
            }
        }
        cols.into_iter()
            .map(|c| LinearMap::new(basis.len(), basis.len(), c))
            .collect()
    }
}

/// Product in `Q[S_n]`.
pub fn group_algebra_mul(a: &HashMap<Perm, Q>, b: &HashMap<Perm, Q>) -> HashMap<Perm, Q> {
    let mut out: HashMap<Perm, Q> = HashMap::new();
    for (s, x) in a {
        for (t, y) in b {
            *out.entry(compose(s, t)).or_insert_with(Q::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Checks `e^(i) e^(j) = δ_ij e^(i)` and `Σ_i e^(i) = 1` in `Q[S_n]`.
/// Returns the first failing pair, with `(n+1, n+1)` standing for completeness.
pub fn verify_idempotents(n: usize) -> Result<(), (usize, usize)> {
    let e = EulerianIdempotents::get(n);
    let elems: Vec<_> = (0..=n).map(|i| e.element(i)).collect();
    for i in 0..=n {
        for j in 0..=n {
            let prod = group_algebra_mul(&elems[i], &elems[j]);
            let expected = if i == j {
                elems[i].clone()
            } else {
                HashMap::new()
            };
            if prod != expected {
                return Err((i, j));
            }
        }
    }
    let mut sum: HashMap<Perm, Q> = HashMap::new();
    for el in &elems {
        for (p, c) in el {
            *sum.entry(p.clone()).or_insert_with(Q::zero) += c;
        }
    }
    sum.retain(|_, c| !c.is_zero());
    let identity: HashMap<Perm, Q> = [((0..n).collect(), Q::one())].into();
    if sum != identity {
        return Err((n + 1, n + 1));
    }
    Ok(())
}
