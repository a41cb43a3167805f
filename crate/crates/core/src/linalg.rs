//! Exact sparse linear algebra: sparse vectors, linear maps given by column
//! images, incremental echelon forms, kernels, and homology of subquotients.

use std::collections::{BTreeMap, HashMap};

use crate::field::Field;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct SVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SVec<F> {
    pub fn zero() -> Self {
        SVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SVec {
            entries: vec![(i, F::one())],
        }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    /// Builds a vector from unordered terms, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (usize, F)>>(terms: I) -> Self {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (i, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&i) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(i, c);
                }
            }
        }
        SVec {
            entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb.mul(c)));
                        b.next();
                    } else {
                        let s = va.add(&vb.mul(c));
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb.mul(c)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&F::one().neg(), other)
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, f: impl Fn(usize) -> Option<usize>) -> Self {
        SVec::from_terms(
            self.entries
                .iter()
                .filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))),
        )
    }
}

/// A linear map `F^src -> F^dst` stored by the images of the source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap<F> {
    src: usize,
    dst: usize,
    cols: Vec<SVec<F>>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(src: usize, dst: usize, cols: Vec<SVec<F>>) -> Self {
        assert_eq!(cols.len(), src, "column count must equal source dimension");
        debug_assert!(cols
            .iter()
            .all(|c| c.entries().iter().all(|(i, _)| *i < dst)));
        LinearMap { src, dst, cols }
    }

    pub fn zero(src: usize, dst: usize) -> Self {
        LinearMap {
            src,
            dst,
            cols: vec![SVec::zero(); src],
        }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            src: n,
            dst: n,
            cols: (0..n).map(SVec::unit).collect(),
        }
    }

    pub fn src_dim(&self) -> usize {
        self.src
    }

    pub fn dst_dim(&self) -> usize {
        self.dst
    }

    pub fn col(&self, j: usize) -> &SVec<F> {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SVec<F>] {
        &self.cols
    }

    pub fn apply(&self, v: &SVec<F>) -> SVec<F> {
        let mut acc: HashMap<usize, F> = HashMap::new();
        for (j, c) in v.entries() {
            for (i, a) in self.cols[*j].entries() {
                let t = a.mul(c);
                match acc.get_mut(i) {
                    Some(x) => *x = x.add(&t),
                    None => {
                        acc.insert(*i, t);
                    }
                }
            }
        }
        SVec::from_terms(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!(other.dst, self.src, "dimension mismatch in composition");
        LinearMap {
            src: other.src,
            dst: self.dst,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap<F>) -> LinearMap<F> {
        assert_eq!((self.src, self.dst), (other.src, other.dst));
        LinearMap {
            src: self.src,
            dst: self.dst,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> LinearMap<F> {
        LinearMap {
            src: self.src,
            dst: self.dst,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap<F>) -> LinearMap<F> {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SVec::is_zero)
    }

    /// First column on which `self` and `other` differ.
    pub fn first_difference(&self, other: &LinearMap<F>) -> Option<usize> {
        (0..self.src).find(|&j| self.cols[j] != other.cols[j])
    }

    pub fn rank(&self) -> usize {
        rank_of(self.cols.iter().cloned())
    }

    /// Basis of the kernel, in source coordinates.
    pub fn kernel(&self) -> Vec<SVec<F>> {
        kernel_of_images(&self.cols)
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<F>> {
        let mut rows = vec![vec![F::zero(); self.src]; self.dst];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.entries() {
                rows[*i][j] = v.clone();
            }
        }
        rows
    }
}

#[derive(Clone, Debug)]
struct EchelonRow<F> {
    vec: SVec<F>,
    tag: SVec<F>,
}

/// Incrementally maintained echelon basis of a subspace. Each stored row has a
/// distinct pivot (its leading index) normalized to one, and carries a tag
/// vector recording which inserted generators it is a combination of.
#[derive(Clone, Debug, Default)]
pub struct Echelon<F> {
    rows: Vec<EchelonRow<F>>,
    pivots: HashMap<usize, usize>,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion<F> {
    Independent,
    /// The vector was dependent; the payload is `tag - Σ c_r tag_r`, the tag of a
    /// combination that vanishes.
    Dependent(SVec<F>),
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates all pivot entries of `v`. Returns the residual and the
    /// accumulated tag `Σ c_r tag_r` with `v = residual + Σ c_r row_r`.
    pub fn reduce(&self, v: &SVec<F>) -> (SVec<F>, SVec<F>) {
        let mut v = v.clone();
        let mut acc = SVec::zero();
        let mut pos = 0;
        while pos < v.nnz() {
            let (idx, c) = v.entries()[pos].clone();
            match self.pivots.get(&idx) {
                Some(&r) => {
                    let row = &self.rows[r];
                    v = v.add_scaled(&c.neg(), &row.vec);
                    acc = acc.add_scaled(&c, &row.tag);
                }
                None => pos += 1,
            }
        }
        (v, acc)
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert(&mut self, v: SVec<F>, tag: SVec<F>) -> Insertion<F> {
        let (res, acc) = self.reduce(&v);
        let tag = tag.sub(&acc);
        if res.is_zero() {
            return Insertion::Dependent(tag);
        }
        let (p, lead) = res.leading().cloned().expect("nonzero residual");
        let inv = lead.inv();
        let vec = res.scale(&inv);
        let tag = tag.scale(&inv);
        self.pivots.insert(p, self.rows.len());
        self.rows.push(EchelonRow { vec, tag });
        Insertion::Independent
    }

    /// Inserts with a tag; returns whether the vector was independent.
    pub fn insert_untagged_with(&mut self, v: SVec<F>, tag: SVec<F>) -> bool {
        matches!(self.insert(v, tag), Insertion::Independent)
    }

    pub fn insert_untagged(&mut self, v: SVec<F>) -> bool {
        matches!(self.insert(v, SVec::zero()), Insertion::Independent)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SVec<F>> {
        self.rows.iter().map(|r| &r.vec)
    }

    pub fn pivot_set(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivots.keys().copied().collect();
        p.sort_unstable();
        p
    }
}

pub fn rank_of<F: Field, I: IntoIterator<Item = SVec<F>>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert_untagged(v);
    }
    e.rank()
}

/// Kernel of the map `e_k ↦ images[k]`, as vectors in the domain.
pub fn kernel_of_images<F: Field>(images: &[SVec<F>]) -> Vec<SVec<F>> {
    let mut e = Echelon::new();
    let mut kernel = Vec::new();
    for (k, img) in images.iter().enumerate() {
        if let Insertion::Dependent(t) = e.insert(img.clone(), SVec::unit(k)) {
            kernel.push(t);
        }
    }
    kernel
}

/// Linear combination `Σ coeffs_k basis_k`.
pub fn combine<F: Field>(coeffs: &SVec<F>, basis: &[SVec<F>]) -> SVec<F> {
    coeffs
        .entries()
        .iter()
        .fold(SVec::zero(), |acc, (k, c)| acc.add_scaled(c, &basis[*k]))
}

/// A subquotient `Z / B` with chosen representatives and a coordinate solver.
#[derive(Clone, Debug)]
pub struct Subquotient<F> {
    reps: Vec<SVec<F>>,
    solver: Echelon<F>,
}

impl<F: Field> Subquotient<F> {
    /// `cycles` spans `Z`, `boundaries` spans `B ⊆ Z`.
    pub fn new(cycles: &[SVec<F>], boundaries: &[SVec<F>]) -> Self {
        let mut solver = Echelon::new();
        for b in boundaries {
            solver.insert_untagged(b.clone());
        }
        let mut reps = Vec::new();
        for z in cycles {
            let idx = reps.len();
            if let Insertion::Independent = solver.insert(z.clone(), SVec::unit(idx)) {
                reps.push(z.clone());
            }
        }
        Subquotient { reps, solver }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[SVec<F>] {
        &self.reps
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// if `v` is not in `Z` (more precisely, not in the span of `B` and the reps).
    pub fn coordinates(&self, v: &SVec<F>) -> Option<SVec<F>> {
        let (res, acc) = self.solver.reduce(v);
        res.is_zero().then_some(acc)
    }

    /// Whether `v` represents the zero class.
    pub fn is_trivial_class(&self, v: &SVec<F>) -> bool {
        self.coordinates(v).is_some_and(|c| c.is_zero())
    }
}

/// Matrix of the map induced on subquotients by an ambient map `f`.
/// Returns `None` if some representative is not sent into the target span.
pub fn induced_map<F: Field>(
    f: impl Fn(&SVec<F>) -> SVec<F>,
    source: &Subquotient<F>,
    target: &Subquotient<F>,
) -> Option<LinearMap<F>> {
    let cols = source
        .representatives()
        .iter()
        .map(|z| target.coordinates(&f(z)))
        .collect::<Option<Vec<_>>>()?;
    Some(LinearMap::new(source.dim(), target.dim(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> SVec<Q> {
        SVec::from_dense(&xs.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        // columns (1,2), (2,4), (0,1)
        let m = LinearMap::new(3, 2, vec![v(&[1, 2]), v(&[2, 4]), v(&[0, 1])]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_zero());
    }

    #[test]
    fn subquotient_coordinates() {
        // Z = span(e0, e1), B = span(e0 + e1)
        let sq = Subquotient::new(&[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 1])]);
        assert_eq!(sq.dim(), 1);
        let c0 = sq.coordinates(&v(&[1, 0])).unwrap();
        let c1 = sq.coordinates(&v(&[0, 1])).unwrap();
        assert_eq!(c0, c1.neg());
        assert!(sq.is_trivial_class(&v(&[3, 3])));
        assert!(sq.coordinates(&v(&[0, 0, 1])).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, r), c))
    }

    proptest! {
        #[test]
        fn rank_nullity(cols in small_matrix()) {
            let rows = cols[0].len();
            let m = LinearMap::new(cols.len(), rows, cols.iter().map(|c| v(c)).collect());
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), cols.len());
            for x in &k {
                prop_assert!(m.apply(x).is_zero());
            }
            prop_assert_eq!(rank_of(k.iter().cloned()), k.len());
        }

        #[test]
        fn add_scaled_matches_dense(a in prop::collection::vec(-3i64..4, 6), b in prop::collection::vec(-3i64..4, 6), c in -3i64..4) {
            let sum = v(&a).add_scaled(&q(c), &v(&b));
            let dense: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + c * y).collect();
            prop_assert_eq!(sum, v(&dense));
        }
    }
}
