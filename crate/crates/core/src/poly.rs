//! Sparse multivariate polynomials and monomial orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::field::Field;

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_of(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&names[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Monomial orders. `Greater` means "larger leading term".
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    #[default]
    DegRevLex,
    /// Weighted degree first, reverse lexicographic tie-break.
    WeightedRevLex(Vec<u32>),
    /// Weighted degree, then total degree, then reverse lexicographic. A
    /// well-order even when some weights are zero.
    WeightedDegRevLex(Vec<u32>),
    /// Elimination order: the first `split` variables are compared first
    /// (weighted degree, then reverse lexicographic), then the rest likewise.
    Block {
        split: usize,
        weights: Vec<u32>,
    },
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn wdeg(a: &[u32], w: &[u32]) -> u32 {
    a.iter().zip(w).map(|(e, w)| e * w).sum()
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::DegRevLex => {
                a.degree().cmp(&b.degree()).then_with(|| revlex(&a.0, &b.0))
            }
            MonomialOrder::WeightedRevLex(w) => wdeg(&a.0, w)
                .cmp(&wdeg(&b.0, w))
                .then_with(|| revlex(&a.0, &b.0)),
            MonomialOrder::WeightedDegRevLex(w) => wdeg(&a.0, w)
                .cmp(&wdeg(&b.0, w))
                .then_with(|| a.degree().cmp(&b.degree()))
                .then_with(|| revlex(&a.0, &b.0)),
            MonomialOrder::Block { split, weights } => {
                let (a1, a2) = a.0.split_at(*split);
                let (b1, b2) = b.0.split_at(*split);
                let (w1, w2) = weights.split_at(*split);
                wdeg(a1, w1)
                    .cmp(&wdeg(b1, w1))
                    .then_with(|| revlex(a1, b1))
                    .then_with(|| wdeg(a2, w2).cmp(&wdeg(b2, w2)))
                    .then_with(|| revlex(a2, b2))
            }
        }
    }
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(F::one(), Monomial::var(nvars, i))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c.mul(d));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.add_term(d, c.mul(&F::from_int(e as i64)));
        }
        out
    }

    /// Whether every term has the same weighted degree.
    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    /// Substitutes `images[i]` for variable `i`; the images live in a ring with
    /// `target_nvars` variables.
    pub fn substitute(&self, images: &[Polynomial<F>], target_nvars: usize) -> Polynomial<F> {
        assert_eq!(images.len(), self.nvars);
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Moves variable `i` to position `map[i]` in a ring with `target_nvars` variables.
    pub fn relabel(&self, map: &[usize], target_nvars: usize) -> Polynomial<F> {
        Polynomial::from_terms(
            target_nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; target_nvars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    pub fn render(&self, names: &[String], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.cmp(b.0, a.0));
        let mut s = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let cs = c.to_string();
            let (neg, abs) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs_needs_parens = abs.contains(' ');
            let abs = if abs_needs_parens {
                format!("({abs})")
            } else {
                abs
            };
            if m.is_one() {
                s.push_str(&abs);
            } else if abs == "1" {
                s.push_str(&m.render(names));
            } else {
                let _ = write!(s, "{abs}*{}", m.render(names));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, Q};

    #[test]
    fn orders_agree_on_textbook_examples() {
        let a = Monomial(vec![1, 2, 0]);
        let b = Monomial(vec![0, 1, 2]);
        // same total degree 3; lex: a > b; revlex: last entry of a-b is -2 < 0 so a > b
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), Ordering::Greater);
        let c = Monomial(vec![2, 0, 0]);
        let d = Monomial(vec![0, 1, 1]);
        assert_eq!(MonomialOrder::DegRevLex.cmp(&c, &d), Ordering::Greater);
        let w = MonomialOrder::WeightedRevLex(vec![2, 3]);
        assert_eq!(
            w.cmp(&Monomial(vec![0, 2]), &Monomial(vec![3, 0])),
            Ordering::Less
        );
        let blk = MonomialOrder::Block {
            split: 1,
            weights: vec![1, 1, 1],
        };
        assert_eq!(
            blk.cmp(&Monomial(vec![1, 0, 0]), &Monomial(vec![0, 5, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn arithmetic_and_calculus() {
        let x: Polynomial<Q> = Polynomial::var(2, 0);
        let y: Polynomial<Q> = Polynomial::var(2, 1);
        let f = y.pow(2).sub(&x.pow(3));
        assert_eq!(f.derivative(0), x.pow(2).scale(&q(-3)));
        assert_eq!(f.derivative(1), y.scale(&q(2)));
        assert!(f.is_homogeneous(&[2, 3]));
        assert!(!f.is_homogeneous(&[1, 1]));
        let g = f.substitute(
            &[Polynomial::var(1, 0).pow(2), Polynomial::var(1, 0).pow(3)],
            1,
        );
        assert!(g.is_zero());
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(f.render(&names, &MonomialOrder::DegRevLex), "-x^3 + y^2");
    }
}
