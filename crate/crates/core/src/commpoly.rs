//! Sparse commutative polynomials over the rationals in graded variables.
//!
//! Monomials are ordered by total weight, then lexicographically on their
//! variables listed largest first (with multiplicity). The largest monomial
//! of a polynomial is its leading monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::{write_sum, Coeff, Rational};

pub trait Variable: Ord + Clone + Hash + fmt::Debug + Send + Sync + 'static {
    fn weight(&self) -> usize;
    fn label(&self) -> String;
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V> {
    /// Ascending by variable, exponents nonzero.
    factors: Vec<(V, u32)>,
}

impl<V: Variable> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn from_factors(mut factors: Vec<(V, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(V, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn weight(&self) -> usize {
        self.factors.iter().map(|(v, e)| v.weight() * *e as usize).sum()
    }

    /// The variable, if this monomial is a single variable to the first power.
    pub fn as_var(&self) -> Option<&V> {
        match self.factors.as_slice() {
            [(v, 1)] => Some(v),
            _ => None,
        }
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Removes one power of `v`; `None` if absent.
    pub fn without_one(&self, v: &V) -> Option<Self> {
        let i = self.factors.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let mut factors = self.factors.clone();
        if factors[i].1 == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some(Monomial { factors })
    }

    fn descending(&self) -> impl Iterator<Item = &V> {
        self.factors
            .iter()
            .rev()
            .flat_map(|(v, e)| std::iter::repeat_n(v, *e as usize))
    }

    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(v, e)| if *e == 1 { v.label() } else { format!("{}^{}", v.label(), e) })
            .collect();
        parts.join("·")
    }
}

impl<V: Variable> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.descending().cmp(other.descending()))
    }
}

impl<V: Variable> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommPoly<V: Variable> {
    terms: BTreeMap<Monomial<V>, Rational>,
}

impl<V: Variable> CommPoly<V> {
    pub fn zero() -> Self {
        CommPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn var(v: V) -> Self {
        Self::monomial(Monomial::var(v), Coeff::one())
    }

    pub fn monomial(m: Monomial<V>, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: Rational) {
        if Coeff::is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Coeff::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
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

    /// Ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn leading(&self) -> Option<(&Monomial<V>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Largest total weight of a term (0 for the zero polynomial).
    pub fn weight(&self) -> usize {
        self.terms.keys().next_back().map_or(0, |m| m.weight())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(|m| m.weight());
        match ws.next() {
            None => true,
            Some(w) => ws.all(|v| v == w),
        }
    }

    pub fn homogeneous_part(&self, weight: usize) -> Self {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == weight)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        CommPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if Coeff::is_zero(r) {
            return Self::zero();
        }
        CommPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Evaluates in any coefficient ring, substituting each variable.
    pub fn eval<C: Coeff>(&self, mut value: impl FnMut(&V) -> C) -> C {
        let mut cache: BTreeMap<V, C> = BTreeMap::new();
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = C::from_rational(c.clone());
            for (v, e) in &m.factors {
                let x = cache.entry(v.clone()).or_insert_with(|| value(v)).clone();
                for _ in 0..*e {
                    t = t.mul_ref(&x);
                }
            }
            total.add_assign_ref(&t);
        }
        total
    }

    /// Substitutes a polynomial in (possibly other) variables for each variable.
    pub fn substitute<W: Variable>(&self, value: impl FnMut(&V) -> CommPoly<W>) -> CommPoly<W> {
        self.eval(value)
    }

    /// Keeps terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial<V>) -> bool) -> Self {
        CommPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => {
                let inv = Rational::from_integer(1.into()) / c;
                self.scale(&inv)
            }
        }
    }

    pub fn to_text(&self) -> String {
        let unit = Monomial::<V>::one().label();
        write_sum(self.terms.iter().rev().map(|(m, c)| (m.label(), c.clone())), &unit)
    }
}

impl<V: Variable> Coeff for CommPoly<V> {
    fn zero() -> Self {
        CommPoly::zero()
    }
    fn one() -> Self {
        CommPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: Rational) -> Self {
        CommPoly::constant(r)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale(&self, r: &Rational) -> Self {
        CommPoly::scale(self, r)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 if self.terms.keys().next().is_some_and(|m| m.is_one()) => Some(self.constant_term()),
            _ => None,
        }
    }
    fn write_text(&self) -> String {
        self.to_text()
    }
}

impl<V: Variable> fmt::Display for CommPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<V: Variable> fmt::Debug for CommPoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Variable for crate::words::Word {
    fn weight(&self) -> usize {
        crate::words::Word::weight(self)
    }
    fn label(&self) -> String {
        format!("{{{self}}}")
    }
}

/// Indeterminate `t_i` of the partial Bell polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexVar(pub u32);

impl Variable for IndexVar {
    fn weight(&self) -> usize {
        self.0 as usize
    }
    fn label(&self) -> String {
        format!("t{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn t(i: u32) -> CommPoly<IndexVar> {
        CommPoly::var(IndexVar(i))
    }

    #[test]
    fn arithmetic_and_text() {
        let p = t(1).add(&t(2));
        let sq = p.mul(&p);
        assert_eq!(sq, t(1).pow(2).add(&t(1).mul(&t(2)).scale(&rat(2, 1))).add(&t(2).pow(2)));
        assert_eq!(sq.to_text(), "t2^2 + 2·t1·t2 + t1^2");
        assert!(p.mul(&CommPoly::zero()).is_zero());
        assert_eq!(t(2).mul(&t(3)).weight(), 5);
        assert_eq!(CommPoly::<IndexVar>::constant(rat(-1, 2)).to_text(), "-1/2");
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial::var(IndexVar(3));
        let b = Monomial::from_factors(vec![(IndexVar(1), 1), (IndexVar(2), 1)]);
        let c = Monomial::var(IndexVar(2));
        assert!(a > b);
        assert!(b > c);
        assert_eq!(t(1).mul(&t(2)).add(&t(3)).leading().unwrap().0, &a);
    }

    #[test]
    fn eval_and_substitute() {
        let p = t(1).mul(&t(1)).sub(&t(2));
        let v: Rational = p.eval(|v| rat(v.0 as i64 + 1, 1));
        assert_eq!(v, rat(1, 1));
        let q = p.substitute(|v| if v.0 == 1 { t(3) } else { CommPoly::zero() });
        assert_eq!(q, t(3).pow(2));
    }
}
