//! Sparse multivariate polynomials over a pluggable coefficient field.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{rat_to_gf, Field, Gf, Rat};
use super::monomial::Monomial;
use super::PolyError;

/// A sparse polynomial: a map from monomials to nonzero coefficients.
///
/// Terms are keyed graded-lex ascending, so the leading term is the last map
/// entry and canonical text output iterates in reverse.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn variable(field: F, nvars: usize, i: usize) -> Self {
        let one = field.one();
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(i, nvars), one);
        p
    }

    pub fn from_terms<I>(field: F, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` if nonzero and every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Accumulates `c * m` into the term map, dropping cancellations.
    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), self.field.mul(c1, c));
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.nvars {
            return Err(PolyError::VariableOutOfRange {
                var: i,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            let ce = self.field.mul(c, &self.field.from_int(e as i64));
            out.add_term(Monomial::new(exps), ce);
        }
        Ok(out)
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength {
                got: point.len(),
                nvars: self.nvars,
            });
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = self.field.mul(&t, &point[i]);
                }
            }
            acc = self.field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// If `self == s * other` for a nonzero scalar `s`, returns `s`.
    /// Zero polynomials are proportional only to each other (scalar 1).
    pub fn proportionality(&self, other: &Self) -> Option<F::Elem> {
        if self.is_zero() && other.is_zero() {
            return Some(self.field.one());
        }
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m0, c0) = self.leading()?;
        let (m1, c1) = other.leading()?;
        if m0 != m1 {
            return None;
        }
        let s = self.field.div(c0, c1)?;
        if *self == other.scale(&s) {
            Some(s)
        } else {
            None
        }
    }
}

impl Polynomial<Rat> {
    /// Reduce a rational polynomial mod p. Fails if any denominator is
    /// divisible by p.
    pub fn reduce_mod(&self, gf: Gf) -> Result<Polynomial<Gf>, PolyError> {
        let mut out = Polynomial::zero(gf, self.nvars);
        for (m, c) in &self.terms {
            let r = rat_to_gf(&gf, c).ok_or(PolyError::BadReduction(gf.prime()))?;
            out.add_term(m.clone(), r);
        }
        Ok(out)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse::poly_parse;

    fn gf(p: u64) -> Gf {
        Gf::new(p).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let f = gf(11);
        let p = poly_parse("x0^2*x1 - x1^3", 3, f).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "x0^2*x1 + 10*x1^3");
        let q = p.add(&p.neg());
        assert!(q.is_zero());
        assert_eq!(q.to_string(), "0");
    }

    #[test]
    fn rational_display_signs() {
        let p = poly_parse("x0 - 3/2*x1 + 2", 2, Rat).unwrap();
        assert_eq!(p.to_string(), "x0 - 3/2*x1 + 2");
    }

    #[test]
    fn diff_drops_degree() {
        let p = poly_parse("x0^3", 2, Rat).unwrap();
        let d = p.diff(0).unwrap();
        assert_eq!(d.to_string(), "3*x0^2");
        assert!(p.diff(5).is_err());
    }

    #[test]
    fn eval_exact() {
        let f = gf(101);
        let p = poly_parse("x0*x1", 2, f).unwrap();
        assert_eq!(p.eval(&[2, 3]).unwrap(), 6);
        assert!(p.eval(&[2]).is_err());
        let z = Polynomial::zero(f, 2);
        assert_eq!(z.eval(&[7, 9]).unwrap(), 0);
    }

    #[test]
    fn proportional_detection() {
        let p = poly_parse("2*x0^2*x1", 2, Rat).unwrap();
        let q = poly_parse("x0^2*x1", 2, Rat).unwrap();
        let s = p.proportionality(&q).unwrap();
        assert_eq!(s.to_string(), "2");
        let r = poly_parse("x0*x1^2", 2, Rat).unwrap();
        assert!(p.proportionality(&r).is_none());
    }

    #[test]
    fn reduce_mod_prime() {
        let p = poly_parse("1/2*x0 + 7*x1", 2, Rat).unwrap();
        let q = p.reduce_mod(gf(7)).unwrap();
        assert_eq!(q.to_string(), "4*x0");
        let bad = poly_parse("1/7*x0", 2, Rat).unwrap();
        assert!(bad.reduce_mod(gf(7)).is_err());
    }
}
