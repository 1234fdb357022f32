//! Sparse polynomials with rational coefficients over variables `x_0..x_{N-1}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MonomialPolynomial {
    variable_count: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl MonomialPolynomial {
    pub fn zero(variable_count: usize) -> Self {
        Self {
            variable_count,
            terms: BTreeMap::new(),
        }
    }

    /// Sum of monomials with coefficient one.
    pub fn from_exponents<I: IntoIterator<Item = Exponents>>(variable_count: usize, monomials: I) -> Self {
        let mut p = Self::zero(variable_count);
        for e in monomials {
            p.add_term(e, BigRational::one());
        }
        p
    }

    pub fn monomial(variable_count: usize, exps: Exponents) -> Self {
        Self::from_exponents(variable_count, [exps])
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: BigRational) {
        assert_eq!(exps.len(), self.variable_count, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.variable_count);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict_to(&self, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), self.variable_count);
        let mut out = Self::zero(self.variable_count);
        for (e, c) in &self.terms {
            if e.iter().zip(keep).all(|(&k, &kept)| kept || k == 0) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Multiplies by a monomial.
    pub fn shifted(&self, by: &[u32]) -> Self {
        let mut out = Self::zero(self.variable_count);
        for (e, c) in &self.terms {
            let e2 = e.iter().zip(by).map(|(a, b)| a + b).collect();
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.variable_count];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    s[i] = true;
                }
            }
        }
        s
    }
}

pub fn format_monomial(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Debug for MonomialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MonomialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first reads more naturally
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", format_monomial(e))?;
            } else {
                write!(f, "{}*{}", c, format_monomial(e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_and_cancellation() {
        let mut p = MonomialPolynomial::from_exponents(3, [vec![0, 3, 1], vec![0, 0, 3]]);
        let d2 = p.derivative(2);
        assert_eq!(d2.coefficient(&[0, 3, 0]), BigRational::one());
        assert_eq!(d2.coefficient(&[0, 0, 2]), BigRational::from_integer(3.into()));
        p.add_term(vec![0, 3, 1], -BigRational::one());
        assert_eq!(p.len(), 1);
        assert_eq!(p.derivative(0), MonomialPolynomial::zero(3));
    }

    #[test]
    fn restriction_drops_terms() {
        let p = MonomialPolynomial::from_exponents(3, [vec![0, 3, 1], vec![0, 0, 3]]);
        let r = p.restrict_to(&[true, false, true]);
        assert_eq!(r, MonomialPolynomial::monomial(3, vec![0, 0, 3]));
        assert!(p.restrict_to(&[false, false, false]).is_zero());
    }
}
