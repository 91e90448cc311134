use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::C64;

/// A variable of the polynomial ring: `v_j` or its formal conjugate `vbar_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    V(usize),
    VBar(usize),
}

/// Polynomial in `v_1..v_s, vbar_1..vbar_s` with complex coefficients.
///
/// Keys are exponent vectors of length `2 s`: the first `s` entries belong
/// to `v`, the last `s` to `vbar`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct VPolynomial {
    sites: usize,
    terms: BTreeMap<Vec<u32>, C64>,
}

impl VPolynomial {
    pub fn zero(sites: usize) -> Self {
        Self { sites, terms: BTreeMap::new() }
    }

    pub fn constant(sites: usize, c: C64) -> Self {
        Self::monomial(sites, vec![0; 2 * sites], c)
    }

    pub fn monomial(sites: usize, exponents: Vec<u32>, c: C64) -> Self {
        assert_eq!(exponents.len(), 2 * sites, "exponent vector must have length 2 * sites");
        let mut p = Self::zero(sites);
        p.add_term(exponents, c);
        p
    }

    pub fn var(sites: usize, var: Var) -> Self {
        let mut e = vec![0; 2 * sites];
        e[Self::slot(sites, var)] = 1;
        Self::monomial(sites, e, C64::new(1.0, 0.0))
    }

    /// `v . vbar = sum_j v_j vbar_j`.
    pub fn casimir(sites: usize) -> Self {
        let mut p = Self::zero(sites);
        for j in 0..sites {
            let mut e = vec![0; 2 * sites];
            e[j] = 1;
            e[sites + j] = 1;
            p.add_term(e, C64::new(1.0, 0.0));
        }
        p
    }

    fn slot(sites: usize, var: Var) -> usize {
        match var {
            Var::V(j) => {
                assert!(j < sites, "site index out of range");
                j
            }
            Var::VBar(j) => {
                assert!(j < sites, "site index out of range");
                sites + j
            }
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
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

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], C64)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C64 {
        self.terms.get(exponents).copied().unwrap_or_default()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == C64::new(0.0, 0.0) {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero(self.sites);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: Var) -> Self {
        let k = Self::slot(self.sites, var);
        let mut out = Self::zero(self.sites);
        for (e, v) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[k] -= 1;
            out.add_term(d, v * e[k] as f64);
        }
        out
    }

    /// Product with a single variable.
    pub fn times_var(&self, var: Var) -> Self {
        let k = Self::slot(self.sites, var);
        let mut out = Self::zero(self.sites);
        for (e, v) in &self.terms {
            let mut d = e.clone();
            d[k] += 1;
            out.add_term(d, *v);
        }
        out
    }

    /// Euler operator `x d/dx` for one variable: multiplies each term by its exponent.
    pub fn euler(&self, var: Var) -> Self {
        let k = Self::slot(self.sites, var);
        let mut out = Self::zero(self.sites);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * e[k] as f64);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.sites, C64::new(1.0, 0.0));
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Evaluate with independent values for `v` and `vbar`.
    pub fn eval(&self, v: &[C64], vbar: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut term = *c;
                for j in 0..self.sites {
                    term *= v[j].powu(e[j]) * vbar[j].powu(e[self.sites + j]);
                }
                term
            })
            .sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `max |coefficient|` of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs_coeff()
    }
}

impl fmt::Debug for VPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s = self.sites;
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            for j in 0..s {
                if e[j] > 0 {
                    write!(f, " v{}^{}", j + 1, e[j])?;
                }
                if e[s + j] > 0 {
                    write!(f, " vb{}^{}", j + 1, e[s + j])?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &VPolynomial {
    type Output = VPolynomial;
    fn add(self, rhs: &VPolynomial) -> VPolynomial {
        assert_eq!(self.sites, rhs.sites);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), *v);
        }
        out
    }
}

impl Sub for &VPolynomial {
    type Output = VPolynomial;
    fn sub(self, rhs: &VPolynomial) -> VPolynomial {
        assert_eq!(self.sites, rhs.sites);
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), -*v);
        }
        out
    }
}

impl Neg for &VPolynomial {
    type Output = VPolynomial;
    fn neg(self) -> VPolynomial {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &VPolynomial {
    type Output = VPolynomial;
    fn mul(self, rhs: &VPolynomial) -> VPolynomial {
        assert_eq!(self.sites, rhs.sites);
        let mut out = VPolynomial::zero(self.sites);
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}
