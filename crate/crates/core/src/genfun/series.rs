use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Power series in `vars` variables truncated to degree `≤ t` in each
/// variable separately. Coefficients are stored densely in lexicographic
/// exponent order, first variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MSeries {
    vars: usize,
    t: u32,
    coeffs: Vec<BigInt>,
}

impl MSeries {
    pub fn zero(vars: usize, t: u32) -> Self {
        assert!(vars > 0, "a series needs at least one variable");
        let len = (t as usize + 1).pow(vars as u32);
        MSeries {
            vars,
            t,
            coeffs: vec![BigInt::zero(); len],
        }
    }

    pub fn constant(vars: usize, t: u32, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(vars, t);
        s.coeffs[0] = c.into();
        s
    }

    pub fn one(vars: usize, t: u32) -> Self {
        Self::constant(vars, t, 1)
    }

    /// `c · x^exps`; zero if any exponent exceeds the truncation.
    pub fn monomial(vars: usize, t: u32, exps: &[u32], c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars);
        let mut s = Self::zero(vars, t);
        if let Some(i) = s.index(exps) {
            s.coeffs[i] = c.into();
        }
        s
    }

    /// The variable `x_i`.
    pub fn var(vars: usize, t: u32, i: usize) -> Self {
        let mut exps = vec![0; vars];
        exps[i] = 1;
        Self::monomial(vars, t, &exps, 1)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn truncation(&self) -> u32 {
        self.t
    }

    fn index(&self, exps: &[u32]) -> Option<usize> {
        let base = self.t as usize + 1;
        exps.iter().try_fold(0usize, |acc, &e| (e <= self.t).then(|| acc * base + e as usize))
    }

    fn exponents(&self, mut index: usize) -> Vec<u32> {
        let base = self.t as usize + 1;
        let mut exps = vec![0; self.vars];
        for e in exps.iter_mut().rev() {
            *e = (index % base) as u32;
            index /= base;
        }
        exps
    }

    /// Coefficient of `x^exps`. Exponents beyond the truncation are not stored
    /// and yield a domain error.
    pub fn coefficient(&self, exps: &[u32]) -> Result<BigInt> {
        if exps.len() != self.vars {
            return Err(Error::domain(format!(
                "exponent tuple has {} entries for a series in {} variables",
                exps.len(),
                self.vars
            )));
        }
        self.index(exps)
            .map(|i| self.coeffs[i].clone())
            .ok_or_else(|| Error::domain(format!("exponents {exps:?} exceed truncation {}", self.t)))
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exponents(i), c))
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.vars == other.vars && self.t == other.t,
            "series shapes differ: {}@{} vs {}@{}",
            self.vars,
            self.t,
            other.vars,
            other.t
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        MSeries {
            vars: self.vars,
            t: self.t,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        MSeries {
            vars: self.vars,
            t: self.t,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let left: Vec<(Vec<u32>, &BigInt)> = self.terms().collect();
        let right: Vec<(Vec<u32>, &BigInt)> = other.terms().collect();
        let mut out = Self::zero(self.vars, self.t);
        let mut exps = vec![0u32; self.vars];
        for (ea, a) in &left {
            'pairs: for (eb, b) in &right {
                for v in 0..self.vars {
                    exps[v] = ea[v] + eb[v];
                    if exps[v] > self.t {
                        continue 'pairs;
                    }
                }
                let i = out.index(&exps).expect("within truncation");
                out.coeffs[i] += *a * *b;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.vars, self.t);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitutes `x_i ↦ x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vars);
        let mut out = Self::zero(self.vars, self.t);
        for (exps, c) in self.terms() {
            let mut moved = vec![0; self.vars];
            for (i, &e) in exps.iter().enumerate() {
                moved[perm[i]] = e;
            }
            let i = out.index(&moved).expect("within truncation");
            out.coeffs[i] = c.clone();
        }
        out
    }

    /// Multiplicative inverse of a series with constant term `±1`, as the
    /// geometric series `c · Σ_k (−c·u)^k` where `self = c + u`. The sum is
    /// evaluated Horner-style and stops once `u^k` vanishes under truncation.
    pub fn invert_unit(&self) -> Result<Self> {
        let c = self.constant_term().clone();
        if c.abs() != BigInt::one() {
            return Err(Error::domain(format!(
                "constant term {c} is not a unit; the series has no inverse"
            )));
        }
        let mut u = self.clone();
        u.coeffs[0] = BigInt::zero();
        let step = u.scale(&-&c);
        let one = Self::one(self.vars, self.t);
        // every term of u has total degree ≥ 1, and total degree is at most vars·t
        let depth = self.vars as u32 * self.t;
        let mut acc = one.clone();
        for _ in 0..depth {
            acc = one.add(&step.mul(&acc));
        }
        Ok(acc.scale(&c))
    }

    /// One line per nonzero monomial, `e1 e2 e3 : coeff`, exponents ascending.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (exps, c) in self.terms() {
            let e: Vec<String> = exps.iter().map(u32::to_string).collect();
            writeln!(f, "{} : {}", e.join(" "), c)?;
        }
        Ok(())
    }
}

impl std::ops::Add for &MSeries {
    type Output = MSeries;
    fn add(self, rhs: &MSeries) -> MSeries {
        MSeries::add(self, rhs)
    }
}

impl std::ops::Sub for &MSeries {
    type Output = MSeries;
    fn sub(self, rhs: &MSeries) -> MSeries {
        MSeries::sub(self, rhs)
    }
}

impl std::ops::Mul for &MSeries {
    type Output = MSeries;
    fn mul(self, rhs: &MSeries) -> MSeries {
        MSeries::mul(self, rhs)
    }
}

impl std::ops::Neg for &MSeries {
    type Output = MSeries;
    fn neg(self) -> MSeries {
        MSeries::neg(self)
    }
}

/// `∏ (1 − x_i)` for the listed variables.
pub(crate) fn one_minus_product(vars: usize, t: u32, which: &[usize]) -> MSeries {
    let one = MSeries::one(vars, t);
    which
        .iter()
        .fold(one.clone(), |acc, &i| acc.mul(&one.sub(&MSeries::var(vars, t, i))))
}
