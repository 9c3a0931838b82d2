//! Multivariate polynomials with exact rational coefficients.
//!
//! The representation is sparse: a map from monomials to nonzero
//! coefficients. Zero coefficients are removed on every operation, so the
//! zero polynomial is always the empty map and equality is structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

/// A product of variable powers, e.g. `x_a^2 * y_b`. The empty map is the
/// constant monomial 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self(BTreeMap::new())
    }

    pub fn var(name: &str) -> Self {
        Self(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Self(out)
    }
}

/// Sparse polynomial over named real variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial(pub(crate) BTreeMap<Monomial, BigRational>);

impl Polynomial {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut out = Self::zero();
        out.insert(Monomial::one(), c);
        out
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact lift of a finite float.
    pub fn real(v: f64) -> Self {
        Self::constant(BigRational::from_float(v).expect("finite coefficient"))
    }

    pub fn var(name: &str) -> Self {
        let mut out = Self::zero();
        out.insert(Monomial::var(name), BigRational::one());
        out
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.0.keys().all(|m| m.0.is_empty())
    }

    pub fn constant_value(&self) -> Option<&BigRational> {
        if self.0.is_empty() {
            return None;
        }
        if self.is_constant() {
            self.0.get(&Monomial::one())
        } else {
            None
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        self.0.keys().flat_map(|m| m.0.keys().map(String::as_str)).collect()
    }

    /// Linear view: `(coefficients, constant)` when every monomial has
    /// degree at most 1.
    pub fn as_linear(&self) -> Option<(BTreeMap<String, BigRational>, BigRational)> {
        let mut coeffs = BTreeMap::new();
        let mut k = BigRational::zero();
        for (m, c) in &self.0 {
            match m.degree() {
                0 => k = c.clone(),
                1 => {
                    let (v, _) = m.0.iter().next().expect("degree-1 monomial");
                    coeffs.insert(v.clone(), c.clone());
                }
                _ => return None,
            }
        }
        Some((coeffs, k))
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self(self.0.iter().map(|(m, c)| (m.clone(), c * k)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::int(1);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let Some(&e) = m.0.get(var) else { continue };
            let mut lowered = m.0.clone();
            if e == 1 {
                lowered.remove(var);
            } else {
                lowered.insert(var.to_string(), e - 1);
            }
            out.insert(Monomial(lowered), c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Replaces `var` by `replacement` throughout.
    pub fn substitute(&self, var: &str, replacement: &Polynomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            match m.0.get(var) {
                None => out.insert(m.clone(), c.clone()),
                Some(&e) => {
                    let mut rest = m.0.clone();
                    rest.remove(var);
                    let mut term = Polynomial::constant(c.clone());
                    term.0 = term
                        .0
                        .into_iter()
                        .map(|(mm, cc)| (mm.mul(&Monomial(rest.clone())), cc))
                        .collect();
                    let term = &term * &replacement.pow(e);
                    for (mm, cc) in term.0 {
                        out.insert(mm, cc);
                    }
                }
            }
        }
        out
    }

    /// Numeric evaluation at a full assignment.
    pub fn eval<S: Scalar>(&self, point: &BTreeMap<String, S>) -> S {
        let mut total = S::zero();
        for (m, c) in &self.0 {
            let mut term = S::of(c.to_f64().expect("coefficient fits in f64"));
            for (v, &e) in &m.0 {
                let x = *point.get(v).unwrap_or_else(|| panic!("unbound variable {v}"));
                for _ in 0..e {
                    term = term * x;
                }
            }
            total = total + term;
        }
        total
    }

    /// Sum of absolute term values at a point, plus one: the natural
    /// scale for a relative residual test at that point.
    pub fn eval_magnitude<S: Scalar>(&self, point: &BTreeMap<String, S>) -> S {
        let mut total = S::one();
        for (m, c) in &self.0 {
            let mut term = S::of(c.to_f64().expect("coefficient fits in f64").abs());
            for (v, &e) in &m.0 {
                let x = point.get(v).unwrap_or_else(|| panic!("unbound variable {v}")).abs();
                for _ in 0..e {
                    term = term * x;
                }
            }
            total = total + term;
        }
        total
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &BTreeMap<String, BigRational>) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.0 {
            let mut term = c.clone();
            for (v, &e) in &m.0 {
                let x = point.get(v).unwrap_or_else(|| panic!("unbound variable {v}"));
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        total
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Self) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Self) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial(self.0.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &rhs.0 {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first, ties by monomial order, for readable output.
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by(|(m1, _), (m2, _)| m2.degree().cmp(&m1.degree()).then(m1.cmp(m2)));
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
