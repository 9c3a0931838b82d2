//! Exact rational interval arithmetic.
//!
//! Endpoints are arbitrary-precision rationals, so every bound computed here
//! is a true bound: there is no floating-point rounding to account for, and
//! the pruning decisions built on these intervals are sound outright.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = candidates.iter().min().expect("nonempty").clone();
        let hi = candidates.iter().max().expect("nonempty").clone();
        Self { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_negative() {
            Self { lo: &self.hi * k, hi: &self.lo * k }
        } else {
            Self { lo: &self.lo * k, hi: &self.hi * k }
        }
    }

    /// Tight power: even powers of a zero-straddling interval start at 0.
    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::point(BigRational::one());
        }
        if e.is_multiple_of(2) && self.contains_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            let mut hi = BigRational::one();
            for _ in 0..e {
                hi *= &m;
            }
            return Self { lo: BigRational::zero(), hi };
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(Self { lo, hi })
        } else {
            None
        }
    }
}

pub type Box_ = BTreeMap<String, RatInterval>;

/// Natural interval extension: monomial-by-monomial bound.
pub fn eval_natural(p: &Polynomial, bx: &Box_) -> RatInterval {
    let mut total = RatInterval::point(BigRational::zero());
    for (m, c) in &p.0 {
        let mut term = RatInterval::point(BigRational::one());
        for (v, &e) in &m.0 {
            let iv = bx.get(v).unwrap_or_else(|| panic!("unbound variable {v}"));
            term = term.mul(&iv.pow(e));
        }
        total = total.add(&term.scale(c));
    }
    total
}

/// Mean-value form around the box midpoint, intersected with the natural
/// extension. The mean-value bound `f(c) + sum_i df/dx_i(B) * (B_i - c_i)`
/// is often tighter on narrow boxes; both are sound, so the intersection is
/// too.
pub fn eval_mean_value(p: &Polynomial, bx: &Box_) -> RatInterval {
    let natural = eval_natural(p, bx);
    if p.degree() <= 1 {
        return natural;
    }
    let mid: BTreeMap<String, BigRational> =
        bx.iter().map(|(v, iv)| (v.clone(), iv.mid())).collect();
    let mut mv = RatInterval::point(p.eval_exact(&mid));
    for v in p.vars() {
        let grad = eval_natural(&p.derivative(v), bx);
        let iv = &bx[v];
        let centered = RatInterval::new(&iv.lo - &mid[v], &iv.hi - &mid[v]);
        mv = mv.add(&grad.mul(&centered));
    }
    mv.intersect(&natural).expect("both forms bound the same range")
}
