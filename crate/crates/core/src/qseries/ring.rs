use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};
use serde_json::Value;

use crate::{Error, Result};

/// Exact coefficient ring for [`super::TruncatedSeries`].
pub trait Ring: Clone + PartialEq + fmt::Debug {
    const NAME: &'static str;

    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse when `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;

    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl Ring for Integer {
    const NAME: &'static str = "integer";

    fn zero() -> Self {
        Integer::new()
    }
    fn from_i64(v: i64) -> Self {
        Integer::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Integer::from(self * other)
    }
    fn neg_ref(&self) -> Self {
        Integer::from(-self)
    }
    fn try_inverse(&self) -> Option<Self> {
        if *self == 1 || *self == -1 {
            Some(self.clone())
        } else {
            None
        }
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl Ring for Rational {
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Rational::new()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Rational::from(self * other)
    }
    fn neg_ref(&self) -> Self {
        Rational::from(-self)
    }
    fn try_inverse(&self) -> Option<Self> {
        if *self == 0 {
            None
        } else {
            Some(Rational::from(self.recip_ref()))
        }
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

/// Laurent polynomial in w with integer coefficients, stored sparsely.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Integer>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*w^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl LaurentPoly {
    pub fn monomial(coeff: impl Into<Integer>, exp: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(exp, &coeff.into());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Integer)>>(it: I) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<i64, Integer> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> Integer {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: i64, c: &Integer) {
        if *c == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by w^s.
    pub fn shift(&self, s: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect() }
    }

    /// Substitutes w ↦ w^j.
    pub fn substitute_power(&self, j: i64) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in &self.terms {
            p.add_term(e * j, c);
        }
        p
    }

    /// Value at w = 1.
    pub fn sum_coeffs(&self) -> Integer {
        self.terms.values().sum()
    }

    /// Reduces exponents modulo t, i.e. the image in Z[w]/(w^t - 1).
    pub fn reduce_mod(&self, t: u32) -> Self {
        let mut p = LaurentPoly::default();
        for (e, c) in &self.terms {
            p.add_term(e.rem_euclid(t as i64), c);
        }
        p
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exact division by a Laurent polynomial whose extreme coefficients are
    /// ±1. Returns `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        if lead != 1 && lead != -1 {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::default();
        while let Some(hi) = rem.max_exp() {
            if hi - rem.min_exp()? < dhi - dlo {
                return None;
            }
            let c = rem.coeff(hi) * &lead;
            let e = hi - dhi;
            quot.add_term(e, &c);
            for (de, dc) in &divisor.terms {
                rem.add_term(de + e, &(-Integer::from(&c * dc)));
            }
        }
        Some(quot)
    }
}

impl Ring for LaurentPoly {
    const NAME: &'static str = "laurent";

    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn from_i64(v: i64) -> Self {
        LaurentPoly::monomial(v, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, &Integer::from(-c));
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut p = LaurentPoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(e1 + e2, &Integer::from(c1 * c2));
            }
        }
        p
    }
    fn neg_ref(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, Integer::from(-c))).collect() }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if *c == 1 || *c == -1 {
            Some(LaurentPoly::monomial(c.clone(), -e))
        } else {
            None
        }
    }
    fn to_json(&self) -> Value {
        Value::Object(self.terms.iter().map(|(e, c)| (e.to_string(), Value::String(c.to_string()))).collect())
    }
}

pub(crate) fn require_order(order: usize) -> Result<()> {
    if order < 1 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    Ok(())
}
