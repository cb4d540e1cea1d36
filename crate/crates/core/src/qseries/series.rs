use rug::{Complex, Integer};
use serde_json::{json, Value};

use super::ring::{require_order, Ring};
use crate::{Error, Result};

/// A power series in q known modulo q^order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn zero(order: usize) -> Result<Self> {
        require_order(order)?;
        Ok(TruncatedSeries { coeffs: vec![R::zero(); order] })
    }

    pub fn one(order: usize) -> Result<Self> {
        let mut s = Self::zero(order)?;
        s.coeffs[0] = R::one();
        Ok(s)
    }

    pub fn from_coeffs(mut coeffs: Vec<R>, order: usize) -> Result<Self> {
        require_order(order)?;
        coeffs.resize(order, R::zero());
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Adds `c·q^exp`; silently dropped beyond the truncation order.
    pub fn add_term(&mut self, exp: usize, c: &R) {
        if let Some(slot) = self.coeffs.get_mut(exp) {
            slot.add_assign_ref(c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|i| {
                let mut c = self.coeffs[i].clone();
                c.add_assign_ref(&other.coeffs[i]);
                c
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(R::neg_ref).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|x| x.mul_ref(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![R::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse; the constant term must be a unit of R.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("constant term is not a unit".into()))?;
        let order = self.order();
        let mut out: Vec<R> = Vec::with_capacity(order);
        out.push(inv0.clone());
        for n in 1..order {
            let mut acc = R::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc.add_assign_ref(&self.coeffs[k].mul_ref(&out[n - k]));
            }
            out.push(acc.neg_ref().mul_ref(&inv0));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplies in place by 1/(1 - c·q^step), step ≥ 1.
    pub fn div_geometric(&mut self, c: &R, step: usize) {
        for m in step..self.order() {
            let prev = self.coeffs[m - step].mul_ref(c);
            self.coeffs[m].add_assign_ref(&prev);
        }
    }

    /// Multiplies in place by (1 - c·q^step), step ≥ 1.
    pub fn mul_binomial(&mut self, c: &R, step: usize) {
        for m in (step..self.order()).rev() {
            let prev = self.coeffs[m - step].mul_ref(c);
            self.coeffs[m].sub_assign_ref(&prev);
        }
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> TruncatedSeries<S> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        require_order(order)?;
        if order > self.order() {
            return Err(Error::InvalidArgument("cannot extend a truncated series".into()));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..order].to_vec() })
    }

    /// `{order, ring, coeffs}`; integers are decimal strings and Laurent
    /// coefficients are `{exponent: value}` maps.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "ring": R::NAME,
            "coeffs": self.coeffs.iter().map(R::to_json).collect::<Vec<_>>(),
        })
    }
}

impl TruncatedSeries<Integer> {
    /// Σ c_n q^n at a complex point, Horner scheme at the precision of `q`.
    pub fn evaluate(&self, q: &Complex) -> Complex {
        let mut acc = Complex::new(q.prec());
        for c in self.coeffs.iter().rev() {
            acc *= q;
            acc += c;
        }
        acc
    }
}
