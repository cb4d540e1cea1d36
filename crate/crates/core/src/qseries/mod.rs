//! Truncated q-series over exact rings and the generating functions built
//! from them.

mod ring;
mod series;

pub use ring::{LaurentPoly, Ring};
pub use series::TruncatedSeries;

use rug::{Complex, Integer, Rational};

use crate::specialfn::precision::two_pi_i_times;
use crate::{Error, Result};

pub type IntSeries = TruncatedSeries<Integer>;
pub type LaurentSeries = TruncatedSeries<LaurentPoly>;

/// (q^j; q)_∞ truncated at `order`.
pub fn pochhammer(j: i64, order: usize) -> Result<IntSeries> {
    if j < 0 {
        return Err(Error::InvalidArgument("(q^j;q) needs j >= 0".into()));
    }
    if j == 0 {
        return IntSeries::zero(order);
    }
    let mut s = IntSeries::one(order)?;
    let one = Integer::from(1);
    for m in (j as usize)..order {
        s.mul_binomial(&one, m);
    }
    Ok(s)
}

/// 1/(q^step; q^step)_∞ truncated at `order`.
fn inverse_euler(order: usize, step: usize) -> Result<IntSeries> {
    let mut s = IntSeries::one(order)?;
    let one = Integer::from(1);
    let mut m = step;
    while m < order {
        s.div_geometric(&one, m);
        m += step;
    }
    Ok(s)
}

/// Σ p(n) qⁿ.
pub fn partition_series(order: usize) -> Result<IntSeries> {
    inverse_euler(order, 1)
}

/// R(w;q) from 1 + Σ q^{n²}/((wq;q)_n (w⁻¹q;q)_n).
pub fn rank_series_eulerian(order: usize) -> Result<LaurentSeries> {
    let mut total = LaurentSeries::one(order)?;
    let mut t = LaurentSeries::one(order)?;
    let w = LaurentPoly::monomial(1, 1);
    let w_inv = LaurentPoly::monomial(1, -1);
    let mut n = 1usize;
    while n * n < order {
        t.div_geometric(&w, n);
        t.div_geometric(&w_inv, n);
        for m in 0..(order - n * n) {
            if !t.coeff(m).is_zero() {
                total.add_term(m + n * n, t.coeff(m));
            }
        }
        n += 1;
    }
    Ok(total)
}

/// R(w;q) from (1−w)/(q;q)_∞ · Σ_{n∈ℤ} (−1)ⁿ q^{n(3n+1)/2}/(1−wqⁿ).
pub fn rank_series_appell(order: usize) -> Result<LaurentSeries> {
    let mut s = LaurentSeries::one(order)?;
    let one_minus_w = LaurentPoly::from_terms([(0, Integer::from(1)), (1, Integer::from(-1))]);
    for n in 1usize.. {
        let pos = n * (3 * n + 1) / 2;
        let neg = n * (3 * n - 1) / 2;
        if pos >= order && neg + n >= order {
            break;
        }
        let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
        let mut i = 0usize;
        while pos + n * i < order {
            let c = one_minus_w.shift(i as i64).mul_ref(&LaurentPoly::from_i64(sign));
            s.add_term(pos + n * i, &c);
            i += 1;
        }
        let mut i = 1usize;
        while neg + n * i < order {
            let c = one_minus_w.shift(-(i as i64)).mul_ref(&LaurentPoly::from_i64(-sign));
            s.add_term(neg + n * i, &c);
            i += 1;
        }
    }
    let p = partition_series(order)?.map(|c| LaurentPoly::monomial(c.clone(), 0));
    Ok(s.mul(&p))
}

/// R(w;q), optionally specialised at w = ζ_t^j and stored in Z[w]/(w^t − 1)
/// (exponents reduced into 0..t).
pub fn rank_series(t_root: Option<(i64, u32)>, order: usize) -> Result<LaurentSeries> {
    let r = rank_series_eulerian(order)?;
    match t_root {
        None => Ok(r),
        Some((_, 0)) => Err(Error::InvalidArgument("root order t must be positive".into())),
        Some((j, t)) => Ok(r.map(|c| c.substitute_power(j).reduce_mod(t))),
    }
}

/// Σ_{n≠0} (−1)^{n+1} q^{3n(n+1)/2}/(1−qⁿ)², the numerator of R₂(q).
pub fn r2_theta_sum(order: usize) -> Result<IntSeries> {
    let mut s = IntSeries::zero(order)?;
    for n in 1usize.. {
        let pos = 3 * n * (n + 1) / 2;
        let neg = 3 * n * (n - 1) / 2 + 2 * n;
        if pos >= order && neg >= order {
            break;
        }
        let sign: i64 = if n % 2 == 1 { 1 } else { -1 };
        let mut i = 0usize;
        while pos + n * i < order {
            s.add_term(pos + n * i, &Integer::from(sign * (i as i64 + 1)));
            i += 1;
        }
        let mut i = 0usize;
        while neg + n * i < order {
            s.add_term(neg + n * i, &Integer::from(sign * (i as i64 + 1)));
            i += 1;
        }
    }
    Ok(s)
}

/// R₂(q) = Σ η₂(n) qⁿ.
pub fn r2_series(order: usize) -> Result<IntSeries> {
    let mut s = r2_theta_sum(order)?;
    let one = Integer::from(1);
    for m in 1..order {
        s.div_geometric(&one, m);
    }
    Ok(s)
}

/// R₂(w;q) = w²/((1−w)(w³−1)) (R(w;q) − R(w²;q)), coefficientwise exact.
pub fn r2_full_rank_series(order: usize) -> Result<LaurentSeries> {
    let r = rank_series_eulerian(order)?;
    let divisor = LaurentPoly::from_terms([
        (0, Integer::from(-1)),
        (1, Integer::from(1)),
        (3, Integer::from(1)),
        (4, Integer::from(-1)),
    ]);
    let mut out = Vec::with_capacity(order);
    for (n, c) in r.coeffs().iter().enumerate() {
        let mut diff = c.clone();
        diff.sub_assign_ref(&c.substitute_power(2));
        let num = diff.shift(2);
        out.push(num.div_exact(&divisor).ok_or(Error::NonzeroRemainder(n))?);
    }
    LaurentSeries::from_coeffs(out, order)
}

/// Σ_{n∈ℤ} (−1)ⁿ q^{3n²+5n+2}/(1−q^{2n+1})³, the numerator of R₂ᵒ(q).
pub fn r2_odd_theta_sum(order: usize) -> Result<IntSeries> {
    let mut s = IntSeries::zero(order)?;
    let cube = |i: usize| Integer::from((i + 1) * (i + 2) / 2);
    for n in 0usize.. {
        let pos = 3 * n * n + 5 * n + 2;
        let d = 2 * n + 1;
        // n ↦ −(n+1): exponent 3(n+1)² − 5(n+1) + 2 shifted by 3(2n+1)
        let m = n + 1;
        let neg = 3 * m * m + 2 - 5 * m + 3 * d;
        if pos >= order && neg >= order {
            break;
        }
        let sign = if n % 2 == 0 { Integer::from(1) } else { Integer::from(-1) };
        let mut i = 0usize;
        while pos + d * i < order {
            s.add_term(pos + d * i, &(&sign * cube(i)));
            i += 1;
        }
        let mut i = 0usize;
        while neg + d * i < order {
            // (−1)^{−(n+1)} · (−1) from flipping the geometric cube
            s.add_term(neg + d * i, &(&sign * cube(i)));
            i += 1;
        }
    }
    Ok(s)
}

/// R₂ᵒ(q) = Σ η₂ᵒ(n) qⁿ.
pub fn r2_odd_series(order: usize) -> Result<IntSeries> {
    let s = r2_odd_theta_sum(order)?;
    Ok(s.mul(&inverse_euler(order, 2)?))
}

/// σ₁(0..order) with σ₁(0) = 0.
pub fn sigma1_table(order: usize) -> Vec<Integer> {
    let mut s = vec![0u64; order];
    for d in 1..order {
        let mut m = d;
        while m < order {
            s[m] += d as u64;
            m += d;
        }
    }
    s.into_iter().map(Integer::from).collect()
}

/// E₂ = 1 − 24 Σ σ₁(n) qⁿ.
pub fn e2_series(order: usize) -> Result<IntSeries> {
    let coeffs = sigma1_table(order)
        .into_iter()
        .enumerate()
        .map(|(n, s)| if n == 0 { Integer::from(1) } else { s * -24 })
        .collect();
    IntSeries::from_coeffs(coeffs, order)
}

/// q^{a} · Σ cₙ qⁿ with a rational leading exponent; η is q^{1/24}(q;q)_∞.
#[derive(Debug, Clone)]
pub struct EtaObject {
    pub prefactor_exponent: Rational,
    pub series: IntSeries,
}

impl EtaObject {
    pub fn eta(order: usize) -> Result<Self> {
        Ok(EtaObject { prefactor_exponent: Rational::from((1, 24)), series: pochhammer(1, order)? })
    }

    /// Value at q = e^{2πiz} using the truncated series.
    pub fn evaluate(&self, z: &Complex) -> Complex {
        let prec = z.prec().0;
        let q = two_pi_i_times(z).exp();
        let mut pre = Complex::with_val(prec, z * &self.prefactor_exponent);
        pre = two_pi_i_times(&pre).exp();
        pre * self.series.evaluate(&q)
    }
}

/// Serde adapter for integer-valued maps keyed by exponent.
pub mod serde_int_map {
    use std::collections::BTreeMap;

    use rug::Integer;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<i64, Integer>, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = map.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        m.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, Integer>, D::Error> {
        let m: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        m.into_iter()
            .map(|(k, v)| {
                let k: i64 = k.parse().map_err(D::Error::custom)?;
                let v: Integer = v.parse().map_err(D::Error::custom)?;
                Ok((k, v))
            })
            .collect()
    }
}
