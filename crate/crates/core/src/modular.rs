//! Dedekind sums, the eta multiplier, Kloosterman-type sums, the h′
//! conventions and Farey frames.

use rayon::prelude::*;
use rug::{Complex, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::specialfn::precision::exp_pi_i_rational;
use crate::{Error, PrecisionContext, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// ((x)) = x − ⌊x⌋ − 1/2 for x ∉ ℤ, 0 otherwise.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::new();
    }
    let fl = Rational::from(x.floor_ref());
    (x - fl) - Rational::from((1, 2))
}

/// s(h,k) = Σ_{μ mod k} ((μ/k))((hμ/k)), summed with integer numerators.
pub fn dedekind_sum(h: i64, k: i64) -> Result<Rational> {
    if k <= 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if gcd(h, k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    // ((μ/k)) = (2μ − k)/(2k) for 0 < μ < k
    let mut num = Integer::new();
    let hk = h.rem_euclid(k) as i128;
    let k128 = k as i128;
    for mu in 1..k128 {
        let r = (hk * mu) % k128;
        if r == 0 {
            continue;
        }
        num += Integer::from((2 * mu - k128) * (2 * r - k128));
    }
    Ok(Rational::from((num, Integer::from(4 * k * k))))
}

/// ω_{h,k} = e^{πi s(h,k)}.
pub fn omega(h: i64, k: i64, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(exp_pi_i_rational(&dedekind_sum(h, k)?, ctx.prec()))
}

fn sum_ordered(terms: Vec<Complex>, prec: u32) -> Complex {
    let mut acc = Complex::new(prec);
    for t in terms {
        acc += t;
    }
    acc
}

/// A_k(n) = Σ_{h mod k, (h,k)=1} ω_{h,k} e^{−2πihn/k}.
///
/// Each summand is e^{πi r} with r = s(h,k) − 2hn/k reduced exactly.
pub fn kloosterman_a(k: i64, n: i64, ctx: &PrecisionContext) -> Result<Complex> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let prec = ctx.prec();
    let terms: Result<Vec<Complex>> = (0..k)
        .into_par_iter()
        .filter(|&h| gcd(h, k) == 1)
        .map(|h| {
            let s = dedekind_sum(h, k)?;
            let r = s - Rational::from((2 * h * n.rem_euclid(k), k));
            Ok(exp_pi_i_rational(&r, prec))
        })
        .collect();
    Ok(sum_ordered(terms?, prec))
}

/// A_kᵒ(n) = e^{πik/2} Σ_{h mod k, (h,k)=1} ω_{2h,k} e^{3πihk/2} e^{πih(1−4n)/(2k)}, k odd.
pub fn kloosterman_a_odd(k: i64, n: i64, ctx: &PrecisionContext) -> Result<Complex> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if k % 2 == 0 {
        return Err(Error::KEven(k));
    }
    let prec = ctx.prec();
    let terms: Result<Vec<Complex>> = (0..k)
        .into_par_iter()
        .filter(|&h| gcd(h, k) == 1)
        .map(|h| {
            let s = dedekind_sum(2 * h, k)?;
            let r = Rational::from((k, 2))
                + s
                + Rational::from((3 * h * k, 2))
                + Rational::from((h * (1 - 4 * n), 2 * k));
            Ok(exp_pi_i_rational(&r, prec))
        })
        .collect();
    Ok(sum_ordered(terms?, prec))
}

/// Which congruence h′ has to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HPrimeConvention {
    /// hh′ ≡ −1 (mod k), h′ even, k odd; smallest nonnegative.
    EvenModK,
    /// hh′ ≡ −1 (mod 2k), k even; in [0, 2k).
    Mod2K,
    /// hh′ ≡ −1 (mod 4k); in [0, 4k).
    Mod4K,
    /// hh′ ≡ −1 (mod k) and 4 | h′, k odd; in [0, 4k).
    Mod4KDivisibleBy4,
}

fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

pub fn solve_hprime(h: i64, k: i64, convention: HPrimeConvention) -> Result<i64> {
    let no = |reason: &str| Error::NoSolution { h, k, reason: reason.into() };
    if k < 1 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if gcd(h, k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    let solve = |m: i64| -> Option<i64> { inverse_mod(h, m).map(|inv| (-inv).rem_euclid(m)) };
    match convention {
        HPrimeConvention::EvenModK => {
            if k % 2 == 0 {
                return Err(no("k must be odd for an even solution mod k"));
            }
            let base = solve(k).ok_or_else(|| no("h not invertible mod k"))?;
            Ok(if base % 2 == 0 { base } else { base + k })
        }
        HPrimeConvention::Mod2K => solve(2 * k).ok_or_else(|| no("h must be odd to be invertible mod 2k")),
        HPrimeConvention::Mod4K => solve(4 * k).ok_or_else(|| no("h must be odd to be invertible mod 4k")),
        HPrimeConvention::Mod4KDivisibleBy4 => {
            let base = solve(k).ok_or_else(|| no("h not invertible mod k"))?;
            (0..4)
                .map(|j| base + j * k)
                .find(|c| c % 4 == 0)
                .ok_or_else(|| no("no residue h' + jk is divisible by 4 (k even)"))
        }
    }
}

/// The convention used by the transformation law of R₂: even solution mod
/// k for k odd, solution mod 2k for k even.
pub fn default_convention(k: i64) -> HPrimeConvention {
    if k % 2 == 1 {
        HPrimeConvention::EvenModK
    } else {
        HPrimeConvention::Mod2K
    }
}

/// A fraction h/k inside the order-N Farey sequence together with its
/// neighbours, arcs and the circle-method variable z = k/n − kΦi.
#[derive(Debug, Clone)]
pub struct FareyFrame {
    pub h: i64,
    pub k: i64,
    pub order: i64,
    pub h1: i64,
    pub k1: i64,
    pub h2: i64,
    pub k2: i64,
    pub hprime: i64,
    pub convention: HPrimeConvention,
    pub theta_left: Rational,
    pub theta_right: Rational,
    pub z: Complex,
}

pub fn farey_neighbors(h: i64, k: i64, order: i64) -> Result<(i64, i64, i64, i64)> {
    if k < 1 || k > order || h < 0 || h >= k {
        return Err(Error::InvalidArgument(format!("need 0 <= h < k <= N, got h={h}, k={k}, N={order}")));
    }
    if gcd(h, k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    let pick = |residue: i64| -> i64 {
        // unique k' in (N − k, N] with k' ≡ residue (mod k)
        let r = residue.rem_euclid(k);
        order - (order - r).rem_euclid(k)
    };
    let inv = inverse_mod(h, k).unwrap_or(0);
    let k1 = pick(inv);
    let k2 = pick(-inv);
    let h1 = (h * k1 - 1) / k;
    let h2 = (h * k2 + 1) / k;
    Ok((h1, k1, h2, k2))
}

pub fn farey_frame(h: i64, k: i64, order: i64, n: i64, phi: &Rational, ctx: &PrecisionContext) -> Result<FareyFrame> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let (h1, k1, h2, k2) = farey_neighbors(h, k, order)?;
    let convention = default_convention(k);
    let hprime = solve_hprime(h, k, convention)?;
    let re = Rational::from((k, n));
    let im = -(phi * Rational::from(k));
    let z = Complex::with_val(ctx.prec(), (&re, &im));
    Ok(FareyFrame {
        h,
        k,
        order,
        h1,
        k1,
        h2,
        k2,
        hprime,
        convention,
        theta_left: Rational::from((1, k * (k1 + k))),
        theta_right: Rational::from((1, k * (k2 + k))),
        z,
    })
}
