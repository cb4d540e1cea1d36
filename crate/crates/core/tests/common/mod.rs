//! Brute-force reference implementations used only by the tests. Nothing
//! here calls into the library.

#![allow(dead_code)]

/// All partitions of n as non-increasing part lists, by recursion on the
/// largest part.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// p(0..=n) by the coin-change recurrence.
pub fn p_table(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p
}

pub fn rank(parts: &[u32]) -> i64 {
    match parts.first() {
        Some(&l) => l as i64 - parts.len() as i64,
        None => 0,
    }
}

/// Σ over partitions of n of C(rank, 2).
pub fn eta2(n: u32) -> i128 {
    partitions(n).iter().map(|p| {
        let r = rank(p) as i128;
        r * (r - 1) / 2
    }).sum()
}

/// Σ over partitions of n of the multiplicity of the smallest part.
pub fn spt(n: u32) -> u128 {
    partitions(n)
        .iter()
        .map(|p| {
            let s = *p.last().unwrap();
            p.iter().filter(|&&x| x == s).count() as u128
        })
        .sum()
}

/// Coefficients 0..order of a power series product.
pub fn mul(a: &[i128], b: &[i128], order: usize) -> Vec<i128> {
    let mut c = vec![0i128; order];
    for (i, x) in a.iter().enumerate().take(order) {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// Power-series inverse of a series with constant term ±1.
pub fn inverse(a: &[i128], order: usize) -> Vec<i128> {
    assert!(a[0] == 1 || a[0] == -1);
    let mut b = vec![0i128; order];
    b[0] = a[0];
    for n in 1..order {
        let mut s = 0i128;
        for k in 1..=n.min(a.len() - 1) {
            s += a[k] * b[n - k];
        }
        b[n] = -s * a[0];
    }
    b
}

/// Π_{n≥1} (1 − q^{step·n}) to the given order.
pub fn euler_product(step: usize, order: usize) -> Vec<i128> {
    let mut out = vec![0i128; order];
    out[0] = 1;
    let mut m = step;
    while m < order {
        for i in (m..order).rev() {
            out[i] -= out[i - m];
        }
        m += step;
    }
    out
}

/// η₂ᵒ(0..order) from Σ_{n∈ℤ} (−1)ⁿ q^{3n²+5n+2}/(1−q^{2n+1})³ divided by
/// (q²;q²)_∞, with negative n rewritten through 1/(1−q^{−d}) = −q^d/(1−q^d).
pub fn eta2_odd_series(order: usize) -> Vec<i128> {
    let mut num = vec![0i128; order];
    for n in -40i64..40 {
        let e = 3 * n * n + 5 * n + 2;
        let d = 2 * n + 1;
        let sign: i128 = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        // 1/(1−q^d)³ for d>0, −q^{3|d|}/(1−q^{|d|})³ for d<0
        let (shift, s2, ad) = if d > 0 { (0, 1, d) } else { (3 * (-d), -1, -d) };
        let start = e + shift;
        if start < 0 {
            panic!("negative exponent");
        }
        let mut i = 0i64;
        while ((start + ad * i) as usize) < order {
            let c = ((i + 1) * (i + 2) / 2) as i128;
            num[(start + ad * i) as usize] += sign * s2 * c;
            i += 1;
        }
    }
    let den = euler_product(2, order);
    mul(&num, &inverse(&den, order), order)
}

/// Dedekind sum by its defining sum over μ mod k, in floating point.
pub fn dedekind_f64(h: i64, k: i64) -> f64 {
    let saw = |x: f64| {
        if (x - x.round()).abs() < 1e-12 {
            0.0
        } else {
            x - x.floor() - 0.5
        }
    };
    (1..k).map(|mu| saw(mu as f64 / k as f64) * saw((h * mu) as f64 / k as f64)).sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A marked entry as (subscript, value).
pub type Marked = (u8, u32);

/// All rows: sequences of marked entries with value sum `target`, values
/// in `values`, sorted with subscripts and values non-increasing.
fn marked_rows(target: u32, values: &[u32]) -> Vec<Vec<Marked>> {
    let mut keys: Vec<Marked> = Vec::new();
    for &m in &[2u8, 1u8] {
        for &v in values.iter().rev() {
            keys.push((m, v));
        }
    }
    // keys is ordered: subscript 2 first, values descending within
    fn go(target: u32, keys: &[Marked], from: usize, cur: &mut Vec<Marked>, out: &mut Vec<Vec<Marked>>) {
        if target == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..keys.len() {
            let (_, v) = keys[i];
            if v <= target {
                cur.push(keys[i]);
                go(target - v, keys, i, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(target, &keys, 0, &mut Vec::new(), &mut out);
    out.into_iter()
        .filter(|row| row.windows(2).all(|w| w[0].1 >= w[1].1))
        .collect()
}

/// Full ranks of every 2-marked symbol of n, straight from the subscript
/// rules. With `odd`, entries are odd, bounded by 2S+1, and the offset is
/// 2S²+2S+1.
pub fn marked_symbol_ranks(n: u32, odd: bool) -> Vec<i64> {
    let mut out = Vec::new();
    let start = if odd { 0 } else { 1 };
    for s in start.. {
        let (offset, cap) = if odd { (2 * s * s + 2 * s + 1, 2 * s + 1) } else { (s * s, s) };
        if offset > n {
            break;
        }
        let values: Vec<u32> = (1..=cap).filter(|v| !odd || v % 2 == 1).collect();
        let rem = n - offset;
        for top_sum in 0..=rem {
            let tops = marked_rows(top_sum, &values);
            let bottoms = marked_rows(rem - top_sum, &values);
            for top in &tops {
                let m1 = match top.iter().filter(|e| e.0 == 1).map(|e| e.1).max() {
                    Some(v) => v,
                    None => continue,
                };
                for bottom in &bottoms {
                    let ok = bottom.iter().all(|&(m, v)| if m == 1 { v <= m1 } else { v >= m1 && v <= cap });
                    if ok {
                        let count = |row: &[Marked], m: u8| row.iter().filter(|e| e.0 == m).count() as i64;
                        let r = (count(top, 1) - count(bottom, 1) - 1) + 2 * (count(top, 2) - count(bottom, 2));
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}
