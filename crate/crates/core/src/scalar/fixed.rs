//! Fixed-point enclosures of `cos(2πj/m)`.
//!
//! Values are big integers scaled by `2^prec`. Each returned pair `(lo, hi)`
//! satisfies `lo <= 2^prec * cos(2πj/m) <= hi`. Computation runs with
//! `GUARD` extra bits; the accumulated truncation error is a few hundred
//! units at the working precision, far below `2^GUARD`, so widening the
//! rounded result by two units at the target precision is rigorous.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

const GUARD: u32 = 32;

/// `2^w * atan(1/k)`, truncated termwise.
fn atan_inv(k: u32, w: u32) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power: BigInt = (BigInt::one() << w) / &k;
    let mut total = BigInt::zero();
    let mut i: u32 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * i + 1);
        if i.is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        power /= &k2;
        i += 1;
    }
    total
}

/// `2^w * π` by Machin's formula.
fn pi_fixed(w: u32) -> BigInt {
    atan_inv(5, w) * 16 - atan_inv(239, w) * 4
}

/// `2^w * cos(θ)` for `2^w * θ = theta`, `0 <= θ <= π`.
fn cos_fixed(theta: &BigInt, w: u32) -> BigInt {
    let one = BigInt::one() << w;
    let theta_sq = (theta * theta) >> w;
    let mut term = one.clone();
    let mut total = one;
    let mut i: u32 = 0;
    loop {
        let div = BigInt::from((2 * i + 1) * (2 * i + 2));
        term = ((&term * &theta_sq) >> w) / div;
        if term.is_zero() {
            break;
        }
        if i.is_multiple_of(2) {
            total -= &term;
        } else {
            total += &term;
        }
        i += 1;
    }
    total
}

/// Enclosures of `cos(2πj/m)` for `j = 0..count` at `prec` bits.
fn compute_table(m: u32, count: usize, prec: u32) -> Vec<(BigInt, BigInt)> {
    let w = prec + GUARD;
    let pi = pi_fixed(w);
    (0..count as u32)
        .map(|j| {
            let j = j % m;
            // cos(2πj/m) = cos(2π(m-j)/m); fold the angle into [0, π].
            let j = j.min(m - j);
            let theta = (&pi * BigInt::from(2 * j)) / BigInt::from(m);
            let c = cos_fixed(&theta, w) >> GUARD;
            (&c - 2, c + 2)
        })
        .collect()
}

type TableKey = (u32, u32);
type Table = Arc<Vec<(BigInt, BigInt)>>;

fn cache() -> &'static Mutex<HashMap<TableKey, Table>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Table>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached enclosure table for order `m`, covering exponents `0..count`.
pub(crate) fn cos_table(m: u32, count: usize, prec: u32) -> Table {
    let key = (m, prec);
    if let Some(t) = cache().lock().unwrap().get(&key) {
        if t.len() >= count {
            return t.clone();
        }
    }
    let table = Arc::new(compute_table(m, count, prec));
    cache().lock().unwrap().insert(key, table.clone());
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn pi_matches_f64() {
        let pi = pi_fixed(80);
        let approx = pi.to_f64().unwrap() / 2f64.powi(80);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn cos_enclosures_contain_f64_values() {
        for m in [5u32, 8, 12, 28, 40] {
            let table = compute_table(m, m as usize, 64);
            for (j, (lo, hi)) in table.iter().enumerate() {
                let scale = 2f64.powi(64);
                let lo = lo.to_f64().unwrap() / scale;
                let hi = hi.to_f64().unwrap() / scale;
                let exact = (2.0 * std::f64::consts::PI * j as f64 / m as f64).cos();
                assert!(lo <= exact + 1e-14 && exact - 1e-14 <= hi, "m={m} j={j}");
                assert!(hi - lo < 1e-15);
            }
        }
    }
}
