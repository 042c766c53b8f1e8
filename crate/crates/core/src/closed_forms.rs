//! Closed forms for the max-product partition function, its left inverse,
//! Perrin numbers, and the largest value writable with a fixed number of ones.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact non-negative integer used for every count that can outgrow 64 bits.
pub type BigNat = BigUint;

fn pow3(e: u32) -> BigNat {
    BigNat::from(3u32).pow(e)
}

/// Largest product of positive integers whose sum is `n`.
///
/// Uses as many 3s as possible: `3^i`, `4*3^(i-1)` or `2*3^i` for
/// `n = 3i`, `3i+1`, `3i+2`, with `ell(1) = 1`.
pub fn ell(n: u32) -> Result<BigNat> {
    if n == 0 {
        return Err(Error::TooSmall { what: "n", min: 1, got: 0 });
    }
    if n == 1 {
        return Ok(BigNat::one());
    }
    let i = n / 3;
    Ok(match n % 3 {
        0 => pow3(i),
        1 => pow3(i - 1) * 4u32,
        _ => pow3(i) * 2u32,
    })
}

/// Minimum number of sets in a separating cover on `m` elements.
pub fn s_of(m: &BigNat) -> Result<u32> {
    if m.is_zero() {
        return Err(Error::TooSmall { what: "m", min: 1, got: 0 });
    }
    if m.is_one() {
        return Ok(1);
    }
    if *m == BigNat::from(2u32) {
        return Ok(2);
    }
    // m >= 3 falls into one of the three ranges for some i >= 1.
    let mut i = 1u32;
    let mut p = BigNat::from(3u32); // 3^i
    loop {
        let prev = &p / 3u32; // 3^(i-1)
        let two_prev = &prev * 2u32;
        let four_prev = &prev * 4u32;
        let two_p = &p * 2u32;
        if two_prev < *m && *m <= p {
            return Ok(3 * i);
        }
        if p < *m && *m <= four_prev {
            return Ok(3 * i + 1);
        }
        if four_prev < *m && *m <= two_p {
            return Ok(3 * i + 2);
        }
        i += 1;
        p *= 3u32;
    }
}

/// [`s_of`] for machine-sized arguments.
pub fn s_of_u64(m: u64) -> Result<u32> {
    s_of(&BigNat::from(m))
}

/// Perrin numbers seeded `P(1)=0, P(2)=2, P(3)=3`, so that `perrin(j)`
/// counts the maximal independent sets of the `j`-cycle for `j >= 3`.
pub fn perrin(j: u32) -> Result<BigNat> {
    if j == 0 {
        return Err(Error::TooSmall { what: "j", min: 1, got: 0 });
    }
    let mut window = [BigNat::zero(), BigNat::from(2u32), BigNat::from(3u32)];
    if j <= 3 {
        return Ok(window[(j - 1) as usize].clone());
    }
    for _ in 4..=j {
        let next = &window[0] + &window[1];
        window.rotate_left(1);
        window[2] = next;
    }
    Ok(window[2].clone())
}

/// Largest integer expressible with exactly `n` ones using `+`, `*` and
/// parentheses, from the split recurrence
/// `E(n) = max_{a+b=n} max(E(a)+E(b), E(a)E(b))`.
pub fn max_with_ones(n: u32) -> Result<BigNat> {
    Ok(max_with_ones_table(n)?.pop().expect("table holds n >= 1 entries"))
}

/// `E(1), ..., E(n)` from the split recurrence.
pub fn max_with_ones_table(n: u32) -> Result<Vec<BigNat>> {
    if n == 0 {
        return Err(Error::TooSmall { what: "n", min: 1, got: 0 });
    }
    let n = n as usize;
    // e[k] = E(k + 1)
    let mut e: Vec<BigNat> = Vec::with_capacity(n);
    e.push(BigNat::one());
    for total in 2..=n {
        let mut best = BigNat::zero();
        for a in 1..=total / 2 {
            let (x, y) = (&e[a - 1], &e[total - a - 1]);
            let sum = x + y;
            let prod = x * y;
            let cand = if sum > prod { sum } else { prod };
            if cand > best {
                best = cand;
            }
        }
        e.push(best);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn ell_small_values() {
        assert_eq!(ell(1).unwrap(), big(1));
        assert_eq!(ell(2).unwrap(), big(2));
        assert_eq!(ell(5).unwrap(), big(6));
        assert_eq!(ell(10).unwrap(), big(36));
        assert!(ell(0).is_err());
    }

    #[test]
    fn s_of_small_values() {
        assert_eq!(s_of_u64(1).unwrap(), 1);
        assert_eq!(s_of_u64(2).unwrap(), 2);
        assert_eq!(s_of_u64(3).unwrap(), 3);
        assert_eq!(s_of_u64(4).unwrap(), 4);
        assert_eq!(s_of_u64(10).unwrap(), 7);
        assert!(s_of_u64(0).is_err());
    }

    #[test]
    fn perrin_values() {
        let expected = [0u64, 2, 3, 2, 5, 5, 7, 10, 12, 17];
        for (j, &p) in (1..=10).zip(expected.iter()) {
            assert_eq!(perrin(j).unwrap(), big(p), "j = {j}");
        }
        assert!(perrin(0).is_err());
    }

    #[test]
    fn max_with_ones_values() {
        assert_eq!(max_with_ones(1).unwrap(), big(1));
        assert_eq!(max_with_ones(7).unwrap(), big(12));
        assert_eq!(max_with_ones(12).unwrap(), big(81));
        assert!(max_with_ones(0).is_err());
    }

    #[test]
    fn ell_strictly_increasing_and_super_multiplicative() {
        let vals: Vec<BigNat> = (1..=201).map(|n| ell(n).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[0] < w[1]);
        }
        for a in 1..120usize {
            for b in 1..=(120 - a) {
                assert!(&vals[a - 1] * &vals[b - 1] <= vals[a + b - 1], "a={a} b={b}");
            }
        }
    }

    #[test]
    fn s_is_left_inverse_of_ell() {
        for n in 1..=200 {
            assert_eq!(s_of(&ell(n).unwrap()).unwrap(), n);
        }
    }

    #[test]
    fn s_matches_min_over_ell() {
        let ells: Vec<u64> = (1..=30).map(|n| ell(n).unwrap().try_into().unwrap()).collect();
        let mut prev = 0;
        for m in 1..=10_000u64 {
            let s = s_of_u64(m).unwrap();
            let expect = ells.iter().position(|&l| l >= m).unwrap() as u32 + 1;
            assert_eq!(s, expect, "m = {m}");
            assert!(s >= prev);
            prev = s;
        }
    }

    #[test]
    fn cycle_bound_strict() {
        for j in 6..=100 {
            let lhs = ell(j - 3).unwrap() * 2u32 + ell(j - 4).unwrap();
            assert!(lhs < ell(j).unwrap(), "j = {j}");
        }
    }

    #[test]
    fn max_with_ones_equals_ell() {
        let table = max_with_ones_table(40).unwrap();
        for (k, e) in table.iter().enumerate() {
            assert_eq!(*e, ell(k as u32 + 1).unwrap());
        }
    }
}
