//! Small exact helpers for arithmetic mod `p`.

/// Greatest common divisor (non-negative result).
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Least common multiple in `i128`, so two 31-bit inputs cannot overflow.
pub fn lcm128(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        return 0;
    }
    let (mut x, mut y) = (a.abs(), b.abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a.abs() / x * b.abs()
}

/// Reduce `x` into `[0, m)`.
pub fn reduce(x: i64, m: i64) -> i64 {
    debug_assert!(m > 0);
    x.rem_euclid(m)
}

/// Reduce a wide intermediate into `[0, m)`.
pub fn reduce128(x: i128, m: i64) -> i64 {
    debug_assert!(m > 0);
    x.rem_euclid(m as i128) as i64
}

/// Product of two residues, reduced mod `m`. Inputs need not be reduced.
pub fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
    reduce128(a as i128 * b as i128, m)
}

/// Multiplicative inverse of `a` mod `m`, when `gcd(a, m) = 1`.
pub fn inverse(a: i64, m: i64) -> Option<i64> {
    debug_assert!(m > 0);
    // Extended Euclid on (m, a): maintains t with t * a ≡ r (mod m).
    let (mut t, mut t1) = (0i128, 1i128);
    let (mut r, mut r1) = (m as i128, reduce(a, m) as i128);
    while r1 != 0 {
        let q = r / r1;
        (t, t1) = (t1, t - q * t1);
        (r, r1) = (r1, r - q * r1);
    }
    if r != 1 {
        return None;
    }
    Some(reduce128(t, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(-12, 18), 6);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(1, 1), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        for m in 2i64..60 {
            for a in 1..m {
                match inverse(a, m) {
                    Some(inv) => {
                        assert_eq!(gcd(a, m), 1);
                        assert_eq!(mul_mod(a, inv, m), 1);
                        assert!((0..m).contains(&inv));
                    }
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn lcm_wide() {
        assert_eq!(lcm128(4, 6), 12);
        assert_eq!(lcm128(7, 13), 91);
        assert_eq!(lcm128((1 << 31) - 1, 1 << 31), ((1i128 << 31) - 1) << 31);
    }
}
