//! Small helpers for arithmetic in Z_p.

/// Reduces `a` into `[0, p)`.
#[inline]
pub fn md(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    pow_mod(a, p - 2, p)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_primitive_root(g: u32, p: u32) -> bool {
    let (g, p) = (g as u64, p as u64);
    if g % p == 0 {
        return false;
    }
    prime_factors(p - 1)
        .into_iter()
        .all(|q| pow_mod(g, (p - 1) / q, p) != 1)
}

pub fn smallest_primitive_root(p: u32) -> u32 {
    (1..p).find(|&g| is_primitive_root(g, p)).expect("a prime has a primitive root")
}

pub fn primitive_roots(p: u32) -> Vec<u32> {
    (1..p).filter(|&g| is_primitive_root(g, p)).collect()
}

/// Nonzero quadratic residues modulo `p`, sorted.
pub fn quadratic_residues(p: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (1..p).map(|x| md(x as i64 * x as i64, p)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// The discrete logarithm of `a` to base `g`, by brute force.
pub fn dlog(a: u32, g: u32, p: u32) -> Option<u32> {
    let mut x = 1u64;
    for e in 0..p - 1 {
        if x == a as u64 % p as u64 {
            return Some(e);
        }
        x = x * g as u64 % p as u64;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(!is_odd_prime(2));
    }

    #[test]
    fn roots() {
        assert_eq!(smallest_primitive_root(3), 2);
        assert_eq!(smallest_primitive_root(5), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(11), 2);
        assert_eq!(smallest_primitive_root(13), 2);
        assert_eq!(primitive_roots(7), vec![3, 5]);
        assert_eq!(quadratic_residues(7), vec![1, 2, 4]);
        assert_eq!(dlog(4, 3, 7), Some(4));
    }
}
