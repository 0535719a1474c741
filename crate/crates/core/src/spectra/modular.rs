//! Word-size modular arithmetic: Montgomery multiplication, Hessenberg characteristic
//! polynomials, polynomial gcd, and Chinese remaindering into integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::poly::Poly;
use crate::arith::{inv_mod, is_prime};

/// Primes below `2^31`, largest first.
pub(crate) fn primes() -> impl Iterator<Item = u32> {
    (1u32 << 20..(1u32 << 31) - 1).rev().filter(|&q| q & 1 == 1 && is_prime(q as u64))
}

/// Montgomery form modulo an odd `q < 2^31`, with `R = 2^32`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Mont {
    q: u32,
    qneg_inv: u32,
    r2: u32,
}

impl Mont {
    pub fn new(q: u32) -> Self {
        let mut inv: u32 = 1;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(q.wrapping_mul(inv)));
        }
        let r2 = ((1u128 << 64) % q as u128) as u32;
        Mont { q, qneg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn reduce(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.qneg_inv);
        let u = ((t + m as u64 * self.q as u64) >> 32) as u32;
        if u >= self.q {
            u - self.q
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn to(&self, a: i64) -> u32 {
        let r = a.rem_euclid(self.q as i64) as u64;
        self.reduce(r * self.r2 as u64)
    }

    pub fn from(&self, a: u32) -> u32 {
        self.reduce(a as u64)
    }

    pub fn inv(&self, a: u32) -> u32 {
        let plain = self.from(a) as u64;
        self.to(inv_mod(plain, self.q as u64) as i64)
    }
}

/// Characteristic polynomial `det(xI − A)` modulo `q`, plain residues, constant term first.
pub(crate) fn charpoly_mod(n: usize, a: &[i64], q: u32) -> Vec<u32> {
    let mt = Mont::new(q);
    let mut h: Vec<u32> = a.iter().map(|&x| mt.to(x)).collect();
    // reduction to upper Hessenberg form by similarity
    for m in 1..n.saturating_sub(1) {
        let col = m - 1;
        let Some(piv) = (m..n).find(|&i| h[i * n + col] != 0) else {
            continue;
        };
        if piv != m {
            for k in 0..n {
                h.swap(piv * n + k, m * n + k);
            }
            for k in 0..n {
                h.swap(k * n + piv, k * n + m);
            }
        }
        let inv = mt.inv(h[m * n + col]);
        for i in m + 1..n {
            let hi = h[i * n + col];
            if hi == 0 {
                continue;
            }
            let u = mt.mul(hi, inv);
            let (top, bottom) = h.split_at_mut(i * n);
            let row_m = &top[m * n..m * n + n];
            let row_i = &mut bottom[..n];
            for k in col..n {
                row_i[k] = mt.sub(row_i[k], mt.mul(u, row_m[k]));
            }
            for k in 0..n {
                let v = mt.mul(u, h[k * n + i]);
                h[k * n + m] = mt.add(h[k * n + m], v);
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_i h_{i,m} (Π_{j=i+1..m} h_{j,j−1}) p_{i−1}
    let mut ps: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    ps.push(vec![mt.to(1)]);
    for m in 1..=n {
        let c = m - 1;
        let prev = &ps[m - 1];
        let mut cur = vec![0u32; m + 1];
        for (k, &v) in prev.iter().enumerate() {
            cur[k + 1] = mt.add(cur[k + 1], v);
            cur[k] = mt.sub(cur[k], mt.mul(h[c * n + c], v));
        }
        let mut t = mt.to(1);
        for i in (1..m).rev() {
            t = mt.mul(t, h[i * n + i - 1]);
            if t == 0 {
                break;
            }
            let coef = mt.mul(h[(i - 1) * n + c], t);
            if coef == 0 {
                continue;
            }
            for (k, &v) in ps[i - 1].iter().enumerate() {
                cur[k] = mt.sub(cur[k], mt.mul(coef, v));
            }
        }
        ps.push(cur);
    }
    ps.pop().unwrap().into_iter().map(|v| mt.from(v)).collect()
}

fn pmod(x: &BigInt, q: u32) -> u64 {
    let r = x % BigInt::from(q);
    let r = r.to_i64().unwrap();
    r.rem_euclid(q as i64) as u64
}

pub(crate) fn reduce_poly(f: &Poly, q: u32) -> Vec<u64> {
    let mut v: Vec<u64> = f.coeffs().iter().map(|c| pmod(c, q)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd modulo `q`.
pub(crate) fn gcd_mod(a: &[u64], b: &[u64], q: u32) -> Vec<u64> {
    let q = q as u64;
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), q);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * inv % q;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + q - c * bj % q) % q;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = inv_mod(l, q);
        for x in a.iter_mut() {
            *x = *x * inv % q;
        }
    }
    a
}

/// Incremental Chinese remaindering of coefficient vectors.
pub(crate) struct Crt {
    modulus: BigUint,
    values: Vec<BigUint>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt { modulus: BigUint::one(), values: vec![BigUint::zero(); len] }
    }

    pub fn bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn add(&mut self, residues: &[u64], q: u32) {
        let qb = q as u64;
        let m_mod = (&self.modulus % qb).to_u64().unwrap();
        let m_inv = inv_mod(m_mod, qb);
        for (x, &r) in self.values.iter_mut().zip(residues) {
            let xm = (&*x % qb).to_u64().unwrap();
            let t = (r + qb - xm) % qb * m_inv % qb;
            if t != 0 {
                *x += &self.modulus * t;
            }
        }
        self.modulus *= qb;
    }

    /// Symmetric representatives in `(−M/2, M/2]`.
    pub fn snapshot(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        let m = BigInt::from(self.modulus.clone());
        self.values.iter().map(|v| if *v > half { BigInt::from(v.clone()) - &m } else { BigInt::from(v.clone()) }).collect()
    }

    pub fn finish(self) -> Vec<BigInt> {
        self.snapshot()
    }
}
