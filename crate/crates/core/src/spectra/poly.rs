//! Dense integer polynomials, coefficients from the constant term upward.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer polynomial; `0` is the empty vector and there are no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x − t`.
    pub fn linear(t: &BigInt) -> Self {
        Poly(vec![-t.clone(), BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, m: usize) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly(Vec::new()));
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let mut r = self.0.clone();
        let dl = d.0.len();
        let lc = d.lc().clone();
        let mut q = vec![BigInt::zero(); r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = &r[i + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dj) in d.0.iter().enumerate() {
                if !dj.is_zero() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.iter().all(|x| x.is_zero()).then(|| Poly::new(q))
    }

    /// Number of times `f` divides `self`, and the cofactor.
    pub fn strip(&self, f: &Poly) -> (usize, Poly) {
        let mut cur = self.clone();
        let mut m = 0;
        if f.degree() == 0 {
            return (0, cur);
        }
        while let Some(q) = cur.div_exact(f) {
            cur = q;
            m += 1;
        }
        (m, cur)
    }

    /// Largest absolute coefficient, in bits.
    pub fn max_bits(&self) -> u64 {
        self.0.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `f = q^m` for some integer polynomial `q` of degree `deg f / m`, found from the
    /// power series of the reversed polynomial.
    pub fn perfect_power_root(&self, m: usize) -> Option<Poly> {
        if m == 0 || !self.is_monic() || !self.degree().is_multiple_of(m) {
            return None;
        }
        if m == 1 {
            return Some(self.clone());
        }
        let d = self.degree() / m;
        // reversed: f(t) = 1 + f_1 t + ..., g = f^{1/m}; m k g_k = Σ_{i=1..k} f_i g_{k−i} (i − m(k−i))
        let n = self.degree();
        let f: Vec<BigInt> = (0..=d).map(|i| self.0[n - i].clone()).collect();
        let mut g = vec![BigInt::one()];
        let mb = BigInt::from(m);
        for k in 1..=d {
            let mut s = BigInt::zero();
            for i in 1..=k {
                let coef = BigInt::from(i as i64) - &mb * BigInt::from((k - i) as i64);
                s += &f[i] * &g[k - i] * coef;
            }
            let den = &mb * BigInt::from(k);
            let (q, r) = s.div_rem(&den);
            if !r.is_zero() {
                return None;
            }
            g.push(q);
        }
        let q = Poly::new(g.into_iter().rev().collect());
        (q.pow(m) == *self).then_some(q)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = !a.is_one() || i == 0;
            if show_coef {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coef { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coef { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
