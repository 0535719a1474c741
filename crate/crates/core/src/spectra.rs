//! Exact characteristic polynomials and spectra of integer matrices.
//!
//! The characteristic polynomial is computed modulo word-size primes (Hessenberg
//! reduction) and lifted by Chinese remaindering until the modulus exceeds twice a
//! Hadamard-type bound on the coefficients. Spectra come from a square-free
//! decomposition followed by an exact search for integer roots and quadratic factors;
//! what is left is reported as a polynomial together with approximate roots.

mod modular;
mod poly;
pub mod templates;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::color::{Color, ColorGraph};
use modular::{charpoly_mod, gcd_mod, primes, reduce_poly, Crt};
pub use poly::Poly;
pub use templates::{SpectrumTemplate, TemplateComparison, TemplateRow};

/// Dense square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(n: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must have n² entries");
        IntMatrix { n, data }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let data = (0..n * n).map(|i| f(i / n, i % n)).collect();
        IntMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| (i == j) as i64)
    }

    /// Adjacency matrix of the union of `colors`.
    pub fn adjacency(cg: &ColorGraph, colors: &[Color]) -> Self {
        let ind = cg.indicator(colors);
        IntMatrix { n: cg.n(), data: ind.into_iter().map(i64::from).collect() }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut data = vec![0; n * n];
        for &(x, y) in arcs {
            data[x * n + y] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    /// Largest absolute row or column sum; bounds the modulus of every eigenvalue.
    pub fn spectral_bound(&self) -> i64 {
        let n = self.n;
        let r = (0..n).map(|i| (0..n).map(|j| self.get(i, j).abs()).sum::<i64>()).max().unwrap_or(0);
        let c = (0..n).map(|j| (0..n).map(|i| self.get(i, j).abs()).sum::<i64>()).max().unwrap_or(0);
        r.min(c)
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }
}

/// Bits needed so that the symmetric residue range covers every coefficient.
fn coefficient_bits(m: &IntMatrix) -> u64 {
    let n = m.n;
    let norms: Vec<f64> =
        (0..n).map(|i| (0..n).map(|j| (m.get(i, j) as f64).powi(2)).sum::<f64>().sqrt()).collect();
    let mean = (norms.iter().sum::<f64>() / n as f64).max(1.0);
    // |e_k| ≤ e_k(row norms) ≤ C(n,k) mean^k
    let mut log_binom = 0.0f64;
    let mut best = 0.0f64;
    for k in 1..=n {
        log_binom += ((n - k + 1) as f64).log2() - (k as f64).log2();
        best = best.max(log_binom + k as f64 * mean.log2());
    }
    best.ceil() as u64 + 4
}

/// Characteristic polynomial `det(xI − A)`.
pub fn char_poly(m: &IntMatrix) -> Poly {
    let n = m.n;
    if n == 0 {
        return Poly::one();
    }
    let need = coefficient_bits(m);
    let mut crt = Crt::new(n + 1);
    for q in primes() {
        let r: Vec<u64> = charpoly_mod(n, &m.data, q).into_iter().map(u64::from).collect();
        crt.add(&r, q);
        if crt.bits() > need {
            break;
        }
    }
    Poly::new(crt.finish())
}

/// Greatest common divisor of two integer polynomials, `a` monic; the result is monic.
pub fn gcd_monic(a: &Poly, b: &Poly) -> Poly {
    assert!(a.is_monic(), "gcd_monic expects a monic first argument");
    if b.is_zero() {
        return a.clone();
    }
    // modular images of minimal degree, lifted until the lift divides both inputs
    let mut best: Option<(usize, Crt)> = None;
    let mut last: Option<Poly> = None;
    for q in primes() {
        let bq = reduce_poly(b, q);
        if bq.is_empty() {
            continue;
        }
        let g = gcd_mod(&reduce_poly(a, q), &bq, q);
        let d = g.len() - 1;
        if d == 0 {
            return Poly::one();
        }
        match &mut best {
            Some((bd, _)) if d > *bd => continue,
            Some((bd, crt)) if d == *bd => crt.add(&g, q),
            _ => {
                let mut crt = Crt::new(d + 1);
                crt.add(&g, q);
                best = Some((d, crt));
                last = None;
                continue;
            }
        }
        let (_, crt) = best.as_ref().unwrap();
        let cand = Poly::new(crt.snapshot());
        if last.as_ref() == Some(&cand) && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return cand;
        }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Square-free decomposition of a monic polynomial: `f = Π a_i^i`, returned as the
/// nonconstant `(a_i, i)`.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let df = f.derivative();
    let a = gcd_monic(f, &df);
    let mut b = f.div_exact(&a).expect("gcd divides");
    let c = df.div_exact(&a).expect("gcd divides");
    let mut d = sub(&c, &b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        let ai = gcd_monic(&b, &d);
        b = b.div_exact(&ai).expect("gcd divides");
        let c = d.div_exact(&ai).expect("gcd divides");
        d = sub(&c, &b.derivative());
        if ai.degree() > 0 {
            out.push((ai, i));
        }
        i += 1;
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.coeffs().len().max(b.coeffs().len());
    let z = BigInt::zero();
    Poly::new((0..n).map(|i| a.coeffs().get(i).unwrap_or(&z) - b.coeffs().get(i).unwrap_or(&z)).collect())
}

/// Exact quadratic irrational `(a + b√d)/c` in lowest terms: `d` squarefree (and `≠ 1`
/// unless `b = 0`), `c > 0`. Negative `d` gives complex numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surd {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub c: i64,
}

fn squarefree_split(n: i64) -> (i64, i64) {
    // n = s² · r with r squarefree; returns (s, r) with r carrying the sign
    let sign = n.signum();
    let mut m = n.abs();
    let (mut s, mut r) = (1i64, 1i64);
    let mut f = 2;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            s *= f;
        }
        if m % f == 0 {
            m /= f;
            r *= f;
        }
        f += 1;
    }
    (s, sign * r * m)
}

impl Surd {
    pub fn integer(k: i64) -> Self {
        Surd { a: k, b: 0, d: 1, c: 1 }
    }

    /// `(a + b√d)/c` normalized.
    pub fn new(a: i64, b: i64, d: i64, c: i64) -> Self {
        assert!(c != 0, "zero denominator");
        let (mut a, mut b, mut d, mut c) = (a, b, d, c);
        if b != 0 && d != 0 {
            let (s, r) = squarefree_split(d);
            b *= s;
            d = r;
            if d == 1 {
                a += b;
                b = 0;
            }
        }
        if b == 0 || d == 0 {
            b = 0;
            d = 1;
        }
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        Surd { a: a / g, b: b / g, d, c: c / g }
    }

    pub fn is_integer(&self) -> bool {
        self.b == 0 && self.c == 1
    }

    pub fn is_real(&self) -> bool {
        self.b == 0 || self.d > 0
    }

    pub fn conjugate(&self) -> Surd {
        Surd { b: -self.b, ..*self }
    }

    pub fn neg(&self) -> Surd {
        Surd { a: -self.a, b: -self.b, ..*self }
    }

    /// Monic minimal polynomial over the rationals, if it has integer coefficients.
    pub fn minimal_polynomial(&self) -> Option<Poly> {
        if self.b == 0 {
            return (self.c == 1).then(|| Poly::linear(&BigInt::from(self.a)));
        }
        // x² − (2a/c) x + (a² − b²d)/c²
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (s, rs) = (2 * a).div_rem(&c);
        let (t, rt) = (a * a - b * b * d).div_rem(&(c * c));
        (rs == 0 && rt == 0).then(|| Poly::new(vec![BigInt::from(t), BigInt::from(-s), BigInt::one()]))
    }

    pub fn to_complex(&self) -> Complex64 {
        let r = (self.d.abs() as f64).sqrt() * self.b as f64;
        if self.d < 0 {
            Complex64::new(self.a as f64 / self.c as f64, r / self.c as f64)
        } else {
            Complex64::new((self.a as f64 + r) / self.c as f64, 0.0)
        }
    }

    /// Roots of `x² − s x + t`, when they are not integers.
    fn roots_of_quadratic(s: i64, t: i64) -> [Surd; 2] {
        let disc = s * s - 4 * t;
        [Surd::new(s, 1, disc, 2), Surd::new(s, -1, disc, 2)]
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            return if self.c == 1 { write!(f, "{}", self.a) } else { write!(f, "{}/{}", self.a, self.c) };
        }
        let root = if self.d < 0 {
            if self.d == -1 {
                "i".to_string()
            } else {
                format!("i*sqrt({})", -self.d)
            }
        } else {
            format!("sqrt({})", self.d)
        };
        let bpart = match self.b {
            1 => root.clone(),
            -1 => format!("-{root}"),
            b => format!("{b}*{root}"),
        };
        let num = match (self.a, self.b < 0) {
            (0, _) => bpart,
            (a, true) => format!("{a} - {}", bpart.trim_start_matches('-')),
            (a, false) => format!("{a} + {bpart}"),
        };
        if self.c == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/{}", self.c)
        }
    }
}

/// One eigenvalue, exact where possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Integer(i64),
    Surd(Surd),
    /// A root of `factor` (a product of irreducible factors of degree ≥ 3) within
    /// `radius` of `approx`.
    Approximate { factor: Poly, approx: Complex64, radius: f64 },
}

impl Eigenvalue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Eigenvalue::Integer(k) => Complex64::new(*k as f64, 0.0),
            Eigenvalue::Surd(s) => s.to_complex(),
            Eigenvalue::Approximate { approx, .. } => *approx,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Eigenvalue::Approximate { .. })
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Integer(k) => write!(f, "{k}"),
            Eigenvalue::Surd(s) => write!(f, "{s}"),
            Eigenvalue::Approximate { approx, radius, .. } => {
                if approx.im == 0.0 {
                    write!(f, "{:.6} ± {radius:.1e}", approx.re)
                } else {
                    write!(f, "{:.6}{:+.6}i ± {radius:.1e}", approx.re, approx.im)
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub value: Eigenvalue,
    pub multiplicity: usize,
}

/// Spectrum of one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub charpoly: Poly,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumReport {
    pub fn n(&self) -> usize {
        self.charpoly.degree()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Multiplicity of an exact eigenvalue, 0 if absent.
    pub fn multiplicity_of(&self, s: &Surd) -> usize {
        self.entries
            .iter()
            .filter(|e| match &e.value {
                Eigenvalue::Integer(k) => s.is_integer() && s.a == *k,
                Eigenvalue::Surd(t) => t == s,
                _ => false,
            })
            .map(|e| e.multiplicity)
            .sum()
    }

    /// `χ(−x) = (−1)^n χ(x)`: the spectrum is symmetric about 0 with multiplicities.
    pub fn is_symmetric_about_zero(&self) -> bool {
        self.charpoly.coeffs().iter().enumerate().all(|(i, c)| (self.n() - i).is_multiple_of(2) || c.is_zero())
    }

    /// Polynomial factors found exactly: eigenvalues without exact form.
    pub fn unresolved_factors(&self) -> Vec<(Poly, usize)> {
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for e in &self.entries {
            if let Eigenvalue::Approximate { factor, .. } = &e.value {
                if !out.iter().any(|(f, m)| f == factor && *m == e.multiplicity) {
                    out.push((factor.clone(), e.multiplicity));
                }
            }
        }
        out
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "charpoly degree {}", self.n())?;
        for e in &self.entries {
            writeln!(f, "{}\t{}", e.value, e.multiplicity)?;
        }
        for (g, m) in self.unresolved_factors() {
            writeln!(f, "# factor {g} with multiplicity {m}")?;
        }
        Ok(())
    }
}

/// Spectrum of `m`.
pub fn spectrum(m: &IntMatrix) -> SpectrumReport {
    let chi = char_poly(m);
    spectrum_of_charpoly(chi, m.spectral_bound())
}

/// Spectrum from a characteristic polynomial whose roots have modulus at most `rho`.
pub fn spectrum_of_charpoly(chi: Poly, rho: i64) -> SpectrumReport {
    let mut entries = Vec::new();
    let (zero_mult, rest) = chi.strip(&Poly::x());
    if zero_mult > 0 {
        entries.push(SpectrumEntry { value: Eigenvalue::Integer(0), multiplicity: zero_mult });
    }
    for (g, mult) in squarefree_decomposition(&rest) {
        for value in factor_squarefree(&g, rho) {
            entries.push(SpectrumEntry { value, multiplicity: mult });
        }
    }
    entries.sort_by(|x, y| {
        let (a, b) = (x.value.to_complex(), y.value.to_complex());
        b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
    });
    SpectrumReport { charpoly: chi, entries }
}

/// Roots of a square-free monic `g` with `g(0) ≠ 0` and roots bounded by `rho`.
fn factor_squarefree(g: &Poly, rho: i64) -> Vec<Eigenvalue> {
    let mut out = Vec::new();
    let mut g = g.clone();
    let c0 = |g: &Poly| g.coeffs()[0].clone();
    for t in -rho..=rho {
        if g.degree() == 0 {
            break;
        }
        if t == 0 || !(c0(&g) % t).is_zero() {
            continue;
        }
        let bt = BigInt::from(t);
        if g.eval(&bt).is_zero() {
            g = g.div_exact(&Poly::linear(&bt)).expect("root gives a linear factor");
            out.push(Eigenvalue::Integer(t));
        }
    }
    let q = 2_147_483_647u32;
    let rho2 = rho.saturating_mul(rho);
    let mut t = -rho2;
    while t <= rho2 && g.degree() >= 2 {
        if t != 0 && (c0(&g) % t).is_zero() {
            for s in -2 * rho..=2 * rho {
                let disc = s * s - 4 * t;
                if disc >= 0 && is_square(disc) {
                    continue;
                }
                if quad_divides_mod(&g, s, t, q) {
                    let quad = Poly::from_i64(&[t, -s, 1]);
                    if let Some(h) = g.div_exact(&quad) {
                        g = h;
                        out.extend(Surd::roots_of_quadratic(s, t).map(Eigenvalue::Surd));
                        if g.degree() < 2 || !(c0(&g) % t).is_zero() {
                            break;
                        }
                    }
                }
            }
        }
        t += 1;
    }
    if g.degree() > 0 {
        let mut rest = Vec::new();
        for f in split_cyclotomic(&g) {
            rest.push(f);
        }
        for f in rest {
            for (z, r) in approximate_roots(&f) {
                out.push(Eigenvalue::Approximate { factor: f.clone(), approx: z, radius: r });
            }
        }
    }
    out
}

fn is_square(n: i64) -> bool {
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|s| s >= 0 && s * s == n)
}

fn quad_divides_mod(g: &Poly, s: i64, t: i64, q: u32) -> bool {
    let q64 = q as i128;
    let s = (s as i128).rem_euclid(q64);
    let t = (t as i128).rem_euclid(q64);
    // remainder of g modulo x² − s x + t, by Horner on the top coefficients
    let (mut r1, mut r0) = (0i128, 0i128);
    for c in g.coeffs().iter().rev() {
        let c = (c % BigInt::from(q)).to_i128().unwrap().rem_euclid(q64);
        // (r1 x + r0) x + c = r1 x² + r0 x + c ≡ r1 (s x − t) + r0 x + c
        let n1 = (r1 * s + r0) % q64;
        let n0 = (c - r1 * t % q64 + q64) % q64;
        r1 = n1;
        r0 = n0;
    }
    r1 == 0 && r0 == 0
}

fn cyclotomic(m: usize) -> Poly {
    // x^m − 1 divided by Φ_d for every proper divisor d
    let mut c = vec![BigInt::zero(); m + 1];
    c[0] = BigInt::from(-1);
    c[m] = BigInt::one();
    let mut f = Poly::new(c);
    for d in 1..m {
        if m.is_multiple_of(d) {
            f = f.div_exact(&cyclotomic(d)).expect("cyclotomic factor");
        }
    }
    f
}

fn euler_phi(m: usize) -> usize {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count()
}

/// Splits off cyclotomic factors of degree at least 3.
fn split_cyclotomic(g: &Poly) -> Vec<Poly> {
    let mut g = g.clone();
    let mut out = Vec::new();
    let deg = g.degree();
    let mut m = 1;
    while euler_phi(m) <= deg.max(1) * 6 && m <= 6 * deg + 6 {
        let e = euler_phi(m);
        if e >= 3 && e <= g.degree() {
            let phi = cyclotomic(m);
            if let Some(h) = g.div_exact(&phi) {
                out.push(phi);
                g = h;
            }
        }
        m += 1;
    }
    if g.degree() > 0 {
        out.push(g);
    }
    out
}

/// Aberth–Ehrlich iteration; each root comes with the inclusion radius `deg·|f/f'|`.
pub fn approximate_roots(f: &Poly) -> Vec<(Complex64, f64)> {
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    let c = f.to_f64();
    let lc = c[n];
    let c: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let radius0 = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius0 * 0.7, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    let mut out: Vec<(Complex64, f64)> = z
        .into_iter()
        .map(|mut r| {
            if r.im.abs() < 1e-12 * (1.0 + r.re.abs()) {
                r.im = 0.0;
            }
            let (p, dp) = eval(r);
            let rad = if p.norm() == 0.0 { 0.0 } else { n as f64 * (p / dp).norm() };
            (r, rad)
        })
        .collect();
    out.sort_by(|a, b| b.0.re.total_cmp(&a.0.re).then(b.0.im.total_cmp(&a.0.im)));
    out
}

/// Parameters of a directed strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DsrgParams {
    pub n: usize,
    pub k: i64,
    pub t: i64,
    pub lambda: i64,
    pub mu: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DsrgViolation {
    Order { n: usize },
    Diagonal { vertex: usize },
    NotZeroOne { row: usize, col: usize },
    OutDegree { vertex: usize, degree: i64 },
    InDegree { vertex: usize, degree: i64 },
    Square { row: usize, col: usize, expected: i64, actual: i64 },
}

/// Checks `AJ = JA = kJ` and `A² = tI + λA + μ(J − I − A)` entry by entry.
pub fn dsrg_check(a: &IntMatrix, params: DsrgParams) -> std::result::Result<(), DsrgViolation> {
    let n = a.n();
    if n != params.n {
        return Err(DsrgViolation::Order { n });
    }
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if v != 0 && v != 1 {
                return Err(DsrgViolation::NotZeroOne { row: i, col: j });
            }
        }
        if a.get(i, i) != 0 {
            return Err(DsrgViolation::Diagonal { vertex: i });
        }
    }
    for v in 0..n {
        let out: i64 = (0..n).map(|j| a.get(v, j)).sum();
        if out != params.k {
            return Err(DsrgViolation::OutDegree { vertex: v, degree: out });
        }
        let inn: i64 = (0..n).map(|i| a.get(i, v)).sum();
        if inn != params.k {
            return Err(DsrgViolation::InDegree { vertex: v, degree: inn });
        }
    }
    let sq = a.mul(a);
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j {
                params.t
            } else if a.get(i, j) == 1 {
                params.lambda
            } else {
                params.mu
            };
            let actual = sq.get(i, j);
            if actual != expected {
                return Err(DsrgViolation::Square { row: i, col: j, expected, actual });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_charpoly() {
        let chi = char_poly(&IntMatrix::identity(4));
        assert_eq!(chi, Poly::from_i64(&[-1, 1]).pow(4));
        let s = spectrum(&IntMatrix::identity(4));
        assert_eq!(s.entries, vec![SpectrumEntry { value: Eigenvalue::Integer(1), multiplicity: 4 }]);
    }

    #[test]
    fn surds_normalize() {
        assert_eq!(Surd::new(-5, 5, 5, 2), Surd { a: -5, b: 5, d: 5, c: 2 });
        assert_eq!(Surd::new(0, 1, 12, 2), Surd { a: 0, b: 1, d: 3, c: 1 });
        assert_eq!(Surd::new(0, 1, 30, 2).minimal_polynomial(), None);
        assert_eq!(Surd::new(0, 1, 3, 1).minimal_polynomial(), Some(Poly::from_i64(&[-3, 0, 1])));
        assert_eq!(Surd::new(6, 2, 4, 2), Surd::integer(5));
    }

    #[test]
    fn directed_triangle_is_dsrg() {
        let c3 = IntMatrix::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(dsrg_check(&c3, DsrgParams { n: 3, k: 1, t: 0, lambda: 0, mu: 1 }), Ok(()));
        let s = spectrum(&c3);
        assert_eq!(s.total_multiplicity(), 3);
        assert!(s.entries.iter().all(|e| e.value.is_exact()));
    }

    #[test]
    fn cycle_of_length_seven_has_cubic_factors() {
        let arcs: Vec<_> = (0..7).flat_map(|i| [(i, (i + 1) % 7), ((i + 1) % 7, i)]).collect();
        let s = spectrum(&IntMatrix::from_arcs(7, &arcs));
        assert_eq!(s.total_multiplicity(), 7);
        assert_eq!(s.multiplicity_of(&Surd::integer(2)), 1);
        assert_eq!(s.unresolved_factors().len(), 1);
        assert_eq!(s.unresolved_factors()[0].0.degree(), 3);
    }
}
