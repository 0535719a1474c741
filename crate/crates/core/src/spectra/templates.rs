//! Spectrum templates: printed spectra to be compared against characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, Surd};
use crate::biaffine::{Label, Merging};
use crate::error::{Error, Result};

/// One line of a spectrum table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemplateRow {
    /// An exact eigenvalue with multiplicity.
    Exact { value: Surd, mult: usize },
    /// Every root of `poly` is an eigenvalue of multiplicity `mult`.
    RootsOf { poly: Poly, mult: usize },
    /// Roots of an unnamed polynomial of the given degree, each of multiplicity `mult`.
    Unspecified { degree: usize, mult: usize },
}

impl TemplateRow {
    pub fn exact(value: Surd, mult: usize) -> Self {
        TemplateRow::Exact { value, mult }
    }

    pub fn int(k: i64, mult: usize) -> Self {
        TemplateRow::Exact { value: Surd::integer(k), mult }
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn mass(&self) -> usize {
        match self {
            TemplateRow::Exact { mult, .. } => *mult,
            TemplateRow::RootsOf { poly, mult } => poly.degree() * mult,
            TemplateRow::Unspecified { degree, mult } => degree * mult,
        }
    }

    pub fn is_fully_specified(&self) -> bool {
        !matches!(self, TemplateRow::Unspecified { .. })
    }
}

impl fmt::Display for TemplateRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateRow::Exact { value, mult } => write!(f, "{value} ^{mult}"),
            TemplateRow::RootsOf { poly, mult } => write!(f, "roots of {poly} ^{mult}"),
            TemplateRow::Unspecified { degree, mult } => write!(f, "roots of a degree-{degree} polynomial ^{mult}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTemplate {
    pub name: String,
    pub rows: Vec<TemplateRow>,
}

/// Outcome of checking one template against a characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateComparison {
    /// Problems with fully specified rows.
    pub failures: Vec<String>,
    /// Problems with the unspecified row, if any.
    pub unspecified_failures: Vec<String>,
    /// The polynomial behind an unspecified row, when it could be recovered.
    pub unspecified_polynomial: Option<Poly>,
}

impl TemplateComparison {
    pub fn specified_rows_match(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn matches(&self) -> bool {
        self.failures.is_empty() && self.unspecified_failures.is_empty()
    }
}

impl SpectrumTemplate {
    pub fn new(name: impl Into<String>, rows: Vec<TemplateRow>) -> Self {
        SpectrumTemplate { name: name.into(), rows }
    }

    pub fn mass(&self) -> usize {
        self.rows.iter().map(TemplateRow::mass).sum()
    }

    /// Compares with `chi`. Each fully specified eigenvalue (or polynomial) must occur with
    /// exactly the stated multiplicity; whatever remains must be the `m`-th power of a
    /// degree-`d` polynomial for an unspecified row `(d, m)`, or trivial.
    pub fn compare(&self, chi: &Poly) -> TemplateComparison {
        let mut failures = Vec::new();
        let mut unspecified_failures = Vec::new();
        if self.mass() != chi.degree() {
            failures.push(format!("template mass {} differs from degree {}", self.mass(), chi.degree()));
        }
        // factors with total multiplicities, merging rows that share a minimal polynomial
        let mut factors: Vec<(Poly, usize, String)> = Vec::new();
        let mut unspecified = Vec::new();
        for row in &self.rows {
            match row {
                TemplateRow::Exact { value, mult } => match value.minimal_polynomial() {
                    Some(f) => {
                        // rows for the same integer add up
                        if f.degree() == 1 {
                            if let Some(e) = factors.iter_mut().find(|(g, _, _)| *g == f) {
                                e.1 += mult;
                                continue;
                            }
                        }
                        add_factor(&mut factors, f, *mult, row.to_string(), &mut failures);
                    }
                    None => failures.push(format!("{row}: {value} is not an algebraic integer")),
                },
                TemplateRow::RootsOf { poly, mult } => add_factor(&mut factors, poly.clone(), *mult, row.to_string(), &mut failures),
                TemplateRow::Unspecified { degree, mult } => unspecified.push((*degree, *mult)),
            }
        }
        let mut rest = chi.clone();
        for (f, m, what) in &factors {
            let (found, cof) = rest.strip(f);
            if found != *m {
                failures.push(format!("{what}: found multiplicity {found}"));
            }
            rest = cof;
        }
        let mut unspecified_polynomial = None;
        match unspecified.as_slice() {
            [] => {
                if rest.degree() > 0 {
                    failures.push(format!("unexplained factor of degree {}", rest.degree()));
                }
            }
            [(d, m)] => {
                if rest.degree() != d * m {
                    unspecified_failures.push(format!(
                        "remaining degree {} differs from {d}·{m}",
                        rest.degree()
                    ));
                } else {
                    match rest.perfect_power_root(*m) {
                        Some(g) => unspecified_polynomial = Some(g),
                        None => unspecified_failures.push(format!("remainder is not a {m}-th power")),
                    }
                }
            }
            _ => unspecified_failures.push("more than one unspecified row".to_string()),
        }
        TemplateComparison { failures, unspecified_failures, unspecified_polynomial }
    }

    /// One row per line: `k m` for an integer, `a b d c m` for `(a + b√d)/c`.
    /// `#` starts a comment.
    pub fn parse_text(name: &str, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.to_string() };
            let nums: Vec<i64> =
                line.split_whitespace().map(|t| t.parse::<i64>().map_err(|_| err("expected integers"))).collect::<Result<_>>()?;
            let mult = |m: i64| usize::try_from(m).map_err(|_| err("negative multiplicity"));
            match nums.as_slice() {
                [k, m] => rows.push(TemplateRow::int(*k, mult(*m)?)),
                [a, b, d, c, m] => {
                    if *c == 0 {
                        return Err(err("zero denominator"));
                    }
                    rows.push(TemplateRow::exact(Surd::new(*a, *b, *d, *c), mult(*m)?))
                }
                _ => return Err(err("expected `k m` or `a b d c m`")),
            }
        }
        Ok(SpectrumTemplate { name: name.to_string(), rows })
    }
}

fn add_factor(factors: &mut Vec<(Poly, usize, String)>, f: Poly, m: usize, what: String, failures: &mut Vec<String>) {
    if let Some(e) = factors.iter_mut().find(|(g, _, _)| *g == f) {
        if e.1 != m {
            failures.push(format!("conjugate rows {} and {what} have different multiplicities", e.2));
        }
    } else {
        factors.push((f, m, what));
    }
}

impl fmt::Display for SpectrumTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// `1 + x + … + x^{p−1}`.
pub fn cyclotomic_prime(p: u32) -> Poly {
    Poly::new(vec![BigInt::one(); p as usize])
}

/// `Σ_{i<p} p^i x^{p−1−i}`, whose roots are `p` times the nontrivial `p`-th roots of unity.
pub fn scaled_cyclotomic(p: u32) -> Poly {
    let pb = BigInt::from(p);
    let mut c = Vec::with_capacity(p as usize);
    let mut pw = BigInt::one();
    for _ in 0..p {
        c.push(pw.clone());
        pw *= &pb;
    }
    // coefficient of x^{p−1−i} is p^i
    c.reverse();
    Poly::new(c)
}

fn pm(v: i64, mult: usize) -> [TemplateRow; 2] {
    [TemplateRow::int(-v, mult), TemplateRow::int(v, mult)]
}

fn pm_surd(s: Surd, mult: usize) -> [TemplateRow; 2] {
    [TemplateRow::exact(s.neg(), mult), TemplateRow::exact(s, mult)]
}

/// A printed table of the mergings' spectra: how many basic graphs it claims, which
/// labels it is matched with, and its rows.
#[derive(Clone, Debug)]
pub struct Appendix3Table {
    pub printed_count: usize,
    pub labels: Vec<Label>,
    pub template: SpectrumTemplate,
}

/// The printed spectra of the non-identity basic graphs of `M1`–`M4`.
pub fn appendix3(p: u32, which: Merging) -> Vec<Appendix3Table> {
    let pi = p as i64;
    let pu = p as usize;
    let h = (p - 1) / 2;
    let sqrt_p = Surd::new(0, 1, pi, 1);
    let t_rows = || {
        vec![
            TemplateRow::int(pi, 2),
            TemplateRow::int(0, 2 * pu * (pu - 1)),
            TemplateRow::RootsOf { poly: scaled_cyclotomic(p), mult: 2 },
        ]
    };
    let u0 = || {
        let mut rows = pm(pi, 1).to_vec();
        rows.push(TemplateRow::int(0, 2 * pu - 2));
        rows.extend(pm_surd(sqrt_p, pu * (pu - 1)));
        SpectrumTemplate::new("U0", rows)
    };
    let s_merged = || {
        SpectrumTemplate::new("S", vec![TemplateRow::int(pi - 1, 2 * pu), TemplateRow::int(-1, 2 * pu * (pu - 1))])
    };
    let u_merged = || {
        let mut rows = pm(pi * (pi - 1), 1).to_vec();
        rows.extend(pm_surd(sqrt_p, pu * (pu - 1)));
        rows.push(TemplateRow::int(0, 2 * pu - 2));
        SpectrumTemplate::new("U", rows)
    };
    let table = |count: usize, labels: Vec<Label>, template| Appendix3Table { printed_count: count, labels, template };
    match which {
        Merging::M1 => vec![
            table(
                pu - 1,
                (1..p).map(Label::S).collect(),
                SpectrumTemplate::new(
                    "S_i",
                    vec![TemplateRow::int(1, 2 * pu), TemplateRow::RootsOf { poly: cyclotomic_prime(p), mult: 2 * pu }],
                ),
            ),
            table(pu - 1, (1..p).map(Label::T).collect(), SpectrumTemplate::new("T_i", t_rows())),
            table(1, vec![Label::U(0)], u0()),
            table(pu - 1, (1..p).map(Label::U).collect(), {
                let mut rows = pm(pi, 1).to_vec();
                rows.push(TemplateRow::int(0, 2 * pu - 2));
                rows.push(TemplateRow::Unspecified { degree: 2 * pu - 2, mult: pu });
                SpectrumTemplate::new("U_i", rows)
            }),
        ],
        Merging::M2 => vec![
            table(
                h as usize,
                (1..=h).map(Label::SStar).collect(),
                SpectrumTemplate::new(
                    "S*_i",
                    vec![TemplateRow::int(pi - 1, 2 * pu), TemplateRow::Unspecified { degree: h as usize, mult: 4 * pu }],
                ),
            ),
            table(pu - 1, (1..p).map(Label::T).collect(), SpectrumTemplate::new("T_i", t_rows())),
            table(1, vec![Label::U(0)], u0()),
            table(pu - 1, (1..=h).map(Label::UStar).collect(), {
                let mut rows = pm(2 * pi, 1).to_vec();
                rows.push(TemplateRow::int(0, 2 * pu - 2));
                rows.push(TemplateRow::Unspecified { degree: pu - 1, mult: 2 * pu });
                SpectrumTemplate::new("U*_i", rows)
            }),
        ],
        Merging::M3 => vec![
            table(1, vec![Label::SAll], s_merged()),
            table(pu - 1, (1..p).map(Label::T).collect(), SpectrumTemplate::new("T_i", t_rows())),
            table(1, vec![Label::U(0)], u0()),
            table(1, vec![Label::UAll], u_merged()),
        ],
        Merging::M4 => vec![
            table(1, vec![Label::SAll], s_merged()),
            table(
                h as usize,
                (1..=h).map(Label::TStar).collect(),
                SpectrumTemplate::new(
                    "T*_i",
                    vec![
                        TemplateRow::int(2 * pi, 2),
                        TemplateRow::int(0, 2 * pu * (pu - 1)),
                        TemplateRow::Unspecified { degree: h as usize, mult: 4 },
                    ],
                ),
            ),
            table(1, vec![Label::U(0)], u0()),
            table(1, vec![Label::UAll], u_merged()),
        ],
    }
}

/// Printed spectra `Λ_1, …, Λ_6` of the basic graphs of `N6`.
pub fn announcement2(p: u32) -> Vec<SpectrumTemplate> {
    let pi = p as i64;
    let pu = p as usize;
    let n = 2 * pu * pu;
    let sqrt_p = Surd::new(0, 1, pi, 1);
    let d = if p % 4 == 1 { 5 } else { -3 };
    let lam34 = |name: &str| {
        SpectrumTemplate::new(
            name,
            vec![
                TemplateRow::int(pi * (pi - 1) / 2, 2),
                TemplateRow::int(0, n - 2 * pu),
                TemplateRow::exact(Surd::new(-pi, -pi, d, 2), pu - 1),
                TemplateRow::exact(Surd::new(-pi, pi, d, 2), pu - 1),
            ],
        )
    };
    let lam56 = |name: &str, top: i64| {
        let mut rows = vec![TemplateRow::int(top, 1), TemplateRow::int(0, 2 * pu - 2), TemplateRow::int(-top, 1)];
        rows.extend(pm_surd(sqrt_p, pu * (pu - 1)));
        SpectrumTemplate::new(name, rows)
    };
    vec![
        SpectrumTemplate::new("Λ1", vec![TemplateRow::int(1, n)]),
        SpectrumTemplate::new("Λ2", vec![TemplateRow::int(pi - 1, 2 * pu), TemplateRow::int(-1, n - 2 * pu)]),
        lam34("Λ3"),
        lam34("Λ4"),
        lam56("Λ5", pi),
        lam56("Λ6", pi * (pi - 1)),
    ]
}

/// Printed spectra `Λ_1, …, Λ_5` of the basic graphs of `N5.1`. A `±` row is read as
/// both signs, each with the stated multiplicity.
pub fn announcement3(p: u32) -> Vec<SpectrumTemplate> {
    let pi = p as i64;
    let pu = p as usize;
    let n = 2 * pu * pu;
    let half_root = Surd::new(0, 1, pi * (pi + 1), 2);
    let lam45 = |name: &str, top: i64| {
        let mut rows = pm(top, 1).to_vec();
        rows.push(TemplateRow::int(0, 2 * pu - 2));
        rows.extend(pm_surd(half_root, pu * (pu - 1)));
        SpectrumTemplate::new(name, rows)
    };
    vec![
        SpectrumTemplate::new("Λ1", vec![TemplateRow::int(1, n)]),
        SpectrumTemplate::new("Λ2", vec![TemplateRow::int(pi - 1, 2 * pu), TemplateRow::int(-1, n - 2 * pu)]),
        SpectrumTemplate::new(
            "Λ3",
            vec![TemplateRow::int(-pi, 2 * pu - 2), TemplateRow::int(0, n - 2 * pu), TemplateRow::int(pi * (pi - 1), 2)],
        ),
        lam45("Λ4", pi * (pi - 1) / 2),
        lam45("Λ5", pi * (pi + 1) / 2),
    ]
}
