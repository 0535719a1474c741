//! Closed-form structure constants of `M(p)` and of `M1`–`M4`, encoded as claims to be
//! compared with computed tensors.
//!
//! `ξ = δ_{i+j,k} + δ_{i−j,k} + δ_{−i+j,k} + δ_{−i−j,k}` and
//! `M_{ijk} = max{δ_{i+j,k}, δ_{i−j,k}} + max{δ_{−i+j,k}, δ_{−i−j,k}}`.

use std::fmt;

use super::{base_labels, partition_of_labels, Label, Merging, SchemeParameters};
use crate::color::IntersectionTensor;
use crate::error::Result;

/// Value a table asserts for one cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Value(u32),
    /// The printed formula needs an index the row or column does not carry;
    /// `reading` substitutes 0 for it.
    Ambiguous { reading: u32 },
}

impl Claim {
    pub fn reading(&self) -> u32 {
        match *self {
            Claim::Value(v) | Claim::Ambiguous { reading: v } => v,
        }
    }
}

/// A printed cell replaced by a value forced by other printed cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub i: Label,
    pub j: Label,
    pub k: Label,
    pub printed: u32,
    pub corrected: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub i: Label,
    pub j: Label,
    pub k: Label,
    pub claimed: u32,
    pub actual: u32,
}

impl fmt::Display for CellReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{}][{}]^{}: table {} computed {}", self.i, self.j, self.k, self.claimed, self.actual)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorComparison {
    /// Number of unambiguous cells compared.
    pub checked: usize,
    /// Unambiguous cells where the table and the computation disagree.
    pub mismatches: Vec<CellReport>,
    /// Every ambiguous cell with its reading and the computed value.
    pub ambiguous: Vec<CellReport>,
}

impl TensorComparison {
    pub fn unambiguous_agree(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Ambiguous cells whose reading disagrees with the computed value.
    pub fn ambiguous_disagreements(&self) -> impl Iterator<Item = &CellReport> {
        self.ambiguous.iter().filter(|c| c.claimed != c.actual)
    }

    pub fn exact(&self) -> bool {
        self.mismatches.is_empty() && self.ambiguous_disagreements().next().is_none()
    }
}

/// The tabulated tensor of one scheme, indexed like the colors of its descriptor.
#[derive(Clone, Debug)]
pub struct ExpectedTensor {
    labels: Vec<Label>,
    claims: Vec<Claim>,
    corrections: Vec<Correction>,
}

impl ExpectedTensor {
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn claim(&self, i: usize, j: usize, k: usize) -> Claim {
        let r = self.rank();
        self.claims[k * r * r + i * r + j]
    }

    /// Printed cells replaced before comparison.
    pub fn corrections(&self) -> &[Correction] {
        &self.corrections
    }

    pub fn ambiguous_cells(&self) -> usize {
        self.claims.iter().filter(|c| matches!(c, Claim::Ambiguous { .. })).count()
    }

    /// Tensor assembled from the claims, ambiguous cells taken at their reading.
    pub fn tensor(&self) -> Result<IntersectionTensor> {
        let diagonal = self.labels.iter().map(|l| matches!(l, Label::A(0) | Label::C(0) | Label::R0)).collect();
        IntersectionTensor::from_fn(self.rank(), diagonal, |i, j, k| self.claim(i, j, k).reading())
    }

    /// Compares cell by cell with a computed tensor over the same color order.
    pub fn compare(&self, actual: &IntersectionTensor) -> TensorComparison {
        let r = self.rank();
        assert_eq!(actual.rank(), r, "rank mismatch");
        let mut out = TensorComparison::default();
        for k in 0..r {
            for i in 0..r {
                for j in 0..r {
                    let a = actual.get(i, j, k);
                    let report = |claimed| CellReport {
                        i: self.labels[i],
                        j: self.labels[j],
                        k: self.labels[k],
                        claimed,
                        actual: a,
                    };
                    match self.claim(i, j, k) {
                        Claim::Value(v) => {
                            out.checked += 1;
                            if v != a {
                                out.mismatches.push(report(v));
                            }
                        }
                        Claim::Ambiguous { reading } => out.ambiguous.push(report(reading)),
                    }
                }
            }
        }
        out
    }
}

/// Which scheme to tabulate: `None` for `M(p)` itself.
pub fn expected_tensor(params: &SchemeParameters, which: Option<Merging>) -> ExpectedTensor {
    let labels = match which {
        None => base_labels(params),
        Some(w) => ordered_labels(params, &w.labels(params)),
    };
    let p = params.p();
    let r = labels.len();
    let mut claims = vec![Claim::Value(0); r * r * r];
    let mut corrections = Vec::new();
    for (k, &lk) in labels.iter().enumerate() {
        for (i, &li) in labels.iter().enumerate() {
            for (j, &lj) in labels.iter().enumerate() {
                let claim = match which {
                    None => {
                        let (printed, used) = table_m(params, li, lj, lk);
                        if printed != used {
                            corrections.push(Correction { i: li, j: lj, k: lk, printed, corrected: used });
                        }
                        Claim::Value(used)
                    }
                    Some(Merging::M1) => Claim::Value(table_m1(params, li, lj, lk)),
                    Some(Merging::M2) => table_m2(params, li, lj, lk),
                    Some(Merging::M3) => Claim::Value(table_m3(p, li, lj, lk)),
                    Some(Merging::M4) => Claim::Value(table_m4(params, li, lj, lk)),
                };
                claims[k * r * r + i * r + j] = claim;
            }
        }
    }
    ExpectedTensor { labels, claims, corrections }
}

/// Labels sorted into the canonical block order of the merging they define.
pub(super) fn ordered_labels(params: &SchemeParameters, labels: &[Label]) -> Vec<Label> {
    let part = partition_of_labels(params, labels).expect("labels define a partition");
    let mut v: Vec<(usize, Label)> = labels
        .iter()
        .map(|&l| (part.block_of(l.constituents(params)[0].base_index(params).expect("base")), l))
        .collect();
    v.sort();
    v.into_iter().map(|(_, l)| l).collect()
}

struct Z {
    p: i64,
}

impl Z {
    fn d(&self, a: i64, b: i64) -> u32 {
        ((a - b).rem_euclid(self.p) == 0) as u32
    }

    fn xi(&self, i: i64, j: i64, k: i64) -> u32 {
        self.d(i + j, k) + self.d(i - j, k) + self.d(-i + j, k) + self.d(-i - j, k)
    }

    fn big_m(&self, i: i64, j: i64, k: i64) -> u32 {
        self.d(i + j, k).max(self.d(i - j, k)) + self.d(-i + j, k).max(self.d(-i - j, k))
    }
}

/// Structure constants of `M(p)` as printed, and as used after correcting the two cells
/// `c_{E_i,C_j}^{E_k}` and `c_{F_i,A_j}^{F_k}` (printed `p·δ_{i+j,k}`, forced to `δ_{i+j,k}`
/// by transpose symmetry with the printed `c_{C,F}^F` and `c_{A,E}^E` cells).
fn table_m(params: &SchemeParameters, i: Label, j: Label, k: Label) -> (u32, u32) {
    use Label::*;
    let z = Z { p: params.p() as i64 };
    let p = params.p();
    let same = |v: u32| (v, v);
    match (k, i, j) {
        (A(k), A(i), A(j)) => same(z.d(i as i64 + j as i64, k as i64)),
        (A(_), B(i), B(j)) => same(p * z.d(i as i64 + j as i64, 0)),
        (A(k), E(i), F(j)) => same(p * z.d(i as i64 + j as i64, k as i64)),
        (C(k), C(i), C(j)) => same(z.d(i as i64 + j as i64, k as i64)),
        (C(_), D(i), D(j)) => same(p * z.d(i as i64 + j as i64, 0)),
        (C(k), F(i), E(j)) => same(p * z.d(i as i64 + j as i64, k as i64)),
        (B(k), A(_), B(j)) => same(z.d(j as i64, k as i64)),
        (B(k), B(i), A(_)) => same(z.d(i as i64, k as i64)),
        (B(k), B(i), B(j)) => same(p * z.d(i as i64 + j as i64, k as i64)),
        (B(_), E(_), F(_)) => same(1),
        (D(k), C(_), D(j)) => same(z.d(j as i64, k as i64)),
        (D(k), D(i), C(_)) => same(z.d(i as i64, k as i64)),
        (D(k), D(i), D(j)) => same(p * z.d(i as i64 + j as i64, k as i64)),
        (D(_), F(_), E(_)) => same(1),
        (E(k), A(i), E(j)) => same(z.d(i as i64 + j as i64, k as i64)),
        (E(_), B(_), E(_)) => same(1),
        (E(k), E(i), C(j)) => {
            let d = z.d(i as i64 + j as i64, k as i64);
            (p * d, d)
        }
        (E(_), E(_), D(_)) => same(1),
        (F(k), C(i), F(j)) => same(z.d(i as i64 + j as i64, k as i64)),
        (F(_), D(_), F(_)) => same(1),
        (F(k), F(i), A(j)) => {
            let d = z.d(i as i64 + j as i64, k as i64);
            (p * d, d)
        }
        (F(_), F(_), B(_)) => same(1),
        _ => same(0),
    }
}

fn neg(params: &SchemeParameters, i: u32) -> i64 {
    params.m(-(i as i64)) as i64
}

fn table_m1(params: &SchemeParameters, i: Label, j: Label, k: Label) -> u32 {
    use Label::*;
    let z = Z { p: params.p() as i64 };
    let p = params.p();
    let d = |a: u32, b: u32| z.d(a as i64, b as i64);
    let d3 = |a: u32, b: u32, c: u32| z.d(a as i64 + b as i64, c as i64);
    match (k, i, j) {
        (R0, R0, R0) => 1,
        (R0, S(i), S(j)) => z.d(i as i64, neg(params, j)),
        (R0, T(i), T(j)) | (R0, U(i), U(j)) => p * z.d(i as i64, neg(params, j)),
        (S(k), R0, S(j)) => d(j, k),
        (S(k), S(i), R0) => d(i, k),
        (S(k), S(i), S(j)) => d3(i, j, k),
        (S(_), T(i), T(j)) => p * z.d(i as i64, neg(params, j)),
        (S(k), U(i), U(j)) => p * d3(i, j, k),
        (T(k), R0 | S(_), T(j)) => d(j, k),
        (T(k), T(i), R0 | S(_)) => d(i, k),
        (T(k), T(i), T(j)) => p * d3(i, j, k),
        (T(_), U(_), U(_)) => 1,
        (U(k), R0, U(j)) => d(j, k),
        (U(k), S(i), U(j)) => d3(i, j, k),
        (U(_), T(_), U(_)) => 1,
        (U(k), U(i), R0) => d(i, k),
        (U(k), U(i), S(j)) => d3(i, j, k),
        (U(_), U(_), T(_)) => 1,
        _ => 0,
    }
}

fn table_m2(params: &SchemeParameters, i: Label, j: Label, k: Label) -> Claim {
    use Label::*;
    let z = Z { p: params.p() as i64 };
    let p = params.p();
    let d = |a: u32, b: u32| z.d(a as i64, b as i64);
    let xi = |a: u32, b: u32, c: u32| z.xi(a as i64, b as i64, c as i64);
    let mm = |a: u32, b: u32, c: u32| z.big_m(a as i64, b as i64, c as i64);
    let v = Claim::Value;
    let amb = |reading| Claim::Ambiguous { reading };
    match (k, i, j) {
        (R0, R0, R0) => v(1),
        (R0, SStar(i), SStar(j)) => v(2 * d(i, j)),
        (R0, T(i), T(j)) => v(p * z.d(i as i64, neg(params, j))),
        (R0, U(0), U(0)) => v(p),
        (R0, UStar(i), UStar(j)) => v(2 * p * d(i, j)),
        (SStar(k), R0, SStar(j)) => v(d(j, k)),
        (SStar(k), SStar(i), R0) => v(d(i, k)),
        (SStar(k), SStar(i), SStar(j)) => v(xi(i, j, k)),
        (SStar(_), T(i), T(j)) => v(p * z.d(i as i64, neg(params, j))),
        (SStar(k), U(0), U(0)) => amb(p * xi(0, 0, k)),
        (SStar(k), U(0), UStar(j)) => amb(p * xi(0, j, k)),
        (SStar(k), UStar(i), U(0)) => amb(p * xi(i, 0, k)),
        (SStar(k), UStar(i), UStar(j)) => v(p * xi(i, j, k)),
        (T(k), R0, T(j)) => v(d(j, k)),
        (T(k), SStar(_), T(j)) => v(2 * d(j, k)),
        (T(k), T(i), R0) => v(d(i, k)),
        (T(k), T(i), SStar(_)) => v(2 * d(i, k)),
        (T(k), T(i), T(j)) => v(p * z.d(i as i64 + j as i64, k as i64)),
        (T(_), U(0), U(0)) => v(1),
        (T(_), U(0), UStar(_)) | (T(_), UStar(_), U(0)) => v(2),
        (T(_), UStar(_), UStar(_)) => v(4),
        (U(_) | UStar(_), _, _) => {
            let kk = match k {
                UStar(k) => k,
                _ => 0,
            };
            match (i, j) {
                (R0, U(0)) => v(d(0, kk)),
                (R0, UStar(j)) => v(d(0, j)),
                (SStar(i), U(0)) => v(mm(i, 0, kk)),
                (SStar(i), UStar(j)) => v(mm(i, j, kk)),
                (T(_), U(0)) => v(1),
                (T(_), UStar(_)) => v(2),
                (U(0), R0) => v(d(0, kk)),
                (U(0), SStar(j)) => v(mm(0, j, kk)),
                (U(0), T(_)) => v(1),
                (UStar(i), R0) => v(d(0, i)),
                (UStar(i), SStar(j)) => v(mm(i, j, kk)),
                (UStar(_), T(_)) => v(2),
                _ => v(0),
            }
        }
        _ => v(0),
    }
}

fn table_m3(p: u32, i: Label, j: Label, k: Label) -> u32 {
    use Label::*;
    let d = |a: u32, b: u32| (a == b) as u32;
    let d3 = |a: u32, b: u32, c: u32| ((a + b) % p == c) as u32;
    match (k, i, j) {
        (R0, R0, R0) => 1,
        (R0, SAll, SAll) => p - 1,
        (R0, T(i), T(j)) => p * d((i + j) % p, 0),
        (R0, U(0), U(0)) => p,
        (R0, UAll, UAll) => p * (p - 1),
        (SAll, R0, SAll) | (SAll, SAll, R0) => 1,
        (SAll, SAll, SAll) => p - 2,
        (SAll, T(i), T(j)) => p * d((i + j) % p, 0),
        (SAll, U(0), UAll) | (SAll, UAll, U(0)) => p,
        (SAll, UAll, UAll) => p * (p - 2),
        (T(k), R0, T(j)) => d(j, k),
        (T(k), SAll, T(j)) => (p - 1) * d(j, k),
        (T(k), T(i), R0) => d(i, k),
        (T(k), T(i), SAll) => (p - 1) * d(i, k),
        (T(k), T(i), T(j)) => p * d3(i, j, k),
        (T(_), U(0), U(0)) => 1,
        (T(_), U(0), UAll) | (T(_), UAll, U(0)) => p - 1,
        (T(_), UAll, UAll) => (p - 1) * (p - 1),
        (U(0), R0, U(0)) | (U(0), U(0), R0) => 1,
        (U(0), SAll, UAll) | (U(0), UAll, SAll) => p - 1,
        (U(0), T(_), U(0)) | (U(0), U(0), T(_)) => 1,
        (U(0), T(_), UAll) | (U(0), UAll, T(_)) => p - 1,
        (UAll, R0, UAll) | (UAll, UAll, R0) => 1,
        (UAll, SAll, U(0)) | (UAll, U(0), SAll) => 1,
        (UAll, SAll, UAll) | (UAll, UAll, SAll) => p - 2,
        (UAll, T(_), U(0)) | (UAll, U(0), T(_)) => 1,
        (UAll, T(_), UAll) | (UAll, UAll, T(_)) => p - 1,
        _ => 0,
    }
}

fn table_m4(params: &SchemeParameters, i: Label, j: Label, k: Label) -> u32 {
    use Label::*;
    let z = Z { p: params.p() as i64 };
    let p = params.p();
    let d = |a: u32, b: u32| (a == b) as u32;
    match (k, i, j) {
        (R0, R0, R0) => 1,
        (R0, SAll, SAll) => p - 1,
        (R0, TStar(i), TStar(j)) => 2 * p * d(i, j),
        (R0, U(0), U(0)) => p,
        (R0, UAll, UAll) => p * (p - 1),
        (SAll, R0, SAll) | (SAll, SAll, R0) => 1,
        (SAll, SAll, SAll) => p - 2,
        (SAll, TStar(i), TStar(j)) => 2 * p * d(i, j),
        (SAll, U(0), UAll) | (SAll, UAll, U(0)) => p,
        (SAll, UAll, UAll) => p * (p - 2),
        (TStar(k), R0, TStar(j)) => d(j, k),
        (TStar(k), SAll, TStar(j)) => (p - 1) * d(j, k),
        (TStar(k), TStar(i), R0) => d(i, k),
        (TStar(k), TStar(i), SAll) => (p - 1) * d(i, k),
        (TStar(k), TStar(i), TStar(j)) => p * z.xi(i as i64, j as i64, k as i64),
        (TStar(_), U(0), U(0)) => 1,
        (TStar(_), U(0), UAll) | (TStar(_), UAll, U(0)) => p - 1,
        (TStar(_), UAll, UAll) => (p - 1) * (p - 1),
        (U(0), R0, U(0)) | (U(0), U(0), R0) => 1,
        (U(0), SAll, UAll) | (U(0), UAll, SAll) => p - 1,
        (U(0), TStar(_), U(0)) | (U(0), U(0), TStar(_)) => 2,
        (U(0), TStar(_), UAll) | (U(0), UAll, TStar(_)) => 2 * p - 2,
        (UAll, R0, UAll) | (UAll, UAll, R0) => 1,
        (UAll, SAll, U(0)) | (UAll, U(0), SAll) => 1,
        (UAll, SAll, UAll) | (UAll, UAll, SAll) => p - 2,
        (UAll, TStar(_), U(0)) | (UAll, U(0), TStar(_)) => 2,
        (UAll, TStar(_), UAll) | (UAll, UAll, TStar(_)) => 2 * p - 2,
        _ => 0,
    }
}
