//! The biaffine configuration `M(p)` in its geometric and matrix models, the Heisenberg
//! group acting on it, and the mergings `M1`–`M4`.
//!
//! Vertices are numbered points first: the point `[x, y]` is `x·p + y` and the line
//! `(k, q)`, i.e. `y = kx + q`, is `p² + k·p + q`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{is_odd_prime, md};
use crate::color::{compute_tensor, merge_colors, Color, ColorGraph, ColorPartition};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

mod tables;

pub use tables::{expected_tensor, CellReport, Claim, Correction, ExpectedTensor, TensorComparison};

/// The prime `p` together with the vertex numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchemeParameters {
    p: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Point { x: u32, y: u32 },
    Line { k: u32, q: u32 },
}

impl SchemeParameters {
    pub fn new(p: u32) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        2 * (self.p as usize).pow(2)
    }

    /// `(p − 1) / 2`.
    pub fn half(&self) -> u32 {
        (self.p - 1) / 2
    }

    #[inline]
    pub fn m(&self, a: i64) -> u32 {
        md(a, self.p)
    }

    pub fn point_id(&self, x: u32, y: u32) -> usize {
        (x * self.p + y) as usize
    }

    pub fn line_id(&self, k: u32, q: u32) -> usize {
        (self.p * self.p + k * self.p + q) as usize
    }

    pub fn id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Point { x, y } => self.point_id(x, y),
            Vertex::Line { k, q } => self.line_id(k, q),
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        let (p, pp) = (self.p as usize, (self.p * self.p) as usize);
        if id < pp {
            Vertex::Point { x: (id / p) as u32, y: (id % p) as u32 }
        } else {
            let r = id - pp;
            Vertex::Line { k: (r / p) as u32, q: (r % p) as u32 }
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).map(|v| self.vertex(v))
    }

    /// Number of colors of `M(p)`: `6p − 2`.
    pub fn base_rank(&self) -> usize {
        6 * self.p as usize - 2
    }
}

/// `d(P, ℓ) = kx + q − y`.
pub fn quasidistance(params: &SchemeParameters, (x, y): (u32, u32), (k, q): (u32, u32)) -> u32 {
    params.m(k as i64 * x as i64 + q as i64 - y as i64)
}

/// `d(ℓ, P) = y − q − kx`.
pub fn dual_quasidistance(params: &SchemeParameters, (k, q): (u32, u32), (x, y): (u32, u32)) -> u32 {
    params.m(y as i64 - q as i64 - k as i64 * x as i64)
}

/// Symbolic names of colors: base relations `A_i … F_i` and merged relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E(u32),
    F(u32),
    /// `A_0 ∪ C_0`.
    R0,
    S(u32),
    T(u32),
    U(u32),
    SStar(u32),
    TStar(u32),
    UStar(u32),
    /// Union of all `S_i`, `i ≠ 0`.
    SAll,
    /// Union of all `U_i`, `i ≠ 0`.
    UAll,
    /// Union of `T_i` over nonzero squares `i`.
    TSquares,
    /// Union of `T_i` over non-squares `i`.
    TNonSquares,
}

impl Label {
    pub fn is_base(&self) -> bool {
        matches!(self, Label::A(_) | Label::B(_) | Label::C(_) | Label::D(_) | Label::E(_) | Label::F(_))
    }

    /// Transpose of a base relation.
    pub fn transpose(&self, params: &SchemeParameters) -> Label {
        let neg = |i: u32| params.m(-(i as i64));
        match *self {
            Label::A(i) => Label::A(neg(i)),
            Label::B(i) => Label::B(neg(i)),
            Label::C(i) => Label::C(neg(i)),
            Label::D(i) => Label::D(neg(i)),
            Label::E(i) => Label::F(neg(i)),
            Label::F(i) => Label::E(neg(i)),
            other => other,
        }
    }

    /// Index of a base relation among the `6p − 2` colors of `M(p)`:
    /// `A_0..A_{p−1}, B_1..B_{p−1}, C_0.., D_1.., E_0.., F_0..`.
    pub fn base_index(&self, params: &SchemeParameters) -> Option<Color> {
        let p = params.p();
        Some(match *self {
            Label::A(i) => i,
            Label::B(i) if i != 0 => p + i - 1,
            Label::C(i) => 2 * p - 1 + i,
            Label::D(i) if i != 0 => 3 * p - 1 + i - 1,
            Label::E(i) => 4 * p - 2 + i,
            Label::F(i) => 5 * p - 2 + i,
            _ => return None,
        })
    }

    pub fn from_base_index(params: &SchemeParameters, c: Color) -> Label {
        let p = params.p();
        match c {
            c if c < p => Label::A(c),
            c if c < 2 * p - 1 => Label::B(c - p + 1),
            c if c < 3 * p - 1 => Label::C(c - (2 * p - 1)),
            c if c < 4 * p - 2 => Label::D(c - (3 * p - 1) + 1),
            c if c < 5 * p - 2 => Label::E(c - (4 * p - 2)),
            c => Label::F(c - (5 * p - 2)),
        }
    }

    /// Base relations making up this label.
    pub fn constituents(&self, params: &SchemeParameters) -> Vec<Label> {
        let p = params.p();
        let neg = |i: u32| params.m(-(i as i64));
        let squares = crate::arith::quadratic_residues(p);
        match *self {
            l if l.is_base() => vec![l],
            Label::R0 => vec![Label::A(0), Label::C(0)],
            Label::S(i) => vec![Label::A(i), Label::C(i)],
            Label::T(i) => vec![Label::B(i), Label::D(i)],
            Label::U(i) => vec![Label::E(i), Label::F(i)],
            Label::SStar(i) => [i, neg(i)].iter().flat_map(|&j| Label::S(j).constituents(params)).collect(),
            Label::TStar(i) => [i, neg(i)].iter().flat_map(|&j| Label::T(j).constituents(params)).collect(),
            Label::UStar(i) => [i, neg(i)].iter().flat_map(|&j| Label::U(j).constituents(params)).collect(),
            Label::SAll => (1..p).flat_map(|j| Label::S(j).constituents(params)).collect(),
            Label::UAll => (1..p).flat_map(|j| Label::U(j).constituents(params)).collect(),
            Label::TSquares => squares.iter().flat_map(|&j| Label::T(j).constituents(params)).collect(),
            Label::TNonSquares => (1..p)
                .filter(|j| !squares.contains(j))
                .flat_map(|j| Label::T(j).constituents(params))
                .collect(),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::A(i) => write!(f, "A{i}"),
            Label::B(i) => write!(f, "B{i}"),
            Label::C(i) => write!(f, "C{i}"),
            Label::D(i) => write!(f, "D{i}"),
            Label::E(i) => write!(f, "E{i}"),
            Label::F(i) => write!(f, "F{i}"),
            Label::R0 => write!(f, "R0"),
            Label::S(i) => write!(f, "S{i}"),
            Label::T(i) => write!(f, "T{i}"),
            Label::U(i) => write!(f, "U{i}"),
            Label::SStar(i) => write!(f, "S*{i}"),
            Label::TStar(i) => write!(f, "T*{i}"),
            Label::UStar(i) => write!(f, "U*{i}"),
            Label::SAll => write!(f, "S"),
            Label::UAll => write!(f, "U"),
            Label::TSquares => write!(f, "Tsq"),
            Label::TNonSquares => write!(f, "Tnsq"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        let bad = || Error::Parse { line: 1, msg: format!("unknown label {s:?}") };
        match s {
            "R0" => return Ok(Label::R0),
            "S" => return Ok(Label::SAll),
            "U" => return Ok(Label::UAll),
            "Tsq" => return Ok(Label::TSquares),
            "Tnsq" => return Ok(Label::TNonSquares),
            _ => {}
        }
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
        let (head, num) = s.split_at(split);
        let i: u32 = num.parse().map_err(|_| bad())?;
        Ok(match head {
            "A" => Label::A(i),
            "B" => Label::B(i),
            "C" => Label::C(i),
            "D" => Label::D(i),
            "E" => Label::E(i),
            "F" => Label::F(i),
            "S" => Label::S(i),
            "T" => Label::T(i),
            "U" => Label::U(i),
            "S*" => Label::SStar(i),
            "T*" => Label::TStar(i),
            "U*" => Label::UStar(i),
            _ => return Err(bad()),
        })
    }
}

/// Bidirectional map between labels and the colors of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeDescriptor {
    params: SchemeParameters,
    labels: Vec<Label>,
    index: HashMap<Label, Color>,
}

impl SchemeDescriptor {
    pub fn new(params: SchemeParameters, labels: Vec<Label>) -> Result<Self> {
        let mut index = HashMap::new();
        for (c, &l) in labels.iter().enumerate() {
            if index.insert(l, c as Color).is_some() {
                return Err(Error::Structure(format!("label {l} used twice")));
            }
        }
        Ok(Self { params, labels, index })
    }

    pub fn params(&self) -> &SchemeParameters {
        &self.params
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn color(&self, label: Label) -> Option<Color> {
        self.index.get(&label).copied()
    }

    pub fn label(&self, c: Color) -> Label {
        self.labels[c as usize]
    }

    /// Color whose constituents contain the given base relation.
    pub fn color_of_base(&self, base: Label) -> Option<Color> {
        self.labels
            .iter()
            .position(|l| l.constituents(&self.params).contains(&base))
            .map(|c| c as Color)
    }

    /// One `label = id` pair per line.
    pub fn to_sidecar(&self) -> String {
        self.labels.iter().enumerate().map(|(c, l)| format!("{l} = {c}\n")).collect()
    }

    pub fn parse_sidecar(params: SchemeParameters, text: &str) -> Result<Self> {
        let mut pairs: Vec<(Color, Label)> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (l, c) = line
                .split_once('=')
                .ok_or(Error::Parse { line: ln + 1, msg: "expected `label = id`".into() })?;
            let c: Color = c.trim().parse().map_err(|_| Error::Parse { line: ln + 1, msg: "bad color id".into() })?;
            pairs.push((c, l.trim().parse()?));
        }
        pairs.sort();
        if pairs.iter().enumerate().any(|(i, (c, _))| *c as usize != i) {
            return Err(Error::Parse { line: 1, msg: "color ids must be 0..r without gaps".into() });
        }
        Self::new(params, pairs.into_iter().map(|(_, l)| l).collect())
    }
}

pub fn base_labels(params: &SchemeParameters) -> Vec<Label> {
    (0..params.base_rank() as Color).map(|c| Label::from_base_index(params, c)).collect()
}

/// Base relation of a pair in the geometric model.
pub fn classify_model_one(params: &SchemeParameters, u: usize, v: usize) -> Label {
    let m = |a: i64| params.m(a);
    match (params.vertex(u), params.vertex(v)) {
        (Vertex::Point { x: x1, y: y1 }, Vertex::Point { x: x2, y: y2 }) => {
            if x1 == x2 {
                Label::A(m(y2 as i64 - y1 as i64))
            } else {
                Label::B(m(x2 as i64 - x1 as i64))
            }
        }
        (Vertex::Line { k: k1, q: q1 }, Vertex::Line { k: k2, q: q2 }) => {
            if k1 == k2 {
                Label::C(m(q2 as i64 - q1 as i64))
            } else {
                Label::D(m(k2 as i64 - k1 as i64))
            }
        }
        (Vertex::Point { x, y }, Vertex::Line { k, q }) => Label::E(quasidistance(params, (x, y), (k, q))),
        (Vertex::Line { k, q }, Vertex::Point { x, y }) => Label::F(dual_quasidistance(params, (k, q), (x, y))),
    }
}

/// The geometric model of `M(p)`: colors assigned by the coordinate rules.
pub fn build_model_one(params: &SchemeParameters) -> (ColorGraph, SchemeDescriptor) {
    let g = ColorGraph::from_fn(params.n(), params.base_rank(), |u, v| {
        classify_model_one(params, u, v).base_index(params).expect("base label")
    })
    .expect("every base relation occurs");
    let desc = SchemeDescriptor::new(*params, base_labels(params)).expect("distinct labels");
    (g, desc)
}

/// `(1, x1, x2) · (y1, y2, −1)ᵀ = y1 + x1·y2 − x2`.
pub fn scalar_product(params: &SchemeParameters, (x1, x2): (u32, u32), (y1, y2): (u32, u32)) -> u32 {
    params.m(y1 as i64 + x1 as i64 * y2 as i64 - x2 as i64)
}

/// Base relation of a pair in the matrix model. Vertex `x1·p + x2` is the row vector
/// `(1, x1, x2)`; vertex `p² + y1·p + y2` is the column vector `(y1, y2, −1)ᵀ`.
pub fn classify_model_two(params: &SchemeParameters, u: usize, v: usize) -> Label {
    let m = |a: i64| params.m(a);
    let coords = |w: usize| match params.vertex(w) {
        Vertex::Point { x, y } => (true, x, y),
        Vertex::Line { k, q } => (false, k, q),
    };
    let (pu, a1, a2) = coords(u);
    let (pv, b1, b2) = coords(v);
    match (pu, pv) {
        (true, true) => {
            if a1 == b1 {
                Label::A(m(b2 as i64 - a2 as i64))
            } else {
                Label::B(m(b1 as i64 - a1 as i64))
            }
        }
        (false, false) => {
            if a2 == b2 {
                Label::C(m(b1 as i64 - a1 as i64))
            } else {
                Label::D(m(b2 as i64 - a2 as i64))
            }
        }
        (true, false) => Label::E(scalar_product(params, (a1, a2), (b1, b2))),
        (false, true) => Label::F(m(-(scalar_product(params, (b1, b2), (a1, a2)) as i64))),
    }
}

pub fn build_model_two(params: &SchemeParameters) -> (ColorGraph, SchemeDescriptor) {
    let g = ColorGraph::from_fn(params.n(), params.base_rank(), |u, v| {
        classify_model_two(params, u, v).base_index(params).expect("base label")
    })
    .expect("every base relation occurs");
    let desc = SchemeDescriptor::new(*params, base_labels(params)).expect("distinct labels");
    (g, desc)
}

/// `h_{a,b,u}`: first `φ^u`, then `t_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergElement {
    pub a: u32,
    pub b: u32,
    pub u: u32,
}

impl HeisenbergElement {
    pub fn new(params: &SchemeParameters, a: i64, b: i64, u: i64) -> Self {
        Self { a: params.m(a), b: params.m(b), u: params.m(u) }
    }

    /// `h_{a,b,u} ∘ h_{c,d,v} = h_{a+c, b+d−av, u+v}` (left factor applied first).
    pub fn compose(&self, params: &SchemeParameters, other: &Self) -> Self {
        let (a, b, u) = (self.a as i64, self.b as i64, self.u as i64);
        let (c, d, v) = (other.a as i64, other.b as i64, other.u as i64);
        Self::new(params, a + c, b + d - a * v, u + v)
    }

    pub fn apply(&self, params: &SchemeParameters, v: Vertex) -> Vertex {
        let (a, b, u) = (self.a as i64, self.b as i64, self.u as i64);
        let m = |t: i64| params.m(t);
        match v {
            Vertex::Point { x, y } => Vertex::Point { x: m(x as i64 + a), y: m(y as i64 - u * x as i64 + b) },
            Vertex::Line { k, q } => {
                let k1 = k as i64 - u;
                Vertex::Line { k: m(k1), q: m(b + q as i64 - a * k1) }
            }
        }
    }

    pub fn to_permutation(&self, params: &SchemeParameters) -> Permutation {
        Permutation::from_fn(params.n(), |v| params.id(self.apply(params, params.vertex(v))))
            .expect("Heisenberg elements are bijections")
    }

    /// `Φ(h_{a,b,u}) = g_{a, b+au, −u}`.
    pub fn to_matrix(&self, params: &SchemeParameters) -> MatrixElement {
        MatrixElement::new(params, self.a as i64, self.b as i64 + self.a as i64 * self.u as i64, -(self.u as i64))
    }
}

/// `t_{a,b}`: `[x,y] -> [x+a, y+b]`, `(k,q) -> (k, b+q−ak)`.
pub fn translation(params: &SchemeParameters, a: i64, b: i64) -> Permutation {
    HeisenbergElement::new(params, a, b, 0).to_permutation(params)
}

/// `φ`: `[x,y] -> [x, y−x]`, `(k,q) -> (k−1, q)`.
pub fn phi(params: &SchemeParameters) -> Permutation {
    HeisenbergElement::new(params, 0, 0, 1).to_permutation(params)
}

/// The group generated by `t_{1,0}`, `t_{0,1}` and `φ`.
pub fn heisenberg_group(params: &SchemeParameters) -> PermGroup {
    PermGroup::new(params.n(), vec![translation(params, 1, 0), translation(params, 0, 1), phi(params)])
        .expect("generators have degree n")
}

/// `π`: `[x,y] -> (x, −y−2x)`, `(k,q) -> [k+2, −q]`.
pub fn pi(params: &SchemeParameters) -> Permutation {
    let m = |t: i64| params.m(t);
    Permutation::from_fn(params.n(), |v| {
        params.id(match params.vertex(v) {
            Vertex::Point { x, y } => Vertex::Line { k: x, q: m(-(y as i64) - 2 * x as i64) },
            Vertex::Line { k, q } => Vertex::Point { x: m(k as i64 + 2), y: m(-(q as i64)) },
        })
    })
    .expect("π is a bijection")
}

/// `α`: `[x,y] -> [x, −y]`, `(k,q) -> (−k, −q)`.
pub fn alpha(params: &SchemeParameters) -> Permutation {
    let m = |t: u32| params.m(-(t as i64));
    Permutation::from_fn(params.n(), |v| {
        params.id(match params.vertex(v) {
            Vertex::Point { x, y } => Vertex::Point { x, y: m(y) },
            Vertex::Line { k, q } => Vertex::Line { k: m(k), q: m(q) },
        })
    })
    .expect("α is a bijection")
}

/// `β`: `[x,y] -> [−x, −y]`, `(k,q) -> (k, −q)`.
pub fn beta(params: &SchemeParameters) -> Permutation {
    let m = |t: u32| params.m(-(t as i64));
    Permutation::from_fn(params.n(), |v| {
        params.id(match params.vertex(v) {
            Vertex::Point { x, y } => Vertex::Point { x: m(x), y: m(y) },
            Vertex::Line { k, q } => Vertex::Line { k, q: m(q) },
        })
    })
    .expect("β is a bijection")
}

/// `g_{abc} = [[1, a, b+ac], [0, 1, c], [0, 0, 1]]` acting on the matrix model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixElement {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl MatrixElement {
    pub fn new(params: &SchemeParameters, a: i64, b: i64, c: i64) -> Self {
        Self { a: params.m(a), b: params.m(b), c: params.m(c) }
    }

    /// `g_{abu} · g_{cdv} = g_{a+c, b+d−uc, u+v}`.
    pub fn mul(&self, params: &SchemeParameters, other: &Self) -> Self {
        let (a, b, u) = (self.a as i64, self.b as i64, self.c as i64);
        let (c, d, v) = (other.a as i64, other.b as i64, other.c as i64);
        Self::new(params, a + c, b + d - u * c, u + v)
    }

    /// Entries of the 3×3 matrix.
    pub fn matrix(&self, params: &SchemeParameters) -> [[u32; 3]; 3] {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        [[1, self.a, params.m(b + a * c)], [0, 1, self.c], [0, 0, 1]]
    }

    /// Row vectors `(1, x1, x2)` map to `x·g`, column vectors `(y1, y2, −1)ᵀ` to `g⁻¹·y`.
    pub fn apply(&self, params: &SchemeParameters, v: Vertex) -> Vertex {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        let m = |t: i64| params.m(t);
        match v {
            Vertex::Point { x: x1, y: x2 } => {
                let (x1, x2) = (x1 as i64, x2 as i64);
                Vertex::Point { x: m(x1 + a), y: m(b + a * c + c * x1 + x2) }
            }
            Vertex::Line { k: y1, q: y2 } => {
                let (y1, y2) = (y1 as i64, y2 as i64);
                Vertex::Line { k: m(y1 - a * y2 + b), q: m(y2 + c) }
            }
        }
    }

    pub fn to_permutation(&self, params: &SchemeParameters) -> Permutation {
        Permutation::from_fn(params.n(), |v| params.id(self.apply(params, params.vertex(v))))
            .expect("matrix elements act bijectively")
    }
}

/// Vertex and color bijections identifying two models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelIsomorphism {
    /// Vertex of the first model to vertex of the second.
    pub vertex_map: Permutation,
    /// Color of the first model to color of the second.
    pub color_map: Vec<Color>,
}

/// First cell where two graphs under a vertex map fail to correspond.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cell ({x}, {y}) has color {c1} but its image ({ix}, {iy}) has color {c2}")]
pub struct CellMismatch {
    pub x: usize,
    pub y: usize,
    pub ix: usize,
    pub iy: usize,
    pub c1: Color,
    pub c2: Color,
}

/// Checks that `vertex_map` carries the color classes of `g1` bijectively onto those of `g2`.
pub fn color_bijection_under(
    g1: &ColorGraph,
    g2: &ColorGraph,
    vertex_map: &Permutation,
) -> std::result::Result<Vec<Color>, CellMismatch> {
    let n = g1.n();
    let mut fwd = vec![Color::MAX; g1.rank()];
    let mut bwd = vec![Color::MAX; g2.rank()];
    for x in 0..n {
        for y in 0..n {
            let (ix, iy) = (vertex_map.image(x), vertex_map.image(y));
            let (c1, c2) = (g1.color(x, y), g2.color(ix, iy));
            let ok = match (fwd[c1 as usize], bwd[c2 as usize]) {
                (Color::MAX, Color::MAX) => {
                    fwd[c1 as usize] = c2;
                    bwd[c2 as usize] = c1;
                    true
                }
                (f, b) => f == c2 && b == c1,
            };
            if !ok {
                return Err(CellMismatch { x, y, ix, iy, c1, c2 });
            }
        }
    }
    Ok(fwd)
}

/// Identifies the two models, deriving the vertex map from the group isomorphism `Φ`:
/// a base point and a base line of the first model are sent to base vectors of the second,
/// and `ψ(v^h) = ψ(v)^{Φ(h)}` extends the map to all vertices.
pub fn models_isomorphic(params: &SchemeParameters) -> std::result::Result<ModelIsomorphism, CellMismatch> {
    let (g1, _) = build_model_one(params);
    let (g2, _) = build_model_two(params);
    let n = params.n();
    let p = params.p() as i64;
    let mut map = vec![u32::MAX; n];
    let bases = [
        (Vertex::Point { x: 0, y: 0 }, Vertex::Point { x: 0, y: 0 }),
        (Vertex::Line { k: 0, q: 0 }, Vertex::Line { k: 0, q: 0 }),
    ];
    for (b1, b2) in bases {
        for a in 0..p {
            for b in 0..p {
                for u in 0..p {
                    let h = HeisenbergElement::new(params, a, b, u);
                    let src = params.id(h.apply(params, b1));
                    let dst = params.id(h.to_matrix(params).apply(params, b2)) as u32;
                    if map[src] == u32::MAX {
                        map[src] = dst;
                    } else if map[src] != dst {
                        return Err(CellMismatch { x: src, y: src, ix: map[src] as usize, iy: dst as usize, c1: 0, c2: 0 });
                    }
                }
            }
        }
    }
    let vertex_map = Permutation::from_images(map).map_err(|_| CellMismatch {
        x: 0,
        y: 0,
        ix: 0,
        iy: 0,
        c1: 0,
        c2: 0,
    })?;
    let color_map = color_bijection_under(&g1, &g2, &vertex_map)?;
    Ok(ModelIsomorphism { vertex_map, color_map })
}

/// The four mergings of `M(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Merging {
    M1,
    M2,
    M3,
    M4,
}

impl Merging {
    pub const ALL: [Merging; 4] = [Merging::M1, Merging::M2, Merging::M3, Merging::M4];

    /// Labels of the merged colors in canonical block order.
    pub fn labels(&self, params: &SchemeParameters) -> Vec<Label> {
        let p = params.p();
        let h = params.half();
        let mut v = vec![Label::R0];
        match self {
            Merging::M1 => {
                v.extend((1..p).map(Label::S));
                v.extend((1..p).map(Label::T));
                v.extend((0..p).map(Label::U));
            }
            Merging::M2 => {
                v.extend((1..=h).map(Label::SStar));
                v.extend((1..p).map(Label::T));
                v.push(Label::U(0));
                v.extend((1..=h).map(Label::UStar));
            }
            Merging::M3 => {
                v.push(Label::SAll);
                v.extend((1..p).map(Label::T));
                v.push(Label::U(0));
                v.push(Label::UAll);
            }
            Merging::M4 => {
                v.push(Label::SAll);
                v.extend((1..=h).map(Label::TStar));
                v.push(Label::U(0));
                v.push(Label::UAll);
            }
        }
        v
    }

    pub fn expected_rank(&self, p: u32) -> usize {
        let p = p as usize;
        match self {
            Merging::M1 => 3 * p - 1,
            Merging::M2 => 2 * p,
            Merging::M3 => p + 3,
            Merging::M4 => (p + 7) / 2,
        }
    }

    /// Advisory for degenerate small cases.
    pub fn warning(&self, p: u32) -> Option<&'static str> {
        match (self, p) {
            (Merging::M2 | Merging::M3, 3) => Some("for p = 3 the mergings M2 and M3 coincide"),
            _ => None,
        }
    }
}

impl FromStr for Merging {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M1" => Ok(Merging::M1),
            "M2" => Ok(Merging::M2),
            "M3" => Ok(Merging::M3),
            "M4" => Ok(Merging::M4),
            _ => Err(Error::Parse { line: 1, msg: format!("unknown merging {s:?}") }),
        }
    }
}

impl fmt::Display for Merging {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Partition of the colors of `M(p)` grouping the constituents of each label.
pub fn partition_of_labels(params: &SchemeParameters, labels: &[Label]) -> Result<ColorPartition> {
    let blocks = labels
        .iter()
        .map(|l| {
            l.constituents(params)
                .iter()
                .map(|b| b.base_index(params).expect("constituents are base relations"))
                .collect::<Vec<_>>()
        })
        .map(|mut b| {
            b.sort_unstable();
            b.dedup();
            b
        })
        .collect();
    ColorPartition::new(params.base_rank(), blocks)
}

/// Merges `M(p)` into the labels given; the descriptor follows the canonical block order.
pub fn build_labelled_merging(params: &SchemeParameters, labels: &[Label]) -> Result<(ColorGraph, SchemeDescriptor)> {
    let (m, _) = build_model_one(params);
    let part = partition_of_labels(params, labels)?;
    let merged = merge_colors(&m, &part)?;
    let mut ordered: Vec<(Color, Label)> = labels
        .iter()
        .map(|&l| {
            let first = l.constituents(params)[0].base_index(params).expect("base relation");
            (part.block_of(first) as Color, l)
        })
        .collect();
    ordered.sort();
    let desc = SchemeDescriptor::new(*params, ordered.into_iter().map(|(_, l)| l).collect())?;
    Ok((merged, desc))
}

/// `M1`–`M4` as mergings of `M(p)`; each is checked to be coherent.
pub fn build_merging(params: &SchemeParameters, which: Merging) -> Result<(ColorGraph, SchemeDescriptor)> {
    let (g, desc) = build_labelled_merging(params, &which.labels(params))?;
    compute_tensor(&g)?;
    Ok((g, desc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::validate_color_graph;
    use crate::perm::two_orbit_graph;

    fn params(p: u32) -> SchemeParameters {
        SchemeParameters::new(p).unwrap()
    }

    #[test]
    fn parameters() {
        assert!(SchemeParameters::new(2).is_err());
        assert!(SchemeParameters::new(9).is_err());
        let pr = params(5);
        assert_eq!(pr.n(), 50);
        for v in 0..pr.n() {
            assert_eq!(pr.id(pr.vertex(v)), v);
        }
    }

    #[test]
    fn quasidistance_examples() {
        assert_eq!(quasidistance(&params(3), (1, 0), (1, 0)), 1);
        assert_eq!(quasidistance(&params(5), (2, 3), (1, 4)), 3);
        let pr = params(7);
        for x in 0..7 {
            for y in 0..7 {
                for k in 0..7 {
                    for q in 0..7 {
                        let d = quasidistance(&pr, (x, y), (k, q));
                        assert_eq!((d + dual_quasidistance(&pr, (k, q), (x, y))) % 7, 0);
                        assert_eq!(d == 0, y == (k * x + q) % 7);
                    }
                }
            }
        }
    }

    #[test]
    fn base_index_round_trip() {
        let pr = params(7);
        for c in 0..pr.base_rank() as Color {
            assert_eq!(Label::from_base_index(&pr, c).base_index(&pr), Some(c));
        }
    }

    #[test]
    fn label_strings() {
        for l in [Label::A(0), Label::SStar(2), Label::UAll, Label::TNonSquares, Label::T(4)] {
            assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
        }
        assert!("Q3".parse::<Label>().is_err());
    }

    #[test]
    fn model_one_small() {
        let pr = params(3);
        let (g, desc) = build_model_one(&pr);
        assert_eq!((g.n(), g.rank()), (18, 16));
        let rep = validate_color_graph(&g);
        let t = rep.transpose.unwrap();
        for c in 0..16 {
            let l = desc.label(c);
            assert_eq!(desc.label(t[c as usize]), l.transpose(&pr));
        }
        assert_eq!(g.diagonal_colors(), vec![desc.color(Label::A(0)).unwrap(), desc.color(Label::C(0)).unwrap()]);
        compute_tensor(&g).unwrap();
    }

    #[test]
    fn heisenberg_composition_law() {
        let pr = params(5);
        let elems = [(1, 2, 3), (4, 0, 1), (0, 3, 3), (2, 2, 0)];
        for &(a, b, u) in &elems {
            for &(c, d, v) in &elems {
                let h = HeisenbergElement::new(&pr, a, b, u);
                let k = HeisenbergElement::new(&pr, c, d, v);
                assert_eq!(
                    h.to_permutation(&pr).then(&k.to_permutation(&pr)),
                    h.compose(&pr, &k).to_permutation(&pr)
                );
                assert_eq!(h.to_matrix(&pr).mul(&pr, &k.to_matrix(&pr)), h.compose(&pr, &k).to_matrix(&pr));
                assert_eq!(
                    h.to_matrix(&pr).to_permutation(&pr).then(&k.to_matrix(&pr).to_permutation(&pr)),
                    h.to_matrix(&pr).mul(&pr, &k.to_matrix(&pr)).to_permutation(&pr)
                );
            }
        }
    }

    #[test]
    fn heisenberg_group_basics() {
        let pr = params(3);
        let h = heisenberg_group(&pr);
        assert_eq!(h.order(), num_bigint::BigUint::from(27u32));
        let orbits = h.orbits();
        assert_eq!(orbits.iter().map(|o| o.len()).collect::<Vec<_>>(), vec![9, 9]);
        let ph = phi(&pr);
        let fixed_points = (0..9).filter(|&v| ph.image(v) == v).count();
        let fixed_lines = (9..18).filter(|&v| ph.image(v) == v).count();
        assert_eq!((fixed_points, fixed_lines), (3, 0));
        let (m, _) = build_model_one(&pr);
        assert!(two_orbit_graph(&h).same_partition(&m));
    }

    #[test]
    fn models_agree() {
        for p in [3, 5] {
            let pr = params(p);
            let iso = models_isomorphic(&pr).unwrap();
            let (g1, d1) = build_model_one(&pr);
            let (_, d2) = build_model_two(&pr);
            for c in 0..g1.rank() as Color {
                assert_eq!(d2.label(iso.color_map[c as usize]), d1.label(c));
            }
        }
        let pr = params(3);
        let (g, _) = build_model_one(&pr);
        let id = color_bijection_under(&g, &g, &Permutation::identity(18)).unwrap();
        assert_eq!(id, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn merging_ranks() {
        for p in [3, 5, 7] {
            let pr = params(p);
            for w in Merging::ALL {
                let (g, d) = build_merging(&pr, w).unwrap();
                assert_eq!(g.rank(), w.expected_rank(p), "{w} at p = {p}");
                assert_eq!(d.rank(), g.rank());
            }
        }
        let pr = params(3);
        let (m2, _) = build_merging(&pr, Merging::M2).unwrap();
        let (m3, _) = build_merging(&pr, Merging::M3).unwrap();
        assert!(m2.same_partition(&m3));
    }

    #[test]
    fn sidecar_round_trip() {
        let pr = params(5);
        let (_, d) = build_merging(&pr, Merging::M2).unwrap();
        let text = d.to_sidecar();
        assert!(text.starts_with("R0 = 0\nS*1 = 1\n"));
        assert_eq!(SchemeDescriptor::parse_sidecar(pr, &text).unwrap(), d);
    }
}
