//! Named graphs inside `M(p)`: Pappus, McKay–Miller–Širáň `H_p`, Wenger `W_1(p)` and the
//! Bosák graph, each with the union of base relations that defines it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::arith::{pow_mod, smallest_primitive_root};
use crate::biaffine::{build_model_one, Label, SchemeParameters, Vertex};
use crate::color::ColorGraph;
use crate::error::{Error, Result};
use crate::spectra::IntMatrix;

/// A simple digraph (no loops) with its provenance in `M(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub params: SchemeParameters,
    n: usize,
    adj: Vec<bool>,
    /// Base relations of `M(p)` whose union is the arc set.
    pub provenance: Vec<Label>,
}

impl NamedGraph {
    /// Arc set given by an adjacency rule on vertex ids.
    pub fn from_rule(
        name: &str,
        params: SchemeParameters,
        provenance: Vec<Label>,
        rule: impl Fn(usize, usize) -> bool,
    ) -> Self {
        let n = params.n();
        let adj = (0..n * n).map(|i| i / n != i % n && rule(i / n, i % n)).collect();
        NamedGraph { name: name.to_string(), params, n, adj, provenance }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.n + y]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| (0..self.n).map(move |y| (x, y))).filter(|&(x, y)| self.has_arc(x, y)).collect()
    }

    pub fn out_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&y| self.has_arc(x, y))
    }

    pub fn is_undirected(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.has_arc(x, y) == self.has_arc(y, x)))
    }

    /// Only the arcs whose reverse is also an arc.
    pub fn undirected_part(&self) -> NamedGraph {
        let mut g = self.clone();
        g.name = format!("{} (undirected part)", self.name);
        for x in 0..self.n {
            for y in 0..self.n {
                g.adj[x * self.n + y] = self.has_arc(x, y) && self.has_arc(y, x);
            }
        }
        g.provenance.retain(|l| self.provenance.contains(&l.transpose(&self.params)));
        g
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.n, |x, y| self.has_arc(x, y) as i64)
    }

    /// Arc set of the union of the provenance relations in `build_model_one`.
    pub fn provenance_arcs(&self) -> Result<Vec<(usize, usize)>> {
        let (m, desc) = build_model_one(&self.params);
        let mut colors = BTreeSet::new();
        for &l in &self.provenance {
            let c = desc
                .color(l)
                .ok_or_else(|| Error::Structure(format!("{l:?} is not a base relation at p = {}", self.params.p())))?;
            colors.insert(c);
        }
        let n = m.n();
        Ok((0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| colors.contains(&m.color(x, y))).collect())
    }

    pub fn provenance_matches(&self) -> Result<bool> {
        Ok(self.provenance_arcs()? == self.arcs())
    }

    /// Color graph with colors diagonal, arc, non-arc.
    pub fn to_color_graph(&self) -> ColorGraph {
        ColorGraph::from_keys(self.n, |x, y| if x == y { 0u8 } else if self.has_arc(x, y) { 1 } else { 2 })
    }

    /// graph6 string; only for undirected graphs.
    pub fn to_graph6(&self) -> Result<String> {
        if !self.is_undirected() {
            return Err(Error::Structure(format!("{} has directed arcs; graph6 needs an undirected graph", self.name)));
        }
        let n = self.n;
        let mut out = String::new();
        if n < 63 {
            out.push((n as u8 + 63) as char);
        } else if n < 258_048 {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        } else {
            return Err(Error::Structure("graph6 export supports fewer than 258048 vertices".into()));
        }
        let mut bits = Vec::with_capacity(n * (n - 1) / 2);
        for j in 1..n {
            for i in 0..j {
                bits.push(self.has_arc(i, j));
            }
        }
        for chunk in bits.chunks(6) {
            let mut v = 0u8;
            for k in 0..6 {
                v = (v << 1) | chunk.get(k).copied().unwrap_or(false) as u8;
            }
            out.push((v + 63) as char);
        }
        Ok(out)
    }

    /// `n m` followed by one `x y` line per arc.
    pub fn to_arc_list(&self) -> String {
        let arcs = self.arcs();
        let mut s = format!("{} {}\n", self.n, arcs.len());
        for (x, y) in arcs {
            writeln!(s, "{x} {y}").unwrap();
        }
        s
    }
}

/// Connection sets `X`, `X'` from the primitive root. For `p ≡ 1 (mod 4)` they are the
/// squares and non-squares; for `p ≡ 3 (mod 4)` they have `(p + 1)/2` elements each and
/// share one pair `±a`.
pub fn mms_sets(p: u32) -> (Vec<u32>, Vec<u32>) {
    let w = smallest_primitive_root(p) as u64;
    let pw = |e: u32| pow_mod(w, e as u64, p as u64) as u32;
    let neg = |a: u32| (p - a) % p;
    let (mut x, mut xp): (Vec<u32>, Vec<u32>) = if p % 4 == 1 {
        ((0..(p - 1) / 2).map(|i| pw(2 * i)).collect(), (0..(p - 1) / 2).map(|i| pw(2 * i + 1)).collect())
    } else {
        let r = (p - 3) / 4;
        let x = (0..=r).flat_map(|i| [pw(2 * i), neg(pw(2 * i))]).collect();
        let xp = (0..=r).flat_map(|i| [pw(2 * i + 1), neg(pw(2 * i + 1))]).collect();
        (x, xp)
    };
    x.sort_unstable();
    x.dedup();
    xp.sort_unstable();
    xp.dedup();
    (x, xp)
}

/// Valency of `H_p`: `(3p − 1)/2` for `p ≡ 1 (mod 4)`, `(3p + 1)/2` for `p ≡ 3 (mod 4)`.
pub fn mms_valency(p: u32) -> usize {
    if p % 4 == 1 {
        (3 * p as usize - 1) / 2
    } else {
        (3 * p as usize).div_ceil(2)
    }
}

/// McKay–Miller–Širáň graph `H_p`, built from the adjacency rules on `Z_2 × Z_p × Z_p`.
/// At `p = 5` this is the Hoffman–Singleton graph.
pub fn mms_graph(params: &SchemeParameters) -> Result<NamedGraph> {
    let p = params.p();
    let (x, xp) = mms_sets(p);
    let closed = |s: &[u32]| s.iter().all(|&a| s.contains(&((p - a) % p)));
    let covers = (1..p).all(|a| x.contains(&a) || xp.contains(&a));
    if !closed(&x) || !closed(&xp) || !covers || x.len() != xp.len() || x.len() + p as usize != mms_valency(p) {
        return Err(Error::Check(format!("MMS connection sets at p = {p} are not symmetric or have the wrong size")));
    }
    let mut provenance = vec![Label::E(0), Label::F(0)];
    provenance.extend(x.iter().map(|&i| Label::A(i)));
    provenance.extend(xp.iter().map(|&j| Label::C(j)));
    let d = |a: u32, b: u32| (a + p - b) % p;
    let g = NamedGraph::from_rule(&format!("H_{p}"), *params, provenance, |u, v| match (params.vertex(u), params.vertex(v)) {
        (Vertex::Point { x: x1, y: y1 }, Vertex::Point { x: x2, y: y2 }) => x1 == x2 && x.contains(&d(y1, y2)),
        (Vertex::Line { k: k1, q: q1 }, Vertex::Line { k: k2, q: q2 }) => k1 == k2 && xp.contains(&d(q1, q2)),
        (Vertex::Point { x, y }, Vertex::Line { k, q }) | (Vertex::Line { k, q }, Vertex::Point { x, y }) => {
            y == (k as u64 * x as u64 + q as u64) as u32 % p
        }
    });
    Ok(g)
}

/// Wenger graph `W_1(p)`: the point–line flag graph, relation `U_0 = E_0 ∪ F_0`.
pub fn wenger_graph(params: &SchemeParameters) -> NamedGraph {
    let p = params.p();
    let name = if p == 3 { "Pappus".to_string() } else { format!("W_1({p})") };
    NamedGraph::from_rule(&name, *params, vec![Label::E(0), Label::F(0)], |u, v| match (params.vertex(u), params.vertex(v)) {
        (Vertex::Point { x, y }, Vertex::Line { k, q }) | (Vertex::Line { k, q }, Vertex::Point { x, y }) => {
            y == (k * x + q) % p
        }
        _ => false,
    })
}

pub fn pappus_graph() -> NamedGraph {
    wenger_graph(&SchemeParameters::new(3).expect("3 is an odd prime"))
}

/// Bosák graph `B_18`: the mixed graph `A_1 ∪ C_2 ∪ E_0 ∪ F_0` at `p = 3`.
pub fn bosak_graph() -> NamedGraph {
    let params = SchemeParameters::new(3).expect("3 is an odd prime");
    NamedGraph::from_rule("B_18", params, vec![Label::A(1), Label::C(2), Label::E(0), Label::F(0)], |u, v| {
        match (params.vertex(u), params.vertex(v)) {
            (Vertex::Point { x: x1, y: y1 }, Vertex::Point { x: x2, y: y2 }) => x1 == x2 && (y2 + 3 - y1) % 3 == 1,
            (Vertex::Line { k: k1, q: q1 }, Vertex::Line { k: k2, q: q2 }) => k1 == k2 && (q2 + 3 - q1) % 3 == 2,
            (Vertex::Point { x, y }, Vertex::Line { k, q }) | (Vertex::Line { k, q }, Vertex::Point { x, y }) => {
                y == (k * x + q) % 3
            }
        }
    })
}

/// Properties a catalog entry is expected to have. `None` means "not claimed".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Claims {
    pub n: Option<usize>,
    pub regular: Option<usize>,
    pub diameter: Option<usize>,
    pub girth: Option<usize>,
    pub bipartite: Option<bool>,
}

/// Measured values. Girth and bipartiteness are only measured on undirected graphs;
/// diameter follows arcs and is `None` when some vertex is unreachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measured {
    pub n: usize,
    pub undirected: bool,
    /// Common out-degree, if all out- and in-degrees agree.
    pub regular: Option<usize>,
    pub diameter: Option<usize>,
    pub girth: Option<usize>,
    pub bipartite: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyFailure {
    pub property: &'static str,
    pub claimed: String,
    pub measured: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub measured: Measured,
    pub failures: Vec<PropertyFailure>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = &self.measured;
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        writeln!(
            f,
            "{}: n {} regular {} diameter {} girth {} bipartite {} undirected {}",
            self.name,
            m.n,
            opt(m.regular),
            opt(m.diameter),
            opt(m.girth),
            m.bipartite.map_or("-".to_string(), |b| b.to_string()),
            m.undirected
        )?;
        for e in &self.failures {
            writeln!(f, "  FAIL {}: claimed {} measured {} ({})", e.property, e.claimed, e.measured, e.witness)?;
        }
        Ok(())
    }
}

fn bfs(g: &NamedGraph, s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        let d = dist[x].unwrap();
        for y in g.out_neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                q.push_back(y);
            }
        }
    }
    dist
}

/// Eccentricity maximum and a pair realizing it, or an unreachable pair.
fn diameter(g: &NamedGraph) -> (Option<usize>, (usize, usize)) {
    let mut best = (0, (0, 0));
    for s in 0..g.n() {
        for (t, d) in bfs(g, s).into_iter().enumerate() {
            match d {
                None => return (None, (s, t)),
                Some(d) if d > best.0 => best = (d, (s, t)),
                _ => {}
            }
        }
    }
    (Some(best.0), best.1)
}

/// Shortest cycle length of an undirected graph, with an edge on such a cycle.
fn girth(g: &NamedGraph) -> (Option<usize>, (usize, usize)) {
    let n = g.n();
    let mut best: (Option<usize>, (usize, usize)) = (None, (0, 0));
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for y in g.out_neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    if best.0.is_none_or(|b| len < b) {
                        best = (Some(len), (x, y));
                    }
                }
            }
        }
    }
    best
}

/// Two-coloring, or an edge joining two vertices of the same color.
fn bipartition(g: &NamedGraph) -> std::result::Result<Vec<bool>, (usize, usize)> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let sx = side[x].unwrap();
            for y in g.out_neighbors(x) {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        q.push_back(y);
                    }
                    Some(sy) if sy == sx => return Err((x, y)),
                    _ => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.unwrap()).collect())
}

/// Measures the graph and compares against `claims`.
pub fn certify(g: &NamedGraph, claims: &Claims) -> Certificate {
    let n = g.n();
    let out: Vec<usize> = (0..n).map(|x| g.out_neighbors(x).count()).collect();
    let inn: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| g.has_arc(x, y)).count()).collect();
    let regular = (n > 0 && out.iter().chain(&inn).all(|&d| d == out[0])).then(|| out[0]).or((n == 0).then_some(0));
    let undirected = g.is_undirected();
    let (diam, diam_pair) = diameter(g);
    let (gi, gi_edge) = if undirected { girth(g) } else { (None, (0, 0)) };
    let bip = undirected.then(|| bipartition(g));
    let measured = Measured {
        n,
        undirected,
        regular,
        diameter: diam,
        girth: gi,
        bipartite: bip.as_ref().map(|b| b.is_ok()),
    };

    let mut failures = Vec::new();
    let mut fail = |property, claimed: String, measured: String, witness: String| {
        failures.push(PropertyFailure { property, claimed, measured, witness })
    };
    if let Some(c) = claims.n {
        if c != n {
            fail("n", c.to_string(), n.to_string(), String::new());
        }
    }
    if let Some(c) = claims.regular {
        if regular != Some(c) {
            let v = (0..n).find(|&v| out[v] != c || inn[v] != c).unwrap_or(0);
            fail("regular", c.to_string(), format!("{regular:?}"), format!("vertex {v}: out {} in {}", out[v], inn[v]));
        }
    }
    if let Some(c) = claims.diameter {
        if diam != Some(c) {
            let (s, t) = diam_pair;
            let w = match diam {
                None => format!("{t} unreachable from {s}"),
                Some(d) => format!("distance {d} from {s} to {t}"),
            };
            fail("diameter", c.to_string(), format!("{diam:?}"), w);
        }
    }
    if let Some(c) = claims.girth {
        if gi != Some(c) {
            let w = if undirected { format!("edge {:?} on a shortest cycle", gi_edge) } else { "graph has directed arcs".into() };
            fail("girth", c.to_string(), format!("{gi:?}"), w);
        }
    }
    if let Some(c) = claims.bipartite {
        if measured.bipartite != Some(c) {
            let w = match &bip {
                Some(Err((x, y))) => format!("edge {x} {y} closes an odd cycle"),
                Some(Ok(_)) => "a proper 2-coloring exists".into(),
                None => "graph has directed arcs".into(),
            };
            fail("bipartite", c.to_string(), format!("{:?}", measured.bipartite), w);
        }
    }
    Certificate { name: g.name.clone(), measured, failures }
}

/// `|V(H_p)| / (d² + 1)` for `d = (3p − 1)/2`.
pub fn moore_ratio(p: u32) -> f64 {
    let d = (3 * p as u64 - 1) / 2;
    (2 * p as u64 * p as u64) as f64 / (d * d + 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32) -> SchemeParameters {
        SchemeParameters::new(p).unwrap()
    }

    #[test]
    fn hoffman_singleton() {
        let g = mms_graph(&params(5)).unwrap();
        let c = certify(&g, &Claims { n: Some(50), regular: Some(7), diameter: Some(2), girth: Some(5), bipartite: Some(false) });
        assert!(c.passed(), "{c}");
        assert!(g.provenance_matches().unwrap());
    }

    #[test]
    fn mms_regular_diameter_two() {
        for p in [3, 7, 11] {
            let g = mms_graph(&params(p)).unwrap();
            assert!(g.is_undirected());
            let c = certify(&g, &Claims { regular: Some(mms_valency(p)), diameter: Some(2), ..Claims::default() });
            assert!(c.passed(), "{c}");
            assert!(g.provenance_matches().unwrap());
        }
    }

    #[test]
    fn pappus() {
        let g = pappus_graph();
        let c = certify(&g, &Claims { n: Some(18), regular: Some(3), girth: Some(6), bipartite: Some(true), ..Claims::default() });
        assert!(c.passed(), "{c}");
    }

    #[test]
    fn single_vertex_and_failures() {
        let g = NamedGraph { name: "K1".into(), params: params(3), n: 1, adj: vec![false], provenance: vec![] };
        assert_eq!(certify(&g, &Claims::default()).measured.diameter, Some(0));
        let c = certify(&pappus_graph(), &Claims { girth: Some(4), ..Claims::default() });
        assert_eq!(c.failures.len(), 1);
        assert_eq!(c.failures[0].property, "girth");
    }

    #[test]
    fn bosak_undirected_part() {
        let b = bosak_graph();
        assert!(b.provenance_matches().unwrap());
        let u = b.undirected_part();
        assert_eq!(u.arcs(), pappus_graph().arcs());
        assert!(b.to_graph6().is_err());
    }

    #[test]
    fn graph6_small() {
        // path 0-1-2: bits 1,0,1 padded to 101000 = 40, so 'B' then 'g'
        let p = params(3);
        let mut g = NamedGraph::from_rule("P", p, vec![], |_, _| false);
        g.n = 3;
        g.adj = vec![false, true, false, true, false, true, false, true, false];
        assert_eq!(g.to_graph6().unwrap(), "Bg");
    }
}
