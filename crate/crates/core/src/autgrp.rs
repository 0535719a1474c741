//! Automorphism groups of color graphs: combinatorial (`Aut`), color (`CAut`) and
//! algebraic (`AAut`, acting on the colors and preserving the tensor).

mod search;

pub use search::Budget;

use num_bigint::BigUint;
use search::{automorphism_moving, automorphisms, group_of, mix, Partition, Target};

use crate::color::{compute_tensor, Color, ColorGraph, IntersectionTensor};
use crate::error::{Error, Result};
use crate::perm::{two_orbit_rank, PermGroup, Permutation};

/// `Aut` of a color graph.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub group: PermGroup,
    pub order: BigUint,
    /// Number of 2-orbits of the group.
    pub rank_of_group: usize,
    /// Search nodes visited.
    pub nodes: u64,
}

/// `AAut` of a tensor, as a group of color permutations.
#[derive(Clone, Debug)]
pub struct AAutResult {
    pub group: PermGroup,
    pub order: BigUint,
}

/// `CAut` of a color graph.
#[derive(Clone, Debug)]
pub struct CAutResult {
    /// Vertex permutations together with the color permutations they induce; together
    /// with `Aut` they generate `CAut`.
    pub generators: Vec<(Permutation, Permutation)>,
    /// Color permutations realized by `CAut`, the image of `CAut` in `AAut`.
    pub realized: PermGroup,
    pub aut_order: BigUint,
    pub order: BigUint,
}

impl CAutResult {
    /// `|CAut| / |Aut|`.
    pub fn quotient_order(&self) -> BigUint {
        self.realized.order()
    }
}

struct GraphTarget<'a> {
    cg: &'a ColorGraph,
}

impl Target for GraphTarget<'_> {
    fn size(&self) -> usize {
        self.cg.n()
    }

    fn vertex_invariant(&self, v: usize) -> u64 {
        self.cg.color(v, v) as u64
    }

    fn refine(&self, part: &mut Partition, mut queue: Vec<usize>) -> u64 {
        let n = self.cg.n();
        let cells = self.cg.cells();
        let r = self.cg.rank() as u64;
        let mut in_queue = vec![false; n];
        for &s in &queue {
            in_queue[s] = true;
        }
        let mut sig = vec![0u64; n];
        let mut trace = 0u64;
        while let Some(s) = queue.pop() {
            if !in_queue[s] {
                continue;
            }
            in_queue[s] = false;
            let w: Vec<u32> = part.cell_elems(s).to_vec();
            for v in 0..n {
                sig[v] = 0;
                if part.cell_len(part.cell_of(v)) == 1 {
                    continue;
                }
                let row = &cells[v * n..(v + 1) * n];
                let mut acc = 0u64;
                for &x in &w {
                    let x = x as usize;
                    acc = acc.wrapping_add(mix(row[x] as u64 * r + cells[x * n + v] as u64));
                }
                sig[v] = acc;
            }
            trace = mix(trace ^ s as u64);
            part.split_all(&sig, &mut queue, &mut in_queue, &mut trace);
            if part.is_discrete() {
                break;
            }
        }
        mix(trace ^ part.ncells as u64)
    }

    fn is_automorphism(&self, images: &[u32]) -> bool {
        let n = self.cg.n();
        (0..n).all(|x| {
            let gx = images[x] as usize;
            (0..n).all(|y| self.cg.color(x, y) == self.cg.color(gx, images[y] as usize))
        })
    }
}

struct TensorTarget<'a> {
    t: &'a IntersectionTensor,
}

impl Target for TensorTarget<'_> {
    fn size(&self) -> usize {
        self.t.rank()
    }

    fn vertex_invariant(&self, i: usize) -> u64 {
        let t = self.t;
        let (a, b) = t.fibers(i);
        let fib = (t.valency(a) == t.valency(b)) as u64;
        mix(t.valency(i) as u64) ^ ((t.is_diagonal(i) as u64) << 1) ^ ((t.transpose(i) == i) as u64) ^ (fib << 2)
    }

    fn refine(&self, part: &mut Partition, _queue: Vec<usize>) -> u64 {
        let r = self.t.rank();
        let mut trace = 0u64;
        let mut sig = vec![0u64; r];
        let mut scratch_queue = Vec::new();
        let mut in_queue = vec![false; r];
        loop {
            let cid: Vec<u64> = (0..r).map(|c| part.cell_of(c) as u64).collect();
            for (i, s) in sig.iter_mut().enumerate() {
                let mut acc = 0u64;
                for j in 0..r {
                    for k in 0..r {
                        let key = (cid[j] << 16) | cid[k];
                        let a = self.t.get(i, j, k);
                        if a != 0 {
                            acc = acc.wrapping_add(mix((1 << 60) | ((a as u64) << 32) | key));
                        }
                        let b = self.t.get(j, i, k);
                        if b != 0 {
                            acc = acc.wrapping_add(mix((2 << 60) | ((b as u64) << 32) | key));
                        }
                        let c = self.t.get(j, k, i);
                        if c != 0 {
                            acc = acc.wrapping_add(mix((3 << 60) | ((c as u64) << 32) | key));
                        }
                    }
                }
                *s = acc;
            }
            if !part.split_all(&sig, &mut scratch_queue, &mut in_queue, &mut trace) {
                break;
            }
        }
        mix(trace ^ part.ncells as u64)
    }

    fn is_automorphism(&self, images: &[u32]) -> bool {
        Permutation::from_images(images.to_vec()).is_ok_and(|p| self.t.is_preserved_by(&p))
    }
}

/// Vertices and colors as one point set: `0..n` are vertices, `n..n+r` colors. An
/// automorphism maps vertices to vertices and colors to colors, consistently.
struct FreeColorTarget<'a> {
    cg: &'a ColorGraph,
    counts: Vec<u64>,
}

impl<'a> FreeColorTarget<'a> {
    fn new(cg: &'a ColorGraph) -> Self {
        let mut counts = vec![0u64; cg.rank()];
        for &c in cg.cells() {
            counts[c as usize] += 1;
        }
        FreeColorTarget { cg, counts }
    }
}

impl Target for FreeColorTarget<'_> {
    fn size(&self) -> usize {
        self.cg.n() + self.cg.rank()
    }

    fn vertex_invariant(&self, v: usize) -> u64 {
        let n = self.cg.n();
        if v < n {
            0
        } else {
            mix(self.counts[v - n]) | 1
        }
    }

    fn refine(&self, part: &mut Partition, _queue: Vec<usize>) -> u64 {
        let n = self.cg.n();
        let size = self.size();
        let cells = self.cg.cells();
        let mut trace = 0u64;
        let mut sig = vec![0u64; size];
        let mut scratch_queue = Vec::new();
        let mut in_queue = vec![false; size];
        loop {
            let cid: Vec<u64> = (0..size).map(|e| part.cell_of(e) as u64).collect();
            sig.iter_mut().for_each(|s| *s = 0);
            for x in 0..n {
                for y in 0..n {
                    let c = n + cells[x * n + y] as usize;
                    sig[x] = sig[x].wrapping_add(mix((1 << 60) | (cid[c] << 30) | cid[y]));
                    sig[y] = sig[y].wrapping_add(mix((2 << 60) | (cid[c] << 30) | cid[x]));
                    sig[c] = sig[c].wrapping_add(mix((3 << 60) | (cid[x] << 30) | cid[y]));
                }
            }
            if !part.split_all(&sig, &mut scratch_queue, &mut in_queue, &mut trace) {
                break;
            }
        }
        mix(trace ^ part.ncells as u64)
    }

    fn is_automorphism(&self, images: &[u32]) -> bool {
        let n = self.cg.n();
        if (0..n).any(|x| images[x] as usize >= n) {
            return false;
        }
        (0..n).all(|x| {
            let gx = images[x] as usize;
            (0..n).all(|y| {
                let c = n + self.cg.color(x, y) as usize;
                images[c] as usize == n + self.cg.color(gx, images[y] as usize) as usize
            })
        })
    }
}

/// Isomorphism up to renaming colors: a vertex bijection `s` and a color bijection `ψ`
/// with `b(s x, s y) = ψ(a(x, y))`.
pub fn find_color_isomorphism(
    a: &ColorGraph,
    b: &ColorGraph,
    budget: Budget,
) -> Result<Option<(Permutation, Permutation)>> {
    let mut va: Vec<usize> = count_colors(a);
    let mut vb: Vec<usize> = count_colors(b);
    va.sort_unstable();
    vb.sort_unstable();
    if a.n() != b.n() || a.rank() != b.rank() || va != vb {
        return Ok(None);
    }
    let (n, r) = (a.n(), a.rank());
    if n == 0 {
        return Ok(Some((Permutation::identity(0), Permutation::identity(r))));
    }
    // b's colors shifted past a's; cross pairs get a color of their own
    let union = ColorGraph::from_fn(2 * n, 2 * r + 1, |x, y| match (x < n, y < n) {
        (true, true) => a.color(x, y),
        (false, false) => r as Color + b.color(x - n, y - n),
        _ => 2 * r as Color,
    })?;
    let target = FreeColorTarget::new(&union);
    let Some(t) = automorphism_moving(&target, 0, |y| (n..2 * n).contains(&y), budget)? else {
        return Ok(None);
    };
    let s = Permutation::from_fn(n, |x| t.image(x) - n)?;
    let psi = Permutation::from_fn(r, |c| t.image(2 * n + c) - 2 * n - r)?;
    if (0..n).all(|x| (0..n).all(|y| b.color(s.image(x), s.image(y)) as usize == psi.image(a.color(x, y) as usize))) {
        Ok(Some((s, psi)))
    } else {
        Err(Error::Check("union automorphism does not restrict to an isomorphism".into()))
    }
}

fn count_colors(cg: &ColorGraph) -> Vec<usize> {
    let mut v = vec![0usize; cg.rank()];
    for &c in cg.cells() {
        v[c as usize] += 1;
    }
    v
}

/// Full color-preserving automorphism group.
pub fn automorphism_group(cg: &ColorGraph) -> AutResult {
    automorphism_group_with_budget(cg, Budget::unlimited()).expect("unlimited budget")
}

pub fn automorphism_group_with_budget(cg: &ColorGraph, budget: Budget) -> Result<AutResult> {
    let out = automorphisms(&GraphTarget { cg }, budget)?;
    let group = group_of(cg.n(), &out)?;
    let order = group.order();
    let rank_of_group = two_orbit_rank(cg.n(), group.generators());
    Ok(AutResult { group, order, rank_of_group, nodes: out.nodes })
}

fn color_profile(cg: &ColorGraph) -> Vec<Vec<(Color, u32)>> {
    let n = cg.n();
    let mut rows: Vec<Vec<(Color, u32)>> = (0..n)
        .map(|x| {
            let mut counts = vec![0u32; cg.rank()];
            for &c in cg.row(x) {
                counts[c as usize] += 1;
            }
            let mut v: Vec<(Color, u32)> =
                counts.into_iter().enumerate().filter(|&(_, k)| k > 0).map(|(c, k)| (c as Color, k)).collect();
            v.insert(0, (cg.color(x, x), 0));
            v
        })
        .collect();
    rows.sort();
    rows
}

/// A vertex bijection `s` with `b(s x, s y) = a(x, y)`, if one exists.
pub fn find_isomorphism(a: &ColorGraph, b: &ColorGraph, budget: Budget) -> Result<Option<Permutation>> {
    if a.n() != b.n() || a.rank() != b.rank() || color_profile(a) != color_profile(b) {
        return Ok(None);
    }
    let n = a.n();
    if n == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    // Disjoint union, cross pairs in a fresh color; equal ids on both sides stay equal.
    let union = ColorGraph::from_keys(2 * n, |x, y| match (x < n, y < n) {
        (true, true) => a.color(x, y),
        (false, false) => b.color(x - n, y - n),
        _ => a.rank() as Color,
    });
    let Some(t) = automorphism_moving(&GraphTarget { cg: &union }, 0, |y| y >= n, budget)? else {
        return Ok(None);
    };
    let s = Permutation::from_fn(n, |x| t.image(x) - n)?;
    if (0..n).all(|x| (0..n).all(|y| b.color(s.image(x), s.image(y)) == a.color(x, y))) {
        Ok(Some(s))
    } else {
        Err(Error::Check("union automorphism does not restrict to an isomorphism".into()))
    }
}

/// Schurian test: the rank of the scheme against the 2-orbit rank of its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurianCertificate {
    pub scheme_rank: usize,
    pub group_rank: usize,
    pub group_order: BigUint,
}

impl SchurianCertificate {
    pub fn is_schurian(&self) -> bool {
        self.scheme_rank == self.group_rank
    }
}

pub fn is_schurian(cg: &ColorGraph) -> Result<SchurianCertificate> {
    is_schurian_with_budget(cg, Budget::unlimited())
}

pub fn is_schurian_with_budget(cg: &ColorGraph, budget: Budget) -> Result<SchurianCertificate> {
    compute_tensor(cg)?;
    let aut = automorphism_group_with_budget(cg, budget)?;
    Ok(SchurianCertificate { scheme_rank: cg.rank(), group_rank: aut.rank_of_group, group_order: aut.order })
}

/// Full group of tensor-preserving color permutations.
pub fn algebraic_automorphism_group(t: &IntersectionTensor) -> AAutResult {
    let out = automorphisms(&TensorTarget { t }, Budget::unlimited()).expect("unlimited budget");
    let group = group_of(t.rank(), &out).expect("search and chain agree");
    let order = group.order();
    AAutResult { group, order }
}

/// `CAut` by testing, for each algebraic automorphism `ψ` outside the cosets already
/// decided, whether recoloring by `ψ` gives an isomorphic graph.
pub fn color_automorphism_group(cg: &ColorGraph, budget: Budget) -> Result<CAutResult> {
    let t = compute_tensor(cg)?;
    let r = cg.rank();
    let aaut = algebraic_automorphism_group(&t);
    let aut = automorphism_group_with_budget(cg, budget)?;
    let mut realized = PermGroup::trivial(r);
    let mut failed: Vec<Permutation> = Vec::new();
    let mut generators = Vec::new();
    for psi in aaut.group.elements() {
        if realized.contains(&psi) {
            continue;
        }
        if failed.iter().any(|f| {
            let fi = f.inverse();
            realized.contains(&psi.then(&fi)) || realized.contains(&fi.then(&psi))
        }) {
            continue;
        }
        let recolored = cg.recolor(&psi)?;
        match find_isomorphism(cg, &recolored, budget)? {
            Some(s) => {
                let mut gens = realized.generators().to_vec();
                gens.push(psi.clone());
                realized = PermGroup::new(r, gens)?;
                let induced = induced_color_map(cg, &s).ok_or_else(|| Error::Check("isomorphism does not map colors to colors".into()))?;
                generators.push((s, induced));
            }
            None => failed.push(psi),
        }
    }
    let order = &aut.order * realized.order();
    Ok(CAutResult { generators, realized, aut_order: aut.order.clone(), order })
}

/// Color permutation induced by a vertex permutation, if it maps colors to colors.
pub fn induced_color_map(cg: &ColorGraph, s: &Permutation) -> Option<Permutation> {
    let n = cg.n();
    let mut map = vec![u32::MAX; cg.rank()];
    for x in 0..n {
        for y in 0..n {
            let c = cg.color(x, y) as usize;
            let d = cg.color(s.image(x), s.image(y));
            if map[c] == u32::MAX {
                map[c] = d;
            } else if map[c] != d {
                return None;
            }
        }
    }
    Permutation::from_images(map).ok()
}
