//! Individualization–refinement search for automorphism groups.
//!
//! A [`Target`] supplies vertex invariants, a refinement procedure and an exact
//! automorphism test. The search follows a first path to a discrete partition, then
//! works upward through the levels, looking for one automorphism per new basic-orbit point.
//! Refinements only need to be invariant; every candidate leaf is verified exactly.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Limits for the expensive searches.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(n: u64) -> Self {
        Self { max_nodes: Some(n), deadline: None }
    }

    pub fn seconds(s: f64) -> Self {
        Self { max_nodes: None, deadline: Some(Instant::now() + std::time::Duration::from_secs_f64(s)) }
    }

    fn exceeded(&self, nodes: u64) -> bool {
        self.max_nodes.is_some_and(|m| nodes > m)
            || (nodes.is_multiple_of(64) && self.deadline.is_some_and(|d| Instant::now() > d))
    }
}

#[inline]
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Ordered partition of `0..n`; cells are identified by their start position.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub elems: Vec<u32>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    len: Vec<u32>,
    pub ncells: usize,
}

impl Partition {
    /// Cells are the classes of `key`, in increasing key order.
    pub fn by_key(n: usize, key: impl Fn(usize) -> u64) -> Self {
        let mut elems: Vec<u32> = (0..n as u32).collect();
        let keys: Vec<u64> = (0..n).map(&key).collect();
        elems.sort_by_key(|&v| keys[v as usize]);
        let mut p = Partition { elems, pos: vec![0; n], cell: vec![0; n], len: vec![0; n], ncells: 0 };
        let mut s = 0;
        while s < n {
            let k = keys[p.elems[s] as usize];
            let mut e = s;
            while e < n && keys[p.elems[e] as usize] == k {
                e += 1;
            }
            p.set_cell(s, e);
            s = e;
        }
        p
    }

    fn set_cell(&mut self, s: usize, e: usize) {
        for i in s..e {
            self.cell[i] = s as u32;
            self.pos[self.elems[i] as usize] = i as u32;
        }
        self.len[s] = (e - s) as u32;
        self.ncells += 1;
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.ncells == self.n()
    }

    pub fn cell_len(&self, start: usize) -> usize {
        self.len[start] as usize
    }

    pub fn is_cell_start(&self, start: usize) -> bool {
        self.cell[start] as usize == start
    }

    pub fn cell_of(&self, v: usize) -> usize {
        self.cell[self.pos[v] as usize] as usize
    }

    pub fn cell_elems(&self, start: usize) -> &[u32] {
        &self.elems[start..start + self.len[start] as usize]
    }

    pub fn starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ncells);
        let mut s = 0;
        while s < self.n() {
            out.push(s);
            s += self.len[s] as usize;
        }
        out
    }

    /// First non-singleton cell of minimum size.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.n() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l < self.len[b]) {
                best = Some(s);
            }
            s += l as usize;
        }
        best
    }

    /// Moves `v` to the front of its cell as a singleton. Returns the singleton's start.
    pub fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of(v);
        let l = self.len[s] as usize;
        if l == 1 {
            return s;
        }
        let i = self.pos[v] as usize;
        let u = self.elems[s];
        self.elems.swap(s, i);
        self.pos[u as usize] = i as u32;
        self.pos[v] = s as u32;
        self.len[s] = 1;
        for j in s + 1..s + l {
            self.cell[j] = (s + 1) as u32;
        }
        self.len[s + 1] = (l - 1) as u32;
        self.ncells += 1;
        s
    }

    /// Splits every non-singleton cell by `sig`, keeping the subcells in increasing
    /// signature order. New cells are pushed on `queue`; the trace absorbs every split.
    pub fn split_all(&mut self, sig: &[u64], queue: &mut Vec<usize>, in_queue: &mut [bool], trace: &mut u64) -> bool {
        let mut changed = false;
        let mut s = 0;
        let n = self.n();
        while s < n {
            let l = self.len[s] as usize;
            if l > 1 {
                let first = sig[self.elems[s] as usize];
                if self.elems[s..s + l].iter().any(|&v| sig[v as usize] != first) {
                    changed = true;
                    self.elems[s..s + l].sort_by_key(|&v| sig[v as usize]);
                    let was_queued = in_queue[s];
                    let mut parts = Vec::new();
                    let mut a = s;
                    while a < s + l {
                        let k = sig[self.elems[a] as usize];
                        let mut b = a;
                        while b < s + l && sig[self.elems[b] as usize] == k {
                            b += 1;
                        }
                        parts.push((a, b));
                        *trace = mix(*trace ^ mix(k) ^ ((a as u64) << 32 | (b - a) as u64));
                        a = b;
                    }
                    self.ncells -= 1;
                    for &(a, b) in &parts {
                        self.set_cell(a, b);
                        in_queue[a] = false;
                    }
                    // Hopcroft: an already processed cell need not re-enter with its largest part.
                    let skip = if was_queued {
                        usize::MAX
                    } else {
                        parts.iter().enumerate().max_by_key(|(i, &(a, b))| (b - a, usize::MAX - i)).map(|(i, _)| i).unwrap()
                    };
                    for (i, &(a, _)) in parts.iter().enumerate() {
                        if i != skip {
                            in_queue[a] = true;
                            queue.push(a);
                        }
                    }
                }
            }
            s += l;
        }
        changed
    }
}

/// Structures searchable by the engine.
pub(crate) trait Target {
    fn size(&self) -> usize;
    fn vertex_invariant(&self, v: usize) -> u64;
    /// Refines `part` after the cells in `queue` changed; returns a trace value that
    /// depends only on the isomorphism type of the situation.
    fn refine(&self, part: &mut Partition, queue: Vec<usize>) -> u64;
    fn is_automorphism(&self, images: &[u32]) -> bool;
}

pub(crate) struct SearchOutcome {
    pub generators: Vec<Permutation>,
    pub base: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub nodes: u64,
}

struct FirstPathLevel {
    part: Partition,
    target: usize,
    base: u32,
    trace: u64,
    ncells: usize,
}

struct Search<'a, T: Target> {
    target: &'a T,
    levels: Vec<FirstPathLevel>,
    leaf: Vec<u32>,
    nodes: u64,
    budget: Budget,
}

pub(crate) fn automorphisms<T: Target>(target: &T, budget: Budget) -> Result<SearchOutcome> {
    let n = target.size();
    let mut root = Partition::by_key(n, |v| target.vertex_invariant(v));
    let all = root.starts();
    target.refine(&mut root, all);
    let mut levels = Vec::new();
    let mut node = root;
    while let Some(t) = node.target_cell() {
        let b = node.elems[t];
        let mut child = node.clone();
        let s = child.individualize(b as usize);
        let trace = target.refine(&mut child, vec![s]);
        let ncells = child.ncells;
        levels.push(FirstPathLevel { part: node, target: t, base: b, trace, ncells });
        node = child;
    }
    let mut search = Search { target, levels, leaf: node.elems, nodes: 0, budget };
    let m = search.levels.len();
    let mut generators: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![1; m];
    for i in (0..m).rev() {
        let b = search.levels[i].base as usize;
        let cell: Vec<u32> = search.levels[i].part.cell_elems(search.levels[i].target).to_vec();
        let mut orbit = orbit_of(n, b, &generators);
        for &v in &cell {
            if orbit[v as usize] {
                continue;
            }
            if let Some(g) = search.find(i, v as usize)? {
                generators.push(g);
                orbit = orbit_of(n, b, &generators);
            }
        }
        orbit_sizes[i] = orbit.iter().filter(|&&x| x).count();
    }
    let base = search.levels.iter().map(|l| l.base as usize).collect();
    Ok(SearchOutcome { generators, base, orbit_sizes, nodes: search.nodes })
}

/// One automorphism mapping `base` to a point accepted by `candidate`, if any. The first
/// path individualizes `base` at the root, so only that level is searched.
pub(crate) fn automorphism_moving<T: Target>(
    target: &T,
    base: usize,
    candidate: impl Fn(usize) -> bool,
    budget: Budget,
) -> Result<Option<Permutation>> {
    let n = target.size();
    let mut root = Partition::by_key(n, |v| target.vertex_invariant(v));
    let all = root.starts();
    target.refine(&mut root, all);
    let mut levels = Vec::new();
    let mut node = root;
    let mut next = Some(node.cell_of(base)).filter(|&t| node.cell_len(t) > 1);
    let mut b = base as u32;
    while let Some(t) = next {
        let mut child = node.clone();
        let s = child.individualize(b as usize);
        let trace = target.refine(&mut child, vec![s]);
        let ncells = child.ncells;
        levels.push(FirstPathLevel { part: node, target: t, base: b, trace, ncells });
        node = child;
        next = node.target_cell();
        if let Some(t) = next {
            b = node.elems[t];
        }
    }
    if levels.is_empty() {
        return Ok(None);
    }
    let mut search = Search { target, levels, leaf: node.elems, nodes: 0, budget };
    let cell: Vec<u32> = search.levels[0].part.cell_elems(search.levels[0].target).to_vec();
    for v in cell {
        if candidate(v as usize) {
            if let Some(g) = search.find(0, v as usize)? {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

fn orbit_of(n: usize, b: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut stack = vec![b];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.image(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

impl<T: Target> Search<'_, T> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            return Err(Error::Budget { nodes: self.nodes });
        }
        Ok(())
    }

    /// Child of level `i`'s node individualizing `v`, if it looks like the first path's child.
    fn child(&mut self, node: &Partition, i: usize, v: usize) -> Result<Option<Partition>> {
        self.tick()?;
        let lv = &self.levels[i];
        let mut child = node.clone();
        let s = child.individualize(v);
        let trace = self.target.refine(&mut child, vec![s]);
        Ok((trace == lv.trace && child.ncells == lv.ncells).then_some(child))
    }

    fn find(&mut self, i: usize, v: usize) -> Result<Option<Permutation>> {
        let node = self.levels[i].part.clone();
        match self.child(&node, i, v)? {
            Some(c) => self.descend(c, i + 1),
            None => Ok(None),
        }
    }

    fn descend(&mut self, node: Partition, j: usize) -> Result<Option<Permutation>> {
        if j == self.levels.len() {
            let mut images = vec![0u32; node.n()];
            for (x, &v) in self.leaf.iter().zip(&node.elems) {
                images[*x as usize] = v;
            }
            if self.target.is_automorphism(&images) {
                return Ok(Some(Permutation::from_images(images).expect("leaf map is a bijection")));
            }
            return Ok(None);
        }
        let t = self.levels[j].target;
        if !node.is_cell_start(t) || node.cell_len(t) != self.levels[j].part.cell_len(t) {
            return Ok(None);
        }
        let cell: Vec<u32> = node.cell_elems(t).to_vec();
        for &w in &cell {
            if let Some(c) = self.child(&node, j, w as usize)? {
                if let Some(g) = self.descend(c, j + 1)? {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }
}

/// Group generated by a search outcome, with the search base as chain base.
pub(crate) fn group_of(n: usize, out: &SearchOutcome) -> Result<PermGroup> {
    let g = PermGroup::with_base(n, out.generators.clone(), &out.base)?;
    let expected: num_bigint::BigUint = out.orbit_sizes.iter().map(|&s| num_bigint::BigUint::from(s)).product();
    if g.order() != expected {
        return Err(Error::Check(format!(
            "stabilizer chain order {} differs from search orbit product {expected}",
            g.order()
        )));
    }
    Ok(g)
}
