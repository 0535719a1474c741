//! Permutations and permutation groups with a deterministic Schreier–Sims chain.
//!
//! Permutations act on the right: `x^(gh) = (x^g)^h`, so `g.then(&h)` applies `g` first.

use std::fmt;

use num_bigint::BigUint;
use petgraph::unionfind::UnionFind;

use crate::color::ColorGraph;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.to_line())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::Structure(format!("image list is not a bijection on [0, {n})")));
            }
            seen[x as usize] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint cycles `(a b c)` meaning `a -> b -> c -> a`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut hit = vec![false; n];
        for cyc in cycles {
            for (idx, &a) in cyc.iter().enumerate() {
                let b = cyc[(idx + 1) % cyc.len()];
                if a >= n || b >= n || hit[a] {
                    return Err(Error::Structure(format!("bad cycle {cyc:?} on {n} points")));
                }
                hit[a] = true;
                images[a] = b as u32;
            }
        }
        Self::from_images(images)
    }

    /// Builds the permutation `x -> f(x)`, checking bijectivity.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_images((0..n).map(|x| f(x) as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Product applying `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(x, &y)| x as u32 != y)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.image(s) == s {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.image(s);
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u128 {
        self.cycles().iter().fold(1u128, |acc, c| num_integer::lcm(acc, c.len() as u128))
    }

    /// One-line image sequence, space separated.
    pub fn to_line(&self) -> String {
        self.images.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_line(line: &str) -> Result<Permutation> {
        let images = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse { line: 1, msg: format!("{t:?}: {e}") }))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(images)
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `trans[x]` maps the base point to `x`.
    trans: Vec<Option<Permutation>>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut lvl = Level { base, gens: Vec::new(), orbit: Vec::new(), trans: vec![None; n] };
        lvl.rebuild();
        lvl
    }

    fn rebuild(&mut self) {
        let n = self.trans.len();
        self.trans = vec![None; n];
        self.trans[self.base] = Some(Permutation::identity(n));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let c = s.image(b);
                if self.trans[c].is_none() {
                    let u = self.trans[b].as_ref().expect("orbit point has a transversal").then(s);
                    self.trans[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// A permutation group given by generators, with a stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        Self { n, generators: Vec::new(), levels: Vec::new() }
    }

    pub fn new(n: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_base(n, generators, &[])
    }

    /// Builds the chain so that its base starts with `base_prefix`.
    pub fn with_base(n: usize, generators: Vec<Permutation>, base_prefix: &[usize]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::Structure(format!("generator of degree {} in a group of degree {n}", g.degree())));
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= n) {
            return Err(Error::Structure(format!("base point {b} out of range")));
        }
        let levels = schreier_sims(n, &generators, base_prefix);
        Ok(Self { n, generators, levels })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    /// Transversal element mapping the base point of `level` to `x`.
    pub fn transversal(&self, level: usize, x: usize) -> Option<&Permutation> {
        self.levels[level].trans[x].as_ref()
    }

    /// Strong generators of the pointwise stabilizer of the first `level` base points.
    pub fn stabilizer_generators(&self, level: usize) -> &[Permutation] {
        if level < self.levels.len() {
            &self.levels[level].gens
        } else {
            &[]
        }
    }

    /// Exact order.
    pub fn order(&self) -> BigUint {
        self.levels.iter().map(|l| BigUint::from(l.orbit.len())).product()
    }

    /// Sifts `g` through the chain: the residue and the level where it stopped.
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        sift_from(&self.levels, 0, g.clone())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (h, lvl) = self.sift(g);
        lvl == self.levels.len() && h.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// True if `self` is normalized by every generator of `other`.
    pub fn is_normalized_by(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| {
            let gi = g.inverse();
            self.generators.iter().all(|h| self.contains(&gi.then(h).then(g)))
        })
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<u32>::new(self.n);
        for g in &self.generators {
            for x in 0..self.n {
                uf.union(x as u32, g.image(x) as u32);
            }
        }
        let labels = uf.into_labeling();
        let mut idx = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.n {
            let l = labels[x] as usize;
            if idx[l] == usize::MAX {
                idx[l] = out.len();
                out.push(Vec::new());
            }
            out[idx[l]].push(x);
        }
        out
    }

    /// All elements, in chain order. Intended for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.n)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for &x in &lvl.orbit {
                let u = lvl.trans[x].as_ref().expect("orbit point has a transversal");
                for h in &out {
                    next.push(h.then(u));
                }
            }
            out = next;
        }
        out
    }

    /// Strong generating set collected from all levels.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}

fn sift_from(levels: &[Level], start: usize, mut g: Permutation) -> (Permutation, usize) {
    for (i, lvl) in levels.iter().enumerate().skip(start) {
        let x = g.image(lvl.base);
        match &lvl.trans[x] {
            None => return (g, i),
            Some(u) => g = g.then(&u.inverse()),
        }
    }
    let len = levels.len();
    (g, len)
}

fn fixes_all(g: &Permutation, points: &[usize]) -> bool {
    points.iter().all(|&b| g.image(b) == b)
}

fn schreier_sims(n: usize, generators: &[Permutation], base_prefix: &[usize]) -> Vec<Level> {
    let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut base: Vec<usize> = Vec::new();
    for &b in base_prefix {
        if !base.contains(&b) {
            base.push(b);
        }
    }
    for g in &gens {
        if fixes_all(g, &base) {
            base.push(g.first_moved_point().expect("non-identity"));
        }
    }
    let mut levels: Vec<Level> = Vec::with_capacity(base.len());
    for (i, &b) in base.iter().enumerate() {
        let mut lvl = Level::new(n, b);
        lvl.gens = gens.iter().filter(|g| fixes_all(g, &base[..i])).cloned().collect();
        lvl.rebuild();
        levels.push(lvl);
    }
    let mut i = levels.len();
    while i > 0 {
        let lvl = i - 1;
        match failing_schreier_generator(&levels, lvl) {
            None => i -= 1,
            Some((h, j)) => {
                if j == levels.len() {
                    let b = h.first_moved_point().expect("non-identity residue");
                    levels.push(Level::new(n, b));
                }
                for l in lvl + 1..=j {
                    levels[l].gens.push(h.clone());
                    levels[l].rebuild();
                }
                i = j + 1;
            }
        }
    }
    levels
}

fn failing_schreier_generator(levels: &[Level], lvl: usize) -> Option<(Permutation, usize)> {
    let level = &levels[lvl];
    for &b in &level.orbit {
        let ub = level.trans[b].as_ref().expect("orbit point has a transversal");
        for s in &level.gens {
            let c = s.image(b);
            let uc = level.trans[c].as_ref().expect("orbit is closed");
            let h = ub.then(s).then(&uc.inverse());
            if h.is_identity() {
                continue;
            }
            let (res, j) = sift_from(levels, lvl + 1, h);
            if j < levels.len() || !res.is_identity() {
                return Some((res, j));
            }
        }
    }
    None
}

/// Colors the ordered pairs by the orbits of the group on them.
pub fn two_orbit_graph(g: &PermGroup) -> ColorGraph {
    let n = g.degree();
    let mut uf = UnionFind::<u32>::new(n * n);
    for s in g.generators() {
        for x in 0..n {
            let sx = s.image(x);
            for y in 0..n {
                uf.union((x * n + y) as u32, (sx * n + s.image(y)) as u32);
            }
        }
    }
    let labels = uf.into_labeling();
    ColorGraph::from_keys(n, |x, y| labels[x * n + y])
}

/// Number of 2-orbits of the group generated by `gens` on `n` points.
pub fn two_orbit_rank(n: usize, gens: &[Permutation]) -> usize {
    let mut uf = UnionFind::<u32>::new(n * n);
    for s in gens {
        for x in 0..n {
            let sx = s.image(x);
            for y in 0..n {
                uf.union((x * n + y) as u32, (sx * n + s.image(y)) as u32);
            }
        }
    }
    let mut labels = uf.into_labeling();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}
