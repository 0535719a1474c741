//! Color graphs, color partitions and intersection tensors.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Dense color id.
pub type Color = u32;

/// A complete directed graph with loops whose arcs carry colors `0..rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorGraph {
    n: usize,
    rank: usize,
    cells: Vec<Color>,
}

impl ColorGraph {
    /// Builds a graph from a row-major cell vector. Every color below `rank` must occur.
    pub fn new(n: usize, rank: usize, cells: Vec<Color>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::Structure(format!(
                "expected {} cells for n = {n}, found {}",
                n * n,
                cells.len()
            )));
        }
        let mut used = vec![false; rank];
        for (idx, &c) in cells.iter().enumerate() {
            if c as usize >= rank {
                return Err(Error::Structure(format!(
                    "cell ({}, {}) has color {c} outside [0, {rank})",
                    idx / n.max(1),
                    idx % n.max(1)
                )));
            }
            used[c as usize] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::Structure(format!("color {c} does not occur")));
        }
        Ok(Self { n, rank, cells })
    }

    /// Builds a graph from a cell function returning colors in `[0, rank)`.
    pub fn from_fn(n: usize, rank: usize, f: impl Fn(usize, usize) -> Color) -> Result<Self> {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y));
            }
        }
        Self::new(n, rank, cells)
    }

    /// Builds a graph whose colors are the classes of the key function,
    /// numbered by first occurrence in a row-major scan.
    pub fn from_keys<K: Hash + Eq>(n: usize, f: impl Fn(usize, usize) -> K) -> Self {
        let mut ids: HashMap<K, Color> = HashMap::new();
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let next = ids.len() as Color;
                cells.push(*ids.entry(f(x, y)).or_insert(next));
            }
        }
        let rank = ids.len();
        Self { n, rank, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn color(&self, x: usize, y: usize) -> Color {
        self.cells[x * self.n + y]
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    pub fn row(&self, x: usize) -> &[Color] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }

    /// Same partition with colors renumbered by first row-major occurrence.
    pub fn renumbered(&self) -> ColorGraph {
        let mut map = vec![Color::MAX; self.rank];
        let mut next = 0;
        let cells = self
            .cells
            .iter()
            .map(|&c| {
                if map[c as usize] == Color::MAX {
                    map[c as usize] = next;
                    next += 1;
                }
                map[c as usize]
            })
            .collect();
        ColorGraph { n: self.n, rank: self.rank, cells }
    }

    /// The color bijection `self -> other` if both graphs induce the same partition of the cells.
    pub fn color_map_to(&self, other: &ColorGraph) -> Option<Vec<Color>> {
        if self.n != other.n || self.rank != other.rank {
            return None;
        }
        let mut fwd = vec![Color::MAX; self.rank];
        let mut bwd = vec![Color::MAX; self.rank];
        for (&a, &b) in self.cells.iter().zip(&other.cells) {
            let (ai, bi) = (a as usize, b as usize);
            if fwd[ai] == Color::MAX && bwd[bi] == Color::MAX {
                fwd[ai] = b;
                bwd[bi] = a;
            } else if fwd[ai] != b || bwd[bi] != a {
                return None;
            }
        }
        Some(fwd)
    }

    /// True if both graphs partition the cells identically.
    pub fn same_partition(&self, other: &ColorGraph) -> bool {
        self.color_map_to(other).is_some()
    }

    /// Applies a bijection of the colors.
    pub fn recolor(&self, map: &Permutation) -> Result<ColorGraph> {
        if map.degree() != self.rank {
            return Err(Error::Structure(format!(
                "color map of degree {} for rank {}",
                map.degree(),
                self.rank
            )));
        }
        let cells = self.cells.iter().map(|&c| map.image(c as usize) as Color).collect();
        Ok(ColorGraph { n: self.n, rank: self.rank, cells })
    }

    /// The graph `h` with `h(s(x), s(y)) = self(x, y)`.
    pub fn permute_vertices(&self, s: &Permutation) -> ColorGraph {
        let n = self.n;
        let mut cells = vec![0; n * n];
        for x in 0..n {
            let sx = s.image(x);
            for y in 0..n {
                cells[sx * n + s.image(y)] = self.cells[x * n + y];
            }
        }
        ColorGraph { n, rank: self.rank, cells }
    }

    /// True if `s` maps every cell to a cell of the same color.
    pub fn is_automorphism(&self, s: &Permutation) -> bool {
        let n = self.n;
        s.degree() == n
            && (0..n).all(|x| {
                let sx = s.image(x);
                (0..n).all(|y| self.cells[sx * n + s.image(y)] == self.cells[x * n + y])
            })
    }

    /// Cells of one color.
    pub fn relation(&self, c: Color) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n * n)
            .filter(|&i| self.cells[i] == c)
            .map(|i| (i / n, i % n))
            .collect()
    }

    /// Row-major 0/1 matrix of the union of the given colors.
    pub fn indicator(&self, colors: &[Color]) -> Vec<u8> {
        let mut member = vec![false; self.rank];
        for &c in colors {
            member[c as usize] = true;
        }
        self.cells.iter().map(|&c| member[c as usize] as u8).collect()
    }

    /// Sorted colors occurring on the diagonal.
    pub fn diagonal_colors(&self) -> Vec<Color> {
        let mut d: Vec<Color> = (0..self.n).map(|x| self.color(x, x)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diagonal_colors().len() == 1
    }

    /// True if every color is a symmetric relation.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.color(x, y) == self.color(y, x)))
    }

    /// Serializes to the text format: `n r` followed by `n` rows.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.rank);
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).iter().map(|c| c.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<ColorGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let nums = parse_numbers(header, hl + 1)?;
        if nums.len() != 2 {
            return Err(Error::Parse { line: hl + 1, msg: "header must be `n r`".into() });
        }
        let (n, rank) = (nums[0] as usize, nums[1] as usize);
        let mut cells = Vec::with_capacity(n * n);
        let mut rows = 0;
        for (ln, line) in lines {
            let row = parse_numbers(line, ln + 1)?;
            if row.len() != n {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("expected {n} entries, found {}", row.len()),
                });
            }
            cells.extend(row.into_iter().map(|c| c as Color));
            rows += 1;
        }
        if rows != n {
            return Err(Error::Parse { line: rows + 2, msg: format!("expected {n} rows, found {rows}") });
        }
        ColorGraph::new(n, rank, cells)
    }
}

fn parse_numbers(line: &str, ln: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|e| Error::Parse { line: ln, msg: format!("bad number {t:?}: {e}") })
        })
        .collect()
}

/// Result of checking axioms (i) and (ii) of a coherent configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Colors occurring both on and off the diagonal.
    pub impure_colors: Vec<Color>,
    /// Colors whose transposed cells do not form a single color.
    pub colors_without_transpose: Vec<Color>,
    /// `i -> i'`, present when every color has a transpose.
    pub transpose: Option<Vec<Color>>,
}

impl ValidationReport {
    pub fn diagonal_pure(&self) -> bool {
        self.impure_colors.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.impure_colors.is_empty() && self.transpose.is_some()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        if !self.impure_colors.is_empty() {
            write!(f, "colors mixing diagonal and off-diagonal cells: {:?}", self.impure_colors)?;
        }
        if !self.colors_without_transpose.is_empty() {
            if !self.impure_colors.is_empty() {
                write!(f, "; ")?;
            }
            write!(f, "colors without a transpose color: {:?}", self.colors_without_transpose)?;
        }
        Ok(())
    }
}

pub fn validate_color_graph(cg: &ColorGraph) -> ValidationReport {
    let (n, r) = (cg.n(), cg.rank());
    let mut on_diag = vec![false; r];
    let mut off_diag = vec![false; r];
    let mut tmap = vec![Color::MAX; r];
    let mut broken = vec![false; r];
    for x in 0..n {
        for y in 0..n {
            let c = cg.color(x, y) as usize;
            if x == y {
                on_diag[c] = true;
            } else {
                off_diag[c] = true;
            }
            let t = cg.color(y, x);
            if tmap[c] == Color::MAX {
                tmap[c] = t;
            } else if tmap[c] != t {
                broken[c] = true;
            }
        }
    }
    let impure_colors: Vec<Color> = (0..r).filter(|&c| on_diag[c] && off_diag[c]).map(|c| c as Color).collect();
    let colors_without_transpose: Vec<Color> = (0..r).filter(|&c| broken[c]).map(|c| c as Color).collect();
    let transpose = colors_without_transpose.is_empty().then_some(tmap);
    ValidationReport { impure_colors, colors_without_transpose, transpose }
}

/// Witness that some intersection number is not constant.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("not coherent: c[{i}][{j}]^{k} is {count1} at {pair1:?} but {count2} at {pair2:?}")]
pub struct NotCoherent {
    pub i: Color,
    pub j: Color,
    pub k: Color,
    pub pair1: (usize, usize),
    pub pair2: (usize, usize),
    pub count1: u32,
    pub count2: u32,
}

/// Structure constants `c_{ij}^k` of a coherent configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTensor {
    rank: usize,
    /// Indexed `k * r * r + i * r + j`.
    data: Vec<u32>,
    valencies: Vec<u32>,
    transpose: Vec<Color>,
    diagonal: Vec<bool>,
    /// Diagonal color of the fiber containing the tail (resp. head) of each color.
    tail: Vec<Color>,
    head: Vec<Color>,
}

impl IntersectionTensor {
    /// Assembles a tensor from a closure `c(i, j, k)`; fiber data is derived from the numbers.
    pub fn from_fn(rank: usize, diagonal: Vec<bool>, f: impl Fn(usize, usize, usize) -> u32) -> Result<Self> {
        if diagonal.len() != rank {
            return Err(Error::Structure("diagonal flags must have one entry per color".into()));
        }
        let mut data = vec![0; rank * rank * rank];
        for k in 0..rank {
            for i in 0..rank {
                for j in 0..rank {
                    data[k * rank * rank + i * rank + j] = f(i, j, k);
                }
            }
        }
        let diag: Vec<usize> = (0..rank).filter(|&d| diagonal[d]).collect();
        let at = |i: usize, j: usize, k: usize| data[k * rank * rank + i * rank + j];
        let mut tail = vec![Color::MAX; rank];
        let mut head = vec![Color::MAX; rank];
        for i in 0..rank {
            for &d in &diag {
                if at(d, i, i) == 1 {
                    tail[i] = d as Color;
                }
                if at(i, d, i) == 1 {
                    head[i] = d as Color;
                }
            }
        }
        if tail.contains(&Color::MAX) || head.contains(&Color::MAX) {
            return Err(Error::Structure("fibers cannot be recovered from the numbers".into()));
        }
        let mut transpose = vec![Color::MAX; rank];
        let mut valencies = vec![0; rank];
        for i in 0..rank {
            let d = tail[i] as usize;
            for j in 0..rank {
                if at(i, j, d) > 0 {
                    transpose[i] = j as Color;
                    valencies[i] = at(i, j, d);
                }
            }
        }
        if transpose.contains(&Color::MAX) {
            return Err(Error::Structure("transpose map cannot be recovered from the numbers".into()));
        }
        Ok(Self { rank, data, valencies, transpose, diagonal, tail, head })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[k * self.rank * self.rank + i * self.rank + j]
    }

    /// The `r × r` slab `(i, j) -> c_{ij}^k`.
    pub fn slab(&self, k: usize) -> &[u32] {
        let rr = self.rank * self.rank;
        &self.data[k * rr..(k + 1) * rr]
    }

    pub fn valency(&self, i: usize) -> u32 {
        self.valencies[i]
    }

    pub fn valencies(&self) -> &[u32] {
        &self.valencies
    }

    pub fn transpose(&self, i: usize) -> usize {
        self.transpose[i] as usize
    }

    pub fn is_diagonal(&self, i: usize) -> bool {
        self.diagonal[i]
    }

    /// Diagonal colors of the fibers containing tails and heads of color `i`.
    pub fn fibers(&self, i: usize) -> (usize, usize) {
        (self.tail[i] as usize, self.head[i] as usize)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diagonal.iter().filter(|&&d| d).count() == 1
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank;
        (0..r).all(|k| (0..r).all(|i| (0..i).all(|j| self.get(i, j, k) == self.get(j, i, k))))
    }

    /// True if `psi` (a permutation of the colors) preserves every structure constant.
    pub fn is_preserved_by(&self, psi: &Permutation) -> bool {
        let r = self.rank;
        psi.degree() == r
            && (0..r).all(|k| {
                let pk = psi.image(k);
                (0..r).all(|i| {
                    let pi = psi.image(i);
                    (0..r).all(|j| self.get(i, j, k) == self.get(pi, psi.image(j), pk))
                })
            })
    }

    /// Tensor of the merging by `part`, or `None` when the merging is not coherent.
    ///
    /// A merging is coherent iff the diagonal blocks are pure, blocks are closed under
    /// transposition, and the block sums of the structure constants are constant on blocks.
    pub fn merged(&self, part: &ColorPartition) -> Option<IntersectionTensor> {
        let r = self.rank;
        let b = part.num_blocks();
        let mut diagonal = vec![false; b];
        for (bi, block) in part.blocks().iter().enumerate() {
            let d = self.diagonal[block[0] as usize];
            if block.iter().any(|&c| self.diagonal[c as usize] != d) {
                return None;
            }
            diagonal[bi] = d;
            let t = part.block_of(self.transpose[block[0] as usize]);
            if block.iter().any(|&c| part.block_of(self.transpose[c as usize]) != t) {
                return None;
            }
        }
        // sums[K-rep][I][J] over one representative of each block, then constancy.
        let mut data = vec![0u32; b * b * b];
        let mut sums = vec![0u32; b * b];
        for (kb, kblock) in part.blocks().iter().enumerate() {
            for (idx, &k) in kblock.iter().enumerate() {
                sums.iter_mut().for_each(|s| *s = 0);
                let slab = self.slab(k as usize);
                for i in 0..r {
                    let bi = part.block_of(i as Color);
                    for j in 0..r {
                        let v = slab[i * r + j];
                        if v != 0 {
                            sums[bi * b + part.block_of(j as Color)] += v;
                        }
                    }
                }
                let out = &mut data[kb * b * b..(kb + 1) * b * b];
                if idx == 0 {
                    out.copy_from_slice(&sums);
                } else if out != &sums[..] {
                    return None;
                }
            }
        }
        IntersectionTensor::from_fn(b, diagonal, |i, j, k| data[k * b * b + i * b + j]).ok()
    }

    /// Checks the standard identities every tensor of a coherent configuration satisfies.
    /// Returns human-readable descriptions of violations.
    pub fn identity_violations(&self) -> Vec<String> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let (it, jt, kt) = (self.transpose(i), self.transpose(j), self.transpose(k));
                    if self.get(i, j, k) != self.get(jt, it, kt) {
                        out.push(format!("transpose symmetry fails at ({i},{j},{k})"));
                    }
                }
            }
        }
        for i in 0..r {
            let (ti, hi) = self.fibers(i);
            if self.get(i, self.transpose(i), ti) != self.valency(i) {
                out.push(format!("c[{i}][{i}']^diag differs from the valency"));
            }
            if self.transpose(self.transpose(i)) != i {
                out.push(format!("transpose of color {i} is not an involution"));
            }
            for k in 0..r {
                let row: u32 = (0..r).map(|j| self.get(i, j, k)).sum();
                let want = if self.fibers(k).0 == ti { self.valency(i) } else { 0 };
                if row != want {
                    out.push(format!("row sum of color {i} over k = {k} is {row}, expected {want}"));
                }
            }
            for j in 0..r {
                if self.fibers(j).0 != hi {
                    continue;
                }
                let lhs = self.valency(i) as u64 * self.valency(j) as u64;
                let rhs: u64 = (0..r).map(|k| self.get(i, j, k) as u64 * self.valency(k) as u64).sum();
                if lhs != rhs {
                    out.push(format!("valency product fails for ({i},{j})"));
                }
            }
        }
        out
    }
}

/// Computes all structure constants, checking constancy over every pair of each color.
pub fn compute_tensor(cg: &ColorGraph) -> Result<IntersectionTensor> {
    let report = validate_color_graph(cg);
    if !report.is_valid() {
        return Err(Error::Axiom(report));
    }
    let transpose = report.transpose.expect("valid report has a transpose map");
    let (n, r) = (cg.n(), cg.rank());
    let rr = r * r;
    let cells = cg.cells();
    let mut cols = vec![0 as Color; n * n];
    for x in 0..n {
        for y in 0..n {
            cols[y * n + x] = cells[x * n + y];
        }
    }
    let mut data = vec![0u32; r * rr];
    let mut rep: Vec<Option<(usize, usize)>> = vec![None; r];
    let mut nnz = vec![0usize; r];
    let mut scratch = vec![0u32; rr];
    let mut touched: Vec<usize> = Vec::with_capacity(n);
    for x in 0..n {
        let rowx = &cells[x * n..(x + 1) * n];
        for y in 0..n {
            let k = rowx[y] as usize;
            let coly = &cols[y * n..(y + 1) * n];
            touched.clear();
            for z in 0..n {
                let code = rowx[z] as usize * r + coly[z] as usize;
                if scratch[code] == 0 {
                    touched.push(code);
                }
                scratch[code] += 1;
            }
            let slab = &mut data[k * rr..(k + 1) * rr];
            match rep[k] {
                None => {
                    for &c in &touched {
                        slab[c] = scratch[c];
                    }
                    nnz[k] = touched.len();
                    rep[k] = Some((x, y));
                }
                Some(first) => {
                    let same = touched.len() == nnz[k] && touched.iter().all(|&c| slab[c] == scratch[c]);
                    if !same {
                        let c = (0..rr).find(|&c| slab[c] != scratch[c]).expect("a differing entry");
                        return Err(Error::NotCoherent(NotCoherent {
                            i: (c / r) as Color,
                            j: (c % r) as Color,
                            k: k as Color,
                            pair1: first,
                            pair2: (x, y),
                            count1: slab[c],
                            count2: scratch[c],
                        }));
                    }
                }
            }
            for &c in &touched {
                scratch[c] = 0;
            }
        }
    }
    let diagonal: Vec<bool> = (0..r).map(|c| {
        let (x, y) = rep[c].expect("every color occurs");
        x == y
    }).collect();
    let mut tail = vec![0; r];
    let mut head = vec![0; r];
    let mut valencies = vec![0; r];
    for c in 0..r {
        let (x, y) = rep[c].expect("every color occurs");
        tail[c] = cg.color(x, x);
        head[c] = cg.color(y, y);
        valencies[c] = cg.row(x).iter().filter(|&&d| d as usize == c).count() as u32;
    }
    Ok(IntersectionTensor { rank: r, data, valencies, transpose, diagonal, tail, head })
}

/// Partition of the colors `0..rank` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPartition {
    blocks: Vec<Vec<Color>>,
    block_of: Vec<u32>,
}

impl ColorPartition {
    /// Validates and canonicalizes: blocks sorted internally and by minimal member.
    pub fn new(rank: usize, mut blocks: Vec<Vec<Color>>) -> Result<Self> {
        let mut seen = vec![false; rank];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Structure("empty block".into()));
            }
            block.sort_unstable();
            for &c in block.iter() {
                let ci = c as usize;
                if ci >= rank {
                    return Err(Error::Structure(format!("color {c} outside [0, {rank})")));
                }
                if seen[ci] {
                    return Err(Error::Structure(format!("color {c} appears in two blocks")));
                }
                seen[ci] = true;
            }
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::Structure(format!("color {c} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![0; rank];
        for (bi, block) in blocks.iter().enumerate() {
            for &c in block {
                block_of[c as usize] = bi as u32;
            }
        }
        Ok(Self { blocks, block_of })
    }

    pub fn discrete(rank: usize) -> Self {
        Self { blocks: (0..rank as Color).map(|c| vec![c]).collect(), block_of: (0..rank as u32).collect() }
    }

    /// Groups colors with equal labels.
    pub fn from_labels<K: Hash + Eq>(labels: &[K]) -> Self {
        let mut ids: HashMap<&K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<Color>> = Vec::new();
        for (c, l) in labels.iter().enumerate() {
            let next = blocks.len();
            let b = *ids.entry(l).or_insert(next);
            if b == next {
                blocks.push(Vec::new());
            }
            blocks[b].push(c as Color);
        }
        Self::new(labels.len(), blocks).expect("labels give a valid partition")
    }

    pub fn rank(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<Color>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn block_of(&self, c: Color) -> usize {
        self.block_of[c as usize] as usize
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &ColorPartition) -> ColorPartition {
        let mut uf = petgraph::unionfind::UnionFind::<u32>::new(self.rank());
        for block in self.blocks.iter().chain(&other.blocks) {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        ColorPartition::from_labels(&uf.into_labeling())
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &ColorPartition) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&c| coarser.block_of(c) == coarser.block_of(b[0])))
    }

    /// Image of the partition under a color permutation.
    pub fn image(&self, psi: &Permutation) -> ColorPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&c| psi.image(c as usize) as Color).collect())
            .collect();
        ColorPartition::new(self.rank(), blocks).expect("image of a partition is a partition")
    }
}

/// Merges colors by blocks; block ids follow the canonical block order.
pub fn merge_colors(cg: &ColorGraph, part: &ColorPartition) -> Result<ColorGraph> {
    if part.rank() != cg.rank() {
        return Err(Error::Structure(format!(
            "partition covers {} colors but the graph has {}",
            part.rank(),
            cg.rank()
        )));
    }
    let cells = cg.cells().iter().map(|&c| part.block_of(c) as Color).collect();
    ColorGraph::new(cg.n(), part.num_blocks(), cells)
}
