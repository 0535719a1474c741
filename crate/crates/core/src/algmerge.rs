//! Algebraic mergings of `M(p)`: the generators `g1`–`g5` of its algebraic automorphism
//! group, the subgroups giving `M1`–`M4` and `N6`, the rank-5 mergings `N5.1`, algebraic
//! stabilizers, and the census of all algebraic mergings.

mod census;

pub use census::{merging_census, Census, CensusCounts, CensusEntry};

use crate::arith::{primitive_roots, smallest_primitive_root};
use crate::autgrp::{automorphism_group, AAutResult};
use crate::biaffine::{
    build_labelled_merging, build_model_one, partition_of_labels, Label, SchemeDescriptor, SchemeParameters,
};
use crate::color::{compute_tensor, merge_colors, Color, ColorGraph, ColorPartition, IntersectionTensor};
use crate::error::{Error, Result};
use crate::perm::{two_orbit_graph, PermGroup, Permutation};
use crate::spectra::{spectrum, IntMatrix, Surd};

/// The five color permutations generating `AAut(M(p))`.
#[derive(Clone, Debug)]
pub struct AAutGenerators {
    pub omega: u32,
    pub g: [Permutation; 5],
}

impl AAutGenerators {
    pub fn g1(&self) -> &Permutation {
        &self.g[0]
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.g[0].degree(), self.g.to_vec()).expect("same degree")
    }
}

/// Color permutation of `M(p)` given on labels.
fn label_map(params: &SchemeParameters, f: impl Fn(Label) -> Label) -> Permutation {
    let r = params.base_rank();
    Permutation::from_fn(r, |c| {
        let l = Label::from_base_index(params, c as Color);
        f(l).base_index(params).expect("base label") as usize
    })
    .expect("label map is a bijection")
}

/// `g1`–`g5` for the primitive root `omega`, each checked against `tensor`.
pub fn build_generators_with(params: &SchemeParameters, omega: u32, tensor: &IntersectionTensor) -> Result<AAutGenerators> {
    let p = params.p();
    let m = |a: i64| params.m(a);
    let w = |i: u32| m(omega as i64 * i as i64);
    let g1 = label_map(params, |l| match l {
        Label::A(i) => Label::C(i),
        Label::C(i) => Label::A(i),
        Label::B(i) => Label::D(i),
        Label::D(i) => Label::B(i),
        Label::E(i) => Label::F(i),
        Label::F(i) => Label::E(i),
        other => other,
    });
    let g2 = label_map(params, |l| match l {
        Label::E(i) => Label::E(m(i as i64 - 1)),
        Label::F(i) => Label::F(m(i as i64 + 1)),
        other => other,
    });
    let g3 = label_map(params, |l| match l {
        Label::A(i) => Label::A(w(i)),
        Label::C(i) => Label::C(w(i)),
        Label::E(i) => Label::E(w(i)),
        Label::F(i) => Label::F(w(i)),
        other => other,
    });
    let g4 = label_map(params, |l| match l {
        Label::B(i) => Label::B(w(i)),
        other => other,
    });
    let g5 = label_map(params, |l| match l {
        Label::D(i) => Label::D(w(i)),
        other => other,
    });
    let g = [g1, g2, g3, g4, g5];
    for (i, gi) in g.iter().enumerate() {
        if !tensor.is_preserved_by(gi) {
            return Err(Error::Check(format!("g{} does not preserve the tensor of M({p})", i + 1)));
        }
    }
    Ok(AAutGenerators { omega, g })
}

/// `g1`–`g5` for the smallest primitive root.
pub fn build_generators(params: &SchemeParameters) -> Result<AAutGenerators> {
    let (m, _) = build_model_one(params);
    let t = compute_tensor(&m)?;
    build_generators_with(params, smallest_primitive_root(params.p()), &t)
}

/// `α: T_i -> T_{iω}` and `β: S_i -> S_{iω}, U_i -> U_{iω}` on the colors of `M1(p)`,
/// checked against its tensor.
pub fn m1_generators(params: &SchemeParameters) -> Result<(Permutation, Permutation)> {
    let (g, desc) = build_labelled_merging(params, &crate::biaffine::Merging::M1.labels(params))?;
    let t = compute_tensor(&g)?;
    let omega = smallest_primitive_root(params.p()) as i64;
    let on_labels = |f: &dyn Fn(Label) -> Label| {
        Permutation::from_fn(desc.rank(), |c| {
            desc.color(f(desc.label(c as Color))).expect("label of M1") as usize
        })
    };
    let w = |i: u32| params.m(omega * i as i64);
    let alpha = on_labels(&|l| match l {
        Label::T(i) => Label::T(w(i)),
        other => other,
    })?;
    let beta = on_labels(&|l| match l {
        Label::S(i) => Label::S(w(i)),
        Label::U(i) => Label::U(w(i)),
        other => other,
    })?;
    for (name, g) in [("α", &alpha), ("β", &beta)] {
        if !t.is_preserved_by(g) {
            return Err(Error::Check(format!("{name} does not preserve the tensor of M1({})", params.p())));
        }
    }
    Ok((alpha, beta))
}

/// The named subgroups of `AAut(M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subgroup {
    K1,
    K2,
    K3,
    K4,
    N6,
}

impl Subgroup {
    pub const ALL: [Subgroup; 5] = [Subgroup::K1, Subgroup::K2, Subgroup::K3, Subgroup::K4, Subgroup::N6];

    pub fn generators(&self, gens: &AAutGenerators) -> Vec<Permutation> {
        let [g1, _, g3, g4, g5] = &gens.g;
        let q = (g3.order() / 2) as i64;
        match self {
            Subgroup::K1 => vec![g1.clone()],
            Subgroup::K2 => vec![g1.clone(), g3.pow(q)],
            Subgroup::K3 => vec![g1.clone(), g3.clone()],
            Subgroup::K4 => vec![g1.clone(), g3.clone(), g4.pow(q), g5.pow(q)],
            Subgroup::N6 => vec![g1.clone(), g3.clone(), g4.pow(2), g5.pow(2)],
        }
    }
}

impl std::str::FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K1" => Ok(Subgroup::K1),
            "K2" => Ok(Subgroup::K2),
            "K3" => Ok(Subgroup::K3),
            "K4" => Ok(Subgroup::K4),
            "N6" => Ok(Subgroup::N6),
            _ => Err(Error::Parse { line: 1, msg: format!("unknown subgroup {s:?}") }),
        }
    }
}

/// Orbits of a group of color permutations, as a partition.
pub fn orbit_partition(rank: usize, gens: &[Permutation]) -> ColorPartition {
    let mut uf = petgraph::unionfind::UnionFind::<u32>::new(rank);
    for g in gens {
        for c in 0..rank {
            uf.union(c as u32, g.image(c) as u32);
        }
    }
    ColorPartition::from_labels(&uf.into_labeling())
}

/// Merges `cg` along the color orbits of the group generated by `gens`, which must
/// preserve the tensor of `cg`. The result is checked to be coherent.
pub fn algebraic_merging(cg: &ColorGraph, gens: &[Permutation]) -> Result<(ColorGraph, ColorPartition)> {
    let t = compute_tensor(cg)?;
    if let Some(i) = gens.iter().position(|g| g.degree() != cg.rank() || !t.is_preserved_by(g)) {
        return Err(Error::NotAlgebraic(format!("generator {i} does not preserve the tensor")));
    }
    let part = orbit_partition(cg.rank(), gens);
    let merged = merge_colors(cg, &part)?;
    compute_tensor(&merged)?;
    Ok((merged, part))
}

/// Labels of `N6` in canonical block order.
pub fn n6_labels() -> Vec<Label> {
    vec![Label::R0, Label::SAll, Label::TSquares, Label::TNonSquares, Label::U(0), Label::UAll]
}

/// `N6`: the merging of `M(p)` along `⟨g1, g3, g4², g5²⟩`, labelled by the symbolic
/// relations; the orbit partition is checked against the labels.
pub fn build_n6(params: &SchemeParameters) -> Result<(ColorGraph, SchemeDescriptor)> {
    let (m, _) = build_model_one(params);
    let t = compute_tensor(&m)?;
    let gens = build_generators_with(params, smallest_primitive_root(params.p()), &t)?;
    let (merged, part) = algebraic_merging(&m, &Subgroup::N6.generators(&gens))?;
    if part != partition_of_labels(params, &n6_labels())? {
        return Err(Error::Check("orbits of the N6 subgroup differ from the labelled relations".into()));
    }
    let (g, desc) = build_labelled_merging(params, &n6_labels())?;
    debug_assert_eq!(g, merged);
    Ok((g, desc))
}

/// Rank-5 coherent mergings of a rank-8 scheme, split by the Schurian test.
#[derive(Clone, Debug)]
pub struct RankFiveMergings {
    /// The scheme of 2-orbits of `Aut(N6)`.
    pub parent: ColorGraph,
    pub schurian: Vec<ColorPartition>,
    pub non_schurian: Vec<ColorPartition>,
}

/// All transpose-closed partitions of the parent's colors into `blocks` blocks that keep
/// the diagonal color alone and give a coherent merging.
pub fn coherent_mergings_of_rank(parent: &ColorGraph, rank: usize) -> Result<Vec<ColorPartition>> {
    let t = compute_tensor(parent)?;
    let r = parent.rank();
    let diag: Vec<Color> = parent.diagonal_colors();
    let others: Vec<Color> = (0..r as Color).filter(|c| !diag.contains(c)).collect();
    let need = rank - diag.len();
    let mut out = Vec::new();
    let mut assign = vec![0usize; others.len()];
    set_partitions(others.len(), need, &mut assign, 0, 0, &mut |a| {
        let mut blocks: Vec<Vec<Color>> = diag.iter().map(|&d| vec![d]).collect();
        let mut extra = vec![Vec::new(); need];
        for (i, &b) in a.iter().enumerate() {
            extra[b].push(others[i]);
        }
        blocks.extend(extra);
        let part = ColorPartition::new(r, blocks).expect("valid blocks");
        if t.merged(&part).is_some() {
            out.push(part);
        }
    });
    Ok(out)
}

/// Restricted-growth enumeration of set partitions of `0..n` into exactly `k` blocks.
fn set_partitions(n: usize, k: usize, a: &mut Vec<usize>, i: usize, used: usize, f: &mut impl FnMut(&[usize])) {
    if i == n {
        if used == k {
            f(a);
        }
        return;
    }
    if k - used > n - i {
        return;
    }
    for b in 0..=used.min(k - 1) {
        a[i] = b;
        set_partitions(n, k, a, i + 1, used.max(b + 1), f);
    }
}

/// The rank-8 scheme of `Aut(N6)` and its rank-5 coherent mergings.
pub fn rank_five_mergings(params: &SchemeParameters) -> Result<RankFiveMergings> {
    let (n6, _) = build_n6(params)?;
    let aut = automorphism_group(&n6);
    let parent = two_orbit_graph(&aut.group);
    let mut schurian = Vec::new();
    let mut non_schurian = Vec::new();
    for part in coherent_mergings_of_rank(&parent, 5)? {
        let g = merge_colors(&parent, &part)?;
        if crate::autgrp::is_schurian(&g)?.is_schurian() {
            schurian.push(part);
        } else {
            non_schurian.push(part);
        }
    }
    Ok(RankFiveMergings { parent, schurian, non_schurian })
}

/// `N5.1` with its basic graphs ordered as `Λ1..Λ5`: identity, then valencies `p−1`,
/// `p(p−1)`, `p(p−1)/2`, `p(p+1)/2`.
#[derive(Clone, Debug)]
pub struct N51 {
    pub graph: ColorGraph,
    /// `order[i]` is the color of `Λ_{i+1}`.
    pub order: Vec<Color>,
    /// The other non-Schurian rank-5 merging(s).
    pub others: Vec<ColorGraph>,
}

/// Picks, among the non-Schurian rank-5 mergings, the one with a basic graph having
/// eigenvalue `p(p−1)` of multiplicity 2 and `−p` of multiplicity `2p−2`.
pub fn build_n5_1(params: &SchemeParameters) -> Result<N51> {
    let five = rank_five_mergings(params)?;
    if five.non_schurian.is_empty() {
        return Err(Error::Check(format!("no non-Schurian rank-5 merging at p = {}", params.p())));
    }
    let p = params.p() as i64;
    let mut chosen = None;
    let mut others = Vec::new();
    for part in &five.non_schurian {
        let g = merge_colors(&five.parent, part)?;
        let t = compute_tensor(&g)?;
        let lam3 = (0..g.rank()).find(|&c| {
            !t.is_diagonal(c) && t.valency(c) as i64 == p * (p - 1) && {
                let s = spectrum(&IntMatrix::adjacency(&g, &[c as Color]));
                s.multiplicity_of(&Surd::integer(p * (p - 1))) == 2
                    && s.multiplicity_of(&Surd::integer(-p)) == 2 * p as usize - 2
            }
        });
        match (lam3, &chosen) {
            (Some(_), None) => chosen = Some((g, t)),
            _ => others.push(g),
        }
    }
    let (graph, t) = chosen.ok_or_else(|| Error::Check("no rank-5 merging has the Λ3 spectrum".into()))?;
    let want = [p - 1, p * (p - 1), p * (p - 1) / 2, p * (p + 1) / 2];
    let mut order = vec![graph.diagonal_colors()[0]];
    for v in want {
        let c = (0..graph.rank())
            .find(|&c| !t.is_diagonal(c) && t.valency(c) as i64 == v && !order.contains(&(c as Color)))
            .ok_or_else(|| Error::Check(format!("no basic graph of valency {v}")))?;
        order.push(c as Color);
    }
    Ok(N51 { graph, order, others })
}

/// Largest subgroup of the algebraic automorphism group mapping every block of `part`
/// onto itself.
pub fn algebraic_stabilizer(part: &ColorPartition, aaut: &AAutResult) -> PermGroup {
    let gens: Vec<Permutation> = aaut
        .group
        .elements()
        .into_iter()
        .filter(|g| (0..part.rank() as Color).all(|c| part.block_of(g.image(c as usize) as Color) == part.block_of(c)))
        .collect();
    PermGroup::new(part.rank(), gens).expect("same degree")
}

/// Elements of the algebraic automorphism group permuting the blocks of `part` among
/// themselves.
pub fn partition_stabilizer(part: &ColorPartition, aaut: &AAutResult) -> PermGroup {
    let gens: Vec<Permutation> = aaut.group.elements().into_iter().filter(|g| part.image(g) == *part).collect();
    PermGroup::new(part.rank(), gens).expect("same degree")
}

/// All primitive roots give the same generated group and the same subgroup orbits.
pub fn generators_independent_of_root(params: &SchemeParameters, tensor: &IntersectionTensor) -> Result<bool> {
    let roots = primitive_roots(params.p());
    let base = build_generators_with(params, roots[0], tensor)?;
    let base_group = base.group();
    for &w in &roots[1..] {
        let other = build_generators_with(params, w, tensor)?;
        let og = other.group();
        if !(og.is_subgroup_of(&base_group) && base_group.is_subgroup_of(&og)) {
            return Ok(false);
        }
        for k in Subgroup::ALL {
            let a = PermGroup::new(params.base_rank(), k.generators(&base))?;
            let b = PermGroup::new(params.base_rank(), k.generators(&other))?;
            if !(a.is_subgroup_of(&b) && b.is_subgroup_of(&a)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
