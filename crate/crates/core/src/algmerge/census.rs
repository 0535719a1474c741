//! Census of the algebraic mergings of `M(p)` up to isomorphism.
//!
//! Orbit partitions of subgroups are exactly the joins of orbit partitions of cyclic
//! subgroups, so the join-closure of the cyclic ones (plus the discrete partition) lists
//! every algebraic merging. Partitions in one orbit of the color-automorphism image give
//! isomorphic configurations and are reduced first; the rest is settled by isomorphism
//! tests within buckets of equal invariants.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::orbit_partition;
use crate::autgrp::{
    algebraic_automorphism_group, automorphism_group_with_budget, color_automorphism_group, find_color_isomorphism,
    Budget,
};
use crate::biaffine::{build_model_one, SchemeParameters};
use crate::color::{compute_tensor, merge_colors, ColorGraph, ColorPartition, IntersectionTensor};
use crate::error::{Error, Result};

/// One isomorphism class of algebraic mergings.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    /// A representative partition of the colors of `M(p)`.
    pub partition: ColorPartition,
    pub rank: usize,
    pub homogeneous: bool,
    /// Partitions (before isomorphism reduction) represented by this class.
    pub partitions: usize,
    pub aut_order: Option<num_bigint::BigUint>,
    pub schurian: Option<bool>,
    pub aut_transitive: Option<bool>,
}

/// The columns CC, NCC, AS, Schur, NonSch, Intr.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusCounts {
    pub cc: usize,
    pub ncc: usize,
    pub schemes: usize,
    pub schurian: usize,
    pub non_schurian: usize,
    pub intransitive: usize,
}

impl std::fmt::Display for CensusCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CC {} NCC {} AS {} Schur {} NonSch {} Intr {}",
            self.cc, self.ncc, self.schemes, self.schurian, self.non_schurian, self.intransitive
        )
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub p: u32,
    /// Distinct orbit partitions of subgroups of `AAut(M)`.
    pub partitions: usize,
    pub entries: Vec<CensusEntry>,
    pub counts: CensusCounts,
    /// False if the budget ran out; the entries found so far are kept.
    pub complete: bool,
}

fn invariant_key(cg: &ColorGraph, t: &IntersectionTensor) -> Vec<u64> {
    let r = t.rank();
    let mut per_color: Vec<(bool, u32, u32, bool, Vec<u32>)> = (0..r)
        .map(|i| {
            let mut row: Vec<u32> = (0..r).flat_map(|j| (0..r).map(move |k| (j, k))).map(|(j, k)| t.get(i, j, k)).collect();
            row.sort_unstable();
            let (a, b) = t.fibers(i);
            (t.is_diagonal(i), t.valency(i), t.valency(a) + t.valency(b), t.transpose(i) == i, row)
        })
        .collect();
    per_color.sort();
    let mut key = vec![cg.n() as u64, r as u64];
    for (d, v, f, s, row) in per_color {
        key.extend([d as u64, v as u64, f as u64, s as u64]);
        key.extend(row.into_iter().map(u64::from));
    }
    key
}

/// Census of the algebraic mergings of `M(p)`. Every search runs under `budget`; when
/// it is exhausted the partial census is returned with `complete = false`.
pub fn merging_census(params: &SchemeParameters, budget: Budget) -> Result<Census> {
    let (m, _) = build_model_one(params);
    let t = compute_tensor(&m)?;
    let r = t.rank();
    let aaut = algebraic_automorphism_group(&t);
    let elements = aaut.group.elements();

    let cyclic: Vec<ColorPartition> = {
        let set: BTreeSet<ColorPartition> = elements.iter().map(|g| orbit_partition(r, std::slice::from_ref(g))).collect();
        set.into_iter().collect()
    };
    let mut all: HashSet<ColorPartition> = cyclic.iter().cloned().collect();
    all.insert(ColorPartition::discrete(r));
    let mut work: Vec<ColorPartition> = all.iter().cloned().collect();
    while let Some(pa) = work.pop() {
        for c in &cyclic {
            let j = pa.join(c);
            if all.insert(j.clone()) {
                work.push(j);
            }
        }
    }
    let partitions = all.len();

    let mut counts = CensusCounts::default();
    let mut entries: Vec<CensusEntry> = Vec::new();
    let caut = match color_automorphism_group(&m, budget) {
        Ok(c) => c,
        Err(Error::Budget { .. }) => return Ok(Census { p: params.p(), partitions, entries, counts, complete: false }),
        Err(e) => return Err(e),
    };
    let realized = caut.realized.elements();
    let mut reps: BTreeMap<ColorPartition, usize> = BTreeMap::new();
    for part in &all {
        let canon = realized.iter().map(|psi| part.image(psi)).min().expect("identity is realized");
        *reps.entry(canon).or_insert(0) += 1;
    }

    // isomorphism classes within invariant buckets
    let mut buckets: BTreeMap<Vec<u64>, Vec<(usize, ColorGraph)>> = BTreeMap::new();
    let mut complete = true;
    'outer: for (part, count) in reps {
        let merged_t = t.merged(&part).ok_or_else(|| Error::Check("algebraic merging is not coherent".into()))?;
        let g = merge_colors(&m, &part)?;
        let key = invariant_key(&g, &merged_t);
        let bucket = buckets.entry(key).or_default();
        for (idx, h) in bucket.iter() {
            match find_color_isomorphism(h, &g, budget) {
                Ok(Some(_)) => {
                    entries[*idx].partitions += count;
                    continue 'outer;
                }
                Ok(None) => {}
                Err(Error::Budget { .. }) => {
                    complete = false;
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
        let homogeneous = merged_t.is_homogeneous();
        let mut entry = CensusEntry {
            partition: part,
            rank: merged_t.rank(),
            homogeneous,
            partitions: count,
            aut_order: None,
            schurian: None,
            aut_transitive: None,
        };
        if homogeneous {
            match automorphism_group_with_budget(&g, budget) {
                Ok(aut) => {
                    entry.aut_order = Some(aut.order);
                    entry.schurian = Some(aut.rank_of_group == merged_t.rank());
                    entry.aut_transitive = Some(aut.group.orbits().len() == 1);
                }
                Err(Error::Budget { .. }) => {
                    complete = false;
                    break 'outer;
                }
                Err(e) => return Err(e),
            }
        }
        bucket.push((entries.len(), g));
        entries.push(entry);
    }

    for e in &entries {
        counts.cc += 1;
        if !e.homogeneous {
            counts.ncc += 1;
            continue;
        }
        counts.schemes += 1;
        match e.schurian {
            Some(true) => counts.schurian += 1,
            Some(false) => {
                counts.non_schurian += 1;
                if e.aut_transitive == Some(false) {
                    counts.intransitive += 1;
                }
            }
            None => {}
        }
    }
    Ok(Census { p: params.p(), partitions, entries, counts, complete })
}
