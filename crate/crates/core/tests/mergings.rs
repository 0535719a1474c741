use biaffine::algmerge::*;
use biaffine::autgrp::*;
use biaffine::biaffine::*;
use biaffine::compute_tensor;
use num_bigint::BigUint;

fn params(p: u32) -> SchemeParameters {
    SchemeParameters::new(p).unwrap()
}

#[test]
fn named_subgroups_give_the_mergings() {
    for p in [3, 5, 7] {
        let pr = params(p);
        let (m, _) = build_model_one(&pr);
        let gens = build_generators(&pr).unwrap();
        for (k, w) in [Subgroup::K1, Subgroup::K2, Subgroup::K3, Subgroup::K4].into_iter().zip(Merging::ALL) {
            let (g, part) = algebraic_merging(&m, &k.generators(&gens)).unwrap();
            assert!(g.same_partition(&build_merging(&pr, w).unwrap().0), "{k:?} p={p}");
            assert_eq!(part.num_blocks(), w.expected_rank(p));
        }
    }
}

#[test]
fn stabilizers() {
    for p in [3u64, 5, 7] {
        let pr = params(p as u32);
        let (m, _) = build_model_one(&pr);
        let aa = algebraic_automorphism_group(&compute_tensor(&m).unwrap());
        for (w, o) in Merging::ALL.into_iter().zip([2, 4, 2 * (p - 1), 8 * (p - 1)]) {
            let part = partition_of_labels(&pr, &w.labels(&pr)).unwrap();
            let st = algebraic_stabilizer(&part, &aa);
            assert_eq!(st.order(), BigUint::from(o), "{w} p={p}");
            assert!(st.is_subgroup_of(&partition_stabilizer(&part, &aa)));
        }
    }
}

#[test]
fn n6_structure() {
    for p in [3u32, 5, 7] {
        let (g, desc) = build_n6(&params(p)).unwrap();
        assert_eq!(g.rank(), 6);
        assert_eq!(g.is_symmetric(), p % 4 == 1);
        assert_eq!(desc.labels(), n6_labels().as_slice());
        assert!(compute_tensor(&g).unwrap().is_commutative());
    }
}

#[test]
fn n51_at_seven() {
    let pr = params(7);
    let five = rank_five_mergings(&pr).unwrap();
    assert_eq!(five.parent.rank(), 8);
    assert_eq!(five.non_schurian.len(), 2);
    let n = build_n5_1(&pr).unwrap();
    assert_eq!(n.graph.rank(), 5);
    assert!(!is_schurian(&n.graph).unwrap().is_schurian());
}

#[test]
fn no_non_schurian_rank_five_at_five() {
    let five = rank_five_mergings(&params(5)).unwrap();
    assert_eq!(five.non_schurian.len(), 0);
    assert_eq!(five.schurian.len(), 3);
    assert!(build_n5_1(&params(5)).is_err());
}

#[test]
fn census_small_primes() {
    let c = merging_census(&params(3), Budget::unlimited()).unwrap();
    assert!(c.complete);
    assert_eq!(c.partitions, 54);
    // the intransitive non-Schurian scheme at p = 3 is the rank-8 merging with |Aut| = 27
    assert_eq!(c.counts.to_string(), "CC 22 NCC 12 AS 10 Schur 8 NonSch 2 Intr 1");
    let intr: Vec<_> = c.entries.iter().filter(|e| e.aut_transitive == Some(false)).collect();
    assert_eq!(intr.len(), 1);
    assert_eq!(intr[0].rank, 8);
    assert_eq!(intr[0].aut_order, Some(BigUint::from(27u32)));

    let c = merging_census(&params(5), Budget::unlimited()).unwrap();
    assert_eq!(c.counts.to_string(), "CC 60 NCC 36 AS 24 Schur 18 NonSch 6 Intr 3");
}
