use biaffine::biaffine::*;
use biaffine::{compute_tensor, validate_color_graph, ColorGraph};

fn params(p: u32) -> SchemeParameters {
    SchemeParameters::new(p).unwrap()
}

#[test]
fn both_models_agree() {
    for p in [3, 5, 7] {
        let iso = models_isomorphic(&params(p)).unwrap();
        let (g1, _) = build_model_one(&params(p));
        let (g2, _) = build_model_two(&params(p));
        let s = &iso.vertex_map;
        for x in 0..g1.n() {
            for y in 0..g1.n() {
                assert_eq!(iso.color_map[g1.color(x, y) as usize], g2.color(s.image(x), s.image(y)));
            }
        }
    }
}

#[test]
fn model_one_is_a_coherent_configuration() {
    for p in [3, 5, 7] {
        let (g, desc) = build_model_one(&params(p));
        assert!(validate_color_graph(&g).is_valid());
        assert_eq!(g.diagonal_colors().len(), 2);
        let t = compute_tensor(&g).unwrap();
        assert!(t.identity_violations().is_empty());
        // every color has valency 1 or p
        for c in 0..t.rank() {
            let v = t.valency(c);
            assert!(v == 1 || v == p, "{} has valency {v}", desc.label(c as u32));
        }
    }
}

#[test]
fn tensor_matches_formulas_after_corrections() {
    for p in [3, 5, 7] {
        let pr = params(p);
        let (g, _) = build_model_one(&pr);
        let exp = expected_tensor(&pr, None);
        assert!(exp.compare(&compute_tensor(&g).unwrap()).exact());
        // the corrected cells are exactly the 2p² cells E·C→E and F·A→F
        assert_eq!(exp.corrections().len(), 2 * (p * p) as usize);
        for m in [Merging::M1, Merging::M3, Merging::M4] {
            let (g, _) = build_merging(&pr, m).unwrap();
            let cmp = expected_tensor(&pr, Some(m)).compare(&compute_tensor(&g).unwrap());
            assert!(cmp.exact(), "{m} p={p}: {:?}", cmp.mismatches.first());
        }
    }
}

#[test]
fn m2_table_discrepancies_are_exactly_the_known_cells() {
    for p in [3u32, 5, 7] {
        let pr = params(p);
        let (g, _) = build_merging(&pr, Merging::M2).unwrap();
        let cmp = expected_tensor(&pr, Some(Merging::M2)).compare(&compute_tensor(&g).unwrap());
        assert_eq!(cmp.mismatches.len(), 3 * pr.half() as usize);
        assert_eq!(cmp.ambiguous_disagreements().count(), 2 * pr.half() as usize);
    }
}

#[test]
fn merging_ranks_and_labels() {
    for p in [3, 5, 7, 11] {
        let pr = params(p);
        for m in Merging::ALL {
            let (g, desc) = build_merging(&pr, m).unwrap();
            assert_eq!(g.rank(), m.expected_rank(p));
            assert_eq!(desc.labels(), m.labels(&pr).as_slice());
            assert!(validate_color_graph(&g).is_valid());
            assert!(g.is_homogeneous());
        }
    }
    let pr = params(3);
    let m2 = build_merging(&pr, Merging::M2).unwrap().0;
    let m3 = build_merging(&pr, Merging::M3).unwrap().0;
    assert!(m2.same_partition(&m3));
    assert!(Merging::M2.warning(3).is_some());
}

#[test]
fn sidecar_round_trip() {
    let pr = params(5);
    let (g, desc) = build_merging(&pr, Merging::M4).unwrap();
    let back = SchemeDescriptor::parse_sidecar(pr, &desc.to_sidecar()).unwrap();
    assert_eq!(back.labels(), desc.labels());
    let g2 = ColorGraph::parse_text(&g.to_text()).unwrap();
    assert_eq!(g.cells(), g2.cells());
}

#[test]
fn heisenberg_two_orbits_are_model_one() {
    for p in [3, 5, 7] {
        let pr = params(p);
        let h = heisenberg_group(&pr);
        assert_eq!(h.order(), num_bigint::BigUint::from(p.pow(3)));
        let two = biaffine::two_orbit_graph(&h);
        assert!(two.same_partition(&build_model_one(&pr).0));
    }
}

#[test]
fn named_automorphisms() {
    let pr = params(5);
    let (m, _) = build_model_one(&pr);
    assert!(m.is_automorphism(&phi(&pr)));
    assert!(m.is_automorphism(&translation(&pr, 2, 3)));
    let m2 = build_merging(&pr, Merging::M2).unwrap().0;
    assert!(m2.is_automorphism(&pi(&pr)));
    let m4 = build_merging(&pr, Merging::M4).unwrap().0;
    assert!(m4.is_automorphism(&alpha(&pr)) && m4.is_automorphism(&beta(&pr)));
}

#[test]
fn non_prime_rejected() {
    for p in [0, 1, 2, 4, 9, 15] {
        assert!(SchemeParameters::new(p).is_err());
    }
}
