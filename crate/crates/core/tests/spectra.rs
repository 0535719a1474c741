use biaffine::algmerge::{build_n6, n6_labels};
use biaffine::biaffine::*;
use biaffine::spectra::templates::{announcement2, appendix3};
use biaffine::spectra::*;
use num_bigint::BigInt;

/// Direct Leibniz-free oracle: charpoly by the Faddeev–LeVerrier recurrence.
fn faddeev_leverrier(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.n();
    let mut c = vec![BigInt::from(0); n + 1];
    c[n] = BigInt::from(1);
    let mut m = vec![BigInt::from(0); n * n];
    for k in 1..=n {
        let mut next = vec![BigInt::from(0); n * n];
        for i in 0..n {
            for l in 0..n {
                let x = a.get(i, l);
                if x != 0 {
                    for j in 0..n {
                        next[i * n + j] += &m[l * n + j] * x;
                    }
                }
            }
            next[i * n + i] += &c[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::from(0);
        for i in 0..n {
            for l in 0..n {
                tr += &m[l * n + i] * a.get(i, l);
            }
        }
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

#[test]
fn charpoly_matches_oracle_on_scheme_colors() {
    let pr = SchemeParameters::new(3).unwrap();
    let (g, _) = build_model_one(&pr);
    for c in 0..g.rank() as u32 {
        let a = IntMatrix::adjacency(&g, &[c]);
        assert_eq!(char_poly(&a).coeffs(), faddeev_leverrier(&a).as_slice());
    }
    let a = IntMatrix::adjacency(&g, &[1, 4, 7, 11]);
    assert_eq!(char_poly(&a).coeffs(), faddeev_leverrier(&a).as_slice());
}

#[test]
fn appendix3_rows_at_three() {
    let pr = SchemeParameters::new(3).unwrap();
    for w in Merging::ALL {
        let (g, desc) = build_merging(&pr, w).unwrap();
        for table in appendix3(3, w) {
            for &l in &table.labels {
                let a = IntMatrix::adjacency(&g, &[desc.color(l).unwrap()]);
                let chi = char_poly(&a);
                assert!(table.template.compare(&chi).matches(), "{w} {l}");
                assert_eq!(spectrum_of_charpoly(chi, a.spectral_bound()).total_multiplicity(), 18);
            }
        }
    }
}

#[test]
fn n6_spectra_at_five() {
    let pr = SchemeParameters::new(5).unwrap();
    let (g, desc) = build_n6(&pr).unwrap();
    for (t, l) in announcement2(5).iter().zip(n6_labels()) {
        let chi = char_poly(&IntMatrix::adjacency(&g, &[desc.color(l).unwrap()]));
        assert!(t.compare(&chi).matches(), "{l}");
    }
}

#[test]
fn n6_gauss_period_eigenvalues_at_seven() {
    // (p/2)(−1 ± √p*) with p* = −7
    let pr = SchemeParameters::new(7).unwrap();
    let (g, desc) = build_n6(&pr).unwrap();
    let rep = spectrum(&IntMatrix::adjacency(&g, &[desc.color(n6_labels()[2]).unwrap()]));
    assert_eq!(rep.multiplicity_of(&Surd::new(-7, 7, -7, 2)), 6);
    assert_eq!(rep.multiplicity_of(&Surd::new(-7, -7, -7, 2)), 6);
}
