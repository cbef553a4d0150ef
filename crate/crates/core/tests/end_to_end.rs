use num_bigint::BigInt;

use fourier_minors::bounds::{compute_bound, first_admissible_prime, BoundMethod};
use fourier_minors::cyclo_factor::{coset_table, is_primitive, FieldSetup};
use fourier_minors::enumerate::k_subsets;
use fourier_minors::minors::{minor_det, minor_vanishes, verify_all_minors, Context};
use fourier_minors::schur::jacobi_trudi_spec;
use fourier_minors::{IndexSet, RunOptions};

fn sets(p: usize) -> Vec<IndexSet> {
    (1..=p).flat_map(|k| k_subsets(p, k)).map(|m| IndexSet::from_mask(p, m)).collect()
}

#[test]
fn minors_nonzero_above_both_bounds() {
    let opts = RunOptions::default();
    for p in [2usize, 3, 5, 7] {
        for method in [BoundMethod::New, BoundMethod::Zhang] {
            let bound = compute_bound(p, method, &opts).unwrap();
            let q = first_admissible_prime(p, &bound.value).unwrap();
            assert!(is_primitive(q, p as u64));
            let report = verify_all_minors(&Context::finite(p, q).unwrap(), &opts).unwrap();
            assert!(report.verified, "p = {p}, q = {q} ({method})");
            assert_eq!(report.minors_checked, report.raw_minors);
        }
    }
}

#[test]
fn pruned_scan_matches_full_scan() {
    let opts = RunOptions::default();
    for (p, q) in [(5usize, 2u64), (5, 3), (7, 2), (7, 3), (7, 5)] {
        let ctx = Context::finite(p, q).unwrap();
        let all = sets(p);
        let mut vanishing = Vec::new();
        for a in &all {
            for b in all.iter().filter(|b| b.len() == a.len()) {
                if minor_vanishes(&ctx, a, b).unwrap() {
                    vanishing.push((a.clone(), b.clone()));
                }
            }
        }
        let report = verify_all_minors(&ctx, &opts).unwrap();
        assert_eq!(report.verified, vanishing.is_empty(), "p = {p}, q = {q}");
        if let Some(v) = report.first_violation {
            let a = IndexSet::new(p, v.rows).unwrap();
            let b = IndexSet::new(p, v.cols).unwrap();
            assert!(vanishing.contains(&(a, b)));
        }
    }
}

#[test]
fn violations_in_small_fields_confirmed_by_elimination() {
    for (p, q) in [(5usize, 2u64), (7, 2), (7, 3), (11, 2)] {
        let setup = FieldSetup::build(p, q).unwrap();
        let report = verify_all_minors(&Context::Finite(setup.clone()), &RunOptions::default()).unwrap();
        if let Some(v) = report.first_violation {
            let a = IndexSet::new(p, v.rows).unwrap();
            let b = IndexSet::new(p, v.cols).unwrap();
            assert!(minor_det(&setup, &a, &b).unwrap().is_zero(), "p = {p}, q = {q}");
        }
    }
}

#[test]
fn coset_counts_partition_the_spectrum() {
    for (p, q) in [(7usize, 2u64), (7, 11), (11, 3), (13, 3)] {
        let cosets = coset_table(p, q).unwrap();
        let all = sets(p);
        for a in all.iter().step_by(7) {
            for b in all.iter().filter(|b| b.len() == a.len()).step_by(5) {
                let spec = jacobi_trudi_spec(a, b).unwrap();
                let counts = spec.coset_counts(&cosets);
                let sum: BigInt = counts.values().sum();
                assert_eq!(sum + spec.m_count(), spec.total(), "p = {p}, A = {a}, B = {b}");
                assert_eq!(counts.len(), (p - 1) / cosets.r);
            }
        }
    }
}
