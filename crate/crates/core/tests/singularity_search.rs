mod common;

use common::{grid, quasi_homogeneous, TABLE};
use fuchsian_core::ktheory::Signature;
use fuchsian_core::search::{
    classify_genus_zero, enumerate_fuchsian_signatures, find_complete_intersections, find_hypersurfaces,
    SearchBounds, SearchOptions,
};
use fuchsian_core::singularity::{gorenstein_parameter, phi_t_consistency, GradedCI};

#[test]
fn table_entries_are_quasi_homogeneous() {
    for (f, degs, _, h) in TABLE {
        let ci: GradedCI = degs.parse().unwrap();
        let d = ci.generator_degrees();
        assert!(quasi_homogeneous(f, [d[0], d[1], d[2]], h as u32), "{f}");
        assert_eq!(ci.relation_degrees(), &[h as u32]);
    }
}

#[test]
fn table_rows_are_rediscovered() {
    let b = SearchBounds::default();
    for (f, degs, s, _) in TABLE {
        let ci: GradedCI = degs.parse().unwrap();
        let mut sorted = ci.generator_degrees().to_vec();
        sorted.sort_unstable();
        let want = GradedCI::new(sorted, ci.relation_degrees().to_vec()).unwrap();
        let found = find_hypersurfaces(&s.parse().unwrap(), &b).unwrap();
        assert!(found.contains(&want), "{f}: {found:?}");
    }
}

#[test]
fn product_identity_holds_and_bracket_form_never_does() {
    let sigs = grid(2, 3, 6, true);
    let mut bracket = 0;
    for s in &sigs {
        let c = phi_t_consistency(s).unwrap();
        assert!(c.product_agrees, "{s}");
        bracket += usize::from(c.bracket_agrees);
    }
    assert_eq!(bracket, 0);
}

#[test]
fn enumeration_matches_independent_grid() {
    let b = SearchBounds { max_genus: 2, max_weight_count: 4, max_weight: 7, max_generator_degree: 1 };
    let mut want = grid(2, 4, 7, true);
    want.sort();
    assert_eq!(enumerate_fuchsian_signatures(&b), want);
}

#[test]
fn search_is_order_and_pruning_independent() {
    let b = SearchBounds { max_generator_degree: 16, ..SearchBounds::default() };
    for s in ["0;2,5,6", "0;3,3,4", "0;2,2,2,2,3", "2;", "1;3", "0;2,3,10"] {
        let s: Signature = s.parse().unwrap();
        let pruned = find_complete_intersections(&s, &b, 1, SearchOptions::default()).unwrap();
        let brute = find_complete_intersections(&s, &b, 1, SearchOptions { prune: false, reverse: true }).unwrap();
        assert_eq!(pruned, brute, "{s}");
    }
}

#[test]
fn classification_entries_are_sound() {
    let r = classify_genus_zero(&SearchBounds::default()).unwrap();
    for e in &r.entries {
        assert_eq!(e.signature.genus(), 0);
        for ci in &e.candidates {
            assert_eq!(gorenstein_parameter(ci), -1);
        }
        // The indexed classification agrees with the per-signature search.
        assert_eq!(find_hypersurfaces(&e.signature, &r.bounds).unwrap(), e.candidates, "{}", e.signature);
    }
    let t237 = r.entries.iter().find(|e| e.signature.to_string() == "0;2,3,7").unwrap();
    assert_eq!(t237.candidates[0].to_string(), "6,14,21|42");
    assert!(r.to_table().contains("total: 22"));
}
