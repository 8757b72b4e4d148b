use proptest::prelude::*;

use regdigraph::formats::{read_reg, write_reg};
use regdigraph::{
    apply_permutation, automorphism_group, canonical_form, canonical_labeling, enumerate_unlabeled, render_term,
    Digraph, EnumerationFilter, GraphRecord, Permutation, TensorTerm,
};

/// A random 2-regular digraph: a union of two random permutation matrices.
fn two_regular() -> impl Strategy<Value = Digraph> {
    (1usize..=7).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (perm.clone(), perm).prop_map(move |(a, b)| {
            let arcs: Vec<(usize, usize)> = (0..n).flat_map(|i| [(i, a[i]), (i, b[i])]).collect();
            Digraph::from_arc_list(&arcs.into(), n).unwrap()
        })
    })
}

fn with_permutation() -> impl Strategy<Value = (Digraph, Permutation)> {
    two_regular().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|(g, p)| (g, Permutation::new(p).unwrap()))
    })
}

proptest! {
    #[test]
    fn invariants_survive_relabeling((g, p) in with_permutation()) {
        let h = apply_permutation(&g, &p).unwrap();
        prop_assert_eq!(h.loop_count(), g.loop_count());
        prop_assert_eq!(h.multiarc_count(), g.multiarc_count());
        prop_assert_eq!(h.weak_components().count, g.weak_components().count);
        prop_assert_eq!(canonical_form(&h), canonical_form(&g));
        prop_assert_eq!(automorphism_group(&h).order(), automorphism_group(&g).order());
    }

    #[test]
    fn canonical_labeling_reproduces_form(g in two_regular()) {
        let lab = canonical_labeling(&g);
        prop_assert!(lab.group.is_group());
        prop_assert!(lab.group.elements().iter().all(|a| apply_permutation(&g, a).unwrap() == g));
        prop_assert_eq!(canonical_form(&lab.form), lab.form.clone());
    }

    #[test]
    fn arc_list_round_trip(g in two_regular()) {
        let back = Digraph::from_arc_list(&g.to_arc_list(), g.n()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn tensor_term_round_trip(g in two_regular()) {
        let term = render_term(&g).unwrap();
        prop_assert!(term.is_fully_contracted());
        prop_assert_eq!(term.self_contractions(), g.loop_count());
        let parsed: TensorTerm = term.to_string().parse().unwrap();
        prop_assert_eq!(parsed.to_digraph().unwrap(), g);
    }

    #[test]
    fn reg_record_round_trip(g in two_regular()) {
        let rec = GraphRecord::from_graph(&g);
        let text = write_reg(std::slice::from_ref(&rec));
        let back = read_reg(&text).unwrap();
        prop_assert_eq!(back.len(), 1);
        prop_assert_eq!(&back[0].graph, &rec.graph);
        prop_assert_eq!(canonical_form(&back[0].graph), canonical_form(&g));
        prop_assert_eq!(write_reg(&back), text);
    }

    #[test]
    fn cycle_index_text_round_trip(g in two_regular()) {
        let z = GraphRecord::from_graph(&g).cycle_index;
        let parsed: regdigraph::CycleIndex = z.to_string().parse().unwrap();
        prop_assert_eq!(parsed, z);
    }
}

#[test]
fn every_class_is_canonical_and_distinct() {
    for n in 0..=6 {
        let records = enumerate_unlabeled(n, 2, EnumerationFilter::default()).unwrap();
        for r in &records {
            assert_eq!(canonical_form(&r.graph), r.graph);
        }
        let mut forms: Vec<_> = records.iter().map(|r| r.graph.flat().to_vec()).collect();
        forms.dedup();
        assert_eq!(forms.len(), records.len());
    }
}
