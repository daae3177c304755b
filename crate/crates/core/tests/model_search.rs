mod common;

use drc_core::corpus;
use drc_core::projection_algebra::{check_imaoka, check_pa_axioms};
use drc_core::search::{canonical_form, parse_axiom_list, search, search_upward, AxiomId};
use itertools::Itertools;

fn isomorphic(a: &drc_core::ProjectionAlgebra, b: &drc_core::ProjectionAlgebra) -> bool {
    let n = a.n();
    n == b.n() && (0..n).permutations(n).any(|perm| a.relabel(&perm) == *b)
}

#[test]
fn p6_has_no_counter_model_up_to_size_five() {
    let p15 = parse_axiom_list("p1..p5").unwrap();
    for size in 1..=5 {
        assert!(search(&p15, AxiomId::P6, size, 1).unwrap().certifies_exhaustion(), "size {size}");
    }
}

#[test]
fn smallest_lp4_counter_model_is_bundled() {
    let lp = parse_axiom_list("lp1..lp3").unwrap();
    let results = search_upward(&lp, AxiomId::LP4, 1, 6, 1).unwrap();
    let last = results.last().unwrap();
    assert_eq!(last.size, 3);
    assert!(results[..results.len() - 1].iter().all(|r| r.certifies_exhaustion()));
    assert_eq!(last.models[0], corpus::lp4_model().table);
}

#[test]
fn symmetric_imaoka_counter_model_exists_at_size_three() {
    let mut sat = parse_axiom_list("p1..p5").unwrap();
    sat.push(AxiomId::Symmetry);
    assert!(search(&sat, AxiomId::I4, 2, 1).unwrap().certifies_exhaustion());
    let r = search(&sat, AxiomId::I4, 3, 10).unwrap();
    assert!(!r.models.is_empty());
    assert!(r.models.iter().any(|m| isomorphic(m, &corpus::imaoka_witness_pa())));
    for m in &r.models {
        assert!(check_pa_axioms(m).all_passed());
        assert!(!check_imaoka(m).passed("P4' θ_pθ_qθ_p = θ_(qθ_p)"));
    }
}

#[test]
fn emitted_models_pass_the_oracles_and_are_pairwise_non_isomorphic() {
    let lp = parse_axiom_list("lp1..lp3").unwrap();
    let r = search(&lp, AxiomId::LP4, 3, 50).unwrap();
    assert!(r.exhausted);
    for m in &r.models {
        let (t, d) = (m.theta_table(), m.delta_table());
        assert!(["LP1", "LP2", "LP3"].iter().all(|l| common::jones_law(l, t, d)));
        assert!(!common::jones_law("LP4", t, d));
        assert_eq!(canonical_form(t, d), (t.to_vec(), d.to_vec()));
    }
    for (a, b) in r.models.iter().tuple_combinations() {
        assert!(!isomorphic(a, b));
    }
    let p15 = parse_axiom_list("p1..p5").unwrap();
    let r = search(&p15, AxiomId::I5, 3, 50).unwrap();
    for m in &r.models {
        assert!(common::pa_laws_hold(m.theta_table(), m.delta_table()));
    }
    for (a, b) in r.models.iter().tuple_combinations() {
        assert!(!isomorphic(a, b));
    }
}

#[test]
fn search_is_deterministic() {
    let lp = parse_axiom_list("lp1..lp3").unwrap();
    let a = search(&lp, AxiomId::LP4, 3, 5).unwrap();
    let b = search(&lp, AxiomId::LP4, 3, 5).unwrap();
    assert_eq!(a.models, b.models);
}
