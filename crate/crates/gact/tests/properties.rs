//! Property tests for the structural invariants: parser/display round trips,
//! configuration read-off consistency, orbit closure laws, truncation.

use gact::boolring::{truncate, BooleanRing, ExponentPoly};
use gact::config::{configuration_of, is_consistent};
use gact::group::builtin;
use gact::independence::attach_orbit;
use gact::logic::{parse, Formula, FormulaDisplay, Term};
use gact::structure::{GStructure, SignatureKind};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn term_strategy() -> impl Strategy<Value = Term> {
    (0..2usize, prop_oneof![Just("x"), Just("y"), Just("z")])
        .prop_map(|(g, v)| Term { g, var: v.to_string() })
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (term_strategy(), term_strategy()).prop_map(|(a, b)| Formula::Eq(a, b)),
        (term_strategy(), term_strategy()).prop_map(|(a, b)| Formula::Rel(a, b)),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            inner.clone().prop_map(|f| Formula::exists("w", f)),
            inner.prop_map(|f| Formula::forall("v", f)),
        ]
    })
}

/// A small Z/2-graph assembled from coset orbits with sampled equivariant
/// patterns; always a valid structure.
fn z2_graph_strategy() -> impl Strategy<Value = GStructure> {
    (
        proptest::collection::vec(any::<bool>(), 3),
        proptest::collection::vec(any::<bool>(), 16),
    )
        .prop_map(|(stabs, bits)| {
            let z2 = builtin::cyclic(2);
            let mut m = GStructure::empty(SignatureKind::Graph, z2.clone());
            let mut bit = bits.into_iter();
            let mut flip = move || bit.next().unwrap_or(false);
            for fixed in stabs {
                let stab: Vec<usize> = if fixed { vec![0, 1] } else { vec![0] };
                let k = 2 / stab.len();
                let internal: Vec<(usize, usize)> =
                    if k == 2 && flip() { vec![(0, 1)] } else { vec![] };
                let mut cross = Vec::new();
                for c in 0..k {
                    for old in 0..m.len() {
                        if flip() {
                            cross.push((c, old));
                        }
                    }
                }
                let (next, _) = attach_orbit(&m, &stab, &internal, &cross);
                m = next;
            }
            m
        })
}

fn has_shadowing(f: &Formula, scope: &mut Vec<String>) -> bool {
    match f {
        Formula::Exists(v, inner) | Formula::Forall(v, inner) => {
            if scope.contains(v) {
                return true;
            }
            scope.push(v.clone());
            let out = has_shadowing(inner, scope);
            scope.pop();
            out
        }
        Formula::Not(inner) => has_shadowing(inner, scope),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            has_shadowing(a, scope) || has_shadowing(b, scope)
        }
        _ => false,
    }
}

proptest! {
    #[test]
    fn display_parse_round_trip(f in formula_strategy()) {
        // the parser rejects rebinding, so shadowed samples are skipped
        prop_assume!(!has_shadowing(&f, &mut Vec::new()));
        let g = builtin::cyclic(2);
        let shown = format!("{}", FormulaDisplay { formula: &f, group: &g });
        let back = parse(&shown, &g).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn read_off_configurations_are_consistent(m in z2_graph_strategy(), picks in proptest::collection::vec(0..64usize, 0..3)) {
        if m.is_empty() {
            return Ok(());
        }
        let ys: Vec<usize> = picks.iter().map(|p| p % m.len()).collect();
        let q = configuration_of(&m, &[], &ys).unwrap();
        let report = is_consistent(&q);
        prop_assert!(report.consistent, "{:?}", report.violation);
        // round trip: reading the configuration off its own witness gives it back
        let witness = report.witness.unwrap();
        let classes = report.term_class.unwrap();
        let terms = &q.terms;
        let canonical_ys: Vec<usize> = (0..ys.len())
            .map(|k| classes[terms.index(gact::config::ConfigTerm {
                kind: gact::config::VarKind::Y,
                var: k,
                g: m.group().identity,
            })])
            .collect();
        let q2 = configuration_of(&witness, &[], &canonical_ys).unwrap();
        prop_assert_eq!(q2.entries(), q.entries());
    }

    #[test]
    fn orbit_is_a_closure_operator(m in z2_graph_strategy(), picks in proptest::collection::vec(0..64usize, 0..4)) {
        if m.is_empty() {
            return Ok(());
        }
        let a: BTreeSet<usize> = picks.iter().map(|p| p % m.len()).collect();
        let oa = m.orbit(&a).unwrap();
        // extensive, idempotent, monotone
        prop_assert!(a.is_subset(&oa));
        prop_assert_eq!(&m.orbit(&oa).unwrap(), &oa);
        let b: BTreeSet<usize> = a.iter().copied().skip(1).collect();
        prop_assert!(m.orbit(&b).unwrap().is_subset(&oa));
        // invariants partition: fixed points plus nontrivial orbits cover
        let inv = m.invariants();
        let mut covered = inv.len();
        let mut seen: BTreeSet<usize> = inv.clone();
        for x in 0..m.len() {
            if !seen.contains(&x) {
                let orbit = m.orbit_of(x);
                covered += orbit.len();
                seen.extend(orbit);
            }
        }
        prop_assert_eq!(covered, m.len());
    }

    #[test]
    fn truncation_preserves_evaluation(
        terms in proptest::collection::vec((0..8u64, proptest::collection::vec((0..2usize, 1..4u32), 0..3)), 0..4),
        point in proptest::collection::vec(0..8u64, 2),
    ) {
        let ring = BooleanRing::powerset(3, builtin::cyclic(2)).unwrap();
        let f = ExponentPoly { e: 2, n: 1, terms };
        let t = truncate(&f);
        prop_assert_eq!(f.eval(&ring, &point), t.eval(&ring, &point));
    }
}
