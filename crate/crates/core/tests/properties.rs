use bruhat_core::ext::{branch_guards, check_consistency, ext1_verdict};
use bruhat_core::filtration::double_coset_poset;
use bruhat_core::lattice::{dot, Smith};
use bruhat_core::{
    build_datum, DatumSpec, Lattice, Pairing, Relation, RootDatum, Scenario, SigmaDescriptor, Subset, VerdictKind,
    WeylGroup,
};
use proptest::prelude::*;
use proptest::sample::select;
use std::sync::OnceLock;

const SMALL: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2"];
const RANK4: [&str; 6] = ["A4", "B4", "C4", "D4", "F4", "A2xB2"];

fn lattices() -> impl Strategy<Value = Lattice> {
    select(vec![Lattice::SimplyConnected, Lattice::Adjoint])
}

fn datum(t: &str, l: Lattice) -> RootDatum {
    build_datum(&DatumSpec::preset(t, l).unwrap()).unwrap()
}

fn small_groups() -> &'static Vec<(String, Lattice, WeylGroup)> {
    static CELL: OnceLock<Vec<(String, Lattice, WeylGroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for t in SMALL {
            for l in [Lattice::SimplyConnected, Lattice::Adjoint] {
                out.push((t.to_string(), l, WeylGroup::generate(&datum(t, l)).unwrap()));
            }
        }
        for t in ["A1", "A2", "A3", "A1xA2"] {
            out.push((t.to_string(), Lattice::Gl, WeylGroup::generate(&datum(t, Lattice::Gl)).unwrap()));
        }
        out
    })
}

fn group_index() -> impl Strategy<Value = usize> {
    0..small_groups().len()
}

fn subset_in(s: usize) -> impl Strategy<Value = Subset> {
    (0u32..1 << s).prop_map(Subset)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coset_data_ignore_the_lattice(t in select(SMALL.to_vec()), bits in (0u32..8, 0u32..8)) {
        let sc = WeylGroup::generate(&datum(t, Lattice::SimplyConnected)).unwrap();
        let ad = WeylGroup::generate(&datum(t, Lattice::Adjoint)).unwrap();
        let s = sc.datum().num_simple();
        let (i, j) = (Subset(bits.0 & ((1 << s) - 1)), Subset(bits.1 & ((1 << s) - 1)));
        prop_assert_eq!(sc.order(), ad.order());
        let words = |g: &WeylGroup| g.double_coset_reps(i, j).into_iter().map(|w| (g.format_word(w), g.dw_delta(w).0)).collect::<Vec<_>>();
        prop_assert_eq!(words(&sc), words(&ad));
    }

    #[test]
    fn isogeny_flags_of_presets(t in select([SMALL.to_vec(), RANK4.to_vec()].concat())) {
        let f = datum(t, Lattice::SimplyConnected).isogeny_flags();
        prop_assert!(f.fundamental_weights_exist && f.derived_simply_connected);
        let f = datum(t, Lattice::Adjoint).isogeny_flags();
        prop_assert!(f.fundamental_coweights_exist && f.center_connected);
    }

    #[test]
    fn reflections_preserve_the_pairing(
        t in select(SMALL.to_vec()),
        l in lattices(),
        k in 0usize..4,
        chi in prop::collection::vec(-5i64..=5, 4),
        lam in prop::collection::vec(-5i64..=5, 4),
    ) {
        let d = datum(t, l);
        let (r, i) = (d.rank(), k % d.num_simple());
        let (chi, lam) = (&chi[..r], &lam[..r]);
        prop_assert_eq!(d.pair(&d.reflect(i, chi), &d.reflect_coweight(i, lam)), d.pair(chi, lam));
        prop_assert_eq!(d.reflect(i, &d.reflect(i, chi)), chi.to_vec());
        prop_assert_eq!(d.pair(&d.reflect(i, &d.simple_roots()[i]), &d.simple_coroots()[i]), -2);
    }

    #[test]
    fn perp_is_symmetric(t in select(SMALL.to_vec()), l in lattices(), a in 0usize..3, b in 0usize..3) {
        let d = datum(t, l);
        let s = d.num_simple();
        let (a, b) = (a % s, b % s);
        prop_assert_eq!(d.perp(Subset::singleton(a)).0.contains(b), d.perp(Subset::singleton(b)).0.contains(a));
    }

    #[test]
    fn words_round_trip(g in group_index(), seed in any::<u32>()) {
        let (_, _, g) = &small_groups()[g];
        let w = seed % g.order() as u32;
        prop_assert_eq!(g.parse_word(&g.format_word(w)).unwrap(), w);
        prop_assert_eq!(g.word(w).len(), g.length(w));
    }

    #[test]
    fn generated_sets_are_lower_sets(g in group_index(), bits in (0u32..8, 0u32..8), picks in prop::collection::vec(any::<u16>(), 0..5)) {
        let (_, _, g) = &small_groups()[g];
        let s = g.datum().num_simple();
        let mask = (1u32 << s) - 1;
        let p = double_coset_poset(g, Subset(bits.0 & mask), Subset(bits.1 & mask));
        let xs: Vec<usize> = picks.iter().map(|&x| x as usize % p.len()).collect();
        let (left, right) = xs.split_at(xs.len() / 2);
        let a = p.generated_by(left.iter().copied()).unwrap();
        let b = p.generated_by(right.iter().copied()).unwrap();
        for set in [a.union(&b).unwrap(), a.intersection(&b).unwrap()] {
            prop_assert!(p.lower_set(set.iter()).is_ok());
            let maxima = p.maximal_elements(&set).unwrap();
            prop_assert_eq!(p.generated_by(maxima).unwrap(), set);
        }
    }

    #[test]
    fn smith_solutions_are_sound(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-6i64..=6, 16),
        x in prop::collection::vec(-4i64..=4, 4),
        b in prop::collection::vec(-6i64..=6, 4),
    ) {
        let a: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * 4..r * 4 + cols].to_vec()).collect();
        let snf = Smith::new(&a, cols);
        let image: Vec<i64> = a.iter().map(|row| dot(row, &x[..cols])).collect();
        let y = snf.solve(&image);
        prop_assert!(y.is_some());
        let y = y.unwrap();
        prop_assert_eq!(a.iter().map(|row| dot(row, &y)).collect::<Vec<_>>(), image);
        if let Some(z) = snf.solve(&b[..rows]) {
            prop_assert_eq!(a.iter().map(|row| dot(row, &z)).collect::<Vec<_>>(), b[..rows].to_vec());
        }
        let nz = snf.invariant_factors();
        prop_assert!(nz.windows(2).all(|w| w[1] % w[0] == 0));
    }
}

fn relation() -> impl Strategy<Value = Relation> {
    select(vec![Relation::Yes, Relation::No, Relation::Unknown])
}

fn pairing() -> impl Strategy<Value = Pairing> {
    select(vec![Pairing::One, Pairing::OmegaInverse, Pairing::Other, Pairing::Unknown])
}

fn sigma() -> impl Strategy<Value = SigmaDescriptor> {
    (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(s, r, l)| SigmaDescriptor::new("s", s, r, l))
}

fn scenario_on(d: &RootDatum) -> impl Strategy<Value = Scenario> {
    let s = d.num_simple();
    let perp_of = {
        let d = d.clone();
        move |i: Subset| d.perp(i).1
    };
    (
        subset_in(s),
        subset_in(s),
        1u32..3,
        any::<bool>(),
        sigma(),
        sigma(),
        prop::collection::vec(relation(), s),
        prop::collection::vec(pairing(), s),
        relation(),
        any::<bool>(),
    )
        .prop_map(move |(i, j, e, p2, sg, sp, rels, pairs, rel_id, conj)| {
            let mut sc = Scenario::new(i, j, e, sg, sp);
            sc.p_is_2 = p2;
            sc.rel_id = rel_id;
            sc.conjecture_assumed = conj;
            for a in perp_of(i).iter() {
                sc.rel_twist.insert(a, rels[a]);
            }
            for (a, &p) in pairs.iter().enumerate() {
                sc.pairings.insert(a, p);
            }
            sc
        })
}

fn ext_data() -> &'static Vec<RootDatum> {
    static CELL: OnceLock<Vec<RootDatum>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1"] {
            out.push(datum(t, Lattice::SimplyConnected));
            out.push(datum(t, Lattice::Adjoint));
        }
        for t in ["A1", "A2", "A3"] {
            out.push(datum(t, Lattice::Gl));
        }
        out.push(build_datum(&DatumSpec::preset("A2", Lattice::Adjoint).unwrap().with_multiplicity(vec![2, 2])).unwrap());
        out
    })
}

fn ext_case() -> impl Strategy<Value = (usize, Scenario)> {
    (0..ext_data().len()).prop_flat_map(|k| (Just(k), scenario_on(&ext_data()[k])))
}

fn definite(k: &VerdictKind) -> bool {
    matches!(k, VerdictKind::ExactDim(_) | VerdictKind::Zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn every_consistent_scenario_has_one_branch((k, sc) in ext_case()) {
        let d = &ext_data()[k];
        if check_consistency(d, &sc).is_empty() {
            let guards = branch_guards(d, &sc);
            prop_assert_eq!(guards.len(), 1, "{:?}", guards);
            let v = ext1_verdict(d, &sc).unwrap();
            prop_assert_eq!(v.branch, Some(guards[0]));
            prop_assert!(!v.citations.is_empty());
        } else {
            prop_assert!(ext1_verdict(d, &sc).is_err());
        }
    }

    #[test]
    fn refining_unknowns_never_contradicts((k, sc) in ext_case(), pick in any::<prop::sample::Index>(), value in select(vec![Relation::Yes, Relation::No])) {
        let d = &ext_data()[k];
        prop_assume!(check_consistency(d, &sc).is_empty());
        let mut slots: Vec<Option<usize>> = sc.rel_twist.iter().filter(|(_, r)| **r == Relation::Unknown).map(|(&a, _)| Some(a)).collect();
        if sc.rel_id == Relation::Unknown {
            slots.push(None);
        }
        prop_assume!(!slots.is_empty());
        let mut refined = sc.clone();
        match slots[pick.index(slots.len())] {
            Some(a) => { refined.rel_twist.insert(a, value); }
            None => refined.rel_id = value,
        }
        prop_assume!(check_consistency(d, &refined).is_empty());
        let before = ext1_verdict(d, &sc).unwrap();
        let after = ext1_verdict(d, &refined).unwrap();
        if definite(&before.kind) && definite(&after.kind) {
            prop_assert_eq!(&before.kind, &after.kind);
        }
        if definite(&before.kind) {
            prop_assert!(!matches!(after.kind, VerdictKind::Inconclusive));
        }
        if let (VerdictKind::UpperBoundCokernel(b), VerdictKind::UpperBoundCokernel(a) | VerdictKind::ExactCokernel(a)) = (&before.kind, &after.kind) {
            prop_assert!(a <= b);
        }
    }
}
