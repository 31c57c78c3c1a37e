use proptest::prelude::*;

use cyclocode::cosets::{
    coset_of, complementary, complementary_witness, gap_stat, modulus, parity_class, Parity,
};
use cyclocode::cyclic::{
    dual_containing_by_complementary, dual_containing_by_inverse, CodeSpace, CyclicCode,
    DefiningSet,
};
use cyclocode::gf::Poly;
use cyclocode::oracle::{min_distance_bruteforce, min_distance_exact};
use cyclocode::report::{Status, TableRow};

/// `(q, m)` with a modulus small enough for quick exhaustive work.
fn small_space() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 2),
        (3, 3),
        (4, 2),
        (5, 2),
        (7, 2),
        (8, 2),
        (9, 2),
    ])
}

/// Spaces whose codes are tiny enough for message enumeration.
fn tiny_space() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(vec![(2, 3), (2, 4), (3, 2), (4, 2), (5, 2)])
}

proptest! {
    #[test]
    fn coset_is_a_closed_orbit((q, m) in small_space(), a in any::<i64>()) {
        let n = modulus(q, m).unwrap();
        let c = coset_of(q, m, a);
        prop_assert!(c.contains(a.rem_euclid(n as i64) as u64));
        prop_assert_eq!(m as usize % c.cardinality(), 0);
        for &x in c.elements() {
            prop_assert!(c.contains(x * q % n));
            prop_assert_eq!(coset_of(q, m, x as i64).rep(), c.rep());
            prop_assert!(c.rep() <= x);
        }
    }

    #[test]
    fn complementary_pairing((q, m) in small_space(), a in 0i64..10_000) {
        let n = modulus(q, m).unwrap();
        let c = coset_of(q, m, a);
        let bar = complementary(&c);
        prop_assert_eq!(bar.cardinality(), c.cardinality());
        prop_assert_eq!(complementary(&bar).rep(), c.rep());
        prop_assert_eq!(gap_stat(&bar), gap_stat(&c));
        let (w, _) = complementary_witness(&c, &bar).unwrap();
        prop_assert_eq!((c.rep() + w) % n, 0);
    }

    #[test]
    fn parity_is_uniform_for_odd_q(q in prop::sample::select(vec![3u64, 5, 7, 9, 11]), m in 1u32..4, a in 0i64..5_000) {
        let c = coset_of(q, m, a);
        let p = parity_class(&c).unwrap();
        let expect = if c.rep() % 2 == 0 { Parity::Even } else { Parity::Odd };
        prop_assert_eq!(p, expect);
    }

    #[test]
    fn generator_times_check_is_xn_minus_1((q, m) in small_space(), exps in prop::collection::vec(0i64..80, 0..5)) {
        let space = CodeSpace::new(q, m).unwrap();
        let code = CyclicCode::from_exponents(&space, &exps);
        let field = code.field();
        let product = code.generator().mul(&code.check_polynomial(), field);
        prop_assert_eq!(product, Poly::x_n_minus_one(field, code.n() as usize));
        prop_assert_eq!(code.generator().degree(), Some(code.n() as usize - code.dimension() as usize));
        prop_assert!(code.generator().over_subfield(field, q));
    }

    #[test]
    fn dual_is_involutive((q, m) in small_space(), exps in prop::collection::vec(0i64..80, 0..5)) {
        let space = CodeSpace::new(q, m).unwrap();
        let code = CyclicCode::from_exponents(&space, &exps);
        let dual = code.dual();
        prop_assert_eq!(dual.dimension(), code.n() - code.dimension());
        prop_assert_eq!(dual.dual_defining_set(), code.defining_set().clone());
    }

    #[test]
    fn dual_predicates_agree((q, m) in small_space(), exps in prop::collection::vec(0i64..80, 0..6)) {
        let z = DefiningSet::from_exponents(q, m, &exps);
        prop_assert_eq!(dual_containing_by_inverse(&z), dual_containing_by_complementary(&z));
    }

    #[test]
    fn bch_bound_never_exceeds_distance((q, m) in tiny_space(), exps in prop::collection::vec(0i64..24, 1..4)) {
        let space = CodeSpace::new(q, m).unwrap();
        let code = CyclicCode::from_exponents(&space, &exps);
        let (d, _) = min_distance_exact(&code, 10_000_000).unwrap();
        prop_assert!(d >= code.bch_bound().min(code.n() + 1));
    }

    #[test]
    fn distance_monotone_along_chains(
        (q, m) in tiny_space(),
        base in prop::collection::vec(0i64..24, 1..3),
        extra in prop::collection::vec(0i64..24, 1..3),
    ) {
        let space = CodeSpace::new(q, m).unwrap();
        let small = CyclicCode::from_exponents(&space, &base);
        let mut all = base.clone();
        all.extend(&extra);
        let big = CyclicCode::from_exponents(&space, &all);
        prop_assert!(small.defining_set().is_subset(big.defining_set()));
        let (d_small, _) = min_distance_exact(&small, 10_000_000).unwrap();
        let (d_big, _) = min_distance_exact(&big, 10_000_000).unwrap();
        prop_assert!(d_small <= d_big);
    }

    #[test]
    fn exact_routes_agree_with_messages((q, m) in tiny_space(), exps in prop::collection::vec(0i64..24, 2..5)) {
        let space = CodeSpace::new(q, m).unwrap();
        let code = CyclicCode::from_exponents(&space, &exps);
        if let Ok(by_messages) = min_distance_bruteforce(&code, 200_000) {
            let (exact, _) = min_distance_exact(&code, 10_000_000).unwrap();
            prop_assert_eq!(exact, by_messages);
        }
    }

    #[test]
    fn table_row_json_round_trip(
        table in 1u8..4,
        q in 2u64..300,
        m in prop::option::of(1u32..9),
        c in prop::option::of(0u64..300),
        k in 0u64..10_000,
        bound in 0u64..300,
        status in prop::sample::select(vec![Status::FormulaMatch, Status::OracleVerified, Status::OracleSkipped, Status::Mismatch]),
        note in prop::option::of("[ -~]{0,20}"),
    ) {
        let row = TableRow {
            table,
            family: "good2".into(),
            q,
            m,
            c,
            i: None,
            n: q * q - 1,
            k,
            degree: c,
            memory: m.map(u64::from),
            claimed_bound: bound,
            computed_bound: bound + 1,
            params: format!("[[{}, {k}, d >= {bound}]]_{q}", q * q - 1),
            status,
            note,
        };
        let text = serde_json::to_string(&row).unwrap();
        let back: TableRow = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, row);
    }
}
