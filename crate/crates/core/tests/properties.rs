//! Property-based invariants across the crate: canonicity of the Hermite
//! form, the mod-p homomorphism law, soundness of the closure table, Green
//! structure laws, and conjugation fidelity on randomly generated finite
//! closures.

use num_bigint::BigInt;
use proptest::prelude::*;

use semibound::arithmetic::integralize;
use semibound::exact_linalg::{
    hnf_column, mod_p_reduce, rat_int, solve_linear, QMatrix, Rational, ZMatrix,
};
use semibound::invariant::{algebra_span, is_irreducible, IrreducibilityVerdict};
use semibound::semigroup::{
    adjoin_zero, check_stability, closure, green_relations, maximal_subgroup_at,
    subgroups_isomorphic,
};
use semibound::structure::{verify_ggm, zero_minimal_ideal};

fn bigvecs(vs: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    vs.iter()
        .map(|v| v.iter().map(|&e| BigInt::from(e)).collect())
        .collect()
}

/// Signed partial permutation matrix: at most one nonzero entry (+-1) per row
/// and per column. Products of these stay in the same family, so closures are
/// always finite — a safe pool of random finite matrix semigroups.
fn signed_partial_perm(n: usize) -> impl Strategy<Value = QMatrix> {
    let perm: Vec<usize> = (0..n).collect();
    (
        Just(perm).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(move |(rows, mask, signs)| {
            let mut m = QMatrix::zeros(n);
            for j in 0..n {
                if mask[j] {
                    m.set(rows[j], j, rat_int(if signs[j] { 1 } else { -1 }));
                }
            }
            m
        })
}

fn random_semigroup() -> impl Strategy<Value = semibound::SemigroupTable> {
    (1usize..=3)
        .prop_flat_map(|n| prop::collection::vec(signed_partial_perm(n), 1..=2))
        .prop_map(|gens| closure(&gens, 1000).expect("signed partial perms close finitely"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_canonical_under_shuffle(
        vs in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 1..6),
        seed in any::<u64>(),
    ) {
        let original = bigvecs(&vs.iter().map(|v| v.to_vec()).collect::<Vec<_>>());
        let mut shuffled = original.clone();
        // deterministic shuffle from the seed
        let mut state = seed;
        for i in (1..shuffled.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(hnf_column(&original), hnf_column(&shuffled));
    }

    #[test]
    fn hnf_absorbs_integer_combinations(
        vs in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 2..5),
        c1 in -3i64..=3,
        c2 in -3i64..=3,
    ) {
        let original = bigvecs(&vs);
        let mut augmented = original.clone();
        let combo: Vec<BigInt> = (0..3)
            .map(|i| &original[0][i] * c1 + &original[1][i] * c2)
            .collect();
        augmented.push(combo);
        prop_assert_eq!(hnf_column(&original), hnf_column(&augmented));
    }

    #[test]
    fn mod_p_is_a_ring_homomorphism(
        a in prop::collection::vec(-50i64..=50, 9),
        b in prop::collection::vec(-50i64..=50, 9),
    ) {
        let za = ZMatrix::new(3, a.into_iter().map(BigInt::from).collect());
        let zb = ZMatrix::new(3, b.into_iter().map(BigInt::from).collect());
        for p in [2u64, 3, 5] {
            let lhs = mod_p_reduce(&za.mul(&zb), p).unwrap();
            let rhs = mod_p_reduce(&za, p).unwrap().mul(&mod_p_reduce(&zb, p).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn solve_linear_reproduces_target(
        cols in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 1..5),
        coeffs in prop::collection::vec(-5i64..=5, 5),
    ) {
        // build a solvable system by construction
        let columns: Vec<Vec<Rational>> = cols
            .iter()
            .map(|c| c.iter().map(|&e| rat_int(e)).collect())
            .collect();
        let b: Vec<Rational> = (0..3)
            .map(|i| {
                columns
                    .iter()
                    .zip(&coeffs)
                    .map(|(col, &c)| &col[i] * rat_int(c))
                    .sum()
            })
            .collect();
        let sol = solve_linear(&columns, &b);
        prop_assert!(sol.is_some());
        let sol = sol.unwrap();
        for i in 0..3 {
            let got: Rational = sol.iter().zip(&columns).map(|(c, col)| c * &col[i]).sum();
            prop_assert_eq!(got, b[i].clone());
        }
    }

    #[test]
    fn closure_table_is_sound(table in random_semigroup()) {
        // multiplying any two elements lands exactly at the table's index
        for i in 0..table.size() {
            for j in 0..table.size() {
                let product = table.element(i).mul(table.element(j));
                prop_assert_eq!(table.element(table.product(i, j)), &product);
            }
        }
        // closure is idempotent on its own elements
        let again = closure(table.elements(), 1000).unwrap();
        prop_assert_eq!(again.size(), table.size());
    }

    #[test]
    fn green_laws_on_random_closures(table in random_semigroup()) {
        let green = green_relations(&table);
        // H = R meet L
        for i in 0..table.size() {
            for j in 0..table.size() {
                let same_h = green.h_class_of(i) == green.h_class_of(j);
                let same_rl = green.r_class_of(i) == green.r_class_of(j)
                    && green.l_class_of(i) == green.l_class_of(j);
                prop_assert_eq!(same_h, same_rl);
            }
        }
        // stability always holds on a finite semigroup
        let report = check_stability(&table);
        prop_assert!(report.stable, "violation at {:?}", report.violation);
        // maximal subgroups within one J-class have equal order and are
        // isomorphic (orders here are small enough for the brute search)
        let idems = table.idempotents();
        for &e in &idems {
            for &f in &idems {
                if green.j_class_of(e) == green.j_class_of(f) {
                    let ge = maximal_subgroup_at(&table, &green, e).unwrap();
                    let gf = maximal_subgroup_at(&table, &green, f).unwrap();
                    prop_assert_eq!(ge.order, gf.order);
                    if ge.order <= 16 {
                        prop_assert_eq!(subgroups_isomorphic(&table, &ge, &gf), Some(true));
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_everything(table in random_semigroup()) {
        let cert = integralize(&table).unwrap();
        // integral inputs give the identity lattice
        prop_assert!(cert.basis_matrix.is_identity());
        for i in 0..table.size() {
            prop_assert_eq!(&cert.conjugated[i].to_q(), table.element(i));
            for j in 0..table.size() {
                let lhs = cert.conjugated[i].mul(&cert.conjugated[j]);
                prop_assert_eq!(&lhs, &cert.conjugated[table.product(i, j)]);
            }
        }
    }

    #[test]
    fn irreducibility_certificates_are_sound(table in random_semigroup()) {
        let with_zero = adjoin_zero(&table);
        match is_irreducible(&with_zero) {
            IrreducibilityVerdict::Irreducible(
                semibound::invariant::IrreducibleWitness::FullSpan,
            ) => {
                let n = with_zero.n();
                prop_assert_eq!(algebra_span(&with_zero).dim, n * n);
            }
            IrreducibilityVerdict::Reducible(w) => {
                prop_assert!(!w.is_empty() && w.len() < with_zero.n());
                prop_assert_eq!(
                    semibound::invariant::verify_invariant_subspace(&with_zero, &w),
                    Ok(true)
                );
            }
            _ => {}
        }
    }

    #[test]
    fn ideals_are_closed(table in random_semigroup()) {
        let with_zero = adjoin_zero(&table);
        if with_zero.size() == 1 {
            return Ok(());
        }
        let ideal = zero_minimal_ideal(&with_zero).unwrap();
        prop_assert!(ideal.verify(&with_zero));
        // the GGM report's ideal agrees and faithfulness flags match the
        // witness fields
        let report = verify_ggm(&with_zero).unwrap();
        prop_assert_eq!(&report.ideal, &ideal);
        prop_assert_eq!(report.left_faithful, report.left_witness.is_none());
        prop_assert_eq!(report.right_faithful, report.right_witness.is_none());
    }
}
