mod common;

use common::*;
use glpair_core::carter::SurfaceDiagram;
use glpair_core::coloring::{checkerboard_colorings, Color, CrossingType};
use glpair_core::gauss_io::parse;
use glpair_core::goeritz::{analyze, coloring_invariants, euler_number, Certificate, GoeritzForm};
use num_bigint::BigInt;
use proptest::prelude::*;

fn triples(code: &str) -> Vec<(i64, BigInt, usize)> {
    analyze("", &parse(code).unwrap()).unwrap().invariants.iter().map(|t| t.triple()).collect()
}

#[test]
fn three_seven_both_colorings() {
    let code = parse(THREE_SEVEN).unwrap();
    let d = SurfaceDiagram::new(&code);
    let (a, b) = checkerboard_colorings(&d).unwrap().unwrap();
    let (xi, dual) = if a.white_faces().len() == 1 { (a, b) } else { (b, a) };
    assert_eq!(coloring_invariants(&d, &xi).triple(), (2, BigInt::from(1), 0));
    assert_eq!(coloring_invariants(&d, &dual).triple(), (0, BigInt::from(2), 0));
    assert_eq!(euler_number(&xi), 4);
    assert_eq!(euler_number(&dual), -2);
}

#[test]
fn five_2024_goeritz_run() {
    let mut t = triples(FIVE_2024);
    t.sort();
    assert_eq!(t, vec![(0, BigInt::from(1), 0), (1, BigInt::from(0), 1)]);
    let r = analyze("5.2024", &parse(FIVE_2024).unwrap()).unwrap();
    assert_eq!(r.genus, 2);
    assert_eq!(r.certificate, Certificate::Inconclusive);
}

#[test]
fn three_five_is_colorable_genus_one() {
    let r = analyze("3.5", &parse(THREE_FIVE).unwrap()).unwrap();
    assert!(r.colorable);
    assert_eq!(r.genus, 1);
}

#[test]
fn left_trefoil_is_mirror_of_right() {
    assert!(triples("O1-U2-O3-U1-O2-U3-").iter().all(|t| t.0 == 2));
    assert!(triples(TREFOIL).iter().all(|t| t.0 == -2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn colorability_matches_brute_force(code in arb_code(5)) {
        let d = SurfaceDiagram::new(&code);
        prop_assume!(d.is_connected() && d.n_faces() <= 16);
        let found = checkerboard_colorings(&d).unwrap();
        let brute = brute_force_colorings(&d);
        prop_assert_eq!(brute, if found.is_some() { 2 } else { 0 });
    }

    #[test]
    fn colorings_are_dual_and_local_data_consistent(code in arb_code(6)) {
        prop_assume!(colorable_connected(&code));
        let d = SurfaceDiagram::new(&code);
        let (a, b) = checkerboard_colorings(&d).unwrap().unwrap();
        prop_assert_eq!(a.color(0), Color::White);
        for f in 0..d.n_faces() {
            prop_assert_ne!(a.color(f), b.color(f));
        }
        for col in [&a, &b] {
            for c in 0..code.n_crossings() {
                let t = if col.crossing_type(c) == CrossingType::II { 1 } else { -1 };
                prop_assert_eq!(col.eta(c), code.sign(c) * t);
            }
            let mu: i64 = (0..code.n_crossings())
                .filter(|&c| col.crossing_type(c) == CrossingType::II)
                .map(|c| col.eta(c) as i64)
                .sum();
            prop_assert_eq!(col.mu(), mu);
        }
        for c in 0..code.n_crossings() {
            prop_assert_ne!(a.crossing_type(c), b.crossing_type(c));
        }
    }

    #[test]
    fn goeritz_rows_sum_to_zero_and_any_face_deletes(code in arb_code(6)) {
        prop_assume!(colorable_connected(&code));
        let d = SurfaceDiagram::new(&code);
        let (a, b) = checkerboard_colorings(&d).unwrap().unwrap();
        for col in [a, b] {
            let g = GoeritzForm::new(&d, &col);
            let m = g.full();
            for i in 0..m.dim() {
                let s: BigInt = (0..m.dim()).map(|j| m.get(i, j).clone()).sum();
                prop_assert_eq!(s, BigInt::from(0));
            }
            let base = g.reduced();
            for j in 0..m.dim() {
                let r = g.reduce_at(j).unwrap();
                prop_assert_eq!(r.signature(), base.signature());
                prop_assert_eq!(r.determinant().magnitude().clone(), base.determinant().magnitude().clone());
                prop_assert_eq!(r.nullity(), base.nullity());
            }
        }
    }

    #[test]
    fn certificate_matches_determinants(code in arb_code(6)) {
        prop_assume!(colorable_connected(&code));
        let r = analyze("", &code).unwrap();
        prop_assert_eq!(r.invariants.len(), 2);
        let nonzero = r.invariants.iter().all(|t| t.det != BigInt::from(0));
        prop_assert_eq!(r.certificate == Certificate::Minimal, nonzero);
    }
}
