mod common;

use common::*;
use glpair_core::carter::SurfaceDiagram;
use glpair_core::gauss_io::{parse, Pass};
use glpair_core::GaussCode;
use proptest::prelude::*;

fn rotate_component(code: &GaussCode, i: usize, k: usize) -> GaussCode {
    let mut comps: Vec<Vec<Pass>> = code.components().to_vec();
    let len = comps[i].len();
    if len > 0 {
        comps[i].rotate_left(k % len);
    }
    let text: Vec<String> = comps
        .iter()
        .map(|c| {
            c.iter()
                .map(|p| {
                    let s = if p.sign > 0 { '+' } else { '-' };
                    let o = if p.strand == glpair_core::Strand::Over { 'O' } else { 'U' };
                    format!("{o}{}{s}", code.label(p.crossing))
                })
                .collect()
        })
        .collect();
    parse(&text.join(";")).unwrap()
}

#[test]
fn fixture_genera() {
    for (code, g) in [(VIRTUAL_TREFOIL, 1), (THREE_FIVE, 1), (TREFOIL, 0), (THREE_SEVEN, 1), (FIVE_2024, 2)] {
        assert_eq!(SurfaceDiagram::new(&parse(code).unwrap()).genus(), g, "{code}");
    }
}

#[test]
fn fixture_face_counts() {
    assert_eq!(SurfaceDiagram::new(&parse(THREE_SEVEN).unwrap()).n_faces(), 3);
    assert_eq!(SurfaceDiagram::new(&parse(FIVE_2024).unwrap()).n_faces(), 3);
    assert_eq!(SurfaceDiagram::new(&parse(TREFOIL).unwrap()).n_faces(), 5);
}

#[test]
fn hopf_linking_numbers() {
    let d = parse("O1+U2+;U1+O2+").unwrap().linking();
    assert_eq!(d.vlk, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(d.lambda, 2);
    let d = parse("O1+O2+;U1+U2+").unwrap().linking();
    assert_eq!(d.vlk, vec![vec![0, 2], vec![0, 0]]);
}

#[test]
fn labels_renumbered_by_first_appearance() {
    let c = parse("U7+O3-O7+U3-").unwrap();
    assert_eq!(c.to_string(), "U7+O3-O7+U3-");
    assert_eq!(c.sign(0), 1);
    assert_eq!(c.sign(1), -1);
}

proptest! {
    #[test]
    fn text_round_trip(code in arb_code(6)) {
        let text = code.to_string();
        prop_assert_eq!(parse(&text).unwrap(), code);
    }

    #[test]
    fn euler_relation(code in arb_code(6)) {
        let d = SurfaceDiagram::new(&code);
        if d.is_connected() {
            let v = code.n_crossings() as i64;
            prop_assert_eq!(v - 2 * v + d.n_faces() as i64, 2 - 2 * d.genus() as i64);
        }
    }

    #[test]
    fn faces_partition_darts(code in arb_code(6)) {
        let d = SurfaceDiagram::new(&code);
        let mut all: Vec<usize> = d.faces().iter().flatten().copied().collect();
        all.sort();
        prop_assert_eq!(all, (0..4 * code.n_crossings()).collect::<Vec<_>>());
        for (k, f) in d.faces().iter().enumerate() {
            for &x in f {
                prop_assert_eq!(d.face_of(x), k);
            }
        }
    }

    #[test]
    fn rotation_has_opposite_strands(code in arb_code(6)) {
        let d = SurfaceDiagram::new(&code);
        for c in 0..code.n_crossings() {
            let r = d.rotation(c);
            let roles: Vec<usize> = r.iter().map(|&x| x % 4).collect();
            prop_assert_eq!((roles[0] + 2) % 4, roles[2]);
            prop_assert_eq!((roles[1] + 2) % 4, roles[3]);
        }
    }

    #[test]
    fn rotation_of_components_preserves_genus_and_vlk(code in arb_code(6), k in 0usize..12) {
        let d = SurfaceDiagram::new(&code);
        let lk = code.linking();
        for i in 0..code.n_components() {
            let r = rotate_component(&code, i, k);
            prop_assert_eq!(SurfaceDiagram::new(&r).genus(), d.genus());
            prop_assert_eq!(r.linking().vlk, lk.vlk.clone());
        }
    }

    #[test]
    fn relabeling_preserves_genus(code in arb_code(6), shift in 1usize..50) {
        let text: String = code.to_string();
        let relabeled = relabel(&text, shift);
        let r = parse(&relabeled).unwrap();
        prop_assert_eq!(SurfaceDiagram::new(&r).genus(), SurfaceDiagram::new(&code).genus());
        prop_assert_eq!(r.components(), code.components());
    }
}

fn relabel(text: &str, shift: usize) -> String {
    let mut out = String::new();
    let mut num = String::new();
    for ch in text.chars() {
        if ch.is_ascii_digit() {
            num.push(ch);
            continue;
        }
        if !num.is_empty() {
            out.push_str(&(num.parse::<usize>().unwrap() * 7 + shift).to_string());
            num.clear();
        }
        out.push(ch);
    }
    out
}
